//! Buchberger's algorithm for submodules of free modules under
//! position-over-term orders.
//!
//! This is the independent oracle used to certify every closed-form claim
//! about initial modules: nothing here knows how the generators were built.

use crate::error::Result;
use crate::field::{Field, Q};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::module::{graded_dimension, DegreeBox, ModuleVector, OrderedBasis, Term, TermOrder};
use crate::monomial::{Monomial, Multidegree};
use std::collections::HashSet;
use std::fmt;

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field = Q> {
    pub generators: Vec<ModuleVector<K>>,
    pub reduced: bool,
    pub order: TermOrder,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn leading_terms(&self) -> Vec<Term<K>> {
        self.generators
            .iter()
            .map(|g| g.leading_term_with(self.order.scalar).expect("nonzero").clone())
            .collect()
    }

    pub fn initial_module(&self) -> InitialModule {
        leading_term_module(&self.generators, &self.order)
    }
}

#[derive(Clone)]
struct Lead {
    position: usize,
    monomial: Monomial,
}

fn lead<K: Field>(v: &ModuleVector<K>, order: &TermOrder) -> (Lead, K) {
    let t = v.leading_term_with(order.scalar).expect("nonzero vector");
    (Lead { position: t.position, monomial: t.monomial.clone() }, t.coeff.clone())
}

/// Full normal form of `v` with respect to `basis` (every term reduced).
pub fn normal_form<K: Field>(v: &ModuleVector<K>, basis: &[ModuleVector<K>], order: &TermOrder) -> ModuleVector<K> {
    let leads: Vec<(Lead, K)> = basis.iter().filter(|g| !g.is_zero()).map(|g| lead(g, order)).collect();
    let nonzero: Vec<&ModuleVector<K>> = basis.iter().filter(|g| !g.is_zero()).collect();
    normal_form_with(v, &nonzero, &leads, order)
}

fn normal_form_with<K: Field>(
    v: &ModuleVector<K>,
    basis: &[&ModuleVector<K>],
    leads: &[(Lead, K)],
    order: &TermOrder,
) -> ModuleVector<K> {
    let mut rest = v.clone();
    let mut remainder = Vec::new();
    while !rest.is_zero() {
        let lt = rest.leading_term_with(order.scalar).expect("nonzero").clone();
        let divisor = leads
            .iter()
            .position(|(l, _)| l.position == lt.position && l.monomial.divides(&lt.monomial));
        match divisor {
            Some(i) => {
                let (l, c) = &leads[i];
                let m = lt.monomial.divide(&l.monomial).expect("divides");
                rest = rest.sub(&basis[i].mul_term(&lt.coeff.div(c), &m));
            }
            None => {
                rest = rest.sub(&ModuleVector::term(lt.coeff.clone(), lt.monomial.clone(), lt.position));
                remainder.push(lt);
            }
        }
    }
    ModuleVector::from_terms(remainder)
}

/// S-vector of two elements whose leading terms share a position.
pub fn s_vector<K: Field>(f: &ModuleVector<K>, g: &ModuleVector<K>, order: &TermOrder) -> Option<ModuleVector<K>> {
    let (lf, cf) = lead(f, order);
    let (lg, cg) = lead(g, order);
    if lf.position != lg.position {
        return None;
    }
    let l = lf.monomial.lcm(&lg.monomial);
    let a = f.mul_term(&cf.inv(), &l.divide(&lf.monomial).expect("lcm"));
    let b = g.mul_term(&cg.inv(), &l.divide(&lg.monomial).expect("lcm"));
    Some(a.sub(&b))
}

fn pair_key(leads: &[Lead], basis: &OrderedBasis, i: usize, j: usize) -> (i64, Vec<i32>) {
    let l = leads[i].monomial.lcm(&leads[j].monomial);
    let d = l.degree().checked_add(basis.degree(leads[i].position)).unwrap_or_else(|_| l.degree().clone());
    (d.total(), d.as_slice().to_vec())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Pairs are processed by increasing degree of their lcm (normal strategy),
/// ties broken by pair index; the chain criterion discards redundant pairs.
pub fn buchberger<K: Field>(gens: &[ModuleVector<K>], order: &TermOrder) -> GroebnerBasis<K> {
    let mut basis: Vec<ModuleVector<K>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut leads: Vec<(Lead, K)> = basis.iter().map(|g| lead(g, order)).collect();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if leads[i].0.position == leads[j].0.position {
                pending.insert((i, j));
            }
        }
    }
    loop {
        let key_leads: Vec<Lead> = leads.iter().map(|(l, _)| l.clone()).collect();
        let Some(&(i, j)) = pending
            .iter()
            .min_by(|a, b| {
                pair_key(&key_leads, &order.basis, a.0, a.1)
                    .cmp(&pair_key(&key_leads, &order.basis, b.0, b.1))
                    .then(a.cmp(b))
            })
        else {
            break;
        };
        pending.remove(&(i, j));
        let lcm = leads[i].0.monomial.lcm(&leads[j].0.monomial);
        let pos = leads[i].0.position;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].0.position == pos
                && leads[k].0.monomial.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_vector(&basis[i], &basis[j], order).expect("same position");
        let refs: Vec<&ModuleVector<K>> = basis.iter().collect();
        let h = normal_form_with(&s, &refs, &leads, order);
        if h.is_zero() {
            continue;
        }
        let new = basis.len();
        let lh = lead(&h, order);
        for k in 0..new {
            if leads[k].0.position == lh.0.position {
                pending.insert((k, new));
            }
        }
        basis.push(h);
        leads.push(lh);
    }
    GroebnerBasis { generators: interreduce(basis, order), reduced: true, order: order.clone() }
}

/// Minimal, fully reduced, monic basis sorted by leading term descending.
fn interreduce<K: Field>(basis: Vec<ModuleVector<K>>, order: &TermOrder) -> Vec<ModuleVector<K>> {
    let leads: Vec<Lead> = basis.iter().map(|g| lead(g, order).0).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && leads[k].position == leads[i].position
                && leads[k].monomial.divides(&leads[i].monomial)
                && (leads[k].monomial != leads[i].monomial || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<ModuleVector<K>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out: Vec<ModuleVector<K>> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let (lg, c) = lead(g, order);
        let others: Vec<ModuleVector<K>> =
            minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, h)| h.clone()).collect();
        let tail = g.sub(&ModuleVector::term(c.clone(), lg.monomial.clone(), lg.position));
        let reduced_tail = normal_form(&tail, &others, order);
        let v = ModuleVector::term(c.clone(), lg.monomial, lg.position).add(&reduced_tail);
        out.push(v.scale(&c.inv()));
    }
    out.sort_by(|a, b| {
        let (la, _) = lead(a, order);
        let (lb, _) = lead(b, order);
        order.cmp_terms((lb.position, &lb.monomial), (la.position, &la.monomial))
    });
    out
}

/// Whether `gens` is a Gröbner basis of the module it generates: every
/// S-vector reduces to zero.
pub fn is_groebner_basis<K: Field>(gens: &[ModuleVector<K>], order: &TermOrder) -> bool {
    let nonzero: Vec<ModuleVector<K>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for j in 0..nonzero.len() {
        for i in 0..j {
            if let Some(s) = s_vector(&nonzero[i], &nonzero[j], order) {
                if !normal_form(&s, &nonzero, order).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// A monomial submodule `⊕_j I_j e_j`; components are kept as minimal
/// generating sets so that equality is equality of modules.
#[derive(Clone, PartialEq, Eq)]
pub struct InitialModule {
    pub n: usize,
    pub components: Vec<MonomialIdeal>,
}

impl fmt::Debug for InitialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c:?}e{j}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl InitialModule {
    pub fn from_terms(n: usize, rank: usize, terms: impl IntoIterator<Item = (usize, Monomial)>) -> Self {
        let mut gens: Vec<Vec<Monomial>> = vec![Vec::new(); rank];
        for (pos, m) in terms {
            gens[pos].push(m);
        }
        InitialModule {
            n,
            components: gens
                .into_iter()
                .map(|g| MonomialIdeal::new(n, minimalize(&g)).expect("same n"))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MonomialIdeal::is_zero)
    }

    /// All minimal generators as `(position, monomial)` pairs.
    pub fn generators(&self) -> Vec<(usize, Monomial)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.generators().iter().map(move |m| (j, m.clone())))
            .collect()
    }

    /// Reorders components by `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> InitialModule {
        let mut components = vec![MonomialIdeal::zero(self.n); self.rank()];
        for (old, &new) in perm.iter().enumerate() {
            components[new] = self.components[old].clone();
        }
        InitialModule { n: self.n, components }
    }

    /// Direct sum with `other` placed after `self`.
    pub fn direct_sum(&self, other: &InitialModule) -> InitialModule {
        InitialModule {
            n: self.n,
            components: self.components.iter().chain(&other.components).cloned().collect(),
        }
    }

    /// Vector-space dimension of the degree-`a` piece over `basis`.
    pub fn dimension_in_degree(&self, a: &Multidegree, basis: &OrderedBasis) -> usize {
        self.components
            .iter()
            .enumerate()
            .filter(|(j, ideal)| {
                let Ok(diff) = a.checked_sub(basis.degree(*j)) else { return false };
                Monomial::from_degree(diff).is_ok_and(|m| ideal.contains(&m))
            })
            .count()
    }
}

/// The module generated by the leading terms of `gens`.
pub fn leading_term_module<K: Field>(gens: &[ModuleVector<K>], order: &TermOrder) -> InitialModule {
    InitialModule::from_terms(
        order.basis.n(),
        order.basis.len(),
        gens.iter().filter(|g| !g.is_zero()).map(|g| {
            let (l, _) = lead(g, order);
            (l.position, l.monomial)
        }),
    )
}

/// Initial module of the submodule generated by `gens`.
pub fn initial_module<K: Field>(gens: &[ModuleVector<K>], order: &TermOrder) -> InitialModule {
    buchberger(gens, order).initial_module()
}

/// Compares graded dimensions of the module generated by `gens` and of
/// `initial` on every degree of the box; returns the first mismatch.
pub fn hilbert_slice_check<K: Field>(
    gens: &[ModuleVector<K>],
    initial: &InitialModule,
    basis: &OrderedBasis,
    degree_box: &DegreeBox,
) -> std::result::Result<(), Multidegree> {
    for a in degree_box.points() {
        if graded_dimension(gens, &a, basis) != initial.dimension_in_degree(&a, basis) {
            return Err(a);
        }
    }
    Ok(())
}

/// Whether the monomial module `⊕ I_j e_j` is squarefree: basis degrees are
/// 0/1 vectors and every minimal generator `u e_j` has squarefree degree
/// `u · x^deg(e_j)`.
pub fn is_squarefree_module(initial: &InitialModule, basis: &OrderedBasis) -> bool {
    initial.components.iter().enumerate().all(|(j, ideal)| {
        if ideal.is_zero() {
            return true;
        }
        let d = basis.degree(j);
        if !d.as_slice().iter().all(|&e| e == 0 || e == 1) {
            return false;
        }
        ideal.generators().iter().all(|u| {
            u.degree().checked_add(d).is_ok_and(|t| t.as_slice().iter().all(|&e| e <= 1))
        })
    })
}

/// Generators of the kernel of the map sending the `i`-th source basis
/// element to `columns[i]` in a free module of rank `target_rank`. Uses an
/// extended module `target ⊕ source` with the target positions first; Gröbner
/// basis elements living entirely in the source part generate the kernel.
pub fn kernel_generators<K: Field>(
    columns: &[ModuleVector<K>],
    target: &OrderedBasis,
    source: &OrderedBasis,
) -> Result<Vec<ModuleVector<K>>> {
    let t = target.len();
    let degrees: Vec<Multidegree> = target.degrees().iter().chain(source.degrees()).cloned().collect();
    let extended_basis = OrderedBasis::new(target.n(), degrees)?;
    let order = TermOrder::new(extended_basis, crate::monomial::MonomialOrder::Lex);
    let n = target.n();
    let gens: Vec<ModuleVector<K>> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| c.add(&ModuleVector::term(K::one(), Monomial::one(n), t + i)))
        .collect();
    let gb = buchberger(&gens, &order);
    Ok(gb
        .generators
        .into_iter()
        .filter(|g| g.terms().iter().all(|term| term.position >= t))
        .map(|g| g.restrict_positions(t..t + source.len()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{syzygy_generators, taylor_complex};
    use crate::field::Zp;
    use crate::monomial::MonomialOrder;
    use proptest::prelude::*;

    fn mono(v: &[i32]) -> Monomial {
        Monomial::new(v.to_vec()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[i32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Koszul Z_1 of (x1,x2,x3) in the basis order e1 > e2 > e3.
    fn koszul_z1() -> (Vec<ModuleVector<Q>>, OrderedBasis) {
        let n = 3;
        let basis = OrderedBasis::new(n, (0..3).map(|i| Multidegree::unit(n, i)).collect()).unwrap();
        let one = Q::from_i64(1);
        let minus = Q::from_i64(-1);
        let mut gens = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                gens.push(ModuleVector::from_terms(vec![
                    Term { coeff: one.clone(), monomial: Monomial::var(n, j), position: i },
                    Term { coeff: minus.clone(), monomial: Monomial::var(n, i), position: j },
                ]));
            }
        }
        (gens, basis)
    }

    #[test]
    fn koszul_first_syzygies() {
        let (gens, basis) = koszul_z1();
        let order = TermOrder::new(basis.clone(), MonomialOrder::Lex);
        let gb = buchberger(&gens, &order);
        let mut lts: Vec<(usize, Vec<i32>)> =
            gb.leading_terms().into_iter().map(|t| (t.position, t.monomial.exponents().to_vec())).collect();
        lts.sort();
        assert_eq!(lts, vec![(0, vec![0, 0, 1]), (0, vec![0, 1, 0]), (1, vec![0, 0, 1])]);
        let ini = gb.initial_module();
        assert_eq!(ini.components[0], ideal(3, &[&[0, 1, 0], &[0, 0, 1]]).minimalized());
        assert_eq!(ini.components[1], ideal(3, &[&[0, 0, 1]]));
        assert!(ini.components[2].is_zero());
        let bx = DegreeBox::around(&Multidegree::new(vec![1, 1, 1]));
        assert_eq!(hilbert_slice_check(&gens, &ini, &basis, &bx), Ok(()));
        assert!(is_squarefree_module(&ini, &basis));
        // fault injection: drop one generator of the initial module
        let mut broken = ini.clone();
        broken.components[1] = MonomialIdeal::zero(3);
        assert!(hilbert_slice_check(&gens, &broken, &basis, &bx).is_err());
    }

    #[test]
    fn monomial_generators_are_their_own_basis() {
        let basis = OrderedBasis::new(2, vec![Multidegree::zeros(2)]).unwrap();
        let order = TermOrder::new(basis, MonomialOrder::Lex);
        let gens = vec![
            ModuleVector::term(Q::from_i64(3), mono(&[2, 0]), 0),
            ModuleVector::term(Q::from_i64(1), mono(&[1, 1]), 0),
            ModuleVector::term(Q::from_i64(1), mono(&[2, 1]), 0),
        ];
        let gb = buchberger(&gens, &order);
        assert_eq!(gb.generators.len(), 2);
        assert!(gb.generators.iter().all(|g| g.len() == 1 && g.terms()[0].coeff == Q::from_i64(1)));
        let single = buchberger(&gens[..1], &order);
        assert_eq!(single.generators, vec![ModuleVector::term(Q::from_i64(1), mono(&[2, 0]), 0)]);
    }

    #[test]
    fn taylor_first_syzygies_in_taylor_order() {
        // u = (x1^2, x1x2, x2^2); Taylor order e3 > e2 > e1
        let u = [mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])];
        let c = taylor_complex(&u).unwrap();
        let order = TermOrder::new(c.basis(1), MonomialOrder::Lex);
        let ini = initial_module(&syzygy_generators(&c, 1).unwrap(), &order);
        // positions: 0 = e3, 1 = e2, 2 = e1
        assert_eq!(ini.components[0], ideal(2, &[&[1, 0]]));
        assert_eq!(ini.components[1], ideal(2, &[&[1, 0]]));
        assert!(ini.components[2].is_zero());
    }

    #[test]
    fn zero_module() {
        let basis = OrderedBasis::new(2, vec![Multidegree::zeros(2)]).unwrap();
        let ini = InitialModule::from_terms(2, 1, std::iter::empty());
        assert_eq!(hilbert_slice_check::<Q>(&[], &ini, &basis, &DegreeBox::up_to(Multidegree::new(vec![2, 2]))), Ok(()));
        assert!(is_squarefree_module(&ini, &basis));
        assert!(buchberger::<Q>(&[], &TermOrder::new(basis, MonomialOrder::Lex)).generators.is_empty());
    }

    #[test]
    fn squarefree_module_rejects_squares() {
        let basis = OrderedBasis::new(1, vec![Multidegree::zeros(1)]).unwrap();
        let ini = InitialModule::from_terms(1, 1, [(0, mono(&[2]))]);
        assert!(!is_squarefree_module(&ini, &basis));
        let shifted = OrderedBasis::new(2, vec![Multidegree::new(vec![1, 0])]).unwrap();
        let ini = InitialModule::from_terms(2, 1, [(0, mono(&[1, 0]))]);
        assert!(!is_squarefree_module(&ini, &shifted));
    }

    #[test]
    fn product_criterion_counterexample_is_handled() {
        // f = x1 e1 + e2, g = x2 e1: S(f,g) = x2 e2 is not reducible by f, g
        let basis = OrderedBasis::new(2, vec![Multidegree::zeros(2), Multidegree::new(vec![1, 0])]).unwrap();
        let order = TermOrder::new(basis, MonomialOrder::Lex);
        let f = ModuleVector::from_terms(vec![
            Term { coeff: Q::from_i64(1), monomial: mono(&[1, 0]), position: 0 },
            Term { coeff: Q::from_i64(1), monomial: mono(&[0, 0]), position: 1 },
        ]);
        let g = ModuleVector::term(Q::from_i64(1), mono(&[0, 1]), 0);
        let gb = buchberger(&[f.clone(), g.clone()], &order);
        assert!(is_groebner_basis(&gb.generators, &order));
        assert!(!is_groebner_basis(&[f, g], &order));
        let ini = gb.initial_module();
        assert_eq!(ini.components[1], ideal(2, &[&[0, 1]]));
    }

    #[test]
    fn kernel_of_koszul_first_map() {
        let n = 3;
        let target = OrderedBasis::new(n, vec![Multidegree::zeros(n)]).unwrap();
        let source = OrderedBasis::new(n, (0..3).map(|i| Multidegree::unit(n, i)).collect()).unwrap();
        let cols: Vec<ModuleVector<Q>> =
            (0..3).map(|i| ModuleVector::term(Q::from_i64(1), Monomial::var(n, i), 0)).collect();
        let ker = kernel_generators(&cols, &target, &source).unwrap();
        let order = TermOrder::new(source.clone(), MonomialOrder::Lex);
        let (z1, _) = koszul_z1();
        assert_eq!(initial_module(&ker, &order), initial_module(&z1, &order));
    }

    #[test]
    fn prime_field_agrees_with_rationals() {
        let (gens, basis) = koszul_z1();
        let order = TermOrder::new(basis, MonomialOrder::DegRevLex);
        let modp: Vec<ModuleVector<Zp<32003>>> = gens.iter().map(|g| g.map_coefficients(Zp::from_rational)).collect();
        assert_eq!(initial_module(&modp, &order), initial_module(&gens, &order));
    }

    fn random_gens() -> impl Strategy<Value = Vec<ModuleVector<Q>>> {
        // multihomogeneous generators over a rank-3 basis of degrees (1,0,0),(0,1,0),(1,1,0)
        prop::collection::vec(
            (prop::collection::vec(0i32..2, 3), prop::collection::vec(-2i64..3, 3)),
            1..4,
        )
        .prop_map(|raw| {
            let degs = [[1, 0, 0], [0, 1, 0], [1, 1, 0]];
            raw.into_iter()
                .map(|(extra, coeffs)| {
                    // total degree (1,1,0) + extra for every term
                    let total = [1 + extra[0], 1 + extra[1], extra[2]];
                    ModuleVector::from_terms(
                        coeffs
                            .into_iter()
                            .enumerate()
                            .map(|(p, c)| Term {
                                coeff: Q::from_i64(c),
                                monomial: Monomial::new((0..3).map(|k| total[k] - degs[p][k]).collect()).unwrap(),
                                position: p,
                            })
                            .collect(),
                    )
                })
                .collect()
        })
    }

    fn test_basis() -> OrderedBasis {
        OrderedBasis::new(
            3,
            vec![Multidegree::new(vec![1, 0, 0]), Multidegree::new(vec![0, 1, 0]), Multidegree::new(vec![1, 1, 0])],
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn initial_module_independent_of_scalar_order(gens in random_gens()) {
            let basis = test_basis();
            let lex = initial_module(&gens, &TermOrder::new(basis.clone(), MonomialOrder::Lex));
            let drl = initial_module(&gens, &TermOrder::new(basis.clone(), MonomialOrder::DegRevLex));
            prop_assert_eq!(&lex, &drl);
            let bx = DegreeBox::up_to(Multidegree::new(vec![3, 3, 2]));
            prop_assert_eq!(hilbert_slice_check(&gens, &lex, &basis, &bx), Ok(()));
        }

        #[test]
        fn reduced_basis_is_groebner(gens in random_gens()) {
            let order = TermOrder::new(test_basis(), MonomialOrder::Lex);
            let gb = buchberger(&gens, &order);
            prop_assert!(is_groebner_basis(&gb.generators, &order));
            for g in &gens {
                prop_assert!(normal_form(g, &gb.generators, &order).is_zero());
            }
        }
    }
}
