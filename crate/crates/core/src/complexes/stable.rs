use super::chain::FreeComplex;
use super::cone::{mapping_cone, ChainMap};
use super::taylor::taylor_complex_shifted;
use crate::error::{invalid, Error, Result};
use crate::field::{Field, Q};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::linalg;
use crate::module::{graded_coordinates, multidegree_of, shift_to_degree, ModuleVector, Term};
use crate::monomial::{Monomial, MonomialOrder, Multidegree};

/// Result of testing a generator sequence for linear quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearQuotients {
    /// `sets[j-1]` holds the variable indices generating `(u_1,…,u_j):(u_{j+1})`.
    Linear(Vec<Vec<usize>>),
    /// The first (1-based) `j` whose colon ideal is not generated by variables.
    FailsAt(usize),
}

/// Colon ideals `L_j = (u_1, …, u_j) : (u_{j+1})` for `j = 1, …, m-1`.
pub fn linear_quotients(u: &[Monomial]) -> Result<LinearQuotients> {
    if u.windows(2).any(|w| w[0].total_degree() > w[1].total_degree()) {
        return invalid("generators must be ordered by nondecreasing total degree");
    }
    let mut sets = Vec::with_capacity(u.len().saturating_sub(1));
    for j in 1..u.len() {
        let quotients: Vec<Monomial> =
            u[..j].iter().map(|g| g.divide(&g.gcd(&u[j])).expect("gcd divides")).collect();
        let colon = minimalize(&quotients);
        if colon.iter().any(|g| g.total_degree() != 1) {
            return Ok(LinearQuotients::FailsAt(j));
        }
        let mut vars: Vec<usize> = colon.iter().map(|g| g.support()[0]).collect();
        vars.sort_unstable();
        sets.push(vars);
    }
    Ok(LinearQuotients::Linear(sets))
}

/// A minimal generator `u` and a variable index `j < m(u)` with
/// `x_j · u / x_{m(u)} ∉ I`, if any.
pub fn stable_violation(ideal: &MonomialIdeal) -> Option<(Monomial, usize)> {
    let n = ideal.n();
    for u in ideal.minimal_generators() {
        let Some(top) = u.max_variable() else { continue };
        let reduced = u.divide(&Monomial::var(n, top)).expect("top variable divides");
        for j in 0..top {
            let w = reduced.mul(&Monomial::var(n, j));
            if !ideal.contains(&w) {
                return Some((u, j));
            }
        }
    }
    None
}

pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    stable_violation(ideal).is_none()
}

/// Minimal generators ordered by total degree ascending, then lex descending.
pub fn stable_order(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut gens = ideal.minimal_generators();
    gens.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| MonomialOrder::Lex.cmp(b, a))
    });
    gens
}

/// The smallest stable ideal containing `ideal`.
pub fn stable_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    let n = ideal.n();
    let mut gens = ideal.minimal_generators();
    loop {
        let current = MonomialIdeal::new(n, gens.clone()).expect("same n");
        let mut added = false;
        for u in current.minimal_generators() {
            let Some(top) = u.max_variable() else { continue };
            let reduced = u.divide(&Monomial::var(n, top)).expect("top variable divides");
            for j in 0..top {
                let w = reduced.mul(&Monomial::var(n, j));
                if !current.contains(&w) && !gens.contains(&w) {
                    gens.push(w);
                    added = true;
                }
            }
        }
        gens = minimalize(&gens);
        if !added {
            return MonomialIdeal::new(n, gens).expect("same n");
        }
    }
}

/// An iterated mapping cone together with the chain maps used at each step.
#[derive(Clone, Debug)]
pub struct IteratedCone {
    pub complex: FreeComplex,
    pub generators: Vec<Monomial>,
    /// `steps[j]` maps the Koszul resolution of `L_{j+1}` into the complex
    /// built from the first `j + 1` generators.
    pub steps: Vec<ChainMap>,
    /// Whether some comparison map needed the linear-algebra fallback because
    /// division by the boundary images left a remainder.
    pub used_fallback_lift: bool,
    pub minimal: bool,
}

/// Divides `target` by the boundary images `images[i] = ∂(f_i)` in basis
/// order; returns the quotient expressed in the `f_i` or `None` on a
/// nonzero remainder.
fn divide_by_boundaries(target: &ModuleVector<Q>, images: &[ModuleVector<Q>]) -> Option<ModuleVector<Q>> {
    let mut rest = target.clone();
    let mut quotient = ModuleVector::zero();
    while !rest.is_zero() {
        let lt = rest.leading_term_with(MonomialOrder::Lex).ok()?.clone();
        let mut reduced = false;
        for (i, img) in images.iter().enumerate() {
            let Ok(lead) = img.leading_term_with(MonomialOrder::Lex) else { continue };
            if lead.position != lt.position {
                continue;
            }
            if let Some(m) = lt.monomial.divide(&lead.monomial) {
                let c = lt.coeff.div(&lead.coeff);
                rest = rest.sub(&img.mul_term(&c, &m));
                quotient = quotient.add(&ModuleVector::term(c, m, i));
                reduced = true;
                break;
            }
        }
        if !reduced {
            return None;
        }
    }
    Some(quotient)
}

/// Solves `∂_p f = target` in the multidegree `deg` by linear algebra.
pub(crate) fn lift_linear(c: &FreeComplex, p: usize, target: &ModuleVector<Q>, deg: &Multidegree) -> Option<ModuleVector<Q>> {
    let source = c.basis(p);
    let target_basis = c.basis(p - 1);
    let usable: Vec<usize> = (0..source.len()).filter(|&j| source.degree(j).dominated_by(deg)).collect();
    let columns: Vec<Vec<Q>> = usable
        .iter()
        .map(|&j| {
            let shifted = shift_to_degree(&c.differential(p)[j], source.degree(j), deg).expect("degree below");
            graded_coordinates(&shifted, &target_basis)
        })
        .collect();
    let x = linalg::solve(&columns, &graded_coordinates(target, &target_basis))?;
    Some(ModuleVector::from_terms(
        usable
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&j, coeff)| Term {
                coeff,
                monomial: Monomial::from_degree(deg.checked_sub(source.degree(j)).expect("le")).expect("le"),
                position: j,
            })
            .collect(),
    ))
}

/// Lifts `target ∈ Z_{p-1}` to `f ∈ F_p` with `∂_p f = target`.
fn lift(c: &FreeComplex, p: usize, target: &ModuleVector<Q>, fallback: &mut bool) -> Result<ModuleVector<Q>> {
    if target.is_zero() {
        return Ok(ModuleVector::zero());
    }
    if let Some(q) = divide_by_boundaries(target, c.differential(p)) {
        return Ok(q);
    }
    *fallback = true;
    let deg = multidegree_of(target, &c.basis(p - 1))
        .degree()
        .cloned()
        .ok_or_else(|| Error::LiftFailure("target is not multihomogeneous".into()))?;
    lift_linear(c, p, target, &deg).ok_or_else(|| Error::LiftFailure(format!("{target:?} is not a boundary")))
}

/// Comparison map from the Koszul complex on the variables `vars`, shifted by
/// `deg u`, into `f`, extending multiplication by `u`.
pub(crate) fn koszul_comparison(
    f: &FreeComplex,
    u: &Monomial,
    vars: &[usize],
    fallback: &mut bool,
) -> Result<ChainMap> {
    let n = f.n();
    let var_monomials: Vec<Monomial> = vars.iter().map(|&v| Monomial::var(n, v)).collect();
    let g = taylor_complex_shifted(&var_monomials, n, u.degree())?;
    let mut maps: Vec<Vec<ModuleVector<Q>>> = vec![vec![ModuleVector::term(Q::one(), u.clone(), 0)]];
    for k in 1..=g.length() {
        let mut cols = Vec::with_capacity(g.rank(k));
        for col in g.differential(k) {
            // φ_{k-1}(∂ g)
            let mut target = ModuleVector::zero();
            for t in col.terms() {
                target = target.add(&maps[k - 1][t.position].mul_term(&t.coeff, &t.monomial));
            }
            if k > f.length() && !target.is_zero() {
                return Err(Error::LiftFailure(format!("no F_{k} to lift into")));
            }
            let lifted = if k > f.length() { ModuleVector::zero() } else { lift(f, k, &target, fallback)? };
            cols.push(lifted);
        }
        maps.push(cols);
    }
    ChainMap::new(g, f.clone(), maps)
}

/// The Eliahou–Kervaire resolution of `S/I` for a stable ideal `I`, built as
/// the iterated mapping cone over the generators in [`stable_order`], with
/// Koszul complexes on the linear colon ideals.
pub fn eliahou_kervaire(ideal: &MonomialIdeal) -> Result<IteratedCone> {
    if let Some((u, j)) = stable_violation(ideal) {
        return Err(Error::NotStable(format!(
            "x{} * {u} / x{} is not in the ideal",
            j + 1,
            u.max_variable().expect("nonconstant") + 1
        )));
    }
    let gens = stable_order(ideal);
    if gens.is_empty() {
        return invalid("the zero ideal has no Eliahou-Kervaire resolution");
    }
    if gens.iter().any(Monomial::is_one) {
        return invalid("the unit ideal has no Eliahou-Kervaire resolution");
    }
    let LinearQuotients::Linear(sets) = linear_quotients(&gens)? else {
        return Err(Error::Internal("stable ideal without linear quotients".into()));
    };
    iterated_linear_cone(&gens, &sets)
}

/// Iterated mapping cone for a generator sequence with linear quotients.
pub(crate) fn iterated_linear_cone(gens: &[Monomial], sets: &[Vec<usize>]) -> Result<IteratedCone> {
    let n = gens[0].n();
    let mut complex = taylor_complex_shifted(&gens[..1], n, &Multidegree::zeros(n))?;
    let mut steps = Vec::with_capacity(gens.len() - 1);
    let mut fallback = false;
    for (j, vars) in sets.iter().enumerate() {
        let phi = koszul_comparison(&complex, &gens[j + 1], vars, &mut fallback)?;
        complex = mapping_cone(&phi)?;
        steps.push(phi);
    }
    let minimal = complex.is_minimal();
    Ok(IteratedCone { complex, generators: gens.to_vec(), steps, used_fallback_lift: fallback, minimal })
}
