use super::chain::{BasisLabel, FreeComplex};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, Q};
use crate::module::{ModuleVector, OrderedBasis, Term};
use crate::monomial::{Monomial, Multidegree};
use std::collections::HashMap;

/// All `p`-subsets of `0..m` in the iterated mapping-cone order: `F > G`
/// when, scanning from the largest elements down, the first difference has
/// the larger element in `F`. The first subset in the result is the greatest.
pub fn taylor_order_subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    rec(0, m, p, &mut cur, &mut out);
    out.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
    out
}

fn lcm_of(u: &[Monomial], subset: &[usize], n: usize) -> Monomial {
    subset.iter().fold(Monomial::one(n), |acc, &i| acc.lcm(&u[i]))
}

/// Taylor complex of an arbitrary monomial sequence (units allowed), with all
/// basis degrees shifted by `shift`.
pub(crate) fn taylor_complex_shifted(u: &[Monomial], n: usize, shift: &Multidegree) -> Result<FreeComplex> {
    for g in u {
        if g.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.n() });
        }
    }
    let m = u.len();
    let mut bases = Vec::with_capacity(m + 1);
    let mut labels = Vec::with_capacity(m + 1);
    let mut differentials: Vec<Vec<ModuleVector<Q>>> = Vec::with_capacity(m + 1);
    let mut prev_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for p in 0..=m {
        let subsets = taylor_order_subsets(m, p);
        let lcms: Vec<Monomial> = subsets.iter().map(|s| lcm_of(u, s, n)).collect();
        let degrees = lcms
            .iter()
            .map(|l| l.degree().checked_add(shift))
            .collect::<Result<Vec<_>>>()?;
        bases.push(OrderedBasis::new(n, degrees)?);
        labels.push(
            subsets
                .iter()
                .map(|s| if p == 0 { BasisLabel::Unit } else { BasisLabel::Subset(s.iter().map(|i| i + 1).collect()) })
                .collect(),
        );
        let mut cols = Vec::new();
        if p > 0 {
            for (s, l) in subsets.iter().zip(&lcms) {
                let mut terms = Vec::with_capacity(p);
                for j in 0..p {
                    let mut face = s.clone();
                    face.remove(j);
                    let coeff = if j % 2 == 0 { Q::one() } else { Q::one().neg() };
                    let quotient = l.divide(&lcm_of(u, &face, n)).expect("lcm of a face divides");
                    terms.push(Term { coeff, monomial: quotient, position: prev_index[&face] });
                }
                cols.push(ModuleVector::from_terms(terms));
            }
        }
        differentials.push(cols);
        prev_index = subsets.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    }
    FreeComplex::new(n, bases, labels, differentials)
}

/// The Taylor complex on `u_1, …, u_m`: `F_p` has basis `e_F`, `|F| = p`, of
/// degree `deg lcm(u_F)`, and
/// `∂(e_F) = Σ_j (-1)^(j+1) (u_F / u_{F∖i_j}) e_{F∖i_j}`.
pub fn taylor_complex(u: &[Monomial]) -> Result<FreeComplex> {
    let Some(first) = u.first() else {
        return invalid("the Taylor complex needs at least one generator");
    };
    let n = first.n();
    if let Some(i) = u.iter().position(Monomial::is_one) {
        return invalid(format!("generator {} is 1: the ideal is the unit ideal", i + 1));
    }
    taylor_complex_shifted(u, n, &Multidegree::zeros(n))
}

/// A Koszul complex together with whether the sequence was a regular sequence
/// of monomials (pairwise coprime), in which case the complex is minimal.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub complex: FreeComplex,
    pub regular: bool,
}

/// Koszul complex of a monomial sequence. For a non-regular sequence the
/// Taylor complex is returned with `regular = false`.
pub fn koszul_complex(u: &[Monomial]) -> Result<KoszulComplex> {
    let complex = taylor_complex(u)?;
    let regular = u
        .iter()
        .enumerate()
        .all(|(i, a)| u[i + 1..].iter().all(|b| a.gcd(b).is_one()));
    Ok(KoszulComplex { complex, regular })
}
