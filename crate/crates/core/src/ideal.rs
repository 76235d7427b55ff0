//! Monomial ideals given by monomial generators.

use crate::error::{invalid, Error, Result};
use crate::monomial::{Monomial, Multidegree};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A monomial ideal in `n` variables. The generator list is kept as given;
/// use [`MonomialIdeal::minimalized`] for the unique minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.n() });
            }
        }
        Ok(MonomialIdeal { n, generators })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, generators: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, generators: vec![Monomial::one(n)] }
    }

    /// The graded maximal ideal `(x1, …, xn)`.
    pub fn maximal(n: usize) -> Self {
        MonomialIdeal { n, generators: (0..n).map(|i| Monomial::var(n, i)).collect() }
    }

    pub fn from_exponents(n: usize, exps: &[Vec<i32>]) -> Result<Self> {
        let gens = exps
            .iter()
            .map(|e| {
                if e.len() != n {
                    Err(Error::DimensionMismatch { expected: n, found: e.len() })
                } else {
                    Monomial::new(e.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    /// Minimal generators, sorted by total degree and then lexicographically
    /// descending.
    pub fn minimal_generators(&self) -> Vec<Monomial> {
        minimalize(&self.generators)
    }

    pub fn minimalized(&self) -> MonomialIdeal {
        MonomialIdeal { n: self.n, generators: self.minimal_generators() }
    }

    /// `I : (u)`, generated by `g / gcd(g, u)`.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        let gens = self
            .generators
            .iter()
            .map(|g| g.divide(&g.gcd(u)).expect("gcd divides"))
            .collect::<Vec<_>>();
        MonomialIdeal { n: self.n, generators: minimalize(&gens) }
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_squarefree(&self) -> bool {
        self.minimal_generators().iter().all(Monomial::is_squarefree)
    }

    /// Componentwise maximum of the generator exponents (the lcm of the generators).
    pub fn lcm_degree(&self) -> Multidegree {
        self.generators
            .iter()
            .fold(Multidegree::zeros(self.n), |acc, g| acc.componentwise_max(g.degree()))
    }

    /// Variables that occur in no minimal generator.
    pub fn absent_variables(&self) -> Vec<usize> {
        let gens = self.minimal_generators();
        (0..self.n).filter(|&i| gens.iter().all(|g| g.exponent(i) == 0)).collect()
    }

    /// Restrict to the variables in `keep` (generators must not involve others).
    pub fn restrict_to(&self, keep: &[usize]) -> Result<MonomialIdeal> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            for i in 0..self.n {
                if g.exponent(i) > 0 && !keep.contains(&i) {
                    return invalid(format!("generator {g} involves a dropped variable x{}", i + 1));
                }
            }
            gens.push(Monomial::new(keep.iter().map(|&i| g.exponent(i)).collect())?);
        }
        MonomialIdeal::new(keep.len(), gens)
    }
}

/// Removes duplicates and non-minimal elements; the result is sorted by total
/// degree, then lexicographically descending.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.exponents().cmp(a.exponents()))
    });
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in sorted {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, e: &[&[i32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &e.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn minimal_generators_drop_multiples() {
        let i = ideal(2, &[&[2, 0], &[1, 0], &[1, 1], &[0, 2], &[1, 0]]);
        assert_eq!(i.minimalized(), ideal(2, &[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn colon_by_monomial() {
        // (x1x2) : (x2x3) = (x1)
        let i = ideal(3, &[&[1, 1, 0]]);
        let u = Monomial::new(vec![0, 1, 1]).unwrap();
        assert_eq!(i.colon(&u), ideal(3, &[&[1, 0, 0]]));
    }

    #[test]
    fn absent_and_restrict() {
        let i = ideal(4, &[&[0, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(i.absent_variables(), vec![0]);
        let r = i.restrict_to(&[1, 2, 3]).unwrap();
        assert_eq!(r, ideal(3, &[&[1, 0, 0], &[0, 1, 1]]));
        assert!(i.restrict_to(&[2, 3]).is_err());
    }

    #[test]
    fn mismatched_generators_rejected() {
        assert!(MonomialIdeal::from_exponents(2, &[vec![1, 0, 0]]).is_err());
    }
}
