//! Exponent vectors, monomials and monomial orders.
//!
//! Variables are indexed from 0 internally and printed from 1, so `x1` is the
//! variable with index 0. The variable priority is fixed as `x1 > x2 > … > xn`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// An integer vector of length `n`, used both for monomial degrees and for
/// degree shifts of basis elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i32>);

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Multidegree {
    pub fn new(exponents: Vec<i32>) -> Self {
        Multidegree(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The canonical basis vector with a single 1 at index `r`.
    pub fn unit(n: usize, r: usize) -> Self {
        let mut v = vec![0; n];
        v[r] = 1;
        Multidegree(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        check_len(self.n(), other.n())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Result<Multidegree> {
        check_len(self.n(), other.n())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Multidegree) -> bool {
        self.n() == other.n() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn componentwise_max(&self, other: &Multidegree) -> Multidegree {
        assert_eq!(self.n(), other.n(), "variable count mismatch");
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Lexicographic comparison: the first differing coordinate decides.
pub fn lex_compare(a: &Multidegree, b: &Multidegree) -> Result<Ordering> {
    check_len(a.n(), b.n())?;
    Ok(a.0.cmp(&b.0))
}

/// A monomial `x^a` with `a` componentwise nonnegative.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Monomial(Multidegree);

impl TryFrom<Vec<i32>> for Monomial {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Monomial::new(v)
    }
}

impl From<Monomial> for Vec<i32> {
    fn from(m: Monomial) -> Self {
        m.0 .0
    }
}

impl Monomial {
    pub fn new(exponents: Vec<i32>) -> Result<Self> {
        if exponents.iter().any(|&e| e < 0) {
            return Err(Error::InvalidInput(format!(
                "negative exponent in monomial {exponents:?}"
            )));
        }
        Ok(Monomial(Multidegree(exponents)))
    }

    pub fn from_degree(d: Multidegree) -> Result<Self> {
        Monomial::new(d.0)
    }

    pub fn one(n: usize) -> Self {
        Monomial(Multidegree::zeros(n))
    }

    /// The variable with index `i` (printed as `x{i+1}`).
    pub fn var(n: usize, i: usize) -> Self {
        Monomial(Multidegree::unit(n, i))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn exponents(&self) -> &[i32] {
        self.0.as_slice()
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.0.get(i)
    }

    pub fn degree(&self) -> &Multidegree {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.total()
    }

    pub fn is_one(&self) -> bool {
        self.0 .0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0.checked_add(&other.0).map(Monomial)
    }

    /// Product; panics on mismatched variable counts or exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial product")
    }

    pub fn try_lcm(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.n(), other.n())?;
        Ok(Monomial(self.0.componentwise_max(&other.0)))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.try_lcm(other).expect("monomial lcm")
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "variable count mismatch");
        Monomial(Multidegree(
            self.exponents()
                .iter()
                .zip(other.exponents())
                .map(|(a, b)| *a.min(b))
                .collect(),
        ))
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.dominated_by(&other.0)
    }

    /// `self / divisor` when the division is exact.
    pub fn try_divide(&self, divisor: &Monomial) -> Result<Option<Monomial>> {
        check_len(self.n(), divisor.n())?;
        if divisor.divides(self) {
            Ok(Some(Monomial(self.0.checked_sub(&divisor.0)?)))
        } else {
            Ok(None)
        }
    }

    pub fn divide(&self, divisor: &Monomial) -> Option<Monomial> {
        self.try_divide(divisor).expect("monomial division")
    }

    /// Indices of the variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents().iter().all(|&e| e <= 1)
    }

    /// Largest index of a variable dividing the monomial.
    pub fn max_variable(&self) -> Option<usize> {
        self.exponents().iter().rposition(|&e| e > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &e) in self.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monomial orders with the fixed variable priority `x1 > x2 > … > xn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::DegRevLex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                // the last differing exponent decides, smaller exponent wins
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub const ALL: [MonomialOrder; 2] = [MonomialOrder::Lex, MonomialOrder::DegRevLex];
}
