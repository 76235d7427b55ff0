//! Coefficient fields: exact rationals and small prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{self, Debug, Display};

/// Exact rationals, the default coefficient field.
pub type Q = BigRational;

/// Operations the linear algebra and Gröbner routines need from a field.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational number; panics when the denominator is not invertible.
    fn from_rational(q: &Q) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Exact textual form "p/q" (or "p" for integers).
    fn to_exact_string(&self) -> String;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn to_exact_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// The prime field Z/P for a prime `P < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zp<const P: u64>(u64);

/// A convenient 31-bit prime.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

impl<const P: u64> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Zp(acc)
    }
}

impl<const P: u64> Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Zp::new(v)
    }
    fn from_rational(q: &Q) -> Self {
        let p = BigInt::from(P);
        let num = (q.numer() % &p + &p) % &p;
        let den = (q.denom() % &p + &p) % &p;
        let num = Zp::<P>(num.to_u64().expect("reduced numerator"));
        let den = Zp::<P>(den.abs().to_u64().expect("reduced denominator"));
        num.div(&den)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Zp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Zp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Zp(self.0 * other.0 % P)
    }
    fn neg(&self) -> Self {
        Zp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }
}
