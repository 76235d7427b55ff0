//! Free multigraded modules: ordered bases, term sums and the
//! position-over-term order.
//!
//! A basis is an ordered sequence `e_0, e_1, …`; the sequence order is the
//! module order, so `e_i > e_j` whenever `i < j`. Terms are compared by
//! position first and by a scalar monomial order within one position.

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg;
use crate::monomial::{lex_compare, Monomial, MonomialOrder, Multidegree};
use std::cmp::Ordering;
use std::fmt;

/// An ordered multihomogeneous basis, described by the degrees of its elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderedBasis {
    n: usize,
    degrees: Vec<Multidegree>,
}

impl OrderedBasis {
    pub fn new(n: usize, degrees: Vec<Multidegree>) -> Result<Self> {
        for d in &degrees {
            if d.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: d.n() });
            }
        }
        Ok(OrderedBasis { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, position: usize) -> &Multidegree {
        &self.degrees[position]
    }

    pub fn degrees(&self) -> &[Multidegree] {
        &self.degrees
    }

    /// Whether `deg(e_1) ≥ deg(e_2) ≥ …` lexicographically.
    pub fn is_lex_refined(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] >= w[1])
    }

    /// The basis reordered by `perm`, where `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> OrderedBasis {
        let mut degrees = vec![Multidegree::zeros(self.n); self.len()];
        for (old, &new) in perm.iter().enumerate() {
            degrees[new] = self.degrees[old].clone();
        }
        OrderedBasis { n: self.n, degrees }
    }
}

/// Stable sort into a lex-refined basis. Returns the sorted basis and the
/// permutation `perm[old] = new`.
pub fn sort_lex_refined(basis: &OrderedBasis) -> (OrderedBasis, Vec<usize>) {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        lex_compare(basis.degree(b), basis.degree(a)).expect("basis degrees share n")
    });
    let mut perm = vec![0; basis.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    (basis.permuted(&perm), perm)
}

/// A nonzero term `c · u · e_position`.
#[derive(Clone, PartialEq, Eq)]
pub struct Term<K: Field = Q> {
    pub coeff: K,
    pub monomial: Monomial,
    pub position: usize,
}

impl<K: Field> fmt::Debug for Term<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}*e{}", self.coeff.to_exact_string(), self.monomial, self.position)
    }
}

/// Canonical storage order: position ascending, monomials lex descending.
fn canonical_cmp(a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| b.1.exponents().cmp(a.1.exponents()))
}

/// An element of a free module as a normalized sum of terms. No two terms
/// share `(monomial, position)` and no coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector<K: Field = Q> {
    terms: Vec<Term<K>>,
}

impl<K: Field> Default for ModuleVector<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> fmt::Debug for ModuleVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t:?}")?;
        }
        Ok(())
    }
}

impl<K: Field> ModuleVector<K> {
    pub fn zero() -> Self {
        ModuleVector { terms: Vec::new() }
    }

    pub fn term(coeff: K, monomial: Monomial, position: usize) -> Self {
        Self::from_terms(vec![Term { coeff, monomial, position }])
    }

    /// Builds a normalized vector, combining like terms.
    pub fn from_terms(mut terms: Vec<Term<K>>) -> Self {
        terms.sort_by(|a, b| canonical_cmp((a.position, &a.monomial), (b.position, &b.monomial)));
        let mut out: Vec<Term<K>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.position == t.position && last.monomial == t.monomial => {
                    last.coeff = last.coeff.add(&t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ModuleVector { terms: out }
    }

    pub fn terms(&self) -> &[Term<K>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<K>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                canonical_cmp((a[i].position, &a[i].monomial), (b[j].position, &b[j].monomial))
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let mut t = b[j].clone();
                    if negate {
                        t.coeff = t.coeff.neg();
                    }
                    out.push(t);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].coeff.sub(&b[j].coeff) } else { a[i].coeff.add(&b[j].coeff) };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, monomial: a[i].monomial.clone(), position: a[i].position });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModuleVector { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.mul(c), monomial: t.monomial.clone(), position: t.position })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().neg())
    }

    /// Multiplication by `c · m`; monomial multiplication preserves the
    /// canonical storage order.
    pub fn mul_term(&self, c: &K, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.mul(c), monomial: t.monomial.mul(m), position: t.position })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(&K::one(), m)
    }

    /// Maximal term under the position-over-term order with the given scalar order.
    pub fn leading_term_with(&self, order: MonomialOrder) -> Result<&Term<K>> {
        let first = self.terms.first().ok_or(Error::ZeroVector)?;
        let pos = first.position;
        let lt = self
            .terms
            .iter()
            .take_while(|t| t.position == pos)
            .max_by(|a, b| order.cmp(&a.monomial, &b.monomial))
            .expect("nonempty block");
        Ok(lt)
    }

    /// Relabels positions through `perm[old] = new`.
    pub fn permute_positions(&self, perm: &[usize]) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term { coeff: t.coeff.clone(), monomial: t.monomial.clone(), position: perm[t.position] })
                .collect(),
        )
    }

    /// Shifts every position by `offset` (embedding into a larger direct sum).
    pub fn shift_positions(&self, offset: usize) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.clone(), monomial: t.monomial.clone(), position: t.position + offset })
                .collect(),
        }
    }

    /// The part supported on positions in `range`, re-indexed from `range.start`.
    pub fn restrict_positions(&self, range: std::ops::Range<usize>) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.position))
                .map(|t| Term { coeff: t.coeff.clone(), monomial: t.monomial.clone(), position: t.position - range.start })
                .collect(),
        }
    }

    /// Coefficient of `m · e_position`.
    pub fn coefficient(&self, m: &Monomial, position: usize) -> K {
        self.terms
            .iter()
            .find(|t| t.position == position && &t.monomial == m)
            .map_or_else(K::zero, |t| t.coeff.clone())
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.position).max()
    }

    pub fn map_coefficients<L: Field>(&self, f: impl Fn(&K) -> L) -> ModuleVector<L> {
        ModuleVector::from_terms(
            self.terms
                .iter()
                .map(|t| Term { coeff: f(&t.coeff), monomial: t.monomial.clone(), position: t.position })
                .collect(),
        )
    }
}

/// The position-over-term order attached to an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub basis: OrderedBasis,
    pub scalar: MonomialOrder,
}

impl TermOrder {
    pub fn new(basis: OrderedBasis, scalar: MonomialOrder) -> Self {
        TermOrder { basis, scalar }
    }

    /// `u e_i > v e_j` iff `i < j`, or `i = j` and `u > v`.
    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.scalar.cmp(a.1, b.1))
    }
}

pub fn leading_term<'a, K: Field>(v: &'a ModuleVector<K>, order: &TermOrder) -> Result<&'a Term<K>> {
    v.leading_term_with(order.scalar)
}

/// Multidegree data of a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorDegree {
    Zero,
    Homogeneous(Multidegree),
    Inhomogeneous,
}

impl VectorDegree {
    pub fn degree(&self) -> Option<&Multidegree> {
        match self {
            VectorDegree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

pub fn multidegree_of<K: Field>(v: &ModuleVector<K>, basis: &OrderedBasis) -> VectorDegree {
    let mut deg: Option<Multidegree> = None;
    for t in v.terms() {
        let d = t
            .monomial
            .degree()
            .checked_add(basis.degree(t.position))
            .expect("term degree");
        match &deg {
            None => deg = Some(d),
            Some(e) if *e != d => return VectorDegree::Inhomogeneous,
            _ => {}
        }
    }
    deg.map_or(VectorDegree::Zero, VectorDegree::Homogeneous)
}

/// A rectangle of multidegrees `lower ≤ a ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    pub lower: Multidegree,
    pub upper: Multidegree,
}

impl DegreeBox {
    pub fn new(lower: Multidegree, upper: Multidegree) -> Self {
        assert_eq!(lower.n(), upper.n(), "box corners share n");
        DegreeBox { lower, upper }
    }

    /// The box `[0, upper]`.
    pub fn up_to(upper: Multidegree) -> Self {
        DegreeBox { lower: Multidegree::zeros(upper.n()), upper }
    }

    /// The default certification box `[0, g + 1]`.
    pub fn around(g: &Multidegree) -> Self {
        let upper = Multidegree::new(g.as_slice().iter().map(|e| e + 1).collect());
        DegreeBox::up_to(upper)
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        self.lower.dominated_by(a) && a.dominated_by(&self.upper)
    }

    /// All multidegrees of the box, in lex order.
    pub fn points(&self) -> Vec<Multidegree> {
        let n = self.lower.n();
        let mut out = Vec::new();
        if !self.lower.dominated_by(&self.upper) {
            return out;
        }
        let mut cur: Vec<i32> = self.lower.as_slice().to_vec();
        loop {
            out.push(Multidegree::new(cur.clone()));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.upper.get(i) {
                    cur[i] += 1;
                    for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = self.lower.get(j);
                    }
                    break;
                }
            }
        }
    }
}

/// Coordinates of a vector homogeneous of degree `a`, one entry per basis
/// position (the monomial at position `j` is forced to be `x^(a - deg e_j)`).
pub fn graded_coordinates<K: Field>(v: &ModuleVector<K>, basis: &OrderedBasis) -> Vec<K> {
    let mut out = vec![K::zero(); basis.len()];
    for t in v.terms() {
        out[t.position] = t.coeff.clone();
    }
    out
}

/// `x^(a - deg)` as a vector-space element of degree `a`, if `deg ≤ a`.
pub fn shift_to_degree<K: Field>(
    v: &ModuleVector<K>,
    v_degree: &Multidegree,
    a: &Multidegree,
) -> Option<ModuleVector<K>> {
    let diff = a.checked_sub(v_degree).ok()?;
    let m = Monomial::from_degree(diff).ok()?;
    Some(v.mul_monomial(&m))
}

/// A vector-space basis of the degree-`a` piece of the submodule generated by
/// the multihomogeneous `gens`.
pub fn graded_piece<K: Field>(
    gens: &[ModuleVector<K>],
    a: &Multidegree,
    basis: &OrderedBasis,
    degree_box: &DegreeBox,
) -> Result<Vec<ModuleVector<K>>> {
    if !degree_box.contains(a) {
        return Err(Error::OutsideBox(a.as_slice().iter().map(|&e| e as i64).collect()));
    }
    let mut rows = Vec::new();
    for g in gens {
        match multidegree_of(g, basis) {
            VectorDegree::Zero => {}
            VectorDegree::Inhomogeneous => {
                return Err(Error::InvalidInput(format!("generator {g:?} is not multihomogeneous")))
            }
            VectorDegree::Homogeneous(d) => {
                if let Some(shifted) = shift_to_degree(g, &d, a) {
                    rows.push(graded_coordinates(&shifted, basis));
                }
            }
        }
    }
    linalg::rref(&mut rows);
    Ok(rows
        .into_iter()
        .map(|row| {
            ModuleVector::from_terms(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| Term {
                        coeff: c,
                        monomial: Monomial::from_degree(a.checked_sub(basis.degree(j)).expect("in range"))
                            .expect("nonnegative"),
                        position: j,
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Dimension of the degree-`a` piece of the submodule generated by `gens`.
pub fn graded_dimension<K: Field>(gens: &[ModuleVector<K>], a: &Multidegree, basis: &OrderedBasis) -> usize {
    let rows: Vec<Vec<K>> = gens
        .iter()
        .filter_map(|g| {
            let d = multidegree_of(g, basis);
            let d = d.degree()?;
            shift_to_degree(g, d, a).map(|s| graded_coordinates(&s, basis))
        })
        .collect();
    linalg::rank(&rows)
}
