use crate::error::{invalid, Error, Result};
use crate::field::Q;
use crate::linalg;
use crate::module::{graded_coordinates, multidegree_of, DegreeBox, ModuleVector, OrderedBasis, VectorDegree};
use crate::monomial::Multidegree;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Where a basis element came from.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisLabel {
    /// The generator of `F_0 = S`.
    Unit,
    /// A Taylor basis element `e_F`; indices are 1-based generator numbers.
    Subset(Vec<usize>),
    /// A mapping-cone element, tagged with the summand it came from.
    Cone { from_g: bool, inner: Box<BasisLabel> },
}

impl fmt::Debug for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Unit => write!(f, "1"),
            BasisLabel::Subset(s) => write!(f, "e{s:?}"),
            BasisLabel::Cone { from_g, inner } => write!(f, "{}({inner:?})", if *from_g { "G" } else { "F" }),
        }
    }
}

/// A finite free complex `F_len → … → F_1 → F_0` of multigraded modules.
///
/// `differentials[p]` holds, for `p ≥ 1`, the images `∂_p(e)` of the basis of
/// `F_p` as vectors in `F_{p-1}`; `differentials[0]` is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeComplex {
    n: usize,
    bases: Vec<OrderedBasis>,
    labels: Vec<Vec<BasisLabel>>,
    differentials: Vec<Vec<ModuleVector<Q>>>,
}

impl FreeComplex {
    /// Assembles a complex, checking shapes and that every differential
    /// preserves multidegrees.
    pub fn new(
        n: usize,
        bases: Vec<OrderedBasis>,
        labels: Vec<Vec<BasisLabel>>,
        differentials: Vec<Vec<ModuleVector<Q>>>,
    ) -> Result<Self> {
        if bases.is_empty() || bases.len() != labels.len() || bases.len() != differentials.len() {
            return invalid("complex needs matching bases, labels and differentials");
        }
        for p in 0..bases.len() {
            if bases[p].n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: bases[p].n() });
            }
            if labels[p].len() != bases[p].len() {
                return invalid(format!("label count differs from rank at degree {p}"));
            }
            if p == 0 {
                if !differentials[0].is_empty() {
                    return invalid("F_0 has no outgoing differential");
                }
                continue;
            }
            if differentials[p].len() != bases[p].len() {
                return invalid(format!("differential {p} has wrong column count"));
            }
            for (j, col) in differentials[p].iter().enumerate() {
                if col.max_position().is_some_and(|m| m >= bases[p - 1].len()) {
                    return invalid(format!("column {j} of differential {p} leaves F_{}", p - 1));
                }
                match multidegree_of(col, &bases[p - 1]) {
                    VectorDegree::Zero => {}
                    VectorDegree::Homogeneous(d) if &d == bases[p].degree(j) => {}
                    _ => {
                        return invalid(format!("column {j} of differential {p} does not preserve multidegree"));
                    }
                }
            }
        }
        let mut c = FreeComplex { n, bases, labels, differentials };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while self.bases.len() > 1 && self.bases.last().is_some_and(OrderedBasis::is_empty) {
            self.bases.pop();
            self.labels.pop();
            self.differentials.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest homological degree with a nonzero module.
    pub fn length(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, OrderedBasis::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(OrderedBasis::len).collect()
    }

    pub fn basis(&self, p: usize) -> OrderedBasis {
        self.bases.get(p).cloned().unwrap_or_else(|| OrderedBasis::new(self.n, vec![]).unwrap())
    }

    pub fn labels(&self, p: usize) -> &[BasisLabel] {
        self.labels.get(p).map_or(&[], Vec::as_slice)
    }

    /// Columns of `∂_p`; empty for `p = 0` and beyond the length.
    pub fn differential(&self, p: usize) -> &[ModuleVector<Q>] {
        self.differentials.get(p).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn into_parts(
        self,
    ) -> (usize, Vec<OrderedBasis>, Vec<Vec<BasisLabel>>, Vec<Vec<ModuleVector<Q>>>) {
        (self.n, self.bases, self.labels, self.differentials)
    }

    /// `∂_p(v)` for `v ∈ F_p`.
    pub fn apply(&self, p: usize, v: &ModuleVector<Q>) -> ModuleVector<Q> {
        let cols = self.differential(p);
        let mut out = ModuleVector::zero();
        for t in v.terms() {
            out = out.add(&cols[t.position].mul_term(&t.coeff, &t.monomial));
        }
        out
    }

    /// Whether `∂_p ∘ ∂_{p+1} = 0` for all `p`; degree preservation is
    /// enforced by the constructor.
    pub fn check_complex(&self) -> bool {
        (2..=self.length()).all(|p| self.differential(p).iter().all(|col| self.apply(p - 1, col).is_zero()))
    }

    /// Whether every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials
            .iter()
            .flatten()
            .all(|col| col.terms().iter().all(|t| !t.monomial.is_one()))
    }

    /// Reorders the basis of `F_p` by `perm[old] = new`.
    pub fn permute_basis(&self, p: usize, perm: &[usize]) -> FreeComplex {
        let mut c = self.clone();
        c.bases[p] = self.bases[p].permuted(perm);
        let mut labels = self.labels[p].clone();
        let mut cols = self.differentials[p].clone();
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[p][old].clone();
            if p > 0 {
                cols[new] = self.differentials[p][old].clone();
            }
        }
        c.labels[p] = labels;
        c.differentials[p] = cols;
        if p < self.length() {
            c.differentials[p + 1] = self.differentials[p + 1].iter().map(|v| v.permute_positions(perm)).collect();
        }
        c
    }

    /// The same complex with every basis sorted lex-refined (stable sort).
    pub fn lex_refined(&self) -> FreeComplex {
        let mut c = self.clone();
        for p in 0..=self.length() {
            let (_, perm) = crate::module::sort_lex_refined(&c.bases[p]);
            c = c.permute_basis(p, &perm);
        }
        c
    }

    /// Componentwise maximum of all basis degrees.
    pub fn max_degree(&self) -> Multidegree {
        self.bases
            .iter()
            .flat_map(|b| b.degrees().iter())
            .fold(Multidegree::zeros(self.n), |acc, d| acc.componentwise_max(d))
    }

    /// Rank of `∂_p` in multidegree `a`.
    pub(crate) fn rank_in_degree(&self, p: usize, a: &Multidegree) -> usize {
        if p == 0 || p > self.length() {
            return 0;
        }
        let target = &self.bases[p - 1];
        let rows: Vec<Vec<Q>> = self.bases[p]
            .degrees()
            .iter()
            .zip(self.differential(p))
            .filter(|(d, _)| d.dominated_by(a))
            .map(|(_, col)| graded_coordinates(col, target))
            .collect();
        linalg::rank(&rows)
    }

    pub(crate) fn dim_in_degree(&self, p: usize, a: &Multidegree) -> usize {
        self.bases.get(p).map_or(0, |b| b.degrees().iter().filter(|d| d.dominated_by(a)).count())
    }
}

/// Generators of `Z_p = ker ∂_p`, taken as the columns of `∂_{p+1}`.
pub fn syzygy_generators(c: &FreeComplex, p: usize) -> Result<Vec<ModuleVector<Q>>> {
    if p < 1 {
        return invalid("syzygy index must be at least 1 (Z_0 is the resolved module)");
    }
    Ok(c.differential(p + 1).to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    pub degree: Vec<i32>,
    pub position: usize,
}

/// Outcome of a per-multidegree exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub box_lower: Vec<i32>,
    pub box_upper: Vec<i32>,
    pub degrees_checked: usize,
    pub complex_ok: bool,
    pub failures: Vec<ExactnessFailure>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.complex_ok && self.failures.is_empty()
    }
}

/// Checks `∂∘∂ = 0` and, for every multidegree of the box, exactness of the
/// graded pieces at every positive homological position, plus `im ∂_1 = M` in
/// each degree where `M ⊆ F_0` is generated by `module_gens`.
pub fn check_exactness_on_box(
    c: &FreeComplex,
    module_gens: &[ModuleVector<Q>],
    degree_box: &DegreeBox,
) -> ExactnessReport {
    let complex_ok = c.check_complex();
    let f0 = c.basis(0);
    let points = degree_box.points();
    let mut failures: Vec<ExactnessFailure> = points
        .par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let ranks: Vec<usize> = (0..=c.length() + 1).map(|p| c.rank_in_degree(p, a)).collect();
            for p in 1..=c.length() {
                if ranks[p] + ranks[p + 1] != c.dim_in_degree(p, a) {
                    out.push(ExactnessFailure { degree: a.as_slice().to_vec(), position: p });
                }
            }
            // position 0: image of ∂_1 equals M in degree a
            let image: Vec<Vec<Q>> = c
                .basis(1)
                .degrees()
                .iter()
                .zip(c.differential(1))
                .filter(|(d, _)| d.dominated_by(a))
                .map(|(_, col)| graded_coordinates(col, &f0))
                .collect();
            let module: Vec<Vec<Q>> = module_gens
                .iter()
                .filter_map(|g| {
                    let d = multidegree_of(g, &f0);
                    let d = d.degree()?.clone();
                    crate::module::shift_to_degree(g, &d, a).map(|s| graded_coordinates(&s, &f0))
                })
                .collect();
            let r_img = linalg::rank(&image);
            let r_mod = linalg::rank(&module);
            let both: Vec<Vec<Q>> = image.iter().chain(module.iter()).cloned().collect();
            if r_img != r_mod || linalg::rank(&both) != r_img {
                out.push(ExactnessFailure { degree: a.as_slice().to_vec(), position: 0 });
            }
            out.into_iter()
        })
        .collect();
    failures.sort_by(|x, y| x.degree.cmp(&y.degree).then(x.position.cmp(&y.position)));
    ExactnessReport {
        box_lower: degree_box.lower.as_slice().to_vec(),
        box_upper: degree_box.upper.as_slice().to_vec(),
        degrees_checked: points.len(),
        complex_ok,
        failures,
    }
}
