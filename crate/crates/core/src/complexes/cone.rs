use super::chain::{BasisLabel, FreeComplex};
use super::taylor::{taylor_complex_shifted, taylor_order_subsets};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, Q};
use crate::module::{multidegree_of, ModuleVector, OrderedBasis, VectorDegree};
use crate::monomial::{Monomial, Multidegree};

/// A degree-preserving chain map `φ: G → F`; `maps[i][j] = φ_i(g_j) ∈ F_i`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub maps: Vec<Vec<ModuleVector<Q>>>,
}

impl ChainMap {
    /// Builds a chain map after checking degrees and `∂_F φ_i = φ_{i-1} ∂_G`.
    pub fn new(source: FreeComplex, target: FreeComplex, maps: Vec<Vec<ModuleVector<Q>>>) -> Result<Self> {
        let phi = ChainMap { source, target, maps };
        phi.check()?;
        Ok(phi)
    }

    /// `φ_i(v)` for `v ∈ G_i`.
    pub fn apply(&self, i: usize, v: &ModuleVector<Q>) -> ModuleVector<Q> {
        let cols = self.maps.get(i).map_or(&[][..], Vec::as_slice);
        let mut out = ModuleVector::zero();
        for t in v.terms() {
            out = out.add(&cols[t.position].mul_term(&t.coeff, &t.monomial));
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let (g, f) = (&self.source, &self.target);
        if g.n() != f.n() {
            return Err(Error::DimensionMismatch { expected: f.n(), found: g.n() });
        }
        if self.maps.len() != g.length() + 1 {
            return invalid("chain map needs one component per homological degree of the source");
        }
        for i in 0..=g.length() {
            if self.maps[i].len() != g.rank(i) {
                return invalid(format!("chain map component {i} has wrong column count"));
            }
            let target_basis = f.basis(i);
            for (j, col) in self.maps[i].iter().enumerate() {
                if col.max_position().is_some_and(|m| m >= target_basis.len()) {
                    return Err(Error::NotAChainMap { degree: i, element: j });
                }
                match multidegree_of(col, &target_basis) {
                    VectorDegree::Zero => {}
                    VectorDegree::Homogeneous(d) if &d == g.basis(i).degree(j) => {}
                    _ => return Err(Error::NotAChainMap { degree: i, element: j }),
                }
                if i >= 1 {
                    let lhs = f.apply(i, col);
                    let rhs = self.apply(i - 1, &g.differential(i)[j]);
                    if lhs != rhs {
                        return Err(Error::NotAChainMap { degree: i, element: j });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Mapping cone `C_i = G_{i-1} ⊕ F_i` with the composed basis
/// `g_1, …, g_r, f_1, …, f_s` and differential
/// `∂(g, f) = (-∂_G g, φ(g) + ∂_F f)`.
pub fn mapping_cone(phi: &ChainMap) -> Result<FreeComplex> {
    phi.check()?;
    let (g, f) = (&phi.source, &phi.target);
    let n = f.n();
    let len = (g.length() + 1).max(f.length());
    let mut bases = Vec::with_capacity(len + 1);
    let mut labels = Vec::with_capacity(len + 1);
    let mut differentials = Vec::with_capacity(len + 1);
    for i in 0..=len {
        let g_part = if i >= 1 { g.basis(i - 1) } else { OrderedBasis::new(n, vec![])? };
        let f_part = f.basis(i);
        let degrees: Vec<Multidegree> = g_part.degrees().iter().chain(f_part.degrees()).cloned().collect();
        bases.push(OrderedBasis::new(n, degrees)?);
        let mut lab: Vec<BasisLabel> = Vec::with_capacity(g_part.len() + f_part.len());
        if i >= 1 {
            lab.extend(g.labels(i - 1).iter().map(|l| BasisLabel::Cone { from_g: true, inner: Box::new(l.clone()) }));
        }
        lab.extend(f.labels(i).iter().map(|l| BasisLabel::Cone { from_g: false, inner: Box::new(l.clone()) }));
        labels.push(lab);

        let mut cols = Vec::new();
        if i >= 1 {
            let offset = if i >= 2 { g.rank(i - 2) } else { 0 };
            for j in 0..g.rank(i - 1) {
                let phi_part = phi.maps[i - 1][j].shift_positions(offset);
                let col = if i >= 2 { g.differential(i - 1)[j].neg().add(&phi_part) } else { phi_part };
                cols.push(col);
            }
            for col in f.differential(i) {
                cols.push(col.shift_positions(offset));
            }
        }
        differentials.push(cols);
    }
    FreeComplex::new(n, bases, labels, differentials)
}

/// The comparison map used to build the Taylor complex of `u_1, …, u_m` as the
/// cone over the Taylor complex of `u_1, …, u_{m-1}`: the source is the Taylor
/// complex of `u_i / gcd(u_i, u_m)` shifted by `deg u_m`, and
/// `φ(g_F) = (u_{F∪{m}} / u_F) e_F`.
pub fn taylor_cone_data(u: &[Monomial]) -> Result<ChainMap> {
    if u.len() < 2 {
        return invalid("the Taylor cone needs at least two generators");
    }
    let n = u[0].n();
    let m = u.len();
    let last = &u[m - 1];
    let head = &u[..m - 1];
    let quotients: Vec<Monomial> = head.iter().map(|a| a.divide(&a.gcd(last)).expect("gcd divides")).collect();
    let target = taylor_complex_shifted(head, n, &Multidegree::zeros(n))?;
    let source = taylor_complex_shifted(&quotients, n, last.degree())?;
    let mut maps = Vec::with_capacity(m);
    for k in 0..m {
        let cols = taylor_order_subsets(m - 1, k)
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let u_s = s.iter().fold(Monomial::one(n), |acc, &i| acc.lcm(&head[i]));
                let coeff_mono = u_s.lcm(last).divide(&u_s).expect("lcm quotient");
                ModuleVector::term(Q::one(), coeff_mono, j)
            })
            .collect();
        maps.push(cols);
    }
    ChainMap::new(source, target, maps)
}
