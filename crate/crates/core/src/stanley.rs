//! Stanley depth of modules `I/J` through interval partitions of their
//! characteristic posets.

use crate::error::{invalid, Error, Result};
use crate::groebner::InitialModule;
use crate::ideal::MonomialIdeal;
use crate::module::DegreeBox;
use crate::monomial::{Monomial, Multidegree};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Refuse exact searches on posets with more points than this.
pub const DEFAULT_POINT_LIMIT: usize = 512;

/// The box `0 ≤ a ≤ g` with membership flags for `I` and `J`.
#[derive(Clone, Debug)]
pub struct CharPoset {
    pub n: usize,
    pub g: Multidegree,
    pub points: Vec<Multidegree>,
    pub in_i: Vec<bool>,
    pub in_j: Vec<bool>,
}

fn point_monomial(a: &Multidegree) -> Monomial {
    Monomial::from_degree(a.clone()).expect("box points are nonnegative")
}

/// Characteristic poset of `I/J` (or of `I` when `j` is `None`) with cap `g`,
/// defaulting to the lcm of all generators.
pub fn char_poset(i: &MonomialIdeal, j: Option<&MonomialIdeal>, g: Option<Multidegree>) -> Result<CharPoset> {
    let n = i.n();
    if let Some(j) = j {
        if j.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: j.n() });
        }
        if !j.is_subset_of(i) {
            return invalid("J is not contained in I");
        }
    }
    let auto = j.map_or_else(|| i.lcm_degree(), |j| i.lcm_degree().componentwise_max(&j.lcm_degree()));
    let g = match g {
        Some(g) => {
            if g.n() != n || !g.is_nonnegative() {
                return invalid("the cap must be a nonnegative vector of length n");
            }
            if !auto.dominated_by(&g) {
                return invalid("the cap must dominate every generator");
            }
            g
        }
        None => auto,
    };
    let points = DegreeBox::up_to(g.clone()).points();
    let in_i = points.iter().map(|a| i.contains(&point_monomial(a))).collect();
    let in_j = points.iter().map(|a| j.is_some_and(|j| j.contains(&point_monomial(a)))).collect();
    Ok(CharPoset { n, g, points, in_i, in_j })
}

impl CharPoset {
    /// Indices of the points of the module `I/J`.
    pub fn module_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&k| self.in_i[k] && !self.in_j[k]).collect()
    }

    pub fn in_module(&self, a: &Multidegree) -> bool {
        self.index_of(a).is_some_and(|k| self.in_i[k] && !self.in_j[k])
    }

    fn index_of(&self, a: &Multidegree) -> Option<usize> {
        if a.n() != self.n || !a.is_nonnegative() || !a.dominated_by(&self.g) {
            return None;
        }
        let mut k = 0usize;
        for (c, g) in a.as_slice().iter().zip(self.g.as_slice()) {
            k = k * (*g as usize + 1) + *c as usize;
        }
        Some(k)
    }

    /// Whether `[a, b]` lies inside the module point set.
    pub fn is_interval(&self, iv: &Interval) -> bool {
        iv.a.dominated_by(&iv.b) && self.in_module(&iv.a) && self.in_module(&iv.b)
    }

    /// Whether the cap is a 0/1 vector, so values are set cardinalities.
    pub fn is_squarefree(&self) -> bool {
        self.g.as_slice().iter().all(|&e| e <= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub a: Multidegree,
    pub b: Multidegree,
}

impl Interval {
    pub fn new(a: Multidegree, b: Multidegree) -> Self {
        Interval { a, b }
    }

    pub fn contains(&self, c: &Multidegree) -> bool {
        self.a.dominated_by(c) && c.dominated_by(&self.b)
    }
}

/// `|{j : b_j = g_j}|`.
pub fn interval_value(iv: &Interval, g: &Multidegree) -> usize {
    iv.b.as_slice().iter().zip(g.as_slice()).filter(|(b, g)| b == g).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

impl IntervalPartition {
    /// Minimum interval value, or `None` for the empty partition.
    pub fn value(&self, g: &Multidegree) -> Option<usize> {
        self.intervals.iter().map(|iv| interval_value(iv, g)).min()
    }
}

/// Checks that `part` is a partition of the module point set of `poset` into
/// intervals; the error names the first offending point or interval.
pub fn check_partition(poset: &CharPoset, part: &IntervalPartition) -> Result<()> {
    let mut cover = vec![0usize; poset.points.len()];
    for iv in &part.intervals {
        if !poset.is_interval(iv) {
            return invalid(format!("[{:?}, {:?}] is not an interval of the module", iv.a, iv.b));
        }
        for p in DegreeBox::new(iv.a.clone(), iv.b.clone()).points() {
            cover[poset.index_of(&p).expect("inside the cap")] += 1;
        }
    }
    for k in poset.module_points() {
        if cover[k] != 1 {
            return invalid(format!("point {:?} is covered {} times", poset.points[k], cover[k]));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SdepthResult {
    pub sdepth: usize,
    pub g: Multidegree,
    pub partition: IntervalPartition,
}

/// Certificate JSON: `{"sdepth", "g", "intervals": [{"a", "b"}], "value_rule"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub sdepth: usize,
    pub g: Vec<i32>,
    pub intervals: Vec<IntervalJson>,
    /// `"cardinality"` for 0/1 caps, `"coordinates-at-cap"` otherwise.
    pub value_rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
}

impl SdepthResult {
    pub fn certificate(&self) -> Certificate {
        let squarefree = self.g.as_slice().iter().all(|&e| e <= 1);
        Certificate {
            sdepth: self.sdepth,
            g: self.g.as_slice().to_vec(),
            intervals: self
                .partition
                .intervals
                .iter()
                .map(|iv| IntervalJson { a: iv.a.as_slice().to_vec(), b: iv.b.as_slice().to_vec() })
                .collect(),
            value_rule: if squarefree { "cardinality" } else { "coordinates-at-cap" }.into(),
        }
    }
}

type Bits = Vec<u64>;

fn bit_set(bits: &mut Bits, k: usize) {
    bits[k / 64] |= 1 << (k % 64);
}

fn disjoint(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn first_zero(bits: &Bits, len: usize) -> Option<usize> {
    (0..len).find(|&k| bits[k / 64] & (1 << (k % 64)) == 0)
}

struct Candidate {
    top: usize,
    value: usize,
    mask: Bits,
}

/// Backtracking search for a partition with all values at least `d`.
struct Search<'a> {
    len: usize,
    candidates: &'a [Vec<Candidate>],
    d: usize,
    failed: HashSet<Bits>,
    chosen: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn run(&mut self, covered: &Bits) -> bool {
        let Some(x) = first_zero(covered, self.len) else { return true };
        if self.failed.contains(covered) {
            return false;
        }
        for c in &self.candidates[x] {
            if c.value < self.d {
                break;
            }
            if disjoint(covered, &c.mask) {
                let next: Bits = covered.iter().zip(&c.mask).map(|(a, b)| a | b).collect();
                self.chosen.push((x, c.top));
                if self.run(&next) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        self.failed.insert(covered.clone());
        false
    }
}

/// Exact Stanley depth of the module of `poset` with an interval-partition
/// certificate, refusing posets with more than `limit` module points.
pub fn exact_sdepth_with_limit(poset: &CharPoset, limit: usize) -> Result<SdepthResult> {
    let members = poset.module_points();
    if members.is_empty() {
        return invalid("the module is zero");
    }
    if members.len() > limit {
        return Err(Error::TooLarge { points: members.len(), limit });
    }
    let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let words = members.len().div_ceil(64);
    let candidates: Vec<Vec<Candidate>> = members
        .iter()
        .map(|&x| {
            let a = &poset.points[x];
            let mut cands: Vec<Candidate> = members
                .iter()
                .filter(|&&y| a.dominated_by(&poset.points[y]))
                .map(|&y| {
                    let b = &poset.points[y];
                    let mut mask = vec![0u64; words];
                    for p in DegreeBox::new(a.clone(), b.clone()).points() {
                        let k = poset.index_of(&p).expect("inside the cap");
                        bit_set(&mut mask, local[&k]);
                    }
                    let value = interval_value(&Interval::new(a.clone(), b.clone()), &poset.g);
                    Candidate { top: y, value, mask }
                })
                .collect();
            cands.sort_by(|p, q| {
                q.value
                    .cmp(&p.value)
                    .then_with(|| q.mask.iter().map(|w| w.count_ones()).sum::<u32>().cmp(&p.mask.iter().map(|w| w.count_ones()).sum()))
                    .then_with(|| p.top.cmp(&q.top))
            });
            cands
        })
        .collect();
    for d in (0..=poset.n).rev() {
        let mut search = Search { len: members.len(), candidates: &candidates, d, failed: HashSet::new(), chosen: Vec::new() };
        if search.run(&vec![0u64; words]) {
            let intervals = search
                .chosen
                .iter()
                .map(|&(x, y)| Interval::new(poset.points[members[x]].clone(), poset.points[y].clone()))
                .collect();
            return Ok(SdepthResult { sdepth: d, g: poset.g.clone(), partition: IntervalPartition { intervals } });
        }
    }
    Err(Error::Internal("the trivial partition was not found".into()))
}

pub fn exact_sdepth(poset: &CharPoset) -> Result<SdepthResult> {
    exact_sdepth_with_limit(poset, DEFAULT_POINT_LIMIT)
}

/// Stanley depth of a nonzero monomial ideal, dropping variables absent from
/// its minimal generators and adding their number back.
pub fn ideal_sdepth(ideal: &MonomialIdeal, limit: usize) -> Result<usize> {
    let min = ideal.minimalized();
    if min.is_zero() {
        return invalid("the zero ideal has no Stanley depth");
    }
    if min.generators().len() == 1 {
        return Ok(ideal.n());
    }
    let absent = min.absent_variables();
    let keep: Vec<usize> = (0..ideal.n()).filter(|i| !absent.contains(i)).collect();
    let small = min.restrict_to(&keep)?;
    Ok(exact_sdepth_with_limit(&char_poset(&small, None, None)?, limit)?.sdepth + absent.len())
}

/// `min_j sdepth I_j` over the nonzero components of a monomial module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationBound {
    pub bound: usize,
    /// Set when every component is zero; the bound is then `n`.
    pub all_zero: bool,
    pub per_component: Vec<Option<usize>>,
}

pub fn filtration_lower_bound(ini: &InitialModule) -> Result<FiltrationBound> {
    filtration_lower_bound_with_limit(ini, DEFAULT_POINT_LIMIT)
}

pub fn filtration_lower_bound_with_limit(ini: &InitialModule, limit: usize) -> Result<FiltrationBound> {
    let mut cache: HashMap<MonomialIdeal, usize> = HashMap::new();
    let mut per_component = Vec::with_capacity(ini.components.len());
    for c in &ini.components {
        if c.is_zero() {
            per_component.push(None);
            continue;
        }
        let key = c.minimalized();
        let value = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = ideal_sdepth(&key, limit)?;
                cache.insert(key, v);
                v
            }
        };
        per_component.push(Some(value));
    }
    let bound = per_component.iter().flatten().copied().min();
    Ok(FiltrationBound { bound: bound.unwrap_or(ini.n), all_zero: bound.is_none(), per_component })
}

/// A summand `u·K[Z]` of a Stanley decomposition; `vars` are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleySpace {
    pub monomial: Monomial,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub spaces: Vec<StanleySpace>,
}

impl StanleyDecomposition {
    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(|s| s.vars.len()).min()
    }
}

/// Each interval `[a, b]` contributes the spaces `x^c K[Z]`, `Z = {j : b_j = g_j}`,
/// for the points `c ∈ [a, b]` with `c_j = a_j` on `Z`. For 0/1 caps this is
/// the single space `x^a K[Z]`.
pub fn partition_to_decomposition(poset: &CharPoset, part: &IntervalPartition) -> StanleyDecomposition {
    let mut spaces = Vec::new();
    for iv in &part.intervals {
        let z: Vec<usize> = (0..poset.n).filter(|&j| iv.b.get(j) == poset.g.get(j)).collect();
        let upper = Multidegree::new(
            (0..poset.n).map(|j| if z.contains(&j) { iv.a.get(j) } else { iv.b.get(j) }).collect(),
        );
        for c in DegreeBox::new(iv.a.clone(), upper).points() {
            spaces.push(StanleySpace { monomial: point_monomial(&c), vars: z.clone() });
        }
    }
    StanleyDecomposition { spaces }
}

/// Checks on every degree of the box that each point of `I/J` lies in exactly
/// one space and every other point in none; returns the first bad degree.
pub fn verify_decomposition(
    dec: &StanleyDecomposition,
    i: &MonomialIdeal,
    j: Option<&MonomialIdeal>,
    degree_box: &DegreeBox,
) -> std::result::Result<(), Multidegree> {
    for c in degree_box.points() {
        if !c.is_nonnegative() {
            continue;
        }
        let m = point_monomial(&c);
        let expected = usize::from(i.contains(&m) && !j.is_some_and(|j| j.contains(&m)));
        let count = dec
            .spaces
            .iter()
            .filter(|s| {
                (0..c.n()).all(|k| {
                    let u = s.monomial.exponent(k);
                    if s.vars.contains(&k) {
                        c.get(k) >= u
                    } else {
                        c.get(k) == u
                    }
                })
            })
            .count();
        if count != expected {
            return Err(c);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(n: usize, e: &[&[i32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &e.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn md(v: &[i32]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn sdepth(i: &MonomialIdeal) -> usize {
        exact_sdepth(&char_poset(i, None, None).unwrap()).unwrap().sdepth
    }

    #[test]
    fn poset_examples() {
        let p = char_poset(&MonomialIdeal::maximal(2), None, Some(md(&[1, 1]))).unwrap();
        let pts: Vec<&Multidegree> = p.module_points().iter().map(|&k| &p.points[k]).collect();
        assert_eq!(pts, vec![&md(&[0, 1]), &md(&[1, 0]), &md(&[1, 1])]);
        let p = char_poset(&ideal(1, &[&[2]]), None, None).unwrap();
        assert_eq!(p.points.len(), 3);
        assert_eq!(p.module_points(), vec![2]);
        assert!(char_poset(&ideal(2, &[&[1, 0]]), Some(&ideal(2, &[&[0, 1]])), None).is_err());
    }

    #[test]
    fn values() {
        let g = md(&[1, 1, 1]);
        assert_eq!(interval_value(&Interval::new(md(&[1, 0, 0]), md(&[1, 0, 1])), &g), 2);
        assert_eq!(interval_value(&Interval::new(md(&[0, 0, 0]), g.clone()), &g), 3);
        assert_eq!(interval_value(&Interval::new(md(&[0, 0]), md(&[1, 1])), &md(&[2, 1])), 1);
    }

    #[test]
    fn maximal_ideal_anchors() {
        for n in 1..=4 {
            assert_eq!(sdepth(&MonomialIdeal::maximal(n)), n.div_ceil(2), "n = {n}");
        }
    }

    #[test]
    fn residue_field_and_ring() {
        let unit = MonomialIdeal::unit(3);
        let p = char_poset(&unit, Some(&MonomialIdeal::maximal(3)), None).unwrap();
        assert_eq!(exact_sdepth(&p).unwrap().sdepth, 0);
        assert_eq!(sdepth(&unit), 3);
    }

    #[test]
    fn principal_ideal_is_one_interval() {
        let i = ideal(3, &[&[1, 2, 0]]);
        let r = exact_sdepth(&char_poset(&i, None, None).unwrap()).unwrap();
        assert_eq!(r.sdepth, 3);
        assert_eq!(r.partition.intervals, vec![Interval::new(md(&[1, 2, 0]), md(&[1, 2, 0]))]);
    }

    #[test]
    fn complete_intersection() {
        // (x1, x2 x3 x4): n - floor(m/2) = 3
        assert_eq!(sdepth(&ideal(4, &[&[1, 0, 0, 0], &[0, 1, 1, 1]])), 3);
        assert_eq!(ideal_sdepth(&ideal(4, &[&[1, 0, 0, 0], &[0, 1, 1, 1]]), DEFAULT_POINT_LIMIT).unwrap(), 3);
    }

    #[test]
    fn hand_partition_of_maximal_ideal() {
        let p = char_poset(&MonomialIdeal::maximal(3), None, None).unwrap();
        let part = IntervalPartition {
            intervals: vec![
                Interval::new(md(&[1, 0, 0]), md(&[1, 1, 0])),
                Interval::new(md(&[0, 1, 0]), md(&[0, 1, 1])),
                Interval::new(md(&[0, 0, 1]), md(&[1, 0, 1])),
                Interval::new(md(&[1, 1, 1]), md(&[1, 1, 1])),
            ],
        };
        assert!(check_partition(&p, &part).is_ok());
        let dec = partition_to_decomposition(&p, &part);
        let sizes: Vec<usize> = dec.spaces.iter().map(|s| s.vars.len()).collect();
        assert_eq!(sizes, vec![2, 2, 2, 3]);
        assert_eq!(dec.sdepth(), Some(2));
        let bx = DegreeBox::around(&p.g);
        assert_eq!(verify_decomposition(&dec, &MonomialIdeal::maximal(3), None, &bx), Ok(()));
        let mut overlapping = part.clone();
        overlapping.intervals[3] = Interval::new(md(&[1, 1, 0]), md(&[1, 1, 1]));
        assert!(check_partition(&p, &overlapping).is_err());
        let dec = partition_to_decomposition(&p, &overlapping);
        assert!(verify_decomposition(&dec, &MonomialIdeal::maximal(3), None, &bx).is_err());
    }

    #[test]
    fn filtration_bound_of_koszul_syzygies() {
        let ini = InitialModule {
            n: 3,
            components: vec![ideal(3, &[&[0, 1, 0], &[0, 0, 1]]), ideal(3, &[&[0, 0, 1]]), MonomialIdeal::zero(3)],
        };
        let b = filtration_lower_bound(&ini).unwrap();
        assert_eq!(b.bound, 2);
        assert_eq!(b.per_component, vec![Some(2), Some(3), None]);
        let zero = InitialModule { n: 3, components: vec![MonomialIdeal::zero(3)] };
        let b = filtration_lower_bound(&zero).unwrap();
        assert!(b.all_zero && b.bound == 3);
    }

    #[test]
    fn size_limit_is_enforced() {
        let p = char_poset(&MonomialIdeal::maximal(4), None, None).unwrap();
        assert!(matches!(exact_sdepth_with_limit(&p, 5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn certificate_shape() {
        let r = exact_sdepth(&char_poset(&MonomialIdeal::maximal(2), None, None).unwrap()).unwrap();
        let v = serde_json::to_value(r.certificate()).unwrap();
        assert_eq!(v["sdepth"], 1);
        assert_eq!(v["g"], serde_json::json!([1, 1]));
        assert_eq!(v["value_rule"], "cardinality");
    }

    fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0i32..3, 3), 1..4).prop_filter_map("unit", |raw| {
            let i = MonomialIdeal::from_exponents(3, &raw).unwrap().minimalized();
            if i.generators().iter().any(Monomial::is_one) {
                None
            } else {
                Some(i)
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn certificates_are_decompositions(i in small_ideal()) {
            let p = char_poset(&i, None, None).unwrap();
            let r = exact_sdepth(&p).unwrap();
            prop_assert!(check_partition(&p, &r.partition).is_ok());
            prop_assert_eq!(r.partition.value(&p.g), Some(r.sdepth));
            let dec = partition_to_decomposition(&p, &r.partition);
            prop_assert_eq!(dec.sdepth(), Some(r.sdepth));
            prop_assert_eq!(verify_decomposition(&dec, &i, None, &DegreeBox::around(&p.g)), Ok(()));
        }

        #[test]
        fn free_variable_shortcut_agrees(i in small_ideal()) {
            prop_assert_eq!(ideal_sdepth(&i, DEFAULT_POINT_LIMIT).unwrap(), sdepth(&i));
        }
    }
}
