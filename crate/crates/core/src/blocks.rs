//! Circular block structures and the squarefree interval partitions built
//! from them.

use crate::error::{invalid, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Multidegree};
use crate::stanley::{Interval, IntervalPartition};
use num_integer::Roots;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// An exact density `δ ≥ 1`.
pub type Density = Rational64;

/// Parses `"p/q"` or `"p"`.
pub fn parse_density(s: &str) -> Result<Density> {
    s.trim().parse::<Density>().map_err(|_| Error::InvalidInput(format!("cannot parse density {s:?}")))
}

fn int(k: usize) -> Density {
    Density::from_integer(k as i64)
}

/// One block `B_i` followed by its gap `G_i`; elements are 1-based and listed
/// clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "G")]
    pub g: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub n: usize,
    pub a: Vec<usize>,
    pub delta: Density,
    pub blocks: Vec<Block>,
}

/// `{"A": [...], "delta": "p/q", "blocks": [{"B": [...], "G": [...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructureJson {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub delta: String,
    pub blocks: Vec<Block>,
}

impl BlockStructure {
    pub fn to_json(&self) -> BlockStructureJson {
        BlockStructureJson {
            a: self.a.clone(),
            delta: format!("{}/{}", self.delta.numer(), self.delta.denom()),
            blocks: self.blocks.clone(),
        }
    }

    /// `G_1 ∪ … ∪ G_p`, sorted.
    pub fn gaps(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.blocks.iter().flat_map(|b| b.g.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

fn normalize_set(n: usize, a: &[usize]) -> Result<Vec<usize>> {
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.is_empty() {
        return invalid("A must be nonempty");
    }
    if a.iter().any(|&x| x == 0 || x > n) {
        return invalid(format!("A = {a:?} is not a subset of 1..={n}"));
    }
    Ok(a)
}

fn check_density_range(n: usize, size: usize, delta: Density) -> Result<()> {
    if delta < int(1) || delta * int(size) > int(n.saturating_sub(1)) {
        return invalid(format!("density {delta} is outside [1, (n-1)/|A|] for n = {n}, |A| = {size}"));
    }
    Ok(())
}

/// Clockwise walk from `start` (0-based), closing each block at its shortest
/// admissible length and each gap at the next element of `A`. Returns `None`
/// unless the walk ends exactly at `start`.
fn walk(n: usize, in_a: &[bool], delta: Density, start: usize) -> Option<Vec<Block>> {
    let mut pos = start;
    let mut covered = 0usize;
    let mut blocks = Vec::new();
    while covered < n {
        let mut b = Vec::new();
        let mut hits = 0usize;
        loop {
            if covered + b.len() == n {
                return None;
            }
            let e = (pos + b.len()) % n;
            hits += usize::from(in_a[e]);
            b.push(e + 1);
            if int(b.len() + 1) > delta * int(hits) {
                break;
            }
        }
        covered += b.len();
        pos = (pos + b.len()) % n;
        let mut g = Vec::new();
        while covered < n && !in_a[pos] {
            g.push(pos + 1);
            pos = (pos + 1) % n;
            covered += 1;
        }
        blocks.push(Block { b, g });
    }
    Some(blocks)
}

/// The block structure of `A ⊆ [n]` for density `δ`, `1 ≤ δ ≤ (n−1)/|A|`.
pub fn block_structure(n: usize, a: &[usize], delta: Density) -> Result<BlockStructure> {
    let a = normalize_set(n, a)?;
    check_density_range(n, a.len(), delta)?;
    let mut in_a = vec![false; n];
    for &x in &a {
        in_a[x - 1] = true;
    }
    for &start in &a {
        if let Some(blocks) = walk(n, &in_a, delta, start - 1) {
            let s = BlockStructure { n, a: a.clone(), delta, blocks };
            check_block_axioms(&s).map_err(|e| Error::Internal(format!("block structure violates an axiom: {e}")))?;
            return Ok(s);
        }
    }
    Err(Error::Internal(format!("no block structure found for A = {a:?}, δ = {delta}")))
}

/// Independent check of the four block-structure axioms.
pub fn check_block_axioms(s: &BlockStructure) -> std::result::Result<(), String> {
    let n = s.n;
    let in_a = |x: usize| s.a.contains(&x);
    let order: Vec<usize> = s.blocks.iter().flat_map(|b| b.b.iter().chain(&b.g).copied()).collect();
    if order.len() != n || order.iter().copied().collect::<HashSet<_>>().len() != n {
        return Err("blocks and gaps do not partition [n]".into());
    }
    if order.iter().any(|&x| x == 0 || x > n) {
        return Err("element outside [n]".into());
    }
    for w in 0..n {
        if order[(w + 1) % n] != order[w] % n + 1 {
            return Err(format!("arcs are not consecutive after {}", order[w]));
        }
    }
    for (i, blk) in s.blocks.iter().enumerate() {
        let Some(&first) = blk.b.first() else {
            return Err(format!("block {} is empty", i + 1));
        };
        if !in_a(first) {
            return Err(format!("block {} starts at {first} which is not in A", i + 1));
        }
        if let Some(x) = blk.g.iter().find(|&&x| in_a(x)) {
            return Err(format!("gap {} contains {x} from A", i + 1));
        }
        let hits = int(blk.b.iter().filter(|&&x| in_a(x)).count());
        let len = int(blk.b.len());
        if !(s.delta * hits - int(1) < len && len <= s.delta * hits) {
            return Err(format!("block {} has the wrong size for its density", i + 1));
        }
        for k in 1..blk.b.len() {
            let prefix = &blk.b[..k];
            let h = int(prefix.iter().filter(|&&x| in_a(x)).count());
            if int(k + 1) > s.delta * h {
                return Err(format!("prefix of length {k} of block {} is too sparse", i + 1));
            }
        }
    }
    Ok(())
}

/// Every arrangement satisfying the axioms, found by enumerating anchor sets
/// and block lengths.
pub fn all_block_structures(n: usize, a: &[usize], delta: Density) -> Result<Vec<BlockStructure>> {
    let a = normalize_set(n, a)?;
    let mut out = Vec::new();
    for mask in 1u64..(1 << a.len()) {
        let anchors: Vec<usize> = (0..a.len()).filter(|&i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        let k = anchors.len();
        let arcs: Vec<usize> = (0..k)
            .map(|i| if k == 1 { n } else { (anchors[(i + 1) % k] + n - anchors[i] - 1) % n + 1 })
            .collect();
        let mut lengths = vec![1usize; k];
        loop {
            let blocks = (0..k)
                .map(|i| {
                    let arc: Vec<usize> = (0..arcs[i]).map(|t| (anchors[i] - 1 + t) % n + 1).collect();
                    Block { b: arc[..lengths[i]].to_vec(), g: arc[lengths[i]..].to_vec() }
                })
                .collect();
            let s = BlockStructure { n, a: a.clone(), delta, blocks };
            if check_block_axioms(&s).is_ok() {
                out.push(s);
            }
            let mut i = 0;
            while i < k && lengths[i] == arcs[i] {
                lengths[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
            lengths[i] += 1;
        }
    }
    Ok(out)
}

/// `f_δ(A) = A ∪ G_1 ∪ … ∪ G_p`, sorted.
pub fn f_delta(n: usize, a: &[usize], delta: Density) -> Result<Vec<usize>> {
    let s = block_structure(n, a, delta)?;
    let mut out: Vec<usize> = s.a.iter().copied().chain(s.gaps()).collect();
    out.sort_unstable();
    Ok(out)
}

/// `f_{s+1}(Ã) ∩ [n]` with `Ã = A ∪ {n+1, …, 2n−a}` inside `[ns+n+s]`.
/// For `s = 0` the density range is empty and `A` itself is returned.
pub fn lifted_f(n: usize, a: &[usize], s: usize) -> Result<Vec<usize>> {
    let a = normalize_set(n, a)?;
    let size = a.len();
    if n < size * s + size + s {
        return invalid(format!("lifting needs n ≥ as + a + s, got n = {n}, a = {size}, s = {s}"));
    }
    if s == 0 {
        return Ok(a);
    }
    let big = n * s + n + s;
    let tilde: Vec<usize> = a.iter().copied().chain(n + 1..=2 * n - size).collect();
    let f = f_delta(big, &tilde, int(s + 1))?;
    Ok(f.into_iter().filter(|&x| x <= n).collect())
}

/// `σ: [r] → Z` with `r = 2s`; `sigma[i - 1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSchedule {
    pub r: usize,
    pub s: usize,
    pub sigma: Vec<usize>,
}

pub fn sigma_schedule(s: usize) -> SigmaSchedule {
    let r = 2 * s;
    let sigma = (1..=r).map(|i| if i > s { s } else { s + (s + 1 - i) }).collect();
    SigmaSchedule { r, s, sigma }
}

impl SigmaSchedule {
    /// `min(r + 1, min_i (i + σ(i)))`.
    pub fn value(&self) -> usize {
        self.sigma.iter().enumerate().map(|(i, &v)| i + 1 + v).fold(self.r + 1, usize::min)
    }
}

fn largest_s(budget: usize) -> usize {
    let mut s = 0;
    while (2 * s + 3) * (s + 2) <= budget {
        s += 1;
    }
    s
}

/// `2s + 1` for the largest `s` with `(2s+1)(s+1) ≤ n+1`.
pub fn sqfree_lower_bound(n: usize) -> usize {
    2 * largest_s(n + 1) + 1
}

/// `2⌊(√(2n+2.25)+0.5)/2⌋ − 1` in integer arithmetic: `√(2n+2.25) = √(8n+9)/2`.
pub fn sqfree_lower_bound_closed_form(n: u64) -> u64 {
    2 * (((8 * n + 9).sqrt() + 1) / 4) - 1
}

/// `2s + 1 + d + p` for the largest `s` with `(2s+1)(s+1) ≤ n+1−d−p`.
pub fn syzygy_sqfree_bound(n: usize, d: usize, p: usize) -> Result<usize> {
    if p < 1 || n + 1 < d + p + 1 {
        return invalid(format!("need p ≥ 1 and n + 1 − d − p ≥ 1, got n = {n}, d = {d}, p = {p}"));
    }
    Ok(2 * largest_s(n + 1 - d - p) + 1 + d + p)
}

/// `2⌊(√(2(n−d−p)+2.25)+0.5)/2⌋ + d + p − 1`, reading the outer bracket as a floor.
pub fn syzygy_sqfree_bound_closed_form(n: u64, d: u64, p: u64) -> u64 {
    sqfree_lower_bound_closed_form(n - d - p) + d + p
}

/// Subsets of `[n]` as bit masks (bit `i` is element `i + 1`).
fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &x| m | 1 << (x - 1))
}

fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// An interval partition of an order filter of subsets of `[n]`, with the
/// schedule parameters used to build it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPartition {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    /// `(bottom, top)` pairs of 1-based sets.
    pub intervals: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SetPartition {
    /// Minimum top cardinality, or `None` for the empty filter.
    pub fn value(&self) -> Option<usize> {
        self.intervals.iter().map(|(_, t)| t.len()).min()
    }

    pub fn to_interval_partition(&self) -> IntervalPartition {
        let indicator = |set: &[usize]| {
            Multidegree::new((1..=self.n).map(|i| i32::from(set.contains(&i))).collect())
        };
        IntervalPartition {
            intervals: self.intervals.iter().map(|(a, b)| Interval::new(indicator(a), indicator(b))).collect(),
        }
    }
}

/// Checks that `family` is an up-closed family of subsets of `[n]`.
pub fn check_order_filter(n: usize, family: &[Vec<usize>]) -> Result<HashSet<u64>> {
    if n > 63 {
        return invalid("order filters are limited to n ≤ 63");
    }
    let mut members = HashSet::new();
    for f in family {
        if f.iter().any(|&x| x == 0 || x > n) {
            return invalid(format!("{f:?} is not a subset of 1..={n}"));
        }
        members.insert(mask_of(f));
    }
    for &m in &members {
        for i in 0..n {
            if m >> i & 1 == 0 && !members.contains(&(m | 1 << i)) {
                return invalid(format!("{:?} is in the family but {:?} is not", set_of(m), set_of(m | 1 << i)));
            }
        }
    }
    Ok(members)
}

/// The order filter of supports of squarefree monomials in a squarefree ideal.
pub fn order_filter_of(ideal: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    let n = ideal.n();
    if n > 20 {
        return invalid("order filters are enumerated for n ≤ 20 only");
    }
    if !ideal.is_squarefree() {
        return invalid("the ideal is not squarefree");
    }
    Ok((0u64..1 << n)
        .filter(|&m| ideal.contains(&Monomial::new((0..n).map(|i| (m >> i & 1) as i32).collect()).expect("0/1")))
        .map(set_of)
        .collect())
}

fn intersects(a1: u64, b1: u64, a2: u64, b2: u64) -> bool {
    (a1 | a2) & !(b1 & b2) == 0
}

/// Stages `1..=r` add `[A, lifted_f(n, A, σ(a))]` for every uncovered `a`-set
/// `A` of the filter in lex order; everything left becomes a trivial interval.
/// The result is checked to be a partition of the filter.
pub fn squarefree_partition(n: usize, family: &[Vec<usize>]) -> Result<SetPartition> {
    let members = check_order_filter(n, family)?;
    if members.contains(&0) {
        return invalid("the empty set is in the family: the ideal is the unit ideal");
    }
    let s = largest_s(n + 1);
    let schedule = sigma_schedule(s);
    let mut sorted: Vec<u64> = members.iter().copied().collect();
    sorted.sort_by_key(|&m| set_of(m));
    let mut intervals: Vec<(u64, u64)> = Vec::new();
    let covered = |intervals: &[(u64, u64)], m: u64| intervals.iter().any(|&(a, b)| a & !m == 0 && m & !b == 0);
    for size in 1..=schedule.r {
        for &m in sorted.iter().filter(|m| m.count_ones() as usize == size) {
            if covered(&intervals, m) {
                continue;
            }
            let top = mask_of(&lifted_f(n, &set_of(m), schedule.sigma[size - 1])?);
            if let Some(&(a, b)) = intervals.iter().find(|&&(a, b)| intersects(a, b, m, top)) {
                return Err(Error::Internal(format!(
                    "[{:?}, {:?}] meets [{:?}, {:?}]",
                    set_of(m),
                    set_of(top),
                    set_of(a),
                    set_of(b)
                )));
            }
            intervals.push((m, top));
        }
    }
    for &m in &sorted {
        if !covered(&intervals, m) {
            intervals.push((m, m));
        }
    }
    let part = SetPartition {
        n,
        s,
        r: schedule.r,
        intervals: intervals.iter().map(|&(a, b)| (set_of(a), set_of(b))).collect(),
    };
    check_set_partition(n, &members, &part).map_err(Error::Internal)?;
    Ok(part)
}

/// Pairwise disjointness, containment in the filter, and exact coverage.
pub fn check_set_partition(n: usize, members: &HashSet<u64>, part: &SetPartition) -> std::result::Result<(), String> {
    let ivs: Vec<(u64, u64)> = part.intervals.iter().map(|(a, b)| (mask_of(a), mask_of(b))).collect();
    for (i, &(a, b)) in ivs.iter().enumerate() {
        if a & !b != 0 {
            return Err(format!("interval {i} has bottom outside its top"));
        }
        if !members.contains(&a) || b >> n != 0 {
            return Err(format!("interval {i} leaves the filter"));
        }
        for &(c, d) in &ivs[i + 1..] {
            if intersects(a, b, c, d) {
                return Err(format!("intervals [{:?}, {:?}] and [{:?}, {:?}] overlap", set_of(a), set_of(b), set_of(c), set_of(d)));
            }
        }
    }
    let total: u64 = ivs.iter().map(|&(a, b)| 1u64 << (b & !a).count_ones()).sum();
    if total != members.len() as u64 {
        return Err(format!("intervals cover {total} sets, the filter has {}", members.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(p: i64, q: i64) -> Density {
        Density::new(p, q)
    }

    #[test]
    fn small_structures() {
        let s = block_structure(3, &[1], d(2, 1)).unwrap();
        assert_eq!(s.blocks, vec![Block { b: vec![1, 2], g: vec![3] }]);
        let s = block_structure(3, &[2], d(2, 1)).unwrap();
        assert_eq!(s.blocks, vec![Block { b: vec![2, 3], g: vec![1] }]);
        assert_eq!(f_delta(3, &[1], d(2, 1)).unwrap(), vec![1, 3]);
        assert_eq!(f_delta(3, &[3], d(2, 1)).unwrap(), vec![2, 3]);
        for s in [block_structure(3, &[1], d(2, 1)).unwrap(), block_structure(3, &[2], d(2, 1)).unwrap()] {
            assert_eq!(all_block_structures(3, &s.a, s.delta).unwrap(), vec![s]);
        }
    }

    #[test]
    fn density_one_gives_singleton_blocks() {
        let s = block_structure(6, &[1, 2, 4], d(1, 1)).unwrap();
        assert!(s.blocks.iter().all(|b| b.b.len() == 1));
        assert_eq!(s.gaps(), vec![3, 5, 6]);
    }

    #[test]
    fn range_and_input_errors() {
        assert!(block_structure(3, &[], d(1, 1)).is_err());
        assert!(block_structure(3, &[1, 2], d(3, 2)).is_err());
        assert!(block_structure(3, &[1], d(1, 2)).is_err());
        assert!(block_structure(3, &[4], d(1, 1)).is_err());
        assert!(parse_density("3/2").unwrap() == d(3, 2));
        assert!(parse_density("x").is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(block_structure(3, &[1], d(2, 1)).unwrap().to_json()).unwrap();
        assert_eq!(v, serde_json::json!({"A": [1], "delta": "2/1", "blocks": [{"B": [1, 2], "G": [3]}]}));
    }

    #[test]
    fn lifted_examples() {
        let r = lifted_f(3, &[1], 1).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&1));
        assert_eq!(lifted_f(4, &[2, 3], 0).unwrap(), vec![2, 3]);
        assert!(lifted_f(2, &[1], 1).is_err());
    }

    #[test]
    fn schedules() {
        let s1 = sigma_schedule(1);
        assert_eq!((s1.r, s1.sigma.clone()), (2, vec![2, 1]));
        assert_eq!(s1.value(), 3);
        let s0 = sigma_schedule(0);
        assert_eq!((s0.r, s0.sigma.len(), s0.value()), (0, 0, 1));
        let s2 = sigma_schedule(2);
        assert_eq!(s2.sigma, vec![4, 3, 2, 2]);
        let products: Vec<usize> = s2.sigma.iter().enumerate().map(|(i, &v)| (i + 2) * (v + 1)).collect();
        assert_eq!(products, vec![10, 12, 12, 15]);
        for s in 0..8 {
            let sch = sigma_schedule(s);
            assert_eq!(sch.value(), 2 * s + 1);
            let p: Vec<usize> = sch.sigma.iter().enumerate().map(|(i, &v)| (i + 2) * (v + 1)).collect();
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(sqfree_lower_bound(5), 3);
        assert_eq!(sqfree_lower_bound(14), 5);
        assert_eq!(sqfree_lower_bound(2), 1);
        for n in 1..2000u64 {
            assert_eq!(sqfree_lower_bound(n as usize) as u64, sqfree_lower_bound_closed_form(n));
            let float = 2.0 * (((2.0 * n as f64 + 2.25).sqrt() + 0.5) / 2.0).floor() - 1.0;
            assert_eq!(float as u64, sqfree_lower_bound_closed_form(n));
        }
        assert_eq!(syzygy_sqfree_bound(5, 0, 1).unwrap(), 2);
        assert_eq!(syzygy_sqfree_bound(20, 1, 2).unwrap(), 8);
        // budget 6 = 3·2 exactly
        assert_eq!(syzygy_sqfree_bound(6, 0, 1).unwrap(), 3 + 1);
        assert!(syzygy_sqfree_bound(3, 2, 2).is_err());
        assert!(syzygy_sqfree_bound(3, 0, 0).is_err());
    }

    fn all_nonempty(n: usize) -> Vec<Vec<usize>> {
        (1u64..1 << n).map(set_of).collect()
    }

    #[test]
    fn maximal_ideal_partitions() {
        let p = squarefree_partition(3, &all_nonempty(3)).unwrap();
        assert_eq!((p.s, p.r, p.value()), (0, 0, Some(1)));
        assert!(p.intervals.iter().all(|(a, b)| a == b));
        let p = squarefree_partition(5, &all_nonempty(5)).unwrap();
        assert_eq!((p.s, p.value()), (1, Some(3)));
    }

    #[test]
    fn hand_built_density_two_intervals() {
        let ivs: Vec<(Vec<usize>, Vec<usize>)> =
            (1..=3).map(|i| (vec![i], f_delta(3, &[i], d(2, 1)).unwrap())).collect();
        assert_eq!(ivs, vec![(vec![1], vec![1, 3]), (vec![2], vec![1, 2]), (vec![3], vec![2, 3])]);
        let family: Vec<Vec<usize>> = all_nonempty(3).into_iter().filter(|s| s.len() <= 2).collect();
        let members: HashSet<u64> = family.iter().map(|s| mask_of(s)).collect();
        let part = SetPartition { n: 3, s: 1, r: 1, intervals: ivs };
        assert!(check_set_partition(3, &members, &part).is_ok());
    }

    #[test]
    fn filter_validation() {
        assert!(squarefree_partition(3, &[vec![1]]).is_err());
        assert!(squarefree_partition(2, &[vec![], vec![1], vec![2], vec![1, 2]]).is_err());
        let p = squarefree_partition(2, &[]).unwrap();
        assert_eq!(p.value(), None);
    }

    #[test]
    fn stage_intervals_are_disjoint() {
        for (a, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
            let n = a * s + a + s;
            let sets: Vec<u64> = (1u64..1 << n).filter(|m| m.count_ones() as usize == a).collect();
            let ivs: Vec<(u64, u64)> = sets
                .iter()
                .map(|&m| (m, mask_of(&f_delta(n, &set_of(m), int(s + 1)).unwrap())))
                .collect();
            for &(x, y) in &ivs {
                assert_eq!(y.count_ones() as usize, a + s);
                assert_eq!(x & !y, 0);
            }
            for i in 0..ivs.len() {
                for j in i + 1..ivs.len() {
                    assert!(!intersects(ivs[i].0, ivs[i].1, ivs[j].0, ivs[j].1), "a={a} s={s}");
                }
            }
        }
    }

    fn lifting_case() -> impl Strategy<Value = (usize, Vec<usize>, usize)> {
        (2usize..9, 1usize..4, 0usize..3)
            .prop_filter("range", |&(n, a, s)| a <= n && n >= a * s + a + s)
            .prop_flat_map(|(n, a, s)| (Just(n), prop::sample::subsequence((1..=n).collect::<Vec<_>>(), a), Just(s)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn lifted_sets_have_the_right_size((n, chosen, s) in lifting_case()) {
            let r = lifted_f(n, &chosen, s).unwrap();
            prop_assert_eq!(r.len(), chosen.len() + s);
            prop_assert!(chosen.iter().all(|c| r.contains(c)));
        }
    }
}
