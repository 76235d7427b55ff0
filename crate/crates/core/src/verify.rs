//! Seeded verification jobs. Every trial draws one instance from its own
//! random stream, runs the relevant checks, and returns reports that embed
//! the instance so it can be replayed.

use crate::blocks::{check_set_partition, order_filter_of, squarefree_partition, sqfree_lower_bound, syzygy_sqfree_bound};
use crate::complexes::{eliahou_kervaire, is_stable, minimize, stable_closure, taylor_complex, taylor_cone_data, ChainMap, FreeComplex};
use crate::error::{invalid, Error, Result};
use crate::groebner::{buchberger, initial_module, is_squarefree_module};
use crate::ideal::MonomialIdeal;
use crate::instances::{random_complete_intersection, random_ideal_within, random_squarefree_ideal, trial_rng, Caps, IdealFile};
use crate::module::TermOrder;
use crate::monomial::{Monomial, MonomialOrder, Multidegree};
use crate::stanley::{char_poset, check_partition, exact_sdepth, filtration_lower_bound, ideal_sdepth, DEFAULT_POINT_LIMIT};
use crate::syzygy::{
    boundary_generators, compose_cone_gb, taylor_initial_module, verify_boundary_gb, verify_cone_direct_sum,
    verify_taylor_boundary_gb, verify_theorem_main, Report, Status,
};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    TheoremMain,
    BoundaryGb,
    Mainsyz,
    Regular,
    SqfreeStde,
    Squarefree,
    LemmaGroebner,
}

impl JobKind {
    pub const ALL: [JobKind; 7] = [
        JobKind::TheoremMain,
        JobKind::BoundaryGb,
        JobKind::Mainsyz,
        JobKind::Regular,
        JobKind::SqfreeStde,
        JobKind::Squarefree,
        JobKind::LemmaGroebner,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JobKind::TheoremMain => "theorem-main",
            JobKind::BoundaryGb => "boundary-gb",
            JobKind::Mainsyz => "mainsyz",
            JobKind::Regular => "regular",
            JobKind::SqfreeStde => "sqfree-stde",
            JobKind::Squarefree => "squarefree",
            JobKind::LemmaGroebner => "lemma-groebner",
        }
    }
}

impl fmt::Display for JobKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for JobKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JobKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown job {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyJob {
    pub kind: JobKind,
    pub trials: usize,
    pub seed: u64,
    pub caps: Caps,
}

/// A drawn instance: enough to rerun a trial without the random stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub job: JobKind,
    pub seed: u64,
    pub trial: u64,
    /// `random`, `complete-intersection`, `squarefree`, `taylor-cone` or `eliahou-kervaire`.
    pub family: String,
    pub ideal: IdealFile,
}

/// Draws the instance of trial `index`.
pub fn draw_instance(job: &VerifyJob, index: u64) -> Result<Instance> {
    let caps = &job.caps;
    if caps.n == 0 || caps.m == 0 || caps.exponent < 1 {
        return invalid("caps must be positive");
    }
    let mut rng = trial_rng(job.seed, index);
    let (family, ideal) = match job.kind {
        JobKind::TheoremMain | JobKind::BoundaryGb | JobKind::Mainsyz => ("random", random_ideal_within(&mut rng, caps)),
        JobKind::Regular => {
            let n = rng.gen_range(1..=caps.n);
            let m = rng.gen_range(1..=caps.m.min(n));
            ("complete-intersection", random_complete_intersection(&mut rng, n, m, caps.exponent)?)
        }
        JobKind::SqfreeStde | JobKind::Squarefree => {
            let n = rng.gen_range(1..=caps.n);
            let m = rng.gen_range(1..=caps.m);
            ("squarefree", random_squarefree_ideal(&mut rng, n, m))
        }
        JobKind::LemmaGroebner => {
            if index.is_multiple_of(2) {
                let mut ideal = random_ideal_within(&mut rng, caps);
                while ideal.generators().len() < 2 {
                    ideal = random_ideal_within(&mut rng, caps);
                }
                ("taylor-cone", ideal)
            } else {
                let mut ideal = stable_closure(&random_ideal_within(&mut rng, caps));
                while ideal.generators().len() < 2 {
                    ideal = stable_closure(&random_ideal_within(&mut rng, caps));
                }
                ("eliahou-kervaire", ideal)
            }
        }
    };
    Ok(Instance { job: job.kind, seed: job.seed, trial: index, family: family.into(), ideal: IdealFile::from_ideal(&ideal) })
}

/// Runs all trials in parallel; reports come back ordered by trial index.
pub fn run_job(job: &VerifyJob) -> Result<Vec<Report>> {
    let per_trial: Vec<Result<Vec<Report>>> = (0..job.trials as u64)
        .into_par_iter()
        .map(|i| draw_instance(job, i).and_then(|inst| run_instance(&inst)))
        .collect();
    let mut out = Vec::new();
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs the checks of `inst.job` on `inst`; deterministic in `inst`.
pub fn run_instance(inst: &Instance) -> Result<Vec<Report>> {
    let ideal = inst.ideal.to_ideal()?;
    let meta = serde_json::to_value(inst).expect("instance serializes");
    match inst.job {
        JobKind::TheoremMain => theorem_main(&ideal, &meta),
        JobKind::BoundaryGb => boundary_gb(&ideal, &meta),
        JobKind::Mainsyz => mainsyz(&ideal, &meta),
        JobKind::Regular => regular(&ideal, &meta),
        JobKind::SqfreeStde => sqfree_stde(&ideal, &meta),
        JobKind::Squarefree => squarefree(&ideal, &meta),
        JobKind::LemmaGroebner => lemma_groebner(&ideal, &inst.family, &meta),
    }
}

fn with_field(meta: &Value, key: &str, value: Value) -> Value {
    let mut m = meta.clone();
    m[key] = value;
    m
}

fn report(theorem: &str, instance: Value, p: usize, ok: bool, witness: Value) -> Report {
    Report { theorem: theorem.into(), instance, p, status: Status::from_bool(ok), witness }
}

fn theorem_main(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let taylor = taylor_complex(ideal.generators())?;
    let minimal = minimize(&taylor);
    let mut out = Vec::new();
    for (name, c) in [("taylor", &taylor), ("minimal", &minimal)] {
        for p in 0..=ideal.n() {
            out.push(verify_theorem_main(c, p, with_field(meta, "resolution", json!(name))));
        }
    }
    Ok(out)
}

fn boundary_gb(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let u = ideal.generators();
    let mut out = Vec::new();
    for p in 1..=u.len() {
        let r = verify_taylor_boundary_gb(u, p)?;
        let witness = json!({"boundary": format!("{:?}", r.boundary_leading), "oracle": format!("{:?}", r.oracle)});
        out.push(report("boundary-gb", with_field(meta, "resolution", json!("taylor")), p, r.equal, witness));
    }
    let stable = if is_stable(ideal) { ideal.clone() } else { stable_closure(ideal) };
    let ek = eliahou_kervaire(&stable)?;
    let instance = with_field(
        &with_field(meta, "resolution", json!("eliahou-kervaire")),
        "stable_ideal",
        serde_json::to_value(IdealFile::from_ideal(&stable)).expect("serializes"),
    );
    for p in 1..=ek.complex.length() {
        let r = verify_boundary_gb(&ek.complex, p);
        let witness = json!({"boundary": format!("{:?}", r.boundary_leading), "oracle": format!("{:?}", r.oracle)});
        out.push(report("boundary-gb", instance.clone(), p, r.equal, witness));
    }
    Ok(out)
}

/// Initial module of `Z_p` under the lex-refined basis of `F_p`.
pub fn lex_refined_initial(c: &FreeComplex, p: usize) -> (crate::groebner::InitialModule, crate::module::OrderedBasis) {
    let sorted = c.lex_refined();
    let basis = sorted.basis(p);
    let ini = initial_module(&boundary_generators(&sorted, p), &TermOrder::new(basis.clone(), MonomialOrder::Lex));
    (ini, basis)
}

/// Whether `Z_p` of a resolution is free, read off its minimization.
pub fn syzygy_is_free(minimal: &FreeComplex, p: usize) -> bool {
    minimal.length() <= p + 1
}

fn mainsyz(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let taylor = taylor_complex(ideal.generators())?;
    let minimal = minimize(&taylor);
    let mut out = Vec::new();
    for p in 1..ideal.n() {
        if syzygy_is_free(&minimal, p) {
            out.push(report("mainsyz", meta.clone(), p, true, json!({"free": true})));
            continue;
        }
        let (ini, _) = lex_refined_initial(&taylor, p);
        let b = filtration_lower_bound(&ini)?;
        let witness = json!({"free": false, "bound": b.bound, "required": p + 1, "per_component": b.per_component});
        out.push(report("mainsyz", meta.clone(), p, b.bound > p, witness));
    }
    Ok(out)
}

/// Shen's value `n − ⌊m/2⌋` for a complete intersection of `m` monomials.
pub fn shen_sdepth(n: usize, m: usize) -> usize {
    n - m / 2
}

fn regular(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let (n, u) = (ideal.n(), ideal.generators());
    let m = u.len();
    let mut out = Vec::new();
    for p in 1..=m {
        let ini = taylor_initial_module(u, p)?;
        let b = filtration_lower_bound(&ini)?;
        let required = n - (m - p) / 2;
        let mut ok = b.bound >= required;
        let mut witness = json!({"bound": b.bound, "required": required, "per_component": b.per_component});
        if p == 1 {
            let exact: Vec<Option<usize>> = ini
                .components
                .iter()
                .map(|c| if c.is_zero() { Ok(None) } else { ideal_sdepth(c, DEFAULT_POINT_LIMIT).map(Some) })
                .collect::<Result<_>>()?;
            let shen: Vec<Option<usize>> =
                ini.components.iter().map(|c| (!c.is_zero()).then(|| shen_sdepth(n, c.generators().len()))).collect();
            ok &= exact == shen;
            witness["exact"] = json!(exact);
            witness["shen"] = json!(shen);
        }
        out.push(report("regular", meta.clone(), p, ok, witness));
    }
    Ok(out)
}

fn sqfree_stde(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let n = ideal.n();
    let family = order_filter_of(ideal)?;
    let (ok, witness) = check_filter_partition(n, &family, n <= 6)?;
    Ok(vec![report("sqfree-stde", meta.clone(), 0, ok, witness)])
}

/// Builds the squarefree partition of an order filter and checks it is a
/// partition with value at least the lower bound; optionally compares with
/// the exact Stanley depth.
pub fn check_filter_partition(n: usize, family: &[Vec<usize>], exact: bool) -> Result<(bool, Value)> {
    let part = squarefree_partition(n, family)?;
    let bound = sqfree_lower_bound(n);
    let members = crate::blocks::check_order_filter(n, family)?;
    let mut ok = check_set_partition(n, &members, &part).is_ok();
    let value = part.value();
    ok &= value.is_none_or(|v| v >= bound);
    let mut witness = json!({"bound": bound, "value": value, "s": part.s, "intervals": part.intervals.len()});
    if let Some(v) = value {
        let gens: Vec<Monomial> = family
            .iter()
            .map(|f| Monomial::new((1..=n).map(|i| i32::from(f.contains(&i))).collect()).expect("0/1"))
            .collect();
        let i = MonomialIdeal::new(n, gens)?.minimalized();
        let poset = char_poset(&i, None, Some(Multidegree::new(vec![1; n])))?;
        ok &= check_partition(&poset, &part.to_interval_partition()).is_ok();
        if exact {
            let e = exact_sdepth(&poset)?.sdepth;
            ok &= e >= v;
            witness["exact"] = json!(e);
        }
    }
    Ok((ok, witness))
}

fn squarefree(ideal: &MonomialIdeal, meta: &Value) -> Result<Vec<Report>> {
    let n = ideal.n();
    let taylor = taylor_complex(ideal.generators())?;
    let minimal = minimize(&taylor);
    let d = ideal.generators().iter().map(|g| g.total_degree()).min().expect("nonempty") as usize - 1;
    let mut out = Vec::new();
    for p in 1..=n.saturating_sub(d) {
        let (ini, basis) = lex_refined_initial(&taylor, p);
        let sq = is_squarefree_module(&ini, &basis);
        if syzygy_is_free(&minimal, p) {
            out.push(report("squarefree", meta.clone(), p, sq, json!({"free": true, "squarefree_module": sq})));
            continue;
        }
        let required = syzygy_sqfree_bound(n, d, p)?;
        let b = filtration_lower_bound(&ini)?;
        let witness = json!({
            "free": false, "squarefree_module": sq, "d": d, "bound": b.bound,
            "required": required, "per_component": b.per_component,
        });
        out.push(report("squarefree", meta.clone(), p, sq && b.bound >= required, witness));
    }
    Ok(out)
}

/// The chain maps of a cone family built from `ideal`.
pub fn cone_maps(ideal: &MonomialIdeal, family: &str) -> Result<Vec<ChainMap>> {
    match family {
        "taylor-cone" => Ok(vec![taylor_cone_data(ideal.generators())?]),
        "eliahou-kervaire" => Ok(eliahou_kervaire(ideal)?.steps),
        other => invalid(format!("unknown cone family {other:?}")),
    }
}

/// Checks the direct-sum identity and the composed Gröbner basis for every
/// homological degree of the cone of `phi`.
pub fn check_cone(phi: &ChainMap) -> Result<(bool, Value)> {
    let len = (phi.source.length() + 1).max(phi.target.length());
    let mut rows = Vec::new();
    let mut ok = true;
    for i in 1..=len {
        let split = verify_cone_direct_sum(phi, i)?;
        let gb = |c: &FreeComplex, p: usize| {
            buchberger(&boundary_generators(c, p), &TermOrder::new(c.basis(p), MonomialOrder::Lex))
        };
        let composed = compose_cone_gb(&gb(&phi.target, i), &gb(&phi.source, i - 1), phi, i);
        let certified = composed.is_ok();
        ok &= split && certified;
        rows.push(json!({"i": i, "direct_sum": split, "composed_gb": certified}));
    }
    Ok((ok, Value::Array(rows)))
}

fn lemma_groebner(ideal: &MonomialIdeal, family: &str, meta: &Value) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (k, phi) in cone_maps(ideal, family)?.iter().enumerate() {
        let (ok, witness) = check_cone(phi)?;
        out.push(report("lemma-groebner", with_field(meta, "step", json!(k + 1)), 0, ok, witness));
    }
    Ok(out)
}

/// All order filters of subsets of `[n]` that do not contain the empty set.
pub fn proper_order_filters(n: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if n > 4 {
        return invalid("exhaustive order filters are enumerated for n ≤ 4");
    }
    let subsets = 1usize << n;
    let mut out = Vec::new();
    for fam in 0u64..(1u64 << subsets) {
        if fam & 1 == 1 {
            continue;
        }
        let closed = (0..subsets).all(|m| fam >> m & 1 == 0 || (0..n).all(|i| fam >> (m | 1 << i) & 1 == 1));
        if closed {
            out.push(
                (0..subsets)
                    .filter(|&m| fam >> m & 1 == 1)
                    .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect())
                    .collect(),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(kind: JobKind, trials: usize) -> VerifyJob {
        VerifyJob { kind, trials, seed: 11, caps: Caps { n: 3, m: 3, exponent: 2 } }
    }

    #[test]
    fn every_job_passes_on_a_few_trials() {
        for kind in JobKind::ALL {
            let reports = run_job(&job(kind, 6)).unwrap();
            assert!(!reports.is_empty(), "{kind}");
            for r in &reports {
                assert!(r.passed(), "{kind}: {}", serde_json::to_string(r).unwrap());
            }
        }
    }

    #[test]
    fn replay_is_byte_identical() {
        let j = job(JobKind::TheoremMain, 3);
        let all = run_job(&j).unwrap();
        let inst = draw_instance(&j, 2).unwrap();
        let replay = run_instance(&serde_json::from_str(&serde_json::to_string(&inst).unwrap()).unwrap()).unwrap();
        let tail = &all[all.len() - replay.len()..];
        assert_eq!(serde_json::to_string(tail).unwrap(), serde_json::to_string(&replay).unwrap());
    }

    #[test]
    fn job_names_round_trip() {
        for kind in JobKind::ALL {
            assert_eq!(kind.as_str().parse::<JobKind>().unwrap(), kind);
            assert_eq!(serde_json::to_value(kind).unwrap(), json!(kind.as_str()));
        }
        assert!("nope".parse::<JobKind>().is_err());
    }

    #[test]
    fn order_filter_count() {
        // antichains of the Boolean lattice on [n], minus the one containing the empty set
        let counts: Vec<usize> = (0..=4).map(|n| proper_order_filters(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 167]);
    }
}
