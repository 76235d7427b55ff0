use syzygies::blocks::{
    block_structure, f_delta, lifted_f, parse_density, sigma_schedule, sqfree_lower_bound, syzygy_sqfree_bound,
};
use syzygies::complexes::{eliahou_kervaire, minimize, taylor_complex};
use syzygies::instances::Caps;
use syzygies::stanley::{
    char_poset, check_partition, exact_sdepth, filtration_lower_bound, partition_to_decomposition,
    verify_decomposition, Interval, IntervalPartition,
};
use syzygies::syzygy::{taylor_initial_component, verify_boundary_gb};
use syzygies::verify::{lex_refined_initial, run_job, JobKind, VerifyJob};
use syzygies::module::DegreeBox;
use syzygies::{Monomial, MonomialIdeal, Multidegree};

fn ideal(n: usize, gens: &[&[i32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn md(v: &[i32]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

fn powers() -> MonomialIdeal {
    ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
}

#[test]
fn triangle_minimizes_to_ranks_132() {
    let t = taylor_complex(ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).generators()).unwrap();
    assert_eq!(t.ranks(), [1, 3, 3, 1]);
    let m = minimize(&t);
    assert_eq!(m.ranks(), [1, 3, 2]);
    assert!(m.is_minimal());
}

#[test]
fn eliahou_kervaire_of_powers() {
    let ek = eliahou_kervaire(&powers()).unwrap();
    assert_eq!(ek.complex.ranks(), [1, 3, 2]);
    for p in 1..=ek.complex.length() {
        assert!(verify_boundary_gb(&ek.complex, p).equal, "p = {p}");
    }
}

#[test]
fn closed_form_component_and_lex_oracle() {
    let u = powers().generators().to_vec();
    assert_eq!(taylor_initial_component(&u, &[3]).unwrap(), ideal(2, &[&[1, 0]]));
    let (ini, _) = lex_refined_initial(&taylor_complex(&u).unwrap(), 1);
    let x2 = ideal(2, &[&[0, 1]]);
    assert_eq!(ini.components, vec![x2.clone(), x2, MonomialIdeal::zero(2)]);
}

#[test]
fn koszul_syzygy_filtration_bound() {
    let c = taylor_complex(MonomialIdeal::maximal(3).generators()).unwrap();
    let (ini, _) = lex_refined_initial(&c, 1);
    let b = filtration_lower_bound(&ini).unwrap();
    assert_eq!(b.per_component, vec![Some(2), Some(3), None]);
    assert_eq!(b.bound, 2);
}

#[test]
fn hand_partition_of_maximal_ideal() {
    let poset = char_poset(&MonomialIdeal::maximal(3), None, None).unwrap();
    let iv = |a: &[i32], b: &[i32]| Interval::new(md(a), md(b));
    let part = IntervalPartition {
        intervals: vec![
            iv(&[1, 0, 0], &[1, 1, 0]),
            iv(&[0, 1, 0], &[0, 1, 1]),
            iv(&[0, 0, 1], &[1, 0, 1]),
            iv(&[1, 1, 1], &[1, 1, 1]),
        ],
    };
    check_partition(&poset, &part).unwrap();
    assert_eq!(part.value(&poset.g), Some(2));
    let dec = partition_to_decomposition(&poset, &part);
    assert_eq!(dec.sdepth(), Some(2));
    let m = MonomialIdeal::maximal(3);
    assert!(verify_decomposition(&dec, &m, None, &DegreeBox::around(&poset.g)).is_ok());
    assert_eq!(exact_sdepth(&poset).unwrap().sdepth, 2);
}

#[test]
fn principal_ideal_is_one_interval() {
    let u = Monomial::new(vec![2, 0, 1]).unwrap();
    let poset = char_poset(&MonomialIdeal::new(3, vec![u]).unwrap(), None, None).unwrap();
    let r = exact_sdepth(&poset).unwrap();
    assert_eq!(r.sdepth, 3);
    assert_eq!(r.partition.intervals, vec![Interval::new(md(&[2, 0, 1]), poset.g.clone())]);
}

#[test]
fn small_block_structures() {
    let two = parse_density("2").unwrap();
    let s = block_structure(3, &[1], two).unwrap();
    assert_eq!((s.blocks[0].b.clone(), s.blocks[0].g.clone()), (vec![1, 2], vec![3]));
    let s = block_structure(3, &[2], two).unwrap();
    assert_eq!((s.blocks[0].b.clone(), s.blocks[0].g.clone()), (vec![2, 3], vec![1]));
    assert_eq!(f_delta(3, &[1], two).unwrap(), [1, 3]);
    assert_eq!(f_delta(3, &[3], two).unwrap(), [2, 3]);
    let lifted = lifted_f(3, &[1], 1).unwrap();
    assert_eq!(lifted.len(), 2);
    assert!(lifted.contains(&1));
}

#[test]
fn sigma_and_bounds() {
    let s1 = sigma_schedule(1);
    assert_eq!((s1.r, s1.sigma.clone()), (2, vec![2, 1]));
    let s2 = sigma_schedule(2);
    assert_eq!((s2.r, s2.sigma.clone()), (4, vec![4, 3, 2, 2]));
    assert_eq!([sqfree_lower_bound(2), sqfree_lower_bound(5), sqfree_lower_bound(14)], [1, 3, 5]);
    assert_eq!(syzygy_sqfree_bound(5, 0, 1).unwrap(), 2);
    assert_eq!(syzygy_sqfree_bound(20, 1, 2).unwrap(), 8);
}

#[test]
fn theorem_main_job_seed_seven() {
    let job = VerifyJob { kind: JobKind::TheoremMain, trials: 100, seed: 7, caps: Caps { n: 4, m: 4, exponent: 3 } };
    let reports = run_job(&job).unwrap();
    assert!(reports.len() >= 200);
    assert!(reports.iter().all(|r| r.passed()));
}
