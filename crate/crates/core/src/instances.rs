//! Seeded random instances and the ideal file format.

use crate::complexes::stable_closure;
use crate::error::{invalid, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// `{"n": 3, "generators": [[1,1,0],[0,1,1],[1,0,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub n: usize,
    pub generators: Vec<Vec<i32>>,
}

impl IdealFile {
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        IdealFile { n: ideal.n(), generators: ideal.generators().iter().map(|g| g.exponents().to_vec()).collect() }
    }

    /// Validates lengths, signs and nonzero vectors, keeping generator order.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        if self.generators.is_empty() {
            return invalid("the ideal has no generators");
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.n {
                return invalid(format!("generator {} has length {}, expected {}", i + 1, g.len(), self.n));
            }
            if g.iter().any(|&e| e < 0) {
                return invalid(format!("generator {} has a negative exponent", i + 1));
            }
            if g.iter().all(|&e| e == 0) {
                return invalid(format!("generator {} is the zero vector", i + 1));
            }
        }
        MonomialIdeal::from_exponents(self.n, &self.generators)
    }
}

/// Size caps for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub n: usize,
    pub m: usize,
    pub exponent: i32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { n: 4, m: 5, exponent: 3 }
    }
}

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_monomial(rng: &mut impl Rng, n: usize, exponent: i32) -> Monomial {
    loop {
        let e: Vec<i32> = (0..n).map(|_| rng.gen_range(0..=exponent)).collect();
        if e.iter().any(|&x| x > 0) {
            return Monomial::new(e).expect("nonnegative");
        }
    }
}

/// Up to `m` minimal generators with exponents uniform in `[0, exponent]`:
/// draws that divide or are divided by an earlier generator are redrawn, at
/// most `8m` draws in total.
pub fn random_ideal(rng: &mut impl Rng, n: usize, m: usize, exponent: i32) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = Vec::with_capacity(m);
    for _ in 0..8 * m {
        if gens.len() == m {
            break;
        }
        let u = random_monomial(rng, n, exponent);
        if gens.iter().all(|g| !g.divides(&u) && !u.divides(g)) {
            gens.push(u);
        }
    }
    MonomialIdeal::new(n, gens).expect("same n").minimalized()
}

/// `n` uniform in `1..=caps.n`, `m` in `1..=caps.m`.
pub fn random_ideal_within(rng: &mut impl Rng, caps: &Caps) -> MonomialIdeal {
    let n = rng.gen_range(1..=caps.n);
    let m = rng.gen_range(1..=caps.m);
    random_ideal(rng, n, m, caps.exponent)
}

pub fn random_squarefree_ideal(rng: &mut impl Rng, n: usize, m: usize) -> MonomialIdeal {
    random_ideal(rng, n, m, 1)
}

/// The stable closure of a random ideal.
pub fn random_stable_ideal(rng: &mut impl Rng, n: usize, m: usize, exponent: i32) -> MonomialIdeal {
    stable_closure(&random_ideal(rng, n, m, exponent))
}

/// `m` generators on pairwise disjoint nonempty sets of variables, with
/// exponents in `1..=exponent` on their support.
pub fn random_complete_intersection(rng: &mut impl Rng, n: usize, m: usize, exponent: i32) -> Result<MonomialIdeal> {
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("a complete intersection needs 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(rng);
    let used = rng.gen_range(m..=n);
    let mut owner: Vec<usize> = (0..used).map(|k| if k < m { k } else { rng.gen_range(0..m) }).collect();
    owner.shuffle(rng);
    let gens = (0..m)
        .map(|j| {
            let mut e = vec![0; n];
            for (k, &v) in vars[..used].iter().enumerate() {
                if owner[k] == j {
                    e[v] = rng.gen_range(1..=exponent);
                }
            }
            Monomial::new(e).expect("nonnegative")
        })
        .collect();
    MonomialIdeal::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::is_stable;

    #[test]
    fn streams_are_reproducible() {
        let caps = Caps::default();
        let a = random_ideal_within(&mut trial_rng(7, 3), &caps);
        let b = random_ideal_within(&mut trial_rng(7, 3), &caps);
        assert_eq!(a, b);
        let draws: Vec<MonomialIdeal> = (0..20).map(|i| random_ideal_within(&mut trial_rng(7, i), &caps)).collect();
        assert!(draws.iter().any(|d| d != &a));
    }

    #[test]
    fn generated_ideals_respect_caps() {
        let caps = Caps::default();
        for i in 0..100 {
            let ideal = random_ideal_within(&mut trial_rng(1, i), &caps);
            assert!(ideal.n() <= 4 && ideal.generators().len() <= 5);
            assert!(ideal.generators().iter().all(|g| !g.is_one() && g.exponents().iter().all(|&e| e <= 3)));
            assert_eq!(ideal.minimal_generators(), ideal.generators());
        }
    }

    #[test]
    fn special_families() {
        let mut rng = trial_rng(2, 0);
        for _ in 0..30 {
            let ci = random_complete_intersection(&mut rng, 5, 3, 2).unwrap();
            let gens = ci.generators();
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    assert!(gens[i].gcd(&gens[j]).is_one());
                }
            }
            assert!(random_squarefree_ideal(&mut rng, 5, 4).is_squarefree());
            assert!(is_stable(&random_stable_ideal(&mut rng, 3, 3, 2)));
        }
        assert!(random_complete_intersection(&mut rng, 2, 3, 1).is_err());
    }

    #[test]
    fn ideal_file_validation() {
        let ok: IdealFile = serde_json::from_str(r#"{"n": 3, "generators": [[1,1,0],[0,1,1],[1,0,1]]}"#).unwrap();
        assert_eq!(ok.to_ideal().unwrap().generators().len(), 3);
        for bad in [
            r#"{"n": 2, "generators": [[1,1,0]]}"#,
            r#"{"n": 2, "generators": [[0,0]]}"#,
            r#"{"n": 2, "generators": [[-1,1]]}"#,
            r#"{"n": 2, "generators": []}"#,
        ] {
            let f: IdealFile = serde_json::from_str(bad).unwrap();
            assert!(f.to_ideal().is_err(), "{bad}");
        }
    }
}
