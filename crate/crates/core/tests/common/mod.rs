//! Seeded random instances shared by the integration targets.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wfair::rational::{int, ratio};
use wfair::{Instance, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p` in `1..=9`, `q` in `1..=4`.
pub fn weight(r: &mut ChaCha8Rng) -> Rational {
    ratio(r.gen_range(1..=9), r.gen_range(1..=4))
}

pub fn weights(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| weight(r)).collect()
}

/// Mostly small integers, some fractions and zeros.
pub fn utility(r: &mut ChaCha8Rng) -> Rational {
    match r.gen_range(0..10) {
        0 => int(0),
        1..=2 => ratio(r.gen_range(1..=20), r.gen_range(2..=5)),
        _ => int(r.gen_range(1..=12)),
    }
}

pub fn instance(r: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let w = weights(r, n);
    let u = (0..n).map(|_| (0..m).map(|_| utility(r)).collect()).collect();
    Instance::new(w, u).expect("valid random instance")
}

/// Weights all equal to one.
pub fn equal_weight_instance(r: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let u = (0..n).map(|_| (0..m).map(|_| utility(r)).collect()).collect();
    Instance::new(vec![int(1); n], u).expect("valid random instance")
}

/// Zero-one utilities where every item is valued by someone.
pub fn binary_instance(r: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let w = weights(r, n);
    let mut u: Vec<Vec<Rational>> = vec![vec![int(0); m]; n];
    let agents: Vec<usize> = (0..n).collect();
    for g in 0..m {
        for row in u.iter_mut() {
            if r.gen_bool(0.45) {
                row[g] = int(1);
            }
        }
        if (0..n).all(|i| u[i][g] == int(0)) {
            let i = *agents.choose(r).expect("n > 0");
            u[i][g] = int(1);
        }
    }
    Instance::new(w, u).expect("valid random instance")
}

pub fn sizes(r: &mut ChaCha8Rng, n: (usize, usize), m: (usize, usize)) -> (usize, usize) {
    (r.gen_range(n.0..=n.1), r.gen_range(m.0..=m.1))
}
