#![allow(dead_code)]

use confspace::point::Configuration;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points uniform in `[-1, 1]^m`, redrawn until pairwise distances exceed `gap`.
pub fn random_config(rng: &mut ChaCha8Rng, n: usize, m: usize, gap: f64) -> Configuration {
    loop {
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| confspace::linalg::dist(&pts[i], &pts[j]) > gap)
        });
        if ok {
            return Configuration::new(m, pts).unwrap();
        }
    }
}

pub fn random_unit(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = confspace::linalg::norm(&v);
        if r > 0.1 && r <= 1.0 {
            return v.iter().map(|x| x / r).collect();
        }
    }
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Relative difference `|a − b| / max(1, |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
