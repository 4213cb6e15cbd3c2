//! Random generators shared by the integration tests.
#![allow(dead_code)]

use chowstab::ratlin::{rat, ratio, RatVector};
use chowstab::{Configuration, LinSubspace, OnePS, ProjPoint, RatMatrix, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_vector(rng: &mut TestRng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

pub fn to_rat(v: &[i64]) -> RatVector {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn point(v: &[i64]) -> ProjPoint {
    ProjPoint::from_i64(v).unwrap()
}

/// `count` distinct random points of `P^n`.
pub fn distinct_points(rng: &mut TestRng, n: usize, count: usize, bound: i64) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::new();
    while out.len() < count {
        let p = point(&int_vector(rng, n + 1, bound));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn with_mults(rng: &mut TestRng, points: Vec<ProjPoint>, max_mult: u64) -> Vec<(ProjPoint, u64)> {
    points.into_iter().map(|p| (p, rng.gen_range(1..=max_mult))).collect()
}

pub fn random_points_config(rng: &mut TestRng, n: usize, max_points: usize, max_mult: u64) -> Configuration {
    let s = rng.gen_range(1..=max_points);
    let pts = distinct_points(rng, n, s, 2);
    Configuration::from_points(n, with_mults(rng, pts, max_mult)).unwrap()
}

/// Random configuration that may repeat points and tends to put several
/// of them on common lines.
pub fn random_special_config(rng: &mut TestRng, n: usize, max_points: usize, max_mult: u64) -> Configuration {
    let s = rng.gen_range(1..=max_points);
    let base: Vec<Vec<i64>> = (0..2).map(|_| int_vector(rng, n + 1, 2)).collect();
    let pts = (0..s)
        .map(|_| {
            let v = if rng.gen_bool(0.5) {
                let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
                let v: Vec<i64> = (0..=n).map(|i| a * base[0][i] + b * base[1][i]).collect();
                if v.iter().all(|&x| x == 0) {
                    base[0].clone()
                } else {
                    v
                }
            } else {
                int_vector(rng, n + 1, 1)
            };
            (point(&v), rng.gen_range(1..=max_mult))
        })
        .collect();
    Configuration::from_points(n, pts).unwrap()
}

pub fn random_rational(rng: &mut TestRng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn random_invertible(rng: &mut TestRng, size: usize) -> RatMatrix {
    loop {
        let rows = (0..size)
            .map(|_| (0..size).map(|_| random_rational(rng)).collect())
            .collect();
        let m = RatMatrix::from_rows(size, rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_permutation(rng: &mut TestRng, size: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..size).collect();
    p.shuffle(rng);
    p
}

/// Random weights with `|q_i| <= bound` summing to zero.
pub fn mean_zero_weights(rng: &mut TestRng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let mut q: Vec<i64> = (0..len - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
        let last = -q.iter().sum::<i64>();
        if last.abs() <= bound {
            q.push(last);
            return q;
        }
    }
}

pub fn random_one_ps(rng: &mut TestRng, len: usize, bound: i64, conjugate: bool) -> OnePS {
    let q = mean_zero_weights(rng, len, bound);
    if conjugate {
        OnePS::conjugated(q, random_invertible(rng, len)).unwrap()
    } else {
        OnePS::diagonal(q)
    }
}

pub fn subspace(coords: usize, rows: &[&[i64]]) -> LinSubspace {
    LinSubspace::from_basis(coords, rows.iter().map(|r| to_rat(r)).collect()).unwrap()
}

/// Span of `e_from, ..., e_{to-1}`.
pub fn coordinate_subspace(coords: usize, from: usize, to: usize) -> LinSubspace {
    let rows = (from..to).map(|i| chowstab::ratlin::unit_vector(coords, i)).collect();
    LinSubspace::from_basis(coords, rows).unwrap()
}

/// Pairwise disjoint random lines in `P^3`.
pub fn random_skew_lines(rng: &mut TestRng, count: usize) -> Vec<LinSubspace> {
    'retry: loop {
        let mut lines: Vec<LinSubspace> = Vec::new();
        for _ in 0..count {
            let l = LinSubspace::from_basis(4, vec![to_rat(&int_vector(rng, 4, 2)), to_rat(&int_vector(rng, 4, 2))])
                .unwrap();
            if l.rank() != 2 || lines.iter().any(|m| !m.intersect(&l).unwrap().is_empty()) {
                continue 'retry;
            }
            lines.push(l);
        }
        return lines;
    }
}
