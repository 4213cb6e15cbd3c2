//! Brute-force instability search, independent of the subspace-counting
//! criterion: it only evaluates Mumford weights of explicit subgroups.
//!
//! Candidate subgroups are the mean-zero normalizations of the integer
//! weight vectors in `[-bound, bound]^{n+1}`, one per ray, combined with these frames:
//! the identity, every coordinate permutation, `samples` pseudo-random
//! invertible integer matrices drawn from `seed`, and the frames obtained by
//! completing each independent set of at most `n` support points with unit
//! vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{extend_to_basis, MumfordWeight};
use crate::error::{Error, Result};
use crate::model::{permutation_matrix, Configuration, OnePS};
use crate::ratlin::{self, rat, RatMatrix, RatVector};

enum Conjugation {
    Identity,
    Permutation(Vec<usize>),
    /// Index into the shared random frames.
    Random(usize),
    Adapted(RatMatrix),
}

struct Frame {
    conjugation: Conjugation,
    /// Support bitmask of each support point in this frame.
    masks: Vec<u32>,
}

/// Inverse of a frame with each row scaled to a primitive integer vector,
/// when the entries fit. Scaling rows keeps zero patterns.
type IntRows = Option<Vec<Vec<i128>>>;

struct RandomFrame {
    g: RatMatrix,
    inv: RatMatrix,
    inv_int: IntRows,
}

/// Candidate weight rays, with the contribution of every support mask
/// tabulated when there are few coordinates.
struct WeightSet {
    rays: Vec<Vec<i64>>,
    /// `lookup[k << coords | mask]` is `contribution(rays[k], mask)`.
    lookup: Option<Vec<i64>>,
}

/// Precomputed candidate frames and weights for a fixed set of distinct
/// points. Multiplicities are supplied per query.
pub struct Oracle {
    coords: usize,
    frames: Vec<Frame>,
    random: Arc<Vec<RandomFrame>>,
    weights: Arc<WeightSet>,
    points: usize,
    table: OnceLock<Vec<i64>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn int_rows(m: &RatMatrix) -> IntRows {
    (0..m.rows()).map(|i| int_vector(m.row(i))).collect()
}

fn int_vector(v: &[crate::ratlin::Rational]) -> Option<Vec<i128>> {
    ratlin::primitive_integer_vector(v)
        .ok()?
        .iter()
        .map(|x| i128::try_from(x).ok())
        .collect()
}

/// Zero pattern of `rows * p` in exact integer arithmetic; `None` on
/// overflow.
fn int_mask(rows: &[Vec<i128>], p: &[i128]) -> Option<u32> {
    let mut mask = 0;
    for (i, row) in rows.iter().enumerate() {
        let mut acc: i128 = 0;
        for (a, b) in row.iter().zip(p) {
            acc = acc.checked_add(a.checked_mul(*b)?)?;
        }
        if acc != 0 {
            mask |= 1 << i;
        }
    }
    Some(mask)
}

/// Memoizes per-parameter data, since sweeps build many oracles with the
/// same parameters.
fn memoized<K, V>(cache: &'static OnceLock<Mutex<HashMap<K, Arc<V>>>>, key: K, make: impl FnOnce() -> V) -> Arc<V>
where
    K: std::hash::Hash + Eq,
{
    let cache = cache.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = Arc::new(make());
    cache.lock().expect("cache lock").entry(key).or_insert(v).clone()
}

/// Seeded random frames with their inverses.
fn random_frames(coords: usize, samples: usize, seed: u64) -> Arc<Vec<RandomFrame>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, u64), Arc<Vec<RandomFrame>>>>> = OnceLock::new();
    memoized(&CACHE, (coords, samples, seed), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let g = random_invertible(&mut rng, coords);
                let inv = g.inverse().expect("invertible by construction");
                let inv_int = int_rows(&inv);
                RandomFrame { g, inv, inv_int }
            })
            .collect()
    })
}

fn weight_set(coords: usize, bound: i64) -> Arc<WeightSet> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, i64), Arc<WeightSet>>>> = OnceLock::new();
    memoized(&CACHE, (coords, bound), || {
        let rays = weight_box(coords, bound);
        let lookup = (coords <= 8).then(|| {
            let masks = 1u32 << coords;
            rays.iter()
                .flat_map(|q| (0..masks).map(move |m| if m == 0 { 0 } else { contribution(q, m) }))
                .collect()
        });
        WeightSet { rays, lookup }
    })
}

fn random_invertible(rng: &mut ChaCha8Rng, coords: usize) -> RatMatrix {
    loop {
        let rows: Vec<RatVector> = (0..coords)
            .map(|_| (0..coords).map(|_| rat(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = RatMatrix::from_rows(coords, rows).expect("square");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Independent subsets of size `1..=max_size`, lexicographic order.
fn independent_subsets(coords: usize, points: &[RatVector], max_size: usize) -> Vec<Vec<usize>> {
    fn go(
        coords: usize,
        points: &[RatVector],
        max_size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..points.len() {
            chosen.push(i);
            let vs: Vec<RatVector> = chosen.iter().map(|&j| points[j].clone()).collect();
            if ratlin::span(coords, &vs).expect("lengths").rank() == chosen.len() {
                out.push(chosen.clone());
                if chosen.len() < max_size {
                    go(coords, points, max_size, i + 1, chosen, out);
                }
            }
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(coords, points, max_size, 0, &mut Vec::new(), &mut out);
    out
}

fn weight_box(coords: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut q = vec![-bound; coords];
    loop {
        let l = OnePS::diagonal(q.clone()).normalized();
        if !l.is_trivial() {
            // Weights are linear in q, so one representative per ray suffices.
            let g = l.weights().iter().fold(0i64, |g, &x| g.gcd(&x));
            let ray: Vec<i64> = l.weights().iter().map(|x| x / g).collect();
            if seen.insert(ray.clone()) {
                out.push(ray);
            }
        }
        let mut i = 0;
        while i < coords && q[i] == bound {
            q[i] = -bound;
            i += 1;
        }
        if i == coords {
            break;
        }
        q[i] += 1;
    }
    out
}

fn mask_of(v: &[crate::ratlin::Rational]) -> u32 {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

fn contribution(q: &[i64], mask: u32) -> i64 {
    -q.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &x)| x)
        .max()
        .expect("nonzero point has nonempty support")
}

impl Oracle {
    /// `points` must be nonzero vectors of equal length `n + 1 <= 32`.
    pub fn new(points: &[RatVector], bound: u32, samples: usize, seed: u64) -> Result<Oracle> {
        let coords = points.first().map_or(0, Vec::len);
        if coords == 0 {
            return Err(Error::EmptyConfiguration);
        }
        if coords > 32 {
            return Err(Error::DimensionMismatch {
                expected: 32,
                found: coords,
            });
        }
        let ints: Option<Vec<Vec<i128>>> = points.iter().map(|p| int_vector(p)).collect();
        let masks_in = |inv: &RatMatrix, inv_int: &IntRows| -> Result<Vec<u32>> {
            if let (Some(rows), Some(ps)) = (inv_int, &ints) {
                if let Some(masks) = ps.iter().map(|p| int_mask(rows, p)).collect() {
                    return Ok(masks);
                }
            }
            points.iter().map(|p| Ok(mask_of(&inv.mul_vec(p)?))).collect()
        };
        let mut frames = vec![Frame {
            conjugation: Conjugation::Identity,
            masks: points.iter().map(|p| mask_of(p)).collect(),
        }];
        for perm in permutations(coords).into_iter().skip(1) {
            // The inverse of a permutation matrix is its transpose.
            let masks = frames[0]
                .masks
                .iter()
                .map(|&m| {
                    (0..coords)
                        .filter(|&i| m & (1 << perm[i]) != 0)
                        .fold(0, |acc, i| acc | 1 << i)
                })
                .collect();
            frames.push(Frame {
                masks,
                conjugation: Conjugation::Permutation(perm),
            });
        }
        let random = random_frames(coords, samples, seed);
        for (k, f) in random.iter().enumerate() {
            frames.push(Frame {
                masks: masks_in(&f.inv, &f.inv_int)?,
                conjugation: Conjugation::Random(k),
            });
        }
        for subset in independent_subsets(coords, points, coords - 1) {
            let vs: Vec<RatVector> = subset.iter().map(|&j| points[j].clone()).collect();
            let g = RatMatrix::from_columns(coords, &extend_to_basis(coords, &vs))?;
            let inv = g.inverse()?;
            frames.push(Frame {
                masks: masks_in(&inv, &int_rows(&inv))?,
                conjugation: Conjugation::Adapted(g),
            });
        }
        Ok(Oracle {
            coords,
            frames,
            random,
            weights: weight_set(coords, bound as i64),
            points: points.len(),
            table: OnceLock::new(),
        })
    }

    fn one_ps(&self, frame: &Frame, q: &[i64]) -> OnePS {
        let g = match &frame.conjugation {
            Conjugation::Identity => return OnePS::diagonal(q.to_vec()),
            Conjugation::Permutation(perm) => permutation_matrix(perm),
            Conjugation::Random(k) => self.random[*k].g.clone(),
            Conjugation::Adapted(g) => g.clone(),
        };
        OnePS::conjugated(q.to_vec(), g).expect("invertible")
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    /// First subgroup (frames outer, weights inner) with positive weight.
    pub fn search(&self, multiplicities: &[u64]) -> Option<(OnePS, Vec<i64>, i64)> {
        for frame in &self.frames {
            for q in &self.weights.rays {
                let contributions: Vec<i64> = frame.masks.iter().map(|&m| contribution(q, m)).collect();
                let mu: i64 = contributions
                    .iter()
                    .zip(multiplicities)
                    .map(|(c, &m)| c * m as i64)
                    .sum();
                if mu > 0 {
                    return Some((self.one_ps(frame, q), contributions, mu));
                }
            }
        }
        None
    }

    /// Distinct contribution vectors over all candidate subgroups, flattened
    /// with stride `points`. Vectors with no positive entry are dropped:
    /// they never give positive weight.
    fn table(&self) -> &[i64] {
        self.table.get_or_init(|| {
            let mut distinct_masks: Vec<&Vec<u32>> = self.frames.iter().map(|f| &f.masks).collect();
            distinct_masks.sort();
            distinct_masks.dedup();
            let width = self.points;
            let rays = &self.weights.rays;
            let bound = rays.iter().flatten().map(|q| q.abs()).max().unwrap_or(0);
            let useful = |v: &[i64]| v.iter().any(|&x| x > 0);
            if let (Some(lookup), true) = (&self.weights.lookup, width <= 8 && bound < 1 << 15) {
                // Pack into 16-bit lanes so deduplication is a sort of integers.
                let mut packed: Vec<u128> = Vec::new();
                let stride = 1usize << self.coords;
                for masks in &distinct_masks {
                    for row in lookup.chunks_exact(stride) {
                        let mut key = 0u128;
                        let mut positive = false;
                        for &m in masks.iter() {
                            let x = row[m as usize];
                            positive |= x > 0;
                            key = key << 16 | (x + (1 << 15)) as u128;
                        }
                        if positive {
                            packed.push(key);
                        }
                    }
                }
                packed.sort_unstable();
                packed.dedup();
                let mut flat = Vec::with_capacity(packed.len() * width);
                for key in packed {
                    for lane in (0..width).rev() {
                        flat.push(((key >> (16 * lane)) & 0xffff) as i64 - (1 << 15));
                    }
                }
                flat
            } else {
                let mut vectors: Vec<Vec<i64>> = distinct_masks
                    .iter()
                    .flat_map(|masks| {
                        self.weights
                            .rays
                            .iter()
                            .map(move |q| masks.iter().map(|&m| contribution(q, m)).collect::<Vec<i64>>())
                    })
                    .filter(|v| useful(v))
                    .collect();
                vectors.sort_unstable();
                vectors.dedup();
                vectors.concat()
            }
        })
    }

    /// Whether any candidate subgroup has positive weight. Agrees with
    /// [`Oracle::search`] returning `Some`.
    pub fn is_unstable(&self, multiplicities: &[u64]) -> bool {
        if self.points == 0 {
            return false;
        }
        self.table()
            .chunks_exact(self.points)
            .any(|v| v.iter().zip(multiplicities).map(|(c, &m)| c * m as i64).sum::<i64>() > 0)
    }

    pub fn coords(&self) -> usize {
        self.coords
    }
}

/// Searches for a one-parameter subgroup with positive Mumford weight on a
/// point configuration. Returns `None` when no candidate destabilizes.
pub fn oracle_search(
    c: &Configuration,
    bound: u32,
    samples: usize,
    seed: u64,
) -> Result<Option<(OnePS, MumfordWeight)>> {
    if c.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let support = c.support_points()?;
    let vectors: Vec<RatVector> = support.iter().map(|s| s.point.to_rationals()).collect();
    let mults: Vec<u64> = support.iter().map(|s| s.multiplicity).collect();
    let oracle = Oracle::new(&vectors, bound.max(1), samples, seed)?;
    let Some((lambda, contributions, mu)) = oracle.search(&mults) else {
        return Ok(None);
    };
    let mut per_component = vec![(0, 0); c.components().len()];
    for (s, w) in support.iter().zip(&contributions) {
        for &i in &s.components {
            per_component[i] = (i, *w);
        }
    }
    Ok(Some((
        lambda,
        MumfordWeight {
            value: rat(mu),
            per_component,
        },
    )))
}
