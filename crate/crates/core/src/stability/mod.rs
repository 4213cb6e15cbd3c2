//! Mumford weights and absolute Chow-stability of point configurations.
//!
//! Sign convention: a configuration is unstable exactly when some
//! one-parameter subgroup has positive Mumford weight. For a point `p` read
//! in the subgroup's frame, its linear form contributes `-max { q_i : i in
//! support }`; contributions add with multiplicity.

mod oracle;

pub use oracle::{oracle_search, Oracle};

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Certificate, Configuration, OnePS, StabilityReport, Verdict};
use crate::ratlin::{self, rat, serialize_rational, LinSubspace, RatMatrix, RatVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MumfordWeight {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    /// `(component index, contribution of one copy)`.
    pub per_component: Vec<(usize, i64)>,
}

/// Contribution `-max q_i` over the support of `v` in the frame of `lambda`.
pub(crate) fn frame_contribution(lambda: &OnePS, v: &[Rational]) -> Result<i64> {
    let y = lambda.to_frame(v)?;
    y.iter()
        .zip(lambda.weights())
        .filter(|(x, _)| !x.is_zero())
        .map(|(_, &q)| q)
        .max()
        .map(|m| -m)
        .ok_or(Error::ZeroVector)
}

/// Mumford weight of the product of the points' linear forms. The subgroup
/// must already be mean-zero.
pub fn mumford_weight(c: &Configuration, lambda: &OnePS) -> Result<MumfordWeight> {
    lambda.check_len(c.coords())?;
    let sum = lambda.weight_sum();
    if sum != 0 {
        return Err(Error::UnnormalizedWeights { sum });
    }
    let points = c.points()?;
    let mut value: i64 = 0;
    let mut per_component = Vec::with_capacity(points.len());
    for (i, (p, m)) in points.into_iter().enumerate() {
        let w = match lambda.small_frame_support(p.coords()) {
            Some(mask) => lambda
                .weights()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &q)| -q)
                .min()
                .ok_or(Error::ZeroVector)?,
            None => frame_contribution(lambda, &p.to_rationals())?,
        };
        value += m as i64 * w;
        per_component.push((i, w));
    }
    Ok(MumfordWeight {
        value: rat(value),
        per_component,
    })
}

/// Completes `vectors` (assumed independent) to a basis of `Q^coords` with
/// the unit vectors at the non-pivot columns of their span.
pub(crate) fn extend_to_basis(coords: usize, vectors: &[RatVector]) -> Vec<RatVector> {
    let current = ratlin::span(coords, vectors).expect("vector lengths match");
    let mut basis = vectors.to_vec();
    let pivots = current.pivots();
    basis.extend(
        (0..coords)
            .filter(|i| !pivots.contains(i))
            .map(|i| ratlin::unit_vector(coords, i)),
    );
    basis
}

/// Multiplicity-weighted number of points of `c` lying in `e`.
fn count_in(c: &Configuration, e: &LinSubspace) -> Result<u64> {
    let mut k = 0;
    for (p, m) in c.points()? {
        if e.member(&p.to_rationals())? {
            k += m;
        }
    }
    Ok(k)
}

/// One-parameter subgroup driving the points of a violating subspace `e`
/// to the low-weight side, with its Mumford weight. The weight is computed
/// by [`mumford_weight`] and equals `k(n-e) - (m-k)(e+1)`.
pub fn destabilizing_certificate(c: &Configuration, e: &LinSubspace) -> Result<(OnePS, MumfordWeight)> {
    let coords = c.coords();
    if e.coords() != coords {
        return Err(Error::DimensionMismatch {
            expected: coords,
            found: e.coords(),
        });
    }
    certificate_with_count(c, e, count_in(c, e)?)
}

/// [`destabilizing_certificate`] with the count of points in `e` known.
fn certificate_with_count(c: &Configuration, e: &LinSubspace, k: u64) -> Result<(OnePS, MumfordWeight)> {
    let n = c.ambient_dim();
    let coords = c.coords();
    let m = c.total_multiplicity();
    let r = e.rank();
    if k as u128 * coords as u128 <= r as u128 * m as u128 || e.is_full() {
        return Err(Error::NotViolating {
            count: k,
            n_plus_1: coords,
            dim_plus_1: r,
            total: m,
        });
    }
    let columns = extend_to_basis(coords, &e.basis().row_vecs());
    let g = RatMatrix::from_columns(coords, &columns)?;
    let low = -((n + 1 - r) as i64);
    let high = r as i64;
    let q = (0..coords).map(|i| if i < r { low } else { high }).collect();
    let lambda = OnePS::conjugated(q, g)?;
    let w = mumford_weight(c, &lambda)?;
    let expected = k as i64 * (n + 1 - r) as i64 - (m - k) as i64 * r as i64;
    assert_eq!(
        w.value,
        rat(expected),
        "certificate weight disagrees with the closed form"
    );
    Ok((lambda, w))
}

/// Scalars for residual elimination. Only zero patterns of residuals
/// matter, so rows may be rescaled freely.
trait Elim: Clone + Sized {
    fn vanishes(&self) -> bool;
    /// `res` minus the multiple of `row` that clears column `p`, up to a
    /// nonzero factor. `None` on overflow.
    fn eliminate(res: &[Self], row: &[Self], p: usize) -> Option<Vec<Self>>;
}

impl Elim for i128 {
    fn vanishes(&self) -> bool {
        *self == 0
    }

    fn eliminate(res: &[i128], row: &[i128], p: usize) -> Option<Vec<i128>> {
        let (a, b) = (row[p], res[p]);
        let mut out = Vec::with_capacity(res.len());
        let mut content: i128 = 0;
        for (x, y) in res.iter().zip(row) {
            let v = a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)?;
            content = content.gcd(&v);
            out.push(v);
        }
        if content > 1 {
            out.iter_mut().for_each(|v| *v /= content);
        }
        Some(out)
    }
}

impl Elim for Rational {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn eliminate(res: &[Rational], row: &[Rational], p: usize) -> Option<Vec<Rational>> {
        let f = &res[p] / &row[p];
        Some(res.iter().zip(row).map(|(x, y)| x - &f * y).collect())
    }
}

/// Every distinct subspace spanned by at most `max_size` of the vectors,
/// as (indices of the vectors it contains, rank). A spanned subspace is
/// determined by the vectors it contains, which is how repeats are
/// detected. Subsets are explored in lexicographic order, independent ones
/// only; `None` on overflow.
fn spanned_member_sets<T: Elim>(vectors: &[Vec<T>], max_size: usize) -> Option<Vec<(Vec<usize>, usize)>> {
    struct Search<'a, T> {
        vectors: &'a [Vec<T>],
        max_size: usize,
        seen: HashSet<Vec<usize>>,
        out: Vec<(Vec<usize>, usize)>,
    }

    impl<T: Elim> Search<'_, T> {
        /// `residuals[j]` is vector `j` reduced modulo the current span.
        fn go(&mut self, start: usize, rank: usize, residuals: &[Vec<T>]) -> Option<()> {
            for i in start..self.vectors.len() {
                let row = &residuals[i];
                let Some(p) = row.iter().position(|x| !x.vanishes()) else {
                    continue;
                };
                let next = residuals
                    .iter()
                    .map(|r| {
                        if r[p].vanishes() {
                            Some(r.clone())
                        } else {
                            T::eliminate(r, row, p)
                        }
                    })
                    .collect::<Option<Vec<_>>>()?;
                let members: Vec<usize> = (0..next.len()).filter(|&j| next[j].iter().all(T::vanishes)).collect();
                // A span reached again came first from a subset whose
                // extensions cover this one's.
                if self.seen.insert(members.clone()) {
                    self.out.push((members, rank + 1));
                    if rank + 1 < self.max_size {
                        self.go(i + 1, rank + 1, &next)?;
                    }
                }
            }
            Some(())
        }
    }

    let mut search = Search {
        vectors,
        max_size,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    search.go(0, 0, vectors)?;
    Some(search.out)
}

/// Absolute Chow-stability of a point configuration by the subspace
/// counting criterion: `#{p in E} <= (dim E + 1)/(n + 1) * m` for every
/// proper subspace `E`, counted with multiplicity.
///
/// Only subspaces spanned by at most `n` distinct points are checked; every
/// proper subspace containing points contains one of those with the same
/// count. Worst case `O(s^n)` spans for `s` distinct points. When unstable,
/// the certificate uses a subspace of maximal excess `k(n+1) - (dim E + 1) m`,
/// which is the weight of its [`destabilizing_certificate`].
pub fn absolute_verdict(c: &Configuration) -> Result<StabilityReport> {
    if c.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let support = c.support_points()?;
    let n = c.ambient_dim();
    if n == 0 {
        return Ok(StabilityReport::new(Verdict::Stable));
    }
    let coords = n + 1;
    let m = c.total_multiplicity() as u128;
    let small: Option<Vec<Vec<i128>>> = support
        .iter()
        .map(|s| s.point.coords().iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    let vectors: Vec<RatVector> = support.iter().map(|s| s.point.to_rationals()).collect();
    let spans = small
        .and_then(|v| spanned_member_sets(&v, n))
        .or_else(|| spanned_member_sets(&vectors, n))
        .expect("rational elimination cannot overflow");

    let mut violation: Option<(u128, &[usize], u64)> = None;
    let mut equality = false;
    for (members, rank) in &spans {
        let k: u128 = members.iter().map(|&j| support[j].multiplicity as u128).sum();
        let lhs = k * coords as u128;
        let rhs = *rank as u128 * m;
        if lhs > rhs {
            let excess = lhs - rhs;
            if violation.map_or(true, |(best, _, _)| excess > best) {
                violation = Some((excess, members, k as u64));
            }
        } else if lhs == rhs {
            equality = true;
        }
    }

    if let Some((_, members, count)) = violation {
        let spanning: Vec<RatVector> = members.iter().map(|&j| vectors[j].clone()).collect();
        let e = ratlin::span(coords, &spanning)?;
        let (one_ps, w) = certificate_with_count(c, &e, count)?;
        let mut report = StabilityReport::new(Verdict::Unstable);
        report.certificate = Some(Certificate {
            subspace: e,
            count,
            total: c.total_multiplicity(),
            one_ps,
            mu: w.value,
        });
        return Ok(report);
    }
    let verdict = if !equality {
        Verdict::Stable
    } else if n == 1 {
        let half_each = support.len() == 2 && support[0].multiplicity == support[1].multiplicity;
        if half_each {
            Verdict::Polystable
        } else {
            Verdict::StrictlySemistable
        }
    } else {
        Verdict::SemistablePolystabilityUndetermined
    };
    Ok(StabilityReport::new(verdict))
}

/// Re-derives a certificate's weight with [`mumford_weight`] and checks it
/// is positive and matches the recorded value.
pub fn verify_certificate(c: &Configuration, cert: &Certificate) -> Result<bool> {
    let w = mumford_weight(c, &cert.one_ps)?;
    Ok(w.value == cert.mu && w.value > Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProjPoint;

    fn pts(n: usize, p: &[(&[i64], u64)]) -> Configuration {
        Configuration::from_i64_points(n, p).unwrap()
    }

    #[test]
    fn weight_of_single_point() {
        let c = pts(1, &[(&[1, 0], 1)]);
        let w = mumford_weight(&c, &OnePS::diagonal(vec![-1, 1])).unwrap();
        assert_eq!(w.value, rat(1));
    }

    #[test]
    fn trivial_subgroup_has_zero_weight() {
        let c = pts(2, &[(&[1, 2, 3], 4), (&[0, 1, 0], 1)]);
        let w = mumford_weight(&c, &OnePS::diagonal(vec![0, 0, 0])).unwrap();
        assert_eq!(w.value, rat(0));
    }

    #[test]
    fn per_point_contributions() {
        let c = pts(1, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        let w = mumford_weight(&c, &OnePS::diagonal(vec![-1, 1])).unwrap();
        assert_eq!(w.per_component, vec![(0, 1), (1, -1), (2, -1)]);
        assert_eq!(w.value, rat(-1));
    }

    #[test]
    fn weight_is_linear_in_multiplicity() {
        let c = pts(1, &[(&[1, 0], 3), (&[0, 1], 1)]);
        let w = mumford_weight(&c, &OnePS::diagonal(vec![-1, 1])).unwrap();
        assert_eq!(w.value, rat(2));
    }

    #[test]
    fn unnormalized_subgroup_rejected() {
        let c = pts(1, &[(&[1, 0], 1)]);
        let err = mumford_weight(&c, &OnePS::diagonal(vec![1, 0])).unwrap_err();
        assert_eq!(err, Error::UnnormalizedWeights { sum: 1 });
    }

    #[test]
    fn four_general_points_in_plane_are_stable() {
        let c = pts(2, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)]);
        assert_eq!(absolute_verdict(&c).unwrap().verdict, Verdict::Stable);
    }

    #[test]
    fn single_point_is_unstable() {
        for n in 1..4 {
            let mut coords = vec![0; n + 1];
            coords[n] = 1;
            let c = pts(n, &[(&coords, 1)]);
            let r = absolute_verdict(&c).unwrap();
            assert_eq!(r.verdict, Verdict::Unstable);
            assert!(r.certificate.unwrap().mu > rat(0));
        }
    }

    #[test]
    fn aligned_points_unstable_with_weight_four() {
        let c = pts(2, &[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        let r = absolute_verdict(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.mu, rat(4));
        assert_eq!(cert.one_ps.weights(), &[-1, -1, 2]);
        assert!(verify_certificate(&c, &cert).unwrap());
    }

    #[test]
    fn two_balanced_points_on_line_are_polystable() {
        let c = pts(1, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(absolute_verdict(&c).unwrap().verdict, Verdict::Polystable);
        let c = pts(1, &[(&[1, 0], 2), (&[0, 1], 1), (&[1, 1], 1)]);
        assert_eq!(absolute_verdict(&c).unwrap().verdict, Verdict::StrictlySemistable);
    }

    #[test]
    fn plane_equality_is_undetermined() {
        // Each point holds exactly a third of the mass, each line two thirds.
        let c = pts(2, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert_eq!(
            absolute_verdict(&c).unwrap().verdict,
            Verdict::SemistablePolystabilityUndetermined
        );
    }

    #[test]
    fn empty_configuration_rejected() {
        let c = Configuration::from_points(2, vec![]).unwrap();
        assert_eq!(absolute_verdict(&c), Err(Error::EmptyConfiguration));
    }

    #[test]
    fn certificate_examples() {
        let c = pts(2, &[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        let line = ratlin::span(3, &[ratlin::unit_vector(3, 0), ratlin::unit_vector(3, 1)]).unwrap();
        let (l, w) = destabilizing_certificate(&c, &line).unwrap();
        assert_eq!(l.weights(), &[-1, -1, 2]);
        assert_eq!(w.value, rat(4));

        let c = pts(2, &[(&[1, 0, 0], 1)]);
        let e0 = ProjPoint::from_i64(&[1, 0, 0]).unwrap().as_subspace();
        let (l, w) = destabilizing_certificate(&c, &e0).unwrap();
        assert_eq!(l.weights(), &[-2, 1, 1]);
        assert_eq!(w.value, rat(2));

        let c = pts(1, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let e0 = ProjPoint::from_i64(&[1, 0]).unwrap().as_subspace();
        assert!(matches!(
            destabilizing_certificate(&c, &e0),
            Err(Error::NotViolating { .. })
        ));
    }

    #[test]
    fn certificate_for_skew_subspace() {
        // Three points on the line x0 = x1 + x2 with a heavy first point.
        let c = pts(
            2,
            &[(&[1, 1, 0], 2), (&[1, 0, 1], 1), (&[0, 1, -1], 1), (&[0, 0, 1], 1)],
        );
        let r = absolute_verdict(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        let cert = r.certificate.unwrap();
        assert!(verify_certificate(&c, &cert).unwrap());
        assert!(cert.count * 3 > cert.subspace.rank() as u64 * cert.total);
    }

    #[test]
    fn machine_and_rational_spans_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let s = rng.gen_range(1..=6);
            let small: Vec<Vec<i128>> = (0..s)
                .map(|_| (0..4).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            if small.iter().any(|v| v.iter().all(|&x| x == 0)) {
                continue;
            }
            let exact: Vec<RatVector> = small
                .iter()
                .map(|v| v.iter().map(|&x| rat(x as i64)).collect())
                .collect();
            assert_eq!(spanned_member_sets(&small, 3), spanned_member_sets(&exact, 3));
        }
    }

    #[test]
    fn overflowing_coordinates_fall_back_to_rationals() {
        let big: i128 = 1 << 100;
        let v = vec![vec![big, big - 1, 0], vec![big - 1, big, 0], vec![1, 0, big]];
        assert_eq!(spanned_member_sets(&v, 2), None);
        let huge = |x: i128| crate::ratlin::Rational::from_integer(x.into());
        let pts: Vec<ProjPoint> = v
            .iter()
            .map(|r| ProjPoint::from_rationals(&r.iter().map(|&x| huge(x)).collect::<Vec<_>>()).unwrap())
            .collect();
        let c = Configuration::from_points(2, pts.into_iter().zip([3, 1, 1]).collect()).unwrap();
        let r = absolute_verdict(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.count, 3);
        assert!(verify_certificate(&c, &cert).unwrap());
    }
}
