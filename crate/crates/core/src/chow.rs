//! Flat limits of linear geometry under one-parameter subgroups, Chow
//! weights of points and linear subspaces, and the leading Futaki
//! correction of a blow-up along a weighted configuration.
//!
//! With `lambda = diag(t^q)` in its frame, a point flows to its
//! coordinates of minimal weight; a subspace flows to the zero set of the
//! initial forms of its equations, taken at the maximal weight level of
//! each form. `e(N)` is the sum of the weights surviving on the limit and
//!
//! ```text
//! w(N) = n! / (2 (d+1)! (n-d-2)!) * (e(N) - (d+1)/(n+1) * sum q)
//! ```
//!
//! for `N` of dimension `d < n - 1`. Positive weight means Chow-unstable
//! with respect to `lambda`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Configuration, Geometry, OnePS, ProjPoint};
use crate::ratlin::{self, format_rational, rat, serialize_rational, LinSubspace, RatMatrix, RatVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatLimit {
    pub limit: Geometry,
    /// Weights of the coordinates spanning the limit in the frame; `d + 1`
    /// of them.
    pub surviving_weights: Vec<i64>,
    /// Whether the input was already fixed by the subgroup.
    pub invariant: bool,
}

impl FlatLimit {
    /// `e(N)`, the sum of the surviving weights.
    pub fn e(&self) -> i64 {
        self.surviving_weights.iter().sum()
    }
}

fn frame_support(v: &[Rational]) -> impl Iterator<Item = usize> + '_ {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
}

pub fn flat_limit_point(p: &ProjPoint, lambda: &OnePS) -> Result<FlatLimit> {
    lambda.check_len(p.len())?;
    let y = lambda.to_frame(&p.to_rationals())?;
    let q = lambda.weights();
    let q_min = frame_support(&y).map(|i| q[i]).min().ok_or(Error::ZeroVector)?;
    let kept: RatVector = y
        .iter()
        .zip(q)
        .map(|(x, &w)| if w == q_min { x.clone() } else { Rational::zero() })
        .collect();
    let limit = ProjPoint::from_rationals(&lambda.from_frame(&kept)?)?;
    Ok(FlatLimit {
        invariant: &limit == p,
        limit: Geometry::Point(limit),
        surviving_weights: vec![q_min],
    })
}

pub fn flat_limit_subspace(s: &LinSubspace, lambda: &OnePS) -> Result<FlatLimit> {
    let coords = s.coords();
    lambda.check_len(coords)?;
    let q = lambda.weights();
    let frame_rows = s
        .basis()
        .row_vecs()
        .iter()
        .map(|r| lambda.to_frame(r))
        .collect::<Result<Vec<_>>>()?;
    let frame = ratlin::span(coords, &frame_rows)?;

    let mut order: Vec<usize> = (0..coords).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(q[i]));
    let (forms, pivots) = frame.annihilator().rref_with_column_order(&order);

    let initial: Vec<RatVector> = pivots
        .iter()
        .enumerate()
        .map(|(r, &p)| {
            forms
                .row(r)
                .iter()
                .zip(q)
                .map(|(x, &w)| if w == q[p] { x.clone() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let limit_frame = LinSubspace::from_equations(coords, initial)?;
    assert_eq!(limit_frame.rank(), s.rank(), "initial forms stay independent");
    let limit_rows = limit_frame
        .basis()
        .row_vecs()
        .iter()
        .map(|r| lambda.from_frame(r))
        .collect::<Result<Vec<_>>>()?;
    let limit = ratlin::span(coords, &limit_rows)?;
    let surviving_weights = (0..coords).filter(|i| !pivots.contains(i)).map(|i| q[i]).collect();
    Ok(FlatLimit {
        invariant: &limit == s,
        limit: Geometry::Subspace(limit),
        surviving_weights,
    })
}

pub fn flat_limit(geom: &Geometry, lambda: &OnePS) -> Result<FlatLimit> {
    match geom {
        Geometry::Point(p) => flat_limit_point(p, lambda),
        Geometry::Subspace(s) => flat_limit_subspace(s, lambda),
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n! / (2 (d+1)! (n-d-2)!)`.
fn chow_coefficient(n: usize, d: usize) -> Rational {
    Rational::new(factorial(n), BigInt::from(2) * factorial(d + 1) * factorial(n - d - 2))
}

fn check_codimension(d: usize, n: usize) -> Result<()> {
    if d + 2 > n {
        return Err(Error::CodimensionTooSmall { d, n });
    }
    Ok(())
}

/// Chow weight of one linear component and the `e(N)` it came from.
fn chow_weight_with_e(geom: &Geometry, lambda: &OnePS, n: usize) -> Result<(i64, Rational)> {
    if geom.coords() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: geom.coords(),
        });
    }
    let d = geom.dim();
    check_codimension(d, n)?;
    let e = flat_limit(geom, lambda)?.e();
    let shift = rat((d + 1) as i64 * lambda.weight_sum()) / rat((n + 1) as i64);
    Ok((e, chow_coefficient(n, d) * (rat(e) - shift)))
}

pub fn component_chow_weight(geom: &Geometry, lambda: &OnePS, n: usize) -> Result<Rational> {
    Ok(chow_weight_with_e(geom, lambda, n)?.1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWeight {
    pub index: usize,
    pub multiplicity: u64,
    pub e: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub w: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowWeightReport {
    pub n: usize,
    pub d: usize,
    pub q: Vec<i64>,
    /// Multiplicities enter as `m^exponent`, `exponent = n - d - 1`.
    pub exponent: u32,
    pub per_component: Vec<ComponentWeight>,
    #[serde(serialize_with = "serialize_rational")]
    pub total: Rational,
}

fn check_disjoint(c: &Configuration) -> Result<()> {
    let subspaces: Vec<LinSubspace> = c.components().iter().map(|k| k.geometry.as_subspace()).collect();
    for i in 0..subspaces.len() {
        for j in i + 1..subspaces.len() {
            if !subspaces[i].intersect(&subspaces[j])?.is_empty() {
                return Err(Error::OverlappingComponents { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// `sum_j m_j^{n-d-1} w(N_j)` over pairwise disjoint components.
pub fn config_chow_weight(c: &Configuration, lambda: &OnePS) -> Result<ChowWeightReport> {
    if c.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    lambda.check_len(c.coords())?;
    let n = c.ambient_dim();
    let d = c.component_dim();
    check_codimension(d, n)?;
    check_disjoint(c)?;
    let exponent = (n - d - 1) as u32;
    let mut total = Rational::zero();
    let mut per_component = Vec::with_capacity(c.components().len());
    for (index, comp) in c.components().iter().enumerate() {
        let (e, w) = chow_weight_with_e(&comp.geometry, lambda, n)?;
        total += Rational::from_integer(BigInt::from(comp.multiplicity).pow(exponent)) * &w;
        per_component.push(ComponentWeight {
            index,
            multiplicity: comp.multiplicity,
            e,
            w,
        });
    }
    Ok(ChowWeightReport {
        n,
        d,
        q: lambda.weights().to_vec(),
        exponent,
        per_component,
        total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FutakiReport {
    #[serde(serialize_with = "serialize_rational")]
    pub base_futaki: Rational,
    /// Coefficient of `r^-(n-d-1)` in `F(blow-up, L_r) - F(base)`.
    #[serde(serialize_with = "serialize_rational")]
    pub correction_numerator: Rational,
    pub exponent: u32,
    pub leading_term: String,
    pub unstable_for_large_r: bool,
    pub verdict_text: Option<String>,
}

/// Leading correction to the Futaki invariant of the test configuration
/// induced by `lambda` on the blow-up with polarization `L_r`. The verdict
/// fires when the base invariant vanishes and the correction is positive.
pub fn futaki_correction(c: &Configuration, lambda: &OnePS, base_futaki: &Rational) -> Result<FutakiReport> {
    let report = config_chow_weight(c, lambda)?;
    let coefficient = report.total;
    let exponent = report.exponent;
    let shown = if coefficient.is_integer() {
        format_rational(&coefficient)
    } else {
        format!("({})", format_rational(&coefficient))
    };
    let fires = base_futaki.is_zero() && coefficient.is_positive();
    let verdict_text = fires.then(|| {
        format!(
            "Futaki invariant is {shown}/r^{exponent} + O(r^-{}) > 0: the blow-up is K-unstable for r >> 0 and carries no cscK metric in L_r",
            exponent + 1
        )
    });
    Ok(FutakiReport {
        base_futaki: base_futaki.clone(),
        correction_numerator: coefficient,
        exponent,
        leading_term: format!("{shown}/r^{exponent}"),
        unstable_for_large_r: fires,
        verdict_text,
    })
}

/// Whether the generator of `lambda` commutes with every matrix given.
pub fn commutation_check(lambda: &OnePS, generators: &[RatMatrix]) -> Result<bool> {
    let d = lambda.generator();
    let size = lambda.coords();
    for g in generators {
        if g.rows() != size || g.cols() != size {
            return Err(Error::NotSquare {
                expected: size,
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if d.mul(g)? != g.mul(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}
