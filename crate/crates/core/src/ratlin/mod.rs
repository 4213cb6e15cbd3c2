//! Exact rational arithmetic and linear algebra.
//!
//! Scalars are arbitrary-precision rationals, always kept in lowest terms
//! with a positive denominator. Matrices are dense and row-major. Linear
//! subspaces are stored by their reduced row echelon basis, so two
//! subspaces are equal exactly when their canonical bases are equal.

mod matrix;
mod subspace;

pub use matrix::RatMatrix;
pub use subspace::{span, LinSubspace};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `[+-]digits[/digits]` with a strictly positive denominator.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |position: usize, message: &'static str| Error::ParseRational {
        input: input.to_string(),
        position,
        message,
    };
    let bytes = input.as_bytes();
    let mut pos = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        pos = 1;
    }
    let num_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == num_start {
        return Err(err(pos, "expected a decimal digit"));
    }
    let numer: BigInt = input[..pos].parse().map_err(|_| err(0, "bad numerator"))?;
    if pos == bytes.len() {
        return Ok(Rational::from_integer(numer));
    }
    if bytes[pos] != b'/' {
        return Err(err(pos, "unexpected character"));
    }
    pos += 1;
    let den_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == den_start {
        return Err(err(pos, "expected a denominator digit"));
    }
    if pos != bytes.len() {
        return Err(err(pos, "trailing characters"));
    }
    let denom: BigInt = input[den_start..]
        .parse()
        .map_err(|_| err(den_start, "bad denominator"))?;
    if denom.is_zero() {
        return Err(err(den_start, "zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats as `p` for integers and `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Result<Vec<BigInt>> {
    let first = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for x in ints.iter_mut() {
        *x = &*x / &g * &sign;
    }
    Ok(ints)
}

/// Integer entries that fit in `i128`.
pub(crate) fn small_ints(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(|x| i128::try_from(x).ok()).collect()
}

/// Rows of `m` scaled to primitive integer vectors, when all entries fit in
/// `i128`. Scaling rows keeps the zero pattern of every product `m * v`.
pub(crate) fn small_int_rows(m: &RatMatrix) -> Option<Vec<Vec<i128>>> {
    (0..m.rows())
        .map(|i| small_ints(&primitive_integer_vector(m.row(i)).ok()?))
        .collect()
}

/// Bitmask of the nonzero entries of `rows * v`; `None` on overflow or
/// more than 64 rows.
pub(crate) fn nonzero_mask(rows: &[Vec<i128>], v: &[i128]) -> Option<u64> {
    if rows.len() > 64 {
        return None;
    }
    let mut mask = 0;
    for (i, row) in rows.iter().enumerate() {
        let mut acc: i128 = 0;
        for (a, b) in row.iter().zip(v) {
            acc = acc.checked_add(a.checked_mul(*b)?)?;
        }
        if acc != 0 {
            mask |= 1 << i;
        }
    }
    Some(mask)
}

pub fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

pub fn serialize_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rational))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vector(len: usize, i: usize) -> RatVector {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}
