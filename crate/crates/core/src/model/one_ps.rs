use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{RatMatrix, RatVector, Rational};

/// One-parameter subgroup `t -> g * diag(t^q_0, ..., t^q_n) * g^-1`.
///
/// Points `p` are read in the subgroup's frame as `g^-1 p`; with no
/// conjugation the frame is the standard one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePS {
    weights: Vec<i64>,
    conjugation: Option<(RatMatrix, RatMatrix)>,
    /// Rows of `g^-1` as small integers, for zero-pattern tests.
    small_inverse: Option<Vec<Vec<i128>>>,
}

impl OnePS {
    pub fn diagonal(weights: Vec<i64>) -> Self {
        OnePS {
            weights,
            conjugation: None,
            small_inverse: None,
        }
    }

    pub fn conjugated(weights: Vec<i64>, g: RatMatrix) -> Result<Self> {
        if g.rows() != weights.len() || g.cols() != weights.len() {
            return Err(Error::NotSquare {
                expected: weights.len(),
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        let inv = g.inverse()?;
        let small_inverse = crate::ratlin::small_int_rows(&inv);
        Ok(OnePS {
            weights,
            conjugation: Some((g, inv)),
            small_inverse,
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn conjugation(&self) -> Option<&RatMatrix> {
        self.conjugation.as_ref().map(|(g, _)| g)
    }

    pub fn coords(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    /// The inverse subgroup `t -> lambda(t^-1)`.
    pub fn inverse(&self) -> OnePS {
        self.map_weights(|q| -q)
    }

    pub fn map_weights(&self, f: impl Fn(i64) -> i64) -> OnePS {
        OnePS {
            weights: self.weights.iter().map(|&q| f(q)).collect(),
            conjugation: self.conjugation.clone(),
            small_inverse: self.small_inverse.clone(),
        }
    }

    /// Mean-zero rescaling `(n+1) q - (sum q) 1`, keeping the conjugation.
    pub fn normalized(&self) -> OnePS {
        let n1 = self.weights.len() as i64;
        let s = self.weight_sum();
        self.map_weights(|q| n1 * q - s)
    }

    pub(crate) fn check_len(&self, coords: usize) -> Result<()> {
        if self.coords() != coords {
            return Err(Error::WeightLength {
                expected: coords,
                found: self.coords(),
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the subgroup's eigenbasis.
    pub fn to_frame(&self, v: &[Rational]) -> Result<RatVector> {
        match &self.conjugation {
            None => Ok(v.to_vec()),
            Some((_, inv)) => inv.mul_vec(v),
        }
    }

    /// Bitmask of the nonzero frame coordinates of the integer vector `v`,
    /// when it can be computed in machine integers.
    pub(crate) fn small_frame_support(&self, v: &[BigInt]) -> Option<u64> {
        let v = crate::ratlin::small_ints(v)?;
        match &self.small_inverse {
            None if self.conjugation.is_none() && v.len() <= 64 => Some(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .fold(0, |m, (i, _)| m | 1 << i),
            ),
            None => None,
            Some(rows) => crate::ratlin::nonzero_mask(rows, &v),
        }
    }

    pub fn from_frame(&self, v: &[Rational]) -> Result<RatVector> {
        match &self.conjugation {
            None => Ok(v.to_vec()),
            Some((g, _)) => g.mul_vec(v),
        }
    }

    /// The infinitesimal generator `g diag(q) g^-1`.
    pub fn generator(&self) -> RatMatrix {
        let d = RatMatrix::diagonal(&self.weights.iter().map(|&q| crate::ratlin::rat(q)).collect::<Vec<_>>());
        match &self.conjugation {
            None => d,
            Some((g, inv)) => g
                .mul(&d)
                .and_then(|gd| gd.mul(inv))
                .expect("square matrices of equal size"),
        }
    }
}

impl Serialize for OnePS {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OnePS", 2)?;
        st.serialize_field("weights", &self.weights)?;
        st.serialize_field("conjugation", &self.conjugation())?;
        st.end()
    }
}

/// Mean-zero integer representative `(n+1) q - (sum q) 1` of the ray of `q`.
/// The result is trivial exactly when `q` is constant.
pub fn normalize_one_ps(q: &[i64]) -> OnePS {
    OnePS::diagonal(q.to_vec()).normalized()
}
