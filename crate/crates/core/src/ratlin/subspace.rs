use num_traits::Zero;

use super::{RatMatrix, RatVector, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^{coords}`, i.e. a projective subspace of
/// `P^{coords-1}`, held by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinSubspace {
    basis: RatMatrix,
    pivots: Vec<usize>,
}

/// Span of `vectors` inside `Q^{coords}`.
pub fn span(coords: usize, vectors: &[RatVector]) -> Result<LinSubspace> {
    LinSubspace::from_basis(coords, vectors.to_vec())
}

impl LinSubspace {
    pub fn empty(coords: usize) -> Self {
        LinSubspace {
            basis: RatMatrix::zeros(0, coords),
            pivots: Vec::new(),
        }
    }

    pub fn full(coords: usize) -> Self {
        LinSubspace {
            basis: RatMatrix::identity(coords),
            pivots: (0..coords).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) rows.
    pub fn from_basis(coords: usize, rows: Vec<RatVector>) -> Result<Self> {
        let m = RatMatrix::from_rows(coords, rows)?;
        let (basis, pivots) = m.rref();
        Ok(LinSubspace { basis, pivots })
    }

    /// Common zero set of the given linear forms.
    pub fn from_equations(coords: usize, forms: Vec<RatVector>) -> Result<Self> {
        let m = RatMatrix::from_rows(coords, forms)?;
        let basis = m.kernel();
        let pivots = basis.rref().1;
        Ok(LinSubspace { basis, pivots })
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn coords(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Projective dimension, `-1` for the empty subspace.
    pub fn dim_proj(&self) -> isize {
        self.rank() as isize - 1
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.coords()
    }

    fn check_coords(&self, found: usize) -> Result<()> {
        if found != self.coords() {
            return Err(Error::DimensionMismatch {
                expected: self.coords(),
                found,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    fn reduce(&self, v: &[Rational]) -> RatVector {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, b) in w.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        w
    }

    fn contains_vector(&self, v: &[Rational]) -> bool {
        super::is_zero_vector(&self.reduce(v))
    }

    /// Whether the projective point `[v]` lies in this subspace.
    pub fn member(&self, v: &[Rational]) -> Result<bool> {
        self.check_coords(v.len())?;
        if super::is_zero_vector(v) {
            return Err(Error::ZeroVector);
        }
        Ok(self.contains_vector(v))
    }

    pub fn contains(&self, other: &LinSubspace) -> Result<bool> {
        self.check_coords(other.coords())?;
        Ok((0..other.rank()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &LinSubspace) -> Result<LinSubspace> {
        self.check_coords(other.coords())?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        LinSubspace::from_basis(self.coords(), rows)
    }

    /// Linear forms cutting out this subspace, as rows (RREF).
    pub fn annihilator(&self) -> RatMatrix {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &LinSubspace) -> Result<LinSubspace> {
        self.check_coords(other.coords())?;
        let mut forms = self.annihilator().into_rows();
        forms.extend(other.annihilator().into_rows());
        LinSubspace::from_equations(self.coords(), forms)
    }

    /// Image under the linear map `g`.
    pub fn transform(&self, g: &RatMatrix) -> Result<LinSubspace> {
        self.check_coords(g.cols())?;
        let rows = (0..self.rank())
            .map(|i| g.mul_vec(self.basis.row(i)))
            .collect::<Result<Vec<_>>>()?;
        LinSubspace::from_basis(g.rows(), rows)
    }
}

impl serde::Serialize for LinSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}
