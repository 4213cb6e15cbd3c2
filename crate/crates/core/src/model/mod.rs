//! Configurations of weighted points or linear subspaces in `P^n`, and
//! diagonalizable one-parameter subgroups acting on them.

mod document;
mod one_ps;
mod report;

pub use document::{parse_configuration, parse_document, parse_matrix, Document};
pub use one_ps::{normalize_one_ps, OnePS};
pub use report::{Certificate, ComponentReport, StabilityReport, Verdict};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{self, LinSubspace, RatMatrix, RatVector, Rational};

/// A point of projective space, stored as the primitive integer vector
/// whose first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn from_rationals(v: &[Rational]) -> Result<Self> {
        Ok(ProjPoint {
            coords: ratlin::primitive_integer_vector(v)?,
        })
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        let r: RatVector = v.iter().map(|&x| ratlin::rat(x)).collect();
        Self::from_rationals(&r)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_rationals(&self) -> RatVector {
        self.coords.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn transform(&self, g: &RatMatrix) -> Result<ProjPoint> {
        ProjPoint::from_rationals(&g.mul_vec(&self.to_rationals())?)
    }

    pub fn as_subspace(&self) -> LinSubspace {
        LinSubspace::from_basis(self.len(), vec![self.to_rationals()]).expect("lengths agree")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|x| x.to_string()))
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Point(ProjPoint),
    Subspace(LinSubspace),
}

impl Geometry {
    pub fn coords(&self) -> usize {
        match self {
            Geometry::Point(p) => p.len(),
            Geometry::Subspace(s) => s.coords(),
        }
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        match self {
            Geometry::Point(_) => 0,
            Geometry::Subspace(s) => s.rank() - 1,
        }
    }

    pub fn as_subspace(&self) -> LinSubspace {
        match self {
            Geometry::Point(p) => p.as_subspace(),
            Geometry::Subspace(s) => s.clone(),
        }
    }

    pub fn transform(&self, g: &RatMatrix) -> Result<Geometry> {
        Ok(match self {
            Geometry::Point(p) => Geometry::Point(p.transform(g)?),
            Geometry::Subspace(s) => Geometry::Subspace(s.transform(g)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub geometry: Geometry,
    pub multiplicity: u64,
}

/// A multiset of points, or of linear subspaces of one common dimension,
/// in `P^n`. Multiplicities are kept on the components rather than by
/// repetition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    ambient: usize,
    components: Vec<Component>,
}

/// A support point: a distinct point of a configuration with its summed
/// multiplicity and the indices of the components that carry it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub point: ProjPoint,
    pub multiplicity: u64,
    pub components: Vec<usize>,
}

impl Configuration {
    pub fn new(ambient: usize, components: Vec<Component>) -> Result<Self> {
        let mut kind_dim: Option<(bool, usize)> = None;
        for (index, c) in components.iter().enumerate() {
            if c.multiplicity < 1 {
                return Err(Error::InvalidComponent {
                    index,
                    reason: "multiplicity must be at least 1".into(),
                });
            }
            if c.geometry.coords() != ambient + 1 {
                return Err(Error::InvalidComponent {
                    index,
                    reason: format!(
                        "expected {} homogeneous coordinates, found {}",
                        ambient + 1,
                        c.geometry.coords()
                    ),
                });
            }
            if let Geometry::Subspace(s) = &c.geometry {
                if s.is_empty() {
                    return Err(Error::InvalidComponent {
                        index,
                        reason: "subspace basis spans only the zero vector".into(),
                    });
                }
            }
            let this = (matches!(c.geometry, Geometry::Point(_)), c.geometry.dim());
            match kind_dim {
                None => kind_dim = Some(this),
                Some(first) if first.0 != this.0 => {
                    return Err(Error::MixedComponents {
                        index,
                        reason: "points and subspaces together".into(),
                    })
                }
                Some(first) if first.1 != this.1 => {
                    return Err(Error::MixedComponents {
                        index,
                        reason: format!("dimension {} after dimension {}", this.1, first.1),
                    })
                }
                _ => {}
            }
        }
        Ok(Configuration { ambient, components })
    }

    pub fn from_points(ambient: usize, points: Vec<(ProjPoint, u64)>) -> Result<Self> {
        let components = points
            .into_iter()
            .map(|(p, m)| Component {
                geometry: Geometry::Point(p),
                multiplicity: m,
            })
            .collect();
        Self::new(ambient, components)
    }

    /// Convenience for tests and examples: integer coordinates.
    pub fn from_i64_points(ambient: usize, points: &[(&[i64], u64)]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|(c, m)| Ok((ProjPoint::from_i64(c)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(ambient, pts)
    }

    pub fn from_subspaces(ambient: usize, subspaces: Vec<(LinSubspace, u64)>) -> Result<Self> {
        let components = subspaces
            .into_iter()
            .map(|(s, m)| Component {
                geometry: Geometry::Subspace(s),
                multiplicity: m,
            })
            .collect();
        Self::new(ambient, components)
    }

    /// Ambient projective dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn coords(&self) -> usize {
        self.ambient + 1
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_points(&self) -> bool {
        self.components.iter().all(|c| matches!(c.geometry, Geometry::Point(_)))
    }

    /// Common projective dimension of the components (0 when empty).
    pub fn component_dim(&self) -> usize {
        self.components.first().map_or(0, |c| c.geometry.dim())
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    /// The points of a point configuration, in component order.
    pub fn points(&self) -> Result<Vec<(&ProjPoint, u64)>> {
        self.components
            .iter()
            .map(|c| match &c.geometry {
                Geometry::Point(p) => Ok((p, c.multiplicity)),
                Geometry::Subspace(_) => Err(Error::NotPoints),
            })
            .collect()
    }

    /// Distinct points in order of first appearance, multiplicities summed.
    pub fn support_points(&self) -> Result<Vec<SupportPoint>> {
        let mut index: HashMap<&ProjPoint, usize> = HashMap::new();
        let mut out: Vec<SupportPoint> = Vec::new();
        for (i, (p, m)) in self.points()?.into_iter().enumerate() {
            match index.get(p) {
                Some(&k) => {
                    out[k].multiplicity += m;
                    out[k].components.push(i);
                }
                None => {
                    index.insert(p, out.len());
                    out.push(SupportPoint {
                        point: p.clone(),
                        multiplicity: m,
                        components: vec![i],
                    });
                }
            }
        }
        Ok(out)
    }

    /// Image of the configuration under an invertible linear map.
    pub fn apply_transform(&self, g: &RatMatrix) -> Result<Configuration> {
        if g.rows() != self.coords() || g.cols() != self.coords() {
            return Err(Error::NotSquare {
                expected: self.coords(),
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if !g.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(Component {
                    geometry: c.geometry.transform(g)?,
                    multiplicity: c.multiplicity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            ambient: self.ambient,
            components,
        })
    }

    /// Same configuration with every multiplicity multiplied by `t`.
    pub fn scale_multiplicities(&self, t: u64) -> Configuration {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                geometry: c.geometry.clone(),
                multiplicity: c.multiplicity * t,
            })
            .collect();
        Configuration {
            ambient: self.ambient,
            components,
        }
    }

    /// Reorders the components; `order[k]` is the old index of new component `k`.
    pub fn reorder(&self, order: &[usize]) -> Configuration {
        Configuration {
            ambient: self.ambient,
            components: order.iter().map(|&i| self.components[i].clone()).collect(),
        }
    }
}

/// Permutation matrix sending `e_i` to `e_{perm[i]}`.
pub fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let n = perm.len();
    let mut cols = vec![Vec::new(); n];
    for (i, &p) in perm.iter().enumerate() {
        cols[i] = ratlin::unit_vector(n, p);
    }
    RatMatrix::from_columns(n, &cols).expect("square")
}
