//! JSON input documents.
//!
//! ```json
//! { "ambient_dim": 2,
//!   "points": [ {"coords": ["1", "0", "1/2"], "multiplicity": 2} ],
//!   "one_ps": {"weights": [2, -1, -1]} }
//! ```
//!
//! Exactly one of `points` / `subspaces` is non-empty. Rationals are strings
//! of the form `[+-]digits[/digits]`.

use serde::{Deserialize, Serialize};

use super::{Component, Configuration, Geometry, OnePS, ProjPoint};
use crate::error::{Error, Result};
use crate::ratlin::{format_rational, parse_rational, LinSubspace, RatMatrix, RatVector};

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    points: Vec<RawPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    subspaces: Vec<RawSubspace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one_ps: Option<RawOnePS>,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    coords: Vec<String>,
    #[serde(default = "one")]
    multiplicity: i64,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    basis: Vec<Vec<String>>,
    #[serde(default = "one")]
    multiplicity: i64,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOnePS {
    weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conjugation: Option<Vec<Vec<String>>>,
}

/// A parsed input: a configuration and an optional one-parameter subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub configuration: Configuration,
    pub one_ps: Option<OnePS>,
}

fn parse_vector(strings: &[String], what: &str, index: usize) -> Result<RatVector> {
    strings
        .iter()
        .enumerate()
        .map(|(k, s)| {
            parse_rational(s).map_err(|e| Error::InvalidComponent {
                index,
                reason: format!("{what}[{k}]: {e}"),
            })
        })
        .collect()
}

fn multiplicity(m: i64, index: usize) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidComponent {
            index,
            reason: format!("multiplicity {m} is below 1"),
        });
    }
    Ok(m as u64)
}

/// Parses rows of rational strings into a matrix.
pub fn parse_matrix(rows: &[Vec<String>]) -> Result<RatMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(|e| Error::Document(format!("matrix entry [{i}][{j}]: {e}"))))
                .collect::<Result<RatVector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(cols, parsed)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let n = raw.ambient_dim;
    let coords = n + 1;
    if !raw.points.is_empty() && !raw.subspaces.is_empty() {
        return Err(Error::MixedComponents {
            index: raw.points.len(),
            reason: "document has both points and subspaces".into(),
        });
    }
    let mut components = Vec::new();
    for (index, p) in raw.points.iter().enumerate() {
        let v = parse_vector(&p.coords, "coords", index)?;
        if v.len() != coords {
            return Err(Error::InvalidComponent {
                index,
                reason: format!("expected {coords} coordinates, found {}", v.len()),
            });
        }
        let point = ProjPoint::from_rationals(&v).map_err(|_| Error::InvalidComponent {
            index,
            reason: "zero coordinate vector".into(),
        })?;
        components.push(Component {
            geometry: Geometry::Point(point),
            multiplicity: multiplicity(p.multiplicity, index)?,
        });
    }
    for (index, s) in raw.subspaces.iter().enumerate() {
        let rows = s
            .basis
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let v = parse_vector(row, &format!("basis[{r}]"), index)?;
                if v.len() != coords {
                    return Err(Error::InvalidComponent {
                        index,
                        reason: format!("basis[{r}] has {} entries, expected {coords}", v.len()),
                    });
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = LinSubspace::from_basis(coords, rows)?;
        components.push(Component {
            geometry: Geometry::Subspace(sub),
            multiplicity: multiplicity(s.multiplicity, index)?,
        });
    }
    if components.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let configuration = Configuration::new(n, components)?;
    let one_ps = match raw.one_ps {
        None => None,
        Some(r) => {
            if r.weights.len() != coords {
                return Err(Error::WeightLength {
                    expected: coords,
                    found: r.weights.len(),
                });
            }
            Some(match r.conjugation {
                None => OnePS::diagonal(r.weights),
                Some(rows) => {
                    let g = parse_matrix(&rows)?;
                    OnePS::conjugated(r.weights, g).map_err(|e| Error::Document(format!("one_ps.conjugation: {e}")))?
                }
            })
        }
    };
    Ok(Document { configuration, one_ps })
}

pub fn parse_configuration(text: &str) -> Result<Configuration> {
    Ok(parse_document(text)?.configuration)
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

impl Document {
    pub fn new(configuration: Configuration, one_ps: Option<OnePS>) -> Self {
        Document { configuration, one_ps }
    }

    /// Canonical JSON form: points as primitive integer vectors, subspaces by
    /// their RREF basis.
    pub fn to_json(&self) -> String {
        let c = &self.configuration;
        let mut raw = RawDocument {
            ambient_dim: c.ambient_dim(),
            points: Vec::new(),
            subspaces: Vec::new(),
            one_ps: self.one_ps.as_ref().map(|l| RawOnePS {
                weights: l.weights().to_vec(),
                conjugation: l.conjugation().map(matrix_strings),
            }),
        };
        for comp in c.components() {
            let multiplicity = comp.multiplicity as i64;
            match &comp.geometry {
                Geometry::Point(p) => raw.points.push(RawPoint {
                    coords: p.coords().iter().map(|x| x.to_string()).collect(),
                    multiplicity,
                }),
                Geometry::Subspace(s) => raw.subspaces.push(RawSubspace {
                    basis: matrix_strings(s.basis()),
                    multiplicity,
                }),
            }
        }
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

impl Configuration {
    pub fn to_json(&self) -> String {
        Document::new(self.clone(), None).to_json()
    }
}
