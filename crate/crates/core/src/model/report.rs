use serde::Serialize;

use super::OnePS;
use crate::ratlin::{serialize_rational, LinSubspace, Rational};

/// Stability verdicts, ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    Polystable,
    StrictlySemistable,
    SemistablePolystabilityUndetermined,
    Unstable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Polystable => "polystable",
            Verdict::StrictlySemistable => "strictly semistable",
            Verdict::SemistablePolystabilityUndetermined => "semistable (polystability undetermined)",
            Verdict::Unstable => "unstable",
        }
    }

    pub fn is_semistable(&self) -> bool {
        *self != Verdict::Unstable
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A violating subspace `E` together with a one-parameter subgroup whose
/// Mumford weight on the configuration is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subspace: LinSubspace,
    /// Multiplicity-weighted number of points lying in `subspace`.
    pub count: u64,
    pub total: u64,
    pub one_ps: OnePS,
    #[serde(serialize_with = "serialize_rational")]
    pub mu: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub subspace: LinSubspace,
    /// Indices of the configuration components lying in `subspace`.
    pub members: Vec<usize>,
    pub report: StabilityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub component_reports: Vec<ComponentReport>,
}

impl StabilityReport {
    pub fn new(verdict: Verdict) -> Self {
        StabilityReport {
            verdict,
            certificate: None,
            component_reports: Vec::new(),
        }
    }
}
