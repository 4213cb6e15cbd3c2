//! Exact Chow-stability computations for configurations of points and
//! linear subspaces in projective space.
//!
//! All arithmetic is over the rationals. The main entry points are
//! [`absolute_verdict`], [`relative_verdict`], [`mumford_weight`],
//! [`config_chow_weight`] and [`futaki_correction`].
//!
//! ```
//! use chowstab::{absolute_verdict, Configuration, Verdict};
//!
//! let c = Configuration::from_i64_points(2, &[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]).unwrap();
//! let report = absolute_verdict(&c).unwrap();
//! assert_eq!(report.verdict, Verdict::Unstable);
//! assert_eq!(report.certificate.unwrap().mu, chowstab::ratlin::rat(4));
//! ```

pub mod chow;
pub mod decomp;
pub mod error;
pub mod model;
pub mod ratlin;
pub mod stability;

pub use chow::{
    commutation_check, component_chow_weight, config_chow_weight, flat_limit, flat_limit_point, flat_limit_subspace,
    futaki_correction, ChowWeightReport, ComponentWeight, FlatLimit, FutakiReport,
};
pub use decomp::{decompose_span, embed_point, relative_verdict, restrict_component, DecompComponent, Decomposition};
pub use error::{Error, ErrorClass, Result};
pub use model::{
    normalize_one_ps, parse_configuration, parse_document, parse_matrix, permutation_matrix, Certificate, Component,
    ComponentReport, Configuration, Document, Geometry, OnePS, ProjPoint, StabilityReport, SupportPoint, Verdict,
};
pub use ratlin::{LinSubspace, RatMatrix, Rational};
pub use stability::{
    absolute_verdict, destabilizing_certificate, mumford_weight, oracle_search, verify_certificate, MumfordWeight,
    Oracle,
};
