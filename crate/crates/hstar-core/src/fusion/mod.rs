//! Skeletal unitary multifusion categories.

pub mod bundled;
pub mod data;
pub mod engine;
pub mod udf;
pub mod validate;

pub use data::{FusionData, FusionJson};
pub use engine::{Category, Mor, Obj};
pub use udf::{
    canonical_two_hilbert, fpdims, loop_eval, renorm_scalar, LoopSide, RenormReport, SphericalWeight,
    UdfData, WeightNormalization,
};
pub use validate::{validate, ValidationCertificate};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("weight {weight} on sheet {sheet} is not positive")]
    NonPositiveWeight { sheet: usize, weight: f64 },
    #[error("renormalization values differ across sheets by {gap:.3e}")]
    IndependenceViolation { gap: f64 },
    #[error("duality gauge: {0}")]
    Gauge(String),
    #[error("Frobenius-Perron dimension: {0}")]
    FpDim(String),
    #[error("left and right traces differ by {residual:.3e}")]
    NotSpherical { residual: f64 },
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("invalid fusion data: {0}")]
    Invalid(String),
}

impl FusionError {
    pub fn axiom(&self) -> &'static str {
        match self {
            FusionError::Schema(_) | FusionError::UnknownLabel(_) => "schema",
            FusionError::NonPositiveWeight { .. } => "weight positivity",
            FusionError::IndependenceViolation { .. } => "renormalization independence",
            FusionError::Gauge(_) => "duality",
            FusionError::FpDim(_) => "Frobenius-Perron dimensions",
            FusionError::NotSpherical { .. } => "sphericality",
            FusionError::Numeric(_) => "numerics",
            FusionError::Invalid(_) => "fusion data",
        }
    }
}
