//! Algebra objects in a unitary multifusion category, their module categories,
//! bimodules and relative tensor products.

mod algebra;
mod bimodule;
mod file;
mod module;

pub use algebra::{
    bubble_spectrum, examples, mor_pow, rescale, standardize, verify_hstar, AlgebraObject, HStarAlgCertificate,
    MAX_BUBBLE_CONDITION,
};
pub use bimodule::{
    bimodule_dual_delta0, bimodule_homs, dual_bimodule, left_module_trace, left_unitor, relative_tensor, right_unitor, same_algebra,
    separability_idempotent, simple_left_modules, split_bimodule, unitary_residual, Bimodule, BimoduleResiduals, DualCertificate, DualData, MateContext,
    RelativeTensor, DUAL_SAMPLES,
};
pub use file::{algebra_to_file, from_file, load_algebra, load_category, parse_algebra, AlgebraFile};
pub use module::{
    internal_end, module_category, module_homs, module_trace, ComparisonCertificate, InternalEnd, ModuleCategory,
    ModuleTraceCertificate, RightModule,
};

use crate::fusion::FusionError;

#[derive(Debug, thiserror::Error)]
pub enum IntAlgError {
    #[error("unit law fails with residual {residual:.3e}")]
    NotUnital { residual: f64 },
    #[error("associativity fails with residual {residual:.3e}")]
    NotAssociative { residual: f64 },
    #[error("bubble is singular: {detail}")]
    SingularBubble { detail: String },
    #[error("separability idempotent is not a projection (defect {defect:.3e})")]
    NotProjection { defect: f64 },
    #[error("algebras do not match: {0}")]
    AlgebraMismatch(String),
    #[error("module action fails: {0}")]
    NotModule(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

impl IntAlgError {
    pub fn axiom(&self) -> &'static str {
        match self {
            IntAlgError::NotUnital { .. } => "unitality",
            IntAlgError::NotAssociative { .. } => "associativity",
            IntAlgError::SingularBubble { .. } => "H*2 separability",
            IntAlgError::NotProjection { .. } => "separability idempotent",
            IntAlgError::AlgebraMismatch(_) => "algebra mismatch",
            IntAlgError::NotModule(_) => "module axioms",
            IntAlgError::Shape(_) | IntAlgError::Schema(_) => "schema",
            IntAlgError::Fusion(e) => e.axiom(),
        }
    }
}
