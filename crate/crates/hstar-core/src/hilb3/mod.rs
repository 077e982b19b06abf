//! Presentations of 3-Hilbert spaces by generators, their two completions and
//! the comparison between H*-algebras and module categories.

mod matrix;
mod monad;
mod presentation;
mod weight;

pub use matrix::{direct_sum, matrix_category, matrix_simples};
pub use monad::{
    certify_bimodule_1mor, closed_loops, free_bimodule, pair_module, hstar_monad_completion, monad_psi, simple_bimodules, induced_monad, split_monad, HStarMonad, LinkingRing, MonadCertificate,
    MonadCompletion, MonadHom, MonadSplitting, SplitCertificate,
};
pub use presentation::{
    certify_isometry_1mor, decompose_simples, hilbert_sum_completion, hom_two_hilbert, linking_e1, DirectSumCertificate,
    Decomposition, HomCertificate, IsometryCertificate, IsometryKind, Linking, LinkingCertificate, Pre3HilbPresentation,
    Summand,
};
pub use weight::{
    gauge_perturbed, rescaled_coev, theorem_b_check, uaf_uniqueness_check, weight_mod_dagger, TheoremBCertificate,
    UafCertificate, WeightValue,
};

use crate::fusion::FusionError;
use crate::intalg::IntAlgError;

#[derive(Debug, thiserror::Error)]
pub enum Hilb3Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("no duality data: {0}")]
    MissingDualityData(String),
    #[error("candidate duality is not spherical (residual {residual:.3e})")]
    CandidateNotSpherical { residual: f64 },
    #[error("category is decomposable into {0} components")]
    Decomposable(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    IntAlg(#[from] IntAlgError),
}

impl Hilb3Error {
    pub fn axiom(&self) -> &'static str {
        match self {
            Hilb3Error::UnknownObject(_) | Hilb3Error::Invalid(_) => "schema",
            Hilb3Error::MissingDualityData(_) => "duality",
            Hilb3Error::CandidateNotSpherical { .. } => "sphericality",
            Hilb3Error::Decomposable(_) => "indecomposability",
            Hilb3Error::Fusion(e) => e.axiom(),
            Hilb3Error::IntAlg(e) => e.axiom(),
        }
    }
}
