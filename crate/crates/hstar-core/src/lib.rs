//! Numerical toolkit for H*-algebras, 2-Hilbert spaces, unitary multifusion
//! categories, and pre-3-Hilbert spaces.

pub mod deligne;
pub mod fusion;
pub mod hilb2;
pub mod hilb3;
pub mod hstar1;
pub mod intalg;
pub mod json;
pub mod numcore;
pub mod sample;

pub use numcore::{CMatrix, Tolerance};
