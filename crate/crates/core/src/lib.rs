//! Exact computer algebra for ℤ₂-graded BL∞ and curved IBL∞ algebras:
//! assembled differentials, morphisms and augmentations, and the torsion,
//! planarity and semi-dilation invariants built from them.

pub mod algebra;
pub mod blinfty;
pub mod error;
pub mod ibl;
pub mod invariants;
pub mod io;

pub use error::{Error, Result};
