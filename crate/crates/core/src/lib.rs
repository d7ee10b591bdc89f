//! Exact computations around twisted affine root systems: folding of
//! simply-laced root data, complexified alcove reduction, the subgroups G_J,
//! geometric affine Hecke algebra parameters and their tables, a Chevalley
//! basis Lie algebra engine, and symbolic affine/graded Hecke algebras.

pub mod alcove;
pub mod cyclo;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod folding;
pub mod hecke_algebra;
pub mod hecke_params;
pub mod lie;
pub mod linalg;
pub mod rootdata;
pub mod scalar;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{CScalar, Rat};
