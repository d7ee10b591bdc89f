//! Lie-algebra engine: Chevalley bases, Ad(τ), graded pieces, sl2-triples,
//! the integers ū and the eigenvalue multisets used for semisimple classes.

pub mod appendix;
pub mod catalog;
pub mod chevalley;
pub mod graded;
pub mod sl2;

use crate::error::Result;
use crate::folding::{fold, FoldedRootDatum};
use chevalley::{build_chevalley, ChevalleyAlgebra, TauAction};
use graded::{graded_decomposition, Grading};

/// Algebra, Ad(τ), fold and grading for one (type, d).
#[derive(Clone, Debug)]
pub struct Engine {
    pub alg: ChevalleyAlgebra,
    pub tau: TauAction,
    pub fold: FoldedRootDatum,
    pub grading: Grading,
}

impl Engine {
    pub fn new(code: &str, d: u32) -> Result<Self> {
        let (alg, tau) = build_chevalley(code, d)?;
        let fold = fold(code, d)?;
        let grading = graded_decomposition(&alg, &tau, &fold)?;
        Ok(Engine { alg, tau, fold, grading })
    }
}
