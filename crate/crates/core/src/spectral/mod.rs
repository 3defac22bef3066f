//! The Čech spectral sequence of the cover of a toric variety by its maximal affine
//! charts: the first page, its row cohomology, weights and the `c_*` action.

mod formulas;
mod frobenius;
mod nerve;
mod page;

pub use formulas::{
    betti_formula, kh_e1_symbolic, purity_check, torsion_bound, BettiNumbers, PurityReport,
    TorsionBound,
};
pub use frobenius::{
    frobenius_is_multiplicative, frobenius_on_e1, FrobeniusEndomorphism, FrobeniusReport,
};
pub use nerve::{Nerve, NerveTuple};
pub use page::{E1Page, SpectralPage};

use crate::linalg::LinalgError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("d1 squares to a nonzero map at cell ({p}, {q})")]
    NotAComplex { p: usize, q: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),
    #[error("page index must be at least 2, got {0}")]
    InvalidPage(u32),
    #[error("the multiplier c must be positive")]
    InvalidMultiplier,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
