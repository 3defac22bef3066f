//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices act on column
//! vectors; lattices are stored by canonical Hermite bases; exterior powers index
//! their bases by lexicographically ordered subsets.

mod exterior;
mod lattice;
pub mod lp;
mod matrix;
mod normal_form;
pub mod rational;

pub use exterior::{binomial, exterior_power_map, lex_subsets};
pub use lattice::{
    cokernel_structure, complex_cohomology, kernel_lattice, AbelianGroupStructure, Lattice,
};
pub use matrix::{dot, is_zero_vector, primitive, vector, IntegerMatrix, Vector};
pub use normal_form::{extended_gcd, hermite_normal_form, smith_normal_form, SmithDecomposition};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {rows}x{cols} = {} entries, found {found}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("not a complex: the composite of consecutive differentials is nonzero")]
    NotAComplex,
}
