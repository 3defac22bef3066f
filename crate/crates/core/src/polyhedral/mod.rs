//! Rational polyhedral cones, fans and lattice polytopes.

mod catalog;
mod cone;
mod dd;
mod fan;
mod polytope;
mod projective;

pub use catalog::{catalog_fan, parse_catalog_expression, CatalogEntry};
pub use cone::{Cone, FaceRays};
pub use fan::{Fan, FanProvenance};
pub use polytope::{normal_fan, LatticePolytope};
pub use projective::{is_projective, quasi_projective_certificate, ProjectivityCertificate};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyhedralError {
    #[error("expected vectors of length {expected}, found length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone {0} is not strongly convex")]
    NotStronglyConvex(usize),
    #[error("maximal cone {inner} is contained in maximal cone {outer}")]
    ContainedMaxCone { inner: usize, outer: usize },
    #[error("cones {0} and {1} do not meet in a common face")]
    NotAFan(usize, usize),
    #[error("a fan needs at least one cone")]
    EmptyFan,
    #[error("fan is not complete; projectivity is decided only for complete fans (pass a projective fan containing this one to certify quasi-projectivity)")]
    NotComplete,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope has no vertices")]
    EmptyPolytope,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidCatalogParameters { name: String, reason: String },
    #[error("fan is not a subfan of the supplied completion")]
    NotASubfan,
}
