//! Constructible sheaves on finite simplicial complexes as coefficient
//! systems on the face poset: hypercohomology through the Čech-type total
//! complex, compactly supported cohomology of open stars, the Verdier dual
//! system, and a seeded self-test of the duality identities.

mod cech;
mod selftest;
mod simplicial;
mod system;

use thiserror::Error;

use crate::linalg::ComplexError;

pub use cech::{hypercohomology, star_compact_cohomology, star_complex, total_complex, verdier_dual, DualSystem};
pub use selftest::{selftest, SelftestCase, SelftestReport};
pub use simplicial::{cochain_complex, face_key, parse_face_key, random_complex, simplicial_betti, Face, SimplicialComplex};
pub use system::{random_system, to_cochain, ChainMap, CoefficientSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error("face [{0}] is not in the complex")]
    FaceNotFound(String),
    #[error("not a functorial system: {0}")]
    NonFunctorialSystem(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("malformed sheaf json: {0}")]
    Json(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
