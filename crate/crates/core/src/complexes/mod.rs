//! Operad-decorated graph complexes with automorphism coinvariants, the
//! forest-chain complexes computing sheaf cohomology on the moduli of
//! graphs, and the duality report comparing the two.

mod build;
mod coinv;
mod decor;
mod duality;
mod forest;
mod spec;

use thiserror::Error;

use crate::graph::GraphError;
use crate::linalg::ComplexError;
use crate::operad::OperadError;

pub use build::{build_complex, build_complex_on, generator_space, graph_betti, BettiTable, GraphComplex, Generator};
pub use decor::Key;
pub use duality::{duality_report, expected_shift, DualityReport, Pairing};
pub use forest::{forest_complex, sheaf_betti, CellChain};
pub use spec::{ComplexSpec, Mode, Orientation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphComplexError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("no uniform degree shift: {0}")]
    ShiftMismatch(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl GraphComplexError {
    pub fn is_out_of_scope(&self) -> bool {
        matches!(
            self,
            GraphComplexError::Graph(GraphError::OutOfScope(_))
                | GraphComplexError::Operad(OperadError::OutOfScope(_))
        )
    }
}
