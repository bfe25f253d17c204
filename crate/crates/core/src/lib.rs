//! Exact graph homology of cyclic operads and Verdier duality for
//! coefficient systems on finite simplicial complexes.

pub mod linalg;
pub mod graph;
pub mod operad;
pub mod complexes;
pub mod sheaves;
