//! Half-edge multigraphs: canonical forms, automorphisms, enumeration,
//! contraction, cycle bases and ribbon structures.

mod canon;
mod cycles;
mod enumerate;
mod halfedge;
mod ribbon;

pub use canon::{automorphisms, canonicalize, is_isomorphic};
pub use cycles::{
    contraction_edge_map, h1_det, is_cycle, iso_h1_det, push_cycle, CycleBasis, TreePolicy,
};
pub use enumerate::{
    contract_forest, enumerate_graphs, rose, split_vertex, vertex_expansions, vertex_splits, Caps,
    VertexExpansion,
};
pub use halfedge::{GraphError, GraphIso, HalfEdgeGraph};
pub use ribbon::{
    boundary_cycles, enumerate_ribbon_graphs, BoundaryCycles, RibbonGraph, RibbonStructure,
};
