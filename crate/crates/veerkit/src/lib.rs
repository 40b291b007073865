//! Combinatorics of veering triangulations and their dual branched surfaces.
//!
//! The crate decodes census signatures, checks taut and veering structures,
//! builds flow graphs and the Markov graphs of geodesic flows over filling
//! multicurves, counts tetrahedra of Montesinos link complements, and
//! matches predictions against census data.

pub mod error;
pub mod perm;
pub mod tri;

pub use error::{Error, Result};
pub use perm::Perm4;
pub use tri::{
    decode_isosig, double_cover, dual_graph, mat_mul, to_big, z2_cohomology_basis, BigMatrix, Matrix, edge_classes, encode_isosig, has_doubled_edge, has_triangle, homology_h1,
    smith_normal_form, vertex_classes, AbelianGroup, Snf, DualGraph, EdgeClass, Triangulation, VertexClass,
};
pub mod taut;

pub use taut::{Color, VeeringTriangulation};
pub mod branched;
pub mod flow;
pub mod geodesic;
pub mod surgery;
pub mod census;
