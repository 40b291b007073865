//! Markov partitions for geodesic flows from filling curve systems.

mod fatgraph;
mod markov;
mod surfaces;

pub use fatgraph::{Fatgraph, FatgraphJson, VertexJson};
pub use markov::{
    build_markov_graph, flow_box_count, reduce_markov, restrict_to_half, separate_regions, ArrowKey, Exit, Half,
    Letter, MarkovGraph, MarkovLabel, MarkovReduction, PARALLEL_WARNING,
};
pub use surfaces::{doubled_punctured_grid, hexagon_decomposition, separated_hexagon_decomposition};
