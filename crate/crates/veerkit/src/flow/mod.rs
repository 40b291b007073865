//! The flow graph of a veering triangulation.
//!
//! Vertices are edges of the triangulation. Each tetrahedron contributes
//! three arcs into its bottom edge: one from the top edge and one from each
//! equatorial edge coloured differently from the top edge.

mod digraph;

pub use digraph::{
    cycle_histogram, enumerate_cycles, is_infinitesimal_free, is_infinitesimal_free_exhaustive, reduce, scc,
    to_dot, to_json, Arc, Cycle, Digraph, EdgeLabel, Orderings, Reduced, EXHAUSTIVE_LIMIT,
};

use crate::taut::VeeringTriangulation;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Top,
    SideA,
    SideB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlowLabel {
    pub tet: usize,
    pub role: Role,
}

impl fmt::Display for FlowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::Top => "top",
            Role::SideA => "side_a",
            Role::SideB => "side_b",
        };
        write!(f, "t{}:{}", self.tet, r)
    }
}

impl EdgeLabel for FlowLabel {
    fn dot_label(&self) -> String {
        self.to_string()
    }
    fn json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

pub type FlowGraph = Digraph<FlowLabel>;

pub fn build_flow_graph(vt: &VeeringTriangulation) -> FlowGraph {
    let classes = vt.colors.colors.len();
    let mut edges = Vec::with_capacity(3 * vt.tet_count());
    for (t, r) in vt.roles().iter().enumerate() {
        let cls = &vt.edge_class[t];
        let bottom = cls[r.bottom];
        let top_color = vt.colors.colors[cls[r.top]];
        edges.push(Arc { src: cls[r.top], dst: bottom, label: FlowLabel { tet: t, role: Role::Top } });
        let sides = r.equator.iter().filter(|&&e| vt.colors.colors[cls[e]] != top_color);
        for (&e, role) in sides.zip([Role::SideA, Role::SideB]) {
            edges.push(Arc { src: cls[e], dst: bottom, label: FlowLabel { tet: t, role } });
        }
    }
    Digraph::with_vertices(classes, edges).expect("edge classes are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knot_flow_graph_shape() {
        let vt = VeeringTriangulation::from_entry("gLLMQaedfdffjxaxjkn_200211").unwrap();
        let g = build_flow_graph(&vt);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 18);
        assert!(g.out_degrees().iter().all(|&d| d >= 1));
        assert!(g.in_degrees().iter().all(|&d| d == 3));
    }
}
