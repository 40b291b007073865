use super::Triangulation;
use std::collections::BTreeSet;

/// Multigraph on tetrahedra with one edge per glued face pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn dual_graph(t: &Triangulation) -> DualGraph {
    let mut edges = Vec::with_capacity(2 * t.tet_count());
    for a in 0..t.tet_count() {
        for f in 0..4 {
            let g = t.gluing(a, f);
            let gf = g.perm.apply(f);
            if (a, f) < (g.tet, gf) {
                edges.push((a, g.tet));
            }
        }
    }
    DualGraph { vertex_count: t.tet_count(), edges }
}

/// Two distinct vertices joined by at least two edges.
pub fn has_doubled_edge(g: &DualGraph) -> bool {
    let mut seen = BTreeSet::new();
    for &(a, b) in &g.edges {
        if a == b {
            continue;
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return true;
        }
    }
    false
}

/// Three distinct vertices pairwise joined by at least one edge.
pub fn has_triangle(g: &DualGraph) -> bool {
    let n = g.vertex_count;
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in &g.edges {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    for a in 0..n {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            if adj[a].iter().any(|&c| c > b && adj[b].contains(&c)) {
                return true;
            }
        }
    }
    false
}
