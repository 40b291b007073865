//! Directed multigraphs with labelled edges, reduction, and cycle search.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::{Display, Write};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc<L> {
    pub src: usize,
    pub dst: usize,
    pub label: L,
}

/// Planar orderings of the edges at each vertex, as edge ids. Each list is
/// defined up to reversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orderings {
    pub outgoing: Vec<Vec<usize>>,
    pub incoming: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph<L> {
    pub names: Vec<String>,
    pub edges: Vec<Arc<L>>,
    pub orderings: Option<Orderings>,
}

impl<L: Clone> Digraph<L> {
    pub fn new(names: Vec<String>, edges: Vec<Arc<L>>) -> Result<Self> {
        let n = names.len();
        if let Some(e) = edges.iter().find(|e| e.src >= n || e.dst >= n) {
            return Err(Error::InvalidGraph(format!("edge {} -> {} out of range for {n} vertices", e.src, e.dst)));
        }
        Ok(Digraph { names, edges, orderings: None })
    }

    /// Unlabelled-style constructor with vertices named by index.
    pub fn with_vertices(n: usize, edges: Vec<Arc<L>>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.src] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.dst] += 1;
        }
        d
    }

    /// Outgoing edge ids per vertex, in edge order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        out
    }

    /// The subgraph on `keep` vertices, dropping every edge touching another
    /// vertex. Returns the graph and the new-to-old vertex map.
    pub fn induced(&self, keep: &[bool]) -> (Digraph<L>, Vec<usize>) {
        let old: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edge_id = vec![usize::MAX; self.edge_count()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep[e.src] && keep[e.dst] {
                edge_id[i] = edges.len();
                edges.push(Arc { src: new_id[e.src], dst: new_id[e.dst], label: e.label.clone() });
            }
        }
        let orderings = self.orderings.as_ref().map(|o| {
            let remap = |lists: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
                old.iter()
                    .map(|&v| lists[v].iter().filter(|&&e| edge_id[e] != usize::MAX).map(|&e| edge_id[e]).collect())
                    .collect()
            };
            Orderings { outgoing: remap(&o.outgoing), incoming: remap(&o.incoming) }
        });
        let names = old.iter().map(|&v| self.names[v].clone()).collect();
        (Digraph { names, edges, orderings }, old)
    }
}

/// Strongly connected components (Tarjan), as a component id per vertex.
pub fn scc<L: Clone>(g: &Digraph<L>) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let adj = g.out_edges();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // explicit call stack: (vertex, position in its edge list)
        let mut call = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = g.edges[adj[v][*pos]].dst;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// True when no proper nonempty vertex set is closed under outgoing edges,
/// i.e. the graph is strongly connected.
pub fn is_infinitesimal_free<L: Clone>(g: &Digraph<L>) -> bool {
    g.vertex_count() == 0 || scc(g).1 == 1
}

/// Largest graph accepted by [`is_infinitesimal_free_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Checks every proper nonempty vertex subset for closure.
pub fn is_infinitesimal_free_exhaustive<L: Clone>(g: &Digraph<L>) -> Result<bool> {
    let n = g.vertex_count();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidGraph(format!("{n} vertices exceeds the exhaustive limit of {EXHAUSTIVE_LIMIT}")));
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut succ = vec![0u32; n];
    for e in &g.edges {
        succ[e.src] |= 1 << e.dst;
    }
    for set in 1..full {
        let closed = (0..n).filter(|&v| set >> v & 1 == 1).all(|v| succ[v] & !set == 0);
        if closed {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced<L> {
    pub graph: Digraph<L>,
    /// Vertex of the input graph for each vertex of `graph`.
    pub kept: Vec<usize>,
    /// Removed cycles, as input-graph vertices in cycle order.
    pub removed_cycles: Vec<Vec<usize>>,
}

/// Cycles all of whose vertices have out-degree exactly one.
fn forced_cycles<L: Clone>(g: &Digraph<L>, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut deg = vec![0; n];
    let mut succ = vec![usize::MAX; n];
    for e in &g.edges {
        if alive[e.src] && alive[e.dst] {
            deg[e.src] += 1;
            succ[e.src] = e.dst;
        }
    }
    let mut state = vec![0u8; n]; // 0 unseen, 1 on current path, 2 done
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || state[s] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = s;
        while alive[v] && deg[v] == 1 && state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = succ[v];
        }
        if alive[v] && deg[v] == 1 && state[v] == 1 {
            let at = path.iter().position(|&x| x == v).expect("on path");
            let mut cyc = path[at..].to_vec();
            let m = cyc.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
            cyc.rotate_left(m);
            out.push(cyc);
        }
        for p in path {
            state[p] = 2;
        }
    }
    out
}

/// Deletes cycles whose vertices have out-degree one, along with the edges
/// entering them, until none remain. Deleting entering edges can create new
/// such cycles, so this repeats.
pub fn reduce<L: Clone>(g: &Digraph<L>) -> Reduced<L> {
    let mut alive = vec![true; g.vertex_count()];
    let mut removed = Vec::new();
    loop {
        let left = alive.iter().filter(|&&a| a).count();
        let cycles = forced_cycles(g, &alive);
        // a cycle spanning everything left is not a proper subgraph
        let cycles: Vec<_> = if cycles.len() == 1 && cycles[0].len() == left { Vec::new() } else { cycles };
        if cycles.is_empty() {
            break;
        }
        for c in &cycles {
            for &v in c {
                alive[v] = false;
            }
        }
        removed.extend(cycles);
    }
    removed.sort();
    let (graph, kept) = g.induced(&alive);
    Reduced { graph, kept, removed_cycles: removed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Vertices in order, starting at the smallest.
    pub vertices: Vec<usize>,
    /// Edge ids, `edges[i]` leaving `vertices[i]`.
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// All elementary cycles of length at most `max_len`. Parallel edges give
/// distinct cycles. Sorted by vertex sequence, then edge sequence.
pub fn enumerate_cycles<L: Clone>(g: &Digraph<L>, max_len: usize) -> Vec<Cycle> {
    let adj = g.out_edges();
    let mut out = Vec::new();
    let n = g.vertex_count();
    for s in 0..n {
        let mut on_path = vec![false; n];
        let mut verts = vec![s];
        let mut edges: Vec<usize> = Vec::new();
        on_path[s] = true;
        search(g, &adj, s, max_len, &mut on_path, &mut verts, &mut edges, &mut out);
    }
    out.sort_by(|a, b| (&a.vertices, &a.edges).cmp(&(&b.vertices, &b.edges)));
    out
}

#[allow(clippy::too_many_arguments)]
fn search<L: Clone>(
    g: &Digraph<L>,
    adj: &[Vec<usize>],
    s: usize,
    max_len: usize,
    on_path: &mut [bool],
    verts: &mut Vec<usize>,
    edges: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    let v = *verts.last().expect("nonempty path");
    for &e in &adj[v] {
        let w = g.edges[e].dst;
        if w == s {
            let mut es = edges.clone();
            es.push(e);
            out.push(Cycle { vertices: verts.clone(), edges: es });
        } else if w > s && !on_path[w] && edges.len() + 1 < max_len {
            on_path[w] = true;
            verts.push(w);
            edges.push(e);
            search(g, adj, s, max_len, on_path, verts, edges, out);
            edges.pop();
            verts.pop();
            on_path[w] = false;
        }
    }
}

pub trait EdgeLabel {
    fn dot_label(&self) -> String;
    fn json(&self) -> serde_json::Value;
}

impl EdgeLabel for () {
    fn dot_label(&self) -> String {
        String::new()
    }
    fn json(&self) -> serde_json::Value {
        serde_json::Value::Null
    }
}

pub fn to_dot<L: EdgeLabel>(g: &Digraph<L>, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    for (i, v) in g.names.iter().enumerate() {
        let _ = writeln!(s, "  {i} [label=\"{v}\"];");
    }
    for e in &g.edges {
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", e.src, e.dst, e.label.dot_label());
    }
    s.push_str("}\n");
    s
}

pub fn to_json<L: EdgeLabel>(g: &Digraph<L>) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = g
        .edges
        .iter()
        .map(|e| serde_json::json!({"src": e.src, "dst": e.dst, "label": e.label.json()}))
        .collect();
    let orderings = match &g.orderings {
        Some(o) => serde_json::to_value(o).expect("serialisable"),
        None => serde_json::Value::String("absent".into()),
    };
    serde_json::json!({
        "vertices": g.names,
        "edges": edges,
        "orderings": orderings,
    })
}

/// Counts of cycles by length.
pub fn cycle_histogram(cycles: &[Cycle]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for c in cycles {
        *h.entry(c.len()).or_insert(0) += 1;
    }
    h
}

impl<L: Display> Display for Arc<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {} [{}]", self.src, self.dst, self.label)
    }
}
