//! Markov partition graph for the geodesic flow on the unit tangent bundle,
//! assembled region by region from a filling curve system.
//!
//! Arrow vertices along the curves are global: a side arrow for each
//! half-edge (pointing into the region on its left) and a quadrant arrow
//! for each vertex slot (pointing into the quadrant from that slot to the
//! next). Inside a region with corners d_1..d_n anticlockwise and sides c_i
//! from d_i to d_{i+1}, the compass names are
//!
//! * c_{i,S} = side arrow of c_i into the region, c_{i,N} = the other one;
//! * d_{i,S} = quadrant of the region at d_i, d_{i,N} = opposite quadrant;
//! * d_{i,W} = quadrant across c_i, d_{i,E} = quadrant across c_{i-1}.
//!
//! Each region then runs n - 3 stages of n splitting moves, three edges per
//! move, and the last arrows created are identified with the inward arrows.

use super::fatgraph::Fatgraph;
use crate::error::{Error, Result};
use crate::flow::{reduce, Arc, Digraph, EdgeLabel, Orderings};
use crate::tri::UnionFind;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identity of an arrow before identifications.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrowKey {
    /// Points from half-edge `half_edge`'s edge into the region on its left.
    Side { half_edge: usize },
    /// Points into the quadrant of `vertex` from slot `quadrant` to the next.
    Quadrant { vertex: usize, quadrant: usize },
    /// Arrow created inside a region at a stage (`s >= 1`).
    Internal { region: usize, letter: Letter, stage: usize, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Letter {
    C,
    D,
}

/// (exit rank, stage order, region, index, edge id), for sorting outgoing edges.
type OutKey = (Exit, isize, usize, usize, usize);

impl fmt::Display for ArrowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ArrowKey::Side { half_edge } => write!(f, "side{half_edge}"),
            ArrowKey::Quadrant { vertex, quadrant } => write!(f, "v{vertex}q{quadrant}"),
            ArrowKey::Internal { region, letter, stage, index } => {
                let l = if letter == Letter::C { 'c' } else { 'd' };
                write!(f, "R{region}:{l}{stage}_{index}")
            }
        }
    }
}

/// Which side of its source an edge leaves from, looking along the flow
/// with the fibre direction up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Left,
    Main,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovLabel {
    pub region: usize,
    /// Stage number, 0..n-3; the last one is the closing stage.
    pub stage: usize,
    /// Splitting move within the stage.
    pub index: usize,
    pub exit: Exit,
}

impl EdgeLabel for MarkovLabel {
    fn dot_label(&self) -> String {
        let e = match self.exit {
            Exit::Left => "L",
            Exit::Main => "M",
            Exit::Right => "R",
        };
        format!("R{}s{}i{}{}", self.region, self.stage, self.index, e)
    }
    fn json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serialisable");
        v["framing"] = "fiber".into();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovGraph {
    pub graph: Digraph<MarkovLabel>,
    /// Every arrow name merged into each vertex, sorted.
    pub aliases: Vec<Vec<ArrowKey>>,
}

/// Number of edges the construction produces.
pub fn flow_box_count(f: &Fatgraph) -> usize {
    f.face_sizes().iter().map(|&n| 3 * n * (n - 3)).sum()
}

/// Hyperbolicity of the complement needs the curves to have no parallel
/// components; this is not checked.
pub const PARALLEL_WARNING: &str = "parallel curve components are not detected; the flow graph is built regardless";

struct Move {
    region: usize,
    stage: usize,
    index: usize,
    target: ArrowKey,
    /// Sources in top-to-bottom order at the target.
    sources: [(ArrowKey, Exit); 3],
}

struct Region<'a> {
    f: &'a Fatgraph,
    id: usize,
    sides: &'a [usize],
}

impl Region<'_> {
    fn n(&self) -> usize {
        self.sides.len()
    }
    fn h(&self, i: isize) -> usize {
        self.sides[i.rem_euclid(self.n() as isize) as usize]
    }
    fn corner(&self, i: isize) -> (usize, usize) {
        let h = self.h(i);
        (self.f.vertex_of(h), self.f.slot_of(h))
    }
    fn quad(&self, i: isize, turn: usize) -> ArrowKey {
        let (v, k) = self.corner(i);
        ArrowKey::Quadrant { vertex: v, quadrant: (k + turn) % 4 }
    }
    fn internal(&self, letter: Letter, stage: usize, i: isize) -> ArrowKey {
        let index = i.rem_euclid(self.n() as isize) as usize;
        ArrowKey::Internal { region: self.id, letter, stage, index }
    }
    fn c_n(&self, i: isize, s: usize) -> ArrowKey {
        if s == 0 {
            ArrowKey::Side { half_edge: self.f.twin(self.h(i)) }
        } else {
            self.internal(Letter::C, s, i)
        }
    }
    fn d_n(&self, i: isize, s: usize) -> ArrowKey {
        if s == 0 {
            self.quad(i, 2)
        } else {
            self.internal(Letter::D, s, i)
        }
    }
    fn c_s(&self, i: isize) -> ArrowKey {
        ArrowKey::Side { half_edge: self.h(i) }
    }
    fn d_s(&self, i: isize) -> ArrowKey {
        self.quad(i, 0)
    }
    fn d_w(&self, i: isize) -> ArrowKey {
        self.quad(i, 3)
    }
    fn d_e(&self, i: isize) -> ArrowKey {
        self.quad(i, 1)
    }

    fn moves(&self, out: &mut Vec<Move>, merges: &mut Vec<(ArrowKey, ArrowKey)>) {
        let n = self.n() as isize;
        let nu = self.n();
        for k in 0..nu - 4 {
            let s = k / 2;
            for j in 0..n {
                let si = s as isize;
                let (target, sources) = if k % 2 == 0 {
                    (
                        self.d_n(j, s),
                        [
                            (self.d_w(j - si - 1), Exit::Left),
                            (self.d_n(j, s + 1), Exit::Main),
                            (self.d_e(j + si + 1), Exit::Right),
                        ],
                    )
                } else {
                    (
                        self.c_n(j, s),
                        [
                            (self.d_w(j - si - 1), Exit::Left),
                            (self.c_n(j, s + 1), Exit::Main),
                            (self.d_e(j + si + 2), Exit::Right),
                        ],
                    )
                };
                out.push(Move { region: self.id, stage: k, index: j as usize, target, sources });
            }
        }
        let last = nu - 4;
        for j in 0..n {
            let (target, sources) = if nu.is_multiple_of(2) {
                let s = (nu - 4) / 2;
                (
                    self.d_n(j, s),
                    [
                        (self.c_n(j, s), Exit::Right),
                        (self.d_n(j, s + 1), Exit::Main),
                        (self.c_n(j - 1, s), Exit::Left),
                    ],
                )
            } else {
                let s = (nu - 3) / 2;
                (
                    self.c_n(j, s - 1),
                    [
                        (self.d_n(j + 1, s), Exit::Right),
                        (self.c_n(j, s), Exit::Main),
                        (self.d_n(j, s), Exit::Left),
                    ],
                )
            };
            out.push(Move { region: self.id, stage: last, index: j as usize, target, sources });
        }
        for i in 0..n {
            if nu.is_multiple_of(2) {
                let half = n / 2;
                merges.push((self.c_n(i - half, (nu - 4) / 2), self.c_s(i)));
                merges.push((self.d_n(i - half, (nu - 2) / 2), self.d_s(i)));
            } else {
                merges.push((self.d_n(i - (n - 1) / 2, (nu - 3) / 2), self.c_s(i)));
                merges.push((self.c_n(i - (n + 1) / 2, (nu - 3) / 2), self.d_s(i)));
            }
        }
    }
}

pub fn build_markov_graph(f: &Fatgraph) -> MarkovGraph {
    let mut moves = Vec::new();
    let mut merges = Vec::new();
    for (id, sides) in f.faces().iter().enumerate() {
        Region { f, id, sides }.moves(&mut moves, &mut merges);
    }
    let mut keys: BTreeSet<ArrowKey> = BTreeSet::new();
    for h in 0..f.half_edge_count() {
        keys.insert(ArrowKey::Side { half_edge: h });
    }
    for v in 0..f.vertex_count() {
        for q in 0..4 {
            keys.insert(ArrowKey::Quadrant { vertex: v, quadrant: q });
        }
    }
    for m in &moves {
        keys.insert(m.target);
        keys.extend(m.sources.iter().map(|s| s.0));
    }
    let keys: Vec<ArrowKey> = keys.into_iter().collect();
    let index: BTreeMap<ArrowKey, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut uf = UnionFind::new(keys.len());
    for (a, b) in &merges {
        uf.union(index[a], index[b]);
    }
    let (labels, count) = uf.labels();
    let mut aliases = vec![Vec::new(); count];
    for (i, &k) in keys.iter().enumerate() {
        aliases[labels[i]].push(k);
    }
    let vertex = |k: &ArrowKey| labels[index[k]];

    let mut edges = Vec::with_capacity(3 * moves.len());
    let mut incoming = vec![Vec::new(); count];
    let mut outgoing: Vec<Vec<OutKey>> = vec![Vec::new(); count];
    for m in &moves {
        let t = vertex(&m.target);
        for &(src, exit) in &m.sources {
            let id = edges.len();
            let s = vertex(&src);
            edges.push(Arc { src: s, dst: t, label: MarkovLabel { region: m.region, stage: m.stage, index: m.index, exit } });
            incoming[t].push(id);
            // left exits from early stages outermost, right exits mirrored
            let stage_key = if exit == Exit::Right { -(m.stage as isize) } else { m.stage as isize };
            outgoing[s].push((exit, stage_key, m.region, m.index, id));
        }
    }
    let outgoing = outgoing
        .into_iter()
        .map(|mut v| {
            v.sort();
            v.into_iter().map(|x| x.4).collect()
        })
        .collect();
    let names = aliases.iter().map(|a| a.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("=")).collect();
    let mut graph = Digraph::new(names, edges).expect("vertices are in range");
    graph.orderings = Some(Orderings { outgoing, incoming });
    MarkovGraph { graph, aliases }
}

impl MarkovGraph {
    /// The subgraph on `keep` vertices, aliases carried along.
    pub fn induced(&self, keep: &[bool]) -> MarkovGraph {
        let (graph, old) = self.graph.induced(keep);
        let aliases = old.iter().map(|&v| self.aliases[v].clone()).collect();
        MarkovGraph { graph, aliases }
    }

    /// Vertex carrying the given arrow name.
    pub fn vertex_of(&self, key: &ArrowKey) -> Option<usize> {
        self.aliases.iter().position(|a| a.contains(key))
    }
}

#[derive(Clone, Debug)]
pub struct MarkovReduction {
    pub graph: MarkovGraph,
    /// Removed cycles, as vertices of the input graph.
    pub removed_cycles: Vec<Vec<usize>>,
}

pub fn reduce_markov(mg: &MarkovGraph) -> MarkovReduction {
    let r = reduce(&mg.graph);
    let aliases = r.kept.iter().map(|&v| mg.aliases[v].clone()).collect();
    MarkovReduction { graph: MarkovGraph { graph: r.graph, aliases }, removed_cycles: r.removed_cycles }
}

/// Which side of a separating curve system to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    /// The side containing region 0.
    First,
    Second,
}

/// Splits the regions by a union of curve components. Returns the side
/// (0 or 1) of each region, side 0 holding region 0.
pub fn separate_regions(f: &Fatgraph, curve_edges: &BTreeSet<usize>) -> Result<Vec<u8>> {
    if let Some(&e) = curve_edges.iter().find(|&&e| e >= f.edge_count()) {
        return Err(Error::NotSeparating(format!("edge {e} does not exist")));
    }
    for comp in f.curve_edge_sets() {
        let inside = comp.intersection(curve_edges).count();
        if inside != 0 && inside != comp.len() {
            return Err(Error::NotSeparating("edge set is not a union of curve components".into()));
        }
    }
    let faces = f.face_count();
    let mut uf = UnionFind::new(faces);
    for h in 0..f.half_edge_count() {
        if !curve_edges.contains(&f.edge_of(h)) {
            uf.union(f.face_of(h), f.face_of(f.twin(h)));
        }
    }
    let (labels, count) = uf.labels();
    if count != 2 {
        return Err(Error::NotSeparating(format!("curves cut the surface into {count} pieces, expected 2")));
    }
    Ok(labels.iter().map(|&l| u8::from(l != labels[0])).collect())
}

/// Keeps the arrows lying strictly on one side of a separating union of
/// curve components, discarding everything on the curves themselves.
pub fn restrict_to_half(mg: &MarkovGraph, f: &Fatgraph, curve_edges: &BTreeSet<usize>, half: Half) -> Result<MarkovGraph> {
    let side = separate_regions(f, curve_edges)?;
    let want = u8::from(half == Half::Second);
    let on_curve: BTreeSet<usize> =
        curve_edges.iter().flat_map(|&e| (0..f.half_edge_count()).filter(move |&h| f.edge_of(h) == e)).map(|h| f.vertex_of(h)).collect();
    let inside = |k: &ArrowKey| match *k {
        ArrowKey::Internal { region, .. } => side[region] == want,
        ArrowKey::Side { half_edge } => !curve_edges.contains(&f.edge_of(half_edge)) && side[f.face_of(half_edge)] == want,
        ArrowKey::Quadrant { vertex, quadrant } => {
            !on_curve.contains(&vertex) && side[f.quadrant_face(vertex, quadrant)] == want
        }
    };
    let keep: Vec<bool> = mg.aliases.iter().map(|a| a.iter().all(&inside)).collect();
    Ok(mg.induced(&keep))
}
