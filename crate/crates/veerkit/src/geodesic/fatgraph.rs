//! 4-valent ribbon graphs: a filling curve system on a closed surface.
//!
//! JSON form: `{"vertices": [{"slots": [h0, h1, h2, h3]}, ...],
//! "pairing": [[h, h'], ...]}` with slots listed anticlockwise. Slots `k`
//! and `k + 2` are opposite, so a curve passes straight through them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FatgraphJson {
    pub vertices: Vec<VertexJson>,
    pub pairing: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub slots: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fatgraph {
    slots: Vec<[usize; 4]>,
    vertex_of: Vec<usize>,
    slot_of: Vec<usize>,
    twin: Vec<usize>,
    edge_of: Vec<usize>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
}

impl Fatgraph {
    /// Builds from rotation data on half-edges `0..4V`: `slots[v]` lists
    /// the half-edges at `v` anticlockwise, `pairs` the edges.
    pub fn new(slots: Vec<[usize; 4]>, pairs: Vec<[usize; 2]>) -> Result<Self> {
        let h = 4 * slots.len();
        let mut vertex_of = vec![usize::MAX; h];
        let mut slot_of = vec![0; h];
        for (v, s) in slots.iter().enumerate() {
            for (k, &x) in s.iter().enumerate() {
                if x >= h {
                    return Err(Error::InvalidFatgraph(format!("half-edge {x} out of range")));
                }
                if vertex_of[x] != usize::MAX {
                    return Err(Error::InvalidFatgraph(format!("half-edge {x} appears in two slots")));
                }
                vertex_of[x] = v;
                slot_of[x] = k;
            }
        }
        let mut twin = vec![usize::MAX; h];
        let mut edge_of = vec![usize::MAX; h];
        for (e, &[a, b]) in pairs.iter().enumerate() {
            if a >= h || b >= h || a == b {
                return Err(Error::InvalidFatgraph(format!("bad pair [{a}, {b}]")));
            }
            if twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::InvalidFatgraph(format!("half-edge paired twice in [{a}, {b}]")));
            }
            twin[a] = b;
            twin[b] = a;
            edge_of[a] = e;
            edge_of[b] = e;
        }
        if let Some(x) = (0..h).find(|&x| twin[x] == usize::MAX) {
            return Err(Error::InvalidFatgraph(format!("half-edge {x} is unpaired")));
        }
        let mut g = Fatgraph {
            slots,
            vertex_of,
            slot_of,
            twin,
            edge_of,
            edges: pairs,
            faces: Vec::new(),
            face_of: vec![usize::MAX; h],
        };
        g.trace_faces();
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(j: &FatgraphJson) -> Result<Self> {
        let mut ids = BTreeMap::new();
        let mut slots = Vec::with_capacity(j.vertices.len());
        for (v, vert) in j.vertices.iter().enumerate() {
            if vert.slots.len() != 4 {
                return Err(Error::InvalidFatgraph(format!(
                    "vertex {v} has {} slots, expected 4",
                    vert.slots.len()
                )));
            }
            let mut s = [0; 4];
            for (k, &x) in vert.slots.iter().enumerate() {
                let next = ids.len();
                if ids.insert(x, next).is_some() {
                    return Err(Error::InvalidFatgraph(format!("half-edge {x} appears in two slots")));
                }
                s[k] = next;
            }
            slots.push(s);
        }
        let mut pairs = Vec::with_capacity(j.pairing.len());
        for &[a, b] in &j.pairing {
            let lookup = |x: u64| {
                ids.get(&x).copied().ok_or_else(|| Error::InvalidFatgraph(format!("paired half-edge {x} has no slot")))
            };
            pairs.push([lookup(a)?, lookup(b)?]);
        }
        Self::new(slots, pairs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: FatgraphJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidFatgraph(format!("bad fatgraph JSON: {e}")))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> FatgraphJson {
        FatgraphJson {
            vertices: self.slots.iter().map(|s| VertexJson { slots: s.iter().map(|&x| x as u64).collect() }).collect(),
            pairing: self.edges.iter().map(|&[a, b]| [a as u64, b as u64]).collect(),
        }
    }

    /// Builds a fatgraph from oriented polygons. Half-edge `2e` runs along
    /// edge `e` forwards and `2e + 1` backwards; each face lists its
    /// half-edges in boundary order. Vertices are recovered from the gluing.
    pub fn from_polygons(edge_count: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let h = 2 * edge_count;
        let mut next = vec![usize::MAX; h];
        for f in faces {
            for (i, &x) in f.iter().enumerate() {
                if x >= h || next[x] != usize::MAX {
                    return Err(Error::InvalidFatgraph(format!("half-edge {x} used twice or out of range")));
                }
                next[x] = f[(i + 1) % f.len()];
            }
        }
        if let Some(x) = (0..h).find(|&x| next[x] == usize::MAX) {
            return Err(Error::InvalidFatgraph(format!("half-edge {x} lies on no face")));
        }
        let mut prev = vec![0; h];
        for x in 0..h {
            prev[next[x]] = x;
        }
        // anticlockwise successor at a vertex: rot(y) = twin(prev(y))
        let rot = |y: usize| prev[y] ^ 1;
        let mut seen = vec![false; h];
        let mut slots = Vec::new();
        let mut label = vec![0; h];
        for start in 0..h {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut y = rot(start);
            while y != start {
                if seen[y] || cyc.len() > 4 {
                    return Err(Error::InvalidFatgraph("polygon gluing has a vertex of degree other than 4".into()));
                }
                seen[y] = true;
                cyc.push(y);
                y = rot(y);
            }
            if cyc.len() != 4 {
                return Err(Error::InvalidFatgraph(format!("polygon gluing has a vertex of degree {}", cyc.len())));
            }
            let v = slots.len();
            let mut s = [0; 4];
            for (k, &x) in cyc.iter().enumerate() {
                s[k] = 4 * v + k;
                label[x] = 4 * v + k;
            }
            slots.push(s);
        }
        let pairs = (0..edge_count).map(|e| [label[2 * e], label[2 * e + 1]]).collect();
        Self::new(slots, pairs)
    }

    fn trace_faces(&mut self) {
        let h = self.twin.len();
        for start in 0..h {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut face = Vec::new();
            let mut x = start;
            loop {
                self.face_of[x] = id;
                face.push(x);
                x = self.face_next(x);
                if x == start {
                    break;
                }
            }
            self.faces.push(face);
        }
    }

    fn validate(&self) -> Result<()> {
        if self.slots.is_empty() {
            return Err(Error::InvalidFatgraph("no vertices".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidFatgraph("graph is disconnected".into()));
        }
        for (i, f) in self.faces.iter().enumerate() {
            if f.len() < 4 {
                return Err(Error::InvalidFatgraph(format!("region {i} has {} sides, need at least 4", f.len())));
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.slots.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &x in &self.slots[v] {
                let w = self.vertex_of[self.twin[x]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn slot_of(&self, h: usize) -> usize {
        self.slot_of[h]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// The half-edge in slot `k` (mod 4) of `v`.
    pub fn at(&self, v: usize, k: usize) -> usize {
        self.slots[v][k % 4]
    }

    /// Next half-edge along the boundary of the region on the left of `h`.
    pub fn face_next(&self, h: usize) -> usize {
        let t = self.twin[h];
        self.at(self.vertex_of[t], self.slot_of[t] + 3)
    }

    /// Regions as half-edge cycles, each traversed with the region on the left.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    /// Region containing the quadrant from slot `k` anticlockwise to `k + 1`.
    pub fn quadrant_face(&self, v: usize, k: usize) -> usize {
        self.face_of[self.at(v, k)]
    }

    /// Side counts of the regions.
    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    /// Closed curves obtained by going straight through every vertex. Each
    /// component is a cycle of half-edges; together they use each edge once.
    pub fn curve_components(&self) -> Vec<Vec<usize>> {
        let mut used = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if used[e] {
                continue;
            }
            let start = self.edges[e][0];
            let mut comp = Vec::new();
            let mut x = start;
            loop {
                used[self.edge_of[x]] = true;
                comp.push(x);
                let t = self.twin[x];
                x = self.at(self.vertex_of[t], self.slot_of[t] + 2);
                if x == start {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    /// Fatgraph edges of each curve component.
    pub fn curve_edge_sets(&self) -> Vec<BTreeSet<usize>> {
        self.curve_components().iter().map(|c| c.iter().map(|&x| self.edge_of[x]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A square torus grid has only square regions.
    fn torus(p: usize, q: usize) -> Fatgraph {
        let h = |x: usize, y: usize| (y % q) * p + (x % p);
        let v = |x: usize, y: usize| p * q + (y % q) * p + (x % p);
        let mut faces = Vec::new();
        for y in 0..q {
            for x in 0..p {
                faces.push(vec![2 * h(x, y), 2 * v(x + 1, y), 2 * h(x, y + 1) + 1, 2 * v(x, y) + 1]);
            }
        }
        Fatgraph::from_polygons(2 * p * q, &faces).unwrap()
    }

    #[test]
    fn torus_grid_counts() {
        let g = torus(3, 4);
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (12, 24, 12));
        assert_eq!(g.euler_characteristic(), 0);
        assert!(g.face_sizes().iter().all(|&n| n == 4));
        // horizontal and vertical lines
        assert_eq!(g.curve_components().len(), 7);
    }

    #[test]
    fn json_roundtrip() {
        let g = torus(3, 3);
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back = Fatgraph::from_json_str(&j).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn one_vertex_with_small_regions_is_rejected() {
        // the single-vertex torus has one region with 4 sides, so twist it to get 2-gons
        let j = r#"{"vertices":[{"slots":[0,1,2,3]}],"pairing":[[0,1],[2,3]]}"#;
        let e = Fatgraph::from_json_str(j).unwrap_err();
        assert!(e.to_string().contains("sides"), "{e}");
    }

    #[test]
    fn wrong_valence_is_rejected() {
        let j = r#"{"vertices":[{"slots":[0,1,2]}],"pairing":[[0,1]]}"#;
        assert!(Fatgraph::from_json_str(j).unwrap_err().to_string().contains("slots"));
    }

    #[test]
    fn unpaired_half_edge_is_rejected() {
        let j = r#"{"vertices":[{"slots":[0,1,2,3]}],"pairing":[[0,2]]}"#;
        assert!(Fatgraph::from_json_str(j).unwrap_err().to_string().contains("unpaired"));
    }
}
