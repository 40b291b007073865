//! Ideal triangulations: gluing data, cell classes and the dual graph.

mod cover;
mod dual;
mod homology;
mod isosig;
mod snf;

pub use cover::{double_cover, z2_cohomology_basis};
pub use dual::{dual_graph, has_doubled_edge, has_triangle, DualGraph};
pub use homology::{homology_h1, AbelianGroup};
pub use isosig::{decode_isosig, encode_isosig, encode_isosig_from};
pub use snf::{invariant_factors, mat_mul, smith_normal_form, to_big, BigMatrix, Matrix, Snf};

use crate::error::{Error, Result};
use crate::perm::Perm4;

/// Vertex pairs of the six edges of a tetrahedron, in the standard numbering.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the edge joining two distinct vertices of a tetrahedron.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {a} and {b}"),
    }
}

/// The edge opposite `e`.
pub fn opposite_edge(e: usize) -> usize {
    5 - e
}

/// Face `f` glued to face `perm[f]` of `tet`, with vertex `v` going to `perm[v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeIncidence {
    pub tet: usize,
    pub edge: usize,
    /// True when the tetrahedron's edge (lower vertex to higher vertex) runs
    /// the same way as the class representative.
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub id: usize,
    /// Fan around the edge, in walking order.
    pub incidences: Vec<EdgeIncidence>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub id: usize,
    pub members: Vec<(usize, usize)>,
}

/// Small union-find with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so labels are stable
            if ra < rb {
                self.parent[rb] = ra;
            } else {
                self.parent[ra] = rb;
            }
        }
    }

    /// Dense labels 0.. in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut root_label = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            label[x] = root_label[r];
        }
        (label, next)
    }
}

impl Triangulation {
    /// Builds a triangulation from per-tetrahedron gluings and checks it.
    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<Self> {
        let t = Triangulation { gluings };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let n = self.gluings.len();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.tet >= n {
                    return Err(Error::InvalidTriangulation(format!(
                        "tetrahedron {t} face {f} glued to missing tetrahedron {}",
                        g.tet
                    )));
                }
                let g2 = g.perm.apply(f);
                if g.tet == t && g2 == f {
                    return Err(Error::InvalidTriangulation(format!(
                        "tetrahedron {t} face {f} glued to itself"
                    )));
                }
                let back = self.gluings[g.tet][g2];
                if back.tet != t || back.perm != g.perm.inverse() {
                    return Err(Error::InvalidTriangulation(format!(
                        "gluing of tetrahedron {t} face {f} is not involutive"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    /// Relabels tetrahedra and their vertices: tetrahedron `t` becomes
    /// `tet_map[t]` with vertex `v` becoming `vertex_maps[t][v]`.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Result<Triangulation> {
        let n = self.tet_count();
        let mut out = vec![[Gluing { tet: 0, perm: Perm4::IDENTITY }; 4]; n];
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluings[t][f];
                let nt = tet_map[t];
                let nf = vertex_maps[t].apply(f);
                let perm = vertex_maps[g.tet].compose(g.perm).compose(vertex_maps[t].inverse());
                out[nt][nf] = Gluing { tet: tet_map[g.tet], perm };
            }
        }
        Triangulation::new(out)
    }

    /// Per-tetrahedron orientation signs with tetrahedron 0 positive, or an
    /// error when no consistent choice exists.
    pub fn orientation(&self) -> Result<Vec<i32>> {
        let n = self.tet_count();
        let mut sign = vec![0i32; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for f in 0..4 {
                    let g = self.gluings[t][f];
                    let want = -sign[t] * g.perm.sign();
                    if sign[g.tet] == 0 {
                        sign[g.tet] = want;
                        stack.push(g.tet);
                    } else if sign[g.tet] != want {
                        return Err(Error::NonOrientable);
                    }
                }
            }
        }
        Ok(sign)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.tet_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(t) = stack.pop() {
            for g in &self.gluings[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Class id of every (tetrahedron, edge) pair, plus the class count.
    pub fn edge_class_map(&self) -> (Vec<[usize; 6]>, usize) {
        let n = self.tet_count();
        let mut uf = UnionFind::new(6 * n);
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluings[t][f];
                for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                    if a == f || b == f {
                        continue;
                    }
                    let e2 = edge_index(g.perm.apply(a), g.perm.apply(b));
                    uf.union(6 * t + e, 6 * g.tet + e2);
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut out = vec![[0usize; 6]; n];
        for t in 0..n {
            for e in 0..6 {
                out[t][e] = labels[6 * t + e];
            }
        }
        (out, count)
    }

    /// Edge classes with their incidence fans, ordered by walking around
    /// each edge through the face gluings.
    pub fn edge_classes(&self) -> Vec<EdgeClass> {
        let (map, count) = self.edge_class_map();
        let mut classes: Vec<Option<EdgeClass>> = vec![None; count];
        for t in 0..self.tet_count() {
            for e in 0..6 {
                let id = map[t][e];
                if classes[id].is_some() {
                    continue;
                }
                let (a, b) = EDGE_VERTICES[e];
                let incidences = self
                    .edge_walk(t, a, b)
                    .into_iter()
                    .map(|(tet, p)| {
                        let (x, y) = (p[0], p[1]);
                        EdgeIncidence { tet, edge: edge_index(x, y), forward: x < y }
                    })
                    .collect();
                classes[id] = Some(EdgeClass { id, incidences });
            }
        }
        classes.into_iter().map(|c| c.expect("every class visited")).collect()
    }

    /// Walks around the edge `a`-`b` of `tet`. Each step is
    /// (tetrahedron, [a, b, c, d]) where the walk leaves through face `c`.
    pub fn edge_walk(&self, tet: usize, a: usize, b: usize) -> Vec<(usize, [usize; 4])> {
        let mut rest = (0..4).filter(|&v| v != a && v != b);
        let c = rest.next().expect("two other vertices");
        let d = rest.next().expect("two other vertices");
        let start = (tet, [a, b, c, d]);
        let mut out = vec![start];
        let mut cur = start;
        loop {
            let (t, [a, b, c, d]) = cur;
            let g = self.gluings[t][c];
            let p = g.perm;
            let next = (g.tet, [p.apply(a), p.apply(b), p.apply(d), p.apply(c)]);
            if next == start {
                break;
            }
            // a non-orientable edge link closes up reversed; stop there as well
            if next.0 == start.0
                && next.1[0] == start.1[1]
                && next.1[1] == start.1[0]
                && next.1[2] == start.1[2]
            {
                break;
            }
            out.push(next);
            cur = next;
            if out.len() > 6 * self.tet_count() + 1 {
                break;
            }
        }
        out
    }

    /// Class id of every (tetrahedron, vertex) pair, plus the class count.
    pub fn vertex_class_map(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.tet_count();
        let mut uf = UnionFind::new(4 * n);
        for t in 0..n {
            for f in 0..4 {
                let g = self.gluings[t][f];
                for v in (0..4).filter(|&v| v != f) {
                    uf.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut out = vec![[0usize; 4]; n];
        for t in 0..n {
            for v in 0..4 {
                out[t][v] = labels[4 * t + v];
            }
        }
        (out, count)
    }

    /// Class id of every (tetrahedron, face) pair, plus the class count.
    pub fn face_class_map(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.tet_count();
        let mut out = vec![[usize::MAX; 4]; n];
        let mut next = 0;
        for t in 0..n {
            for f in 0..4 {
                if out[t][f] == usize::MAX {
                    let g = self.gluings[t][f];
                    out[t][f] = next;
                    out[g.tet][g.perm.apply(f)] = next;
                    next += 1;
                }
            }
        }
        (out, next)
    }

    pub fn vertex_classes(&self) -> Vec<VertexClass> {
        let (map, count) = self.vertex_class_map();
        let mut out: Vec<VertexClass> =
            (0..count).map(|id| VertexClass { id, members: Vec::new() }).collect();
        for (t, row) in map.iter().enumerate() {
            for (v, &c) in row.iter().enumerate() {
                out[c].members.push((t, v));
            }
        }
        out
    }
}

pub fn edge_classes(t: &Triangulation) -> Vec<EdgeClass> {
    t.edge_classes()
}

pub fn vertex_classes(t: &Triangulation) -> Vec<VertexClass> {
    t.vertex_classes()
}

#[cfg(test)]
mod tests {
    use super::*;

    const K10N14: &str = "gLLMQaedfdffjxaxjkn";

    #[test]
    fn census_knot_classes() {
        let t = decode_isosig(K10N14).unwrap();
        assert_eq!(t.tet_count(), 6);
        assert_eq!(t.edge_classes().len(), 6);
        assert_eq!(t.vertex_classes().len(), 1);
    }

    #[test]
    fn fans_partition_tetrahedron_edges() {
        let t = decode_isosig("hLAPzkbcbeefgghhwjsahr").unwrap();
        let (map, _) = t.edge_class_map();
        let mut seen = vec![[false; 6]; t.tet_count()];
        for c in t.edge_classes() {
            for inc in &c.incidences {
                assert_eq!(map[inc.tet][inc.edge], c.id);
                assert!(!seen[inc.tet][inc.edge], "edge listed twice");
                seen[inc.tet][inc.edge] = true;
            }
        }
        assert!(seen.iter().all(|r| r.iter().all(|&s| s)));
    }

    #[test]
    fn relabel_preserves_validity() {
        let t = decode_isosig(K10N14).unwrap();
        let n = t.tet_count();
        let tet_map: Vec<usize> = (0..n).rev().collect();
        let vmaps: Vec<Perm4> = (0..n).map(|i| crate::perm::ORDERED_S4[(5 * i + 7) % 24]).collect();
        let r = t.relabel(&tet_map, &vmaps).unwrap();
        assert_eq!(r.edge_classes().len(), 6);
        assert_eq!(r.vertex_classes().len(), 1);
    }

    #[test]
    fn orientation_signs_agree_with_gluings() {
        let t = decode_isosig(K10N14).unwrap();
        let o = t.orientation().unwrap();
        for (i, faces) in t.gluings().iter().enumerate() {
            for g in faces {
                assert_eq!(o[g.tet], -o[i] * g.perm.sign());
            }
        }
    }
}
