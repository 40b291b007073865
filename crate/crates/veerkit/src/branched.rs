//! The unstable branched surface, read off its dual veering triangulation.
//!
//! Sectors correspond to edges, branch-locus arcs to faces and triple points
//! to tetrahedra. Inside a tetrahedron the branch locus is two arcs, one per
//! equatorial edge whose colour differs from the top edge. The arc for such
//! an edge `s` runs from the top face containing `s` to the bottom face
//! containing `s`, and its cusp faces the ideal vertex shared by `s` and
//! the top edge.

use crate::error::{Error, Result};
use crate::taut::{Color, VeeringTriangulation};
use crate::tri::{edge_index, EDGE_VERTICES};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriplePoint {
    pub tet: usize,
    pub color: Color,
}

pub fn triple_points(vt: &VeeringTriangulation) -> Vec<TriplePoint> {
    (0..vt.tet_count()).map(|t| TriplePoint { tet: t, color: vt.tet_color(t) }).collect()
}

/// (blue, red) counts of triple points.
pub fn triple_point_counts(points: &[TriplePoint]) -> (usize, usize) {
    let blue = points.iter().filter(|p| p.color == Color::Blue).count();
    (blue, points.len() - blue)
}

/// One arc of the branch locus inside a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Strand {
    pub tet: usize,
    /// The equatorial edge (tetrahedron edge index) the arc belongs to.
    pub edge: usize,
    /// Face the arc enters through (a top face).
    pub entry_face: usize,
    /// Face the arc leaves through (a bottom face).
    pub exit_face: usize,
    /// Ideal vertex of the tetrahedron whose complementary piece holds the cusp.
    pub cusp_vertex: usize,
}

/// Equatorial edges coloured differently from the top edge.
fn minority_edges(vt: &VeeringTriangulation, tet: usize, colors: &[Color]) -> Vec<usize> {
    let r = &vt.roles()[tet];
    let top = colors[vt.edge_class[tet][r.top]];
    r.equator.iter().copied().filter(|&e| colors[vt.edge_class[tet][e]] != top).collect()
}

fn strand(vt: &VeeringTriangulation, tet: usize, edge: usize) -> Strand {
    let r = &vt.roles()[tet];
    let (x, y) = EDGE_VERTICES[edge];
    let (tx, ty) = EDGE_VERTICES[r.top];
    let on_top = |v: usize| v == tx || v == ty;
    let (top_end, bottom_end) = if on_top(x) { (x, y) } else { (y, x) };
    // the top face containing s omits the other bottom vertex, and the
    // bottom face containing s omits the other top vertex
    let other_bottom = r.square[1] + r.square[3] - bottom_end;
    let other_top = r.square[0] + r.square[2] - top_end;
    Strand { tet, edge, entry_face: other_bottom, exit_face: other_top, cusp_vertex: top_end }
}

pub fn strands(vt: &VeeringTriangulation) -> Vec<Strand> {
    let mut out = Vec::with_capacity(2 * vt.tet_count());
    for t in 0..vt.tet_count() {
        for e in minority_edges(vt, t, &vt.colors.colors) {
            out.push(strand(vt, t, e));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchComponent {
    /// Strands in flow order (each leaves through the face the next enters).
    pub strands: Vec<Strand>,
    /// Face classes crossed, in the same order: entry face of each strand.
    pub faces: Vec<usize>,
    /// Vertex class (end) this component is a cusp circle of.
    pub end: usize,
}

/// Chains strands across face gluings into oriented cycles and assigns each
/// cycle to an end.
pub fn branch_components(vt: &VeeringTriangulation) -> Result<Vec<BranchComponent>> {
    let all = strands(vt);
    let n = vt.tet_count();
    // strand entering through (tet, face)
    let mut entering = vec![[usize::MAX; 4]; n];
    for (i, s) in all.iter().enumerate() {
        if entering[s.tet][s.entry_face] != usize::MAX {
            return Err(Error::BranchLocus(format!(
                "two strands enter tetrahedron {} through face {}",
                s.tet, s.entry_face
            )));
        }
        entering[s.tet][s.entry_face] = i;
    }
    let (fmap, _) = vt.tri.face_class_map();
    let (vmap, _) = vt.tri.vertex_class_map();
    let mut used = vec![false; all.len()];
    let mut out = Vec::new();
    for start in 0..all.len() {
        if used[start] {
            continue;
        }
        let mut comp = BranchComponent { strands: Vec::new(), faces: Vec::new(), end: vmap[all[start].tet][all[start].cusp_vertex] };
        let mut cur = start;
        loop {
            used[cur] = true;
            let s = all[cur];
            comp.strands.push(s);
            comp.faces.push(fmap[s.tet][s.entry_face]);
            let g = vt.tri.gluing(s.tet, s.exit_face);
            let next = entering[g.tet][g.perm.apply(s.exit_face)];
            if next == usize::MAX {
                return Err(Error::BranchLocus(format!(
                    "no strand continues from tetrahedron {} face {}",
                    s.tet, s.exit_face
                )));
            }
            // the cusp must stay on the same ideal vertex across the face
            let carried = g.perm.apply(s.cusp_vertex);
            if carried != all[next].cusp_vertex {
                return Err(Error::BranchLocus(format!(
                    "cusp side flips between tetrahedron {} and tetrahedron {}",
                    s.tet, g.tet
                )));
            }
            if next == start {
                break;
            }
            if used[next] {
                return Err(Error::BranchLocus("strand chaining is not a permutation".into()));
            }
            cur = next;
        }
        out.push(comp);
    }
    Ok(out)
}

/// Number of cusp circles (ladderpole curves) on each end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspReport {
    /// Indexed by vertex class.
    pub ladderpoles: Vec<usize>,
}

impl CuspReport {
    pub fn each_end_has(&self, k: usize) -> bool {
        self.ladderpoles.iter().all(|&c| c == k)
    }
}

pub fn ladderpole_counts(vt: &VeeringTriangulation) -> Result<CuspReport> {
    let comps = branch_components(vt)?;
    let mut counts = vec![0usize; vt.cusp_count()];
    for c in &comps {
        counts[c.end] += 1;
    }
    Ok(CuspReport { ladderpoles: counts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<String>,
}

pub fn verify_vbs_axioms(vt: &VeeringTriangulation) -> AxiomReport {
    verify_vbs_axioms_with(vt, &vt.colors.colors)
}

/// Checks the sector and branch-locus consequences of a colouring.
pub fn verify_vbs_axioms_with(vt: &VeeringTriangulation, colors: &[Color]) -> AxiomReport {
    let mut v = Vec::new();
    let n = vt.tet_count();
    let classes = colors.len();
    let mut tops = vec![0usize; classes];
    let mut bottoms = vec![0usize; classes];
    for (t, r) in vt.roles().iter().enumerate() {
        tops[vt.edge_class[t][r.top]] += 1;
        bottoms[vt.edge_class[t][r.bottom]] += 1;
    }
    for c in 0..classes {
        if tops[c] != 1 || bottoms[c] != 1 {
            v.push(format!("edge {c} is top {} times and bottom {} times", tops[c], bottoms[c]));
        }
    }
    let mut entries = vec![[0u8; 4]; n];
    let mut exits = vec![[0u8; 4]; n];
    for t in 0..n {
        let r = &vt.roles()[t];
        let eq: Vec<Color> = r.equator.iter().map(|&e| colors[vt.edge_class[t][e]]).collect();
        if eq[0] == eq[1] || eq[0] != eq[2] || eq[1] != eq[3] {
            v.push(format!("tetrahedron {t}: equatorial colours {eq:?} do not alternate"));
        }
        let m = minority_edges(vt, t, colors);
        let crossing = m.len() == 2 && {
            let (a, b) = EDGE_VERTICES[m[0]];
            m[1] == edge_index(
                (0..4).find(|&x| x != a && x != b).unwrap(),
                (0..4).rev().find(|&x| x != a && x != b).unwrap(),
            )
        };
        if !crossing {
            v.push(format!("tetrahedron {t}: branch arcs {m:?} do not cross at a triple point"));
            continue;
        }
        for &e in &m {
            let s = strand(vt, t, e);
            entries[t][s.entry_face] += 1;
            exits[t][s.exit_face] += 1;
        }
    }
    if v.is_empty() {
        for t in 0..n {
            for f in 0..4 {
                let g = vt.tri.gluing(t, f);
                let gf = g.perm.apply(f);
                if entries[t][f] + exits[t][f] != 1 || entries[t][f] + entries[g.tet][gf] != 1 {
                    v.push(format!("face {f} of tetrahedron {t} is not crossed once in each direction"));
                }
            }
        }
    }
    AxiomReport { passed: v.is_empty(), violations: v }
}

/// JSON-friendly summary.
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub triple_points: BTreeMap<String, usize>,
    pub components: Vec<Vec<usize>>,
    pub ladderpoles: BTreeMap<usize, usize>,
}

pub fn branch_report(vt: &VeeringTriangulation) -> Result<BranchReport> {
    let tp = triple_points(vt);
    let (blue, red) = triple_point_counts(&tp);
    let comps = branch_components(vt)?;
    let lp = ladderpole_counts(vt)?;
    Ok(BranchReport {
        triple_points: [("blue".to_string(), blue), ("red".to_string(), red)].into_iter().collect(),
        components: comps.iter().map(|c| c.faces.clone()).collect(),
        ladderpoles: lp.ladderpoles.iter().copied().enumerate().collect(),
    })
}
