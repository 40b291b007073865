use super::{invariant_factors, Matrix, Triangulation, EDGE_VERTICES};
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// A finitely generated abelian group Z^rank ⊕ Z/t1 ⊕ Z/t2 ⊕ ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = (0..self.rank).map(|_| "Z".to_string()).collect();
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// First homology of the cusped manifold, computed on the dual spine.
///
/// Dual 1-cells are the glued face pairs. With `outward` given
/// (`outward[t][f]` true when face `f` of `t` is cooriented out of `t`) each
/// dual 1-cell runs from the tetrahedron it leaves along the coorientation;
/// otherwise it runs from the first-listed side. Dual 2-cells are the edge
/// fans.
pub fn homology_h1(t: &Triangulation, outward: Option<&[[bool; 4]]>) -> Result<AbelianGroup> {
    t.orientation()?;
    let n = t.tet_count();
    // face pair index of each (tet, face) and whether that side is the tail
    let mut face_id = vec![[usize::MAX; 4]; n];
    let mut tail = vec![[false; 4]; n];
    let mut nfaces = 0;
    for a in 0..n {
        for f in 0..4 {
            if face_id[a][f] != usize::MAX {
                continue;
            }
            let g = t.gluing(a, f);
            let gf = g.perm.apply(f);
            face_id[a][f] = nfaces;
            face_id[g.tet][gf] = nfaces;
            let a_is_tail = match outward {
                Some(o) => {
                    if o[a][f] == o[g.tet][gf] {
                        return Err(Error::NotTransverseTaut(format!(
                            "face {f} of tetrahedron {a} is cooriented the same way on both sides"
                        )));
                    }
                    o[a][f]
                }
                None => true,
            };
            tail[a][f] = a_is_tail;
            tail[g.tet][gf] = !a_is_tail;
            nfaces += 1;
        }
    }
    let (emap, nedges) = t.edge_class_map();

    // boundary of dual 1-cells: head - tail
    let mut d1: Matrix = vec![vec![0; nfaces]; n];
    for a in 0..n {
        for f in 0..4 {
            let id = face_id[a][f];
            if tail[a][f] {
                d1[a][id] -= 1;
            } else {
                d1[a][id] += 1;
            }
        }
    }
    // boundary of dual 2-cells: crossings while walking each fan
    let mut d2: Matrix = vec![vec![0; nedges]; nfaces];
    let mut done = vec![false; nedges];
    for a in 0..n {
        for (e, &(x, y)) in EDGE_VERTICES.iter().enumerate() {
            let c = emap[a][e];
            if done[c] {
                continue;
            }
            done[c] = true;
            for (tet, p) in t.edge_walk(a, x, y) {
                let f = p[2];
                let sign = if tail[tet][f] { 1 } else { -1 };
                d2[face_id[tet][f]][c] += sign;
            }
        }
    }
    let r1 = invariant_factors(&d1).len();
    let f2 = invariant_factors(&d2);
    let r2 = f2.len();
    let torsion: Vec<i64> = f2.into_iter().filter(|&d| d > 1).collect();
    Ok(AbelianGroup { rank: nfaces - r1 - r2, torsion })
}
