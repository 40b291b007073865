//! Two-sheeted covers from mod 2 cohomology classes.

use super::{Gluing, Triangulation};
use crate::error::{Error, Result};

/// Row-reduces `rows` over GF(2) in place and returns the pivot columns.
fn gf2_reduce(rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn gf2_rank(mut rows: Vec<Vec<u8>>, cols: usize) -> usize {
    gf2_reduce(&mut rows, cols).len()
}

/// Mod 2 cocycles on face classes (sum zero around every edge) that are
/// independent modulo coboundaries. Each vector is indexed by face class.
pub fn z2_cohomology_basis(t: &Triangulation) -> Vec<Vec<u8>> {
    let (fmap, faces) = t.face_class_map();
    let mut edge_rows = Vec::new();
    for class in t.edge_classes() {
        let inc = &class.incidences[0];
        let (a, b) = super::EDGE_VERTICES[inc.edge];
        let mut row = vec![0u8; faces];
        for (tet, [_, _, c, _]) in t.edge_walk(inc.tet, a, b) {
            row[fmap[tet][c]] ^= 1;
        }
        edge_rows.push(row);
    }
    // null space of the edge rows
    let pivots = gf2_reduce(&mut edge_rows, faces);
    let free: Vec<usize> = (0..faces).filter(|c| !pivots.contains(c)).collect();
    let mut cocycles = Vec::new();
    for &f in &free {
        let mut v = vec![0u8; faces];
        v[f] = 1;
        for (row, &p) in edge_rows.iter().zip(&pivots) {
            v[p] = row[f];
        }
        cocycles.push(v);
    }
    let mut span: Vec<Vec<u8>> = (0..t.tet_count())
        .map(|tet| {
            let mut v = vec![0u8; faces];
            for f in 0..4 {
                v[fmap[tet][f]] ^= 1;
            }
            v
        })
        .collect();
    let mut rank = gf2_rank(span.clone(), faces);
    let mut out = Vec::new();
    for c in cocycles {
        span.push(c.clone());
        let r = gf2_rank(span.clone(), faces);
        if r > rank {
            rank = r;
            out.push(c);
        } else {
            span.pop();
        }
    }
    out
}

/// The double cover in which crossing face class `f` switches sheets iff
/// `labels[f] == 1`. Tetrahedron `k` of sheet `s` becomes `2k + s`.
pub fn double_cover(t: &Triangulation, labels: &[u8]) -> Result<Triangulation> {
    let (fmap, faces) = t.face_class_map();
    if labels.len() != faces {
        return Err(Error::InvalidTriangulation(format!(
            "expected {faces} face labels, got {}",
            labels.len()
        )));
    }
    let mut gluings = Vec::with_capacity(2 * t.tet_count());
    for tet in 0..t.tet_count() {
        for sheet in 0..2 {
            let mut g = [Gluing { tet: 0, perm: crate::Perm4::IDENTITY }; 4];
            for f in 0..4 {
                let src = t.gluing(tet, f);
                let flip = labels[fmap[tet][f]] as usize;
                g[f] = Gluing { tet: 2 * src.tet + (sheet ^ flip), perm: src.perm };
            }
            gluings.push(g);
        }
    }
    Triangulation::new(gluings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{decode_isosig, homology_h1};

    #[test]
    fn knot_complement_has_one_class() {
        let t = decode_isosig("gLLMQaedfdffjxaxjkn").unwrap();
        let basis = z2_cohomology_basis(&t);
        assert_eq!(basis.len(), 1);
        let cover = double_cover(&t, &basis[0]).unwrap();
        assert_eq!(cover.tet_count(), 12);
        assert!(cover.is_connected());
        assert_eq!(homology_h1(&cover, None).unwrap().rank, 1);
    }

    #[test]
    fn trivial_labels_give_two_copies() {
        let t = decode_isosig("cPcbbbiht").unwrap();
        let cover = double_cover(&t, &[0, 0, 0, 0]).unwrap();
        assert!(!cover.is_connected());
    }
}
