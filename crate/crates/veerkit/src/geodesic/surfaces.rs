//! Curve systems on closed surfaces, built by gluing polygons.

use super::fatgraph::Fatgraph;
use crate::error::{Error, Result};

/// How a cuff of a pair of pants is attached to its pants curve.
#[derive(Clone, Copy)]
struct Cuff {
    curve: usize,
    /// First attachment along the curve, or second.
    first: bool,
    /// Second attachments may swap front and back halves.
    twisted: bool,
}

/// Pants curves give edges `2c` (arc A) and `2c + 1` (arc B). Seams of pants
/// `p` are edges `2C + 3p + {0, 1, 2}` joining cuffs (0,1), (1,2), (2,0).
fn pants_polygons(curves: usize, pants: &[[Cuff; 3]]) -> Result<Fatgraph> {
    let fwd = |e: usize| 2 * e;
    let back = |e: usize| 2 * e + 1;
    let seam = |p: usize, a: usize| 2 * curves + 3 * p + a;
    // (front arc, back arc) half-edges of a cuff, both running the way the
    // front or back hexagon traverses them
    let arcs = |c: Cuff| -> (usize, usize) {
        let (a, b) = (2 * c.curve, 2 * c.curve + 1);
        if c.first {
            (fwd(a), fwd(b))
        } else if c.twisted {
            (back(b), back(a))
        } else {
            (back(a), back(b))
        }
    };
    let mut faces = Vec::new();
    for (p, cuffs) in pants.iter().enumerate() {
        let (f0, b0) = arcs(cuffs[0]);
        let (f1, b1) = arcs(cuffs[1]);
        let (f2, b2) = arcs(cuffs[2]);
        faces.push(vec![fwd(seam(p, 0)), f1, fwd(seam(p, 1)), f2, fwd(seam(p, 2)), f0]);
        faces.push(vec![b0, back(seam(p, 2)), b2, back(seam(p, 1)), b1, back(seam(p, 0))]);
    }
    Fatgraph::from_polygons(2 * curves + 3 * pants.len(), &faces)
}

/// Right-angled hexagon decomposition of the closed genus `g` surface: a
/// pants decomposition whose dual graph is a (2g-2)-cycle with antipodal
/// chords, each pants cut into two hexagons by its seams.
pub fn hexagon_decomposition(g: usize) -> Result<Fatgraph> {
    if g < 2 {
        return Err(Error::InvalidParameters(format!("genus must be at least 2, got {g}")));
    }
    let m = 2 * g - 2;
    let half = g - 1;
    // curves 0..m: cycle edge i joins pants i and i+1; curves m..: chords
    let mut pants = vec![[Cuff { curve: 0, first: true, twisted: false }; 3]; m];
    for i in 0..m {
        pants[i][1] = Cuff { curve: i, first: true, twisted: false };
        pants[(i + 1) % m][0] = Cuff { curve: i, first: false, twisted: false };
    }
    for i in 0..half {
        pants[i][2] = Cuff { curve: m + i, first: true, twisted: false };
        pants[i + half][2] = Cuff { curve: m + i, first: false, twisted: false };
    }
    pants_polygons(m + half, &pants)
}

/// Genus 2 hexagon decomposition whose curve system contains a separating
/// pants curve: two one-holed tori joined along that curve.
///
/// Returns the fatgraph and the fatgraph edges of the separating curve.
pub fn separated_hexagon_decomposition() -> Result<(Fatgraph, Vec<usize>)> {
    let pants = [
        [
            Cuff { curve: 0, first: true, twisted: false },
            Cuff { curve: 0, first: false, twisted: true },
            Cuff { curve: 2, first: true, twisted: false },
        ],
        [
            Cuff { curve: 1, first: true, twisted: false },
            Cuff { curve: 1, first: false, twisted: true },
            Cuff { curve: 2, first: false, twisted: false },
        ],
    ];
    let g = pants_polygons(3, &pants)?;
    // arcs of curve 2 are edges 4 and 5
    Ok((g, vec![4, 5]))
}

/// Two copies of a `p` by `q` square torus grid, each with the cells in
/// `holes` removed, glued along the hole boundaries with a half-edge shift
/// so every vertex stays 4-valent. Cells next to a hole get extra sides.
///
/// A row or column of the grid that misses every hole is an annulus of
/// squares, i.e. a pair of parallel curves.
pub fn doubled_punctured_grid(p: usize, q: usize, holes: &[(usize, usize)]) -> Result<Fatgraph> {
    if p < 3 || q < 3 {
        return Err(Error::InvalidParameters(format!("grid must be at least 3 by 3, got {p} by {q}")));
    }
    if holes.is_empty() {
        return Err(Error::InvalidParameters("at least one hole is needed".into()));
    }
    for (i, &(x, y)) in holes.iter().enumerate() {
        if x >= p || y >= q {
            return Err(Error::InvalidParameters(format!("hole ({x}, {y}) is outside the grid")));
        }
        for &(u, w) in &holes[..i] {
            let dx = (x + p - u) % p;
            let dy = (y + q - w) % q;
            let near = |d: usize, m: usize| d == 0 || d == 1 || d == m - 1;
            if near(dx, p) && near(dy, q) {
                return Err(Error::InvalidParameters(format!("holes ({u}, {w}) and ({x}, {y}) touch")));
            }
        }
    }
    let cells = p * q;
    // per copy: horizontal edges 0..pq, vertical edges pq..2pq; copy offset
    // 2pq; then 8 boundary segments per hole
    let h = |c: usize, x: usize, y: usize| 2 * cells * c + (y % q) * p + (x % p);
    let v = |c: usize, x: usize, y: usize| 2 * cells * c + cells + (y % q) * p + (x % p);
    let seg = |hole: usize, i: usize| 4 * cells + 8 * hole + (i % 8);
    // sides of a hole anticlockwise: bottom, right, top, left
    let boundary = |c: usize, e: usize| -> Option<(usize, usize)> {
        holes.iter().enumerate().find_map(|(k, &(x, y))| {
            let sides = [h(c, x, y), v(c, x + 1, y), h(c, x, y + 1), v(c, x, y)];
            sides.iter().position(|&s| s == e).map(|side| (k, side))
        })
    };
    let mut faces = Vec::new();
    for c in 0..2 {
        for y in 0..q {
            for x in 0..p {
                if holes.contains(&(x, y)) {
                    continue;
                }
                let ring = [
                    (h(c, x, y), true),
                    (v(c, x + 1, y), true),
                    (h(c, x, y + 1), false),
                    (v(c, x, y), false),
                ];
                let mut face = Vec::new();
                for (e, forward) in ring {
                    match boundary(c, e) {
                        // side of a hole, walked against the hole's direction; the
                        // second copy's corners sit half a side further on
                        Some((k, side)) => {
                            let s = 2 * side + c;
                            face.extend([2 * seg(k, s + 1) + 1, 2 * seg(k, s) + 1]);
                        }
                        None => face.push(2 * e + usize::from(!forward)),
                    }
                }
                if c == 1 {
                    // mirror image: reverse the cycle and each half-edge
                    face.reverse();
                    for x in face.iter_mut() {
                        *x ^= 1;
                    }
                }
                faces.push(face);
            }
        }
    }
    // the holes' own sides were replaced by segments; renumber the rest
    let mut used: Vec<usize> = faces.iter().flatten().map(|&x| x / 2).collect();
    used.sort_unstable();
    used.dedup();
    for face in faces.iter_mut() {
        for x in face.iter_mut() {
            let e = used.binary_search(&(*x / 2)).expect("edge is used");
            *x = 2 * e + (*x & 1);
        }
    }
    Fatgraph::from_polygons(used.len(), &faces)
}
