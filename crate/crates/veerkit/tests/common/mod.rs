//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use veerkit::flow::Digraph;
use veerkit::geodesic::Fatgraph;
use num_bigint::BigInt;
use veerkit::{BigMatrix, Matrix};

/// Does any proper nonempty vertex set have no edges leaving it?
pub fn has_closed_proper_subset<L: Clone>(g: &Digraph<L>) -> bool {
    let n = g.vertex_count();
    (1u64..(1u64 << n) - 1).any(|set| g.edges.iter().all(|e| set >> e.src & 1 == 0 || set >> e.dst & 1 == 1))
}

/// Closed walks of length <= max_len with no repeated vertex, counted once
/// per rotation class. Every walk is extended along every out-edge, and
/// the vertex condition is checked only at the end.
pub fn brute_force_cycles<L: Clone>(g: &Digraph<L>, max_len: usize) -> BTreeSet<Vec<usize>> {
    let mut leaving = vec![Vec::new(); g.vertex_count()];
    for (e, arc) in g.edges.iter().enumerate() {
        leaving[arc.src].push(e);
    }
    fn extend<L: Clone>(
        g: &Digraph<L>,
        leaving: &[Vec<usize>],
        walk: &mut Vec<usize>,
        max_len: usize,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let first = g.edges[walk[0]].src;
        let last = g.edges[*walk.last().unwrap()].dst;
        if last == first {
            let verts: BTreeSet<usize> = walk.iter().map(|&e| g.edges[e].src).collect();
            if verts.len() == walk.len() {
                let len = walk.len();
                let k = (0..len).min_by_key(|&i| (g.edges[walk[i]].src, walk[i])).unwrap();
                let mut r = walk.clone();
                r.rotate_left(k);
                found.insert(r);
            }
        }
        if walk.len() == max_len {
            return;
        }
        for &e in &leaving[last] {
            walk.push(e);
            extend(g, leaving, walk, max_len, found);
            walk.pop();
        }
    }
    let mut found = BTreeSet::new();
    for e in 0..g.edge_count() {
        extend(g, &leaving, &mut vec![e], max_len, &mut found);
    }
    found
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn det(m: &Matrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Matrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Cofactor expansion over big integers.
pub fn det_big(m: &BigMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    (0..n)
        .map(|j| {
            let minor: BigMatrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][j] * det_big(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()).collect()
}

/// Invariant factors as quotients of successive gcds of k-by-k minors.
pub fn determinantal_factors(a: &Matrix) -> Vec<i64> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = vec![1i64];
    for k in 1..=m.min(n) {
        let mut g = 0;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let minor: Matrix = rows.iter().map(|&r| cols.iter().map(|&c| a[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        d.push(g);
    }
    d.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Quadrant arrows expected to be removed: flanked by squares on both sides,
/// and following diagonals of even regions through flanked arrows returns
/// to the start.
pub fn flanked_cycle_arrows(f: &Fatgraph) -> BTreeSet<(usize, usize)> {
    let size = |v: usize, q: usize| f.faces()[f.quadrant_face(v, q % 4)].len();
    let flanked = |v: usize, q: usize| size(v, q + 1) == 4 && size(v, q + 3) == 4;
    // the corner of the region reached by the diagonal, as an outward arrow
    let step = |v: usize, q: usize| -> Option<(usize, usize)> {
        let face = &f.faces()[f.quadrant_face(v, q)];
        let n = face.len();
        if n % 2 == 1 {
            return None;
        }
        let i = face.iter().position(|&h| f.vertex_of(h) == v && f.slot_of(h) == q)?;
        let h = face[(i + n / 2) % n];
        Some((f.vertex_of(h), (f.slot_of(h) + 2) % 4))
    };
    let mut out = BTreeSet::new();
    for v in 0..f.vertex_count() {
        for q in 0..4 {
            let mut cur = (v, q);
            for _ in 0..=4 * f.vertex_count() {
                if !flanked(cur.0, cur.1) {
                    break;
                }
                match step(cur.0, cur.1) {
                    Some(next) => cur = next,
                    None => break,
                }
                if cur == (v, q) {
                    out.insert((v, q));
                    break;
                }
            }
        }
    }
    out
}

