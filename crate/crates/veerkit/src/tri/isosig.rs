//! Isomorphism signatures in the census dialect.
//!
//! Alphabet: `a-z` = 0..25, `A-Z` = 26..51, `0-9` = 52..61, `+` = 62, `-` = 63.
//! Layout per connected component:
//!
//! * size: one char `n` if `n < 63`, otherwise `63`, a width char `w`, then
//!   `n` in `w` little-endian base-64 digits;
//! * facet actions, three 2-bit codes per char (low bits first): 0 boundary,
//!   1 glue to the next unused tetrahedron with the identity, 2 glue to an
//!   earlier-listed destination;
//! * one destination per action 2, each in `w` chars (`w = 1` for small n);
//! * one permutation per action 2, as a single char indexing S4 in
//!   lexicographic order.
//!
//! Actions are read in order of (tetrahedron, face), skipping faces already
//! glued. The canonical signature is the byte-wise minimum over every
//! starting tetrahedron and starting vertex labelling, and components are
//! sorted and concatenated.

use super::{Gluing, Triangulation};
use crate::error::{Error, Result};
use crate::perm::{Perm4, ORDERED_S4};

fn sval(c: u8) -> Option<usize> {
    match c {
        b'a'..=b'z' => Some((c - b'a') as usize),
        b'A'..=b'Z' => Some((c - b'A') as usize + 26),
        b'0'..=b'9' => Some((c - b'0') as usize + 52),
        b'+' => Some(62),
        b'-' => Some(63),
        _ => None,
    }
}

fn schar(v: usize) -> char {
    let v = v as u8;
    (match v {
        0..=25 => b'a' + v,
        26..=51 => b'A' + (v - 26),
        52..=61 => b'0' + (v - 52),
        62 => b'+',
        63 => b'-',
        _ => unreachable!("value out of range"),
    }) as char
}

fn push_value(out: &mut String, mut v: usize, width: usize) {
    for _ in 0..width {
        out.push(schar(v & 63));
        v >>= 6;
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn err(&self, offset: usize, reason: impl Into<String>) -> Error {
        Error::Decode { offset, reason: reason.into() }
    }

    fn next(&mut self) -> Result<usize> {
        match self.bytes.get(self.pos) {
            None => Err(self.err(self.pos, "truncated signature")),
            Some(&c) => match sval(c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                None => Err(self.err(self.pos, format!("invalid character {:?}", c as char))),
            },
        }
    }

    fn value(&mut self, width: usize) -> Result<usize> {
        let mut v = 0usize;
        for i in 0..width {
            let d = self.next()?;
            if 6 * i >= usize::BITS as usize {
                return Err(self.err(self.pos - 1, "size field too wide"));
            }
            v |= d << (6 * i);
        }
        Ok(v)
    }
}

/// Decodes a signature, possibly made of several concatenated components.
pub fn decode_isosig(sig: &str) -> Result<Triangulation> {
    let bytes = sig.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Decode { offset: 0, reason: "empty signature".into() });
    }
    let mut r = Reader { bytes, pos: 0 };
    let mut all: Vec<[Gluing; 4]> = Vec::new();
    while r.pos < bytes.len() {
        let base = all.len();
        let comp = decode_component(&mut r)?;
        for faces in comp {
            let mut row = faces;
            for g in row.iter_mut() {
                g.tet += base;
            }
            all.push(row);
        }
    }
    Triangulation::new(all).map_err(|e| Error::Decode { offset: bytes.len(), reason: e.to_string() })
}

fn decode_component(r: &mut Reader<'_>) -> Result<Vec<[Gluing; 4]>> {
    let mut n = r.next()?;
    let mut width = 1;
    if n == 63 {
        width = r.next()?;
        if width == 0 {
            return Err(r.err(r.pos - 1, "zero-width size field"));
        }
        n = r.value(width)?;
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let total = 4 * n;
    let mut actions: Vec<(u8, usize)> = Vec::new();
    let mut facets = 0usize;
    let mut joins = 0usize;
    while facets < total {
        let at = r.pos;
        let c = r.next()?;
        for k in 0..3 {
            let trit = ((c >> (2 * k)) & 3) as u8;
            if facets == total {
                if trit != 0 {
                    return Err(r.err(at, "nonzero padding in facet actions"));
                }
                continue;
            }
            match trit {
                0 => facets += 1,
                1 => facets += 2,
                2 => {
                    facets += 2;
                    joins += 1;
                }
                _ => return Err(r.err(at, "invalid facet action")),
            }
            if facets > total {
                return Err(r.err(at, "facet actions overrun"));
            }
            actions.push((trit, at));
        }
    }
    let mut dests = Vec::with_capacity(joins);
    for _ in 0..joins {
        let at = r.pos;
        let d = r.value(width)?;
        if d >= n {
            return Err(r.err(at, format!("destination {d} out of range")));
        }
        dests.push((d, at));
    }
    let mut perms = Vec::with_capacity(joins);
    for _ in 0..joins {
        let at = r.pos;
        let i = r.next()?;
        let p = Perm4::from_ordered_index(i).ok_or_else(|| r.err(at, "permutation index out of range"))?;
        perms.push((p, at));
    }

    let mut glued: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
    let mut action_pos = 0;
    let mut join_pos = 0;
    let mut next_unused = 1;
    for t in 0..n {
        for f in 0..4 {
            if glued[t][f].is_some() {
                continue;
            }
            let (action, at) = actions[action_pos];
            action_pos += 1;
            match action {
                0 => return Err(r.err(at, "boundary faces are not allowed")),
                1 => {
                    if next_unused >= n {
                        return Err(r.err(at, "too many new tetrahedra"));
                    }
                    let u = next_unused;
                    next_unused += 1;
                    glued[t][f] = Some(Gluing { tet: u, perm: Perm4::IDENTITY });
                    glued[u][f] = Some(Gluing { tet: t, perm: Perm4::IDENTITY });
                }
                _ => {
                    let (u, dat) = dests[join_pos];
                    let (p, pat) = perms[join_pos];
                    join_pos += 1;
                    let g = p.apply(f);
                    if glued[u][g].is_some() {
                        return Err(r.err(dat, "destination face already glued"));
                    }
                    if u == t && g == f {
                        return Err(r.err(pat, "face glued to itself"));
                    }
                    glued[t][f] = Some(Gluing { tet: u, perm: p });
                    glued[u][g] = Some(Gluing { tet: t, perm: p.inverse() });
                }
            }
        }
    }
    if next_unused != n {
        return Err(r.err(r.pos, "signature describes a disconnected component"));
    }
    Ok(glued
        .into_iter()
        .map(|row| row.map(|g| g.expect("every face glued")))
        .collect())
}

/// Canonical signature of a (possibly disconnected) triangulation.
pub fn encode_isosig(t: &Triangulation) -> String {
    let n = t.tet_count();
    if n == 0 {
        return "a".to_string();
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for g in &t.gluings()[x] {
                if comp[g.tet] == usize::MAX {
                    comp[g.tet] = id;
                    members.push(g.tet);
                }
            }
            i += 1;
        }
        comps.push(members);
    }
    let mut sigs: Vec<String> = comps
        .iter()
        .map(|members| {
            let mut best: Option<String> = None;
            for &s in members {
                for p in ORDERED_S4 {
                    let cand = encode_isosig_from(t, s, p);
                    if best.as_ref().is_none_or(|b| cand.as_bytes() < b.as_bytes()) {
                        best = Some(cand);
                    }
                }
            }
            best.expect("nonempty component")
        })
        .collect();
    sigs.sort_by(|a, b| a.as_bytes().cmp(b.as_bytes()));
    sigs.concat()
}

/// Signature of the component of `start`, relabelled so that `start` becomes
/// tetrahedron 0 with vertex `v` becoming `vertices[v]`.
pub fn encode_isosig_from(t: &Triangulation, start: usize, vertices: Perm4) -> String {
    let n = t.tet_count();
    let mut image = vec![usize::MAX; n];
    let mut pre = Vec::with_capacity(n);
    let mut vmap = vec![Perm4::IDENTITY; n];
    image[start] = 0;
    vmap[start] = vertices;
    pre.push(start);
    let mut actions: Vec<u8> = Vec::new();
    let mut dests: Vec<usize> = Vec::new();
    let mut perms: Vec<usize> = Vec::new();
    let mut img = 0;
    while img < pre.len() {
        let src = pre[img];
        for fimg in 0..4 {
            let fsrc = vmap[src].inverse().apply(fimg);
            let g = t.gluing(src, fsrc);
            let dest = g.tet;
            if image[dest] != usize::MAX {
                let dimg = image[dest];
                let other = vmap[dest].apply(g.perm.apply(fsrc));
                if dimg < img || (dimg == img && other < fimg) {
                    continue;
                }
                actions.push(2);
                dests.push(dimg);
                perms.push(vmap[dest].compose(g.perm).compose(vmap[src].inverse()).ordered_index());
            } else {
                image[dest] = pre.len();
                pre.push(dest);
                vmap[dest] = vmap[src].compose(g.perm.inverse());
                actions.push(1);
            }
        }
        img += 1;
    }
    let size = pre.len();
    let mut out = String::new();
    let width = if size < 63 {
        out.push(schar(size));
        1
    } else {
        let mut w = 0;
        let mut x = size;
        while x > 0 {
            x >>= 6;
            w += 1;
        }
        out.push(schar(63));
        out.push(schar(w));
        push_value(&mut out, size, w);
        w
    };
    for chunk in actions.chunks(3) {
        let mut v = 0usize;
        for (k, &a) in chunk.iter().enumerate() {
            v |= (a as usize) << (2 * k);
        }
        out.push(schar(v));
    }
    for d in dests {
        push_value(&mut out, d, width);
    }
    for p in perms {
        out.push(schar(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_census_knot() {
        let t = decode_isosig("gLLMQaedfdffjxaxjkn").unwrap();
        assert_eq!(t.tet_count(), 6);
        let t = decode_isosig("hLAPzkbcbeefgghhwjsahr").unwrap();
        assert_eq!(t.tet_count(), 7);
    }

    #[test]
    fn bad_character_reports_offset() {
        match decode_isosig("g!!!") {
            Err(Error::Decode { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected decode error, got {other:?}"),
        }
    }

    #[test]
    fn truncation_is_an_error() {
        let s = "gLLMQaedfdffjxaxjkn";
        for cut in 1..s.len() {
            assert!(decode_isosig(&s[..cut]).is_err(), "prefix of length {cut} decoded");
        }
    }

    #[test]
    fn roundtrip_is_identity_on_canonical_input() {
        for s in ["gLLMQaedfdffjxaxjkn", "hLAPzkbcbeefgghhwjsahr", "cPcbbbiht", "cPcbbbdxm"] {
            assert_eq!(encode_isosig(&decode_isosig(s).unwrap()), s);
        }
    }

    #[test]
    fn one_tetrahedron_roundtrip() {
        let p = Perm4([1, 0, 3, 2]);
        let q = p.inverse();
        let g = |perm| Gluing { tet: 0, perm };
        // faces 0<->1 and 2<->3 of a single tetrahedron
        let t = Triangulation::new(vec![[g(p), g(q), g(p), g(q)]]).unwrap();
        let s = encode_isosig(&t);
        let back = decode_isosig(&s).unwrap();
        assert_eq!(back.tet_count(), 1);
        assert_eq!(encode_isosig(&back), s);
    }

    #[test]
    fn large_size_prefix_roundtrips() {
        let mut out = String::new();
        push_value(&mut out, 4000, 2);
        let mut r = Reader { bytes: out.as_bytes(), pos: 0 };
        assert_eq!(r.value(2).unwrap(), 4000);
    }
}
