//! Taut angle structures, transverse coorientations and veering colours.

use crate::error::{Error, Result};
use crate::tri::{decode_isosig, edge_index, Triangulation, EDGE_VERTICES};
use serde::Serialize;

/// The π-pair selected by a census digit: the edge from vertex 0 to vertex
/// `d + 1`, and the edge opposite it.
pub fn pi_pair(digit: u8) -> (usize, usize) {
    let e = digit as usize;
    (e, 5 - e)
}

/// One π-pair selector in {0,1,2} per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautStructure {
    pub selectors: Vec<u8>,
}

impl TautStructure {
    pub fn is_pi(&self, tet: usize, edge: usize) -> bool {
        let (a, b) = pi_pair(self.selectors[tet]);
        edge == a || edge == b
    }
}

pub fn parse_taut_angles(digits: &str, t: &Triangulation) -> Result<TautStructure> {
    let count = digits.chars().count();
    if count != t.tet_count() {
        return Err(Error::MalformedEntry(format!(
            "{count} angle digits for {} tetrahedra",
            t.tet_count()
        )));
    }
    let mut selectors = Vec::with_capacity(count);
    for (i, c) in digits.chars().enumerate() {
        match c {
            '0'..='2' => selectors.push(c as u8 - b'0'),
            _ => return Err(Error::MalformedEntry(format!("bad angle digit {c:?} at position {i}"))),
        }
    }
    Ok(TautStructure { selectors })
}

/// Splits `<isosig>_<digits>` at the last underscore.
pub fn split_entry(entry: &str) -> Result<(&str, &str)> {
    let entry = entry.trim();
    entry
        .rsplit_once('_')
        .ok_or_else(|| Error::MalformedEntry(format!("missing '_' in {entry:?}")))
}

/// Result of the angle-sum check: edge classes whose π count is not two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TautReport {
    pub valid: bool,
    /// (edge class, number of π incidences) for every failing edge.
    pub violations: Vec<(usize, usize)>,
}

pub fn validate_taut(t: &Triangulation, a: &TautStructure) -> TautReport {
    let (emap, count) = t.edge_class_map();
    let mut pis = vec![0usize; count];
    for tet in 0..t.tet_count() {
        for e in 0..6 {
            if a.is_pi(tet, e) {
                pis[emap[tet][e]] += 1;
            }
        }
    }
    let violations: Vec<(usize, usize)> =
        pis.iter().enumerate().filter(|(_, &k)| k != 2).map(|(c, &k)| (c, k)).collect();
    TautReport { valid: violations.is_empty() && a.selectors.len() == t.tet_count(), violations }
}

/// Face coorientations: `outward[t][f]` when face `f` points out of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coorientation {
    pub outward: Vec<[bool; 4]>,
}

impl Coorientation {
    pub fn reversed(&self) -> Coorientation {
        Coorientation { outward: self.outward.iter().map(|r| r.map(|x| !x)).collect() }
    }

    /// Checks the transverse-taut constraints against a taut structure.
    pub fn is_valid_for(&self, t: &Triangulation, a: &TautStructure) -> bool {
        for tet in 0..t.tet_count() {
            let (e1, e2) = pi_pair(a.selectors[tet]);
            let out = self.outward[tet];
            if out.iter().filter(|&&o| o).count() != 2 {
                return false;
            }
            // the two outward faces share a π edge
            let shared: Vec<usize> = (0..4).filter(|&v| !out[v]).collect();
            let top = edge_index(shared[0], shared[1]);
            if top != e1 && top != e2 {
                return false;
            }
            for f in 0..4 {
                let g = t.gluing(tet, f);
                if self.outward[g.tet][g.perm.apply(f)] == out[f] {
                    return false;
                }
            }
        }
        true
    }
}

/// Propagates the top/bottom choice across face gluings. The returned
/// representative has face 0 of the lowest tetrahedron of each component
/// cooriented outward.
pub fn derive_transverse_taut(t: &Triangulation, a: &TautStructure) -> Result<Coorientation> {
    t.orientation()?;
    let n = t.tet_count();
    // top_holds_zero[t]: whether the top edge is the π edge through vertex 0
    let mut choice: Vec<Option<bool>> = vec![None; n];
    let outward_of = |tet: usize, top_holds_zero: bool| -> [bool; 4] {
        let (e1, e2) = pi_pair(a.selectors[tet]);
        let bottom = if top_holds_zero { e2 } else { e1 };
        let (x, y) = EDGE_VERTICES[bottom];
        let mut out = [false; 4];
        out[x] = true;
        out[y] = true;
        out
    };
    for start in 0..n {
        if choice[start].is_some() {
            continue;
        }
        // face 0 outward means vertex 0 lies on the bottom edge
        choice[start] = Some(false);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let out = outward_of(x, choice[x].expect("set"));
            for f in 0..4 {
                let g = t.gluing(x, f);
                let gf = g.perm.apply(f);
                let want_out = !out[f];
                // which choice at g.tet makes face gf point the wanted way
                let mut fits = [false, false];
                for (i, c) in [false, true].into_iter().enumerate() {
                    fits[i] = outward_of(g.tet, c)[gf] == want_out;
                }
                match choice[g.tet] {
                    None => {
                        let c = !fits[0];
                        choice[g.tet] = Some(c);
                        stack.push(g.tet);
                    }
                    Some(c) => {
                        if !fits[c as usize] {
                            return Err(Error::NotTransverseTaut(format!(
                                "face {f} of tetrahedron {x} and face {gf} of tetrahedron {} disagree",
                                g.tet
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(Coorientation {
        outward: (0..n).map(|tet| outward_of(tet, choice[tet].expect("all visited"))).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// One colour per edge class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

/// Per-tetrahedron geometry read from above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TetRoles {
    /// Tetrahedron edge indices of the top and bottom π edges.
    pub top: usize,
    pub bottom: usize,
    /// Square corners `[a, b, c, d]` anticlockwise from above with the top
    /// edge `a-c` and bottom edge `b-d`.
    pub square: [usize; 4],
    /// Equatorial edges `ab, bc, cd, da`.
    pub equator: [usize; 4],
    /// Colours of `equator`; always red, blue, red, blue.
    pub equator_colors: [Color; 4],
    pub top_faces: [usize; 2],
    pub bottom_faces: [usize; 2],
}

/// Sign that the vertex order `[a, b, c, d]` must have (relative to the
/// tetrahedron's orientation) to be read anticlockwise from above. Fixed so
/// that colours agree with the published census colourings.
const ANTICLOCKWISE_SIGN: i32 = 1;

fn perm_sign(p: [usize; 4]) -> i32 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn roles_for(tet_sign: i32, a: &TautStructure, c: &Coorientation, tet: usize) -> TetRoles {
    let (e1, e2) = pi_pair(a.selectors[tet]);
    let out = c.outward[tet];
    let (x, y) = EDGE_VERTICES[e1];
    // e1 is top when its endpoints are not on outward faces
    let (top, bottom) = if !out[x] && !out[y] { (e1, e2) } else { (e2, e1) };
    let (ta, tc) = EDGE_VERTICES[top];
    let (mut b, mut d) = EDGE_VERTICES[bottom];
    if tet_sign * perm_sign([ta, b, tc, d]) != ANTICLOCKWISE_SIGN {
        std::mem::swap(&mut b, &mut d);
    }
    let square = [ta, b, tc, d];
    let equator = [edge_index(ta, b), edge_index(b, tc), edge_index(tc, d), edge_index(d, ta)];
    TetRoles {
        top,
        bottom,
        square,
        equator,
        equator_colors: [Color::Red, Color::Blue, Color::Red, Color::Blue],
        top_faces: [b, d],
        bottom_faces: [ta, tc],
    }
}

/// Colours forced by each tetrahedron, checked for agreement. With
/// `reversed` the ambient orientation is flipped, which swaps every colour.
pub fn derive_veering_colors_oriented(
    t: &Triangulation,
    a: &TautStructure,
    c: &Coorientation,
    reversed: bool,
) -> Result<EdgeColoring> {
    let signs = t.orientation()?;
    let (emap, count) = t.edge_class_map();
    let mut colors: Vec<Option<Color>> = vec![None; count];
    for tet in 0..t.tet_count() {
        let s = if reversed { -signs[tet] } else { signs[tet] };
        let r = roles_for(s, a, c, tet);
        for (k, &e) in r.equator.iter().enumerate() {
            let class = emap[tet][e];
            let want = r.equator_colors[k];
            match colors[class] {
                None => colors[class] = Some(want),
                Some(have) if have != want => {
                    return Err(Error::NotVeering(format!(
                        "edge class {class} is forced both {have:?} and {want:?} (tetrahedron {tet})"
                    )))
                }
                _ => {}
            }
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::NotVeering(format!("edge class {i} is never equatorial"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeColoring { colors })
}

pub fn derive_veering_colors(t: &Triangulation, a: &TautStructure, c: &Coorientation) -> Result<EdgeColoring> {
    derive_veering_colors_oriented(t, a, c, false)
}

/// A validated veering triangulation with its derived data.
#[derive(Clone, Debug)]
pub struct VeeringTriangulation {
    pub tri: Triangulation,
    pub taut: TautStructure,
    pub coorientation: Coorientation,
    pub colors: EdgeColoring,
    pub orientation: Vec<i32>,
    /// Edge class of every (tetrahedron, edge).
    pub edge_class: Vec<[usize; 6]>,
    roles: Vec<TetRoles>,
}

impl VeeringTriangulation {
    pub fn new(tri: Triangulation, taut: TautStructure) -> Result<Self> {
        let report = validate_taut(&tri, &taut);
        if !report.valid {
            return Err(Error::NotTaut(format!("angle sums fail at edges {:?}", report.violations)));
        }
        let orientation = tri.orientation()?;
        let coorientation = derive_transverse_taut(&tri, &taut)?;
        let colors = derive_veering_colors(&tri, &taut, &coorientation)?;
        let (edge_class, _) = tri.edge_class_map();
        let roles = (0..tri.tet_count())
            .map(|i| roles_for(orientation[i], &taut, &coorientation, i))
            .collect();
        Ok(VeeringTriangulation { tri, taut, coorientation, colors, orientation, edge_class, roles })
    }

    /// Parses and validates a `<isosig>_<digits>` entry.
    pub fn from_entry(entry: &str) -> Result<Self> {
        let (sig, digits) = split_entry(entry)?;
        let tri = decode_isosig(sig)?;
        let taut = parse_taut_angles(digits, &tri)?;
        Self::new(tri, taut)
    }

    pub fn tet_count(&self) -> usize {
        self.tri.tet_count()
    }

    pub fn roles(&self) -> &[TetRoles] {
        &self.roles
    }

    pub fn color_of(&self, tet: usize, edge: usize) -> Color {
        self.colors.colors[self.edge_class[tet][edge]]
    }

    /// Colour of the top edge of `tet`.
    pub fn tet_color(&self, tet: usize) -> Color {
        self.color_of(tet, self.roles[tet].top)
    }

    pub fn blue(&self) -> usize {
        self.colors.count(Color::Blue)
    }

    pub fn red(&self) -> usize {
        self.colors.count(Color::Red)
    }

    pub fn cusp_count(&self) -> usize {
        self.tri.vertex_class_map().1
    }
}

pub fn tet_roles(vt: &VeeringTriangulation) -> &[TetRoles] {
    vt.roles()
}

/// Validation summary of a census entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub taut: bool,
    pub transverse_taut: bool,
    pub veering: bool,
    pub tets: usize,
    pub blue: Option<usize>,
    pub red: Option<usize>,
    pub cusps: usize,
    pub errors: Vec<String>,
}

/// Runs every check on an entry, recording the first failure of each stage.
/// Decode and format errors are returned as errors.
pub fn diagnose(entry: &str) -> Result<Diagnostics> {
    let (sig, digits) = split_entry(entry)?;
    let tri = decode_isosig(sig)?;
    let taut = parse_taut_angles(digits, &tri)?;
    let cusps = tri.vertex_class_map().1;
    let mut d = Diagnostics {
        taut: false,
        transverse_taut: false,
        veering: false,
        tets: tri.tet_count(),
        blue: None,
        red: None,
        cusps,
        errors: Vec::new(),
    };
    let report = validate_taut(&tri, &taut);
    if !report.valid {
        d.errors.push(format!("not taut: angle sums fail at edges {:?}", report.violations));
        return Ok(d);
    }
    d.taut = true;
    let c = match derive_transverse_taut(&tri, &taut) {
        Ok(c) => c,
        Err(e) => {
            d.errors.push(e.to_string());
            return Ok(d);
        }
    };
    d.transverse_taut = true;
    match derive_veering_colors(&tri, &taut, &c) {
        Ok(col) => {
            d.veering = true;
            d.blue = Some(col.count(Color::Blue));
            d.red = Some(col.count(Color::Red));
        }
        Err(e) => d.errors.push(e.to_string()),
    }
    Ok(d)
}
