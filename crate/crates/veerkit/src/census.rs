//! Loading census files and picking out the entries matching a predicted
//! Montesinos triangulation.

use crate::branched::ladderpole_counts;
use crate::error::{Error, Result};
use crate::surgery::{euler_e, predict_stats, MontesinosParams, TriangulationStats};
use crate::taut::{split_entry, VeeringTriangulation};
use crate::tri::{decode_isosig, dual_graph, has_doubled_edge, has_triangle, homology_h1, AbelianGroup};
use serde::Serialize;
use std::io::BufRead;
use std::path::Path;
use std::sync::OnceLock;

/// Invariants of one census entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryStats {
    pub tets: usize,
    pub blue: usize,
    pub red: usize,
    pub cusps: usize,
    /// Ladderpole curves on each end.
    pub ladderpoles: Vec<usize>,
    pub h1: AbelianGroup,
    pub doubled_edge: bool,
    pub triangles: bool,
}

#[derive(Debug)]
pub struct CensusEntry {
    /// 1-based line in the source.
    pub line: usize,
    pub raw: String,
    pub tets: usize,
    stats: OnceLock<std::result::Result<EntryStats, String>>,
}

impl CensusEntry {
    pub fn isosig(&self) -> &str {
        self.raw.rsplit_once('_').map(|(s, _)| s).unwrap_or(&self.raw)
    }

    pub fn digits(&self) -> &str {
        self.raw.rsplit_once('_').map(|(_, d)| d).unwrap_or("")
    }

    /// Computed on first use and cached.
    pub fn stats(&self) -> Result<&EntryStats> {
        self.stats
            .get_or_init(|| entry_stats(&self.raw).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::NotVeering(e.clone()))
    }
}

impl Clone for CensusEntry {
    fn clone(&self) -> Self {
        let stats = OnceLock::new();
        if let Some(s) = self.stats.get() {
            let _ = stats.set(s.clone());
        }
        Self { line: self.line, raw: self.raw.clone(), tets: self.tets, stats }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalformedLine {
    pub line: usize,
    pub text: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub malformed: Vec<MalformedLine>,
}

fn parse_line(line: usize, text: &str) -> std::result::Result<CensusEntry, String> {
    let (sig, digits) = split_entry(text).map_err(|e| e.to_string())?;
    if let Some(c) = digits.chars().find(|c| !matches!(c, '0'..='2')) {
        return Err(format!("angle digit {c:?} is not 0, 1 or 2"));
    }
    let tri = decode_isosig(sig).map_err(|e| e.to_string())?;
    if digits.len() != tri.tet_count() {
        return Err(format!("{} angle digits for {} tetrahedra", digits.len(), tri.tet_count()));
    }
    Ok(CensusEntry { line, raw: text.to_string(), tets: tri.tet_count(), stats: OnceLock::new() })
}

/// Reads `<isosig>_<digits>` lines. Blank lines and `#` comments are
/// skipped, a trailing whitespace-separated field is ignored, and bad lines
/// are collected rather than aborting the load.
pub fn read_census(reader: impl BufRead) -> std::io::Result<Census> {
    let mut census = Census::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.split_whitespace().next().unwrap_or("");
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match parse_line(i + 1, text) {
            Ok(e) => census.entries.push(e),
            Err(reason) => census.malformed.push(MalformedLine { line: i + 1, text: text.to_string(), reason }),
        }
    }
    Ok(census)
}

pub fn load_census(path: impl AsRef<Path>) -> std::io::Result<Census> {
    let f = std::fs::File::open(path)?;
    read_census(std::io::BufReader::new(f))
}

pub fn parse_census(text: &str) -> Census {
    read_census(text.as_bytes()).expect("reading from memory does not fail")
}

pub fn entry_stats(entry: &str) -> Result<EntryStats> {
    let vt = VeeringTriangulation::from_entry(entry)?;
    let g = dual_graph(&vt.tri);
    Ok(EntryStats {
        tets: vt.tet_count(),
        blue: vt.blue(),
        red: vt.red(),
        cusps: vt.cusp_count(),
        ladderpoles: ladderpole_counts(&vt)?.ladderpoles,
        h1: homology_h1(&vt.tri, None)?,
        doubled_edge: has_doubled_edge(&g),
        triangles: has_triangle(&g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Counts,
    Veering,
    Ladderpoles,
    Homology,
    DoubledEdge,
    Triangles,
}

pub const DOUBLED_EDGE_REASON: &str = "dual graph has a pair of vertices with two edges between them";
pub const TRIANGLE_REASON: &str = "dual graph has triangles";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub filter: Filter,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub entry: String,
    pub line: usize,
    pub trail: Vec<Step>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eliminated_by: Option<Filter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<EntryStats>,
}

impl Candidate {
    pub fn survived(&self) -> bool {
        self.eliminated_by.is_none()
    }

    pub fn reason(&self) -> Option<&str> {
        self.trail.iter().find(|s| !s.passed).and_then(|s| s.reason.as_deref())
    }

    fn record(&mut self, filter: Filter, failure: Option<String>) {
        let passed = failure.is_none();
        self.trail.push(Step { filter, passed, reason: failure });
        if !passed {
            self.eliminated_by = Some(filter);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchQuery {
    pub p: MontesinosParams,
    pub h1_rank: usize,
    pub allow_doubled: bool,
    pub allow_triangles: bool,
}

impl MatchQuery {
    pub fn new(p: MontesinosParams, h1_rank: usize) -> Self {
        Self { p, h1_rank, allow_doubled: false, allow_triangles: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub query: MatchQuery,
    pub e: String,
    pub predicted: TriangulationStats,
    /// Entries whose tetrahedron count matches, in census order.
    pub candidates: Vec<Candidate>,
    /// Entries with the wrong tetrahedron count.
    pub skipped: usize,
    pub selected: Vec<String>,
}

/// Computes stats for the given entries on a small worker pool.
fn warm(entries: &[&CensusEntry]) {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len().max(1));
    let chunk = entries.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        for part in entries.chunks(chunk) {
            s.spawn(move || {
                for e in part {
                    let _ = e.stats();
                }
            });
        }
    });
}

/// Runs the filters in order: colour counts, one ladderpole per end, free
/// homology of the given rank, then (only while several remain) the dual
/// graph predicates.
pub fn match_census(query: &MatchQuery, census: &Census) -> Result<MatchReport> {
    let e = euler_e(&query.p)?;
    let predicted = predict_stats(&query.p)?;
    let near: Vec<&CensusEntry> = census.entries.iter().filter(|c| c.tets as u64 == predicted.tets).collect();
    warm(&near);
    let mut candidates = Vec::new();
    for entry in &near {
        let mut c = Candidate { entry: entry.raw.clone(), line: entry.line, trail: Vec::new(), eliminated_by: None, stats: None };
        let stats = match entry.stats() {
            Ok(s) => s,
            Err(err) => {
                c.record(Filter::Veering, Some(err.to_string()));
                candidates.push(c);
                continue;
            }
        };
        c.stats = Some(stats.clone());
        let (b, r) = (stats.blue as u64, stats.red as u64);
        let counts_ok = (b, r) == (predicted.blue, predicted.red) || (r, b) == (predicted.blue, predicted.red);
        c.record(
            Filter::Counts,
            (!counts_ok).then(|| format!("{b} blue and {r} red edges, expected {} and {}", predicted.blue, predicted.red)),
        );
        if c.survived() {
            let ok = stats.ladderpoles.iter().all(|&n| n == 1);
            c.record(Filter::Ladderpoles, (!ok).then(|| format!("ladderpole curves per end {:?}", stats.ladderpoles)));
        }
        if c.survived() {
            let ok = stats.h1.is_free() && stats.h1.rank == query.h1_rank;
            c.record(Filter::Homology, (!ok).then(|| format!("H1 = {}, expected Z^{}", stats.h1, query.h1_rank)));
        }
        candidates.push(c);
    }
    let alive = |cs: &[Candidate]| cs.iter().filter(|c| c.survived()).count();
    if !query.allow_doubled && alive(&candidates) > 1 {
        for c in candidates.iter_mut().filter(|c| c.survived()) {
            let bad = c.stats.as_ref().is_some_and(|s| s.doubled_edge);
            c.record(Filter::DoubledEdge, bad.then(|| DOUBLED_EDGE_REASON.to_string()));
        }
    }
    if !query.allow_triangles && alive(&candidates) > 1 {
        for c in candidates.iter_mut().filter(|c| c.survived()) {
            let bad = c.stats.as_ref().is_some_and(|s| s.triangles);
            c.record(Filter::Triangles, bad.then(|| TRIANGLE_REASON.to_string()));
        }
    }
    let selected = candidates.iter().filter(|c| c.survived()).map(|c| c.entry.clone()).collect();
    Ok(MatchReport {
        query: query.clone(),
        e: e.to_string(),
        predicted,
        skipped: census.entries.len() - near.len(),
        candidates,
        selected,
    })
}
