use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use veerkit::branched::branch_report;
use veerkit::census::{load_census, match_census, read_census, Census, MatchQuery};
use veerkit::flow::{build_flow_graph, cycle_histogram, enumerate_cycles, reduce, to_dot, to_json, Digraph, EdgeLabel};
use veerkit::geodesic::{
    build_markov_graph, flow_box_count, hexagon_decomposition, reduce_markov, restrict_to_half, Fatgraph, Half,
    PARALLEL_WARNING,
};
use veerkit::surgery::{canonicalize, classify, euler_e, montesinos_label, predict_stats, MontesinosParams};
use veerkit::taut::diagnose;
use veerkit::VeeringTriangulation;

const FORMAT_VAR: &str = "VEERKIT_FORMAT";

#[derive(Parser)]
#[command(name = "veerkit", version, about = "Veering triangulations, flow graphs and Markov graphs of geodesic flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    First,
    Second,
}

#[derive(Subcommand)]
enum Command {
    /// Decode `<isosig>_<digits>` and check the taut, transverse taut and
    /// veering conditions. Exit status 1 if any fails.
    Validate {
        entry: String,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Flow graph of a veering triangulation: one vertex per edge, three
    /// arcs per tetrahedron into its bottom edge.
    Flowgraph {
        entry: String,
        /// Remove cycles of out-degree-one vertices first.
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Cusps, triple points and ladderpole curves of the dual branched surface.
    Cusps {
        entry: String,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Predicted tetrahedra and edge colours for the Montesinos link
    /// complement attached to cone orders p.
    Montesinos {
        /// Comma-separated cone orders, at least three, each >= 2.
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Filter a census file against the predicted counts, one ladderpole
    /// curve per end, free homology of a given rank, then dual graph shape.
    CensusMatch {
        /// Census file with one `<isosig>_<digits>` per line, or `-` for stdin.
        #[arg(long)]
        census: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        h1_rank: usize,
        /// Keep candidates whose dual graph has two edges between a pair of vertices.
        #[arg(long)]
        allow_doubled: bool,
        /// Keep candidates whose dual graph has triangles.
        #[arg(long)]
        allow_triangles: bool,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Markov graph of the geodesic flow built from a 4-valent fatgraph.
    Geodesic {
        #[arg(long)]
        fatgraph: PathBuf,
        #[arg(long)]
        reduced: bool,
        /// Comma-separated fatgraph edges forming a separating union of
        /// curves; only arrows strictly on one side are kept.
        #[arg(long)]
        half: Option<String>,
        /// Side kept by --half; `first` contains region 0.
        #[arg(long, value_enum, default_value = "first")]
        side: Side,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Count cycles up to a given length in a flow graph or Markov graph.
    Cycles {
        entry: Option<String>,
        #[arg(long, conflicts_with = "entry")]
        fatgraph: Option<PathBuf>,
        #[arg(long)]
        max_len: usize,
        /// Also list every cycle.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
    /// Fatgraph of a genus-g surface cut into hexagons, as JSON.
    Hexagons {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, env = FORMAT_VAR)]
        format: Option<Format>,
    },
}

/// An error that comes from reading or writing files.
#[derive(Debug)]
struct IoFailure(anyhow::Error);

impl std::fmt::Display for IoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for IoFailure {}

fn io<T>(r: std::io::Result<T>, what: impl FnOnce() -> String) -> Result<T> {
    r.map_err(|e| IoFailure(anyhow!(e).context(what())).into())
}

/// Result of a subcommand: what to print and whether validation passed.
struct Outcome {
    json: Value,
    text: Option<String>,
    dot: Option<String>,
    ok: bool,
}

impl Outcome {
    fn json(json: Value) -> Self {
        Self { json, text: None, dot: None, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // exit status 2 is kept for I/O failures
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = match &cli.command {
        Command::Validate { format, .. }
        | Command::Flowgraph { format, .. }
        | Command::Cusps { format, .. }
        | Command::Montesinos { format, .. }
        | Command::CensusMatch { format, .. }
        | Command::Geodesic { format, .. }
        | Command::Cycles { format, .. }
        | Command::Hexagons { format, .. } => format.unwrap_or(Format::Json),
    };
    match run(cli.command).and_then(|o| emit(o, format)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<IoFailure>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(o: Outcome, format: Format) -> Result<bool> {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&o.json)? + "\n",
        Format::Dot => o.dot.ok_or_else(|| anyhow!("dot output is only available for graphs"))?,
        Format::Text => o.text.unwrap_or_else(|| text_of(&o.json, 0)),
    };
    io(std::io::Write::write_all(&mut std::io::stdout().lock(), out.as_bytes()), || "writing output".into())?;
    Ok(o.ok)
}

/// Indented key/value rendering of a JSON value.
fn text_of(v: &Value, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", text_of(x, depth + 1)),
                _ => format!("{pad}{k}: {}\n", x),
            })
            .collect(),
        _ => format!("{pad}{v}\n"),
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { entry, .. } => validate(&entry),
        Command::Flowgraph { entry, reduced, .. } => flowgraph(&entry, reduced),
        Command::Cusps { entry, .. } => cusps(&entry),
        Command::Montesinos { p, .. } => montesinos(&p),
        Command::CensusMatch { census, p, h1_rank, allow_doubled, allow_triangles, .. } => {
            let mut q = MatchQuery::new(params(&p)?, h1_rank);
            q.allow_doubled = allow_doubled;
            q.allow_triangles = allow_triangles;
            census_match(&census, q)
        }
        Command::Geodesic { fatgraph, reduced, half, side, .. } => geodesic(&fatgraph, reduced, half.as_deref(), side),
        Command::Cycles { entry, fatgraph, max_len, list, .. } => match (entry, fatgraph) {
            (Some(e), None) => {
                let vt = veering(&e)?;
                Ok(cycles(&build_flow_graph(&vt), max_len, list))
            }
            (None, Some(path)) => {
                let f = read_fatgraph(&path)?;
                Ok(cycles(&build_markov_graph(&f).graph, max_len, list))
            }
            _ => bail!("give either an entry or --fatgraph"),
        },
        Command::Hexagons { genus, .. } => {
            let f = hexagon_decomposition(genus)?;
            Ok(Outcome::json(serde_json::to_value(f.to_json())?))
        }
    }
}

fn params(s: &str) -> Result<MontesinosParams> {
    Ok(s.parse::<MontesinosParams>()?)
}

fn veering(entry: &str) -> Result<VeeringTriangulation> {
    VeeringTriangulation::from_entry(entry).with_context(|| format!("{entry} is not a veering triangulation"))
}

fn validate(entry: &str) -> Result<Outcome> {
    let d = diagnose(entry)?;
    for e in &d.errors {
        eprintln!("{e}");
    }
    let ok = d.taut && d.transverse_taut && d.veering;
    let text = format!(
        "{entry}\n  tetrahedra: {}\n  taut: {}\n  transverse taut: {}\n  veering: {}\n",
        d.tets, d.taut, d.transverse_taut, d.veering
    );
    Ok(Outcome { json: serde_json::to_value(&d)?, text: Some(text), dot: None, ok })
}

fn graph_outcome<L: EdgeLabel + Clone>(g: &Digraph<L>, name: &str, extra: Value) -> Outcome {
    let mut json = to_json(g);
    if let (Value::Object(m), Value::Object(x)) = (&mut json, extra) {
        m.extend(x);
    }
    let text = format!("{} vertices, {} edges\n", g.vertex_count(), g.edge_count());
    Outcome { json, text: Some(text), dot: Some(to_dot(g, name)), ok: true }
}

fn flowgraph(entry: &str, reduced: bool) -> Result<Outcome> {
    let vt = veering(entry)?;
    let g = build_flow_graph(&vt);
    if !reduced {
        return Ok(graph_outcome(&g, "flow", json!({})));
    }
    let r = reduce(&g);
    Ok(graph_outcome(&r.graph, "flow", json!({"kept": r.kept, "removed_cycles": r.removed_cycles})))
}

fn cusps(entry: &str) -> Result<Outcome> {
    let vt = veering(entry)?;
    let r = branch_report(&vt)?;
    Ok(Outcome::json(json!({
        "cusps": vt.cusp_count(),
        "ladderpoles": r.ladderpoles.values().collect::<Vec<_>>(),
        "triple_points": r.triple_points,
        "branch_components": r.components.len(),
    })))
}

fn montesinos(p: &str) -> Result<Outcome> {
    let p = params(p)?;
    let e = euler_e(&p)?;
    let s = predict_stats(&p)?;
    let (family, k) = classify(&p)?;
    let label: Vec<String> = montesinos_label(&p).iter().map(|r| r.to_string()).collect();
    Ok(Outcome::json(json!({
        "p": p.p(),
        "canonical": canonicalize(&p).p(),
        "e": e.to_string(),
        "label": label,
        "family": family,
        "k": k,
        "tets": s.tets,
        "blue": s.blue,
        "red": s.red,
    })))
}

fn census_match(source: &str, q: MatchQuery) -> Result<Outcome> {
    let census: Census = if source == "-" {
        let mut buf = String::new();
        io(std::io::stdin().lock().read_to_string(&mut buf), || "reading census from stdin".into())?;
        io(read_census(BufReader::new(buf.as_bytes())), || "reading census from stdin".into())?
    } else {
        io(load_census(source), || format!("reading census {source}"))?
    };
    for m in &census.malformed {
        eprintln!("line {}: {}: {}", m.line, m.text, m.reason);
    }
    let report = match_census(&q, &census)?;
    let mut json = serde_json::to_value(&report)?;
    json["malformed"] = serde_json::to_value(&census.malformed)?;
    let p = report.predicted;
    let mut text = format!("predicted {} tetrahedra ({} blue, {} red)\n", p.tets, p.blue, p.red);
    for c in &report.candidates {
        match c.eliminated_by {
            None => text.push_str(&format!("selected   {}\n", c.entry)),
            Some(_) => text.push_str(&format!("eliminated {}: {}\n", c.entry, c.reason().unwrap_or(""))),
        }
    }
    Ok(Outcome { json, text: Some(text), dot: None, ok: true })
}

fn read_fatgraph(path: &Path) -> Result<Fatgraph> {
    let s = io(std::fs::read_to_string(path), || format!("reading {}", path.display()))?;
    Fatgraph::from_json_str(&s).with_context(|| format!("loading fatgraph {}", path.display()))
}

fn edge_set(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad edge id {t:?}")))
        .collect()
}

fn geodesic(path: &Path, reduced: bool, half: Option<&str>, side: Side) -> Result<Outcome> {
    let f = read_fatgraph(path)?;
    eprintln!("warning: {PARALLEL_WARNING}");
    let mut mg = build_markov_graph(&f);
    if let Some(h) = half {
        let side = match side {
            Side::First => Half::First,
            Side::Second => Half::Second,
        };
        mg = restrict_to_half(&mg, &f, &edge_set(h)?, side)?;
    }
    let mut extra = json!({
        "aliases": mg.aliases.iter().map(|a| a.iter().map(|k| k.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "flow_boxes": flow_box_count(&f),
        "euler_characteristic": f.euler_characteristic(),
    });
    if reduced {
        let r = reduce_markov(&mg);
        extra["removed_cycles"] = json!(r.removed_cycles);
        extra["aliases"] = json!(r
            .graph
            .aliases
            .iter()
            .map(|a| a.iter().map(|k| k.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        mg = r.graph;
    }
    Ok(graph_outcome(&mg.graph, "markov", extra))
}

fn cycles<L: Clone>(g: &Digraph<L>, max_len: usize, list: bool) -> Outcome {
    let cs = enumerate_cycles(g, max_len);
    let hist = cycle_histogram(&cs);
    let mut json = json!({
        "max_len": max_len,
        "total": cs.len(),
        "by_length": hist.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
    });
    if list {
        json["cycles"] = serde_json::to_value(&cs).expect("serialisable");
    }
    let text = hist.iter().map(|(k, v)| format!("length {k}: {v}\n")).collect::<String>() + &format!("total: {}\n", cs.len());
    Outcome { json, text: Some(text), dot: None, ok: true }
}
