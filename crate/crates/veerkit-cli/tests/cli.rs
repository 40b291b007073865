use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const KNOT: &str = "gLLMQaedfdffjxaxjkn_200211";

fn veerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veerkit")).args(args).env_remove("VEERKIT_FORMAT").output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("veerkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_accepts_census_knot() {
    let o = veerkit(&["validate", KNOT]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_of(&o);
    assert_eq!(j["taut"], true);
    assert_eq!(j["veering"], true);
    assert_eq!(j["tets"], 6);
}

#[test]
fn validate_rejects_zero_angles() {
    let o = veerkit(&["validate", "gLLMQaedfdffjxaxjkn_000000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not taut"));
    assert_eq!(json_of(&o)["taut"], false);
}

#[test]
fn validate_rejects_garbage() {
    assert_eq!(veerkit(&["validate", "no-underscore"]).status.code(), Some(1));
    assert_eq!(veerkit(&["validate", "gLLMQaedfdffjxaxjkn_20021"]).status.code(), Some(1));
}

#[test]
fn montesinos_counts() {
    let j = json_of(&veerkit(&["montesinos", "--p", "2,3,7"]));
    assert_eq!((j["tets"].as_u64(), j["blue"].as_u64(), j["red"].as_u64()), (Some(3), Some(2), Some(1)));
    assert_eq!(j["e"], "-1/42");
    assert_eq!(j["label"], serde_json::json!(["3/2", "-2/3", "-6/7"]));
    for k in 1..=10u64 {
        let p = format!("2,3,{}", 6 + k);
        let j = json_of(&veerkit(&["montesinos", "--p", &p]));
        assert_eq!(j["tets"].as_u64(), Some(2 * k + 1));
        assert_eq!(j["blue"].as_u64(), Some(2 * k));
        assert_eq!(j["red"].as_u64(), Some(1));
    }
    let o = veerkit(&["montesinos", "--p", "2,3,6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Anosov-admissible"));
}

#[test]
fn output_is_deterministic_with_sorted_keys() {
    let a = veerkit(&["montesinos", "--p", "2,6,6"]).stdout;
    let b = veerkit(&["montesinos", "--p", "2,6,6"]).stdout;
    assert_eq!(a, b);
    let j: Value = serde_json::from_slice(&a).unwrap();
    let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
    let text = String::from_utf8(a.clone()).unwrap();
    let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn flowgraph_json_and_dot() {
    let j = json_of(&veerkit(&["flowgraph", KNOT]));
    assert_eq!(j["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(j["edges"].as_array().unwrap().len(), 18);
    assert_eq!(j["orderings"], "absent");
    let o = veerkit(&["flowgraph", KNOT, "--format", "dot", "--reduced"]);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph flow {") && dot.trim_end().ends_with('}'));
    assert_eq!(veerkit(&["flowgraph", "gLLMQaedfdffjxaxjkn_000000"]).status.code(), Some(1));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(["flowgraph", KNOT])
        .env("VEERKIT_FORMAT", "dot")
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("digraph"));
    let o = Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(["flowgraph", KNOT, "--format", "json"])
        .env("VEERKIT_FORMAT", "dot")
        .output()
        .unwrap();
    assert!(json_of(&o).is_object());
}

#[test]
fn dot_is_refused_for_non_graphs() {
    assert_eq!(veerkit(&["montesinos", "--p", "2,3,7", "--format", "dot"]).status.code(), Some(1));
}

#[test]
fn cusps_report() {
    let j = json_of(&veerkit(&["cusps", "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100"]));
    assert_eq!(j["cusps"], 3);
    assert_eq!(j["ladderpoles"], serde_json::json!([1, 1, 1]));
}

#[test]
fn census_match_from_file_and_stdin() {
    let path = data("montesinos_candidates.txt");
    let j = json_of(&veerkit(&["census-match", "--census", &path, "--p", "2,6,6", "--h1-rank", "3"]));
    assert_eq!(j["selected"], serde_json::json!(["ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100"]));
    let text = serde_json::to_string(&j).unwrap();
    assert!(text.contains("two edges between them"));

    let mut child = Command::new(env!("CARGO_BIN_EXE_veerkit"))
        .args(["census-match", "--census", "-", "--p", "2,2,4,4", "--h1-rank", "4"])
        .env_remove("VEERKIT_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(&path).unwrap().as_slice()).unwrap();
    let o = child.wait_with_output().unwrap();
    let j = json_of(&o);
    assert_eq!(j["selected"], serde_json::json!(["qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200"]));
    assert!(serde_json::to_string(&j).unwrap().contains("dual graph has triangles"));
}

#[test]
fn census_match_flags_and_errors() {
    let path = data("montesinos_candidates.txt");
    let j = json_of(&veerkit(&["census-match", "--census", &path, "--p", "2,6,6", "--h1-rank", "3", "--allow-doubled"]));
    assert_eq!(j["selected"].as_array().unwrap().len(), 2);
    assert_eq!(veerkit(&["census-match", "--census", "/no/such/file", "--p", "2,6,6", "--h1-rank", "3"]).status.code(), Some(2));
    assert_eq!(veerkit(&["census-match", "--census", &path, "--p", "2,3,6", "--h1-rank", "1"]).status.code(), Some(1));
    let bad = temp("bad.txt");
    std::fs::write(&bad, "gLLMQaedfdffjxaxjkn_20021\n").unwrap();
    let o = veerkit(&["census-match", "--census", bad.to_str().unwrap(), "--p", "2,3,9", "--h1-rank", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(json_of(&o)["malformed"][0]["line"], 1);
}

#[test]
fn hexagons_feed_geodesic() {
    let o = veerkit(&["hexagons", "--genus", "2"]);
    let path = temp("g2.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();
    let j = json_of(&veerkit(&["geodesic", "--fatgraph", p]));
    assert_eq!(j["vertices"].as_array().unwrap().len(), 72);
    assert_eq!(j["edges"].as_array().unwrap().len(), 216);
    assert_eq!(j["edges"][0]["label"]["framing"], "fiber");
    assert!(j["orderings"].is_object());
    let r = json_of(&veerkit(&["geodesic", "--fatgraph", p, "--reduced"]));
    assert_eq!(r["vertices"], j["vertices"]);
    assert_eq!(r["removed_cycles"], serde_json::json!([]));
    let c = json_of(&veerkit(&["cycles", "--fatgraph", p, "--max-len", "3"]));
    assert!(c["total"].as_u64().unwrap() > 0);
    assert_eq!(veerkit(&["hexagons", "--genus", "1"]).status.code(), Some(1));
}

#[test]
fn geodesic_half_restriction() {
    let f = veerkit::geodesic::separated_hexagon_decomposition().unwrap();
    let path = temp("sep.json");
    std::fs::write(&path, serde_json::to_string(&f.0.to_json()).unwrap()).unwrap();
    let edges: Vec<String> = f.1.iter().map(|e| e.to_string()).collect();
    let edges = edges.join(",");
    let p = path.to_str().unwrap();
    let full = json_of(&veerkit(&["geodesic", "--fatgraph", p]));
    let a = json_of(&veerkit(&["geodesic", "--fatgraph", p, "--half", &edges]));
    let b = json_of(&veerkit(&["geodesic", "--fatgraph", p, "--half", &edges, "--side", "second"]));
    let n = |j: &Value| j["vertices"].as_array().unwrap().len();
    assert!(n(&a) > 0 && n(&b) > 0 && n(&a) + n(&b) < n(&full));
    assert_eq!(veerkit(&["geodesic", "--fatgraph", p, "--half", "0"]).status.code(), Some(1));
}

#[test]
fn geodesic_bad_input() {
    let bad = temp("bigon.json");
    std::fs::write(&bad, "{\"vertices\": [], \"pairing\": []}").unwrap();
    assert_eq!(veerkit(&["geodesic", "--fatgraph", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(veerkit(&["geodesic", "--fatgraph", "/no/such.json"]).status.code(), Some(2));
}

#[test]
fn cycles_on_flow_graph() {
    let j = json_of(&veerkit(&["cycles", KNOT, "--max-len", "6", "--list"]));
    assert_eq!(j["total"].as_u64().unwrap() as usize, j["cycles"].as_array().unwrap().len());
    assert_eq!(veerkit(&["cycles", "--max-len", "3"]).status.code(), Some(1));
}

#[test]
fn unknown_flags_and_help() {
    assert_eq!(veerkit(&["validate", KNOT, "--bogus"]).status.code(), Some(1));
    for sub in ["validate", "flowgraph", "cusps", "montesinos", "census-match", "geodesic", "cycles", "hexagons"] {
        let o = veerkit(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.len() > 50, "{sub}");
    }
}
