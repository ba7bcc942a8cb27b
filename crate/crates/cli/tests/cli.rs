use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use theta_core::graph::circulant;
use theta_core::write_graph6;

fn thetas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetas")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/run_report.schema.json");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap()
}

fn assert_valid(report: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}");
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn verify_petersen_passes_everything() {
    let o = thetas(&["verify", "petersen:", "--all", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_valid(&r);
    assert_eq!(r["passed"], true);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{}", c["name"]);
    }
    let p = r["values"]["lovasz_product"].as_f64().unwrap();
    assert!((p - 10.0).abs() < 1e-3);
    assert!(r["config"]["tolerances"]["num_tol"].is_number());
}

#[test]
fn verify_path_reports_non_applicability() {
    let o = thetas(&["verify", "path:4", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_valid(&r);
    assert_eq!(check(&r, "clique_coclique")["status"], "not_applicable");
    assert_eq!(check(&r, "main_bound")["status"], "not_applicable");
    assert_eq!(check(&r, "theta_products")["status"], "pass");
    assert_eq!(check(&r, "sandwich")["status"], "pass");
}

#[test]
fn verify_five_cycle_text() {
    let o = thetas(&["verify", "cycle:5", "--all"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("omega 2 * alpha 2 = 4 <= 5"));
}

#[test]
fn verify_named_checks_only() {
    let o = thetas(&["verify", "Dhc", "--check", "clique-coclique", "--check", "lemma0", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_valid(&r);
    assert_eq!(r["checks"].as_array().unwrap().len(), 2);
    assert_eq!(r["graph"]["n"], 5);
}

#[test]
fn closure_examples() {
    let r = json(&thetas(&["closure", "petersen:", "--json"]));
    assert_eq!(r["d"], 2);
    assert_eq!(r["homogeneous"], true);
    let r = json(&thetas(&["closure", "path:3", "--json"]));
    assert_eq!(r["homogeneous"], false);
    let o = thetas(&["closure", "complete:4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(2 classes)"));
}

#[test]
fn theta_examples() {
    let value = |args: &[&str]| json(&thetas(args))[0]["value"].as_f64().unwrap();
    assert!((value(&["theta", "cycle:5", "--lovasz", "--json"]) - 5f64.sqrt()).abs() < 1e-4);
    assert!((value(&["theta", "complete:7", "--lovasz", "--json"]) - 1.0).abs() < 1e-4);
    assert!((value(&["theta", "petersen:", "--schrijver", "--json"]) - 4.0).abs() < 1e-4);
    let o = thetas(&["theta", "cycle:5", "--lovasz"]);
    assert!(stdout(&o).contains("2.2361"));
    let all = json(&thetas(&["theta", "cycle:7", "--json"]));
    assert_eq!(all.as_array().unwrap().len(), 3);
}

#[test]
fn non_convergence_exits_two() {
    let o = thetas(&["theta", "petersen:", "--max-iters", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("NOT CONVERGED"));
    let o = thetas(&["verify", "petersen:", "--max-iters", "3", "--json"]);
    assert_eq!(code(&o), 2);
    let r = json(&o);
    assert_valid(&r);
    assert_eq!(r["exit_code"], 2);
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(code(&thetas(&["verify", "nosuch:3"])), 3);
    assert_eq!(code(&thetas(&["theta", "cycle:2"])), 3);
    assert_eq!(code(&thetas(&["theta", "cycle:5", "--relax", "2.5"])), 3);
    assert_eq!(code(&thetas(&["verify"])), 3);
    assert_eq!(code(&thetas(&["verify", "cycle:5", "--all", "--check", "lemma0"])), 3);
    assert_eq!(code(&thetas(&["--help"])), 0);
}

#[test]
fn graph_file_source() {
    let f = temp_file("# one graph\nIheA@GUAo\n");
    let o = thetas(&["closure", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["n"], 10);
    let two = temp_file("Dhc\nDhc\n");
    assert_eq!(code(&thetas(&["closure", two.path().to_str().unwrap()])), 3);
}

fn circulant_file() -> (tempfile::NamedTempFile, usize) {
    let mut lines = Vec::new();
    for n in 2..=10usize {
        for mask in 1u32..(1 << (n / 2)) {
            let set: Vec<i64> = (0..n / 2).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1).collect();
            let g = circulant(n, &set).unwrap();
            if g.is_connected() {
                lines.push(write_graph6(&g).unwrap());
            }
        }
    }
    let count = lines.len();
    (temp_file(&(lines.join("\n") + "\n")), count)
}

#[test]
fn batch_circulants_pass_clique_coclique() {
    let (f, count) = circulant_file();
    let path = f.path().to_str().unwrap();
    let o = thetas(&["batch", path, "--check", "clique-coclique", "--jobs", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "clique_coclique").unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), count);
    assert!(rows.iter().all(|r| &r[col] == "pass"));
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.contains(&format!("{count} graphs, {count} passed")), "{summary}");
}

#[test]
fn batch_json_is_ordered_and_schema_valid() {
    let f = temp_file("Dhc\nIheA@GUAo\nCh\nFhCKG\n");
    let path = f.path().to_str().unwrap();
    let one = thetas(&["batch", path, "--format", "json", "--jobs", "1"]);
    let four = thetas(&["batch", path, "--format", "json", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    let parse = |o: &Output| -> Vec<Value> {
        stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    };
    let (a, b) = (parse(&one), parse(&four));
    assert_eq!(a.len(), 4);
    for (x, y) in a.iter().zip(&b) {
        assert_valid(x);
        assert_eq!(x["graph"], y["graph"]);
        assert_eq!(x["values"], y["values"]);
    }
    let sources: Vec<&str> = a.iter().map(|r| r["graph"]["source"].as_str().unwrap()).collect();
    assert_eq!(sources, ["Dhc", "IheA@GUAo", "Ch", "FhCKG"]);
}

#[test]
fn batch_malformed_line_fails_that_row() {
    let f = temp_file("Dhc\nnot graph6 at all\nCh\n");
    let o = thetas(&["batch", f.path().to_str().unwrap(), "--check", "clique-coclique"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[2].contains("parse_error"));
    assert!(String::from_utf8(o.stderr).unwrap().contains("1 parse errors"));

    let o = thetas(&["batch", f.path().to_str().unwrap(), "--format", "json", "--check", "structure"]);
    let bad: Value = serde_json::from_str(stdout(&o).lines().nth(1).unwrap()).unwrap();
    assert_valid(&bad);
    assert_eq!(bad["checks"][0]["status"], "error");
}

#[test]
fn batch_empty_file() {
    let f = temp_file("");
    let o = thetas(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stderr).unwrap().contains("0 graphs"));
}
