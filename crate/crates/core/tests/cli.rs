use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphmax"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn graphmax")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn norm_star_and_complete() {
    let j = json(&["norm", "--family", "star", "--n", "4", "--p", "1"]);
    assert_eq!(j["value"], "5/2");
    assert_eq!(j["kind"], "exact");
    let j = json(&["norm", "--family", "complete", "--n", "4", "--p", "1"]);
    assert_eq!(j["value"], "7/4");
    assert_eq!(j["witness"], serde_json::json!(["1/1", "0/1", "0/1", "0/1"]));
}

#[test]
fn norm_k2_from_edges_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k2.json", r#"{"n":2,"edges":[[1,2]]}"#);
    let j = json(&["norm", "--edges", &path, "--p", "2"]);
    let v = j["value_f64"].as_f64().unwrap();
    assert!((v - 1.14412).abs() < 1e-5, "{v}");
}

#[test]
fn verify_small() {
    for n in ["2", "4"] {
        let t = Instant::now();
        let o = run(&["verify", "--n-max", n]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(t.elapsed() < Duration::from_secs(10));
        let out = stdout(&o);
        assert!(!out.contains("FAIL"));
        assert!(out.contains("all checks passed"));
    }
}

#[test]
fn search_monotonicity_matches_fixture() {
    let o = run(&["search-monotonicity", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = include_str!("fixtures/search_monotonicity_n5.txt");
    assert_eq!(stdout(&o), expected);
}

#[test]
fn sweep_complete_matches_closed_form() {
    let o = run(&["sweep", "--family", "complete", "--n", "2..6", "--p", "0.25,0.5,0.75,1"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let mut rows = 0;
    for rec in rdr.deserialize::<std::collections::HashMap<String, String>>() {
        let rec = rec.unwrap();
        let n: f64 = rec["n"].parse().unwrap();
        let p: f64 = match rec["p"].as_str() {
            "1/4" => 0.25,
            "1/2" => 0.5,
            "3/4" => 0.75,
            "1" => 1.0,
            other => panic!("{other}"),
        };
        let want = (1.0 + (n - 1.0) / n.powf(p)).powf(1.0 / p);
        let got: f64 = rec["value_lo"].parse().unwrap();
        assert!((got - want).abs() <= 1e-12 * want, "n={n} p={p}: {got} vs {want}");
        assert_eq!(rec["result_kind"], "exact");
        rows += 1;
    }
    assert_eq!(rows, 20);
}

#[test]
fn sweep_odd_path_weak_delta_bound() {
    let o = run(&["sweep", "--family", "path", "--n", "3,5,7,9", "--p", "1", "--kind", "weak", "--format", "json"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let n = r["n"].as_u64().unwrap();
        assert_eq!(r["value"], format!("{}/{}", 2 * n / num_gcd(2 * n, n + 1), (n + 1) / num_gcd(2 * n, n + 1)));
        assert!(r["value_hi"].as_f64().unwrap() <= 2.0);
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["norm", "--family", "star", "--n", "4", "--p", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--family", "star", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["indices", "--family", "path", "--n", "9"]).status.code(), Some(3));
    assert_eq!(run(&["norm", "--family", "path", "--n", "25", "--p", "1", "--kind", "restricted"]).status.code(), Some(3));
    assert_eq!(run(&["norm", "--edges", "/nonexistent/graph.txt", "--p", "1"]).status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "3 1\n1 2\n");
    assert_eq!(run(&["norm", "--edges", &path, "--p", "1"]).status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["norm", "--family", "cycle", "--n", "5", "--p", "2", "--seed", "7"];
    let one = bin().args(args).env("GM_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("GM_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn indices_json() {
    let j = json(&["indices", "--family", "star", "--n", "4"]);
    assert_eq!(j["dilation"]["value"], "2/1");
    assert_eq!(j["overlapping"]["value"], 3);
    assert_eq!(j["overlapping"]["lower_bound_only"], false);
    assert_eq!(j["weak11_upper"], "2/1");
    let j = json(&["indices", "--family", "path", "--n", "12", "--skip-overlap"]);
    assert!(j["overlapping"].is_null());
}

#[test]
fn delta_matrix_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["delta-matrix", "--family", "cycle", "--n", "6"]);
    assert!(o.status.success());
    let m: Vec<Vec<String>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(m.len(), 6);
    assert!(m.iter().enumerate().all(|(i, row)| row[i] == "1/1"));
    let path = write(dir.path(), "m.json", &stdout(&o));
    let back = run(&["delta-matrix", "--reconstruct", &path]);
    assert!(back.status.success());
    let text = stdout(&back);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 6"));
    let mut edges: Vec<(usize, usize)> = lines
        .map(|l| {
            let (a, b) = l.split_once(' ').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    edges.sort();
    assert_eq!(edges, vec![(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)]);
}

#[test]
fn maximal_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.txt", "1\n0\n0\n2\n");
    let o = run(&["maximal", "--family", "path", "--n", "4", "--function", &path]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/1\n3/4\n3/4\n2/1\n");
}
