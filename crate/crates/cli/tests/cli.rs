use std::path::Path;
use std::process::{Command, Output};

fn emergent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emergent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn meta<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn vanilla_bell_row() {
    let out = emergent(&["run", "vanilla-bell"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(meta(&text, "seed"), Some("0"));
    assert_eq!(meta(&text, "scenario"), Some("vanilla-bell"));
    assert_eq!(
        data_rows(&text),
        [["A", "B", "0.693147181", "0.693147181", "1.386294361", "0.000000000"]]
    );
}

#[test]
fn exit_codes() {
    assert_eq!(emergent(&["run", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(emergent(&["run", "vanilla-bell", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(emergent(&["run", "qudit-bell", "--n-min", "x"]).status.code(), Some(2));
    assert_eq!(emergent(&["run", "vanilla-bell", "--seed"]).status.code(), Some(2));
    assert_eq!(
        emergent(&["run", "vanilla-bell", "--out", "/nonexistent-dir/out.csv"]).status.code(),
        Some(4)
    );
    assert_eq!(
        emergent(&["run", "vanilla-bell", "--config", "/nonexistent-dir/c.toml"]).status.code(),
        Some(4)
    );
}

#[test]
fn sweep_has_one_row_per_step_and_is_monotone() {
    let out = emergent(&["run", "momentum-sweep"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 8);
    let mi: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(mi.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(rows[7][2], "0.000000000");
    assert_eq!(rows[7][3], "1.386294361");
    assert_eq!(meta(&text, "monotone"), Some("true"));
    assert_eq!(meta(&text, "param.steps"), Some("8"));
}

#[test]
fn ghz_edges_file() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("ghz.edges");
    let out = emergent(&["run", "graph-reconstruct", "--state", "ghz3", "--edges", edges.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(data_rows(&stdout(&out)).len(), 3);
    let text = std::fs::read_to_string(&edges).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "src,dst,mutual_info_nats,weight");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.contains("0.693147181")));
}

#[test]
fn uncorrelated_graph_fails_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("none.edges");
    let out = emergent(&["run", "graph-reconstruct", "--state", "product3", "--edges", edges.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!Path::new(&edges).exists());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "steps = 4\nn_modes = 16\nseed = 9\n").unwrap();
    let out = emergent(&["run", "momentum-sweep", "--config", cfg.to_str().unwrap(), "--steps", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(data_rows(&text).len(), 2);
    assert_eq!(meta(&text, "seed"), Some("9"));
    assert_eq!(meta(&text, "param.n-modes"), Some("16"));
}

#[test]
fn json_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let out = emergent(&["run", "qudit-bell", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["metadata"]["format"], "json");
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        let n = r["n"].as_f64().unwrap();
        assert!((r["mi"].as_f64().unwrap() - 2.0 * n.ln()).abs() < 1e-9);
    }
}

#[test]
fn property_suite_passes() {
    let out = emergent(&["run", "property-suite", "--trials", "25"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(meta(&text, "all_passed"), Some("true"));
    assert!(data_rows(&text).iter().all(|r| r.last().map(String::as_str) == Some("true")));
}

#[test]
fn log_base_changes_units() {
    let text = stdout(&emergent(&["run", "vanilla-bell", "--log-base", "2"]));
    assert_eq!(data_rows(&text)[0][4], "2.000000000");
}
