//! End-to-end runs of every command against golden files in
//! `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use serde_json::{json, Value};

use pdlab_cli::{run, Outcome};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn invoke(args: &[&str]) -> Outcome {
    run(std::iter::once("pdlab").chain(args.iter().copied()))
}

fn record(args: &[&str], out: &Outcome) -> Value {
    let stdout = serde_json::from_str::<Value>(&out.stdout).unwrap_or_else(|_| json!(out.stdout));
    json!({ "args": args, "code": out.code, "stdout": stdout })
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = invoke(args);
    assert_eq!(out.code, code, "{name}: stdout {} stderr {}", out.stdout, out.stderr);
    let again = invoke(args);
    assert_eq!(out, again, "{name}: output is not deterministic");
    let got = serde_json::to_string_pretty(&record(args, &out)).unwrap() + "\n";
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from {}", path.display());
}

#[test]
fn info() {
    golden("info_spinor5", &["info", "spinor:5", "--json"], 0);
    golden("info_cone_table", &["info", "cone:veronese:1,2"], 0);
}

#[test]
fn ff() {
    golden("ff_veronese22", &["ff", "veronese:2,2", "--seed", "3", "--json"], 0);
    golden("ff_segre11_table", &["ff", "segre:1,1", "--point", "2,3", "--order", "4"], 0);
}

#[test]
fn defects() {
    golden("defects_segre22", &["defects", "segre:2,2", "--secant", "2", "--seed", "7", "--json"], 0);
    golden("defects_veronese22_sigma3", &["defects", "veronese:2,2", "--secant", "3", "--json"], 0);
}

#[test]
fn dual() {
    golden("dual_grassmannian25", &["dual", "grassmannian:2,5", "--samples", "20", "--json"], 0);
}

#[test]
fn matspace() {
    golden("matspace_c2", &["matspace", "C_II", "--certify", "2", "--json"], 0);
    golden("matspace_b1_symbolic", &["matspace", "B_I", "--certify", "2", "--mode", "symbolic", "--json"], 0);
    golden("matspace_a3_refuted", &["matspace", "A_III", "--certify", "6", "--census", "40", "--json"], 1);
    golden("matspace_a2_doubling", &["matspace", "A_II", "--doubling", "--json"], 0);
    golden("matspace_graded_table", &["matspace", "graded:4,1", "--census", "10"], 0);
}

#[test]
fn clifford() {
    golden("clifford_dim4_check", &["clifford", "--dim", "4", "--check", "--pins", "10", "--json"], 0);
    golden("clifford_dim3", &["clifford", "--dim", "3", "--json"], 0);
}

#[test]
fn clifford_module() {
    golden("clifford_module_severi4", &["clifford-module", "severi:4", "--seed", "2", "--json"], 0);
    golden("clifford_module_no_defect", &["clifford-module", "veronese:1,3", "--json"], 1);
}

#[test]
fn osc() {
    golden("osc_twisted_cubic", &["osc", "veronese:1,3", "-d", "2", "-p", "2", "--json"], 0);
    golden("osc_segre12_ideal", &["osc", "segre:1,2", "-d", "2", "-p", "5", "--point", "1,-2,1/3", "--json"], 0);
}

#[test]
fn monge() {
    golden("monge_conic", &["monge", "veronese:1,2", "--json"], 0);
    golden("monge_graph_file", &["monge", "graph:tests/data/quadrics.graph", "--json"], 0);
    golden("monge_veronese22", &["monge", "veronese:2,2", "--json"], 1);
}

#[test]
fn syzygies() {
    golden("syzygies_segre22", &["syzygies", "segre:2,2", "--json"], 0);
    golden("syzygies_twisted_cubic", &["syzygies", "veronese:1,3", "--json"], 0);
}

#[test]
fn line() {
    golden("line_segre11_ruling", &["line", "segre:1,1", "--point", "2,3", "--dir", "0,1", "-m", "3", "--json"], 0);
    golden("line_segre12_plane", &["line", "segre:1,2", "--dir", "0,1,0", "--dir", "0,0,1", "--json"], 0);
}

#[test]
fn report() {
    golden("report_acceptance_3_11", &["report", "acceptance", "--seeds", "1", "--criteria", "3,11", "--json"], 0);
    golden("report_acceptance_10_table", &["report", "acceptance", "--seeds", "4", "--criteria", "10"], 1);
}

#[test]
fn errors() {
    golden("error_unknown_variety", &["info", "bogus:1", "--json"], 2);
    golden("error_point_length", &["osc", "veronese:1,3", "-d", "2", "-p", "1", "--point", "1,2"], 2);
    golden("error_order_too_high", &["osc", "veronese:1,2", "-d", "2", "-p", "13"], 1);
    golden("error_missing_graph_file", &["info", "graph:does/not/exist"], 2);
    golden("error_unknown_space", &["matspace", "Z_IX"], 2);
}

#[test]
fn usage_errors_exit_two_with_usage() {
    for args in [&["defects"][..], &["osc", "segre:1,1", "-d", "x", "-p", "1"], &["frobnicate"], &["info", "spinor:5", "--height", "0"]] {
        let out = invoke(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("Usage") || out.stderr.contains("--help"), "{}", out.stderr);
    }
    let help = invoke(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("clifford-module"));
}
