use std::process::Command;

use clap::Parser;
use superweyl::cli::{emit_folding_table, run, JobConfig, EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_OK};

fn job(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["superweyl"];
    argv.extend_from_slice(args);
    let config = JobConfig::try_parse_from(argv).unwrap();
    let mut out = Vec::new();
    let status = run(&config, &mut out);
    (status, String::from_utf8(out).unwrap())
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("superweyl-{}-{name}", std::process::id()))
}

#[test]
fn build_algebra_then_check_round_trips() {
    let path = temp_path("sl32.txt");
    let path_text = path.to_str().unwrap();
    let (status, out) = job(&["build-algebra", "sl", "3", "2", "--out", path_text]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("dimension 24\n"));
    let (status, out) = job(&["check", "--algebra", path_text]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("violations 0\n"));
    assert!(out.contains("round_trip identical\n"));
    let (status, out) = job(&["fold", "--algebra", path_text, "--perm", "flip"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("fixed_type osp(3|2)\n"));
    assert!(out.contains("eigenspaces 12 12\n"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn build_algebra_without_output_prints_the_text_form() {
    let (status, out) = job(&["build-algebra", "osp", "1", "2"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.starts_with("algebra osp(1|2)\n"));
    let g = superweyl::liesuper::SuperAlgebra::from_text(&out).unwrap();
    assert_eq!(g.dim(), 5);
}

#[test]
fn roots_and_map_reports() {
    let (status, out) = job(&["roots", "--family", "osp:3:2"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("condition_c true\n"));
    assert!(out.contains("lowest_root [-2, -2] even\n"));
    let (status, out) = job(&["map", "--family", "osp:2:2", "--perm", "flip", "--A", "trunc:2", "--gamma", "2"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("fixed_type osp(1|2)\n"));
    assert!(out.contains("dimension 8\n"));
    assert!(out.contains("axioms pass\n"));
}

#[test]
fn weyl_at_zero_weight_has_a_single_weight() {
    let (status, out) = job(&["weyl", "--family", "osp:1:2", "--A", "trunc:2", "--lambda", "0", "--character"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("character\n  [0] : 1\n"));
    assert!(out.contains("dimension 1\n"));
}

#[test]
fn weyl_report_sections() {
    let args = [
        "weyl",
        "--family",
        "osp:1:2",
        "--A",
        "trunc:2",
        "--lambda",
        "1",
        "--cap",
        "10",
        "--character",
        "--filtration",
        "--hw-algebra",
    ];
    let (status, out) = job(&args);
    assert_eq!(status, EXIT_OK, "{out}");
    for expected in [
        "cap 10\n",
        "converged true\n",
        "dimension 6\n",
        "  [1] : 2\n",
        "hw_algebra\n  dim 2\n",
        "filtration 2 6\n",
        "filtration_certified true\n",
    ] {
        assert!(out.contains(expected), "missing {expected:?} in\n{out}");
    }
    let (status, out) = job(&["weyl", "--family", "osp:3:2", "--lambda=-1,0", "--cap", "12"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("dimension 5\n"));
}

#[test]
fn non_convergence_has_its_own_status() {
    let (status, out) =
        job(&["weyl", "--family", "sl:2:1", "--A", "trunc:2", "--lambda", "1,0", "--cap", "5", "--filtration"]);
    assert_eq!(status, EXIT_NOT_CONVERGED);
    assert!(out.contains("converged false\n"));
    assert!(out.contains("warning not converged"));
    assert!(out.contains("filtration skipped not-converged\n"));
}

#[test]
fn errors_exit_with_one() {
    let (status, out) = job(&["check", "--algebra", "/nonexistent/algebra.txt"]);
    assert_eq!(status, EXIT_ERROR);
    assert!(out.starts_with("error "));
    let (status, _) = job(&["weyl", "--family", "osp:3:2", "--lambda", "1,0"]);
    assert_eq!(status, EXIT_ERROR);
    let (status, _) = job(&["map", "--family", "osp:1:2", "--A", "poly"]);
    assert_eq!(status, EXIT_ERROR);
    assert!(JobConfig::try_parse_from(["superweyl", "weyl", "--family", "osp:1:2"]).is_err());
}

#[test]
fn garland_jobs() {
    let (status, out) = job(&["verify-garland"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("r 1 a 1 divided true\nresidual 1/2 (f*1)^2 e*1\nmember true\n"));
    assert!(out.contains("series a t k 2 1/2 (h*t)^2 + -1/2 h*t^2\n"));
    assert!(out.contains("all_members true\n"));
    let (status, out) = job(&["verify-garland", "--r", "1", "--plain"]);
    assert_eq!(status, EXIT_ERROR);
    assert!(out.contains("member false\n"));
    let (status, out) = job(&["verify-garland", "--A", "trunc:4", "--gamma", "2"]);
    assert_eq!(status, EXIT_OK, "{out}");
    assert!(out.contains("r 3 a t^2 divided true\n"));
}

#[test]
fn folding_table_rows() {
    let table = emit_folding_table().unwrap();
    assert!(table.passed());
    let rows: Vec<(&str, &str, usize)> =
        table.rows.iter().map(|r| (r.algebra.as_str(), r.computed.as_str(), r.computed_dim)).collect();
    assert_eq!(rows, vec![("sl(3|2)", "osp(3|2)", 12), ("osp(2|2)", "osp(1|2)", 5), ("osp(3|2)", "osp(3|2)", 12)]);
    let (status, out) = job(&["folding-table"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.ends_with("table pass\n"));
}

#[test]
fn jobs_are_reproducible() {
    for args in [
        &["roots", "--family", "sl:3:2"][..],
        &[
            "weyl",
            "--family",
            "osp:1:2",
            "--A",
            "trunc:2",
            "--lambda",
            "2",
            "--character",
            "--hw-algebra",
            "--filtration",
        ],
        &["verify-garland", "--r", "2"],
    ] {
        assert_eq!(job(args), job(args));
    }
}

#[test]
fn binary_exit_codes_and_cap_override() {
    let bin = env!("CARGO_BIN_EXE_superweyl");
    let ok = Command::new(bin).args(["weyl", "--family", "osp:1:2", "--lambda", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("cap 8\n"));

    let overridden = Command::new(bin)
        .args(["weyl", "--family", "osp:1:2", "--lambda", "1"])
        .env("SUPERWEYL_CAP", "11")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&overridden.stdout).contains("cap 11\n"));

    let partial = Command::new(bin)
        .args(["weyl", "--family", "sl:2:1", "--A", "trunc:2", "--lambda", "1,0", "--cap", "4"])
        .output()
        .unwrap();
    assert_eq!(partial.status.code(), Some(EXIT_NOT_CONVERGED));

    let failed = Command::new(bin).args(["check", "--family", "gl:2:1"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(EXIT_ERROR));
}
