//! End-to-end tests of the `seqrac` binary: exit codes, pinned headers,
//! determinism, and the documented example invocations.

use std::path::PathBuf;
use std::process::{Command, Output};

fn seqrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Parses CSV output into (header, rows-of-fields).
fn parse_csv(text: &str) -> (String, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header line").to_string();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn field(row: &[String], header: &str, name: &str) -> f64 {
    let idx = header.split(',').position(|h| h == name).expect("column exists");
    row[idx].parse().expect("numeric field")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("seqrac-cli-tests");
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

#[test]
fn classical_matches_oracle_for_small_d() {
    let out = seqrac(&["classical", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2,0.375000000000,0.375000000000,true"), "got: {text}");

    let out = seqrac(&["classical", "--d", "3"]);
    let text = stdout(&out);
    assert!(text.contains("3,0.222222222222,0.222222222222,true"), "got: {text}");
}

#[test]
fn classical_skips_oracle_for_large_d() {
    let out = seqrac(&["classical", "--d", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("6,0.0972222222222,nan,skipped"), "got: {text}");
}

#[test]
fn classical_rejects_bad_dimension() {
    assert_eq!(seqrac(&["classical", "--d", "1"]).status.code(), Some(2));
    assert_eq!(seqrac(&["classical", "--d", "7"]).status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(seqrac(&["classical", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(seqrac(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn boundary_header_grid_and_saturation() {
    let out = seqrac(&["boundary", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, "eta,p_ab,p_ac,boundary,classical_ab,classical_joint");
    assert_eq!(rows.len(), 3);
    let etas: Vec<f64> = rows.iter().map(|r| field(r, &header, "eta")).collect();
    assert_eq!(etas, vec![0.0, 0.5, 1.0]);
    for row in &rows {
        let p_ac = field(row, &header, "p_ac");
        let boundary = field(row, &header, "boundary");
        assert!((p_ac - boundary).abs() < 1e-10, "curve must sit on the boundary");
        assert_eq!(field(row, &header, "classical_ab"), 0.75);
        assert_eq!(field(row, &header, "classical_joint"), 0.375);
    }
}

#[test]
fn boundary_rejects_degenerate_grid() {
    assert_eq!(seqrac(&["boundary", "--steps", "1"]).status.code(), Some(2));
}

#[test]
fn csv_output_is_byte_stable() {
    let a = seqrac(&["boundary", "--steps", "11"]);
    let b = seqrac(&["boundary", "--steps", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let a = seqrac(&["dimsweep", "--dmin", "2", "--dmax", "2", "--restarts", "3", "--seed", "5"]);
    let b = seqrac(&["dimsweep", "--dmin", "2", "--dmax", "2", "--restarts", "3", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_field_names_match_csv_headers() {
    let csv = stdout(&seqrac(&["boundary", "--steps", "2"]));
    let json = stdout(&seqrac(&["boundary", "--steps", "2", "--format", "json"]));
    let (header, _) = parse_csv(&csv);
    for name in header.split(',') {
        assert!(json.contains(&format!("\"{name}\":")), "missing JSON field {name}");
    }
}

#[test]
fn certify_noiseless_identity() {
    let out = seqrac(&[
        "certify", "--p1", "1", "--p2", "1", "--p3", "1", "--eta", "0.7071067811865476",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        "p1,p2,p3,eta_target,p_ab,p_ac,eta_lower,eta_upper,delta,delta_star_fixture"
    );
    let delta = field(&rows[0], &header, "delta");
    assert!(delta.abs() < 1e-9, "noiseless band must vanish, got {delta}");
}

#[test]
fn certify_reproduces_a_benchmark_row() {
    let out = seqrac(&[
        "certify", "--p1", "0.95", "--p2", "0.9", "--p3", "0.95", "--eta", "0.7071067811865476",
    ]);
    let (header, rows) = parse_csv(&stdout(&out));
    let delta = field(&rows[0], &header, "delta");
    assert!((delta - 0.1133).abs() < 5e-4, "got delta {delta}");
}

#[test]
fn certify_rejects_bad_visibility() {
    let out = seqrac(&["certify", "--p1", "1.5", "--p2", "1", "--p3", "1", "--eta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = seqrac(&["certify", "--p1", "0", "--p2", "1", "--p3", "1", "--eta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_requires_all_visibilities() {
    let out = seqrac(&["certify", "--p1", "0.9", "--eta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_recomputes_three_rows() {
    let out = seqrac(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        "p1,p2,p3,eta_target,p_ab,p_ac,eta_lower,eta_upper,delta,delta_star_fixture"
    );
    assert_eq!(rows.len(), 3);
    let expected = [(0.7138, 0.1133), (0.7328, 0.0444), (0.7046, 0.1572)];
    for (row, (p_ab, delta)) in rows.iter().zip(expected) {
        assert!((field(row, &header, "p_ab") - p_ab).abs() < 5e-4);
        assert!((field(row, &header, "delta") - delta).abs() < 5e-4);
    }
}

#[test]
fn sweep_eta_covers_the_grid_and_flags_undefined_bounds() {
    let out = seqrac(&["sweep-eta", "--p1", "0.95", "--p2", "0.9", "--p3", "0.95", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 5);
    let first = field(&rows[0], &header, "eta_target");
    let last = field(&rows[4], &header, "eta_target");
    assert_eq!(first, 0.0);
    assert_eq!(last, 1.0);
}

#[test]
fn seesaw_recovers_the_analytic_qubit_optimum() {
    let out = seqrac(&["seesaw", "--d", "2", "--eta", "1", "--restarts", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    let p_barun = field(&rows[0], &header, "p_barun");
    let expected = 0.5 * (1.0 + 1.0 / 2f64.sqrt());
    assert!((p_barun - expected).abs() < 1e-6, "got {p_barun}, want {expected}");
    assert_eq!(rows[0][header.split(',').position(|h| h == "converged").unwrap()], "true");
}

#[test]
fn seesaw_accepts_the_critical_sharpness_keyword() {
    let out = seqrac(&["seesaw", "--d", "3", "--eta", "critical", "--restarts", "4", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    let eta = field(&rows[0], &header, "eta");
    assert!((eta - 2.0 / (1.0 + 3f64.sqrt())).abs() < 1e-10);
    let p_barun = field(&rows[0], &header, "p_barun");
    assert!((p_barun - 2.0 / 3.0).abs() < 1e-5, "critical-sharpness marginal, got {p_barun}");
}

#[test]
fn seesaw_rejects_malformed_eta() {
    assert_eq!(seqrac(&["seesaw", "--d", "2", "--eta", "bogus"]).status.code(), Some(2));
    assert_eq!(seqrac(&["seesaw", "--d", "2", "--eta", "1.5"]).status.code(), Some(2));
}

#[test]
fn seesaw_without_converged_restart_exits_4() {
    let out = seqrac(&[
        "seesaw", "--d", "2", "--eta", "0.9", "--restarts", "1", "--max-iters", "1", "--seed", "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
    // The partial row is still emitted for inspection.
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][header.split(',').position(|h| h == "converged").unwrap()], "false");
}

#[test]
fn dimsweep_emits_the_pinned_table() {
    let out = seqrac(&["dimsweep", "--dmin", "2", "--dmax", "3", "--restarts", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, "d,mode,eta,p_barun,p_chhanda,p_total,converged,iterations");
    assert_eq!(rows.len(), 6, "3 modes x 2 dimensions");
    // Quantum totals beat the classical totals for every dimension.
    for d in [2usize, 3] {
        let classical: f64 = rows
            .iter()
            .find(|r| r[0] == d.to_string() && r[1] == "classical")
            .map(|r| field(r, &header, "p_total"))
            .unwrap();
        for mode in ["eta_critical", "sharp"] {
            let quantum: f64 = rows
                .iter()
                .find(|r| r[0] == d.to_string() && r[1] == mode)
                .map(|r| field(r, &header, "p_total"))
                .unwrap();
            assert!(quantum > classical, "d={d} mode={mode}: {quantum} <= {classical}");
        }
    }
}

#[test]
fn audit_reports_no_boundary_violation() {
    let out = seqrac(&["audit", "--samples", "2000", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, "samples,seed,max_violation,tolerance,pass");
    let violation = field(&rows[0], &header, "max_violation");
    assert!(violation <= 1e-9, "got violation {violation}");
    assert!(stdout(&out).contains("true"));
}

#[test]
fn config_file_defaults_are_overridden_by_flags() {
    let path = scratch("defaults.conf");
    std::fs::write(&path, "steps=3\nformat=json\n").unwrap();
    let config = path.to_str().unwrap();

    // Config supplies both the grid size and the format...
    let out = seqrac(&["boundary", "--config", config]);
    let text = stdout(&out);
    assert!(text.starts_with('['), "config format=json respected: {text}");
    assert_eq!(text.matches("\"eta\":").count(), 3, "config steps=3 respected");

    // ...and explicit flags win.
    let out = seqrac(&["boundary", "--config", config, "--steps", "2", "--format", "csv"]);
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 2);

    let out = seqrac(&["boundary", "--config", "/nonexistent/path.conf"]);
    assert_eq!(out.status.code(), Some(1), "unreadable config is an i/o error");
}

#[test]
fn out_flag_writes_the_file_and_keeps_stdout_quiet() {
    let path = scratch("boundary.csv");
    let out = seqrac(&["boundary", "--steps", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("eta,p_ab,p_ac,boundary"));
    let direct = stdout(&seqrac(&["boundary", "--steps", "2"]));
    assert_eq!(written, direct, "file and stdout output are identical");
}

#[test]
fn thread_cap_does_not_change_results() {
    let one = seqrac(&["dimsweep", "--dmin", "2", "--dmax", "2", "--restarts", "4", "--threads", "1"]);
    let two = seqrac(&["dimsweep", "--dmin", "2", "--dmax", "2", "--restarts", "4", "--threads", "2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_seqrac"))
        .args(["dimsweep", "--dmin", "2", "--dmax", "2", "--restarts", "4"])
        .env("SEQRAC_THREADS", "2")
        .output()
        .expect("binary runs");
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(one.stdout, env.stdout);

    assert_eq!(seqrac(&["classical", "--d", "2", "--threads", "0"]).status.code(), Some(2));
}
