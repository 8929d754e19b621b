use std::path::PathBuf;
use std::process::Command;

use polysing_cli::{parse_angle, run, Analysis, PencilOutput, Verification, EXIT_INPUT, EXIT_OK};
use polysing_core::regularity::{Target, Verdict};

fn domain(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../domains");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn polysing(args: &[&str]) -> polysing_cli::Outcome {
    run(std::iter::once("polysing").chain(args.iter().copied()))
}

#[test]
fn angles_parse() {
    let pi = std::f64::consts::PI;
    assert_eq!(parse_angle("pi").unwrap(), pi);
    assert!((parse_angle("1.5*pi").unwrap() - 1.5 * pi).abs() < 1e-15);
    assert!((parse_angle("3*pi/2").unwrap() - 1.5 * pi).abs() < 1e-15);
    assert!((parse_angle("pi/4").unwrap() - pi / 4.0).abs() < 1e-15);
    assert_eq!(parse_angle("0.5").unwrap(), 0.5);
    assert!(parse_angle("2pi").is_err());
    assert!(parse_angle("x").is_err());
}

#[test]
fn step_prism_file_reports_both_orders() {
    let out = polysing(&["analyze", "--input", &domain("step_prism.json"), "--format", "json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let a: Analysis = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(a.domain, "step-prism");
    let targets: Vec<Target> = a.reports.iter().map(|r| r.target).collect();
    assert_eq!(targets, vec![Target::W1, Target::W2, Target::Exist]);
    let upper = |k: usize| a.reports[k].s_interval.as_ref().unwrap().interval.hi.unwrap().value.to_f64();
    assert!((upper(0) - 2.0 / (1.0 - 0.5444837368)).abs() < 1e-6);
    assert!((upper(1) - 2.0 / (2.0 - 0.5444837368)).abs() < 1e-6);
    assert!(a.warnings.is_empty());
    // the json output round-trips
    let again = serde_json::to_string_pretty(&a).unwrap() + "\n";
    assert_eq!(again, out.stdout);
}

#[test]
fn cube_file_and_builtin_agree() {
    let file = polysing(&["analyze", "--input", &domain("cube.json"), "--target", "w2", "--format", "json"]);
    let builtin = polysing(&["analyze", "--solid", "cube", "--target", "w2", "--format", "json"]);
    assert_eq!(file.code, EXIT_OK, "{}", file.stderr);
    let a: Analysis = serde_json::from_str(&file.stdout).unwrap();
    let b: Analysis = serde_json::from_str(&builtin.stdout).unwrap();
    assert_eq!(a.reports[0].s_interval, b.reports[0].s_interval);
    assert_eq!(a.reports[0].s_interval.as_ref().unwrap().interval.to_string(), "(6/5, 3)");
}

#[test]
fn pointwise_queries() {
    let holds = polysing(&["analyze", "--solid", "cube", "--complement", "--target", "w2", "--s", "13/10"]);
    assert_eq!(holds.code, EXIT_OK);
    assert!(holds.stdout.starts_with("w2 on cube (navier-stokes): holds"), "{}", holds.stdout);
    let fails = polysing(&["analyze", "--solid", "cube", "--complement", "--target", "w2", "--s", "3/2", "--format", "json"]);
    let a: Analysis = serde_json::from_str(&fails.stdout).unwrap();
    assert_eq!(a.reports[0].verdict, Verdict::Fails);
    let holder = polysing(&["analyze", "--solid", "cube", "--target", "c1", "--sigma", "1/4", "--beta", "1/4+eps", "--format", "json"]);
    assert_eq!(holder.code, EXIT_OK, "{}", holder.stderr);
    let a: Analysis = serde_json::from_str(&holder.stdout).unwrap();
    assert_eq!(a.reports[0].verdict, Verdict::Holds);
}

#[test]
fn exterior_file_uses_vertex_bounds() {
    let out = polysing(&["analyze", "--input", &domain("icosahedron_exterior.json"), "--format", "json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let a: Analysis = serde_json::from_str(&out.stdout).unwrap();
    assert!(a.reports.iter().all(|r| r.verdict == Verdict::Holds));
    assert!(a.reports[0].vertices.iter().all(|v| v.rule.id() == "user-bound"), "{:?}", a.reports[0].vertices[0].rule);
}

#[test]
fn undecided_vertices_warn_but_succeed() {
    let out = polysing(&["analyze", "--profile", "mixed-dirichlet-neumann", "--problem", "stokes-linear", "--target", "w2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("warning: w2: verdict unknown"));
    assert!(out.stderr.contains("conditional"));
}

#[test]
fn bad_input_exits_one() {
    for args in [
        vec!["analyze"],
        vec!["analyze", "--solid", "cube", "--profile", "dirichlet"],
        vec!["analyze", "--solid", "prism"],
        vec!["analyze", "--solid", "cube", "--bc", "7"],
        vec!["analyze", "--profile", "nothing"],
        vec!["analyze", "--input", "/nonexistent.json"],
        vec!["analyze", "--solid", "cube", "--tol", "-1"],
        vec!["analyze", "--solid", "cube", "--target", "w3"],
        vec!["analyze", "--solid", "cube", "--target", "c1"],
        vec!["analyze", "--solid", "cube", "--beta", "1,2,3"],
        vec!["pencil", "--theta", "0"],
        vec!["pencil", "--theta", "2*pi"],
        vec!["pencil", "--theta", "pi", "--bc", "0,4"],
        vec!["pencil", "--theta", "pi", "--window", "2,1"],
        vec!["pencil", "--theta", "pi", "--n", "2"],
        vec!["verify-paper", "--tol", "0"],
        vec!["frobnicate"],
    ] {
        let out = polysing(&args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{"name": "x", "vertices": [[0,0,0]], "faces": []}"#).unwrap();
    let out = polysing(&["analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("broken.json"));
}

#[test]
fn help_and_version_exit_zero() {
    let help = polysing(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("verify-paper"));
    assert_eq!(polysing(&["--version"]).code, EXIT_OK);
}

#[test]
fn pencil_lists_eigenvalues() {
    let out = polysing(&["pencil", "--theta", "3*pi/2", "--bc", "0,0", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let p: PencilOutput = serde_json::from_str(&out.stdout).unwrap();
    let mu = p.mu.unwrap().value;
    assert!((mu - 0.54448373).abs() < 1e-8);
    assert!((p.spectrum.eigenvalues[0].re - mu).abs() < 1e-6);
    let text = polysing(&["pencil", "--theta", "0.75*pi", "--bc", "0,2"]);
    assert!(text.stdout.contains("mu = 0.66666666"), "{}", text.stdout);
}

#[test]
fn verify_paper_json_has_every_row() {
    let out = polysing(&["verify-paper", "--format", "json", "--sequential"]);
    assert_eq!(out.code, EXIT_OK);
    let v: Verification = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v.failed, 0);
    assert_eq!(v.passed, v.rows.len());
    // a tolerance override of zero width on approximate rows fails them
    let strict = polysing(&["verify-paper", "--tol", "1e-300"]);
    assert_eq!(strict.code, polysing_cli::EXIT_FIXTURE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polysing");
    let ok = Command::new(bin).args(["analyze", "--input", &domain("cube.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("w1 on cube"));
    let bad = Command::new(bin).args(["pencil", "--theta", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn coarse_degree_keeps_closed_form_rows() {
    let out = polysing(&["verify-paper", "--n", "8", "--format", "json"]);
    assert!(out.code == EXIT_OK || out.code == polysing_cli::EXIT_FIXTURE, "{}", out.stderr);
    let v: Verification = serde_json::from_str(&out.stdout).unwrap();
    use polysing_core::fixtures::Route;
    assert!(v.rows.iter().filter(|r| r.route != Route::NumericPencil).all(|r| r.pass));
}
