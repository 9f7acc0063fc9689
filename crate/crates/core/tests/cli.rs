use std::fs;
use std::path::Path;

use polyside::cli::{run, segment_trials, Lemma, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use polyside::io::parse_scene;
use tempfile::tempdir;

const GOLDEN: &str = include_str!("../fixtures/k38_corner.scene");

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polyside").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_the_fixture() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("k38.scene");
    let (code, out, _) = call(&["build-k38", "-o", path(&file)]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("wrote 11 polygons"));
    assert_eq!(fs::read_to_string(&file).unwrap(), GOLDEN);
}

#[test]
fn verify_exit_codes_follow_semantics() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("k38.scene");
    fs::write(&file, GOLDEN).unwrap();
    let f = path(&file);

    let (code, out, _) = call(&[
        "verify",
        f,
        "--mode",
        "corner",
        "--one-sided",
        "per-contact",
    ]);
    assert_eq!(code, EXIT_PASS);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["counts"]["corner"], 24);

    let (code, out, _) = call(&["verify", f, "--mode", "corner", "--one-sided"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("one_sidedness"));

    // The same corners cannot pass as side contacts.
    let (code, _, _) = call(&["verify", f, "--mode", "side"]);
    assert_eq!(code, EXIT_FAIL);

    // A wrong expectation fails the graph check.
    let (code, _, _) = call(&["verify", f, "--mode", "corner", "--expect", "K3,7"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn transform_round_trips_and_traces() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("k38.scene");
    let output = dir.path().join("side.scene");
    fs::write(&input, GOLDEN).unwrap();
    let (code, out, err) = call(&["transform", path(&input), "-o", path(&output), "--trace"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    assert_eq!(out.lines().filter(|l| l.contains("epsilon=")).count(), 8);
    assert!(out.contains("b7 epsilon="));

    let text = fs::read_to_string(&output).unwrap();
    let scene = parse_scene(&text).unwrap();
    assert_eq!(scene.polygons.len(), 11);
    let (code, out, _) = call(&[
        "verify",
        path(&output),
        "--mode",
        "side",
        "--one-sided",
        "per-contact",
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("\"side\": 24") || out.contains("\"side\":24"));

    let obj = dir.path().join("side.obj");
    let (code, _, _) = call(&[
        "export-obj",
        path(&output),
        "-o",
        path(&obj),
        "--precision",
        "4",
    ]);
    assert_eq!(code, EXIT_PASS);
    let obj = fs::read_to_string(obj).unwrap();
    assert!(obj.lines().any(|l| l.starts_with("f ")));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = call(&["verify", "/nonexistent/file.scene"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["segments", "random", "--m", "5", "--seed", "1", "--check", "lemma9"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        call(&["export-obj", "x", "-o", "y", "--precision", "0"]).0,
        EXIT_USAGE
    );

    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.scene");
    fs::write(&bad, "not a scene").unwrap();
    assert_eq!(call(&["verify", path(&bad)]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_PASS);
}

#[test]
fn segment_checks_report_no_violations() {
    for (check, alias) in [
        ("lemma3", "flopped"),
        ("lemma4", "halfspace"),
        ("lemma5", "triangle"),
    ] {
        let (code, out, err) = call(&[
            "segments", "random", "--m", "6", "--seed", "7", "--check", check, "--trials", "40",
        ]);
        assert_eq!(code, EXIT_PASS, "{err}");
        assert!(out.starts_with(&format!("{check} m=6 seed=7 trials=40:")));
        assert!(out.trim_end().ends_with(" 0 violations"));
        let (code, again, _) = call(&[
            "segments", "random", "--m", "6", "--seed", "7", "--check", alias, "--trials", "40",
        ]);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(out, again);
    }
}

#[test]
fn trials_are_deterministic() {
    let a = segment_trials(Lemma::Halfspace, 8, 3, 25).unwrap();
    assert_eq!(a, segment_trials(Lemma::Halfspace, 8, 3, 25).unwrap());
    assert_eq!(a.checks, 25 * 20);
    assert_eq!(a.violations, 0);
    assert!(segment_trials(Lemma::Flopped, 2, 0, 1).is_err());
}
