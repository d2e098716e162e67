//! End-to-end behavior of the binary: reports, exit codes, warnings.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn fan_info_on_p2() {
    let out = toric(&["fan", "info", &fixture("p2.fan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("rank 2, 3 rays, 3 maximal cones"));
    assert!(text.contains("smooth: true"));
    assert!(text.contains("complete: true"));
    assert!(text.contains("chow group: Z"));
    assert!(text.contains("[D_0] = 1"));
    assert!(text.contains("[D_1] = 1"));
    assert!(text.contains("[D_2] = 1"));
}

#[test]
fn fan_info_on_affine_plane() {
    let out = toric(&["fan", "info", &fixture("affine.fan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("complete: false"));
    assert!(text.contains("chow group: 0"));
}

#[test]
fn non_primitive_rays_are_normalized_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scaled.fan.json");
    fs::write(
        &path,
        r#"{ "dim": 2, "rays": [[2, 0], [0, 1]], "max_cones": [[0, 1]] }"#,
    )
    .unwrap();
    let out = toric(&["fan", "info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr_of(&out).contains("normalized to (1, 0)"));
    assert!(stdout_of(&out).contains("ray 0: (1, 0)"));
}

#[test]
fn exit_codes_for_bad_files() {
    // Missing file: parse error.
    let out = toric(&["fan", "info", "/nonexistent/nowhere.fan.json"]);
    assert_eq!(out.status.code(), Some(3));

    // Malformed JSON: parse error.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.fan.json");
    fs::write(&path, "{ not json").unwrap();
    let out = toric(&["fan", "info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // Cone referencing a missing ray: validation error.
    let path = dir.path().join("badindex.fan.json");
    fs::write(
        &path,
        r#"{ "dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 9]] }"#,
    )
    .unwrap();
    let out = toric(&["fan", "info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("ray index 9"));

    // Unknown CLI flags: usage error surfaces as a parse failure.
    let out = toric(&["fan", "info", &fixture("p2.fan.json"), "--bogus"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bundle_validation_errors() {
    let dir = tempfile::tempdir().unwrap();

    // Missing per-ray entry.
    let path = dir.path().join("short.bundle.json");
    fs::write(
        &path,
        r#"{ "rank": 1, "filtrations": { "0": [[0, [[1]]]] } }"#,
    )
    .unwrap();
    let out = toric(&[
        "sheaf",
        "sections",
        &fixture("p2.fan.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("missing entry for ray 1"));

    // Non-full filtration.
    let path = dir.path().join("notfull.bundle.json");
    fs::write(
        &path,
        r#"{ "rank": 2, "filtrations": {
            "0": [[0, [[1, 0]]]],
            "1": [[0, [[1, 0], [0, 1]]]],
            "2": [[0, [[1, 0], [0, 1]]]] } }"#,
    )
    .unwrap();
    let out = toric(&[
        "sheaf",
        "sections",
        &fixture("p2.fan.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("not full"));
}

#[test]
fn sections_match_the_simplex_count() {
    let out = toric(&[
        "sheaf",
        "sections",
        &fixture("p2.fan.json"),
        &fixture("o1.bundle.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("nonzero section degrees (3)"));
    assert!(text.contains("total dimension: 3"));

    // An explicit box gives the same sections.
    let out = toric(&[
        "sheaf",
        "sections",
        &fixture("p2.fan.json"),
        &fixture("o1.bundle.json"),
        "--box",
        "-3..3",
    ]);
    assert!(stdout_of(&out).contains("total dimension: 3"));
}

#[test]
fn structure_sheaf_has_one_section_degree() {
    let out = toric(&[
        "sheaf",
        "sections",
        &fixture("p2.fan.json"),
        &fixture("o0.bundle.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("nonzero section degrees (1)"));
    assert!(text.contains("m = [0, 0]: dim 1"));
}

#[test]
fn euler_resolve_tangent_bundle() {
    let out = toric(&[
        "euler",
        "resolve",
        &fixture("p2.fan.json"),
        &fixture("tangent.bundle.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("exponents: [1, 1, 1]"));
    assert!(text.contains("verification verdict: PASS"));

    // The filtration form of the same data resolves identically.
    let out2 = toric(&[
        "euler",
        "resolve",
        &fixture("p2.fan.json"),
        &fixture("tangent-filtrations.bundle.json"),
    ]);
    assert_eq!(stdout_of(&out2), text);
}

#[test]
fn euler_resolve_failures_are_math_errors() {
    let dir = tempfile::tempdir().unwrap();

    // Split case: i1 = i2 on some ray.
    let path = dir.path().join("split.bundle.json");
    fs::write(
        &path,
        r#"{ "rank": 2, "triples": {
            "0": [0, 0, [1, 0]],
            "1": [-1, 0, [0, 1]],
            "2": [-1, 0, [1, 1]] } }"#,
    )
    .unwrap();
    let out = toric(&[
        "euler",
        "resolve",
        &fixture("p2.fan.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("i1 = i2"));

    // Equal lines on adjacent rays.
    let path = dir.path().join("samelines.bundle.json");
    fs::write(
        &path,
        r#"{ "rank": 2, "triples": {
            "0": [-1, 0, [1, 0]],
            "1": [-1, 0, [1, 0]],
            "2": [-1, 0, [1, 1]] } }"#,
    )
    .unwrap();
    let out = toric(&[
        "euler",
        "resolve",
        &fixture("p2.fan.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("adjacent rays 0 and 1"));

    // Non-complete fan.
    let path = dir.path().join("affine.bundle.json");
    fs::write(
        &path,
        r#"{ "rank": 2, "triples": {
            "0": [-1, 0, [1, 0]],
            "1": [-1, 0, [0, 1]] } }"#,
    )
    .unwrap();
    let out = toric(&[
        "euler",
        "resolve",
        &fixture("affine.fan.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("smooth complete surface"));
}

#[test]
fn euler_verify_round_trips_through_the_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = toric(&[
        "euler",
        "resolve",
        &fixture("p2.fan.json"),
        &fixture("tangent.bundle.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let res_path = dir.path().join("resolution.json");
    fs::write(&res_path, out.stdout).unwrap();

    let out = toric(&[
        "euler",
        "verify",
        &fixture("p2.fan.json"),
        &fixture("tangent.bundle.json"),
        res_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verification verdict: PASS"));

    // Tampering with a coefficient flips the verdict and the exit code.
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&res_path).unwrap()).unwrap();
    let mut resolution = report["resolution"].clone();
    resolution["coeff_matrix"][1][0] = serde_json::json!(0);
    let bad_path = dir.path().join("tampered.json");
    fs::write(&bad_path, serde_json::to_string(&resolution).unwrap()).unwrap();
    let out = toric(&[
        "euler",
        "verify",
        &fixture("p2.fan.json"),
        &fixture("tangent.bundle.json"),
        bad_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout_of(&out);
    assert!(text.contains("minors:     FAIL"));
    assert!(text.contains("verification verdict: FAIL"));
}

#[test]
fn sheaf_check_reports_verdicts() {
    let out = toric(&[
        "sheaf",
        "check",
        &fixture("p2.fan.json"),
        &fixture("tangent-filtrations.bundle.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verdict: compatible on all maximal cones"));

    let out = toric(&[
        "sheaf",
        "check",
        &fixture("orthant3.fan.json"),
        &fixture("m3.bundle.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verdict: incompatible"));
}

#[test]
fn sheaf_window_shows_grid_and_torsion_flag() {
    let out = toric(&[
        "sheaf",
        "window",
        &fixture("p2.fan.json"),
        &fixture("o0.bundle.json"),
        "--cone",
        "0,1",
        "--box",
        "-1..1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("nonzero spaces (4 of 9)"));
    assert!(text.contains("torsion free: true"));
}

#[test]
fn fan_dual_and_faces() {
    let out = toric(&[
        "fan",
        "dual",
        &fixture("p2.fan.json"),
        "--cone",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("(1, 0)"));
    assert!(text.contains("(0, 1)"));

    let out = toric(&[
        "fan",
        "faces",
        &fixture("p2.fan.json"),
        "--cone",
        "0,1",
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("faces (4)"));

    // Zero cone spelled as "-".
    let out = toric(&["fan", "faces", &fixture("p2.fan.json"), "--cone", "-"]);
    assert!(stdout_of(&out).contains("faces (1)"));

    // Out-of-range ray index in the flag.
    let out = toric(&["fan", "dual", &fixture("p2.fan.json"), "--cone", "7"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cox_info_lists_ideal_and_degrees() {
    let out = toric(&["cox", "info", &fixture("p2.fan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("irrelevant ideal: x2, x0, x1"));
    assert!(text.contains("deg x0 = 1"));

    let out = toric(&["cox", "info", &fixture("affine.fan.json")]);
    assert!(stdout_of(&out).contains("irrelevant ideal: 1"));
}
