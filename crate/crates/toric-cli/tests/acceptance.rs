//! Acceptance: reports are byte-identical across runs on the whole fixture
//! corpus, and parse -> emit -> parse is the identity on the structured
//! representations.

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

#[test]
fn acceptance_11_cli_determinism_and_roundtrip() {
    let fans = ["p2", "p1p1", "f1", "f2", "affine", "orthant3"];
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for fan in fans {
        let fan_file = fixture(&format!("{}.fan.json", fan));
        for format in ["text", "json"] {
            invocations.push(vec![
                "fan".into(),
                "info".into(),
                fan_file.clone(),
                "--format".into(),
                format.into(),
            ]);
            invocations.push(vec![
                "cox".into(),
                "info".into(),
                fan_file.clone(),
                "--format".into(),
                format.into(),
            ]);
            invocations.push(vec![
                "fan".into(),
                "faces".into(),
                fan_file.clone(),
                "--cone".into(),
                "0".into(),
                "--format".into(),
                format.into(),
            ]);
            invocations.push(vec![
                "fan".into(),
                "dual".into(),
                fan_file.clone(),
                "--cone".into(),
                "0".into(),
                "--format".into(),
                format.into(),
            ]);
        }
    }
    for bundle in ["o0", "o1", "tangent-filtrations"] {
        for format in ["text", "json"] {
            invocations.push(vec![
                "sheaf".into(),
                "sections".into(),
                fixture("p2.fan.json"),
                fixture(&format!("{}.bundle.json", bundle)),
                "--format".into(),
                format.into(),
            ]);
            invocations.push(vec![
                "sheaf".into(),
                "check".into(),
                fixture("p2.fan.json"),
                fixture(&format!("{}.bundle.json", bundle)),
                "--format".into(),
                format.into(),
            ]);
            invocations.push(vec![
                "sheaf".into(),
                "window".into(),
                fixture("p2.fan.json"),
                fixture(&format!("{}.bundle.json", bundle)),
                "--cone".into(),
                "0,1".into(),
                "--box".into(),
                "-2..2".into(),
                "--format".into(),
                format.into(),
            ]);
        }
    }
    for format in ["text", "json"] {
        invocations.push(vec![
            "euler".into(),
            "resolve".into(),
            fixture("p2.fan.json"),
            fixture("tangent.bundle.json"),
            "--format".into(),
            format.into(),
        ]);
        invocations.push(vec![
            "sheaf".into(),
            "check".into(),
            fixture("orthant3.fan.json"),
            fixture("m3.bundle.json"),
            "--format".into(),
            format.into(),
        ]);
    }

    for args in &invocations {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = toric(&argv);
        let second = toric(&argv);
        assert_eq!(
            first.status.code(),
            second.status.code(),
            "exit codes differ for {:?}",
            args
        );
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs between runs for {:?}",
            args
        );
        assert!(
            first.status.code() == Some(0),
            "corpus command failed: {:?}",
            args
        );
    }
    println!("acceptance 11a (byte-identical reports on the corpus): PASS");

    // Parse -> emit -> parse: the "fan" object of a JSON report is itself a
    // valid fan file producing the identical report; same for bundles.
    let dir = tempfile::tempdir().unwrap();
    for fan in fans {
        let args = [
            "fan",
            "info",
            &fixture(&format!("{}.fan.json", fan)),
            "--format",
            "json",
        ];
        let first = toric(&args);
        let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        let emitted = dir.path().join(format!("{}.emitted.fan.json", fan));
        fs::write(&emitted, serde_json::to_string(&report["fan"]).unwrap()).unwrap();
        let second = toric(&[
            "fan",
            "info",
            emitted.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let reparsed: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
        assert_eq!(report["fan"], reparsed["fan"], "fan round trip for {}", fan);
        assert_eq!(report, reparsed, "full report round trip for {}", fan);
    }

    for bundle in ["o0", "o1", "tangent-filtrations", "tangent"] {
        let args = [
            "sheaf",
            "check",
            &fixture("p2.fan.json"),
            &fixture(&format!("{}.bundle.json", bundle)),
            "--format",
            "json",
        ];
        let first = toric(&args);
        assert_eq!(first.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        let emitted = dir.path().join(format!("{}.emitted.bundle.json", bundle));
        fs::write(&emitted, serde_json::to_string(&report["bundle"]).unwrap()).unwrap();
        let second = toric(&[
            "sheaf",
            "check",
            &fixture("p2.fan.json"),
            emitted.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let reparsed: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
        assert_eq!(
            report["bundle"], reparsed["bundle"],
            "bundle round trip for {}",
            bundle
        );
    }
    println!("acceptance 11b (parse/emit round trip identity): PASS");
}
