use std::path::PathBuf;
use std::process::Command;

use artinian_cli::instance::{canonical_string, parse_instance, InputError};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn artinian(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_artinian"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(artinian(&["remark38"]).1, 0);
    assert_eq!(artinian(&["validate", &fixture("i3.json")]).1, 0);
    assert_eq!(artinian(&["thm37", &fixture("controls/nonflat.json")]).1, 1);
    assert_eq!(
        artinian(&["validate", &fixture("controls/noncommutative.json")]).1,
        2
    );
    assert_eq!(artinian(&["validate", "/definitely/not/here.json"]).1, 2);
    assert_eq!(artinian(&["no-such-command"]).1, 2);
    assert_eq!(artinian(&["suite", &fixture("controls")]).1, 2);
}

#[test]
fn noncommutative_diagnostic_names_the_entry() {
    let (text, _) = artinian(&["validate", &fixture("controls/noncommutative.json")]);
    assert!(
        text.contains("ValidationError: NotCommutative at algebras.S.mul[1][0]"),
        "{text}"
    );
}

#[test]
fn analyze_reports_rank_and_basis() {
    let (text, code) = artinian(&["analyze", &fixture("i2.json")]);
    assert_eq!(code, 0);
    for needle in ["m = 2", "ε = (1, √2)", "t0 = 3"] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
}

#[test]
fn every_fixture_round_trips_byte_identically() {
    let mut names = vec![];
    for dir in [fixtures(), fixtures().join("controls")] {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "json") {
                names.push(p);
            }
        }
    }
    assert!(names.len() >= 8);
    for path in names {
        let text = std::fs::read_to_string(&path).unwrap();
        match parse_instance(text.as_bytes()) {
            Ok(inst) => assert_eq!(
                canonical_string(&inst.to_json()),
                text,
                "{}",
                path.display()
            ),
            Err(InputError::Validation { .. }) => assert!(path.ends_with("noncommutative.json")),
            Err(e) => panic!("{}: {e}", path.display()),
        }
    }
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (stdout, code) = artinian(&[
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "remark38",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["passed"], true);
    assert_eq!(written["command"], "remark38");
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1, "no temporary files remain");
}

#[test]
fn seed_changes_random_modules_only_through_the_seed() {
    let a = artinian(&[
        "--seed",
        "1",
        "--format",
        "json",
        "thm37",
        &fixture("i4.json"),
    ]);
    let b = artinian(&[
        "--seed",
        "1",
        "--format",
        "json",
        "thm37",
        &fixture("i4.json"),
    ]);
    let c = artinian(&[
        "--seed",
        "2",
        "--format",
        "json",
        "thm37",
        &fixture("i4.json"),
    ]);
    assert_eq!(a, b);
    assert_eq!(c.1, 0);
    assert_ne!(a.0, c.0);
}

#[test]
fn tensor_emits_a_valid_presentation() {
    let (text, code) = artinian(&[
        "--format",
        "json",
        "tensor",
        &fixture("i2.json"),
        "--module",
        "R/x2",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let data = &report["instances"][0]["data"];
    // R/(x²) ⊗ S has K-dimension 2·2 and S-length 2
    assert_eq!(data["presentation"]["dim"], 4);
    assert_eq!(data["length"], 2);
    assert_eq!(
        artinian(&["tensor", &fixture("i2.json"), "--module", "S/n"]).1,
        2
    );
}

#[test]
fn schema_errors_point_at_the_offending_path() {
    let cases: [(&[u8], &str); 4] = [
        (br#"{"field": {"kind": "Q"}, "algebras": {"R": {"dim": 1, "unit": ["1"], "mul": [[["1"]]], "extra": 0}}}"#, "algebras.R.extra"),
        (br#"{"field": {"kind": "Z"}, "algebras": {}}"#, "field.kind"),
        (br#"{"field": {"kind": "Q"}, "algebras": {"R": {"dim": 1, "unit": ["x"], "mul": [[["1"]]]}}}"#, "algebras.R.unit[0]"),
        (br#"{"field": {"kind": "Q"}, "algebras": {"R": {"dim": 1, "unit": ["1"], "mul": [[["1"]]]}}, "maps": {"f": {"from": "R", "to": "T", "matrix": [["1"]]}}}"#, "maps.f.to"),
    ];
    for (doc, expected) in cases {
        match parse_instance(doc) {
            Err(InputError::Schema { path, .. }) => assert_eq!(path, expected),
            other => panic!("{expected}: {other:?}"),
        }
    }
}

#[test]
fn validation_errors_wrap_core_diagnostics() {
    // x ↦ 1 in ℚ[x]/(x²) → ℚ is not multiplicative
    let doc = br#"{"field": {"kind": "Q"},
      "algebras": {"R": {"dim": 2, "unit": ["1", "0"], "mul": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]]},
                   "K": {"dim": 1, "unit": ["1"], "mul": [[["1"]]]}},
      "maps": {"f": {"from": "R", "to": "K", "matrix": [["1", "1"]]}}}"#;
    match parse_instance(doc) {
        Err(InputError::Validation { path, kind, .. }) => {
            assert_eq!(path, "maps.f.matrix");
            assert_eq!(kind, "NotMultiplicative");
        }
        other => panic!("{other:?}"),
    }
    // e_1 acting as the identity on a one-dimensional module breaks x² = 0
    let doc = br#"{"field": {"kind": "Q"},
      "algebras": {"R": {"dim": 2, "unit": ["1", "0"], "mul": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]]}},
      "modules": {"M": {"algebra": "R", "dim": 1, "actions": [[["1"]], [["1"]]]}}}"#;
    match parse_instance(doc) {
        Err(InputError::Validation { path, kind, .. }) => {
            assert_eq!(kind, "NotAModule");
            assert!(path.starts_with("modules.M.actions["), "{path}");
        }
        other => panic!("{other:?}"),
    }
}
