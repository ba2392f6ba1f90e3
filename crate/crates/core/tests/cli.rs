use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn altcomm(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_altcomm"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        [
            "gen", "matrix", "--n", "2", "--field", "q", "-o", "m2q.json",
        ]
        .as_slice(),
        &["gen", "zorn", "--field", "q", "-o", "zorn.json"],
        &[
            "gen",
            "direct-sum",
            "--left",
            "field",
            "--right",
            "field",
            "-o",
            "qq.json",
        ],
    ] {
        assert_eq!(altcomm(dir.path(), args).0, 0);
    }
    std::fs::write(
        dir.path().join("transpose.json"),
        r#"{"dim": 4, "matrix": [["1","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","1"]]}"#,
    )
    .unwrap();
    dir
}

#[test]
fn gen_writes_algebra_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = altcomm(dir.path(), &["gen", "matrix", "--n", "2", "--field", "q"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("m2q.json"));
    let algebra: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m2q.json")).unwrap())
            .unwrap();
    assert_eq!(algebra["dim"], 4);
    assert_eq!(algebra["field"]["kind"], "rational");
    assert_eq!(algebra["basis"][1], "E12");
    let e: Vec<String> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m2q.e1.json")).unwrap())
            .unwrap();
    assert_eq!(e, ["1", "0", "0", "0"]);

    let (code, _, _) = altcomm(dir.path(), &["gen", "zorn", "--field", "p5"]);
    assert_eq!(code, 0);
    let zorn: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("zornf5.json")).unwrap())
            .unwrap();
    assert_eq!(zorn["field"]["p"], 5);

    let (code, stdout, _) = altcomm(
        dir.path(),
        &[
            "gen",
            "cayley-dickson",
            "--steps",
            "3",
            "--gammas",
            "1,1,1",
            "-o",
            "-",
        ],
    );
    assert_eq!(code, 0);
    let cd: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(cd["dim"], 8);
    assert!(cd["comment"].as_str().unwrap().contains("1,1,1"));
}

#[test]
fn gen_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        ["gen", "matrix", "--n", "1"].as_slice(),
        &["gen", "zorn", "--field", "p3"],
        &["gen", "zorn", "--field", "p9"],
        &["gen", "cayley-dickson", "--steps", "2", "--gammas", "1"],
        &["gen", "cayley-dickson", "--steps", "1", "--gammas", "0"],
        &["gen", "direct-sum", "--left", "field"],
        &["gen", "octonions"],
    ] {
        let (code, _, stderr) = altcomm(dir.path(), args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!stderr.is_empty());
    }
}

#[test]
fn golden_peirce_zorn() {
    let dir = fixtures();
    let (code, stdout, _) = altcomm(dir.path(), &["peirce", "zorn.json", "-e", "e11"]);
    assert_eq!(code, 0);
    let expected = "\
peirce: Zorn(Q) over Q
  dims: (1, 3, 3, 1)
  R11: 1,0,0,0,0,0,0,0
  R12:
    0,0,1,0,0,0,0,0
    0,0,0,1,0,0,0,0
    0,0,0,0,1,0,0,0
  R21:
    0,0,0,0,0,1,0,0
    0,0,0,0,0,0,1,0
    0,0,0,0,0,0,0,1
  R22: 0,1,0,0,0,0,0,0
  ✓ nontrivial idempotent
  ✓ P11 + P12 + P21 + P22 = I
  ✓ (i) R_ij R_jl ⊆ R_il
  ✓ (ii) R_ij R_ij ⊆ R_ji
  ✓ (iii) R_ij R_kl = 0 (j != k, (i,j) != (k,l))
  ✓ (iv) x_ij^2 = 0 (i != j)
";
    assert_eq!(stdout, expected);
}

#[test]
fn golden_hypothesis_failure() {
    let dir = fixtures();
    let (code, stdout, _) = altcomm(dir.path(), &["hypothesis", "qq.json", "-e", "1,0"]);
    assert_eq!(code, 1);
    let expected = "\
hypothesis: Q (+) Q over Q
  ✓ nontrivial idempotent
  ✗ x𝔯·e1 = 0 => x = 0  witness: 0,1
  ✗ x𝔯·e2 = 0 => x = 0  witness: 1,0
";
    assert_eq!(stdout, expected);
}

#[test]
fn witnesses_round_trip_as_inputs() {
    let dir = fixtures();
    let (_, stdout, _) = altcomm(
        dir.path(),
        &[
            "hypothesis",
            "qq.json",
            "-e",
            "1,0",
            "--format",
            "json",
            "--deterministic",
        ],
    );
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let witness = &report["checks"][1]["witness"];
    std::fs::write(dir.path().join("w.json"), witness.to_string()).unwrap();
    // the witness (0,1) is itself a nontrivial idempotent of Q (+) Q
    let (code, _, _) = altcomm(dir.path(), &["hypothesis", "qq.json", "-e", "w.json"]);
    assert_eq!(code, 1);
    let (code, _, _) = altcomm(dir.path(), &["peirce", "qq.json", "-e", "w.json"]);
    assert_eq!(code, 0);
}

#[test]
fn decompose_reports() {
    let dir = fixtures();
    let (code, stdout, _) = altcomm(
        dir.path(),
        &[
            "decompose",
            "m2q.json",
            "-e",
            "E11",
            "--map",
            "identity",
            "--format",
            "json",
            "--deterministic",
        ],
    );
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["z"], serde_json::json!(["1", "0", "0", "1"]));
    assert_eq!(r["z1"], serde_json::json!(["0", "0", "0", "0"]));
    assert_eq!(r["verified"], true);
    assert!(r["xi"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| row.as_array().unwrap())
        .all(|v| v == "0"));
    assert!(r.get("generated_at").is_none());

    let (code, stdout, _) = altcomm(
        dir.path(),
        &[
            "decompose",
            "m2q.json",
            "-e",
            "E11",
            "--map",
            "transpose.json",
        ],
    );
    assert_eq!(code, 1);
    assert!(stdout.contains("✗ commuting  witness: x = 1,0,0,0; y = 0,1,0,0; value = 0,1,1,0"));
}

#[test]
fn timestamp_only_without_deterministic() {
    let dir = fixtures();
    let (_, stdout, _) = altcomm(dir.path(), &["verify", "m2q.json", "--format", "json"]);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert!(r["generated_at"].is_u64());
    let (_, text, _) = altcomm(dir.path(), &["verify", "m2q.json"]);
    assert!(!text.contains("generated_at"));
}

#[test]
fn lemmas_table() {
    let dir = fixtures();
    let (code, stdout, _) = altcomm(
        dir.path(),
        &[
            "lemmas",
            "zorn.json",
            "-e",
            "e11",
            "--map",
            "random",
            "--seed",
            "7",
        ],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("passed: 9/9"));
    let (code, stdout, _) = altcomm(
        dir.path(),
        &["lemmas", "m2q.json", "-e", "E11", "--map", "transpose.json"],
    );
    assert_eq!(code, 1);
    assert_eq!(stdout.matches("n-a L").count(), 9);
    assert!(stdout.contains("(not commuting)"));
}

#[test]
fn input_errors_exit_2() {
    let dir = fixtures();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    std::fs::write(
        dir.path().join("short.json"),
        r#"{"dim": 2, "matrix": [["1","0"],["0","1"]]}"#,
    )
    .unwrap();
    for args in [
        ["verify", "bad.json"].as_slice(),
        &["verify", "missing.json"],
        &["peirce", "m2q.json", "-e", "1,0"],
        &["peirce", "m2q.json", "-e", "E33"],
        &["check-map", "m2q.json", "--map", "short.json"],
        &["prime", "m2q.json"],
        &["oracle", "m2q.json", "--map", "identity"],
        &["verify", "m2q.json", "--format", "yaml"],
        &["prime", "m2q.json", "--budget", "0"],
    ] {
        let (code, _, stderr) = altcomm(dir.path(), args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
    }
}

#[test]
fn non_idempotent_is_a_property_failure() {
    let dir = fixtures();
    let (code, stdout, _) = altcomm(dir.path(), &["peirce", "m2q.json", "-e", "E12"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("✗ nontrivial idempotent  witness: e = 0,1,0,0; e·e = 0,0,0,0"));
}
