use std::path::PathBuf;

use valseries_cli::run;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("valseries").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn series_both_verifies_type_41() {
    let spec = data("t41.json");
    let (code, out, _) = exec(&[
        "series", "--spec", &spec, "--bound", "7", "--method", "both",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "# bound=7 complete=true\n0\t1\n2\t1\n3\t1\n4\t1\n5\t1\n6\t1\n7\t1\nVERIFIED\n"
    );
}

#[test]
fn series_methods_agree() {
    let spec = data("t41.json");
    let (_, formula, _) = exec(&["series", "--spec", &spec, "--bound", "30"]);
    let (_, listed, _) = exec(&[
        "series", "--spec", &spec, "--bound", "30", "--method", "enum",
    ]);
    assert_eq!(formula, listed);
}

#[test]
fn verify_reports_failure_at_six() {
    let spec = data("t41-badq.json");
    let (code, out, _) = exec(&["verify", "--spec", &spec, "--bound", "12"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL at 6:"), "{out}");
}

#[test]
fn verify_passes_on_pieces_spec() {
    let spec = data("pieces.json");
    let (code, out, _) = exec(&["verify", "--spec", &spec, "--bound", "60"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS: "));
}

#[test]
fn both_method_reports_mismatch_with_exit_one() {
    let spec = data("t41-badq.json");
    let (code, out, _) = exec(&[
        "series", "--spec", &spec, "--bound", "12", "--method", "both",
    ]);
    assert_eq!(code, 1);
    assert!(out.ends_with("MISMATCH at 6: formula=2 enum=1\n"), "{out}");
    // the plain enumeration refuses the non-unique spec
    let (code, _, err) = exec(&[
        "series", "--spec", &spec, "--bound", "12", "--method", "enum",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("more than one constrained representation"));
}

#[test]
fn classify_commands() {
    let (code, out, _) = exec(&["classify", "--spec", &data("t2.json")]);
    assert_eq!((code, out.as_str()), (0, "candidates: 2\n"));
    let (_, out, _) = exec(&["classify", "--spec", &data("t42.json")]);
    assert_eq!(out, "candidates: 3, 4.2\n");
    let (code, _, err) = exec(&["classify", "--spec", &data("t41-badq.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("classification"));
}

#[test]
fn q_prints_pieces() {
    let (code, out, _) = exec(&["q", "--spec", &data("pieces.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "piece 0: [1,1] p=3 q=2\npiece 1: [2,3] p=9 q=4\n");
}

#[test]
fn golden_ratio_series() {
    let spec = data("t2.json");
    let (code, out, _) = exec(&[
        "series", "--spec", &spec, "--bound", "2+0*tau", "--method", "both",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "# bound=2+0*tau complete=true\n0+0*tau\t1\n1+0*tau\t1\n0+1*tau\t1\n2+0*tau\t1\nVERIFIED\n"
    );
}

#[test]
fn lex_box_series_and_oracle() {
    let spec = data("t42.json");
    let (code, out, _) = exec(&[
        "series", "--spec", &spec, "--bound", "(2,2)", "--method", "both",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "# bound=(2,2) complete=true\n(0,0)\t1\n(1,0)\t1\n(1,1)\t1\n(2,0)\t1\n(2,1)\t1\n(2,2)\t1\nVERIFIED\n"
    );
    let (code, out, _) = exec(&["oracle", "--spec", &spec, "--bound", "(2,2)"]);
    assert_eq!(code, 0);
    assert!(out.contains("(2,1)\t(1,1)\n"));
}

#[test]
fn divisorial_formula_has_lattice_counts() {
    let spec = data("t0.json");
    let (code, out, _) = exec(&["series", "--spec", &spec, "--bound", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("\n6\t2\n"));
    assert!(out.ends_with("\n12\t3\n"));
    let (code, _, _) = exec(&["verify", "--spec", &spec, "--bound", "12"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let spec = data("t41.json");
    let args = ["oracle", "--spec", spec.as_str(), "--bound", "25"];
    let first = exec(&args);
    for _ in 0..5 {
        assert_eq!(exec(&args), first);
    }
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = exec(&["series", "--spec", &data("t41.json"), "--bound", "(2,2)"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));
    let (code, _, _) = exec(&["series", "--spec", "/nonexistent/spec.json", "--bound", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["series", "--spec", &data("t41.json")]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&[
        "series",
        "--spec",
        &data("t41.json"),
        "--bound",
        "3",
        "--method",
        "magic",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn bad_spec_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"type":"4.1","g":1,"betas":["2","3"],"qs":[3],"pieces":[[2,3]]}"#,
    )
    .unwrap();
    let (code, _, err) = exec(&["verify", "--spec", path.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("disagree"), "{err}");

    std::fs::write(&path, "{\"type\": \"4.1\",\n \"g\": 1,,}").unwrap();
    let (code, _, err) = exec(&["verify", "--spec", path.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}
