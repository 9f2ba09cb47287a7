use std::path::PathBuf;
use std::process::{Command, Output};

fn lring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_spec(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn gallery_prints_four_pass_lines() {
    let o = lring(&["gallery"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let pass: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS ")).collect();
    assert_eq!(
        pass,
        [
            "PASS A_product_identity",
            "PASS B_zero_mult_identity",
            "PASS C_linfty_product_vs_norm",
            "PASS D_fring_failure_matrix"
        ]
    );
}

#[test]
fn laws_on_q3_pass() {
    let o = lring(&["laws", "q3_pointwise", "--seed", "7", "--cases", "1000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn laws_on_matrix_ring_fail_f_ring_with_witness() {
    let o = lring(&["laws", "matrix2_entrywise", "--cases", "200"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL f_ring"), "{out}");
    assert!(out.contains("witness: a = "), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("FAIL ")).count(), 1);
}

#[test]
fn input_errors_exit_with_two() {
    let o = lring(&["laws", "q3_pointwise", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid argument"), "{}", stderr(&o));

    let o = lring(&["laws", "q9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("q9"));

    let o = lring(&["classify", "--spec", &spec("q2.toml"), "--hom", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown hom \"Nope\""), "{}", stderr(&o));
}

#[test]
fn malformed_spec_reports_the_line() {
    let p = temp_spec(
        "bad.toml",
        "[space]\ninstance = \"q2_pointwise\"\n\n[homs]\nT = { matrix = [[\"1\"]], color = 3 }\n",
    );
    let o = lring(&["classify", "--spec", &p, "--hom", "T"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 5"), "{err}");

    let p = temp_spec("unknown_key.toml", "[space]\ninstance = \"q2_pointwise\"\nflavor = \"x\"\n");
    let o = lring(&["run", "--spec", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("flavor"), "{}", stderr(&o));

    let p = temp_spec("dangling.toml", "[space]\ninstance = \"q2_pointwise\"\n\n[nets]\nN = { base = \"T\" }\n");
    let o = lring(&["run", "--spec", &p]);
    assert!(stderr(&o).contains("unknown hom \"T\""), "{}", stderr(&o));
}

#[test]
fn classify_identity_on_product_gives_case_a() {
    let p = temp_spec("a.toml", "[space]\ninstance = \"evseq_product\"\n\n[homs]\nI = { identity = true }\n");
    let out = stdout(&lring(&["classify", "--spec", &p, "--hom", "I"]));
    for line in [
        "order_bounded: true",
        "ring.nr: false",
        "ring.br: true",
        "group.nr: false",
        "group.br: true",
        "continuous: true",
    ] {
        assert!(out.contains(line), "{line} missing from\n{out}");
    }
    assert!(out.contains("witness: ring.nr: U({1}, 1) does not absorb U({0}, 1)"), "{out}");
}

#[test]
fn bounded_diagonal_on_supnorm_has_every_flag() {
    let p = temp_spec(
        "diag.toml",
        "[space]\ninstance = \"evseq_supnorm\"\n\n[homs]\nD = { diagonal = { prefix = [\"3\", \"-1/2\"], tail = \"2\" } }\n",
    );
    let o = lring(&["classify", "--spec", &p, "--hom", "D", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = &doc["tasks"]["D"]["values"];
    for k in ["order_bounded", "ring.nr", "ring.br", "group.nr", "group.br", "continuous"] {
        assert_eq!(v[k], "true", "{k}");
    }
    assert_eq!(v["continuity U for unit W"], "B(1/3)");
}

#[test]
fn posp_matches_the_oracle() {
    let o = lring(&["posp", "--spec", &spec("q2.toml"), "--hom", "T"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("positive part: [[1, 0], [0, 4]]"), "{out}");
    assert!(out.contains("oracle agreement: 200/200"), "{out}");
}

#[test]
fn decompose_example() {
    let o = lring(&["decompose", "--spec", &spec("q2.toml"), "--x", "x", "--y1", "y1", "--y2", "y2"]);
    let out = stdout(&o);
    assert!(out.contains("x1: (1, 0)") && out.contains("x2: (0, 1)"), "{out}");
    assert!(out.contains("PASS postconditions"), "{out}");
}

#[test]
fn converge_reports_certificates_and_refutations() {
    let o = lring(&[
        "converge",
        "--spec",
        &spec("q2.toml"),
        "--net",
        "N",
        "--mode",
        "br",
        "--set",
        "B",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["tasks"]["N"]["values"]["alpha0 at box(1/10, 1/10)"], "30 (least)");

    let o = lring(&["converge", "--spec", &spec("sequences.toml"), "--net", "Bad", "--mode", "nr", "--set", "U"]);
    let out = stdout(&o);
    assert!(out.contains("convergent: false"), "{out}");
    assert!(out.contains("witness: B(1) is left at coordinate 2"), "{out}");

    let o = lring(&["converge", "--spec", &spec("q2.toml"), "--net", "N", "--mode", "nr"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shipped_specs_run_clean() {
    for name in ["q2.toml", "sequences.toml"] {
        let o = lring(&["run", "--spec", &spec(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn machine_reports_are_byte_identical() {
    for args in
        [vec!["gallery", "--format", "machine"], vec!["laws", "q2_pointwise", "--seed", "3", "--format", "machine"]]
    {
        let (a, b) = (lring(&args), lring(&args));
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}
