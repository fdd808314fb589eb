use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use hj_core::bundle::{parse_bundle, Bundle};
use hj_core::colouring::is_proper;
use tempfile::TempDir;

fn hj() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hj"));
    cmd.env_remove("HJ_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    hj().args(args).output().expect("hj runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K5_P2: &str = "kind=cos mode=generalized p=2\n5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn solve_cos_with_witness() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "k5.bundle", K5_P2);
    let o = run(&["solve", "cos", s(&b), "--witness"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "YES\nwitness forbidden 0\n2 0\n");
}

#[test]
fn solve_cpos_equal_endpoints_and_scos() {
    let dir = TempDir::new().unwrap();
    let cpos = file(
        &dir,
        "c.bundle",
        "kind=cpos mode=generalized p=3\n2 1\n0 1\n2 3\n0 1\n1 2\n2 3\n0 1\n1 2\n",
    );
    let o = run(&["solve", "cpos", s(&cpos)]);
    assert_eq!(stdout(&o), "YES\n");
    let scos = file(&dir, "s.bundle", "kind=scos mode=faithful\n(vars 4)\n(out false)\n");
    let o = run(&["solve", "scos", s(&scos), "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("YES\nwitness colouring\n4 1\n"));
    let o = run(&["solve", "cos", s(&scos)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_3col_generalized() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.graph", "3 3\n0 1\n0 2\n1 2\n");
    let out = dir.path().join("k3.bundle");
    let o = run(&[
        "reduce",
        "3col-cos",
        s(&g),
        s(&out),
        "--mode",
        "generalized",
        "--p",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Bundle::Cos(inst) = parse_bundle(&fs::read_to_string(&out).unwrap()).unwrap() else {
        panic!("not a cos bundle")
    };
    assert_eq!(inst.graph().vertex_count(), 48);
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("k3.bundle.provenance.json")).unwrap()).unwrap();
    assert_eq!(side["catalog"].as_array().unwrap().len(), 11);
    assert_eq!(side["clique"], serde_json::json!([3]));
    let o = run(&["solve", "cos", s(&out)]);
    assert_eq!(stdout(&o), "YES\n");
}

#[test]
fn reduce_4cp_emits_proper_colourings() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "in.txt", "2 1\n0 1\n2 4\n0 1\n1 2\n2 4\n0 3\n1 2\n");
    let out = dir.path().join("out.bundle");
    let o = run(&[
        "reduce",
        "4cp-cpos",
        s(&input),
        s(&out),
        "--mode",
        "generalized",
        "--p",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Bundle::Cpos(inst) = parse_bundle(&fs::read_to_string(&out).unwrap()).unwrap() else {
        panic!("not a cpos bundle")
    };
    assert!(is_proper(inst.graph(), inst.alpha()).unwrap());
    assert!(is_proper(inst.graph(), inst.beta()).unwrap());
    let o = run(&["solve", "cpos", s(&out), "--witness"]);
    assert!(stdout(&o).starts_with("YES\nwitness path\n"));
}

#[test]
fn reduce_succinct_has_6m_variables() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k2.graph", "2 1\n0 1\n");
    let o = run(&["circuit", "encode", s(&g)]);
    let phi = file(&dir, "k2.cir", &stdout(&o));
    let out = dir.path().join("k2.scos");
    let o = run(&["reduce", "s3col-scos", s(&phi), s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("(vars 12)"));
    assert!(dir.path().join("k2.scos.provenance.json").exists());
}

#[test]
fn faithful_reduction_too_small_is_input_error() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.graph", "3 3\n0 1\n0 2\n1 2\n");
    let o = run(&[
        "reduce",
        "3col-cos",
        s(&g),
        s(&dir.path().join("o")),
        "--mode",
        "faithful",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(">= 4, got p = 2"), "{}", stderr(&o));
    let o = run(&[
        "reduce",
        "3col-cos",
        s(&g),
        s(&dir.path().join("o")),
        "--mode",
        "generalized",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    let a = run(&["verify", "3col-cos", "--max-n", "4", "--samples", "20", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains("3col-cos: 38 cases, 38 passed"));
    let b = run(&[
        "verify",
        "3col-cos",
        "--max-n",
        "4",
        "--samples",
        "20",
        "--seed",
        "5",
        "--jobs",
        "1",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
    let o = run(&["verify", "4cp-cpos", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "s3col-scos", "--m", "2", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn enumerate_writes_catalog() {
    let dir = TempDir::new().unwrap();
    let o = run(&["enumerate", "--p", "4", s(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 11);
    let o = run(&["enumerate", "--p", "12", s(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn circuit_round_trip_and_eval() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k2.graph", "2 1\n0 1\n");
    let phi = file(&dir, "k2.cir", &stdout(&run(&["circuit", "encode", s(&g)])));
    let o = run(&["circuit", "materialize", s(&phi)]);
    assert_eq!(stdout(&o), "4 1\n1 2\n");
    assert_eq!(stdout(&run(&["circuit", "eval", s(&phi), "1001"])), "true\n");
    assert_eq!(stdout(&run(&["circuit", "eval", s(&phi), "1010"])), "false\n");
    assert_eq!(run(&["circuit", "eval", s(&phi), "10"]).status.code(), Some(1));
}

#[test]
fn recon_commands() {
    let dir = TempDir::new().unwrap();
    let k3 = file(&dir, "k3.graph", "3 3\n0 1\n0 2\n1 2\n");
    let rainbow = file(&dir, "a.col", "3 3\n0 1\n1 2\n2 3\n");
    assert_eq!(stdout(&run(&["recon", "frozen", s(&k3), s(&rainbow)])), "0\n1\n2\n");

    let k2 = file(&dir, "k2.graph", "2 1\n0 1\n");
    let a = file(&dir, "a2.col", "2 3\n0 1\n1 2\n");
    let b = file(&dir, "b2.col", "2 3\n0 3\n1 2\n");
    let o = run(&["recon", "path-exists", s(&k2), s(&a), s(&b), "--witness"]);
    assert_eq!(stdout(&o), "YES\nwitness path\n2 3 2\n0 1\n1 2\n0 3\n1 2\n");

    let mut child = hj()
        .args(["recon", "validate-path", s(&k2), s(&a), s(&b)])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2 3 2\n0 1\n1 2\n0 3\n1 2\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "VALID\n");

    let bad = file(&dir, "bad.path", "2 3 2\n0 1\n1 2\n0 3\n1 1\n");
    let o = run(&["recon", "validate-path", s(&k2), s(&a), s(&b), s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "e.graph", "6 0\n");
    let a = file(&dir, "a.col", "6 4\n0 1\n1 1\n2 1\n3 1\n4 1\n5 1\n");
    let b = file(&dir, "b.col", "6 4\n0 2\n1 1\n2 1\n3 1\n4 1\n5 1\n");
    // the budget applies per component; a lone vertex has 4 colourings
    assert_eq!(
        run(&["recon", "path-exists", s(&g), s(&a), s(&b), "--budget", "4"])
            .status
            .code(),
        Some(0)
    );

    let p6 = file(&dir, "p6.graph", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let a = file(&dir, "pa.col", "6 4\n0 1\n1 2\n2 1\n3 2\n4 1\n5 2\n");
    let b = file(&dir, "pb.col", "6 4\n0 2\n1 1\n2 2\n3 1\n4 2\n5 1\n");
    let o = run(&["recon", "path-exists", s(&p6), s(&a), s(&b), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = hj()
        .args(["recon", "path-exists", s(&p6), s(&a), s(&b)])
        .env("HJ_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["recon", "path-exists", s(&p6), s(&a), s(&b)]);
    assert_eq!(stdout(&o), "YES\n");
}

#[test]
fn input_errors_exit_1_with_positions() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "bad.graph", "3 2\n0 1\n1 x\n");
    let o = run(&["circuit", "encode", s(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("3:3"), "{}", stderr(&o));
    assert_eq!(run(&["solve", "cos", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
