use std::path::Path;
use std::process::{Command, Output};

use eigenmorph::families::{construct, verify_family, AnyFamily, FamilyParams, VerifyOptions};
use eigenmorph::report::{Envelope, VerificationReport};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenmorph")).args(args).arg("--out").arg(dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read_report(path: &Path) -> VerificationReport {
    let e: Envelope<VerificationReport> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    e.body
}

#[test]
fn verify_lemma_passes_and_is_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["verify-lemma", "--group", "gl_r:3", "--lemma", "4.1", "--samples", "20", "--seed", "7", "--tol", "1e-9"];
    assert_eq!(code(&run(a.path(), &args)), 0);
    assert_eq!(code(&run(b.path(), &args)), 0);
    let ra = read_report(&a.path().join("lemma-4.1-gl_r-3.json"));
    let rb = read_report(&b.path().join("lemma-4.1-gl_r-3.json"));
    assert_eq!(ra, rb);
    assert_eq!(ra.seed, 7);
    assert!(ra.pass);
}

#[test]
fn family_round_trip_matches_in_memory_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["make-family", "--group", "u_pq:2,1", "--theorem", "10.2", "--v", "1,i,0.5-2i"])), 0);
    let file = dir.path().join("family-10.2-u_pq-2-1.json");
    let loaded: AnyFamily = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let params = FamilyParams { v: Some(eigenmorph::families::parse_complex_list("1,i,0.5-2i").unwrap()), ..FamilyParams::default() };
    let fresh = construct(&"u_pq:2,1".parse().unwrap(), "10.2".parse().unwrap(), &params).unwrap();
    assert_eq!(loaded, fresh);

    let o = run(dir.path(), &["verify-family", "--family-file", file.to_str().unwrap(), "--samples", "12"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let from_file = read_report(&dir.path().join("verify-family-u_pq-2-1.json"));
    let in_memory = verify_family(&fresh, &VerifyOptions { samples: 12, ..VerifyOptions::default() }).unwrap();
    assert_eq!(from_file, in_memory);
}

#[test]
fn sl2_morphism_through_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["make-family", "--group", "sl_r:2", "--theorem", "4.2"])), 0);
    let family = dir.path().join("family-4.2-sl_r-2.json");
    let o = run(
        dir.path(),
        &["make-morphism", "--family-file", family.to_str().unwrap(), "--numerator", "[[[1,0],[1,0]]]", "--denominator", "[[[0,1],[1,0]]]"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = dir.path().join("morphism-sl_r-2.json");
    let o = run(dir.path(), &["verify-morphism", "--morphism-file", m.to_str().unwrap(), "--samples", "100", "--tol", "1e-10"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn dual_through_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["make-family", "--group", "so_star:2", "--theorem", "8.2"])), 0);
    let src = dir.path().join("family-8.2-so_star-2.json");
    assert_eq!(code(&run(dir.path(), &["dualize", "--family-file", src.to_str().unwrap()])), 0);
    let dual = dir.path().join("family-8.2-dual-so_star-2.json");
    let o = run(dir.path(), &["verify-dual", "--family-file", dual.to_str().unwrap(), "--samples", "10"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = read_report(&dir.path().join("verify-dual-dual-so_star-2.json"));
    assert!(r.provenance.starts_with("dual-of:"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let failing = run(dir.path(), &["verify-lemma", "--group", "so_pq:1,1", "--lemma", "11.1"]);
    assert_eq!(code(&failing), 1);
    assert!(dir.path().join("lemma-11.1-so_pq-1-1.json").exists());
    assert_eq!(code(&run(dir.path(), &["basis", "--group", "gl_q:2"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify-lemma", "--group", "u_pq:1,1", "--lemma", "4.1"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify-family", "--family-file", "/nonexistent/family.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["make-family", "--group", "gl_r:2", "--theorem", "4.2", "--v", "1,1"])), 2);
    assert_eq!(code(&run(dir.path(), &["basis", "--group", "sp_pq:1,1"])), 0);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_eigenmorph"))
        .args(["basis", "--group", "dual:sl_r:2"])
        .env("EIGENMORPH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("basis-dual-sl_r-2.json")).unwrap();
    assert!(text.contains("sign_diagnostic"));
}
