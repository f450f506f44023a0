//! Acceptance criteria 1 to 9, one PASS/FAIL line each.
//!
//! Criteria 1, 2, 4 and 8 cannot pass as stated. Each gets a test for its
//! amended form, which runs by default, and an ignored test for the form as
//! stated, which fails when run with `--ignored`.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use eigenmorph::suite::{self, Battery, CriterionOutcome, SuiteOptions};
use num_complex::Complex64;

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

fn battery() -> &'static Battery {
    static B: OnceLock<Battery> = OnceLock::new();
    B.get_or_init(|| suite::morphism_battery(&opts()).expect("battery"))
}

/// Writes straight to the process stderr so the line shows up without
/// `--nocapture`.
fn emit(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

fn report(o: &CriterionOutcome) {
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    emit(&format!("ACCEPTANCE criterion {}: {verdict} as stated ({})", o.id, o.title));
    if let Some(a) = &o.amended {
        let verdict = if a.pass { "PASS" } else { "FAIL" };
        emit(&format!("ACCEPTANCE criterion {}: {verdict} with {}", o.id, a.replacement));
    }
}

fn assert_amended(o: &CriterionOutcome) {
    let a = o.amended.as_ref().expect("amended verdict");
    assert!(a.pass, "{}", a.failures.join("\n"));
}

#[test]
fn criterion_1_identities() {
    let t = Instant::now();
    let o = suite::criterion_identities().unwrap();
    let elapsed = t.elapsed();
    report(&o);
    assert_amended(&o);
    assert_eq!(o.failures.len(), 1, "{:?}", o.failures);
    assert!(o.failures[0].starts_with("mixed_conjugation:"));
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
}

#[test]
#[ignore = "the displayed mixed X/Y/D identity is false; see the decisions ledger"]
fn criterion_1_as_stated() {
    let o = suite::criterion_identities().unwrap();
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_2_lemma_battery() {
    let t = Instant::now();
    let o = suite::criterion_lemmas(&opts()).unwrap();
    let elapsed = t.elapsed();
    report(&o);
    assert_amended(&o);
    assert_eq!(o.failures.len(), 1);
    assert!(o.failures[0].starts_with("kappa(x_ij,x_kl) as stated"));
    assert!(elapsed < Duration::from_secs(60), "{elapsed:?}");
}

#[test]
#[ignore = "the displayed kappa relation of the so(p,q) lemma is false; see the decisions ledger"]
fn criterion_2_as_stated() {
    let o = suite::criterion_lemmas(&opts()).unwrap();
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_3_family_axioms() {
    let o = suite::criterion_families(&SuiteOptions { max_size: 8, ..opts() }).unwrap();
    report(&o);
    assert!(o.pass, "{}", o.failures.join("\n"));
}

/// Spot values of the constant table, typed in by hand.
#[test]
fn criterion_3_table_spot_values() {
    use eigenmorph::families::{construct, verify_family, FamilyParams, VerifyOptions};
    let cases: &[(&str, &str, &[(&str, f64)])] = &[
        ("gl_r:3", "4.2", &[("lambda", 1.0), ("mu", 0.0)]),
        ("u_star:2", "5.4", &[("lambda", -1.0), ("mu", 0.0)]),
        ("sp_r:2", "6.2", &[("lambda", 0.5), ("mu", -0.5)]),
        ("so_star:3", "8.2", &[("lambda_1", -0.5), ("mu_1", -0.5), ("mu_cross", 0.5)]),
        ("u_pq:2,1", "10.2", &[("lambda_1", -1.0), ("lambda_2", 1.0), ("mu_1", -1.0), ("mu_cross", 1.0)]),
        ("so_pq:4,2", "11.2", &[("lambda_1", -0.5), ("lambda_2", 1.5), ("mu_2", -0.5), ("mu_cross", 0.5)]),
        ("sp_pq:1,2", "12.2", &[("lambda_1", 0.5), ("lambda_2", -1.5), ("mu_1", -0.5), ("mu_cross", 0.5)]),
    ];
    for (g, t, expected) in cases {
        let f = construct(&g.parse().unwrap(), t.parse().unwrap(), &FamilyParams::default()).unwrap();
        let r = verify_family(&f, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{g} {t}: {}", r.failure_summary());
        for (name, want) in *expected {
            let got = r.measured(name).unwrap();
            assert!((got - Complex64::new(*want, 0.0)).norm() < 1e-8, "{g} {t} {name}: {got}");
        }
    }
}

#[test]
fn criterion_4_morphisms() {
    let o = suite::criterion_morphisms(battery());
    report(&o);
    assert_amended(&o);
    assert!(o.failures.iter().all(|f| f.starts_with("|kappa(phi,phi)|") || f.starts_with("|tau(phi)|")), "{:?}", o.failures);
}

#[test]
#[ignore = "absolute residuals near the pole set are below f64 resolution; see the decisions ledger"]
fn criterion_4_as_stated() {
    let o = suite::criterion_morphisms(battery());
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_5_sl2_example() {
    let o = suite::criterion_example(&opts()).unwrap();
    report(&o);
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_6_appendix() {
    let o = suite::criterion_appendix(&opts(), battery()).unwrap();
    report(&o);
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_7_duality() {
    let o = suite::criterion_duality(&opts()).unwrap();
    report(&o);
    assert!(o.pass, "{}", o.failures.join("\n"));
}

#[test]
fn criterion_8_oracles() {
    let o = suite::criterion_oracles(&opts(), battery()).unwrap();
    report(&o);
    assert_amended(&o);
    assert!(o.failures.iter().all(|f| f.starts_with("quotient formulas vs direct jets:")), "{:?}", o.failures);
}

#[test]
#[ignore = "path agreement near the pole set is below f64 resolution; see the decisions ledger"]
fn criterion_8_as_stated() {
    let o = suite::criterion_oracles(&opts(), battery()).unwrap();
    assert!(o.pass, "{}", o.failures.join("\n"));
}

fn run_all_body(dir: &Path) -> String {
    let status = Command::new(env!("CARGO_BIN_EXE_eigenmorph"))
        .args(["run-all", "--seed", "7", "--out"])
        .arg(dir)
        .output()
        .unwrap();
    assert!(matches!(status.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&status.stderr));
    let text = std::fs::read_to_string(dir.join("run-all-seed7.json")).unwrap();
    let cut = text.find("\"timing\"").expect("timing field");
    text[..cut].to_string()
}

#[test]
fn criterion_9_determinism() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let t = Instant::now();
    let first = run_all_body(a.path());
    let elapsed = t.elapsed();
    let second = run_all_body(b.path());
    let pass = first == second && elapsed < Duration::from_secs(600);
    emit(&format!("ACCEPTANCE criterion 9: {} (run-all --seed 7 twice, bodies identical, {elapsed:.1?} per run)", if pass { "PASS" } else { "FAIL" }));
    assert_eq!(first, second);
    assert!(elapsed < Duration::from_secs(600));
}
