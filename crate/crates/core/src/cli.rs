//! The `eigenmorph` command line: construction and verification as batch
//! commands that write JSON reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::calculus::{verify_lemma, CoordinateLemma, LemmaOptions, DEFAULT_POLE_GUARD};
use crate::duality::{dualize_family, sign_diagnostic, verify_dual, SignDiagnostic};
use crate::families::{construct, parse_complex_list, verify_family, AnyFamily, FamilyParams, Theorem, VerifyOptions};
use crate::groups::{basis_for, verify_basis, GroupDescriptor, SignedBasis, DEFAULT_SCALE};
use crate::linalg::{check_identities, IdentityReport};
use crate::morphisms::{build_morphism, verify_morphism, MultiPoly, RationalMorphism};
use crate::report::{to_json, Envelope, Timing, VerificationReport};
use crate::suite::{run_all, SuiteOptions, SuiteReport};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 7;
/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "EIGENMORPH_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "eigenmorph", version, about = "Eigenfamilies and rational harmonic morphisms on classical Lie groups")]
pub struct Cli {
    /// Directory for reports and artifacts [default: $EIGENMORPH_OUT_DIR or .]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the generator-sum matrix identities for n = p + q.
    CheckIdentities {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// List the orthonormal basis of a group and verify it.
    Basis {
        #[arg(long)]
        group: GroupDescriptor,
    },
    /// Replay the tension/conformality relations of a coordinate lemma.
    VerifyLemma {
        #[arg(long)]
        group: GroupDescriptor,
        /// One of 4.1, 5.1, 6.1, 8.1, 10.1, 11.1, 12.1.
        #[arg(long)]
        lemma: CoordinateLemma,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Construct a (bi-)eigenfamily and write it to a file.
    MakeFamily {
        #[command(flatten)]
        spec: FamilySpec,
    },
    /// Verify the eigenfamily axioms of a family file or a fresh construction.
    VerifyFamily {
        #[command(flatten)]
        source: FamilySource,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Build the quotient P/Q of two polynomials in the family members.
    MakeMorphism {
        #[command(flatten)]
        source: FamilySource,
        /// Terms of P as JSON, e.g. '[[[1,0],[1,0]]]' for the first member.
        #[arg(long)]
        numerator: String,
        /// Terms of Q, same format.
        #[arg(long)]
        denominator: String,
    },
    /// Verify harmonicity and conformality of a morphism file.
    VerifyMorphism {
        #[arg(long)]
        morphism_file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Write the compact-dual family of a family file.
    Dualize {
        #[arg(long)]
        family_file: PathBuf,
    },
    /// Verify a family on its compact dual with negated constants.
    VerifyDual {
        #[arg(long)]
        family_file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run the whole acceptance battery.
    RunAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest matrix size swept.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Pole guard: points with |Q| at or below this are resampled.
    #[arg(long, default_value_t = DEFAULT_POLE_GUARD)]
    pub delta: f64,
    /// Half-width of the uniform coefficients fed to the exponential map.
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
}

impl Sampling {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
            pole_guard: self.delta,
            scale: self.scale,
            ..VerifyOptions::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilySpec {
    #[arg(long)]
    pub group: GroupDescriptor,
    /// One of 4.2, 5.3, 5.4, 6.2, 6.3, 8.2, 8.3, 10.2, 10.3, 11.2, 11.3, 12.2.
    #[arg(long)]
    pub theorem: Theorem,
    #[command(flatten)]
    pub params: ParamFlags,
}

/// Construction parameters; each is a comma-separated complex vector such
/// as "1,i,0.5-2i". Unset parameters take generic defaults.
#[derive(Debug, Args)]
pub struct ParamFlags {
    /// Repeat for a basis of the isotropic subspace in 4.2.
    #[arg(long)]
    pub v: Vec<String>,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub xi: Option<String>,
}

#[derive(Debug, Args)]
pub struct FamilySource {
    #[arg(long, conflicts_with_all = ["group", "theorem"])]
    pub family_file: Option<PathBuf>,
    #[arg(long, requires = "theorem")]
    pub group: Option<GroupDescriptor>,
    #[arg(long, requires = "group")]
    pub theorem: Option<Theorem>,
    #[command(flatten)]
    pub params: ParamFlags,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot {action} {path}: {source}")]
    Io { action: &'static str, path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Failed(_) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn params(flags: &ParamFlags, theorem: Theorem) -> Result<FamilyParams, CliError> {
    let ParamFlags { v, u, a, b, xi } = flags;
    let list = |s: &Option<String>| s.as_deref().map(parse_complex_list).transpose().map_err(usage);
    let vs: Vec<Vec<Complex64>> = v.iter().map(|s| parse_complex_list(s)).collect::<Result<_, _>>().map_err(usage)?;
    let mut p = FamilyParams { u: list(u)?, a: list(a)?, b: list(b)?, ..FamilyParams::default() };
    if let Some(x) = list(xi)? {
        let [x] = x[..] else { return Err(usage("--xi takes a single complex number")) };
        p.xi = Some(x);
    }
    match (theorem, vs.len()) {
        (_, 0) => {}
        (Theorem::Gl, _) => p.isotropic_basis = Some(vs),
        (_, 1) => p.v = vs.into_iter().next(),
        _ => return Err(usage("--v may only be repeated for theorem 4.2")),
    }
    Ok(p)
}

fn build_family(spec: &FamilySpec) -> Result<AnyFamily, CliError> {
    let p = params(&spec.params, spec.theorem)?;
    construct(&spec.group, spec.theorem, &p).map_err(usage)
}

fn load_family(source: &FamilySource) -> Result<AnyFamily, CliError> {
    match (&source.family_file, source.group, source.theorem) {
        (Some(path), _, _) => read_json(path),
        (None, Some(group), Some(theorem)) => {
            let p = params(&source.params, theorem)?;
            construct(&group, theorem, &p).map_err(usage)
        }
        _ => Err(usage("give --family-file, or --group with --theorem")),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { action: "read", path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Output directory: `--out`, else `$EIGENMORPH_OUT_DIR`, else the current directory.
pub fn out_dir(out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("."))
}

/// File-name friendly form of a descriptor: `dual:u_pq:2,1` becomes `dual-u_pq-2-1`.
pub fn slug(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '-' }).collect()
}

/// `family-<theorem>-<group>.json`, e.g. `family-10.2-dual-u_pq-2-1.json`.
fn family_file_name(f: &AnyFamily) -> String {
    let provenance = f.provenance();
    let tag = provenance.rsplit(':').next().unwrap_or_default();
    format!("family-{tag}-{}.json", slug(&f.descriptor().to_string()))
}

fn write(dir: &Path, name: &str, value: &(impl Serialize + ?Sized)) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { action: "create", path: dir.into(), source })?;
    let path = dir.join(name);
    let text = to_json(value).map_err(|e| CliError::Failed(e.to_string()))?;
    fs::write(&path, text).map_err(|source| CliError::Io { action: "write", path: path.clone(), source })?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn envelope<T>(body: T, start: Instant) -> Envelope<T> {
    Envelope { body, timing: Timing { wall_seconds: start.elapsed().as_secs_f64() } }
}

fn verdict(r: &VerificationReport) -> Result<(), CliError> {
    println!("{} {} [{}]: {}", r.command, r.descriptor, r.provenance, if r.pass { "PASS" } else { "FAIL" });
    if r.pass {
        Ok(())
    } else {
        Err(CliError::Failed(r.failure_summary()))
    }
}

fn write_report(dir: &Path, name: &str, report: VerificationReport, start: Instant) -> Result<(), CliError> {
    write(dir, name, &envelope(&report, start))?;
    verdict(&report)
}

#[derive(Serialize)]
struct BasisListing {
    descriptor: String,
    group: String,
    basis: SignedBasis,
    report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_diagnostic: Option<SignDiagnostic>,
}

fn poly(terms: &str, vars1: usize, vars2: usize) -> Result<MultiPoly, CliError> {
    let terms: Vec<(Vec<u32>, Complex64)> = serde_json::from_str(terms).map_err(|e| usage(format!("polynomial terms: {e}")))?;
    MultiPoly::new(vars1, vars2, terms).map_err(usage)
}

/// Executes one parsed command.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    let dir = out_dir(cli.out);
    let start = Instant::now();
    match cli.command {
        Command::CheckIdentities { n, p, q } => {
            let r: IdentityReport = check_identities(n, p, q).map_err(usage)?;
            write(&dir, &format!("identities-n{n}-p{p}-q{q}.json"), &envelope(&r, start))?;
            for c in &r.checks {
                println!("{:<28} {:?} {}", c.name, c.origin, if c.pass { "PASS" } else { "FAIL" });
            }
            if r.pass() {
                Ok(())
            } else {
                Err(CliError::Failed(r.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")))
            }
        }
        Command::Basis { group } => {
            let basis = basis_for(&group).map_err(usage)?;
            let report = verify_basis(&group).map_err(usage)?;
            let diag = if group.is_dual() { Some(sign_diagnostic(&group.source()).map_err(usage)?) } else { None };
            for (label, s) in basis.labels.iter().zip(&basis.signs) {
                println!("{s:+} {label}");
            }
            let listing = BasisListing { descriptor: group.to_string(), group: group.group_name(), basis, report: report.clone(), sign_diagnostic: diag };
            write(&dir, &format!("basis-{}.json", slug(&group.to_string())), &envelope(&listing, start))?;
            verdict(&report)
        }
        Command::VerifyLemma { group, lemma, sampling } => {
            let opts = LemmaOptions { samples: sampling.samples, seed: sampling.seed, tol: sampling.tol, scale: sampling.scale };
            let r = verify_lemma(&group, lemma, &opts).map_err(usage)?;
            write_report(&dir, &format!("lemma-{}-{}.json", lemma.tag(), slug(&group.to_string())), r, start)
        }
        Command::MakeFamily { spec } => {
            let f = build_family(&spec)?;
            write(&dir, &family_file_name(&f), &f)?;
            Ok(())
        }
        Command::VerifyFamily { source, sampling } => {
            let f = load_family(&source)?;
            let r = verify_family(&f, &sampling.verify_options()).map_err(usage)?;
            write_report(&dir, &format!("verify-family-{}.json", slug(&f.descriptor().to_string())), r, start)
        }
        Command::MakeMorphism { source, numerator, denominator } => {
            let f = load_family(&source)?;
            let sizes: Vec<usize> = f.parts().iter().map(|p| p.len()).collect();
            let (v1, v2) = (sizes[0], sizes.get(1).copied().unwrap_or(0));
            let m = build_morphism(&f, &poly(&numerator, v1, v2)?, &poly(&denominator, v1, v2)?).map_err(usage)?;
            write(&dir, &format!("morphism-{}.json", slug(&m.descriptor.to_string())), &m)?;
            Ok(())
        }
        Command::VerifyMorphism { morphism_file, sampling } => {
            let m: RationalMorphism = read_json(&morphism_file)?;
            let r = verify_morphism(&m, &sampling.verify_options()).map_err(usage)?;
            write_report(&dir, &format!("verify-morphism-{}.json", slug(&m.descriptor.to_string())), r, start)
        }
        Command::Dualize { family_file } => {
            let f: AnyFamily = read_json(&family_file)?;
            let d = dualize_family(&f);
            write(&dir, &family_file_name(&d), &d)?;
            Ok(())
        }
        Command::VerifyDual { family_file, sampling } => {
            let f: AnyFamily = read_json(&family_file)?;
            let r = verify_dual(&f, &sampling.verify_options()).map_err(usage)?;
            write_report(&dir, &format!("verify-dual-{}.json", slug(&f.descriptor().dual().to_string())), r, start)
        }
        Command::RunAll { seed, max_size } => {
            let report: SuiteReport = run_all(&SuiteOptions { seed, max_size }).map_err(usage)?;
            write(&dir, &format!("run-all-seed{seed}.json"), &envelope(&report, start))?;
            for c in &report.criteria {
                println!("{}", c.summary_line());
            }
            if report.pass {
                Ok(())
            } else {
                let failed: Vec<String> = report.criteria.iter().filter(|c| !c.pass).map(|c| c.id.to_string()).collect();
                Err(CliError::Failed(format!("criteria {} fail as stated", failed.join(", "))))
            }
        }
    }
}

/// Parses `args`, runs the command and maps the outcome to an exit code:
/// 0 on success, 1 when a verification fails, 2 on usage errors.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_are_file_friendly() {
        assert_eq!(slug("dual:u_pq:2,1"), "dual-u_pq-2-1");
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["eigenmorph", "verify-lemma", "--group", "gl_r:3", "--lemma", "4.1", "--samples", "20", "--seed", "7", "--tol", "1e-9"]).unwrap();
        let Command::VerifyLemma { group, lemma, sampling } = cli.command else { panic!() };
        assert_eq!(group.to_string(), "gl_r:3");
        assert_eq!(lemma, CoordinateLemma::GlR);
        assert_eq!(sampling.delta, DEFAULT_POLE_GUARD);
        assert!(Cli::try_parse_from(["eigenmorph", "basis", "--group", "gl_q:3"]).is_err());
    }

    #[test]
    fn repeated_v_only_for_the_linear_theorem() {
        let flags = |v: &[&str], xi: Option<&str>| ParamFlags {
            v: v.iter().map(|s| s.to_string()).collect(),
            u: None,
            a: None,
            b: None,
            xi: xi.map(String::from),
        };
        assert!(params(&flags(&["1,i", "0,0"], None), Theorem::Gl).is_ok());
        assert!(params(&flags(&["1,i", "0,0"], None), Theorem::SpRV).is_err());
        assert!(params(&flags(&[], Some("1,2")), Theorem::UStarXi).is_err());
    }
}
