//! `weylbraid`: classes, good-position certificates, the dimension table and
//! the finite-field checks.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 theorem or
//! identity violation, 3 existence failure, 4 resource bound exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use weylbraid_core::dimledger::{write_csv, DimLedger};
use weylbraid_core::goodrep::canonical_rep;
use weylbraid_core::weyl::{twisted_conjugacy_classes, ClassSummary};
use weylbraid_core::{Family, RootSystem, Twist};

use flaglab::report::{Report, SCHEMA_VERSION};
use flaglab::suites::{parse_suites, run_flagcheck, run_slicecheck, FlagConfig};

/// Directory for cached group enumerations.
const CACHE_ENV: &str = "WEYLBRAID_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "weylbraid",
    version,
    about = "Good-position braid representatives and finite-field checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeArgs {
    /// Cartan family: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: usize,
    /// `id`, `flip`, `rot3`, or a 1-based image list like `3,2,1`.
    #[arg(long, default_value = "id")]
    twist: String,
}

#[derive(Args)]
struct OutArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the twisted conjugacy classes.
    Classes {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certify one good-position representative per class.
    Goodrep {
        #[command(flatten)]
        ty: TypeArgs,
        /// Largest power to try; defaults to twice the twisted order.
        #[arg(long)]
        dmax: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dimension identity table for GL_n as CSV.
    Dimtable {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run check suites on every certificate of S_n over F_q.
    Flagcheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated: isotropy, orbits, eta, lorbits, fullflag, dl; or `all`.
        #[arg(long, default_value = "isotropy")]
        suite: String,
        /// Omit runtimes so that output is byte-stable.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Slice and orbit-bound checks for every partition of n.
    Slicecheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Violation(String),
    Existence(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Existence(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Violation(m) | Failure::Existence(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<weylbraid_core::Error> for Failure {
    fn from(e: weylbraid_core::Error) -> Self {
        match e {
            weylbraid_core::Error::ExistenceFailure { .. } => Failure::Existence(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<flaglab::Error> for Failure {
    fn from(e: flaglab::Error) -> Self {
        match e {
            flaglab::Error::Resource(_) => Failure::Resource(e.to_string()),
            flaglab::Error::Core(inner) => inner.into(),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn emit(out: &OutArgs, bytes: &[u8]) -> Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Config(e.to_string())),
    }
}

fn emit_json<T: Serialize>(out: &OutArgs, value: &T) -> Result<(), Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    emit(out, &bytes)
}

fn setup(ty: &TypeArgs) -> Result<(std::sync::Arc<RootSystem>, Twist), Failure> {
    let family: Family = ty.family.parse()?;
    let rs = RootSystem::new(family, ty.rank)?;
    let twist = Twist::named(&rs, &ty.twist)?;
    Ok((rs, twist))
}

#[derive(Serialize)]
struct ClassTable {
    schema_version: u32,
    #[serde(rename = "type")]
    cartan_type: String,
    twist: String,
    classes: Vec<ClassSummary>,
}

#[derive(Serialize)]
struct CertificateTable {
    schema_version: u32,
    #[serde(rename = "type")]
    cartan_type: String,
    twist: String,
    certificates: Vec<Value>,
}

#[derive(Serialize)]
struct ReportSet {
    schema_version: u32,
    command: &'static str,
    violations: usize,
    reports: Vec<Report>,
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn finish_reports(command: &'static str, reports: Vec<Report>, out: &OutArgs) -> Result<(), Failure> {
    let violations = reports.iter().map(|r| r.violations.len()).sum();
    emit_json(
        out,
        &ReportSet {
            schema_version: SCHEMA_VERSION,
            command,
            violations,
            reports,
        },
    )?;
    if violations > 0 {
        return Err(Failure::Violation(format!("{violations} violations")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classes { ty, out } => {
            let (rs, twist) = setup(&ty)?;
            let classes = twisted_conjugacy_classes(&rs, &twist)?;
            emit_json(
                &out,
                &ClassTable {
                    schema_version: SCHEMA_VERSION,
                    cartan_type: rs.cartan_type().to_string(),
                    twist: twist.label().to_string(),
                    classes: classes.iter().map(|c| c.summary()).collect(),
                },
            )
        }
        Command::Goodrep { ty, dmax, out } => {
            let (rs, twist) = setup(&ty)?;
            let mut failures = Vec::new();
            let mut certificates = Vec::new();
            for class in twisted_conjugacy_classes(&rs, &twist)? {
                match canonical_rep(&class, dmax) {
                    Ok(cert) => certificates.push(serde_json::to_value(cert.to_json()).expect("serializable")),
                    Err(e @ weylbraid_core::Error::ExistenceFailure { .. }) => {
                        certificates.push(serde_json::json!({
                            "class_id": class.class_id,
                            "status": "EXISTENCE-FAILURE",
                            "message": e.to_string(),
                        }));
                        failures.push(e.to_string());
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            emit_json(
                &out,
                &CertificateTable {
                    schema_version: SCHEMA_VERSION,
                    cartan_type: rs.cartan_type().to_string(),
                    twist: twist.label().to_string(),
                    certificates,
                },
            )?;
            if !failures.is_empty() {
                return Err(Failure::Existence(failures.join("; ")));
            }
            Ok(())
        }
        Command::Dimtable { n, out } => {
            let records = DimLedger::new(n)?.records()?;
            let mut bytes = Vec::new();
            write_csv(&records, &mut bytes)?;
            emit(&out, &bytes)?;
            let bad = records.iter().filter(|r| !r.identity_holds).count();
            if bad > 0 {
                return Err(Failure::Violation(format!(
                    "dimension identity fails for {bad} partitions"
                )));
            }
            Ok(())
        }
        Command::Flagcheck {
            n,
            q,
            k,
            suite,
            no_timing,
            out,
        } => {
            let cfg = FlagConfig {
                n,
                q,
                k,
                suites: parse_suites(&suite)?,
                cache_dir: cache_dir(),
                timing: !no_timing,
            };
            finish_reports("flagcheck", run_flagcheck(&cfg)?, &out)
        }
        Command::Slicecheck { n, q, no_timing, out } => {
            finish_reports("slicecheck", run_slicecheck(n, q, cache_dir(), !no_timing)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("weylbraid: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
