//! Command-line front end for `qsorep`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or signature error,
//! 3 unsupported combination, 4 indeterminate commutant.

pub mod export;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qsorep::algebra_check::{
    commutant_dimension, relation_suite, CheckError, Commutant, DEFAULT_COMMUTANT_CAP,
};
use qsorep::appendix_identity::{default_s_values, identity_sweep, SweepOptions, MAX_SWEEP_P};
use qsorep::gtbasis::dimension;
use qsorep::{build_rep, HalfInt, QMode, RepError, Signature};
use thiserror::Error;

pub use export::{ExportBundle, QSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INDETERMINATE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Io(_) => EXIT_FAIL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsorep",
    version,
    about = "Nonstandard U_q(so_n) representations in the Gel'fand-Tsetlin basis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the generator matrices and export them.
    Gen(GenArgs),
    /// Print the dimension of a representation.
    Dim(WeightArgs),
    /// Check the defining relations, the *-property and irreducibility.
    Verify(VerifyArgs),
    /// Sweep the master identity over small configurations.
    Identity(IdentityArgs),
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated entries; halves as "1/2" or ".5".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct QArgs {
    /// Real q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// q = exp(i h).
    #[arg(long, allow_hyphen_values = true, value_name = "H")]
    pub q_polar: Option<f64>,
    /// Exact rational s = q^(1/2).
    #[arg(long, allow_hyphen_values = true, value_name = "S")]
    pub q_exact: Option<String>,
    /// q = 1.
    #[arg(long)]
    pub classical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    CooText,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub q: QArgs,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Embed the relation residuals.
    #[arg(long)]
    pub with_checks: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    pub q: QArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Skip the commutant above this dimension.
    #[arg(long, default_value_t = DEFAULT_COMMUTANT_CAP)]
    pub commutant_cap: usize,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 2)]
    pub p_max: usize,
    /// Rational s values; defaults to 3, 7/2, 11/5.
    #[arg(long = "s")]
    pub s: Vec<String>,
    /// Keep at most this many configurations per p and source.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Signature entries range over [-max, max].
    #[arg(long, default_value = "2")]
    pub max_entry: String,
    /// Leave out the two boundary substitutions.
    #[arg(long)]
    pub no_extensions: bool,
}

pub fn parse_signature(args: &WeightArgs) -> Result<Signature, CliError> {
    let entries = args
        .weight
        .split(',')
        .map(|t| HalfInt::from_str(t.trim()).map_err(|e| CliError::Usage(format!("weight: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Signature::new(args.n, entries).map_err(|e| CliError::Usage(format!("invalid signature: {e}")))
}

pub fn parse_q(args: &QArgs) -> Result<QSpec, CliError> {
    Ok(
        match (args.q, args.q_polar, &args.q_exact, args.classical) {
            (Some(q), None, None, false) => QSpec::Real(q),
            (None, Some(h), None, false) => QSpec::Polar(h),
            (None, None, Some(s), false) => QSpec::Exact(
                BigRational::from_str(s.trim())
                    .map_err(|_| CliError::Usage(format!("--q-exact: not a rational: {s}")))?,
            ),
            (None, None, None, true) => QSpec::Classical,
            _ => {
                return Err(CliError::Usage(
                    "give exactly one of --q, --q-polar, --q-exact, --classical".into(),
                ))
            }
        },
    )
}

fn warn_root_of_unity(mode: &QMode, err: &mut dyn Write) -> std::io::Result<()> {
    if let Some(order) = mode.root_of_unity_order() {
        writeln!(
            err,
            "warning: q^{order} = 1; the construction assumes q is not a root of unity"
        )?;
    }
    Ok(())
}

fn build(sig: &Signature, mode: &QMode) -> Result<qsorep::RepBundle, CliError> {
    build_rep(sig, mode).map_err(|e| match e {
        RepError::ExactModeMatrix => CliError::Unsupported(
            "exact mode has no matrix export, matrix elements are square roots".into(),
        ),
        other => CliError::Usage(other.to_string()),
    })
}

/// Write via a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let sig = parse_signature(&args.weight)?;
    let q = parse_q(&args.q)?;
    let mode = q.mode()?;
    warn_root_of_unity(&mode, err)?;
    let bundle = build(&sig, &mode)?;
    let checks = args.with_checks.then(|| relation_suite(&bundle, args.tol));
    let export = ExportBundle::new(&bundle, &q, checks.as_ref());
    let text = match args.format {
        Format::Json => export.to_json(),
        Format::CooText => export.to_coo_text(),
    };
    match &args.output {
        Some(path) => write_atomic(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_PASS)
}

pub fn cmd_dim(args: &WeightArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let sig = parse_signature(args)?;
    writeln!(out, "{}", dimension(&sig))?;
    Ok(EXIT_PASS)
}

pub fn cmd_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let sig = parse_signature(&args.weight)?;
    let q = parse_q(&args.q)?;
    let mode = q.mode()?;
    warn_root_of_unity(&mode, err)?;
    let bundle = build(&sig, &mode)?;
    let suite = relation_suite(&bundle, args.tol);
    writeln!(out, "{sig} at {mode}, dim {}", bundle.dim())?;
    writeln!(
        out,
        "{:<18} {:>8} {:>12} {}",
        "relation", "pair", "residual", "pass"
    )?;
    for r in &suite.reports {
        let pair = format!("{},{}", r.pair.0, r.pair.1);
        writeln!(
            out,
            "{:<18} {:>8} {:>12.3e} {}",
            r.relation.to_string(),
            pair,
            r.residual,
            r.pass
        )?;
    }
    if !mode.admits_star() {
        writeln!(out, "star: not applicable for this q")?;
    }
    let mut code = if suite.pass() { EXIT_PASS } else { EXIT_FAIL };
    match commutant_dimension(&bundle, args.commutant_cap) {
        Ok(Commutant::Determined { dimension, gap }) => {
            writeln!(out, "commutant dimension {dimension} (gap {gap:.3e})")?;
            if dimension != 1 {
                code = EXIT_FAIL;
            }
        }
        Ok(Commutant::Indeterminate { gap, generator }) => {
            writeln!(
                out,
                "commutant indeterminate at generator {generator} (gap {gap:.3e})"
            )?;
            if code == EXIT_PASS {
                code = EXIT_INDETERMINATE;
            }
        }
        Err(CheckError::DimensionCap { dim, cap }) => {
            writeln!(out, "commutant skipped: dim {dim} > cap {cap}")?;
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    }
    writeln!(out, "{}", if code == EXIT_PASS { "PASS" } else { "FAIL" })?;
    Ok(code)
}

pub fn cmd_identity(args: &IdentityArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.p_max > MAX_SWEEP_P {
        return Err(CliError::Usage(format!(
            "--p-max {} exceeds {MAX_SWEEP_P}",
            args.p_max
        )));
    }
    let s_values = if args.s.is_empty() {
        default_s_values()
    } else {
        args.s
            .iter()
            .map(|s| {
                BigRational::from_str(s.trim())
                    .map_err(|_| CliError::Usage(format!("--s: not a rational: {s}")))
            })
            .collect::<Result<_, _>>()?
    };
    let max_entry = HalfInt::from_str(&args.max_entry)
        .map_err(|e| CliError::Usage(format!("--max-entry: {e}")))?;
    let opts = SweepOptions {
        p_max: args.p_max,
        s_values,
        max_entry,
        samples: args.samples,
        seed: args.seed,
        include_extensions: !args.no_extensions,
    };
    let report = identity_sweep(&opts).map_err(|e| CliError::Usage(e.to_string()))?;
    for (i, c) in report.configs_per_p.iter().enumerate() {
        writeln!(out, "p = {}: {c} configurations", i + 1)?;
    }
    writeln!(out, "boundary extensions: {}", report.extension_configs)?;
    writeln!(
        out,
        "excluded (l_(p,2p) = 0): {}",
        report.skipped_degenerate
    )?;
    writeln!(
        out,
        "undefined extension points: {}",
        report.undefined_extensions
    )?;
    writeln!(out, "exact evaluations: {}", report.evaluations)?;
    writeln!(out, "largest degree bound: {}", report.max_degree_bound)?;
    match report.failures.first() {
        None => {
            writeln!(out, "PASS")?;
            Ok(EXIT_PASS)
        }
        Some(c) => {
            writeln!(
                out,
                "FAIL ({} counterexamples), first: {c}",
                report.failures.len()
            )?;
            Ok(EXIT_FAIL)
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out, err),
        Command::Dim(a) => cmd_dim(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Identity(a) => cmd_identity(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Size the global thread pool from `QSOREP_THREADS` when set.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("QSOREP_THREADS") {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "QSOREP_THREADS: expected a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}
