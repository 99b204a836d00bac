//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 internal consistency
//! failure (including a regression-store mismatch).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diff::{self, DiffError, DiffInput, Flavor, Missing};
use crate::mirror::{self, HypersurfaceConfig, MirrorData, MirrorError};
use crate::rational::{self, Rational};
use crate::regression::{self, RegressionStore};
use crate::selftest;
use crate::series::QSeries;
use crate::taut::{bracket, TautKey};
use crate::theta::{theta_closed, theta_recursive, ThetaKey, ThetaRecursive};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gw1", version, about = "Exact genus-one Gromov-Witten corrections", arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bracket number <c̃; c_1..c_k> with |I| unconstrained points.
    Taut {
        #[arg(long)]
        i_count: u32,
        /// Comma-separated exponents; "" for none.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        tilde_c: i64,
    },
    /// Coefficient Θ_{m,J}(c).
    Theta {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t = ThetaMethod::Closed)]
        method: ThetaMethod,
    },
    /// Standard-minus-reduced difference from a JSON table of genus-zero data.
    Diff {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to 1 for an eta table and 2 for an eta_tilde table.
        #[arg(long, value_enum)]
        theorem: Option<Theorem>,
        /// Read absent table entries as zero.
        #[arg(long)]
        assume_zero: bool,
    },
    /// Genus-one invariants of a degree-n hypersurface in P^{n-1}.
    Hypersurface {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
        #[arg(long, value_enum, default_value_t = Emit::All)]
        emit: Emit,
        /// Include the mirror map, Z_r and I_{p,p} series (JSON only).
        #[arg(long)]
        emit_intermediates: bool,
    },
    /// Runs the built-in invariant suites.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaMethod {
    Closed,
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "red")]
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Standard,
    Reduced,
    Difference,
    All,
}

impl Emit {
    fn columns(self) -> &'static [&'static str] {
        match self {
            Emit::Standard => &["standard"],
            Emit::Reduced => &["reduced"],
            Emit::Difference => &["difference"],
            Emit::All => &["standard", "reduced", "difference"],
        }
    }
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl From<DiffError> for Failure {
    fn from(e: DiffError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<MirrorError> for Failure {
    fn from(e: MirrorError) -> Self {
        match e {
            MirrorError::Config(_) => Failure::invalid(e.to_string()),
            _ => Failure::internal(e.to_string()),
        }
    }
}

/// Options supplied by the environment rather than by flags.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub regression_store: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Self { regression_store: std::env::var_os(regression::STORE_ENV).map(PathBuf::from) }
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Taut { i_count, c, tilde_c } => cmd_taut(i_count, &c, tilde_c),
        Command::Theta { m, c, method } => cmd_theta(m, &c, method),
        Command::Diff { input, theorem, assume_zero } => cmd_diff(&input, theorem, assume_zero),
        Command::Hypersurface { n, max_degree, output, emit, emit_intermediates } => {
            if emit_intermediates && output == Output::Csv {
                let _ = writeln!(err, "error: --emit-intermediates needs --output json");
                return EXIT_USAGE;
            }
            cmd_hypersurface(ctx, n, max_degree, output, emit, emit_intermediates)
        }
        Command::Selftest => return cmd_selftest(out),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| Failure::invalid(format!("bad exponent `{s}` in `{text}`"))))
        .collect()
}

fn cmd_taut(i_count: u32, c: &str, tilde_c: i64) -> Result<String, Failure> {
    let c = parse_list::<i64>(c)?;
    let value = bracket(&TautKey::new(i_count, c, tilde_c));
    Ok(format!("{}\n", rational::format(&value)))
}

fn cmd_theta(m: u32, c: &str, method: ThetaMethod) -> Result<String, Failure> {
    let key = ThetaKey::new(m, parse_list::<u32>(c)?).map_err(|e| Failure::invalid(e.to_string()))?;
    let value = match method {
        ThetaMethod::Closed => theta_closed(&key),
        ThetaMethod::Recursive => match theta_recursive(&key) {
            ThetaRecursive::Value(v) => v,
            ThetaRecursive::Inapplicable => {
                return Err(Failure::invalid("no reduction rule applies to this key; use --method closed"))
            }
        },
    };
    Ok(format!("{}\n", rational::format(&value)))
}

fn cmd_diff(path: &PathBuf, theorem: Option<Theorem>, assume_zero: bool) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let input: DiffInput =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    let (problem, table) = input.into_parts()?;
    let missing = if assume_zero { Missing::AssumeZero } else { Missing::Error };
    let theorem = theorem.unwrap_or(match table.flavor() {
        Flavor::Eta => Theorem::One,
        Flavor::EtaTilde => Theorem::Two,
    });
    let report = match (theorem, table.flavor()) {
        (Theorem::One, Flavor::Eta) => diff::diff_thm1_report(&problem, &table, missing)?,
        (Theorem::One, Flavor::EtaTilde) => {
            // Every transformed entry is present, so no further defaulting.
            let eta = diff::eta_from_tilde(&problem, &table, missing)?;
            diff::diff_thm1_report(&problem, &eta, Missing::Error)?
        }
        (Theorem::Two, _) => diff::diff_thm2_report(&problem, &table, missing)?,
        (Theorem::Reduced, _) => diff::diff_descendant_free_report(&problem, &table, missing)?,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    Ok(format!("{}\n{json}\n", rational::format(&report.value)))
}

#[derive(Serialize)]
struct Row {
    d: usize,
    #[serde(flatten)]
    values: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize)]
struct Intermediates {
    mirror_map: QSeries,
    z: Vec<QSeries>,
    i_diagonal: Vec<QSeries>,
}

#[derive(Serialize)]
struct HypersurfaceOutput {
    n: u32,
    max_degree: usize,
    rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intermediates: Option<Intermediates>,
}

/// Columns of `N_1^d` values for `d = 1..=D`.
fn hypersurface_columns(data: &MirrorData, emit: Emit) -> Result<Vec<(&'static str, Vec<Rational>)>, MirrorError> {
    let d = data.config.max_degree();
    emit.columns()
        .iter()
        .map(|&name| {
            let series = match name {
                "standard" => data.f1_standard()?,
                "reduced" => data.f1_reduced()?,
                _ => data.f1_difference()?,
            };
            Ok((name, mirror::extract_invariants(&series, d)?))
        })
        .collect()
}

/// The table printed by `gw1 hypersurface`.
pub fn render_hypersurface(
    n: u32,
    max_degree: usize,
    output: Output,
    emit: Emit,
    intermediates: bool,
) -> Result<String, MirrorError> {
    let config = HypersurfaceConfig::new(n, max_degree)?;
    let data = MirrorData::build(&config)?;
    let columns = hypersurface_columns(&data, emit)?;
    match output {
        Output::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["d"];
            header.extend(columns.iter().map(|(name, _)| *name));
            writer.write_record(&header).expect("in-memory write");
            for d in 1..=max_degree {
                let mut record = vec![d.to_string()];
                record.extend(columns.iter().map(|(_, vals)| rational::format(&vals[d - 1])));
                writer.write_record(&record).expect("in-memory write");
            }
            let bytes = writer.into_inner().expect("in-memory flush");
            Ok(String::from_utf8(bytes).expect("ascii output"))
        }
        Output::Json => {
            let rows = (1..=max_degree)
                .map(|d| Row {
                    d,
                    values: columns
                        .iter()
                        .map(|(name, vals)| (name.to_string(), rational::format(&vals[d - 1]).into()))
                        .collect(),
                })
                .collect();
            let intermediates = intermediates.then(|| Intermediates {
                mirror_map: data.t_minus_t.clone(),
                z: data.z.clone(),
                i_diagonal: data.ipp.clone(),
            });
            let doc = HypersurfaceOutput { n, max_degree, rows, intermediates };
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("output serializes")))
        }
    }
}

fn cmd_hypersurface(
    ctx: &Context,
    n: u32,
    max_degree: usize,
    output: Output,
    emit: Emit,
    intermediates: bool,
) -> Result<String, Failure> {
    let text = render_hypersurface(n, max_degree, output, emit, intermediates)?;
    if let Some(path) = &ctx.regression_store {
        let mut store = RegressionStore::open(path).map_err(|e| Failure::invalid(e.to_string()))?;
        let key = regression::fingerprint(
            "hypersurface",
            &[
                ("n", n.to_string()),
                ("max_degree", max_degree.to_string()),
                ("output", format!("{output:?}").to_lowercase()),
                ("emit", format!("{emit:?}").to_lowercase()),
                ("intermediates", intermediates.to_string()),
            ],
        );
        store.check_or_record(&key, &text).map_err(|e| match e {
            regression::StoreError::Mismatch { .. } => Failure::internal(e.to_string()),
            other => Failure::invalid(other.to_string()),
        })?;
    }
    Ok(text)
}

fn cmd_selftest(out: &mut dyn Write) -> i32 {
    let mut ok = true;
    for suite in selftest::run_all() {
        let status = if suite.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {} ({} checks)", suite.name, suite.checks);
        for failure in &suite.failures {
            let _ = writeln!(out, "  {failure}");
        }
        ok &= suite.passed();
    }
    if ok {
        0
    } else {
        EXIT_INTERNAL
    }
}
