//! `qform` command-line front end.
//!
//! Every command prints one result per line, or a single JSON document with
//! `--json`. Exit codes: 0 on success, 1 for usage and parse errors, 2 when
//! the input violates a mathematical precondition (or a self-test fails).

pub mod parse;
pub mod selftest;

use std::io::Write;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use qform_core::exactnum::{format_rational, parse_rational, rat};
use qform_core::forms::{invariants, scaled_identity};
use qform_core::geometry::{beckman_quarles_simplex, rational_triangle, triangle_form, verify_distances};
use qform_core::graphinv::{analyze, clique_number, connectivity, embeds, is_nonempty};
use qform_core::hilbert::hilbert;
use qform_core::oracle::{search_clique, search_unit_vectors};
use qform_core::{DistanceReport, Place, PointSet, QForm, SearchBounds};

pub use parse::{parse_form, FormError};

#[derive(Debug, Parser)]
#[command(name = "qform", version, about = "Exact invariants of rational quadratic forms and their unit-distance graphs")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, determinant square class, signature and Hasse invariants.
    Invariants { form: String },
    /// Rational equivalence of two forms.
    Equivalent { first: String, second: String },
    /// Whether the first form embeds as an orthogonal summand of the second.
    Embeds { small: String, large: String },
    /// Clique number of the unit-distance graph.
    Clique { form: String },
    /// Whether the graph has an edge (the form represents 1).
    Nonempty { form: String },
    /// Connectivity verdict: connected, disconnected or unknown.
    Connectivity { form: String },
    /// Full graph report.
    Analyze { form: String },
    /// Hilbert symbol (a, b) at a place (`inf` or a prime).
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        place: String,
    },
    /// Rational-sided simplex in Qⁿ under the identity form.
    Simplex { n: usize },
    /// Rational triangle under x² + n·y².
    Triangle { n: i64 },
    /// Clique numbers of (1/d)·I_n for n ≤ max-n, d ≤ max-d.
    Table {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        max_d: u64,
    },
    /// Bounded brute-force searches.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Internal consistency sweep.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Points of (1/L)·Zⁿ with numerators at most H and q(x) = 1.
    UnitVectors {
        form: String,
        #[arg(long = "den")]
        den: u64,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 100_000)]
        max: usize,
    },
    /// A clique of the given size through the origin, built from unit vectors.
    Clique {
        form: String,
        #[arg(long)]
        size: usize,
        #[arg(long = "den")]
        den: u64,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 100_000)]
        max: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Form(FormError),
    Math(qform_core::Error),
    SelfTestFailed(usize),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Form(e) => e.fmt(f),
            CliError::Math(e) => e.fmt(f),
            CliError::SelfTestFailed(n) => write!(f, "{n} self-test failure(s)"),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Form(FormError::Syntax { .. }) => 1,
            CliError::Form(FormError::Invalid(_)) | CliError::Math(_) | CliError::SelfTestFailed(_) => 2,
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        CliError::Form(e)
    }
}

impl From<qform_core::Error> for CliError {
    fn from(e: qform_core::Error) -> Self {
        use qform_core::Error::*;
        match e {
            InvalidRational(_) | InvalidArgument(_) | NotPrime(_) => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// `ω(G(Qⁿ, (1/d)·I_n))` for `1 ≤ n ≤ max_n`, `1 ≤ d ≤ max_d`, row-major.
pub fn cmd_table(max_n: usize, max_d: u64) -> qform_core::Result<Vec<Vec<usize>>> {
    (1..=max_n)
        .into_par_iter()
        .map(|n| {
            (1..=max_d)
                .into_par_iter()
                .map(|d| clique_number(&scaled_identity(n, &rat(d as i64, 1))?))
                .collect::<qform_core::Result<Vec<_>>>()
        })
        .collect()
}

fn emit(out: &mut dyn Write, json: bool, text: &str, value: Value) -> Result<(), CliError> {
    if json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn distance_text(ps: &PointSet, report: &DistanceReport) -> String {
    let mut lines: Vec<String> = ps
        .points()
        .iter()
        .map(|p| format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
        .collect();
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            let side = report.side_lengths[i][j]
                .as_ref()
                .map_or_else(|| "irrational".to_string(), format_rational);
            lines.push(format!("|p{i} - p{j}|^2 = {}  side {side}", report.squared[i][j]));
        }
    }
    lines.push(format!("all_rational {}", report.all_rational));
    lines.push(format!("rank {}", report.rank));
    lines.push(format!("affinely_independent {}", report.affinely_independent));
    lines.join("\n")
}

fn bounds(den: u64, height: u64, max: usize) -> Result<SearchBounds, CliError> {
    Ok(SearchBounds::new(den, height, max)?)
}

fn points_text(points: &[Vec<qform_core::Rational>]) -> String {
    points
        .iter()
        .map(|p| format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Executes a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let json = cli.json;
    let form = |s: &str| -> Result<QForm, CliError> { Ok(parse_form(s)?) };
    match &cli.command {
        Command::Invariants { form: f } => {
            let inv = invariants(&form(f)?)?;
            let hasse: Vec<String> = inv.hasse.iter().map(|(v, e)| format!("{v}:{e:+}")).collect();
            let text = format!(
                "dim {}\ndet_class {}\nsignature ({}, {})\nhasse {}",
                inv.dim,
                inv.det_class,
                inv.signature.0,
                inv.signature.1,
                hasse.join(" ")
            );
            emit(out, json, &text, inv.to_json())
        }
        Command::Equivalent { first, second } => {
            let r = qform_core::forms::equivalent(&form(first)?, &form(second)?)?;
            emit(out, json, &r.to_string(), json!({ "equivalent": r }))
        }
        Command::Embeds { small, large } => {
            let r = embeds(&form(small)?, &form(large)?)?;
            emit(out, json, &r.to_string(), json!({ "embeds": r }))
        }
        Command::Clique { form: f } => {
            let q = form(f)?;
            let w = clique_number(&q)?;
            emit(out, json, &w.to_string(), json!({ "form": q.to_string(), "clique": w }))
        }
        Command::Nonempty { form: f } => {
            let q = form(f)?;
            let r = is_nonempty(&q)?;
            emit(out, json, &r.to_string(), json!({ "form": q.to_string(), "nonempty": r }))
        }
        Command::Connectivity { form: f } => {
            let q = form(f)?;
            let c = connectivity(&q)?;
            emit(out, json, &c.to_string(), json!({ "form": q.to_string(), "connectivity": c.to_string() }))
        }
        Command::Analyze { form: f } => {
            let r = analyze(&form(f)?)?;
            let text = format!(
                "form {}\nnonempty {}\nclique {}\nconnectivity {}\nmax_simplex {}",
                r.form, r.nonempty, r.clique_number, r.connectivity, r.max_simplex
            );
            emit(out, json, &text, r.to_json())
        }
        Command::Hilbert { a, b, place } => {
            let a = parse_rational(a)?;
            let b = parse_rational(b)?;
            let v: Place = place.parse()?;
            let s = hilbert(&a, &b, &v)?;
            emit(
                out,
                json,
                &format!("{s:+}"),
                json!({ "a": format_rational(&a), "b": format_rational(&b), "place": v.to_string(), "symbol": s }),
            )
        }
        Command::Simplex { n } => {
            let ps = beckman_quarles_simplex(*n)?;
            let report = verify_distances(&ps, &QForm::identity(*n)?)?;
            emit(out, json, &distance_text(&ps, &report), json!({ "points": ps.to_json(), "report": report.to_json() }))
        }
        Command::Triangle { n } => {
            let ps = rational_triangle(*n)?;
            let report = verify_distances(&ps, &triangle_form(*n)?)?;
            emit(out, json, &distance_text(&ps, &report), json!({ "points": ps.to_json(), "report": report.to_json() }))
        }
        Command::Table { max_n, max_d } => {
            if *max_n == 0 || *max_d == 0 {
                return Err(CliError::Usage("--max-n and --max-d must be at least 1".into()));
            }
            let rows = cmd_table(*max_n, *max_d)?;
            let mut text = format!("n\\d {}", (1..=*max_d).map(|d| format!("{d:>3}")).collect::<String>());
            for (i, row) in rows.iter().enumerate() {
                text.push_str(&format!("\n{:>3} {}", i + 1, row.iter().map(|w| format!("{w:>3}")).collect::<String>()));
            }
            emit(out, json, &text, json!({ "max_n": max_n, "max_d": max_d, "rows": rows }))
        }
        Command::Oracle(OracleCommand::UnitVectors { form: f, den, height, max }) => {
            let found = search_unit_vectors(&form(f)?, &bounds(*den, *height, *max)?)?;
            let as_json: Vec<Vec<String>> =
                found.iter().map(|p| p.iter().map(format_rational).collect()).collect();
            emit(out, json, &points_text(&found), json!(as_json))
        }
        Command::Oracle(OracleCommand::Clique { form: f, size, den, height, max }) => {
            let q = form(f)?;
            match search_clique(&q, *size, &bounds(*den, *height, *max)?)? {
                Some(ps) => emit(out, json, &points_text(ps.points()), ps.to_json()),
                None => emit(out, json, "none found", Value::Null),
            }
        }
        Command::Selftest => {
            let mut total = 0;
            let results = selftest::SelfTest::default().run();
            let mut report = Vec::new();
            for (name, failures) in &results {
                total += failures.len();
                if !json {
                    if failures.is_empty() {
                        writeln!(out, "ok    {name}")?;
                    } else {
                        writeln!(out, "FAIL  {name}")?;
                        for f in failures {
                            writeln!(out, "      {}", f.detail)?;
                        }
                    }
                }
                report.push(json!({
                    "check": name,
                    "passed": failures.is_empty(),
                    "failures": failures.iter().map(|f| f.detail.clone()).collect::<Vec<_>>(),
                }));
            }
            if json {
                writeln!(out, "{}", json!({ "passed": total == 0, "checks": report }))?;
            } else if total == 0 {
                writeln!(out, "all checks passed")?;
            }
            if total == 0 {
                Ok(())
            } else {
                Err(CliError::SelfTestFailed(total))
            }
        }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
