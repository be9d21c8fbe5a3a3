//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::FieldSpec;
use crate::codes::{code_report, CodeReport};
use crate::error::Error;
use crate::groups::enumerate_class_reps;
use crate::text::{parse_divisors, parse_field, parse_subspace};
use crate::verify::{self, Suite, VerifyReport};
use crate::worked::{worked_examples, Claim};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "orbit-codes", version, about = "Cyclic orbit codes over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format; each command has its own default.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Refuse inputs with n * log2(q) above this many bits.
    #[arg(long, global = true, default_value_t = 22.0)]
    pub max_bits: f64,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field as "p" or "p^m".
    #[arg(long, default_value = "2")]
    pub field: String,
    /// Modulus of the extension, coefficients constant term first.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List one representative per conjugacy class of cyclic subgroups of GL_n(F_q).
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Analyse the orbit code of a subspace under a block-diagonal generator.
    Code {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        /// Prime-power block polynomials separated by ";".
        #[arg(long)]
        divisors: String,
        /// Basis rows separated by ";".
        #[arg(long)]
        subspace: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the seeded property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check the two non-conjugacy examples for non-cyclic groups.
    Examples {
        #[command(flatten)]
        common: Common,
    },
}

/// Rendered command output and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Classify { common, .. }
            | Command::Code { common, .. }
            | Command::Verify { common, .. }
            | Command::Examples { common } => common,
        }
    }
}

fn make_field(args: &FieldArgs) -> Result<FieldSpec, CliError> {
    Ok(parse_field(&args.field, args.modulus.as_deref())?)
}

fn guard(field: &FieldSpec, n: usize, max_bits: f64) -> Result<(), CliError> {
    let bits = n as f64 * (field.size() as f64).log2();
    if bits > max_bits {
        return Err(Error::ResourceLimit(format!(
            "n * log2(q) = {bits:.1} bits exceeds the budget of {max_bits} (raise --max-bits)"
        ))
        .into());
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    group_order: u64,
    signature: Vec<(u64, u32, usize)>,
    divisors: String,
    generator: String,
}

pub fn cmd_classify(field: &FieldSpec, n: usize, format: Format) -> Result<Output, CliError> {
    let rows: Vec<ClassRow> = enumerate_class_reps(field, n)?
        .into_iter()
        .enumerate()
        .map(|(index, r)| ClassRow {
            index,
            group_order: r.group_order,
            signature: r.signature.entries().iter().map(|e| (e.order, e.exponent, e.degree)).collect(),
            divisors: r.rcf.divisors.iter().map(|d| d.power().to_string()).collect::<Vec<_>>().join(";"),
            generator: r.rcf.matrix.to_string(),
        })
        .collect();
    let body = match format {
        Format::Json => json(&rows),
        Format::Csv => csv_rows(
            &["index", "group_order", "signature", "divisors", "generator"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.group_order.to_string(),
                        signature_text(&r.signature),
                        r.divisors.clone(),
                        r.generator.clone(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!("# {} classes of cyclic subgroups of GL_{n}(F_{})\n", rows.len(), field.size());
            for r in &rows {
                s.push_str(&format!(
                    "{}\torder={}\tsignature={}\tdivisors={}\tgenerator={}\n",
                    r.index,
                    r.group_order,
                    signature_text(&r.signature),
                    r.divisors,
                    r.generator
                ));
            }
            s
        }
    };
    Ok(Output { body, exit: EXIT_OK })
}

fn signature_text(sig: &[(u64, u32, usize)]) -> String {
    let parts: Vec<String> = sig.iter().map(|(o, e, d)| format!("({o},{e},{d})")).collect();
    format!("{{{}}}", parts.join(","))
}

fn dist_text(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn opt_text(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |d| d.to_string())
}

pub fn cmd_code(
    field: &FieldSpec,
    n: usize,
    divisors: &str,
    subspace: &str,
    format: Format,
) -> Result<Output, CliError> {
    let divs = parse_divisors(field, divisors)?;
    let u = parse_subspace(field, subspace)?;
    if u.n() != n {
        return Err(Error::DimensionMismatch(format!("subspace has {} columns but --n is {n}", u.n())).into());
    }
    let report = code_report(&u, &divs)?;
    let body = match format {
        Format::Json => json(&report),
        Format::Csv => csv_rows(
            &[
                "q",
                "n",
                "k",
                "group_order",
                "cardinality",
                "min_distance",
                "distance_distribution",
                "bound_literal",
                "bound_refined",
                "lcm_cardinality",
            ],
            vec![vec![
                report.q.to_string(),
                report.n.to_string(),
                report.k.to_string(),
                report.group_order.to_string(),
                report.cardinality.to_string(),
                opt_text(report.min_distance),
                dist_text(&report.distance_distribution),
                report.bound_literal.to_string(),
                report.bound_refined.to_string(),
                report.lcm_cardinality.to_string(),
            ]],
        ),
        Format::Text => code_text(&report),
    };
    Ok(Output { body, exit: EXIT_OK })
}

fn code_text(r: &CodeReport) -> String {
    let mut s = format!(
        "field: {}\nq: {}\nn: {}\nk: {}\ngroup_order: {}\ncardinality: {}\nmin_distance: {}\n\
         distance_distribution: {}\nbound_literal: {}\nbound_refined: {}\nlcm_cardinality: {}\nblock_diagonal: {}\n",
        r.field,
        r.q,
        r.n,
        r.k,
        r.group_order,
        r.cardinality,
        opt_text(r.min_distance),
        dist_text(&r.distance_distribution),
        r.bound_literal,
        r.bound_refined,
        r.lcm_cardinality,
        r.block_diagonal
    );
    for c in &r.components {
        s.push_str(&format!(
            "component {}: divisor={} k={} cardinality={} min_distance={} max_overlap={} basis={}\n",
            c.block,
            c.divisor,
            c.k,
            c.cardinality,
            opt_text(c.min_distance),
            c.max_overlap,
            c.basis
        ));
    }
    for b in &r.skipped_blocks {
        s.push_str(&format!("component {b}: skipped (no pivot rows)\n"));
    }
    s
}

pub fn cmd_verify(suite: Suite, trials: usize, seed: u64, format: Format) -> Result<Output, CliError> {
    let report = verify::run(suite, trials, seed)?;
    let exit = if report.passed() { EXIT_OK } else { EXIT_ASSERTION };
    let body = match format {
        Format::Json => json(&report),
        Format::Csv => csv_rows(
            &["level", "suite", "check", "detail"],
            report
                .findings
                .iter()
                .map(|f| vec![f.level.to_string(), f.suite.to_string(), f.check.to_string(), f.detail.clone()])
                .collect(),
        ),
        Format::Text => verify_text(&report),
    };
    Ok(Output { body, exit })
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for f in &r.findings {
        s.push_str(&format!("{} {}/{}: {}\n", f.level, f.suite, f.check, f.detail));
    }
    for sum in &r.suites {
        s.push_str(&format!(
            "suite {}: {} checks, {} warnings, {} failures\n",
            sum.suite, sum.checks, sum.warnings, sum.failures
        ));
    }
    s.push_str(if r.passed() { "PASS\n" } else { "FAIL\n" });
    s
}

pub fn cmd_examples(format: Format) -> Result<Output, CliError> {
    let claims = worked_examples()?;
    let exit = if claims.iter().all(|c| c.holds) { EXIT_OK } else { EXIT_ASSERTION };
    let body = match format {
        Format::Json => json(&claims),
        Format::Csv => csv_rows(
            &["claim", "holds", "detail"],
            claims.iter().map(|c| vec![c.name.clone(), c.holds.to_string(), c.detail.clone()]).collect(),
        ),
        Format::Text => claims.iter().map(claim_line).collect(),
    };
    Ok(Output { body, exit })
}

fn claim_line(c: &Claim) -> String {
    format!("{} {}: {}\n", if c.holds { "PASS" } else { "FAIL" }, c.name, c.detail)
}

/// Runs a parsed command without touching standard streams.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let max_bits = cli.command.common().max_bits;
    let format = cli.command.common().format;
    match &cli.command {
        Command::Classify { field, n, .. } => {
            let f = make_field(field)?;
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            guard(&f, *n, max_bits)?;
            cmd_classify(&f, *n, format.unwrap_or(Format::Text))
        }
        Command::Code { field, n, divisors, subspace, .. } => {
            let f = make_field(field)?;
            guard(&f, *n, max_bits)?;
            cmd_code(&f, *n, divisors, subspace, format.unwrap_or(Format::Json))
        }
        Command::Verify { suite, trials, seed, .. } => {
            let suite: Suite = suite.parse().map_err(CliError::Usage)?;
            cmd_verify(suite, *trials, *seed, format.unwrap_or(Format::Text))
        }
        Command::Examples { .. } => cmd_examples(format.unwrap_or(Format::Text)),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.command.common().out {
        Some(path) => fs::write(path, &output.body),
        None => std::io::stdout().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return EXIT_USAGE;
    }
    output.exit
}
