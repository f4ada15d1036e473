//! Command-line front end.
//!
//! [`run`] parses an argument list, executes one subcommand and returns the
//! exit code together with everything written to the output and diagnostic
//! streams, so the binary is a thin shell around it and tests can drive it
//! without spawning processes.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bench::{bench, BenchReport};
use crate::error::Error;
use crate::exact::Rational;
use crate::faulhaber::{FaulhaberSpec, PolySource};
use crate::sequence::{bernoulli, c_table, d_table, Backend, Indexing, Reading, SeqTable};
use crate::verify::{verify, Status, VerifyOptions, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "powersum", version, about = "Exact power sums, C/D sequences and Bernoulli numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print B_n (B_1 = +1/2).
    Bernoulli {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::Unit)]
        method: Method,
        #[arg(long, value_enum, default_value_t = IndexingArg::Zero)]
        indexing: IndexingArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Print every value up to n instead of only B_n.
        #[arg(long)]
        all: bool,
    },
    /// Print D_{-1} ..= D_max.
    Dseq(SeqArgs),
    /// Print C_{-1} ..= C_max.
    Cseq(SeqArgs),
    /// Print the coefficients of S_m(n).
    Poly {
        m: usize,
        #[arg(long, value_enum, default_value_t = SourceArg::D)]
        source: SourceArg,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Evaluate S_m(n) exactly; n may be any rational such as -3 or 1/2.
    Eval {
        m: usize,
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(long, value_enum, default_value_t = SourceArg::D)]
        source: SourceArg,
    },
    /// Check every backend against the oracle.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_m: usize,
        #[arg(long, default_value_t = 25, allow_hyphen_values = true)]
        max_x: i64,
        /// Use the printed (uncorrected) recurrences; expected to fail.
        #[arg(long)]
        paper_literal: bool,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Plain)]
        format: VerifyFormat,
    },
    /// Time the D backends term by term.
    Bench {
        #[arg(long)]
        max_x: i64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "unit,empty,nonlinear,strong")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long = "max", allow_hyphen_values = true)]
    max: i64,
    #[arg(long, value_enum, default_value_t = Method::Unit)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Nonlinear,
    Unit,
    Empty,
    Strong,
    Oracle,
}

impl From<Method> for Backend {
    fn from(m: Method) -> Self {
        match m {
            Method::Nonlinear => Backend::Nonlinear,
            Method::Unit => Backend::LinearUnit,
            Method::Empty => Backend::LinearEmpty,
            Method::Strong => Backend::StrongExtract,
            Method::Oracle => Backend::Oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IndexingArg {
    Zero,
    MinusOne,
}

impl From<IndexingArg> for Indexing {
    fn from(i: IndexingArg) -> Self {
        match i {
            IndexingArg::Zero => Indexing::FromZero,
            IndexingArg::MinusOne => Indexing::FromMinusOne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    D,
    Bernoulli,
    Strong,
}

impl From<SourceArg> for PolySource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::D => PolySource::DSequence,
            SourceArg::Bernoulli => PolySource::BernoulliFormula,
            SourceArg::Strong => PolySource::StrongTable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Plain,
    Json,
}

/// JSON document for any indexed sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub sequence: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub indexing: Option<String>,
    pub values: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub index: i64,
    pub value: Rational,
}

/// JSON document for `poly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub order: usize,
    pub source: String,
    pub coefficients: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: usize,
    pub value: Rational,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(e),
    }
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Bernoulli { n, method, indexing, format, all } => {
            run_bernoulli(n, method, indexing.into(), format, all)
        }
        Command::Dseq(args) => {
            let table = d_table(args.method.into(), Reading::Corrected, args.max)?;
            Ok(Outcome::ok(render_seq("D", &table, args.format)))
        }
        Command::Cseq(args) => {
            let table = c_table(args.method.into(), args.max)?;
            Ok(Outcome::ok(render_seq("C", &table, args.format)))
        }
        Command::Poly { m, source, format } => {
            let source: PolySource = source.into();
            let poly = FaulhaberSpec::new(m, source).build()?;
            let terms: Vec<Term> = (1..=m + 1)
                .rev()
                .map(|e| Term { exponent: e, value: poly.coefficient(e) })
                .collect();
            let out = match format {
                Format::Plain => terms.iter().fold(String::new(), |mut s, t| {
                    let _ = writeln!(s, "a[{m},{}] = {}", t.exponent, t.value);
                    s
                }),
                Format::Json => json_line(&PolyDoc { order: m, source: source.name().into(), coefficients: terms }),
                Format::Csv => terms.iter().fold(String::from("exponent,value\n"), |mut s, t| {
                    let _ = writeln!(s, "{},{}", t.exponent, t.value);
                    s
                }),
            };
            Ok(Outcome::ok(out))
        }
        Command::Eval { m, n, source } => {
            let n: Rational = n.parse()?;
            let poly = FaulhaberSpec::new(m, source.into()).build()?;
            Ok(Outcome::ok(format!("{}\n", poly.eval(&n))))
        }
        Command::Verify { max_m, max_x, paper_literal, format } => {
            let reading = if paper_literal { Reading::PaperLiteral } else { Reading::Corrected };
            let report = verify(&VerifyOptions { max_m, max_x, reading });
            let stdout = match format {
                VerifyFormat::Plain => render_verify(&report),
                VerifyFormat::Json => json_line(&report),
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let stderr = match &report.first_divergence {
                Some(d) if code != EXIT_OK => format!(
                    "verification failed: {} diverges at {} = {}\n",
                    d.subject, d.index_name, d.index
                ),
                _ if code != EXIT_OK => "verification failed\n".to_string(),
                _ => String::new(),
            };
            Ok(Outcome { code, stdout, stderr })
        }
        Command::Bench { max_x, methods, repeats, format } => {
            if methods.is_empty() {
                return Err(Error::Precondition("bench needs at least one method".into()));
            }
            let backends: Vec<Backend> = methods.into_iter().map(Into::into).collect();
            let reports = bench(&backends, max_x, repeats)?;
            Ok(Outcome::ok(render_bench(&reports, format)))
        }
    }
}

fn run_bernoulli(n: i64, method: Method, indexing: Indexing, format: Format, all: bool) -> Result<Outcome, Error> {
    let traditional = n - indexing.first_index();
    if traditional < 0 {
        return Err(Error::Precondition(format!(
            "Bernoulli index {n} is below the first index {}",
            indexing.first_index()
        )));
    }
    let view = bernoulli(traditional as usize, method.into())?.reindexed(indexing);
    let entries: Vec<Entry> = view
        .iter()
        .filter(|(i, _)| all || *i == n)
        .map(|(index, v)| Entry { index, value: v.clone() })
        .collect();
    let indexing_name = match indexing {
        Indexing::FromZero => "zero",
        Indexing::FromMinusOne => "minus-one",
    };
    let out = match format {
        Format::Plain if !all => format!("{}\n", entries[0].value),
        Format::Plain => entries.iter().fold(String::new(), |mut s, e| {
            let _ = writeln!(s, "B[{}] = {}", e.index, e.value);
            s
        }),
        Format::Json => json_line(&SequenceDoc {
            sequence: "B".into(),
            method: Backend::from(method).name().into(),
            indexing: Some(indexing_name.into()),
            values: entries,
        }),
        Format::Csv => render_csv(&entries),
    };
    Ok(Outcome::ok(out))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn render_csv(entries: &[Entry]) -> String {
    entries.iter().fold(String::from("index,value\n"), |mut s, e| {
        let _ = writeln!(s, "{},{}", e.index, e.value);
        s
    })
}

fn render_seq(name: &str, table: &SeqTable, format: Format) -> String {
    let entries: Vec<Entry> = table.iter().map(|(index, v)| Entry { index, value: v.clone() }).collect();
    match format {
        Format::Plain => entries.iter().fold(String::new(), |mut s, e| {
            let _ = writeln!(s, "{name}[{}] = {}", e.index, e.value);
            s
        }),
        Format::Json => json_line(&SequenceDoc {
            sequence: name.into(),
            method: table.backend().name().into(),
            indexing: None,
            values: entries,
        }),
        Format::Csv => render_csv(&entries),
    }
}

fn render_verify(report: &VerifyReport) -> String {
    let mut s = String::new();
    let reading = if report.paper_literal { "paper-literal" } else { "corrected" };
    let _ = writeln!(s, "verify max-m={} max-x={} reading={reading}", report.max_m, report.max_x);
    for c in &report.checks {
        let _ = write!(s, "{} {:<22} {} vs {} ({} comparisons)", c.status.as_str(), c.name, c.subject, c.reference, c.compared);
        if let Some(d) = &c.divergence {
            let _ = write!(s, ": first divergence at {} = {}: {}, expected {}", d.index_name, d.index, d.value, d.expected);
            if let Some(detail) = &d.detail {
                let _ = write!(s, " ({detail})");
            }
        }
        if let Some(err) = &c.error {
            let _ = write!(s, ": error: {err}");
        }
        s.push('\n');
    }
    if let Some(d) = &report.first_divergence {
        let _ = writeln!(
            s,
            "first divergence: {} [{}] at {} = {}: {} (reference {} = {})",
            d.subject, d.check, d.index_name, d.index, d.value, d.reference, d.expected
        );
    }
    let _ = writeln!(s, "status: {}", report.status.as_str());
    debug_assert_eq!(report.status == Status::Fail, report.checks.iter().any(|c| c.status == Status::Fail));
    s
}

fn render_bench(reports: &[BenchReport], format: Format) -> String {
    match format {
        Format::Json => json_line(&reports),
        Format::Csv => {
            let mut s = String::from("backend,index,seconds\n");
            for r in reports {
                for (i, t) in r.per_term_seconds.iter().enumerate() {
                    let _ = writeln!(s, "{},{},{:.9}", r.backend.name(), i, t);
                }
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "{:<10} x_max={} peak_numerator_bits={} timing: total_seconds={:.6} growth_seconds={:.3e}",
                    r.backend.name(),
                    r.x_max,
                    r.peak_numerator_bits,
                    r.total_seconds,
                    r.growth()
                );
            }
            let mut order: Vec<&BenchReport> = reports.iter().collect();
            order.sort_by(|a, b| b.growth().total_cmp(&a.growth()));
            let names: Vec<&str> = order.iter().map(|r| r.backend.name()).collect();
            let _ = writeln!(s, "timing: per-term growth, fastest first: {}", names.join(" > "));
            s
        }
    }
}
