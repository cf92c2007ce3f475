//! The `aggregate` command-line tool.
//!
//! Exit codes: 0 success, 1 a check or validation failed, 2 a parse or
//! configuration error, 3 a domain error. Diagnostics go to standard error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::assoc::{is_tconorm, is_tnorm, is_uninorm};
use crate::axioms::{self, Aggregate, Property, PropertyReport};
use crate::error::Error;
use crate::integrals::{measure_to_owa, opmax_to_opmin, opmin_to_opmax, owa_to_measure};
use crate::measure::{classify_measure, parse_measure_json, to_array_json, FuzzyMeasure};
use crate::numeric::format_g17;
use crate::signature::invariant_signature;
use crate::spec::{Aggregator, CATALOG};
use crate::weights::WeightVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Evaluate aggregation functions, check their properties, and work with
/// fuzzy measures.
#[derive(Debug, Parser)]
#[command(name = "aggregate", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Aggregate each CSV row with the aggregator of a JSON spec.
    Eval(EvalArgs),
    /// Run property checks on an aggregator.
    Check(CheckArgs),
    /// Validate, classify and convert fuzzy measures.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Convert between measure file forms and between weight vectors.
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Print the ordinal invariant signature of a vector.
    Signature(SignatureArgs),
    /// List aggregator kinds and property names.
    List,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Aggregator spec (JSON file).
    pub spec: PathBuf,
    /// Input CSV; standard input when absent or "-".
    pub data: Option<PathBuf>,
    /// Output CSV; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// The first row is a header.
    #[arg(long)]
    pub header: bool,
    /// Emit only the aggregated value per row.
    #[arg(long)]
    pub values_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Aggregator spec (JSON file).
    pub spec: PathBuf,
    /// Property names; see `aggregate list`. Also accepts t-norm, t-conorm
    /// and uninorm.
    #[arg(required_unless_present = "all")]
    pub properties: Vec<String>,
    /// Run every property.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Largest arity for the sequence laws.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Input count for the checks of variable-arity aggregators.
    #[arg(long)]
    pub n: Option<usize>,
    /// Replaces every per-law tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Sampling box as LO,HI.
    #[arg(long, value_parser = parse_box)]
    pub r#box: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Check normalization and monotonicity.
    Validate { file: PathBuf },
    /// Report the additive, possibility, necessity, cardinality and binary flags.
    Classify { file: PathBuf },
    /// Build a measure from weights.
    FromWeights {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
        #[arg(long = "as", value_enum, default_value_t = WeightMeasure::Additive)]
        shape: WeightMeasure,
    },
    /// OWA weights of a cardinality-based measure.
    ToOwa { file: PathBuf },
    /// The cardinality-based measure of OWA weights.
    FromOwa {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightMeasure {
    Additive,
    Possibility,
    Necessity,
}

#[derive(Debug, Subcommand)]
pub enum ConvertCommand {
    /// Rewrite a measure file in map or array form.
    Measure {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MeasureForm::Map)]
        to: MeasureForm,
    },
    /// Ordered weighted maximum weights to the equivalent minimum weights.
    OpmaxToOpmin {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
    },
    /// Ordered weighted minimum weights to the equivalent maximum weights.
    OpminToOpmax {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureForm {
    Map,
    Array,
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    #[arg(required = true, allow_negative_numbers = true)]
    pub values: Vec<f64>,
    /// Also print the signature after `t ↦ t³ + t`, which must match.
    #[arg(long)]
    pub apply_monotone: bool,
}

fn parse_box(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_domain() { EXIT_DOMAIN } else { EXIT_CONFIG }, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure { code: EXIT_OK, message: String::new() };
        }
        Failure::config(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| Failure::config(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn read_measure(path: &Path) -> Result<FuzzyMeasure, Failure> {
    Ok(parse_measure_json(&read_input(Some(path))?)?)
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::config(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(EXIT_OK)
}

/// Runs a parsed command line, writing results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Eval(args) => cmd_eval(&args, out),
        Command::Check(args) => cmd_check(&args, out),
        Command::Measure(cmd) => cmd_measure(cmd, out),
        Command::Convert(cmd) => cmd_convert(cmd, out),
        Command::Signature(args) => cmd_signature(&args, out),
        Command::List => cmd_list(out),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code after reporting any error on standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            f.code
        }
    }
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Outcome {
    let agg = Aggregator::from_file(&args.spec)?;
    let data = read_input(args.data.as_deref())?;
    let mut reader =
        csv::ReaderBuilder::new().has_headers(args.header).trim(csv::Trim::All).from_reader(data.as_bytes());
    let header = if args.header {
        Some(reader.headers().map_err(|e| Failure::config(format!("bad header: {e}")))?.clone())
    } else {
        None
    };
    let first_row = if args.header { 2 } else { 1 };
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = first_row + i;
        let record = record.map_err(|e| Failure::config(format!("row {row}: {e}")))?;
        let x = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field
                    .parse::<f64>()
                    .map_err(|_| Failure::config(format!("row {row}, column {}: cannot parse {field:?}", col + 1)))
            })
            .collect::<Result<Vec<f64>, Failure>>()?;
        if let Some(n) = agg.arity() {
            if x.len() != n {
                return Err(Failure::config(format!("row {row}: expected {n} fields, got {}", x.len())));
            }
        }
        let value = agg.aggregate(&x).map_err(|e| {
            let f = Failure::from(e);
            Failure { code: f.code, message: format!("row {row}: {}", f.message) }
        })?;
        rows.push((record, value));
    }
    let mut sink: Box<dyn Write + '_> = match &args.output {
        Some(path) => {
            Box::new(std::fs::File::create(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?)
        }
        None => Box::new(&mut *out),
    };
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(&mut sink);
    let csv_err = |e: csv::Error| Failure::config(e.to_string());
    if let Some(h) = header {
        if args.values_only {
            writer.write_record(["value"]).map_err(csv_err)?;
        } else {
            writer.write_record(h.iter().chain(["value"])).map_err(csv_err)?;
        }
    }
    for (record, value) in rows {
        let formatted = format_g17(value);
        if args.values_only {
            writer.write_record([formatted.as_str()]).map_err(csv_err)?;
        } else {
            writer.write_record(record.iter().chain([formatted.as_str()])).map_err(csv_err)?;
        }
    }
    writer.flush()?;
    Ok(EXIT_OK)
}

enum Check {
    Property(Property),
    TNorm,
    TConorm,
    Uninorm,
}

fn parse_check(name: &str) -> Result<Check, Failure> {
    Ok(match name {
        "t-norm" => Check::TNorm,
        "t-conorm" => Check::TConorm,
        "uninorm" => Check::Uninorm,
        other => Check::Property(other.parse::<Property>().map_err(|e| Failure::config(e.to_string()))?),
    })
}

/// Runs the requested checks; the rendering depends only on the spec, the
/// options and the seed.
pub fn check_reports(args: &CheckArgs) -> Result<Vec<PropertyReport>, Failure> {
    let agg = Aggregator::from_file(&args.spec)?;
    let checks: Vec<Check> = if args.all {
        Property::all().iter().copied().map(Check::Property).collect()
    } else {
        args.properties.iter().map(|p| parse_check(p)).collect::<Result<_, _>>()?
    };
    let mut sampler = agg.sampler(args.seed).with_tolerance(args.tolerance);
    if let Some((lo, hi)) = args.r#box {
        sampler = sampler.with_box(lo, hi).with_domain(agg.domain());
    }
    if let Some(samples) = args.samples {
        sampler = sampler.with_samples(samples);
    }
    if let Some(n_max) = args.n_max {
        sampler = sampler.with_n_max(n_max);
    }
    if let Some(n) = args.n {
        match agg.arity() {
            Some(fixed) if fixed != n => {
                return Err(Failure::config(format!("--n {n} conflicts with the aggregator's {fixed} inputs")))
            }
            _ => sampler = sampler.with_n(n),
        }
    }
    sampler.validate()?;
    Ok(checks
        .iter()
        .map(|c| match c {
            Check::Property(p) => axioms::check(*p, &agg, &sampler),
            Check::TNorm => is_tnorm(&agg, &sampler),
            Check::TConorm => is_tconorm(&agg, &sampler),
            Check::Uninorm => is_uninorm(&agg, &sampler),
        })
        .collect())
}

pub fn render_reports(reports: &[PropertyReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Text => {
            let mut text = String::new();
            for r in reports {
                let _ = write!(text, "{r}");
            }
            let failed = reports.iter().filter(|r| !r.holds()).count();
            let _ = writeln!(text, "{} checked, {} failed", reports.len(), failed);
            text
        }
    }
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Outcome {
    let reports = check_reports(args)?;
    out.write_all(render_reports(&reports, args.format).as_bytes())?;
    Ok(if reports.iter().all(|r| r.holds()) { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_measure(cmd: MeasureCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        MeasureCommand::Validate { file } => {
            let text = read_input(Some(&file))?;
            match parse_measure_json(&text) {
                Ok(mu) => print_json(out, &serde_json::json!({ "valid": true, "n": mu.n() })),
                Err(Error::Parse(m)) => Err(Failure::config(m)),
                Err(e) => {
                    print_json(out, &serde_json::json!({ "valid": false, "error": e.to_string() }))?;
                    eprintln!("invalid measure: {e}");
                    Ok(EXIT_FAILED)
                }
            }
        }
        MeasureCommand::Classify { file } => {
            let mu = read_measure(&file)?;
            print_json(out, &classify_measure(&mu)?)
        }
        MeasureCommand::FromWeights { weights, shape } => {
            let mu = match shape {
                WeightMeasure::Additive => FuzzyMeasure::additive(&WeightVector::sum_one(weights)?)?,
                WeightMeasure::Possibility => FuzzyMeasure::possibility(&WeightVector::max_one(weights)?)?,
                WeightMeasure::Necessity => FuzzyMeasure::necessity(&WeightVector::min_zero(weights)?)?,
            };
            print_json(out, &mu)
        }
        MeasureCommand::ToOwa { file } => {
            let w = measure_to_owa(&read_measure(&file)?)?;
            print_json(out, &serde_json::json!({ "weights": w.as_slice() }))
        }
        MeasureCommand::FromOwa { weights } => print_json(out, &owa_to_measure(&WeightVector::sum_one(weights)?)?),
    }
}

pub fn cmd_convert(cmd: ConvertCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        ConvertCommand::Measure { file, to } => {
            let mu = read_measure(&file)?;
            match to {
                MeasureForm::Map => print_json(out, &mu),
                MeasureForm::Array => print_json(out, &to_array_json(&mu)),
            }
        }
        ConvertCommand::OpmaxToOpmin { weights } => {
            let w = opmax_to_opmin(&WeightVector::max_one(weights)?)?;
            print_json(out, &serde_json::json!({ "weights": w.as_slice() }))
        }
        ConvertCommand::OpminToOpmax { weights } => {
            let w = opmin_to_opmax(&WeightVector::min_zero(weights)?)?;
            print_json(out, &serde_json::json!({ "weights": w.as_slice() }))
        }
    }
}

fn demo_monotone(t: f64) -> f64 {
    t * t * t + t
}

pub fn cmd_signature(args: &SignatureArgs, out: &mut dyn Write) -> Outcome {
    let sig = invariant_signature(&args.values);
    writeln!(out, "{sig}")?;
    if args.apply_monotone {
        let moved: Vec<f64> = args.values.iter().map(|v| demo_monotone(*v)).collect();
        let after = invariant_signature(&moved);
        let shown: Vec<String> = moved.iter().map(|v| format_g17(*v)).collect();
        writeln!(out, "phi(x) = ({}) with phi(t) = t^3 + t", shown.join(", "))?;
        writeln!(out, "{after}")?;
        writeln!(out, "equal: {}", after == sig)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_list(out: &mut dyn Write) -> Outcome {
    writeln!(out, "kinds:")?;
    for (kind, about) in CATALOG {
        writeln!(out, "  {kind:<22} {about}")?;
    }
    writeln!(out, "properties:")?;
    for p in Property::all() {
        writeln!(out, "  {p}")?;
    }
    for extra in ["t-norm", "t-conorm", "uninorm"] {
        writeln!(out, "  {extra}")?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("aggregate").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = match run(cli, &mut buf) {
            Ok(c) => c,
            Err(f) => f.code,
        };
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn signatures() {
        assert_eq!(run_args(&["signature", "2.5", "1.0", "2.5"]).1, "π=(2,1,3) rel=(<,=)\n");
        assert_eq!(run_args(&["signature", "7", "7"]).1, "π=(1,2) rel=(=)\n");
        let (_, text) = run_args(&["signature", "--apply-monotone", "-1", "3", "0.5"]);
        assert!(text.ends_with("equal: true\n"));
    }

    #[test]
    fn owa_round_trip() {
        let (code, text) = run_args(&["measure", "from-owa", "--weights", "0.5,0.25,0.25"]);
        assert_eq!(code, 0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mu.json");
        std::fs::write(&path, &text).unwrap();
        let (code, back) = run_args(&["measure", "to-owa", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&back).unwrap();
        assert_eq!(v["weights"], serde_json::json!([0.5, 0.25, 0.25]));
    }

    #[test]
    fn bad_weights_are_config_errors() {
        assert_eq!(run_args(&["measure", "from-owa", "--weights", "0.5,0.6"]).0, EXIT_CONFIG);
    }

    #[test]
    fn listing_names_everything() {
        let (_, text) = run_args(&["list"]);
        assert!(text.contains("lattice-poly") && text.contains("meaningful-in-ordinal") && text.contains("uninorm"));
    }
}
