use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use toric_twistor::lattice::{normalize, SequenceFile, UnimodularMatrix, Violation};
use toric_twistor::poly::parse_rational_list;
use toric_twistor::report::{
    parse_sequence, run_analyze, run_classify, run_enumerate, run_model, to_json, ModelOptions, ReportError,
    DEFAULT_CAP,
};
use toric_twistor::ActionSequence;

#[derive(Parser, Debug)]
#[command(
    name = "toric-twistor",
    version,
    about = "Projective models of twistor spaces from T^2-action data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the normalization conditions of an input sequence
    Validate(InputArgs),
    /// List every normalized sequence for a given n
    Enumerate(EnumerateArgs),
    /// Surface, fibers, degrees, divisor data and models for one sequence
    Analyze(AnalyzeArgs),
    /// Defining equations for one pair (i, j)
    Model(PairArgs),
    /// Fiber types of the model for one pair (i, j)
    Classify(PairArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file {"n": int, "vectors": [[a,b],...]}
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Only report the number of sequences
    #[arg(long)]
    count_only: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// r_3..r_k as comma-separated rationals, e.g. "1,5/2"
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
    /// c_1,c_2,... as comma-separated nonzero rationals
    #[arg(long, allow_hyphen_values = true)]
    constants: Option<String>,
    /// Emit all μ+2 equations instead of the reduced pair
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, requires = "j")]
    i: Option<usize>,
    #[arg(long, requires = "i")]
    j: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
    #[command(flatten)]
    model: ModelArgs,
}

enum Failure {
    Validation(String),
    Usage(String),
}

impl From<ReportError> for Failure {
    fn from(err: ReportError) -> Self {
        if err.is_validation() {
            Failure::Validation(err.to_string())
        } else {
            Failure::Usage(err.to_string())
        }
    }
}

fn read_input(path: &Path) -> Result<ActionSequence, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_sequence(&text)?)
}

fn write_output<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), Failure> {
    let text = to_json(value);
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rationals(flag: &str, text: &Option<String>) -> Result<Option<Vec<BigRational>>, Failure> {
    text.as_deref()
        .map(|t| parse_rational_list(t).map_err(|e| Failure::Usage(format!("--{flag}: {e}"))))
        .transpose()
}

fn model_options(args: &ModelArgs) -> Result<ModelOptions, Failure> {
    Ok(ModelOptions {
        roots: rationals("roots", &args.roots)?,
        constants: rationals("constants", &args.constants)?,
        full: args.full,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ValidateOutput {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<ActionSequence>,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<ActionSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<UnimodularMatrix>,
}

fn validate_cmd(args: &InputArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    let file: SequenceFile =
        serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("cannot parse input: {e}")))?;
    let output = match file.validate() {
        Ok(seq) => ValidateOutput {
            valid: true,
            sequence: Some(seq),
            violations: Vec::new(),
            normalized: None,
            matrix: None,
        },
        Err(report) => {
            let (normalized, matrix) = match normalize(&file.vectors) {
                Ok((seq, m)) => (Some(seq), Some(m)),
                Err(_) => (None, None),
            };
            ValidateOutput {
                valid: false,
                sequence: None,
                violations: report.violations,
                normalized,
                matrix,
            }
        }
    };
    let valid = output.valid;
    write_output(&output, args.output.as_deref())?;
    if valid {
        Ok(())
    } else {
        Err(Failure::Validation(
            "input violates the normalization conditions".to_string(),
        ))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate(args) => validate_cmd(&args),
        Command::Enumerate(args) => {
            let report = run_enumerate(args.n, args.cap, args.count_only)?;
            write_output(&report, args.output.as_deref())
        }
        Command::Analyze(args) => {
            let seq = read_input(&args.io.input)?;
            let options = model_options(&args.model)?;
            let pair = args.i.zip(args.j).map(|p| vec![p]);
            let report = run_analyze(&seq, pair.as_deref(), &options)?;
            write_output(&report, args.io.output.as_deref())
        }
        Command::Model(args) => {
            let seq = read_input(&args.io.input)?;
            let report = run_model(&seq, args.i, args.j, &model_options(&args.model)?)?;
            write_output(&report, args.io.output.as_deref())
        }
        Command::Classify(args) => {
            let seq = read_input(&args.io.input)?;
            let report = run_classify(&seq, args.i, args.j, &model_options(&args.model)?)?;
            write_output(&report, args.io.output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
