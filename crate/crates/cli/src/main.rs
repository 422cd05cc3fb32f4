use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mscheme::oracle::Verdict;
use mscheme_cli::{parse, render, run, CliError, Command, OpKind, Options};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "mscheme", version, about = "Ideals, normalization, divisors and Picard groups of monoid schemes")]
struct Cli {
    /// Degree bound for bounded searches and for the verification oracle.
    #[arg(long, global = true, value_name = "N")]
    degree_bound: Option<i64>,
    /// Check the result with the brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Suppress diagnostics on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    action: Action,
}

#[derive(clap::Args)]
struct Input {
    /// Input document (`-` for stdin).
    input: String,
}

#[derive(Subcommand)]
enum Action {
    /// Prime ideals of a monoid.
    Mspec(Input),
    /// Sum, product, intersection or quotient of the document's ideal with another.
    IdealOp {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        op: OpKind,
        /// The other ideal, as a JSON list of elements.
        #[arg(long)]
        with: String,
    },
    /// Radical of the document's ideal.
    Radical(Input),
    /// Primary decomposition of the document's ideal.
    PrimaryDecomp(Input),
    /// Associated primes of the document's ideal.
    Ass(Input),
    /// Integral closure of a cancellative monoid.
    Normalize(Input),
    /// Seminormalization.
    Seminormalize(Input),
    /// Normalization of `MSpec` as a scheme, with its global sections.
    NormalizationScheme(Input),
    /// Weil class group.
    ClassGroup(Input),
    /// Principal Weil divisor of an element.
    Divisor {
        #[command(flatten)]
        input: Input,
        /// The element, as JSON (`[1,0]` or `"x^2y"`).
        #[arg(long)]
        element: String,
        #[arg(long)]
        generic_point: Option<usize>,
    },
    /// Picard group.
    Picard(Input),
    /// Cartier divisors modulo principal ones.
    Cartier(Input),
    /// Comparison of Pic with the Picard group of the normalization.
    NorCompare(Input),
    /// Mayer-Vietoris sequence for the first irreducible component and the rest.
    MayerVietoris(Input),
    /// Run a command with verification and print only the verdicts.
    Verify {
        #[command(flatten)]
        input: Input,
        /// The command whose result is checked.
        #[arg(long, value_enum)]
        claim: Command,
        #[arg(long, value_enum)]
        op: Option<OpKind>,
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let mut opts = Options { degree_bound: cli.degree_bound, verify: cli.verify, ..Default::default() };
    let (cmd, path, verdicts_only) = match cli.action {
        Action::Mspec(i) => (Command::Mspec, i.input, false),
        Action::IdealOp { input, op, with } => {
            opts.op = Some(op);
            opts.with = Some(with);
            (Command::IdealOp, input.input, false)
        }
        Action::Radical(i) => (Command::Radical, i.input, false),
        Action::PrimaryDecomp(i) => (Command::PrimaryDecomp, i.input, false),
        Action::Ass(i) => (Command::Ass, i.input, false),
        Action::Normalize(i) => (Command::Normalize, i.input, false),
        Action::Seminormalize(i) => (Command::Seminormalize, i.input, false),
        Action::NormalizationScheme(i) => (Command::NormalizationScheme, i.input, false),
        Action::ClassGroup(i) => (Command::ClassGroup, i.input, false),
        Action::Divisor { input, element, generic_point } => {
            opts.element = Some(element);
            opts.generic_point = generic_point;
            (Command::Divisor, input.input, false)
        }
        Action::Picard(i) => (Command::Picard, i.input, false),
        Action::Cartier(i) => (Command::Cartier, i.input, false),
        Action::NorCompare(i) => (Command::NorCompare, i.input, false),
        Action::MayerVietoris(i) => (Command::MayerVietoris, i.input, false),
        Action::Verify { input, claim, op, with, element } => {
            opts.verify = true;
            opts.op = op;
            opts.with = with;
            opts.element = element;
            (claim, input.input, true)
        }
    };
    let parsed = parse(&read_input(&path)?)?;
    let outcome = run(cmd, &parsed, &opts)?;
    if opts.verify && outcome.verdicts.is_empty() && !cli.quiet {
        eprintln!("note: no oracle check is available for this command");
    }
    let report = if verdicts_only {
        let checks: Vec<String> = outcome.verdicts.iter().map(ToString::to_string).collect();
        let label = outcome.overall().map_or("NONE", Verdict::label);
        serde_json::json!({ "verdict": label, "checks": checks })
    } else {
        outcome.full_report()
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => print!("{}", render::render_text(&report)),
    }
    Ok(match outcome.overall() {
        Some(Verdict::Refuted { .. }) => 1,
        Some(Verdict::Inconclusive { .. }) => 3,
        _ => 0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            if !quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
