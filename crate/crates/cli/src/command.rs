use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tracerange::extreme::{mixed_radix_digits, radix_to_sequence, sequence_to_radix};
use tracerange::range::{achievable_outer, convexity_verdict, DepthLimit};
use tracerange::representability::{gap_certificate, greedy_expand, kakeya_check, violations};
use tracerange::sequence::MAX_MATERIALIZED_TERMS;
use tracerange::{AlgebraSpec, ErrorKind, OpenInterval, RadixWord, Rational, SequenceModel};

use crate::spec::{parse_rational, parse_spec, Spec, SpecError};
use crate::svg::emit_svg;

/// Environment variable overriding the subset-sum depth bound.
pub const DEPTH_LIMIT_VAR: &str = "TRACERANGE_DEPTH_LIMIT";

/// Exit code and standard-output body of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub body: String,
}

#[derive(Parser)]
#[command(name = "tracerange", version, about = "Exact subset-sum ranges and trace-range convexity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Spec text: DSL such as geo(1/2,1/2) or a JSON document.
    #[arg(required_unless_present = "file", conflicts_with = "file", allow_hyphen_values = true)]
    spec: Option<String>,
    /// Read the spec from a file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<String>,
}

/// Spec plus one value. With `--file`, only the value is positional.
#[derive(Args)]
struct InputAndValue {
    #[arg(value_name = "SPEC", allow_hyphen_values = true)]
    first: String,
    #[arg(value_name = "R", allow_hyphen_values = true)]
    second: Option<String>,
    /// Read the spec from a file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check a_n <= sum_{k>n} a_k for every n.
    Check(Input),
    /// Greedy 0/1 expansion of r.
    Expand {
        #[command(flatten)]
        input: InputAndValue,
        #[arg(long, default_value_t = 32)]
        bits: usize,
    },
    /// Outer approximation of the subset sums at a given depth.
    Range {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified gaps for every violating index up to a depth.
    Gaps {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Convexity of the trace range of an algebra.
    Vna(Input),
    /// Extreme points of K.
    Extreme {
        #[command(subcommand)]
        action: ExtremeAction,
    },
    /// Mixed-radix digits of r.
    Digits {
        #[command(flatten)]
        input: InputAndValue,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum ExtremeAction {
    /// The sequence of a radix word.
    Encode {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Test a sequence for extremality.
    Decode {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
}

/// A failure, already classified for the exit-code contract.
struct Failure {
    code: i32,
    error: &'static str,
    message: String,
    position: Option<usize>,
}

impl Failure {
    fn parse(message: impl Into<String>, position: Option<usize>) -> Self {
        Failure {
            code: 3,
            error: "parse",
            message: message.into(),
            position,
        }
    }

    /// First line of a clap error, without its `error: ` lead.
    fn usage(e: &clap::Error) -> Self {
        let rendered = e.render().to_string();
        let first = rendered.lines().next().unwrap_or_default();
        Failure::parse(first.trim_start_matches("error: "), None)
    }

    fn body(&self) -> String {
        to_json(&ErrorDoc {
            error: self.error,
            message: &self.message,
            position: self.position,
        })
    }
}

impl From<tracerange::Error> for Failure {
    fn from(e: tracerange::Error) -> Self {
        let (code, error) = match e.kind() {
            ErrorKind::Parse => (3, "parse"),
            ErrorKind::Validation => (1, "validation"),
            ErrorKind::Domain => (1, "domain"),
            ErrorKind::Resource => (2, "resource"),
        };
        Failure {
            code,
            error,
            message: e.to_string(),
            position: None,
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Syntax { message, position } => Failure::parse(message, Some(position)),
            SpecError::Invalid(e) => e.into(),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation. `argv[0]` is the program name.
///
/// Never panics on bad input: every failure becomes a diagnostic document
/// with a stable `error` field and a nonzero exit code.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => CommandResult {
                    exit_code: 0,
                    body: e.to_string(),
                },
                K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    failed(Failure::parse("missing subcommand, see --help", None))
                }
                _ => failed(Failure::usage(&e)),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(body) => CommandResult { exit_code: 0, body },
        Err(f) => failed(f),
    }
}

fn failed(f: Failure) -> CommandResult {
    CommandResult {
        exit_code: f.code,
        body: f.body(),
    }
}

fn depth_limit() -> Result<DepthLimit, Failure> {
    match std::env::var(DEPTH_LIMIT_VAR) {
        Err(_) => Ok(DepthLimit::default()),
        Ok(text) => text
            .trim()
            .parse()
            .map(DepthLimit::new)
            .map_err(|_| Failure::parse(format!("{DEPTH_LIMIT_VAR}={text:?} is not a non-negative integer"), None)),
    }
}

/// Counts that size materialized output share one bound.
fn bounded(count: usize) -> Result<usize, Failure> {
    if count > MAX_MATERIALIZED_TERMS {
        return Err(tracerange::Error::TooManyTerms {
            len: count,
            limit: MAX_MATERIALIZED_TERMS,
        }
        .into());
    }
    Ok(count)
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        error: "io",
        message: format!("cannot read {path}: {e}"),
        position: None,
    })
}

fn load(input: &Input) -> Result<Spec, Failure> {
    let text = match (&input.spec, &input.file) {
        (_, Some(path)) => read_file(path)?,
        (Some(text), None) => text.clone(),
        (None, None) => return Err(Failure::parse("missing spec", None)),
    };
    Ok(parse_spec(&text)?)
}

fn load_with_value(input: &InputAndValue) -> Result<(Spec, Rational), Failure> {
    let (text, value) = match (&input.file, &input.second) {
        (Some(path), None) => (read_file(path)?, &input.first),
        (None, Some(value)) => (input.first.clone(), value),
        (Some(_), _) => return Err(Failure::parse("with --file, pass only the value", None)),
        (None, _) => return Err(Failure::parse("expected a spec and a value", None)),
    };
    let spec = parse_spec(&text)?;
    let value = parse_rational(value).map_err(|e| match e {
        SpecError::Syntax { message, .. } => Failure::parse(format!("value: {message}"), None),
        SpecError::Invalid(e) => e.into(),
    })?;
    Ok((spec, value))
}

fn wrong_kind(expected: &str, spec: &Spec) -> Failure {
    Failure {
        code: 1,
        error: "validation",
        message: format!("expected {expected}, got {}", spec.kind()),
        position: None,
    }
}

/// Sequences are taken as given; algebras by their atom traces and radix
/// words by their extreme points.
fn as_sequence(spec: Spec) -> Result<SequenceModel, Failure> {
    Ok(match spec {
        Spec::Sequence(m) => m,
        Spec::Algebra(a) => a.atom_traces()?,
        Spec::Radix(w) => radix_to_sequence(&w, &Rational::one())?,
    })
}

fn as_algebra(spec: Spec) -> Result<AlgebraSpec, Failure> {
    match spec {
        Spec::Algebra(a) => Ok(a),
        other => Err(wrong_kind("an algebra", &other)),
    }
}

fn as_word(spec: Spec) -> Result<RadixWord, Failure> {
    match spec {
        Spec::Radix(w) => Ok(w),
        other => Err(wrong_kind("a radix word", &other)),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

#[derive(Serialize)]
struct Gap {
    index: usize,
    gap: OpenInterval,
}

#[derive(Serialize)]
struct GapsDoc {
    depth: usize,
    gaps: Vec<Gap>,
}

#[derive(Serialize)]
struct EncodeDoc {
    word: RadixWord,
    sequence: SequenceModel,
    terms: Vec<Rational>,
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Check(input) => {
            let m = as_sequence(load(&input)?)?;
            Ok(to_json(&kakeya_check(&m)))
        }
        Command::Expand { input, bits } => {
            let (spec, r) = load_with_value(&input)?;
            let m = as_sequence(spec)?;
            Ok(to_json(&greedy_expand(&m, &r, bounded(bits)?)?))
        }
        Command::Range { input, depth, format } => {
            let m = as_sequence(load(&input)?)?;
            let limit = depth_limit()?;
            match format {
                Format::Json => Ok(to_json(&achievable_outer(&m, depth, limit)?)),
                Format::Csv => {
                    let approx = achievable_outer(&m, depth, limit)?;
                    let mut out = String::from("lo,hi\n");
                    for part in approx.union().parts() {
                        out.push_str(&format!("{},{}\n", part.lo(), part.hi()));
                    }
                    Ok(out)
                }
                Format::Svg => {
                    let depths: Vec<usize> = if depth == 0 { vec![0] } else { (1..=depth).collect() };
                    let bands = depths
                        .into_iter()
                        .map(|n| achievable_outer(&m, n, limit))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(emit_svg(&bands))
                }
            }
        }
        Command::Gaps { input, depth } => {
            let m = as_sequence(load(&input)?)?;
            let gaps = violations(&m, bounded(depth)?)
                .into_iter()
                .map(|n| gap_certificate(&m, n).map(|gap| Gap { index: n, gap }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(to_json(&GapsDoc { depth, gaps }))
        }
        Command::Vna(input) => {
            let spec = as_algebra(load(&input)?)?;
            Ok(to_json(&convexity_verdict(&spec)?))
        }
        Command::Extreme { action } => match action {
            ExtremeAction::Encode { input, terms } => {
                let w = as_word(load(&input)?)?;
                let m = radix_to_sequence(&w, &Rational::one())?;
                let terms = m.leading_terms(bounded(terms)?);
                Ok(to_json(&EncodeDoc { word: w, sequence: m, terms }))
            }
            ExtremeAction::Decode { input, depth } => {
                let m = as_sequence(load(&input)?)?;
                Ok(to_json(&sequence_to_radix(&m, bounded(depth)?)?))
            }
        },
        Command::Digits { input, count } => {
            let (spec, r) = load_with_value(&input)?;
            let w = as_word(spec)?;
            Ok(to_json(&mixed_radix_digits(&w, &r, bounded(count)?)?))
        }
    }
}
