//! `kelley` — exact computations on finite set algebras from JSON instance
//! documents. One instance per invocation, result JSON on stdout,
//! diagnostics on stderr. Exit code 0 on success, 1 on input problems
//! (malformed JSON, schema violations, bad flag values, enumeration budget),
//! 2 on semantic rejections (improper ideals, collections that are not
//! ideals, unnormalizable functionals, and the like).

mod commands;
mod instance;
mod output;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Classified failure: input problems exit 1, semantic rejections exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Semantic(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Semantic(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Semantic(m) => m,
        }
    }
}

/// Classifies a library error: rejections with domain meaning exit 2,
/// everything else is an input problem.
pub fn classify(e: kelley::Error) -> CliError {
    use kelley::Error::*;
    match e {
        ZeroConditioningSet
        | NotDownClosed { .. }
        | NotUnionClosed { .. }
        | NotProper
        | NotPrincipalComplete { .. }
        | ImproperIdeal
        | EmptyFamily
        | InvalidDecomposition(_)
        | NormalizationImpossible
        | DegenerateFunctional
        | EmptyMeasureFamily
        | NotAProbability(_)
        | ZeroTotalMeasure => CliError::Semantic(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "kelley",
    version,
    about = "Exact intersection numbers, measure synthesis and ranking representation on finite set algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Instance document path, or `-` for standard input.
    #[arg(default_value = "-")]
    instance: String,

    /// Brute-force search length for `verify`, combination length for
    /// `modulus` (0 means the command's default).
    #[arg(long, default_value_t = 0)]
    max_len: u64,

    /// Threshold for `threshold`, as a rational string like `1/3`.
    #[arg(long)]
    epsilon: Option<String>,

    /// Axiom grid size cap for `ranking-axioms`.
    #[arg(long)]
    grid: Option<usize>,

    /// For `ranking-represent`: treat `ideal.generators` as an explicit
    /// enumeration of the collection and validate it, instead of taking the
    /// principal ideal the generators generate.
    #[arg(long)]
    explicit: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection number of `sets`, with optimal measure and witnesses.
    Intersection(CommonArgs),
    /// Intersection number weighted by the `functional`.
    #[command(name = "intersection-pi")]
    IntersectionPi(CommonArgs),
    /// Intersection number relative to the `ideal` (restriction form).
    #[command(name = "intersection-ideal")]
    IntersectionIdeal(CommonArgs),
    /// Intersection number relative to the `ideal` (order form).
    #[command(name = "intersection-order")]
    IntersectionOrder(CommonArgs),
    /// Zero-sum game over `measures` (rows) paired against `sets` (columns).
    Game(CommonArgs),
    /// Sets whose `measure` exceeds `--epsilon`.
    Threshold(CommonArgs),
    /// Coverage and positivity of the decomposition in `families`.
    #[command(name = "decompose-verify")]
    DecomposeVerify(CommonArgs),
    /// Strictly positive measure synthesized from `families`.
    Synthesize(CommonArgs),
    /// Constant-additive normalization of the `functional`.
    Normalize(CommonArgs),
    /// Nonlinearity modulus bounds of the `functional`.
    Modulus(CommonArgs),
    /// Validate `ideal.generators` as an explicit collection and represent
    /// it by a measure.
    #[command(name = "ideal-repr")]
    IdealRepr(CommonArgs),
    /// Weakly dominating measure of `measures` with certificates.
    Dominate(CommonArgs),
    /// Conditional-closure vertices of `measures`.
    Mstar(CommonArgs),
    /// Greedy weakly dominating subfamily of `measures`.
    #[command(name = "hs-subset")]
    HsSubset(CommonArgs),
    /// Norming identity for the `ideal` and the function `order.f`.
    Norming(CommonArgs),
    /// Compare `order.f` against `order.g` under the backed order.
    #[command(name = "ranking-compare")]
    RankingCompare(CommonArgs),
    /// Check the five ranking axioms on a value grid.
    #[command(name = "ranking-axioms")]
    RankingAxioms(CommonArgs),
    /// Probabilistic representation of the ideal-backed order.
    #[command(name = "ranking-represent")]
    RankingRepresent(CommonArgs),
    /// End-to-end minimax certification against the brute-force oracle.
    Verify(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Intersection(a)
            | Command::IntersectionPi(a)
            | Command::IntersectionIdeal(a)
            | Command::IntersectionOrder(a)
            | Command::Game(a)
            | Command::Threshold(a)
            | Command::DecomposeVerify(a)
            | Command::Synthesize(a)
            | Command::Normalize(a)
            | Command::Modulus(a)
            | Command::IdealRepr(a)
            | Command::Dominate(a)
            | Command::Mstar(a)
            | Command::HsSubset(a)
            | Command::Norming(a)
            | Command::RankingCompare(a)
            | Command::RankingAxioms(a)
            | Command::RankingRepresent(a)
            | Command::Verify(a) => a,
        }
    }
}

fn read_instance_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
    }
}

fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    let args = cli.command.args();
    let text = read_instance_text(&args.instance)?;
    let doc = instance::parse_instance(&text)?;
    match &cli.command {
        Command::Intersection(_) => commands::intersection(&doc),
        Command::IntersectionPi(_) => commands::intersection_pi(&doc),
        Command::IntersectionIdeal(_) => commands::intersection_ideal(&doc),
        Command::IntersectionOrder(_) => commands::intersection_order(&doc),
        Command::Game(_) => commands::game(&doc),
        Command::Threshold(a) => commands::threshold(&doc, a.epsilon.as_deref()),
        Command::DecomposeVerify(_) => commands::decompose_verify(&doc),
        Command::Synthesize(_) => commands::synthesize(&doc),
        Command::Normalize(_) => commands::normalize(&doc),
        Command::Modulus(a) => commands::modulus(&doc, a.max_len),
        Command::IdealRepr(_) => commands::ideal_repr(&doc),
        Command::Dominate(_) => commands::dominate(&doc),
        Command::Mstar(_) => commands::mstar(&doc),
        Command::HsSubset(_) => commands::hs_subset(&doc),
        Command::Norming(_) => commands::norming(&doc),
        Command::RankingCompare(_) => commands::ranking_compare(&doc),
        Command::RankingAxioms(a) => commands::ranking_axioms(&doc, a.grid),
        Command::RankingRepresent(a) => commands::ranking_represent(&doc, a.explicit),
        Command::Verify(a) => commands::verify(&doc, a.max_len),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
