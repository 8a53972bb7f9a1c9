use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use rrsvd::fixtures::embedded_group;
use rrsvd::report::{AnalysisReport, Section};
use rrsvd::tournament::parse_tournament;
use rrsvd::{Error, Tournament};

#[derive(Parser)]
#[command(
    name = "rrsvd",
    version,
    about = "SVD analysis of round-robin tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one tournament.
    #[command(group(ArgGroup::new("input").required(true).args(["group", "file"])))]
    Analyze(AnalyzeArgs),
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Embedded 2022 World Cup group, A to H.
    #[arg(long, value_parser = parse_group)]
    group: Option<char>,
    /// Tournament file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SectionArg::All)]
    section: SectionArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Order of the predicted matrix.
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Coin-toss seed; overrides a seed given in the file.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectionArg {
    Matrix,
    Svd,
    Scores,
    Corrections,
    Polar,
    Standings,
    All,
}

impl From<SectionArg> for Section {
    fn from(s: SectionArg) -> Self {
        match s {
            SectionArg::Matrix => Section::Matrix,
            SectionArg::Svd => Section::Svd,
            SectionArg::Scores => Section::Scores,
            SectionArg::Corrections => Section::Corrections,
            SectionArg::Polar => Section::Polar,
            SectionArg::Standings => Section::Standings,
            SectionArg::All => Section::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_group(s: &str) -> Result<char, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if ('A'..='H').contains(&c.to_ascii_uppercase()) => {
            Ok(c.to_ascii_uppercase())
        }
        _ => Err(format!("expected a group letter A..H, got {s:?}")),
    }
}

fn load(args: &AnalyzeArgs) -> Result<Tournament, String> {
    let t = match (&args.group, &args.file) {
        (Some(g), _) => embedded_group(*g).map_err(|e| e.to_string())?,
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_tournament(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    Ok(match args.seed {
        Some(seed) => t.with_seed(seed),
        None => t,
    })
}

fn run(args: AnalyzeArgs) -> ExitCode {
    let t = match load(&args) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("rrsvd: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = match AnalysisReport::build(&t, args.rank) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("rrsvd: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut out = match args.format {
        Format::Text => report.to_text(args.section.into()),
        Format::Json => report.to_json(),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, out) {
                eprintln!("rrsvd: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::SUCCESS
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numeric() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze(args) => run(args),
    }
}
