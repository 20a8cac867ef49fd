mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use janet::divisions::DivisionScheme;

use commands::{Options, OrderArg};
use report::{envelope, render_text};

#[derive(Parser)]
#[command(
    name = "janet",
    version,
    about = "Involutive bases and Janet's method for linear PDE systems"
)]
struct Cli {
    /// Involutive division.
    #[arg(long, global = true, value_enum, default_value_t = Division::Janet)]
    division: Division,
    /// Monomial order: lex, deglex or weight:<file> with one weight row per line.
    #[arg(long, global = true, default_value = "deglex")]
    order: String,
    /// Degree (or derivative order) cap for completion.
    #[arg(long, global = true, default_value_t = 50)]
    max_degree: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Division {
    Janet,
    Thomas,
    Pommaret,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a monomial set with respect to the division.
    Complete { file: PathBuf },
    /// Multiplicative variables of each generator's leading monomial.
    MultVars { file: PathBuf },
    /// Complementary monomials of a monomial set (Janet).
    CompMonomials { file: PathBuf },
    /// Involutive basis of a polynomial ideal.
    Invbasis { file: PathBuf },
    /// Reduced Gröbner basis with cofactors over the input.
    Groebner { file: PathBuf },
    /// Ideal membership through the involutive normal form.
    Member {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Characteristic function of a homogeneous ideal over a degree range.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 12)]
        to: u64,
    },
    /// Characters and the involution test in one degree.
    Characters {
        file: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// Linear PDE systems.
    Pde {
        #[command(subcommand)]
        command: PdeCommand,
    },
}

#[derive(Subcommand)]
enum PdeCommand {
    /// Run Janet's procedure, or complete a monomial system and list its conditions.
    Analyze { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Complete { .. } => "complete",
            Command::MultVars { .. } => "mult-vars",
            Command::CompMonomials { .. } => "comp-monomials",
            Command::Invbasis { .. } => "invbasis",
            Command::Groebner { .. } => "groebner",
            Command::Member { .. } => "member",
            Command::Hilbert { .. } => "hilbert",
            Command::Characters { .. } => "characters",
            Command::Pde { .. } => "pde analyze",
        }
    }
}

fn run(cli: &Cli) -> Result<serde_json::Value, report::CliError> {
    let opts = Options {
        division: match cli.division {
            Division::Janet => DivisionScheme::Janet,
            Division::Thomas => DivisionScheme::Thomas,
            Division::Pommaret => DivisionScheme::Pommaret,
        },
        order: OrderArg::parse(&cli.order)?,
        max_degree: cli.max_degree,
    };
    match &cli.command {
        Command::Complete { file } => commands::complete(file, &opts),
        Command::MultVars { file } => commands::mult_vars(file, &opts),
        Command::CompMonomials { file } => commands::comp_monomials(file, &opts),
        Command::Invbasis { file } => commands::invbasis(file, &opts),
        Command::Groebner { file } => commands::groebner(file, &opts),
        Command::Member { file, poly } => commands::member(file, poly, &opts),
        Command::Hilbert { file, from, to } => commands::hilbert(file, *from, *to, &opts),
        Command::Characters { file, degree } => commands::characters(file, *degree, &opts),
        Command::Pde {
            command: PdeCommand::Analyze { file },
        } => commands::pde_analyze(file, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let report = envelope(cli.command.name(), &outcome);
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render_text(&report)
    };
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().write_all(text.as_bytes());
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
