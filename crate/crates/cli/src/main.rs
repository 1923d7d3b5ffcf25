use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;
use monohopf::frontend::{run, Builtin, Command, Options, Verb};

#[derive(Parser, Debug)]
#[command(name = "monohopf", version, about = "Galois objects and polynomial H-identities of monomial Hopf algebras")]
struct Cli {
    #[arg(value_parser = PossibleValuesParser::new(Verb::NAMES))]
    verb: String,
    /// Datum or spec config files.
    operands: Vec<PathBuf>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    vars: Option<u32>,
    /// Upper bound on the number of monomials in a degree slice.
    #[arg(long, default_value_t = monohopf::identity::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Use distinct variables for E, X and Y in the builtin P.
    #[arg(long)]
    multi_index: bool,
    #[arg(long, value_parser = ["P", "Q"])]
    builtin: Option<String>,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    graded: bool,
    /// Cocycle modulus N for cocycle-solve (default |G|).
    #[arg(long)]
    modulus: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let builtin = cli.builtin.as_deref().map(|b| b.parse::<Builtin>().expect("checked by clap"));
    let cmd = Command {
        verb: cli.verb.parse().expect("checked by clap"),
        operands: cli.operands,
        options: Options {
            degree: cli.degree,
            vars: cli.vars,
            budget: cli.budget,
            seed: cli.seed,
            trials: cli.trials,
            multi_index: cli.multi_index,
            builtin,
            poly: cli.poly,
            graded: cli.graded,
            modulus: cli.modulus,
        },
    };
    let out = run(&cmd);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
