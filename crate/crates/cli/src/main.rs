use std::process::ExitCode;

use clap::{Parser, Subcommand};

use folres_cli::error::CliError;
use folres_cli::sample::DEFAULT_SEED;
use folres_cli::*;

#[derive(Parser)]
#[command(name = "folres", version, about = "Exact resolution of plane foliation singularities")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve the singularity of `a dx + b dy` at the origin.
    Resolve {
        input: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        dot: Option<String>,
        #[arg(long = "max-blowups")]
        max_blowups: Option<usize>,
        #[arg(long = "allow-extensions")]
        allow_extensions: bool,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Add the chain section to a resolved report.
    Chains { report: String },
    /// Add chains and their verdicts to a resolved report.
    Verdict { report: String },
    /// Add chains, verdicts and the extension schedule to a resolved report.
    Schedule { report: String },
    #[command(subcommand)]
    Triple(TripleCommand),
    /// List the sequences reachable from 1.1 with their checks.
    Aseq {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum TripleCommand {
    /// Check the three structure equations.
    Check { triple: String },
    /// Apply a modification given in a file, or seeded random ones.
    Modify {
        triple: String,
        #[arg(long, conflicts_with = "sweep")]
        params: Option<String>,
        /// Apply this many seeded modifications and count the ones that behave.
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Recover F from two triples sharing Ω and η.
    Compare { first: String, second: String },
    /// Build a normal form and check its closedness identity.
    NormalForm {
        #[arg(long)]
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long = "phi-monomial")]
        phi_monomial: Option<String>,
        #[arg(long = "phi-num")]
        phi_num: Option<String>,
        #[arg(long = "phi-den")]
        phi_den: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Resolve { input, out, dot, max_blowups, allow_extensions, timing } => {
            cmd_resolve(&ResolveArgs { input, out, dot, max_blowups, allow_extensions, timing })
        }
        Command::Chains { report } => cmd_chains(&report),
        Command::Verdict { report } => cmd_verdict(&report),
        Command::Schedule { report } => cmd_schedule(&report),
        Command::Triple(TripleCommand::Check { triple }) => cmd_triple_check(&triple),
        Command::Triple(TripleCommand::Modify { triple, params, sweep }) => {
            cmd_triple_modify(&ModifyArgs { triple, params, sweep, seed: cli.seed })
        }
        Command::Triple(TripleCommand::Compare { first, second }) => cmd_triple_compare(&first, &second),
        Command::Triple(TripleCommand::NormalForm { case, lambda, l, c, phi_monomial, phi_num, phi_den, g }) => {
            cmd_triple_normal_form(&NormalFormArgs { case, lambda, l, c, phi_monomial, phi_num, phi_den, g })
        }
        Command::Aseq { depth, json } => cmd_aseq(depth, json),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::parse(e.to_string().trim())),
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            match out.failure {
                Some(e) => fail(&e),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => fail(&e),
    }
}
