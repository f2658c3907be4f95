mod cmds;
mod ctx;
mod report;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

/// Subgroup-membership toolkit: streaming rewriters, a pushdown recognizer,
/// Schreier/Cayley ball checks, and brute-force reference oracles.
#[derive(Parser)]
#[command(name = "gwpkit", version)]
struct Cli {
    /// Human-readable output instead of key=value records.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word lies in a subgroup.
    Query(cmds::QueryArgs),
    /// Feed letters from standard input through a rewriting system, echoing
    /// the tape after each letter.
    Stream(cmds::StreamArgs),
    /// Generate the shortening rules of a group up to a length bound.
    GenDehn(cmds::GenDehnArgs),
    /// Generate anchored coset-shortening rules for a subgroup.
    GenAnchored(cmds::GenAnchoredArgs),
    /// Run a named verification suite over the built-in fixtures.
    Verify(cmds::VerifyArgs),
    /// Compare Schreier balls around far-away cosets with the Cayley ball.
    GibCheck(cmds::GibCheckArgs),
    /// Run the pushdown recognizer on a word over the free-subgroup alphabet.
    RunPda(cmds::RunPdaArgs),
    /// Dump coset geodesic lengths out to a radius.
    OracleDump(cmds::OracleDumpArgs),
    /// Per-letter work statistics for a decider over a word corpus.
    Bench(cmds::BenchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(a) => cmds::query(a, cli.pretty),
        Command::Stream(a) => cmds::stream(a, cli.pretty),
        Command::GenDehn(a) => cmds::gen_dehn(a),
        Command::GenAnchored(a) => cmds::gen_anchored(a),
        Command::Verify(a) => cmds::verify(a, cli.pretty),
        Command::GibCheck(a) => cmds::gib_check_cmd(a, cli.pretty),
        Command::RunPda(a) => cmds::run_pda(a, cli.pretty),
        Command::OracleDump(a) => cmds::oracle_dump(a),
        Command::Bench(a) => cmds::bench(a, cli.pretty),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
