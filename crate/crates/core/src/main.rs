use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};
use deligne::cli::{self, RunOptions, Subcommand};
use deligne::Error;

#[derive(Parser)]
#[command(name = "deligne", version, about = "Exact Deligne pairings, norms and metrics on small projective families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Task file, or `-` for stdin.
    task: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of suite instances.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Norm of an element of a finite algebra.
    Norm(Common),
    /// Pairing section of a section sequence.
    Pair(Common),
    /// Intersection number of the twists.
    Intersect(Common),
    /// Arakelov metric of the pairing section.
    Metric(Common),
    /// Run a seeded property suite, or one check on a task file.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

fn read_task(path: &PathBuf) -> Result<String, Error> {
    let io_err = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (cmd, common) = match args.command {
        Command::Norm(c) => (Subcommand::parse("norm", None), c),
        Command::Pair(c) => (Subcommand::parse("pair", None), c),
        Command::Intersect(c) => (Subcommand::parse("intersect", None), c),
        Command::Metric(c) => (Subcommand::parse("metric", None), c),
        Command::Verify { suite, common } => (Subcommand::parse("verify", Some(&suite)), common),
    };
    let text = common.task.as_ref().map(read_task).transpose();
    let (stdout, stderr, code) = match (cmd, text) {
        (Ok(cmd), Ok(text)) => {
            let opts = RunOptions {
                seed: common.seed,
                count: common.count,
            };
            cli::execute(&cmd, text.as_deref(), &opts)
        }
        (Err(e), _) | (_, Err(e)) => (String::new(), cli::render(&cli::error_document(&e)), cli::EXIT_INPUT_ERROR),
    };
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    ExitCode::from(code as u8)
}
