use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use locres_cli::{parse_problem, run, CliError, Command, Flags};

/// Exact Grothendieck local residues of regular sequences over Q.
#[derive(Parser)]
#[command(name = "locres", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for separating forms and factorization primes; overrides the file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for per-component runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Highest annihilator order tried before giving up.
    #[arg(long, global = true)]
    max_ann_order: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Residue operators T with the radicals of their components.
    Residuemap { file: PathBuf },
    /// Residues of φ dx/(f_1⋯f_n), one polynomial per component.
    Residue {
        file: PathBuf,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Noether operator bases of the primary components.
    Noether { file: PathBuf },
    /// Annihilator generators of [1/(f_1⋯f_n)] up to the given order.
    Annihilators {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Primary decomposition with radicals and multiplicities.
    Decompose { file: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (file, command) = match cli.command {
        Cmd::Residuemap { file } => (file, Command::ResidueMap),
        Cmd::Residue { file, phi } => (file, Command::Residue { phi }),
        Cmd::Noether { file } => (file, Command::Noether),
        Cmd::Annihilators { file, order } => (file, Command::Annihilators { order }),
        Cmd::Decompose { file } => (file, Command::Decompose),
    };
    let flags = Flags { json: cli.json, seed: cli.seed, jobs: cli.jobs, max_ann_order: cli.max_ann_order };
    let result = read(&file).and_then(|text| parse_problem(&text)).and_then(|p| run(&command, &p, &flags));
    match result {
        Ok(out) => {
            println!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("locres: {}", e);
            ExitCode::FAILURE
        }
    }
}
