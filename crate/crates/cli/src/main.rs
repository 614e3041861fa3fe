use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hbsiegel_cli::{
    run_field_info, run_map_matrix, run_map_point, run_map_torsion, run_torsion_suite,
    run_verify_embedding, CommandError, Report, RunConfig,
};
use hbsiegel_core::schema::{FieldDescription, HBMatrixJson, HBPointJson, HBTorsionJson};

/// Exact verification of the Hilbert-Blumenthal to Siegel modular embedding.
#[derive(Parser)]
#[command(name = "hbsiegel", version)]
struct Cli {
    /// Path to the field description JSON
    #[arg(long, global = true)]
    field: Option<PathBuf>,

    /// Congruence level n (at least 3)
    #[arg(long, global = true, default_value_t = 3)]
    level: u32,

    /// Interval precision in bits
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,

    /// Seed for all randomized suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of randomized trials per suite
    #[arg(long, global = true, default_value_t = 100)]
    trials: u32,

    /// Maximum number of torsion points to enumerate
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,

    /// Also write the report to this path
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a field description and print its derived data
    FieldInfo,
    /// Run the embedding verification suites
    VerifyEmbedding,
    /// Map one object (matrix, point, or torsion point) through the embedding
    Map {
        kind: MapKind,
        /// Path to the object JSON
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate n-torsion and verify its transport
    TorsionSuite,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Matrix,
    Point,
    Torsion,
}

fn input_error(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {path:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let field_path = match &cli.field {
        Some(p) => p.clone(),
        None => return input_error("--field <path> is required".into()),
    };
    let field: FieldDescription = match read_json(&field_path) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let config = RunConfig {
        field,
        level: cli.level,
        precision: cli.precision,
        seed: cli.seed,
        trials: cli.trials,
        budget: cli.budget,
    };

    let result: Result<Report, CommandError> = match &cli.command {
        Command::FieldInfo => run_field_info(&config),
        Command::VerifyEmbedding => run_verify_embedding(&config),
        Command::TorsionSuite => run_torsion_suite(&config),
        Command::Map { kind, input } => match kind {
            MapKind::Matrix => match read_json::<HBMatrixJson>(input) {
                Ok(m) => run_map_matrix(&config, &m),
                Err(e) => return input_error(e),
            },
            MapKind::Point => match read_json::<HBPointJson>(input) {
                Ok(p) => run_map_point(&config, &p),
                Err(e) => return input_error(e),
            },
            MapKind::Torsion => match read_json::<HBTorsionJson>(input) {
                Ok(t) => run_map_torsion(&config, &t),
                Err(e) => return input_error(e),
            },
        },
    };

    match result {
        Ok(report) => {
            let bytes = report.to_bytes();
            print!("{}", String::from_utf8_lossy(&bytes));
            if let Some(path) = &cli.json {
                if let Err(e) = fs::write(path, &bytes) {
                    return input_error(format!("cannot write report to {path:?}: {e}"));
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => input_error(e.message),
    }
}
