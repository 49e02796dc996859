//! Batch front door: load model files, run classification / poset /
//! decomposition / verification suites, emit JSON, CSV, and DOT.
//!
//! Exit codes are a stable contract: 0 success, 1 internal check failure,
//! 2 invalid input, 3 unsupported parameters. Failures print a
//! machine-readable JSON object.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use disconn_core::error::Error;
use disconn_core::field::FieldSpec;
use disconn_core::modelfile::{builtin_model, ModelFile};
use disconn_core::report::{self, CommandOutput, Overrides, Suite};

#[derive(Parser)]
#[command(
    name = "disconn",
    about = "Classification, highest-weight order, and decomposition maps for disconnected reductive groups, with finite-group oracle verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the labels of a model and print the label table as JSON.
    Classify {
        /// Path to a model file, or a builtin model name (o2, a1xa1_swap, s3).
        #[arg(long)]
        model: String,
        /// Override the model's coefficient field, e.g. "finite(7)" or "rationals".
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the ideal's height bound.
        #[arg(long = "ideal-height")]
        ideal_height: Option<i64>,
        /// Directory for output files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the label poset as a DOT Hasse diagram plus order/axiom reports.
    Poset {
        #[arg(long)]
        model: String,
        #[arg(long = "ideal-height")]
        ideal_height: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the decomposition matrix and the cross-characteristic matching report.
    Decompose {
        #[arg(long)]
        model: String,
        /// The positive characteristic p.
        #[arg(long)]
        prime: u64,
        /// The auxiliary prime representing characteristic 0.
        #[arg(long = "aux-prime", default_value_t = 7)]
        aux_prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite over the shipped fixtures and models.
    Verify {
        /// One of: clifford, hw, groth, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok((output, out_dir, all_passed)) => {
            print!("{}", output.primary);
            if let Some(dir) = out_dir {
                if let Err(e) = write_files(&dir, &output) {
                    eprintln!("{}", error_json(&format!("writing outputs: {e}")));
                    return 1;
                }
            }
            if all_passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            println!("{}", error_json(&e.to_string()));
            e.exit_code()
        }
    }
}

type CommandResult = Result<(CommandOutput, Option<PathBuf>, bool), Error>;

fn dispatch(cli: Cli) -> CommandResult {
    match cli.command {
        Command::Classify {
            model,
            field,
            seed,
            ideal_height,
            out,
        } => {
            let model = load_model(&model)?;
            let overrides = Overrides {
                field: field.as_deref().map(str::parse::<FieldSpec>).transpose()?,
                ideal_height,
            };
            let output = report::classify_payload(&model, overrides, seed)?;
            Ok((output, out, true))
        }
        Command::Poset {
            model,
            ideal_height,
            seed,
            out,
        } => {
            let model = load_model(&model)?;
            let overrides = Overrides {
                field: None,
                ideal_height,
            };
            let output = report::poset_payload(&model, overrides, seed)?;
            Ok((output, out, true))
        }
        Command::Decompose {
            model,
            prime,
            aux_prime,
            seed,
            out,
        } => {
            let model = load_model(&model)?;
            let output = report::decompose_payload(&model, prime, aux_prime, seed)?;
            Ok((output, out, true))
        }
        Command::Verify { suite, seed, out } => {
            let suite: Suite = suite.parse()?;
            let (output, passed) = report::verify_payload(suite, seed)?;
            Ok((output, out, passed))
        }
    }
}

fn load_model(spec: &str) -> Result<ModelFile, Error> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("reading {spec}: {e}")))?;
        return ModelFile::parse(&text);
    }
    builtin_model(spec)
}

fn write_files(dir: &Path, output: &CommandOutput) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, content) in &output.files {
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}
