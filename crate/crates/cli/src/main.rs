mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "k3lat", version, about = "Exact lattice computations for elliptic K3 surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form `U·A·V = D` of an integer matrix.
    Snf { input: Option<PathBuf> },
    /// Exact determinant of a square integer matrix.
    Det { input: Option<PathBuf> },
    /// Discriminant form of an even lattice.
    Discform { input: Option<PathBuf> },
    /// Reduce a positive-definite binary form given as `A B C` or as form JSON.
    Reduce {
        #[arg(num_args = 0..=3, allow_negative_numbers = true)]
        abc: Vec<i64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// All reduced even positive-definite binary forms of a determinant.
    Enumerate { det: u64 },
    /// Orthogonal complement of a vector: `{"gram": .., "v": [..]}`.
    Complement { input: Option<PathBuf> },
    /// Transcendental-lattice candidates for a rank-20 Néron–Severi lattice;
    /// with a `"t"` lattice in the input, checks that one instead.
    Match { input: Option<PathBuf> },
    /// Néron–Severi Gram matrix of a fibration spec.
    NsBuild {
        input: Option<PathBuf>,
        /// Use a built-in fibration (`Z_k`, `Z_-6`, `Z_4`, `Z_-12`, `Z_-3`, `Z_0`, `Z_12`, `J_12`, ...).
        #[arg(long, conflicts_with = "input")]
        dataset: Option<String>,
    },
    /// Check the relation forced by a torsion section.
    NsVerifyTorsion {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        dataset: Option<String>,
        #[arg(long, default_value = "s2")]
        section: String,
    },
    /// Singular fibers of a Weierstrass model.
    Fibers {
        input: Option<PathBuf>,
        /// Use a built-in model (`F_-3`, `F_12`, `J_0`, ...).
        #[arg(long, conflicts_with = "input")]
        dataset: Option<String>,
    },
    /// Specialize a parametric family at a rational `k`.
    Specialize {
        /// `F`, `J` or `first`.
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Rescale by `aᵢ ↦ aᵢ/uⁱ`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Check that `(x, y)` lies on a model: `{"model": .., "d": .., "x": .., "y": ..}`.
    VerifyPoint {
        input: Option<PathBuf>,
        /// Use a built-in point (`F_-6:P`, `F_4:P`, `F_-12:P`).
        #[arg(long, conflicts_with = "input")]
        dataset: Option<String>,
    },
    /// Transcendental lattice of the singular member with the given τ-equation.
    Period {
        #[arg(long)]
        family: String,
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
        tau: Vec<i64>,
    },
    /// Factorizations `det_S = l²·det_J`.
    Keum {
        #[arg(allow_negative_numbers = true)]
        det: i64,
    },
    /// Dump the embedded reference table.
    Dataset,
    /// Run every reference check and report one record per claim.
    VerifyPaper {
        /// Only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        fail_fast: bool,
        /// Run the cases on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match commands::run(&cli.command).and_then(|out| emit(&out, format, cli.out.as_ref())) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(e)) => {
            let obj = serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            println!("{obj}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Output, format: Format, path: Option<&PathBuf>) -> Result<u8, CliError> {
    let mut text = match format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize"),
        Format::Text => out.text.clone(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(if out.ok { 0 } else { 1 })
}
