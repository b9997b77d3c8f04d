use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkquot::report::{
    parse_matrix, render_text, render_verify_text, run_catalog, run_check, run_sample, run_verify, to_json,
    AnalysisReport, Matrix,
};
use qkquot::zeroset::SolverConfig;

#[derive(Parser)]
#[command(name = "qkquot", version, about = "Torus quotients of quaternionic projective space")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Minors, boxes, admissibility and freeness.
    Check(MatrixArg),
    /// Exact singular locus catalog.
    Catalog(MatrixArg),
    /// Seeded numerical points of the zero set.
    Sample {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
    },
    /// Built-in identity and classification suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct MatrixArg {
    /// Rows of integers separated by `;` or newlines, e.g. "1 0 1 1; 0 1 1 1; 1 1 0 1".
    #[arg(required_unless_present = "matrix_file", conflicts_with = "matrix_file")]
    matrix: Option<String>,
    #[arg(long)]
    matrix_file: Option<PathBuf>,
}

impl MatrixArg {
    fn load(&self) -> Result<Matrix, String> {
        let text = match (&self.matrix, &self.matrix_file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
            (None, None) => return Err("no matrix given".into()),
        };
        parse_matrix(&text).map_err(|e| e.to_string())
    }
}

fn emit(report: &AnalysisReport, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", render_text(report)),
        Format::Json => print!("{}", to_json(report)),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let load = |m: &MatrixArg| {
        m.load().map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(2)
        })
    };
    let result = match &cli.command {
        Command::Check(m) => load(m).map(|m| run_check(&m)),
        Command::Catalog(m) => load(m).map(|m| run_catalog(&m)),
        Command::Sample { matrix, seeds, seed, tol, max_iter } => {
            load(matrix).map(|m| run_sample(&m, *seed, *seeds, SolverConfig { tol: *tol, max_iter: *max_iter }))
        }
        Command::Verify { seed } => {
            let r = run_verify(*seed);
            match cli.format {
                Format::Text => print!("{}", render_verify_text(&r)),
                Format::Json => print!("{}", to_json(&r)),
            }
            return ExitCode::from(r.status.exit_code() as u8);
        }
    };
    match result {
        Ok(r) => emit(&r, cli.format),
        Err(code) => code,
    }
}
