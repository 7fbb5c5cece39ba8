//! `fibp` command-line front end.

mod bits;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fibp",
    version,
    about = "Fibonacci-p number systems and virtual bit-plane data hiding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sequential,
    Permuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PgmOut {
    P5,
    P2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F_p(0..=n).
    Gen {
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Positive root of x^(p+1) - x^p - 1.
    Root {
        #[arg(short = 'p')]
        p: u32,
        #[arg(long, default_value_t = fibp_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = 6)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ratios F_p(n+1)/F_p(n) for n < N.
    Ratios {
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = fibp_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = 6)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Certify alpha^(n-p) < F_p(n) < alpha^n and F_p(n) <= 2^(n-p).
    VerifyBounds {
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = fibp_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = 6)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Check the root inequalities for k <= K and the power chains for p <= P.
    Lemmas {
        #[arg(long, default_value_t = 20)]
        k_max: u32,
        #[arg(long, default_value_t = 10)]
        p_max: u32,
        #[arg(long, default_value_t = fibp_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Weight table of a number system.
    Weights {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Codeword of a value, plane 0 first.
    Decompose {
        #[arg(long)]
        system: String,
        #[arg(long)]
        value: u64,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Hide message bits in one (virtual) bit-plane of a PGM cover.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        plane: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Raw bytes, bits taken most significant first.
        #[arg(long)]
        message: PathBuf,
        /// Embed only the first N bits of the message file.
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Permuted)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = PgmOut::P5)]
        pgm: PgmOut,
    },
    /// Recover N bits from a stego PGM.
    Extract {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        system: String,
        #[arg(long)]
        plane: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Permuted)]
        mode: Mode,
        /// Packed bits, most significant first, last byte zero-padded.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Embed per (system, plane) and report MSE / WSE / WMSE / PSNR.
    Compare {
        /// PGM cover; a 64x64 seeded-noise cover is synthesised when absent.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7")]
        planes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "binary,fib1,fib2")]
        systems: Vec<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Message file; defaults to a full-capacity random message per cell.
        #[arg(long)]
        message: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        precision: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Regenerate every reproduction table as CSV under --out-dir.
    Tables {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            let kind = err
                .downcast_ref::<fibp_core::Error>()
                .map(fibp_core::Error::kind)
                .or_else(|| err.downcast_ref::<commands::Failure>().map(|f| f.kind))
                .unwrap_or("io");
            let line = serde_json::json!({ "error": kind, "message": format!("{err:#}") });
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}
