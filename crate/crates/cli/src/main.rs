mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

/// Exact construction and verification of multiple almost-Riordan arrays.
#[derive(Parser, Debug)]
#[command(name = "riordan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first rows of the array.
    Build(Job),
    /// Print the A-, Z- and W-sequences as coefficient lists in t^l.
    Seq(Job),
    /// Print the production matrix and check D P = D shifted up by l rows.
    Prodmat(Job),
    /// Multiply two arrays given by --b/--g/--f and --b2/--g2/--f2.
    Mul(MulJob),
    /// Invert an array.
    Inv(InvJob),
    /// Print the compressed array and check its recurrences and identities.
    Compress(Job),
    /// Run every available check on one array.
    Verify(Job),
    /// Recover the sequences from a matrix file.
    Extract(ExtractJob),
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Stride l of the array.
    #[arg(long)]
    ell: usize,
    /// First column generating function.
    #[arg(long)]
    b: String,
    /// Generating function g.
    #[arg(long)]
    g: String,
    /// Multiplier f_j; repeat once per j = 1..l in order.
    #[arg(long = "f", required = true)]
    f: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Number of rows M.
    #[arg(long, default_value_t = 10)]
    rows: usize,
    /// Series precision N; defaults to l * M.
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Job {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MulJob {
    #[command(flatten)]
    spec: SpecArgs,
    /// First column of the right factor.
    #[arg(long)]
    b2: String,
    /// g of the right factor.
    #[arg(long)]
    g2: String,
    /// Multipliers of the right factor, in order.
    #[arg(long = "f2", required = true)]
    f2: Vec<String>,
    /// Also print the first rows of the product.
    #[arg(long)]
    matrix: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct InvJob {
    #[command(flatten)]
    spec: SpecArgs,
    /// Also print the first rows of the inverse.
    #[arg(long)]
    matrix: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExtractJob {
    /// Matrix file, JSON or whitespace-separated text.
    file: PathBuf,
    /// Stride; taken from the file or detected when omitted.
    #[arg(long)]
    ell: Option<usize>,
    /// Terms per sequence; defaults to the largest the matrix determines.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format, out) = match cli.command {
        Command::Build(j) => (commands::build(&j.spec, &j.output), j.output.format, j.output.out),
        Command::Seq(j) => (commands::seq(&j.spec, &j.output), j.output.format, j.output.out),
        Command::Prodmat(j) => (commands::prodmat(&j.spec, &j.output), j.output.format, j.output.out),
        Command::Mul(j) => (commands::mul(&j), j.output.format, j.output.out),
        Command::Inv(j) => (commands::inv(&j), j.output.format, j.output.out),
        Command::Compress(j) => (commands::compress(&j.spec, &j.output), j.output.format, j.output.out),
        Command::Verify(j) => (commands::verify(&j.spec, &j.output), j.output.format, j.output.out),
        Command::Extract(j) => (commands::extract(&j), j.format, j.out),
    };
    let report = match result {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Math(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut rendered = match format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json values serialize"),
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
