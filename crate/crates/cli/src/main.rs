//! walsh-forge: construct odd-characteristic finite fields, compute exact
//! Walsh spectra of p-ary functions, and exhaustively verify the bent
//! binomial family and its supporting claims.

mod cache;
mod commands;
mod error;
mod formats;
mod spec_text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{ClaimArg, SpectrumArgs, SpectrumFormat, VerifyArgs};

#[derive(Parser)]
#[command(name = "walsh-forge", version)]
#[command(about = "Exact Walsh-spectrum analysis over GF(p^n), odd p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct GF(p^n) and emit its description as JSON (stdout or --out)
    Field {
        /// Odd prime characteristic
        #[arg(long)]
        p: u64,
        /// Extension degree
        #[arg(long)]
        n: u32,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the exact Walsh spectrum of a trace-form function
    Spectrum {
        /// Odd prime characteristic (or use --field)
        #[arg(long)]
        p: Option<u64>,
        /// Extension degree (or use --field)
        #[arg(long)]
        n: Option<u32>,
        /// Field description file emitted by `field`
        #[arg(long)]
        field: Option<PathBuf>,
        /// Function spec, e.g. "Tr(x^34 + x^2)" or "Tr(xi^10 x^22 + x^4)"
        #[arg(long)]
        f: String,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads for the spectrum rows
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Lift the spectrum-size budget
        #[arg(long)]
        budget_override: bool,
    },
    /// Exhaustively verify a claim and emit a JSON report
    /// (exit 0 verified, 1 falsified, 2 usage error)
    Verify {
        /// Which claim to verify
        #[arg(value_enum)]
        claim: Claim,
        /// Odd prime characteristic
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// The parameter k (the field is GF(p^4k))
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Report path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for CSV artifacts (recorded in the report)
        #[arg(long)]
        csv_dir: Option<PathBuf>,
        /// Worker threads for independent claims under `all`
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Run (p, k) pairs outside the default budget table
        #[arg(long)]
        budget_override: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Claim {
    Theorem1,
    Fact1,
    Prop1,
    Prop2,
    Prop3,
    Cor1,
    Cor2,
    All,
}

impl From<Claim> for ClaimArg {
    fn from(c: Claim) -> ClaimArg {
        match c {
            Claim::Theorem1 => ClaimArg::Theorem1,
            Claim::Fact1 => ClaimArg::Fact1,
            Claim::Prop1 => ClaimArg::Prop1,
            Claim::Prop2 => ClaimArg::Prop2,
            Claim::Prop3 => ClaimArg::Prop3,
            Claim::Cor1 => ClaimArg::Cor1,
            Claim::Cor2 => ClaimArg::Cor2,
            Claim::All => ClaimArg::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Field { p, n, out } => commands::cmd_field(p, n, out.as_deref()),
        Command::Spectrum {
            p,
            n,
            field,
            f,
            out,
            format,
            jobs,
            budget_override,
        } => commands::cmd_spectrum(SpectrumArgs {
            p,
            n,
            field_file: field,
            function: &f,
            out,
            format: match format {
                Format::Json => SpectrumFormat::Json,
                Format::Csv => SpectrumFormat::Csv,
            },
            jobs,
            budget_override,
        }),
        Command::Verify {
            claim,
            p,
            k,
            out,
            csv_dir,
            jobs,
            budget_override,
        } => commands::cmd_verify(VerifyArgs {
            claim: claim.into(),
            p,
            k,
            out,
            csv_dir,
            jobs,
            budget_override,
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
