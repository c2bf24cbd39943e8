//! Thin command-line front end; all logic lives in the library (see
//! `ginvariant::cli`). Exit codes: 0 success, 1 internal invariant
//! violation or failed verification, 2 domain errors (bad d, inert prime,
//! exhausted search cap).

use clap::{Parser, Subcommand, ValueEnum};
use ginvariant::cli::{self, Format, Options};
use ginvariant::Result;

#[derive(Parser)]
#[command(name = "ginvariant", version, about = "g-invariants of unary Hermitian lattices over imaginary quadratic fields Q(sqrt(-d))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one field: class group, per-prime exception sets, g_d(1).
    Analyze {
        /// Square-free positive d of the field Q(sqrt(-d)).
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 10_000)]
        search_cap: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// One CSV row (or JSON document) per square-free d up to --d-max.
    Survey {
        #[arg(long)]
        d_max: i64,
        #[arg(long, default_value_t = 10_000)]
        search_cap: i64,
        /// Worker threads (0 = automatic).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Cross-check every case for square-free d up to --d-max: congruence
    /// oracle vs block forms, conjugate symmetry, bound coverage.
    Verify {
        #[arg(long)]
        d_max: i64,
        #[arg(long, default_value_t = 10_000)]
        search_cap: i64,
        /// Width of the window [C, C + margin) the coverage check scans.
        #[arg(long, default_value_t = 512)]
        verify_margin: i64,
    },
    /// Print a SageMath script recomputing the case for (d, p).
    EmitSage {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        p: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze { d, search_cap, format } => {
            let opts = Options { search_cap, format: format.into(), ..Options::default() };
            println!("{}", cli::cmd_analyze(d, &opts)?);
            Ok(0)
        }
        Command::Survey { d_max, search_cap, threads, format } => {
            let opts = Options { search_cap, threads, format: format.into(), ..Options::default() };
            println!("{}", cli::cmd_survey(d_max, &opts)?);
            Ok(0)
        }
        Command::Verify { d_max, search_cap, verify_margin } => {
            let opts = Options { search_cap, verify_margin, ..Options::default() };
            let report = cli::cmd_verify(d_max, &opts)?;
            print!("{}", report.text);
            Ok(if report.outcome.passed() { 0 } else { 1 })
        }
        Command::EmitSage { d, p } => {
            print!("{}", cli::cmd_emit_sage(d, p, &Options::default())?);
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
