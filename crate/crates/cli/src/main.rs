use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cvt_cli::render::{self, OrbitFormat, Variant};
use cvt_cli::{exit, parse_base_range, table_io, CliError};
use cvt_core::verify::{self, Property, Universe};
use cvt_core::{build_table, class_census, default_cap, mcvt_trace, trace, Base, Nat};

#[derive(Parser)]
#[command(name = "cvt", version, about = "Carry value transformation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_base(s: &str) -> Result<Base, String> {
    let beta: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Base::new(beta).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// CVT, MCVT and XOR of two numbers, with the a+b = CVT+XOR check
    Compute {
        a: Nat,
        b: Nat,
        #[arg(long, default_value = "2", value_parser = parse_base)]
        base: Base,
    },
    /// Orbit of (a, b) under f(a, b) = (CVT(a, b), a XOR b)
    Orbit {
        a: Nat,
        b: Nat,
        #[arg(long, default_value = "2", value_parser = parse_base)]
        base: Base,
        #[arg(long, value_enum, default_value_t = VariantArg::Cvt)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = OrbitFormatArg::Text)]
        format: OrbitFormatArg,
        /// Step budget; defaults to bitlen + 2 in base 2 and 4 * digits otherwise
        #[arg(long)]
        cap: Option<usize>,
        /// Print values as digit strings in the working base
        #[arg(long)]
        digits: bool,
    },
    /// Iteration-count table over {0, ..., 2^n - 1}^2
    Table {
        n: u32,
        #[arg(long, value_enum, default_value_t = TableFormatArg::Csv)]
        format: TableFormatArg,
        /// Write plain (P2) instead of binary (P5) PGM
        #[arg(long)]
        ascii: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence classes of pairs by iteration count
    Census {
        n: u32,
        #[arg(long, value_enum, default_value_t = CensusFormatArg::Text)]
        format: CensusFormatArg,
    },
    /// Exhaustively check a property over a range of pairs
    Verify {
        #[arg(value_parser = parse_property)]
        property: Property,
        #[arg(long, default_value_t = 1023)]
        max: Nat,
        /// Inclusive radix range, e.g. 2..10
        #[arg(long, default_value = "2..10", value_parser = parse_base_range)]
        bases: std::ops::RangeInclusive<u32>,
    },
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse().map_err(|e: cvt_core::CvtError| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Cvt,
    Mcvt,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitFormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormatArg {
    Csv,
    Pgm,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormatArg {
    Text,
    Json,
}

fn emit(bytes: &[u8]) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(bytes)
        .and_then(|_| stdout.flush())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute { a, b, base } => {
            emit(render::compute_report(a, b, base)?.as_bytes())?;
            Ok(exit::OK)
        }
        Command::Orbit {
            a,
            b,
            base,
            variant,
            format,
            cap,
            digits,
        } => {
            let fmt = match format {
                OrbitFormatArg::Text => OrbitFormat::Text,
                OrbitFormatArg::Csv => OrbitFormat::Csv,
                OrbitFormatArg::Json => OrbitFormat::Json,
            };
            let (t, variant) = match variant {
                VariantArg::Cvt => {
                    let cap = cap.unwrap_or_else(|| default_cap(a, b, base));
                    (trace(a, b, base, cap)?, Variant::Cvt)
                }
                VariantArg::Mcvt => (mcvt_trace(a, b, base)?, Variant::Mcvt),
            };
            emit(render::orbit_report(&t, variant, fmt, digits).as_bytes())?;
            if t.is_complete() {
                Ok(exit::OK)
            } else {
                Err(cvt_core::CvtError::CapExceeded {
                    cap: t.report.steps_taken,
                }
                .into())
            }
        }
        Command::Table {
            n,
            format,
            ascii,
            out,
        } => {
            if ascii && !matches!(format, TableFormatArg::Pgm) {
                return Err(CliError::Usage(
                    "--ascii applies to --format pgm only".into(),
                ));
            }
            let t = build_table(n)?;
            let bytes = match format {
                TableFormatArg::Csv => table_io::table_csv(&t).into_bytes(),
                TableFormatArg::Pgm => table_io::table_pgm(&t, ascii),
            };
            match out {
                Some(path) => fs::write(&path, bytes).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => emit(&bytes)?,
            }
            Ok(exit::OK)
        }
        Command::Census { n, format } => {
            let c = class_census(n)?;
            let text = match format {
                CensusFormatArg::Text => render::census_text(&c),
                CensusFormatArg::Json => render::census_json(&c),
            };
            emit(text.as_bytes())?;
            Ok(exit::OK)
        }
        Command::Verify {
            property,
            max,
            bases,
        } => {
            let universe = Universe::new(max, bases)?;
            let outcomes = verify::run(property, &universe)?;
            emit(render::verify_text(&outcomes).as_bytes())?;
            for o in &outcomes {
                eprintln!("{}: {:.3}s", o.property, o.elapsed.as_secs_f64());
            }
            if outcomes.iter().all(|o| o.passed) {
                Ok(exit::OK)
            } else {
                Ok(exit::VERIFY_FAILED)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cvt: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
