//! The `modhyp` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use modhyp::analysis::{
    coverage_check, density_report, dominance_report, dominance_scan, primorial_series,
    solve_sum_product, verify_composites, verify_prime_powers,
};
use modhyp::cardinality::card_signed_sumset;
use modhyp::hyperbola::{
    enumerate_points, planar_points, signed_sumset, HyperbolaSpec, DEFAULT_BUDGET,
};
use modhyp::report::{parse_rational, write_reports, Format, Record};
use modhyp::svg::render_svg;
use modhyp::{with_threads, Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "modhyp",
    version,
    about = "Sumsets and difference sets of modular hyperbolas"
)]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "MODHYP_THREADS", default_value_t = 0)]
    threads: usize,

    /// Maximum number of enumerated tuples.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Modulus {
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Points of H_d(a; n), or with --sumset the signed sumset.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        modulus: Modulus,
        #[arg(long)]
        sumset: bool,
    },
    /// Size of the signed sumset with the method used per prime power.
    Card {
        #[command(flatten)]
        modulus: Modulus,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long)]
        m: Option<u32>,
    },
    /// c2(a; n) and its classification.
    Ratio {
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Closed forms against enumeration.
    Verify {
        #[arg(long)]
        max_pp: u64,
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Dominance reports for every n up to --max-n coprime to a.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        max_n: u64,
        #[arg(long = "L", value_parser = parse_threshold)]
        threshold: Option<Rational>,
    },
    /// Share of E_a with c2 above L, and the density lower bound.
    Density {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        max_n: u64,
        #[arg(long = "L", value_parser = parse_threshold, default_value = "1")]
        threshold: Rational,
    },
    /// c2 over products of the first k primes 3 mod 4.
    Primorial {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        k_max: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
    },
    /// Residues missed by a signed sumset with d >= 3.
    Coverage {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Units x1, x2, x3 mod p^t with given sum and product.
    Solve3 {
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// SVG scatter plot of H_2(a; n).
    Plot {
        #[command(flatten)]
        modulus: Modulus,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_threshold(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `argv` (program name first) and runs it. Data goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match with_threads(cli.threads, || dispatch(&cli, &mut *out, &mut *err)) {
        Ok(r) => r.and_then(|()| out.flush().map_err(Failure::Io)),
        Err(e) => Err(Failure::Lib(e)),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_COMPUTE
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_COMPUTE
        }
    }
}

fn emit<R: Record>(out: &mut dyn Write, records: &[R], format: Format) -> Result<(), Failure> {
    out.write_all(write_reports(records, format).as_bytes())?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let (format, budget) = (cli.format, cli.budget);
    match &cli.command {
        Command::Enumerate {
            d,
            m,
            modulus,
            sumset,
        } => {
            let spec = HyperbolaSpec::new(*d, m.unwrap_or(*d), modulus.a, modulus.n)?;
            if *sumset {
                let set = signed_sumset(spec, budget)?;
                let header = ["value".to_string()];
                let rows = set.iter().map(|v| vec![v.to_string()]);
                write_dynamic(out, &header, rows, format)?;
            } else {
                let header: Vec<String> = (1..=*d).map(|i| format!("x{i}")).collect();
                let rows =
                    enumerate_points(spec, budget)?.map(|p| p.iter().map(u64::to_string).collect());
                write_dynamic(out, &header, rows, format)?;
            }
        }
        Command::Card { modulus, d, m } => {
            let spec = HyperbolaSpec::new(*d, m.unwrap_or(*d), modulus.a, modulus.n)?;
            emit(out, &[card_signed_sumset(spec, budget)?], format)?;
        }
        Command::Ratio { modulus } => {
            emit(out, &[dominance_report(modulus.a, modulus.n)?], format)?
        }
        Command::Verify { max_pp, max_n } => {
            let mut summaries = vec![verify_prime_powers(*max_pp)?];
            if let Some(max_n) = max_n {
                summaries.push(verify_composites(*max_n)?);
            }
            emit(out, &summaries, format)?;
            let bad: Vec<_> = summaries.iter().flat_map(|s| &s.mismatches).collect();
            for m in &bad {
                writeln!(err, "mismatch: {m:?}")?;
            }
            if !bad.is_empty() {
                return Err(Failure::Mismatch(format!(
                    "{} closed-form mismatches",
                    bad.len()
                )));
            }
        }
        Command::Scan {
            a,
            max_n,
            threshold,
        } => {
            let scan = dominance_scan(*a, *max_n, *threshold)?;
            emit(out, &scan.reports, format)?;
            writeln!(err, "skipped {} moduli not coprime to {a}", scan.skipped)?;
            if threshold.is_some() {
                writeln!(
                    err,
                    "{} moduli at or below the threshold",
                    scan.below_threshold
                )?;
            }
        }
        Command::Density {
            a,
            max_n,
            threshold,
        } => {
            emit(out, &[density_report(*a, *max_n, *threshold)?], format)?;
        }
        Command::Primorial { a, k_max, t } => {
            emit(out, &[primorial_series(*a, *k_max, *t)?], format)?
        }
        Command::Coverage { d, m, modulus } => {
            let spec = HyperbolaSpec::new(*d, *m, modulus.a, modulus.n)?;
            emit(out, &[coverage_check(spec, budget)?], format)?;
        }
        Command::Solve3 { b, a, p, t } => emit(out, &[solve_sum_product(*b, *a, *p, *t)?], format)?,
        Command::Plot { modulus, out: path } => {
            let points = planar_points(modulus.a, modulus.n, budget)?;
            fs::write(path, render_svg(&points, modulus.n))?;
            writeln!(err, "wrote {} points to {}", points.len(), path.display())?;
        }
    }
    Ok(())
}

/// Emits rows whose column count depends on the input, streaming them.
fn write_dynamic(
    out: &mut dyn Write,
    header: &[String],
    rows: impl Iterator<Item = Vec<String>>,
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header).map_err(csv_io)?;
            for row in rows {
                w.write_record(&row).map_err(csv_io)?;
            }
            w.flush()?;
        }
        Format::Json => {
            out.write_all(b"[")?;
            for (i, row) in rows.enumerate() {
                let obj: serde_json::Map<String, serde_json::Value> = header
                    .iter()
                    .cloned()
                    .zip(
                        row.iter()
                            .map(|v| serde_json::Value::from(v.parse::<u64>().unwrap_or_default())),
                    )
                    .collect();
                let sep = if i == 0 { "\n  " } else { ",\n  " };
                write!(out, "{sep}{}", serde_json::Value::Object(obj))?;
            }
            out.write_all(b"\n]\n")?;
        }
        Format::Table => {
            writeln!(out, "{}", header.join(" "))?;
            for row in rows {
                writeln!(out, "{}", row.join(" "))?;
            }
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> Failure {
    Failure::Io(io::Error::other(e))
}
