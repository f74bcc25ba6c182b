//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failure or route mismatch, 2 usage or
//! input error. Every error is a single line on standard error starting with
//! `ratspec: error[<kind>]:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::egf::{EgfJson, TruncatedEGF, DEFAULT_ORDER_1, DEFAULT_ORDER_2};
use crate::error::Error;
use crate::expr;
use crate::groupoid::parse_groupoid_json;
use crate::numbers::{self, NumberKind, NumberTable, PolynomialTable};
use crate::species::Species;
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ratspec", version, about = "Exact species generating series and Bernoulli/Euler tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cardinality of a groupoid described in a JSON file ("-" reads standard input).
    Card { file: PathBuf },
    /// Coefficient table of a species expression.
    Egf {
        expr: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bernoulli numbers, (f,N)-Bernoulli numbers, or Bernoulli polynomials.
    Bernoulli(NumberArgs),
    /// Euler numbers or polynomials.
    Euler(NumberArgs),
    /// Run the law-checking suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct NumberArgs {
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = RouteArg::Species)]
    pub route: RouteArg,
    /// Index N of the (f,N)-Bernoulli family.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Species expression for F; its generating series is f.
    #[arg(long, default_value = "Exp")]
    pub f: String,
    /// Produce polynomials instead of numbers.
    #[arg(long)]
    pub poly: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Species,
    Series,
    Formula,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Valuation,
    Inverse,
    Quotient,
    Factorial,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Valuation => Suite::Valuation,
            SuiteArg::Inverse => Suite::Inverse,
            SuiteArg::Quotient => Suite::Quotient,
            SuiteArg::Factorial => Suite::Factorial,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A failure carrying its diagnostic tag and exit code.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub code: i32,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { kind: e.kind().to_string(), message: e.to_string(), code: EXIT_USAGE }
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError { kind: "io".into(), message: e.to_string(), code: EXIT_USAGE }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { kind: "usage".into(), message: message.into(), code: EXIT_USAGE }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            let _ = writeln!(err, "ratspec: error[usage]: {first}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let message = e.message.replace('\n', " ");
            let _ = writeln!(err, "ratspec: error[{}]: {message}", e.kind);
            e.code
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Card { file } => {
            let text = if file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(io_error)?
            } else {
                std::fs::read_to_string(file).map_err(io_error)?
            };
            let g = parse_groupoid_json(&text)?;
            writeln!(out, "{}", g.cardinality()).map_err(io_error)?;
            Ok(EXIT_OK)
        }
        Command::Egf { expr, order, format } => {
            let species = expr::species_from_str(expr)?;
            let order = order.unwrap_or(if species.sorts() == 1 { DEFAULT_ORDER_1 } else { DEFAULT_ORDER_2 });
            let series = species.egf(order)?;
            write_egf(expr, &series, *format, out)?;
            Ok(EXIT_OK)
        }
        Command::Bernoulli(args) => {
            let tables =
                if args.poly { Tables::Polys(bernoulli_polys(args)?) } else { Tables::Numbers(bernoulli(args)?) };
            tables.emit(args.route == RouteArg::All, out)
        }
        Command::Euler(args) => {
            if args.n != 1 || args.f != "Exp" {
                return Err(usage("--N and --f apply to bernoulli only"));
            }
            let tables = if args.poly { Tables::Polys(euler_polys(args)?) } else { Tables::Numbers(euler(args)?) };
            tables.emit(args.route == RouteArg::All, out)
        }
        Command::Verify { suite, order, seed, trials } => {
            let config = verify::Config { order: *order, seed: *seed, trials: *trials };
            let report = verify::run((*suite).into(), &config);
            for law in &report.laws {
                writeln!(out, "{}", to_json(law)?).map_err(io_error)?;
            }
            let verdict = if report.all_passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict}").map_err(io_error)?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError { kind: "io".into(), message: e.to_string(), code: EXIT_USAGE })
}

#[derive(Serialize)]
struct EgfOutput<'a> {
    expr: &'a str,
    #[serde(flatten)]
    series: EgfJson,
}

fn write_egf(expr: &str, series: &TruncatedEGF, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let j = EgfOutput { expr, series: EgfJson::from(series) };
            writeln!(out, "{}", to_json(&j)?).map_err(io_error)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError { kind: "io".into(), message: e.to_string(), code: EXIT_USAGE };
            if series.vars() == 1 {
                w.write_record(["n", "coefficient"]).map_err(csv_err)?;
            } else {
                w.write_record(["a", "b", "coefficient"]).map_err(csv_err)?;
            }
            for (size, c) in series.entries() {
                let mut row: Vec<String> = size.entries().iter().map(usize::to_string).collect();
                row.push(c.to_string());
                w.write_record(&row).map_err(csv_err)?;
            }
            w.flush().map_err(io_error)
        }
    }
}

enum Tables {
    Numbers(Vec<NumberTable>),
    Polys(Vec<PolynomialTable>),
}

impl Tables {
    fn emit(&self, with_verdict: bool, out: &mut dyn Write) -> Result<i32, CliError> {
        let all_equal = match self {
            Tables::Numbers(ts) => {
                for t in ts {
                    writeln!(out, "{}", to_json(t)?).map_err(io_error)?;
                }
                ts.windows(2).all(|w| w[0].values == w[1].values)
            }
            Tables::Polys(ts) => {
                for t in ts {
                    writeln!(out, "{}", to_json(t)?).map_err(io_error)?;
                }
                ts.windows(2).all(|w| w[0].polys == w[1].polys)
            }
        };
        if !with_verdict {
            return Ok(EXIT_OK);
        }
        writeln!(out, "{}", if all_equal { "MATCH" } else { "MISMATCH" }).map_err(io_error)?;
        Ok(if all_equal { EXIT_OK } else { EXIT_FAILURE })
    }
}

fn routes(selected: RouteArg, available: &[RouteArg]) -> Result<Vec<RouteArg>, CliError> {
    if selected == RouteArg::All {
        return Ok(available.to_vec());
    }
    if !available.contains(&selected) {
        let names: Vec<String> =
            available.iter().map(|r| r.to_possible_value().expect("named").get_name().to_string()).collect();
        return Err(usage(format!("route not available here; choose from {}", names.join(", "))));
    }
    Ok(vec![selected])
}

fn is_classical(args: &NumberArgs) -> bool {
    args.n == 1 && args.f == "Exp"
}

/// `f` for the series route. `Exp` uses the analytic exponential series.
fn f_series(args: &NumberArgs, species: &Species, order: usize) -> Result<TruncatedEGF, CliError> {
    if args.f == "Exp" {
        Ok(TruncatedEGF::exp_series(order))
    } else {
        Ok(species.egf(order)?)
    }
}

fn bernoulli(args: &NumberArgs) -> Result<Vec<NumberTable>, CliError> {
    use RouteArg::*;
    let m = args.order;
    if is_classical(args) {
        return routes(args.route, &[Species, Series, Formula, Oracle])?
            .into_iter()
            .map(|r| {
                Ok(match r {
                    Species => numbers::bernoulli_species(m)?,
                    Series => numbers::bernoulli_series(m)?,
                    Formula => numbers::bernoulli_closed_formula(m)?,
                    _ => numbers::bernoulli_oracle(m),
                })
            })
            .collect();
    }
    let f = expr::species_from_str(&args.f)?;
    routes(args.route, &[Species, Series])?
        .into_iter()
        .map(|r| {
            let mut t = match r {
                Species => numbers::bernoulli_generalized_species(&f, args.n, m)?,
                _ => numbers::bernoulli_generalized(&f_series(args, &f, m + args.n)?, args.n, m)?,
            };
            t.kind = NumberKind::BernoulliGeneralized { f: args.f.clone(), n: args.n };
            Ok(t)
        })
        .collect()
}

fn bernoulli_polys(args: &NumberArgs) -> Result<Vec<PolynomialTable>, CliError> {
    use RouteArg::*;
    let m = args.order;
    let f = expr::species_from_str(&args.f)?;
    let available: &[RouteArg] = if is_classical(args) { &[Species, Series, Oracle] } else { &[Species, Series] };
    routes(args.route, available)?
        .into_iter()
        .map(|r| {
            let mut t = match r {
                Species => numbers::bernoulli_polynomials_species(&f, args.n, m)?,
                Series => numbers::bernoulli_polynomials_series(&f_series(args, &f, 2 * m + args.n)?, args.n, m)?,
                _ => numbers::bernoulli_polynomials_oracle(m),
            };
            t.kind = numbers::PolynomialKind::BernoulliPoly { f: args.f.clone(), n: args.n };
            Ok(t)
        })
        .collect()
}

fn euler(args: &NumberArgs) -> Result<Vec<NumberTable>, CliError> {
    use RouteArg::*;
    let m = args.order;
    routes(args.route, &[Species, Series, Oracle])?
        .into_iter()
        .map(|r| {
            Ok(match r {
                Species => numbers::euler_numbers_species(m)?,
                Series => numbers::euler_numbers_series(m)?,
                _ => numbers::euler_numbers_oracle(m),
            })
        })
        .collect()
}

fn euler_polys(args: &NumberArgs) -> Result<Vec<PolynomialTable>, CliError> {
    use RouteArg::*;
    let m = args.order;
    routes(args.route, &[Species, Series, Oracle])?
        .into_iter()
        .map(|r| {
            Ok(match r {
                Species => numbers::euler_polynomials_species(m)?,
                Series => numbers::euler_polynomials_series(m)?,
                _ => numbers::euler_polynomials_oracle(m),
            })
        })
        .collect()
}
