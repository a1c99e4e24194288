//! `primcyc`: proportions of primary cyclic matrices, their limits, tables
//! and verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or validation
//! error, 3 an enumeration was refused by the size guard.

mod cache;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primcyc::census::{self, CensusReport, Method, BRUTE_GUARD, BRUTE_GUARD_RAISED};
use primcyc::rational::{to_decimal, to_fraction_string};
use primcyc::series::{named_series, SeriesDump, SeriesParams};
use primcyc::Error;

use cache::IrreducibleCache;

#[derive(Parser, Debug)]
#[command(name = "primcyc", version, about = "Primary cyclic matrix census over finite fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    parallelism: Option<u32>,
    /// Raise enumeration guards (2^20 to 2^24 for proportions).
    #[arg(long, global = true)]
    guard_override: bool,
    /// Irreducible-polynomial cache directory; PCC_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Write named series (P, S, L, H, PCB, J, PCBI<k>) as JSON to stderr.
    #[arg(long, global = true, value_delimiter = ',')]
    dump_series: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProportionMethod {
    Exact,
    Brute,
    Mc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// P_M(c, q^b) by series, enumeration or sampling.
    Proportion {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, value_enum, default_value_t = ProportionMethod::Exact)]
        method: ProportionMethod,
        #[arg(long, default_value_t = 4096)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rigorous interval for the limit as c grows, with the window check.
    Limit {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 64)]
        bits: u64,
        #[arg(long)]
        with_constants: bool,
    },
    /// Exact proportions for c = 1..=cmax against the closed-form rows.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        cmax: u32,
    },
    /// Cross-check suites; prints PASS/FAIL per identity.
    Verify {
        #[command(subcommand)]
        suite: verify::Suite,
    },
}

pub struct Context {
    format: Format,
    guard_override: bool,
    cache: IrreducibleCache,
}

impl Context {
    fn brute_guard(&self) -> u128 {
        if self.guard_override {
            BRUTE_GUARD_RAISED
        } else {
            BRUTE_GUARD
        }
    }
}

pub enum Failure {
    Verify,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    if let Some(n) = g.parallelism {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let dir = std::env::var_os("PCC_CACHE_DIR").map(PathBuf::from).or(g.cache_dir.clone());
    let ctx = Context {
        format: g.format,
        guard_override: g.guard_override,
        cache: IrreducibleCache::new(if g.no_cache { None } else { dir }),
    };
    let result = dump(&g.dump_series, &cli.command).and_then(|_| run(&ctx, cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard() { 3 } else { 2 })
        }
    }
}

fn dump(names: &[String], cmd: &Command) -> Result<(), Failure> {
    if names.is_empty() {
        return Ok(());
    }
    let (q, b, order) = match cmd {
        Command::Proportion { q, b, c, .. } => (*q, *b, *c as usize),
        Command::Table { q, b, cmax } => (*q, *b, *cmax as usize),
        Command::Limit { q, b, .. } => (*q, *b, 10),
        Command::Verify { .. } => {
            return Err(Error::InvalidArgument("--dump-series applies to proportion, limit and table".into()).into())
        }
    };
    let params = SeriesParams::new(q, b)?;
    let dumps = names
        .iter()
        .map(|n| Ok(SeriesDump::new(n, &params, &named_series(n, &params, order)?)))
        .collect::<primcyc::Result<Vec<_>>>()?;
    eprintln!("{}", serde_json::to_string(&dumps).expect("serializable"));
    Ok(())
}

fn run(ctx: &Context, cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Proportion { q, b, c, method, samples, seed } => {
            let report = match method {
                ProportionMethod::Exact => CensusReport::series(q, b, c)?,
                ProportionMethod::Brute => {
                    let spec = primcyc::algebra::FieldSpec::new(q, b)?;
                    let irr = ctx.cache.irreducibles(spec.base(), b)?;
                    let r = census::proportion_bruteforce_with(q, b, c, ctx.brute_guard(), irr)?;
                    CensusReport::new(q, b, c, Method::BruteForce, r.proportion())
                }
                ProportionMethod::Mc => CensusReport::monte_carlo(q, b, c, samples, seed)?,
            };
            print_report(ctx.format, &report);
        }
        Command::Limit { q, b, bits, with_constants } => {
            let report = CensusReport::limit(q, b, bits, with_constants)?;
            print_report(ctx.format, &report);
        }
        Command::Table { q, b, cmax } => {
            let rows = census::table_generate(q, b, cmax)?;
            match ctx.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
                Format::Csv => {
                    println!("c,method,proportion,table1_match");
                    for r in &rows {
                        let m = r.table1_match.map_or("", |m| if m { "yes" } else { "no" });
                        println!("{},{},{},{}", r.report.c.unwrap_or(0), method_name(r.report.method), csv_decimal(&r.report.proportion), m);
                    }
                }
                Format::Text => {
                    println!("{:>4}  {:<40}  {:<22}  table1", "c", "proportion", "decimal");
                    for r in &rows {
                        let m = match r.table1_match {
                            Some(true) => "yes".to_string(),
                            Some(false) => format!("no ({})", r.note.clone().unwrap_or_default()),
                            None => "-".to_string(),
                        };
                        println!(
                            "{:>4}  {:<40}  {:<22}  {}",
                            r.report.c.unwrap_or(0),
                            to_fraction_string(&r.report.proportion),
                            to_decimal(&r.report.proportion, 20),
                            m
                        );
                    }
                }
            }
        }
        Command::Verify { suite } => return verify::run(ctx, suite),
    }
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Series => "SERIES",
        Method::BruteForce => "BRUTE_FORCE",
        Method::MonteCarlo => "MONTE_CARLO",
        Method::Limit => "LIMIT",
    }
}

fn csv_decimal(r: &primcyc::rational::Rational) -> String {
    to_decimal(r, 60)
}

fn print_report(format: Format, r: &CensusReport) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("serializable")),
        Format::Csv => {
            println!("c,method,proportion");
            let c = r.c.map_or("inf".to_string(), |c| c.to_string());
            println!("{c},{},{}", method_name(r.method), csv_decimal(&r.proportion));
        }
        Format::Text => match r.method {
            Method::Limit => {
                let iv = r.interval.as_ref().expect("limit reports carry an interval");
                println!("{iv}");
                if let Some(w) = &r.window {
                    let verdict = if w.holds() { "PASS" } else { "FAIL" };
                    println!("window: {verdict} (difference from 1-1/e in {})", w.difference);
                }
                if let Some(k) = &r.constants {
                    println!("a_L = {}", k.a_l);
                    println!("a_J = {}", to_decimal(&k.a_j, 10));
                    println!("M = {}", to_decimal(&k.m_threshold, 10));
                    println!("k = {}", to_decimal(&k.k, 10));
                }
            }
            Method::MonteCarlo => println!(
                "{} (stderr {}, samples {}, seed {})",
                to_fraction_string(&r.proportion),
                to_decimal(r.stderr.as_ref().expect("sampling reports carry stderr"), 6),
                r.samples.unwrap_or(0),
                r.seed.unwrap_or(0)
            ),
            _ => println!("{}", to_fraction_string(&r.proportion)),
        },
    }
}
