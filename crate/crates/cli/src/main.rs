use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hzlag_cli::cache::Cache;
use hzlag_cli::suites::{self, Suite, SuiteBounds};
use hzlag_cli::table::{Bounds, Ensemble, Table, BOUND_LIMIT};
use hzlag_core::exact::{parse_rational, Var};
use hzlag_core::recursion::gauss_hz_table;
use hzlag_core::residue::{fab, fab_generalized};
use hzlag_core::spectral::{resolvent_from_row, s_basis, s_bridge_closed, vk_series};
use hzlag_core::wick::{complex_wishart_moment, connected_moments, gue_moment, Dim, TracePattern, GUE_LIMIT};
use hzlag_core::{Error, Report, TruncSeries};

#[derive(Parser)]
#[command(name = "hzlag", version, about = "Exact Laguerre and Gaussian ensemble moments, recursions and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    /// ((x-4)/x)^{k+1/2}
    Vk,
    /// s_{k,beta}
    S,
    /// x (x^2 - 4x)^{-(2k+3)/2}
    Bridge,
    /// genus-g Laguerre resolvent from the v_k table
    Resolvent,
    /// genus-g Gaussian resolvent
    Gauss,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a coefficient table
    Gen {
        #[arg(value_enum)]
        ensemble: Ensemble,
        #[arg(long, default_value_t = 3)]
        gmax: usize,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        rmax2: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Wick-enumerate a multi-trace moment, symbolic in N
    Oracle {
        /// Trace exponents, comma separated
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "N")]
        rows: String,
        #[arg(long, default_value = "N")]
        cols: String,
        #[arg(long)]
        connected: bool,
        /// Gaussian ensemble moment of tr H^m (single exponent)
        #[arg(long)]
        gaussian: bool,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        max_ab: u32,
        #[arg(long = "nmax", alias = "max-n", default_value_t = 10)]
        max_n: u32,
        #[arg(long, default_value_t = 6)]
        mmax: usize,
        #[arg(long, default_value_t = 6)]
        gmax: usize,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Print a series in 1/x as JSON
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        beta: u8,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Print f_{A,B}(u), or the rectangular mean for N and k
    EvalFab {
        #[arg(long, required_unless_present = "n")]
        a: Option<u32>,
        #[arg(long, required_unless_present = "n")]
        b: Option<u32>,
        #[arg(long, conflicts_with_all = ["a", "b"])]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        k: Option<u32>,
        /// Evaluate at this rational point
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::DegreeOverLimit { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The table for these bounds, from the cache when present.
fn cached_table(cache: &Cache, ensemble: Ensemble, bounds: Bounds) -> Result<Table, Failure> {
    let bounds = ensemble.relevant(bounds);
    let key = vec![
        "gen".to_string(),
        ensemble.name().to_string(),
        format!("gmax={}", bounds.gmax),
        format!("nmax={}", bounds.nmax),
        format!("rmax2={}", bounds.rmax2),
    ];
    if let Some(text) = cache.load(&key) {
        return Table::from_json(&text).map_err(|e| Failure::Internal(format!("unreadable cache entry: {e}")));
    }
    let table = Table::generate(ensemble, bounds)?;
    if let Err(e) = cache.store(&key, &table.to_json()) {
        eprintln!("warning: cache write failed: {e}");
    }
    Ok(table)
}

fn series_json(s: &TruncSeries, order: usize) -> String {
    let items: Vec<_> =
        (0..=order as i64).map(|e| json!({ "exponent": -e, "value": s.coeff(e).to_string() })).collect();
    let mut text = serde_json::to_string_pretty(&items).expect("series serializes");
    text.push('\n');
    text
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { ensemble, gmax, nmax, rmax2, format, out, no_cache } => {
            if gmax.max(nmax).max(rmax2) > BOUND_LIMIT {
                return Err(Failure::Usage(format!("bounds are limited to {BOUND_LIMIT}")));
            }
            if ensemble == Ensemble::Gauss && gmax == 0 {
                return Err(Failure::Usage("gen gauss needs --gmax >= 1".into()));
            }
            let cache = if no_cache { Cache::disabled() } else { Cache::from_env() };
            let table = cached_table(&cache, ensemble, Bounds { gmax, nmax, rmax2 })?;
            let text = match format {
                Format::Json => table.to_json(),
                Format::Csv => table.to_csv(),
            };
            emit(&out, &text)
        }
        Command::Oracle { mu, rows, cols, connected, gaussian } => {
            let pattern: TracePattern = mu.parse()?;
            let p = if gaussian {
                if pattern.len() != 1 {
                    return Err(Failure::Usage("--gaussian takes a single exponent".into()));
                }
                gue_moment(pattern.degree(), GUE_LIMIT)?
            } else {
                let (r, c): (Dim, Dim) = (rows.parse()?, cols.parse()?);
                let limit = hzlag_core::wick::WISHART_LIMIT;
                if connected {
                    connected_moments(&pattern, r, c, limit)?
                } else {
                    complex_wishart_moment(&pattern, r, c, limit)?
                }
            };
            println!("{p}");
            Ok(())
        }
        Command::Verify { suite, max_ab, max_n, mmax, gmax, out, no_cache } => {
            let b = SuiteBounds { max_ab, max_n, mmax, gmax };
            let cache = if no_cache { Cache::disabled() } else { Cache::from_env() };
            let start = Instant::now();
            let mut report = Report::new();
            let wants = |s: Suite| suite == s || suite == Suite::All;
            if wants(Suite::Identities) {
                report.extend(suites::identities(b));
            }
            if wants(Suite::Odes) {
                report.extend(suites::odes(b));
            }
            if wants(Suite::Crosscheck) {
                report.extend(suites::crosscheck(b));
            }
            if wants(Suite::Constraints) {
                let vk = cached_table(&cache, Ensemble::Vk, Bounds { gmax, nmax: 0, rmax2: 0 })?.to_vtable()?;
                let lag =
                    cached_table(&cache, Ensemble::Laguerre, Bounds { gmax: 8, nmax: 30, rmax2: 0 })?.to_lag_table()?;
                report.extend(suites::constraints(&vk, &lag, b));
            }
            let report = report.sorted();
            let doc = json!({
                "suite": suite.name(),
                "version": env!("CARGO_PKG_VERSION"),
                "records": report.records,
            });
            if let Some(p) = &out {
                let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
                text.push('\n');
                fs::write(p, text)?;
            }
            for r in report.failures() {
                println!("FAIL {} [{}] {}", r.id, r.anchor, r.detail);
            }
            let failed = report.failures().count();
            println!("{}: {} of {} checks passed", suite.name(), report.records.len() - failed, report.records.len());
            eprintln!("wall time {:.2} s", start.elapsed().as_secs_f64());
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Series { kind, k, beta, g, order } => {
            let s = match kind {
                SeriesKind::Vk => vk_series(k, order).series,
                SeriesKind::S | SeriesKind::Bridge if k < 0 => {
                    return Err(Failure::Usage("--k must be nonnegative for the s-basis".into()))
                }
                SeriesKind::S if beta > 1 => return Err(Failure::Usage("--beta is 0 or 1".into())),
                SeriesKind::S => s_basis(k as usize, beta, order as i64).series,
                SeriesKind::Bridge => s_bridge_closed(k as usize, order as i64),
                SeriesKind::Resolvent => {
                    let t = hzlag_core::recursion::vk_table(g)?;
                    resolvent_from_row(&t, g, order)
                }
                SeriesKind::Gauss => {
                    if g == 0 {
                        return Err(Failure::Usage("the Gaussian series needs --g >= 1".into()));
                    }
                    gauss_hz_table(g)?.resolvent_series(g, order as i64)
                }
            };
            emit(&None, &series_json(&s, order))
        }
        Command::EvalFab { a, b, n, k, at } => {
            let f = match (n, a, b) {
                (Some(n), _, _) => fab_generalized(n, k.unwrap_or(0)),
                (None, Some(a), Some(b)) => fab(a, b).value,
                _ => return Err(Failure::Usage("give --a and --b, or --n".into())),
            };
            match at {
                None => println!("{f}"),
                Some(p) => {
                    let x = parse_rational(&p)?;
                    let v = f.eval(&x).ok_or_else(|| Failure::Usage(format!("{} = {p} is a pole", Var::U)))?;
                    println!("{v}");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
