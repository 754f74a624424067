//! The `pattern-mobius` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::inflation::{decompose, InflationSpec};
use crate::perm::Perm;
use crate::poset::MobiusCache;
use crate::szdetect::{build_registry, classify, Classification};
use crate::zstats::{self, CensusRow, CONJECTURED_Z_CEILING};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_CACHE_CORRUPT: i32 = 4;

/// Lengths from which Möbius-table work needs `--yes-large`.
pub const LARGE_TABLE_N: usize = 10;
/// Lengths from which the simple-permutation census needs `--yes-large`.
pub const LARGE_SIMPLES_N: usize = 12;
/// Longest length any Möbius table is built for.
pub const MAX_TABLE_N: usize = 13;
const MAX_SIMPLES_N: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "pattern-mobius", version, about = "Möbius function of the permutation pattern poset")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Principal Möbius cache file, read at start and rewritten at exit.
    #[arg(long, global = true, env = "MOBIUS_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Allow censuses at lengths that take minutes or more.
    #[arg(long, global = true)]
    pub yes_large: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print μ(σ, π); σ defaults to 1.
    Mu {
        #[arg(value_parser = parse_perm)]
        perm: Perm,
        #[arg(long, value_parser = parse_perm)]
        from: Option<Perm>,
    },
    /// Place a permutation in the strongly-zero taxonomy.
    Classify {
        #[arg(value_parser = parse_perm)]
        perm: Perm,
    },
    /// Reproduce one of the census tables.
    Census {
        table: CensusTable,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Number of the last series coefficient (bound table only).
        #[arg(long, default_value_t = 9)]
        terms: usize,
    },
    /// Substitution decomposition.
    Decompose {
        #[arg(value_parser = parse_perm)]
        perm: Perm,
    },
    /// Evaluate an inflation such as `3624715[1,12,1,1,21,1,1]`.
    Inflate {
        #[arg(value_parser = parse_spec)]
        spec: InflationSpec,
    },
    /// Export the registered nice permutations with their cores.
    Registry {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusTable {
    /// Proportion of permutations with μ(1, π) = 0.
    Z,
    /// Non-opposing multi-adjacency permutations split by μ.
    Nonopp,
    /// Obviously zero and new strongly-zero permutations.
    Szclass,
    /// Simple permutations against n!/e².
    Simples,
    /// The lower-bound series.
    Bound,
}

fn parse_perm(s: &str) -> Result<Perm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_spec(s: &str) -> Result<InflationSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CacheCorrupt { .. } => EXIT_CACHE_CORRUPT,
            Error::MalformedPermutation { .. } | Error::MalformedInflation { .. } | Error::Domain(_) => {
                EXIT_USAGE
            }
            Error::Overflow | Error::Io(_) => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = &cli.config;
    if cfg.threads > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    check_cost(cfg, &cli.command)?;
    let cache = match &cfg.cache {
        Some(path) if path.exists() => MobiusCache::load(path)?,
        _ => MobiusCache::new(),
    };
    let uses_cache = match &cli.command {
        Command::Mu { .. } | Command::Classify { .. } | Command::Registry { .. } => true,
        Command::Census { table, .. } => {
            matches!(table, CensusTable::Z | CensusTable::Nonopp | CensusTable::Szclass)
        }
        Command::Decompose { .. } | Command::Inflate { .. } => false,
    };
    match &cli.command {
        Command::Mu { perm, from } => cmd_mu(cfg.format, perm, from.as_ref(), &cache, out)?,
        Command::Classify { perm } => cmd_classify(cfg.format, perm, &cache, out)?,
        Command::Census { table, max_n, terms } => {
            cmd_census(cfg.format, *table, *max_n, *terms, &cache, out)?
        }
        Command::Decompose { perm } => cmd_decompose(cfg.format, perm, out)?,
        Command::Inflate { spec } => cmd_inflate(cfg.format, spec, out)?,
        Command::Registry { max_n } => cmd_registry(cfg.format, *max_n, &cache, out)?,
    }
    if let (Some(path), true) = (&cfg.cache, uses_cache) {
        cache.save(path)?;
    }
    Ok(())
}

/// Refuses expensive runs that lack `--yes-large`.
fn check_cost(cfg: &RunConfig, command: &Command) -> Result<(), Failure> {
    let (table_n, simples_n) = match command {
        Command::Census { table, max_n, .. } => match table {
            CensusTable::Z | CensusTable::Nonopp | CensusTable::Szclass => (Some(*max_n), None),
            CensusTable::Simples => (None, Some(*max_n)),
            CensusTable::Bound => (None, None),
        },
        Command::Registry { max_n } => (Some(*max_n), None),
        Command::Classify { perm } => (Some(perm.len().saturating_sub(1)), None),
        _ => (None, None),
    };
    if let Some(n) = table_n {
        if n > MAX_TABLE_N {
            return Err(Error::domain(format!("lengths above {MAX_TABLE_N} are not supported, got {n}")).into());
        }
        if n >= LARGE_TABLE_N && !cfg.yes_large {
            return Err(refusal(format!(
                "a full Möbius table to length {n} (about {} of computation and {} of memory)",
                human_seconds(zstats::estimated_table_seconds(n)),
                human_bytes(table_bytes(n)),
            )));
        }
    }
    if let Some(n) = simples_n {
        if n > MAX_SIMPLES_N {
            return Err(Error::domain(format!("lengths above {MAX_SIMPLES_N} are not supported, got {n}")).into());
        }
        if n >= LARGE_SIMPLES_N && !cfg.yes_large {
            let perms = zstats::factorial(n);
            return Err(refusal(format!("testing all {perms} permutations of length {n} for simplicity")));
        }
    }
    Ok(())
}

fn refusal(what: String) -> Failure {
    Failure {
        code: EXIT_REFUSED,
        message: format!("refusing to run {what}; pass --yes-large to proceed"),
    }
}

fn table_bytes(n: usize) -> f64 {
    (1..=n).map(|k| zstats::factorial(k) as f64 * 8.0).sum()
}

fn human_seconds(s: f64) -> String {
    if s < 120.0 {
        format!("{s:.0} s")
    } else if s < 7200.0 {
        format!("{:.0} min", s / 60.0)
    } else {
        format!("{:.1} h", s / 3600.0)
    }
}

fn human_bytes(b: f64) -> String {
    if b < 1e9 {
        format!("{:.0} MB", b / 1e6)
    } else {
        format!("{:.1} GB", b / 1e9)
    }
}

fn cmd_mu(
    format: Format,
    perm: &Perm,
    from: Option<&Perm>,
    cache: &MobiusCache,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let sigma = from.cloned().unwrap_or_else(|| Perm::identity(1));
    let mu = cache.mobius(&sigma, perm)?;
    #[derive(Serialize)]
    struct Row {
        sigma: String,
        pi: String,
        mu: i64,
    }
    let row = Row {
        sigma: sigma.to_string(),
        pi: perm.to_string(),
        mu,
    };
    match format {
        Format::Text => writeln!(out, "{mu}")?,
        _ => emit(format, &[row], &[], out)?,
    }
    Ok(())
}

fn cmd_classify(format: Format, perm: &Perm, cache: &MobiusCache, out: &mut dyn Write) -> Result<(), Failure> {
    let reg_len = perm.len().saturating_sub(1).max(3);
    let registry = build_registry(reg_len, cache)?;
    let class = classify(perm, &registry, cache)?;
    let mu = match class {
        Classification::NonZero { mu } => mu,
        _ => 0,
    };
    let (kind, witness) = match &class {
        Classification::OpposingAdjacencies { up, down } => {
            ("ObviouslyZero", format!("opposing adjacencies up@{up} down@{down}"))
        }
        Classification::ObviouslyZero { start, pattern, core } => (
            "ObviouslyZero",
            format!("interval {pattern} at position {start} (nice, core {core})"),
        ),
        Classification::New { core } => ("New", format!("core {core}")),
        Classification::ZeroNotCertified => ("ZeroNotCertified", String::new()),
        Classification::NonZero { .. } => ("NonZero", String::new()),
    };
    #[derive(Serialize)]
    struct Row<'a> {
        permutation: String,
        mu: i64,
        class: &'a str,
        witness: String,
    }
    match format {
        Format::Text => writeln!(out, "{class}")?,
        _ => emit(
            format,
            &[Row {
                permutation: perm.to_string(),
                mu,
                class: kind,
                witness,
            }],
            &[],
            out,
        )?,
    }
    Ok(())
}

fn cmd_census(
    format: Format,
    table: CensusTable,
    max_n: usize,
    terms: usize,
    cache: &MobiusCache,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match table {
        CensusTable::Z => {
            let rows = zstats::z_table(max_n, cache)?;
            let ceiling: f64 = CONJECTURED_Z_CEILING.parse().expect("constant");
            let holds = rows
                .iter()
                .all(|r| r.mu_zero.unwrap_or(0) as f64 <= ceiling * r.total as f64);
            let note = format!(
                "Z(n) <= {CONJECTURED_Z_CEILING} for every length shown: {}",
                if holds { "yes" } else { "no" }
            );
            emit(format, &z_rows(&rows), &[note], out)?;
        }
        CensusTable::Nonopp => {
            let rows = zstats::nonopp_table(max_n, cache)?;
            emit(format, &nonopp_rows(&rows), &[], out)?;
        }
        CensusTable::Szclass => {
            if max_n < 3 {
                return Err(Error::domain("max-n must be at least 3").into());
            }
            let registry = build_registry(max_n, cache)?;
            let rows = zstats::sz_class_table(max_n, &registry)?;
            emit(format, &szclass_rows(&rows), &[], out)?;
        }
        CensusTable::Simples => {
            if max_n == 0 {
                return Err(Error::domain("max-n must be at least 1").into());
            }
            let counts = zstats::simple_census(max_n);
            let rows: Vec<SimplesRow> = (1..=max_n)
                .map(|n| SimplesRow {
                    n,
                    s: counts[n],
                    estimate: zstats::plain_estimate_display(n),
                })
                .collect();
            emit(format, &rows, &[], out)?;
        }
        CensusTable::Bound => {
            let bound = zstats::asymptotic_lower_bound(terms)?;
            let series = zstats::bound_series(terms, &[])?;
            let rows: Vec<BoundRow> = series
                .terms
                .iter()
                .map(|(&k, c)| BoundRow {
                    k,
                    coefficient: c.to_string(),
                    partial: series.partial_sums[&k].clone(),
                })
                .collect();
            let note = format!("lower bound with {} coefficients: {}", terms - 1, bound.decimal);
            emit(format, &rows, &[note], out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ZRow {
    #[serde(rename = "Length")]
    n: usize,
    #[serde(rename = "Z(n)")]
    z: String,
}

fn z_rows(rows: &[CensusRow]) -> Vec<ZRow> {
    rows.iter()
        .map(|r| ZRow {
            n: r.n,
            z: r.z_display().unwrap_or_default(),
        })
        .collect()
}

#[derive(Serialize)]
struct NonoppRow {
    #[serde(rename = "Length")]
    n: usize,
    #[serde(rename = "=0")]
    zero: u64,
    #[serde(rename = "≠0")]
    nonzero: u64,
}

fn nonopp_rows(rows: &[CensusRow]) -> Vec<NonoppRow> {
    rows.iter()
        .map(|r| NonoppRow {
            n: r.n,
            zero: r.nonopp_zero.unwrap_or(0),
            nonzero: r.nonopp_nonzero.unwrap_or(0),
        })
        .collect()
}

#[derive(Serialize)]
struct SzclassRow {
    #[serde(rename = "Length")]
    n: usize,
    #[serde(rename = "Obviously zero")]
    obviously: u64,
    #[serde(rename = "New")]
    new: u64,
    #[serde(rename = "Obviously zero %")]
    obviously_pct: String,
    #[serde(rename = "New %")]
    new_pct: String,
}

fn szclass_rows(rows: &[CensusRow]) -> Vec<SzclassRow> {
    rows.iter()
        .map(|r| {
            let (obviously_pct, new_pct) = r.sz_percentages().unwrap_or_default();
            SzclassRow {
                n: r.n,
                obviously: r.obviously_zero.unwrap_or(0),
                new: r.new.unwrap_or(0),
                obviously_pct,
                new_pct,
            }
        })
        .collect()
}

#[derive(Serialize)]
struct SimplesRow {
    n: usize,
    #[serde(rename = "S(n)")]
    s: u64,
    #[serde(rename = "n!/e^2")]
    estimate: String,
}

#[derive(Serialize)]
struct BoundRow {
    k: usize,
    #[serde(rename = "(2^k-2)/k!")]
    coefficient: String,
    #[serde(rename = "partial sum / e^2")]
    partial: String,
}

fn cmd_decompose(format: Format, perm: &Perm, out: &mut dyn Write) -> Result<(), Failure> {
    let d = decompose(perm)?;
    #[derive(Serialize)]
    struct Row {
        permutation: String,
        skeleton: String,
        parts: Vec<String>,
    }
    match format {
        Format::Text => writeln!(out, "{d}")?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["permutation", "skeleton", "parts"])?;
            let parts: Vec<String> = d.parts.iter().map(Perm::to_string).collect();
            w.write_record([perm.to_string(), d.skeleton.to_string(), parts.join(" ")])?;
            out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
        }
        Format::Json => emit(
            format,
            &[Row {
                permutation: perm.to_string(),
                skeleton: d.skeleton.to_string(),
                parts: d.parts.iter().map(Perm::to_string).collect(),
            }],
            &[],
            out,
        )?,
    }
    Ok(())
}

fn cmd_inflate(format: Format, spec: &InflationSpec, out: &mut dyn Write) -> Result<(), Failure> {
    let pi = spec.inflate();
    #[derive(Serialize)]
    struct Row {
        inflation: String,
        permutation: String,
    }
    match format {
        Format::Text => writeln!(out, "{pi}")?,
        _ => emit(
            format,
            &[Row {
                inflation: spec.to_string(),
                permutation: pi.to_string(),
            }],
            &[],
            out,
        )?,
    }
    Ok(())
}

fn cmd_registry(format: Format, max_n: usize, cache: &MobiusCache, out: &mut dyn Write) -> Result<(), Failure> {
    if max_n < 3 {
        return Err(Error::domain("max-n must be at least 3").into());
    }
    let registry = build_registry(max_n, cache)?;
    #[derive(Serialize)]
    struct Row {
        #[serde(rename = "Length")]
        n: usize,
        #[serde(rename = "Permutation")]
        phi: String,
        #[serde(rename = "Core")]
        core: String,
    }
    match format {
        Format::Text => out.write_all(registry.export().as_bytes())?,
        _ => {
            let rows: Vec<Row> = registry
                .export()
                .lines()
                .map(|line| {
                    let mut f = line.split('\t');
                    let n = f.next().and_then(|s| s.parse().ok()).unwrap_or(0);
                    Row {
                        n,
                        phi: f.next().unwrap_or_default().to_string(),
                        core: f.next().unwrap_or_default().to_string(),
                    }
                })
                .collect();
            emit(format, &rows, &[], out)?;
        }
    }
    Ok(())
}

/// Writes `rows` as an aligned text table (followed by `notes`), as CSV
/// with a header row, or as a JSON array of objects.
fn emit<R: Serialize>(format: Format, rows: &[R], notes: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            let data = w.into_inner().map_err(|e| e.into_error())?;
            let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(&data[..]);
            let cells: Vec<Vec<String>> = reader
                .records()
                .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
                .collect::<Result<_, _>>()?;
            write_aligned(&cells, out)?;
            for note in notes {
                writeln!(out, "{note}")?;
            }
        }
    }
    Ok(())
}

fn write_aligned(cells: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|row| row.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  "))?;
    }
    Ok(())
}
