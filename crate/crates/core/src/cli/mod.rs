//! Command-line front end.

mod cache;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cache::DiskCache;

use crate::algebra::AlgebraSpec;
use crate::complex::{Cochain, Complex, Module, DEFAULT_MAX_CELL};
use crate::engine::{
    checks, compute_cell_with, compute_table, cup_product, equal_mod_coboundaries, is_coboundary, verify_cocycle,
    CellOptions, CellStatus, CellStore, Comparison, TableOptions,
};
use crate::error::Error;
use crate::rational::format_q;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "HAMCOH_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "hamcoh",
    version,
    about = "Cohomology of Lie superalgebras of Hamiltonian vector fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of H^k_g over a grid of cells.
    Table(TableArgs),
    /// Representative cocycles of the cells in a grid.
    Cocycles(TableArgs),
    /// Cup product of two serialized cochains.
    Cup(PairArgs),
    /// Compare two serialized cocycles modulo coboundaries.
    Compare(PairArgs),
    /// Run the invariant suites.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Algebra, e.g. "SH(0|4)", "Po(2|0)", "HHat(2|0)".
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value = "trivial")]
    pub module: String,
    /// Degree range `a..b` (inclusive) or a single degree.
    #[arg(long, allow_hyphen_values = true)]
    pub degrees: String,
    /// Grade range `a..b` (inclusive) or a single grade.
    #[arg(long, allow_hyphen_values = true)]
    pub grades: String,
    /// Cell cache directory; falls back to $HAMCOH_CACHE_DIR.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Largest cell basis to build; 0 disables the cap.
    #[arg(long, default_value_t = DEFAULT_MAX_CELL)]
    pub max_cell: usize,
    /// Write the Z and b matrices of every cell into this directory.
    #[arg(long)]
    pub dump_matrices: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Expected algebra; both files must match it.
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_CELL)]
    pub max_cell: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Restrict the cell suites to one algebra instead of the reference set.
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0..4")]
    pub degrees: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-3..3")]
    pub grades: String,
    #[command(flatten)]
    pub common: Common,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            kind,
            message: message.into(),
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const GENERIC: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const RESOURCE_CAP: i32 = 3;
    pub const CONSISTENCY: i32 = 4;
    pub const IO: i32 = 5;
    pub const INPUT: i32 = 6;
    pub const CHECK_FAILED: i32 = 7;
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::SpecParse { .. } | Error::ElementParse { .. } => (exit::PARSE, "parse"),
            Error::ResourceCap { .. } => (exit::RESOURCE_CAP, "resource-cap"),
            Error::Consistency(_) | Error::Dimension(_) => (exit::CONSISTENCY, "consistency"),
            Error::Io(_) => (exit::IO, "io"),
            Error::Deserialize(_) | Error::Json(_) => (exit::INPUT, "input"),
            Error::NotInBasis(_) | Error::OutsideWindow { .. } | Error::Precondition(_) => (exit::INPUT, "input"),
            Error::Unsupported(_) => (exit::GENERIC, "unsupported"),
        };
        let mut message = e.to_string();
        if matches!(e, Error::ResourceCap { .. }) {
            message.push_str("; narrow the degree/grade range or raise --max-cell");
        }
        CliError::new(code, kind, message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // one line, greppable
        write!(f, "error[{}]: {}", self.kind, self.message.replace('\n', " "))
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(text: &str, what: &str) -> CliResult<RangeInclusive<T>> {
    let bad = || {
        CliError::new(
            exit::PARSE,
            "parse",
            format!("invalid {what} range `{text}`, expected `a..b`"),
        )
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v: T = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::new(
            exit::PARSE,
            "parse",
            format!("empty {what} range `{text}`"),
        ));
    }
    Ok(lo..=hi)
}

/// Entry point of the binary: parses `std::env::args`, runs, reports any
/// error on stderr and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout();
    match run(cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("{e}");
            e.code
        }
    }
}

/// Runs a parsed command line, writing results to `stdout`.
pub fn run(cli: Cli, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let jobs = match &cli.command {
        Command::Table(a) | Command::Cocycles(a) => a.common.jobs,
        Command::Cup(a) | Command::Compare(a) => a.common.jobs,
        Command::Check(a) => a.common.jobs,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::new(exit::PARSE, "parse", "--jobs must be positive"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::new(exit::GENERIC, "runtime", e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Table(a) => cmd_table(&a, stdout),
        Command::Cocycles(a) => cmd_cocycles(&a, stdout),
        Command::Cup(a) => cmd_cup(&a, stdout),
        Command::Compare(a) => cmd_compare(&a, stdout),
        Command::Check(a) => cmd_check(&a, stdout),
    })
}

fn emit(common: &Common, text: &str, stdout: &mut (dyn Write + Send)) -> CliResult {
    match &common.out {
        Some(path) => write_atomic(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_atomic(path: &Path, text: &str) -> CliResult {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::from(e.error))?;
    Ok(())
}

struct Grid {
    cx: Complex,
    degrees: RangeInclusive<usize>,
    grades: RangeInclusive<i64>,
}

fn grid(a: &TableArgs) -> CliResult<Grid> {
    let spec: AlgebraSpec = a.algebra.parse()?;
    let module: Module = a
        .module
        .parse()
        .map_err(|e: Error| CliError::new(exit::PARSE, "parse", e.to_string()))?;
    let degrees = parse_range::<usize>(&a.degrees, "degree")?;
    let grades = parse_range::<i64>(&a.grades, "grade")?;
    let cap = (a.max_cell > 0).then_some(a.max_cell);
    let cx = Complex::new(spec, module, degrees.end() + 1, *grades.end()).with_cap(cap);
    Ok(Grid { cx, degrees, grades })
}

fn cmd_table(a: &TableArgs, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let g = grid(a)?;
    let cache_dir = a
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    // dumps are a side effect of computing, so they bypass the cache
    let cache = match (&cache_dir, &a.dump_matrices) {
        (Some(dir), None) => Some(DiskCache::new(dir)?),
        _ => None,
    };
    let options = TableOptions {
        cell: CellOptions {
            dump_matrices: a.dump_matrices.clone(),
        },
        store: cache.as_ref().map(|c| c as &dyn CellStore),
    };
    let report = compute_table(&g.cx, g.degrees, g.grades, &options)?;
    let text = match a.common.format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json(),
    };
    emit(&a.common, &text, stdout)?;
    let capped = report
        .cells
        .iter()
        .filter(|c| c.status == CellStatus::CapExceeded)
        .count();
    if capped > 0 {
        return Err(CliError::new(
            exit::RESOURCE_CAP,
            "resource-cap",
            format!(
                "{capped} cells exceeded --max-cell {}; narrow the range or raise the cap",
                a.max_cell
            ),
        ));
    }
    Ok(exit::OK)
}

/// Prints representatives; with `--out DIR`, also writes one JSON file per
/// representative, `cocycle_k{k}_g{g}_{i}.json`, for `cup` and `compare`.
fn cmd_cocycles(a: &TableArgs, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let g = grid(a)?;
    let options = CellOptions {
        dump_matrices: a.dump_matrices.clone(),
    };
    let mut text = String::new();
    let mut records = Vec::new();
    for k in g.degrees.clone() {
        for grade in g.grades.clone() {
            let cell = compute_cell_with(&g.cx, k, grade, &options)?;
            text.push_str(&format!("H^{k}_{grade}: dim {}\n", cell.dim_h));
            if cell.representatives.is_empty() {
                text.push_str("  0\n");
            }
            for (i, r) in cell.representatives.iter().enumerate() {
                text.push_str(&format!("  [{}] {}\n", i + 1, r.pretty()));
                if let Some(dir) = &a.common.out {
                    write_atomic(&dir.join(format!("cocycle_k{k}_g{grade}_{}.json", i + 1)), &r.to_json())?;
                }
                records.push(r.to_record());
            }
        }
    }
    let out = match a.common.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&records).map_err(Error::from)? + "\n",
    };
    stdout.write_all(out.as_bytes())?;
    Ok(exit::OK)
}

fn load_pair(a: &PairArgs) -> CliResult<(Cochain, Cochain)> {
    let read = |p: &Path| -> CliResult<Cochain> {
        let text =
            std::fs::read_to_string(p).map_err(|e| CliError::new(exit::IO, "io", format!("{}: {e}", p.display())))?;
        Cochain::from_json(&text).map_err(|e| {
            let mut err = CliError::from(e);
            err.code = exit::INPUT;
            err.kind = "input";
            err.message = format!("{}: {}", p.display(), err.message);
            err
        })
    };
    let (c1, c2) = (read(&a.first)?, read(&a.second)?);
    if c1.spec() != c2.spec() {
        return Err(CliError::new(
            exit::INPUT,
            "input",
            format!("cochains over different algebras: {} vs {}", c1.spec(), c2.spec()),
        ));
    }
    if let Some(expected) = &a.algebra {
        let expected: AlgebraSpec = expected.parse()?;
        if &expected != c1.spec() {
            return Err(CliError::new(
                exit::INPUT,
                "input",
                format!("files hold {} cochains, --algebra says {expected}", c1.spec()),
            ));
        }
    }
    Ok((c1, c2))
}

fn complex_for(c: &Cochain, max_cell: usize) -> Complex {
    let cap = (max_cell > 0).then_some(max_cell);
    Complex::new(*c.spec(), c.module(), c.degree() + 1, c.weight()).with_cap(cap)
}

fn cmd_cup(a: &PairArgs, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let (c1, c2) = load_pair(a)?;
    let product = cup_product(&c1, &c2)?;
    let cx = complex_for(&product, a.max_cell);
    let cocycle = verify_cocycle(&cx, &product)?;
    let coboundary = if cocycle {
        Some(is_coboundary(&cx, &product)?.is_some())
    } else {
        None
    };
    let verdict = match coboundary {
        None => "not a cocycle",
        Some(true) => "coboundary",
        Some(false) => "nontrivial cocycle",
    };
    let summary = match a.common.format {
        Format::Text => format!(
            "product: {}\ndegree {}, grade {}\nverdict: {verdict}\n",
            product.pretty(),
            product.degree(),
            product.weight()
        ),
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "product": product.to_record(),
                "is_cocycle": cocycle,
                "is_coboundary": coboundary,
            }))
            .map_err(Error::from)?
                + "\n"
        }
    };
    // --out receives the product itself so it can feed later commands
    if let Some(path) = &a.common.out {
        write_atomic(path, &product.to_json())?;
    }
    stdout.write_all(summary.as_bytes())?;
    Ok(exit::OK)
}

fn cmd_compare(a: &PairArgs, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let (c1, c2) = load_pair(a)?;
    let cx = complex_for(&c1, a.max_cell);
    let cmp = equal_mod_coboundaries(&cx, &c1, &c2)?;
    let (verdict, lambda) = match &cmp {
        Comparison::BothCoboundaries => ("equal: both are coboundaries", None),
        Comparison::Proportional(l) => ("equal modulo coboundaries", Some(format_q(l))),
        Comparison::Independent => ("independent", None),
    };
    let text = match a.common.format {
        Format::Text => match &lambda {
            Some(l) => format!("{verdict}, lambda = {l}\n"),
            None => format!("{verdict}\n"),
        },
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "equal": cmp.equal(),
                "lambda": lambda,
                "both_coboundaries": cmp == Comparison::BothCoboundaries,
            }))
            .map_err(Error::from)?
                + "\n"
        }
    };
    emit(&a.common, &text, stdout)?;
    Ok(exit::OK)
}

fn cmd_check(a: &CheckArgs, stdout: &mut (dyn Write + Send)) -> CliResult<i32> {
    let mut lines = String::new();
    let mut line = |o: &checks::CheckOutcome| {
        let l = format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        if a.common.out.is_none() && a.common.format == Format::Text {
            // stream progress; suites can take minutes
            let _ = stdout.write_all(l.as_bytes());
            let _ = stdout.flush();
        }
        lines.push_str(&l);
    };
    let outcomes = match &a.algebra {
        None => checks::standard_suite(&mut line)?,
        Some(spec) => custom_suite(spec, a, &mut line)?,
    };
    match a.common.format {
        Format::Text => {
            if a.common.out.is_some() {
                emit(&a.common, &lines, stdout)?;
            }
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&outcomes).map_err(Error::from)? + "\n";
            emit(&a.common, &json, stdout)?;
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::new(
            exit::CHECK_FAILED,
            "check",
            format!("{failed} of {} checks failed", outcomes.len()),
        ));
    }
    Ok(exit::OK)
}

fn custom_suite(
    spec: &str,
    a: &CheckArgs,
    report: &mut dyn FnMut(&checks::CheckOutcome),
) -> CliResult<Vec<checks::CheckOutcome>> {
    let spec: AlgebraSpec = spec.parse()?;
    let degrees = parse_range::<usize>(&a.degrees, "degree")?;
    let grades = parse_range::<i64>(&a.grades, "grade")?;
    let mut out = Vec::new();
    let algebra = if spec.is_finite() {
        checks::skew_and_jacobi_exhaustive(&spec)?
    } else {
        checks::skew_and_jacobi_random(&spec, (spec.min_weight(), 3), 1000, 0x5eed)?
    };
    out.extend(algebra);
    let cx = Complex::new(spec, Module::Trivial, degrees.end() + 1, *grades.end());
    out.push(checks::d_squared(&cx, degrees.clone(), grades.clone())?);
    let sw = checks::sweep(&cx, 0..=*degrees.end(), grades.clone())?;
    out.push(checks::dimension_formula(&sw));
    out.push(checks::euler_characteristic(&sw, *degrees.end(), grades.clone()));
    if spec.family().has_grading_element() {
        let v = checks::grading_element_vanishing_check(&cx, *degrees.end(), grades.clone())?;
        out.push(checks::CheckOutcome {
            name: format!("grading-element vanishing {spec}"),
            passed: v.passed(),
            detail: format!("{} off-grade cells, violations {:?}", v.cells.len(), v.violations),
        });
    }
    for o in &out {
        report(o);
    }
    Ok(out)
}
