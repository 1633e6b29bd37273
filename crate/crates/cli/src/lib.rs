//! The `mq` command-line tool.
//!
//! Exit codes: 0 on success, 1 when the mathematics fails (an invalid
//! quandle, a count that changed, a regression mismatch), 2 on usage or
//! parse errors.

mod regress;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mquandle::braid::{BraidError, ColoredBraid};
use mquandle::diagram::{from_pd_code, parse_diagram, ColoredDiagram, DiagramError};
use mquandle::fuzz::{markov_fuzz, reid_fuzz, FuzzReport};
use mquandle::invariants::{braid_action, count_colorings_braid, count_colorings_diagram, InvariantError};
use mquandle::quandle::{parse_quandle_file, serialize_quandle, validate, MultiQuandle, QuandleError};
use mquandle::search::{search, write_results, Mode, SearchError, SearchSpec};
use mquandle::torus::{sample_verify, solve_toric, ToricAffineSystem};

pub use regress::{load_pd_fixture, regress, PdFixture};

#[derive(Parser, Debug)]
#[command(name = "mq", version, about = "Multi-quandle colorings of colored links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the multi-quandle axioms of a quandle file.
    Validate { file: PathBuf },
    /// Print the inverse operation tables.
    Invert { file: PathBuf },
    /// Count colorings of a closed braid, a diagram file, or a PD code.
    Count(CountArgs),
    /// Push a tuple through a colored braid.
    Action {
        #[arg(long)]
        quandle: PathBuf,
        #[arg(long)]
        braid: String,
        #[arg(long)]
        input: String,
    },
    /// Check coloring counts under random conjugation and stabilization.
    MarkovFuzz(FuzzArgs),
    /// Check coloring counts under random Reidemeister moves.
    ReidFuzz(FuzzArgs),
    /// Enumerate multi-quandles of a given order.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        k: usize,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        #[arg(long)]
        out: PathBuf,
        /// Search orders above the default cap.
        #[arg(long)]
        allow_large: bool,
    },
    /// Solve a toric affine system.
    Toric { file: PathBuf },
    /// Recompute every fixture listed in `<dir>/regress.txt`.
    Regress { dir: PathBuf },
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    quandle: PathBuf,
    #[command(flatten)]
    source: Source,
    /// 1-based component colors for `--pd`.
    #[arg(long, requires = "pd")]
    colors: Option<String>,
    #[arg(long)]
    list_solutions: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    braid: Option<String>,
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[arg(long, requires = "colors")]
    pd: Option<String>,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    quandle: PathBuf,
    #[arg(long)]
    iters: usize,
    #[arg(long)]
    seed: u64,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad usage or unparsable input; exit code 2.
    Usage(String),
    /// A mathematical check failed; exit code 1.
    Math(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Math(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) => m,
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::NotClosable { .. } => Failure::Math(e.to_string()),
            _ => Failure::Usage(format!("braid: {e}")),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::Usage(format!("diagram: {e}"))
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::TooManySolutions { .. } => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<QuandleError> for Failure {
    fn from(e: QuandleError) -> Self {
        match e {
            QuandleError::Invalid(_) | QuandleError::InverseMismatch { .. } | QuandleError::NotInvertible { .. } => {
                Failure::Math(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Text for stdout plus the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads and validates a quandle file, cross-checking any inverse blocks.
pub fn load_quandle(path: &Path) -> Result<MultiQuandle, Failure> {
    let file = parse_quandle_file(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    file.into_multi_quandle().map_err(|e| match Failure::from(e) {
        Failure::Math(m) => Failure::Math(format!("{}: {m}", path.display())),
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
    })
}

pub(crate) fn parse_colors(list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .map(|c| match c.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(Failure::Usage(format!("bad color `{c}` in `{list}`"))),
        })
        .collect()
}

fn validate_cmd(file: &Path) -> Result<Outcome, Failure> {
    let parsed = parse_quandle_file(&read(file)?).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let report = validate(&parsed.tables).map_err(|e| Failure::Usage(e.to_string()))?;
    if !report.is_valid() {
        let mut text = format!(
            "invalid: {} violation{}{}\n",
            report.violations.len(),
            if report.violations.len() == 1 { "" } else { "s" },
            if report.truncated { " (truncated)" } else { "" }
        );
        for v in &report.violations {
            writeln!(text, "{v}").unwrap();
        }
        return Ok(Outcome { text, code: 1 });
    }
    let (k, n) = (parsed.tables.len(), parsed.tables[0].order());
    parsed.into_multi_quandle()?;
    Ok(Outcome::ok(format!("valid {k}-quandle, order {n}\n")))
}

fn count_cmd(args: &CountArgs) -> Result<Outcome, Failure> {
    let mq = load_quandle(&args.quandle)?;
    let set = if let Some(spec) = &args.source.braid {
        let b = spec.parse::<ColoredBraid>()?.check_closable()?;
        count_colorings_braid(&b, &mq)?
    } else {
        let d: ColoredDiagram = match (&args.source.diagram, &args.source.pd) {
            (Some(path), _) => parse_diagram(&read(path)?)?,
            (None, Some(code)) => {
                let colors = parse_colors(args.colors.as_deref().unwrap_or_default())?;
                from_pd_code(code, &colors)?
            }
            (None, None) => unreachable!("clap requires one source"),
        };
        count_colorings_diagram(&d, &mq)?
    };
    Ok(Outcome::ok(set.to_text(args.list_solutions)?))
}

fn action_cmd(quandle: &Path, braid: &str, input: &str) -> Result<Outcome, Failure> {
    let mq = load_quandle(quandle)?;
    let b: ColoredBraid = braid.parse()?;
    let x: Vec<usize> = input
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|v| match v.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Failure::Usage(format!("bad tuple entry `{v}`"))),
        })
        .collect::<Result<_, _>>()?;
    let y = braid_action(&b, &mq, &x)?;
    let y: Vec<String> = y.iter().map(|v| (v + 1).to_string()).collect();
    Ok(Outcome::ok(format!("{}\n", y.join(","))))
}

fn fuzz_outcome(name: &str, report: FuzzReport) -> Outcome {
    let mut text = String::new();
    for (kind, n) in &report.checks {
        writeln!(text, "{kind} {n}").unwrap();
    }
    for f in &report.failures {
        writeln!(text, "FAIL {f}").unwrap();
    }
    writeln!(text, "{name}: {} checks, {} failures", report.total(), report.failures.len()).unwrap();
    Outcome { text, code: if report.passed() { 0 } else { 1 } }
}

fn search_cmd(spec: SearchSpec, out: &Path) -> Result<Outcome, Failure> {
    let usage = |e: SearchError| Failure::Usage(e.to_string());
    let found = search(&spec).map_err(usage)?;
    write_results(out, &spec, &found).map_err(usage)?;
    let mode = if spec.mode == Mode::UpToIsomorphism { "up to isomorphism" } else { "labeled" };
    Ok(Outcome::ok(format!(
        "found {} multi-quandles of order {} with k={} ({mode}) in {}\n",
        found.len(),
        spec.order,
        spec.k,
        out.display()
    )))
}

fn toric_cmd(file: &Path) -> Result<Outcome, Failure> {
    let sys: ToricAffineSystem =
        read(file)?.parse().map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let sol = solve_toric(&sys).map_err(|e| Failure::Math(e.to_string()))?;
    if !sample_verify(&sys, &sol, 100, 0) {
        return Err(Failure::Math(format!("sample verification failed for {sol}")));
    }
    Ok(Outcome::ok(format!("{sol}\n")))
}

fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Validate { file } => validate_cmd(&file),
        Command::Invert { file } => Ok(Outcome::ok(serialize_quandle(&load_quandle(&file)?.inverted(), false))),
        Command::Count(args) => count_cmd(&args),
        Command::Action { quandle, braid, input } => action_cmd(&quandle, &braid, &input),
        Command::MarkovFuzz(a) => Ok(fuzz_outcome("markov-fuzz", markov_fuzz(&load_quandle(&a.quandle)?, a.iters, a.seed))),
        Command::ReidFuzz(a) => Ok(fuzz_outcome("reid-fuzz", reid_fuzz(&load_quandle(&a.quandle)?, a.iters, a.seed))),
        Command::Search { order, k, iso, out, allow_large } => {
            let mode = if iso { Mode::UpToIsomorphism } else { Mode::AllLabeled };
            search_cmd(SearchSpec { order, k, mode, allow_large }, &out)
        }
        Command::Toric { file } => toric_cmd(&file),
        Command::Regress { dir } => regress(&dir),
    }
}

fn worker_pool() -> Result<Option<rayon::ThreadPool>, Failure> {
    let Ok(v) = std::env::var("MQ_WORKERS") else { return Ok(None) };
    let n: usize = match v.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(Failure::Usage(format!("MQ_WORKERS must be a positive integer, got `{v}`"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}")))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{first}");
            return 2;
        }
    };
    let result = match worker_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(cli)),
        Ok(None) => dispatch(cli),
        Err(f) => Err(f),
    };
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
