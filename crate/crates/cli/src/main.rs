//! `oddcycle`: analysis, constructions, bipartization, starters, lemma sweeps
//! and counterexample searches from the command line.
//!
//! Exit codes: 0 clean, 1 violations found, 2 search budget exceeded,
//! 64 usage error, 65 malformed graph6 input.

use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddcycle_core::bipartization::{d2, gamma2};
use oddcycle_core::constructions::ConstructionSpec;
use oddcycle_core::cycles::{cycle_spectrum, girth, is_weakly_pancyclic, odd_girth};
use oddcycle_core::graph::{from_graph6, to_graph6};
use oddcycle_core::harness::{
    search_counterexample, verify_lemma, verify_turan_extremal, EnumMode, LemmaId, LemmaParams, SearchParams,
    SearchTarget, VerificationReport,
};
use oddcycle_core::starters::{find_starter, is_starter};
use oddcycle_core::{par, Budget, Error, Graph};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "oddcycle", version, about = "Odd-cycle structure of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Search node budget per exact computation.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Append output to this file instead of printing it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Inputs {
    /// graph6 strings; read from stdin when neither these nor --file are given.
    graphs: Vec<String>,
    /// Files with one graph6 string per line.
    #[arg(long = "file")]
    files: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    CompleteBipartite,
    Turan,
    TStar,
    TStarStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Labeled,
    Iso,
}

impl From<ModeArg> for EnumMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Labeled => EnumMode::Labeled,
            ModeArg::Iso => EnumMode::UpToIso,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cycle structure and bipartization numbers of each input graph.
    Analyze {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        common: Common,
    },
    /// Print the graph6 string of a construction.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact d2 and gamma2 with witnesses.
    Bipartize {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        common: Common,
    },
    /// Find or check an (s, r+2)-starter.
    Starter {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        k: usize,
        /// Check this comma-separated vertex set instead of searching.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one lemma, or the extremal-number check with `--lemma turan`.
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        host_length: usize,
        #[arg(long, value_enum, default_value = "iso")]
        mode: ModeArg,
        /// Sample this many configurations instead of sweeping all.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall time in the report.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Search enumerated graphs for counterexamples.
    Search {
        #[arg(long)]
        target: String,
        /// Inclusive range such as `4..8`, or a single `n`.
        #[arg(long, default_value = "1..6")]
        n_range: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_enum, default_value = "iso")]
        mode: ModeArg,
        /// Conjecture only: check the three-block construction family.
        #[arg(long)]
        family: bool,
        /// Accepted for interface symmetry; searches are exhaustive.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Data(String),
    Budget(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Graph6(_) => Failure::Data(e.to_string()),
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

struct Sink {
    out: Option<PathBuf>,
    lines: Vec<String>,
}

impl Sink {
    fn new(out: &Option<PathBuf>) -> Sink {
        Sink {
            out: out.clone(),
            lines: Vec::new(),
        }
    }

    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    fn flush(self) -> io::Result<()> {
        let mut text = self.lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        match self.out {
            Some(path) => OpenOptions::new().create(true).append(true).open(path)?.write_all(text.as_bytes()),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn read_graphs(inputs: &Inputs) -> Result<Vec<Graph>, Failure> {
    let mut lines: Vec<String> = inputs.graphs.clone();
    for f in &inputs.files {
        lines.extend(fs::read_to_string(f)?.lines().map(str::to_string));
    }
    if inputs.graphs.is_empty() && inputs.files.is_empty() {
        for line in io::stdin().lock().lines() {
            lines.push(line?);
        }
    }
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| from_graph6(l).map_err(Failure::from))
        .collect()
}

fn analyze(g: &Graph, budget: Budget) -> Result<Value, Error> {
    let spectrum = cycle_spectrum(g, budget)?;
    let weak = if spectrum.is_empty() {
        None
    } else {
        Some(is_weakly_pancyclic(g, budget)?)
    };
    let longest = spectrum.longest_odd();
    Ok(json!({
        "graph6": to_graph6(g),
        "n": g.n(),
        "m": g.m(),
        "girth": girth(g),
        "odd_girth": odd_girth(g),
        "longest_odd_cycle": longest.map(|c| c.len()),
        "longest_odd_witness": longest,
        "spectrum": spectrum.lengths(),
        "d2": d2(g, budget)?.size,
        "gamma2": gamma2(g, budget)?.size,
        "weakly_pancyclic": weak,
    }))
}

fn need(name: &str, v: Option<usize>) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this family")))
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("bad --n-range `{s}`; expected `a..b` or `n`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            Ok((a, b))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn emit_report(report: VerificationReport, since: Instant, timing: bool, out: &Option<PathBuf>) -> Outcome {
    let report = if timing {
        let r = report.timed(since);
        eprintln!("elapsed: {} ms", r.elapsed_ms.unwrap_or(0));
        r
    } else {
        report
    };
    let mut sink = Sink::new(out);
    sink.push(report.to_json_line());
    sink.flush()?;
    Ok(if !report.violations.is_empty() {
        EXIT_VIOLATIONS
    } else if !report.complete && report.skipped > 0 {
        EXIT_BUDGET
    } else {
        0
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze { inputs, common } => {
            let budget = Budget(common.budget);
            let mut sink = Sink::new(&common.out);
            for g in read_graphs(&inputs)? {
                sink.push(analyze(&g, budget)?.to_string());
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Construct {
            family,
            a,
            b,
            n,
            r,
            k,
            common,
        } => {
            let spec = match family {
                Family::CompleteBipartite => ConstructionSpec::CompleteBipartite {
                    a: need("a", a)?,
                    b: need("b", b)?,
                },
                Family::Turan => ConstructionSpec::Turan {
                    n: need("n", n)?,
                    r: need("r", r)?,
                },
                Family::TStar => ConstructionSpec::TStar {
                    r: need("r", r)?,
                    n: need("n", n)?,
                },
                Family::TStarStar => ConstructionSpec::TStarStar {
                    k: need("k", k)?,
                    b: need("b", b)?,
                    n: need("n", n)?,
                },
            };
            let mut sink = Sink::new(&common.out);
            sink.push(to_graph6(&spec.build()?));
            sink.flush()?;
            Ok(0)
        }
        Command::Bipartize { inputs, common } => {
            let budget = Budget(common.budget);
            let mut sink = Sink::new(&common.out);
            for g in read_graphs(&inputs)? {
                let line = json!({
                    "graph6": to_graph6(&g),
                    "d2": d2(&g, budget)?,
                    "gamma2": gamma2(&g, budget)?,
                });
                sink.push(line.to_string());
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Starter {
            inputs,
            r,
            s,
            k,
            set,
            common,
        } => {
            let budget = Budget(common.budget);
            let mut sink = Sink::new(&common.out);
            for g in read_graphs(&inputs)? {
                let cert = match &set {
                    Some(vs) => {
                        if vs.len() != r + 2 {
                            return Err(Failure::Usage(format!("--set needs r + 2 = {} vertices", r + 2)));
                        }
                        is_starter(&g, vs, s, k, budget)?
                    }
                    None => find_starter(&g, r, s, k, budget)?,
                };
                sink.push(json!({ "graph6": to_graph6(&g), "certificate": cert }).to_string());
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Verify {
            lemma,
            k,
            r,
            n,
            host_length,
            mode,
            samples,
            seed,
            timing,
            common,
        } => {
            let since = Instant::now();
            let report = if lemma == "turan" {
                verify_turan_extremal(n, k, mode.into())?.report
            } else {
                let id: LemmaId = lemma.parse()?;
                let p = LemmaParams {
                    k,
                    r,
                    host_length,
                    n,
                    enum_mode: mode.into(),
                    samples,
                    seed,
                    budget: Budget(common.budget),
                };
                verify_lemma(id, &p)?
            };
            emit_report(report, since, timing, &common.out)
        }
        Command::Search {
            target,
            n_range,
            k,
            r,
            b,
            mode,
            family,
            seed: _,
            timing,
            common,
        } => {
            let since = Instant::now();
            let target: SearchTarget = target.parse()?;
            let (n_min, n_max) = parse_range(&n_range)?;
            let r_or_b = if target == SearchTarget::Conjecture1 {
                need("b", b)?
            } else {
                need("r", r)?
            };
            let p = SearchParams {
                n_min,
                n_max,
                k,
                r_or_b,
                enum_mode: mode.into(),
                family,
                budget: Budget(common.budget),
            };
            let report = search_counterexample(target, &p)?;
            emit_report(report, since, timing, &common.out)
        }
    }
}

fn jobs_of(command: &Command) -> Option<usize> {
    match command {
        Command::Analyze { common, .. }
        | Command::Construct { common, .. }
        | Command::Bipartize { common, .. }
        | Command::Starter { common, .. }
        | Command::Verify { common, .. }
        | Command::Search { common, .. } => common.jobs,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match jobs_of(&cli.command) {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => par::with_jobs(j, || run(cli.command)),
        None => run(cli.command),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Data(m) => (EXIT_DATA, m),
                Failure::Budget(m) => (EXIT_BUDGET, m),
                Failure::Io(m) => (EXIT_USAGE, m),
            };
            eprintln!("oddcycle: {msg}");
            ExitCode::from(code)
        }
    }
}
