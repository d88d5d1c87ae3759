//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the process exit code; the binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 input or domain error (including a failed
//! verification), 2 capability or scale limit, 64 usage error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{big_one_bounds, nu_family_count, nu_family_members, nu_lower_bound, NuFormula};
use crate::census::{compute_x, count_l, count_u, enumerate_anosov, CensusCache, CensusResult, Method};
use crate::equivalence::{anosov_violation, decompose};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph6;
use crate::injection::{inject_with_case, verify_injection_with_limit, DEFAULT_VERIFY_LIMIT};
use crate::lie::build_lie_algebra;
use crate::partition::Partition;
use crate::quotient::{deconstruct, quotient, WeightedGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CAPABILITY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Columns of `bounds`.
pub const BOUNDS_HEADER: &str = "n\tL\ta\tU\tlower\tupper\tnu_improved\tnu_dani_mainkar";

#[derive(Debug, Parser)]
#[command(name = "anosov", version, about = "Anosov graphs: twin classes, quotients, censuses and bounds")]
pub struct Cli {
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Census cache directory. Falls back to $ANOSOV_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    Json,
    Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Tsv,
    Json,
    Graph6,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Quotient,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct GraphInput {
    /// Graph as graph6, JSON `{"n":..,"edges":[[u,v],..]}`, or an edge list
    /// (vertex count then endpoint pairs). Read from standard input when
    /// omitted.
    pub graph: Option<String>,

    /// Input encoding; `auto` picks JSON for `{`, an edge list for a leading
    /// digit, and graph6 otherwise.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a graph is Anosov (connected, every twin class of size
    /// at least 2, every class of size 2 edgeless) and report its type.
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Skip the connectivity requirement.
        #[arg(long)]
        allow_disconnected: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
        format: OutputFormat,
    },
    /// Weighted quotient graph by twin classes: weights are class sizes and
    /// complete classes carry a loop.
    Quotient {
        #[command(flatten)]
        input: GraphInput,
        /// `json` or `dot`.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Deconstruction (blow-up) of a weighted graph given as JSON
    /// `{"k":..,"weights":[..],"edges":[[i,j],..]}`; `[i,i]` is a loop.
    Deconstruct {
        /// Weighted graph JSON; read from standard input when omitted.
        weighted: Option<String>,
        /// `graph6`, `json` or `dot`.
        #[arg(long, value_enum, default_value_t = OutputFormat::Graph6)]
        format: OutputFormat,
    },
    /// Isomorph-free census of Anosov graphs on n vertices, a(n).
    ///
    /// TSV columns: n, method, count.
    Enumerate {
        n: usize,
        /// Enumerate every n up to this value as well.
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Quotient)]
        method: MethodArg,
        /// `tsv` (counts), `json`, or `graph6` (one canonical graph per line).
        #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
        format: OutputFormat,
    },
    /// Counting bounds per n: L(n) <= a(n) <= U(n), the partition-sum
    /// sandwich built from X(t), and both lower bounds on nu evaluated at
    /// w = n.
    ///
    /// TSV columns: n, L, a, U, lower, upper, nu_improved, nu_dani_mainkar.
    /// Values beyond a scale limit are printed as `-`.
    Bounds {
        /// Last n.
        max: usize,
        /// First n.
        #[arg(long, default_value_t = 3)]
        min: usize,
    },
    /// X(t): symmetric t x t binary matrices with distinct rows, up to
    /// simultaneous row and column permutation.
    Xt {
        t: usize,
        /// Allow t = 7.
        #[arg(long)]
        allow_large: bool,
    },
    /// Image of a partition (n >= 9) under the case-by-case injection into
    /// quotient graphs of Anosov graphs.
    Inject {
        /// Partition such as `3,3,2,1`.
        partition: String,
        /// `json` or `dot`.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Check the partition injection for all partitions of n: brick
    /// conditions, Anosov deconstructions, and pairwise distinct images.
    VerifyInjection {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_VERIFY_LIMIT)]
        limit: usize,
    },
    /// Structure constants of the two-step nilpotent Lie algebra of a graph
    /// (one generator per vertex and per edge), with a nilpotency check.
    Lie {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Family count used for the lower bound on nu(w), the number of
    /// Anosov graphs with n + m = w, and every constructed family member.
    NuFamily { w: u64 },
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Normal output goes to `out` (or `--output`), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Input(format!("worker pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, out, &outcome.text) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_ERROR;
            }
            if let Some(note) = outcome.failure {
                let _ = writeln!(err, "{note}");
                return EXIT_ERROR;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Capability(_) => EXIT_CAPABILITY,
                _ => EXIT_ERROR,
            }
        }
    }
}

struct Outcome {
    text: String,
    /// Set when the command ran but its check failed.
    failure: Option<String>,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, failure: None }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn read_input(arg: &Option<String>) -> Result<String> {
    match arg {
        Some(s) if s != "-" => Ok(s.clone()),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Graph from text in the given (or detected) encoding.
pub fn parse_graph(text: &str, format: InputFormat) -> Result<SimpleGraph> {
    let trimmed = text.trim();
    match format {
        InputFormat::Graph6 => graph6::decode(trimmed),
        InputFormat::Json => SimpleGraph::from_json(trimmed),
        InputFormat::Edges => SimpleGraph::from_edge_list(trimmed),
        InputFormat::Auto => {
            if trimmed.starts_with('{') {
                // `{` is also the graph6 header byte for 60 vertices.
                if let Ok(g) = SimpleGraph::from_json(trimmed) {
                    return Ok(g);
                }
                graph6::decode(trimmed)
            } else if trimmed.starts_with(|c: char| c.is_ascii_digit()) {
                SimpleGraph::from_edge_list(trimmed)
            } else {
                graph6::decode(trimmed)
            }
        }
    }
}

fn cache(cli: &Cli) -> Option<CensusCache> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("ANOSOV_CACHE").map(PathBuf::from))
        .map(CensusCache::new)
}

fn census(cli: &Cli, n: usize, method: Method) -> Result<CensusResult> {
    match cache(cli) {
        Some(c) => c.get_or_compute(n, method),
        None => enumerate_anosov(n, method),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { input, allow_disconnected, format } => {
            let g = parse_graph(&read_input(&input.graph)?, input.input_format)?;
            check(&g, *allow_disconnected, *format).map(Outcome::from)
        }
        Command::Quotient { input, format } => {
            let g = parse_graph(&read_input(&input.graph)?, input.input_format)?;
            weighted_output(&quotient(&g)?, *format).map(Outcome::from)
        }
        Command::Deconstruct { weighted, format } => {
            let w = WeightedGraph::from_json(read_input(weighted)?.trim())?;
            let g = deconstruct(&w)?;
            Ok(match format {
                OutputFormat::Json => format!("{}\n", g.to_json()),
                OutputFormat::Dot => g.to_dot(),
                _ => format!("{}\n", graph6::encode(&g)),
            }
            .into())
        }
        Command::Enumerate { n, to, method, format } => enumerate(cli, *n, to.unwrap_or(*n), *method, *format),
        Command::Bounds { max, min } => bounds(cli, *min, *max).map(Outcome::from),
        Command::Xt { t, allow_large } => Ok(format!("{}\n", compute_x(*t, *allow_large)?).into()),
        Command::Inject { partition, format } => {
            let lambda: Partition = partition.parse()?;
            let (case, w) = inject_with_case(&lambda)?;
            Ok(match format {
                OutputFormat::Dot => w.to_dot(),
                _ => format!(
                    "{}\n",
                    json!({ "partition": lambda.parts(), "case": case.id(), "quotient": w.to_json_value() })
                ),
            }
            .into())
        }
        Command::VerifyInjection { n, limit } => {
            let report = verify_injection_with_limit(*n, *limit)?;
            let mut text = format!(
                "n\t{}\npartitions\t{}\ndistinct_images\t{}\n",
                report.n, report.partitions, report.distinct_images
            );
            for (case, count) in &report.case_counts {
                let _ = writeln!(text, "case_{case}\t{count}");
            }
            for v in &report.violations {
                let _ = writeln!(text, "violation\t{v}");
            }
            let verdict = if report.passed() { "pass" } else { "fail" };
            let _ = writeln!(text, "result\t{verdict}");
            let failure = (!report.passed())
                .then(|| format!("injection check failed for n = {}: {} violation(s)", report.n, report.violations.len()));
            Ok(Outcome { text, failure })
        }
        Command::Lie { input } => {
            let g = parse_graph(&read_input(&input.graph)?, input.input_format)?;
            let l = build_lie_algebra(&g)?;
            let mut value = serde_json::to_value(l.to_json_value()).expect("Lie JSON");
            value["two_step"] = json!(l.verify_two_step());
            Ok(format!("{value}\n").into())
        }
        Command::NuFamily { w } => nu_family(*w).map(Outcome::from),
    }
}

fn check(g: &SimpleGraph, allow_disconnected: bool, format: OutputFormat) -> Result<String> {
    let violation = anosov_violation(g, allow_disconnected);
    let graph_type = (g.n() > 0).then(|| decompose(g)).transpose()?.map(|d| d.graph_type);
    if format == OutputFormat::Json {
        return Ok(format!(
            "{}\n",
            json!({
                "anosov": violation.is_none(),
                "type": graph_type.as_ref().map(|t| t.parts().to_vec()),
                "reason": violation.as_ref().map(|v| v.to_string()),
            })
        ));
    }
    Ok(match violation {
        None => format!("Anosov: type {}\n", graph_type.expect("nonempty")),
        Some(v) => format!("not Anosov: {v}\n"),
    })
}

fn weighted_output(w: &WeightedGraph, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Dot => Ok(w.to_dot()),
        OutputFormat::Json => Ok(format!("{}\n", w.to_json())),
        other => Err(Error::Input(format!("weighted graphs are written as json or dot, not {other:?}"))),
    }
}

fn enumerate(cli: &Cli, from: usize, to: usize, method: MethodArg, format: OutputFormat) -> Result<Outcome> {
    let methods: &[Method] = match method {
        MethodArg::Brute => &[Method::BruteForce],
        MethodArg::Quotient => &[Method::QuotientSynthesis],
        MethodArg::Both => &[Method::BruteForce, Method::QuotientSynthesis],
    };
    let mut text = String::new();
    let mut json_rows = Vec::new();
    let mut disagreements = Vec::new();
    if format == OutputFormat::Tsv {
        text.push_str("n\tmethod\tcount\n");
    }
    for n in from..=to {
        let results = methods.iter().map(|&m| census(cli, n, m)).collect::<Result<Vec<_>>>()?;
        let agree = results.windows(2).all(|w| w[0].graphs == w[1].graphs);
        if !agree {
            disagreements.push(n);
        }
        match format {
            OutputFormat::Json => {
                let counts: BTreeMap<&str, usize> = results.iter().map(|r| (r.method.as_str(), r.count)).collect();
                json_rows.push(json!({
                    "n": n,
                    "counts": counts,
                    "agree": agree,
                    "graph6": results[0].graph6_lines(),
                }));
            }
            OutputFormat::Graph6 => {
                for line in results[0].graph6_lines() {
                    let _ = writeln!(text, "{line}");
                }
            }
            _ => {
                for r in &results {
                    let _ = writeln!(text, "{n}\t{}\t{}", r.method.as_str(), r.count);
                }
            }
        }
    }
    if format == OutputFormat::Json {
        text = format!("{}\n", serde_json::Value::Array(json_rows));
    } else if format == OutputFormat::Tsv && methods.len() > 1 {
        text.push_str(if disagreements.is_empty() { "methods agree\n" } else { "methods disagree\n" });
    }
    let failure = (!disagreements.is_empty()).then(|| format!("methods disagree for n = {disagreements:?}"));
    Ok(Outcome { text, failure })
}

fn bounds(cli: &Cli, min: usize, max: usize) -> Result<String> {
    let min = min.max(1);
    let mut text = format!("{BOUNDS_HEADER}\n");
    let mut x_values: BTreeMap<usize, u64> = BTreeMap::new();
    for n in min..=max {
        let dash = || "-".to_string();
        let or_dash = |r: Result<usize>| match r {
            Ok(v) => Ok(v.to_string()),
            Err(Error::Capability(_)) => Ok(dash()),
            Err(e) => Err(e),
        };
        let l = or_dash(count_l(n))?;
        let u = or_dash(count_u(n))?;
        let a = or_dash(census(cli, n, Method::QuotientSynthesis).map(|c| c.count))?;
        let needed = crate::partition::partitions(n, 2).iter().map(|p| p.len()).max();
        let mut have_x = true;
        for t in 1..=needed.unwrap_or(0) {
            if let std::collections::btree_map::Entry::Vacant(slot) = x_values.entry(t) {
                match compute_x(t, false) {
                    Ok(v) => {
                        slot.insert(v);
                    }
                    Err(Error::Capability(_)) => have_x = false,
                    Err(e) => return Err(e),
                }
            }
        }
        let (lower, upper) = if have_x {
            let report = big_one_bounds(n, &x_values)?;
            (report.lower.to_string(), report.upper.to_string())
        } else {
            (dash(), dash())
        };
        let nu = |f| nu_lower_bound(n as u64, f).map(|b| format!("{:.9}", b.to_f64()));
        let _ = writeln!(
            text,
            "{n}\t{l}\t{a}\t{u}\t{lower}\t{upper}\t{}\t{}",
            nu(NuFormula::Improved)?,
            nu(NuFormula::DaniMainkar)?
        );
    }
    Ok(text)
}

fn nu_family(w: u64) -> Result<String> {
    let mut text = String::new();
    let count = nu_family_count(w);
    let _ = writeln!(text, "w\t{w}");
    let _ = writeln!(text, "family_count\t{count}");
    if w > 9 {
        let _ = writeln!(text, "nu_improved\t{:.9}", nu_lower_bound(w, NuFormula::Improved)?.to_f64());
        let _ = writeln!(text, "nu_dani_mainkar\t{:.9}", nu_lower_bound(w, NuFormula::DaniMainkar)?.to_f64());
    } else {
        let _ = writeln!(text, "note\tno family members below w = 10");
    }
    let _ = writeln!(text, "loop\tq\tk\tp\tn\tm");
    for m in nu_family_members(w)? {
        let _ = writeln!(text, "{}\t{}\t{}\t{}\t{}\t{}", m.loop0, m.q, m.k, m.p, m.n, m.m);
    }
    Ok(text)
}
