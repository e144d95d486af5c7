//! Command-line front end: graph file ingestion, subcommand dispatch, and
//! JSON/text reporting.
//!
//! Graph files use a DIMACS-flavored format with 1-indexed vertices:
//!
//! ```text
//! # comment
//! p reliability <n> <m>
//! e <u> <v> [p_fail]     undirected edge
//! a <u> <v> [p_fail]     directed arc
//! ```
//!
//! A file holds either edges or arcs, never both. A missing per-line
//! probability falls back to the global `--p` flag.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cut_enum::{self, CutSignature};
use crate::detapprox;
use crate::error::{Error, Result};
use crate::estimators::{self, Branch, Estimate, EstimatorConfig, Method};
use crate::generators;
use crate::multigraph::{Digraph, Multigraph};
use crate::oracle;
use crate::tutte;

#[derive(Parser, Debug)]
#[command(
    name = "relicut",
    about = "Network reliability estimation via Monte Carlo and near-minimum-cut enumeration",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(Subcommand, Debug)]
enum CommandKind {
    /// Probability the network disconnects under random edge failures.
    Rel(RelArgs),
    /// Probability the network is not k-edge-connected after failures.
    Kconn(KconnArgs),
    /// Probability some pair of terminals is disconnected.
    Multiterm(MultitermArgs),
    /// Probability the network splits into r or more components.
    Rway(RwayArgs),
    /// Probability an Eulerian digraph loses strong connectivity.
    Eulerian(CommonArgs),
    /// Probability a uniformly random orientation is not strongly connected.
    Orient(CommonArgs),
    /// Tutte polynomial evaluation at (x, y).
    Tutte(TutteArgs),
    /// Enumerate near-minimum cuts.
    Cuts(CutsArgs),
    /// Sum of near-minimum-cut failure probabilities with certified error.
    Heuristic(CommonArgs),
    /// Deterministic truncated inclusion-exclusion estimate.
    Pas(CommonArgs),
    /// Brute-force oracles for small inputs.
    Exact(ExactArgs),
    /// Generate graph files for cycles, cliques, bundled cycles, paths.
    Gen(GenArgs),
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Graph file.
    file: PathBuf,
    /// Target relative error.
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    /// Failure budget for the accuracy guarantee.
    #[arg(long, default_value_t = 0.01)]
    eta: f64,
    /// Default edge failure probability for lines without one.
    #[arg(long)]
    p: Option<f64>,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ceiling on the enumeration threshold multiplier.
    #[arg(long, default_value_t = 3.0)]
    alpha_cap: f64,
    /// Estimation branch: automatic regime dispatch or a forced branch.
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    method: MethodChoice,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RelArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct KconnArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Connectivity target k.
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug)]
struct MultitermArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated 1-indexed terminal vertices.
    #[arg(long)]
    terminals: String,
}

#[derive(Args, Debug)]
struct RwayArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Component count r.
    #[arg(long)]
    r: usize,
}

#[derive(Args, Debug)]
struct TutteArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
}

#[derive(Args, Debug)]
struct CutsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Enumeration threshold multiplier.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Enumerate r-way cuts instead of two-way cuts.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[command(subcommand)]
    which: ExactKind,
}

#[derive(Subcommand, Debug)]
enum ExactKind {
    /// Exact disconnection probability.
    Rel(CommonArgs),
    /// Exact k-connectivity failure probability.
    Kconn(KconnArgs),
    /// Exact multiterminal failure probability.
    Multiterm(MultitermArgs),
    /// Exact probability of r or more components.
    Rway(RwayArgs),
    /// Exact strong-connectivity failure probability.
    Eulerian(CommonArgs),
    /// Exact random-orientation failure probability.
    Orient(CommonArgs),
    /// Exact Tutte polynomial value.
    Tutte(TutteArgs),
    /// Exhaustive near-minimum cut list.
    Cuts(CutsArgs),
    /// Exact component-count tail probabilities.
    Tail(CommonArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Shape to generate.
    #[arg(value_enum)]
    shape: Shape,
    /// Vertex count (leaf count for stars).
    #[arg(long)]
    n: usize,
    /// Parallel edges per bundle (bundled cycles only).
    #[arg(long, default_value_t = 1)]
    bundle: usize,
    /// Per-edge failure probability written on each line.
    #[arg(long)]
    p: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Shape {
    Cycle,
    Clique,
    BundledCycle,
    Path,
    Star,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodChoice {
    Auto,
    Mc,
    Cutenum,
}

impl MethodChoice {
    fn forced(self) -> Option<Branch> {
        match self {
            MethodChoice::Auto => None,
            MethodChoice::Mc => Some(Branch::Mc),
            MethodChoice::Cutenum => Some(Branch::Small),
        }
    }
}

/// Parsed content of a graph file.
#[derive(Debug)]
pub enum ParsedGraph {
    Undirected(Multigraph),
    Directed(Digraph),
}

/// Parse a graph file; 1-indexed vertices map to 0-indexed internal ids.
pub fn parse_graph(path: &Path, default_p: Option<f64>) -> Result<ParsedGraph> {
    let content = std::fs::read_to_string(path)?;
    parse_graph_str(&content, default_p)
}

pub fn parse_graph_str(content: &str, default_p: Option<f64>) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut kind: Option<char> = None;
    for (idx, raw) in content.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate problem line".into(),
                    });
                }
                if fields.len() != 4 || fields[1] != "reliability" {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected `p reliability <n> <m>`".into(),
                    });
                }
                let n = parse_num::<usize>(fields[2], line_no, "vertex count")?;
                let m = parse_num::<usize>(fields[3], line_no, "edge count")?;
                header = Some((n, m));
            }
            tag @ ("e" | "a") => {
                let tag = tag.chars().next().unwrap();
                let Some((n, _)) = header else {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "edge line before the problem line".into(),
                    });
                };
                match kind {
                    None => kind = Some(tag),
                    Some(k) if k != tag => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "mixed `e` and `a` lines are not allowed".into(),
                        })
                    }
                    _ => {}
                }
                if fields.len() < 3 || fields.len() > 4 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected `{tag} <u> <v> [p_fail]`"),
                    });
                }
                let u = parse_num::<usize>(fields[1], line_no, "endpoint")?;
                let v = parse_num::<usize>(fields[2], line_no, "endpoint")?;
                if u < 1 || v < 1 || u > n || v > n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("endpoint out of range: ({u}, {v}) with n = {n}"),
                    });
                }
                if u == v {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("self-loop at vertex {u}"),
                    });
                }
                let p = match fields.get(3) {
                    Some(field) => parse_num::<f64>(field, line_no, "probability")?,
                    None => default_p.ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "no probability on the line and no --p default given".into(),
                    })?,
                };
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("probability {p} outside [0, 1]"),
                    });
                }
                edges.push((u - 1, v - 1, p));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown line tag `{other}`"),
                });
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing `p reliability <n> <m>` line".into(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: content.lines().count(),
            msg: format!("header declares {m} edges, file has {}", edges.len()),
        });
    }
    match kind {
        Some('a') => Ok(ParsedGraph::Directed(Digraph::build(n, &edges)?)),
        _ => Ok(ParsedGraph::Undirected(Multigraph::build(n, &edges)?)),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse::<T>().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what}: `{s}`"),
    })
}

/// The report printed for every estimator subcommand.
#[derive(Debug, Serialize)]
pub struct Report {
    pub estimate: f64,
    pub method: &'static str,
    pub epsilon: f64,
    pub eta: f64,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub min_cut: f64,
    pub p_c: f64,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub cuts_enumerated: Option<usize>,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_error_bound: Option<f64>,
    pub wall_ms: f64,
}

impl Report {
    pub fn from_estimate(est: &Estimate) -> Self {
        Self {
            estimate: est.value,
            method: est.method.as_str(),
            epsilon: est.epsilon,
            eta: est.eta,
            seed: est.seed,
            n: est.diagnostics.n,
            m: est.diagnostics.m,
            min_cut: est.diagnostics.min_cut,
            p_c: est.diagnostics.p_c,
            delta: est.diagnostics.delta,
            alpha: est.diagnostics.alpha,
            cuts_enumerated: est.diagnostics.cuts_enumerated,
            trials: est.diagnostics.trials,
            certified_error_bound: est.diagnostics.certified_error_bound,
            wall_ms: est.diagnostics.wall_ms,
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(&format!("{k:<22} {v}\n"));
        };
        push("estimate:", format!("{}", self.estimate));
        push("method:", self.method.to_string());
        push("epsilon:", format!("{}", self.epsilon));
        push("eta:", format!("{}", self.eta));
        push("seed:", format!("{}", self.seed));
        push("n:", format!("{}", self.n));
        push("m:", format!("{}", self.m));
        push("min_cut:", format!("{}", self.min_cut));
        push("p_c:", format!("{}", self.p_c));
        push("delta:", render_opt(self.delta));
        push("alpha:", render_opt(self.alpha));
        push(
            "cuts_enumerated:",
            self.cuts_enumerated
                .map_or("-".to_string(), |v| v.to_string()),
        );
        push("trials:", format!("{}", self.trials));
        if let Some(b) = self.certified_error_bound {
            push("certified_error_bound:", format!("{b}"));
        }
        push("wall_ms:", format!("{}", self.wall_ms));
        out
    }
}

fn render_opt(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |x| format!("{x}"))
}

fn print_report(report: &Report, json: bool) -> Result<()> {
    if json {
        println!(
            "{}",
            serde_json::to_string(report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("RELICUT_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn load_undirected(common: &CommonArgs) -> Result<Multigraph> {
    match parse_graph(&common.file, common.p)? {
        ParsedGraph::Undirected(g) => Ok(g),
        ParsedGraph::Directed(_) => Err(Error::InvalidInput(
            "this subcommand needs an undirected graph (`e` lines)".into(),
        )),
    }
}

fn load_directed(common: &CommonArgs) -> Result<Digraph> {
    match parse_graph(&common.file, common.p)? {
        ParsedGraph::Directed(dg) => Ok(dg),
        ParsedGraph::Undirected(_) => Err(Error::InvalidInput(
            "this subcommand needs a directed graph (`a` lines)".into(),
        )),
    }
}

fn config_of(common: &CommonArgs) -> EstimatorConfig {
    EstimatorConfig {
        alpha_cap: common.alpha_cap,
        forced: common.method.forced(),
        ..Default::default()
    }
}

fn parse_terminals(spec: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let t: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid terminal `{part}`")))?;
        if t < 1 || t > n {
            return Err(Error::InvalidInput(format!(
                "terminal {t} out of range 1..={n}"
            )));
        }
        out.push(t - 1);
    }
    Ok(out)
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        CommandKind::Rel(args) => {
            let c = args.common;
            let g = load_undirected(&c)?;
            let est = estimators::estimate_fail_with(&g, c.epsilon, c.eta, c.seed, &config_of(&c))?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Kconn(args) => {
            let c = args.common;
            let g = load_undirected(&c)?;
            let est = estimators::estimate_kconn_failure_with(
                &g,
                args.k,
                c.epsilon,
                c.eta,
                c.seed,
                &config_of(&c),
            )?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Multiterm(args) => {
            let c = args.common;
            let g = load_undirected(&c)?;
            let terminals = parse_terminals(&args.terminals, g.n())?;
            let est = estimators::estimate_multiterminal_with(
                &g,
                &terminals,
                c.epsilon,
                c.eta,
                c.seed,
                &config_of(&c),
            )?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Rway(args) => {
            let c = args.common;
            let g = load_undirected(&c)?;
            let est = estimators::estimate_rway_failure_with(
                &g,
                args.r,
                c.epsilon,
                c.eta,
                c.seed,
                &config_of(&c),
            )?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Eulerian(c) => {
            let dg = load_directed(&c)?;
            let est = estimators::estimate_eulerian_strong_failure_with(
                &dg,
                c.epsilon,
                c.eta,
                c.seed,
                &config_of(&c),
            )?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Orient(c) => {
            let g = load_undirected(&c)?;
            let est = estimators::estimate_orientation_failure_with(
                &g,
                c.epsilon,
                c.eta,
                c.seed,
                &config_of(&c),
            )?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Tutte(args) => {
            let c = args.common;
            let g = load_undirected(&c)?;
            run_tutte(&g, args.x, args.y, &c)
        }
        CommandKind::Cuts(args) => run_cuts(&args, false),
        CommandKind::Heuristic(c) => {
            let g = load_undirected(&c)?;
            let est = detapprox::heuristic_sum_fail(&g, c.seed)?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Pas(c) => {
            let g = load_undirected(&c)?;
            let est = detapprox::pas_fail_with(&g, c.epsilon, &config_of(&c), c.seed)?;
            print_report(&Report::from_estimate(&est), c.json)
        }
        CommandKind::Exact(args) => dispatch_exact(args),
        CommandKind::Gen(args) => run_gen(&args),
    }
}

fn exact_report(value: f64, g_n: usize, g_m: usize, seed: u64) -> Report {
    Report {
        estimate: value,
        method: Method::ExactOracle.as_str(),
        epsilon: 0.0,
        eta: 0.0,
        seed,
        n: g_n,
        m: g_m,
        min_cut: 0.0,
        p_c: 0.0,
        delta: None,
        alpha: None,
        cuts_enumerated: None,
        trials: 0,
        certified_error_bound: None,
        wall_ms: 0.0,
    }
}

fn dispatch_exact(args: ExactArgs) -> Result<()> {
    match args.which {
        ExactKind::Rel(c) => {
            let g = load_undirected(&c)?;
            let value = oracle::exact_fail(&g)?;
            print_report(&exact_report(value, g.n(), g.m(), c.seed), c.json)
        }
        ExactKind::Kconn(a) => {
            let c = a.common;
            let g = load_undirected(&c)?;
            let value = oracle::exact_kconn_fail(&g, a.k)?;
            print_report(&exact_report(value, g.n(), g.m(), c.seed), c.json)
        }
        ExactKind::Multiterm(a) => {
            let c = a.common;
            let g = load_undirected(&c)?;
            let terminals = parse_terminals(&a.terminals, g.n())?;
            let value = oracle::exact_multiterminal_fail(&g, &terminals)?;
            print_report(&exact_report(value, g.n(), g.m(), c.seed), c.json)
        }
        ExactKind::Rway(a) => {
            let c = a.common;
            let g = load_undirected(&c)?;
            let tail = oracle::exact_partition_tail(&g)?;
            let value = tail.s_r(a.r);
            print_report(&exact_report(value, g.n(), g.m(), c.seed), c.json)
        }
        ExactKind::Eulerian(c) => {
            let dg = load_directed(&c)?;
            let value = oracle::exact_strong_fail(&dg)?;
            print_report(&exact_report(value, dg.n(), dg.m(), c.seed), c.json)
        }
        ExactKind::Orient(c) => {
            let g = load_undirected(&c)?;
            let value = oracle::exact_orientation_fail(&g)?;
            print_report(&exact_report(value, g.n(), g.m(), c.seed), c.json)
        }
        ExactKind::Tutte(a) => {
            let c = a.common;
            let g = load_undirected(&c)?;
            let value = tutte::exact_tutte(&g, a.x, a.y)?;
            let mut report = exact_report(value, g.n(), g.m(), c.seed);
            report.epsilon = 0.0;
            print_report(&report, c.json)
        }
        ExactKind::Cuts(a) => run_cuts(&a, true),
        ExactKind::Tail(c) => {
            let g = load_undirected(&c)?;
            let tail = oracle::exact_partition_tail(&g)?;
            if c.json {
                println!("{}", serde_json::json!({ "s": tail.s, "p": tail.p }));
            } else {
                for r in 0..tail.s.len() {
                    println!("s_{r}: {}  p_{r}: {}", tail.s[r], tail.p[r]);
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CutLine {
    blocks: Vec<Vec<usize>>,
    edges: Vec<usize>,
    value: f64,
    flagged: bool,
}

fn signature_blocks(sig: &CutSignature, n: usize) -> Vec<Vec<usize>> {
    let block_count = match sig {
        CutSignature::TwoWay(_) => 2,
        CutSignature::RWay(labels) => (labels.iter().copied().max().unwrap_or(0) as usize) + 1,
    };
    let mut blocks = vec![Vec::new(); block_count];
    for v in 0..n {
        blocks[sig.block_of(v)].push(v + 1);
    }
    blocks
}

fn run_cuts(args: &CutsArgs, exact: bool) -> Result<()> {
    let c = &args.common;
    let g = match parse_graph(&c.file, c.p)? {
        ParsedGraph::Undirected(g) => g,
        ParsedGraph::Directed(dg) => {
            // directed files get the Eulerian treatment
            let cuts = cut_enum::enumerate_directed_eulerian_cuts(&dg, args.alpha, c.eta, c.seed)?;
            if c.json {
                let lines: Vec<_> = cuts
                    .iter()
                    .map(|rec| {
                        serde_json::json!({
                            "blocks": signature_blocks(&rec.signature, dg.n()),
                            "forward": rec.forward,
                            "arcs": rec.arc_ids,
                            "value": rec.value,
                            "flagged": rec.flagged,
                        })
                    })
                    .collect();
                println!("{}", serde_json::json!(lines));
            } else {
                for rec in &cuts {
                    println!(
                        "value {} forward {} arcs {:?} blocks {:?}{}",
                        rec.value,
                        rec.forward,
                        rec.arc_ids,
                        signature_blocks(&rec.signature, dg.n()),
                        if rec.flagged { " (flagged)" } else { "" }
                    );
                }
            }
            return Ok(());
        }
    };
    let records = match (exact, args.r) {
        (true, None) => oracle::exact_cut_list(&g, args.alpha)?,
        (true, Some(r)) => oracle::exact_rway_cut_list(&g, r, args.alpha)?,
        (false, None) => {
            let view = (!g.is_uniform_p()).then(|| g.weighted_view());
            cut_enum::enumerate_alpha_min_cuts(&g, view.as_ref(), args.alpha, c.eta, c.seed)?
        }
        (false, Some(r)) => {
            cut_enum::enumerate_alpha_min_rway_cuts(&g, r, args.alpha, c.eta, c.seed)?
        }
    };
    let lines: Vec<CutLine> = records
        .iter()
        .map(|rec| CutLine {
            blocks: signature_blocks(&rec.signature, g.n()),
            edges: rec.edge_ids.clone(),
            value: rec.value,
            flagged: rec.flagged,
        })
        .collect();
    if c.json {
        println!("{}", serde_json::to_string(&lines).expect("serializes"));
    } else {
        for line in &lines {
            println!(
                "value {} edges {:?} blocks {:?}{}",
                line.value,
                line.edges,
                line.blocks,
                if line.flagged { " (flagged)" } else { "" }
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TutteReport {
    t: f64,
    t_prime: f64,
    t_sign: i8,
    log_t_magnitude: f64,
    method: &'static str,
    x: f64,
    y: f64,
    n: usize,
    m: usize,
    min_cut: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_t_normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bound: Option<f64>,
}

fn run_tutte(g: &Multigraph, x: f64, y: f64, c: &CommonArgs) -> Result<()> {
    let report = if g.m() <= 16 && c.method != MethodChoice::Cutenum {
        let t = tutte::exact_tutte(g, x, y)?;
        TutteReport {
            t,
            t_prime: f64::NAN,
            t_sign: if t < 0.0 { -1 } else { 1 },
            log_t_magnitude: t.abs().ln(),
            method: "exact_oracle",
            x,
            y,
            n: g.n(),
            m: g.m(),
            min_cut: g.min_cut(None).value,
            delta_t_normalized: None,
            error_bound: None,
        }
    } else {
        let est = tutte::estimate_delta_t(g, x, y, c.epsilon, c.eta, c.seed)?;
        TutteReport {
            t: est.t_sign as f64 * est.log_t_magnitude.exp(),
            t_prime: est.t_prime,
            t_sign: est.t_sign,
            log_t_magnitude: est.log_t_magnitude,
            method: "cut_enum_dnf",
            x,
            y,
            n: g.n(),
            m: g.m(),
            min_cut: est.min_cut,
            delta_t_normalized: est.delta_t_normalized,
            error_bound: Some(est.error_bound),
        }
    };
    if c.json {
        println!("{}", serde_json::to_string(&report).expect("serializes"));
    } else {
        println!("t:        {}", report.t);
        println!("t_prime:  {}", report.t_prime);
        println!("method:   {}", report.method);
        println!("min_cut:  {}", report.min_cut);
        if let Some(d) = report.delta_t_normalized {
            println!("delta_t_normalized: {d}");
        }
        if let Some(b) = report.error_bound {
            println!("error_bound: {b}");
        }
    }
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<()> {
    let p = args.p.unwrap_or(0.5);
    let g = match args.shape {
        Shape::Cycle => generators::cycle(args.n, p)?,
        Shape::Clique => generators::clique(args.n, p)?,
        Shape::BundledCycle => generators::bundled_cycle(args.n, args.bundle, p)?,
        Shape::Path => generators::path(args.n, p)?,
        Shape::Star => generators::star(args.n, p)?,
    };
    println!("p reliability {} {}", g.n(), g.m());
    for e in g.edges() {
        if args.p.is_some() {
            println!("e {} {} {}", e.u + 1, e.v + 1, e.p_fail);
        } else {
            println!("e {} {}", e.u + 1, e.v + 1);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let content = "# a triangle\np reliability 3 3\ne 1 2 0.5\ne 2 3 0.5\ne 1 3 0.5\n";
        let ParsedGraph::Undirected(g) = parse_graph_str(content, None).unwrap() else {
            panic!("undirected expected");
        };
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn parse_errors_report_lines() {
        let selfloop = "p reliability 2 1\ne 1 1 0.5\n";
        let err = parse_graph_str(selfloop, None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let bad_p = "p reliability 2 1\ne 1 2 1.5\n";
        assert!(parse_graph_str(bad_p, None).is_err());

        let missing_p = "p reliability 2 1\ne 1 2\n";
        assert!(parse_graph_str(missing_p, None).is_err());
        assert!(parse_graph_str(missing_p, Some(0.3)).is_ok());

        let mixed = "p reliability 3 2\ne 1 2 0.5\na 2 3 0.5\n";
        assert!(parse_graph_str(mixed, None).is_err());

        let wrong_count = "p reliability 3 3\ne 1 2 0.5\n";
        assert!(parse_graph_str(wrong_count, None).is_err());
    }

    #[test]
    fn parse_directed() {
        let content = "p reliability 2 2\na 1 2 0.2\na 2 1 0.2\n";
        let ParsedGraph::Directed(dg) = parse_graph_str(content, None).unwrap() else {
            panic!("directed expected");
        };
        assert_eq!(dg.m(), 2);
        assert!(dg.check_eulerian().is_ok());
    }

    #[test]
    fn crlf_accepted() {
        let content = "p reliability 2 1\r\ne 1 2 0.5\r\n";
        assert!(parse_graph_str(content, None).is_ok());
    }

    #[test]
    fn terminal_parsing() {
        assert_eq!(parse_terminals("1,3", 4).unwrap(), vec![0, 2]);
        assert!(parse_terminals("0,2", 4).is_err());
        assert!(parse_terminals("1,9", 4).is_err());
    }
}
