//! The `lfvc` command-line tool.
//!
//! Subcommands: `detect` (greedy LFVC and baseline detectors over an
//! edge-list file), `centrality` (score table export), `sweep` (block
//! model sensitivity/specificity grid), `evaluate` (listening-similarity
//! metrics over a friendship graph plus preference file) and `bounds`
//! (component-count diagnostics). Every command is deterministic given
//! its inputs and seed, and exits 0 on success, 1 on usage errors, 2 on
//! data errors, 3 on numerical failures.
//!
//! Each subcommand also accepts `--config FILE` pointing at a JSON object
//! whose keys mirror the long flag names; explicit flags win over config
//! values.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::baselines::{self, CentralityKind};
use crate::detect::{self, Budget, CommunityAssignment, RemovalTrace};
use crate::error::{Error, Result};
use crate::graph::{community_count_bound, largest_component_via_null_basis};
use crate::io;
use crate::metrics;
use crate::sbm::{self, Detector, SweepConfig};

#[derive(Parser)]
#[command(name = "lfvc", version, about = "Deep community detection via local Fiedler vector centrality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a detector on an edge-list file and write trace/communities JSON.
    Detect(DetectArgs),
    /// Export a `node,score` centrality table as CSV.
    Centrality(CentralityArgs),
    /// Average detector performance over a stochastic block model grid.
    Sweep(SweepArgs),
    /// Residual community similarity over a friendship graph and
    /// preference file.
    Evaluate(EvaluateArgs),
    /// Component-count bounds and null-space diagnostics.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug)]
struct DetectArgs {
    /// Edge-list input file.
    input: PathBuf,
    /// lfvc-node | lfvc-edge | modularity | spectral | degree |
    /// betweenness | closeness | eigen | ego
    #[arg(long)]
    method: Option<String>,
    /// Node removal budget.
    #[arg(long)]
    q: Option<usize>,
    /// Edge removal budget.
    #[arg(long = "h")]
    h: Option<usize>,
    /// Stop at the first split of the working component.
    #[arg(long)]
    adaptive: bool,
    /// Remove until this many non-singleton communities exist.
    #[arg(long)]
    target_g: Option<usize>,
    /// Community count for modularity/spectral methods.
    #[arg(long)]
    g: Option<usize>,
    /// Node count override (default: one past the largest id).
    #[arg(long)]
    n: Option<usize>,
    /// Output directory for trace.json / communities.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write a Graphviz rendering (graph.dot).
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct DetectFileConfig {
    method: Option<String>,
    q: Option<usize>,
    h: Option<usize>,
    adaptive: Option<bool>,
    target_g: Option<usize>,
    g: Option<usize>,
    n: Option<usize>,
    out: Option<PathBuf>,
    dot: Option<bool>,
}

#[derive(Args, Debug)]
struct CentralityArgs {
    input: PathBuf,
    /// degree | betweenness | closeness | eigen | ego | lfvc-node
    #[arg(long)]
    kind: String,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    n_in: Option<usize>,
    #[arg(long)]
    n_out: Option<usize>,
    #[arg(long)]
    c_out: Option<f64>,
    /// Comma list (`1,1.5,2`) or range (`1:5:0.5`, inclusive).
    #[arg(long)]
    ratios: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma list of lfvc-node | lfvc-edge | spectral | modularity | l1.
    #[arg(long)]
    detectors: Option<String>,
    #[arg(long)]
    null_trials: Option<usize>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SweepFileConfig {
    n_in: Option<usize>,
    n_out: Option<usize>,
    c_out: Option<f64>,
    ratios: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    detectors: Option<String>,
    null_trials: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Friendship edge-list file.
    graph: PathBuf,
    /// `user item weight` preference file.
    #[arg(long)]
    prefs: PathBuf,
    /// lfvc-node | degree | betweenness | closeness | eigen | ego
    #[arg(long, default_value = "lfvc-node")]
    method: String,
    /// Number of node removals to evaluate.
    #[arg(long, default_value_t = 10)]
    q: usize,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    input: PathBuf,
    /// Optionally remove this many items greedily before reporting.
    #[arg(long)]
    q: Option<usize>,
    /// lfvc-node | lfvc-edge
    #[arg(long, default_value = "lfvc-node")]
    method: String,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
}

/// Entry point used by the binary: parses `std::env::args`.
pub fn run() -> i32 {
    run_from(std::env::args().collect())
}

/// Parse and execute; returns the process exit code. Split out so tests
/// can drive the CLI in-process.
pub fn run_from(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Detect(args) => cmd_detect(args),
        Command::Centrality(args) => cmd_centrality(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Bounds(args) => cmd_bounds(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::BudgetTooLarge { .. }
        | Error::EnumerationTooLarge(..) => 1,
        Error::NoConvergence(_) | Error::StaleFiedler { .. } | Error::Json(_) => 3,
        _ => 2,
    }
}

fn load_config<T: for<'de> Deserialize<'de> + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
        }
    }
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}

fn budget_from(
    q: Option<usize>,
    adaptive: bool,
    target_g: Option<usize>,
) -> Result<Budget> {
    match (q, adaptive, target_g) {
        (Some(_), true, _) | (Some(_), _, Some(_)) | (_, true, Some(_)) => Err(
            Error::InvalidParameter("choose exactly one of a fixed budget, --adaptive, or --target-g".into()),
        ),
        (Some(q), false, None) => Ok(Budget::Fixed(q)),
        (None, _, Some(g)) => Ok(Budget::TargetCommunities(g)),
        (None, _, None) => Ok(Budget::Adaptive),
    }
}

fn assignment_from_partition(communities: Vec<Vec<usize>>) -> CommunityAssignment {
    CommunityAssignment {
        schema: 1,
        communities,
        singleton_survivors: Vec::new(),
        removed: Vec::new(),
        membership: Default::default(),
    }
}

fn cmd_detect(args: DetectArgs) -> Result<()> {
    let file: DetectFileConfig = load_config(&args.config)?;
    let method = args.method.or(file.method).unwrap_or_else(|| "lfvc-node".into());
    let q = args.q.or(file.q);
    let h = args.h.or(file.h);
    let adaptive = args.adaptive || file.adaptive.unwrap_or(false);
    let target_g = args.target_g.or(file.target_g);
    let g_count = args.g.or(file.g).unwrap_or(2);
    let n = args.n.or(file.n);
    let out = if args.out == PathBuf::from(".") {
        file.out.unwrap_or(args.out)
    } else {
        args.out
    };
    let dot = args.dot || file.dot.unwrap_or(false);

    let graph = io::load_edge_list(&args.input, n)?;
    let mut trace: Option<RemovalTrace> = None;
    let assignment: CommunityAssignment = match method.as_str() {
        "lfvc-node" => {
            let t = detect::greedy_node_removal(&graph, budget_from(q, adaptive, target_g)?)?;
            let a = detect::extract_deep_communities(&graph, &t)?;
            trace = Some(t);
            a
        }
        "lfvc-edge" => {
            let t = detect::greedy_edge_removal(&graph, budget_from(h, adaptive, target_g)?)?;
            let a = detect::extract_deep_communities(&graph, &t)?;
            trace = Some(t);
            a
        }
        "modularity" => {
            if g_count == 2 {
                let (labels, q_value) = baselines::modularity_partition(&graph)?;
                eprintln!("modularity Q = {q_value:.6}");
                let side = |sign: i8| -> Vec<usize> {
                    (0..graph.node_count()).filter(|&i| labels[i] == sign).collect()
                };
                let mut communities: Vec<Vec<usize>> =
                    [side(1), side(-1)].into_iter().filter(|c| !c.is_empty()).collect();
                communities.sort_by_key(|c| c[0]);
                assignment_from_partition(communities)
            } else {
                let result = baselines::recursive_modularity(&graph, g_count)?;
                for w in &result.warnings {
                    eprintln!("warning: {w}");
                }
                eprintln!("modularity Q = {:.6}", result.q);
                result.assignment
            }
        }
        "spectral" => {
            let parts = graph.connected_components();
            let id = parts
                .largest_component_id()
                .ok_or(Error::ComponentTooSmall { size: 0, need: 2 })?;
            if parts.sizes.len() > 1 {
                eprintln!(
                    "note: graph is disconnected; clustering its largest component ({} nodes)",
                    parts.sizes[id]
                );
            }
            let lc = graph.restrict_to(&parts.members(id))?;
            baselines::spectral_clustering(&lc, g_count)?
        }
        other => {
            let kind = CentralityKind::parse(other).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown detection method `{other}`"))
            })?;
            let t =
                baselines::centrality_removal_loop(&graph, kind, budget_from(q, adaptive, target_g)?)?;
            let a = detect::extract_deep_communities(&graph, &t)?;
            trace = Some(t);
            a
        }
    };

    if let Some(t) = &trace {
        write_output(&out.join("trace.json"), &io::trace_to_json(t)?)?;
    }
    write_output(&out.join("communities.json"), &io::assignment_to_json(&assignment)?)?;
    if dot {
        write_output(&out.join("graph.dot"), &io::dot_export(&graph, &assignment))?;
    }
    println!(
        "{} communities, {} removed, {} singleton survivors",
        assignment.communities.len(),
        assignment.removed.len(),
        assignment.singleton_survivors.len()
    );
    for (k, c) in assignment.communities.iter().enumerate() {
        println!("community {k}: {} nodes", c.len());
    }
    Ok(())
}

fn cmd_centrality(args: CentralityArgs) -> Result<()> {
    let kind = CentralityKind::parse(&args.kind)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown centrality `{}`", args.kind)))?;
    let graph = io::load_edge_list(&args.input, args.n)?;
    let scores = baselines::centrality(&graph, kind)?;
    let csv = io::centrality_to_csv(&scores);
    match &args.out {
        Some(path) => write_output(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn parse_ratios(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::InvalidParameter(msg);
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("range syntax is start:end:step, got `{spec}`")));
        }
        let start: f64 = parts[0].parse().map_err(|e| bad(format!("bad range start: {e}")))?;
        let end: f64 = parts[1].parse().map_err(|e| bad(format!("bad range end: {e}")))?;
        let step: f64 = parts[2].parse().map_err(|e| bad(format!("bad range step: {e}")))?;
        if step <= 0.0 || end < start {
            return Err(bad(format!("empty or descending range `{spec}`")));
        }
        let mut ratios = Vec::new();
        let mut k = 0usize;
        loop {
            let r = start + step * k as f64;
            if r > end + 1e-9 {
                break;
            }
            ratios.push(r);
            k += 1;
        }
        Ok(ratios)
    } else {
        spec.split(',')
            .map(|s| s.trim().parse().map_err(|e| bad(format!("bad ratio `{s}`: {e}"))))
            .collect()
    }
}

fn parse_detectors(spec: &str) -> Result<Vec<Detector>> {
    spec.split(',')
        .map(|s| {
            Detector::parse(s.trim())
                .ok_or_else(|| Error::InvalidParameter(format!("unknown detector `{s}`")))
        })
        .collect()
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let file: SweepFileConfig = load_config(&args.config)?;
    let defaults = SweepConfig::default();
    let ratios = match args.ratios.or(file.ratios) {
        Some(spec) => parse_ratios(&spec)?,
        None => defaults.ratios.clone(),
    };
    let detectors = match args.detectors.or(file.detectors) {
        Some(spec) => parse_detectors(&spec)?,
        None => defaults.detectors.clone(),
    };
    let cfg = SweepConfig {
        n_in: args.n_in.or(file.n_in).unwrap_or(defaults.n_in),
        n_out: args.n_out.or(file.n_out).unwrap_or(defaults.n_out),
        c_out: args.c_out.or(file.c_out).unwrap_or(defaults.c_out),
        ratios,
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        detectors,
        null_trials: args.null_trials.or(file.null_trials).unwrap_or(defaults.null_trials),
    };
    let rows = sbm::sweep(&cfg)?;
    let csv = io::sweep_to_csv(&rows);
    match args.out.or(file.out) {
        Some(path) => write_output(&path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<()> {
    let graph = io::load_edge_list(&args.graph, args.n)?;
    let prefs = io::load_preferences(&args.prefs)?;
    let kind = CentralityKind::parse(&args.method)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown method `{}`", args.method)))?;
    let trace = baselines::centrality_removal_loop(&graph, kind, Budget::Fixed(args.q))?;

    // Replay the removal prefix step by step, scoring similarity as
    // communities are revealed.
    let mut rows: Vec<(usize, usize, f64)> = Vec::with_capacity(trace.steps.len() + 1);
    let mut prefix = RemovalTrace { steps: Vec::new(), ..trace.clone() };
    let mut final_report = None;
    for step in 0..=trace.steps.len() {
        if step > 0 {
            prefix.steps.push(trace.steps[step - 1].clone());
        }
        let assignment = detect::extract_deep_communities(&graph, &prefix)?;
        let report = metrics::rscs(&assignment, &prefs);
        rows.push((step, assignment.communities.len(), report.total));
        if step == trace.steps.len() {
            final_report = Some((assignment, report));
        }
    }
    let (assignment, report) = final_report.expect("loop ran at least once");
    if report.missing_users > 0 {
        eprintln!(
            "warning: {} community members have no preference vector",
            report.missing_users
        );
    }
    if report.zero_vectors > 0 {
        eprintln!("warning: {} community members have an all-zero vector", report.zero_vectors);
    }

    let summary = serde_json::json!({
        "schema": 1,
        "method": args.method,
        "removals": args.q,
        "rscs": report.total,
        "rcs_per_community": report.per_community,
        "missing_users": report.missing_users,
        "zero_vectors": report.zero_vectors,
        "communities": assignment.communities,
        "singleton_survivors": assignment.singleton_survivors,
        "removed": assignment.removed,
    });
    write_output(&args.out.join("evaluation.json"), &io::to_canonical_json(&summary)?)?;
    write_output(&args.out.join("rscs_curve.csv"), &io::rscs_curve_to_csv(&rows))?;
    println!(
        "RSCS = {:.6} over {} communities after {} removals",
        report.total,
        assignment.communities.len(),
        args.q
    );
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let graph = io::load_edge_list(&args.input, args.n)?;
    let (after, q) = match args.q {
        None | Some(0) => (graph.clone(), 0),
        Some(q) => {
            let trace = match args.method.as_str() {
                "lfvc-node" => detect::greedy_node_removal(&graph, Budget::Fixed(q))?,
                "lfvc-edge" => detect::greedy_edge_removal(&graph, Budget::Fixed(q))?,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "bounds supports lfvc-node or lfvc-edge removals, got `{other}`"
                    )))
                }
            };
            let after = trace.apply_to(&graph)?;
            (after, trace.removed_nodes().len())
        }
    };
    let bound = community_count_bound(&after, q);
    let parts = after.connected_components();
    let epsilon = parts.non_singleton_count;
    let psi = largest_component_via_null_basis(&after);
    let relaxed_ok = bound.relaxed.map(|r| bound.exact as f64 <= r + 1e-9).unwrap_or(true);
    let report = serde_json::json!({
        "schema": 1,
        "n": after.node_count(),
        "q": q,
        "edges": bound.edges,
        "epsilon": epsilon,
        "exact_bound": bound.exact,
        "relaxed_bound": bound.relaxed,
        "lambda_max": bound.lambda_max,
        "rank": bound.rank,
        "psi": psi,
        "psi_equals_traversal": psi == parts.largest_non_singleton(),
        "epsilon_le_exact": (epsilon as i64) <= bound.exact,
        "exact_le_relaxed": relaxed_ok,
        "exact_is_tight": (epsilon as i64) == bound.exact,
    });
    let json = io::to_canonical_json(&report)?;
    match &args.out {
        Some(path) => write_output(path, &json)?,
        None => print!("{json}"),
    }
    Ok(())
}
