//! Local Fiedler vector centrality and greedy deep-community detection.
//!
//! The edge score of `(i, j)` is `(y_i - y_j)^2` for the Fiedler vector
//! `y` of the component under examination; the node score is the sum over
//! incident edges. Removing high-scoring items maximally tightens the
//! upper bound on the algebraic connectivity of the remaining graph, and
//! the batch objective extends to the set function
//!
//! `f(R) = sum_{i in R} sum_{j in N(i)} (y_i - y_j)^2
//!         - 1/2 sum_{i,j in R} A_ij (y_i - y_j)^2`,
//!
//! which is nonnegative, monotone and submodular, so the greedy maximizer
//! is within a factor `1 - (1 - 1/q)^q` of the optimal batch removal. The
//! detector itself recomputes the Fiedler vector of the largest remaining
//! component at every stage; the fixed-vector set function and its
//! brute-force maximizer are exposed separately so the guarantee can be
//! checked as stated.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{self, FiedlerResult, SpectralOptions};

/// Edge and node LFVC scores derived from one Fiedler vector.
///
/// `node[i]` is exactly the sum of `edge[(i, j)]` over the sorted
/// neighbors `j` of `i`; both are zero for items outside the component the
/// vector was computed on.
#[derive(Debug, Clone, PartialEq)]
pub struct LfvcScores {
    /// Per-node score over the full index space.
    pub node: Vec<f64>,
    /// Per active edge, keyed `(min, max)`.
    pub edge: BTreeMap<(usize, usize), f64>,
}

fn check_fiedler(g: &Graph, f: &FiedlerResult) -> Result<()> {
    if f.vector.len() != f.nodes.len() {
        return Err(Error::StaleFiedler { got: f.vector.len(), want: f.nodes.len() });
    }
    for &v in &f.nodes {
        if !g.is_active(v) {
            return Err(Error::StaleFiedler { got: f.nodes.len(), want: g.active_count() });
        }
    }
    Ok(())
}

/// Scores for every active edge and node of `g` under `f`.
pub fn lfvc_scores(g: &Graph, f: &FiedlerResult) -> Result<LfvcScores> {
    check_fiedler(g, f)?;
    let mut value = vec![None; g.node_count()];
    for (k, &v) in f.nodes.iter().enumerate() {
        value[v] = Some(f.vector[k]);
    }
    let mut edge = BTreeMap::new();
    for (i, j) in g.edges() {
        let s = match (value[i], value[j]) {
            (Some(a), Some(b)) => (a - b) * (a - b),
            _ => 0.0,
        };
        edge.insert((i, j), s);
    }
    let mut node = vec![0.0; g.node_count()];
    for i in 0..g.node_count() {
        let mut acc = 0.0;
        for &j in g.neighbors(i) {
            acc += edge[&(i.min(j), i.max(j))];
        }
        node[i] = acc;
    }
    Ok(LfvcScores { node, edge })
}

/// Edge-LFVC scores (`(y_i - y_j)^2` per active edge).
pub fn edge_lfvc(g: &Graph, f: &FiedlerResult) -> Result<LfvcScores> {
    lfvc_scores(g, f)
}

/// Node-LFVC scores (sum of incident edge scores).
pub fn node_lfvc(g: &Graph, f: &FiedlerResult) -> Result<LfvcScores> {
    lfvc_scores(g, f)
}

fn fiedler_value(g: &Graph, f: &FiedlerResult) -> Result<Vec<Option<f64>>> {
    check_fiedler(g, f)?;
    let mut value = vec![None; g.node_count()];
    for (k, &v) in f.nodes.iter().enumerate() {
        value[v] = Some(f.vector[k]);
    }
    Ok(value)
}

fn diff_sq(value: &[Option<f64>], i: usize, j: usize) -> f64 {
    match (value[i], value[j]) {
        (Some(a), Some(b)) => (a - b) * (a - b),
        _ => 0.0,
    }
}

fn validate_set(g: &Graph, r: &[usize]) -> Result<Vec<usize>> {
    for &i in r {
        if i >= g.node_count() {
            return Err(Error::NodeOutOfRange { id: i, n: g.node_count() });
        }
        if !g.is_active(i) {
            return Err(Error::NodeInactive(i));
        }
    }
    let mut members: Vec<usize> = r.to_vec();
    members.sort_unstable();
    members.dedup();
    Ok(members)
}

/// The removal set function `f(R)` for a fixed Fiedler vector.
pub fn f_set(g: &Graph, f: &FiedlerResult, r: &[usize]) -> Result<f64> {
    let value = fiedler_value(g, f)?;
    let members = validate_set(g, r)?;
    let mut set = vec![false; g.node_count()];
    for &i in &members {
        set[i] = true;
    }
    let mut incident = 0.0;
    let mut internal = 0.0;
    for &i in &members {
        for &j in g.neighbors(i) {
            let d = diff_sq(&value, i, j);
            incident += d;
            if set[j] && j > i {
                internal += d;
            }
        }
    }
    Ok(incident - internal)
}

/// The same quantity in its partitioned form,
/// `1/2 sum_{i in R} node(i) + 1/2 sum_{i in R, j not in R} A_ij (y_i-y_j)^2`.
/// Agrees with [`f_set`] to roundoff; kept separate so the identity can be
/// checked rather than assumed.
pub fn f_set_partition_form(g: &Graph, f: &FiedlerResult, r: &[usize]) -> Result<f64> {
    let value = fiedler_value(g, f)?;
    let members = validate_set(g, r)?;
    let mut set = vec![false; g.node_count()];
    for &i in &members {
        set[i] = true;
    }
    let mut incident = 0.0;
    let mut boundary = 0.0;
    for &i in &members {
        for &j in g.neighbors(i) {
            let d = diff_sq(&value, i, j);
            incident += d;
            if !set[j] {
                boundary += d;
            }
        }
    }
    Ok(0.5 * incident + 0.5 * boundary)
}

/// Removal budget for the greedy detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Remove exactly this many items.
    Fixed(usize),
    /// Stop as soon as the component being worked on splits into at least
    /// two non-singleton pieces.
    Adaptive,
    /// Stop once the whole graph has at least this many non-singleton
    /// components.
    TargetCommunities(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalMode {
    Node,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    BudgetExhausted,
    Disconnected,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovedItem {
    Node(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovalStep {
    pub removed: RemovedItem,
    pub score: f64,
    pub lambda2_before: f64,
    /// Algebraic connectivity of the largest remaining component, absent
    /// when no component with >= 2 nodes survives.
    pub lambda2_after: Option<f64>,
    pub nonsingleton_components_after: usize,
    pub largest_nonsingleton_after: usize,
    pub degenerate_fiedler: bool,
}

/// Ordered record of one greedy removal run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovalTrace {
    pub schema: u32,
    pub mode: RemovalMode,
    pub stop_reason: StopReason,
    /// Index-space size of the input graph.
    pub n: usize,
    pub initial_lambda2: f64,
    pub initial_nonsingleton_components: usize,
    pub initial_largest_nonsingleton: usize,
    pub steps: Vec<RemovalStep>,
}

impl RemovalTrace {
    /// Nodes removed, in removal order (empty for edge mode).
    pub fn removed_nodes(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s.removed {
                RemovedItem::Node(i) => Some(i),
                RemovedItem::Edge(..) => None,
            })
            .collect()
    }

    /// Replay the recorded removals against `g`.
    pub fn apply_to(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        for step in &self.steps {
            out = match step.removed {
                RemovedItem::Node(i) => out.remove_node(i)?,
                RemovedItem::Edge(i, j) => out.remove_edge(i, j)?,
            };
        }
        Ok(out)
    }
}

/// Deep communities extracted from a finished removal run. Removed nodes
/// may belong to several communities; singleton survivors belong to none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityAssignment {
    pub schema: u32,
    /// Non-singleton components of the post-removal graph, each sorted,
    /// ordered by smallest member.
    pub communities: Vec<Vec<usize>>,
    pub singleton_survivors: Vec<usize>,
    /// Removed nodes in removal order.
    pub removed: Vec<usize>,
    /// Community indices each removed node connects to in the original
    /// adjacency.
    pub membership: BTreeMap<usize, Vec<usize>>,
}

struct Stage {
    work: Vec<usize>,
    fiedler: FiedlerResult,
}

fn stage_for(g: &Graph, opts: &SpectralOptions) -> Result<Option<Stage>> {
    let parts = g.connected_components();
    let id = match parts.largest_component_id() {
        Some(id) => id,
        None => return Ok(None),
    };
    let work = parts.members(id);
    if work.len() < 2 {
        return Ok(None);
    }
    let restricted = g.restrict_to(&work)?;
    let fiedler = spectral::fiedler_with(&restricted, opts)?;
    Ok(Some(Stage { work, fiedler }))
}

/// Count the non-singleton pieces the working component broke into.
fn split_pieces(g_next: &Graph, work: &[usize], removed: Option<usize>) -> usize {
    let parts = g_next.connected_components();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in work {
        if Some(v) == removed {
            continue;
        }
        if let Some(label) = parts.labels[v] {
            *sizes.entry(label).or_insert(0) += 1;
        }
    }
    sizes.values().filter(|&&s| s >= 2).count()
}

fn run_greedy(
    g: &Graph,
    mode: RemovalMode,
    budget: Budget,
    opts: &SpectralOptions,
) -> Result<RemovalTrace> {
    match budget {
        Budget::Fixed(0) => {
            return Err(Error::InvalidParameter("removal budget must be at least 1".into()))
        }
        Budget::Fixed(q) => {
            let parts = g.connected_components();
            let largest = parts.largest_non_singleton();
            match mode {
                RemovalMode::Node => {
                    if largest < 2 || q > largest - 2 {
                        return Err(Error::BudgetTooLarge {
                            budget: q,
                            max: largest.saturating_sub(2),
                        });
                    }
                }
                RemovalMode::Edge => {
                    if q > g.edge_count() {
                        return Err(Error::InvalidParameter(format!(
                            "edge budget {q} exceeds edge count {}",
                            g.edge_count()
                        )));
                    }
                }
            }
        }
        Budget::TargetCommunities(t) if t < 2 => {
            return Err(Error::InvalidParameter("community target must be at least 2".into()))
        }
        _ => {}
    }

    let initial_parts = g.connected_components();
    let mut trace = RemovalTrace {
        schema: 1,
        mode,
        stop_reason: StopReason::Degenerate,
        n: g.node_count(),
        initial_lambda2: 0.0,
        initial_nonsingleton_components: initial_parts.non_singleton_count,
        initial_largest_nonsingleton: initial_parts.largest_non_singleton(),
        steps: Vec::new(),
    };

    if let Budget::TargetCommunities(t) = budget {
        if initial_parts.non_singleton_count >= t {
            trace.stop_reason = StopReason::Disconnected;
            return Ok(trace);
        }
    }

    let mut current = g.clone();
    let mut stage = stage_for(&current, opts)?;
    trace.initial_lambda2 = stage.as_ref().map(|s| s.fiedler.lambda2).unwrap_or(0.0);

    loop {
        let Some(Stage { work, fiedler }) = stage else {
            trace.stop_reason = StopReason::Degenerate;
            return Ok(trace);
        };

        let scores = lfvc_scores(&current, &fiedler)?;
        let (removed_item, score, removed_node) = match mode {
            RemovalMode::Node => {
                let mut best: Option<(usize, f64)> = None;
                for &i in &work {
                    let s = scores.node[i];
                    if best.map(|(_, bs)| s > bs).unwrap_or(true) {
                        best = Some((i, s));
                    }
                }
                let (i, s) = best.expect("working component is non-empty");
                (RemovedItem::Node(i), s, Some(i))
            }
            RemovalMode::Edge => {
                let mut best: Option<((usize, usize), f64)> = None;
                for (&(i, j), &s) in &scores.edge {
                    if fiedler.value_of(i).is_none() {
                        continue;
                    }
                    if best.map(|(_, bs)| s > bs).unwrap_or(true) {
                        best = Some(((i, j), s));
                    }
                }
                let ((i, j), s) = best.ok_or(Error::EmptyEdgeSet)?;
                (RemovedItem::Edge(i, j), s, None)
            }
        };

        let next = match removed_item {
            RemovedItem::Node(i) => current.remove_node(i)?,
            RemovedItem::Edge(i, j) => current.remove_edge(i, j)?,
        };

        let next_parts = next.connected_components();
        let next_stage = stage_for(&next, opts)?;
        trace.steps.push(RemovalStep {
            removed: removed_item,
            score,
            lambda2_before: fiedler.lambda2,
            lambda2_after: next_stage.as_ref().map(|s| s.fiedler.lambda2),
            nonsingleton_components_after: next_parts.non_singleton_count,
            largest_nonsingleton_after: next_parts.largest_non_singleton(),
            degenerate_fiedler: fiedler.degenerate,
        });

        let done = match budget {
            Budget::Fixed(q) => trace.steps.len() >= q,
            Budget::Adaptive => split_pieces(&next, &work, removed_node) >= 2,
            Budget::TargetCommunities(t) => next_parts.non_singleton_count >= t,
        };
        if done {
            trace.stop_reason = match budget {
                Budget::Fixed(_) => StopReason::BudgetExhausted,
                _ => StopReason::Disconnected,
            };
            return Ok(trace);
        }
        current = next;
        stage = next_stage;
    }
}

/// Greedy node removal: at every stage recompute the Fiedler vector of the
/// largest component, remove the node with the highest node-LFVC (ties to
/// the lowest id).
pub fn greedy_node_removal(g: &Graph, budget: Budget) -> Result<RemovalTrace> {
    run_greedy(g, RemovalMode::Node, budget, &SpectralOptions::default())
}

pub fn greedy_node_removal_with(
    g: &Graph,
    budget: Budget,
    opts: &SpectralOptions,
) -> Result<RemovalTrace> {
    run_greedy(g, RemovalMode::Node, budget, opts)
}

/// Greedy edge removal: the edge with the highest edge-LFVC goes first
/// (ties lexicographic on `(min, max)`).
pub fn greedy_edge_removal(g: &Graph, budget: Budget) -> Result<RemovalTrace> {
    run_greedy(g, RemovalMode::Edge, budget, &SpectralOptions::default())
}

pub fn greedy_edge_removal_with(
    g: &Graph,
    budget: Budget,
    opts: &SpectralOptions,
) -> Result<RemovalTrace> {
    run_greedy(g, RemovalMode::Edge, budget, opts)
}

/// Deep communities of the post-removal graph plus mixed membership of the
/// removed nodes, judged against the original adjacency.
pub fn extract_deep_communities(
    g_original: &Graph,
    trace: &RemovalTrace,
) -> Result<CommunityAssignment> {
    let after = trace.apply_to(g_original)?;
    let parts = after.connected_components();
    let mut communities = Vec::new();
    let mut singleton_survivors = Vec::new();
    for (id, &size) in parts.sizes.iter().enumerate() {
        if size >= 2 {
            communities.push(parts.members(id));
        } else {
            singleton_survivors.extend(parts.members(id));
        }
    }
    singleton_survivors.sort_unstable();
    let removed = trace.removed_nodes();
    let mut membership = BTreeMap::new();
    for &r in &removed {
        let mut joins = Vec::new();
        for (k, community) in communities.iter().enumerate() {
            if community.iter().any(|&j| g_original.has_edge(r, j)) {
                joins.push(k);
            }
        }
        membership.insert(r, joins);
    }
    Ok(CommunityAssignment {
        schema: 1,
        communities,
        singleton_survivors,
        removed,
        membership,
    })
}

/// Guard on the brute-force subset enumeration.
pub const BRUTE_FORCE_GUARD: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact maximizer of `f` over all `q`-subsets of the active nodes, by
/// exhaustive enumeration in lexicographic order (the first maximizer
/// wins, so ties resolve lexicographically).
pub fn brute_force_optimal_removal(
    g: &Graph,
    f: &FiedlerResult,
    q: usize,
) -> Result<(Vec<usize>, f64)> {
    if q == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let nodes = g.active_nodes();
    if q > nodes.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot choose {q} nodes from {}",
            nodes.len()
        )));
    }
    let count = binomial(nodes.len(), q);
    if count > BRUTE_FORCE_GUARD {
        return Err(Error::EnumerationTooLarge(count, BRUTE_FORCE_GUARD));
    }
    let mut idx: Vec<usize> = (0..q).collect();
    let mut best_set = Vec::new();
    let mut best_val = f64::NEG_INFINITY;
    loop {
        let subset: Vec<usize> = idx.iter().map(|&k| nodes[k]).collect();
        let val = f_set(g, f, &subset)?;
        if val > best_val {
            best_val = val;
            best_set = subset;
        }
        // Advance to the next combination, rightmost index first.
        let mut pos = q;
        loop {
            if pos == 0 {
                return Ok((best_set, best_val));
            }
            pos -= 1;
            if idx[pos] != pos + nodes.len() - q {
                idx[pos] += 1;
                for later in pos + 1..q {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Greedy maximizer of the fixed-vector set function (not the staged
/// detector): grows `R` one node at a time by best marginal gain, ties to
/// the lowest node id.
pub fn greedy_fixed_vector(g: &Graph, f: &FiedlerResult, q: usize) -> Result<(Vec<usize>, f64)> {
    let nodes = g.active_nodes();
    if q > nodes.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot choose {q} nodes from {}",
            nodes.len()
        )));
    }
    let mut r: Vec<usize> = Vec::new();
    let mut current = 0.0;
    for _ in 0..q {
        let mut best: Option<(usize, f64)> = None;
        for &v in &nodes {
            if r.contains(&v) {
                continue;
            }
            let mut candidate = r.clone();
            candidate.push(v);
            let val = f_set(g, f, &candidate)?;
            if best.map(|(_, bv)| val > bv).unwrap_or(true) {
                best = Some((v, val));
            }
        }
        let (v, val) = best.expect("q <= node count");
        r.push(v);
        current = val;
    }
    r.sort_unstable();
    Ok((r, current))
}

/// Outcome of checking the greedy approximation guarantee on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyBoundReport {
    pub q: usize,
    pub f_greedy: f64,
    pub f_optimal: f64,
    /// `1 - (1 - 1/q)^q`, the guaranteed fraction of the optimum.
    pub guarantee_factor: f64,
    pub guarantee_holds: bool,
    pub lambda2_before: f64,
    /// Second-smallest Laplacian eigenvalue over the full index space
    /// after removing the greedy set in one batch.
    pub lambda2_after_greedy: f64,
    /// `lambda2 - (1 - 1/e) f(R_opt)`, the guaranteed ceiling.
    pub lambda2_ceiling: f64,
    pub lambda2_bound_holds: bool,
}

/// Compare the fixed-vector greedy set against the brute-force optimum and
/// verify both guarantees.
pub fn greedy_bound_check(g: &Graph, q: usize) -> Result<GreedyBoundReport> {
    let parts = g.connected_components();
    let id = parts
        .largest_component_id()
        .ok_or(Error::ComponentTooSmall { size: 0, need: 2 })?;
    let work = parts.members(id);
    let restricted = g.restrict_to(&work)?;
    let fiedler = spectral::fiedler(&restricted)?;

    let (greedy_set, f_greedy) = greedy_fixed_vector(g, &fiedler, q)?;
    let (_, f_optimal) = brute_force_optimal_removal(g, &fiedler, q)?;
    let guarantee_factor =
        if q == 0 { 1.0 } else { 1.0 - (1.0 - 1.0 / q as f64).powi(q as i32) };
    let guarantee_holds = f_greedy + 1e-12 >= guarantee_factor * f_optimal;

    let mut after = g.clone();
    for &v in &greedy_set {
        after = after.remove_node(v)?;
    }
    let lambda2_after_greedy = spectral::lambda2_in_index_space(&after);
    let lambda2_ceiling = fiedler.lambda2 - (1.0 - std::f64::consts::E.recip()) * f_optimal;
    let lambda2_bound_holds = lambda2_after_greedy <= lambda2_ceiling + 1e-9;

    Ok(GreedyBoundReport {
        q,
        f_greedy,
        f_optimal,
        guarantee_factor,
        guarantee_holds,
        lambda2_before: fiedler.lambda2,
        lambda2_after_greedy,
        lambda2_ceiling,
        lambda2_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::fiedler;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(&edges, n).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(&[(0, 1)], 2).unwrap()
    }

    #[test]
    fn p3_scores() {
        let g = path(3);
        let f = fiedler(&g).unwrap();
        let s = lfvc_scores(&g, &f).unwrap();
        assert!((s.edge[&(0, 1)] - 0.5).abs() < 1e-10);
        assert!((s.edge[&(1, 2)] - 0.5).abs() < 1e-10);
        assert!((s.node[0] - 0.5).abs() < 1e-10);
        assert!((s.node[1] - 1.0).abs() < 1e-10);
        assert!((s.node[2] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn p4_scores_and_middle_edge_max() {
        let g = path(4);
        let f = fiedler(&g).unwrap();
        let s = lfvc_scores(&g, &f).unwrap();
        assert!((s.edge[&(1, 2)] - 0.2928932188134525).abs() < 1e-9);
        assert!((s.edge[&(0, 1)] - 0.1464466094067262).abs() < 1e-9);
        assert!((s.edge[&(2, 3)] - 0.1464466094067262).abs() < 1e-9);
        let max = s.edge.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert_eq!(*max.0, (1, 2));
        assert!((s.node[1] - 0.4393398282201787).abs() < 1e-9);
        assert!((s.node[0] - 0.1464466094067262).abs() < 1e-9);
    }

    #[test]
    fn k2_scores() {
        let g = k2();
        let f = fiedler(&g).unwrap();
        let s = lfvc_scores(&g, &f).unwrap();
        assert!((s.edge[&(0, 1)] - 2.0).abs() < 1e-10);
        assert!((s.node[0] - 2.0).abs() < 1e-10);
        assert!((s.node[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn node_score_is_sum_of_incident_edge_scores_exactly() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], 4).unwrap();
        let f = fiedler(&g).unwrap();
        let s = lfvc_scores(&g, &f).unwrap();
        for i in 0..4 {
            let sum: f64 =
                g.neighbors(i).iter().map(|&j| s.edge[&(i.min(j), i.max(j))]).sum();
            assert_eq!(s.node[i], sum);
        }
    }

    #[test]
    fn scores_are_invariant_to_vector_sign() {
        let g = path(5);
        let f = fiedler(&g).unwrap();
        let mut flipped = f.clone();
        for x in flipped.vector.iter_mut() {
            *x = -*x;
        }
        let a = lfvc_scores(&g, &f).unwrap();
        let b = lfvc_scores(&g, &flipped).unwrap();
        assert_eq!(a.node, b.node);
        assert_eq!(a.edge, b.edge);
    }

    #[test]
    fn stale_fiedler_is_rejected() {
        let g = path(4);
        let f = fiedler(&g).unwrap();
        let smaller = g.remove_node(3).unwrap();
        assert!(matches!(lfvc_scores(&smaller, &f), Err(Error::StaleFiedler { .. })));
    }

    #[test]
    fn f_set_examples() {
        let g = path(4);
        let f = fiedler(&g).unwrap();
        assert_eq!(f_set(&g, &f, &[]).unwrap(), 0.0);

        // Singletons reduce to node-LFVC.
        let s = lfvc_scores(&g, &f).unwrap();
        for i in 0..4 {
            assert!((f_set(&g, &f, &[i]).unwrap() - s.node[i]).abs() < 1e-14);
        }

        // r = {1, 2}: twice the middle node score minus the shared edge.
        let val = f_set(&g, &f, &[1, 2]).unwrap();
        assert!((val - 0.5857864376269049).abs() < 1e-9);
        let alt = f_set_partition_form(&g, &f, &[1, 2]).unwrap();
        assert!((val - alt).abs() <= 1e-12);
    }

    #[test]
    fn f_set_rejects_invalid_nodes() {
        let g = path(3);
        let f = fiedler(&g).unwrap();
        assert!(f_set(&g, &f, &[7]).is_err());
    }

    #[test]
    fn greedy_node_on_p3_removes_center() {
        let trace = greedy_node_removal(&path(3), Budget::Fixed(1)).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].removed, RemovedItem::Node(1));
        assert_eq!(trace.stop_reason, StopReason::BudgetExhausted);
        assert_eq!(trace.steps[0].nonsingleton_components_after, 0);
    }

    #[test]
    fn greedy_edge_on_p4_removes_middle() {
        let trace = greedy_edge_removal(&path(4), Budget::Fixed(1)).unwrap();
        assert_eq!(trace.steps[0].removed, RemovedItem::Edge(1, 2));
        let after = trace.apply_to(&path(4)).unwrap();
        let parts = after.connected_components();
        assert_eq!(parts.sizes, vec![2, 2]);
    }

    #[test]
    fn budget_validation() {
        assert!(matches!(
            greedy_node_removal(&path(3), Budget::Fixed(2)),
            Err(Error::BudgetTooLarge { .. })
        ));
        assert!(greedy_node_removal(&path(3), Budget::Fixed(0)).is_err());
    }

    #[test]
    fn communities_after_p3_center_removal() {
        let g = path(3);
        let trace = greedy_node_removal(&g, Budget::Fixed(1)).unwrap();
        let a = extract_deep_communities(&g, &trace).unwrap();
        assert!(a.communities.is_empty());
        assert_eq!(a.singleton_survivors, vec![0, 2]);
        assert_eq!(a.removed, vec![1]);
        assert_eq!(a.membership[&1], Vec::<usize>::new());
    }

    #[test]
    fn adaptive_stops_on_working_component_split() {
        // Two triangles joined through node 3.
        let g = Graph::from_edges(
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)],
            7,
        )
        .unwrap();
        let trace = greedy_node_removal(&g, Budget::Adaptive).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Disconnected);
        let a = extract_deep_communities(&g, &trace).unwrap();
        assert_eq!(a.communities.len(), 2);
    }

    #[test]
    fn adaptive_on_a_single_edge_stops_degenerate() {
        // K2 can never split into two non-singleton pieces; the run ends
        // when no workable component remains.
        let trace = greedy_node_removal(&k2(), Budget::Adaptive).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Degenerate);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn target_communities_stops_immediately_when_already_met() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)], 4).unwrap();
        let trace = greedy_node_removal(&g, Budget::TargetCommunities(2)).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.stop_reason, StopReason::Disconnected);
    }

    #[test]
    fn brute_force_trivial_cases() {
        let g = path(4);
        let f = fiedler(&g).unwrap();
        let (set, val) = brute_force_optimal_removal(&g, &f, 0).unwrap();
        assert!(set.is_empty() && val == 0.0);

        // q = 1 is the node-LFVC argmax.
        let (set, val) = brute_force_optimal_removal(&g, &f, 1).unwrap();
        let s = lfvc_scores(&g, &f).unwrap();
        let best = (0..4).max_by(|&a, &b| s.node[a].total_cmp(&s.node[b])).unwrap();
        assert_eq!(set, vec![best]);
        assert!((val - s.node[best]).abs() < 1e-14);
    }

    #[test]
    fn brute_force_p4_pair() {
        let g = path(4);
        let f = fiedler(&g).unwrap();
        let (set, val) = brute_force_optimal_removal(&g, &f, 2).unwrap();
        assert!((val - 0.585786437626905).abs() < 1e-9);
        // The returned set must achieve the reported value exactly.
        assert_eq!(f_set(&g, &f, &set).unwrap(), val);
    }

    #[test]
    fn brute_force_exact_tie_is_lexicographic() {
        let g = k2();
        let f = fiedler(&g).unwrap();
        let (set, _) = brute_force_optimal_removal(&g, &f, 1).unwrap();
        assert_eq!(set, vec![0]);
    }

    #[test]
    fn greedy_bound_q1_gap_zero() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)], 4).unwrap();
        let report = greedy_bound_check(&g, 1).unwrap();
        assert!((report.f_greedy - report.f_optimal).abs() < 1e-12);
        assert!(report.guarantee_holds);
        assert!(report.lambda2_bound_holds);
    }

    #[test]
    fn monotone_and_submodular_on_small_graph() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)], 5).unwrap();
        let f = fiedler(&g).unwrap();
        let r1 = vec![0];
        let r2 = vec![0, 2];
        let f1 = f_set(&g, &f, &r1).unwrap();
        let f2 = f_set(&g, &f, &r2).unwrap();
        assert!(f2 >= f1 - 1e-12);
        for v in [1usize, 3, 4] {
            let g1 = f_set(&g, &f, &[0, v]).unwrap() - f1;
            let g2 = f_set(&g, &f, &[0, 2, v]).unwrap() - f2;
            assert!(g1 >= g2 - 1e-12);
        }
    }
}
