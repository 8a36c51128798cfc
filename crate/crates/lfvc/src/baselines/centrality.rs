//! Classical node centralities used as comparison detectors.

use crate::error::Result;
use crate::graph::Graph;
use crate::spectral;

/// Scoring rule for [`centrality`] and the generic removal loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralityKind {
    Degree,
    Betweenness,
    Closeness,
    Eigen,
    Ego,
    /// Node-LFVC of the largest component, included so the generic removal
    /// loop reproduces the greedy detector exactly.
    NodeLfvc,
}

impl CentralityKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "degree" => Self::Degree,
            "betweenness" => Self::Betweenness,
            "closeness" => Self::Closeness,
            "eigen" => Self::Eigen,
            "ego" => Self::Ego,
            "lfvc-node" | "node-lfvc" => Self::NodeLfvc,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Degree => "degree",
            Self::Betweenness => "betweenness",
            Self::Closeness => "closeness",
            Self::Eigen => "eigen",
            Self::Ego => "ego",
            Self::NodeLfvc => "lfvc-node",
        }
    }
}

/// Node scores over the full index space (0 for removed nodes, and for
/// nodes outside the largest component where the measure needs one).
pub fn centrality(g: &Graph, kind: CentralityKind) -> Result<Vec<f64>> {
    match kind {
        CentralityKind::Degree => Ok((0..g.node_count()).map(|i| g.degree(i) as f64).collect()),
        CentralityKind::Betweenness => Ok(betweenness(g)),
        CentralityKind::Closeness => Ok(closeness(g)),
        CentralityKind::Eigen => eigen_centrality(g),
        CentralityKind::Ego => Ok(ego_centrality(g)),
        CentralityKind::NodeLfvc => node_lfvc_centrality(g),
    }
}

/// Brandes' dependency accumulation; raw sums over unordered pairs
/// `k < j`, no pair-count normalization.
fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if !g.is_active(s) {
            continue;
        }
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s] = 1.0;
        dist[s] = 0;
        stack.clear();
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    pred[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &pred[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    // Each unordered pair was counted from both endpoints.
    for x in score.iter_mut() {
        *x /= 2.0;
    }
    score
}

/// `1 / sum of shortest-path distances`, taken within each connected
/// component; isolated nodes score 0.
fn closeness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if !g.is_active(s) {
            continue;
        }
        let mut dist = vec![-1i64; n];
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        let mut total = 0i64;
        while let Some(v) = queue.pop_front() {
            total += dist[v];
            for &w in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if total > 0 {
            score[s] = 1.0 / total as f64;
        }
    }
    score
}

/// Perron vector of the largest component's adjacency matrix.
fn eigen_centrality(g: &Graph) -> Result<Vec<f64>> {
    let parts = g.connected_components();
    let mut score = vec![0.0; g.node_count()];
    let id = match parts.largest_component_id() {
        Some(id) if parts.sizes[id] >= 2 => id,
        _ => return Ok(score),
    };
    let members = parts.members(id);
    let sub = g.restrict_to(&members)?;
    let pair = spectral::leading_adjacency_eigenpair(&sub)?;
    for (k, &v) in members.iter().enumerate() {
        score[v] = pair.vector[k];
    }
    Ok(score)
}

/// Ego betweenness: reciprocal two-hop shortest-path counts between
/// non-adjacent pairs of the ego network. Pairs with a direct edge or no
/// two-hop path contribute 0.
fn ego_centrality(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    for i in 0..n {
        if !g.is_active(i) {
            continue;
        }
        let mut local: Vec<usize> = Vec::with_capacity(g.degree(i) + 1);
        local.push(i);
        local.extend_from_slice(g.neighbors(i));
        let d = local.len();
        let mut adj = vec![vec![false; d]; d];
        for (a, &va) in local.iter().enumerate() {
            for (b, &vb) in local.iter().enumerate() {
                if a != b && g.has_edge(va, vb) {
                    adj[a][b] = true;
                }
            }
        }
        let mut acc = 0.0;
        for a in 0..d {
            for b in a + 1..d {
                if adj[a][b] {
                    continue;
                }
                let two_hop = (0..d).filter(|&k| adj[a][k] && adj[k][b]).count();
                if two_hop > 0 {
                    acc += 1.0 / two_hop as f64;
                }
            }
        }
        score[i] = acc;
    }
    score
}

fn node_lfvc_centrality(g: &Graph) -> Result<Vec<f64>> {
    let parts = g.connected_components();
    let id = match parts.largest_component_id() {
        Some(id) if parts.sizes[id] >= 2 => id,
        _ => return Ok(vec![0.0; g.node_count()]),
    };
    let members = parts.members(id);
    let sub = g.restrict_to(&members)?;
    let fied = spectral::fiedler(&sub)?;
    let scores = crate::detect::lfvc_scores(&sub, &fied)?;
    Ok(scores.node)
}
