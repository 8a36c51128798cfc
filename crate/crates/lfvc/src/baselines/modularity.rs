//! Modularity partitioning: the two-way spectral split and Newman's
//! recursive subdivision.

use crate::detect::CommunityAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral;

/// Two-way split from the sign pattern of the leading modularity
/// eigenvector. Returns per-node labels (+1/-1 over active nodes, 0 for
/// removed ones) and the modularity `Q` of the split.
pub fn modularity_partition(g: &Graph) -> Result<(Vec<i8>, f64)> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let pair = spectral::modularity_spectrum(g, 1)?.remove(0);
    let nodes = g.active_nodes();
    let mut labels = vec![0i8; g.node_count()];
    for (k, &v) in nodes.iter().enumerate() {
        // Zero entries side with +1.
        labels[v] = if pair.vector[k] >= 0.0 { 1 } else { -1 };
    }
    let q = modularity_of_labels(g, &labels);
    Ok((labels, q))
}

/// `Q = (1/4m) s^T B s`, expanded through the edge list as
/// `(2 sum_{(i,j) in E} s_i s_j - (sum_i d_i s_i)^2 / 2m) / 4m`.
pub fn modularity_of_labels(g: &Graph, labels: &[i8]) -> f64 {
    let two_m = 2.0 * g.edge_count() as f64;
    let mut edge_term = 0.0;
    for (i, j) in g.edges() {
        edge_term += 2.0 * (labels[i] as f64) * (labels[j] as f64);
    }
    let mut ds = 0.0;
    for i in 0..g.node_count() {
        if g.is_active(i) {
            ds += g.degree(i) as f64 * labels[i] as f64;
        }
    }
    (edge_term - ds * ds / two_m) / (2.0 * two_m)
}

/// Result of the recursive subdivision.
#[derive(Debug, Clone)]
pub struct RecursiveModularity {
    pub assignment: CommunityAssignment,
    /// Total modularity of the final partition.
    pub q: f64,
    pub warnings: Vec<String>,
}

/// Newman's recursive approach: repeatedly split the community whose best
/// two-way division adds the most modularity, until `g_count` communities
/// exist or no split has positive gain.
pub fn recursive_modularity(g: &Graph, g_count: usize) -> Result<RecursiveModularity> {
    if g_count < 2 {
        return Err(Error::InvalidParameter(format!(
            "community count must be at least 2, got {g_count}"
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let mut communities: Vec<Vec<usize>> = vec![g.active_nodes()];
    let mut warnings = Vec::new();

    while communities.len() < g_count {
        let mut best: Option<(usize, Vec<usize>, Vec<usize>, f64)> = None;
        for (idx, comm) in communities.iter().enumerate() {
            if comm.len() < 2 {
                continue;
            }
            if let Some((side_a, side_b, gain)) = best_split(g, comm, two_m) {
                if best.as_ref().map(|b| gain > b.3).unwrap_or(true) {
                    best = Some((idx, side_a, side_b, gain));
                }
            }
        }
        match best {
            Some((idx, a, b, gain)) if gain > 1e-12 => {
                communities.remove(idx);
                communities.push(a);
                communities.push(b);
            }
            _ => {
                warnings.push(format!(
                    "no positive-modularity split available; stopping at {} communities",
                    communities.len()
                ));
                break;
            }
        }
    }
    communities.sort_by_key(|c| c[0]);
    let q = partition_modularity(g, &communities);
    Ok(RecursiveModularity {
        assignment: CommunityAssignment {
            schema: 1,
            communities,
            singleton_survivors: Vec::new(),
            removed: Vec::new(),
            membership: Default::default(),
        },
        q,
        warnings,
    })
}

/// Best sign-split of one community under the generalized modularity
/// matrix `B^(C)_ij = B_ij - delta_ij sum_{k in C} B_ik`.
fn best_split(g: &Graph, comm: &[usize], two_m: f64) -> Option<(Vec<usize>, Vec<usize>, f64)> {
    let d = comm.len();
    let mut pos = std::collections::HashMap::new();
    for (k, &v) in comm.iter().enumerate() {
        pos.insert(v, k);
    }
    let mut b = nalgebra::DMatrix::zeros(d, d);
    for (k, &v) in comm.iter().enumerate() {
        let dv = g.degree(v) as f64;
        for (l, &w) in comm.iter().enumerate() {
            let a = if g.has_edge(v, w) { 1.0 } else { 0.0 };
            b[(k, l)] = a - dv * g.degree(w) as f64 / two_m;
        }
    }
    for k in 0..d {
        let row_sum: f64 = (0..d).map(|l| b[(k, l)]).sum();
        b[(k, k)] -= row_sum;
    }
    let (values, vectors) = spectral::sorted_symmetric_eigen(b.clone());
    let lead = values[d - 1];
    if lead <= 1e-12 {
        return None;
    }
    let mut s = vec![1.0f64; d];
    for k in 0..d {
        if vectors[(k, d - 1)] < 0.0 {
            s[k] = -1.0;
        }
    }
    let mut gain = 0.0;
    for k in 0..d {
        for l in 0..d {
            gain += b[(k, l)] * s[k] * s[l];
        }
    }
    gain /= 2.0 * two_m;
    let side_a: Vec<usize> = comm.iter().enumerate().filter(|(k, _)| s[*k] > 0.0).map(|(_, &v)| v).collect();
    let side_b: Vec<usize> = comm.iter().enumerate().filter(|(k, _)| s[*k] < 0.0).map(|(_, &v)| v).collect();
    if side_a.is_empty() || side_b.is_empty() || gain <= 0.0 {
        return None;
    }
    Some((side_a, side_b, gain))
}

/// Modularity of a full partition: `(1/2m) sum_{ij in same community}
/// (A_ij - d_i d_j / 2m)`.
pub fn partition_modularity(g: &Graph, communities: &[Vec<usize>]) -> f64 {
    let two_m = 2.0 * g.edge_count() as f64;
    if two_m == 0.0 {
        return 0.0;
    }
    let mut label = vec![usize::MAX; g.node_count()];
    for (c, comm) in communities.iter().enumerate() {
        for &v in comm {
            label[v] = c;
        }
    }
    let mut q = 0.0;
    for (i, j) in g.edges() {
        if label[i] != usize::MAX && label[i] == label[j] {
            q += 2.0;
        }
    }
    let mut deg_sums = vec![0.0; communities.len()];
    for (c, comm) in communities.iter().enumerate() {
        deg_sums[c] = comm.iter().map(|&v| g.degree(v) as f64).sum();
    }
    for &dsum in &deg_sums {
        q -= dsum * dsum / two_m;
    }
    q / two_m
}
