//! Comparison detectors: modularity partitioning, spectral clustering,
//! the eigenvector-L1 subgraph test, and classical centralities with a
//! generic stagewise removal loop.

mod centrality;
mod clustering;
mod l1;
mod modularity;

pub use centrality::{centrality, CentralityKind};
pub use clustering::spectral_clustering;
pub use l1::{l1_null_model, l1_subgraph_test, l1_subgraph_test_with_null, L1NullModel, L1TestResult};
pub use modularity::{
    modularity_of_labels, modularity_partition, partition_modularity, recursive_modularity,
    RecursiveModularity,
};

use crate::detect::{Budget, RemovalMode, RemovalStep, RemovalTrace, RemovedItem, StopReason};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{self, SpectralOptions};

/// Stagewise node removal under an arbitrary centrality: recompute the
/// scores of the largest component, remove the argmax (lowest id on
/// ties), repeat. With [`CentralityKind::NodeLfvc`] this reproduces the
/// greedy LFVC detector step for step.
pub fn centrality_removal_loop(
    g: &Graph,
    kind: CentralityKind,
    budget: Budget,
) -> Result<RemovalTrace> {
    centrality_removal_loop_with(g, kind, budget, &SpectralOptions::default())
}

pub fn centrality_removal_loop_with(
    g: &Graph,
    kind: CentralityKind,
    budget: Budget,
    opts: &SpectralOptions,
) -> Result<RemovalTrace> {
    let initial_parts = g.connected_components();
    let largest = initial_parts.largest_non_singleton();
    match budget {
        Budget::Fixed(0) => {
            return Err(Error::InvalidParameter("removal budget must be at least 1".into()))
        }
        Budget::Fixed(q) => {
            if largest < 2 || q > largest - 2 {
                return Err(Error::BudgetTooLarge { budget: q, max: largest.saturating_sub(2) });
            }
        }
        Budget::TargetCommunities(t) if t < 2 => {
            return Err(Error::InvalidParameter("community target must be at least 2".into()))
        }
        _ => {}
    }

    let mut trace = RemovalTrace {
        schema: 1,
        mode: RemovalMode::Node,
        stop_reason: StopReason::Degenerate,
        n: g.node_count(),
        initial_lambda2: 0.0,
        initial_nonsingleton_components: initial_parts.non_singleton_count,
        initial_largest_nonsingleton: largest,
        steps: Vec::new(),
    };
    if let Budget::TargetCommunities(t) = budget {
        if initial_parts.non_singleton_count >= t {
            trace.stop_reason = StopReason::Disconnected;
            return Ok(trace);
        }
    }

    let mut current = g.clone();
    let mut first = true;
    loop {
        let parts = current.connected_components();
        let work = match parts.largest_component_id() {
            Some(id) if parts.sizes[id] >= 2 => parts.members(id),
            _ => {
                trace.stop_reason = StopReason::Degenerate;
                return Ok(trace);
            }
        };
        let restricted = current.restrict_to(&work)?;
        let fiedler = spectral::fiedler_with(&restricted, opts)?;
        if first {
            trace.initial_lambda2 = fiedler.lambda2;
            first = false;
        }
        let scores = match kind {
            CentralityKind::NodeLfvc => crate::detect::lfvc_scores(&restricted, &fiedler)?.node,
            _ => centrality(&restricted, kind)?,
        };
        let mut best: Option<(usize, f64)> = None;
        for &i in &work {
            if best.map(|(_, bs)| scores[i] > bs).unwrap_or(true) {
                best = Some((i, scores[i]));
            }
        }
        let (target, score) = best.expect("non-empty working component");
        let next = current.remove_node(target)?;
        let next_parts = next.connected_components();

        let lambda2_after = {
            let id = next_parts.largest_component_id();
            match id {
                Some(id) if next_parts.sizes[id] >= 2 => {
                    let sub = next.restrict_to(&next_parts.members(id))?;
                    Some(spectral::fiedler_with(&sub, opts)?.lambda2)
                }
                _ => None,
            }
        };
        // Pieces of the working component after this removal.
        let mut piece_sizes = std::collections::BTreeMap::new();
        for &v in &work {
            if v == target {
                continue;
            }
            if let Some(label) = next_parts.labels[v] {
                *piece_sizes.entry(label).or_insert(0usize) += 1;
            }
        }
        let split = piece_sizes.values().filter(|&&s| s >= 2).count();

        trace.steps.push(RemovalStep {
            removed: RemovedItem::Node(target),
            score,
            lambda2_before: fiedler.lambda2,
            lambda2_after,
            nonsingleton_components_after: next_parts.non_singleton_count,
            largest_nonsingleton_after: next_parts.largest_non_singleton(),
            degenerate_fiedler: fiedler.degenerate,
        });

        let done = match budget {
            Budget::Fixed(q) => trace.steps.len() >= q,
            Budget::Adaptive => split >= 2,
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
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::greedy_node_removal;

    #[test]
    fn degree_loop_removes_star_center_first() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)], 5).unwrap();
        let trace = centrality_removal_loop(&g, CentralityKind::Degree, Budget::Fixed(1)).unwrap();
        assert_eq!(trace.steps[0].removed, RemovedItem::Node(0));
    }

    #[test]
    fn betweenness_loop_hits_barbell_bridge_endpoint() {
        // Two K5 cliques joined by the edge (4, 5).
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
                edges.push((i + 5, j + 5));
            }
        }
        edges.push((4, 5));
        let g = Graph::from_edges(&edges, 10).unwrap();
        let trace =
            centrality_removal_loop(&g, CentralityKind::Betweenness, Budget::Fixed(1)).unwrap();
        assert_eq!(trace.steps[0].removed, RemovedItem::Node(4));
    }

    #[test]
    fn lfvc_loop_matches_greedy_detector() {
        let g = Graph::from_edges(
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (5, 3)],
            7,
        )
        .unwrap();
        let a = centrality_removal_loop(&g, CentralityKind::NodeLfvc, Budget::Fixed(3)).unwrap();
        let b = greedy_node_removal(&g, Budget::Fixed(3)).unwrap();
        assert_eq!(a.removed_nodes(), b.removed_nodes());
        assert_eq!(a.stop_reason, b.stop_reason);
    }
}
