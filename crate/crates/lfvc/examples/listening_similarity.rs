//! Residual community similarity over preference vectors: after a removal
//! run, each community is scored by the pairwise cosine similarity of its
//! surviving members' preference vectors, and RSCS sums the per-community
//! scores. With a friendship file and a `user item weight` listening
//! file, the same pipeline runs from the command line:
//!
//! ```bash
//! lfvc evaluate --prefs listening.tsv --method lfvc-node --q 50 friends.edges
//! ```
//!
//! This example builds a synthetic two-taste network instead so it runs
//! standalone:
//!
//! ```bash
//! cargo run --example listening_similarity
//! ```

use lfvc::detect::{extract_deep_communities, greedy_node_removal, Budget};
use lfvc::graph::Graph;
use lfvc::metrics::{rscs, PreferenceVectors};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two 5-cliques glued through node 4; fans of item 0 on one side,
    // fans of item 1 on the other, and the bridge listens to both.
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            edges.push((i, j));
            edges.push((i + 5, j + 5));
        }
    }
    edges.push((4, 5));
    let graph = Graph::from_edges(&edges, 10)?;

    let mut triples = Vec::new();
    for u in 0..5 {
        triples.push((u, 0usize, 10.0));
    }
    for u in 5..10 {
        triples.push((u, 1usize, 4.0));
    }
    triples.push((4, 1, 10.0));
    let prefs = PreferenceVectors::from_triples(triples);

    let trace = greedy_node_removal(&graph, Budget::Adaptive)?;
    let assignment = extract_deep_communities(&graph, &trace)?;
    println!("removed: {:?}", assignment.removed);
    let report = rscs(&assignment, &prefs);
    for (k, (community, value)) in
        assignment.communities.iter().zip(&report.per_community).enumerate()
    {
        println!("community {k} {community:?}: RCS = {value:.3}");
    }
    println!("RSCS = {:.3}", report.total);
    println!("(same-taste pairs score cosine 1.0; pairs through the two-taste bridge score less)");
    Ok(())
}
