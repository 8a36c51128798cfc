//! Adaptive node-LFVC on Zachary's karate club.
//!
//! A single removal (the instructor, node 0) splits the club into the
//! five-member satellite group and the main body, with one singleton
//! survivor whose only acquaintance was the removed node.
//!
//! ```bash
//! cargo run --example karate_deep_communities
//! ```

use std::path::Path;

use lfvc::detect::{extract_deep_communities, greedy_node_removal, Budget};
use lfvc::io::load_edge_list;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/karate.edges");
    let graph = load_edge_list(&data, None)?;
    println!("karate club: {} nodes, {} edges", graph.node_count(), graph.edge_count());

    let trace = greedy_node_removal(&graph, Budget::Adaptive)?;
    println!("\nremovals until the first split:");
    for (k, step) in trace.steps.iter().enumerate() {
        let after = step.lambda2_after.map(|l| format!("{l:.4}")).unwrap_or_else(|| "-".into());
        println!(
            "  stage {}: remove {:?} (node-LFVC {:.4}), lambda2 {:.4} -> {after}",
            k + 1,
            step.removed,
            step.score,
            step.lambda2_before,
        );
    }

    let communities = extract_deep_communities(&graph, &trace)?;
    for (k, c) in communities.communities.iter().enumerate() {
        println!("community {k} ({} members): {:?}", c.len(), c);
    }
    println!("singleton survivors: {:?}", communities.singleton_survivors);
    for (node, joins) in &communities.membership {
        println!("removed node {node} belongs to communities {joins:?}");
    }
    Ok(())
}
