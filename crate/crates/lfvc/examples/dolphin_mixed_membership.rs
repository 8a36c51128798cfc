//! Four node removals split the Doubtful Sound dolphin network into its
//! two social groups; every removed dolphin turns out to interact with
//! both groups and is reported as a shared member.
//!
//! ```bash
//! cargo run --example dolphin_mixed_membership
//! ```

use std::path::Path;

use lfvc::detect::{extract_deep_communities, greedy_node_removal, Budget, RemovedItem};
use lfvc::io::load_edge_list;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/dolphins.edges");
    let graph = load_edge_list(&data, None)?;
    println!("dolphins: {} nodes, {} edges", graph.node_count(), graph.edge_count());

    let trace = greedy_node_removal(&graph, Budget::Fixed(4))?;
    for step in &trace.steps {
        let RemovedItem::Node(node) = step.removed else { unreachable!() };
        println!(
            "remove dolphin {node:2}  score {:.4}  components after: {}",
            step.score, step.nonsingleton_components_after
        );
    }

    let assignment = extract_deep_communities(&graph, &trace)?;
    for (k, c) in assignment.communities.iter().enumerate() {
        println!("group {k}: {} dolphins", c.len());
    }
    println!("\nmixed membership:");
    for (node, joins) in &assignment.membership {
        println!("  dolphin {node} bridges groups {joins:?}");
    }
    Ok(())
}
