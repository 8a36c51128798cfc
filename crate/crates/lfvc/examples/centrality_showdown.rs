//! Run the stagewise removal loop under every node centrality and watch
//! how fast the largest community shrinks and how many communities get
//! discovered. Node-LFVC removals fragment the karate club fastest.
//!
//! ```bash
//! cargo run --example centrality_showdown
//! ```

use std::path::Path;

use lfvc::baselines::{centrality_removal_loop, CentralityKind};
use lfvc::detect::Budget;
use lfvc::io::load_edge_list;
use lfvc::metrics::trace_curves;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/karate.edges");
    let graph = load_edge_list(&data, None)?;
    let q = 8;
    let kinds = [
        CentralityKind::NodeLfvc,
        CentralityKind::Betweenness,
        CentralityKind::Degree,
        CentralityKind::Closeness,
        CentralityKind::Eigen,
        CentralityKind::Ego,
    ];
    println!("normalized largest community size after each of {q} removals:");
    println!("{:>12} {}", "centrality", (0..=q).map(|k| format!("{k:>6}")).collect::<String>());
    for kind in kinds {
        let trace = centrality_removal_loop(&graph, kind, Budget::Fixed(q))?;
        let curve = trace_curves(&trace, graph.node_count());
        let row: String = curve.iter().map(|(size, _)| format!("{size:>6.2}")).collect();
        println!("{:>12} {row}", kind.name());
    }
    println!();
    println!("discovered communities after each removal:");
    for kind in kinds {
        let trace = centrality_removal_loop(&graph, kind, Budget::Fixed(q))?;
        let curve = trace_curves(&trace, graph.node_count());
        let row: String = curve.iter().map(|(_, c)| format!("{c:>6}")).collect();
        println!("{:>12} {row}", kind.name());
    }
    Ok(())
}
