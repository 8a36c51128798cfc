//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use lfvc::detect::{self, Budget};
use lfvc::graph::Graph;
use lfvc::io;
use lfvc::metrics;
use lfvc::spectral;

/// Arbitrary edge soup over up to 12 nodes; duplicates and both
/// orientations allowed, self-loops filtered out.
fn edge_soup() -> impl Strategy<Value = (Vec<(usize, usize)>, usize)> {
    (2usize..12).prop_flat_map(|n| {
        (
            proptest::collection::vec((0..n, 0..n).prop_filter("no loops", |(a, b)| a != b), 0..30),
            Just(n),
        )
    })
}

/// Connected graph built from a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..16).prop_flat_map(|n| {
        (
            proptest::collection::vec(0usize..1_000_000, n - 1),
            proptest::collection::vec((0..n, 0..n).prop_filter("no loops", |(a, b)| a != b), 0..20),
            Just(n),
        )
            .prop_map(|(attach, extra, n)| {
                let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v, attach[v - 1] % v)).collect();
                edges.extend(extra);
                Graph::from_edges(&edges, n).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn construction_invariants((edges, n) in edge_soup()) {
        let g = Graph::from_edges(&edges, n).unwrap();
        // Symmetry and sortedness of the neighbor lists.
        let mut degree_sum = 0;
        for i in 0..n {
            let ns = g.neighbors(i);
            prop_assert!(ns.windows(2).all(|w| w[0] < w[1]));
            for &j in ns {
                prop_assert!(g.neighbors(j).contains(&i));
            }
            degree_sum += ns.len();
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn laplacian_rows_sum_to_zero_and_psd(g in connected_graph()) {
        let l = g.laplacian().to_dense();
        for i in 0..l.nrows() {
            let s: f64 = (0..l.ncols()).map(|j| l[(i, j)]).sum();
            prop_assert!(s.abs() < 1e-12);
        }
        let eigs = spectral::laplacian_eigenvalues(&g);
        prop_assert!(eigs.iter().all(|&e| e >= -1e-9));
    }

    #[test]
    fn fiedler_invariants_on_connected_graphs(g in connected_graph()) {
        let f = spectral::fiedler(&g).unwrap();
        let norm: f64 = f.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-10);
        let ones: f64 = f.vector.iter().sum();
        prop_assert!(ones.abs() <= 1e-8);
        let view = g.laplacian();
        let mut y = vec![0.0; view.dim()];
        view.apply(&f.vector, &mut y);
        let quad: f64 = y.iter().zip(&f.vector).map(|(a, b)| a * b).sum();
        prop_assert!((quad - f.lambda2).abs() <= 1e-8 * f.lambda2.max(1.0));
        prop_assert!(f.lambda2 > 0.0);
    }

    #[test]
    fn f_set_dual_form_and_sign_invariance(
        g in connected_graph(),
        picks in proptest::collection::vec(0usize..1_000_000, 1..6),
    ) {
        let f = spectral::fiedler(&g).unwrap();
        let n = g.node_count();
        let r: Vec<usize> = picks.iter().map(|p| p % n).collect();
        let a = detect::f_set(&g, &f, &r).unwrap();
        let b = detect::f_set_partition_form(&g, &f, &r).unwrap();
        prop_assert!((a - b).abs() <= 1e-12, "dual forms differ: {} vs {}", a, b);
        prop_assert!(a >= 0.0);

        let mut flipped = f.clone();
        for x in flipped.vector.iter_mut() {
            *x = -*x;
        }
        let c = detect::f_set(&g, &flipped, &r).unwrap();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn cosine_is_scale_invariant_and_bounded(
        items in proptest::collection::vec((0usize..50, 0.0f64..10.0), 1..10),
        others in proptest::collection::vec((0usize..50, 0.0f64..10.0), 1..10),
        scale in 0.001f64..1000.0,
    ) {
        let build = |rows: &[(usize, f64)]| {
            let mut m = std::collections::BTreeMap::new();
            for &(i, w) in rows {
                *m.entry(i).or_insert(0.0) += w;
            }
            m.into_iter().collect::<Vec<_>>()
        };
        let u = build(&items);
        let v = build(&others);
        let c = metrics::cosine(&u, &v);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        let scaled: Vec<(usize, f64)> = u.iter().map(|&(i, w)| (i, scale * w)).collect();
        prop_assert!((metrics::cosine(&scaled, &v) - c).abs() <= 1e-9);
    }

    #[test]
    fn trace_serialization_round_trips(g in connected_graph(), q in 1usize..3) {
        let budget = q.min(g.node_count().saturating_sub(2)).max(1);
        if g.node_count() < 4 {
            return Ok(());
        }
        let trace = detect::greedy_node_removal(&g, Budget::Fixed(budget)).unwrap();
        let json = io::trace_to_json(&trace).unwrap();
        let parsed: detect::RemovalTrace = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed.steps.len(), trace.steps.len());
        prop_assert_eq!(parsed.mode, trace.mode);
        prop_assert_eq!(parsed.n, trace.n);
        for (a, b) in parsed.steps.iter().zip(&trace.steps) {
            prop_assert_eq!(a.removed, b.removed);
        }
        let assignment = detect::extract_deep_communities(&g, &trace).unwrap();
        let json = io::assignment_to_json(&assignment).unwrap();
        let parsed: detect::CommunityAssignment = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed.communities, assignment.communities);
        prop_assert_eq!(parsed.membership, assignment.membership);
    }

    #[test]
    fn removal_curves_never_grow(g in connected_graph()) {
        if g.node_count() < 5 {
            return Ok(());
        }
        let q = (g.node_count() - 3).min(4);
        let trace = detect::greedy_node_removal(&g, Budget::Fixed(q)).unwrap();
        let curves = metrics::trace_curves(&trace, g.node_count());
        prop_assert_eq!(curves[0], (1.0, 1));
        for w in curves.windows(2) {
            prop_assert!(w[1].0 <= w[0].0 + 1e-12);
        }
    }
}
