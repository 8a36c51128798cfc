//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are generated by adding one vertex with every
//! possible neighborhood to each (n-1)-vertex graph, then deduplicating by
//! a canonical form: the minimum adjacency bitmask over all permutations
//! consistent with an iterated neighborhood-color refinement. Any
//! isomorphism respects the refinement classes, so the minimum is a true
//! canonical key while the permutation set stays tiny for asymmetric
//! graphs. Intended for n <= 8 (12,346 graphs, 11,117 of them connected).

use std::collections::HashSet;

use crate::graph::Graph;

const MAX_N: usize = 8;

#[derive(Clone, Copy)]
struct Small {
    n: usize,
    adj: [u8; MAX_N],
}

impl Small {
    fn empty(n: usize) -> Self {
        Small { n, adj: [0; MAX_N] }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    fn from_key(key: u64, n: usize) -> Self {
        let mut g = Small::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if key >> (a * MAX_N + b) & 1 == 1 {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Adjacency bitmask after relabeling with `perm[new] = old`.
    fn edge_key(&self, perm: &[usize]) -> u64 {
        let mut key = 0u64;
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[perm[a]] >> perm[b] & 1 == 1 {
                    key |= 1 << (a * MAX_N + b);
                }
            }
        }
        key
    }
}

/// Iterated color refinement; isomorphic vertices always end in the same
/// class. `n` rounds suffice for stabilization on `n` vertices.
fn refine_colors(g: &Small) -> Vec<usize> {
    let mut color: Vec<usize> = (0..g.n).map(|i| g.adj[i].count_ones() as usize).collect();
    for _ in 0..g.n {
        let sigs: Vec<(usize, Vec<usize>)> = (0..g.n)
            .map(|i| {
                let mut ns: Vec<usize> = (0..g.n)
                    .filter(|&j| g.adj[i] >> j & 1 == 1)
                    .map(|j| color[j])
                    .collect();
                ns.sort_unstable();
                (color[i], ns)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        color = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
    }
    color
}

fn canonical_key(g: &Small) -> u64 {
    let color = refine_colors(g);
    // Vertices grouped by class, classes in ascending color order.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let max_color = color.iter().copied().max().unwrap_or(0);
    for c in 0..=max_color {
        let members: Vec<usize> = (0..g.n).filter(|&i| color[i] == c).collect();
        if !members.is_empty() {
            classes.push(members);
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0usize; g.n];
    permute_classes(g, &classes, 0, &mut perm, 0, &mut best);
    best
}

/// Enumerate permutations class by class, writing into consecutive slots.
fn permute_classes(
    g: &Small,
    classes: &[Vec<usize>],
    class_idx: usize,
    perm: &mut Vec<usize>,
    offset: usize,
    best: &mut u64,
) {
    if class_idx == classes.len() {
        let key = g.edge_key(perm);
        if key < *best {
            *best = key;
        }
        return;
    }
    let members = &classes[class_idx];
    let k = members.len();
    let mut order: Vec<usize> = (0..k).collect();
    // Heap's algorithm, iterative over index orders.
    loop {
        for (slot, &o) in order.iter().enumerate() {
            perm[offset + slot] = members[o];
        }
        permute_classes(g, classes, class_idx + 1, perm, offset + k, best);
        if !next_permutation(&mut order) {
            break;
        }
    }
}

fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn to_graph(g: &Small) -> Graph {
    let mut edges = Vec::new();
    for a in 0..g.n {
        for b in a + 1..g.n {
            if g.adj[a] >> b & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(&edges, g.n).expect("enumerated graph is simple")
}

/// All non-isomorphic simple graphs on exactly `n` vertices (n <= 8).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1 && n <= MAX_N, "enumeration supports 1..=8 vertices");
    let mut level: Vec<u64> = vec![0]; // the single graph on one vertex
    for size in 2..=n {
        let mut next: HashSet<u64> = HashSet::new();
        for &key in &level {
            let parent = Small::from_key(key, size - 1);
            for mask in 0u32..1 << (size - 1) {
                let mut cand = Small::empty(size);
                cand.adj[..size - 1].copy_from_slice(&parent.adj[..size - 1]);
                for b in 0..size - 1 {
                    if mask >> b & 1 == 1 {
                        cand.add_edge(size - 1, b);
                    }
                }
                next.insert(canonical_key(&cand));
            }
        }
        let mut sorted: Vec<u64> = next.into_iter().collect();
        sorted.sort_unstable();
        level = sorted;
    }
    level.iter().map(|&k| to_graph(&Small::from_key(k, n))).collect()
}

/// Non-isomorphic connected graphs on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}
