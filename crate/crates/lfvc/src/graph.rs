//! Undirected simple graphs with stable node ids across removals.
//!
//! Removing a node keeps the original index space and marks the node
//! inactive, so ids survive an entire removal sequence and membership of
//! removed nodes can be reported against the original adjacency. All
//! mutation-style operations return a new value; a `Graph` never changes
//! after construction.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Undirected simple graph. Neighbor lists are sorted ascending and kept
/// symmetric; `m` counts each active undirected edge once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    active: Vec<bool>,
    m: usize,
    removed: usize,
}

/// Connected-component labeling of the active nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component id per node; `None` for removed nodes.
    pub labels: Vec<Option<usize>>,
    /// Node count per component id.
    pub sizes: Vec<usize>,
    /// Number of components with at least two nodes.
    pub non_singleton_count: usize,
}

impl ComponentPartition {
    /// Active nodes of component `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Some(id))
            .map(|(i, _)| i)
            .collect()
    }

    /// Size of the largest component with >= 2 nodes, or 0 if none exists.
    pub fn largest_non_singleton(&self) -> usize {
        self.sizes.iter().copied().filter(|&s| s >= 2).max().unwrap_or(0)
    }

    /// Id of the component Algorithm-style loops should work on: the
    /// largest one, ties broken by the smallest contained node id.
    /// Components are discovered in ascending order of their smallest
    /// node, so the first maximum is the tie-break winner.
    pub fn largest_component_id(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (id, &s) in self.sizes.iter().enumerate() {
            match best {
                None => best = Some(id),
                Some(b) if s > self.sizes[b] => best = Some(id),
                _ => {}
            }
        }
        best
    }
}

impl Graph {
    /// Build a graph from an edge list over `n` nodes. Duplicate edges are
    /// collapsed; self-loops and out-of-range ids are rejected.
    pub fn from_edges(edges: &[(usize, usize)], n: usize) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::NodeOutOfRange { id: a, n });
            }
            if b >= n {
                return Err(Error::NodeOutOfRange { id: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        debug_assert!(m % 2 == 0);
        Ok(Self { n, adj, active: vec![true; n], m: m / 2, removed: 0 })
    }

    /// Size of the index space, including removed nodes.
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of active (not removed) nodes.
    pub fn active_count(&self) -> usize {
        self.n - self.removed
    }

    /// Number of nodes removed so far.
    pub fn removed_count(&self) -> usize {
        self.removed
    }

    /// Active undirected edge count.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_active(&self, i: usize) -> bool {
        i < self.n && self.active[i]
    }

    /// Active node ids, ascending.
    pub fn active_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.active[i]).collect()
    }

    /// Sorted neighbors of `i` (empty for removed nodes).
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i].binary_search(&j).is_ok()
    }

    /// Active edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for i in 0..self.n {
            for &j in &self.adj[i] {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::NodeOutOfRange { id: i, n: self.n });
        }
        if !self.active[i] {
            return Err(Error::NodeInactive(i));
        }
        Ok(())
    }

    /// Copy with node `i` marked removed and all incident edges dropped.
    pub fn remove_node(&self, i: usize) -> Result<Self> {
        self.check_node(i)?;
        let mut g = self.clone();
        for &j in &self.adj[i] {
            let pos = g.adj[j].binary_search(&i).expect("adjacency symmetric");
            g.adj[j].remove(pos);
        }
        g.m -= g.adj[i].len();
        g.adj[i].clear();
        g.active[i] = false;
        g.removed += 1;
        Ok(g)
    }

    /// Copy with edge `(i, j)` removed. Both endpoints stay active.
    pub fn remove_edge(&self, i: usize, j: usize) -> Result<Self> {
        self.check_node(i)?;
        self.check_node(j)?;
        if !self.has_edge(i, j) {
            return Err(Error::EdgeAbsent(i, j));
        }
        let mut g = self.clone();
        let pi = g.adj[i].binary_search(&j).unwrap();
        g.adj[i].remove(pi);
        let pj = g.adj[j].binary_search(&i).unwrap();
        g.adj[j].remove(pj);
        g.m -= 1;
        Ok(g)
    }

    /// Copy in which only `nodes` stay active; every other node is marked
    /// removed without counting toward `removed_count`. Used to restrict a
    /// computation to one connected component.
    pub fn restrict_to(&self, nodes: &[usize]) -> Result<Self> {
        let mut keep = vec![false; self.n];
        for &i in nodes {
            self.check_node(i)?;
            keep[i] = true;
        }
        let mut g = self.clone();
        for i in 0..self.n {
            if keep[i] {
                g.adj[i].retain(|&j| keep[j]);
            } else {
                g.adj[i].clear();
                g.active[i] = false;
            }
        }
        g.m = g.adj.iter().map(Vec::len).sum::<usize>() / 2;
        g.removed = g.active.iter().filter(|a| !**a).count();
        Ok(g)
    }

    /// Label the active nodes by connected component. Components are
    /// numbered in ascending order of their smallest node id.
    pub fn connected_components(&self) -> ComponentPartition {
        let mut labels: Vec<Option<usize>> = vec![None; self.n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if !self.active[start] || labels[start].is_some() {
                continue;
            }
            let id = sizes.len();
            let mut size = 0usize;
            labels[start] = Some(id);
            stack.push(start);
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in &self.adj[v] {
                    if labels[w].is_none() {
                        labels[w] = Some(id);
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        let non_singleton_count = sizes.iter().filter(|&&s| s >= 2).count();
        ComponentPartition { labels, sizes, non_singleton_count }
    }

    /// True when all active nodes form a single connected component.
    pub fn is_connected(&self) -> bool {
        let parts = self.connected_components();
        parts.sizes.len() == 1
    }

    /// View of the Laplacian `L = D - A` over the active nodes.
    pub fn laplacian(&self) -> LaplacianView<'_> {
        LaplacianView { graph: self, nodes: self.active_nodes() }
    }
}

/// Laplacian of the active subgraph, indexed through a node map so dense
/// and matrix-free consumers agree on ordering.
pub struct LaplacianView<'a> {
    graph: &'a Graph,
    /// Active node ids, ascending; row/column `k` of the matrix is node
    /// `nodes[k]`.
    pub nodes: Vec<usize>,
}

impl LaplacianView<'_> {
    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    /// Materialize `L` as a dense symmetric matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut pos = vec![usize::MAX; self.graph.n];
        for (k, &v) in self.nodes.iter().enumerate() {
            pos[v] = k;
        }
        let mut l = DMatrix::zeros(d, d);
        for (k, &v) in self.nodes.iter().enumerate() {
            l[(k, k)] = self.graph.degree(v) as f64;
            for &w in self.graph.neighbors(v) {
                l[(k, pos[w])] = -1.0;
            }
        }
        l
    }

    /// Matrix-free product `y = L x` in the view's index order.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        let mut pos = vec![usize::MAX; self.graph.n];
        for (k, &v) in self.nodes.iter().enumerate() {
            pos[v] = k;
        }
        for (k, &v) in self.nodes.iter().enumerate() {
            let mut acc = self.graph.degree(v) as f64 * x[k];
            for &w in self.graph.neighbors(v) {
                acc -= x[pos[w]];
            }
            y[k] = acc;
        }
    }
}

/// Upper bounds on the number of non-singleton components revealed after a
/// removal. `exact` is `n - q - rank(L)`; `relaxed` replaces the rank with
/// the nuclear norm over the largest eigenvalue, `2m / lambda_n`, and is
/// undefined when the remaining graph has no edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityCountBound {
    pub exact: i64,
    pub relaxed: Option<f64>,
    pub rank: usize,
    pub lambda_max: f64,
    pub edges: usize,
}

/// Eigenvalues below `1e-8 * max(1, lambda_n)` count as zero when ranking
/// the Laplacian.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Bound the number of non-singleton components of `g_after`, a graph from
/// which `q` nodes were removed (`q = 0` for pure edge removals). The node
/// count is taken from `g_after`'s full index space, so graphs produced by
/// [`Graph::remove_node`] report against their original size.
pub fn community_count_bound(g_after: &Graph, q: usize) -> CommunityCountBound {
    let n = g_after.node_count();
    let view = g_after.laplacian();
    let (rank, lambda_max) = if view.dim() == 0 {
        (0, 0.0)
    } else {
        let eigs = nalgebra::SymmetricEigen::new(view.to_dense()).eigenvalues;
        let lmax = eigs.iter().cloned().fold(0.0f64, f64::max);
        let tol = RANK_TOLERANCE * lmax.max(1.0);
        (eigs.iter().filter(|&&e| e > tol).count(), lmax)
    };
    let exact = n as i64 - q as i64 - rank as i64;
    let relaxed = if g_after.edge_count() == 0 {
        None
    } else {
        Some(n as f64 - q as f64 - 2.0 * g_after.edge_count() as f64 / lambda_max)
    };
    CommunityCountBound { exact, relaxed, rank, lambda_max, edges: g_after.edge_count() }
}

/// Size of the largest non-singleton component obtained from the sparsest
/// binary orthogonal basis of the Laplacian's null space: each component
/// contributes one indicator column, and the answer is the largest L1 norm
/// among columns with at least two nonzeros.
///
/// The constructed basis is verified on the way out: columns must be
/// pairwise orthogonal and satisfy `L x = 0` to within 1e-9.
pub fn largest_component_via_null_basis(g: &Graph) -> usize {
    let parts = g.connected_components();
    let view = g.laplacian();
    let d = view.dim();
    let mut pos = vec![usize::MAX; g.node_count()];
    for (k, &v) in view.nodes.iter().enumerate() {
        pos[v] = k;
    }
    let mut columns: Vec<Vec<f64>> = vec![vec![0.0; d]; parts.sizes.len()];
    for (node, label) in parts.labels.iter().enumerate() {
        if let Some(c) = label {
            columns[*c][pos[node]] = 1.0;
        }
    }
    let mut y = vec![0.0; d];
    for (c, col) in columns.iter().enumerate() {
        view.apply(col, &mut y);
        let resid = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(resid <= 1e-9, "component indicator {c} is not in the null space");
        for other in columns.iter().skip(c + 1) {
            let dot: f64 = col.iter().zip(other).map(|(a, b)| a * b).sum();
            assert!(dot == 0.0, "indicator columns overlap");
        }
    }
    columns
        .iter()
        .map(|col| col.iter().filter(|&&v| v != 0.0).count())
        .filter(|&l1| l1 >= 2)
        .max()
        .unwrap_or(0)
}
