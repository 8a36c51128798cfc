//! Deterministic symmetric eigensolvers for graph matrices.
//!
//! Every operation here is a pure function of the graph and the options:
//! the dense path is used up to [`SpectralOptions::dense_cutoff`] active
//! nodes and a restarted, fully reorthogonalized Lanczos iteration with
//! matrix-free products above it. The iterative path starts from a seeded
//! pseudorandom vector, so repeated runs return bitwise-identical results.

mod dense;
mod lanczos;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) use dense::sorted_symmetric_eigen;

/// Seed for the iterative solver's start vector unless overridden.
pub const DEFAULT_SOLVER_SEED: u64 = 0x5eed_f1ed;

/// Solver knobs. The defaults match the rest of the crate; tests lower
/// `dense_cutoff` to force the iterative path onto small graphs.
#[derive(Debug, Clone)]
pub struct SpectralOptions {
    /// Active sizes up to this use the dense eigendecomposition.
    pub dense_cutoff: usize,
    /// Relative residual tolerance for the iterative path.
    pub tolerance: f64,
    /// Iterative matvec budget as a multiple of the active size.
    pub max_matvec_factor: usize,
    /// Start-vector seed for the iterative path.
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            dense_cutoff: 512,
            tolerance: 1e-10,
            max_matvec_factor: 10,
            seed: DEFAULT_SOLVER_SEED,
        }
    }
}

impl SpectralOptions {
    fn matvec_budget(&self, dim: usize) -> usize {
        // Tiny problems still need slack for restart bookkeeping.
        (self.max_matvec_factor * dim).max(200)
    }
}

/// Algebraic connectivity and Fiedler vector of a connected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FiedlerResult {
    pub lambda2: f64,
    /// Unit vector orthogonal to all-ones, entry `k` belonging to node
    /// `nodes[k]`.
    pub vector: Vec<f64>,
    /// Active node ids the vector is indexed by, ascending.
    pub nodes: Vec<usize>,
    /// Sign convention applied: the first coordinate with magnitude above
    /// 1e-12 is positive.
    pub sign_fixed: bool,
    /// Set when `lambda3 - lambda2 <= 1e-8`; the returned vector is then
    /// one representative of an eigenspace with dimension > 1.
    pub degenerate: bool,
    /// Estimate of the third-smallest Laplacian eigenvalue.
    pub lambda3: Option<f64>,
}

impl FiedlerResult {
    /// Fiedler value for node `id`, if it belongs to the component the
    /// result was computed on.
    pub fn value_of(&self, id: usize) -> Option<f64> {
        self.nodes.binary_search(&id).ok().map(|k| self.vector[k])
    }
}

/// A single eigenvalue/eigenvector pair with unit-norm vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Column-orthonormal eigenvector matrix of the smallest Laplacian
/// eigenvalues, indexed like [`FiedlerResult::nodes`].
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub nodes: Vec<usize>,
    /// `columns[c][k]` is entry `k` of the eigenvector for the `c`-th
    /// smallest eigenvalue.
    pub columns: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
}

/// Flip `v` so its first coordinate with magnitude above 1e-12 is positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    if let Some(&lead) = v.iter().find(|x| x.abs() > 1e-12) {
        if lead < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

/// Upper bound on the largest Laplacian eigenvalue: `max (d_i + d_j)` over
/// active edges. Exact for stars, never below `lambda_n`.
fn laplacian_shift(g: &Graph) -> f64 {
    let mut best = 0usize;
    for (i, j) in g.edges() {
        best = best.max(g.degree(i) + g.degree(j));
    }
    best.max(1) as f64
}

/// Fiedler pair of a connected graph with default options.
pub fn fiedler(g: &Graph) -> Result<FiedlerResult> {
    fiedler_with(g, &SpectralOptions::default())
}

/// Fiedler pair of a connected graph.
///
/// The active part of `g` must be a single connected component of size at
/// least 2; callers holding a disconnected graph should restrict to one
/// component first ([`Graph::restrict_to`]).
pub fn fiedler_with(g: &Graph, opts: &SpectralOptions) -> Result<FiedlerResult> {
    let nodes = g.active_nodes();
    let dim = nodes.len();
    if dim < 2 {
        return Err(Error::ComponentTooSmall { size: dim, need: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let (lambda2, mut vector, lambda3) = if dim <= opts.dense_cutoff {
        let (values, vectors) = sorted_symmetric_eigen(g.laplacian().to_dense());
        let v: Vec<f64> = vectors.column(1).iter().copied().collect();
        (values[1], v, Some(values[2.min(dim - 1)]))
    } else {
        let view = g.laplacian();
        let shift = laplacian_shift(g);
        let ones = vec![1.0 / (dim as f64).sqrt(); dim];
        let apply = |x: &[f64], y: &mut [f64]| {
            view.apply(x, y);
            for (yi, xi) in y.iter_mut().zip(x) {
                *yi = shift * xi - *yi;
            }
        };
        let out = lanczos::largest_eigenpair(&lanczos::LanczosProblem {
            apply: &apply,
            dim,
            deflate: std::slice::from_ref(&ones),
            seed: opts.seed,
            tol: opts.tolerance,
            max_matvecs: opts.matvec_budget(dim),
        })?;
        (shift - out.value, out.vector, out.second_value.map(|s| shift - s))
    };

    // Deflate residual all-ones leakage and renormalize; the perturbation
    // is below the eigensolver tolerance.
    let mean = vector.iter().sum::<f64>() / dim as f64;
    for x in vector.iter_mut() {
        *x -= mean;
    }
    normalize(&mut vector);
    fix_sign(&mut vector);

    if lambda2.abs() < 1e-10 {
        return Err(Error::Disconnected);
    }
    let degenerate = lambda3.map(|l3| l3 - lambda2 <= 1e-8).unwrap_or(false);
    Ok(FiedlerResult { lambda2, vector, nodes, sign_fixed: true, degenerate, lambda3 })
}

/// Largest Laplacian eigenvalue with default options.
pub fn lambda_max_laplacian(g: &Graph) -> Result<f64> {
    lambda_max_laplacian_with(g, &SpectralOptions::default())
}

pub fn lambda_max_laplacian_with(g: &Graph, opts: &SpectralOptions) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let view = g.laplacian();
    let dim = view.dim();
    if dim <= opts.dense_cutoff {
        let (values, _) = sorted_symmetric_eigen(view.to_dense());
        Ok(values[dim - 1])
    } else {
        let apply = |x: &[f64], y: &mut [f64]| view.apply(x, y);
        let out = lanczos::largest_eigenpair(&lanczos::LanczosProblem {
            apply: &apply,
            dim,
            deflate: &[],
            seed: opts.seed,
            tol: opts.tolerance,
            max_matvecs: opts.matvec_budget(dim),
        })?;
        Ok(out.value)
    }
}

/// Leading adjacency eigenpair (Perron pair) of a connected graph, vector
/// sign-fixed to be nonnegative.
pub fn leading_adjacency_eigenpair(g: &Graph) -> Result<EigenPair> {
    leading_adjacency_eigenpair_with(g, &SpectralOptions::default())
}

pub fn leading_adjacency_eigenpair_with(g: &Graph, opts: &SpectralOptions) -> Result<EigenPair> {
    let nodes = g.active_nodes();
    let dim = nodes.len();
    if dim == 0 {
        return Err(Error::ComponentTooSmall { size: 0, need: 1 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (value, mut vector) = if dim <= opts.dense_cutoff {
        let a = adjacency_dense(g, &nodes);
        let (values, vectors) = sorted_symmetric_eigen(a);
        (values[dim - 1], vectors.column(dim - 1).iter().copied().collect())
    } else {
        let mut pos = vec![usize::MAX; g.node_count()];
        for (k, &v) in nodes.iter().enumerate() {
            pos[v] = k;
        }
        let apply = |x: &[f64], y: &mut [f64]| {
            for (k, &v) in nodes.iter().enumerate() {
                y[k] = g.neighbors(v).iter().map(|&w| x[pos[w]]).sum();
            }
        };
        let out = lanczos::largest_eigenpair(&lanczos::LanczosProblem {
            apply: &apply,
            dim,
            deflate: &[],
            seed: opts.seed,
            tol: opts.tolerance,
            max_matvecs: opts.matvec_budget(dim),
        })?;
        (out.value, out.vector)
    };
    // Perron vector: flip so the total mass is positive, then clear the
    // roundoff dust that can leave tiny negative entries.
    if vector.iter().sum::<f64>() < 0.0 {
        for x in vector.iter_mut() {
            *x = -*x;
        }
    }
    for x in vector.iter_mut() {
        if *x < 0.0 && *x > -1e-10 {
            *x = 0.0;
        }
    }
    Ok(EigenPair { value, vector })
}

fn adjacency_dense(g: &Graph, nodes: &[usize]) -> DMatrix<f64> {
    let dim = nodes.len();
    let mut pos = vec![usize::MAX; g.node_count()];
    for (k, &v) in nodes.iter().enumerate() {
        pos[v] = k;
    }
    let mut a = DMatrix::zeros(dim, dim);
    for (k, &v) in nodes.iter().enumerate() {
        for &w in g.neighbors(v) {
            a[(k, pos[w])] = 1.0;
        }
    }
    a
}

/// Dense modularity matrix `B = A - d d^T / (2m)` over the active nodes.
pub fn modularity_matrix(g: &Graph) -> Result<(DMatrix<f64>, Vec<usize>)> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let nodes = g.active_nodes();
    let mut b = adjacency_dense(g, &nodes);
    let two_m = 2.0 * g.edge_count() as f64;
    let deg: Vec<f64> = nodes.iter().map(|&v| g.degree(v) as f64).collect();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            b[(i, j)] -= deg[i] * deg[j] / two_m;
        }
    }
    Ok((b, nodes))
}

/// Top-`k` eigenpairs of the modularity matrix by algebraic value,
/// descending. `k` equal to the active size yields the full spectrum.
pub fn modularity_spectrum(g: &Graph, k: usize) -> Result<Vec<EigenPair>> {
    modularity_spectrum_with(g, k, &SpectralOptions::default())
}

pub fn modularity_spectrum_with(
    g: &Graph,
    k: usize,
    opts: &SpectralOptions,
) -> Result<Vec<EigenPair>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let nodes = g.active_nodes();
    let dim = nodes.len();
    if k > dim {
        return Err(Error::InvalidParameter(format!(
            "requested {k} modularity eigenpairs from a graph with {dim} active nodes"
        )));
    }
    if dim <= opts.dense_cutoff {
        let (b, _) = modularity_matrix(g)?;
        let (values, vectors) = sorted_symmetric_eigen(b);
        let mut out = Vec::with_capacity(k);
        for idx in (dim - k..dim).rev() {
            let mut v: Vec<f64> = vectors.column(idx).iter().copied().collect();
            fix_sign(&mut v);
            out.push(EigenPair { value: values[idx], vector: v });
        }
        return Ok(out);
    }
    if k > 16 {
        return Err(Error::InvalidParameter(format!(
            "iterative modularity spectrum supports k <= 16, got {k}"
        )));
    }
    let mut pos = vec![usize::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        pos[v] = i;
    }
    let deg: Vec<f64> = nodes.iter().map(|&v| g.degree(v) as f64).collect();
    let two_m = 2.0 * g.edge_count() as f64;
    // B has spectrum within [-lambda_n(A), lambda_n(A)]; shift up to make
    // the wanted end extreme for Lanczos regardless of deflation order.
    let shift = laplacian_shift(g);
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut out = Vec::with_capacity(k);
    for round in 0..k {
        let apply = |x: &[f64], y: &mut [f64]| {
            let dx: f64 = deg.iter().zip(x).map(|(d, xi)| d * xi).sum();
            for (i, &v) in nodes.iter().enumerate() {
                let ax: f64 = g.neighbors(v).iter().map(|&w| x[pos[w]]).sum();
                y[i] = ax - deg[i] * dx / two_m + shift * x[i];
            }
        };
        let res = lanczos::largest_eigenpair(&lanczos::LanczosProblem {
            apply: &apply,
            dim,
            deflate: &found,
            seed: opts.seed.wrapping_add(round as u64),
            tol: opts.tolerance,
            max_matvecs: opts.matvec_budget(dim),
        })?;
        let mut v = res.vector;
        fix_sign(&mut v);
        out.push(EigenPair { value: res.value - shift, vector: v.clone() });
        found.push(v);
    }
    Ok(out)
}

/// Eigenvectors of the `g_count` smallest Laplacian eigenvalues.
pub fn spectral_embedding(g: &Graph, g_count: usize) -> Result<Embedding> {
    spectral_embedding_with(g, g_count, &SpectralOptions::default())
}

pub fn spectral_embedding_with(
    g: &Graph,
    g_count: usize,
    opts: &SpectralOptions,
) -> Result<Embedding> {
    let nodes = g.active_nodes();
    let dim = nodes.len();
    if g_count < 2 || g_count > dim {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension {g_count} out of range 2..={dim}"
        )));
    }
    if dim <= opts.dense_cutoff {
        let (values, vectors) = sorted_symmetric_eigen(g.laplacian().to_dense());
        let mut columns = Vec::with_capacity(g_count);
        for c in 0..g_count {
            let mut v: Vec<f64> = vectors.column(c).iter().copied().collect();
            fix_sign(&mut v);
            columns.push(v);
        }
        return Ok(Embedding { nodes, columns, eigenvalues: values[..g_count].to_vec() });
    }
    // Iterative path assumes a connected active graph, where the null
    // space is exactly the all-ones direction.
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let view = g.laplacian();
    let shift = laplacian_shift(g);
    let ones = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut columns = vec![ones.clone()];
    let mut eigenvalues = vec![0.0];
    for round in 1..g_count {
        let apply = |x: &[f64], y: &mut [f64]| {
            view.apply(x, y);
            for (yi, xi) in y.iter_mut().zip(x) {
                *yi = shift * xi - *yi;
            }
        };
        let res = lanczos::largest_eigenpair(&lanczos::LanczosProblem {
            apply: &apply,
            dim,
            deflate: &columns,
            seed: opts.seed.wrapping_add(round as u64),
            tol: opts.tolerance,
            max_matvecs: opts.matvec_budget(dim),
        })?;
        let mut v = res.vector;
        fix_sign(&mut v);
        eigenvalues.push(shift - res.value);
        columns.push(v);
    }
    Ok(Embedding { nodes, columns, eigenvalues })
}

/// All eigenvalues of the active Laplacian, ascending (dense; intended for
/// diagnostics and small graphs).
pub fn laplacian_eigenvalues(g: &Graph) -> Vec<f64> {
    let view = g.laplacian();
    if view.dim() == 0 {
        return Vec::new();
    }
    sorted_symmetric_eigen(view.to_dense()).0
}

/// Second-smallest eigenvalue of the Laplacian over the *full* index
/// space, counting removed nodes as isolated (zero rows). This is the
/// quantity the removal bounds compare against: it is 0 as soon as any
/// node has been removed or the active graph is disconnected.
pub fn lambda2_in_index_space(g: &Graph) -> f64 {
    let mut eigs = laplacian_eigenvalues(g);
    eigs.extend(std::iter::repeat(0.0).take(g.removed_count()));
    eigs.sort_by(f64::total_cmp);
    if eigs.len() >= 2 {
        eigs[1].max(0.0)
    } else {
        0.0
    }
}
