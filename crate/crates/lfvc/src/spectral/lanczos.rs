//! Restarted Lanczos iteration with full reorthogonalization.
//!
//! Finds the algebraically largest eigenpair of a symmetric operator given
//! only matrix-vector products. Callers that need a smallest eigenvalue
//! apply the operator `shift * I - M` and translate back. Known eigenvectors
//! (the all-ones Laplacian null vector, previously converged pairs) are
//! deflated by projecting them out of every Krylov vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Krylov basis size per restart cycle.
const CYCLE: usize = 80;

pub(crate) struct LanczosProblem<'a> {
    /// `y = M x`; must be symmetric.
    pub apply: &'a dyn Fn(&[f64], &mut [f64]),
    pub dim: usize,
    /// Orthonormal vectors spanning an invariant subspace to exclude.
    pub deflate: &'a [Vec<f64>],
    pub seed: u64,
    /// Relative residual tolerance on `||M x - theta x||`.
    pub tol: f64,
    pub max_matvecs: usize,
}

pub(crate) struct LanczosOutcome {
    pub value: f64,
    pub vector: Vec<f64>,
    /// Ritz estimate of the second-largest eigenvalue, if the final cycle
    /// exposed one.
    pub second_value: Option<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(v, b);
        axpy(v, -c, b);
    }
}

/// Largest algebraic eigenpair of the deflated operator.
pub(crate) fn largest_eigenpair(p: &LanczosProblem) -> Result<LanczosOutcome> {
    let n = p.dim;
    assert!(n > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut v0: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    project_out(&mut v0, p.deflate);
    let mut nrm = norm(&v0);
    // A start vector inside the deflated subspace is astronomically
    // unlikely but cheap to recover from.
    while nrm < 1e-12 {
        v0 = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        project_out(&mut v0, p.deflate);
        nrm = norm(&v0);
    }
    for x in v0.iter_mut() {
        *x /= nrm;
    }

    let mut matvecs = 0usize;
    let mut scratch = vec![0.0; n];

    loop {
        let mut basis: Vec<Vec<f64>> = vec![v0.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();

        let kmax = CYCLE.min(n.saturating_sub(p.deflate.len()).max(1));
        for k in 0..kmax {
            if matvecs >= p.max_matvecs {
                return Err(Error::NoConvergence(matvecs));
            }
            (p.apply)(&basis[k], &mut scratch);
            matvecs += 1;
            let mut w = scratch.clone();
            let alpha = dot(&w, &basis[k]);
            alphas.push(alpha);
            axpy(&mut w, -alpha, &basis[k]);
            if k > 0 {
                let beta_prev = betas[k - 1];
                axpy(&mut w, -beta_prev, &basis[k - 1]);
            }
            // Full reorthogonalization against the whole basis plus the
            // deflation space, twice for good measure.
            for _ in 0..2 {
                project_out(&mut w, &basis);
                project_out(&mut w, p.deflate);
            }
            let beta = norm(&w);
            if beta < 1e-13 || k + 1 == kmax {
                break;
            }
            betas.push(beta);
            for x in w.iter_mut() {
                *x /= beta;
            }
            basis.push(w);
        }

        // Ritz pairs of the tridiagonal projection.
        let k = alphas.len();
        let mut t = nalgebra::DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let (values, vectors) = super::dense::sorted_symmetric_eigen(t);
        let top = k - 1;
        let second_value = if k >= 2 { Some(values[top - 1]) } else { None };

        let mut x = vec![0.0; n];
        for (j, b) in basis.iter().enumerate() {
            axpy(&mut x, vectors[(j, top)], b);
        }
        project_out(&mut x, p.deflate);
        let xn = norm(&x);
        if xn < 1e-12 {
            return Err(Error::NoConvergence(matvecs));
        }
        for v in x.iter_mut() {
            *v /= xn;
        }

        if matvecs >= p.max_matvecs {
            return Err(Error::NoConvergence(matvecs));
        }
        (p.apply)(&x, &mut scratch);
        matvecs += 1;
        let rq = dot(&scratch, &x);
        let mut resid = scratch.clone();
        axpy(&mut resid, -rq, &x);
        if norm(&resid) <= p.tol * rq.abs().max(1.0) {
            return Ok(LanczosOutcome { value: rq, vector: x, second_value });
        }
        v0 = x;
    }
}
