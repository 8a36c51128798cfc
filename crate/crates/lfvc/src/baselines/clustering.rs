//! Spectral clustering: k-means over the rows of the Laplacian embedding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::CommunityAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral;

/// Restart count for the seeded k-means.
const RESTARTS: usize = 50;
const KMEANS_SEED: u64 = 0xc105_7e12;

/// Partition a connected graph into `g_count` groups by clustering the
/// rows of the `g_count` smallest Laplacian eigenvectors. Deterministic:
/// fixed seed, 50 k-means++ restarts, best within-cluster sum of squares.
pub fn spectral_clustering(g: &Graph, g_count: usize) -> Result<CommunityAssignment> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let embedding = spectral::spectral_embedding(g, g_count)?;
    let n = embedding.nodes.len();
    let points: Vec<Vec<f64>> = (0..n)
        .map(|row| embedding.columns.iter().map(|col| col[row]).collect())
        .collect();
    let assign = kmeans(&points, g_count, RESTARTS, KMEANS_SEED);
    let mut communities: Vec<Vec<usize>> = vec![Vec::new(); g_count];
    for (row, &cluster) in assign.iter().enumerate() {
        communities[cluster].push(embedding.nodes[row]);
    }
    communities.retain(|c| !c.is_empty());
    communities.sort_by_key(|c| c[0]);
    Ok(CommunityAssignment {
        schema: 1,
        communities,
        singleton_survivors: Vec::new(),
        removed: Vec::new(),
        membership: Default::default(),
    })
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Plain Lloyd iterations with k-means++ seeding; the best of `restarts`
/// runs by within-cluster sum of squares wins, first winner on ties.
fn kmeans(points: &[Vec<f64>], k: usize, restarts: usize, seed: u64) -> Vec<usize> {
    let n = points.len();
    assert!(k >= 1 && k <= n);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
        let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
        centers.push(points[rng.random_range(0..n)].clone());
        while centers.len() < k {
            let d2: Vec<f64> = points
                .iter()
                .map(|p| centers.iter().map(|c| dist2(p, c)).fold(f64::INFINITY, f64::min))
                .collect();
            let total: f64 = d2.iter().sum();
            let pick = if total <= 0.0 {
                rng.random_range(0..n)
            } else {
                let mut target = rng.random::<f64>() * total;
                let mut chosen = n - 1;
                for (i, &d) in d2.iter().enumerate() {
                    if target < d {
                        chosen = i;
                        break;
                    }
                    target -= d;
                }
                chosen
            };
            centers.push(points[pick].clone());
        }

        let dim = points[0].len();
        let mut assign = vec![0usize; n];
        for _ in 0..100 {
            let mut changed = false;
            for (i, p) in points.iter().enumerate() {
                let mut bi = 0usize;
                let mut bd = f64::INFINITY;
                for (c, center) in centers.iter().enumerate() {
                    let d = dist2(p, center);
                    if d < bd {
                        bd = d;
                        bi = c;
                    }
                }
                if assign[i] != bi {
                    assign[i] = bi;
                    changed = true;
                }
            }
            let mut sums = vec![vec![0.0; dim]; k];
            let mut counts = vec![0usize; k];
            for (i, p) in points.iter().enumerate() {
                counts[assign[i]] += 1;
                for (d, &x) in p.iter().enumerate() {
                    sums[assign[i]][d] += x;
                }
            }
            for c in 0..k {
                if counts[c] > 0 {
                    for d in 0..dim {
                        centers[c][d] = sums[c][d] / counts[c] as f64;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let wcss: f64 = points.iter().enumerate().map(|(i, p)| dist2(p, &centers[assign[i]])).sum();
        if best.as_ref().map(|(b, _)| wcss < *b).unwrap_or(true) {
            best = Some((wcss, assign));
        }
    }
    best.expect("at least one restart").1
}
