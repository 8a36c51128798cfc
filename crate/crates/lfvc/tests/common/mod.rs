//! Shared oracles for the integration and acceptance suites. Everything
//! here is deliberately independent of the library's computation paths:
//! the eigensolver oracle is a hand-rolled cyclic Jacobi iteration and the
//! betweenness oracle counts shortest paths through adjacency-matrix
//! powers, so agreement with the library is a genuine cross-check.

// Compiled once per test target; not every target uses every helper.
#![allow(dead_code)]

use std::path::PathBuf;

use lfvc::graph::Graph;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn karate() -> Graph {
    lfvc::io::load_edge_list(&fixture("karate.edges"), None).expect("karate fixture")
}

pub fn dolphins() -> Graph {
    lfvc::io::load_edge_list(&fixture("dolphins.edges"), None).expect("dolphins fixture")
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(&edges, n).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(&edges, n).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(&edges, n).unwrap()
}

pub fn star_graph(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(&edges, leaves + 1).unwrap()
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues ascending with matching eigenvector columns.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off <= 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let values: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let vectors: Vec<Vec<f64>> =
        order.iter().map(|&col| (0..n).map(|row| v[row][col]).collect()).collect();
    (values, vectors)
}

/// Laplacian of the active subgraph as plain nested vectors, for the
/// Jacobi oracle.
pub fn dense_laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let nodes = g.active_nodes();
    let mut pos = vec![usize::MAX; g.node_count()];
    for (k, &v) in nodes.iter().enumerate() {
        pos[v] = k;
    }
    let mut l = vec![vec![0.0; nodes.len()]; nodes.len()];
    for (k, &v) in nodes.iter().enumerate() {
        l[k][k] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            l[k][pos[w]] = -1.0;
        }
    }
    l
}

/// Betweenness by shortest-path counting through integer matrix powers:
/// sigma_st is the (s,t) entry of A^d(s,t), and the count of shortest s-t
/// paths through i is sigma_si * sigma_it when the distances add up.
/// Unreachable pairs contribute nothing. Raw sums over unordered pairs.
pub fn betweenness_oracle(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    let mut adj = vec![vec![0f64; n]; n];
    for i in 0..n {
        if g.is_active(i) {
            dist[i][i] = 0;
        }
        for &j in g.neighbors(i) {
            dist[i][j] = 1;
            adj[i][j] = 1.0;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
            }
        }
    }
    // powers[d][s][t] = number of walks of length d; at d = dist(s,t)
    // every such walk is a shortest path.
    let diameter = dist
        .iter()
        .flat_map(|row| row.iter())
        .filter(|&&d| d < INF)
        .max()
        .copied()
        .unwrap_or(0);
    let mut powers: Vec<Vec<Vec<f64>>> = Vec::with_capacity(diameter + 1);
    let mut identity = vec![vec![0f64; n]; n];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    powers.push(identity);
    for _ in 0..diameter {
        let prev = powers.last().unwrap();
        let mut next = vec![vec![0f64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if prev[i][k] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += prev[i][k] * adj[k][j];
                }
            }
        }
        powers.push(next);
    }
    let sigma = |s: usize, t: usize| -> f64 {
        if dist[s][t] >= INF {
            0.0
        } else {
            powers[dist[s][t]][s][t]
        }
    };
    let mut btw = vec![0.0; n];
    for i in 0..n {
        for s in 0..n {
            for t in s + 1..n {
                if s == i || t == i || dist[s][t] >= INF {
                    continue;
                }
                if dist[s][i] < INF && dist[i][t] < INF && dist[s][i] + dist[i][t] == dist[s][t] {
                    btw[i] += sigma(s, i) * sigma(i, t) / sigma(s, t);
                }
            }
        }
    }
    btw
}

#[allow(dead_code)]
pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
}
