//! Evaluation metrics: community-size curves and the residual community
//! similarity over sparse preference vectors.

use std::collections::HashMap;

use crate::detect::{CommunityAssignment, RemovalTrace};

/// Sparse nonnegative preference vectors keyed by user id. Entries are
/// `(item, weight)` pairs sorted by item; missing entries are zero.
#[derive(Debug, Clone, Default)]
pub struct PreferenceVectors {
    vectors: HashMap<usize, Vec<(usize, f64)>>,
    item_count: usize,
}

impl PreferenceVectors {
    /// Accumulate `(user, item, weight)` triples; repeated pairs sum.
    pub fn from_triples<I: IntoIterator<Item = (usize, usize, f64)>>(triples: I) -> Self {
        let mut builder: HashMap<usize, HashMap<usize, f64>> = HashMap::new();
        let mut item_count = 0;
        for (user, item, weight) in triples {
            item_count = item_count.max(item + 1);
            *builder.entry(user).or_default().entry(item).or_insert(0.0) += weight;
        }
        let vectors = builder
            .into_iter()
            .map(|(user, items)| {
                let mut v: Vec<(usize, f64)> = items.into_iter().collect();
                v.sort_unstable_by_key(|&(item, _)| item);
                (user, v)
            })
            .collect();
        Self { vectors, item_count }
    }

    pub fn get(&self, user: usize) -> Option<&[(usize, f64)]> {
        self.vectors.get(&user).map(Vec::as_slice)
    }

    pub fn user_count(&self) -> usize {
        self.vectors.len()
    }

    /// Inferred as one past the largest item id seen.
    pub fn item_count(&self) -> usize {
        self.item_count
    }
}

/// Cosine similarity of two sorted sparse vectors; zero vectors yield 0 so
/// downstream sums stay defined.
pub fn cosine(u: &[(usize, f64)], v: &[(usize, f64)]) -> f64 {
    let mut dot = 0.0;
    let (mut a, mut b) = (0usize, 0usize);
    while a < u.len() && b < v.len() {
        match u[a].0.cmp(&v[b].0) {
            std::cmp::Ordering::Less => a += 1,
            std::cmp::Ordering::Greater => b += 1,
            std::cmp::Ordering::Equal => {
                dot += u[a].1 * v[b].1;
                a += 1;
                b += 1;
            }
        }
    }
    let nu: f64 = u.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        0.0
    } else {
        dot / (nu * nv)
    }
}

/// Residual community similarity of one community plus coverage counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcsOutcome {
    pub value: f64,
    /// Community members with no preference vector (each contributed 0).
    pub missing_users: usize,
    /// Community members whose vector is all-zero.
    pub zero_vectors: usize,
}

/// Pairwise cosine sum over surviving members: removed nodes are skipped,
/// pairs are visited in sorted order so the floating-point result is
/// reproducible.
pub fn rcs(community: &[usize], removed: &[usize], prefs: &PreferenceVectors) -> RcsOutcome {
    let mut survivors: Vec<usize> =
        community.iter().copied().filter(|v| !removed.contains(v)).collect();
    survivors.sort_unstable();
    survivors.dedup();
    let mut missing_users = 0;
    let mut zero_vectors = 0;
    let vectors: Vec<Option<&[(usize, f64)]>> = survivors
        .iter()
        .map(|&u| {
            let v = prefs.get(u);
            match v {
                None => missing_users += 1,
                Some(w) if w.iter().all(|&(_, x)| x == 0.0) => zero_vectors += 1,
                _ => {}
            }
            v
        })
        .collect();
    let mut value = 0.0;
    for i in 0..survivors.len() {
        for j in i + 1..survivors.len() {
            if let (Some(u), Some(v)) = (vectors[i], vectors[j]) {
                value += cosine(u, v);
            }
        }
    }
    RcsOutcome { value, missing_users, zero_vectors }
}

/// Residual sum of community similarity across an assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct RscsReport {
    pub total: f64,
    pub per_community: Vec<f64>,
    pub missing_users: usize,
    pub zero_vectors: usize,
}

pub fn rscs(assignment: &CommunityAssignment, prefs: &PreferenceVectors) -> RscsReport {
    let mut per_community = Vec::with_capacity(assignment.communities.len());
    let mut missing_users = 0;
    let mut zero_vectors = 0;
    for community in &assignment.communities {
        let out = rcs(community, &assignment.removed, prefs);
        missing_users += out.missing_users;
        zero_vectors += out.zero_vectors;
        per_community.push(out.value);
    }
    RscsReport { total: per_community.iter().sum(), per_community, missing_users, zero_vectors }
}

/// Per-step `(normalized largest community size, discovered communities)`
/// curves; entry 0 describes the graph before any removal.
pub fn trace_curves(trace: &RemovalTrace, n: usize) -> Vec<(f64, usize)> {
    let mut out = Vec::with_capacity(trace.steps.len() + 1);
    out.push((
        trace.initial_largest_nonsingleton as f64 / n as f64,
        trace.initial_nonsingleton_components,
    ));
    for step in &trace.steps {
        out.push((
            step.largest_nonsingleton_after as f64 / n as f64,
            step.nonsingleton_components_after,
        ));
    }
    out
}
