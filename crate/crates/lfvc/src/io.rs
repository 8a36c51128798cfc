//! File formats and serialization.
//!
//! Edge lists are one `i<TAB>j` pair per line (any whitespace accepted on
//! input), 0-based ids, `#` comments and blank lines ignored; the node
//! count defaults to one past the largest id. Preference files are
//! `user<TAB>item<TAB>weight` triples. JSON output carries a `"schema": 1`
//! version field and every float is rounded to 12 significant digits so
//! reruns diff cleanly.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use crate::baselines::L1TestResult;
use crate::detect::{CommunityAssignment, RemovalTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::PreferenceVectors;
use crate::sbm::SweepRow;

/// Parse an edge-list file. `n_override`, when given, must cover every id
/// in the file.
pub fn load_edge_list(path: &Path, n_override: Option<usize>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, n_override)
}

pub fn parse_edge_list(text: &str, n_override: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<usize> {
            s.ok_or_else(|| Error::Parse {
                line: lineno + 1,
                msg: "expected two node ids".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse { line: lineno + 1, msg: format!("bad node id: {e}") })
        };
        let i = parse(fields.next())?;
        let j = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "expected exactly two node ids".into(),
            });
        }
        max_id = Some(max_id.map_or(i.max(j), |m: usize| m.max(i).max(j)));
        edges.push((i, j));
    }
    let n = match (n_override, max_id) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Graph::from_edges(&edges, n)
}

/// Parse a `user item weight` preference file.
pub fn load_preferences(path: &Path) -> Result<PreferenceVectors> {
    let text = std::fs::read_to_string(path)?;
    parse_preferences(&text)
}

pub fn parse_preferences(text: &str) -> Result<PreferenceVectors> {
    let mut triples = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `user item weight`, found {} fields", fields.len()),
            });
        }
        let user: usize = fields[0].parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: format!("bad user id: {e}"),
        })?;
        let item: usize = fields[1].parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: format!("bad item id: {e}"),
        })?;
        let weight: f64 = fields[2].parse().map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: format!("bad weight: {e}"),
        })?;
        if weight < 0.0 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("negative weight {weight}"),
            });
        }
        triples.push((user, item, weight));
    }
    Ok(PreferenceVectors::from_triples(triples))
}

/// Round to 12 significant digits; keeps outputs byte-stable across runs
/// and platforms that agree on the arithmetic.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor();
    let scale = 10f64.powf(11.0 - magnitude);
    (x * scale).round() / scale
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(num) => {
            if num.is_f64() {
                let rounded = round_sig(num.as_f64().unwrap());
                if let Some(n) = serde_json::Number::from_f64(rounded) {
                    *num = n;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Serialize any value to pretty JSON with rounded floats and a trailing
/// newline.
pub fn to_canonical_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn trace_to_json(trace: &RemovalTrace) -> Result<String> {
    to_canonical_json(trace)
}

pub fn assignment_to_json(assignment: &CommunityAssignment) -> Result<String> {
    to_canonical_json(assignment)
}

pub fn l1_result_to_json(result: &L1TestResult) -> Result<String> {
    let v = serde_json::json!({
        "schema": 1,
        "t": result.t,
        "i_star": result.i_star,
        "declared": result.declared,
        "selected": result.selected,
        "warnings": result.warnings,
    });
    to_canonical_json(&v)
}

/// `ratio,detector,metric,mean,stderr,trials` with one row per cell.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("ratio,detector,metric,mean,stderr,trials\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_float(row.ratio),
            row.detector,
            row.metric,
            format_float(round_sig(row.mean)),
            format_float(round_sig(row.stderr)),
            row.trials
        );
    }
    out
}

/// `node,score` centrality table.
pub fn centrality_to_csv(scores: &[f64]) -> String {
    let mut out = String::from("node,score\n");
    for (node, &score) in scores.iter().enumerate() {
        let _ = writeln!(out, "{},{}", node, format_float(round_sig(score)));
    }
    out
}

/// `step,discovered_communities,rscs` evaluation curve.
pub fn rscs_curve_to_csv(rows: &[(usize, usize, f64)]) -> String {
    let mut out = String::from("step,discovered_communities,rscs\n");
    for &(step, communities, value) in rows {
        let _ = writeln!(out, "{},{},{}", step, communities, format_float(round_sig(value)));
    }
    out
}

fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x}")
    }
}

/// Graphviz export: one color class per community, removed nodes dashed
/// with their original edges, singleton survivors cross-labeled.
pub fn dot_export(g_original: &Graph, assignment: &CommunityAssignment) -> String {
    const PALETTE: [&str; 8] = [
        "lightblue", "salmon", "palegreen", "gold", "orchid", "turquoise", "tan", "lightgray",
    ];
    let mut community_of = vec![None; g_original.node_count()];
    for (k, community) in assignment.communities.iter().enumerate() {
        for &v in community {
            community_of[v] = Some(k);
        }
    }
    let removed: std::collections::BTreeSet<usize> = assignment.removed.iter().copied().collect();
    let singleton: std::collections::BTreeSet<usize> =
        assignment.singleton_survivors.iter().copied().collect();

    let mut out = String::from("graph communities {\n  node [style=filled];\n");
    for v in 0..g_original.node_count() {
        if removed.contains(&v) {
            let _ = writeln!(out, "  {v} [style=dashed, label=\"{v} (removed)\"];");
        } else if singleton.contains(&v) {
            let _ = writeln!(out, "  {v} [fillcolor=white, label=\"{v} X\"];");
        } else if let Some(k) = community_of[v] {
            let _ = writeln!(out, "  {v} [fillcolor={}];", PALETTE[k % PALETTE.len()]);
        } else {
            let _ = writeln!(out, "  {v} [fillcolor=white];");
        }
    }
    for (i, j) in g_original.edges() {
        let cut = removed.contains(&i) || removed.contains(&j);
        let style = if cut { " [style=dotted]" } else { "" };
        let _ = writeln!(out, "  {i} -- {j}{style};");
    }
    out.push_str("}\n");
    out
}
