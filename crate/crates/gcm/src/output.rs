//! Output formats: JSON reports, CSV tables and DOT.

use std::fmt::Write as _;
use std::path::Path;

use gcm_core::clique::{CliqueKind, CliqueRecord, NeighborGraph};
use gcm_core::graph::{GcmGraph, Vertex};
use gcm_core::morphisms::VertexPermutation;
use gcm_core::spectral::{ExactSpectrum, RegularityMode, RegularityReport};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

pub fn summary_json(graph: &GcmGraph) -> Value {
    json!({
        "group": graph.group().label(),
        "n": graph.group().order(),
        "m": graph.m(),
        "vertices": graph.vertex_count(),
        "degree": graph.degree(),
        "edges": graph.edge_count(),
    })
}

/// One row of 0/1 per vertex.
pub fn adjacency_csv(graph: &GcmGraph) -> String {
    let n = graph.vertex_count();
    let mut out = String::with_capacity(n * (2 * n + 1));
    for u in 0..n {
        let mut row = vec!['0'; n];
        for w in graph.neighbors(Vertex(u)) {
            row[w.0] = '1';
        }
        for (i, c) in row.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push(c);
        }
        out.push('\n');
    }
    out
}

pub fn to_dot(graph: &GcmGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph \"G{}({})\" {{",
        graph.m(),
        graph.group().label()
    );
    for v in 0..graph.vertex_count() {
        let _ = writeln!(
            out,
            "  {v} [label=\"{}\"];",
            graph.display_vertex(Vertex(v))
        );
    }
    for (u, w) in graph.edges() {
        let _ = writeln!(out, "  {} -- {};", u.0, w.0);
    }
    out.push_str("}\n");
    out
}

/// `eigenvalue,multiplicity`, largest eigenvalue first, no header.
pub fn spectrum_csv(s: &ExactSpectrum) -> String {
    s.pairs.iter().map(|(v, k)| format!("{v},{k}\n")).collect()
}

pub fn spectrum_json(s: &ExactSpectrum) -> Value {
    json!({
        "exact": true,
        "eigenvalues": s.pairs.iter().map(|(v, k)| json!({"eigenvalue": v, "multiplicity": k})).collect::<Vec<_>>(),
        "min": s.min(),
        "max": s.max(),
    })
}

pub fn regularity_json(r: &RegularityReport) -> Value {
    json!({
        "mode": match r.mode {
            RegularityMode::Exhaustive => "exhaustive",
            RegularityMode::Transitive => "transitive",
        },
        "vertices": r.vertices,
        "degree": r.degree,
        "regular": r.regular,
        "a_values": r.a_values,
        "c_values": r.c_values,
        "expected": {"degree": r.expected_degree, "a": r.expected_a, "c": r.expected_c},
        "passed": r.passed(),
    })
}

fn kind_json(kind: CliqueKind) -> (&'static str, Value) {
    match kind {
        CliqueKind::Interval { k, l } => ("interval", json!({"window": [k, l]})),
        CliqueKind::Dispersed { x, j } => ("dispersed", json!({"x": x, "j": j})),
        CliqueKind::DispersedOther => ("dispersed-other", Value::Null),
        CliqueKind::MixedInvalid => ("mixed-invalid", Value::Null),
    }
}

pub fn clique_json(graph: &GcmGraph, c: &CliqueRecord, nbr: &NeighborGraph) -> Value {
    let (ty, extra) = kind_json(c.kind);
    let mut v = json!({
        "size": c.vertices.len(),
        "type": ty,
        "vertices": c.vertices.iter().map(|&v| graph.display_vertex(v)).collect::<Vec<_>>(),
        "neighbor_degree_histogram": nbr
            .degree_histogram()
            .into_iter()
            .map(|(d, k)| json!([d, k]))
            .collect::<Vec<_>>(),
    });
    if let (Value::Object(extra), Value::Object(obj)) = (extra, &mut v) {
        obj.extend(extra);
    }
    v
}

pub fn perm_json(p: &VertexPermutation) -> Value {
    json!(p.images())
}

fn text_lines(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                text_lines(&key, x, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}

/// Render a JSON report as pretty JSON or `key: value` lines.
pub fn render(v: &Value, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(v)? + "\n"),
        Format::Text => {
            let mut out = String::new();
            text_lines("", v, &mut out);
            Ok(out)
        }
        Format::Csv | Format::Dot => Err(CliError::Usage(format!(
            "format {format:?} is not available for this report"
        ))),
    }
}

pub fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
