//! Dense symmetric eigensolver as an independent oracle for the exact and
//! Lanczos spectra.

use gcm_core::graph::{build_graph, GcmGraph, Vertex};
use gcm_core::group::build_group;
use gcm_core::spectral::{abelian_spectrum, lambda_min_numeric, DEFAULT_NUMERIC_CAP, DEFAULT_SEED};
use nalgebra::DMatrix;

fn dense_eigenvalues(graph: &GcmGraph) -> Vec<f64> {
    let n = graph.vertex_count();
    let a = DMatrix::from_fn(n, n, |i, j| {
        f64::from(u8::from(graph.adjacent(Vertex(i), Vertex(j))))
    });
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

#[test]
fn exact_abelian_spectra_match_dense() {
    for (spec, m) in [
        ("C2", 2),
        ("C3", 2),
        ("C4", 2),
        ("C2xC2", 2),
        ("C5", 2),
        ("C6", 2),
        ("C3", 3),
        ("C2", 4),
        ("C4", 3),
    ] {
        let g = build_group(spec).unwrap();
        let graph = build_graph(&g, m).unwrap();
        let dense = dense_eigenvalues(&graph);
        let exact = abelian_spectrum(&g, m).unwrap();
        let mut flat: Vec<f64> = exact
            .pairs
            .iter()
            .flat_map(|&(v, k)| std::iter::repeat_n(v as f64, k))
            .collect();
        flat.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(flat.len(), dense.len(), "{spec} m={m}");
        for (x, y) in flat.iter().zip(&dense) {
            assert!((x - y).abs() < 1e-8, "{spec} m={m}: {x} vs {y}");
        }
    }
}

#[test]
fn lanczos_matches_dense_minimum() {
    for (spec, m) in [("S3", 2), ("S3", 3), ("Q8", 2), ("D4", 2), ("C7", 2)] {
        let graph = build_graph(&build_group(spec).unwrap(), m).unwrap();
        let dense_min = dense_eigenvalues(&graph)[0];
        let r = lambda_min_numeric(&graph, DEFAULT_NUMERIC_CAP, DEFAULT_SEED).unwrap();
        let (lo, hi) = r.bracket();
        assert!(
            lo - 1e-9 <= dense_min && dense_min <= hi + 1e-9,
            "{spec} m={m}: {dense_min} not in [{lo}, {hi}]"
        );
        assert!((r.value - dense_min).abs() < 1e-6, "{spec} m={m}");
        // The trace system bound.
        assert!(dense_min >= -((m * (m + 1) / 2) as f64) - 1e-9);
    }
}
