//! Spectra and regularity of `𝒢ₘ(G)`.

mod lanczos;

pub use lanczos::{smallest_eigenvalue, tql2, LanczosResult};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{binomial2, GcmGraph, Vertex};
use crate::group::{abelian_characters, GroupTable};

pub const DEFAULT_NUMERIC_CAP: usize = 50_000;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Numeric eigenvalues within this distance of an integer are reported as that integer.
pub const INTEGER_ROUNDING: f64 = 1e-6;

/// Integer eigenvalues with multiplicities, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSpectrum {
    pub pairs: Vec<(i64, usize)>,
}

impl ExactSpectrum {
    pub fn from_histogram(h: BTreeMap<i64, usize>) -> Self {
        ExactSpectrum {
            pairs: h.into_iter().rev().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    pub fn min(&self) -> i64 {
        self.pairs.last().map_or(0, |p| p.0)
    }

    pub fn max(&self) -> i64 {
        self.pairs.first().map_or(0, |p| p.0)
    }

    /// `Σ λᵏ·mult`.
    pub fn moment(&self, k: u32) -> i128 {
        self.pairs
            .iter()
            .map(|&(l, c)| (l as i128).pow(k) * c as i128)
            .sum()
    }

    pub fn multiplicity(&self, value: i64) -> usize {
        self.pairs.iter().find(|p| p.0 == value).map_or(0, |p| p.1)
    }
}

/// Exact spectrum of `𝒢ₘ(G)` for abelian `G`.
///
/// For a character tuple `(χ₁,…,χₘ)` the eigenvalue is `Σ_{𝐬∈𝒮} χ(𝐬)`; the
/// window `[k,l)` contributes `|G|−1` when `χ_k⋯χ_{l−1}` is trivial and `−1`
/// otherwise. With prefix products `P₀ = 𝟏, P_k = χ₁⋯χ_k`, a window is trivial
/// iff `P_{k−1} = P_{l−1}`, so `λ = −C(m+1,2) + |G|·#{equal prefix pairs}`.
pub fn abelian_spectrum(g: &GroupTable, m: usize) -> Result<ExactSpectrum> {
    let table = abelian_characters(g)?;
    let n = g.order();
    let total = (0..m)
        .try_fold(1usize, |a, _| a.checked_mul(n))
        .filter(|&t| t <= crate::graph::HARD_VERTEX_CAP)
        .ok_or(Error::TooLarge {
            what: "character tuples",
            size: n.saturating_pow(m as u32),
            cap: crate::graph::HARD_VERTEX_CAP,
        })?;
    let base = -(binomial2(m + 1) as i64);
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    let mut seen = vec![0usize; n];
    let mut prefix = vec![0usize; m + 1];
    for t in 0..total {
        let mut rest = t;
        for k in 1..=m {
            prefix[k] = table.product_index(prefix[k - 1], rest % n);
            rest /= n;
        }
        let mut pairs = 0;
        for &p in &prefix {
            pairs += seen[p];
            seen[p] += 1;
        }
        for &p in &prefix {
            seen[p] = 0;
        }
        *hist.entry(base + (n * pairs) as i64).or_insert(0) += 1;
    }
    Ok(ExactSpectrum::from_histogram(hist))
}

/// Round to an integer when within [`INTEGER_ROUNDING`].
pub fn as_integer(x: f64) -> Option<i64> {
    let r = libm::round(x);
    ((x - r).abs() < INTEGER_ROUNDING).then_some(r as i64)
}

/// `λ_min(A)` by Lanczos, with an explicit residual bound.
pub fn lambda_min_numeric(graph: &GcmGraph, cap: usize, seed: u64) -> Result<LanczosResult> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(Error::TooLarge {
            what: "numeric eigenproblem",
            size: n,
            cap,
        });
    }
    let tol = 1e-8 * graph.degree() as f64;
    smallest_eigenvalue(&graph.adjacency_lists(), seed, tol, 10 * n)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    /// every edge / non-adjacent pair scanned
    Exhaustive,
    /// pairs through `𝐞` only, relying on vertex-transitivity
    Transitive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub mode: RegularityMode,
    pub vertices: usize,
    pub degree: usize,
    pub regular: bool,
    /// Distinct common-neighbour counts over adjacent pairs.
    pub a_values: Vec<usize>,
    /// Distinct counts over distinct non-adjacent pairs (`m = 2` only).
    pub c_values: Option<Vec<usize>>,
    pub expected_degree: usize,
    pub expected_a: usize,
    pub expected_c: Option<usize>,
}

impl RegularityReport {
    pub fn degree_ok(&self) -> bool {
        self.regular && self.degree == self.expected_degree
    }

    pub fn a_ok(&self) -> bool {
        self.a_values == [self.expected_a]
    }

    pub fn c_ok(&self) -> bool {
        match (&self.c_values, self.expected_c) {
            // vacuous when there are no non-adjacent pairs (K4 for C2)
            (Some(v), Some(c)) => v.iter().all(|&x| x == c),
            (None, None) => true,
            _ => false,
        }
    }

    pub fn passed(&self) -> bool {
        self.degree_ok() && self.a_ok() && self.c_ok()
    }
}

/// Edge regularity `(|G|ᵐ, C(m+1,2)(|G|−1), |G|+2m−4)`, plus `c = 6` on
/// non-adjacent pairs when `m = 2`.
pub fn check_regularity(graph: &GcmGraph) -> RegularityReport {
    let (n, m) = (graph.group().order(), graph.m());
    let count = graph.vertex_count();
    let mut a_set = alloc::collections::BTreeSet::new();
    let mut c_set = alloc::collections::BTreeSet::new();
    let mut degrees = alloc::collections::BTreeSet::new();
    let mode = if graph.is_materialized() {
        for u in 0..count {
            let ru = graph.row(Vertex(u)).unwrap();
            degrees.insert(ru.count());
            for v in u + 1..count {
                let rv = graph.row(Vertex(v)).unwrap();
                let common = ru.intersection_count(rv);
                if ru.contains(v) {
                    a_set.insert(common);
                } else if m == 2 {
                    c_set.insert(common);
                }
            }
        }
        RegularityMode::Exhaustive
    } else {
        let e = graph.identity();
        degrees.insert(graph.neighbors(e).len());
        for v in 1..count {
            let v = Vertex(v);
            let adj = graph.adjacent(e, v);
            if adj || m == 2 {
                let c = graph.common_neighbors(e, v).len();
                if adj {
                    a_set.insert(c);
                } else {
                    c_set.insert(c);
                }
            }
        }
        RegularityMode::Transitive
    };
    RegularityReport {
        mode,
        vertices: count,
        degree: degrees.iter().next().copied().unwrap_or(0),
        regular: degrees.len() == 1,
        a_values: a_set.into_iter().collect(),
        c_values: (m == 2).then(|| c_set.into_iter().collect()),
        expected_degree: binomial2(m + 1) * (n - 1),
        expected_a: n + 2 * m - 4,
        expected_c: (m == 2).then_some(6),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Q26Verdict {
    StrictlyAbove,
    AtBound,
    Below,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Q26Report {
    pub bound: i64,
    pub exact: Option<i64>,
    pub numeric: Option<LanczosResult>,
    pub verdict: Q26Verdict,
}

/// Compare `λ_min` with `−C(m+1,2)`: exactly for abelian groups, otherwise
/// numerically. `Below` only when the whole certified bracket lies under
/// the bound.
pub fn question26_probe(
    g: &GroupTable,
    m: usize,
    numeric_cap: usize,
    seed: u64,
) -> Result<Q26Report> {
    if m < 2 {
        return Err(Error::BadParameters("m must be at least 2".into()));
    }
    let bound = -(binomial2(m + 1) as i64);
    if g.is_abelian() {
        let lmin = abelian_spectrum(g, m)?.min();
        let verdict = match lmin.cmp(&bound) {
            core::cmp::Ordering::Greater => Q26Verdict::StrictlyAbove,
            core::cmp::Ordering::Equal => Q26Verdict::AtBound,
            core::cmp::Ordering::Less => Q26Verdict::Below,
        };
        return Ok(Q26Report {
            bound,
            exact: Some(lmin),
            numeric: None,
            verdict,
        });
    }
    let graph = GcmGraph::new(g, m, 0)?;
    let r = lambda_min_numeric(&graph, numeric_cap, seed)?;
    let (lo, hi) = r.bracket();
    let b = bound as f64;
    let verdict = if hi < b {
        Q26Verdict::Below
    } else if (r.value - b).abs() < INTEGER_ROUNDING {
        Q26Verdict::AtBound
    } else if lo > b {
        Q26Verdict::StrictlyAbove
    } else {
        return Err(Error::NoConvergence(r.iterations));
    };
    Ok(Q26Report {
        bound,
        exact: None,
        numeric: Some(r),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::group::build_group;

    #[test]
    fn abelian_examples() {
        let s = abelian_spectrum(&build_group("C3").unwrap(), 2).unwrap();
        assert_eq!(s.pairs, vec![(6, 1), (0, 6), (-3, 2)]);
        let s = abelian_spectrum(&build_group("C2").unwrap(), 2).unwrap();
        assert_eq!(s.pairs, vec![(3, 1), (-1, 3)]);
        let s = abelian_spectrum(&build_group("C3").unwrap(), 3).unwrap();
        assert_eq!(s.min(), -3);
        assert_eq!(
            abelian_spectrum(&build_group("S3").unwrap(), 2),
            Err(Error::NotAbelian)
        );
    }

    #[test]
    fn regularity_examples() {
        let r = check_regularity(&build_graph(&build_group("C4").unwrap(), 2).unwrap());
        assert!(r.passed());
        assert_eq!(
            (r.vertices, r.degree, r.a_values.clone(), r.c_values.clone()),
            (16, 9, vec![4], Some(vec![6]))
        );
        let r = check_regularity(&build_graph(&build_group("C2").unwrap(), 3).unwrap());
        assert!(r.passed());
        assert_eq!((r.degree, r.a_values.clone()), (6, vec![4]));
        let g = GcmGraph::new(&build_group("S3").unwrap(), 2, 0).unwrap();
        let r = check_regularity(&g);
        assert_eq!(r.mode, RegularityMode::Transitive);
        assert!(r.passed());
    }

    #[test]
    fn numeric_matches_exact() {
        let g = build_graph(&build_group("C4").unwrap(), 2).unwrap();
        let r = lambda_min_numeric(&g, DEFAULT_NUMERIC_CAP, DEFAULT_SEED).unwrap();
        assert!((r.value + 3.0).abs() < 1e-8);
        let g = build_graph(&build_group("C2").unwrap(), 2).unwrap();
        let r = lambda_min_numeric(&g, DEFAULT_NUMERIC_CAP, DEFAULT_SEED).unwrap();
        assert_eq!(as_integer(r.value), Some(-1));
    }

    #[test]
    fn probe_examples() {
        let c3 = build_group("C3").unwrap();
        assert_eq!(
            question26_probe(&c3, 2, 1000, 1).unwrap().verdict,
            Q26Verdict::AtBound
        );
        assert_eq!(
            question26_probe(&c3, 3, 1000, 1).unwrap().verdict,
            Q26Verdict::StrictlyAbove
        );
        let c2 = build_group("C2").unwrap();
        assert_eq!(
            question26_probe(&c2, 2, 1000, 1).unwrap().verdict,
            Q26Verdict::StrictlyAbove
        );
    }
}
