//! Maximum cliques through the identity, their interval/dispersed type, and
//! the neighbour graph that tells the two types apart.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{intervals, GcmGraph, IntervalElement, Vertex, DEFAULT_MATERIALIZE_CAP};
use crate::group::Elem;
use crate::simple::SimpleGraph;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CliqueKind {
    /// All non-identity vertices lie in `𝐗_{[k,l)}`.
    Interval { k: usize, l: usize },
    /// Non-identity vertices are `C(x, j) = {𝐱⁻¹_{[i,j)} : i < j} ∪ {𝐱_{[j,k)} : k > j}`.
    Dispersed { x: Elem, j: usize },
    /// A dispersed clique of another recognised shape: the triangle
    /// `{𝐱_{[i,j)}, 𝐱_{[i,k)}, 𝐱_{[j,k)}}` with `o(x) = 2` at `m = 3`, or any
    /// dispersed shape at `m = 2`.
    DispersedOther,
    /// None of the above.
    MixedInvalid,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CliqueRecord {
    /// Sorted ascending; includes `𝐞` when `contains_e`.
    pub vertices: Vec<Vertex>,
    pub contains_e: bool,
    pub kind: CliqueKind,
}

fn require_small(graph: &GcmGraph) -> Result<()> {
    if graph.vertex_count() > DEFAULT_MATERIALIZE_CAP {
        return Err(Error::TooLarge {
            what: "clique search vertex count",
            size: graph.vertex_count(),
            cap: DEFAULT_MATERIALIZE_CAP,
        });
    }
    Ok(())
}

/// All maximal cliques of `g` (Bron–Kerbosch with max-degree pivoting).
pub fn maximal_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn expand(
        g: &SimpleGraph,
        r: &mut Vec<usize>,
        p: BitSet,
        mut x: BitSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.intersection_count(g.neighbors(u)), core::cmp::Reverse(u)))
            .unwrap();
        let mut candidates = p.clone();
        candidates.difference_with(g.neighbors(pivot));
        let mut p = p;
        for v in candidates.iter() {
            r.push(v);
            expand(
                g,
                r,
                p.intersection(g.neighbors(v)),
                x.intersection(g.neighbors(v)),
                out,
            );
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    let n = g.order();
    let mut out = Vec::new();
    expand(
        g,
        &mut Vec::new(),
        BitSet::full(n),
        BitSet::new(n),
        &mut out,
    );
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

/// `C(x, j)` as sorted vertices (without `𝐞`).
pub fn dispersed_set(graph: &GcmGraph, x: Elem, j: usize) -> Vec<Vertex> {
    let xi = graph.group().inv(x);
    let m = graph.m();
    let mut v: Vec<Vertex> = (1..j)
        .map(|i| graph.interval_vertex(IntervalElement { x: xi, k: i, l: j }))
        .chain((j + 1..=m + 1).map(|k| graph.interval_vertex(IntervalElement { x, k: j, l: k })))
        .collect();
    v.sort_unstable();
    v
}

/// Type of a clique through `𝐞`.
pub fn classify_clique(graph: &GcmGraph, vertices: &[Vertex]) -> Result<CliqueKind> {
    let e = graph.identity();
    if !vertices.contains(&e) {
        return Err(Error::NotAClique);
    }
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if u == v || !graph.adjacent(u, v) {
                return Err(Error::NotAClique);
            }
        }
    }
    let mut star: Vec<Vertex> = vertices.iter().copied().filter(|&v| v != e).collect();
    star.sort_unstable();
    let ivs: Vec<IntervalElement> = star
        .iter()
        .map(|&v| graph.as_interval(v).unwrap())
        .collect();
    let Some(first) = ivs.first() else {
        return Ok(CliqueKind::MixedInvalid);
    };
    if ivs.iter().all(|s| (s.k, s.l) == (first.k, first.l)) {
        return Ok(CliqueKind::Interval {
            k: first.k,
            l: first.l,
        });
    }
    let m = graph.m();
    let n = graph.group().order();
    for x in 1..n {
        for j in 1..=m + 1 {
            if dispersed_set(graph, x, j) == star {
                return Ok(CliqueKind::Dispersed { x, j });
            }
        }
    }
    if m == 3 && star.len() == 3 {
        let x = first.x;
        let same_x = ivs.iter().all(|s| s.x == x) && graph.group().elem_order(x) == 2;
        let mut ends: BTreeSet<usize> = BTreeSet::new();
        for s in &ivs {
            ends.insert(s.k);
            ends.insert(s.l);
        }
        if same_x && ends.len() == 3 {
            return Ok(CliqueKind::DispersedOther);
        }
    }
    if m == 2 {
        return Ok(CliqueKind::DispersedOther);
    }
    Ok(CliqueKind::MixedInvalid)
}

/// `V(𝐞)` as a simple graph, in generator order.
fn identity_neighbourhood(graph: &GcmGraph) -> (Vec<Vertex>, SimpleGraph) {
    let mut vs = graph.generator_vertices().to_vec();
    vs.sort_unstable();
    let g = graph.induced(&vs);
    (vs, g)
}

/// All maximum cliques containing `𝐞`, classified, sorted by vertex list.
pub fn max_cliques_through_e(graph: &GcmGraph) -> Result<Vec<CliqueRecord>> {
    require_small(graph)?;
    let (vs, local) = identity_neighbourhood(graph);
    let all = maximal_cliques(&local);
    let best = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for c in all.into_iter().filter(|c| c.len() == best) {
        let mut vertices: Vec<Vertex> = core::iter::once(graph.identity())
            .chain(c.iter().map(|&i| vs[i]))
            .collect();
        vertices.sort_unstable();
        let kind = classify_clique(graph, &vertices)?;
        out.push(CliqueRecord {
            vertices,
            contains_e: true,
            kind,
        });
    }
    out.sort();
    Ok(out)
}

/// Size of a largest clique (graphs are vertex-transitive, so `𝐞` may be assumed).
pub fn clique_number(graph: &GcmGraph) -> Result<usize> {
    Ok(max_cliques_through_e(graph)?
        .first()
        .map_or(1, |c| c.vertices.len()))
}

/// `𝒩(Q*)` inside `V(𝐞)`: the vertices of `V(𝐞) ∖ Q*` adjacent to some
/// vertex of `Q*`, with their induced edges.
#[derive(Clone, Debug)]
pub struct NeighborGraph {
    pub vertices: Vec<Vertex>,
    pub graph: SimpleGraph,
}

impl NeighborGraph {
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        self.graph.degree_histogram()
    }

    pub fn is_regular(&self) -> bool {
        self.graph.regular_degree().is_some()
    }

    /// Distinct degrees, ascending.
    pub fn degree_set(&self) -> Vec<usize> {
        self.degree_histogram().into_iter().map(|p| p.0).collect()
    }
}

pub fn neighbor_graph(graph: &GcmGraph, clique: &[Vertex]) -> Result<NeighborGraph> {
    let e = graph.identity();
    if !clique.contains(&e) {
        return Err(Error::PreconditionFailed(
            "clique must contain the identity".into(),
        ));
    }
    let star: Vec<Vertex> = clique.iter().copied().filter(|&v| v != e).collect();
    let mut vertices: Vec<Vertex> = graph
        .generator_vertices()
        .iter()
        .copied()
        .filter(|v| !star.contains(v) && star.iter().any(|&q| graph.adjacent(q, *v)))
        .collect();
    vertices.sort_unstable();
    let g = graph.induced(&vertices);
    Ok(NeighborGraph { vertices, graph: g })
}

/// Convenience: the maximum interval clique `{𝐞} ∪ 𝐗_{[k,l)}`.
pub fn interval_clique(graph: &GcmGraph, k: usize, l: usize) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = core::iter::once(graph.identity())
        .chain(
            (1..graph.group().order()).map(|x| graph.interval_vertex(IntervalElement { x, k, l })),
        )
        .collect();
    v.sort_unstable();
    v
}

/// Convenience: `{𝐞} ∪ C(x, j)`.
pub fn dispersed_clique(graph: &GcmGraph, x: Elem, j: usize) -> Vec<Vertex> {
    let mut v = dispersed_set(graph, x, j);
    v.push(graph.identity());
    v.sort_unstable();
    v
}

/// Every interval, for iteration convenience.
pub fn all_intervals(graph: &GcmGraph) -> Vec<(usize, usize)> {
    intervals(graph.m())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::group::build_group;

    fn graph(spec: &str, m: usize) -> GcmGraph {
        build_graph(&build_group(spec).unwrap(), m).unwrap()
    }

    #[test]
    fn bron_kerbosch_on_small_graphs() {
        let k4 = SimpleGraph::from_fn(4, |_, _| true);
        assert_eq!(maximal_cliques(&k4), vec![vec![0, 1, 2, 3]]);
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(maximal_cliques(&c5).len(), 5);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&graph("C2", 2)).unwrap(), 4);
        assert_eq!(clique_number(&graph("C4", 3)).unwrap(), 4);
        assert_eq!(clique_number(&graph("C5", 2)).unwrap(), 5);
        let g = graph("C5", 2);
        assert!(max_cliques_through_e(&g)
            .unwrap()
            .iter()
            .all(|c| matches!(c.kind, CliqueKind::Interval { .. })));
        let g = graph("C3", 4);
        let cl = max_cliques_through_e(&g).unwrap();
        assert_eq!(cl[0].vertices.len(), 5);
        assert!(cl
            .iter()
            .any(|c| matches!(c.kind, CliqueKind::Dispersed { .. })));
    }

    #[test]
    fn classification_examples() {
        let g = graph("C4", 2);
        assert_eq!(
            classify_clique(&g, &interval_clique(&g, 1, 3)).unwrap(),
            CliqueKind::Interval { k: 1, l: 3 }
        );
        let g = graph("C4", 3);
        let q = dispersed_clique(&g, 1, 1);
        assert_eq!(
            classify_clique(&g, &q).unwrap(),
            CliqueKind::Dispersed { x: 1, j: 1 }
        );
        let g = graph("C2", 3);
        let tri: Vec<Vertex> = [(1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(k, l)| g.interval_vertex(IntervalElement { x: 1, k, l }))
            .chain(core::iter::once(Vertex(0)))
            .collect();
        assert_eq!(
            classify_clique(&g, &tri).unwrap(),
            CliqueKind::DispersedOther
        );
        assert_eq!(
            classify_clique(&g, &[Vertex(0), Vertex(5)]),
            Err(Error::NotAClique)
        );
    }

    #[test]
    fn neighbour_graph_profiles() {
        let g = graph("C4", 3);
        let ng = neighbor_graph(&g, &interval_clique(&g, 1, 2)).unwrap();
        assert_eq!(ng.graph.regular_degree(), Some(4));
        let ng = neighbor_graph(&g, &dispersed_clique(&g, 1, 1)).unwrap();
        assert_eq!(ng.degree_set(), vec![3, 4, 5]);
        let ng = neighbor_graph(&g, &dispersed_clique(&g, 2, 1)).unwrap();
        assert_eq!(ng.degree_set(), vec![2, 3]);
        let g = graph("C2xC2", 3);
        let ng = neighbor_graph(&g, &dispersed_clique(&g, 1, 1)).unwrap();
        assert_eq!(ng.degree_set(), vec![2, 3]);
    }
}
