//! The graph `𝒢ₘ(G) = Cay(Gᵐ, 𝒮)`.
//!
//! Vertices are mixed-radix indices with `g₁` least significant, so vertex 0
//! is the identity tuple. Intervals use 1-based half-open `[k, l)` with
//! `1 ≤ k < l ≤ m + 1`. Edges are `𝐠 ~ 𝐬·𝐠` for `𝐬 ∈ 𝒮`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::simple::SimpleGraph;

pub const DEFAULT_MATERIALIZE_CAP: usize = 4096;
pub const HARD_VERTEX_CAP: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub usize);

/// `𝐱_{[k,l)}`: `x` in coordinates `k..l−1`, `e` elsewhere.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalElement {
    pub x: Elem,
    pub k: usize,
    pub l: usize,
}

/// `𝐠 = (x₁)_{[i₁,i₂)} ⋯ (x_ϑ)_{[i_ϑ,i_{ϑ+1})}` with `x₁ ≠ e ≠ x_ϑ` and
/// consecutive values distinct. Interior values may be `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub boundaries: Vec<usize>,
    pub values: Vec<Elem>,
}

impl WeightDecomposition {
    pub fn weight(&self) -> usize {
        self.values.len()
    }

    /// Expand back to a coordinate tuple of length `m`.
    pub fn reassemble(&self, m: usize) -> Vec<Elem> {
        let mut t = vec![0; m];
        for (j, &x) in self.values.iter().enumerate() {
            for slot in &mut t[self.boundaries[j] - 1..self.boundaries[j + 1] - 1] {
                *slot = x;
            }
        }
        t
    }
}

/// All intervals `(k, l)` in lexicographic order.
pub fn intervals(m: usize) -> Vec<(usize, usize)> {
    crate::simple::pairs(m + 1)
}

pub fn binomial2(m_plus_1: usize) -> usize {
    m_plus_1 * (m_plus_1.saturating_sub(1)) / 2
}

#[derive(Clone, Debug)]
pub struct GcmGraph {
    group: GroupTable,
    m: usize,
    count: usize,
    gens: Vec<IntervalElement>,
    gen_vertices: Vec<Vertex>,
    rows: Option<Vec<BitSet>>,
}

/// `𝒢ₘ(G)` with the default materialization cap.
pub fn build_graph(group: &GroupTable, m: usize) -> Result<GcmGraph> {
    GcmGraph::new(group, m, DEFAULT_MATERIALIZE_CAP)
}

impl GcmGraph {
    /// Adjacency rows are stored when `|G|ᵐ ≤ materialize_cap`; otherwise the
    /// graph answers queries from the weight test alone.
    pub fn new(group: &GroupTable, m: usize, materialize_cap: usize) -> Result<Self> {
        let n = group.order();
        if m < 2 {
            return Err(Error::BadParameters(format!("m = {m}, need m ≥ 2")));
        }
        if n < 2 {
            return Err(Error::BadParameters("trivial group".into()));
        }
        let count = (0..m)
            .try_fold(1usize, |acc, _| acc.checked_mul(n))
            .filter(|&c| c <= HARD_VERTEX_CAP)
            .ok_or(Error::TooLarge {
                what: "vertex count",
                size: n.saturating_pow(m as u32),
                cap: HARD_VERTEX_CAP,
            })?;
        let mut gens = Vec::new();
        for (k, l) in intervals(m) {
            for x in 1..n {
                gens.push(IntervalElement { x, k, l });
            }
        }
        let mut g = GcmGraph {
            group: group.clone(),
            m,
            count,
            gen_vertices: Vec::new(),
            gens,
            rows: None,
        };
        g.gen_vertices = g.gens.iter().map(|&s| g.interval_vertex(s)).collect();
        if count <= materialize_cap {
            let mut rows = vec![BitSet::new(count); count];
            for (v, row) in rows.iter_mut().enumerate() {
                for &s in &g.gen_vertices {
                    row.insert(g.mul(s, Vertex(v)).0);
                }
            }
            g.rows = Some(rows);
        }
        Ok(g)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|G|ᵐ`.
    pub fn vertex_count(&self) -> usize {
        self.count
    }

    /// `C(m+1, 2)·(|G| − 1)`.
    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    pub fn edge_count(&self) -> usize {
        self.count * self.degree() / 2
    }

    pub fn is_materialized(&self) -> bool {
        self.rows.is_some()
    }

    /// The connection set `𝒮`, grouped by interval.
    pub fn generators(&self) -> &[IntervalElement] {
        &self.gens
    }

    pub fn generator_vertices(&self) -> &[Vertex] {
        &self.gen_vertices
    }

    pub fn identity(&self) -> Vertex {
        Vertex(0)
    }

    pub fn encode(&self, coords: &[Elem]) -> Vertex {
        debug_assert_eq!(coords.len(), self.m);
        let n = self.group.order();
        Vertex(coords.iter().rev().fold(0, |acc, &c| acc * n + c))
    }

    pub fn decode(&self, v: Vertex) -> Vec<Elem> {
        let n = self.group.order();
        let mut rest = v.0;
        (0..self.m)
            .map(|_| {
                let c = rest % n;
                rest /= n;
                c
            })
            .collect()
    }

    /// Apply a per-coordinate map.
    pub fn map_coords(&self, v: Vertex, mut f: impl FnMut(usize, Elem) -> Elem) -> Vertex {
        let c: Vec<Elem> = self
            .decode(v)
            .into_iter()
            .enumerate()
            .map(|(i, x)| f(i, x))
            .collect();
        self.encode(&c)
    }

    pub fn interval_vertex(&self, s: IntervalElement) -> Vertex {
        let mut c = vec![0; self.m];
        for slot in &mut c[s.k - 1..s.l - 1] {
            *slot = s.x;
        }
        self.encode(&c)
    }

    /// Coordinatewise product `u·v`.
    pub fn mul(&self, u: Vertex, v: Vertex) -> Vertex {
        let n = self.group.order();
        let (mut a, mut b) = (u.0, v.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += self.group.mul(a % n, b % n) * place;
            place *= n;
            a /= n;
            b /= n;
        }
        Vertex(out)
    }

    pub fn inv(&self, v: Vertex) -> Vertex {
        self.map_coords(v, |_, x| self.group.inv(x))
    }

    /// `ϑ(𝐠)`, with `ϑ(𝐞) = 0`.
    pub fn weight(&self, v: Vertex) -> usize {
        let c = self.decode(v);
        let Some(first) = c.iter().position(|&x| x != 0) else {
            return 0;
        };
        let last = c.iter().rposition(|&x| x != 0).unwrap();
        1 + c[first..=last].windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn weight_decomposition(&self, v: Vertex) -> Result<WeightDecomposition> {
        let c = self.decode(v);
        let first = c
            .iter()
            .position(|&x| x != 0)
            .ok_or(Error::IdentityVertex)?;
        let last = c.iter().rposition(|&x| x != 0).unwrap();
        let mut boundaries = vec![first + 1];
        let mut values = vec![c[first]];
        for i in first + 1..=last {
            if c[i] != c[i - 1] {
                boundaries.push(i + 1);
                values.push(c[i]);
            }
        }
        boundaries.push(last + 2);
        Ok(WeightDecomposition { boundaries, values })
    }

    /// `𝐬 ∈ 𝒮`.
    pub fn is_generator(&self, v: Vertex) -> bool {
        self.weight(v) == 1
    }

    /// The interval element a weight-1 vertex represents.
    pub fn as_interval(&self, v: Vertex) -> Option<IntervalElement> {
        let d = self.weight_decomposition(v).ok()?;
        (d.weight() == 1).then(|| IntervalElement {
            x: d.values[0],
            k: d.boundaries[0],
            l: d.boundaries[1],
        })
    }

    /// `u ~ v ⟺ u ≠ v and ϑ(v·u⁻¹) = 1`.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match &self.rows {
            Some(rows) => rows[u.0].contains(v.0),
            None => self.adjacent_by_weight(u, v),
        }
    }

    /// The weight test, bypassing any materialized rows.
    pub fn adjacent_by_weight(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.is_generator(self.mul(v, self.inv(u)))
    }

    /// Sorted neighbour list `{𝐬·v}`.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match &self.rows {
            Some(rows) => rows[v.0].iter().map(Vertex).collect(),
            None => {
                let mut out: Vec<Vertex> =
                    self.gen_vertices.iter().map(|&s| self.mul(s, v)).collect();
                out.sort_unstable();
                out
            }
        }
    }

    pub fn row(&self, v: Vertex) -> Option<&BitSet> {
        self.rows.as_ref().map(|r| &r[v.0])
    }

    /// Neighbour lists for every vertex (used by matvec kernels).
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.count)
            .map(|v| self.neighbors(Vertex(v)).into_iter().map(|w| w.0).collect())
            .collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.count {
            for w in self.neighbors(Vertex(u)) {
                if w.0 > u {
                    out.push((Vertex(u), w));
                }
            }
        }
        out
    }

    /// `V(u) ∩ V(v)`, computed as `V(𝐞) ∩ V(v·u⁻¹)` translated back by `u`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let g = self.mul(v, self.inv(u));
        let g_inv = self.inv(g);
        let mut out: Vec<Vertex> = self
            .gen_vertices
            .iter()
            .filter(|&&h| h != g && self.is_generator(self.mul(h, g_inv)))
            .map(|&h| self.mul(h, u))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn common_neighbor_count_with_identity(&self, g: Vertex) -> usize {
        self.common_neighbors(Vertex(0), g).len()
    }

    /// Membership test for `𝐡_{[i,j)}·𝐠_{[k,l)} ∈ 𝒮` via the three
    /// closed-form conditions on `(h, g)` and the endpoints.
    pub fn interval_product_in_s(&self, h: IntervalElement, g: IntervalElement) -> bool {
        let gi = self.group.inv(g.x);
        let same = h.k == g.k && h.l == g.l;
        (h.x != gi && same)
            || (h.x == g.x && (h.l == g.k || h.k == g.l))
            || (h.x == gi && ((h.k != g.k && h.l == g.l) || (h.k == g.k && h.l != g.l)))
    }

    /// Same question answered by computing the product's weight.
    pub fn interval_product_in_s_by_weight(&self, h: IntervalElement, g: IntervalElement) -> bool {
        self.is_generator(self.mul(self.interval_vertex(h), self.interval_vertex(g)))
    }

    /// `(x,e,x^2)`-style display.
    pub fn display_vertex(&self, v: Vertex) -> String {
        let names: Vec<&str> = self
            .decode(v)
            .into_iter()
            .map(|x| self.group.name(x))
            .collect();
        format!("({})", names.join(","))
    }

    /// Parse a display tuple back into a vertex.
    pub fn parse_vertex(&self, s: &str) -> Option<Vertex> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let coords: Option<Vec<Elem>> = inner
            .split(',')
            .map(|t| self.group.element_by_name(t.trim()))
            .collect();
        let coords = coords?;
        (coords.len() == self.m).then(|| self.encode(&coords))
    }

    pub fn induced(&self, vertices: &[Vertex]) -> SimpleGraph {
        SimpleGraph::from_fn(vertices.len(), |a, b| {
            self.adjacent(vertices[a], vertices[b])
        })
    }

    /// `I_m(x)`: the vertices `𝐱_{[k,l)}` and `𝐱⁻¹_{[k,l)}` with their induced graph.
    pub fn interval_subgraph(&self, x: Elem) -> Result<(Vec<Vertex>, SimpleGraph)> {
        if x == 0 {
            return Err(Error::IdentityElement);
        }
        if x >= self.group.order() {
            return Err(Error::IndexOutOfRange {
                index: x,
                max: self.group.order() - 1,
            });
        }
        let mut vs = Vec::new();
        for y in [x, self.group.inv(x)] {
            for (k, l) in intervals(self.m) {
                vs.push(self.interval_vertex(IntervalElement { x: y, k, l }));
            }
        }
        vs.sort_unstable();
        vs.dedup();
        let g = self.induced(&vs);
        Ok((vs, g))
    }

    /// `𝓑ₘ` read off the graph: intervals adjacent when some of their
    /// elements are adjacent. Vertex order follows [`intervals`].
    pub fn interval_meta_graph_observed(&self) -> SimpleGraph {
        let ivs = intervals(self.m);
        let n = self.group.order();
        SimpleGraph::from_fn(ivs.len(), |a, b| {
            let (k, l) = ivs[a];
            let (i, j) = ivs[b];
            (1..n).any(|x| {
                let u = self.interval_vertex(IntervalElement { x, k, l });
                (1..n).any(|y| {
                    self.adjacent(
                        u,
                        self.interval_vertex(IntervalElement { x: y, k: i, l: j }),
                    )
                })
            })
        })
    }

    /// Classify a weight-3 vertex; `None` for other weights.
    pub fn weight3_case(&self, g: Vertex) -> Option<Weight3Case> {
        let d = self.weight_decomposition(g).ok()?;
        if d.weight() != 3 {
            return None;
        }
        let grp = &self.group;
        let (x, y, z) = (d.values[0], d.values[1], d.values[2]);
        let xi = grp.inv(x);
        Some(if x == z {
            if y == 0 {
                if grp.elem_order(x) == 2 {
                    Weight3Case::EqualEndsGapInvolution
                } else {
                    Weight3Case::EqualEndsGap
                }
            } else if y == grp.mul(x, x) {
                Weight3Case::EqualEndsSquareMiddle
            } else {
                Weight3Case::EqualEndsOther
            }
        } else if y == 0 {
            if z == xi {
                Weight3Case::InverseEndsGap
            } else {
                Weight3Case::UnrelatedEndsGap
            }
        } else if z == xi {
            Weight3Case::InverseEndsFilled
        } else {
            let left = z == grp.mul(xi, y);
            let right = z == grp.mul(y, xi);
            match (left, right) {
                (true, true) => Weight3Case::CommutingQuotient,
                (true, false) | (false, true) => Weight3Case::OneSidedQuotient,
                (false, false) => Weight3Case::Generic,
            }
        })
    }

    /// Histogram of `|V(𝐞) ∩ V(𝐠)|` over all weight-3 vertices, split by case.
    pub fn weight3_profile(&self) -> Result<Weight3Profile> {
        if self.m < 3 {
            return Err(Error::BadParameters("weight 3 needs m ≥ 3".into()));
        }
        let mut counts = BTreeMap::new();
        let mut by_case: BTreeMap<Weight3Case, BTreeMap<usize, usize>> = BTreeMap::new();
        for v in 0..self.count {
            if let Some(case) = self.weight3_case(Vertex(v)) {
                let c = self.common_neighbor_count_with_identity(Vertex(v));
                *counts.entry(c).or_insert(0) += 1;
                *by_case.entry(case).or_default().entry(c).or_insert(0) += 1;
            }
        }
        Ok(Weight3Profile { counts, by_case })
    }
}

/// The rows of the weight-3 common-neighbour table, for
/// `𝐠 = 𝐱_{[i₁,i₂)} 𝐲_{[i₂,i₃)} 𝐳_{[i₃,i₄)}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight3Case {
    /// `z = x`, `y = e`, `o(x) = 2`.
    EqualEndsGapInvolution,
    /// `z = x`, `y = e`, `o(x) > 2`.
    EqualEndsGap,
    /// `z = x`, `y = x²` (`≠ e`).
    EqualEndsSquareMiddle,
    /// `z = x`, `y ∉ {e, x²}`.
    EqualEndsOther,
    /// `z = x⁻¹ ≠ x`, `y = e`.
    InverseEndsGap,
    /// `y = e`, `z ∉ {x, x⁻¹}`.
    UnrelatedEndsGap,
    /// `z = x⁻¹ ≠ x`, `y ≠ e`.
    InverseEndsFilled,
    /// `z = x⁻¹y = yx⁻¹` (x and y commute).
    CommutingQuotient,
    /// Exactly one of `z = x⁻¹y`, `z = yx⁻¹`.
    OneSidedQuotient,
    /// None of the above.
    Generic,
}

impl Weight3Case {
    /// The predicted size of `V(𝐞) ∩ V(𝐠)`.
    pub fn predicted(self) -> usize {
        match self {
            Weight3Case::EqualEndsGapInvolution => 6,
            Weight3Case::EqualEndsGap
            | Weight3Case::EqualEndsSquareMiddle
            | Weight3Case::InverseEndsGap => 4,
            Weight3Case::EqualEndsOther
            | Weight3Case::UnrelatedEndsGap
            | Weight3Case::CommutingQuotient => 2,
            Weight3Case::OneSidedQuotient => 1,
            Weight3Case::InverseEndsFilled | Weight3Case::Generic => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight3Profile {
    /// observed count → number of weight-3 vertices
    pub counts: BTreeMap<usize, usize>,
    /// per case: observed count → number of vertices
    pub by_case: BTreeMap<Weight3Case, BTreeMap<usize, usize>>,
}

impl Weight3Profile {
    /// Every case saw exactly its predicted count.
    pub fn matches_prediction(&self) -> bool {
        self.by_case
            .iter()
            .all(|(case, hist)| hist.keys().all(|&c| c == case.predicted()))
    }
}

/// `𝓑ₘ` from the closed form: intervals adjacent iff they share exactly one endpoint.
pub fn interval_meta_graph(m: usize) -> SimpleGraph {
    let ivs = intervals(m);
    SimpleGraph::from_fn(ivs.len(), |a, b| {
        let (k, l) = ivs[a];
        let (i, j) = ivs[b];
        [k == i, k == j, l == i, l == j]
            .iter()
            .filter(|&&t| t)
            .count()
            == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn graph(spec: &str, m: usize) -> GcmGraph {
        build_graph(&build_group(spec).unwrap(), m).unwrap()
    }

    #[test]
    fn sizes_and_degree() {
        let g = graph("C2", 2);
        assert_eq!((g.vertex_count(), g.degree()), (4, 3));
        let g = graph("C3", 2);
        assert_eq!((g.vertex_count(), g.degree()), (9, 6));
        let g = graph("C2", 3);
        assert_eq!((g.vertex_count(), g.degree()), (8, 6));
        let comp = SimpleGraph::from_fn(8, |a, b| !g.adjacent(Vertex(a), Vertex(b)));
        assert!(comp.is_perfect_matching());
        assert!(build_graph(&build_group("C2").unwrap(), 1).is_err());
    }

    #[test]
    fn weight_examples() {
        // m = 9 over C4 with a = x, b = x^2, c = x^3
        let g = GcmGraph::new(&build_group("C4").unwrap(), 9, 0).unwrap();
        let v = g.encode(&[0, 1, 1, 2, 2, 2, 3, 0, 0]);
        let d = g.weight_decomposition(v).unwrap();
        assert_eq!(d.weight(), 3);
        assert_eq!(d.boundaries, vec![2, 4, 7, 8]);
        assert_eq!(d.reassemble(9), g.decode(v));
        let h = g.encode(&[0, 1, 0, 0, 2, 2, 3, 3, 0]);
        let d = g.weight_decomposition(h).unwrap();
        assert_eq!(d.weight(), 4);
        assert_eq!(d.values, vec![1, 0, 2, 3]);
        assert_eq!(
            g.weight_decomposition(Vertex(0)),
            Err(Error::IdentityVertex)
        );
    }

    #[test]
    fn product_conditions_match_weights() {
        let g = graph("C4", 3);
        for &h in g.generators() {
            for &s in g.generators() {
                assert_eq!(
                    g.interval_product_in_s(h, s),
                    g.interval_product_in_s_by_weight(h, s)
                );
            }
        }
        let x = IntervalElement { x: 1, k: 1, l: 3 };
        let xi = IntervalElement { x: 3, k: 1, l: 3 };
        assert!(!g.interval_product_in_s(xi, x));
        assert!(g.interval_product_in_s(IntervalElement { x: 1, k: 3, l: 4 }, x));
    }

    #[test]
    fn display_round_trip() {
        let g = graph("C3", 3);
        let v = g.encode(&[1, 0, 2]);
        assert_eq!(g.display_vertex(v), "(x,e,x^2)");
        assert_eq!(g.parse_vertex("(x,e,x^2)"), Some(v));
    }

    #[test]
    fn interval_subgraphs() {
        let g = graph("C2", 3);
        let (vs, s) = g.interval_subgraph(1).unwrap();
        assert_eq!((vs.len(), s.regular_degree()), (6, Some(4)));
        let g = graph("C4", 3);
        let (vs, s) = g.interval_subgraph(1).unwrap();
        assert_eq!((vs.len(), s.regular_degree()), (12, Some(5)));
        assert_eq!(g.interval_subgraph(0).unwrap_err(), Error::IdentityElement);
    }

    #[test]
    fn meta_graph_formula_matches_graph() {
        for m in 2..=4 {
            assert_eq!(
                graph("C2", m).interval_meta_graph_observed(),
                interval_meta_graph(m)
            );
        }
        assert_eq!(interval_meta_graph(2).regular_degree(), Some(2));
    }
}
