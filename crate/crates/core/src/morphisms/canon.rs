//! Individualization–refinement: automorphism group order and canonical
//! labeling of small graphs.
//!
//! Refinement is counting colour refinement over an ordered partition with a
//! splitter queue. The root colouring is (degree, sorted common-neighbour
//! counts along edges); after a vertex `v` is individualized every cell is
//! further split by the number of common neighbours with `v`. Each refinement
//! step emits a trace that depends only on cell positions and counts, so
//! equivalent nodes produce identical traces.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use super::{PermGroup, VertexPermutation};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::GcmGraph;
use crate::simple::SimpleGraph;

pub const DEFAULT_IR_CAP: usize = 2000;

/// Anything the refinement engine can search.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbor_lists(&self) -> Vec<Vec<usize>>;
}

impl Adjacency for GcmGraph {
    fn vertex_count(&self) -> usize {
        GcmGraph::vertex_count(self)
    }

    fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        self.adjacency_lists()
    }
}

impl Adjacency for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.order()
    }

    fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|v| self.neighbors(v).iter().collect())
            .collect()
    }
}

struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    rows: Vec<BitSet>,
}

impl Graph {
    fn load<A: Adjacency + ?Sized>(g: &A, cap: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > cap {
            return Err(Error::TooLarge {
                what: "refinement search vertex count",
                size: n,
                cap,
            });
        }
        let adj = g.neighbor_lists();
        let rows = adj
            .iter()
            .map(|l| BitSet::from_indices(n, l.iter().copied()))
            .collect();
        Ok(Graph { n, adj, rows })
    }

    fn is_automorphism(&self, p: &[usize]) -> bool {
        (0..self.n).all(|u| {
            self.adj[u].len() == self.adj[p[u]].len()
                && self.adj[u].iter().all(|&w| self.rows[p[u]].contains(p[w]))
        })
    }

    fn common_counts(&self, v: usize) -> Vec<u64> {
        let mut cn = vec![0u64; self.n];
        for &x in &self.adj[v] {
            for &w in &self.adj[x] {
                cn[w] += 1;
            }
        }
        cn
    }
}

#[derive(Clone, Debug)]
struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    /// Cell start for every position.
    start_of: Vec<usize>,
    /// Cell end, indexed by cell start.
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut end = vec![0; n];
        if n > 0 {
            end[0] = n;
        }
        Partition {
            elems: (0..n).collect(),
            pos: (0..n).collect(),
            start_of: vec![0; n],
            end,
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn cell_of(&self, v: usize) -> usize {
        self.start_of[self.pos[v]]
    }

    fn cell(&self, start: usize) -> &[usize] {
        &self.elems[start..self.end[start]]
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.elems.len() {
            let len = self.end[s] - s;
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((s, len));
            }
            s = self.end[s];
        }
        best.map(|(s, _)| s)
    }

    /// Split the cell at `start` by `key`, fragments in ascending key order.
    /// Returns `(start, size, key)` per fragment, or `None` if the key is
    /// constant on the cell.
    fn split(&mut self, start: usize, key: &[u64]) -> Option<Vec<(usize, usize, u64)>> {
        let end = self.end[start];
        let cell = &mut self.elems[start..end];
        let k0 = key[cell[0]];
        if cell.iter().all(|&v| key[v] == k0) {
            return None;
        }
        cell.sort_unstable_by_key(|&v| (key[v], v));
        let mut frags = Vec::new();
        let mut s = start;
        while s < end {
            let k = key[self.elems[s]];
            let mut e = s + 1;
            while e < end && key[self.elems[e]] == k {
                e += 1;
            }
            frags.push((s, e - s, k));
            self.end[s] = e;
            for p in s..e {
                self.start_of[p] = s;
                self.pos[self.elems[p]] = p;
            }
            s = e;
        }
        self.cells += frags.len() - 1;
        Some(frags)
    }
}

struct Refiner<'g> {
    g: &'g Graph,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    counts: Vec<u64>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        Refiner {
            g,
            queue: VecDeque::new(),
            queued: vec![false; g.n],
            counts: vec![0; g.n],
        }
    }

    fn enqueue(&mut self, s: usize) {
        if !self.queued[s] {
            self.queued[s] = true;
            self.queue.push_back(s);
        }
    }

    /// Split every listed cell by `key`, recording the trace and scheduling
    /// new fragments (all of them if the parent was queued, otherwise all
    /// but the first largest).
    fn split_cells(
        &mut self,
        p: &mut Partition,
        cells: &[usize],
        key: &[u64],
        trace: &mut Vec<u64>,
    ) {
        for &c in cells {
            if p.end[c] - c == 1 {
                continue;
            }
            let Some(frags) = p.split(c, key) else {
                continue;
            };
            trace.push(c as u64);
            trace.push(frags.len() as u64);
            for &(_, size, k) in &frags {
                trace.push(k);
                trace.push(size as u64);
            }
            if self.queued[c] {
                for &(s, _, _) in &frags[1..] {
                    self.enqueue(s);
                }
            } else {
                let largest = frags
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                    .map(|(i, _)| i)
                    .unwrap();
                for (i, &(s, _, _)) in frags.iter().enumerate() {
                    if i != largest {
                        self.enqueue(s);
                    }
                }
            }
        }
    }

    fn refine(&mut self, p: &mut Partition, trace: &mut Vec<u64>) {
        while let Some(sc) = self.queue.pop_front() {
            self.queued[sc] = false;
            if p.is_discrete() {
                continue;
            }
            let mut touched = Vec::new();
            for &u in p.cell(sc) {
                for &w in &self.g.adj[u] {
                    if self.counts[w] == 0 {
                        touched.push(w);
                    }
                    self.counts[w] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&w| p.cell_of(w)).collect();
            cells.sort_unstable();
            cells.dedup();
            let counts = core::mem::take(&mut self.counts);
            self.split_cells(p, &cells, &counts, trace);
            self.counts = counts;
            for w in touched {
                self.counts[w] = 0;
            }
        }
        self.queue.clear();
        self.queued.iter_mut().for_each(|q| *q = false);
    }

    fn root(&mut self) -> Node {
        let g = self.g;
        let mut keys: Vec<(usize, Vec<u64>)> = (0..g.n)
            .map(|v| {
                let cn = g.common_counts(v);
                let mut along: Vec<u64> = g.adj[v].iter().map(|&w| cn[w]).collect();
                along.sort_unstable();
                (g.adj[v].len(), along)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        let rank: Vec<u64> = keys
            .iter()
            .map(|k| distinct.binary_search(k).unwrap() as u64)
            .collect();
        keys.clear();
        let mut p = Partition::unit(g.n);
        let mut trace = Vec::new();
        if g.n > 0 {
            self.enqueue(0);
            self.split_cells(&mut p, &[0], &rank, &mut trace);
            self.refine(&mut p, &mut trace);
        }
        Node { p, trace }
    }

    fn individualize(&mut self, parent: &Node, v: usize) -> Node {
        let mut p = parent.p.clone();
        let mut trace = Vec::new();
        let c = p.cell_of(v);
        let mut key = vec![1u64; self.g.n];
        key[v] = 0;
        trace.push(c as u64);
        self.split_cells(&mut p, &[c], &key, &mut trace);
        let cn = self.g.common_counts(v);
        let mut cells = Vec::new();
        let mut s = 0;
        while s < self.g.n {
            cells.push(s);
            s = p.end[s];
        }
        self.split_cells(&mut p, &cells, &cn, &mut trace);
        self.refine(&mut p, &mut trace);
        Node { p, trace }
    }
}

#[derive(Clone)]
struct Node {
    p: Partition,
    trace: Vec<u64>,
}

/// Result of the automorphism search.
#[derive(Clone, Debug)]
pub struct AutSearch {
    pub order: BigUint,
    /// Automorphisms found; they generate the full group.
    pub generators: Vec<VertexPermutation>,
    /// The individualized vertices along the first path.
    pub base: Vec<usize>,
    /// `|orbit of base[i] under the stabilizer of base[..i]|`.
    pub orbit_lengths: Vec<usize>,
}

struct AutEngine<'g> {
    g: &'g Graph,
    r: Refiner<'g>,
    path_traces: Vec<Vec<u64>>,
    leaf: Vec<usize>,
}

impl AutEngine<'_> {
    /// Look below `node` (at depth `depth`) with `w` individualized for a leaf
    /// equivalent to the first-path leaf.
    fn find(&mut self, node: &Node, w: usize, depth: usize) -> Option<VertexPermutation> {
        let child = self.r.individualize(node, w);
        if child.trace != self.path_traces[depth] {
            return None;
        }
        if child.p.is_discrete() {
            let mut image = vec![0; self.g.n];
            for (a, b) in self.leaf.iter().zip(&child.p.elems) {
                image[*a] = *b;
            }
            return self
                .g
                .is_automorphism(&image)
                .then(|| VertexPermutation::new(image).expect("leaf bijection"));
        }
        let t = child.p.target()?;
        let cell: Vec<usize> = child.p.cell(t).to_vec();
        cell.into_iter()
            .find_map(|u| self.find(&child, u, depth + 1))
    }
}

fn search(g: &Graph) -> AutSearch {
    let mut r = Refiner::new(g);
    let root = r.root();
    let mut path = vec![root];
    let mut base = Vec::new();
    let mut path_traces = vec![path[0].trace.clone()];
    while let Some(t) = path.last().unwrap().p.target() {
        let v = *path.last().unwrap().p.cell(t).iter().min().unwrap();
        let child = r.individualize(path.last().unwrap(), v);
        path_traces.push(child.trace.clone());
        base.push(v);
        path.push(child);
    }
    let leaf = path.last().unwrap().p.elems.clone();
    let mut eng = AutEngine {
        g,
        r,
        path_traces,
        leaf,
    };
    let mut gens: Vec<VertexPermutation> = Vec::new();
    let mut lengths = vec![0; base.len()];
    for i in (0..base.len()).rev() {
        let node = &path[i];
        let t = node.p.target().unwrap();
        let cell: Vec<usize> = node.p.cell(t).to_vec();
        let mut reps = PermGroup::new(g.n, gens.clone()).unwrap().orbits();
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            if reps[w] == reps[base[i]] || failed.iter().any(|&f| reps[f] == reps[w]) {
                continue;
            }
            match eng.find(node, w, i + 1) {
                Some(a) => {
                    gens.push(a);
                    reps = PermGroup::new(g.n, gens.clone()).unwrap().orbits();
                }
                None => failed.push(w),
            }
        }
        lengths[i] = reps.iter().filter(|&&x| x == reps[base[i]]).count();
    }
    let order = lengths.iter().fold(BigUint::from(1u32), |a, &l| a * l);
    AutSearch {
        order,
        generators: gens,
        base,
        orbit_lengths: lengths,
    }
}

/// Automorphism group of a graph by refinement-guided backtracking.
pub fn automorphism_search<A: Adjacency + ?Sized>(graph: &A, cap: usize) -> Result<AutSearch> {
    Ok(search(&Graph::load(graph, cap)?))
}

/// `|Aut(𝒢ₘ(G))|` from the refinement search (default cap).
pub fn canonical_aut_order(graph: &GcmGraph) -> Result<BigUint> {
    Ok(automorphism_search(graph, DEFAULT_IR_CAP)?.order)
}

/// A canonical relabeling and the relabeled edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
    /// Sorted `(a, b)`, `a < b`, in canonical indices.
    pub edges: Vec<(usize, usize)>,
    pub hash: u64,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.labeling.len()
    }

    /// Whether two canonical forms describe the same graph (exact edge
    /// comparison; the hash is informational).
    pub fn same_graph(&self, other: &CanonicalForm) -> bool {
        self.vertex_count() == other.vertex_count() && self.edges == other.edges
    }
}

fn fnv(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(n as u64);
    for &(a, b) in edges {
        eat(a as u64);
        eat(b as u64);
    }
    h
}

struct Best {
    traces: Vec<Vec<u64>>,
    edges: Vec<(usize, usize)>,
    elems: Vec<usize>,
}

struct CanonEngine<'g> {
    g: &'g Graph,
    r: Refiner<'g>,
    aut: PermGroup,
    best: Option<Best>,
}

impl CanonEngine<'_> {
    fn relabeled(&self, elems: &[usize]) -> Vec<(usize, usize)> {
        let mut lab = vec![0; self.g.n];
        for (i, &v) in elems.iter().enumerate() {
            lab[v] = i;
        }
        let mut edges = Vec::new();
        for u in 0..self.g.n {
            for &w in &self.g.adj[u] {
                if u < w {
                    let (a, b) = (lab[u], lab[w]);
                    edges.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// `Less`: the subtree may beat the best leaf; `Greater`: prune.
    fn compare_prefix(&self, traces: &[Vec<u64>]) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Less;
        };
        for (t, b) in traces.iter().zip(&best.traces) {
            match t.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        if traces.len() > best.traces.len() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    fn dfs(&mut self, node: &Node, prefix: &mut Vec<usize>, traces: &mut Vec<Vec<u64>>) {
        if self.compare_prefix(traces) == Ordering::Greater {
            return;
        }
        let Some(t) = node.p.target() else {
            let edges = self.relabeled(&node.p.elems);
            let better = match &self.best {
                None => true,
                Some(b) => (&traces[..], &edges) < (&b.traces[..], &b.edges),
            };
            if better {
                self.best = Some(Best {
                    traces: traces.clone(),
                    edges,
                    elems: node.p.elems.clone(),
                });
            }
            return;
        };
        let reps = self.aut.stabilizer_orbits(prefix);
        let mut cell: Vec<usize> = node.p.cell(t).to_vec();
        cell.sort_unstable();
        let mut seen: Vec<usize> = Vec::new();
        for u in cell {
            if seen.contains(&reps[u]) {
                continue;
            }
            seen.push(reps[u]);
            let child = self.r.individualize(node, u);
            prefix.push(u);
            traces.push(child.trace.clone());
            self.dfs(&child, prefix, traces);
            traces.pop();
            prefix.pop();
        }
    }
}

/// Canonical form; isomorphic graphs get identical edge lists.
pub fn canonical_form<A: Adjacency + ?Sized>(graph: &A, cap: usize) -> Result<CanonicalForm> {
    let g = Graph::load(graph, cap)?;
    let aut = search(&g);
    let mut eng = CanonEngine {
        g: &g,
        r: Refiner::new(&g),
        aut: PermGroup::new(g.n, aut.generators)?,
        best: None,
    };
    let root = eng.r.root();
    let mut traces = vec![root.trace.clone()];
    eng.dfs(&root, &mut Vec::new(), &mut traces);
    let best = eng.best.expect("search tree has a leaf");
    let mut labeling = vec![0; g.n];
    for (i, &v) in best.elems.iter().enumerate() {
        labeling[v] = i;
    }
    Ok(CanonicalForm {
        hash: fnv(g.n, &best.edges),
        labeling,
        edges: best.edges,
    })
}

/// Isomorphism test by canonical-form comparison.
pub fn graphs_isomorphic<A: Adjacency + ?Sized, B: Adjacency + ?Sized>(
    a: &A,
    b: &B,
    cap: usize,
) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() {
        return Ok(false);
    }
    Ok(canonical_form(a, cap)?.same_graph(&canonical_form(b, cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple::kneser_graph;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn order(g: &SimpleGraph) -> BigUint {
        automorphism_search(g, DEFAULT_IR_CAP).unwrap().order
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&cycle(7)), BigUint::from(14u32));
        assert_eq!(
            order(&SimpleGraph::from_fn(5, |_, _| true)),
            BigUint::from(120u32)
        );
        assert_eq!(order(&SimpleGraph::empty(4)), BigUint::from(24u32));
        // Petersen graph.
        assert_eq!(order(&kneser_graph(5)), BigUint::from(120u32));
        // Two disjoint triangles.
        let tt = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(order(&tt), BigUint::from(72u32));
        // A path on 4 vertices.
        let p4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(order(&p4), BigUint::from(2u32));
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = kneser_graph(6);
        let res = automorphism_search(&g, DEFAULT_IR_CAP).unwrap();
        assert_eq!(res.order, BigUint::from(720u32));
        for p in &res.generators {
            for (u, v) in g.edges() {
                assert!(g.has_edge(p.apply(u), p.apply(v)));
            }
        }
        let pg = PermGroup::new(g.order(), res.generators).unwrap();
        assert_eq!(pg.order(), res.order);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = kneser_graph(5);
        let shuffle: Vec<usize> = (0..10).map(|i| (i * 7 + 3) % 10).collect();
        let h = SimpleGraph::from_edges(
            10,
            g.edges().into_iter().map(|(u, v)| (shuffle[u], shuffle[v])),
        );
        let (cg, ch) = (
            canonical_form(&g, 100).unwrap(),
            canonical_form(&h, 100).unwrap(),
        );
        assert!(cg.same_graph(&ch));
        assert_eq!(cg.hash, ch.hash);
        // Relabeling by the canonical labeling reproduces the canonical edges.
        let relabeled = SimpleGraph::from_edges(10, cg.edges.iter().copied());
        assert_eq!(canonical_form(&relabeled, 100).unwrap().edges, cg.edges);
        assert!(!graphs_isomorphic(&g, &cycle(10), 100).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            automorphism_search(&cycle(30), 20),
            Err(Error::TooLarge { .. })
        ));
    }
}
