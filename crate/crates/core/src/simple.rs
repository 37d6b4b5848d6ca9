//! Small undirected simple graphs on `0..n`, used for induced subgraphs,
//! neighbour graphs and the interval meta-graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    rows: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Build from a symmetric predicate evaluated on all pairs `u < v`.
    pub fn from_fn(n: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adj(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(BitSet::count).collect()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&d0) if d.iter().all(|&x| x == d0) => Some(d0),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> SimpleGraph {
        SimpleGraph::from_fn(self.order(), |u, v| !self.has_edge(u, v))
    }

    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        SimpleGraph::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        })
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for v in self.rows[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Longest shortest path, or `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in self.rows[u].iter() {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        q.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Every vertex has exactly one neighbour.
    pub fn is_perfect_matching(&self) -> bool {
        self.order().is_multiple_of(2) && self.regular_degree() == Some(1)
    }

    /// Sorted `(degree, count)` pairs.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut d = self.degrees();
        d.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for x in d {
            match out.last_mut() {
                Some((deg, c)) if *deg == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// 2-subsets of `{1..=n}` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            out.push((a, b));
        }
    }
    out
}

/// Kneser graph `KG(n, 2)`: 2-subsets of `{1..=n}`, adjacent when disjoint.
/// Vertex order follows [`pairs`].
pub fn kneser_graph(n: usize) -> SimpleGraph {
    let p = pairs(n);
    SimpleGraph::from_fn(p.len(), |u, v| {
        let (a, b) = p[u];
        let (c, d) = p[v];
        a != c && a != d && b != c && b != d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_invariants() {
        let p = kneser_graph(5);
        assert_eq!(p.order(), 10);
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(p.girth(), Some(5));
        assert_eq!(p.diameter(), Some(2));
        assert!(kneser_graph(4).is_perfect_matching());
    }

    #[test]
    fn small_shapes() {
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(c5.girth(), Some(5));
        assert_eq!(c5.complement().regular_degree(), Some(2));
        let path = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(path.girth(), None);
        assert_eq!(path.diameter(), Some(2));
        assert_eq!(path.degree_histogram(), vec![(1, 2), (2, 1)]);
    }
}
