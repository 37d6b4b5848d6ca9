//! Deterministic Schreier–Sims: a base and strong generating set with
//! Schreier-vector transversals.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigUint;

use super::VertexPermutation;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into `StabChain::strong`.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// Edge label into each orbit point: `2j` for `gens[j]`, `2j + 1` for its inverse.
    via: Vec<u32>,
    /// `done[p][j]`: the Schreier generator for (orbit[p], gens[j]) was sifted.
    done: Vec<Vec<bool>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut via = vec![NONE; degree];
        via[base] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            via,
            done: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
struct StabChain {
    degree: usize,
    strong: Vec<(VertexPermutation, VertexPermutation)>,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[VertexPermutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in gens {
            let (h, j) = chain.sift(g.clone(), 0);
            if !h.is_identity() {
                chain.insert(h, 0, j);
            }
        }
        let mut i = chain.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match chain.next_pair(lvl) {
                Some((p, j)) => {
                    chain.levels[lvl].done[p][j] = true;
                    let beta = chain.levels[lvl].orbit[p];
                    let s = &chain.strong[chain.levels[lvl].gens[j]].0;
                    let g = chain.transversal(lvl, beta).then(s);
                    let (h, depth) = chain.sift(g, lvl);
                    if !h.is_identity() {
                        chain.insert(h, lvl + 1, depth);
                        i = depth + 1;
                    }
                }
                None => i -= 1,
            }
        }
        chain
    }

    fn next_pair(&mut self, lvl: usize) -> Option<(usize, usize)> {
        let level = &mut self.levels[lvl];
        let k = level.gens.len();
        level.done.resize(level.orbit.len(), Vec::new());
        for (p, row) in level.done.iter_mut().enumerate() {
            row.resize(k, false);
            if let Some(j) = row.iter().position(|&d| !d) {
                return Some((p, j));
            }
        }
        None
    }

    fn label_perm(&self, lvl: usize, label: u32) -> &VertexPermutation {
        let (fwd, inv) = &self.strong[self.levels[lvl].gens[(label / 2) as usize]];
        if label.is_multiple_of(2) {
            fwd
        } else {
            inv
        }
    }

    fn label_inverse(&self, lvl: usize, label: u32) -> &VertexPermutation {
        self.label_perm(lvl, label ^ 1)
    }

    /// `u_β` with `u_β(base) = β`.
    fn transversal(&self, lvl: usize, beta: usize) -> VertexPermutation {
        let level = &self.levels[lvl];
        let mut path = Vec::new();
        let mut x = beta;
        while level.via[x] != ROOT {
            let label = level.via[x];
            path.push(label);
            x = self.label_inverse(lvl, label).apply(x);
        }
        let mut u = VertexPermutation::identity(self.degree);
        for &label in path.iter().rev() {
            u = u.then(self.label_perm(lvl, label));
        }
        u
    }

    /// Strip `g` through levels `from..`; returns the residue and the level
    /// at which it dropped out (`levels.len()` if it passed every level).
    fn sift(&self, mut g: VertexPermutation, from: usize) -> (VertexPermutation, usize) {
        for lvl in from..self.levels.len() {
            let level = &self.levels[lvl];
            let mut beta = g.apply(level.base);
            if level.via[beta] == NONE {
                return (g, lvl);
            }
            while level.via[beta] != ROOT {
                let back = self.label_inverse(lvl, level.via[beta]);
                g = g.then(back);
                beta = back.apply(beta);
            }
        }
        (g, self.levels.len())
    }

    /// Add `h` (which fixes the first `to` base points) as a strong generator
    /// of levels `from..=to`.
    fn insert(&mut self, h: VertexPermutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        let inv = h.inverse();
        self.strong.push((h, inv));
        let idx = self.strong.len() - 1;
        for lvl in from..=to {
            self.add_to_level(lvl, idx);
        }
    }

    fn add_to_level(&mut self, lvl: usize, idx: usize) {
        self.levels[lvl].gens.push(idx);
        let j = self.levels[lvl].gens.len() - 1;
        let old = self.levels[lvl].orbit.len();
        for p in 0..old {
            let x = self.levels[lvl].orbit[p];
            self.visit(lvl, x, j);
        }
        let mut q = old;
        while q < self.levels[lvl].orbit.len() {
            let x = self.levels[lvl].orbit[q];
            for j in 0..self.levels[lvl].gens.len() {
                self.visit(lvl, x, j);
            }
            q += 1;
        }
    }

    fn visit(&mut self, lvl: usize, x: usize, j: usize) {
        let (fwd, inv) = &self.strong[self.levels[lvl].gens[j]];
        let (y, z) = (fwd.apply(x), inv.apply(x));
        let level = &mut self.levels[lvl];
        for (pt, label) in [(y, 2 * j as u32), (z, 2 * j as u32 + 1)] {
            if level.via[pt] == NONE {
                level.via[pt] = label;
                level.orbit.push(pt);
            }
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }
}

/// A permutation group given by generators; the stabilizer chain is built on
/// first use.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<VertexPermutation>,
    chain: OnceCell<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<VertexPermutation>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "generator of degree {} in a group on {degree} points",
                bad.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceCell::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[VertexPermutation] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generator_count(&self) -> usize {
        self.chain().strong.len()
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let chain = self.chain();
        let (h, lvl) = chain.sift(p.clone(), 0);
        lvl == chain.levels.len() && h.is_identity()
    }

    /// Orbit representative (least point) of every point.
    pub fn orbits(&self) -> Vec<usize> {
        orbit_reps(self.degree, self.gens.iter())
    }

    /// Orbits of the pointwise stabilizer of `prefix`, as least-point
    /// representatives.
    pub fn stabilizer_orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let chain = StabChain::build(self.degree, &self.gens, prefix);
        let k = prefix.len();
        match chain.levels.get(k) {
            Some(level) => orbit_reps(self.degree, level.gens.iter().map(|&i| &chain.strong[i].0)),
            None => (0..self.degree).collect(),
        }
    }
}

fn orbit_reps<'a>(n: usize, gens: impl Iterator<Item = &'a VertexPermutation>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Exact order of the group generated by `gens` (all on the same points).
pub fn group_order(gens: &[VertexPermutation]) -> Result<BigUint> {
    let degree = gens.first().map_or(0, |g| g.degree());
    Ok(PermGroup::new(degree, gens.to_vec())?.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> VertexPermutation {
        VertexPermutation::from_fn(n, |x| (x + 1) % n).unwrap()
    }

    fn swap(n: usize, a: usize, b: usize) -> VertexPermutation {
        VertexPermutation::from_fn(n, |x| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        })
        .unwrap()
    }

    fn factorial(k: u32) -> BigUint {
        (1..=k).fold(BigUint::from(1u32), |a, i| a * i)
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=8 {
            let g = PermGroup::new(n, vec![cycle(n), swap(n, 0, 1)]).unwrap();
            assert_eq!(g.order(), factorial(n as u32), "S{n}");
        }
    }

    #[test]
    fn alternating_and_dihedral() {
        // 3-cycles (0 1 2), (0 1 3), ... generate A_n.
        let n = 7;
        let gens: Vec<_> = (2..n)
            .map(|k| {
                VertexPermutation::from_fn(n, |x| match x {
                    0 => 1,
                    1 => k,
                    x if x == k => 0,
                    x => x,
                })
                .unwrap()
            })
            .collect();
        let a = PermGroup::new(n, gens).unwrap();
        assert_eq!(a.order(), factorial(7) / 2u32);
        assert!(!a.contains(&swap(n, 0, 1)));
        assert!(a.contains(&swap(n, 0, 1).then(&swap(n, 2, 3))));

        let refl = VertexPermutation::from_fn(10, |x| (10 - x) % 10).unwrap();
        let d = PermGroup::new(10, vec![cycle(10), refl]).unwrap();
        assert_eq!(d.order(), BigUint::from(20u32));
    }

    #[test]
    fn stabilizer_orbits_of_s4() {
        let g = PermGroup::new(4, vec![cycle(4), swap(4, 0, 1)]).unwrap();
        assert_eq!(g.stabilizer_orbits(&[0]), vec![0, 1, 1, 1]);
        assert_eq!(g.stabilizer_orbits(&[0, 2]), vec![0, 1, 2, 1]);
        assert_eq!(g.stabilizer_orbits(&[0, 1, 2]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(5, vec![VertexPermutation::identity(5)]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
        assert_eq!(group_order(&[]).unwrap(), BigUint::from(1u32));
    }
}
