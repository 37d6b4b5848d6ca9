use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image table. Composition reads
/// left to right: `p.then(q)` maps `x ↦ q(p(x))`.
#[derive(Clone, Debug)]
pub struct VertexPermutation {
    image: Vec<usize>,
    label: Option<String>,
}

impl PartialEq for VertexPermutation {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for VertexPermutation {}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || core::mem::replace(&mut seen[x], true) {
                return Err(Error::BadParameters(format!(
                    "image table is not a bijection of 0..{n}"
                )));
            }
        }
        Ok(VertexPermutation { image, label: None })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> usize) -> Result<Self> {
        Self::new((0..n).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            image: (0..n).collect(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn then(&self, next: &VertexPermutation) -> VertexPermutation {
        debug_assert_eq!(self.degree(), next.degree());
        VertexPermutation {
            image: self.image.iter().map(|&x| next.image[x]).collect(),
            label: None,
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut image = vec![0; self.degree()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        VertexPermutation { image, label: None }
    }

    pub fn pow(&self, k: i64) -> VertexPermutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.image.iter().enumerate().position(|(x, &y)| x != y)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.image[x] == x).collect()
    }

    /// Cycle lengths, in order of smallest element.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c as u64))
    }
}
