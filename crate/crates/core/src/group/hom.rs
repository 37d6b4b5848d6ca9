use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, GroupTable};
use crate::error::{Error, Result};

/// A map between (the element sets of) two groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    codomain_order: usize,
    image: Vec<Elem>,
}

impl GroupMap {
    pub fn new(image: Vec<Elem>, codomain_order: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&x| x >= codomain_order) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: codomain_order - 1,
            });
        }
        Ok(GroupMap {
            codomain_order,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        GroupMap {
            codomain_order: n,
            image: (0..n).collect(),
        }
    }

    /// Conjugation `x ↦ a⁻¹ x a`.
    pub fn inner(g: &GroupTable, a: Elem) -> Self {
        GroupMap {
            codomain_order: g.order(),
            image: (0..g.order()).map(|x| g.conjugate(x, a)).collect(),
        }
    }

    pub fn domain_order(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.image
    }

    pub fn is_bijective(&self) -> bool {
        if self.image.len() != self.codomain_order {
            return false;
        }
        let mut seen = vec![false; self.codomain_order];
        self.image
            .iter()
            .all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    /// Exhaustive check of `f(ab) = f(a) f(b)`.
    pub fn is_homomorphism(&self, dom: &GroupTable, cod: &GroupTable) -> bool {
        if dom.order() != self.image.len() || cod.order() != self.codomain_order {
            return false;
        }
        let n = dom.order();
        (0..n).all(|a| {
            (0..n).all(|b| self.image[dom.mul(a, b)] == cod.mul(self.image[a], self.image[b]))
        })
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &GroupMap) -> GroupMap {
        GroupMap {
            codomain_order: next.codomain_order,
            image: self.image.iter().map(|&x| next.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupMap {
            codomain_order: self.image.len(),
            image: inv,
        })
    }
}

/// Backtracking isomorphism search `G → H` on images of a generating set of
/// `G`. Candidates are pruned by element order and conjugacy-class size, and
/// every partial assignment is extended along the Cayley graph of the
/// generators assigned so far, rejecting inconsistent or non-injective maps.
struct IsoSearch<'a> {
    g: &'a GroupTable,
    h: &'a GroupTable,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    images: Vec<Elem>,
    find_all: bool,
    found: Vec<GroupMap>,
}

impl IsoSearch<'_> {
    /// Extend the current partial assignment to `⟨gens[..k]⟩`; `None` on conflict.
    fn extend(&self, k: usize) -> Option<Vec<Elem>> {
        let n = self.g.order();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; self.h.order()];
        phi[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for j in 0..k {
                let y = self.g.mul(x, self.gens[j]);
                let img = self.h.mul(phi[x], self.images[j]);
                if phi[y] == usize::MAX {
                    if used[img] {
                        return None;
                    }
                    used[img] = true;
                    phi[y] = img;
                    queue.push(y);
                } else if phi[y] != img {
                    return None;
                }
            }
        }
        Some(phi)
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.gens.len() {
            let phi = self.extend(k).expect("checked at previous level");
            let map = GroupMap {
                codomain_order: self.h.order(),
                image: phi,
            };
            if map.is_bijective() && map.is_homomorphism(self.g, self.h) {
                self.found.push(map);
                return !self.find_all;
            }
            return false;
        }
        for ci in 0..self.candidates[k].len() {
            let c = self.candidates[k][ci];
            self.images.push(c);
            let ok = self.extend(k + 1).is_some();
            if ok && self.run(k + 1) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

fn search(g: &GroupTable, h: &GroupTable, find_all: bool, cap: usize) -> Result<Vec<GroupMap>> {
    for t in [g, h] {
        if t.order() > cap {
            return Err(Error::TooLarge {
                what: "group",
                size: t.order(),
                cap,
            });
        }
    }
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() || g.profile() != h.profile() {
        return Ok(Vec::new());
    }
    let gens = g.generating_set();
    let (gc, hc) = (g.class_sizes(), h.class_sizes());
    let candidates = gens
        .iter()
        .map(|&x| {
            (0..h.order())
                .filter(|&y| h.elem_order(y) == g.elem_order(x) && hc[y] == gc[x])
                .collect()
        })
        .collect();
    let mut s = IsoSearch {
        g,
        h,
        gens,
        candidates,
        images: Vec::new(),
        find_all,
        found: Vec::new(),
    };
    s.run(0);
    Ok(s.found)
}

/// All automorphisms of `G`, each verified as a bijective homomorphism.
/// The identity map comes first.
pub fn automorphism_group(g: &GroupTable, cap: usize) -> Result<Vec<GroupMap>> {
    let mut all = search(g, g, true, cap)?;
    all.sort();
    Ok(all)
}

/// Some isomorphism `G → H`, if one exists.
pub fn groups_isomorphic(g: &GroupTable, h: &GroupTable, cap: usize) -> Result<Option<GroupMap>> {
    Ok(search(g, h, false, cap)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::super::build_group;
    use super::*;

    #[test]
    fn aut_counts() {
        for (spec, count) in [("C4", 2), ("C2xC2", 6), ("S3", 6), ("Q8", 24)] {
            let g = build_group(spec).unwrap();
            let auts = automorphism_group(&g, 24).unwrap();
            assert_eq!(auts.len(), count, "{spec}");
            assert_eq!(auts[0], GroupMap::identity(g.order()));
        }
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = build_group("C6").unwrap();
        let c2c3 = build_group("C2xC3").unwrap();
        let f = groups_isomorphic(&c6, &c2c3, 24).unwrap().unwrap();
        assert!(f.is_bijective() && f.is_homomorphism(&c6, &c2c3));
        let c4 = build_group("C4").unwrap();
        let v4 = build_group("C2xC2").unwrap();
        assert!(groups_isomorphic(&c4, &v4, 24).unwrap().is_none());
        assert!(groups_isomorphic(&build_group("S3").unwrap(), &c6, 24)
            .unwrap()
            .is_none());
    }

    #[test]
    fn compose_and_invert() {
        let g = build_group("C5").unwrap();
        let auts = automorphism_group(&g, 24).unwrap();
        for a in &auts {
            let inv = a.inverse().unwrap();
            assert_eq!(a.then(&inv), GroupMap::identity(5));
        }
    }
}
