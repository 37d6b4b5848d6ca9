//! Finite groups given by explicit multiplication tables.

mod character;
mod hom;
mod spec;

pub use character::{abelian_characters, AbelianCharacter, CharacterTable};
pub use hom::{automorphism_group, groups_isomorphic, GroupMap};
pub use spec::{build_group, parse_group_spec, DEFAULT_GROUP_CAP};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Index of a group element. The identity is always `0`.
pub type Elem = usize;

/// A finite group stored as its full Cayley table.
///
/// Immutable after construction; every constructor validates the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    label: String,
    n: usize,
    mult: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<usize>,
    names: Vec<String>,
    abelian: bool,
    exponent: usize,
}

impl GroupTable {
    /// Validate a raw table (`table[a][b] = a*b`) and relabel so that the
    /// identity sits at index 0. `names` default to `g<i>` / `e`.
    pub fn from_table(
        label: &str,
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n < 2 {
            return Err(Error::NotAGroup(format!("order {n} < 2")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!(
                    "entry {bad} out of range in row {i}"
                )));
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::NotAGroup("name list has wrong length".into()));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        // swap id <-> 0
        let relabel = |x: usize| {
            if x == id {
                0
            } else if x == 0 {
                id
            } else {
                x
            }
        };
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let names = match names {
            Some(mut v) => {
                v.swap(0, id);
                v
            }
            None => (0..n)
                .map(|i| {
                    if i == 0 {
                        "e".to_string()
                    } else {
                        format!("g{i}")
                    }
                })
                .collect(),
        };
        Self::from_flat(label.to_string(), n, mult, names)
    }

    /// Shared validation path: identity at 0, Latin square, associativity.
    fn from_flat(label: String, n: usize, mult: Vec<Elem>, names: Vec<String>) -> Result<Self> {
        for a in 0..n {
            if mult[a] != a || mult[a * n] != a {
                return Err(Error::NotAGroup(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = mult[a * n + b];
                if seen[c] {
                    return Err(Error::NotAGroup(format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b;
                }
            }
        }
        for a in 0..n {
            if mult[inv[a] * n + a] != 0 {
                return Err(Error::NotAGroup(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b];
                for c in 0..n {
                    if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::NotAGroup("element names are not distinct".into()));
            }
        }
        let mut orders = vec![0; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let (mut x, mut k) = (a, 1);
            while x != 0 {
                x = mult[x * n + a];
                k += 1;
            }
            *slot = k;
        }
        let abelian = (0..n).all(|a| (0..a).all(|b| mult[a * n + b] == mult[b * n + a]));
        let exponent = orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
        Ok(GroupTable {
            label,
            n,
            mult,
            inv,
            orders,
            names,
            abelian,
            exponent,
        })
    }

    /// Cyclic group `C_n`, elements `e, x, x^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameters(format!(
                "C{n}: order must be at least 2"
            )));
        }
        let mult = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(format!("C{n}"), n, mult, power_names("x", n))
    }

    /// Dihedral group of order `2n`: `r^i` at index `i`, `sr^i` at `n + i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameters("D0 is not a group".into()));
        }
        let size = 2 * n;
        let mut mult = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let (sa, ia) = (a / n, a % n);
                let (sb, ib) = (b / n, b % n);
                // s^sa r^ia s^sb r^ib = s^(sa+sb) r^(±ia + ib)
                let i = if sb == 0 { ia + ib } else { n - ia + ib } % n;
                mult[a * size + b] = ((sa + sb) % 2) * n + i;
            }
        }
        let mut names = power_names("r", n);
        names.extend((0..n).map(|i| match i {
            0 => "s".to_string(),
            1 => "sr".to_string(),
            _ => format!("sr^{i}"),
        }));
        Self::from_flat(format!("D{n}"), size, mult, names)
    }

    /// Symmetric group on `k` points (lexicographic permutation order, so the
    /// identity comes first). Products compose left to right.
    pub fn symmetric(k: usize) -> Result<Self> {
        Self::permutation_group(format!("S{k}"), k, false)
    }

    /// Alternating group on `k` points.
    pub fn alternating(k: usize) -> Result<Self> {
        Self::permutation_group(format!("A{k}"), k, true)
    }

    fn permutation_group(label: String, k: usize, even_only: bool) -> Result<Self> {
        let perms: Vec<Vec<usize>> = permutations(k)
            .into_iter()
            .filter(|p| !even_only || parity(p) == 0)
            .collect();
        let n = perms.len();
        if n < 2 {
            return Err(Error::BadParameters(format!("{label} has order {n} < 2")));
        }
        let index: BTreeMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut mult = vec![0; n * n];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = (0..k).map(|i| q[p[i]]).collect();
                mult[a * n + b] = index[&pq];
            }
        }
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        Self::from_flat(label, n, mult, names)
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}` with `e = 1`.
    pub fn quaternion() -> Result<Self> {
        // basis 0..4 = 1, i, j, k; element index = 2*basis + (negative as usize)
        const PROD: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mut mult = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (neg, basis) = PROD[a / 2][b / 2];
                let neg = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                mult[a * 8 + b] = 2 * basis + neg as usize;
            }
        }
        let names = ["e", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_flat("Q8".into(), 8, mult, names)
    }

    /// `A × B`, with `(a, b)` stored at index `a + |A|·b` and named `a.b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Self> {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut mult = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = a.mul(x % na, y % na);
                let q = b.mul(x / na, y / na);
                mult[x * n + y] = p + na * q;
            }
        }
        let names = (0..n)
            .map(|x| {
                if x == 0 {
                    "e".to_string()
                } else {
                    format!("{}.{}", a.names[x % na], b.names[x / na])
                }
            })
            .collect();
        Self::from_flat(format!("{}x{}", a.label, b.label), n, mult, names)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `|G|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let o = self.orders[a] as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `a⁻¹ b a`.
    pub fn conjugate(&self, b: Elem, a: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), b), a)
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.orders[a]
    }

    pub fn elem_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    #[inline]
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.mult.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `Z(G)`, sorted by index.
    pub fn center(&self) -> Vec<Elem> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn involution_count(&self) -> usize {
        self.orders.iter().filter(|&&o| o == 2).count()
    }

    /// Size of the conjugacy class of each element.
    pub fn class_sizes(&self) -> Vec<usize> {
        (0..self.n)
            .map(|b| {
                let mut seen = vec![false; self.n];
                for a in 0..self.n {
                    seen[self.conjugate(b, a)] = true;
                }
                seen.iter().filter(|&&s| s).count()
            })
            .collect()
    }

    /// Sorted multiset of `(element order, class size)` pairs; an isomorphism invariant.
    pub fn profile(&self) -> Vec<(usize, usize)> {
        let cs = self.class_sizes();
        let mut p: Vec<_> = self.orders.iter().copied().zip(cs).collect();
        p.sort_unstable();
        p
    }

    /// Elements of the subgroup generated by `gens` (sorted).
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    /// A small generating set chosen greedily, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut by_order: Vec<Elem> = (1..self.n).collect();
        by_order.sort_by(|&a, &b| self.orders[b].cmp(&self.orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut span = vec![0];
        for g in by_order {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated_subgroup(&gens);
                if span.len() == self.n {
                    break;
                }
            }
        }
        gens
    }
}

fn power_names(base: &str, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => base.to_string(),
            _ => format!("{base}^{i}"),
        })
        .collect()
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Cycle notation on points `1..=k`; the identity is `e`.
fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first && p.len() > 9 {
                out.push(' ');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_have_expected_shape() {
        let c2 = GroupTable::cyclic(2).unwrap();
        assert_eq!((c2.order(), c2.exponent()), (2, 2));
        let s3 = GroupTable::symmetric(3).unwrap();
        assert!(!s3.is_abelian());
        let mut o = s3.elem_orders().to_vec();
        o.sort();
        assert_eq!(o, vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(s3.center(), vec![0]);
        let q8 = GroupTable::quaternion().unwrap();
        assert_eq!(q8.center().len(), 2);
        assert_eq!(q8.involution_count(), 1);
        let d4 = GroupTable::dihedral(4).unwrap();
        assert_eq!(
            (d4.order(), d4.involution_count(), d4.center().len()),
            (8, 5, 2)
        );
        let a4 = GroupTable::alternating(4).unwrap();
        assert_eq!((a4.order(), a4.center().len()), (12, 1));
    }

    #[test]
    fn product_names_and_identity() {
        let g = GroupTable::direct_product(
            &GroupTable::cyclic(2).unwrap(),
            &GroupTable::cyclic(2).unwrap(),
        )
        .unwrap();
        assert_eq!(g.names(), &["e", "x.e", "e.x", "x.x"]);
        assert_eq!(g.involution_count(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn from_table_relabels_identity() {
        // C3 with the identity stored at index 2.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = GroupTable::from_table("T", &t, None).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.order(), 3);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            GroupTable::from_table("B", &bad, None),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn symmetric_names_use_cycles() {
        let s3 = GroupTable::symmetric(3).unwrap();
        assert_eq!(s3.name(0), "e");
        assert!(s3.element_by_name("(123)").is_some());
        assert!(s3.element_by_name("(12)").is_some());
    }
}
