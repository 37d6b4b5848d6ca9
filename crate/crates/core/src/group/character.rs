use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, GroupTable};
use crate::error::{Error, Result};

/// A linear character of an abelian group, stored as one residue per
/// invariant factor. The value at an element with coordinates `c` is
/// `exp(2πi · Σ rᵢcᵢ/dᵢ)`; it is never materialized as a complex number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianCharacter {
    pub residues: Vec<usize>,
}

impl AbelianCharacter {
    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

/// The character group `Ĝ` of an abelian group, together with the
/// cyclic decomposition `G ≅ C_{d₁} × … × C_{d_r}` (d₁ | d₂ | … | d_r) it was built from.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    factors: Vec<usize>,
    /// Coordinates of every group element in the cyclic decomposition.
    coords: Vec<Vec<usize>>,
    /// Mixed-radix order over the residues; index 0 is the trivial character.
    characters: Vec<AbelianCharacter>,
}

impl CharacterTable {
    pub fn invariant_factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn characters(&self) -> &[AbelianCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Lcm of the invariant factors; character values are `exponent`-th roots of unity.
    pub fn exponent(&self) -> usize {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn coordinates(&self, g: Elem) -> &[usize] {
        &self.coords[g]
    }

    /// `k` such that `χ(g) = exp(2πi k / exponent)`.
    pub fn value(&self, chi: &AbelianCharacter, g: Elem) -> usize {
        let e = self.exponent();
        self.factors
            .iter()
            .zip(&chi.residues)
            .zip(&self.coords[g])
            .map(|((&d, &r), &c)| r * c * (e / d))
            .sum::<usize>()
            % e
    }

    pub fn index_of(&self, chi: &AbelianCharacter) -> usize {
        chi.residues
            .iter()
            .zip(&self.factors)
            .rev()
            .fold(0, |acc, (&r, &d)| acc * d + r)
    }

    /// Pointwise product, as an index into [`Self::characters`].
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        let (mut a, mut b) = (a, b);
        for &d in &self.factors {
            out += ((a % d + b % d) % d) * place;
            place *= d;
            a /= d;
            b /= d;
        }
        out
    }

    /// `Σ_{g ≠ e} χ(g)` computed exactly from the histogram of arguments.
    /// The values of a character are equidistributed over its image, so the
    /// full sum is `|G|` for the trivial character and `0` otherwise; this
    /// checks that distribution instead of assuming it.
    pub fn sum_over_nonidentity(&self, chi: &AbelianCharacter) -> Option<i64> {
        let e = self.exponent();
        let n = self.coords.len();
        let mut hist = vec![0usize; e];
        for g in 0..n {
            hist[self.value(chi, g)] += 1;
        }
        if hist[0] == n {
            return Some(n as i64 - 1);
        }
        // Image must be the subgroup step·Z_e with uniform multiplicity.
        let step = (1..e).find(|&k| hist[k] > 0)?;
        if !e.is_multiple_of(step) {
            return None;
        }
        let per = hist[0];
        let uniform = (0..e).all(|k| hist[k] == if k % step == 0 { per } else { 0 });
        uniform.then_some(-1)
    }
}

/// Invariant factors of an abelian group from counts of `p^k`-torsion.
fn invariant_factors(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime: exponents of the cyclic p-parts, largest first
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &p in &primes {
        let mut top = 1;
        while g.exponent().is_multiple_of(top * p) {
            top *= p;
        }
        // s[k] = log_p |{x : x^(p^k) = e}|
        let mut s = Vec::new();
        let mut pk = 1;
        loop {
            let mut c = (0..n).filter(|&x| pk % g.elem_order(x) == 0).count();
            let mut log = 0;
            while c > 1 {
                c /= p;
                log += 1;
            }
            s.push(log);
            if pk == top {
                break;
            }
            pk *= p;
        }
        // factors with p-exponent >= k: s[k] - s[k-1]
        let at_least: Vec<usize> = s.windows(2).map(|w| w[1] - w[0]).collect();
        let count = at_least.first().copied().unwrap_or(0);
        let exps = (0..count)
            .map(|idx| p.pow(at_least.iter().take_while(|&&a| a > idx).count() as u32))
            .collect();
        parts.push(exps);
    }
    let r = parts.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..r)
        .map(|i| {
            parts
                .iter()
                .map(|v| v.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn find_basis(g: &GroupTable, factors: &[usize], chosen: &mut Vec<Elem>) -> bool {
    let k = chosen.len();
    if k == factors.len() {
        return true;
    }
    // assign from the largest factor down
    let d = factors[factors.len() - 1 - k];
    let target: usize = factors[factors.len() - 1 - k..].iter().product();
    for x in 1..g.order() {
        if g.elem_order(x) != d {
            continue;
        }
        chosen.push(x);
        if g.generated_subgroup(chosen).len() == target && find_basis(g, factors, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The full character group of an abelian group.
pub fn abelian_characters(g: &GroupTable) -> Result<CharacterTable> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let factors = invariant_factors(g);
    let mut basis = Vec::new();
    if !find_basis(g, &factors, &mut basis) {
        return Err(Error::ClaimViolated("no cyclic decomposition found".into()));
    }
    basis.reverse(); // basis[i] now has order factors[i]
    let n = g.order();
    let mut coords = vec![Vec::new(); n];
    for idx in 0..n {
        let mut rest = idx;
        let mut c = Vec::with_capacity(factors.len());
        let mut x = 0;
        for (i, &d) in factors.iter().enumerate() {
            let ci = rest % d;
            rest /= d;
            c.push(ci);
            x = g.mul(x, g.pow(basis[i], ci as i64));
        }
        coords[x] = c;
    }
    if coords.iter().any(|c| c.len() != factors.len()) {
        return Err(Error::ClaimViolated(
            "decomposition is not bijective".into(),
        ));
    }
    let characters = (0..n)
        .map(|idx| {
            let mut rest = idx;
            AbelianCharacter {
                residues: factors
                    .iter()
                    .map(|&d| {
                        let r = rest % d;
                        rest /= d;
                        r
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(CharacterTable {
        factors,
        coords,
        characters,
    })
}

#[cfg(test)]
mod tests {
    use super::super::build_group;
    use super::*;

    #[test]
    fn decompositions() {
        for (spec, f) in [
            ("C3", vec![3]),
            ("C2xC2", vec![2, 2]),
            ("C6", vec![6]),
            ("C2xC3", vec![6]),
            ("C4xC2", vec![2, 4]),
            ("C2xC2xC2", vec![2, 2, 2]),
            ("C2xC6", vec![2, 6]),
        ] {
            let t = abelian_characters(&build_group(spec).unwrap()).unwrap();
            assert_eq!(t.invariant_factors(), &f[..], "{spec}");
            assert_eq!(t.len(), build_group(spec).unwrap().order());
        }
        assert_eq!(
            abelian_characters(&build_group("S3").unwrap()).unwrap_err(),
            Error::NotAbelian
        );
    }

    #[test]
    fn characters_are_homomorphisms_and_orthogonal() {
        for spec in ["C4", "C2xC2", "C6", "C4xC2", "C2xC2xC2", "C5"] {
            let g = build_group(spec).unwrap();
            let t = abelian_characters(&g).unwrap();
            let e = t.exponent();
            for chi in t.characters() {
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        assert_eq!(
                            t.value(chi, g.mul(a, b)),
                            (t.value(chi, a) + t.value(chi, b)) % e
                        );
                    }
                }
                let expect = if chi.is_trivial() {
                    g.order() as i64 - 1
                } else {
                    -1
                };
                assert_eq!(t.sum_over_nonidentity(chi), Some(expect));
            }
        }
    }
}
