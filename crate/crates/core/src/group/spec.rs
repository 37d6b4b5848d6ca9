use alloc::string::ToString;
use alloc::vec::Vec;

use super::GroupTable;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 24;

enum Factor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
}

impl Factor {
    /// Order without building the table (saturating, so huge `S<n>` stays cheap).
    fn order(&self) -> usize {
        match *self {
            Factor::Cyclic(n) => n,
            Factor::Dihedral(n) => n.saturating_mul(2),
            Factor::Symmetric(k) => (1..=k).fold(1usize, |a, b| a.saturating_mul(b)),
            Factor::Alternating(k) => (1..=k).fold(1usize, |a, b| a.saturating_mul(b)) / 2,
            Factor::Quaternion => 8,
        }
    }

    fn build(&self) -> Result<GroupTable> {
        match *self {
            Factor::Cyclic(n) => GroupTable::cyclic(n),
            Factor::Dihedral(n) => GroupTable::dihedral(n),
            Factor::Symmetric(k) => GroupTable::symmetric(k),
            Factor::Alternating(k) => GroupTable::alternating(k),
            Factor::Quaternion => GroupTable::quaternion(),
        }
    }
}

fn parse_factor(tok: &str, whole: &str) -> Result<Factor> {
    let err = || Error::Parse(whole.to_string());
    let tok = tok.trim();
    if tok == "Q8" {
        return Ok(Factor::Quaternion);
    }
    let mut chars = tok.chars();
    let kind = chars.next().ok_or_else(err)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let n: usize = digits.parse().map_err(|_| err())?;
    match kind {
        'C' => Ok(Factor::Cyclic(n)),
        'D' => Ok(Factor::Dihedral(n)),
        'S' => Ok(Factor::Symmetric(n)),
        'A' => Ok(Factor::Alternating(n)),
        _ => Err(err()),
    }
}

/// Parse `C<n>`, `D<n>` (order 2n), `S<n>`, `A<n>`, `Q8` and `x`-joined products.
pub fn parse_group_spec(spec: &str, cap: usize) -> Result<GroupTable> {
    let factors: Vec<Factor> = spec
        .split('x')
        .map(|t| parse_factor(t, spec))
        .collect::<Result<_>>()?;
    let order = factors
        .iter()
        .fold(1usize, |a, f| a.saturating_mul(f.order()));
    if order > cap {
        return Err(Error::TooLarge {
            what: "group",
            size: order,
            cap,
        });
    }
    let mut it = factors.iter();
    let mut g = it
        .next()
        .ok_or_else(|| Error::Parse(spec.to_string()))?
        .build()?;
    for f in it {
        g = GroupTable::direct_product(&g, &f.build()?)?;
    }
    Ok(g)
}

/// Build from a spec string, honouring the default cap.
pub fn build_group(spec: &str) -> Result<GroupTable> {
    parse_group_spec(spec, DEFAULT_GROUP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(build_group("C2xC4").unwrap().order(), 8);
        assert_eq!(build_group("D4").unwrap().order(), 8);
        assert_eq!(build_group("A4").unwrap().order(), 12);
        assert_eq!(build_group("C2xC2xC2").unwrap().exponent(), 2);
        assert!(matches!(build_group("Z5"), Err(Error::Parse(_))));
        assert!(matches!(build_group("C"), Err(Error::Parse(_))));
        assert!(matches!(build_group("C2x"), Err(Error::Parse(_))));
        assert!(matches!(
            build_group("S5"),
            Err(Error::TooLarge { size: 120, .. })
        ));
        assert_eq!(parse_group_spec("S5", 120).unwrap().order(), 120);
    }
}
