//! Linear identities among trace elements, stored as JSON:
//!
//! ```json
//! { "group": "C3", "m": 3,
//!   "terms": [ { "coeff": "3", "window": [3, 4], "outside": ["e", "e"], "inside": ["e"] } ],
//!   "target_coeff": "9", "target_tuple": ["e", "e", "e"] }
//! ```
//!
//! A term is `coeff · a·tr_G(b)·c` for the window `[k, l)`: `inside` is the
//! block in coordinates `k..l−1`, `outside` lists the remaining coordinates
//! left to right. Elements are referred to by name, coefficients are
//! rationals `p` or `p/q`.

use std::path::Path;
use std::str::FromStr;

use gcm_core::group::{Elem, GroupTable};
use gcm_core::trace::{build_trace_system, TraceRow};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::table::resolve_group;

/// The 25-term expansion of `9·(e,e,e)` over `C3` at `m = 3`.
pub const EXAMPLE_FIXTURE: &str = include_str!("../fixtures/example23.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureTerm {
    pub coeff: String,
    pub window: [usize; 2],
    pub outside: Vec<String>,
    pub inside: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFixture {
    pub group: String,
    pub m: usize,
    pub terms: Vec<FixtureTerm>,
    pub target_coeff: String,
    pub target_tuple: Vec<String>,
}

/// A fixture with names and coefficients resolved against a group.
pub struct ResolvedIdentity {
    pub group: GroupTable,
    pub m: usize,
    pub terms: Vec<(BigRational, TraceRow)>,
    pub target_coeff: BigRational,
    pub target: Vec<Elem>,
}

fn rational(s: &str) -> CliResult<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| CliError::Fixture(format!("bad coefficient `{s}`")))
}

fn element(g: &GroupTable, name: &str) -> CliResult<Elem> {
    g.element_by_name(name)
        .ok_or_else(|| CliError::Fixture(format!("no element named `{name}` in {}", g.label())))
}

impl IdentityFixture {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Fixture(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn example() -> Self {
        Self::parse(EXAMPLE_FIXTURE).expect("shipped fixture parses")
    }

    pub fn resolve(&self, group_cap: usize) -> CliResult<ResolvedIdentity> {
        let g = resolve_group(&self.group, group_cap)?;
        let m = self.m;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let [k, l] = t.window;
            let outside = t
                .outside
                .iter()
                .map(|n| element(&g, n))
                .collect::<CliResult<Vec<_>>>()?;
            let inside = t
                .inside
                .iter()
                .map(|n| element(&g, n))
                .collect::<CliResult<Vec<_>>>()?;
            terms.push((
                rational(&t.coeff)?,
                TraceRow::new(&g, m, k, l, outside, inside)?,
            ));
        }
        let target = self
            .target_tuple
            .iter()
            .map(|n| element(&g, n))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ResolvedIdentity {
            group: g,
            m,
            terms,
            target_coeff: rational(&self.target_coeff)?,
            target,
        })
    }

    /// Exact expansion check.
    pub fn verify(&self, group_cap: usize, exact_cap: usize) -> CliResult<bool> {
        let r = self.resolve(group_cap)?;
        let system = build_trace_system(&r.group, r.m, exact_cap)?;
        Ok(system.verify_identity(&r.terms, &r.target_coeff, &r.target)?)
    }

    /// The same fixture with `delta` added to coefficient `index`.
    pub fn perturbed(&self, index: usize, delta: i64) -> CliResult<Self> {
        let mut out = self.clone();
        let term = out.terms.get_mut(index).ok_or_else(|| {
            CliError::Usage(format!(
                "no term {index}; the fixture has {}",
                self.terms.len()
            ))
        })?;
        let c = rational(&term.coeff)? + BigRational::from_integer(delta.into());
        term.coeff = c.to_string();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixture_holds() {
        let f = IdentityFixture::example();
        assert_eq!(f.terms.len(), 25);
        assert!(f.verify(24, 2048).unwrap());
        assert!(!f.perturbed(3, 1).unwrap().verify(24, 2048).unwrap());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(rational("3/6").unwrap(), rational("1/2").unwrap());
        assert!(rational("x").is_err());
    }

    #[test]
    fn unknown_names_are_rejected() {
        let mut f = IdentityFixture::example();
        f.terms[0].inside[0] = "g".into();
        assert!(matches!(f.resolve(24), Err(CliError::Fixture(_))));
    }
}
