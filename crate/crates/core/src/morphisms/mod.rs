//! Graph automorphisms: named permutations, generated groups, predicted and
//! searched automorphism group orders, and the group-level meaning of graph
//! isomorphisms.

mod canon;
mod named;
mod perm;
mod schreier;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

pub use canon::{
    automorphism_search, canonical_aut_order, canonical_form, graphs_isomorphic, Adjacency,
    AutSearch, CanonicalForm, DEFAULT_IR_CAP,
};
pub use named::{
    automorphism_witness, epsilon, epsilon_and_tau_i, gamma, homogeneous_aut,
    is_graph_automorphism, omega, omega_fixed_points, omega_homomorphism_witness,
    omega_transfer_conjugation, power_vertices, tau, tau_i, transfer, TauDecomposition,
};
pub use perm::VertexPermutation;
pub use schreier::{group_order, PermGroup};

use crate::error::{Error, Result};
use crate::graph::{build_graph, intervals, GcmGraph, IntervalElement, Vertex};
use crate::group::{automorphism_group, GroupMap, GroupTable, DEFAULT_GROUP_CAP};

/// Predicted `|Aut(𝒢ₘ(G))|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutOrderPrediction {
    /// `None` for exceptional parameters with no known closed form.
    pub order: Option<BigUint>,
    /// `(m, |G|) = (2, 3)`, or `m = 3` with `G` of exponent 2: the general
    /// formula does not apply.
    pub exceptional: bool,
}

pub fn is_exceptional(g: &GroupTable, m: usize) -> bool {
    (m == 2 && g.order() == 3) || (m == 3 && g.exponent() == 2)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |a, i| a * i)
}

/// `|G|ᵐ·|Aut G|·(m+1)!` for abelian `G`, `|G|ᵐ·|Aut G|·2(m+1)` otherwise.
/// The exceptional cases `C3, m = 2` (1296) and `C2, m = 3` (384) carry their
/// known orders; other exponent-2 groups at `m = 3` have none.
pub fn predicted_aut_order(g: &GroupTable, m: usize) -> Result<AutOrderPrediction> {
    let n = g.order();
    if m < 2 || n < 2 {
        return Err(Error::BadParameters(format!(
            "need m ≥ 2 and |G| ≥ 2, got m = {m}, |G| = {n}"
        )));
    }
    if is_exceptional(g, m) {
        let order = match (m, n) {
            (2, 3) => Some(BigUint::from(1296u32)),
            (3, 2) => Some(BigUint::from(384u32)),
            _ => None,
        };
        return Ok(AutOrderPrediction {
            order,
            exceptional: true,
        });
    }
    let auts = automorphism_group(g, DEFAULT_GROUP_CAP.max(n))?.len();
    let top = if g.is_abelian() {
        factorial(m + 1)
    } else {
        BigUint::from(2 * (m + 1))
    };
    Ok(AutOrderPrediction {
        order: Some(BigUint::from(n).pow(m as u32) * auts * top),
        exceptional: false,
    })
}

/// A small generating subset of `Aut(G)`.
fn aut_generators(g: &GroupTable) -> Result<Vec<GroupMap>> {
    let n = g.order();
    let mut chosen: Vec<GroupMap> = Vec::new();
    let mut perms: Vec<VertexPermutation> = Vec::new();
    for a in automorphism_group(g, DEFAULT_GROUP_CAP.max(n))? {
        let p = VertexPermutation::new(a.images().to_vec())?;
        if !PermGroup::new(n, perms.clone())?.contains(&p) {
            perms.push(p);
            chosen.push(a);
        }
    }
    Ok(chosen)
}

/// Transfers for a generating set of `Gᵐ`, homogeneous maps for generators
/// of `Aut(G)`, and then `γ₁, …, γₘ` (abelian `G`) or `τ, ω` (otherwise).
pub fn full_aut_generators(graph: &GcmGraph) -> Result<Vec<VertexPermutation>> {
    let g = graph.group();
    let m = graph.m();
    let mut gens = Vec::new();
    for j in 0..m {
        for x in g.generating_set() {
            let mut c = alloc::vec![0; m];
            c[j] = x;
            gens.push(transfer(graph, graph.encode(&c)));
        }
    }
    for f in aut_generators(g)? {
        if f != GroupMap::identity(g.order()) {
            gens.push(homogeneous_aut(graph, &f)?);
        }
    }
    if g.is_abelian() {
        for i in 1..=m {
            gens.push(gamma(graph, i)?);
        }
    } else {
        gens.push(tau(graph));
        gens.push(omega(graph));
    }
    Ok(gens)
}

/// The automorphism group assembled from its named generators.
pub fn assemble_full_aut(g: &GroupTable, m: usize) -> Result<PermGroup> {
    if is_exceptional(g, m) {
        return Err(Error::ExceptionalCase {
            m,
            order: g.order(),
        });
    }
    let graph = build_graph(g, m)?;
    PermGroup::new(graph.vertex_count(), full_aut_generators(&graph)?)
}

/// Why a graph isomorphism is not induced coordinatewise by a group map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotHomogeneous {
    MovesIdentity,
    IntervalNotPreserved {
        interval: IntervalElement,
        image: Vertex,
    },
    NotCoordinatewise {
        vertex: Vertex,
    },
    NotGroupIsomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(GroupMap),
    NotHomogeneous(NotHomogeneous),
}

/// Read off the group map behind a graph isomorphism `F: 𝒢ₘ(G) → 𝒢ₘ(H)`.
pub fn extract_group_iso(a: &GcmGraph, b: &GcmGraph, f: &VertexPermutation) -> Result<Homogeneity> {
    let n = a.vertex_count();
    if a.m() != b.m()
        || b.vertex_count() != n
        || f.degree() != n
        || a.edge_count() != b.edge_count()
    {
        return Err(Error::NotAnIsomorphism);
    }
    for (u, w) in a.edges() {
        if !b.adjacent(Vertex(f.apply(u.0)), Vertex(f.apply(w.0))) {
            return Err(Error::NotAnIsomorphism);
        }
    }
    use Homogeneity::NotHomogeneous as No;
    if f.apply(0) != 0 {
        return Ok(No(NotHomogeneous::MovesIdentity));
    }
    for (k, l) in intervals(a.m()) {
        for x in 1..a.group().order() {
            let s = IntervalElement { x, k, l };
            let image = Vertex(f.apply(a.interval_vertex(s).0));
            match b.as_interval(image) {
                Some(t) if t.k == k && t.l == l => {}
                _ => {
                    return Ok(No(NotHomogeneous::IntervalNotPreserved {
                        interval: s,
                        image,
                    }))
                }
            }
        }
    }
    let mut map = alloc::vec![0; a.group().order()];
    for (x, slot) in map.iter_mut().enumerate().skip(1) {
        let v = f.apply(a.interval_vertex(IntervalElement { x, k: 1, l: 2 }).0);
        *slot = b.decode(Vertex(v))[0];
    }
    for v in 0..n {
        if a.map_coords(Vertex(v), |_, c| map[c]).0 != f.apply(v) {
            return Ok(No(NotHomogeneous::NotCoordinatewise { vertex: Vertex(v) }));
        }
    }
    let map = GroupMap::new(map, b.group().order())?;
    if !(map.is_bijective() && map.is_homomorphism(a.group(), b.group())) {
        return Ok(No(NotHomogeneous::NotGroupIsomorphism));
    }
    Ok(Homogeneity::Homogeneous(map))
}

/// The vertex map `f^{×m}: 𝒢ₘ(G) → 𝒢ₘ(H)` of a group isomorphism.
pub fn coordinatewise_map(a: &GcmGraph, b: &GcmGraph, f: &GroupMap) -> Result<VertexPermutation> {
    if f.domain_order() != a.group().order()
        || f.codomain_order() != b.group().order()
        || a.m() != b.m()
    {
        return Err(Error::DimensionMismatch(
            "group map does not match the graphs".into(),
        ));
    }
    VertexPermutation::from_fn(a.vertex_count(), |v| {
        let c: Vec<_> = a
            .decode(Vertex(v))
            .into_iter()
            .map(|x| f.apply(x))
            .collect();
        b.encode(&c).0
    })
}

/// On `𝒢₂` of a group of order 3: swap `(x, e)` with `(x⁻¹, x⁻¹)` and fix
/// every other vertex. This is a graph automorphism that carries the interval
/// clique `{𝐞, (x,x), (x⁻¹,x⁻¹)}` onto a dispersed one.
pub fn interval_to_dispersed_swap(graph: &GcmGraph) -> Result<VertexPermutation> {
    let g = graph.group();
    if g.order() != 3 || graph.m() != 2 {
        return Err(Error::BadParameters(
            "needs m = 2 and a group of order 3".into(),
        ));
    }
    let x = 1;
    let xi = g.inv(x);
    let a = graph.encode(&[x, 0]).0;
    let b = graph.encode(&[xi, xi]).0;
    Ok(VertexPermutation::from_fn(graph.vertex_count(), |v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    })?
    .with_label("interval-dispersed swap"))
}

/// Whether the neighbourhood graphs of `𝐞` in `𝒢ₘ(G)` and `𝒢ₘ(H)` are
/// isomorphic, for groups of the same order with the same number of
/// involutions.
pub fn verify_proposition_42(g: &GroupTable, h: &GroupTable, m: usize) -> Result<bool> {
    if g.order() != h.order() {
        return Err(Error::PreconditionFailed(format!(
            "|G| = {} but |H| = {}",
            g.order(),
            h.order()
        )));
    }
    let (ig, ih) = (g.involution_count(), h.involution_count());
    if ig != ih {
        return Err(Error::PreconditionFailed(format!(
            "{ig} vs {ih} involutions"
        )));
    }
    let (a, b) = (build_graph(g, m)?, build_graph(h, m)?);
    let va = a.induced(&a.neighbors(Vertex(0)));
    let vb = b.induced(&b.neighbors(Vertex(0)));
    graphs_isomorphic(&va, &vb, DEFAULT_IR_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, groups_isomorphic};

    fn grp(spec: &str) -> GroupTable {
        build_group(spec).unwrap()
    }

    #[test]
    fn predictions() {
        let p = |s: &str, m| predicted_aut_order(&grp(s), m).unwrap();
        assert_eq!(p("C4", 2).order, Some(BigUint::from(192u32)));
        assert_eq!(p("S3", 2).order, Some(BigUint::from(1296u32)));
        let c2 = p("C2", 3);
        assert!(c2.exceptional);
        assert_eq!(c2.order, Some(BigUint::from(384u32)));
        assert_eq!(p("C2xC2", 3).order, None);
        assert!(predicted_aut_order(&grp("C2"), 1).is_err());
    }

    #[test]
    fn assembled_matches_prediction() {
        for (spec, m) in [("C4", 2), ("S3", 2), ("C3", 3), ("C2xC2", 2), ("C2", 2)] {
            let g = grp(spec);
            let group = assemble_full_aut(&g, m).unwrap();
            let want = predicted_aut_order(&g, m).unwrap().order.unwrap();
            assert_eq!(group.order(), want, "{spec} m={m}");
        }
        assert!(matches!(
            assemble_full_aut(&grp("C3"), 2),
            Err(Error::ExceptionalCase { .. })
        ));
    }

    #[test]
    fn search_agrees_with_assembly() {
        for (spec, m) in [("C4", 2), ("S3", 2), ("C5", 2), ("C3", 3)] {
            let g = grp(spec);
            let graph = build_graph(&g, m).unwrap();
            assert_eq!(
                canonical_aut_order(&graph).unwrap(),
                assemble_full_aut(&g, m).unwrap().order(),
                "{spec}"
            );
        }
    }

    #[test]
    fn klein_square_has_twice_the_formula_order() {
        // 𝒢₂(C2×C2) is the complement of the 4×4 rook's graph, whose
        // automorphism group is S4 wr S2 of order 1152.
        let g = grp("C2xC2");
        let graph = build_graph(&g, 2).unwrap();
        let rook = crate::simple::SimpleGraph::from_fn(16, |a, b| a / 4 == b / 4 || a % 4 == b % 4);
        assert!(graphs_isomorphic(
            &graph.induced(&(0..16).map(Vertex).collect::<Vec<_>>()),
            &rook.complement(),
            100
        )
        .unwrap());
        let search = automorphism_search(&graph, 100).unwrap();
        assert_eq!(search.order, BigUint::from(1152u32));
        let assembled = assemble_full_aut(&g, 2).unwrap();
        assert_eq!(assembled.order(), BigUint::from(576u32));
        let full = PermGroup::new(16, search.generators).unwrap();
        assert!(assembled.generators().iter().all(|p| full.contains(p)));
    }

    #[test]
    fn exceptional_orders_by_search() {
        let ord = |s: &str, m| canonical_aut_order(&build_graph(&grp(s), m).unwrap()).unwrap();
        assert_eq!(ord("C2", 3), BigUint::from(384u32));
        assert_eq!(ord("C3", 2), BigUint::from(1296u32));
    }

    #[test]
    fn swap_is_not_homogeneous() {
        let gr = build_graph(&grp("C3"), 2).unwrap();
        let s = interval_to_dispersed_swap(&gr).unwrap();
        assert!(is_graph_automorphism(&gr, &s).unwrap());
        assert!(matches!(
            extract_group_iso(&gr, &gr, &s).unwrap(),
            Homogeneity::NotHomogeneous(_)
        ));
    }

    #[test]
    fn extraction_round_trip() {
        let (c6, c2c3) = (grp("C6"), grp("C2xC3"));
        let f = groups_isomorphic(&c6, &c2c3, 24).unwrap().unwrap();
        let (a, b) = (build_graph(&c6, 2).unwrap(), build_graph(&c2c3, 2).unwrap());
        let big = coordinatewise_map(&a, &b, &f).unwrap();
        assert_eq!(
            extract_group_iso(&a, &b, &big).unwrap(),
            Homogeneity::Homogeneous(f)
        );
        let c4 = build_graph(&grp("C4"), 2).unwrap();
        assert_eq!(
            extract_group_iso(&c4, &c4, &VertexPermutation::identity(16)).unwrap(),
            Homogeneity::Homogeneous(GroupMap::identity(4))
        );
        let bad = VertexPermutation::from_fn(16, |v| match v {
            1 => 5,
            5 => 1,
            v => v,
        })
        .unwrap();
        assert_eq!(
            extract_group_iso(&c4, &c4, &bad),
            Err(Error::NotAnIsomorphism)
        );
    }

    #[test]
    fn proposition_42_cases() {
        assert!(verify_proposition_42(&grp("C4"), &grp("C4"), 3).unwrap());
        assert!(verify_proposition_42(&grp("C6"), &grp("C6"), 3).unwrap());
        for (a, b) in [
            ("C6", "S3"),
            ("C8", "C4xC2"),
            ("C4xC2", "D4"),
            ("C2xC2xC2", "D4"),
        ] {
            assert!(matches!(
                verify_proposition_42(&grp(a), &grp(b), 2),
                Err(Error::PreconditionFailed(_))
            ));
        }
    }
}
