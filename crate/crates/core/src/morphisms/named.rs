//! The named vertex permutations: transfers, homogeneous maps, `γᵢ`, `τ`,
//! `ω`, `ε` and the `τᵢ`.

use alloc::format;
use alloc::vec::Vec;

use super::VertexPermutation;
use crate::error::{Error, Result};
use crate::graph::{GcmGraph, Vertex, DEFAULT_MATERIALIZE_CAP};
use crate::group::GroupMap;

fn build(
    graph: &GcmGraph,
    label: impl Into<alloc::string::String>,
    f: impl FnMut(usize) -> usize,
) -> VertexPermutation {
    VertexPermutation::from_fn(graph.vertex_count(), f)
        .expect("named maps are bijections")
        .with_label(label)
}

/// `T_𝐠: 𝐱 ↦ 𝐱𝐠`.
pub fn transfer(graph: &GcmGraph, g: Vertex) -> VertexPermutation {
    build(graph, format!("T{}", graph.display_vertex(g)), |x| {
        graph.mul(Vertex(x), g).0
    })
}

/// `f` applied in every coordinate.
pub fn homogeneous_aut(graph: &GcmGraph, f: &GroupMap) -> Result<VertexPermutation> {
    let g = graph.group();
    if f.domain_order() != g.order()
        || f.codomain_order() != g.order()
        || !f.is_bijective()
        || !f.is_homomorphism(g, g)
    {
        return Err(Error::NotAnAutomorphism(format!(
            "{:?} is not an automorphism of {}",
            f.images(),
            g.label()
        )));
    }
    Ok(build(graph, "f", |x| {
        graph.map_coords(Vertex(x), |_, c| f.apply(c)).0
    }))
}

/// `γᵢ`: coordinate `i` becomes `g_{i−1} g_i⁻¹ g_{i+1}` (with `g₀ = g_{m+1} = e`).
pub fn gamma(graph: &GcmGraph, i: usize) -> Result<VertexPermutation> {
    let m = graph.m();
    if !(1..=m).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let g = graph.group();
    let j = i - 1;
    Ok(build(graph, format!("gamma{i}"), |x| {
        let mut c = graph.decode(Vertex(x));
        let prev = if j == 0 { 0 } else { c[j - 1] };
        let next = if j + 1 == m { 0 } else { c[j + 1] };
        c[j] = g.mul(g.mul(prev, g.inv(c[j])), next);
        graph.encode(&c).0
    }))
}

/// Coordinate reversal.
pub fn tau(graph: &GcmGraph) -> VertexPermutation {
    build(graph, "tau", |x| {
        let mut c = graph.decode(Vertex(x));
        c.reverse();
        graph.encode(&c).0
    })
}

/// `ω: (g₁,…,gₘ) ↦ (g₁⁻¹g₂, …, g₁⁻¹gₘ, g₁⁻¹)`.
pub fn omega(graph: &GcmGraph) -> VertexPermutation {
    let g = graph.group();
    build(graph, "omega", |x| {
        let c = graph.decode(Vertex(x));
        let a = g.inv(c[0]);
        let mut out: Vec<_> = c[1..].iter().map(|&y| g.mul(a, y)).collect();
        out.push(a);
        graph.encode(&out).0
    })
}

/// Coordinatewise inversion.
pub fn epsilon(graph: &GcmGraph) -> VertexPermutation {
    build(graph, "epsilon", |x| graph.inv(Vertex(x)).0)
}

/// `τ₁, …, τ_p` (`p = ⌊(m+1)/2⌋`), built from the `γᵢ` by conjugation:
/// the innermost is `γ_p` (m odd) or `γ_{p+1}γ_pγ_{p+1}` (m even), and
/// `τᵢ = γᵢγ_{m+1−i} τ_{i+1} γ_{m+1−i}γᵢ`. Only meaningful for abelian `G`.
pub fn tau_i(graph: &GcmGraph) -> Result<Vec<VertexPermutation>> {
    if !graph.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let m = graph.m();
    let p = m.div_ceil(2);
    let gammas: Vec<VertexPermutation> = (1..=m).map(|i| gamma(graph, i)).collect::<Result<_>>()?;
    let gm = |i: usize| &gammas[i - 1];
    let mut out = Vec::with_capacity(p);
    let mut cur = if m % 2 == 1 {
        gm(p).clone()
    } else {
        gm(p + 1).then(gm(p)).then(gm(p + 1))
    };
    out.push(cur.clone().with_label(format!("tau{p}")));
    for i in (1..p).rev() {
        let k = m + 1 - i;
        cur = gm(i).then(gm(k)).then(&cur).then(gm(k)).then(gm(i));
        out.push(cur.clone().with_label(format!("tau{i}")));
    }
    out.reverse();
    Ok(out)
}

/// `ε`, the `τᵢ`, and the two checks that tie them to `τ`.
#[derive(Clone, Debug)]
pub struct TauDecomposition {
    pub epsilon: VertexPermutation,
    pub tau_i: Vec<VertexPermutation>,
    /// All `τᵢ` commute pairwise.
    pub commute: bool,
    /// `τ₁⋯τ_p = ετ`.
    pub product_is_epsilon_tau: bool,
}

pub fn epsilon_and_tau_i(graph: &GcmGraph) -> Result<TauDecomposition> {
    let taus = tau_i(graph)?;
    let eps = epsilon(graph);
    let n = graph.vertex_count();
    let commute = taus
        .iter()
        .enumerate()
        .all(|(a, s)| taus[a + 1..].iter().all(|t| s.then(t) == t.then(s)));
    let product = taus
        .iter()
        .fold(VertexPermutation::identity(n), |acc, t| acc.then(t));
    let product_is_epsilon_tau = product == eps.then(&tau(graph));
    Ok(TauDecomposition {
        epsilon: eps,
        tau_i: taus,
        commute,
        product_is_epsilon_tau,
    })
}

/// First edge `(u, v)` whose image is not an edge, if any.
pub fn automorphism_witness(
    graph: &GcmGraph,
    p: &VertexPermutation,
) -> Result<Option<(Vertex, Vertex)>> {
    let n = graph.vertex_count();
    if n > DEFAULT_MATERIALIZE_CAP {
        return Err(Error::TooLarge {
            what: "exhaustive edge check vertex count",
            size: n,
            cap: DEFAULT_MATERIALIZE_CAP,
        });
    }
    if p.degree() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} points on {n} vertices",
            p.degree()
        )));
    }
    for u in 0..n {
        for w in graph.neighbors(Vertex(u)) {
            if w.0 > u && !graph.adjacent(Vertex(p.apply(u)), Vertex(p.apply(w.0))) {
                return Ok(Some((Vertex(u), w)));
            }
        }
    }
    Ok(None)
}

/// Exhaustive edge-preservation check. A bijection of a finite graph that
/// maps edges to edges maps the edge set onto itself.
pub fn is_graph_automorphism(graph: &GcmGraph, p: &VertexPermutation) -> Result<bool> {
    Ok(automorphism_witness(graph, p)?.is_none())
}

/// A pair with `(𝐠𝐡)^ω ≠ 𝐠^ω 𝐡^ω`, if `ω` is not a group homomorphism of `Gᵐ`.
pub fn omega_homomorphism_witness(graph: &GcmGraph) -> Option<(Vertex, Vertex)> {
    let w = omega(graph);
    let n = graph.vertex_count();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (Vertex(a), Vertex(b))))
        .find(|&(a, b)| {
            w.apply(graph.mul(a, b).0) != graph.mul(Vertex(w.apply(a.0)), Vertex(w.apply(b.0))).0
        })
}

/// Fixed points of `ω`, found by scanning.
pub fn omega_fixed_points(graph: &GcmGraph) -> Vec<Vertex> {
    omega(graph)
        .fixed_points()
        .into_iter()
        .map(Vertex)
        .collect()
}

/// `{(g, g², …, gᵐ) : g^{m+1} = e}`, listed from the group.
pub fn power_vertices(graph: &GcmGraph) -> Vec<Vertex> {
    let g = graph.group();
    let m = graph.m();
    let mut out: Vec<Vertex> = (0..g.order())
        .filter(|&x| g.pow(x, m as i64 + 1) == 0)
        .map(|x| {
            let c: Vec<_> = (1..=m).map(|k| g.pow(x, k as i64)).collect();
            graph.encode(&c)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Both sides of the `ω`-conjugate of a transfer: `(ω⁻¹ T_𝐠 ω, f_{g₁} T_{𝐠^ω})`,
/// composed left to right, where `f_{g₁}: x ↦ g₁⁻¹ x g₁`.
pub fn omega_transfer_conjugation(
    graph: &GcmGraph,
    g: Vertex,
) -> (VertexPermutation, VertexPermutation) {
    let w = omega(graph);
    let lhs = w.inverse().then(&transfer(graph, g)).then(&w);
    let g1 = graph.decode(g)[0];
    let f =
        homogeneous_aut(graph, &GroupMap::inner(graph.group(), g1)).expect("inner automorphism");
    let rhs = f.then(&transfer(graph, Vertex(w.apply(g.0))));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::group::{automorphism_group, build_group};
    use crate::morphisms::group_order;
    use num_bigint::BigUint;

    fn graph(spec: &str, m: usize) -> GcmGraph {
        build_graph(&build_group(spec).unwrap(), m).unwrap()
    }

    #[test]
    fn transfers_are_fixed_point_free_automorphisms() {
        let gr = graph("C3", 2);
        assert!(transfer(&gr, Vertex(0)).is_identity());
        for g in 1..9 {
            let t = transfer(&gr, Vertex(g));
            assert!(t.fixed_points().is_empty());
            assert!(is_graph_automorphism(&gr, &t).unwrap());
        }
        let a = transfer(&gr, Vertex(4)).then(&transfer(&gr, Vertex(7)));
        assert_eq!(a, transfer(&gr, gr.mul(Vertex(4), Vertex(7))));
    }

    #[test]
    fn gamma_relations_for_c3() {
        let gr = graph("C3", 2);
        let (g1, g2) = (gamma(&gr, 1).unwrap(), gamma(&gr, 2).unwrap());
        assert!(g1.pow(2).is_identity() && g2.pow(2).is_identity());
        assert_eq!(g1.then(&g2).order(), 3);
        assert!(is_graph_automorphism(&gr, &g1).unwrap());
        assert!(matches!(gamma(&gr, 3), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(group_order(&[g1, g2]).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn gamma_fails_for_s3() {
        let gr = graph("S3", 2);
        let g1 = gamma(&gr, 1).unwrap();
        assert!(automorphism_witness(&gr, &g1).unwrap().is_some());
    }

    #[test]
    fn dihedral_part() {
        for spec in ["C2", "S3", "C4"] {
            let gr = graph(spec, 3);
            let (t, w) = (tau(&gr), omega(&gr));
            assert!(t.pow(2).is_identity());
            assert_eq!(w.order(), 4);
            assert_eq!(w.inverse().then(&t), t.then(&w));
            assert!(is_graph_automorphism(&gr, &t).unwrap());
            assert!(is_graph_automorphism(&gr, &w).unwrap());
            assert_eq!(group_order(&[t, w]).unwrap(), BigUint::from(8u32));
        }
    }

    #[test]
    fn omega_fixed_points_are_powers() {
        let gr = graph("S3", 2);
        assert_eq!(omega_fixed_points(&gr), power_vertices(&gr));
        assert_eq!(power_vertices(&gr).len(), 3);
        assert!(omega_homomorphism_witness(&gr).is_some());
        assert!(omega_homomorphism_witness(&graph("C4", 2)).is_none());
    }

    #[test]
    fn omega_conjugates_transfers() {
        let gr = graph("S3", 2);
        for g in 0..gr.vertex_count() {
            let (lhs, rhs) = omega_transfer_conjugation(&gr, Vertex(g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homogeneous_maps() {
        let gr = graph("C4", 2);
        let g = gr.group().clone();
        let inv = GroupMap::new((0..4).map(|x| g.inv(x)).collect(), 4).unwrap();
        let f = homogeneous_aut(&gr, &inv).unwrap();
        assert_eq!(f.order(), 2);
        assert!(is_graph_automorphism(&gr, &f).unwrap());
        let bad = GroupMap::new(vec![0, 2, 1, 3], 4).unwrap();
        assert!(homogeneous_aut(&gr, &bad).is_err());
        // f⁻¹ T_𝐠 f = T_{𝐠^f}
        for a in automorphism_group(&g, 24).unwrap() {
            let f = homogeneous_aut(&gr, &a).unwrap();
            for x in 0..16 {
                let lhs = f.inverse().then(&transfer(&gr, Vertex(x))).then(&f);
                assert_eq!(lhs, transfer(&gr, Vertex(f.apply(x))));
            }
        }
    }

    #[test]
    fn tau_i_products() {
        for (spec, m) in [("C3", 3), ("C4", 4), ("C5", 5), ("C2", 4)] {
            let gr = graph(spec, m);
            let d = epsilon_and_tau_i(&gr).unwrap();
            assert_eq!(d.tau_i.len(), m.div_ceil(2));
            assert!(d.commute && d.product_is_epsilon_tau, "{spec} m={m}");
            for t in &d.tau_i {
                assert!(is_graph_automorphism(&gr, t).unwrap());
            }
        }
        assert_eq!(epsilon(&graph("C2", 3)), VertexPermutation::identity(8));
        assert!(matches!(
            epsilon_and_tau_i(&graph("S3", 2)),
            Err(Error::NotAbelian)
        ));
    }
}
