use gcm_core::graph::{build_graph, GcmGraph, Vertex};
use gcm_core::group::{automorphism_group, build_group, GroupMap, GroupTable};
use gcm_core::morphisms::{
    canonical_form, homogeneous_aut, is_graph_automorphism, omega_transfer_conjugation, transfer,
    PermGroup, VertexPermutation,
};
use gcm_core::simple::SimpleGraph;
use proptest::prelude::*;
use proptest::sample::select;

const GROUPS: [&str; 10] = [
    "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "D4", "Q8", "C2xC3",
];

fn group(spec: &str) -> GroupTable {
    build_group(spec).unwrap()
}

fn graph(spec: &str, m: usize) -> GcmGraph {
    build_graph(&group(spec), m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(spec in select(GROUPS.to_vec()), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let g = group(spec);
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.pow(a, g.elem_order(a) as i64), 0);
    }

    #[test]
    fn coordinates_round_trip(spec in select(GROUPS.to_vec()), m in 2usize..4, seed in any::<u64>()) {
        let gr = graph(spec, m);
        let v = Vertex((seed % gr.vertex_count() as u64) as usize);
        prop_assert_eq!(gr.encode(&gr.decode(v)), v);
        prop_assert_eq!(gr.mul(v, gr.inv(v)), gr.identity());
        if v != gr.identity() {
            let d = gr.weight_decomposition(v).unwrap();
            prop_assert_eq!(d.weight(), gr.weight(v));
            prop_assert_eq!(d.reassemble(m), gr.decode(v));
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_weight_based(spec in select(GROUPS.to_vec()), m in 2usize..4, a in any::<u64>(), b in any::<u64>()) {
        let gr = graph(spec, m);
        let n = gr.vertex_count() as u64;
        let (u, v) = (Vertex((a % n) as usize), Vertex((b % n) as usize));
        prop_assert_eq!(gr.adjacent(u, v), gr.adjacent(v, u));
        prop_assert_eq!(gr.adjacent(u, v), gr.adjacent_by_weight(u, v));
        prop_assert_eq!(gr.adjacent(u, v), u != v && gr.weight(gr.mul(v, gr.inv(u))) == 1);
    }

    #[test]
    fn transfers_compose_and_preserve_edges(spec in select(GROUPS.to_vec()), a in any::<u64>(), b in any::<u64>()) {
        let gr = graph(spec, 2);
        let n = gr.vertex_count() as u64;
        let (g, h) = (Vertex((a % n) as usize), Vertex((b % n) as usize));
        let (tg, th) = (transfer(&gr, g), transfer(&gr, h));
        prop_assert_eq!(tg.then(&th), transfer(&gr, gr.mul(g, h)));
        prop_assert!(is_graph_automorphism(&gr, &tg).unwrap());
    }

    #[test]
    fn homogeneous_conjugates_transfer(spec in select(GROUPS.to_vec()), pick in any::<u64>(), a in any::<u64>()) {
        let gr = graph(spec, 2);
        let auts = automorphism_group(gr.group(), 24).unwrap();
        let f = &auts[(pick % auts.len() as u64) as usize];
        let fp = homogeneous_aut(&gr, f).unwrap();
        let g = Vertex((a % gr.vertex_count() as u64) as usize);
        let lhs = fp.inverse().then(&transfer(&gr, g)).then(&fp);
        prop_assert_eq!(lhs, transfer(&gr, Vertex(fp.apply(g.0))));
        prop_assert!(is_graph_automorphism(&gr, &fp).unwrap());
    }

    #[test]
    fn omega_conjugates_transfer(spec in select(vec!["S3", "Q8", "D4", "C4"]), m in 2usize..4, a in any::<u64>()) {
        let gr = graph(spec, m);
        let g = Vertex((a % gr.vertex_count() as u64) as usize);
        let (lhs, rhs) = omega_transfer_conjugation(&gr, g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_ignores_labels(spec in select(vec!["C4", "C2xC2", "S3", "C5"]), shuffle in Just(()).prop_perturb(|_, mut rng| {
        let mut p: Vec<usize> = (0..36).collect();
        for i in (1..p.len()).rev() {
            p.swap(i, rng.random_range(0..=i));
        }
        p
    })) {
        let gr = graph(spec, 2);
        let n = gr.vertex_count();
        let perm: Vec<usize> = shuffle.into_iter().filter(|&x| x < n).collect();
        let edges: Vec<(usize, usize)> = gr.edges().into_iter().map(|(u, v)| (u.0, v.0)).collect();
        let a = SimpleGraph::from_edges(n, edges.iter().copied());
        let b = SimpleGraph::from_edges(n, edges.iter().map(|&(u, v)| (perm[u], perm[v])));
        let (ca, cb) = (canonical_form(&a, 100).unwrap(), canonical_form(&b, 100).unwrap());
        prop_assert!(ca.same_graph(&cb));
    }

    #[test]
    fn perm_group_membership(n in 3usize..8, imgs in proptest::collection::vec(any::<u64>(), 2)) {
        let gens: Vec<VertexPermutation> = imgs
            .iter()
            .map(|&s| {
                let mut p: Vec<usize> = (0..n).collect();
                let mut s = s;
                for i in (1..n).rev() {
                    p.swap(i, (s % (i as u64 + 1)) as usize);
                    s /= i as u64 + 1;
                }
                VertexPermutation::new(p).unwrap()
            })
            .collect();
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let fact: u64 = (1..=n as u64).product();
        let order: u64 = g.order().try_into().unwrap();
        prop_assert_eq!(fact % order, 0);
        prop_assert!(g.contains(&gens[0].then(&gens[1]).then(&gens[0].inverse())));
        // Closure by brute force agrees with Schreier–Sims.
        let mut elems = vec![VertexPermutation::identity(n)];
        let mut i = 0;
        while i < elems.len() {
            for s in &gens {
                let p = elems[i].then(s);
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        prop_assert_eq!(elems.len() as u64, order);
    }
}

#[test]
fn identity_group_map_is_identity_permutation() {
    let gr = graph("C5", 2);
    let id = homogeneous_aut(&gr, &GroupMap::identity(5)).unwrap();
    assert!(id.is_identity());
}
