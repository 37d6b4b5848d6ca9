//! The reproduction suite: every claim the tool can check, over a fixed
//! corpus of small groups, one PASS/FAIL line per criterion.

use std::collections::BTreeSet;

use gcm_core::clique::{clique_number, dispersed_clique, interval_clique, neighbor_graph};
use gcm_core::graph::{interval_meta_graph, GcmGraph, Vertex};
use gcm_core::group::{groups_isomorphic, GroupTable};
use gcm_core::morphisms::{
    assemble_full_aut, automorphism_search, coordinatewise_map, epsilon_and_tau_i,
    extract_group_iso, gamma, graphs_isomorphic, group_order, interval_to_dispersed_swap,
    is_graph_automorphism, omega, omega_fixed_points, omega_homomorphism_witness,
    omega_transfer_conjugation, power_vertices, predicted_aut_order, tau, transfer, Homogeneity,
    VertexPermutation,
};
use gcm_core::simple::kneser_graph;
use gcm_core::spectral::{
    abelian_spectrum, check_regularity, lambda_min_numeric, question26_probe, Q26Verdict,
    RegularityMode,
};
use gcm_core::trace::build_trace_system;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::fixture::IdentityFixture;
use crate::table::resolve_group;

/// Caps and seed shared by every check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub group_cap: usize,
    pub materialize_cap: usize,
    pub exact_cap: usize,
    pub numeric_cap: usize,
    pub ir_cap: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            group_cap: gcm_core::group::DEFAULT_GROUP_CAP,
            materialize_cap: gcm_core::graph::DEFAULT_MATERIALIZE_CAP,
            exact_cap: gcm_core::trace::DEFAULT_EXACT_CAP,
            numeric_cap: gcm_core::spectral::DEFAULT_NUMERIC_CAP,
            ir_cap: gcm_core::morphisms::DEFAULT_IR_CAP,
            seed: gcm_core::spectral::DEFAULT_SEED,
        }
    }
}

impl VerifyConfig {
    fn group(&self, spec: &str) -> CliResult<GroupTable> {
        resolve_group(spec, self.group_cap)
    }

    fn graph(&self, spec: &str, m: usize) -> CliResult<GcmGraph> {
        Ok(GcmGraph::new(&self.group(spec)?, m, self.materialize_cap)?)
    }
}

/// Groups of the default corpus, checked at m = 2 and m = 3.
pub const CORPUS_GROUPS: [&str; 12] = [
    "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C8", "C4xC2", "C2xC2xC2", "D4", "Q8",
];

/// `(group, m)` pairs of the default corpus.
pub fn default_corpus() -> Vec<(&'static str, usize)> {
    let mut out: Vec<_> = CORPUS_GROUPS
        .iter()
        .flat_map(|&g| [(g, 2), (g, 3)])
        .collect();
    out.push(("C2", 4));
    out.push(("C3", 3));
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    run: fn(&VerifyConfig) -> CliResult<Vec<Check>>,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// `PASS  3 title (n checks)` or `FAIL 11 title: failing checks`.
    pub fn line(&self) -> String {
        if self.passed() {
            format!(
                "PASS {:>2} {} ({} checks)",
                self.id,
                self.title,
                self.checks.len()
            )
        } else if let Some(e) = &self.error {
            format!("FAIL {:>2} {}: error: {e}", self.id, self.title)
        } else {
            let bad: Vec<String> = self
                .failures()
                .iter()
                .map(|c| format!("{} [{}]", c.name, c.detail))
                .collect();
            format!("FAIL {:>2} {}: {}", self.id, self.title, bad.join("; "))
        }
    }
}

pub const CRITERIA: [Criterion; 15] = [
    Criterion {
        id: 1,
        title: "G2(G) is strongly regular with parameters (n^2, 3(n-1), n, 6)",
        run: strongly_regular,
    },
    Criterion {
        id: 2,
        title: "exact spectrum of G2(G) for abelian G",
        run: exact_spectra,
    },
    Criterion {
        id: 3,
        title: "common neighbours with e by weight class on G3(G)",
        run: common_neighbor_law,
    },
    Criterion {
        id: 4,
        title: "edge regularity of G3(C4) and G4(C2)",
        run: edge_regularity,
    },
    Criterion {
        id: 5,
        title: "clique number is max{m+1, n} (4 when m = n = 2)",
        run: clique_numbers,
    },
    Criterion {
        id: 6,
        title: "neighbour graphs separate interval and dispersed cliques when n = m+1",
        run: clique_separation,
    },
    Criterion {
        id: 7,
        title: "interval meta-graph complements: Petersen (m = 4), perfect matching (m = 3)",
        run: kneser_complements,
    },
    Criterion {
        id: 8,
        title: "B^T B = C(m+1,2) I + A",
        run: btb_identity,
    },
    Criterion {
        id: 9,
        title: "trace-system rank agrees with the smallest-eigenvalue test",
        run: trace_ranks,
    },
    Criterion {
        id: 10,
        title: "shipped 25-term trace identity for C3, m = 3",
        run: shipped_identity,
    },
    Criterion {
        id: 11,
        title: "automorphism group orders: formula = generated group = refinement search",
        run: automorphism_orders,
    },
    Criterion {
        id: 12,
        title: "generator algebra of transfers, gamma_i, tau_i, tau, omega, epsilon",
        run: generator_algebra,
    },
    Criterion {
        id: 13,
        title: "graph isomorphism of G2 matches group isomorphism",
        run: isomorphism_agreement,
    },
    Criterion {
        id: 14,
        title: "homogeneous isomorphisms come from group isomorphisms; the C3 swap does not",
        run: homogeneity_round_trip,
    },
    Criterion {
        id: 15,
        title: "lambda_min never certified below -C(m+1,2) for m = n <= 4",
        run: eigenvalue_probe,
    },
];

pub fn run_criterion(c: &Criterion, cfg: &VerifyConfig) -> CriterionReport {
    let (checks, error) = match (c.run)(cfg) {
        Ok(checks) => (checks, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    CriterionReport {
        id: c.id,
        title: c.title,
        checks,
        error,
    }
}

/// Worker count from `GCM_THREADS` (unset or 0: rayon's default).
pub fn thread_count() -> CliResult<usize> {
    match std::env::var("GCM_THREADS") {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "GCM_THREADS must be a non-negative integer, got `{s}`"
            ))
        }),
    }
}

/// Run the criteria in order. With `fail_fast`, stop after the first failure.
pub fn run_all(
    cfg: &VerifyConfig,
    fail_fast: bool,
    mut on_report: impl FnMut(&CriterionReport) + Send,
) -> CliResult<Vec<CriterionReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| {
        let mut out = Vec::new();
        for c in &CRITERIA {
            let r = run_criterion(c, cfg);
            on_report(&r);
            let failed = !r.passed();
            out.push(r);
            if failed && fail_fast {
                break;
            }
        }
        Ok(out)
    })
}

/// Map `f` over `items` in parallel, keeping the input order.
fn par_checks<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> CliResult<Vec<Check>> + Sync + Send,
) -> CliResult<Vec<Check>> {
    let parts: Vec<CliResult<Vec<Check>>> = items.par_iter().map(f).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn binom2(k: usize) -> usize {
    k * (k - 1) / 2
}

fn strongly_regular(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let groups = [
        "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C8", "D4", "Q8",
    ];
    par_checks(&groups, |&spec| {
        let graph = cfg.graph(spec, 2)?;
        let n = graph.group().order();
        let r = check_regularity(&graph);
        let c_values = r.c_values.clone().unwrap_or_default();
        let ok = r.mode == RegularityMode::Exhaustive
            && r.vertices == n * n
            && r.regular
            && r.degree == 3 * (n - 1)
            && r.a_values == [n]
            && c_values.iter().all(|&c| c == 6);
        Ok(vec![check(
            format!("G2({spec})"),
            ok,
            format!(
                "v={} k={} a={:?} c={:?}",
                r.vertices, r.degree, r.a_values, c_values
            ),
        )])
    })
}

fn exact_spectra(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let groups = ["C2", "C3", "C4", "C2xC2", "C5", "C6", "C8"];
    par_checks(&groups, |&spec| {
        let g = cfg.group(spec)?;
        let n = g.order() as i64;
        let s = abelian_spectrum(&g, 2)?;
        let mut want: Vec<(i64, usize)> = vec![
            (3 * (n - 1), 1),
            (n - 3, (3 * (n - 1)) as usize),
            (-3, (n * n - 3 * n + 2) as usize),
        ];
        want.retain(|&(_, k)| k > 0);
        want.sort_by_key(|p| std::cmp::Reverse(p.0));
        let degree = 3 * (n - 1);
        // trace 0 and trace(A²) = n²·degree, independent of the closed form
        let moments_ok = s.moment(1) == 0 && s.moment(2) == i128::from(n * n * degree);
        Ok(vec![check(
            format!("G2({spec})"),
            s.pairs == want && moments_ok,
            format!("{:?}", s.pairs),
        )])
    })
}

fn common_neighbor_law(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let groups = ["C2", "C4", "C2xC2", "S3"];
    let per: Vec<Vec<Check>> = groups
        .par_iter()
        .map(|&spec| -> CliResult<Vec<Check>> {
            let graph = cfg.graph(spec, 3)?;
            let (n, m) = (graph.group().order(), graph.m());
            let e_row = graph.row(graph.identity()).ok_or_else(|| {
                CliError::Usage("graph not materialized; raise --cap-materialize".into())
            })?;
            let mut mismatches = Vec::new();
            let mut w3 = BTreeSet::new();
            for v in 1..graph.vertex_count() {
                let v = Vertex(v);
                let observed = e_row.intersection_count(graph.row(v).unwrap());
                let expected = match graph.weight(v) {
                    1 => n + 2 * m - 4,
                    2 => 6,
                    3 => {
                        w3.insert(observed);
                        graph.weight3_case(v).unwrap().predicted()
                    }
                    _ => 0,
                };
                if observed != expected {
                    mismatches.push(graph.display_vertex(v));
                }
            }
            let allowed: BTreeSet<usize> = [0, 1, 2, 4, 6].into();
            let mut out = vec![
                check(
                    format!("G3({spec}) law"),
                    mismatches.is_empty(),
                    format!(
                        "{} mismatches {:?}",
                        mismatches.len(),
                        mismatches.iter().take(3).collect::<Vec<_>>()
                    ),
                ),
                check(
                    format!("G3({spec}) weight-3 values"),
                    w3.is_subset(&allowed),
                    format!("{w3:?}"),
                ),
            ];
            if !graph.group().is_abelian() {
                out.push(check(
                    format!("G3({spec}) non-commuting rows"),
                    w3.contains(&1) && w3.contains(&0),
                    format!("{w3:?}"),
                ));
            }
            Ok(out)
        })
        .collect::<CliResult<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

fn edge_regularity(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    [("C4", 3, (64, 18, 6)), ("C2", 4, (16, 10, 6))]
        .iter()
        .map(|&(spec, m, (v, k, a))| {
            let r = check_regularity(&cfg.graph(spec, m)?);
            Ok(check(
                format!("G{m}({spec})"),
                r.regular && (r.vertices, r.degree) == (v, k) && r.a_values == [a],
                format!("v={} k={} a={:?}", r.vertices, r.degree, r.a_values),
            ))
        })
        .collect()
}

fn clique_numbers(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    par_checks(&default_corpus(), |&(spec, m)| {
        let graph = cfg.graph(spec, m)?;
        let n = graph.group().order();
        let want = if (m, n) == (2, 2) { 4 } else { (m + 1).max(n) };
        let got = clique_number(&graph)?;
        Ok(vec![check(
            format!("G{m}({spec})"),
            got == want,
            format!("omega={got}, want {want}"),
        )])
    })
}

fn clique_separation(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for spec in ["C4", "C2xC2"] {
        let graph = cfg.graph(spec, 3)?;
        let g = graph.group().clone();
        let m = graph.m();
        for (k, l) in gcm_core::graph::intervals(m) {
            let q = interval_clique(&graph, k, l);
            let nb = neighbor_graph(&graph, &q)?;
            out.push(check(
                format!("G3({spec}) interval [{k},{l})"),
                nb.graph.regular_degree() == Some(2 * m - 2),
                format!("{:?}", nb.degree_histogram()),
            ));
        }
        for x in 1..g.order() {
            for j in 1..=m + 1 {
                let q = dispersed_clique(&graph, x, j);
                let idx: Vec<usize> = (0..q.len()).collect();
                let is_clique = graph.induced(&q).is_clique(&idx) && q.len() == m + 1;
                let nb = neighbor_graph(&graph, &q)?;
                let want: Vec<usize> = if g.elem_order(x) > 2 {
                    vec![2 * m - 3, 2 * m - 2, 3 * m - 4]
                } else {
                    vec![2 * m - 4, 2 * m - 3]
                };
                let want: Vec<usize> = want
                    .into_iter()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                out.push(check(
                    format!("G3({spec}) dispersed C({},{j})", g.name(x)),
                    is_clique && nb.degree_set() == want,
                    format!("{:?}", nb.degree_histogram()),
                ));
            }
        }
    }
    Ok(out)
}

fn kneser_complements(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let b4 = interval_meta_graph(4).complement();
    let b3 = interval_meta_graph(3).complement();
    let observed4 = cfg.graph("C2", 4)?.interval_meta_graph_observed();
    let observed3 = cfg.graph("C3", 3)?.interval_meta_graph_observed();
    Ok(vec![
        check(
            "complement of B4 is Petersen-like",
            b4.order() == 10
                && b4.regular_degree() == Some(3)
                && b4.girth() == Some(5)
                && b4.diameter() == Some(2),
            format!(
                "n={} deg={:?} girth={:?} diam={:?}",
                b4.order(),
                b4.regular_degree(),
                b4.girth(),
                b4.diameter()
            ),
        ),
        check(
            "complement of B4 is KG(5,2)",
            graphs_isomorphic(&b4, &kneser_graph(5), cfg.ir_cap)?,
            "",
        ),
        check(
            "complement of B3 is a perfect matching on 6 vertices",
            b3.order() == 6 && b3.is_perfect_matching(),
            format!("edges={}", b3.edge_count()),
        ),
        check(
            "meta-graph read off G4(C2) and G3(C3) matches",
            observed4 == interval_meta_graph(4) && observed3 == interval_meta_graph(3),
            "",
        ),
    ])
}

fn btb_identity(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    par_checks(
        &[("C2", 2), ("C3", 2), ("C3", 3), ("C2", 3)],
        |&(spec, m)| {
            let graph = cfg.graph(spec, m)?;
            let sys = build_trace_system(graph.group(), m, cfg.exact_cap)?;
            Ok(vec![check(
                format!("({spec}, {m})"),
                sys.verify_btb_identity(&graph)?,
                "",
            )])
        },
    )
}

fn trace_ranks(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    par_checks(
        &[("C2", 2, Some(4)), ("C3", 3, Some(27)), ("C3", 2, None)],
        |&(spec, m, full)| {
            let graph = cfg.graph(spec, m)?;
            let g = graph.group();
            let sys = build_trace_system(g, m, cfg.exact_cap)?;
            let rank = sys.rational_rank();
            let cols = sys.column_count();
            let rank_full = rank == cols;
            let bound = -(binom2(m + 1) as i64);
            let exact_min = abelian_spectrum(g, m)?.min();
            let numeric = lambda_min_numeric(&graph, cfg.numeric_cap, cfg.seed)?;
            let numeric_full = numeric.value > bound as f64 + 1e-6;
            let expected_ok = match full {
                Some(r) => rank == r && rank_full,
                None => !rank_full,
            };
            Ok(vec![
                check(
                    format!("({spec}, {m}) rank"),
                    expected_ok,
                    format!("rank {rank} of {cols}"),
                ),
                check(
                    format!("({spec}, {m}) rank vs exact lambda_min"),
                    rank_full == (exact_min > bound),
                    format!("lambda_min={exact_min}, bound={bound}"),
                ),
                check(
                    format!("({spec}, {m}) rank vs Lanczos lambda_min"),
                    rank_full == numeric_full,
                    format!(
                        "lambda_min~{:.9} (residual {:.1e})",
                        numeric.value, numeric.residual
                    ),
                ),
            ])
        },
    )
}

fn shipped_identity(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let f = IdentityFixture::example();
    let mut out = vec![check(
        "fixture expands to 9 (e,e,e)",
        f.terms.len() == 25 && f.verify(cfg.group_cap, cfg.exact_cap)?,
        format!("{} terms", f.terms.len()),
    )];
    let mut survivors = Vec::new();
    for i in 0..f.terms.len() {
        if f.perturbed(i, 1)?.verify(cfg.group_cap, cfg.exact_cap)? {
            survivors.push(i);
        }
    }
    out.push(check(
        "every single-coefficient perturbation fails",
        survivors.is_empty(),
        format!("{survivors:?}"),
    ));
    Ok(out)
}

fn automorphism_orders(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let regular = [
        ("C4", 2, 192u64),
        ("C3", 3, 1296),
        ("C2xC2", 2, 576),
        ("S3", 2, 1296),
        ("Q8", 2, 9216),
    ];
    let mut out = par_checks(&regular, |&(spec, m, want)| {
        let g = cfg.group(spec)?;
        let graph = GcmGraph::new(&g, m, cfg.materialize_cap)?;
        let want = BigUint::from(want);
        let predicted = predicted_aut_order(&g, m)?.order;
        let assembled = assemble_full_aut(&g, m)?;
        let gens_ok = assembled
            .generators()
            .iter()
            .map(|p| is_graph_automorphism(&graph, p))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|b| b);
        let generated = assembled.order();
        let mut checks = vec![
            check(
                format!("G{m}({spec}) formula"),
                predicted.as_ref() == Some(&want),
                format!("{predicted:?}"),
            ),
            check(
                format!("G{m}({spec}) generated"),
                generated == want && gens_ok,
                generated.to_string(),
            ),
        ];
        if graph.vertex_count() <= cfg.ir_cap {
            let ir = automorphism_search(&graph, cfg.ir_cap)?.order;
            checks.push(check(
                format!("G{m}({spec}) refinement search"),
                ir == want,
                ir.to_string(),
            ));
        }
        Ok(checks)
    })?;
    for (spec, m, want) in [("C2", 3, 384u64), ("C3", 2, 1296)] {
        let graph = cfg.graph(spec, m)?;
        let ir = automorphism_search(&graph, cfg.ir_cap)?.order;
        let predicted = predicted_aut_order(graph.group(), m)?;
        out.push(check(
            format!("G{m}({spec}) exceptional, refinement search"),
            ir == BigUint::from(want) && predicted.exceptional,
            ir.to_string(),
        ));
    }
    Ok(out)
}

fn is_aut(graph: &GcmGraph, p: &VertexPermutation) -> CliResult<bool> {
    Ok(is_graph_automorphism(graph, p)?)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |a, i| a * i)
}

fn generator_algebra(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    par_checks(&default_corpus(), |&(spec, m)| {
        let graph = cfg.graph(spec, m)?;
        let g = graph.group();
        let n = graph.vertex_count();
        let id = VertexPermutation::identity(n);
        let tag = format!("G{m}({spec})");
        let mut out = Vec::new();

        let (t, w) = (tau(&graph), omega(&graph));
        out.push(check(
            format!("{tag} dihedral relations"),
            t.pow(2) == id
                && w.order() == (m + 1) as u64
                && w.inverse().then(&t) == t.then(&w)
                && group_order(&[t.clone(), w.clone()])? == BigUint::from(2 * (m + 1))
                && is_aut(&graph, &t)?
                && is_aut(&graph, &w)?,
            "",
        ));
        out.push(check(
            format!("{tag} omega fixed points"),
            omega_fixed_points(&graph) == power_vertices(&graph),
            format!("{} fixed", omega_fixed_points(&graph).len()),
        ));
        let mut conj_ok = true;
        let mut transfers_ok = true;
        for v in 0..n {
            let (lhs, rhs) = omega_transfer_conjugation(&graph, Vertex(v));
            conj_ok &= lhs == rhs;
            if v < 8 {
                transfers_ok &= is_aut(&graph, &transfer(&graph, Vertex(v)))?;
            }
        }
        out.push(check(
            format!("{tag} omega conjugates transfers"),
            conj_ok,
            "",
        ));
        out.push(check(
            format!("{tag} transfers are automorphisms"),
            transfers_ok,
            "",
        ));
        out.push(check(
            format!("{tag} omega is a group automorphism iff G is abelian"),
            omega_homomorphism_witness(&graph).is_none() == g.is_abelian(),
            "",
        ));

        let gammas: Vec<VertexPermutation> = (1..=m)
            .map(|i| gamma(&graph, i))
            .collect::<Result<_, _>>()?;
        if g.is_abelian() {
            let mut rel = true;
            for i in 0..m {
                rel &= gammas[i].pow(2) == id && is_aut(&graph, &gammas[i])?;
                for j in i + 1..m {
                    let prod = gammas[i].then(&gammas[j]);
                    rel &= if j == i + 1 {
                        prod.order() == 3
                    } else {
                        prod == gammas[j].then(&gammas[i])
                    };
                }
                // γᵢ⋯γᵢ₊ⱼ has order j+2
                let mut run = gammas[i].clone();
                for (jj, gm) in gammas.iter().enumerate().skip(i + 1) {
                    run = run.then(gm);
                    rel &= run.order() == (jj - i + 2) as u64;
                }
            }
            out.push(check(format!("{tag} gamma relations"), rel, ""));
            let order = group_order(&gammas)?;
            out.push(check(
                format!("{tag} <gamma_i> is S_(m+1)"),
                order == factorial(m + 1),
                order.to_string(),
            ));
            let d = epsilon_and_tau_i(&graph)?;
            let mut autos = is_aut(&graph, &d.epsilon)?;
            for ti in &d.tau_i {
                autos &= is_aut(&graph, ti)?;
            }
            out.push(check(
                format!("{tag} tau_1...tau_p = epsilon tau"),
                d.commute && d.product_is_epsilon_tau && autos,
                "",
            ));
        } else {
            let mut failing = 0;
            for gm in &gammas {
                if !is_aut(&graph, gm)? {
                    failing += 1;
                }
            }
            out.push(check(
                format!("{tag} no gamma_i is an automorphism"),
                failing == m,
                format!("{failing} of {m} fail"),
            ));
        }
        Ok(out)
    })
}

fn isomorphism_agreement(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let by_order: [&[&str]; 3] = [
        &["C4", "C2xC2"],
        &["C6", "S3", "C2xC3"],
        &["C8", "C4xC2", "C2xC2xC2", "D4", "Q8"],
    ];
    let mut pairs = Vec::new();
    for class in by_order {
        for (i, a) in class.iter().enumerate() {
            for b in &class[i + 1..] {
                pairs.push((*a, *b));
            }
        }
    }
    par_checks(&pairs, |&(a, b)| {
        let (ga, gb) = (cfg.group(a)?, cfg.group(b)?);
        let groups = groups_isomorphic(&ga, &gb, cfg.group_cap)?.is_some();
        let (xa, xb) = (
            GcmGraph::new(&ga, 2, cfg.materialize_cap)?,
            GcmGraph::new(&gb, 2, cfg.materialize_cap)?,
        );
        let graphs = graphs_isomorphic(&xa, &xb, cfg.ir_cap)?;
        Ok(vec![check(
            format!("{a} vs {b}"),
            graphs == groups,
            format!("graphs {graphs}, groups {groups}"),
        )])
    })
}

fn homogeneity_round_trip(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let (c6, c2c3) = (cfg.group("C6")?, cfg.group("C2xC3")?);
    let f = groups_isomorphic(&c6, &c2c3, cfg.group_cap)?.ok_or_else(|| {
        CliError::Core(gcm_core::Error::ClaimViolated(
            "C6 and C2xC3 not isomorphic".into(),
        ))
    })?;
    let (a, b) = (
        GcmGraph::new(&c6, 2, cfg.materialize_cap)?,
        GcmGraph::new(&c2c3, 2, cfg.materialize_cap)?,
    );
    let big = coordinatewise_map(&a, &b, &f)?;
    let round = extract_group_iso(&a, &b, &big)?;
    let c3 = cfg.graph("C3", 2)?;
    let swap = interval_to_dispersed_swap(&c3)?;
    let swap_aut = is_graph_automorphism(&c3, &swap)?;
    let swap_kind = extract_group_iso(&c3, &c3, &swap)?;
    Ok(vec![
        check(
            "C6 -> C2xC3 round trip",
            round == Homogeneity::Homogeneous(f.clone()),
            format!("{round:?}"),
        ),
        check("C3 swap is an automorphism", swap_aut, ""),
        check(
            "C3 swap is not homogeneous",
            matches!(swap_kind, Homogeneity::NotHomogeneous(_)),
            format!("{swap_kind:?}"),
        ),
    ])
}

fn eigenvalue_probe(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let mut cases: Vec<(&str, usize)> = Vec::new();
    for spec in CORPUS_GROUPS {
        let n = cfg.group(spec)?.order();
        if (2..=4).contains(&n) {
            cases.push((spec, n));
        }
    }
    par_checks(&cases, |&(spec, m)| {
        let g = cfg.group(spec)?;
        let r = question26_probe(&g, m, cfg.numeric_cap, cfg.seed)?;
        let exact_ok = !g.is_abelian() || r.exact.is_some();
        Ok(vec![check(
            format!("G{m}({spec})"),
            r.verdict != Q26Verdict::Below && exact_ok,
            format!(
                "{:?}, lambda_min={:?}, bound={}",
                r.verdict, r.exact, r.bound
            ),
        )])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        for (i, c) in CRITERIA.iter().enumerate() {
            assert_eq!(c.id, i + 1);
        }
    }

    #[test]
    fn corpus_has_the_expected_shape() {
        let corpus = default_corpus();
        assert_eq!(corpus.len(), 25);
        assert!(corpus.contains(&("C2", 4)));
    }

    #[test]
    fn report_lines() {
        let mut r = CriterionReport {
            id: 4,
            title: "t",
            checks: vec![check("a", true, "")],
            error: None,
        };
        assert!(r.line().starts_with("PASS  4 t"));
        r.checks.push(check("b", false, "why"));
        assert_eq!(r.line(), "FAIL  4 t: b [why]");
        r.checks.clear();
        assert!(!r.passed());
    }

    #[test]
    fn fail_fast_stops_early() {
        let cfg = VerifyConfig {
            group_cap: 1,
            ..VerifyConfig::default()
        };
        let reports = run_all(&cfg, true, |_| {}).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].error.is_some());
    }
}
