//! `gcm` subcommands. Exit codes: 0 all checks passed, 1 a claim failed,
//! 2 usage or input error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gcm_core::clique::{max_cliques_through_e, neighbor_graph};
use gcm_core::graph::GcmGraph;
use gcm_core::group::{groups_isomorphic, GroupTable};
use gcm_core::morphisms::{
    assemble_full_aut, automorphism_search, full_aut_generators, graphs_isomorphic,
    predicted_aut_order,
};
use gcm_core::spectral::{
    abelian_spectrum, check_regularity, lambda_min_numeric, question26_probe, Q26Verdict,
};
use gcm_core::trace::{build_trace_system, Expression};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::fixture::IdentityFixture;
use crate::output::{
    adjacency_csv, clique_json, perm_json, regularity_json, render, spectrum_csv, spectrum_json,
    summary_json, to_dot, write_output, Format,
};
use crate::table::resolve_group;
use crate::verify::{run_all, VerifyConfig};

#[derive(Parser, Debug)]
#[command(
    name = "gcm",
    version,
    about = "Generic Cayley graphs Cay(G^m, S): construction and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Caps {
    /// Largest group order accepted
    #[arg(long = "cap-group", default_value_t = gcm_core::group::DEFAULT_GROUP_CAP, value_parser = positive)]
    pub group_cap: usize,
    /// Largest vertex count stored as an adjacency matrix
    #[arg(long = "cap-materialize", default_value_t = gcm_core::graph::DEFAULT_MATERIALIZE_CAP, value_parser = positive)]
    pub materialize_cap: usize,
    /// Largest column count for exact rational linear algebra
    #[arg(long = "cap-exact", default_value_t = gcm_core::trace::DEFAULT_EXACT_CAP, value_parser = positive)]
    pub exact_cap: usize,
    /// Largest vertex count for the Lanczos eigenvalue solver
    #[arg(long = "cap-numeric", default_value_t = gcm_core::spectral::DEFAULT_NUMERIC_CAP, value_parser = positive)]
    pub numeric_cap: usize,
    /// Largest vertex count for the refinement search
    #[arg(long = "cap-ir", default_value_t = gcm_core::morphisms::DEFAULT_IR_CAP, value_parser = positive)]
    pub ir_cap: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("caps must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group spec (C6, C2xC3, S3, D4, Q8, A4, ...) or `table:<path.csv>`
    #[arg(long)]
    pub group: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = gcm_core::spectral::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: Caps,
}

impl Common {
    fn m(&self) -> usize {
        self.m as usize
    }

    fn group(&self) -> CliResult<GroupTable> {
        resolve_group(&self.group, self.caps.group_cap)
    }

    fn graph(&self) -> CliResult<GcmGraph> {
        Ok(GcmGraph::new(
            &self.group()?,
            self.m(),
            self.caps.materialize_cap,
        )?)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        write_output(self.out.as_deref(), text)
    }

    fn emit_value(&self, v: &Value) -> CliResult<()> {
        self.emit(&render(v, self.format)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the graph; summary (json/text), adjacency matrix (csv) or DOT
    Build(Common),
    /// Exact spectrum (abelian) or the smallest eigenvalue (Lanczos)
    Spectrum(Common),
    /// Degree and common-neighbour regularity
    Regularity(Common),
    /// Maximum cliques through the identity and their neighbour graphs
    Cliques {
        #[command(flatten)]
        common: Common,
        /// Also write the graph as DOT to this path
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Rank of the trace-element matrix
    TraceRank(Common),
    /// Express a monomial as a rational combination of trace elements
    Express {
        #[command(flatten)]
        common: Common,
        /// Tuple of element names, e.g. "(e,e,e)"
        #[arg(long)]
        target: String,
    },
    /// Check a linear identity among trace elements
    VerifyIdentity {
        /// Fixture JSON; defaults to the shipped 25-term identity over C3
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Add `DELTA` to the coefficient of term `INDEX` before checking
        #[arg(long, num_args = 2, value_names = ["INDEX", "DELTA"], allow_negative_numbers = true)]
        perturb: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Automorphism group order: formula, generated group and refinement search
    Aut {
        #[command(flatten)]
        common: Common,
        /// Include the generating permutations
        #[arg(long)]
        generators: bool,
    },
    /// Compare G_m(G) with G_m(H) and G with H
    Iso {
        #[command(flatten)]
        common: Common,
        /// The second group
        #[arg(long)]
        with: String,
    },
    /// Compare the smallest eigenvalue with -C(m+1,2)
    ProbeQ26(Common),
    /// Run every check of the reproduction suite
    VerifyAll {
        /// Run every criterion even after a failure
        #[arg(long)]
        keep_going: bool,
        #[arg(long, default_value_t = gcm_core::spectral::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
}

/// Whether the claims checked by a command held.
type Outcome = CliResult<bool>;

/// Parse `argv`, run, report errors on stderr; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("gcm: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Build(c) => build(&c),
        Command::Spectrum(c) => spectrum(&c),
        Command::Regularity(c) => regularity(&c),
        Command::Cliques { common, emit_dot } => cliques(&common, emit_dot),
        Command::TraceRank(c) => trace_rank(&c),
        Command::Express { common, target } => express(&common, &target),
        Command::VerifyIdentity {
            fixture,
            perturb,
            format,
            out,
            caps,
        } => verify_identity(fixture, perturb, format, out, &caps),
        Command::Aut { common, generators } => aut(&common, generators),
        Command::Iso { common, with } => iso(&common, &with),
        Command::ProbeQ26(c) => probe(&c),
        Command::VerifyAll {
            keep_going,
            seed,
            out,
            caps,
        } => verify_all(keep_going, seed, out, &caps),
    }
}

fn build(c: &Common) -> Outcome {
    let graph = c.graph()?;
    match c.format {
        Format::Csv => {
            if !graph.is_materialized() {
                return Err(CliError::Usage(
                    "adjacency CSV needs a materialized graph; raise --cap-materialize".into(),
                ));
            }
            c.emit(&adjacency_csv(&graph))?
        }
        Format::Dot => c.emit(&to_dot(&graph))?,
        f => c.emit(&render(&summary_json(&graph), f)?)?,
    }
    Ok(true)
}

fn spectrum(c: &Common) -> Outcome {
    let g = c.group()?;
    if g.is_abelian() {
        let s = abelian_spectrum(&g, c.m())?;
        match c.format {
            Format::Csv => c.emit(&spectrum_csv(&s))?,
            f => c.emit(&render(&spectrum_json(&s), f)?)?,
        }
        return Ok(true);
    }
    if c.format == Format::Csv {
        return Err(CliError::Usage(
            "the full spectrum is exact only for abelian groups; use --format json for lambda_min"
                .into(),
        ));
    }
    let graph = GcmGraph::new(&g, c.m(), c.caps.materialize_cap)?;
    let r = lambda_min_numeric(&graph, c.caps.numeric_cap, c.seed)?;
    let (lo, hi) = r.bracket();
    c.emit_value(&json!({
        "exact": false,
        "lambda_min": r.value,
        "bracket": [lo, hi],
        "residual": r.residual,
        "iterations": r.iterations,
        "seed": c.seed.to_string(),
    }))?;
    Ok(true)
}

fn regularity(c: &Common) -> Outcome {
    let r = check_regularity(&c.graph()?);
    c.emit_value(&regularity_json(&r))?;
    Ok(r.passed())
}

fn cliques(c: &Common, emit_dot: Option<PathBuf>) -> Outcome {
    let graph = c.graph()?;
    if let Some(path) = emit_dot {
        write_output(Some(&path), &to_dot(&graph))?;
    }
    let records = max_cliques_through_e(&graph)?;
    let items = records
        .iter()
        .map(|r| {
            Ok(clique_json(
                &graph,
                r,
                &neighbor_graph(&graph, &r.vertices)?,
            ))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let n = graph.group().order();
    let size = records.first().map_or(1, |r| r.vertices.len());
    let expected = if (c.m(), n) == (2, 2) {
        4
    } else {
        (c.m() + 1).max(n)
    };
    c.emit_value(&json!({
        "clique_number": size,
        "expected": expected,
        "count": records.len(),
        "cliques": items,
    }))?;
    Ok(size == expected)
}

fn trace_rank(c: &Common) -> Outcome {
    let sys = build_trace_system(&c.group()?, c.m(), c.caps.exact_cap)?;
    let rank = sys.rational_rank();
    c.emit_value(&json!({
        "rows": sys.row_count(),
        "columns": sys.column_count(),
        "rank": rank,
        "full": rank == sys.column_count(),
    }))?;
    Ok(true)
}

fn parse_tuple(g: &GroupTable, s: &str) -> CliResult<Vec<usize>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|name| {
            let name = name.trim();
            g.element_by_name(name).ok_or_else(|| {
                CliError::Usage(format!("no element named `{name}` in {}", g.label()))
            })
        })
        .collect()
}

fn express(c: &Common, target: &str) -> Outcome {
    let g = c.group()?;
    let t = parse_tuple(&g, target)?;
    let sys = build_trace_system(&g, c.m(), c.caps.exact_cap)?;
    let v = match sys.express_monomial(&t)? {
        Expression::Infeasible => json!({"feasible": false}),
        Expression::Feasible { denominator, terms } => {
            let rows = sys.rows();
            json!({
                "feasible": true,
                "denominator": denominator.to_string(),
                "terms": terms.iter().map(|(coeff, i)| {
                    let r = &rows[*i];
                    json!({
                        "coeff": coeff.to_string(),
                        "window": [r.k, r.l],
                        "outside": r.outside.iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
                        "inside": r.inside.iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
                    })
                }).collect::<Vec<_>>(),
            })
        }
    };
    c.emit_value(&v)?;
    Ok(true)
}

fn verify_identity(
    fixture: Option<PathBuf>,
    perturb: Option<Vec<i64>>,
    format: Format,
    out: Option<PathBuf>,
    caps: &Caps,
) -> Outcome {
    let mut f = match &fixture {
        Some(path) => IdentityFixture::load(path)?,
        None => IdentityFixture::example(),
    };
    if let Some(p) = &perturb {
        let index = usize::try_from(p[0])
            .map_err(|_| CliError::Usage("perturbation index must be non-negative".into()))?;
        f = f.perturbed(index, p[1])?;
    }
    let holds = f.verify(caps.group_cap, caps.exact_cap)?;
    let v = json!({
        "group": f.group,
        "m": f.m,
        "terms": f.terms.len(),
        "target_coeff": f.target_coeff,
        "target_tuple": f.target_tuple,
        "holds": holds,
    });
    write_output(out.as_deref(), &render(&v, format)?)?;
    Ok(holds)
}

fn aut(c: &Common, with_generators: bool) -> Outcome {
    let g = c.group()?;
    let m = c.m();
    let prediction = predicted_aut_order(&g, m)?;
    let graph = GcmGraph::new(&g, m, c.caps.materialize_cap)?;
    let (generated, generators) = if prediction.exceptional {
        (None, None)
    } else {
        let group = assemble_full_aut(&g, m)?;
        let gens = with_generators
            .then(|| full_aut_generators(&graph))
            .transpose()?;
        (Some(group.order()), gens)
    };
    let canonical = if graph.vertex_count() <= c.caps.ir_cap {
        Some(automorphism_search(&graph, c.caps.ir_cap)?.order)
    } else {
        None
    };
    let known: Vec<_> = [&prediction.order, &generated, &canonical]
        .into_iter()
        .flatten()
        .collect();
    let agree = known.windows(2).all(|w| w[0] == w[1]);
    // two engines must have produced a value for the match to mean anything
    let comparable = known.len() >= 2;
    let s = |o: &Option<num_bigint::BigUint>| o.as_ref().map(|x| x.to_string());
    let mut v = json!({
        "predicted": s(&prediction.order),
        "generated": s(&generated),
        "canonical": s(&canonical),
        "exceptional": prediction.exceptional,
        // null when only one engine produced an order
        "match": comparable.then_some(agree),
    });
    if let Some(gens) = generators {
        v["generators"] = gens.iter().map(perm_json).collect();
    }
    c.emit_value(&v)?;
    Ok(if comparable {
        agree
    } else {
        canonical.is_some()
    })
}

fn iso(c: &Common, with: &str) -> Outcome {
    let (g, h) = (c.group()?, resolve_group(with, c.caps.group_cap)?);
    let groups = groups_isomorphic(&g, &h, c.caps.group_cap)?.is_some();
    let a = GcmGraph::new(&g, c.m(), c.caps.materialize_cap)?;
    let b = GcmGraph::new(&h, c.m(), c.caps.materialize_cap)?;
    let graphs = graphs_isomorphic(&a, &b, c.caps.ir_cap)?;
    c.emit_value(&json!({
        "groups_isomorphic": groups,
        "graphs_isomorphic": graphs,
        "agree": groups == graphs,
    }))?;
    Ok(groups == graphs)
}

fn probe(c: &Common) -> Outcome {
    let r = question26_probe(&c.group()?, c.m(), c.caps.numeric_cap, c.seed)?;
    let verdict = match r.verdict {
        Q26Verdict::StrictlyAbove => "strictly-above",
        Q26Verdict::AtBound => "at-bound",
        Q26Verdict::Below => "below",
    };
    let mut v = json!({"bound": r.bound, "verdict": verdict, "exact": r.exact});
    if let Some(n) = &r.numeric {
        v["lambda_min"] = json!(n.value);
        v["bracket"] = json!(n.bracket());
    }
    c.emit_value(&v)?;
    Ok(r.verdict != Q26Verdict::Below)
}

fn verify_all(keep_going: bool, seed: u64, out: Option<PathBuf>, caps: &Caps) -> Outcome {
    let cfg = VerifyConfig {
        group_cap: caps.group_cap,
        materialize_cap: caps.materialize_cap,
        exact_cap: caps.exact_cap,
        numeric_cap: caps.numeric_cap,
        ir_cap: caps.ir_cap,
        seed,
    };
    let mut text = String::new();
    let reports = run_all(&cfg, !keep_going, |r| {
        let line = r.line();
        if out.is_none() {
            println!("{line}");
        }
        text.push_str(&line);
        text.push('\n');
    })?;
    if let Some(path) = &out {
        write_output(Some(path), &text)?;
    }
    Ok(reports.len() == crate::verify::CRITERIA.len() && reports.iter().all(|r| r.passed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn tuples_parse_by_name() {
        let g = gcm_core::group::build_group("C3").unwrap();
        let t = parse_tuple(&g, "(e, e ,e)").unwrap();
        assert_eq!(t, vec![0, 0, 0]);
        assert!(parse_tuple(&g, "(e,q)").is_err());
    }

    #[test]
    fn perturb_takes_negative_delta() {
        let cli = Cli::try_parse_from(["gcm", "verify-identity", "--perturb", "0", "-2"]).unwrap();
        match cli.command {
            Command::VerifyIdentity { perturb, .. } => assert_eq!(perturb, Some(vec![0, -2])),
            other => panic!("{other:?}"),
        }
    }
}
