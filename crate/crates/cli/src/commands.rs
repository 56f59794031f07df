use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use folab_core::game::{check_s_membership, SCaps};
use folab_core::graph::{
    automorphism_count, density, is_strictly_balanced, max_density, parse_graph, write_graph, Graph,
};
use folab_core::logic::{evaluate_guarded, naive_cost, parse_sentence, Assignment, Evaluator, Formula};
use folab_core::pairs::{find_extension, parse_pair, write_pair, Alpha, RootedPair};
use folab_core::random::{
    build_theorem1_witness, build_theorem2_witness, mc_estimate, poisson_check, theorem1_alpha, threshold_scan,
    Estimate, SampleSpec, ScanGrid,
};
use folab_core::Rational;

use crate::args::{
    Builtin, DensityArgs, Format, McArgs, PairArgs, PoissonArgs, PropertyArgs, ScanArgs, SsetArgs, WitnessArgs,
};
use crate::output::Sink;
use crate::UsageError;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct DensityRow {
    vertices: usize,
    edges: usize,
    rho: String,
    rhomax: String,
    strictly_balanced: bool,
    aut: u64,
}

pub fn density_cmd(args: &DensityArgs, sink: &Sink) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let row = DensityRow {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        rho: density(&g)?.to_string(),
        rhomax: max_density(&g)?.0.to_string(),
        strictly_balanced: is_strictly_balanced(&g)?,
        aut: automorphism_count(&g)?,
    };
    sink.emit("density", Format::Text, &[row])
}

#[derive(Serialize)]
struct PairRow {
    v_rel: usize,
    e_rel: usize,
    rho: String,
    rhomax: String,
    e_min: Option<usize>,
    strictly_balanced: bool,
    alpha: Option<String>,
    f_alpha: Option<String>,
    safe: Option<bool>,
}

pub fn pair_cmd(args: &PairArgs, sink: &Sink) -> Result<()> {
    let pair = parse_pair(&read(&args.pair)?).with_context(|| format!("parsing {}", args.pair.display()))?;
    let (v, e) = pair.rel_counts();
    let alpha = args.alpha.map(Alpha::new).transpose()?;
    let row = PairRow {
        v_rel: v,
        e_rel: e,
        rho: pair.rel_density()?.to_string(),
        rhomax: pair.max_rel_density()?.0.to_string(),
        // Pairs whose maximisers only touch the roots have no `e_min`.
        e_min: pair.e_min().ok(),
        strictly_balanced: pair.is_strictly_balanced()?,
        alpha: alpha.map(|a| a.value().to_string()),
        f_alpha: alpha.map(|a| pair.f_alpha(a).to_string()),
        safe: alpha.map(|a| pair.is_alpha_safe(a)).transpose()?,
    };
    sink.emit("pair", Format::Text, &[row])
}

type BoxedProperty = Box<dyn Fn(&Graph) -> folab_core::Result<bool> + Sync>;

fn contains(pattern: Graph) -> Result<BoxedProperty> {
    let rooted = RootedPair::new(pattern, vec![], vec![])?;
    Ok(Box::new(move |g: &Graph| {
        Ok(find_extension(g, &rooted, &[], false)?.is_some())
    }))
}

/// Fails early when the formula cannot be evaluated on `n` vertices within `guard`.
fn check_formula_cost(f: &Formula, n: usize, guard: u64) -> Result<()> {
    let cost = naive_cost(n, f).min(Evaluator::new(f).cost(n));
    if cost > guard {
        return Err(folab_core::Error::Capacity {
            what: "formula evaluation cost",
            value: cost,
            cap: guard,
        }
        .into());
    }
    Ok(())
}

fn property(args: &PropertyArgs, sizes: &[usize], guard: u64) -> Result<BoxedProperty> {
    if let Some(b) = args.property {
        return match b {
            Builtin::Edge => Ok(Box::new(|g: &Graph| Ok(g.edge_count() > 0))),
            Builtin::Triangle => contains(Graph::complete(3)),
            Builtin::K4 => contains(Graph::complete(4)),
            Builtin::Isolated => Ok(Box::new(
                |g: &Graph| Ok((0..g.vertex_count()).any(|v| g.degree(v) == 0)),
            )),
            Builtin::Connected => Ok(Box::new(|g: &Graph| Ok(g.is_connected()))),
        };
    }
    if let Some(path) = &args.contains {
        return contains(load_graph(path)?);
    }
    let path = args.formula.as_ref().expect("clap requires one property source");
    let f = parse_sentence(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    for &n in sizes {
        check_formula_cost(&f, n, guard)?;
    }
    Ok(Box::new(move |g: &Graph| {
        evaluate_guarded(g, &f, &Assignment::new(), guard)
    }))
}

#[derive(Serialize)]
struct EstimateRow {
    n: usize,
    alpha: String,
    p: f64,
    trials: u64,
    hits: u64,
    p_hat: f64,
    ci_low: f64,
    ci_high: f64,
    seed: u64,
    wall_ms: u64,
}

fn estimate_row(e: &Estimate, timing: bool) -> EstimateRow {
    EstimateRow {
        n: e.n,
        alpha: e.alpha.map(|a| a.to_string()).unwrap_or_default(),
        p: e.p,
        trials: e.trials,
        hits: e.hits,
        p_hat: e.p_hat,
        ci_low: e.ci_low,
        ci_high: e.ci_high,
        seed: e.seed,
        wall_ms: if timing { e.wall_ms } else { 0 },
    }
}

pub fn scan_cmd(args: &ScanArgs, seed: u64, timing: bool, sink: &Sink) -> Result<()> {
    let alphas: Vec<Rational> = match args.theorem1 {
        Some(k) => {
            let mut out = Vec::new();
            for &m in &args.m {
                let a = theorem1_alpha(k, m)?;
                if a < Rational::from_integer(1) {
                    out.push(a);
                }
            }
            out
        }
        None => args.alpha.clone(),
    };
    if alphas.is_empty() {
        return Err(UsageError("scan needs --alpha or --theorem1 with --m giving an exponent below 1".into()).into());
    }
    let prop = property(&args.property, &args.n, args.guard)?;
    let grid = ScanGrid {
        n_values: args.n.clone(),
        alphas,
        trials: args.trials,
        seed,
        epsilon: args.epsilon,
    };
    let rows: Vec<EstimateRow> = threshold_scan(prop.as_ref(), &grid)?
        .iter()
        .map(|e| estimate_row(e, timing))
        .collect();
    sink.emit("scan", Format::Csv, &rows)
}

pub fn mc_cmd(args: &McArgs, seed: u64, timing: bool, sink: &Sink) -> Result<()> {
    let spec = match (args.alpha, args.p) {
        (Some(a), _) => SampleSpec::power_law(args.n, a, seed, args.trials),
        (None, Some(p)) => SampleSpec::explicit(args.n, p, seed, args.trials),
        (None, None) => unreachable!("clap requires --alpha or --p"),
    };
    spec.validate()?;
    let prop = property(&args.property, &[args.n], args.guard)?;
    let e = mc_estimate(&spec, prop.as_ref())?;
    sink.emit("mc", Format::Csv, &[estimate_row(&e, timing)])
}

#[derive(Serialize)]
struct PoissonRow {
    n: usize,
    trials: u64,
    seed: u64,
    density: String,
    p: f64,
    automorphisms: u64,
    lambda: f64,
    mean: f64,
    containment: f64,
    observed_0: u64,
    observed_1: u64,
    observed_2: u64,
    observed_3plus: u64,
    expected_0: f64,
    expected_1: f64,
    expected_2: f64,
    expected_3plus: f64,
    chi_square: f64,
    p_value: f64,
}

pub fn poisson_cmd(args: &PoissonArgs, seed: u64, sink: &Sink) -> Result<()> {
    let g = match &args.graph {
        Some(path) => load_graph(path)?,
        None => Graph::complete(3),
    };
    let r = poisson_check(&SampleSpec::explicit(args.n, 0.0, seed, args.trials), &g)?;
    let row = PoissonRow {
        n: args.n,
        trials: r.trials,
        seed,
        density: r.density.to_string(),
        p: r.p,
        automorphisms: r.automorphisms,
        lambda: r.lambda,
        mean: r.mean,
        containment: r.containment,
        observed_0: r.observed[0],
        observed_1: r.observed[1],
        observed_2: r.observed[2],
        observed_3plus: r.observed[3],
        expected_0: r.expected[0],
        expected_1: r.expected[1],
        expected_2: r.expected[2],
        expected_3plus: r.expected[3],
        chi_square: r.chi_square,
        p_value: r.p_value,
    };
    sink.emit("poisson", Format::Text, &[row])
}

#[derive(Serialize)]
struct WitnessRow {
    theorem: u8,
    k: usize,
    m: usize,
    alpha: String,
    x_vertices: usize,
    x_edges: usize,
    y_vertices: usize,
    y_edges: usize,
    rho_x: String,
    rho_y: String,
    rho_pair: String,
}

pub fn witness_cmd(args: &WitnessArgs, sink: &Sink) -> Result<()> {
    let w = match args.theorem {
        1 => build_theorem1_witness(args.k, args.m)?,
        _ => build_theorem2_witness(args.k, args.m)?,
    };
    if let Some(dir) = &args.dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        fs::write(dir.join("x.graph"), write_graph(&w.x))?;
        fs::write(dir.join("y.graph"), write_graph(&w.y))?;
        fs::write(dir.join("pair.txt"), write_pair(&w.pair))?;
    }
    let row = WitnessRow {
        theorem: args.theorem,
        k: args.k,
        m: args.m,
        alpha: w.alpha.value().to_string(),
        x_vertices: w.x.vertex_count(),
        x_edges: w.x.edge_count(),
        y_vertices: w.y.vertex_count(),
        y_edges: w.y.edge_count(),
        rho_x: density(&w.x)?.to_string(),
        rho_y: density(&w.y)?.to_string(),
        rho_pair: w.pair.rel_density()?.to_string(),
    };
    sink.emit("witness", Format::Text, &[row])
}

#[derive(Serialize)]
struct SsetRow {
    passes: bool,
    failures: usize,
    failed_properties: String,
    first_witness: String,
    patterns: usize,
    constraints: usize,
    balanced: usize,
}

pub fn sset_cmd(args: &SsetArgs, sink: &Sink) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let alpha = Alpha::new(args.alpha)?;
    if args.caps.len() != 4 {
        return Err(UsageError(format!("--caps takes 4 values, got {}", args.caps.len())).into());
    }
    let caps = SCaps {
        max_subgraph_v: args.caps[0],
        max_pattern_v: args.caps[1],
        max_root_v: args.caps[2],
        max_constraint_v: args.caps[3],
    };
    let rep = check_s_membership(&g, alpha, caps)?;
    let mut props: Vec<String> = rep.failures.iter().map(|f| format!("{:?}", f.property)).collect();
    props.dedup();
    let row = SsetRow {
        passes: rep.passes(),
        failures: rep.failures.len(),
        failed_properties: props.join(";"),
        first_witness: rep
            .failures
            .first()
            .map(|f| format!("vertices {:?} edges {:?}: {}", f.vertices, f.pattern_edges, f.detail))
            .unwrap_or_default(),
        patterns: rep.patterns,
        constraints: rep.constraints,
        balanced: rep.balanced,
    };
    sink.emit("sset-check", Format::Text, &[row])
}
