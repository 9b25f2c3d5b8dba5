//! `lovx`: evaluate multi-way Lovász extensions, check their structural
//! identities, solve the associated fractional programs, compute
//! continuous forms of graph invariants, verify 1-Laplacian eigenpairs,
//! and certify discrete Morse structure.
//!
//! Every invocation writes exactly one JSON report to stdout (or `--out`).
//! Reports are deterministic for fixed inputs and seed, up to the
//! `timing_ms` field. Exit codes: 0 success, 1 computational failure or
//! invalid input, 2 usage error.

pub mod formats;

use clap::{Args, Parser, Subcommand};
use formats::*;
use lovx_core::graphinv::{self, CheegerVariant, Graph, Method};
use lovx_core::laplace1;
use lovx_core::lovasz::{check_structural, lovasz_eval, lovasz_subgradient};
use lovx_core::morse;
use lovx_core::setfun::{DiscreteFunction, Mode, OptSense, RestrictedFamily};
use lovx_core::solvers::{
    dinkelbach_discrete, mixed_ipsd_multistart, stochastic_subgradient_ratio, FractionalProblem,
    Functional, IpsdVariant, Region, SolverConfig,
};
use lovx_core::submod::{check_characterization, check_convexity_equivalence};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "lovx",
    version,
    about = "Lovász-extension toolbox: discrete problems as continuous fractional programs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Numerical tolerance for feasibility and comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Randomized-check trial count.
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,
    /// Multi-start count for the continuous solvers.
    #[arg(long, global = true, default_value_t = 20)]
    pub restarts: usize,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the Lovász extension of a function at a point.
    Eval(EvalArgs),
    /// Subgradient of the extension at a point (1-way modes).
    Subgrad(EvalArgs),
    /// Structural, submodularity, characterization, and catalog checks.
    Check(CheckArgs),
    /// Fractional-programming solvers.
    Solve(SolveArgs),
    /// Graph invariants with continuous counterparts.
    Invariant(InvariantArgs),
    /// Graph 1-Laplacian eigenpair verification and quotients.
    Laplace(LaplaceArgs),
    /// Discrete Morse theory on complexes and hypergraphs.
    Morse(MorseArgs),
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Function JSON file.
    #[arg(long)]
    pub function: String,
    /// Comma-separated decimals or @file.json, row-major for k-way modes.
    #[arg(long)]
    pub point: String,
    /// Shape `k,n` for k-way points (informational; the function fixes it).
    #[arg(long)]
    pub shape: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(subcommand)]
    pub what: CheckWhat,
}

#[derive(Subcommand, Debug)]
pub enum CheckWhat {
    /// Homogeneity, translation, additivity, Lipschitz, set-pair relations.
    Structural {
        #[arg(long)]
        function: String,
    },
    /// Discrete/midpoint/continuous submodularity agreement.
    Submodularity {
        #[arg(long)]
        function: String,
    },
    /// Is the extension of this function characterized correctly?
    Characterization {
        #[arg(long)]
        function: String,
    },
    /// Closed forms against the extension on random points.
    Catalog {
        #[arg(long)]
        graph: String,
        /// Single row name; defaults to all rows.
        #[arg(long)]
        row: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(subcommand)]
    pub scheme: SolveScheme,
}

#[derive(Subcommand, Debug)]
pub enum SolveScheme {
    /// Exact Dinkelbach iteration over an enumerable family.
    Dinkelbach {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "nonempty")]
        family: String,
        #[arg(long, default_value = "min")]
        sense: String,
    },
    /// Mixed inverse-power / steepest-descent scheme.
    Ipsd {
        /// Built-in objective (`cheeger` or `alpha`) on a graph.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value = "cheeger")]
        objective: String,
        /// Explicit numerator function (DC-split automatically).
        #[arg(long)]
        f: Option<String>,
        /// Explicit denominator function (DC-split automatically).
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value = "normalized")]
        variant: String,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
    },
    /// Stochastic subgradient descent on the ratio.
    Sgd {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "cheeger")]
        objective: String,
        #[arg(long, default_value_t = 0.01)]
        noise: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[command(subcommand)]
    pub which: InvariantKind,
}

#[derive(Subcommand, Debug)]
pub enum InvariantKind {
    /// Independence number.
    Alpha(GraphMethodArgs),
    /// Chromatic number.
    Gamma(GraphMethodArgs),
    /// Maximum k-cut.
    Maxkcut {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Maximum matching number.
    Matching(GraphMethodArgs),
    /// Cheeger constants.
    Cheeger {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "classic")]
        variant: String,
        /// Support bound for the isoperimetric profile.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Edge Cheeger-like constant and companion neighborhood ratio.
    CheegerLike {
        #[arg(long)]
        graph: String,
    },
    /// Poincare profile sandwich between vertex Cheeger constants.
    Poincare {
        #[arg(long)]
        graph: String,
    },
    /// Submodular vertex cover with its convex relaxation.
    VertexCover {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        function: String,
    },
    /// Submodular multiway partition with its convex relaxation.
    Multiway {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        function: String,
        /// Comma-separated terminal vertices.
        #[arg(long)]
        terminals: String,
    },
    /// Distance k-independence number.
    KAlpha {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Args, Debug)]
pub struct GraphMethodArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value = "both")]
    pub method: String,
}

#[derive(Args, Debug)]
pub struct LaplaceArgs {
    #[command(subcommand)]
    pub which: LaplaceKind,
}

#[derive(Subcommand, Debug)]
pub enum LaplaceKind {
    VerifyDirichlet {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        candidate: String,
    },
    VerifyNeumann {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        candidate: String,
    },
    /// 1-Rayleigh quotient (and the Dirichlet quotient when a boundary
    /// partition is present).
    Rayleigh {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        point: String,
    },
    Nodal {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        point: String,
    },
}

#[derive(Args, Debug)]
pub struct MorseArgs {
    #[command(subcommand)]
    pub which: MorseKind,
}

#[derive(Subcommand, Debug)]
pub enum MorseKind {
    Validate {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        function: String,
        /// Auto-complete the downward closure instead of validating it.
        #[arg(long)]
        close: bool,
    },
    Critical {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        close: bool,
    },
    /// PL criticality of one face through the order complex.
    Pl {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        function: String,
        /// Comma-separated vertices of the face.
        #[arg(long)]
        face: String,
        #[arg(long)]
        close: bool,
    },
    /// Euler-characteristic and Morse-vector consistency report.
    Euler {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        close: bool,
    },
    /// Order complex of a complex or hypergraph.
    Order {
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        hypergraph: Option<String>,
        #[arg(long)]
        close: bool,
    },
    /// Simple discrete Morse structure on a hypergraph.
    Hypergraph {
        #[arg(long)]
        hypergraph: String,
        #[arg(long)]
        function: String,
    },
}

// ---------------------------------------------------------------------------

struct Ctx {
    seed: u64,
    tol: f64,
    trials: usize,
    restarts: usize,
    digest: Sha256,
}

impl Ctx {
    fn read(&mut self, path: &str) -> Result<String, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
        self.digest.update(path.as_bytes());
        self.digest.update(text.as_bytes());
        Ok(text)
    }
}

type CmdResult = Result<Value, String>;

fn fail<T>(e: impl std::fmt::Display) -> Result<T, String> {
    Err(e.to_string())
}

/// Runs the CLI on the given arguments, writing the report to `out`.
/// Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    let start = std::time::Instant::now();
    let mut ctx = Ctx {
        seed: cli.seed,
        tol: cli.tol,
        trials: cli.trials,
        restarts: cli.restarts,
        digest: Sha256::new(),
    };
    ctx.digest.update(format!(
        "seed={} tol={} trials={} restarts={}",
        cli.seed, cli.tol, cli.trials, cli.restarts
    ));
    let results = match &cli.command {
        Command::Eval(a) => cmd_eval(&mut ctx, a, false),
        Command::Subgrad(a) => cmd_eval(&mut ctx, a, true),
        Command::Check(a) => cmd_check(&mut ctx, a),
        Command::Solve(a) => cmd_solve(&mut ctx, a),
        Command::Invariant(a) => cmd_invariant(&mut ctx, a),
        Command::Laplace(a) => cmd_laplace(&mut ctx, a),
        Command::Morse(a) => cmd_morse(&mut ctx, a),
    };
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let (payload, code) = match results {
        Ok(v) => (v, 0),
        Err(msg) => (json!({ "error": msg }), 1),
    };
    let report = json!({
        "command": args[1..].to_vec(),
        "inputs_digest": format!("{:x}", ctx.digest.finalize()),
        "seed": cli.seed,
        "results": payload,
        "timing_ms": timing_ms,
    });
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes())
            .map_err(|e| format!("cannot write `{path}`: {e}")),
        None => out
            .write_all(rendered.as_bytes())
            .and_then(|()| out.write_all(b"\n"))
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return 1;
    }
    code
}

// ---------------------------------------------------------------------------
// Handlers
// ---------------------------------------------------------------------------

fn cmd_eval(ctx: &mut Ctx, a: &EvalArgs, subgradient: bool) -> CmdResult {
    let f = parse_function(&ctx.read(&a.function)?).or_else(fail)?;
    let x = parse_point(&a.point).or_else(fail)?;
    if let Some(shape) = &a.shape {
        let parts: Vec<&str> = shape.split(',').collect();
        let parsed: Option<(usize, usize)> = match parts.as_slice() {
            [k, n] => k.parse().ok().zip(n.parse().ok()),
            _ => None,
        };
        let Some((k, n)) = parsed else {
            return Err(format!("bad --shape `{shape}`, expected k,n"));
        };
        if k != f.mode().k() || n != f.n() {
            return Err(format!(
                "--shape {k},{n} does not match the function ({} rows over n = {})",
                f.mode().k(),
                f.n()
            ));
        }
        if x.len() != k * n {
            return Err(format!(
                "point has {} entries, --shape {k},{n} expects {}",
                x.len(),
                k * n
            ));
        }
    }
    if subgradient {
        let g = lovasz_subgradient(&f, &x).or_else(fail)?;
        let value = lovasz_eval(&f, &x).or_else(fail)?;
        Ok(json!({ "subgradient": g, "value": value }))
    } else {
        let value = lovasz_eval(&f, &x).or_else(fail)?;
        Ok(json!({ "value": value }))
    }
}

fn property_json(p: &lovx_core::lovasz::PropertyResult) -> Value {
    json!({
        "name": p.name,
        "passed": p.passed,
        "trials": p.trials,
        "witness": p.witness,
    })
}

fn cmd_check(ctx: &mut Ctx, a: &CheckArgs) -> CmdResult {
    match &a.what {
        CheckWhat::Structural { function } => {
            let f = parse_function(&ctx.read(function)?).or_else(fail)?;
            let report = check_structural(&f, ctx.trials, ctx.seed).or_else(fail)?;
            Ok(json!({
                "all_passed": report.all_passed(),
                "properties": report.results.iter().map(property_json).collect::<Vec<_>>(),
            }))
        }
        CheckWhat::Submodularity { function } => {
            let f = parse_function(&ctx.read(function)?).or_else(fail)?;
            let report = check_convexity_equivalence(&f, ctx.trials, ctx.seed).or_else(fail)?;
            Ok(json!({
                "discrete_submodular": report.discrete_submodular,
                "discrete_witness": report.discrete_witness.as_ref().map(|(a, b)| json!([
                    a.masks().iter().map(|&m| mask_to_vertices(m)).collect::<Vec<_>>(),
                    b.masks().iter().map(|&m| mask_to_vertices(m)).collect::<Vec<_>>(),
                ])),
                "midpoint_convex": report.midpoint_convex,
                "continuous_submodular": report.continuous_submodular,
                "consistent": report.consistent(),
            }))
        }
        CheckWhat::Characterization { function } => {
            let f = parse_function(&ctx.read(function)?).or_else(fail)?;
            if !matches!(f.mode(), Mode::Set | Mode::DisjointPair) {
                return Err("characterization requires a set or pair function".into());
            }
            let eval = {
                let f = f.clone();
                move |x: &[f64]| lovasz_eval(&f, x).unwrap_or(f64::NAN)
            };
            let report = check_characterization(&eval, f.mode(), f.ground(), ctx.trials, ctx.seed);
            Ok(json!({
                "conditions": report.conditions.iter().map(property_json).collect::<Vec<_>>(),
                "reconstruction_exact": report.reconstruction_exact,
                "reconstruction_witness": report.reconstruction_witness,
            }))
        }
        CheckWhat::Catalog { graph, row } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let rows: Vec<&str> = match row {
                Some(r) => vec![r.as_str()],
                None => graphinv::CATALOG_ROWS.to_vec(),
            };
            let mut rng = lovx_core::rng::seeded(ctx.seed);
            let mut out = Vec::new();
            let mut all_ok = true;
            for name in rows {
                let (discrete, closed) = graphinv::functional_catalog(name, &g).or_else(fail)?;
                let dim = discrete.mode().k() * g.n();
                let mut max_dev = 0.0f64;
                for _ in 0..ctx.trials.max(1) {
                    let x = lovx_core::rng::unit_cube_vec(&mut rng, dim);
                    let a = closed(&x);
                    let b = lovasz_eval(&discrete, &x).or_else(fail)?;
                    max_dev = max_dev.max((a - b).abs() / (1.0 + b.abs()));
                }
                let passed = max_dev <= 1e-10;
                all_ok &= passed;
                out.push(
                    json!({ "row": name, "max_relative_deviation": max_dev, "passed": passed }),
                );
            }
            Ok(json!({ "all_passed": all_ok, "rows": out }))
        }
    }
}

fn family_by_name(name: &str, f: &DiscreteFunction) -> Result<RestrictedFamily, String> {
    match name {
        "all" => Ok(RestrictedFamily::all()),
        "nonempty" => Ok(RestrictedFamily::nonempty()),
        "proper" => Ok(RestrictedFamily::proper_nonempty(f.ground())),
        other => Err(format!("unknown family `{other}` (all|nonempty|proper)")),
    }
}

/// Returns the problem plus `(scale, offset)` mapping the solved ratio r
/// to the reported value `scale * r + offset`.
fn builtin_problem(
    g: &Graph,
    objective: &str,
    x0: Vec<f64>,
) -> Result<(FractionalProblem, f64, f64), String> {
    match objective {
        "cheeger" => Ok((graphinv::cheeger_continuous_problem(g, x0), 1.0, 0.0)),
        // solved in shifted minimization form: alpha = shift - r
        "alpha" => Ok((
            graphinv::independence_continuous_problem(g, x0),
            -1.0,
            graphinv::independence_shift(g),
        )),
        other => Err(format!("unknown objective `{other}` (cheeger|alpha)")),
    }
}

/// Splits the extension of an arbitrary 1-way function into a difference
/// of convex extensions via the set-function DC decomposition.
fn dc_functionals(f: &DiscreteFunction) -> Result<(Functional, Functional), String> {
    let (f1, f2) = lovx_core::setfun::dc_decompose(f).or_else(fail)?;
    let mk = |part: DiscreteFunction| {
        let eval = part.clone();
        let grad = part;
        Functional::new(
            1.0,
            move |x: &[f64]| lovasz_eval(&eval, x).unwrap_or(f64::NAN),
            move |x: &[f64]| lovasz_subgradient(&grad, x).unwrap_or_else(|_| vec![0.0; x.len()]),
        )
    };
    Ok((mk(f1), mk(f2)))
}

fn trace_json(trace: &lovx_core::solvers::SolverTrace) -> Value {
    json!({
        "iterations": trace.iterations.iter().map(|e| json!({
            "k": e.k,
            "r": e.r,
            "x": e.x,
            "inner_status": e.inner_status,
        })).collect::<Vec<_>>(),
        "converged": trace.converged,
        "status": trace.status,
        "eigen_residual": trace.eigen_residual,
    })
}

fn cmd_solve(ctx: &mut Ctx, a: &SolveArgs) -> CmdResult {
    match &a.scheme {
        SolveScheme::Dinkelbach {
            f,
            g,
            family,
            sense,
        } => {
            let ff = parse_function(&ctx.read(f)?).or_else(fail)?;
            let gg = parse_function(&ctx.read(g)?).or_else(fail)?;
            let fam = family_by_name(family, &ff)?;
            let sense = match sense.as_str() {
                "min" => OptSense::Min,
                "max" => OptSense::Max,
                other => return Err(format!("unknown sense `{other}`")),
            };
            let solve = dinkelbach_discrete(&ff, &gg, &fam, sense).or_else(fail)?;
            Ok(json!({
                "value": solve.value,
                "argument": solve.argument.masks().iter().map(|&m| mask_to_vertices(m)).collect::<Vec<_>>(),
                "trace": solve.trace.iter().map(|(k, r, arg)| json!({
                    "k": k,
                    "r": r,
                    "argument": arg.masks().iter().map(|&m| mask_to_vertices(m)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
        }
        SolveScheme::Ipsd {
            graph,
            objective,
            f,
            g,
            variant,
            max_iter,
        } => {
            let variant = match variant.as_str() {
                "ball" => IpsdVariant::Ball,
                "normalized" => IpsdVariant::Normalized,
                other => return Err(format!("unknown variant `{other}`")),
            };
            let cfg = SolverConfig {
                seed: ctx.seed,
                tol: ctx.tol.min(1e-8),
                max_iter: *max_iter,
                ..Default::default()
            };
            let (prob, flip, offset, dim) = match (graph, f, g) {
                (Some(gpath), _, _) => {
                    let gr = parse_graph(&ctx.read(gpath)?).or_else(fail)?;
                    let n = gr.n();
                    let (prob, flip, offset) = builtin_problem(&gr, objective, vec![1.0; n])?;
                    (prob, flip, offset, n)
                }
                (None, Some(fp), Some(gp)) => {
                    let ff = parse_function(&ctx.read(fp)?).or_else(fail)?;
                    let gg = parse_function(&ctx.read(gp)?).or_else(fail)?;
                    let n = ff.n();
                    let (f1, f2) = dc_functionals(&ff)?;
                    let (g1, g2) = dc_functionals(&gg)?;
                    let prob = FractionalProblem::new(
                        f1,
                        f2,
                        g1,
                        g2,
                        Region::InftySphere(1.0),
                        vec![1.0; n],
                    );
                    (prob, 1.0, 0.0, n)
                }
                _ => return Err("ipsd needs either --graph or both --f and --g".into()),
            };
            let mut rng = lovx_core::rng::seeded(ctx.seed);
            let starts: Vec<Vec<f64>> = (0..ctx.restarts.max(1))
                .map(|_| lovx_core::rng::unit_cube_vec(&mut rng, dim))
                .collect();
            let best = mixed_ipsd_multistart(&prob, &cfg, variant, &starts).or_else(fail)?;
            Ok(json!({
                "value": flip * best.value + offset,
                "x": best.x,
                "trace": trace_json(&best.trace),
            }))
        }
        SolveScheme::Sgd {
            graph,
            objective,
            noise,
            steps,
        } => {
            let gr = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let n = gr.n();
            let mut rng = lovx_core::rng::seeded(ctx.seed);
            let x0 = lovx_core::rng::linf_sphere_vec(&mut rng, n);
            let (prob, flip, offset) = builtin_problem(&gr, objective, x0)?;
            let cfg = SolverConfig {
                seed: ctx.seed,
                max_iter: *steps,
                step_c: 0.05,
                ..Default::default()
            };
            let (best, x, trace) =
                stochastic_subgradient_ratio(&prob, &cfg, *noise).or_else(fail)?;
            Ok(json!({
                "value": flip * best + offset,
                "x": x,
                "trace": trace_json(&trace),
            }))
        }
    }
}

fn method_by_name(name: &str) -> Result<Method, String> {
    match name {
        "discrete" => Ok(Method::Discrete),
        "continuous" => Ok(Method::Continuous),
        "both" => Ok(Method::Both),
        other => Err(format!("unknown method `{other}`")),
    }
}

fn cmd_invariant(ctx: &mut Ctx, a: &InvariantArgs) -> CmdResult {
    match &a.which {
        InvariantKind::Alpha(args) => {
            let g = parse_graph(&ctx.read(&args.graph)?).or_else(fail)?;
            let method = method_by_name(&args.method)?;
            let r = graphinv::independence_number(&g, method, ctx.seed).or_else(fail)?;
            Ok(json!({
                "discrete": r.discrete,
                "optimizer": r.optimizer.map(mask_to_vertices),
                "continuous_best": r.continuous_best,
                "gap": r.gap,
            }))
        }
        InvariantKind::Gamma(args) => {
            let g = parse_graph(&ctx.read(&args.graph)?).or_else(fail)?;
            let method = method_by_name(&args.method)?;
            let r = graphinv::chromatic_number(&g, method, ctx.seed).or_else(fail)?;
            Ok(json!({
                "value": r.value,
                "coloring": r.coloring,
                "formula_at_coloring": r.formula_at_coloring,
                "continuous_estimate": r.continuous_estimate,
                "continuous_certified": false,
            }))
        }
        InvariantKind::Maxkcut { graph, k, method } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let method = method_by_name(method)?;
            let r = graphinv::max_kcut(&g, *k, method, ctx.seed).or_else(fail)?;
            Ok(json!({
                "value": r.value,
                "partition": r.partition,
                "continuous_at_indicator": r.continuous_at_indicator,
                "random_best": r.random_best,
            }))
        }
        InvariantKind::Matching(args) => {
            let g = parse_graph(&ctx.read(&args.graph)?).or_else(fail)?;
            let method = method_by_name(&args.method)?;
            let r = graphinv::matching_number(&g, method, ctx.seed).or_else(fail)?;
            Ok(json!({
                "value": r.value,
                "matching": r.matching,
                "ratio_at_indicator": r.ratio_at_indicator,
                "random_best": r.random_best,
            }))
        }
        InvariantKind::Cheeger { graph, variant, k } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let variant = match variant.as_str() {
                "classic" => CheegerVariant::Classic,
                "multiplicative" => CheegerVariant::Multiplicative,
                "ip" => CheegerVariant::IsoperimetricProfile(k.unwrap_or(1)),
                "vertex-ext" => CheegerVariant::VertexExt,
                "vertex-int" => CheegerVariant::VertexInt,
                "vertex-ver" => CheegerVariant::VertexVer,
                "dirichlet" => CheegerVariant::Dirichlet,
                "neumann" => CheegerVariant::Neumann,
                other => return Err(format!("unknown cheeger variant `{other}`")),
            };
            let r = graphinv::cheeger(&g, variant).or_else(fail)?;
            let at_indicator = r.ratio_at(&r.indicator());
            Ok(json!({
                "value": r.value,
                "optimizer": r.optimizer,
                "continuous_at_indicator": at_indicator,
                "warning": r.warning,
            }))
        }
        InvariantKind::CheegerLike { graph } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let r = graphinv::cheeger_like(&g, ctx.trials, ctx.seed).or_else(fail)?;
            Ok(json!({
                "value": r.value,
                "edge": r.edge,
                "companion_value": r.companion_value,
                "companion_edge": r.companion_edge,
                "continuous_at_indicator": r.continuous_at_indicator,
                "random_best": r.random_best,
            }))
        }
        InvariantKind::Poincare { graph } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let r = graphinv::poincare_profile_check(&g, ctx.trials.max(200), ctx.seed)
                .or_else(fail)?;
            Ok(json!({
                "h_int": r.h_int,
                "h_ext": r.h_ext,
                "h_ver": r.h_ver,
                "best_p1": r.best_p1,
                "lower": r.lower,
                "upper": r.upper,
                "holds": r.holds,
            }))
        }
        InvariantKind::VertexCover { graph, function } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let f = parse_function(&ctx.read(function)?).or_else(fail)?;
            let r = graphinv::submodular_vertex_cover(&g, &f).or_else(fail)?;
            Ok(json!({
                "exact": r.exact,
                "cover": r.cover,
                "relaxation_value": r.relaxation_value,
                "submodular_input": r.submodular_input,
            }))
        }
        InvariantKind::Multiway {
            graph,
            function,
            terminals,
        } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let f = parse_function(&ctx.read(function)?).or_else(fail)?;
            let terms: Result<Vec<usize>, _> = terminals
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect();
            let terms = terms.map_err(|e| format!("bad terminal list: {e}"))?;
            let r = graphinv::multiway_partition(&g, &f, &terms).or_else(fail)?;
            Ok(json!({
                "exact": r.exact,
                "partition": r.partition,
                "relaxation_value": r.relaxation_value,
            }))
        }
        InvariantKind::KAlpha { graph, k } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let r = graphinv::k_independence_number(&g, *k).or_else(fail)?;
            Ok(json!({
                "value": r.value,
                "optimizer": r.optimizer,
                "quadratic_at_optimizer": r.quadratic_at_optimizer,
                "extension_at_optimizer": r.extension_at_optimizer,
            }))
        }
    }
}

fn certificate_json(c: &Option<laplace1::Certificate>) -> Value {
    match c {
        None => Value::Null,
        Some(cert) => json!({
            "z": cert.z.iter().map(|&(u, v, z)| json!({ "edge": [u, v], "value": z })).collect::<Vec<_>>(),
            "c": cert.c.iter().map(|&(v, c)| json!({ "vertex": v, "value": c })).collect::<Vec<_>>(),
        }),
    }
}

fn cmd_laplace(ctx: &mut Ctx, a: &LaplaceArgs) -> CmdResult {
    match &a.which {
        LaplaceKind::VerifyDirichlet { graph, candidate } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let cand = parse_candidate(&ctx.read(candidate)?).or_else(fail)?;
            let r = laplace1::verify_dirichlet_eigenpair(&g, &cand, ctx.tol).or_else(fail)?;
            Ok(json!({
                "feasible": r.feasible,
                "certificate": certificate_json(&r.certificate),
                "exact_arithmetic": r.exact_arithmetic,
            }))
        }
        LaplaceKind::VerifyNeumann { graph, candidate } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let cand = parse_candidate(&ctx.read(candidate)?).or_else(fail)?;
            let r = laplace1::verify_neumann_eigenpair(&g, &cand, ctx.tol).or_else(fail)?;
            Ok(json!({
                "feasible": r.feasible,
                "certificate": certificate_json(&r.certificate),
                "exact_arithmetic": r.exact_arithmetic,
            }))
        }
        LaplaceKind::Rayleigh { graph, point } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let x = parse_point(point).or_else(fail)?;
            let neumann = laplace1::rayleigh_1(&g, &x).or_else(fail)?;
            let dirichlet = if g.interior().is_some() {
                Some(laplace1::dirichlet_rayleigh(&g, &x).or_else(fail)?)
            } else {
                None
            };
            Ok(json!({ "rayleigh": neumann, "dirichlet_rayleigh": dirichlet }))
        }
        LaplaceKind::Nodal { graph, point } => {
            let g = parse_graph(&ctx.read(graph)?).or_else(fail)?;
            let x = parse_point(point).or_else(fail)?;
            let (count, domains) = laplace1::nodal_domains(&g, &x).or_else(fail)?;
            Ok(json!({ "count": count, "domains": domains }))
        }
    }
}

fn parse_face_arg(face: &str) -> Result<u32, String> {
    let mut mask = 0u32;
    for tok in face.split(',') {
        let v: usize = tok
            .trim()
            .parse()
            .map_err(|e| format!("bad face vertex `{tok}`: {e}"))?;
        mask |= 1 << v;
    }
    Ok(mask)
}

fn cmd_morse(ctx: &mut Ctx, a: &MorseArgs) -> CmdResult {
    match &a.which {
        MorseKind::Validate {
            complex,
            function,
            close,
        } => {
            let k = parse_complex(&ctx.read(complex)?, *close).or_else(fail)?;
            let f = parse_face_function(&ctx.read(function)?, k.n()).or_else(fail)?;
            let v = morse::validate_discrete_morse(&k, &f).or_else(fail)?;
            Ok(json!({
                "valid": v.valid,
                "violations": v.violations.iter().map(|&(face, up, down)| json!({
                    "face": mask_to_vertices(face),
                    "up": up,
                    "down": down,
                })).collect::<Vec<_>>(),
            }))
        }
        MorseKind::Critical {
            complex,
            function,
            close,
        } => {
            let k = parse_complex(&ctx.read(complex)?, *close).or_else(fail)?;
            let f = parse_face_function(&ctx.read(function)?, k.n()).or_else(fail)?;
            let r = morse::forman_critical(&k, &f).or_else(fail)?;
            Ok(json!({
                "critical": r.critical.iter().map(|&(face, index)| json!({
                    "face": mask_to_vertices(face),
                    "index": index,
                })).collect::<Vec<_>>(),
                "morse_vector": r.morse_vector,
            }))
        }
        MorseKind::Pl {
            complex,
            function,
            face,
            close,
        } => {
            let k = parse_complex(&ctx.read(complex)?, *close).or_else(fail)?;
            let f = parse_face_function(&ctx.read(function)?, k.n()).or_else(fail)?;
            let sigma = parse_face_arg(face)?;
            let r = morse::pl_critical(&k, &f, sigma).or_else(fail)?;
            Ok(json!({
                "face": mask_to_vertices(r.face),
                "is_critical": r.is_critical,
                "indices": r.indices,
            }))
        }
        MorseKind::Euler {
            complex,
            function,
            close,
        } => {
            let k = parse_complex(&ctx.read(complex)?, *close).or_else(fail)?;
            let f = parse_face_function(&ctx.read(function)?, k.n()).or_else(fail)?;
            let r = morse::morse_euler_check(&k, &f).or_else(fail)?;
            Ok(json!({
                "alternating_sum": r.alternating_sum,
                "euler_complex": r.euler_complex,
                "euler_order_complex": r.euler_order_complex,
                "morse_vector": r.morse_vector,
                "pl_vector": r.pl_vector,
                "consistent": r.consistent,
            }))
        }
        MorseKind::Order {
            complex,
            hypergraph,
            close,
        } => {
            let oc = match (complex, hypergraph) {
                (Some(path), None) => {
                    let k = parse_complex(&ctx.read(path)?, *close).or_else(fail)?;
                    morse::order_complex(&k).or_else(fail)?
                }
                (None, Some(path)) => {
                    let h = parse_hypergraph(&ctx.read(path)?).or_else(fail)?;
                    morse::order_complex_of_hypergraph(&h).or_else(fail)?
                }
                _ => return Err("order needs exactly one of --complex or --hypergraph".into()),
            };
            Ok(json!({
                "vertices": oc.vertices.iter().map(|&m| mask_to_vertices(m)).collect::<Vec<_>>(),
                "face_counts": oc.face_counts(),
                "maximal_chains": oc.maximal_chains().len(),
                "euler_characteristic": oc.euler_characteristic(),
            }))
        }
        MorseKind::Hypergraph {
            hypergraph,
            function,
        } => {
            let h = parse_hypergraph(&ctx.read(hypergraph)?).or_else(fail)?;
            let f = parse_face_function(&ctx.read(function)?, h.n()).or_else(fail)?;
            let r = morse::hypergraph_morse(&h, &f).or_else(fail)?;
            Ok(json!({
                "valid": r.valid,
                "violations": r.violations.iter().map(|&(e, up, down)| json!({
                    "edge": mask_to_vertices(e),
                    "up": up,
                    "down": down,
                })).collect::<Vec<_>>(),
                "critical": r.critical.iter().map(|&(e, height)| json!({
                    "edge": mask_to_vertices(e),
                    "height": height,
                })).collect::<Vec<_>>(),
            }))
        }
    }
}
