//! Fractional-programming engines.
//!
//! [`dinkelbach_discrete`] alternates exact enumeration of
//! `argopt {f - r g}` with the ratio update and is globally optimal on
//! finite families. [`mixed_ipsd`] is the relaxed scheme for DC-split
//! continuous ratios `min (F1 - F2)/(G1 - G2)`: each step linearizes the
//! concave parts at the selected subgradients and solves a convex proximal
//! subproblem, either over the l-infinity ball (`Ball`) or unconstrained
//! followed by l-infinity-sphere normalization (`Normalized`). The inner
//! solve always keeps the previous iterate as a candidate, which makes the
//! ratio trace monotone by construction. Inner subproblems go through
//! [`projected_subgradient`]; there is no LP/QP dependency.

use crate::rng::{gaussian_vec, seeded, unit_cube_vec, SeededRng};
use crate::setfun::{
    for_each_arg, DiscreteFunction, OptSense, RestrictedFamily, SetArg, SetFunError,
};
use rand::Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    SetFun(#[from] SetFunError),
    #[error("feasible region {0:?} is not supported by this solver")]
    UnsupportedRegion(String),
    #[error("initial point has G(x0) = {0}, needs G > 0")]
    ZeroInitialDenominator(f64),
    #[error("declared homogeneity degree {declared} fails spot check: F(2x)/F(x) = {observed} at a random x")]
    HomogeneityMismatch { declared: f64, observed: f64 },
    #[error("configuration invalid: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;

// ---------------------------------------------------------------------------
// Functionals and problems
// ---------------------------------------------------------------------------

/// Evaluator plus subgradient oracle with a declared homogeneity degree.
#[derive(Clone)]
pub struct Functional {
    pub eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub subgrad: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
    pub degree: f64,
}

impl Functional {
    pub fn new(
        degree: f64,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        subgrad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Functional {
            eval: Arc::new(eval),
            subgrad: Arc::new(subgrad),
            degree,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Functional::new(1.0, |_| 0.0, move |_| vec![0.0; dim])
    }

    pub fn linear(w: Vec<f64>) -> Self {
        let w2 = w.clone();
        Functional::new(
            1.0,
            move |x| x.iter().zip(&w).map(|(a, b)| a * b).sum(),
            move |_| w2.clone(),
        )
    }

    /// `sum_i w_i |x_i|`.
    pub fn weighted_l1(w: Vec<f64>) -> Self {
        let w2 = w.clone();
        Functional::new(
            1.0,
            move |x| x.iter().zip(&w).map(|(a, b)| a.abs() * b).sum(),
            move |x| x.iter().zip(&w2).map(|(a, b)| b * sign0(*a)).collect(),
        )
    }

    /// Total variation `sum_{(i,j) in edges} |x_i - x_j|`.
    pub fn total_variation(edges: Vec<(usize, usize)>, dim: usize) -> Self {
        let e2 = edges.clone();
        Functional::new(
            1.0,
            move |x| edges.iter().map(|&(i, j)| (x[i] - x[j]).abs()).sum(),
            move |x| {
                let mut g = vec![0.0; dim];
                for &(i, j) in &e2 {
                    let s = sign0(x[i] - x[j]);
                    g[i] += s;
                    g[j] -= s;
                }
                g
            },
        )
    }

    /// `sum_{(i,j) in edges} |x_i + x_j|`.
    pub fn edge_sum_abs(edges: Vec<(usize, usize)>, dim: usize) -> Self {
        let e2 = edges.clone();
        Functional::new(
            1.0,
            move |x| edges.iter().map(|&(i, j)| (x[i] + x[j]).abs()).sum(),
            move |x| {
                let mut g = vec![0.0; dim];
                for &(i, j) in &e2 {
                    let s = sign0(x[i] + x[j]);
                    g[i] += s;
                    g[j] += s;
                }
                g
            },
        )
    }

    /// `c * max_i |x_i|`.
    pub fn scaled_linf(c: f64, dim: usize) -> Self {
        Functional::new(
            1.0,
            move |x| c * x.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            move |x| {
                let mut g = vec![0.0; dim];
                let mut best = 0usize;
                for i in 1..x.len() {
                    if x[i].abs() > x[best].abs() {
                        best = i;
                    }
                }
                g[best] = c * if x[best] < 0.0 { -1.0 } else { 1.0 };
                g
            },
        )
    }

    /// `min_t sum_i w_i |x_i - t|` with `w >= 0`; the subgradient selection
    /// balances to zero sum across the coordinates tied with the optimal
    /// shift, which realizes joint optimality in `t`.
    pub fn min_translate_l1(w: Vec<f64>) -> Self {
        let w2 = w.clone();
        let opt = move |x: &[f64], w: &[f64]| -> (f64, f64) {
            let mut best_t = x[0];
            let mut best = f64::INFINITY;
            for &cand in x {
                let v: f64 = x.iter().zip(w).map(|(a, b)| (a - cand).abs() * b).sum();
                if v < best {
                    best = v;
                    best_t = cand;
                }
            }
            (best, best_t)
        };
        let opt2 = opt.clone();
        Functional::new(
            1.0,
            move |x| opt(x, &w).0,
            move |x| {
                let (_, t) = opt2(x, &w2);
                let mut g: Vec<f64> = x.iter().zip(&w2).map(|(a, b)| b * sign0(a - t)).collect();
                let residual: f64 = -g.iter().sum::<f64>();
                let tied_weight: f64 = x
                    .iter()
                    .zip(&w2)
                    .filter(|(a, _)| **a == t)
                    .map(|(_, b)| *b)
                    .sum();
                if tied_weight > 0.0 {
                    let scale = (residual / tied_weight).clamp(-1.0, 1.0);
                    for (i, a) in x.iter().enumerate() {
                        if *a == t {
                            g[i] += scale * w2[i];
                        }
                    }
                }
                g
            },
        )
    }

    /// Diagonal quadratic `sum_i q_i x_i^2`.
    pub fn quadratic_diag(q: Vec<f64>) -> Self {
        let q2 = q.clone();
        Functional::new(
            2.0,
            move |x| x.iter().zip(&q).map(|(a, b)| a * a * b).sum(),
            move |x| x.iter().zip(&q2).map(|(a, b)| 2.0 * a * b).collect(),
        )
    }

    /// Dense symmetric quadratic `x' Q x`.
    pub fn quadratic(q: Vec<Vec<f64>>) -> Self {
        let q2 = q.clone();
        Functional::new(
            2.0,
            move |x| {
                let mut total = 0.0;
                for (i, row) in q.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        total += x[i] * v * x[j];
                    }
                }
                total
            },
            move |x| {
                q2.iter()
                    .map(|row| 2.0 * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
                    .collect()
            },
        )
    }

    pub fn l2_squared(dim: usize) -> Self {
        Functional::quadratic_diag(vec![1.0; dim])
    }

    /// Weighted sum of functionals with a shared homogeneity degree.
    pub fn combine(parts: Vec<(f64, Functional)>, degree: f64) -> Self {
        let parts2 = parts.clone();
        Functional::new(
            degree,
            move |x| parts.iter().map(|(c, f)| c * (f.eval)(x)).sum(),
            move |x| {
                let dim = x.len();
                let mut g = vec![0.0; dim];
                for (c, f) in &parts2 {
                    for (gi, v) in g.iter_mut().zip((f.subgrad)(x)) {
                        *gi += c * v;
                    }
                }
                g
            },
        )
    }
}

fn sign0(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Feasible regions for the continuous solvers. Sphere "projections" are
/// radial retractions; the vertex-cover and partition regions use
/// feasibility-restoring maps (monotone lift, per-column simplex
/// projection).
#[derive(Clone)]
pub enum Region {
    InftyBall(f64),
    InftySphere(f64),
    NonnegInftySphere(f64),
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    VertexCover {
        edges: Vec<(usize, usize)>,
    },
    PartitionSimplex {
        k: usize,
        n: usize,
        terminals: Vec<usize>,
    },
    ExplicitSet(Vec<Vec<f64>>),
}

impl std::fmt::Debug for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::InftyBall(r) => write!(f, "InftyBall({r})"),
            Region::InftySphere(r) => write!(f, "InftySphere({r})"),
            Region::NonnegInftySphere(r) => write!(f, "NonnegInftySphere({r})"),
            Region::Box { .. } => write!(f, "Box"),
            Region::VertexCover { .. } => write!(f, "VertexCover"),
            Region::PartitionSimplex { .. } => write!(f, "PartitionSimplex"),
            Region::ExplicitSet(v) => write!(f, "ExplicitSet({} points)", v.len()),
        }
    }
}

impl Region {
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Region::InftyBall(r) => x.iter().map(|v| v.clamp(-r, *r)).collect(),
            Region::InftySphere(r) => {
                let m = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                if m == 0.0 {
                    let mut out = vec![0.0; x.len()];
                    out[0] = *r;
                    out
                } else {
                    x.iter().map(|v| v * r / m).collect()
                }
            }
            Region::NonnegInftySphere(r) => {
                let clamped: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
                let m = clamped.iter().fold(0.0f64, |acc, v| acc.max(*v));
                if m == 0.0 {
                    let mut out = vec![0.0; x.len()];
                    out[0] = *r;
                    out
                } else {
                    clamped.iter().map(|v| v * r / m).collect()
                }
            }
            Region::Box { lo, hi } => x
                .iter()
                .enumerate()
                .map(|(i, v)| v.clamp(lo[i], hi[i]))
                .collect(),
            Region::VertexCover { edges } => {
                let mut y: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
                for &(i, j) in edges {
                    let deficit = 1.0 - y[i] - y[j];
                    if deficit > 0.0 {
                        y[i] += deficit / 2.0;
                        y[j] += deficit / 2.0;
                    }
                }
                y
            }
            Region::PartitionSimplex { k, n, terminals } => {
                let mut y = vec![0.0; k * n];
                for v in 0..*n {
                    if let Some(owner) = terminals.iter().position(|&t| t == v) {
                        y[owner * n + v] = 1.0;
                        continue;
                    }
                    let col: Vec<f64> = (0..*k).map(|i| x[i * n + v]).collect();
                    let proj = project_simplex(&col);
                    for i in 0..*k {
                        y[i * n + v] = proj[i];
                    }
                }
                y
            }
            Region::ExplicitSet(points) => {
                let mut best = 0usize;
                let mut best_d = f64::INFINITY;
                for (idx, p) in points.iter().enumerate() {
                    let d: f64 = p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
                    if d < best_d {
                        best_d = d;
                        best = idx;
                    }
                }
                points[best].clone()
            }
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self {
            Region::InftyBall(r) => x.iter().all(|v| v.abs() <= r + tol),
            Region::InftySphere(r) => {
                (x.iter().fold(0.0f64, |m, v| m.max(v.abs())) - r).abs() <= tol
            }
            Region::NonnegInftySphere(r) => {
                x.iter().all(|v| *v >= -tol)
                    && (x.iter().fold(0.0f64, |m, v| m.max(*v)) - r).abs() <= tol
            }
            Region::Box { lo, hi } => x
                .iter()
                .enumerate()
                .all(|(i, v)| *v >= lo[i] - tol && *v <= hi[i] + tol),
            Region::VertexCover { edges } => {
                x.iter().all(|v| *v >= -tol) && edges.iter().all(|&(i, j)| x[i] + x[j] >= 1.0 - tol)
            }
            Region::PartitionSimplex { k, n, terminals } => {
                for v in 0..*n {
                    let sum: f64 = (0..*k).map(|i| x[i * n + v]).sum();
                    if (sum - 1.0).abs() > tol {
                        return false;
                    }
                }
                x.iter().all(|v| *v >= -tol)
                    && terminals
                        .iter()
                        .enumerate()
                        .all(|(i, &t)| (x[i * n + t] - 1.0).abs() <= tol)
            }
            Region::ExplicitSet(points) => points
                .iter()
                .any(|p| p.iter().zip(x).all(|(a, b)| (a - b).abs() <= tol)),
        }
    }
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (i as f64 + 1.0);
        if u - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|u| (u - theta).max(0.0)).collect()
}

/// DC-split fractional problem `opt (F1 - F2)/(G1 - G2)` with a feasible
/// region and an optional generator of extra candidate points (e.g.
/// threshold indicators of the current iterate) whose ratios the solvers
/// fold into the reported best value.
#[derive(Clone)]
pub struct FractionalProblem {
    pub f1: Functional,
    pub f2: Functional,
    pub g1: Functional,
    pub g2: Functional,
    pub region: Region,
    pub x0: Vec<f64>,
    pub candidates: Option<Arc<dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync>>,
}

impl FractionalProblem {
    pub fn new(
        f1: Functional,
        f2: Functional,
        g1: Functional,
        g2: Functional,
        region: Region,
        x0: Vec<f64>,
    ) -> Self {
        FractionalProblem {
            f1,
            f2,
            g1,
            g2,
            region,
            x0,
            candidates: None,
        }
    }

    pub fn with_candidates(
        mut self,
        gen: impl Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync + 'static,
    ) -> Self {
        self.candidates = Some(Arc::new(gen));
        self
    }

    pub fn numerator(&self, x: &[f64]) -> f64 {
        (self.f1.eval)(x) - (self.f2.eval)(x)
    }

    pub fn denominator(&self, x: &[f64]) -> f64 {
        (self.g1.eval)(x) - (self.g2.eval)(x)
    }

    pub fn ratio(&self, x: &[f64]) -> f64 {
        self.numerator(x) / self.denominator(x)
    }

    /// Spot-checks every declared homogeneity degree at random points.
    pub fn validate(&self, seed: u64) -> Result<()> {
        let mut rng = seeded(seed);
        for part in [&self.f1, &self.f2, &self.g1, &self.g2] {
            for _ in 0..10 {
                let x = unit_cube_vec(&mut rng, self.x0.len());
                let base = (part.eval)(&x);
                if base.abs() < 1e-9 {
                    continue;
                }
                let scaled = (part.eval)(&x.iter().map(|v| 2.0 * v).collect::<Vec<_>>());
                let observed = (scaled / base).log2();
                if (observed - part.degree).abs() > 1e-6 {
                    return Err(SolverError::HomogeneityMismatch {
                        declared: part.degree,
                        observed,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iter: usize,
    /// Stop when `|r_{k+1} - r_k| <= tol * (1 + |r_k|)`.
    pub tol: f64,
    pub inner_restarts: usize,
    pub inner_steps: usize,
    /// Diminishing step rule `c / sqrt(t)`.
    pub step_c: f64,
    pub seed: u64,
    /// Proximal weight lambda in `H_x(y) = lambda * |y - x|^2`; lambda = 0
    /// realizes a constant proximal family.
    pub proximal_weight: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iter: 100,
            tol: 1e-10,
            inner_restarts: 3,
            inner_steps: 400,
            step_c: 0.25,
            seed: 42,
            proximal_weight: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub k: usize,
    pub r: f64,
    pub x: Vec<f64>,
    pub inner_status: String,
}

#[derive(Debug, Clone)]
pub struct SolverTrace {
    pub iterations: Vec<TraceEntry>,
    pub converged: bool,
    pub status: String,
    pub eigen_residual: Option<f64>,
}

impl SolverTrace {
    /// Largest increase along a minimization trace (0 when monotone).
    pub fn worst_monotonicity_violation(&self) -> f64 {
        self.iterations
            .windows(2)
            .map(|w| w[1].r - w[0].r)
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Dinkelbach on finite families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DiscreteSolve {
    pub value: f64,
    pub argument: SetArg,
    pub trace: Vec<(usize, f64, SetArg)>,
}

/// Dinkelbach iteration with the inner `argopt {f - r g}` solved exactly by
/// enumeration over `family ∩ supp(g)`. Ties inside the inner problem break
/// toward the smaller ratio, then the lexicographically smaller argument,
/// so the returned optimum matches [`crate::setfun::enumerate_ratio_optimum`]
/// bit for bit.
pub fn dinkelbach_discrete(
    f: &DiscreteFunction,
    g: &DiscreteFunction,
    family: &RestrictedFamily,
    sense: OptSense,
) -> Result<DiscreteSolve> {
    let mut feasible: Vec<(SetArg, f64, f64)> = Vec::new();
    let mut bad: Option<SetFunError> = None;
    for_each_arg(f.ground(), f.mode(), |arg| {
        if bad.is_some() || !family.contains(arg) {
            return;
        }
        let gv = g.value_unchecked(arg);
        if gv < 0.0 {
            bad = Some(SetFunError::NegativeDenominator {
                arg: arg.clone(),
                value: gv,
            });
        } else if gv > 0.0 {
            feasible.push((arg.clone(), f.value_unchecked(arg), gv));
        }
    });
    if let Some(err) = bad {
        return Err(err.into());
    }
    if feasible.is_empty() {
        return Err(SetFunError::EmptyFeasible.into());
    }
    let flip = match sense {
        OptSense::Min => 1.0,
        OptSense::Max => -1.0,
    };

    let (arg0, f0, g0) = feasible[0].clone();
    let mut r = flip * f0 / g0;
    let mut current = arg0;
    let mut trace = vec![(0usize, flip * r, current.clone())];
    for k in 1..=200 {
        // inner: exact argmin of flip*f - r*g, ties by ratio then order
        let mut best_idx = 0usize;
        let mut best_val = f64::INFINITY;
        let mut best_ratio = f64::INFINITY;
        for (idx, (_, fv, gv)) in feasible.iter().enumerate() {
            let val = flip * fv - r * gv;
            let ratio = flip * fv / gv;
            if val < best_val || (val == best_val && ratio < best_ratio) {
                best_val = val;
                best_ratio = ratio;
                best_idx = idx;
            }
        }
        let (arg, fv, gv) = feasible[best_idx].clone();
        let r_new = flip * fv / gv;
        if r_new >= r {
            break;
        }
        r = r_new;
        current = arg;
        trace.push((k, flip * r, current.clone()));
    }
    Ok(DiscreteSolve {
        value: flip * r,
        argument: current,
        trace,
    })
}

// ---------------------------------------------------------------------------
// Projected subgradient
// ---------------------------------------------------------------------------

/// Minimizes `objective` over `region` by projected subgradient descent
/// with diminishing steps and multi-start; returns the best visited point.
/// Deterministic given the seed. `extra_starts` join the seeded random
/// starts (all are projected onto the region first).
pub fn projected_subgradient(
    objective: &Functional,
    region: &Region,
    cfg: &SolverConfig,
    extra_starts: &[Vec<f64>],
    dim: usize,
) -> (f64, Vec<f64>) {
    let mut rng = seeded(cfg.seed);
    let mut starts: Vec<Vec<f64>> = extra_starts.iter().map(|s| region.project(s)).collect();
    for _ in 0..cfg.inner_restarts.max(1) {
        starts.push(region.project(&unit_cube_vec(&mut rng, dim)));
    }
    let mut best_val = f64::INFINITY;
    let mut best_x = starts[0].clone();
    for start in starts {
        let (v, x) = descend(objective, region, cfg, start);
        if v < best_val {
            best_val = v;
            best_x = x;
        }
    }
    (best_val, best_x)
}

fn descend(
    objective: &Functional,
    region: &Region,
    cfg: &SolverConfig,
    start: Vec<f64>,
) -> (f64, Vec<f64>) {
    let mut x = start;
    let mut best_val = (objective.eval)(&x);
    let mut best_x = x.clone();
    for t in 1..=cfg.inner_steps.max(1) {
        let g = (objective.subgrad)(&x);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            break;
        }
        let step = cfg.step_c / (t as f64).sqrt() / gnorm.max(1e-12);
        let moved: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - step * b).collect();
        x = region.project(&moved);
        let v = (objective.eval)(&x);
        if v < best_val {
            best_val = v;
            best_x = x.clone();
        }
    }
    (best_val, best_x)
}

// ---------------------------------------------------------------------------
// Mixed inverse-power / steepest-descent scheme
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpsdVariant {
    /// Convex proximal subproblem over the l-infinity ball.
    Ball,
    /// Unconstrained subproblem followed by l-infinity sphere normalization.
    Normalized,
}

#[derive(Debug, Clone)]
pub struct IpsdResult {
    /// Best ratio seen: the final iterate's ratio or a candidate ratio when
    /// the optional threshold candidates improve on it.
    pub value: f64,
    pub x: Vec<f64>,
    pub trace: SolverTrace,
}

/// One run of the mixed IP-SD scheme from `prob.x0`.
pub fn mixed_ipsd(
    prob: &FractionalProblem,
    cfg: &SolverConfig,
    variant: IpsdVariant,
) -> Result<IpsdResult> {
    prob.validate(cfg.seed)?;
    if variant == IpsdVariant::Normalized && cfg.proximal_weight <= 0.0 {
        return Err(SolverError::InvalidConfig(
            "normalized variant needs a positive proximal weight".into(),
        ));
    }
    let dim = prob.x0.len();
    let ball = Region::InftyBall(1.0);
    let sphere = Region::InftySphere(1.0);
    let mut x = match variant {
        IpsdVariant::Ball => ball.project(&prob.x0),
        IpsdVariant::Normalized => sphere.project(&prob.x0),
    };
    let g_at = |x: &[f64]| prob.denominator(x);
    let f_at = |x: &[f64]| prob.numerator(x);
    if g_at(&x) <= 0.0 {
        return Err(SolverError::ZeroInitialDenominator(g_at(&x)));
    }
    let mut r = f_at(&x) / g_at(&x);
    let mut u = (prob.f2.subgrad)(&x);
    let mut v = (prob.g1.subgrad)(&x);

    let mut best_val = r;
    let mut best_x = x.clone();
    let consider_candidates = |x: &[f64], best_val: &mut f64, best_x: &mut Vec<f64>| {
        if let Some(gen) = &prob.candidates {
            for cand in gen(x) {
                let g = g_at(&cand);
                if g > 1e-12 {
                    let ratio = f_at(&cand) / g;
                    if ratio < *best_val {
                        *best_val = ratio;
                        *best_x = cand;
                    }
                }
            }
        }
    };
    consider_candidates(&x, &mut best_val, &mut best_x);

    let mut trace = SolverTrace {
        iterations: vec![TraceEntry {
            k: 0,
            r,
            x: x.clone(),
            inner_status: "start".into(),
        }],
        converged: false,
        status: "running".into(),
        eigen_residual: None,
    };

    for k in 1..=cfg.max_iter {
        let lambda = cfg.proximal_weight;
        let (f1, g2) = (prob.f1.clone(), prob.g2.clone());
        let (u_k, v_k, r_k, x_k) = (u.clone(), v.clone(), r, x.clone());
        let inner = Functional::new(
            1.0,
            move |y: &[f64]| {
                let linear: f64 = y
                    .iter()
                    .enumerate()
                    .map(|(i, yi)| (u_k[i] + r_k * v_k[i]) * yi)
                    .sum();
                let prox: f64 = y
                    .iter()
                    .zip(&x_k)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    * lambda;
                (f1.eval)(y) + r_k * (g2.eval)(y) - linear + prox
            },
            {
                let (f1, g2) = (prob.f1.clone(), prob.g2.clone());
                let (u_k, v_k, x_k) = (u.clone(), v.clone(), x.clone());
                let r_k = r;
                move |y: &[f64]| {
                    let mut g = (f1.subgrad)(y);
                    let gg = (g2.subgrad)(y);
                    for i in 0..g.len() {
                        g[i] +=
                            r_k * gg[i] - (u_k[i] + r_k * v_k[i]) + 2.0 * lambda * (y[i] - x_k[i]);
                    }
                    g
                }
            },
        );
        let inner_region = match variant {
            IpsdVariant::Ball => ball.clone(),
            // coercive because lambda > 0; a generous box stands in for R^n
            IpsdVariant::Normalized => Region::Box {
                lo: vec![-1e6; dim],
                hi: vec![1e6; dim],
            },
        };
        let mut inner_cfg = cfg.clone();
        inner_cfg.seed = cfg.seed.wrapping_add(k as u64);
        let (_, mut y) =
            projected_subgradient(&inner, &inner_region, &inner_cfg, &[x.clone()], dim);
        // keep the previous iterate when the inner solve failed to beat it;
        // this is what makes the ratio trace monotone
        let inner_status = if (inner.eval)(&y) <= (inner.eval)(&x) {
            "improved"
        } else {
            y = x.clone();
            "kept-previous"
        };

        let g_y = g_at(&y);
        if g_y.abs() <= 1e-12 * (1.0 + f_at(&y).abs()) {
            trace.status = "terminated-at-zero-denominator".into();
            trace.iterations.push(TraceEntry {
                k,
                r,
                x: y,
                inner_status: inner_status.into(),
            });
            break;
        }
        let r_new = f_at(&y) / g_y;
        x = match variant {
            IpsdVariant::Ball => y,
            IpsdVariant::Normalized => sphere.project(&y),
        };
        u = (prob.f2.subgrad)(&x);
        v = (prob.g1.subgrad)(&x);
        let delta = (r_new - r).abs();
        r = r_new;
        trace.iterations.push(TraceEntry {
            k,
            r,
            x: x.clone(),
            inner_status: inner_status.into(),
        });
        if r < best_val {
            best_val = r;
            best_x = x.clone();
        }
        consider_candidates(&x, &mut best_val, &mut best_x);
        if delta <= cfg.tol * (1.0 + r.abs()) {
            trace.converged = true;
            trace.status = "converged".into();
            break;
        }
    }
    if !trace.converged && trace.status == "running" {
        trace.status = "max-iterations".into();
    }

    // eigen-residual via the selected subgradients at the final iterate
    let gf1 = (prob.f1.subgrad)(&x);
    let gg2 = (prob.g2.subgrad)(&x);
    let u_star = (prob.f2.subgrad)(&x);
    let v_star = (prob.g1.subgrad)(&x);
    let residual = (0..dim)
        .map(|i| (gf1[i] + r * gg2[i] - u_star[i] - r * v_star[i]).abs())
        .fold(0.0, f64::max);
    trace.eigen_residual = Some(residual);

    Ok(IpsdResult {
        value: best_val,
        x: best_x,
        trace,
    })
}

/// Runs [`mixed_ipsd`] from each start and merges by best value, then
/// lowest start index, which keeps the merge order reproducible.
pub fn mixed_ipsd_multistart(
    prob: &FractionalProblem,
    cfg: &SolverConfig,
    variant: IpsdVariant,
    starts: &[Vec<f64>],
) -> Result<IpsdResult> {
    let mut best: Option<IpsdResult> = None;
    for (idx, start) in starts.iter().enumerate() {
        let mut p = prob.clone();
        p.x0 = start.clone();
        let mut c = cfg.clone();
        c.seed = cfg.seed.wrapping_add(idx as u64 * 7919);
        if p.denominator(&p.region.project(start)) <= 0.0 {
            continue;
        }
        let run = mixed_ipsd(&p, &c, variant)?;
        if best.as_ref().map_or(true, |b| run.value < b.value) {
            best = Some(run);
        }
    }
    best.ok_or_else(|| SolverError::ZeroInitialDenominator(0.0))
}

// ---------------------------------------------------------------------------
// Stochastic subgradient on the ratio
// ---------------------------------------------------------------------------

/// `x_{k+1} = x_k - a_k (y_k + xi_k)` with `y_k` a quotient-rule selection
/// from the Clarke subdifferential of `F/G` and Gaussian noise `xi`.
/// Requires a zero-homogeneous ratio; the iterate renormalizes to the
/// l-infinity sphere whenever the denominator underflows. Returns the best
/// ratio along the trajectory.
pub fn stochastic_subgradient_ratio(
    prob: &FractionalProblem,
    cfg: &SolverConfig,
    noise_scale: f64,
) -> Result<(f64, Vec<f64>, SolverTrace)> {
    prob.validate(cfg.seed)?;
    let deg_f = prob.f1.degree;
    let deg_g = prob.g1.degree;
    if (deg_f - deg_g).abs() > 1e-9 {
        return Err(SolverError::InvalidConfig(format!(
            "ratio must be zero-homogeneous, got degrees {deg_f} / {deg_g}"
        )));
    }
    let dim = prob.x0.len();
    let mut rng: SeededRng = seeded(cfg.seed);
    let mut x = prob.x0.clone();
    if prob.denominator(&x) <= 0.0 {
        return Err(SolverError::ZeroInitialDenominator(prob.denominator(&x)));
    }
    let mut best = prob.ratio(&x);
    let mut best_x = x.clone();
    let mut trace = SolverTrace {
        iterations: Vec::new(),
        converged: false,
        status: "completed".into(),
        eigen_residual: None,
    };
    let record_every = (cfg.max_iter / 50).max(1);
    for k in 1..=cfg.max_iter {
        let g_val = prob.denominator(&x);
        if g_val.abs() < 1e-12 {
            let sphere = Region::InftySphere(1.0);
            x = sphere.project(&x);
        }
        let g_val = prob.denominator(&x);
        let f_val = prob.numerator(&x);
        let gf: Vec<f64> = {
            let a = (prob.f1.subgrad)(&x);
            let b = (prob.f2.subgrad)(&x);
            a.iter().zip(&b).map(|(p, q)| p - q).collect()
        };
        let gg: Vec<f64> = {
            let a = (prob.g1.subgrad)(&x);
            let b = (prob.g2.subgrad)(&x);
            a.iter().zip(&b).map(|(p, q)| p - q).collect()
        };
        let quotient: Vec<f64> = (0..dim)
            .map(|i| (gf[i] * g_val - f_val * gg[i]) / (g_val * g_val))
            .collect();
        let noise = gaussian_vec(&mut rng, dim, noise_scale);
        let alpha = cfg.step_c / (k as f64).sqrt();
        for i in 0..dim {
            x[i] -= alpha * (quotient[i] + noise[i]);
        }
        let g_new = prob.denominator(&x);
        if g_new > 1e-12 {
            let ratio = prob.numerator(&x) / g_new;
            if ratio < best {
                best = ratio;
                best_x = x.clone();
            }
            if k % record_every == 0 {
                trace.iterations.push(TraceEntry {
                    k,
                    r: ratio,
                    x: Vec::new(),
                    inner_status: String::new(),
                });
            }
        } else {
            let sphere = Region::InftySphere(1.0);
            x = sphere.project(&x);
            let _ = rng.gen::<f64>(); // keep the stream aligned after a reset
        }
    }
    Ok((best, best_x, trace))
}
