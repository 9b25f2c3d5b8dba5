//! Finite simple graphs, the catalog of set functions with closed-form
//! extensions, and the graph invariants that admit equivalent continuous
//! fractional representations.
//!
//! Every invariant here computes an exact discrete value by enumeration at
//! desk scale and exposes the matching continuous objective. The central
//! consistency facts, exercised by the tests and the acceptance suite:
//! the closed forms agree with [`crate::lovasz::lovasz_eval`] everywhere,
//! and each continuous objective evaluated at the discrete optimizer's
//! indicator reproduces the discrete optimum exactly while random feasible
//! points never beat it.

use crate::lovasz::{lovasz_eval, lovasz_subgradient};
use crate::rng::{seeded, unit_cube_vec, SeededRng};
use crate::setfun::{DiscreteFunction, GroundSet, SetArg};
use crate::solvers::{
    mixed_ipsd_multistart, projected_subgradient, FractionalProblem, Functional, IpsdVariant,
    Region, SolverConfig,
};
use crate::submod::is_submodular;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex index {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop edge ({0},{0}) not allowed")]
    LoopEdge(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("unknown catalog row `{0}`")]
    UnknownCatalogRow(String),
    #[error("graph has no boundary partition")]
    NoBoundary,
    #[error("k = {0} exceeds vertex count {1}")]
    KTooLarge(usize, usize),
    #[error("k must be at least {0}")]
    KTooSmall(usize),
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(usize),
    #[error("graph too large for this computation: n = {0} > {1}")]
    TooLarge(usize, usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("no feasible subset for this Cheeger variant")]
    NoFeasibleSubset,
    #[error("graph must be connected")]
    Disconnected,
    #[error(transparent)]
    SetFun(#[from] crate::setfun::SetFunError),
    #[error(transparent)]
    Lovasz(#[from] crate::lovasz::LovaszError),
    #[error(transparent)]
    Solver(#[from] crate::solvers::SolverError),
    #[error(transparent)]
    Submod(#[from] crate::submod::SubmodError),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Finite undirected simple graph with an optional boundary partition
/// (an interior set `A`; the boundary is the set of outside vertices
/// adjacent to `A`, always derived from adjacency).
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    interior: Option<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n > 30 {
            return Err(GraphError::TooLarge(n, 30));
        }
        let mut seen = std::collections::HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            norm.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        norm.sort_unstable();
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
            interior: None,
        })
    }

    pub fn with_interior(mut self, interior: Vec<usize>) -> Result<Self> {
        for &v in &interior {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
        }
        let mut sorted = interior;
        sorted.sort_unstable();
        sorted.dedup();
        self.interior = Some(sorted);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|l| l.len()).collect()
    }

    pub fn interior(&self) -> Option<&[usize]> {
        self.interior.as_deref()
    }

    // -- constructors ------------------------------------------------------

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::new(n, e).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::new(n, e).unwrap()
    }

    /// Star with `leaves` leaves; the hub is vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..a {
            for j in 0..b {
                e.push((i, a + j));
            }
        }
        Graph::new(a + b, e).unwrap()
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n, Vec::new()).unwrap()
    }

    /// Hub 0 joined to a cycle on 1..=m.
    pub fn wheel(m: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (1..=m).map(|i| (0, i)).collect();
        for i in 1..m {
            e.push((i, i + 1));
        }
        e.push((m, 1));
        Graph::new(m + 1, e).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, e).unwrap()
    }

    pub fn cube3() -> Graph {
        let mut e = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        Graph::new(8, e).unwrap()
    }

    pub fn diamond() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn bull() -> Graph {
        Graph::new(5, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]).unwrap()
    }

    // -- mask utilities ----------------------------------------------------

    pub fn universe(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Edges with both endpoints in `mask`.
    pub fn edges_within(&self, mask: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .count()
    }

    /// Edges with exactly one endpoint in `mask`.
    pub fn cut_size(&self, mask: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
            .count()
    }

    pub fn vol(&self, mask: u32) -> usize {
        (0..self.n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| self.adj[v].len())
            .sum()
    }

    /// Vertices of `V \ A` adjacent to `A`.
    pub fn external_boundary(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        for &(a, b) in &self.edges {
            if mask >> a & 1 == 1 && mask >> b & 1 == 0 {
                out |= 1 << b;
            }
            if mask >> b & 1 == 1 && mask >> a & 1 == 0 {
                out |= 1 << a;
            }
        }
        out
    }

    /// Vertices of `A` adjacent to the complement.
    pub fn internal_boundary(&self, mask: u32) -> u32 {
        self.external_boundary(self.universe() & !mask)
    }

    pub fn is_vertex_cover(&self, mask: u32) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All-pairs shortest-path distances by BFS; `usize::MAX` when
    /// unreachable.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![usize::MAX; self.n]; self.n];
        for s in 0..self.n {
            let mut queue = std::collections::VecDeque::new();
            out[s][s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if out[s][w] == usize::MAX {
                        out[s][w] = out[s][v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        out
    }

    /// Graph with edges between vertices at distance `<= k`.
    pub fn power_graph(&self, k: usize) -> Graph {
        let dist = self.distances();
        let mut e = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if dist[i][j] <= k {
                    e.push((i, j));
                }
            }
        }
        Graph::new(self.n, e).unwrap()
    }

    pub fn complement(&self) -> Graph {
        let mut e = Vec::new();
        let present: std::collections::HashSet<(usize, usize)> =
            self.edges.iter().copied().collect();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !present.contains(&(i, j)) {
                    e.push((i, j));
                }
            }
        }
        Graph::new(self.n, e).unwrap()
    }

    // -- set-function builders ----------------------------------------------

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n).unwrap()
    }

    /// `f(A) = #E(A, V \ A)`.
    pub fn cut_function(&self) -> DiscreteFunction {
        DiscreteFunction::from_set_fn(self.ground(), |m| self.cut_size(m) as f64)
    }

    /// `f(A, B) = #E(A, B)`.
    pub fn pair_cross_edge_function(&self) -> DiscreteFunction {
        DiscreteFunction::from_pair_fn(self.ground(), |a, b| {
            self.edges
                .iter()
                .filter(|&&(u, v)| {
                    (a >> u & 1 == 1 && b >> v & 1 == 1) || (a >> v & 1 == 1 && b >> u & 1 == 1)
                })
                .count() as f64
        })
    }
}

/// Derived boundary data for a graph with an interior set: the boundary
/// vertices, the closure, and per-interior-vertex counts `p_i` (neighbors
/// in the boundary) and `d_i` (degree).
#[derive(Debug, Clone)]
pub struct BoundaryGraph {
    pub interior: Vec<usize>,
    pub delta: Vec<usize>,
    pub closure: Vec<usize>,
    pub p: Vec<usize>,
    pub d: Vec<usize>,
}

impl Graph {
    pub fn boundary(&self) -> Result<BoundaryGraph> {
        let interior = self.interior.clone().ok_or(GraphError::NoBoundary)?;
        let in_a = |v: usize| interior.binary_search(&v).is_ok();
        let mut delta: Vec<usize> = (0..self.n)
            .filter(|&v| !in_a(v) && self.adj[v].iter().any(|&w| in_a(w)))
            .collect();
        delta.sort_unstable();
        let mut closure: Vec<usize> = interior.iter().chain(delta.iter()).copied().collect();
        closure.sort_unstable();
        let p = interior
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| delta.binary_search(&w).is_ok())
                    .count()
            })
            .collect();
        let d = interior.iter().map(|&v| self.adj[v].len()).collect();
        Ok(BoundaryGraph {
            interior,
            delta,
            closure,
            p,
            d,
        })
    }
}

// ---------------------------------------------------------------------------
// The closed-form catalog
// ---------------------------------------------------------------------------

pub const CATALOG_ROWS: [&str; 14] = [
    "t1-cut",
    "t1-const",
    "t1-vol",
    "t1-minvol",
    "t1-cardprod",
    "t1-cutverts",
    "t2-cutsum",
    "t2-cross",
    "t2-const",
    "t2-volsum",
    "t2-minvolsum",
    "t2-unionedges",
    "t2-unioncard-edges",
    "t2-unioncomp",
];

pub type ClosedForm = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

fn min_translate_weighted(x: &[f64], w: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for &t in x {
        let v: f64 = x.iter().zip(w).map(|(a, b)| (a - t).abs() * b).sum();
        best = best.min(v);
    }
    best
}

/// One catalog row instantiated on a graph: the discrete function and the
/// closed form of its extension. `closed_form(x) = lovasz_eval(discrete, x)`
/// for all `x` is the module's central invariant.
pub fn functional_catalog(name: &str, g: &Graph) -> Result<(DiscreteFunction, ClosedForm)> {
    let ground = g.ground();
    let n = g.n;
    let degrees: Vec<f64> = g.degrees().iter().map(|&d| d as f64).collect();
    let edges = g.edges.clone();
    let gg = g.clone();
    Ok(match name {
        "t1-cut" => (
            g.cut_function(),
            Box::new(move |x| edges.iter().map(|&(i, j)| (x[i] - x[j]).abs()).sum()),
        ),
        "t1-const" => (
            DiscreteFunction::from_set_fn(ground, |_| 1.0),
            Box::new(move |x| x.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        ),
        "t1-vol" => (
            DiscreteFunction::from_set_fn(ground, |m| gg.vol(m) as f64),
            Box::new(move |x| x.iter().zip(&degrees).map(|(a, b)| a * b).sum()),
        ),
        "t1-minvol" => (
            DiscreteFunction::from_set_fn(ground, |m| {
                gg.vol(m).min(gg.vol(gg.universe() & !m)) as f64
            }),
            Box::new(move |x| min_translate_weighted(x, &degrees)),
        ),
        "t1-cardprod" => (
            DiscreteFunction::from_set_fn(ground, |m| {
                let a = m.count_ones() as f64;
                a * (n as f64 - a)
            }),
            Box::new(move |x| {
                let mut t = 0.0;
                for i in 0..x.len() {
                    for j in i + 1..x.len() {
                        t += (x[i] - x[j]).abs();
                    }
                }
                t
            }),
        ),
        "t1-cutverts" => (
            DiscreteFunction::from_set_fn(ground, |m| {
                (gg.external_boundary(m) | gg.internal_boundary(m)).count_ones() as f64
            }),
            Box::new(move |x| {
                (0..n)
                    .map(|i| {
                        let mut hi = x[i];
                        let mut lo = x[i];
                        for &j in gg.adj(i) {
                            hi = hi.max(x[j]);
                            lo = lo.min(x[j]);
                        }
                        hi - lo
                    })
                    .sum()
            }),
        ),
        "t2-cutsum" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| (gg.cut_size(a) + gg.cut_size(b)) as f64),
            Box::new(move |x| edges.iter().map(|&(i, j)| (x[i] - x[j]).abs()).sum()),
        ),
        "t2-cross" => (
            g.pair_cross_edge_function(),
            Box::new(move |x| {
                let vols: f64 = x.iter().zip(&degrees).map(|(a, b)| a.abs() * b).sum();
                let plus: f64 = edges.iter().map(|&(i, j)| (x[i] + x[j]).abs()).sum();
                (vols - plus) / 2.0
            }),
        ),
        "t2-const" => (
            DiscreteFunction::from_pair_fn(ground, |_, _| 1.0),
            Box::new(move |x| x.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        ),
        "t2-volsum" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| (gg.vol(a) + gg.vol(b)) as f64),
            Box::new(move |x| x.iter().zip(&degrees).map(|(a, b)| a.abs() * b).sum()),
        ),
        "t2-minvolsum" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| {
                let u = gg.universe();
                (gg.vol(a).min(gg.vol(u & !a)) + gg.vol(b).min(gg.vol(u & !b))) as f64
            }),
            Box::new(move |x| {
                let xp: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
                let xm: Vec<f64> = x.iter().map(|v| (-v).max(0.0)).collect();
                min_translate_weighted(&xp, &degrees) + min_translate_weighted(&xm, &degrees)
            }),
        ),
        "t2-unionedges" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| gg.edges_within(a | b) as f64),
            Box::new(move |x| edges.iter().map(|&(i, j)| x[i].abs().min(x[j].abs())).sum()),
        ),
        "t2-unioncard-edges" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| {
                ((a | b).count_ones() as usize * gg.edges_within(a | b)) as f64
            }),
            Box::new(move |x| {
                let mut t = 0.0;
                for &(i, j) in &edges {
                    let e_min = x[i].abs().min(x[j].abs());
                    for xk in x {
                        t += e_min.min(xk.abs());
                    }
                }
                t
            }),
        ),
        "t2-unioncomp" => (
            DiscreteFunction::from_pair_fn(ground, |a, b| {
                let u = (a | b).count_ones() as f64;
                u * (n as f64 - u)
            }),
            Box::new(move |x| {
                let mut t = 0.0;
                for i in 0..x.len() {
                    for j in 0..i {
                        t += (x[i].abs() - x[j].abs()).abs();
                    }
                }
                t
            }),
        ),
        other => return Err(GraphError::UnknownCatalogRow(other.to_string())),
    })
}

// ---------------------------------------------------------------------------
// Continuous problems and candidate generators
// ---------------------------------------------------------------------------

/// Indicator vectors of the threshold sets of `x` and of `|x|`; the cheap
/// optimal-thresholding candidates the IP-SD solver folds into its
/// reported best value.
pub fn threshold_indicator_candidates(g: &Graph, x: &[f64]) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut levels: Vec<f64> = x.iter().copied().chain(x.iter().map(|v| v.abs())).collect();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    for &t in &levels {
        let above: Vec<f64> = (0..n).map(|i| if x[i] >= t { 1.0 } else { 0.0 }).collect();
        let abs_above: Vec<f64> = (0..n)
            .map(|i| if x[i].abs() >= t.abs() { 1.0 } else { 0.0 })
            .collect();
        out.push(above);
        out.push(abs_above);
    }
    out
}

/// Classic vertex-counting Cheeger problem `min TV(x) / min_t |x - t1|_1`
/// with threshold candidates wired in.
pub fn cheeger_continuous_problem(g: &Graph, x0: Vec<f64>) -> FractionalProblem {
    let n = g.n();
    let f1 = Functional::total_variation(g.edges().to_vec(), n);
    let g1 = Functional::min_translate_l1(vec![1.0; n]);
    let gc = g.clone();
    FractionalProblem::new(
        f1,
        Functional::zero(n),
        g1,
        Functional::zero(n),
        Region::InftySphere(1.0),
        x0,
    )
    .with_candidates(move |x| threshold_indicator_candidates(&gc, x))
}

/// Shift constant for [`independence_continuous_problem`].
pub fn independence_shift(g: &Graph) -> f64 {
    g.edges().len() as f64
}

/// Independence-number problem in shifted minimization form: the solved
/// ratio is `shift - alpha` at the optimum, where `shift = #E`. The shift
/// keeps the numerator nonnegative (the edge terms are bounded by
/// `2 #E |x|_inf`), which the descent scheme's monotonicity argument
/// requires; for graphs without isolated vertices `#E >= alpha`, so the
/// optimal ratio stays nonnegative too. Requires minimum degree >= 1.
pub fn independence_continuous_problem(g: &Graph, x0: Vec<f64>) -> FractionalProblem {
    let n = g.n();
    let shift = independence_shift(g);
    let degp: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| 2.0 * (d as f64 - 1.0))
        .collect();
    let f1 = Functional::combine(
        vec![
            (1.0, Functional::weighted_l1(degp)),
            (shift, Functional::scaled_linf(2.0, n)),
        ],
        1.0,
    );
    let f2 = Functional::combine(
        vec![
            (1.0, Functional::total_variation(g.edges().to_vec(), n)),
            (1.0, Functional::edge_sum_abs(g.edges().to_vec(), n)),
        ],
        1.0,
    );
    let g1 = Functional::scaled_linf(2.0, n);
    let gc = g.clone();
    FractionalProblem::new(
        f1,
        f2,
        g1,
        Functional::zero(n),
        Region::InftySphere(1.0),
        x0,
    )
    .with_candidates(move |x| threshold_indicator_candidates(&gc, x))
}

fn seeded_starts(rng: &mut SeededRng, n: usize, count: usize) -> Vec<Vec<f64>> {
    let mut starts = Vec::with_capacity(count);
    for v in 0..n.min(count / 2) {
        let mut e = vec![0.0; n];
        e[v] = 1.0;
        starts.push(e);
    }
    while starts.len() < count {
        starts.push(unit_cube_vec(rng, n));
    }
    starts
}

// ---------------------------------------------------------------------------
// Independence number
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Discrete,
    Continuous,
    Both,
}

#[derive(Debug, Clone)]
pub struct AlphaResult {
    pub discrete: Option<f64>,
    pub optimizer: Option<u32>,
    pub continuous_best: Option<f64>,
    pub gap: Option<f64>,
}

/// Extension-form independence objective
/// `(I^-(x) + I^+(x) - 2 sum (deg_i - 1)|x_i|) / (2 |x|_inf)`.
pub fn independence_objective(g: &Graph, x: &[f64]) -> f64 {
    let linf = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let i_minus: f64 = g.edges.iter().map(|&(i, j)| (x[i] - x[j]).abs()).sum();
    let i_plus: f64 = g.edges.iter().map(|&(i, j)| (x[i] + x[j]).abs()).sum();
    let degp: f64 = (0..g.n)
        .map(|i| (g.adj[i].len() as f64 - 1.0) * x[i].abs())
        .sum();
    (i_minus + i_plus - 2.0 * degp) / (2.0 * linf)
}

/// Exact alpha by enumerating `max(#S - #E(S))`; isolated vertices split
/// off additively for the continuous run.
pub fn independence_number(g: &Graph, method: Method, seed: u64) -> Result<AlphaResult> {
    if g.n > 20 {
        return Err(GraphError::TooLarge(g.n, 20));
    }
    let mut discrete = None;
    let mut optimizer = None;
    if method != Method::Continuous {
        let mut best = f64::NEG_INFINITY;
        let mut best_mask = 0u32;
        for mask in 0..=g.universe() {
            let v = mask.count_ones() as f64 - g.edges_within(mask) as f64;
            if v > best {
                best = v;
                best_mask = mask;
            }
        }
        discrete = Some(best);
        optimizer = Some(best_mask);
    }
    let mut continuous_best = None;
    if method != Method::Discrete {
        let isolated: Vec<usize> = (0..g.n).filter(|&v| g.adj[v].is_empty()).collect();
        let core: Vec<usize> = (0..g.n).filter(|&v| !g.adj[v].is_empty()).collect();
        let alpha_isolated = isolated.len() as f64;
        if core.is_empty() {
            continuous_best = Some(alpha_isolated);
        } else {
            let relabel: std::collections::HashMap<usize, usize> =
                core.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let core_edges: Vec<(usize, usize)> = g
                .edges
                .iter()
                .map(|&(a, b)| (relabel[&a], relabel[&b]))
                .collect();
            let core_graph = Graph::new(core.len(), core_edges)?;
            let mut rng = seeded(seed);
            let starts = seeded_starts(&mut rng, core_graph.n(), 20);
            let prob = independence_continuous_problem(&core_graph, starts[0].clone());
            let cfg = SolverConfig {
                seed,
                ..Default::default()
            };
            let run = mixed_ipsd_multistart(&prob, &cfg, IpsdVariant::Normalized, &starts)?;
            continuous_best = Some(independence_shift(&core_graph) - run.value + alpha_isolated);
        }
    }
    let gap = match (discrete, continuous_best) {
        (Some(d), Some(c)) => Some(d - c),
        _ => None,
    };
    Ok(AlphaResult {
        discrete,
        optimizer,
        continuous_best,
        gap,
    })
}

// ---------------------------------------------------------------------------
// Chromatic number
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GammaResult {
    pub value: usize,
    pub coloring: Vec<usize>,
    /// Discrete multiway objective evaluated at the found coloring; must
    /// equal `value`.
    pub formula_at_coloring: f64,
    /// `n^2 - (best found objective)`; evidence only, not certified.
    pub continuous_estimate: Option<f64>,
}

/// Minimum number of cliques covering the vertex set, by dynamic
/// programming over vertex masks.
pub fn clique_cover_number(g: &Graph) -> Result<usize> {
    if g.n > 16 {
        return Err(GraphError::TooLarge(g.n, 16));
    }
    let u = g.universe();
    let is_clique = |mask: u32| -> bool {
        let members: Vec<usize> = (0..g.n).filter(|&v| mask >> v & 1 == 1).collect();
        members.iter().enumerate().all(|(idx, &a)| {
            members[idx + 1..]
                .iter()
                .all(|&b| g.adj[a].binary_search(&b).is_ok())
        })
    };
    let mut dp = vec![usize::MAX; (u as usize) + 1];
    dp[0] = 0;
    for mask in 1..=u {
        let low = mask & mask.wrapping_neg();
        // enumerate subsets of mask containing the lowest vertex
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let clique = sub | low;
            if is_clique(clique) && dp[(mask & !clique) as usize] != usize::MAX {
                dp[mask as usize] = dp[mask as usize].min(1 + dp[(mask & !clique) as usize]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(dp[u as usize])
}

/// Clique number by mask enumeration.
pub fn clique_number(g: &Graph) -> Result<usize> {
    if g.n > 20 {
        return Err(GraphError::TooLarge(g.n, 20));
    }
    let mut best = 0usize;
    for mask in 1..=g.universe() {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let members: Vec<usize> = (0..g.n).filter(|&v| mask >> v & 1 == 1).collect();
        let clique = members.iter().enumerate().all(|(idx, &a)| {
            members[idx + 1..]
                .iter()
                .all(|&b| g.adj[a].binary_search(&b).is_ok())
        });
        if clique {
            best = k;
        }
    }
    Ok(best)
}

fn k_colorable(
    g: &Graph,
    k: usize,
    coloring: &mut Vec<usize>,
    order: &[usize],
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let max_used = order[..pos]
        .iter()
        .map(|&w| coloring[w] + 1)
        .max()
        .unwrap_or(0);
    for c in 0..k.min(max_used + 1) {
        if g.adj[v]
            .iter()
            .all(|&w| order[..pos].iter().all(|&seen| seen != w) || coloring[w] != c)
        {
            coloring[v] = c;
            if k_colorable(g, k, coloring, order, pos + 1) {
                return true;
            }
        }
    }
    false
}

/// Discrete multiway coloring objective
/// `n sum #E(A_i) + sum sgn(#A_i) + n (n - #union A_i)` over an n-tuple of
/// vertex subsets.
pub fn coloring_formula(g: &Graph, parts: &[u32]) -> f64 {
    let n = g.n as f64;
    let edges: usize = parts.iter().map(|&m| g.edges_within(m)).sum();
    let nonempty = parts.iter().filter(|&&m| m != 0).count() as f64;
    let union = parts.iter().fold(0u32, |acc, &m| acc | m);
    n * edges as f64 + nonempty + n * (g.n as f64 - union.count_ones() as f64)
}

/// Norm-aggregated continuous coloring objective over `n x n` matrices;
/// the chromatic number is `n^2` minus its supremum.
pub fn chromatic_objective(g: &Graph, x: &[f64]) -> f64 {
    let n = g.n;
    let linf = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if linf == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut ipm = 0.0;
    for i in 0..n {
        let row = &x[i * n..(i + 1) * n];
        for &(a, b) in &g.edges {
            ipm += ((row[a] + row[b]).abs() + (row[a] - row[b]).abs()) / 2.0;
        }
    }
    let col_inf: f64 = (0..n)
        .map(|j| (0..n).fold(0.0f64, |m, i| m.max(x[i * n + j].abs())))
        .sum();
    let row_inf: f64 = (0..n)
        .map(|i| (0..n).fold(0.0f64, |m, j| m.max(x[i * n + j].abs())))
        .sum();
    let deg_l1: f64 = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| g.adj[j].len() as f64 * x[i * n + j].abs())
                .sum::<f64>()
        })
        .sum();
    let nf = n as f64;
    (nf * ipm + nf * col_inf - nf * deg_l1 - row_inf) / linf
}

/// Per-class arrangement of the chromatic objective: classes enter one at
/// a time as `n (I+ + I-)(row k)` plus the global per-vertex sup norms,
/// minus the degree-weighted row mass and the per-class sup norm, halved.
/// Algebraically identical to [`chromatic_objective`]; kept as an
/// independent arrangement for cross-checking.
pub fn chromatic_objective_per_class(g: &Graph, x: &[f64]) -> f64 {
    let n = g.n();
    let nf = n as f64;
    let linf = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if linf == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut total = 0.0;
    for k in 0..n {
        let row = &x[k * n..(k + 1) * n];
        let mut edge_terms = 0.0;
        for &(a, b) in g.edges() {
            edge_terms += (row[a] - row[b]).abs() + (row[a] + row[b]).abs();
        }
        let col_sup = (0..n).fold(0.0f64, |m, i| m.max(x[i * n + k].abs()));
        let row_deg_mass: f64 = (0..n).map(|j| g.adj(j).len() as f64 * row[j].abs()).sum();
        let row_sup = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        total += nf * edge_terms + 2.0 * nf * col_sup - 2.0 * nf * row_deg_mass - 2.0 * row_sup;
    }
    total / (2.0 * linf)
}

/// Subgradient of the numerator of [`chromatic_objective`]:
/// `n I_{+-,1} + n |x|^{inf,1} - n |x|_{1-deg,1} - |x|_{inf,1}`.
fn chromatic_numerator_subgrad(g: &Graph, x: &[f64]) -> Vec<f64> {
    let n = g.n();
    let nf = n as f64;
    let s = |v: f64| {
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    };
    let mut grad = vec![0.0; n * n];
    for i in 0..n {
        let row = i * n;
        for &(a, b) in g.edges() {
            let plus = s(x[row + a] + x[row + b]);
            let minus = s(x[row + a] - x[row + b]);
            grad[row + a] += nf * (plus + minus) / 2.0;
            grad[row + b] += nf * (plus - minus) / 2.0;
        }
        for j in 0..n {
            grad[row + j] -= nf * g.adj(j).len() as f64 * s(x[row + j]);
        }
        // row sup norm, coefficient -1
        let mut arg = 0usize;
        for j in 1..n {
            if x[row + j].abs() > x[row + arg].abs() {
                arg = j;
            }
        }
        grad[row + arg] -= if x[row + arg] < 0.0 { -1.0 } else { 1.0 };
    }
    for j in 0..n {
        // column sup norm, coefficient +n
        let mut arg = 0usize;
        for i in 1..n {
            if x[i * n + j].abs() > x[arg * n + j].abs() {
                arg = i;
            }
        }
        grad[arg * n + j] += nf * if x[arg * n + j] < 0.0 { -1.0 } else { 1.0 };
    }
    grad
}

/// Coloring matrix (rows = classes) for a coloring given as class index per
/// vertex.
pub fn coloring_matrix(n: usize, coloring: &[usize]) -> Vec<f64> {
    let mut x = vec![0.0; n * n];
    for (v, &c) in coloring.iter().enumerate() {
        x[c * n + v] = 1.0;
    }
    x
}

pub fn chromatic_number(g: &Graph, method: Method, seed: u64) -> Result<GammaResult> {
    if g.n > 12 {
        return Err(GraphError::TooLarge(g.n, 12));
    }
    let lower = clique_number(g)?.max(usize::from(g.n > 0));
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.adj[v].len()));
    let mut coloring = vec![0usize; g.n];
    let mut value = g.n.max(1);
    for k in lower..=g.n.max(1) {
        let mut attempt = vec![0usize; g.n];
        if k_colorable(g, k, &mut attempt, &order, 0) {
            value = k;
            coloring = attempt;
            break;
        }
    }
    // verify the multiway objective attains the chromatic number at the
    // found coloring
    let mut parts = vec![0u32; g.n.max(1)];
    for (v, &c) in coloring.iter().enumerate() {
        parts[c] |= 1 << v;
    }
    let formula_at_coloring = coloring_formula(g, &parts);

    let mut continuous_estimate = None;
    if method != Method::Discrete && g.n >= 1 {
        let mut rng = seeded(seed);
        let n2 = g.n * g.n;
        let mut best_obj = chromatic_objective(g, &coloring_matrix(g.n, &coloring));
        for _ in 0..200 {
            let x = unit_cube_vec(&mut rng, n2);
            best_obj = best_obj.max(chromatic_objective(g, &x));
        }
        // short multi-start ascent on the sphere, driven by the analytic
        // subgradient of the piecewise-linear numerator
        let gc = g.clone();
        let neg = Functional::new(
            1.0,
            move |x: &[f64]| {
                let linf = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                -chromatic_objective(&gc, x) * linf
            },
            {
                let gc = g.clone();
                move |x: &[f64]| {
                    chromatic_numerator_subgrad(&gc, x)
                        .iter()
                        .map(|v| -v)
                        .collect()
                }
            },
        );
        let cfg = SolverConfig {
            seed,
            inner_steps: 200,
            inner_restarts: 3,
            ..Default::default()
        };
        let (neg_best, _) = projected_subgradient(
            &neg,
            &Region::InftySphere(1.0),
            &cfg,
            &[coloring_matrix(g.n, &coloring)],
            n2,
        );
        best_obj = best_obj.max(-neg_best);
        continuous_estimate = Some(g.n as f64 * g.n as f64 - best_obj);
    }

    Ok(GammaResult {
        value,
        coloring,
        formula_at_coloring,
        continuous_estimate,
    })
}

// ---------------------------------------------------------------------------
// Max k-cut
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MaxKCutResult {
    pub value: usize,
    pub partition: Vec<usize>,
    pub continuous_at_indicator: f64,
    pub random_best: f64,
}

/// Continuous max-(k+1)-cut ratio over `k` nonnegative rows with disjoint
/// supports: the sum of row total variations plus the total variation of
/// the column maxima, over the largest entry. Counts every cut edge twice.
pub fn max_kcut_ratio(g: &Graph, x: &[f64], slots: usize) -> f64 {
    let n = g.n;
    let linf = x.iter().fold(0.0f64, |m, v| m.max(*v));
    if linf <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut total = 0.0;
    for s in 0..slots {
        let row = &x[s * n..(s + 1) * n];
        total += g
            .edges
            .iter()
            .map(|&(i, j)| (row[i] - row[j]).abs())
            .sum::<f64>();
    }
    let colmax: Vec<f64> = (0..n)
        .map(|j| (0..slots).fold(0.0f64, |m, s| m.max(x[s * n + j])))
        .collect();
    total += g
        .edges
        .iter()
        .map(|&(i, j)| (colmax[i] - colmax[j]).abs())
        .sum::<f64>();
    total / linf
}

pub fn max_kcut(g: &Graph, k: usize, method: Method, seed: u64) -> Result<MaxKCutResult> {
    if k < 2 {
        return Err(GraphError::KTooSmall(2));
    }
    if k > g.n {
        return Err(GraphError::KTooLarge(k, g.n));
    }
    if g.n > 12 {
        return Err(GraphError::TooLarge(g.n, 12));
    }
    // enumerate labelings with vertex 0 pinned to class 0
    let mut best = 0usize;
    let mut best_labels = vec![0usize; g.n];
    let total = k.pow(g.n.saturating_sub(1) as u32);
    for code in 0..total {
        let mut labels = vec![0usize; g.n];
        let mut c = code;
        for v in 1..g.n {
            labels[v] = c % k;
            c /= k;
        }
        let cut = g
            .edges
            .iter()
            .filter(|&&(a, b)| labels[a] != labels[b])
            .count();
        if cut > best {
            best = cut;
            best_labels = labels;
        }
    }
    // continuous ratio at the partition indicator (first k-1 classes as
    // rows); equals twice the cut count
    let slots = k - 1;
    let mut x = vec![0.0; slots * g.n];
    for (v, &c) in best_labels.iter().enumerate() {
        if c < slots {
            x[c * g.n + v] = 1.0;
        }
    }
    let continuous_at_indicator = max_kcut_ratio(g, &x, slots) / 2.0;

    let mut random_best = continuous_at_indicator;
    if method != Method::Discrete {
        let mut rng = seeded(seed);
        for _ in 0..2000 {
            let mut y = vec![0.0; slots * g.n];
            for v in 0..g.n {
                let slot = rng.gen_range(0..=slots); // == slots means "background"
                if slot < slots {
                    y[slot * g.n + v] = rng.gen_range(0.01..1.0);
                }
            }
            let r = max_kcut_ratio(g, &y, slots) / 2.0;
            if r.is_finite() && r > random_best {
                random_best = r;
            }
        }
    }
    Ok(MaxKCutResult {
        value: best,
        partition: best_labels,
        continuous_at_indicator,
        random_best,
    })
}

// ---------------------------------------------------------------------------
// Matching number
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MatchingResult {
    pub value: usize,
    pub matching: Vec<(usize, usize)>,
    pub ratio_at_indicator: f64,
    pub random_best: f64,
}

/// `|y|_1^2 / (|y|_1^2 - 2 sum_{e cap e' = empty} y_e y_e')` over edge
/// vectors.
pub fn matching_ratio(g: &Graph, y: &[f64]) -> f64 {
    let l1: f64 = y.iter().map(|v| v.abs()).sum();
    if l1 == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut disjoint = 0.0;
    for (a, &(i, j)) in g.edges.iter().enumerate() {
        for (b, &(p, q)) in g.edges.iter().enumerate().skip(a + 1) {
            if i != p && i != q && j != p && j != q {
                disjoint += y[a] * y[b];
            }
        }
    }
    l1 * l1 / (l1 * l1 - 2.0 * disjoint)
}

pub fn matching_number(g: &Graph, method: Method, seed: u64) -> Result<MatchingResult> {
    if g.n > 20 {
        return Err(GraphError::TooLarge(g.n, 20));
    }
    if g.edges.is_empty() {
        return Ok(MatchingResult {
            value: 0,
            matching: Vec::new(),
            ratio_at_indicator: 0.0,
            random_best: 0.0,
        });
    }
    // exact maximum matching: branch on the lowest uncovered vertex
    fn solve(g: &Graph, covered: u32, memo: &mut std::collections::HashMap<u32, usize>) -> usize {
        let free = (0..g.n()).find(|&v| covered >> v & 1 == 0);
        let Some(v) = free else { return 0 };
        if let Some(&m) = memo.get(&covered) {
            return m;
        }
        let mut best = solve(g, covered | 1 << v, memo); // leave v unmatched
        for &w in g.adj(v) {
            if covered >> w & 1 == 0 {
                best = best.max(1 + solve(g, covered | 1 << v | 1 << w, memo));
            }
        }
        memo.insert(covered, best);
        best
    }
    let mut memo = std::collections::HashMap::new();
    let value = solve(g, 0, &mut memo);
    // reconstruct one maximum matching greedily against the memo
    let mut matching = Vec::new();
    let mut covered = 0u32;
    while matching.len() < value {
        let v = (0..g.n).find(|&v| covered >> v & 1 == 0).unwrap();
        let rest = solve(g, covered | 1 << v, &mut memo);
        if rest == value - matching.len() {
            covered |= 1 << v;
            continue;
        }
        for &w in g.adj(v) {
            if covered >> w & 1 == 0
                && 1 + solve(g, covered | 1 << v | 1 << w, &mut memo) == value - matching.len()
            {
                matching.push((v, w));
                covered |= 1 << v | 1 << w;
                break;
            }
        }
    }
    let indicator: Vec<f64> = g
        .edges
        .iter()
        .map(|e| {
            if matching.contains(e) || matching.contains(&(e.1, e.0)) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let ratio_at_indicator = matching_ratio(g, &indicator);
    let mut random_best = ratio_at_indicator;
    if method != Method::Discrete {
        let mut rng = seeded(seed);
        for _ in 0..2000 {
            let y: Vec<f64> = (0..g.edges.len())
                .map(|_| rng.gen_range(0.0..1.0))
                .collect();
            let r = matching_ratio(g, &y);
            if r.is_finite() && r > random_best {
                random_best = r;
            }
        }
    }
    Ok(MatchingResult {
        value,
        matching,
        ratio_at_indicator,
        random_best,
    })
}

// ---------------------------------------------------------------------------
// Cheeger constants
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheegerVariant {
    /// `cut(A) / min(vol A, vol A^c)`.
    Classic,
    /// `cut(A) / (#A #A^c)`.
    Multiplicative,
    /// `min over #A <= k of cut(A)/#A`.
    IsoperimetricProfile(usize),
    /// `#external boundary / min(#A, #A^c)`.
    VertexExt,
    VertexInt,
    VertexVer,
    /// `h_1`: boundary graph, `min over S subset A of |d_A S| / vol S`.
    Dirichlet,
    /// `h`: boundary graph, `min over S subset closure of
    /// |d_A S| / min(vol(A cap S), vol(A \ S))`.
    Neumann,
}

#[derive(Clone)]
pub struct CheegerResult {
    pub value: f64,
    /// Optimizing vertex set, in global vertex ids.
    pub optimizer: Vec<usize>,
    /// Non-fatal condition reports (e.g. a disconnected Dirichlet interior).
    pub warning: Option<String>,
    /// Dimension of the continuous form (`n`, `#A`, or `#closure`).
    pub dim: usize,
    pub numerator: Functional,
    pub denominator: Functional,
    /// Random samples must be centered to zero mean before evaluation.
    pub center_samples: bool,
    /// Support bound for isoperimetric-profile sampling.
    pub support_bound: Option<usize>,
    /// Vertices (global ids) indexing the continuous coordinates.
    pub coordinates: Vec<usize>,
}

impl std::fmt::Debug for CheegerResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheegerResult")
            .field("value", &self.value)
            .field("optimizer", &self.optimizer)
            .field("dim", &self.dim)
            .field("warning", &self.warning)
            .finish()
    }
}

impl CheegerResult {
    /// Fractional problem `min numerator/denominator` over the l-infinity
    /// sphere, with threshold-indicator candidates.
    pub fn to_problem(&self, x0: Vec<f64>) -> FractionalProblem {
        let dim = self.dim;
        FractionalProblem::new(
            self.numerator.clone(),
            Functional::zero(dim),
            self.denominator.clone(),
            Functional::zero(dim),
            Region::InftySphere(1.0),
            x0,
        )
        .with_candidates(move |x| {
            let mut out = Vec::new();
            let mut levels: Vec<f64> = x.iter().map(|v| v.abs()).collect();
            levels.extend(x.iter().copied());
            levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
            levels.dedup();
            for &t in &levels {
                out.push(
                    (0..dim)
                        .map(|i| if x[i] >= t { 1.0 } else { 0.0 })
                        .collect(),
                );
            }
            out
        })
    }

    pub fn indicator(&self) -> Vec<f64> {
        self.coordinates
            .iter()
            .map(|v| if self.optimizer.contains(v) { 1.0 } else { 0.0 })
            .collect()
    }

    pub fn ratio_at(&self, x: &[f64]) -> Option<f64> {
        let den = (self.denominator.eval)(x);
        if den <= 1e-12 {
            return None;
        }
        Some((self.numerator.eval)(x) / den)
    }
}

fn mask_to_vertices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn cheeger(g: &Graph, variant: CheegerVariant) -> Result<CheegerResult> {
    if g.n > 20 {
        return Err(GraphError::TooLarge(g.n, 20));
    }
    let n = g.n;
    let all: Vec<usize> = (0..n).collect();
    match variant {
        CheegerVariant::Classic
        | CheegerVariant::Multiplicative
        | CheegerVariant::VertexExt
        | CheegerVariant::VertexInt
        | CheegerVariant::VertexVer => {
            let numerator_count = |mask: u32| -> usize {
                match variant {
                    CheegerVariant::Classic | CheegerVariant::Multiplicative => g.cut_size(mask),
                    CheegerVariant::VertexExt => g.external_boundary(mask).count_ones() as usize,
                    CheegerVariant::VertexInt => g.internal_boundary(mask).count_ones() as usize,
                    CheegerVariant::VertexVer => (g.external_boundary(mask)
                        | g.internal_boundary(mask))
                    .count_ones() as usize,
                    _ => unreachable!(),
                }
            };
            let denominator_count = |mask: u32| -> usize {
                let a = mask.count_ones() as usize;
                match variant {
                    CheegerVariant::Classic => g.vol(mask).min(g.vol(g.universe() & !mask)),
                    CheegerVariant::Multiplicative => a * (n - a),
                    _ => a.min(n - a),
                }
            };
            let mut best = f64::INFINITY;
            let mut best_mask = 0u32;
            for mask in 1..g.universe() {
                let den = denominator_count(mask);
                if den == 0 {
                    continue;
                }
                let r = numerator_count(mask) as f64 / den as f64;
                if r < best {
                    best = r;
                    best_mask = mask;
                }
            }
            if !best.is_finite() {
                return Err(GraphError::NoFeasibleSubset);
            }
            let edges = g.edges.clone();
            let numerator = match variant {
                CheegerVariant::Classic | CheegerVariant::Multiplicative => {
                    Functional::total_variation(edges, n)
                }
                CheegerVariant::VertexExt => neighborhood_functional(g, true, false),
                CheegerVariant::VertexInt => neighborhood_functional(g, false, true),
                CheegerVariant::VertexVer => neighborhood_functional(g, true, true),
                _ => unreachable!(),
            };
            let denominator = match variant {
                CheegerVariant::Classic => {
                    Functional::min_translate_l1(g.degrees().iter().map(|&d| d as f64).collect())
                }
                CheegerVariant::Multiplicative => {
                    let mut pairs = Vec::new();
                    for i in 0..n {
                        for j in i + 1..n {
                            pairs.push((i, j));
                        }
                    }
                    Functional::total_variation(pairs, n)
                }
                _ => Functional::min_translate_l1(vec![1.0; n]),
            };
            Ok(CheegerResult {
                value: best,
                optimizer: mask_to_vertices(best_mask, n),
                warning: None,
                dim: n,
                numerator,
                denominator,
                center_samples: variant == CheegerVariant::Multiplicative,
                support_bound: None,
                coordinates: all,
            })
        }
        CheegerVariant::IsoperimetricProfile(k) => {
            if k == 0 || k > n {
                return Err(GraphError::KTooLarge(k, n));
            }
            let mut best = f64::INFINITY;
            let mut best_mask = 1u32;
            for mask in 1..=g.universe() {
                let a = mask.count_ones() as usize;
                if a == 0 || a > k {
                    continue;
                }
                let r = g.cut_size(mask) as f64 / a as f64;
                if r < best {
                    best = r;
                    best_mask = mask;
                }
            }
            Ok(CheegerResult {
                value: best,
                optimizer: mask_to_vertices(best_mask, n),
                warning: None,
                dim: n,
                numerator: Functional::total_variation(g.edges.clone(), n),
                denominator: Functional::weighted_l1(vec![1.0; n]),
                center_samples: false,
                support_bound: Some(k),
                coordinates: all,
            })
        }
        CheegerVariant::Dirichlet => {
            let b = g.boundary()?;
            let a_set = b.interior.clone();
            let dim = a_set.len();
            let local: std::collections::HashMap<usize, usize> =
                a_set.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let inner_edges: Vec<(usize, usize)> = g
                .edges
                .iter()
                .filter(|(u, v)| local.contains_key(u) && local.contains_key(v))
                .map(|(u, v)| (local[u], local[v]))
                .collect();
            let p: Vec<f64> = b.p.iter().map(|&v| v as f64).collect();
            let d: Vec<f64> = b.d.iter().map(|&v| v as f64).collect();
            // exact enumeration over nonempty S subset A
            let mut best = f64::INFINITY;
            let mut best_local = 1u32;
            for mask in 1u32..1 << dim {
                let num: usize = inner_edges
                    .iter()
                    .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                    .count()
                    + (0..dim)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| b.p[i])
                        .sum::<usize>();
                let den: usize = (0..dim)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| b.d[i])
                    .sum();
                let r = num as f64 / den as f64;
                if r < best {
                    best = r;
                    best_local = mask;
                }
            }
            if !best.is_finite() {
                return Err(GraphError::NoFeasibleSubset);
            }
            // disconnected interiors are legal but worth flagging: the
            // Cheeger set then lives in one component
            let interior_connected = {
                let mut seen = vec![false; dim];
                let adj: Vec<Vec<usize>> = (0..dim)
                    .map(|i| {
                        inner_edges
                            .iter()
                            .filter_map(|&(u, v)| {
                                if u == i {
                                    Some(v)
                                } else if v == i {
                                    Some(u)
                                } else {
                                    None
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut stack = vec![0usize];
                seen[0] = true;
                while let Some(v) = stack.pop() {
                    for &w in &adj[v] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen.into_iter().all(|s| s)
            };
            let numerator = Functional::combine(
                vec![
                    (1.0, Functional::total_variation(inner_edges, dim)),
                    (1.0, Functional::weighted_l1(p)),
                ],
                1.0,
            );
            let denominator = Functional::weighted_l1(d);
            Ok(CheegerResult {
                value: best,
                optimizer: (0..dim)
                    .filter(|&i| best_local >> i & 1 == 1)
                    .map(|i| a_set[i])
                    .collect(),
                warning: (!interior_connected)
                    .then(|| "interior of the boundary partition is disconnected".to_string()),
                dim,
                numerator,
                denominator,
                center_samples: false,
                support_bound: None,
                coordinates: a_set,
            })
        }
        CheegerVariant::Neumann => {
            let b = g.boundary()?;
            let closure = b.closure.clone();
            let dim = closure.len();
            let local: std::collections::HashMap<usize, usize> =
                closure.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let in_a = |v: usize| b.interior.binary_search(&v).is_ok();
            // edges meeting A, in closure-local indices
            let live_edges: Vec<(usize, usize)> = g
                .edges
                .iter()
                .filter(|&&(u, v)| in_a(u) || in_a(v))
                .map(|&(u, v)| (local[&u], local[&v]))
                .collect();
            let mut dw = vec![0.0; dim];
            for (i, &v) in closure.iter().enumerate() {
                if in_a(v) {
                    dw[i] = g.adj[v].len() as f64;
                }
            }
            let mut best = f64::INFINITY;
            let mut best_local = 0u32;
            for mask in 1..(1u32 << dim) - 1 {
                let num = live_edges
                    .iter()
                    .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                    .count() as f64;
                let vol_in: f64 = (0..dim)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| dw[i])
                    .sum();
                let vol_out: f64 = dw.iter().sum::<f64>() - vol_in;
                let den = vol_in.min(vol_out);
                if den <= 0.0 {
                    continue;
                }
                let r = num / den;
                if r < best {
                    best = r;
                    best_local = mask;
                }
            }
            let numerator = Functional::total_variation(live_edges, dim);
            let denominator = Functional::min_translate_l1(dw);
            Ok(CheegerResult {
                value: best,
                optimizer: (0..dim)
                    .filter(|&i| best_local >> i & 1 == 1)
                    .map(|i| closure[i])
                    .collect(),
                warning: None,
                dim,
                numerator,
                denominator,
                center_samples: false,
                support_bound: None,
                coordinates: closure,
            })
        }
    }
}

/// `sum_i (max_{j in N(i)} x_j)^{use_max} - (min_{j in N(i)} x_j)^{use_min}`
/// with `N(i)` the closed neighborhood; the subgradient picks the first
/// extremal neighbor per vertex.
fn neighborhood_functional(g: &Graph, use_max: bool, use_min: bool) -> Functional {
    let g1 = g.clone();
    let g2 = g.clone();
    Functional::new(
        1.0,
        move |x: &[f64]| {
            (0..g1.n())
                .map(|i| {
                    let hi = g1.adj(i).iter().fold(x[i], |m, &j| m.max(x[j]));
                    let lo = g1.adj(i).iter().fold(x[i], |m, &j| m.min(x[j]));
                    match (use_max, use_min) {
                        (true, true) => hi - lo,
                        (true, false) => hi - x[i],
                        (false, true) => x[i] - lo,
                        (false, false) => 0.0,
                    }
                })
                .sum()
        },
        move |x: &[f64]| {
            let mut grad = vec![0.0; x.len()];
            for i in 0..g2.n() {
                let mut hi = i;
                let mut lo = i;
                for &j in g2.adj(i) {
                    if x[j] > x[hi] {
                        hi = j;
                    }
                    if x[j] < x[lo] {
                        lo = j;
                    }
                }
                if use_max {
                    grad[hi] += 1.0;
                } else {
                    grad[i] += 1.0;
                }
                if use_min {
                    grad[lo] -= 1.0;
                } else {
                    grad[i] -= 1.0;
                }
            }
            grad
        },
    )
}

// ---------------------------------------------------------------------------
// Cheeger-like constant
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CheegerLikeResult {
    pub value: f64,
    pub edge: (usize, usize),
    pub companion_value: f64,
    pub companion_edge: (usize, usize),
    /// Continuous form at the argmax edge indicator; equals `value`.
    pub continuous_at_indicator: f64,
    /// Maximum of the continuous form over random edge vectors; never
    /// exceeds `value`.
    pub random_best: f64,
}

/// Continuous form `sum_v (1/deg v) |sum_{e at v} gamma_e| / sum_e |gamma_e|`.
pub fn cheeger_like_objective(g: &Graph, gamma: &[f64]) -> f64 {
    let denom: f64 = gamma.iter().map(|v| v.abs()).sum();
    if denom == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut num = 0.0;
    for v in 0..g.n {
        let mut flow = 0.0;
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            if a == v || b == v {
                flow += gamma[e];
            }
        }
        num += flow.abs() / g.adj[v].len() as f64;
    }
    num / denom
}

pub fn cheeger_like(g: &Graph, samples: usize, seed: u64) -> Result<CheegerLikeResult> {
    if g.edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let degs = g.degrees();
    let mut value = f64::NEG_INFINITY;
    let mut edge = g.edges[0];
    for &(a, b) in &g.edges {
        let v = 1.0 / degs[a] as f64 + 1.0 / degs[b] as f64;
        if v > value {
            value = v;
            edge = (a, b);
        }
    }
    let mut companion_value = f64::INFINITY;
    let mut companion_edge = g.edges[0];
    for &(a, b) in &g.edges {
        let na: std::collections::HashSet<usize> = g.adj[a].iter().copied().chain([a]).collect();
        let common = g.adj[b]
            .iter()
            .copied()
            .chain([b])
            .filter(|v| na.contains(v))
            .count();
        let v = common as f64 / degs[a].max(degs[b]) as f64;
        if v < companion_value {
            companion_value = v;
            companion_edge = (a, b);
        }
    }
    let mut indicator = vec![0.0; g.edges.len()];
    indicator[g.edges.iter().position(|&e| e == edge).unwrap()] = 1.0;
    let continuous_at_indicator = cheeger_like_objective(g, &indicator);
    let mut rng = seeded(seed);
    let mut random_best = continuous_at_indicator;
    for _ in 0..samples {
        let gamma = unit_cube_vec(&mut rng, g.edges.len());
        let v = cheeger_like_objective(g, &gamma);
        if v.is_finite() && v > random_best {
            random_best = v;
        }
    }
    Ok(CheegerLikeResult {
        value,
        edge,
        companion_value,
        companion_edge,
        continuous_at_indicator,
        random_best,
    })
}

// ---------------------------------------------------------------------------
// Poincare profile sandwich
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PoincareReport {
    pub h_int: f64,
    pub h_ext: f64,
    pub h_ver: f64,
    pub best_p1: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `P^1` Rayleigh quotient `sum_i max_{j ~ i} |x_i - x_j| / |x|_1` on
/// zero-mean vectors.
pub fn p1_quotient(g: &Graph, x: &[f64]) -> Option<f64> {
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    if l1 <= 1e-12 {
        return None;
    }
    let num: f64 = (0..g.n)
        .map(|i| {
            g.adj[i]
                .iter()
                .map(|&j| (x[i] - x[j]).abs())
                .fold(0.0, f64::max)
        })
        .sum();
    Some(num / l1)
}

pub fn poincare_profile_check(g: &Graph, samples: usize, seed: u64) -> Result<PoincareReport> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.n > 12 {
        return Err(GraphError::TooLarge(g.n, 12));
    }
    let h_int = cheeger(g, CheegerVariant::VertexInt)?.value;
    let h_ext = cheeger(g, CheegerVariant::VertexExt)?.value;
    let ver = cheeger(g, CheegerVariant::VertexVer)?;
    let h_ver = ver.value;
    // centered indicator of the h_ver optimizer bounds P^1 from above
    let a = ver.optimizer.len() as f64;
    let centered: Vec<f64> = (0..g.n)
        .map(|v| {
            let ind = if ver.optimizer.contains(&v) { 1.0 } else { 0.0 };
            ind - a / g.n as f64
        })
        .collect();
    let mut best_p1 = p1_quotient(g, &centered).unwrap_or(f64::INFINITY);
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let mut x = unit_cube_vec(&mut rng, g.n);
        let mean: f64 = x.iter().sum::<f64>() / g.n as f64;
        for v in &mut x {
            *v -= mean;
        }
        if let Some(q) = p1_quotient(g, &x) {
            best_p1 = best_p1.min(q);
        }
    }
    let lower = 0.5 * h_int.max(h_ext);
    let upper = h_ver;
    let holds = best_p1 >= lower - 1e-9 && best_p1 <= upper + 1e-9;
    Ok(PoincareReport {
        h_int,
        h_ext,
        h_ver,
        best_p1,
        lower,
        upper,
        holds,
    })
}

// ---------------------------------------------------------------------------
// Submodular vertex cover and multiway partition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct VertexCoverResult {
    pub exact: f64,
    pub cover: Vec<usize>,
    pub relaxation_value: f64,
    pub submodular_input: bool,
}

pub fn submodular_vertex_cover(g: &Graph, f: &DiscreteFunction) -> Result<VertexCoverResult> {
    if g.n > 16 {
        return Err(GraphError::TooLarge(g.n, 16));
    }
    let submodular_input = is_submodular(f)?.holds;
    let mut exact = f64::INFINITY;
    let mut cover_mask = g.universe();
    for mask in 0..=g.universe() {
        if g.is_vertex_cover(mask) {
            let v = f.value_unchecked(&SetArg::set(mask));
            if v < exact {
                exact = v;
                cover_mask = mask;
            }
        }
    }
    let n = g.n;
    let objective = {
        let f_eval = f.clone();
        let f_grad = f.clone();
        Functional::new(
            1.0,
            move |x: &[f64]| lovasz_eval(&f_eval, x).unwrap_or(f64::INFINITY),
            move |x: &[f64]| lovasz_subgradient(&f_grad, x).unwrap_or_else(|_| vec![0.0; x.len()]),
        )
    };
    let region = Region::VertexCover {
        edges: g.edges.clone(),
    };
    let cover_indicator: Vec<f64> = (0..n)
        .map(|v| if cover_mask >> v & 1 == 1 { 1.0 } else { 0.0 })
        .collect();
    let half = vec![0.5; n];
    let cfg = SolverConfig {
        inner_steps: 1500,
        inner_restarts: 4,
        ..Default::default()
    };
    let (relaxation_value, _) =
        projected_subgradient(&objective, &region, &cfg, &[cover_indicator, half], n);
    Ok(VertexCoverResult {
        exact,
        cover: mask_to_vertices(cover_mask, n),
        relaxation_value,
        submodular_input,
    })
}

#[derive(Debug, Clone)]
pub struct MultiwayResult {
    pub exact: f64,
    pub partition: Vec<usize>,
    pub relaxation_value: f64,
}

pub fn multiway_partition(
    g: &Graph,
    f: &DiscreteFunction,
    terminals: &[usize],
) -> Result<MultiwayResult> {
    let k = terminals.len();
    let n = g.n;
    if n > 12 {
        return Err(GraphError::TooLarge(n, 12));
    }
    let mut seen = std::collections::HashSet::new();
    for &t in terminals {
        if t >= n {
            return Err(GraphError::VertexOutOfRange(t, n));
        }
        if !seen.insert(t) {
            return Err(GraphError::DuplicateTerminal(t));
        }
    }
    let free: Vec<usize> = (0..n).filter(|v| !terminals.contains(v)).collect();
    let mut exact = f64::INFINITY;
    let mut best_assign = vec![0usize; n];
    let total = k.pow(free.len() as u32);
    for code in 0..total.max(1) {
        let mut assign = vec![0usize; n];
        for (i, &t) in terminals.iter().enumerate() {
            assign[t] = i;
        }
        let mut c = code;
        for &v in &free {
            assign[v] = c % k.max(1);
            c /= k.max(1);
        }
        let mut parts = vec![0u32; k.max(1)];
        for (v, &cls) in assign.iter().enumerate() {
            parts[cls] |= 1 << v;
        }
        let value: f64 = parts
            .iter()
            .map(|&m| f.value_unchecked(&SetArg::set(m)))
            .sum();
        if value < exact {
            exact = value;
            best_assign = assign;
        }
    }
    // relaxation over the product of per-vertex simplices
    let objective = {
        let f_eval = f.clone();
        let f_grad = f.clone();
        let (kk, nn) = (k.max(1), n);
        Functional::new(
            1.0,
            move |x: &[f64]| {
                (0..kk)
                    .map(|i| {
                        lovasz_eval(&f_eval, &x[i * nn..(i + 1) * nn]).unwrap_or(f64::INFINITY)
                    })
                    .sum()
            },
            move |x: &[f64]| {
                let mut out = vec![0.0; kk * nn];
                for i in 0..kk {
                    let gr = lovasz_subgradient(&f_grad, &x[i * nn..(i + 1) * nn])
                        .unwrap_or_else(|_| vec![0.0; nn]);
                    out[i * nn..(i + 1) * nn].copy_from_slice(&gr);
                }
                out
            },
        )
    };
    let region = Region::PartitionSimplex {
        k: k.max(1),
        n,
        terminals: terminals.to_vec(),
    };
    let mut start = vec![0.0; k.max(1) * n];
    for (v, &cls) in best_assign.iter().enumerate() {
        start[cls * n + v] = 1.0;
    }
    let cfg = SolverConfig {
        inner_steps: 1500,
        inner_restarts: 4,
        ..Default::default()
    };
    let (relaxation_value, _) =
        projected_subgradient(&objective, &region, &cfg, &[start], k.max(1) * n);
    Ok(MultiwayResult {
        exact,
        partition: best_assign,
        relaxation_value,
    })
}

// ---------------------------------------------------------------------------
// k-independence number
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct KIndependenceResult {
    pub value: usize,
    pub optimizer: Vec<usize>,
    pub quadratic_at_optimizer: f64,
    pub extension_at_optimizer: f64,
}

/// Quadratic k-independence form
/// `|x|_1^2 / (|x|_1^2 - 2 sum_{dist(i,j) >= k+1} x_i x_j)`.
pub fn k_independence_quadratic(g: &Graph, k: usize, x: &[f64]) -> f64 {
    let dist = g.distances();
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    let mut far = 0.0;
    for i in 0..g.n {
        for j in i + 1..g.n {
            if dist[i][j] > k {
                far += x[i] * x[j];
            }
        }
    }
    l1 * l1 / (l1 * l1 - 2.0 * far)
}

pub fn k_independence_number(g: &Graph, k: usize) -> Result<KIndependenceResult> {
    if g.n > 16 {
        return Err(GraphError::TooLarge(g.n, 16));
    }
    if k == 0 {
        return Err(GraphError::KTooSmall(1));
    }
    let power = g.power_graph(k);
    let mut best = 0usize;
    let mut best_mask = 0u32;
    for mask in 0..=g.universe() {
        if power.edges_within(mask) == 0 {
            let s = mask.count_ones() as usize;
            if s > best {
                best = s;
                best_mask = mask;
            }
        }
    }
    let indicator: Vec<f64> = (0..g.n)
        .map(|v| if best_mask >> v & 1 == 1 { 1.0 } else { 0.0 })
        .collect();
    Ok(KIndependenceResult {
        value: best,
        optimizer: mask_to_vertices(best_mask, g.n),
        quadratic_at_optimizer: k_independence_quadratic(g, k, &indicator),
        extension_at_optimizer: independence_objective(&power, &indicator),
    })
}

// ---------------------------------------------------------------------------
// The fixed graph corpus
// ---------------------------------------------------------------------------

/// Thirty connected named graphs used by the regression and acceptance
/// suites.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=8 {
        out.push((format!("path-{n}"), Graph::path(n)));
    }
    for n in 3..=7 {
        out.push((format!("cycle-{n}"), Graph::cycle(n)));
    }
    for n in 4..=7 {
        out.push((format!("complete-{n}"), Graph::complete(n)));
    }
    for leaves in 3..=6 {
        out.push((format!("star-{leaves}"), Graph::star(leaves)));
    }
    out.push(("bipartite-2-3".into(), Graph::complete_bipartite(2, 3)));
    out.push(("bipartite-2-4".into(), Graph::complete_bipartite(2, 4)));
    out.push(("bipartite-3-3".into(), Graph::complete_bipartite(3, 3)));
    out.push(("bipartite-3-4".into(), Graph::complete_bipartite(3, 4)));
    out.push(("cube-3".into(), Graph::cube3()));
    out.push(("petersen".into(), Graph::petersen()));
    out.push(("wheel-4".into(), Graph::wheel(4)));
    out.push(("wheel-5".into(), Graph::wheel(5)));
    out.push(("diamond".into(), Graph::diamond()));
    out.push(("bull".into(), Graph::bull()));
    assert_eq!(out.len(), 30);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn catalog_rows_match_extension_on_small_graphs() {
        let graphs = [
            ("p3", Graph::path(3)),
            ("k3", Graph::complete(3)),
            ("c4", Graph::cycle(4)),
            ("s3", Graph::star(3)),
        ];
        let mut rng = seeded(42);
        for (gname, g) in &graphs {
            for row in CATALOG_ROWS {
                let (discrete, closed) = functional_catalog(row, g).unwrap();
                for _ in 0..100 {
                    let x = unit_cube_vec(&mut rng, g.n());
                    let a = closed(&x);
                    let b = lovasz_eval(&discrete, &x).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-10 * (1.0 + b.abs()),
                        "{gname}/{row}: closed {a} vs extension {b} at {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn catalog_rejects_unknown_row() {
        assert!(matches!(
            functional_catalog("t3-made-up", &Graph::path(3)),
            Err(GraphError::UnknownCatalogRow(_))
        ));
    }

    #[test]
    fn catalog_examples_from_tables() {
        // row 5 of the first table on K3 at the first unit vector
        let g = Graph::complete(3);
        let (_, cardprod) = functional_catalog("t1-cardprod", &g).unwrap();
        assert_eq!(cardprod(&[1.0, 0.0, 0.0]), 2.0);
        // constant pair row: |x|_inf
        let (_, cnst) = functional_catalog("t2-const", &g).unwrap();
        assert_eq!(cnst(&[0.3, -0.9, 0.5]), 0.9);
        // cut-vertex row on P3
        let p3 = Graph::path(3);
        let (_, cutverts) = functional_catalog("t1-cutverts", &p3).unwrap();
        assert_eq!(cutverts(&[1.0, 0.0, 0.0]), 2.0);
    }

    #[test]
    fn independence_number_small_graphs() {
        let a = independence_number(&Graph::complete(3), Method::Both, 42).unwrap();
        assert_eq!(a.discrete, Some(1.0));
        assert!((a.continuous_best.unwrap() - 1.0).abs() <= 1e-6);
        let e1 = [1.0, 0.0, 0.0];
        assert_eq!(independence_objective(&Graph::complete(3), &e1), 1.0);

        let a = independence_number(&Graph::path(3), Method::Both, 42).unwrap();
        assert_eq!(a.discrete, Some(2.0));
        assert_eq!(
            independence_objective(&Graph::path(3), &[1.0, 0.0, 1.0]),
            2.0
        );
        assert!((a.continuous_best.unwrap() - 2.0).abs() <= 1e-6);

        let a = independence_number(&Graph::edgeless(4), Method::Both, 42).unwrap();
        assert_eq!(a.discrete, Some(4.0));
        assert_eq!(a.continuous_best, Some(4.0));
    }

    #[test]
    fn independence_continuous_matches_discrete_on_small_corpus() {
        for (name, g) in corpus() {
            if g.n() > 5 {
                continue;
            }
            let r = independence_number(&g, Method::Both, 42).unwrap();
            assert!(
                r.gap.unwrap().abs() <= 1e-6,
                "{name}: discrete {:?} vs continuous {:?}",
                r.discrete,
                r.continuous_best
            );
        }
    }

    #[test]
    fn chromatic_number_small_graphs() {
        let r = chromatic_number(&Graph::complete(3), Method::Both, 42).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.formula_at_coloring, 3.0);
        let obj = chromatic_objective(&Graph::complete(3), &coloring_matrix(3, &[0, 1, 2]));
        assert_eq!(9.0 - obj, 3.0);

        assert_eq!(
            chromatic_number(&Graph::path(3), Method::Discrete, 42)
                .unwrap()
                .value,
            2
        );

        let r = chromatic_number(&Graph::edgeless(3), Method::Discrete, 42).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(coloring_formula(&Graph::edgeless(3), &[0b111, 0, 0]), 1.0);
    }

    #[test]
    fn max_kcut_small_graphs() {
        assert_eq!(
            max_kcut(&Graph::complete(3), 2, Method::Discrete, 1)
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            max_kcut(&Graph::cycle(4), 2, Method::Discrete, 1)
                .unwrap()
                .value,
            4
        );
        assert_eq!(
            max_kcut(&Graph::complete(3), 3, Method::Discrete, 1)
                .unwrap()
                .value,
            3
        );
        assert!(matches!(
            max_kcut(&Graph::path(3), 5, Method::Discrete, 1),
            Err(GraphError::KTooLarge(5, 3))
        ));
        let r = max_kcut(&Graph::cycle(4), 2, Method::Both, 7).unwrap();
        assert_eq!(r.continuous_at_indicator, 4.0);
        assert!(r.random_best <= 4.0 + 1e-9);
    }

    #[test]
    fn matching_number_examples() {
        let p4 = Graph::path(4);
        let r = matching_number(&p4, Method::Both, 3).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(matching_ratio(&p4, &[1.0, 0.0, 1.0]), 2.0);
        assert!(r.random_best <= 2.0 + 1e-9);

        let p3 = Graph::path(3);
        let r = matching_number(&p3, Method::Both, 3).unwrap();
        assert_eq!(r.value, 1);
        // no disjoint edge pairs: the ratio is identically one
        let mut rng = seeded(11);
        for _ in 0..50 {
            let y: Vec<f64> = (0..2).map(|_| rng.gen_range(0.01..1.0)).collect();
            assert!((matching_ratio(&p3, &y) - 1.0).abs() < 1e-12);
        }

        // perfect matching on 6 vertices: three disjoint edges
        let pm = Graph::new(6, vec![(0, 1), (2, 3), (4, 5)]).unwrap();
        let r = matching_number(&pm, Method::Discrete, 3).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(matching_ratio(&pm, &[1.0, 1.0, 1.0]), 3.0);
    }

    #[test]
    fn cheeger_vertex_variants_on_p3() {
        let p3 = Graph::path(3);
        let ver = cheeger(&p3, CheegerVariant::VertexVer).unwrap();
        assert_eq!(ver.value, 2.0);
        assert_eq!(ver.optimizer, vec![0]);
        assert_eq!(cheeger(&p3, CheegerVariant::VertexExt).unwrap().value, 1.0);
        assert_eq!(cheeger(&p3, CheegerVariant::VertexInt).unwrap().value, 1.0);
    }

    #[test]
    fn cheeger_dirichlet_p3_center_interior() {
        let g = Graph::path(3).with_interior(vec![1]).unwrap();
        let r = cheeger(&g, CheegerVariant::Dirichlet).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.optimizer, vec![1]);
        // the continuous form at the indicator reproduces the constant
        assert_eq!(r.ratio_at(&r.indicator()), Some(1.0));
    }

    #[test]
    fn cheeger_dirichlet_disconnected_interior_is_reported() {
        // P5 with the two endpoints as interior: they are not connected
        // inside the interior, which is legal but flagged
        let g = Graph::path(5).with_interior(vec![0, 4]).unwrap();
        let r = cheeger(&g, CheegerVariant::Dirichlet).unwrap();
        assert!(r.warning.is_some());
        assert_eq!(r.value, 1.0); // each endpoint: one boundary edge over degree one
    }

    #[test]
    fn cheeger_to_problem_recovers_the_constant() {
        let g = Graph::path(4);
        let r = cheeger(&g, CheegerVariant::Classic).unwrap();
        let prob = r.to_problem(r.indicator());
        let run = crate::solvers::mixed_ipsd(
            &prob,
            &crate::solvers::SolverConfig::default(),
            crate::solvers::IpsdVariant::Normalized,
        )
        .unwrap();
        assert!((run.value - r.value).abs() <= 1e-9);
    }

    #[test]
    fn cheeger_classic_vs_multiplicative() {
        let p3 = Graph::path(3);
        assert_eq!(cheeger(&p3, CheegerVariant::Classic).unwrap().value, 1.0);
        let m = cheeger(&p3, CheegerVariant::Multiplicative).unwrap();
        assert_eq!(m.value, 0.5); // cut({0}) / (1 * 2)
        let ip = cheeger(&p3, CheegerVariant::IsoperimetricProfile(1)).unwrap();
        assert_eq!(ip.value, 1.0);
    }

    #[test]
    fn cheeger_like_examples() {
        let r = cheeger_like(&Graph::path(3), 500, 42).unwrap();
        assert_eq!(r.value, 1.5);
        assert_eq!(r.continuous_at_indicator, 1.5);
        assert!(r.random_best <= 1.5 + 1e-9);
        assert_eq!(
            cheeger_like(&Graph::complete(3), 100, 1).unwrap().value,
            1.0
        );
        let star = Graph::star(3);
        assert!((cheeger_like(&star, 100, 1).unwrap().value - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn poincare_sandwich_small_graphs() {
        for g in [Graph::path(3), Graph::path(2), Graph::complete(4)] {
            let rep = poincare_profile_check(&g, 300, 42).unwrap();
            assert!(rep.holds, "{rep:?}");
        }
        let p3 = poincare_profile_check(&Graph::path(3), 300, 42).unwrap();
        assert_eq!(p3.lower, 0.5);
        assert_eq!(p3.upper, 2.0);
    }

    #[test]
    fn vertex_cover_examples() {
        let ground = GroundSet::new(3).unwrap();
        let card = DiscreteFunction::from_set_fn(ground, |m| m.count_ones() as f64);
        let p3 = Graph::path(3);
        let r = submodular_vertex_cover(&p3, &card).unwrap();
        assert_eq!(r.exact, 1.0);
        assert!(r.relaxation_value <= 1.0 + 1e-9);

        let k3 = Graph::complete(3);
        let r = submodular_vertex_cover(&k3, &card).unwrap();
        assert_eq!(r.exact, 2.0);
        assert!(r.relaxation_value <= 2.0 + 1e-9);
        // the all-half point is feasible with value 1.5
        let (_, closed) = functional_catalog("t1-cut", &k3).unwrap();
        let _ = closed;
        assert!(r.relaxation_value <= 1.5 + 1e-2);

        let empty = Graph::edgeless(3);
        let r = submodular_vertex_cover(&empty, &card).unwrap();
        assert_eq!(r.exact, 0.0);
    }

    #[test]
    fn multiway_partition_examples() {
        let p3 = Graph::path(3);
        let half_cut = p3.cut_function().scale(0.5);
        let r = multiway_partition(&p3, &half_cut, &[0, 2]).unwrap();
        assert_eq!(r.exact, 1.0);
        assert!(r.relaxation_value <= 1.0 + 1e-9);

        let full = multiway_partition(&p3, &half_cut, &[0]).unwrap();
        assert_eq!(full.exact, 0.0); // f(V) = cut(V)/2 = 0

        let ground = GroundSet::new(3).unwrap();
        let zero = DiscreteFunction::from_set_fn(ground, |_| 0.0);
        assert_eq!(multiway_partition(&p3, &zero, &[0, 2]).unwrap().exact, 0.0);

        assert!(matches!(
            multiway_partition(&p3, &half_cut, &[0, 0]),
            Err(GraphError::DuplicateTerminal(0))
        ));
    }

    #[test]
    fn k_independence_examples() {
        let p4 = Graph::path(4);
        let r = k_independence_number(&p4, 2).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.quadratic_at_optimizer, 2.0);
        assert_eq!(r.extension_at_optimizer, 2.0);

        // k = 1 reduces to the independence number
        let k3 = Graph::complete(3);
        assert_eq!(k_independence_number(&k3, 1).unwrap().value, 1);
        assert_eq!(k_independence_number(&k3, 3).unwrap().value, 1);
    }

    #[test]
    fn perfect_graph_cross_check() {
        // bipartite and complete graphs are perfect
        for g in [
            Graph::complete_bipartite(2, 3),
            Graph::complete_bipartite(3, 3),
            Graph::complete(4),
            Graph::complete(5),
            Graph::path(4),
        ] {
            let gamma = chromatic_number(&g, Method::Discrete, 1).unwrap().value;
            let omega = clique_number(&g).unwrap();
            assert_eq!(gamma, omega);
        }
    }

    #[test]
    fn clique_cover_equals_chromatic_of_complement() {
        for g in [
            Graph::path(4),
            Graph::cycle(5),
            Graph::star(3),
            Graph::diamond(),
            Graph::bull(),
        ] {
            let direct = clique_cover_number(&g).unwrap();
            let via_complement = chromatic_number(&g.complement(), Method::Discrete, 1)
                .unwrap()
                .value;
            assert_eq!(direct, via_complement);
        }
    }

    /// The per-class arrangement of the chromatic objective agrees with
    /// the norm-aggregated form at indicator colorings and at random
    /// points (they are the same function arranged differently).
    #[test]
    fn chromatic_objective_arrangements_agree() {
        let mut rng = seeded(55);
        for g in [Graph::path(3), Graph::complete(3), Graph::cycle(4)] {
            let n = g.n();
            let gamma = chromatic_number(&g, Method::Discrete, 1).unwrap();
            let ind = coloring_matrix(n, &gamma.coloring);
            let a = chromatic_objective(&g, &ind);
            let b = chromatic_objective_per_class(&g, &ind);
            assert!((a - b).abs() < 1e-12, "indicator: {a} vs {b}");
            for _ in 0..200 {
                let x = unit_cube_vec(&mut rng, n * n);
                let a = chromatic_objective(&g, &x);
                let b = chromatic_objective_per_class(&g, &x);
                assert!(
                    (a - b).abs() <= 1e-10 * (1.0 + a.abs()),
                    "random: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn corpus_is_thirty_connected_graphs() {
        let c = corpus();
        assert_eq!(c.len(), 30);
        for (name, g) in &c {
            assert!(g.is_connected(), "{name} is disconnected");
            assert!(g.n() >= 2);
        }
    }

    #[test]
    fn graph_validation_errors() {
        assert!(matches!(
            Graph::new(3, vec![(0, 0)]),
            Err(GraphError::LoopEdge(0))
        ));
        assert!(matches!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 5)]),
            Err(GraphError::VertexOutOfRange(5, 2))
        ));
    }

    #[test]
    fn boundary_derivation() {
        let g = Graph::path(3).with_interior(vec![1]).unwrap();
        let b = g.boundary().unwrap();
        assert_eq!(b.delta, vec![0, 2]);
        assert_eq!(b.p, vec![2]);
        assert_eq!(b.d, vec![2]);
    }
}
