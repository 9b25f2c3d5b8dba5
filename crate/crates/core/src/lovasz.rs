//! The Lovász extension and its disjoint-pair and k-way variants, Clarke
//! subgradients for the 1-way modes, and randomized checks of the
//! structural identities the extensions satisfy.
//!
//! Evaluation uses the sorted-sum form for 1-way modes and exact
//! breakpoint integration for k-way modes. Sorting breaks ties by
//! ascending value then ascending index; threshold sets use strict `>`
//! with no epsilon. Both choices pin down every piecewise-linear piece,
//! which makes subgradients deterministic.

use crate::rng::{seeded, unit_cube_vec, SeededRng};
use crate::setfun::{DiscreteFunction, GroundSet, Mode, SetArg};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LovaszError {
    #[error("point has {got} entries, mode {mode:?} over n = {n} expects {want}")]
    ShapeMismatch {
        mode: Mode,
        n: usize,
        want: usize,
        got: usize,
    },
    #[error("point contains a non-finite entry")]
    NonFinite,
    #[error("subgradients are only provided for Set and DisjointPair modes, got {0:?}")]
    KWayUnsupported(Mode),
    #[error("Möbius form is limited to Set mode with n <= 20, got {0:?}")]
    MobiusUnsupported(Mode),
}

pub type Result<T> = std::result::Result<T, LovaszError>;

/// Dense real vector in `R^n` (1-way modes) or `R^{k x n}` row-major
/// (k-way modes).
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub data: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
}

impl Point {
    pub fn vector(data: Vec<f64>) -> Self {
        let cols = data.len();
        Point {
            data,
            rows: 1,
            cols,
        }
    }

    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Point { data, rows, cols }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

pub type SubgradientVector = Vec<f64>;

fn check_shape(f: &DiscreteFunction, x: &[f64]) -> Result<()> {
    let want = f.mode().k() * f.n();
    if x.len() != want {
        return Err(LovaszError::ShapeMismatch {
            mode: f.mode(),
            n: f.n(),
            want,
            got: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(LovaszError::NonFinite);
    }
    Ok(())
}

/// Ascending sort of indices by `(key, index)`.
fn sorted_order(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).unwrap().then(a.cmp(&b)));
    order
}

fn eval_set(f: &DiscreteFunction, x: &[f64]) -> f64 {
    let n = f.n();
    let order = sorted_order(x);
    // suffix_mask[i] = indices order[i..]
    let mut suffix = vec![0u32; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] | 1 << order[i];
    }
    let mut total = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let xi = x[order[i]];
        if xi != prev {
            total += (xi - prev) * f.value_unchecked(&SetArg::set(suffix[i]));
        }
        prev = xi;
    }
    total
}

fn pair_split(x: &[f64], indices_mask: u32) -> SetArg {
    let mut plus = 0u32;
    let mut minus = 0u32;
    for j in 0..x.len() {
        if indices_mask >> j & 1 == 1 {
            if x[j] > 0.0 {
                plus |= 1 << j;
            } else if x[j] < 0.0 {
                minus |= 1 << j;
            }
        }
    }
    SetArg::pair(plus, minus)
}

fn eval_pair(f: &DiscreteFunction, x: &[f64]) -> f64 {
    let n = f.n();
    let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let order = sorted_order(&abs);
    let mut suffix = vec![0u32; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] | 1 << order[i];
    }
    let mut total = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let di = abs[order[i]];
        if di != prev {
            total += (di - prev) * f.value_unchecked(&pair_split(x, suffix[i]));
        }
        prev = di;
    }
    total
}

fn eval_kway_set(f: &DiscreteFunction, x: &[f64], k: usize) -> f64 {
    let n = f.n();
    let universe = f.ground().universe();
    let mut levels: Vec<f64> = x.to_vec();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    let sets_at = |t: f64| -> SetArg {
        let mut masks = vec![0u32; k];
        for (slot, mask) in masks.iter_mut().enumerate() {
            for j in 0..n {
                if x[slot * n + j] > t {
                    *mask |= 1 << j;
                }
            }
        }
        SetArg(masks)
    };
    let min_x = levels[0];
    let mut total = f.value_unchecked(&SetArg(vec![universe; k])) * min_x;
    for w in levels.windows(2) {
        total += (w[1] - w[0]) * f.value_unchecked(&sets_at(w[0]));
    }
    total
}

fn eval_kway_pair(f: &DiscreteFunction, x: &[f64], k: usize) -> f64 {
    let n = f.n();
    let mut levels: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    levels.push(0.0);
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    let sets_at = |t: f64| -> SetArg {
        let mut masks = vec![0u32; 2 * k];
        for slot in 0..k {
            for j in 0..n {
                let v = x[slot * n + j];
                if v > t {
                    masks[2 * slot] |= 1 << j;
                } else if -v > t {
                    masks[2 * slot + 1] |= 1 << j;
                }
            }
        }
        SetArg(masks)
    };
    let mut total = 0.0;
    for w in levels.windows(2) {
        total += (w[1] - w[0]) * f.value_unchecked(&sets_at(w[0]));
    }
    total
}

/// Evaluates the Lovász extension of `f` at `x` (length `k * n`,
/// row-major for k-way modes).
pub fn lovasz_eval(f: &DiscreteFunction, x: &[f64]) -> Result<f64> {
    check_shape(f, x)?;
    Ok(match f.mode() {
        Mode::Set => eval_set(f, x),
        Mode::DisjointPair => eval_pair(f, x),
        Mode::KWaySet(k) => eval_kway_set(f, x, k),
        Mode::KWayDisjointPair(k) => eval_kway_pair(f, x, k),
    })
}

pub fn lovasz_eval_point(f: &DiscreteFunction, x: &Point) -> Result<f64> {
    lovasz_eval(f, &x.data)
}

/// Integral-form evaluation (breakpoint integration) for the 1-way modes;
/// an independent route used to cross-check the sorted-sum form.
pub fn lovasz_eval_integral(f: &DiscreteFunction, x: &[f64]) -> Result<f64> {
    check_shape(f, x)?;
    Ok(match f.mode() {
        Mode::Set => eval_kway_set(f, x, 1),
        Mode::DisjointPair => eval_kway_pair(f, x, 1),
        Mode::KWaySet(k) => eval_kway_set(f, x, k),
        Mode::KWayDisjointPair(k) => eval_kway_pair(f, x, k),
    })
}

/// Möbius-transform form: `sum_A sum_{B subset A} (-1)^{#A-#B} f(B) min_{i in A} x_i`
/// over nonempty `A`. Assumes `f(empty) = 0`; exponential in `n`.
pub fn lovasz_eval_mobius(f: &DiscreteFunction, x: &[f64]) -> Result<f64> {
    if f.mode() != Mode::Set || f.n() > 20 {
        return Err(LovaszError::MobiusUnsupported(f.mode()));
    }
    check_shape(f, x)?;
    let u = f.ground().universe();
    let mut total = 0.0;
    for a in 1..=u {
        let min_a = (0..f.n())
            .filter(|j| a >> j & 1 == 1)
            .map(|j| x[j])
            .fold(f64::INFINITY, f64::min);
        let mut coeff = 0.0;
        let mut b = 0u32;
        loop {
            let sign = if (a.count_ones() - b.count_ones()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            coeff += sign * f.value_unchecked(&SetArg::set(b));
            if b == a {
                break;
            }
            b = b.wrapping_sub(a) & a;
        }
        total += coeff * min_a;
    }
    Ok(total)
}

/// Gradient of the linear piece selected at `x` by the declared tie-break
/// (sort by value for Set mode, by absolute value for DisjointPair mode,
/// ties by ascending index; zero entries count as positive).
///
/// The result satisfies `lovasz_eval(f, x) = <g, x>`.
pub fn lovasz_subgradient(f: &DiscreteFunction, x: &[f64]) -> Result<SubgradientVector> {
    check_shape(f, x)?;
    let n = f.n();
    match f.mode() {
        Mode::Set => {
            let order = sorted_order(x);
            let mut suffix = vec![0u32; n + 1];
            for i in (0..n).rev() {
                suffix[i] = suffix[i + 1] | 1 << order[i];
            }
            let mut g = vec![0.0; n];
            for i in 0..n {
                let outer = f.value_unchecked(&SetArg::set(suffix[i]));
                let inner = if i + 1 < n {
                    f.value_unchecked(&SetArg::set(suffix[i + 1]))
                } else {
                    0.0 // the extension never reads f at the empty set
                };
                g[order[i]] = outer - inner;
            }
            Ok(g)
        }
        Mode::DisjointPair => {
            let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
            let order = sorted_order(&abs);
            let mut suffix = vec![0u32; n + 1];
            for i in (0..n).rev() {
                suffix[i] = suffix[i + 1] | 1 << order[i];
            }
            // Piece-consistent split: zero entries are treated as positive.
            let split = |mask: u32| -> SetArg {
                let mut plus = 0u32;
                let mut minus = 0u32;
                for j in 0..n {
                    if mask >> j & 1 == 1 {
                        if x[j] < 0.0 {
                            minus |= 1 << j;
                        } else {
                            plus |= 1 << j;
                        }
                    }
                }
                SetArg::pair(plus, minus)
            };
            let mut g = vec![0.0; n];
            for i in 0..n {
                let outer = f.value_unchecked(&split(suffix[i]));
                let inner = if i + 1 < n {
                    f.value_unchecked(&split(suffix[i + 1]))
                } else {
                    0.0
                };
                let sign = if x[order[i]] < 0.0 { -1.0 } else { 1.0 };
                g[order[i]] = sign * (outer - inner);
            }
            Ok(g)
        }
        mode => Err(LovaszError::KWayUnsupported(mode)),
    }
}

// ---------------------------------------------------------------------------
// Structural property suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub results: Vec<PropertyResult>,
}

impl StructuralReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failing(&self) -> Vec<&PropertyResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }
}

struct PropertyRun {
    name: String,
    trials: usize,
    witness: Option<String>,
}

impl PropertyRun {
    fn new(name: &str) -> Self {
        PropertyRun {
            name: name.to_string(),
            trials: 0,
            witness: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(describe());
        }
    }

    fn finish(self, out: &mut Vec<PropertyResult>) {
        out.push(PropertyResult {
            name: self.name,
            passed: self.witness.is_none(),
            trials: self.trials,
            witness: self.witness,
        });
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn random_nonneg_set_fn(rng: &mut SeededRng, ground: GroundSet) -> DiscreteFunction {
    let mut vals = std::collections::HashMap::new();
    for mask in 0..=ground.universe() {
        vals.insert(
            mask,
            if mask == 0 {
                0.0
            } else {
                rng.gen_range(0.0..2.0)
            },
        );
    }
    DiscreteFunction::from_set_fn(ground, |m| vals[&m])
}

fn random_symmetric_nonneg_set_fn(rng: &mut SeededRng, ground: GroundSet) -> DiscreteFunction {
    let u = ground.universe();
    let mut vals = std::collections::HashMap::new();
    for mask in 0..=u {
        let comp = u & !mask;
        if vals.contains_key(&mask) {
            continue;
        }
        let v = if mask == 0 || mask == u {
            0.0
        } else {
            rng.gen_range(0.0..2.0)
        };
        vals.insert(mask, v);
        vals.insert(comp, v);
    }
    DiscreteFunction::from_set_fn(ground, |m| vals[&m])
}

fn positive_part(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.max(0.0)).collect()
}

fn negative_part(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| (-v).max(0.0)).collect()
}

/// Randomized verification of the structural identities of the extension:
/// positive homogeneity, the Set-mode translation identity, comonotonic and
/// absolutely-comonotonic additivity, explicit Lipschitz bounds
/// (DisjointPair mode, nonnegative tables), the five set-pair/original
/// relations, and separable summation for k-way sums. The relation and
/// summation checks draw their own random auxiliary functions over the
/// same ground set.
pub fn check_structural(
    f: &DiscreteFunction,
    trials: usize,
    seed: u64,
) -> Result<StructuralReport> {
    check_structural_with(f, None, trials, seed)
}

/// [`check_structural`] with an explicitly supplied `h` for the set-pair /
/// original relation checks (`h` must be a nonnegative Set-mode function
/// over the same ground set with `h(empty) = 0`; the symmetric relation
/// draws its own symmetric function).
pub fn check_structural_with(
    f: &DiscreteFunction,
    supplied_h: Option<&DiscreteFunction>,
    trials: usize,
    seed: u64,
) -> Result<StructuralReport> {
    let mut rng = seeded(seed);
    let n = f.n();
    let dim = f.mode().k() * n;
    let mut results = Vec::new();
    let tol = 1e-9;

    // positive homogeneity, all modes
    let mut homog = PropertyRun::new("positive-homogeneity");
    for _ in 0..trials {
        let x = unit_cube_vec(&mut rng, dim);
        let t = rng.gen_range(0.0..3.0);
        let lhs = lovasz_eval(f, &x.iter().map(|v| t * v).collect::<Vec<_>>())?;
        let rhs = t * lovasz_eval(f, &x)?;
        homog.check(rel_close(lhs, rhs, tol), || {
            format!("f^L(t x) = {lhs} vs t f^L(x) = {rhs} at t = {t}, x = {x:?}")
        });
    }
    homog.finish(&mut results);

    if f.mode() == Mode::Set {
        let mut translation = PropertyRun::new("translation");
        let f_v = f.value_unchecked(&SetArg::set(f.ground().universe()));
        for _ in 0..trials {
            let x = unit_cube_vec(&mut rng, n);
            let t = rng.gen_range(-2.0..2.0);
            let shifted: Vec<f64> = x.iter().map(|v| v + t).collect();
            let lhs = lovasz_eval(f, &shifted)?;
            let rhs = lovasz_eval(f, &x)? + t * f_v;
            translation.check(rel_close(lhs, rhs, tol), || {
                format!("f^L(x + t1) = {lhs} vs f^L(x) + t f(V) = {rhs} at t = {t}")
            });
        }
        translation.finish(&mut results);

        let mut comono = PropertyRun::new("comonotonic-additivity");
        for _ in 0..trials {
            let base = unit_cube_vec(&mut rng, n);
            let order = sorted_order(&base);
            let mut sorted_y = unit_cube_vec(&mut rng, n);
            sorted_y.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut y = vec![0.0; n];
            for (rank, &idx) in order.iter().enumerate() {
                y[idx] = sorted_y[rank];
            }
            let sum: Vec<f64> = base.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lhs = lovasz_eval(f, &sum)?;
            let rhs = lovasz_eval(f, &base)? + lovasz_eval(f, &y)?;
            comono.check(rel_close(lhs, rhs, tol), || {
                format!(
                    "F(x+y) = {lhs} vs F(x)+F(y) = {rhs} for comonotonic x = {base:?}, y = {y:?}"
                )
            });
        }
        comono.finish(&mut results);

        // generic Lipschitz estimate: each piece gradient entry is a
        // difference of two table values
        let mut max_abs = 0.0_f64;
        crate::setfun::for_each_arg(f.ground(), Mode::Set, |arg| {
            max_abs = max_abs.max(f.value_unchecked(arg).abs());
        });
        let mut lip = PropertyRun::new("lipschitz-l1");
        for _ in 0..trials {
            let x = unit_cube_vec(&mut rng, n);
            let y = unit_cube_vec(&mut rng, n);
            let lhs = (lovasz_eval(f, &x)? - lovasz_eval(f, &y)?).abs();
            let dist: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
            lip.check(lhs <= 2.0 * max_abs * dist + tol, || {
                format!(
                    "|f^L(x)-f^L(y)| = {lhs} > 2 max|f| ||x-y||_1 = {}",
                    2.0 * max_abs * dist
                )
            });
        }
        lip.finish(&mut results);
    }

    if f.mode() == Mode::DisjointPair {
        let mut abs_comono = PropertyRun::new("absolutely-comonotonic-additivity");
        for _ in 0..trials {
            let signs: Vec<f64> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            let a = crate::rng::nonneg_cube_vec(&mut rng, n);
            let order = sorted_order(&a);
            let mut sorted_b = crate::rng::nonneg_cube_vec(&mut rng, n);
            sorted_b.sort_by(|u, v| u.partial_cmp(v).unwrap());
            let mut b = vec![0.0; n];
            for (rank, &idx) in order.iter().enumerate() {
                b[idx] = sorted_b[rank];
            }
            let x: Vec<f64> = a.iter().zip(&signs).map(|(m, s)| m * s).collect();
            let y: Vec<f64> = b.iter().zip(&signs).map(|(m, s)| m * s).collect();
            let sum: Vec<f64> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
            let lhs = lovasz_eval(f, &sum)?;
            let rhs = lovasz_eval(f, &x)? + lovasz_eval(f, &y)?;
            abs_comono.check(rel_close(lhs, rhs, tol), || {
                format!("F(x+y) = {lhs} vs F(x)+F(y) = {rhs} for absolutely comonotonic pair")
            });
        }
        abs_comono.finish(&mut results);

        // explicit Lipschitz bounds; constants require a nonnegative table
        let mut max_f = f64::NEG_INFINITY;
        let mut min_f = f64::INFINITY;
        let mut sum_f = 0.0;
        crate::setfun::for_each_arg(f.ground(), Mode::DisjointPair, |arg| {
            let v = f.value_unchecked(arg);
            max_f = max_f.max(v);
            min_f = min_f.min(v);
            sum_f += v;
        });
        if min_f >= 0.0 {
            let mut lip1 = PropertyRun::new("lipschitz-l1");
            let mut lipinf = PropertyRun::new("lipschitz-linf");
            for _ in 0..trials {
                let x = unit_cube_vec(&mut rng, n);
                let y = unit_cube_vec(&mut rng, n);
                let diff = (lovasz_eval(f, &x)? - lovasz_eval(f, &y)?).abs();
                let d1: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
                let dinf = x
                    .iter()
                    .zip(&y)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                lip1.check(diff <= 2.0 * max_f * d1 + tol, || {
                    format!("{diff} > 2 max f * ||x-y||_1 = {}", 2.0 * max_f * d1)
                });
                lipinf.check(diff <= 2.0 * sum_f * dinf + tol, || {
                    format!("{diff} > 2 sum f * ||x-y||_inf = {}", 2.0 * sum_f * dinf)
                });
            }
            lip1.finish(&mut results);
            lipinf.finish(&mut results);
        }
    }

    // set-pair <-> original relations on fresh random nonnegative h
    if f.mode() == Mode::Set || f.mode() == Mode::DisjointPair {
        let ground = f.ground();
        let relation_trials = trials.max(1);
        let mut rel_runs: Vec<PropertyRun> = [
            "setpair-original-a",
            "setpair-original-b",
            "setpair-original-c",
            "setpair-original-d",
            "setpair-original-e",
        ]
        .iter()
        .map(|s| PropertyRun::new(s))
        .collect();
        for _ in 0..relation_trials {
            let h = match supplied_h {
                Some(h) => h.clone(),
                None => random_nonneg_set_fn(&mut rng, ground),
            };
            let h_sym = random_symmetric_nonneg_set_fn(&mut rng, ground);
            let u = ground.universe();
            let h_v = h.value_unchecked(&SetArg::set(u));

            let fa = DiscreteFunction::from_pair_fn(ground, |a, b| {
                h.value_unchecked(&SetArg::set(a)) + h.value_unchecked(&SetArg::set(u & !b)) - h_v
            });
            let fb = DiscreteFunction::from_pair_fn(ground, |a, b| {
                h_sym.value_unchecked(&SetArg::set(a)) + h_sym.value_unchecked(&SetArg::set(b))
            });
            let fc =
                DiscreteFunction::from_pair_fn(ground, |a, _| h.value_unchecked(&SetArg::set(a)));
            let fd = DiscreteFunction::from_pair_fn(ground, |a, b| {
                h.value_unchecked(&SetArg::set(a | b))
            });
            let fe = DiscreteFunction::from_pair_fn(ground, |a, b| {
                h.value_unchecked(&SetArg::set(a)) - h.value_unchecked(&SetArg::set(b))
            });

            let x = unit_cube_vec(&mut rng, n);
            let xp = positive_part(&x);
            let xm = negative_part(&x);
            let x_nonneg = crate::rng::nonneg_cube_vec(&mut rng, n);
            let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();

            let cases: [(usize, f64, f64); 5] = [
                (0, lovasz_eval(&fa, &x)?, lovasz_eval(&h, &x)?),
                (1, lovasz_eval(&fb, &x)?, lovasz_eval(&h_sym, &x)?),
                (2, lovasz_eval(&fc, &x_nonneg)?, lovasz_eval(&h, &x_nonneg)?),
                (3, lovasz_eval(&fd, &x)?, lovasz_eval(&h, &abs)?),
                (
                    4,
                    lovasz_eval(&fe, &x)?,
                    lovasz_eval(&h, &xp)? - lovasz_eval(&h, &xm)?,
                ),
            ];
            for (idx, lhs, rhs) in cases {
                rel_runs[idx].check(rel_close(lhs, rhs, tol), || {
                    format!(
                        "relation {}: pair extension = {lhs} vs original form = {rhs}",
                        idx
                    )
                });
            }
        }
        for run in rel_runs {
            run.finish(&mut results);
        }

        // separable summation for the two k-way modes (k = 2); the summed
        // tables grow as 9^n, so this runs on a capped ground set
        let sep_trials = trials.max(1);
        let sep_ground = GroundSet::new(n.min(4)).unwrap();
        let sep_n = sep_ground.n();
        let mut sep_set = PropertyRun::new("separable-summation-kway");
        let mut sep_pair = PropertyRun::new("separable-summation-kway-pair");
        for _ in 0..sep_trials {
            let parts: Vec<DiscreteFunction> = (0..2)
                .map(|_| random_nonneg_set_fn(&mut rng, sep_ground))
                .collect();
            let sum_fn = {
                let p0 = parts[0].clone();
                let p1 = parts[1].clone();
                DiscreteFunction::from_kway_fn(sep_ground, 2, move |masks| {
                    p0.value_unchecked(&SetArg::set(masks[0]))
                        + p1.value_unchecked(&SetArg::set(masks[1]))
                })
            };
            let x = unit_cube_vec(&mut rng, 2 * sep_n);
            let lhs = lovasz_eval(&sum_fn, &x)?;
            let rhs = lovasz_eval(&parts[0], &x[..sep_n])? + lovasz_eval(&parts[1], &x[sep_n..])?;
            sep_set.check(rel_close(lhs, rhs, tol), || {
                format!("k-way sum extension = {lhs} vs sum of extensions = {rhs}")
            });

            let pair_parts: Vec<DiscreteFunction> = (0..2)
                .map(|_| {
                    let h = random_nonneg_set_fn(&mut rng, sep_ground);
                    DiscreteFunction::from_pair_fn(sep_ground, move |a, b| {
                        h.value_unchecked(&SetArg::set(a))
                            + 0.5 * h.value_unchecked(&SetArg::set(b))
                    })
                })
                .collect();
            let sum_pair_fn = {
                let p0 = pair_parts[0].clone();
                let p1 = pair_parts[1].clone();
                let mut out = DiscreteFunction::new(sep_ground, Mode::KWayDisjointPair(2));
                crate::setfun::for_each_arg(sep_ground, Mode::KWayDisjointPair(2), |arg| {
                    let v = p0.value_unchecked(&SetArg::pair(arg.0[0], arg.0[1]))
                        + p1.value_unchecked(&SetArg::pair(arg.0[2], arg.0[3]));
                    out.insert(arg.clone(), v).unwrap();
                });
                out
            };
            let lhs = lovasz_eval(&sum_pair_fn, &x)?;
            let rhs = lovasz_eval(&pair_parts[0], &x[..sep_n])?
                + lovasz_eval(&pair_parts[1], &x[sep_n..])?;
            sep_pair.check(rel_close(lhs, rhs, tol), || {
                format!("k-way pair sum extension = {lhs} vs sum of pair extensions = {rhs}")
            });
        }
        sep_set.finish(&mut results);
        sep_pair.finish(&mut results);
    }

    Ok(StructuralReport { results })
}
