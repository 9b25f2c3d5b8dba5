//! Set functions over `P(V)`, `P2(V)`, `P(V)^k`, `P2(V)^k` with exact
//! enumeration oracles.
//!
//! Subsets of the ground set `V = {0, .., n-1}` are bit-masks (`u32`, so
//! `n <= 30` wherever enumeration happens). An argument of a discrete
//! function is a short vector of masks: one mask in `Set` mode, an ordered
//! disjoint pair `(A, B)` in `DisjointPair` mode, `k` masks in `KWaySet`
//! mode and `2k` masks (`A_1, B_1, .., A_k, B_k`) in `KWayDisjointPair`
//! mode. Enumeration order is always by ascending mask vector, which fixes
//! every tie-break in the crate.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub const MAX_ENUM_ELEMENTS: usize = 30;
pub const MAX_ENUM_CANDIDATES: u64 = 1 << 26;

#[derive(Debug, Error)]
pub enum SetFunError {
    #[error("ground set must be nonempty, got n = {0}")]
    EmptyGround(usize),
    #[error("ground set too large for enumeration: n = {0} > {MAX_ENUM_ELEMENTS}")]
    TooManyElements(usize),
    #[error("too many candidate arguments to enumerate: {0} > {MAX_ENUM_CANDIDATES}")]
    TooManyCandidates(u64),
    #[error("argument has {got} masks, mode {mode:?} expects {want}")]
    ArityMismatch { mode: Mode, want: usize, got: usize },
    #[error("mask {mask:#x} not contained in ground set of {n} elements")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("pair slot {slot} overlaps: A = {a:#x}, B = {b:#x}")]
    OverlappingPair { slot: usize, a: u32, b: u32 },
    #[error("modes or ground sets of the two functions differ")]
    IncompatibleFunctions,
    #[error("no value stored for argument {0:?} and function is in strict mode")]
    MissingEntry(SetArg),
    #[error("feasible set (family intersected with supp g) is empty")]
    EmptyFeasible,
    #[error("operation requires Set mode, got {0:?}")]
    NotSetMode(Mode),
    #[error("denominator must be nonnegative, g({arg:?}) = {value}")]
    NegativeDenominator { arg: SetArg, value: f64 },
}

pub type Result<T> = std::result::Result<T, SetFunError>;

/// `V = {0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SetFunError::EmptyGround(n));
        }
        if n > MAX_ENUM_ELEMENTS {
            return Err(SetFunError::TooManyElements(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bit-mask of the full ground set.
    pub fn universe(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn contains_mask(&self, mask: u32) -> bool {
        mask & !self.universe() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Set,
    DisjointPair,
    KWaySet(usize),
    KWayDisjointPair(usize),
}

impl Mode {
    /// Number of masks in one argument.
    pub fn arity(&self) -> usize {
        match self {
            Mode::Set => 1,
            Mode::DisjointPair => 2,
            Mode::KWaySet(k) => *k,
            Mode::KWayDisjointPair(k) => 2 * k,
        }
    }

    pub fn is_pair_like(&self) -> bool {
        matches!(self, Mode::DisjointPair | Mode::KWayDisjointPair(_))
    }

    pub fn k(&self) -> usize {
        match self {
            Mode::Set | Mode::DisjointPair => 1,
            Mode::KWaySet(k) | Mode::KWayDisjointPair(k) => *k,
        }
    }
}

/// One argument of a discrete function: a vector of subset masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetArg(pub Vec<u32>);

impl SetArg {
    pub fn set(mask: u32) -> Self {
        SetArg(vec![mask])
    }

    pub fn pair(a: u32, b: u32) -> Self {
        SetArg(vec![a, b])
    }

    pub fn masks(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty_arg(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }
}

impl fmt::Debug for SetArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|m| {
                let elems: Vec<String> = (0..32)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| i.to_string())
                    .collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Total map from mode arguments to reals, backed by a table with a default
/// for unspecified entries. `strict` turns missing entries into errors
/// instead.
#[derive(Clone)]
pub struct DiscreteFunction {
    ground: GroundSet,
    mode: Mode,
    values: HashMap<SetArg, f64>,
    default: f64,
    strict: bool,
}

impl fmt::Debug for DiscreteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscreteFunction")
            .field("n", &self.ground.n)
            .field("mode", &self.mode)
            .field("entries", &self.values.len())
            .field("default", &self.default)
            .finish()
    }
}

impl DiscreteFunction {
    pub fn new(ground: GroundSet, mode: Mode) -> Self {
        DiscreteFunction {
            ground,
            mode,
            values: HashMap::new(),
            default: 0.0,
            strict: false,
        }
    }

    pub fn with_default(mut self, default: f64) -> Self {
        self.default = default;
        self
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn default_value(&self) -> f64 {
        self.default
    }

    pub fn insert(&mut self, arg: SetArg, value: f64) -> Result<()> {
        self.validate_arg(&arg)?;
        self.values.insert(arg, value);
        Ok(())
    }

    /// Builds a Set-mode function from a closure over masks.
    pub fn from_set_fn(ground: GroundSet, mut f: impl FnMut(u32) -> f64) -> Self {
        let mut out = DiscreteFunction::new(ground, Mode::Set);
        for mask in 0..=ground.universe() {
            out.values.insert(SetArg::set(mask), f(mask));
        }
        out
    }

    /// Builds a DisjointPair-mode function from a closure over `(A, B)`.
    pub fn from_pair_fn(ground: GroundSet, mut f: impl FnMut(u32, u32) -> f64) -> Self {
        let mut out = DiscreteFunction::new(ground, Mode::DisjointPair);
        for a in 0..=ground.universe() {
            let comp = ground.universe() & !a;
            let mut b = 0u32;
            loop {
                out.values.insert(SetArg::pair(a, b), f(a, b));
                if b == comp {
                    break;
                }
                b = b.wrapping_sub(comp) & comp;
            }
        }
        out
    }

    /// Builds a k-way function (Set slots) from a closure over mask tuples.
    /// Only suitable for small `k * n`.
    pub fn from_kway_fn(ground: GroundSet, k: usize, mut f: impl FnMut(&[u32]) -> f64) -> Self {
        let mut out = DiscreteFunction::new(ground, Mode::KWaySet(k));
        let mut masks = vec![0u32; k];
        loop {
            out.values.insert(SetArg(masks.clone()), f(&masks));
            if !next_tuple(&mut masks, ground.universe()) {
                break;
            }
        }
        out
    }

    pub fn validate_arg(&self, arg: &SetArg) -> Result<()> {
        let want = self.mode.arity();
        if arg.0.len() != want {
            return Err(SetFunError::ArityMismatch {
                mode: self.mode,
                want,
                got: arg.0.len(),
            });
        }
        for &m in &arg.0 {
            if !self.ground.contains_mask(m) {
                return Err(SetFunError::MaskOutOfRange {
                    mask: m,
                    n: self.ground.n,
                });
            }
        }
        if self.mode.is_pair_like() {
            for slot in 0..arg.0.len() / 2 {
                let (a, b) = (arg.0[2 * slot], arg.0[2 * slot + 1]);
                if a & b != 0 {
                    return Err(SetFunError::OverlappingPair { slot, a, b });
                }
            }
        }
        Ok(())
    }

    /// Stored value or default; errors on malformed arguments and, in strict
    /// mode, on unspecified entries.
    pub fn evaluate(&self, arg: &SetArg) -> Result<f64> {
        self.validate_arg(arg)?;
        match self.values.get(arg) {
            Some(&v) => Ok(v),
            None if self.strict => Err(SetFunError::MissingEntry(arg.clone())),
            None => Ok(self.default),
        }
    }

    /// Table lookup without validation; hot path for the extensions, which
    /// construct their arguments internally.
    pub(crate) fn value_unchecked(&self, arg: &SetArg) -> f64 {
        self.values.get(arg).copied().unwrap_or(self.default)
    }

    pub fn scale(&self, lambda: f64) -> DiscreteFunction {
        let mut out = self.clone();
        out.default *= lambda;
        for v in out.values.values_mut() {
            *v *= lambda;
        }
        out
    }

    pub fn add(&self, other: &DiscreteFunction) -> Result<DiscreteFunction> {
        if self.mode != other.mode || self.ground != other.ground {
            return Err(SetFunError::IncompatibleFunctions);
        }
        let mut out = self.clone();
        out.default += other.default;
        for (k, v) in &mut out.values {
            *v += other.values.get(k).copied().unwrap_or(other.default);
        }
        for (k, v) in &other.values {
            out.values.entry(k.clone()).or_insert(self.default + *v);
        }
        Ok(out)
    }

    /// Number of candidate arguments of this mode over the ground set.
    pub fn candidate_count(&self) -> u64 {
        mode_candidate_count(self.mode, self.ground.n)
    }
}

fn mode_candidate_count(mode: Mode, n: usize) -> u64 {
    let two = 2u64.saturating_pow(n as u32);
    let three = 3u64.saturating_pow(n as u32);
    match mode {
        Mode::Set => two,
        Mode::DisjointPair => three,
        Mode::KWaySet(k) => two.saturating_pow(k as u32),
        Mode::KWayDisjointPair(k) => three.saturating_pow(k as u32),
    }
}

/// Advances `masks` as a little-endian counter over `[0, universe]^k`;
/// returns false after the last tuple. Combined with ascending submask
/// iteration this realizes the ascending lexicographic order on arguments.
fn next_tuple(masks: &mut [u32], universe: u32) -> bool {
    for i in (0..masks.len()).rev() {
        if masks[i] < universe {
            masks[i] += 1;
            for m in masks.iter_mut().skip(i + 1) {
                *m = 0;
            }
            return true;
        }
    }
    false
}

/// Advances a `2k`-mask vector of disjoint pairs in ascending lexicographic
/// order. Each slot `(A_i, B_i)` runs over disjoint pairs with `A` outer
/// and `B` inner counter.
fn next_pair_tuple(masks: &mut [u32], universe: u32) -> bool {
    let slots = masks.len() / 2;
    for s in (0..slots).rev() {
        let a = masks[2 * s];
        let b = masks[2 * s + 1];
        let comp = universe & !a;
        if b != comp {
            masks[2 * s + 1] = b.wrapping_sub(comp) & comp;
            for t in s + 1..slots {
                masks[2 * t] = 0;
                masks[2 * t + 1] = 0;
            }
            return true;
        }
        if a != universe {
            masks[2 * s] = a + 1;
            masks[2 * s + 1] = 0;
            for t in s + 1..slots {
                masks[2 * t] = 0;
                masks[2 * t + 1] = 0;
            }
            return true;
        }
    }
    false
}

/// Visits every argument of `mode` over `ground` in ascending order.
pub fn for_each_arg(ground: GroundSet, mode: Mode, mut visit: impl FnMut(&SetArg)) {
    let u = ground.universe();
    match mode {
        Mode::Set | Mode::KWaySet(_) => {
            let mut masks = vec![0u32; mode.arity()];
            loop {
                visit(&SetArg(masks.clone()));
                if !next_tuple(&mut masks, u) {
                    break;
                }
            }
        }
        Mode::DisjointPair | Mode::KWayDisjointPair(_) => {
            let mut masks = vec![0u32; mode.arity()];
            loop {
                visit(&SetArg(masks.clone()));
                if !next_pair_tuple(&mut masks, u) {
                    break;
                }
            }
        }
    }
}

/// Admissible arguments, given by a named predicate. Explicit lists go
/// through [`RestrictedFamily::from_args`].
#[derive(Clone)]
pub struct RestrictedFamily {
    name: String,
    pred: Arc<dyn Fn(&SetArg) -> bool + Send + Sync>,
}

impl fmt::Debug for RestrictedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RestrictedFamily({})", self.name)
    }
}

impl RestrictedFamily {
    pub fn new(
        name: impl Into<String>,
        pred: impl Fn(&SetArg) -> bool + Send + Sync + 'static,
    ) -> Self {
        RestrictedFamily {
            name: name.into(),
            pred: Arc::new(pred),
        }
    }

    pub fn all() -> Self {
        Self::new("all", |_| true)
    }

    /// Arguments that are not identically empty.
    pub fn nonempty() -> Self {
        Self::new("nonempty", |arg| !arg.is_empty_arg())
    }

    /// Set mode: `A` not in `{empty, V}`.
    pub fn proper_nonempty(ground: GroundSet) -> Self {
        let u = ground.universe();
        Self::new("proper-nonempty", move |arg| arg.0[0] != 0 && arg.0[0] != u)
    }

    pub fn from_args(args: Vec<SetArg>) -> Self {
        let set: std::collections::HashSet<SetArg> = args.into_iter().collect();
        Self::new("explicit", move |arg| set.contains(arg))
    }

    pub fn contains(&self, arg: &SetArg) -> bool {
        (self.pred)(arg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// Exact optimum of `f/g` over `family ∩ supp(g)` by exhaustive
/// enumeration. Ties break to the lexicographically smallest argument.
pub fn enumerate_ratio_optimum(
    f: &DiscreteFunction,
    g: &DiscreteFunction,
    family: &RestrictedFamily,
    sense: OptSense,
) -> Result<(f64, SetArg)> {
    if f.mode != g.mode || f.ground != g.ground {
        return Err(SetFunError::IncompatibleFunctions);
    }
    if f.ground.n > MAX_ENUM_ELEMENTS {
        return Err(SetFunError::TooManyElements(f.ground.n));
    }
    let count = f.candidate_count();
    if count > MAX_ENUM_CANDIDATES {
        return Err(SetFunError::TooManyCandidates(count));
    }
    let mut best: Option<(f64, SetArg)> = None;
    let mut bad_denominator: Option<SetFunError> = None;
    for_each_arg(f.ground, f.mode, |arg| {
        if bad_denominator.is_some() || !family.contains(arg) {
            return;
        }
        let gv = g.value_unchecked(arg);
        if gv < 0.0 {
            bad_denominator = Some(SetFunError::NegativeDenominator {
                arg: arg.clone(),
                value: gv,
            });
            return;
        }
        if gv == 0.0 {
            return;
        }
        let ratio = f.value_unchecked(arg) / gv;
        let better = match &best {
            None => true,
            Some((b, _)) => match sense {
                OptSense::Min => ratio < *b,
                OptSense::Max => ratio > *b,
            },
        };
        if better {
            best = Some((ratio, arg.clone()));
        }
    });
    if let Some(err) = bad_denominator {
        return Err(err);
    }
    best.ok_or(SetFunError::EmptyFeasible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptSense {
    Min,
    Max,
}

/// Splits a Set-mode `f` into a difference `f = f1 - f2` of two submodular
/// functions. `f2 = C * g` with `g(A) = -(#A)^2`; `C` comes from the worst
/// submodularity violation of `f` against the gap of `g`, both taken over
/// non-nested pairs (nested pairs have zero gap for every function).
pub fn dc_decompose(f: &DiscreteFunction) -> Result<(DiscreteFunction, DiscreteFunction)> {
    if f.mode != Mode::Set {
        return Err(SetFunError::NotSetMode(f.mode));
    }
    if f.ground.n > 20 {
        return Err(SetFunError::TooManyElements(f.ground.n));
    }
    let u = f.ground.universe();
    let g = DiscreteFunction::from_set_fn(f.ground, |mask| {
        let c = mask.count_ones() as f64;
        -c * c
    });

    let mut worst_violation = 0.0_f64;
    let mut min_gap_g = f64::INFINITY;
    for a in 0..=u {
        for b in 0..=u {
            if a & b == a || a & b == b {
                continue; // nested: zero gap on both sides
            }
            let join = SetArg::set(a | b);
            let meet = SetArg::set(a & b);
            let va = f.value_unchecked(&SetArg::set(a));
            let vb = f.value_unchecked(&SetArg::set(b));
            let violation = f.value_unchecked(&join) + f.value_unchecked(&meet) - va - vb;
            worst_violation = worst_violation.max(violation);
            let gap_g = g.value_unchecked(&SetArg::set(a)) + g.value_unchecked(&SetArg::set(b))
                - g.value_unchecked(&join)
                - g.value_unchecked(&meet);
            min_gap_g = min_gap_g.min(gap_g);
        }
    }
    let c = if min_gap_g.is_finite() && min_gap_g > 0.0 {
        worst_violation / min_gap_g + 1.0
    } else {
        1.0 // no non-nested pairs (n = 1): any split works
    };
    let f2 = g.scale(c);
    let f1 = f.add(&f2)?;
    Ok((f1, f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphinv::Graph;
    use crate::rng::seeded;
    use crate::submod::is_submodular;
    use rand::Rng;

    fn p3_cut() -> DiscreteFunction {
        let g = Graph::path(3);
        g.cut_function()
    }

    #[test]
    fn evaluate_cut_of_p3() {
        let f = p3_cut();
        assert_eq!(f.evaluate(&SetArg::set(0b001)).unwrap(), 1.0);
        assert_eq!(f.evaluate(&SetArg::set(0b010)).unwrap(), 2.0);
        assert_eq!(f.evaluate(&SetArg::set(0)).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_defaults_and_strict_mode() {
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::new(ground, Mode::Set).with_default(0.0);
        assert_eq!(f.evaluate(&SetArg::set(0)).unwrap(), 0.0);
        let strict = DiscreteFunction::new(ground, Mode::Set).strict();
        assert!(matches!(
            strict.evaluate(&SetArg::set(1)),
            Err(SetFunError::MissingEntry(_))
        ));
    }

    #[test]
    fn evaluate_cardinality() {
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| m.count_ones() as f64);
        assert_eq!(f.evaluate(&SetArg::set(0b101)).unwrap(), 2.0);
    }

    #[test]
    fn evaluate_rejects_overlapping_pair() {
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::new(ground, Mode::DisjointPair);
        assert!(matches!(
            f.evaluate(&SetArg::pair(0b011, 0b010)),
            Err(SetFunError::OverlappingPair { .. })
        ));
    }

    #[test]
    fn ratio_optimum_cheeger_p3() {
        let ground = GroundSet::new(3).unwrap();
        let f = p3_cut();
        let g = DiscreteFunction::from_set_fn(ground, |m| {
            let a = m.count_ones() as f64;
            a.min(3.0 - a)
        });
        let (value, arg) = enumerate_ratio_optimum(
            &f,
            &g,
            &RestrictedFamily::proper_nonempty(ground),
            OptSense::Min,
        )
        .unwrap();
        assert_eq!(value, 1.0);
        assert_eq!(arg, SetArg::set(0b001));
    }

    #[test]
    fn ratio_optimum_monotone_cardinality() {
        let ground = GroundSet::new(4).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| m.count_ones() as f64);
        let g = DiscreteFunction::from_set_fn(ground, |_| 1.0);
        let (value, arg) =
            enumerate_ratio_optimum(&f, &g, &RestrictedFamily::all(), OptSense::Max).unwrap();
        assert_eq!(value, 4.0);
        assert_eq!(arg, SetArg::set(0b1111));
    }

    #[test]
    fn ratio_optimum_independence_difference_k3() {
        let g3 = Graph::complete(3);
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| {
            m.count_ones() as f64 - g3.edges_within(m) as f64
        });
        let ones = DiscreteFunction::from_set_fn(ground, |_| 1.0);
        let (value, _) =
            enumerate_ratio_optimum(&f, &ones, &RestrictedFamily::all(), OptSense::Max).unwrap();
        assert_eq!(value, 1.0);
    }

    #[test]
    fn ratio_optimum_reports_empty_feasible() {
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| m.count_ones() as f64);
        let g = DiscreteFunction::from_set_fn(ground, |_| 0.0);
        assert!(matches!(
            enumerate_ratio_optimum(&f, &g, &RestrictedFamily::all(), OptSense::Min),
            Err(SetFunError::EmptyFeasible)
        ));
    }

    #[test]
    fn ratio_optimum_lower_bounds_every_feasible_arg() {
        let mut rng = seeded(7);
        for _ in 0..20 {
            let ground = GroundSet::new(4).unwrap();
            let f = DiscreteFunction::from_set_fn(ground, |_| rng.gen_range(0.0..4.0));
            let g = DiscreteFunction::from_set_fn(ground, |_| rng.gen_range(0.1..2.0));
            let fam = RestrictedFamily::nonempty();
            let (best, _) = enumerate_ratio_optimum(&f, &g, &fam, OptSense::Min).unwrap();
            for_each_arg(ground, Mode::Set, |arg| {
                if fam.contains(arg) {
                    let gv = g.value_unchecked(arg);
                    if gv > 0.0 {
                        assert!(best <= f.value_unchecked(arg) / gv + 1e-12);
                    }
                }
            });
        }
    }

    #[test]
    fn dc_decompose_cut_function() {
        let f = p3_cut();
        let (f1, f2) = dc_decompose(&f).unwrap();
        assert!(is_submodular(&f1).unwrap().holds);
        assert!(is_submodular(&f2).unwrap().holds);
        for_each_arg(f.ground(), Mode::Set, |arg| {
            let lhs = f1.value_unchecked(arg) - f2.value_unchecked(arg);
            assert!((lhs - f.value_unchecked(arg)).abs() < 1e-12);
        });
    }

    #[test]
    fn dc_decompose_negated_edge_count_k3() {
        let g3 = Graph::complete(3);
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| -(g3.edges_within(m) as f64));
        let (f1, f2) = dc_decompose(&f).unwrap();
        assert!(is_submodular(&f1).unwrap().holds);
        assert!(is_submodular(&f2).unwrap().holds);
    }

    #[test]
    fn dc_decompose_zero_function() {
        let ground = GroundSet::new(3).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |_| 0.0);
        let (f1, f2) = dc_decompose(&f).unwrap();
        for_each_arg(ground, Mode::Set, |arg| {
            assert_eq!(f1.value_unchecked(arg), f2.value_unchecked(arg));
        });
    }

    #[test]
    fn pair_enumeration_visits_disjoint_pairs_once() {
        let ground = GroundSet::new(3).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut count = 0u64;
        for_each_arg(ground, Mode::DisjointPair, |arg| {
            assert_eq!(arg.0[0] & arg.0[1], 0);
            assert!(seen.insert(arg.clone()));
            count += 1;
        });
        assert_eq!(count, 27); // 3^3
    }

    /// `min f/g = min over pairs (f(A)+f(B))/(g(A)+g(B))`, both for ordered
    /// pairs and for disjoint pairs, when `f(∅) = g(∅) = 0`.
    #[test]
    fn one_to_two_ratio_identity() {
        let mut rng = seeded(11);
        for _ in 0..10 {
            let n = 5;
            let ground = GroundSet::new(n).unwrap();
            let f = DiscreteFunction::from_set_fn(ground, |m| {
                if m == 0 {
                    0.0
                } else {
                    rng.gen_range(0.0..3.0)
                }
            });
            let g = DiscreteFunction::from_set_fn(ground, |m| {
                if m == 0 {
                    0.0
                } else {
                    rng.gen_range(0.05..2.0)
                }
            });
            let single =
                enumerate_ratio_optimum(&f, &g, &RestrictedFamily::nonempty(), OptSense::Min)
                    .unwrap()
                    .0;
            let u = ground.universe();
            let mut best_pairs = f64::INFINITY;
            let mut best_disjoint = f64::INFINITY;
            for a in 0..=u {
                for b in 0..=u {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let num =
                        f.value_unchecked(&SetArg::set(a)) + f.value_unchecked(&SetArg::set(b));
                    let den =
                        g.value_unchecked(&SetArg::set(a)) + g.value_unchecked(&SetArg::set(b));
                    if den > 0.0 {
                        best_pairs = best_pairs.min(num / den);
                        if a & b == 0 {
                            best_disjoint = best_disjoint.min(num / den);
                        }
                    }
                }
            }
            assert!((single - best_pairs).abs() < 1e-12);
            assert!((single - best_disjoint).abs() < 1e-12);

            let single_max =
                enumerate_ratio_optimum(&f, &g, &RestrictedFamily::nonempty(), OptSense::Max)
                    .unwrap()
                    .0;
            let mut best_max = f64::NEG_INFINITY;
            for a in 0..=u {
                for b in 0..=u {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let num =
                        f.value_unchecked(&SetArg::set(a)) + f.value_unchecked(&SetArg::set(b));
                    let den =
                        g.value_unchecked(&SetArg::set(a)) + g.value_unchecked(&SetArg::set(b));
                    if den > 0.0 {
                        best_max = best_max.max(num / den);
                    }
                }
            }
            assert!((single_max - best_max).abs() < 1e-12);
        }
    }

    /// Complement form of the pair identity: with the second slot read as
    /// its complement, no zero-at-empty assumption is needed, but the
    /// first slot must stay nonempty (an empty first slot reintroduces
    /// the empty-set ratio through the mediant).
    #[test]
    fn one_to_two_complement_identity() {
        let mut rng = seeded(29);
        for _ in 0..10 {
            let n = 4;
            let ground = GroundSet::new(n).unwrap();
            // f(empty), g(empty) deliberately arbitrary
            let f = DiscreteFunction::from_set_fn(ground, |_| rng.gen_range(0.0..3.0));
            let g = DiscreteFunction::from_set_fn(ground, |_| rng.gen_range(0.05..2.0));
            let single =
                enumerate_ratio_optimum(&f, &g, &RestrictedFamily::nonempty(), OptSense::Min)
                    .unwrap()
                    .0;
            let u = ground.universe();
            let mut best = f64::INFINITY;
            for a in 1..=u {
                let comp = u & !a;
                let mut b = 0u32;
                loop {
                    let num = f.value_unchecked(&SetArg::set(a))
                        + f.value_unchecked(&SetArg::set(u & !b));
                    let den = g.value_unchecked(&SetArg::set(a))
                        + g.value_unchecked(&SetArg::set(u & !b));
                    if den > 0.0 {
                        best = best.min(num / den);
                    }
                    if b == comp {
                        break;
                    }
                    b = b.wrapping_sub(comp) & comp;
                }
            }
            assert!((single - best).abs() < 1e-12);
        }
    }

    /// k = 3 version over ordered tuples, the k-th-root product form, and
    /// pairwise-disjoint tuples.
    #[test]
    fn one_to_k_ratio_identity() {
        let mut rng = seeded(13);
        let n = 4;
        let ground = GroundSet::new(n).unwrap();
        let f = DiscreteFunction::from_set_fn(ground, |m| {
            if m == 0 {
                0.0
            } else {
                rng.gen_range(0.01..3.0)
            }
        });
        let g = DiscreteFunction::from_set_fn(ground, |m| {
            if m == 0 {
                0.0
            } else {
                rng.gen_range(0.05..2.0)
            }
        });
        let single = enumerate_ratio_optimum(&f, &g, &RestrictedFamily::nonempty(), OptSense::Min)
            .unwrap()
            .0;
        let u = ground.universe();
        let mut best_sum = f64::INFINITY;
        let mut best_prod = f64::INFINITY;
        let mut best_disjoint = f64::INFINITY;
        for a in 0..=u {
            for b in 0..=u {
                for c in 0..=u {
                    let (fa, fb, fc) = (
                        f.value_unchecked(&SetArg::set(a)),
                        f.value_unchecked(&SetArg::set(b)),
                        f.value_unchecked(&SetArg::set(c)),
                    );
                    let (ga, gb, gc) = (
                        g.value_unchecked(&SetArg::set(a)),
                        g.value_unchecked(&SetArg::set(b)),
                        g.value_unchecked(&SetArg::set(c)),
                    );
                    if ga + gb + gc > 0.0 {
                        best_sum = best_sum.min((fa + fb + fc) / (ga + gb + gc));
                        if a & b == 0 && a & c == 0 && b & c == 0 {
                            best_disjoint = best_disjoint.min((fa + fb + fc) / (ga + gb + gc));
                        }
                    }
                    if ga * gb * gc > 0.0 {
                        best_prod =
                            best_prod.min(((fa * fb * fc) / (ga * gb * gc)).powf(1.0 / 3.0));
                    }
                }
            }
        }
        assert!((single - best_sum).abs() < 1e-12);
        assert!((single - best_prod).abs() < 1e-9);
        assert!((single - best_disjoint).abs() < 1e-12);
    }

    /// Disjoint-pair analog for k = 3 over a small ground set.
    #[test]
    fn two_to_k_ratio_identity() {
        let mut rng = seeded(17);
        let n = 3;
        let ground = GroundSet::new(n).unwrap();
        let f = DiscreteFunction::from_pair_fn(ground, |a, b| {
            if a == 0 && b == 0 {
                0.0
            } else {
                rng.gen_range(0.0..3.0)
            }
        });
        let g = DiscreteFunction::from_pair_fn(ground, |a, b| {
            if a == 0 && b == 0 {
                0.0
            } else {
                rng.gen_range(0.05..2.0)
            }
        });
        let single = enumerate_ratio_optimum(&f, &g, &RestrictedFamily::nonempty(), OptSense::Min)
            .unwrap()
            .0;
        // ordered triples of disjoint pairs
        let mut args: Vec<SetArg> = Vec::new();
        for_each_arg(ground, Mode::DisjointPair, |arg| args.push(arg.clone()));
        let mut best_sum = f64::INFINITY;
        for p1 in &args {
            for p2 in &args {
                for p3 in &args {
                    let num = f.value_unchecked(p1) + f.value_unchecked(p2) + f.value_unchecked(p3);
                    let den = g.value_unchecked(p1) + g.value_unchecked(p2) + g.value_unchecked(p3);
                    if den > 0.0 {
                        best_sum = best_sum.min(num / den);
                    }
                }
            }
        }
        assert!((single - best_sum).abs() < 1e-12);
        // pairwise-disjoint 2k-tuples: every element takes one of 2k+1 = 7 states
        let mut best_disjoint = f64::INFINITY;
        let states = 7u32.pow(n as u32);
        for code in 0..states {
            let mut masks = vec![0u32; 6];
            let mut c = code;
            for i in 0..n {
                let s = (c % 7) as usize;
                c /= 7;
                if s > 0 {
                    masks[s - 1] |= 1 << i;
                }
            }
            let pairs = [
                SetArg::pair(masks[0], masks[1]),
                SetArg::pair(masks[2], masks[3]),
                SetArg::pair(masks[4], masks[5]),
            ];
            let num: f64 = pairs.iter().map(|p| f.value_unchecked(p)).sum();
            let den: f64 = pairs.iter().map(|p| g.value_unchecked(p)).sum();
            if den > 0.0 {
                best_disjoint = best_disjoint.min(num / den);
            }
        }
        assert!((single - best_disjoint).abs() < 1e-12);
    }
}
