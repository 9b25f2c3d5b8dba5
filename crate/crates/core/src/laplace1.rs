//! Graph 1-Laplacian spectral objects on graphs with boundary: Dirichlet
//! and Neumann eigenpair verification, 1-Rayleigh quotients, and nodal
//! domains.
//!
//! An eigenpair `(mu, x)` is verified by deciding a bounded-variable
//! linear feasibility problem: do selections `z_ij` from `Sgn(x_i - x_j)`
//! (antisymmetric) and `c_i` from `Sgn(x_i)` exist that satisfy the
//! divergence-form equations? The inclusions are combinatorial and
//! tolerance-sensitive, so instances with at most 200 variables are
//! decided by an exact phase-1 simplex over rational arithmetic (Bland's
//! rule); larger ones fall back to the same pivoting in floating point
//! with tolerance `1e-9`. Sign intervals at `|t| <= 1e-12` widen to
//! `[-1, 1]`.

use crate::graphinv::{Graph, GraphError};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub const NUMERIC_ZERO: f64 = 1e-12;
pub const EXACT_VARIABLE_LIMIT: usize = 200;

#[derive(Debug, Error)]
pub enum LaplaceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("candidate vector has {got} entries, expected {want}")]
    BadLength { want: usize, got: usize },
    #[error("candidate vector is identically zero")]
    ZeroVector,
    #[error("eigenvalue must be nonnegative, got {0}")]
    NegativeEigenvalue(f64),
    #[error("Dirichlet candidates must vanish on the boundary, x[{0}] = {1}")]
    NonzeroOnBoundary(usize, f64),
    #[error("denominator of the Rayleigh quotient is zero")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, LaplaceError>;

#[derive(Debug, Clone)]
pub struct EigenCandidate {
    pub x: Vec<f64>,
    pub mu: f64,
}

/// Interval selected for one variable: `{+1}`, `{-1}`, or `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRegion {
    Plus,
    Minus,
    Free,
}

impl SignRegion {
    pub fn of(t: f64) -> SignRegion {
        if t > NUMERIC_ZERO {
            SignRegion::Plus
        } else if t < -NUMERIC_ZERO {
            SignRegion::Minus
        } else {
            SignRegion::Free
        }
    }

    fn bounds(self) -> (f64, f64) {
        match self {
            SignRegion::Plus => (1.0, 1.0),
            SignRegion::Minus => (-1.0, -1.0),
            SignRegion::Free => (-1.0, 1.0),
        }
    }
}

/// Feasibility certificate: the selected `z` per oriented edge and `c`
/// per vertex. Antisymmetry is structural (one variable per undirected
/// edge, used with opposite signs at its endpoints).
#[derive(Debug, Clone)]
pub struct Certificate {
    pub z: Vec<(usize, usize, f64)>,
    pub c: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct VerifyResult {
    pub feasible: bool,
    pub certificate: Option<Certificate>,
    pub exact_arithmetic: bool,
}

// ---------------------------------------------------------------------------
// Bounded-variable linear feasibility by phase-1 simplex
// ---------------------------------------------------------------------------

/// One equality row `sum coeff * w = rhs` over box variables.
struct FeasRow {
    coeffs: Vec<(usize, f64)>,
    rhs: f64,
}

fn to_rat(v: f64) -> BigRational {
    BigRational::from_f64(v).expect("finite float")
}

/// Decides `exists w: lo <= w <= hi, A w = b`. Returns the witness.
fn box_feasibility(bounds: &[(f64, f64)], rows: &[FeasRow]) -> (bool, Option<Vec<f64>>, bool) {
    if bounds.len() <= EXACT_VARIABLE_LIMIT {
        let b: Vec<(BigRational, BigRational)> = bounds
            .iter()
            .map(|&(l, h)| (to_rat(l), to_rat(h)))
            .collect();
        let r: Vec<(Vec<(usize, BigRational)>, BigRational)> = rows
            .iter()
            .map(|row| {
                (
                    row.coeffs
                        .iter()
                        .map(|&(i, c)| (i, to_rat(c)))
                        .collect::<Vec<_>>(),
                    to_rat(row.rhs),
                )
            })
            .collect();
        match phase1(&b, &r, BigRational::zero()) {
            Some(w) => (
                true,
                Some(w.iter().map(|v| v.to_f64().unwrap()).collect()),
                true,
            ),
            None => (false, None, true),
        }
    } else {
        let b: Vec<(f64, f64)> = bounds.to_vec();
        let r: Vec<(Vec<(usize, f64)>, f64)> = rows
            .iter()
            .map(|row| (row.coeffs.clone(), row.rhs))
            .collect();
        match phase1(&b, &r, 1e-9) {
            Some(w) => (true, Some(w), false),
            None => (false, None, false),
        }
    }
}

/// Phase-1 simplex with Bland's rule on the standard-form expansion of a
/// box-constrained system: substitute `w = lo + s`, add a slack per upper
/// bound, and an artificial per equality row.
fn phase1<T>(bounds: &[(T, T)], rows: &[(Vec<(usize, T)>, T)], tol: T) -> Option<Vec<T>>
where
    T: Clone + Num + Signed + PartialOrd,
{
    let m = bounds.len();
    let r = rows.len();
    let n_rows = m + r;
    let n_cols = 2 * m + r; // s, upper-bound slacks, artificials
    let mut tab = vec![vec![T::zero(); n_cols + 1]; n_rows];
    let mut basis = vec![0usize; n_rows];

    // bound rows: s_i + t_i = hi - lo
    for i in 0..m {
        tab[i][i] = T::one();
        tab[i][m + i] = T::one();
        tab[i][n_cols] = bounds[i].1.clone() - bounds[i].0.clone();
        if tab[i][n_cols] < T::zero() {
            return None; // inverted box
        }
        basis[i] = m + i;
    }
    // equality rows with RHS shifted by lo and sign-normalized
    for (j, (coeffs, rhs)) in rows.iter().enumerate() {
        let row = m + j;
        let mut shifted = rhs.clone();
        for (idx, c) in coeffs {
            shifted = shifted - c.clone() * bounds[*idx].0.clone();
            tab[row][*idx] = tab[row][*idx].clone() + c.clone();
        }
        if shifted < T::zero() {
            for v in tab[row].iter_mut() {
                *v = -v.clone();
            }
            shifted = -shifted;
        }
        tab[row][n_cols] = shifted;
        tab[row][2 * m + j] = T::one();
        basis[row] = 2 * m + j;
    }

    // cost row for "minimize the sum of artificials", expressed over the
    // nonbasic columns
    let mut cost = vec![T::zero(); n_cols + 1];
    for row in m..n_rows {
        for c in 0..=n_cols {
            cost[c] = cost[c].clone() - tab[row][c].clone();
        }
    }
    for j in 0..r {
        cost[2 * m + j] = T::zero();
    }

    loop {
        // Bland: first column with reduced cost < -tol
        let entering = (0..n_cols).find(|&c| cost[c] < -tol.clone());
        let Some(col) = entering else { break };
        // ratio test; Bland resolves ties to the lowest basic index
        let mut pivot: Option<usize> = None;
        let mut best: Option<T> = None;
        for row in 0..n_rows {
            if tab[row][col] > tol.clone() {
                let ratio = tab[row][n_cols].clone() / tab[row][col].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[row] < basis[pivot.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    pivot = Some(row);
                }
            }
        }
        let prow = pivot?;
        let p = tab[prow][col].clone();
        for c in 0..=n_cols {
            tab[prow][c] = tab[prow][c].clone() / p.clone();
        }
        for row in 0..n_rows {
            if row != prow {
                let factor = tab[row][col].clone();
                if !factor.is_zero() {
                    for c in 0..=n_cols {
                        tab[row][c] = tab[row][c].clone() - factor.clone() * tab[prow][c].clone();
                    }
                }
            }
        }
        let factor = cost[col].clone();
        if !factor.is_zero() {
            for c in 0..=n_cols {
                cost[c] = cost[c].clone() - factor.clone() * tab[prow][c].clone();
            }
        }
        basis[prow] = col;
    }

    // feasible iff no artificial carries positive value
    for row in 0..n_rows {
        if basis[row] >= 2 * m && tab[row][n_cols] > tol.clone() {
            return None;
        }
    }
    let mut s = vec![T::zero(); m];
    for row in 0..n_rows {
        if basis[row] < m {
            s[basis[row]] = tab[row][n_cols].clone();
        }
    }
    Some((0..m).map(|i| bounds[i].0.clone() + s[i].clone()).collect())
}

// ---------------------------------------------------------------------------
// Eigenpair verification
// ---------------------------------------------------------------------------

fn check_candidate(g: &Graph, cand: &EigenCandidate) -> Result<()> {
    if cand.x.len() != g.n() {
        return Err(LaplaceError::BadLength {
            want: g.n(),
            got: cand.x.len(),
        });
    }
    if cand.mu < 0.0 {
        return Err(LaplaceError::NegativeEigenvalue(cand.mu));
    }
    if cand.x.iter().all(|v| v.abs() <= NUMERIC_ZERO) {
        return Err(LaplaceError::ZeroVector);
    }
    Ok(())
}

/// Dirichlet component form: for every interior vertex `i` there must be
/// selections with
/// `sum_{j ~ i, j interior} z_ij + p_i c_i  in  mu d_i Sgn(x_i)`.
/// Edges into the boundary are absorbed by the `p_i c_i` term since `x`
/// vanishes there.
///
/// Each equation carries a residual slack in `[-tol, tol]`: eigenvalues
/// arrive as rounded floats, so the knife-edge exact system would be
/// spuriously infeasible. The relaxed system is still decided exactly.
pub fn verify_dirichlet_eigenpair(
    g: &Graph,
    cand: &EigenCandidate,
    tol: f64,
) -> Result<VerifyResult> {
    check_candidate(g, cand)?;
    let b = g.boundary()?;
    for &v in &b.delta {
        if cand.x[v].abs() > NUMERIC_ZERO {
            return Err(LaplaceError::NonzeroOnBoundary(v, cand.x[v]));
        }
    }
    let in_a = |v: usize| b.interior.binary_search(&v).is_ok();
    let inner_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| in_a(u) && in_a(v))
        .collect();
    let ne = inner_edges.len();
    // variables: z per inner edge, c per interior vertex, one slack per
    // interior vertex with x_i = 0 (set-valued right-hand side)
    let mut bounds: Vec<(f64, f64)> = Vec::new();
    for &(u, v) in &inner_edges {
        bounds.push(SignRegion::of(cand.x[u] - cand.x[v]).bounds());
    }
    for &v in &b.interior {
        bounds.push(SignRegion::of(cand.x[v]).bounds());
    }
    let zero_slack: Vec<Option<usize>> = b
        .interior
        .iter()
        .map(|&v| {
            if cand.x[v].abs() <= NUMERIC_ZERO {
                bounds.push((-1.0, 1.0));
                Some(bounds.len() - 1)
            } else {
                None
            }
        })
        .collect();
    let mut rows = Vec::new();
    for (ai, &v) in b.interior.iter().enumerate() {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for (e, &(p, q)) in inner_edges.iter().enumerate() {
            if p == v {
                coeffs.push((e, 1.0));
            } else if q == v {
                coeffs.push((e, -1.0));
            }
        }
        coeffs.push((ne + ai, b.p[ai] as f64));
        bounds.push((-tol.abs(), tol.abs()));
        coeffs.push((bounds.len() - 1, 1.0));
        let scale = cand.mu * b.d[ai] as f64;
        let rhs = match zero_slack[ai] {
            Some(slack) => {
                coeffs.push((slack, -scale));
                0.0
            }
            None => scale * cand.x[v].signum(),
        };
        rows.push(FeasRow { coeffs, rhs });
    }
    let (feasible, witness, exact) = box_feasibility(&bounds, &rows);
    Ok(VerifyResult {
        feasible,
        certificate: witness.map(|w| Certificate {
            z: inner_edges
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| (u, v, w[e]))
                .collect(),
            c: b.interior
                .iter()
                .enumerate()
                .map(|(ai, &v)| (v, w[ne + ai]))
                .collect(),
        }),
        exact_arithmetic: exact,
    })
}

/// Neumann system: interior vertices satisfy
/// `sum_{j ~ i, j in closure} z_ij - mu d_i c_i = 0`, boundary vertices
/// satisfy `sum_{j ~ i, j interior} z_ij = 0`. Equations carry a residual
/// slack in `[-tol, tol]`, as in the Dirichlet case.
pub fn verify_neumann_eigenpair(
    g: &Graph,
    cand: &EigenCandidate,
    tol: f64,
) -> Result<VerifyResult> {
    check_candidate(g, cand)?;
    let b = g.boundary()?;
    let in_a = |v: usize| b.interior.binary_search(&v).is_ok();
    let in_closure = |v: usize| b.closure.binary_search(&v).is_ok();
    // live edges: meet the interior, stay in the closure
    let live_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| (in_a(u) || in_a(v)) && in_closure(u) && in_closure(v))
        .collect();
    let ne = live_edges.len();
    let mut bounds: Vec<(f64, f64)> = Vec::new();
    for &(u, v) in &live_edges {
        bounds.push(SignRegion::of(cand.x[u] - cand.x[v]).bounds());
    }
    for &v in &b.interior {
        bounds.push(SignRegion::of(cand.x[v]).bounds());
    }
    let mut rows = Vec::new();
    for (ai, &v) in b.interior.iter().enumerate() {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for (e, &(p, q)) in live_edges.iter().enumerate() {
            if p == v {
                coeffs.push((e, 1.0));
            } else if q == v {
                coeffs.push((e, -1.0));
            }
        }
        coeffs.push((ne + ai, -cand.mu * b.d[ai] as f64));
        bounds.push((-tol.abs(), tol.abs()));
        coeffs.push((bounds.len() - 1, 1.0));
        rows.push(FeasRow { coeffs, rhs: 0.0 });
    }
    for &v in &b.delta {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for (e, &(p, q)) in live_edges.iter().enumerate() {
            if p == v && in_a(q) {
                coeffs.push((e, 1.0));
            } else if q == v && in_a(p) {
                coeffs.push((e, -1.0));
            }
        }
        if !coeffs.is_empty() {
            bounds.push((-tol.abs(), tol.abs()));
            coeffs.push((bounds.len() - 1, 1.0));
            rows.push(FeasRow { coeffs, rhs: 0.0 });
        }
    }
    let (feasible, witness, exact) = box_feasibility(&bounds, &rows);
    Ok(VerifyResult {
        feasible,
        certificate: witness.map(|w| Certificate {
            z: live_edges
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| (u, v, w[e]))
                .collect(),
            c: b.interior
                .iter()
                .enumerate()
                .map(|(ai, &v)| (v, w[ne + ai]))
                .collect(),
        }),
        exact_arithmetic: exact,
    })
}

// ---------------------------------------------------------------------------
// Rayleigh quotients and nodal domains
// ---------------------------------------------------------------------------

/// `R_1(x) = sum_E |x_i - x_j| / sum_i d_i |x_i|`.
pub fn rayleigh_1(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(LaplaceError::BadLength {
            want: g.n(),
            got: x.len(),
        });
    }
    let den: f64 = (0..g.n()).map(|i| g.adj(i).len() as f64 * x[i].abs()).sum();
    if den <= 0.0 {
        return Err(LaplaceError::ZeroDenominator);
    }
    let num: f64 = g.edges().iter().map(|&(i, j)| (x[i] - x[j]).abs()).sum();
    Ok(num / den)
}

/// Dirichlet quotient
/// `(sum_{i~j in A} |x_i - x_j| + sum_{i in A} p_i |x_i|) / sum_{i in A} d_i |x_i|`;
/// entries outside the interior are ignored.
pub fn dirichlet_rayleigh(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(LaplaceError::BadLength {
            want: g.n(),
            got: x.len(),
        });
    }
    let b = g.boundary()?;
    let in_a = |v: usize| b.interior.binary_search(&v).is_ok();
    let den: f64 = b
        .interior
        .iter()
        .enumerate()
        .map(|(ai, &v)| b.d[ai] as f64 * x[v].abs())
        .sum();
    if den <= 0.0 {
        return Err(LaplaceError::ZeroDenominator);
    }
    let mut num: f64 = g
        .edges()
        .iter()
        .filter(|&&(u, v)| in_a(u) && in_a(v))
        .map(|&(u, v)| (x[u] - x[v]).abs())
        .sum();
    for (ai, &v) in b.interior.iter().enumerate() {
        num += b.p[ai] as f64 * x[v].abs();
    }
    Ok(num / den)
}

/// Connected components of the positive and of the negative support.
pub fn nodal_domains(g: &Graph, x: &[f64]) -> Result<(usize, Vec<Vec<usize>>)> {
    if x.len() != g.n() {
        return Err(LaplaceError::BadLength {
            want: g.n(),
            got: x.len(),
        });
    }
    let mut domains = Vec::new();
    let mut seen = vec![false; g.n()];
    for sign in [1.0, -1.0] {
        for start in 0..g.n() {
            if seen[start] || x[start] * sign <= 0.0 {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in g.adj(v) {
                    if !seen[w] && x[w] * sign > 0.0 {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            domains.push(comp);
        }
    }
    Ok((domains.len(), domains))
}

/// The `(h_1, indicator of the optimal Cheeger set)` pair as an eigenpair
/// candidate.
pub fn dirichlet_cheeger_candidate(g: &Graph) -> Result<EigenCandidate> {
    let result = crate::graphinv::cheeger(g, crate::graphinv::CheegerVariant::Dirichlet)?;
    let mut x = vec![0.0; g.n()];
    for &v in &result.optimizer {
        x[v] = 1.0;
    }
    Ok(EigenCandidate {
        x,
        mu: result.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphinv::CheegerVariant;

    fn p3_boundary() -> Graph {
        Graph::path(3).with_interior(vec![1]).unwrap()
    }

    #[test]
    fn dirichlet_p3_center_is_eigenpair_at_one() {
        let g = p3_boundary();
        let cand = EigenCandidate {
            x: vec![0.0, 1.0, 0.0],
            mu: 1.0,
        };
        let res = verify_dirichlet_eigenpair(&g, &cand, 1e-9).unwrap();
        assert!(res.feasible);
        assert!(res.exact_arithmetic);
        let cert = res.certificate.unwrap();
        assert_eq!(cert.c, vec![(1, 1.0)]);
    }

    #[test]
    fn dirichlet_p3_wrong_eigenvalue_is_infeasible() {
        let g = p3_boundary();
        let cand = EigenCandidate {
            x: vec![0.0, 1.0, 0.0],
            mu: 0.5,
        };
        assert!(
            !verify_dirichlet_eigenpair(&g, &cand, 1e-9)
                .unwrap()
                .feasible
        );
    }

    #[test]
    fn dirichlet_rejects_zero_vector_and_boundary_support() {
        let g = p3_boundary();
        assert!(matches!(
            verify_dirichlet_eigenpair(
                &g,
                &EigenCandidate {
                    x: vec![0.0; 3],
                    mu: 1.0
                },
                1e-9
            ),
            Err(LaplaceError::ZeroVector)
        ));
        assert!(matches!(
            verify_dirichlet_eigenpair(
                &g,
                &EigenCandidate {
                    x: vec![0.5, 1.0, 0.0],
                    mu: 1.0
                },
                1e-9
            ),
            Err(LaplaceError::NonzeroOnBoundary(0, _))
        ));
    }

    #[test]
    fn neumann_constant_vector_at_zero_is_feasible() {
        let g = Graph::path(4).with_interior(vec![1, 2]).unwrap();
        let cand = EigenCandidate {
            x: vec![1.0, 1.0, 1.0, 1.0],
            mu: 0.0,
        };
        assert!(verify_neumann_eigenpair(&g, &cand, 1e-9).unwrap().feasible);
    }

    #[test]
    fn neumann_full_p3_second_eigenpair() {
        // whole P3 as interior (empty boundary): x = (1, 0, -1) with the
        // eigenvalue from its Rayleigh quotient
        let g = Graph::path(3).with_interior(vec![0, 1, 2]).unwrap();
        let x = vec![1.0, 0.0, -1.0];
        let mu = rayleigh_1(&Graph::path(3), &x).unwrap();
        assert_eq!(mu, 1.0);
        let res = verify_neumann_eigenpair(&g, &EigenCandidate { x, mu }, 1e-9).unwrap();
        assert!(res.feasible);
        let cert = res.certificate.unwrap();
        for &(_, _, z) in &cert.z {
            assert!(z.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn neumann_huge_eigenvalue_is_infeasible() {
        let g = Graph::path(3).with_interior(vec![0, 1, 2]).unwrap();
        let cand = EigenCandidate {
            x: vec![0.4, -0.9, 0.2],
            mu: 1e6,
        };
        assert!(!verify_neumann_eigenpair(&g, &cand, 1e-9).unwrap().feasible);
    }

    #[test]
    fn rayleigh_examples() {
        let k2 = Graph::path(2);
        assert_eq!(rayleigh_1(&k2, &[1.0, -1.0]).unwrap(), 1.0);
        let p3 = Graph::path(3);
        assert_eq!(rayleigh_1(&p3, &[1.0, 1.0, 1.0]).unwrap(), 0.0);
        let gb = p3_boundary();
        assert_eq!(dirichlet_rayleigh(&gb, &[0.0, 1.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(
            rayleigh_1(&p3, &[0.0, 0.0, 0.0]),
            Err(LaplaceError::ZeroDenominator)
        ));
    }

    #[test]
    fn dirichlet_quotient_matches_cheeger_constant() {
        let g = p3_boundary();
        let h1 = crate::graphinv::cheeger(&g, CheegerVariant::Dirichlet)
            .unwrap()
            .value;
        assert_eq!(dirichlet_rayleigh(&g, &[0.0, 1.0, 0.0]).unwrap(), h1);
    }

    #[test]
    fn nodal_domain_examples() {
        let p3 = Graph::path(3);
        let (count, _) = nodal_domains(&p3, &[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(count, 2);
        assert_eq!(nodal_domains(&p3, &[1.0, 1.0, 1.0]).unwrap().0, 1);
        // star of three triangles joined at a hub with alternating signs
        let mut edges = Vec::new();
        for t in 0..3usize {
            let a = 1 + 2 * t;
            let b = 2 + 2 * t;
            edges.extend_from_slice(&[(0, a), (0, b), (a, b)]);
        }
        let star3 = Graph::new(7, edges).unwrap();
        let x = [0.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0];
        assert_eq!(nodal_domains(&star3, &x).unwrap().0, 3);
    }

    /// `h_1` equals the first Dirichlet eigenvalue: the indicator of the
    /// optimal Cheeger set is a feasible eigenpair at `mu = h_1` on each
    /// bundled boundary graph.
    #[test]
    fn cheeger_set_indicator_is_dirichlet_eigenpair() {
        let bundled = [
            Graph::path(3).with_interior(vec![1]).unwrap(),
            Graph::path(4).with_interior(vec![1, 2]).unwrap(),
            Graph::cycle(5).with_interior(vec![0, 1, 2]).unwrap(),
            Graph::star(4).with_interior(vec![0]).unwrap(),
            Graph::complete(4).with_interior(vec![0, 1]).unwrap(),
        ];
        for g in bundled {
            let cand = dirichlet_cheeger_candidate(&g).unwrap();
            let res = verify_dirichlet_eigenpair(&g, &cand, 1e-9).unwrap();
            assert!(res.feasible, "h1 eigenpair infeasible on {g:?}");
            let cert = res.certificate.unwrap();
            for &(u, v, z) in &cert.z {
                let (lo, hi) = SignRegion::of(cand.x[u] - cand.x[v]).bounds();
                assert!(z >= lo - 1e-12 && z <= hi + 1e-12);
            }
            for &(v, c) in &cert.c {
                let (lo, hi) = SignRegion::of(cand.x[v]).bounds();
                assert!(c >= lo - 1e-12 && c <= hi + 1e-12);
            }
            // Rayleigh quotient at the certified indicator equals mu
            let q = dirichlet_rayleigh(&g, &cand.x).unwrap();
            assert!((q - cand.mu).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_feasibility_agrees_with_float_fallback() {
        // same tiny system through both code paths
        let bounds = vec![(-1.0, 1.0), (1.0, 1.0), (-1.0, -1.0)];
        let rows = vec![
            FeasRow {
                coeffs: vec![(0, 1.0), (1, 2.0), (2, 1.0)],
                rhs: 1.5,
            },
            FeasRow {
                coeffs: vec![(0, 1.0), (2, -1.0)],
                rhs: 1.5,
            },
        ];
        let rat = phase1(
            &bounds
                .iter()
                .map(|&(l, h)| (to_rat(l), to_rat(h)))
                .collect::<Vec<_>>(),
            &rows
                .iter()
                .map(|r| {
                    (
                        r.coeffs
                            .iter()
                            .map(|&(i, c)| (i, to_rat(c)))
                            .collect::<Vec<_>>(),
                        to_rat(r.rhs),
                    )
                })
                .collect::<Vec<_>>(),
            BigRational::zero(),
        );
        let flt = phase1(
            &bounds,
            &rows
                .iter()
                .map(|r| (r.coeffs.clone(), r.rhs))
                .collect::<Vec<_>>(),
            1e-9,
        );
        assert_eq!(rat.is_some(), flt.is_some());
        let w = rat.unwrap();
        // the witness solves the system exactly
        let lhs0 = w[0].clone() + to_rat(2.0) * w[1].clone() + w[2].clone();
        assert_eq!(lhs0, to_rat(1.5));
        let lhs1 = w[0].clone() - w[2].clone();
        assert_eq!(lhs1, to_rat(1.5));
    }

    #[test]
    fn infeasible_box_system_detected() {
        // x + y = 5 with x, y in [0, 1]
        let bounds = vec![(0.0, 1.0), (0.0, 1.0)];
        let rows = vec![FeasRow {
            coeffs: vec![(0, 1.0), (1, 1.0)],
            rhs: 5.0,
        }];
        let (feasible, _, exact) = box_feasibility(&bounds, &rows);
        assert!(!feasible);
        assert!(exact);
    }
}
