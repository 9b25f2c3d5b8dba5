//! Discrete Morse theory on simplicial complexes and hypergraphs, and its
//! certification through the restriction of the Lovász extension to the
//! order complex.
//!
//! Homotopy-equivalence statements are certified at the Betti-number level
//! over GF(2): the criticality definitions (Forman on the discrete side,
//! Kühnel/Edelsbrunner PL criticality via reduced homology of the lower
//! link on the continuous side) are homological, so Betti numbers decide
//! them. Sub-level membership uses "value not greater than" exactly; the
//! injectivity precondition rules out ties. Reduced homology gives the
//! empty complex Betti number one in degree `-1`, which makes index-0
//! criticality of minima come out right.

use crate::lovasz::lovasz_eval;
use crate::setfun::{DiscreteFunction, GroundSet, Mode, SetArg};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

pub const MAX_CHAINS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum MorseError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("face family is not downward closed: {0:#b} present, subset {1:#b} missing")]
    NotDownwardClosed(u32, u32),
    #[error("singleton {{{0}}} missing from the complex")]
    MissingSingleton(usize),
    #[error("empty face not allowed")]
    EmptyFace,
    #[error("duplicate face {0:#b}")]
    DuplicateFace(u32),
    #[error("face function is missing a value for face {0:#b}")]
    MissingValue(u32),
    #[error("face function must be injective for this operation")]
    NotInjective,
    #[error("function is not a discrete Morse function: {0} violations")]
    NotMorse(usize),
    #[error("face {0:#b} is not in the complex")]
    NoSuchFace(u32),
    #[error("too many chains in the order complex (> {MAX_CHAINS})")]
    TooManyChains,
    #[error("subcomplex is not contained in the complex")]
    NotASubcomplex,
    #[error("point is not supported on a chain of the complex: level set {0:#b} is not a face")]
    PointOffComplex(u32),
    #[error("point has negative entries or total mass above one")]
    PointOutsideRealization,
    #[error(transparent)]
    Lovasz(#[from] crate::lovasz::LovaszError),
}

pub type Result<T> = std::result::Result<T, MorseError>;

// ---------------------------------------------------------------------------
// Complexes and face functions
// ---------------------------------------------------------------------------

/// Downward-closed family of nonempty faces (bit masks) with all
/// singletons present.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<u32>,
}

impl SimplicialComplex {
    pub fn new(n: usize, faces: Vec<u32>) -> Result<Self> {
        if n > 30 {
            return Err(MorseError::VertexOutOfRange(n, 30));
        }
        let mut sorted = faces;
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(MorseError::DuplicateFace(w[0]));
            }
        }
        let set: HashSet<u32> = sorted.iter().copied().collect();
        for &f in &sorted {
            if f == 0 {
                return Err(MorseError::EmptyFace);
            }
            if f >= 1 << n {
                return Err(MorseError::VertexOutOfRange(
                    (31 - f.leading_zeros()) as usize,
                    n,
                ));
            }
            // remove one vertex at a time: every facet of a face is a face
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                let sub = f & !low;
                if sub != 0 && !set.contains(&sub) {
                    return Err(MorseError::NotDownwardClosed(f, sub));
                }
                bits &= bits - 1;
            }
        }
        for v in 0..n {
            if !set.contains(&(1 << v)) {
                return Err(MorseError::MissingSingleton(v));
            }
        }
        // sort by (dimension, mask): supersets always come later
        sorted.sort_by_key(|&f| (f.count_ones(), f));
        Ok(SimplicialComplex { n, faces: sorted })
    }

    /// Builds the downward closure of the given faces, with all singletons.
    pub fn closure(n: usize, generators: &[u32]) -> Result<Self> {
        let mut set: HashSet<u32> = HashSet::new();
        for v in 0..n {
            set.insert(1 << v);
        }
        let mut stack: Vec<u32> = generators.to_vec();
        while let Some(f) = stack.pop() {
            if f == 0 || !set.insert(f) {
                continue;
            }
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                let sub = f & !low;
                if sub != 0 {
                    stack.push(sub);
                }
                bits &= bits - 1;
            }
        }
        SimplicialComplex::new(n, set.into_iter().collect())
    }

    /// Three vertices and three edges, no triangle.
    pub fn circle() -> Self {
        SimplicialComplex::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap()
    }

    /// The full simplex on `n` vertices: every nonempty subset.
    pub fn full_simplex(n: usize) -> Self {
        SimplicialComplex::new(n, (1..(1u32 << n)).collect()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Faces sorted by (dimension, mask).
    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces
            .binary_search_by_key(&(face.count_ones(), face), |&f| (f.count_ones(), f))
            .is_ok()
    }

    pub fn dim(&self) -> usize {
        self.faces
            .iter()
            .map(|f| f.count_ones() as usize - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim() + 1];
        for f in &self.faces {
            counts[f.count_ones() as usize - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Cone over the complex: a fresh apex joined to every face.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = 1u32 << self.n;
        let mut faces: Vec<u32> = self.faces.clone();
        faces.push(apex);
        for &f in &self.faces {
            faces.push(f | apex);
        }
        SimplicialComplex::new(self.n + 1, faces).unwrap()
    }
}

/// Arbitrary family of nonempty hyperedges, no duplicates.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<u32>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<u32>) -> Result<Self> {
        if n > 30 {
            return Err(MorseError::VertexOutOfRange(n, 30));
        }
        let mut sorted = edges;
        sorted.sort_by_key(|&f| (f.count_ones(), f));
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(MorseError::DuplicateFace(w[0]));
            }
        }
        if sorted.iter().any(|&e| e == 0) {
            return Err(MorseError::EmptyFace);
        }
        Ok(Hypergraph { n, edges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }
}

/// Total real-valued function on the faces of a complex (or edges of a
/// hypergraph).
#[derive(Debug, Clone)]
pub struct FaceFunction {
    values: HashMap<u32, f64>,
}

impl FaceFunction {
    pub fn new(entries: impl IntoIterator<Item = (u32, f64)>) -> Self {
        FaceFunction {
            values: entries.into_iter().collect(),
        }
    }

    pub fn value(&self, face: u32) -> Result<f64> {
        self.values
            .get(&face)
            .copied()
            .ok_or(MorseError::MissingValue(face))
    }

    pub fn assert_total(&self, faces: &[u32]) -> Result<()> {
        for &f in faces {
            self.value(f)?;
        }
        Ok(())
    }

    pub fn is_injective(&self, faces: &[u32]) -> bool {
        let mut seen: Vec<u64> = faces
            .iter()
            .map(|f| self.values.get(f).copied().unwrap_or(f64::NAN).to_bits())
            .collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

// ---------------------------------------------------------------------------
// Forman theory
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MorseValidation {
    pub valid: bool,
    /// Faces where `#U > 1` or `#L > 1`, with the offending counts.
    pub violations: Vec<(u32, usize, usize)>,
}

fn up_down_sets(
    k: &SimplicialComplex,
    f: &FaceFunction,
    sigma: u32,
) -> Result<(Vec<u32>, Vec<u32>)> {
    let fs = f.value(sigma)?;
    let p = sigma.count_ones();
    let mut up = Vec::new();
    for v in 0..k.n {
        let tau = sigma | 1 << v;
        if tau != sigma && k.contains(tau) && f.value(tau)? <= fs {
            up.push(tau);
        }
    }
    let mut down = Vec::new();
    let mut bits = sigma;
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        let nu = sigma & !low;
        if nu != 0 && p >= 2 && f.value(nu)? >= fs {
            down.push(nu);
        }
        bits &= bits - 1;
    }
    Ok((up, down))
}

/// Discrete Morse property: at most one non-increasing coface and one
/// non-decreasing facet per face.
pub fn validate_discrete_morse(k: &SimplicialComplex, f: &FaceFunction) -> Result<MorseValidation> {
    f.assert_total(&k.faces)?;
    let mut violations = Vec::new();
    for &sigma in &k.faces {
        let (up, down) = up_down_sets(k, f, sigma)?;
        if up.len() > 1 || down.len() > 1 {
            violations.push((sigma, up.len(), down.len()));
        }
    }
    Ok(MorseValidation {
        valid: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone)]
pub struct FormanReport {
    /// Critical faces with their index (= dimension).
    pub critical: Vec<(u32, usize)>,
    /// `morse_vector[i]` = number of critical faces of index `i`.
    pub morse_vector: Vec<usize>,
}

pub fn forman_critical(k: &SimplicialComplex, f: &FaceFunction) -> Result<FormanReport> {
    let validation = validate_discrete_morse(k, f)?;
    if !validation.valid {
        return Err(MorseError::NotMorse(validation.violations.len()));
    }
    let mut critical = Vec::new();
    let mut morse_vector = vec![0usize; k.dim() + 1];
    for &sigma in &k.faces {
        let (up, down) = up_down_sets(k, f, sigma)?;
        if up.is_empty() && down.is_empty() {
            let index = sigma.count_ones() as usize - 1;
            critical.push((sigma, index));
            morse_vector[index] += 1;
        }
    }
    while morse_vector.last() == Some(&0) && morse_vector.len() > 1 {
        morse_vector.pop();
    }
    Ok(FormanReport {
        critical,
        morse_vector,
    })
}

// ---------------------------------------------------------------------------
// Order complexes
// ---------------------------------------------------------------------------

/// Vertices are faces (or hyperedges); simplices are inclusion chains.
/// Geometric vertex coordinates are the indicator vectors.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    /// Face masks, sorted by (cardinality, mask).
    pub vertices: Vec<u32>,
    /// Chains grouped by dimension (`chains[d]` = chains of `d + 1` faces),
    /// each chain listing indices into `vertices` in increasing order.
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl OrderComplex {
    pub fn chain_count(&self) -> usize {
        self.chains.iter().map(|c| c.len()).sum()
    }

    pub fn maximal_chains(&self) -> Vec<&Vec<usize>> {
        let mut out = Vec::new();
        let all: HashSet<&Vec<usize>> = self.chains.iter().flatten().collect();
        let _ = all;
        // a chain is maximal when no chain one longer contains it
        for (d, level) in self.chains.iter().enumerate() {
            let next: Vec<&Vec<usize>> = self
                .chains
                .get(d + 1)
                .map(|l| l.iter().collect())
                .unwrap_or_default();
            for chain in level {
                let extendable = next
                    .iter()
                    .any(|longer| chain.iter().all(|v| longer.contains(v)));
                if !extendable {
                    out.push(chain);
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chains
            .iter()
            .enumerate()
            .map(|(d, level)| {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                sign * level.len() as i64
            })
            .sum()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.chains.iter().map(|l| l.len()).collect()
    }

    /// GF(2) chain complex with the faces as vertex labels.
    pub fn chain_complex(&self) -> ChainComplexGF2 {
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        for level in &self.chains {
            simplices.push(
                level
                    .iter()
                    .map(|chain| chain.iter().map(|&i| self.vertices[i]).collect())
                    .collect(),
            );
        }
        ChainComplexGF2 { simplices }
    }
}

fn build_order_complex(faces_sorted: &[u32]) -> Result<OrderComplex> {
    let vertices = faces_sorted.to_vec();
    let m = vertices.len();
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut total = 0usize;
    // depth-first extension by strictly larger (by cardinality, mask order)
    // supersets; every chain is emitted exactly once
    let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        total += 1;
        if total > MAX_CHAINS {
            return Err(MorseError::TooManyChains);
        }
        let d = chain.len() - 1;
        if chains.len() <= d {
            chains.resize(d + 1, Vec::new());
        }
        let top = vertices[*chain.last().unwrap()];
        for next in chain.last().unwrap() + 1..m {
            let cand = vertices[next];
            if cand != top && cand & top == top {
                let mut extended = chain.clone();
                extended.push(next);
                stack.push(extended);
            }
        }
        chains[d].push(chain);
    }
    for level in &mut chains {
        level.sort();
    }
    Ok(OrderComplex { vertices, chains })
}

pub fn order_complex(k: &SimplicialComplex) -> Result<OrderComplex> {
    build_order_complex(&k.faces)
}

pub fn order_complex_of_hypergraph(h: &Hypergraph) -> Result<OrderComplex> {
    build_order_complex(&h.edges)
}

/// Evaluates `sum lambda_sigma f(sigma)` for a point of the geometric
/// realization given by its coordinates in `R^n`, recovering the chain and
/// the convex weights from the level sets, and cross-checks against the
/// Lovász extension of `f` extended by zero off the complex.
pub fn lovasz_on_order_complex(k: &SimplicialComplex, f: &FaceFunction, x: &[f64]) -> Result<f64> {
    if x.iter().any(|&v| v < -1e-12) {
        return Err(MorseError::PointOutsideRealization);
    }
    let mut levels: Vec<f64> = x.iter().copied().filter(|&v| v > 0.0).collect();
    levels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    levels.dedup();
    if levels.first().copied().unwrap_or(0.0) > 1.0 + 1e-12 {
        return Err(MorseError::PointOutsideRealization);
    }
    let mut total = 0.0;
    let mut prev = 0.0;
    // walk levels from the top; the level set at threshold c is a face
    for (idx, &c) in levels.iter().enumerate() {
        let mask = (0..k.n).fold(0u32, |m, i| if x[i] >= c { m | 1 << i } else { m });
        if !k.contains(mask) {
            return Err(MorseError::PointOffComplex(mask));
        }
        let lambda = if idx == 0 { c } else { prev - c };
        let _ = lambda;
        prev = c;
        // weight of this face = its level minus the next level down
        let next = levels.get(idx + 1).copied().unwrap_or(0.0);
        total += (c - next) * f.value(mask)?;
    }
    // cross-check against the extension of f-extended-by-zero
    if k.n <= 20 {
        let ground = GroundSet::new(k.n).unwrap();
        let mut table = DiscreteFunction::new(ground, Mode::Set);
        for &face in &k.faces {
            table.insert(SetArg::set(face), f.value(face)?).unwrap();
        }
        let ext = lovasz_eval(&table, x)?;
        assert!(
            (ext - total).abs() <= 1e-12 * (1.0 + total.abs()),
            "chain evaluation {total} disagrees with extension {ext}"
        );
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// GF(2) homology
// ---------------------------------------------------------------------------

/// Simplices grouped by dimension; each simplex is a sorted list of
/// arbitrary `u32` vertex labels.
#[derive(Debug, Clone)]
pub struct ChainComplexGF2 {
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl ChainComplexGF2 {
    pub fn from_simplices(list: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut seen = HashSet::new();
        for mut s in list {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || !seen.insert(s.clone()) {
                continue;
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort();
        }
        ChainComplexGF2 { simplices: by_dim }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.iter().all(|l| l.is_empty())
    }

    fn contains_all_of(&self, other: &ChainComplexGF2) -> bool {
        other.simplices.iter().enumerate().all(|(d, level)| {
            level.iter().all(|s| {
                self.simplices
                    .get(d)
                    .map_or(false, |own| own.binary_search(s).is_ok())
            })
        })
    }

    /// Absolute or relative Betti numbers over GF(2) via boundary-matrix
    /// ranks. Relative chain groups drop the subcomplex simplices.
    pub fn betti(&self, relative_to: Option<&ChainComplexGF2>) -> Result<Vec<usize>> {
        if let Some(sub) = relative_to {
            if !self.contains_all_of(sub) {
                return Err(MorseError::NotASubcomplex);
            }
        }
        let top = self.simplices.len();
        // relative chain bases per dimension
        let mut bases: Vec<Vec<&Vec<u32>>> = Vec::new();
        for d in 0..top {
            let level = &self.simplices[d];
            let keep: Vec<&Vec<u32>> = level
                .iter()
                .filter(|s| {
                    relative_to.map_or(true, |sub| {
                        sub.simplices
                            .get(d)
                            .map_or(true, |l| l.binary_search(s).is_err())
                    })
                })
                .collect();
            bases.push(keep);
        }
        let index_of: Vec<HashMap<&Vec<u32>, usize>> = bases
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (*s, i)).collect())
            .collect();
        // rank of each boundary map d_k: C_k -> C_{k-1}
        let mut ranks = vec![0usize; top + 1];
        for d in 1..top {
            let rows: Vec<Vec<u64>> = bases[d]
                .iter()
                .map(|s| {
                    let cols = bases[d - 1].len();
                    let mut row = vec![0u64; cols.div_ceil(64)];
                    for omit in 0..s.len() {
                        let mut facet: Vec<u32> = s.to_vec();
                        facet.remove(omit);
                        if let Some(&c) = index_of[d - 1].get(&facet) {
                            row[c / 64] ^= 1 << (c % 64);
                        }
                    }
                    row
                })
                .collect();
            ranks[d] = gf2_rank(rows);
        }
        let betti: Vec<usize> = (0..top)
            .map(|d| bases[d].len() - ranks[d] - ranks[d + 1])
            .collect();
        Ok(betti)
    }

    /// Reduced Betti numbers `(b'_{-1}, [b'_0, b'_1, ..])`; the empty
    /// complex has `b'_{-1} = 1`.
    pub fn reduced_betti(&self) -> Result<(usize, Vec<usize>)> {
        if self.is_empty() {
            return Ok((1, Vec::new()));
        }
        let mut betti = self.betti(None)?;
        if !betti.is_empty() {
            betti[0] -= 1; // the augmentation map has rank one
        }
        Ok((0, betti))
    }
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (a, b2) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b2;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Betti numbers of a simplicial complex (optionally relative to a
/// subcomplex) over GF(2).
pub fn betti_gf2(
    k: &SimplicialComplex,
    relative_to: Option<&SimplicialComplex>,
) -> Result<Vec<usize>> {
    let to_chain = |c: &SimplicialComplex| {
        ChainComplexGF2::from_simplices(c.faces.iter().map(|&f| {
            (0..c.n as u32)
                .filter(|v| f >> v & 1 == 1)
                .collect::<Vec<u32>>()
        }))
    };
    let chain = to_chain(k);
    match relative_to {
        Some(sub) => chain.betti(Some(&to_chain(sub))),
        None => chain.betti(None),
    }
}

// ---------------------------------------------------------------------------
// PL criticality through the order complex
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PlCriticality {
    pub face: u32,
    pub is_critical: bool,
    /// `(index, multiplicity)` pairs with nonzero multiplicity.
    pub indices: Vec<(usize, usize)>,
}

/// Lower link of `1_sigma` in the order complex: faces comparable to
/// `sigma` with smaller value, chained.
fn lower_link(k: &SimplicialComplex, f: &FaceFunction, sigma: u32) -> Result<ChainComplexGF2> {
    let fs = f.value(sigma)?;
    let mut verts: Vec<u32> = Vec::new();
    for &tau in &k.faces {
        if tau != sigma && (tau & sigma == tau || tau & sigma == sigma) && f.value(tau)? <= fs {
            verts.push(tau);
        }
    }
    let oc = build_order_complex(&verts)?;
    Ok(oc.chain_complex())
}

/// Kühnel/Edelsbrunner criticality of `1_sigma` for the extension
/// restricted to the order complex: index `i` with multiplicity
/// `b'_{i-1}(lower link)`.
pub fn pl_critical(k: &SimplicialComplex, f: &FaceFunction, sigma: u32) -> Result<PlCriticality> {
    if !k.contains(sigma) {
        return Err(MorseError::NoSuchFace(sigma));
    }
    if !f.is_injective(&k.faces) {
        return Err(MorseError::NotInjective);
    }
    let link = lower_link(k, f, sigma)?;
    let (b_neg1, reduced) = link.reduced_betti()?;
    let mut indices = Vec::new();
    if b_neg1 > 0 {
        indices.push((0, b_neg1));
    }
    for (j, &b) in reduced.iter().enumerate() {
        if b > 0 {
            indices.push((j + 1, b));
        }
    }
    Ok(PlCriticality {
        face: sigma,
        is_critical: !indices.is_empty(),
        indices,
    })
}

#[derive(Debug, Clone)]
pub struct EulerReport {
    pub alternating_sum: i64,
    pub euler_complex: i64,
    pub euler_order_complex: i64,
    pub morse_vector: Vec<usize>,
    pub pl_vector: Vec<usize>,
    pub consistent: bool,
}

/// Checks that the Morse vector's alternating sum equals the Euler
/// characteristic computed from the face counts of the complex and,
/// independently, of its order complex, and that PL-critical points of the
/// restricted extension reproduce the Morse vector exactly.
pub fn morse_euler_check(k: &SimplicialComplex, f: &FaceFunction) -> Result<EulerReport> {
    if !f.is_injective(&k.faces) {
        return Err(MorseError::NotInjective);
    }
    let forman = forman_critical(k, f)?;
    let alternating_sum: i64 = forman
        .morse_vector
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    let euler_complex = k.euler_characteristic();
    let euler_order_complex = order_complex(k)?.euler_characteristic();
    let mut pl_vector = vec![0usize; k.dim() + 1];
    for &sigma in &k.faces {
        let crit = pl_critical(k, f, sigma)?;
        for (index, mult) in crit.indices {
            if pl_vector.len() <= index {
                pl_vector.resize(index + 1, 0);
            }
            pl_vector[index] += mult;
        }
    }
    while pl_vector.last() == Some(&0) && pl_vector.len() > 1 {
        pl_vector.pop();
    }
    let consistent = alternating_sum == euler_complex
        && euler_complex == euler_order_complex
        && pl_vector == forman.morse_vector;
    Ok(EulerReport {
        alternating_sum,
        euler_complex,
        euler_order_complex,
        morse_vector: forman.morse_vector,
        pl_vector,
        consistent,
    })
}

// ---------------------------------------------------------------------------
// Hypergraph Morse theory
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct HypergraphMorseReport {
    pub valid: bool,
    pub violations: Vec<(u32, usize, usize)>,
    /// Critical edges with their height (= index).
    pub critical: Vec<(u32, usize)>,
}

/// Simple discrete Morse structure over sequential pairs: an edge pair
/// `(e', e)` is sequential if `e'` is properly contained in `e` with
/// nothing in between; the height of `e` is the longest strict chain
/// below it.
pub fn hypergraph_morse(h: &Hypergraph, f: &FaceFunction) -> Result<HypergraphMorseReport> {
    f.assert_total(&h.edges)?;
    let sequential = |a: u32, b: u32| -> bool {
        a & b == a
            && a != b
            && !h
                .edges
                .iter()
                .any(|&m| m != a && m != b && a & m == a && m & b == m)
    };
    let mut heights: HashMap<u32, usize> = HashMap::new();
    for &e in &h.edges {
        // edges sorted by cardinality: all strict subsets come earlier
        let mut best = 0usize;
        for &sub in &h.edges {
            if sub != e && sub & e == sub {
                best = best.max(heights.get(&sub).copied().unwrap_or(0) + 1);
            }
        }
        heights.insert(e, best);
    }
    let mut violations = Vec::new();
    let mut critical = Vec::new();
    for &e in &h.edges {
        let fe = f.value(e)?;
        let mut up = 0usize; // sequential pairs (e', e) with f(e') >= f(e)
        let mut down = 0usize; // sequential pairs (e, t) with f(e) >= f(t)
        for &other in &h.edges {
            if sequential(other, e) && f.value(other)? >= fe {
                up += 1;
            }
            if sequential(e, other) && fe >= f.value(other)? {
                down += 1;
            }
        }
        if up > 1 || down > 1 {
            violations.push((e, up, down));
        }
        if up == 0 && down == 0 {
            critical.push((e, heights[&e]));
        }
    }
    Ok(HypergraphMorseReport {
        valid: violations.is_empty(),
        violations,
        critical,
    })
}

// ---------------------------------------------------------------------------
// Random instances and independent subdivision counts
// ---------------------------------------------------------------------------

/// Random downward-closed complex on `n` vertices.
pub fn random_complex(
    rng: &mut crate::rng::SeededRng,
    n: usize,
    generators: usize,
) -> SimplicialComplex {
    use rand::Rng;
    let mut gens = Vec::new();
    for _ in 0..generators {
        let mask = rng.gen_range(1..(1u32 << n));
        gens.push(mask);
    }
    SimplicialComplex::closure(n, &gens).unwrap()
}

/// Random injective discrete Morse function built from a random acyclic
/// face matching: matched pairs become regular, unmatched faces critical.
pub fn random_injective_morse(
    rng: &mut crate::rng::SeededRng,
    k: &SimplicialComplex,
) -> FaceFunction {
    use rand::Rng;
    let faces = k.faces().to_vec();
    let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = faces.len();
    // cover pairs sigma < tau with dim tau = dim sigma + 1
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &sigma) in faces.iter().enumerate() {
        for v in 0..k.n() {
            let tau = sigma | 1 << v;
            if tau != sigma {
                if let Some(&j) = index.get(&tau) {
                    covers[i].push(j);
                }
            }
        }
    }
    let mut matched: Vec<Option<usize>> = vec![None; m];
    let mut order: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    // digraph acyclicity check for the modified Hasse diagram
    let acyclic = |matched: &Vec<Option<usize>>| -> bool {
        // edges: tau -> sigma for unmatched covers, sigma -> tau for matched
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (i, ups) in covers.iter().enumerate() {
            for &j in ups {
                if matched[i] == Some(j) {
                    adj[i].push(j);
                } else {
                    adj[j].push(i);
                }
            }
        }
        // Kahn
        let mut indeg = vec![0usize; m];
        for list in &adj {
            for &t in list {
                indeg[t] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &t in &adj[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        seen == m
    };
    for &i in &order {
        if matched[i].is_some() {
            continue;
        }
        let mut ups: Vec<usize> = covers[i]
            .iter()
            .copied()
            .filter(|&j| matched[j].is_none())
            .collect();
        for idx in (1..ups.len()).rev() {
            let j = rng.gen_range(0..=idx);
            ups.swap(idx, j);
        }
        for j in ups {
            matched[i] = Some(j);
            matched[j] = Some(i);
            if acyclic(&matched) {
                break;
            }
            matched[i] = None;
            matched[j] = None;
        }
    }
    morse_function_from_matching(k, &matched)
}

/// Builds an injective Morse function realizing a given acyclic matching
/// (`matched[i] = Some(j)` pairs face `i` with coface or facet `j`): values
/// decrease along the modified Hasse digraph, so matched cofaces sit below
/// their faces and everything else increases with dimension.
fn morse_function_from_matching(k: &SimplicialComplex, matched: &[Option<usize>]) -> FaceFunction {
    let faces = k.faces().to_vec();
    let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = faces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &sigma) in faces.iter().enumerate() {
        for v in 0..k.n() {
            let tau = sigma | 1 << v;
            if tau != sigma {
                if let Some(&j) = index.get(&tau) {
                    if matched[i] == Some(j) {
                        adj[i].push(j); // f(sigma) > f(tau): regular pair
                    } else {
                        adj[j].push(i); // f(tau) > f(sigma)
                    }
                }
            }
        }
    }
    let mut indeg = vec![0usize; m];
    for list in &adj {
        for &t in list {
            indeg[t] += 1;
        }
    }
    let mut queue: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..m)
        .filter(|&i| indeg[i] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut value = m as f64;
    let mut entries = Vec::with_capacity(m);
    while let Some(std::cmp::Reverse(v)) = queue.pop() {
        entries.push((faces[v], value));
        value -= 1.0;
        for &t in &adj[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(std::cmp::Reverse(t));
            }
        }
    }
    FaceFunction::new(entries)
}

/// Morse function for the cone matching on the full simplex: every face
/// avoiding vertex 0 pairs with its extension by vertex 0, leaving the
/// apex vertex as the only critical cell.
pub fn full_simplex_cone_function(n: usize) -> FaceFunction {
    let k = SimplicialComplex::full_simplex(n);
    let faces = k.faces().to_vec();
    let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut matched: Vec<Option<usize>> = vec![None; faces.len()];
    for (i, &sigma) in faces.iter().enumerate() {
        if sigma & 1 == 0 {
            let j = index[&(sigma | 1)];
            matched[i] = Some(j);
            matched[j] = Some(i);
        }
    }
    morse_function_from_matching(&k, &matched)
}

/// Number of surjections from an `m`-element set onto an `r`-element set,
/// by inclusion-exclusion.
pub fn surjections(m: usize, r: usize) -> u64 {
    if r == 0 {
        return u64::from(m == 0);
    }
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for i in 0..=r {
        let term = binom * (r as i128 - i as i128).pow(m as u32);
        total += if i % 2 == 0 { term } else { -term };
        binom = binom * (r as i128 - i as i128) / (i as i128 + 1);
    }
    total as u64
}

/// Face counts of the barycentric subdivision computed directly from the
/// face counts of the complex: a `q`-simplex of the subdivision is a flag
/// ending at some `j`-face, counted by surjections of its vertex set onto
/// the ordered blocks.
pub fn barycentric_subdivision_counts(k: &SimplicialComplex) -> Vec<usize> {
    let counts = k.face_counts();
    let top = counts.len();
    (0..top)
        .map(|q| {
            (q..top)
                .map(|j| counts[j] * surjections(j + 1, q + 1) as usize)
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn circle_function() -> FaceFunction {
        FaceFunction::new([
            (0b001u32, 0.0),
            (0b010, 1.0),
            (0b100, 2.0),
            (0b011, 0.5),
            (0b101, 1.5),
            (0b110, 3.0),
        ])
    }

    #[test]
    fn circle_function_is_morse() {
        let k = SimplicialComplex::circle();
        assert!(
            validate_discrete_morse(&k, &circle_function())
                .unwrap()
                .valid
        );
    }

    #[test]
    fn constant_function_is_not_morse() {
        let k = SimplicialComplex::circle();
        let f = FaceFunction::new(k.faces().iter().map(|&f| (f, 1.0)));
        let v = validate_discrete_morse(&k, &f).unwrap();
        assert!(!v.valid);
    }

    #[test]
    fn dimension_increasing_function_is_morse_all_critical() {
        let k = SimplicialComplex::full_simplex(3);
        let f = FaceFunction::new(
            k.faces()
                .iter()
                .enumerate()
                .map(|(i, &m)| (m, m.count_ones() as f64 + i as f64 * 1e-6)),
        );
        assert!(validate_discrete_morse(&k, &f).unwrap().valid);
        let report = forman_critical(&k, &f).unwrap();
        assert_eq!(report.critical.len(), k.faces().len());
    }

    #[test]
    fn circle_morse_vector() {
        let k = SimplicialComplex::circle();
        let report = forman_critical(&k, &circle_function()).unwrap();
        assert_eq!(report.morse_vector, vec![1, 1]);
        let faces: Vec<u32> = report.critical.iter().map(|&(f, _)| f).collect();
        assert_eq!(faces, vec![0b001, 0b110]);
    }

    #[test]
    fn cone_matching_on_full_simplex_single_critical_vertex() {
        for n in 2..=4 {
            let k = SimplicialComplex::full_simplex(n);
            let f = full_simplex_cone_function(n);
            let report = forman_critical(&k, &f).unwrap();
            assert_eq!(report.critical, vec![(1, 0)], "n = {n}");
            assert_eq!(report.morse_vector, vec![1]);
        }
    }

    #[test]
    fn two_isolated_vertices() {
        let k = SimplicialComplex::new(2, vec![0b01, 0b10]).unwrap();
        let f = FaceFunction::new([(0b01u32, 0.0), (0b10, 1.0)]);
        let report = forman_critical(&k, &f).unwrap();
        assert_eq!(report.morse_vector, vec![2]);
    }

    #[test]
    fn order_complex_of_circle_is_subdivided_hexagon() {
        let k = SimplicialComplex::circle();
        let oc = order_complex(&k).unwrap();
        assert_eq!(oc.vertices.len(), 6);
        assert_eq!(oc.face_counts(), vec![6, 6]);
        assert_eq!(oc.maximal_chains().len(), 6);
    }

    #[test]
    fn order_complex_of_single_vertex() {
        let k = SimplicialComplex::new(1, vec![0b1]).unwrap();
        let oc = order_complex(&k).unwrap();
        assert_eq!(oc.face_counts(), vec![1]);
    }

    #[test]
    fn order_complex_of_hypergraph_chain() {
        let h = Hypergraph::new(3, vec![0b001, 0b111]).unwrap();
        let oc = order_complex_of_hypergraph(&h).unwrap();
        assert_eq!(oc.face_counts(), vec![2, 1]);
    }

    #[test]
    fn chain_evaluation_matches_extension() {
        let k = SimplicialComplex::circle();
        let f = circle_function();
        // vertex point
        assert_eq!(
            lovasz_on_order_complex(&k, &f, &[0.0, 1.0, 0.0]).unwrap(),
            1.0
        );
        // midpoint of a vertex and an edge containing it
        let mid = [0.5, 0.5, 0.0];
        let expected = (f.value(0b011).unwrap() + f.value(0b001).unwrap()) / 2.0;
        let got = lovasz_on_order_complex(&k, &f, &mid).unwrap();
        assert!((got - expected).abs() < 1e-12);
        // random convex combination along a maximal chain
        let x = [0.75, 0.25, 0.0];
        let expected = 0.5 * f.value(0b001).unwrap() + 0.25 * f.value(0b011).unwrap();
        let got = lovasz_on_order_complex(&k, &f, &x).unwrap();
        assert!((got - expected).abs() < 1e-12);
        // off-complex point rejected
        assert!(matches!(
            lovasz_on_order_complex(&k, &f, &[0.5, 0.5, 0.5]),
            Err(MorseError::PointOffComplex(0b111))
        ));
    }

    #[test]
    fn betti_anchors() {
        let circle = SimplicialComplex::circle();
        assert_eq!(betti_gf2(&circle, None).unwrap(), vec![1, 1]);
        let disc = SimplicialComplex::full_simplex(3);
        assert_eq!(betti_gf2(&disc, None).unwrap(), vec![1, 0, 0]);
        // relative homology of the disc modulo its boundary circle
        assert_eq!(betti_gf2(&disc, Some(&circle)).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn betti_rejects_non_subcomplex() {
        let circle = SimplicialComplex::circle();
        let other = SimplicialComplex::new(3, vec![0b001, 0b010, 0b100]).unwrap();
        assert!(betti_gf2(&other, Some(&circle)).is_err());
    }

    #[test]
    fn cone_has_trivial_homology() {
        let mut rng = seeded(8);
        for _ in 0..5 {
            let k = random_complex(&mut rng, 4, 4);
            let cone = k.cone();
            let betti = betti_gf2(&cone, None).unwrap();
            assert_eq!(betti[0], 1);
            assert!(betti[1..].iter().all(|&b| b == 0), "{betti:?}");
        }
    }

    #[test]
    fn pl_criticality_on_circle() {
        let k = SimplicialComplex::circle();
        let f = circle_function();
        // minimum vertex: empty lower link, index 0
        let v0 = pl_critical(&k, &f, 0b001).unwrap();
        assert!(v0.is_critical);
        assert_eq!(v0.indices, vec![(0, 1)]);
        // top edge: lower link is two points, index 1
        let e12 = pl_critical(&k, &f, 0b110).unwrap();
        assert!(e12.is_critical);
        assert_eq!(e12.indices, vec![(1, 1)]);
        // regular vertex: contractible-like lower link
        let v2 = pl_critical(&k, &f, 0b100).unwrap();
        assert!(!v2.is_critical);
    }

    #[test]
    fn euler_check_examples() {
        let k = SimplicialComplex::circle();
        let rep = morse_euler_check(&k, &circle_function()).unwrap();
        assert_eq!(rep.alternating_sum, 0);
        assert_eq!(rep.euler_complex, 0);
        assert!(rep.consistent);

        let simplex = SimplicialComplex::full_simplex(3);
        let rep = morse_euler_check(&simplex, &full_simplex_cone_function(3)).unwrap();
        assert_eq!(rep.alternating_sum, 1);
        assert!(rep.consistent);

        // two disjoint edges: chi = 4 - 2 = 2
        let k = SimplicialComplex::new(4, vec![0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b1100])
            .unwrap();
        let f = FaceFunction::new([
            (0b0001u32, 0.0),
            (0b0010, 1.0),
            (0b0100, 2.0),
            (0b1000, 3.0),
            (0b0011, 0.5),
            (0b1100, 2.5),
        ]);
        let rep = morse_euler_check(&k, &f).unwrap();
        assert_eq!(rep.euler_complex, 2);
        assert!(rep.consistent);
    }

    #[test]
    fn forman_pl_agreement_on_random_instances() {
        let mut rng = seeded(42);
        for _ in 0..5 {
            let k = random_complex(&mut rng, 5, 5);
            for _ in 0..4 {
                let f = random_injective_morse(&mut rng, &k);
                assert!(validate_discrete_morse(&k, &f).unwrap().valid);
                assert!(f.is_injective(k.faces()));
                let rep = morse_euler_check(&k, &f).unwrap();
                assert!(
                    rep.consistent,
                    "complex {:?} vector {:?} pl {:?}",
                    k.faces(),
                    rep.morse_vector,
                    rep.pl_vector
                );
            }
        }
    }

    /// If sigma is critical then every proper coface has a larger value and
    /// every proper face a smaller one.
    #[test]
    fn critical_values_separate_faces_and_cofaces() {
        let mut rng = seeded(7);
        for _ in 0..5 {
            let k = random_complex(&mut rng, 5, 4);
            let f = random_injective_morse(&mut rng, &k);
            let report = forman_critical(&k, &f).unwrap();
            for &(sigma, _) in &report.critical {
                let fs = f.value(sigma).unwrap();
                for &tau in k.faces() {
                    if tau != sigma && tau & sigma == sigma {
                        assert!(f.value(tau).unwrap() > fs);
                    }
                    if tau != sigma && tau & sigma == tau {
                        assert!(f.value(tau).unwrap() < fs);
                    }
                }
            }
        }
    }

    #[test]
    fn order_complex_counts_match_barycentric_subdivision() {
        let mut rng = seeded(3);
        for _ in 0..5 {
            let k = random_complex(&mut rng, 5, 5);
            let oc = order_complex(&k).unwrap();
            assert_eq!(oc.face_counts(), barycentric_subdivision_counts(&k));
        }
        // spot value: surjections(3, 2) = 6
        assert_eq!(surjections(3, 2), 6);
    }

    #[test]
    fn hypergraph_morse_examples() {
        // increasing-by-cardinality injective function: all critical
        let h = Hypergraph::new(3, vec![0b001, 0b010, 0b111]).unwrap();
        let f = FaceFunction::new([(0b001u32, 0.0), (0b010, 1.0), (0b111, 2.0)]);
        let rep = hypergraph_morse(&h, &f).unwrap();
        assert!(rep.valid);
        let mut critical = rep.critical.clone();
        critical.sort_unstable();
        assert_eq!(critical, vec![(0b001, 0), (0b010, 0), (0b111, 1)]);

        // a sequential pair with decreasing value: both non-critical
        let h = Hypergraph::new(2, vec![0b01, 0b11]).unwrap();
        let f = FaceFunction::new([(0b01u32, 2.0), (0b11, 1.0)]);
        let rep = hypergraph_morse(&h, &f).unwrap();
        assert!(rep.valid);
        assert!(rep.critical.is_empty());

        // single edge: critical with height zero
        let h = Hypergraph::new(2, vec![0b11]).unwrap();
        let f = FaceFunction::new([(0b11u32, 0.0)]);
        let rep = hypergraph_morse(&h, &f).unwrap();
        assert_eq!(rep.critical, vec![(0b11, 0)]);
    }

    #[test]
    fn complex_validation_errors() {
        assert!(matches!(
            SimplicialComplex::new(2, vec![0b01, 0b10, 0b11, 0b11]),
            Err(MorseError::DuplicateFace(0b11))
        ));
        assert!(matches!(
            SimplicialComplex::new(2, vec![0b01, 0b11]),
            Err(MorseError::NotDownwardClosed(0b11, _)) | Err(MorseError::MissingSingleton(_))
        ));
        assert!(matches!(
            SimplicialComplex::new(2, vec![0b01]),
            Err(MorseError::MissingSingleton(1))
        ));
    }
}
