//! JSON input schemas and their validation. Parse errors carry the field
//! path they arose at.

use lovx_core::graphinv::Graph;
use lovx_core::laplace1::EigenCandidate;
use lovx_core::morse::{FaceFunction, Hypergraph, SimplicialComplex};
use lovx_core::setfun::{DiscreteFunction, GroundSet, Mode, SetArg};
use serde::Deserialize;

#[derive(Debug)]
pub struct ParseError {
    pub path: String,
    pub reason: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(path: impl Into<String>, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        path: path.into(),
        reason: reason.into(),
    })
}

// ---------------------------------------------------------------------------

#[derive(Deserialize)]
pub struct FunctionFile {
    pub n: usize,
    pub mode: String,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub entries: Vec<FunctionEntry>,
    #[serde(default)]
    pub default: f64,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Deserialize)]
pub struct FunctionEntry {
    pub arg: Vec<Vec<usize>>,
    pub value: f64,
}

fn vertices_to_mask(path: &str, n: usize, verts: &[usize]) -> Result<u32, ParseError> {
    if n > 30 {
        return err(path, format!("ground set too large: n = {n} > 30"));
    }
    let mut mask = 0u32;
    for &v in verts {
        if v >= n {
            return err(path, format!("vertex {v} out of range for n = {n}"));
        }
        if mask >> v & 1 == 1 {
            return err(path, format!("vertex {v} repeated"));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

pub fn parse_function(text: &str) -> Result<DiscreteFunction, ParseError> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "function".into(),
        reason: e.to_string(),
    })?;
    let ground = GroundSet::new(file.n).map_err(|e| ParseError {
        path: "function.n".into(),
        reason: e.to_string(),
    })?;
    let mode = match file.mode.as_str() {
        "set" => Mode::Set,
        "pair" => Mode::DisjointPair,
        "kway" => Mode::KWaySet(file.k.unwrap_or(1)),
        "kway_pair" => Mode::KWayDisjointPair(file.k.unwrap_or(1)),
        other => return err("function.mode", format!("unknown mode `{other}`")),
    };
    let mut f = DiscreteFunction::new(ground, mode).with_default(file.default);
    if file.strict {
        f = f.strict();
    }
    for (i, entry) in file.entries.iter().enumerate() {
        let path = format!("function.entries[{i}].arg");
        if entry.arg.len() != mode.arity() {
            return err(
                &path,
                format!(
                    "expected {} mask lists, got {}",
                    mode.arity(),
                    entry.arg.len()
                ),
            );
        }
        let masks: Result<Vec<u32>, ParseError> = entry
            .arg
            .iter()
            .enumerate()
            .map(|(s, verts)| vertices_to_mask(&format!("{path}[{s}]"), file.n, verts))
            .collect();
        let arg = SetArg(masks?);
        f.insert(arg, entry.value).map_err(|e| ParseError {
            path,
            reason: e.to_string(),
        })?;
    }
    Ok(f)
}

// ---------------------------------------------------------------------------

#[derive(Deserialize)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<Vec<usize>>,
    #[serde(default)]
    pub boundary: Option<BoundaryFile>,
}

#[derive(Deserialize)]
pub struct BoundaryFile {
    pub interior: Vec<usize>,
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "graph".into(),
        reason: e.to_string(),
    })?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for (i, e) in file.edges.iter().enumerate() {
        if e.len() != 2 {
            return err(
                format!("graph.edges[{i}]"),
                format!("expected two endpoints, got {}", e.len()),
            );
        }
        edges.push((e[0], e[1]));
    }
    let mut g = Graph::new(file.n, edges).map_err(|e| ParseError {
        path: "graph.edges".into(),
        reason: e.to_string(),
    })?;
    if let Some(b) = file.boundary {
        g = g.with_interior(b.interior).map_err(|e| ParseError {
            path: "graph.boundary.interior".into(),
            reason: e.to_string(),
        })?;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------

#[derive(Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub faces: Vec<Vec<usize>>,
}

pub fn parse_complex(text: &str, close: bool) -> Result<SimplicialComplex, ParseError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "complex".into(),
        reason: e.to_string(),
    })?;
    let mut masks = Vec::with_capacity(file.faces.len());
    for (i, verts) in file.faces.iter().enumerate() {
        masks.push(vertices_to_mask(
            &format!("complex.faces[{i}]"),
            file.n,
            verts,
        )?);
    }
    let built = if close {
        SimplicialComplex::closure(file.n, &masks)
    } else {
        SimplicialComplex::new(file.n, masks)
    };
    built.map_err(|e| ParseError {
        path: "complex.faces".into(),
        reason: e.to_string(),
    })
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "hypergraph".into(),
        reason: e.to_string(),
    })?;
    let mut masks = Vec::with_capacity(file.faces.len());
    for (i, verts) in file.faces.iter().enumerate() {
        masks.push(vertices_to_mask(
            &format!("hypergraph.edges[{i}]"),
            file.n,
            verts,
        )?);
    }
    Hypergraph::new(file.n, masks).map_err(|e| ParseError {
        path: "hypergraph.edges".into(),
        reason: e.to_string(),
    })
}

#[derive(Deserialize)]
pub struct FaceFunctionFile {
    pub entries: Vec<FaceEntry>,
}

#[derive(Deserialize)]
pub struct FaceEntry {
    pub face: Vec<usize>,
    pub value: f64,
}

pub fn parse_face_function(text: &str, n: usize) -> Result<FaceFunction, ParseError> {
    let file: FaceFunctionFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "face-function".into(),
        reason: e.to_string(),
    })?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for (i, e) in file.entries.iter().enumerate() {
        let mask = vertices_to_mask(&format!("face-function.entries[{i}].face"), n, &e.face)?;
        entries.push((mask, e.value));
    }
    Ok(FaceFunction::new(entries))
}

#[derive(Deserialize)]
pub struct CandidateFile {
    pub x: Vec<f64>,
    pub mu: f64,
}

pub fn parse_candidate(text: &str) -> Result<EigenCandidate, ParseError> {
    let file: CandidateFile = serde_json::from_str(text).map_err(|e| ParseError {
        path: "candidate".into(),
        reason: e.to_string(),
    })?;
    Ok(EigenCandidate {
        x: file.x,
        mu: file.mu,
    })
}

/// Points come as comma-separated decimals or `@file.json` holding a flat
/// array; k-way points are row-major.
pub fn parse_point(spec: &str) -> Result<Vec<f64>, ParseError> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| ParseError {
            path: format!("point file {path}"),
            reason: e.to_string(),
        })?;
        let values: Vec<f64> = serde_json::from_str(&text).map_err(|e| ParseError {
            path: format!("point file {path}"),
            reason: e.to_string(),
        })?;
        return Ok(values);
    }
    spec.split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|e| ParseError {
                path: "point".into(),
                reason: format!("`{tok}`: {e}"),
            })
        })
        .collect()
}

pub fn mask_to_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}
