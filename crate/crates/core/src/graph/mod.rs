//! Cubic graphs, oriented Hamiltonian paths and canonical Hamiltonian cycles.
//!
//! Vertices are dense indices `0..n`. A [`CubicGraph`] is immutable once built; every
//! vertex has exactly three distinct neighbours, stored sorted. An optional rotation
//! system (one cyclic order of the three neighbours per vertex) acts as a planar
//! embedding witness, see [`check_planarity`].

mod connectivity;
mod embedding;
mod io;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use connectivity::{check_three_connected, is_connected_without};
pub use embedding::{check_planarity, count_faces, PlanarityReport};
pub use io::{GraphJson, ValidationReport, Violation};

pub type VertexId = usize;

/// Undirected edge, endpoints stored in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[VertexId; 2]", from = "[VertexId; 2]")]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b, "loops are not edges of a simple graph");
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl From<Edge> for [VertexId; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

impl From<[VertexId; 2]> for Edge {
    fn from(p: [VertexId; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph is not a valid cubic graph: {0}")]
    Invalid(ValidationReport),
    #[error("no embedding witness")]
    NoEmbedding,
    #[error("rotation at vertex {vertex} is not a permutation of its neighbours")]
    BadRotation { vertex: VertexId },
    #[error("rotation system has {found} entries for {expected} vertices")]
    RotationSize { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("sequence has length {found}, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error("vertex {0} is missing or repeated")]
    NotPermutation(VertexId),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("endpoints {0} and {1} are not adjacent, path does not close")]
    NotClosed(VertexId, VertexId),
    #[error("edge {edge} does not leave vertex {origin} along the cycle")]
    NotCycleEdge { origin: VertexId, edge: Edge },
}

/// A simple 3-regular graph, optionally carrying a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicGraph {
    adjacency: Vec<[VertexId; 3]>,
    rotation: Option<Vec<[VertexId; 3]>>,
}

impl CubicGraph {
    /// Builds a cubic graph from an edge list. Rejects anything that is not simple and 3-regular.
    pub fn from_edges(n_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let raw = GraphJson {
            n_vertices,
            edges: edges.iter().map(|&(u, v)| [u, v]).collect(),
            rotation: None,
        };
        Self::try_from(&raw)
    }

    /// Attaches a rotation system. Only structural consistency is checked here, so
    /// non-planar rotations are representable; [`check_planarity`] decides planarity.
    pub fn with_rotation(mut self, rotation: Vec<[VertexId; 3]>) -> Result<Self, GraphError> {
        if rotation.len() != self.adjacency.len() {
            return Err(GraphError::RotationSize {
                expected: self.adjacency.len(),
                found: rotation.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = *rot;
            sorted.sort_unstable();
            if sorted != self.adjacency[v] {
                return Err(GraphError::BadRotation { vertex: v });
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn without_rotation(&self) -> Self {
        CubicGraph {
            adjacency: self.adjacency.clone(),
            rotation: None,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        3 * self.adjacency.len() / 2
    }

    /// Neighbours of `v` in increasing id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId; 3] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn rotation(&self) -> Option<&[[VertexId; 3]]> {
        self.rotation.as_deref()
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.n_edges());
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n_vertices: self.n_vertices(),
            edges: self.edges().into_iter().map(Into::into).collect(),
            rotation: self
                .rotation
                .as_ref()
                .map(|r| r.iter().map(|x| x.to_vec()).collect()),
        }
    }

    /// Graphviz rendering. `highlight` edges are drawn bold.
    pub fn to_dot(&self, name: &str, highlight: &[Edge]) -> String {
        let mut s = format!("graph {name} {{\n  node [shape=circle];\n");
        for v in 0..self.n_vertices() {
            s.push_str(&format!("  {v};\n"));
        }
        for e in self.edges() {
            let (u, v) = e.endpoints();
            if highlight.contains(&e) {
                s.push_str(&format!("  {u} -- {v} [penwidth=3];\n"));
            } else {
                s.push_str(&format!("  {u} -- {v};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl TryFrom<&GraphJson> for CubicGraph {
    type Error = GraphError;

    /// Full validation, including the Euler check when a rotation is present.
    fn try_from(raw: &GraphJson) -> Result<Self, GraphError> {
        let report = io::validate_cubic(raw);
        if !report.is_ok() {
            return Err(GraphError::Invalid(report));
        }
        let mut adjacency = vec![[0; 3]; raw.n_vertices];
        let mut fill = vec![0usize; raw.n_vertices];
        for &[u, v] in &raw.edges {
            adjacency[u][fill[u]] = v;
            fill[u] += 1;
            adjacency[v][fill[v]] = u;
            fill[v] += 1;
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        let g = CubicGraph {
            adjacency,
            rotation: None,
        };
        match &raw.rotation {
            None => Ok(g),
            Some(rot) => g.with_rotation(rot.iter().map(|r| [r[0], r[1], r[2]]).collect()),
        }
    }
}

/// Checks a raw graph against every cubic-graph invariant.
pub fn validate_cubic(raw: &GraphJson) -> ValidationReport {
    io::validate_cubic(raw)
}

/// A vertex sequence visiting every vertex once, consecutive vertices adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrientedHamPath {
    order: Vec<VertexId>,
}

impl OrientedHamPath {
    pub fn new(graph: &CubicGraph, order: Vec<VertexId>) -> Result<Self, PathError> {
        check_spanning(graph, &order)?;
        for w in order.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                return Err(PathError::NotAdjacent(w[0], w[1]));
            }
        }
        Ok(OrientedHamPath { order })
    }

    /// Wraps a sequence already known to be valid (e.g. produced by a lollipop step).
    pub(crate) fn from_trusted(order: Vec<VertexId>) -> Self {
        OrientedHamPath { order }
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.order
    }

    pub fn first(&self) -> VertexId {
        self.order[0]
    }

    pub fn last(&self) -> VertexId {
        *self.order.last().expect("paths are non-empty")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True when the endpoints are adjacent, i.e. the path is a Hamiltonian cycle minus one edge.
    pub fn is_closable(&self, graph: &CubicGraph) -> bool {
        self.order.len() > 2 && graph.has_edge(self.first(), self.last())
    }

    pub fn to_cycle(&self, graph: &CubicGraph) -> Result<HamCycle, PathError> {
        if !self.is_closable(graph) {
            return Err(PathError::NotClosed(self.first(), self.last()));
        }
        Ok(HamCycle {
            order: canonical_cycle(&self.order),
        })
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.order
    }
}

/// A Hamiltonian cycle stored in canonical form: lowest id first, smaller neighbour second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HamCycle {
    order: Vec<VertexId>,
}

impl HamCycle {
    pub fn new(graph: &CubicGraph, seq: &[VertexId]) -> Result<Self, PathError> {
        let path = OrientedHamPath::new(graph, seq.to_vec())?;
        path.to_cycle(graph)
    }

    pub(crate) fn from_trusted(seq: &[VertexId]) -> Self {
        HamCycle {
            order: canonical_cycle(seq),
        }
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.order.len();
        let mut out: Vec<Edge> = (0..k)
            .map(|i| Edge::new(self.order[i], self.order[(i + 1) % k]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        let k = self.order.len();
        self.order
            .iter()
            .position(|&x| x == u)
            .map(|i| self.order[(i + 1) % k] == v || self.order[(i + k - 1) % k] == v)
            .unwrap_or(false)
    }

    /// Opens the cycle into the oriented path starting at `origin` whose first edge goes
    /// to `next`; the other cycle edge at `origin` is dropped.
    pub fn open_at(&self, origin: VertexId, next: VertexId) -> Result<OrientedHamPath, PathError> {
        let k = self.order.len();
        let i = self
            .order
            .iter()
            .position(|&x| x == origin)
            .ok_or(PathError::NotPermutation(origin))?;
        let fwd = self.order[(i + 1) % k];
        let back = self.order[(i + k - 1) % k];
        let seq: Vec<VertexId> = if fwd == next {
            (0..k).map(|j| self.order[(i + j) % k]).collect()
        } else if back == next {
            (0..k).map(|j| self.order[(i + k - j) % k]).collect()
        } else {
            return Err(PathError::NotCycleEdge {
                origin,
                edge: Edge::new(origin, next),
            });
        };
        Ok(OrientedHamPath::from_trusted(seq))
    }
}

impl fmt::Display for HamCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// Canonical rotation/reflection of a cyclic sequence.
pub fn canonical_cycle(seq: &[VertexId]) -> Vec<VertexId> {
    let k = seq.len();
    if k == 0 {
        return Vec::new();
    }
    let i = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap();
    let fwd = seq[(i + 1) % k];
    let back = seq[(i + k - 1) % k];
    if fwd <= back {
        (0..k).map(|j| seq[(i + j) % k]).collect()
    } else {
        (0..k).map(|j| seq[(i + k - j) % k]).collect()
    }
}

fn check_spanning(graph: &CubicGraph, order: &[VertexId]) -> Result<(), PathError> {
    let n = graph.n_vertices();
    if order.len() != n {
        return Err(PathError::Length {
            expected: n,
            found: order.len(),
        });
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(PathError::NotPermutation(v));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Small named graphs used across tests and examples.
pub mod named {
    use super::CubicGraph;

    pub fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// The 3-cube: vertices are 3-bit strings, adjacent when they differ in one bit.
    pub fn cube() -> CubicGraph {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        CubicGraph::from_edges(8, &edges).unwrap()
    }

    pub fn k33() -> CubicGraph {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        CubicGraph::from_edges(6, &edges).unwrap()
    }

    /// Two copies of K4 minus an edge, joined by two edges: cubic, connected, 2-connected only.
    pub fn two_diamonds() -> CubicGraph {
        // diamond on 0..4 missing 0-3, diamond on 4..8 missing 4-7
        let edges = [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (4, 5),
            (4, 6),
            (5, 6),
            (5, 7),
            (6, 7),
            (0, 4),
            (3, 7),
        ];
        CubicGraph::from_edges(8, &edges).unwrap()
    }
}
