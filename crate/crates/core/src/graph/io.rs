use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::embedding::count_faces_raw;
use super::VertexId;

/// On-disk graph format: `{ "n_vertices": int, "edges": [[u,v],...], "rotation": optional [[...],...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n_vertices: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<VertexId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { vertex: VertexId },
    SelfLoop { vertex: VertexId },
    DuplicateEdge { u: VertexId, v: VertexId },
    Degree { vertex: VertexId, degree: usize },
    OddVertexCount { n: usize },
    EdgeCount { expected: usize, found: usize },
    RotationSize { expected: usize, found: usize },
    RotationMismatch { vertex: VertexId },
    EulerFailure { faces: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} is out of range"),
            Violation::SelfLoop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::DuplicateEdge { u, v } => write!(f, "edge {u}-{v} appears more than once"),
            Violation::Degree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}"),
            Violation::OddVertexCount { n } => write!(f, "odd vertex count {n}"),
            Violation::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edges, found {found}")
            }
            Violation::RotationSize { expected, found } => {
                write!(f, "rotation lists {found} vertices, expected {expected}")
            }
            Violation::RotationMismatch { vertex } => {
                write!(f, "rotation at vertex {vertex} is not a permutation of its neighbours")
            }
            Violation::EulerFailure { faces, expected } => write!(
                f,
                "rotation traces {faces} faces, a planar embedding needs {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok: |V|={}, |E|={}", self.n_vertices, self.n_edges);
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub(super) fn validate_cubic(raw: &GraphJson) -> ValidationReport {
    let n = raw.n_vertices;
    let mut violations = Vec::new();
    let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut seen = HashSet::new();
    for &[u, v] in &raw.edges {
        if u >= n || v >= n {
            violations.push(Violation::VertexOutOfRange { vertex: u.max(v) });
            continue;
        }
        if u == v {
            violations.push(Violation::SelfLoop { vertex: u });
            continue;
        }
        if !seen.insert((u.min(v), u.max(v))) {
            violations.push(Violation::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            });
            continue;
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for (vertex, nb) in adjacency.iter().enumerate() {
        if nb.len() != 3 {
            violations.push(Violation::Degree {
                vertex,
                degree: nb.len(),
            });
        }
    }
    if n % 2 == 1 {
        violations.push(Violation::OddVertexCount { n });
    }
    let expected = 3 * n / 2;
    if seen.len() != expected {
        violations.push(Violation::EdgeCount {
            expected,
            found: seen.len(),
        });
    }
    if let Some(rot) = &raw.rotation {
        if rot.len() != n {
            violations.push(Violation::RotationSize {
                expected: n,
                found: rot.len(),
            });
        } else {
            let mut consistent = true;
            for (vertex, r) in rot.iter().enumerate() {
                let mut a = r.clone();
                let mut b = adjacency[vertex].clone();
                a.sort_unstable();
                b.sort_unstable();
                if a != b || a.len() != 3 {
                    violations.push(Violation::RotationMismatch { vertex });
                    consistent = false;
                }
            }
            if consistent && violations.is_empty() {
                let rot3: Vec<[VertexId; 3]> = rot.iter().map(|r| [r[0], r[1], r[2]]).collect();
                let faces = count_faces_raw(&rot3);
                // V - E + F = 2
                let target = (expected + 2).saturating_sub(n);
                if faces != target {
                    violations.push(Violation::EulerFailure {
                        faces,
                        expected: target,
                    });
                }
            }
        }
    }
    ValidationReport {
        n_vertices: n,
        n_edges: seen.len(),
        violations,
    }
}
