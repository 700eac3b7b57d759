use serde::Serialize;

use super::{is_connected_without, CubicGraph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarityReport {
    pub planar: bool,
    pub faces: usize,
}

/// Traces the faces of the graph's rotation system and applies Euler's formula.
pub fn check_planarity(graph: &CubicGraph) -> Result<PlanarityReport, GraphError> {
    let rot = graph.rotation().ok_or(GraphError::NoEmbedding)?;
    let faces = count_faces_raw(rot);
    let connected = is_connected_without(graph, &[]);
    let planar = connected && graph.n_vertices() + faces == graph.n_edges() + 2;
    Ok(PlanarityReport { planar, faces })
}

pub fn count_faces(graph: &CubicGraph) -> Result<usize, GraphError> {
    graph.rotation().map(count_faces_raw).ok_or(GraphError::NoEmbedding)
}

/// Face count of a rotation system: orbits of darts under `(u→v) ↦ (v→succ_v(u))`.
pub(super) fn count_faces_raw(rot: &[[VertexId; 3]]) -> usize {
    let n = rot.len();
    // dart (u, k) is u -> rot[u][k]
    let mut visited = vec![[false; 3]; n];
    let mut faces = 0;
    for u in 0..n {
        for k in 0..3 {
            if visited[u][k] {
                continue;
            }
            faces += 1;
            let (mut x, mut i) = (u, k);
            while !visited[x][i] {
                visited[x][i] = true;
                let y = rot[x][i];
                let back = rot[y].iter().position(|&w| w == x).expect("rotation is symmetric");
                x = y;
                i = (back + 1) % 3;
            }
        }
    }
    faces
}
