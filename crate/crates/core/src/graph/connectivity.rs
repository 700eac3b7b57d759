use super::{CubicGraph, VertexId};

/// Is the graph still connected after deleting `removed`?
pub fn is_connected_without(graph: &CubicGraph, removed: &[VertexId]) -> bool {
    let n = graph.n_vertices();
    let mut dead = vec![false; n];
    for &v in removed {
        dead[v] = true;
    }
    let Some(start) = (0..n).find(|&v| !dead[v]) else {
        return true;
    };
    let mut seen = dead.clone();
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached + removed.len() == n
}

/// Brute-force search for a vertex cut of size at most two.
pub fn check_three_connected(graph: &CubicGraph) -> bool {
    let n = graph.n_vertices();
    if n < 4 || !is_connected_without(graph, &[]) {
        return false;
    }
    for x in 0..n {
        if !is_connected_without(graph, &[x]) {
            return false;
        }
        for y in x + 1..n {
            if !is_connected_without(graph, &[x, y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_graphs() {
        assert!(check_three_connected(&named::k4()));
        assert!(check_three_connected(&named::cube()));
        assert!(check_three_connected(&named::k33()));
        assert!(!check_three_connected(&named::two_diamonds()));
    }
}
