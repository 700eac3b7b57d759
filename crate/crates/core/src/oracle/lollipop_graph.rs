use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{CubicGraph, VertexId};

use super::{enumerate_ham_paths, OracleConfig, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentInfo {
    pub kind: ComponentKind,
    pub size: usize,
    /// The two degree-1 nodes of a path component, smaller index first.
    pub ends: Option<(usize, usize)>,
}

/// The auxiliary graph whose nodes are oriented Hamiltonian paths and whose edges are
/// single lollipop steps.
#[derive(Clone, Debug)]
pub struct LollipopGraphView {
    nodes: Vec<Vec<VertexId>>,
    index: HashMap<Vec<VertexId>, usize>,
    adjacency: Vec<Vec<usize>>,
    component: Vec<usize>,
    components: Vec<ComponentInfo>,
    fixed_start: Option<VertexId>,
}

/// Independent (deliberately naive) lollipop rule: pivot `v_i` adjacent to the last
/// vertex, `1 < i < n-1` counting from 1.
fn naive_moves(graph: &CubicGraph, p: &[VertexId]) -> Vec<Vec<VertexId>> {
    let n = p.len();
    let last = p[n - 1];
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(2) {
        if graph.has_edge(p[i], last) {
            let mut q: Vec<VertexId> = p[..=i].to_vec();
            q.extend(p[i + 1..].iter().rev());
            out.push(q);
        }
    }
    out
}

/// Materialises the lollipop graph. With `start = Some(s)` only paths beginning at `s` are
/// nodes; the move never changes the first vertex, so this is a union of components.
pub fn build_lollipop_graph(
    graph: &CubicGraph,
    start: Option<VertexId>,
    config: &OracleConfig,
) -> Result<LollipopGraphView, OracleError> {
    let nodes = enumerate_ham_paths(graph, start, None, config)?;
    if nodes.len() > config.max_nodes {
        return Err(OracleError::Budget {
            budget: config.max_nodes,
        });
    }
    let index: HashMap<Vec<VertexId>, usize> =
        nodes.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut adjacency = Vec::with_capacity(nodes.len());
    for p in &nodes {
        let mut nb = Vec::new();
        for q in naive_moves(graph, p) {
            let j = *index
                .get(&q)
                .ok_or_else(|| OracleError::Invariant(format!("move from {p:?} left the node set")))?;
            nb.push(j);
        }
        adjacency.push(nb);
    }

    let mut uf = UnionFind::new(nodes.len());
    for (i, nb) in adjacency.iter().enumerate() {
        for &j in nb {
            uf.union(i, j);
        }
    }
    let mut root_to_comp = HashMap::new();
    let mut component = vec![0; nodes.len()];
    for (i, slot) in component.iter_mut().enumerate() {
        let r = uf.find(i);
        let next = root_to_comp.len();
        *slot = *root_to_comp.entry(r).or_insert(next);
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); root_to_comp.len()];
    for (i, &c) in component.iter().enumerate() {
        members[c].push(i);
    }
    let components = members
        .iter()
        .map(|m| {
            let ends: Vec<usize> = m.iter().copied().filter(|&i| adjacency[i].len() == 1).collect();
            ComponentInfo {
                kind: if ends.is_empty() {
                    ComponentKind::Cycle
                } else {
                    ComponentKind::Path
                },
                size: m.len(),
                ends: (ends.len() == 2).then(|| (ends[0], ends[1])),
            }
        })
        .collect();

    let view = LollipopGraphView {
        nodes,
        index,
        adjacency,
        component,
        components,
        fixed_start: start,
    };
    view.check_invariants(graph)?;
    Ok(view)
}

impl LollipopGraphView {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &[VertexId] {
        &self.nodes[i]
    }

    pub fn index_of(&self, p: &[VertexId]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn components(&self) -> &[ComponentInfo] {
        &self.components
    }

    pub fn degree_one_count(&self) -> usize {
        self.adjacency.iter().filter(|a| a.len() == 1).count()
    }

    /// Walks the component of a degree-1 node to its other end, returning every node on the way.
    pub fn trace_from(&self, start: usize) -> Result<Vec<usize>, OracleError> {
        if self.degree(start) != 1 {
            return Err(OracleError::Invariant(format!(
                "trace must start at a degree-1 node, node {start} has degree {}",
                self.degree(start)
            )));
        }
        let mut out = vec![start];
        let mut prev = None;
        let mut cur = start;
        while let Some(j) = self.adjacency[cur].iter().copied().find(|&j| Some(j) != prev) {
            prev = Some(cur);
            cur = j;
            out.push(cur);
            if self.degree(cur) == 1 {
                break;
            }
        }
        Ok(out)
    }

    fn check_invariants(&self, graph: &CubicGraph) -> Result<(), OracleError> {
        let mut closable = 0;
        for (i, nb) in self.adjacency.iter().enumerate() {
            let p = &self.nodes[i];
            let is_cycle = graph.has_edge(p[0], p[p.len() - 1]);
            closable += usize::from(is_cycle);
            let expected = if is_cycle { 1 } else { 2 };
            if nb.len() != expected {
                return Err(OracleError::Invariant(format!(
                    "node {p:?} has degree {}, expected {expected}",
                    nb.len()
                )));
            }
            for &j in nb {
                if !self.adjacency[j].contains(&i) {
                    return Err(OracleError::Invariant(format!("adjacency {i}->{j} is not symmetric")));
                }
                if self.nodes[j][..2] != p[..2] {
                    return Err(OracleError::Invariant(format!("move {i}->{j} changed the first edge")));
                }
            }
        }
        if closable != self.degree_one_count() {
            return Err(OracleError::Invariant("degree-1 nodes differ from closable paths".into()));
        }
        for (c, info) in self.components.iter().enumerate() {
            let ok = match info.kind {
                ComponentKind::Cycle => info.ends.is_none(),
                ComponentKind::Path => {
                    info.ends.is_some()
                        && info.ends.map(|(a, _)| self.trace_from(a).map(|t| t.len()).unwrap_or(0))
                            == Some(info.size)
                }
            };
            if !ok {
                return Err(OracleError::Invariant(format!("component {c} is neither a simple path nor a cycle")));
            }
        }
        Ok(())
    }

    /// Each Hamiltonian cycle accounts for this many degree-1 nodes: both orientations from
    /// the fixed start, or every start and orientation.
    pub fn nodes_per_cycle(&self) -> usize {
        match self.fixed_start {
            Some(_) => 2,
            None => 2 * self.nodes.first().map_or(0, |p| p.len()),
        }
    }

    /// Component structure as Graphviz; nodes are labelled by their vertex sequence.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph lollipop {\n  node [shape=box, fontsize=9];\n");
        for (c, info) in self.components.iter().enumerate() {
            let _ = writeln!(s, "  subgraph cluster_{c} {{");
            let _ = writeln!(s, "    label=\"{:?} ({})\";", info.kind, info.size);
            for (i, p) in self.nodes.iter().enumerate() {
                if self.component[i] != c {
                    continue;
                }
                let label: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                let style = if self.degree(i) == 1 { ", style=bold" } else { "" };
                let _ = writeln!(s, "    n{i} [label=\"{}\"{style}];", label.join(" "));
            }
            s.push_str("  }\n");
        }
        for (i, nb) in self.adjacency.iter().enumerate() {
            for &j in nb {
                if i < j {
                    let _ = writeln!(s, "  n{i} -- n{j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle::enumerate_ham_cycles;

    #[test]
    fn k4_fixed_start() {
        let g = named::k4();
        let view = build_lollipop_graph(&g, Some(0), &OracleConfig::default()).unwrap();
        // every Hamiltonian path of K4 closes
        assert_eq!(view.n_nodes(), 6);
        assert_eq!(view.degree_one_count(), 2 * 3);
        assert!(view.components().iter().all(|c| c.kind == ComponentKind::Path && c.size == 2));
    }

    #[test]
    fn cube_all_starts() {
        let g = named::cube();
        let view = build_lollipop_graph(&g, None, &OracleConfig::default()).unwrap();
        let cycles = enumerate_ham_cycles(&g, &OracleConfig::default()).unwrap();
        assert_eq!(view.degree_one_count(), view.nodes_per_cycle() * cycles.len());
        for c in view.components() {
            if let Some((a, b)) = c.ends {
                let t = view.trace_from(a).unwrap();
                assert_eq!(*t.last().unwrap(), b);
            }
        }
    }

    #[test]
    fn non_cycle_paths_have_two_neighbours() {
        let g = named::cube();
        let view = build_lollipop_graph(&g, Some(0), &OracleConfig::default()).unwrap();
        let mut seen_open = false;
        for i in 0..view.n_nodes() {
            let p = view.node(i);
            if !g.has_edge(p[0], p[7]) {
                seen_open = true;
                assert_eq!(view.degree(i), 2);
            }
        }
        assert!(seen_open);
    }

    #[test]
    fn dot_lists_every_node() {
        let view = build_lollipop_graph(&named::k4(), Some(0), &OracleConfig::default()).unwrap();
        let dot = view.to_dot();
        assert!(dot.starts_with("graph lollipop {"));
        assert_eq!(dot.matches("[label=").count(), 6);
    }
}
