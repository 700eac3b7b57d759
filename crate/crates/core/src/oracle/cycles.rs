use std::collections::BTreeSet;

use crate::graph::{CubicGraph, Edge, HamCycle, VertexId};

use super::{OracleConfig, OracleError};

/// Every Hamiltonian cycle of a graph, canonical and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    cycles: Vec<HamCycle>,
}

impl CycleSet {
    pub fn cycles(&self) -> &[HamCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn containing(&self, e: Edge) -> impl Iterator<Item = &HamCycle> {
        self.cycles.iter().filter(move |c| c.contains_edge(e))
    }
}

pub fn count_cycles_containing(cycles: &CycleSet, e: Edge) -> usize {
    cycles.containing(e).count()
}

/// Backtracking from vertex 0, neighbours in id order, pruning any unvisited vertex left
/// with fewer than two usable neighbours.
pub fn enumerate_ham_cycles(graph: &CubicGraph, config: &OracleConfig) -> Result<CycleSet, OracleError> {
    let n = graph.n_vertices();
    if n > config.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            bound: config.max_vertices,
        });
    }
    let mut found = BTreeSet::new();
    if n >= 3 {
        let mut search = Search::new(graph, Mode::Cycle);
        search.visit_start(0);
        search.run(&mut |path| {
            if path[1] < path[n - 1] {
                found.insert(HamCycle::from_trusted(path));
            }
        });
    }
    Ok(CycleSet {
        cycles: found.into_iter().collect(),
    })
}

/// All oriented Hamiltonian paths, optionally restricted to a start vertex and first step.
pub fn enumerate_ham_paths(
    graph: &CubicGraph,
    start: Option<VertexId>,
    second: Option<VertexId>,
    config: &OracleConfig,
) -> Result<Vec<Vec<VertexId>>, OracleError> {
    let n = graph.n_vertices();
    if n > config.max_vertices {
        return Err(OracleError::TooLarge {
            n,
            bound: config.max_vertices,
        });
    }
    let mut out = Vec::new();
    let starts: Vec<VertexId> = match start {
        Some(s) => vec![s],
        None => (0..n).collect(),
    };
    for s in starts {
        let mut search = Search::new(graph, Mode::Path);
        search.visit_start(s);
        match second {
            Some(x) => {
                if graph.has_edge(s, x) && search.step(x) {
                    search.run(&mut |p| out.push(p.to_vec()));
                }
            }
            None => search.run(&mut |p| out.push(p.to_vec())),
        }
        if out.len() > config.max_nodes {
            return Err(OracleError::Budget {
                budget: config.max_nodes,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Cycle,
    Path,
}

struct Search<'g> {
    graph: &'g CubicGraph,
    mode: Mode,
    path: Vec<VertexId>,
    visited: Vec<bool>,
    // usable neighbours of each unvisited vertex: unvisited ones, the current end, and
    // (cycle mode) the start
    avail: Vec<u8>,
    // undo log of decremented vertices, one frame per step
    undo: Vec<Vec<VertexId>>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g CubicGraph, mode: Mode) -> Self {
        let n = graph.n_vertices();
        Search {
            graph,
            mode,
            path: Vec::with_capacity(n),
            visited: vec![false; n],
            avail: vec![3; n],
            undo: Vec::new(),
        }
    }

    fn visit_start(&mut self, s: VertexId) {
        self.path.push(s);
        self.visited[s] = true;
    }

    fn need(&self) -> u8 {
        match self.mode {
            Mode::Cycle => 2,
            Mode::Path => 1,
        }
    }

    /// Extends the path by `x`; returns false (and undoes nothing) if pruning fails, in
    /// which case the caller must still call `unstep`.
    fn step(&mut self, x: VertexId) -> bool {
        let u = *self.path.last().unwrap();
        self.path.push(x);
        self.visited[x] = true;
        let mut frame = Vec::new();
        let mut ok = true;
        let keeps_u = self.mode == Mode::Cycle && self.path.len() == 2;
        if !keeps_u {
            for &w in self.graph.neighbors(u) {
                if w != x && !self.visited[w] {
                    self.avail[w] -= 1;
                    frame.push(w);
                    if self.avail[w] < self.need() {
                        ok = false;
                    }
                }
            }
        }
        self.undo.push(frame);
        if ok && self.mode == Mode::Cycle && self.path.len() < self.visited.len() {
            let s = self.path[0];
            let second = self.path[1];
            ok = self
                .graph
                .neighbors(s)
                .iter()
                .any(|&w| w != second && (!self.visited[w] || w == x));
        }
        ok
    }

    fn unstep(&mut self) {
        let x = self.path.pop().unwrap();
        self.visited[x] = false;
        for w in self.undo.pop().unwrap() {
            self.avail[w] += 1;
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(&[VertexId])) {
        let n = self.visited.len();
        let u = *self.path.last().unwrap();
        if self.path.len() == n {
            match self.mode {
                Mode::Path => emit(&self.path),
                Mode::Cycle => {
                    if self.graph.has_edge(u, self.path[0]) {
                        emit(&self.path)
                    }
                }
            }
            return;
        }
        let nb = *self.graph.neighbors(u);
        for x in nb {
            if self.visited[x] {
                continue;
            }
            if self.step(x) {
                self.run(emit);
            }
            self.unstep();
        }
    }
}
