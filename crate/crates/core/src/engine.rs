//! The lollipop step and Thomason's walk.
//!
//! A step pivots at an interior neighbour `v_i` of the last vertex (`1 < i < n-1`,
//! counting from 1) and reverses the suffix after it. The walk starts from a Hamiltonian
//! cycle opened at one endpoint of a chosen edge, never undoes its previous step, and
//! stops at the next path whose endpoints are adjacent.

use log::info;
use serde::Serialize;
use thiserror::Error;

use crate::family::FamilyInstance;
use crate::graph::{CubicGraph, Edge, HamCycle, OrientedHamPath, PathError, VertexId};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LollipopMove {
    /// 0-based position of the pivot in the original path.
    pub pivot_index: usize,
    pub pivot: VertexId,
    pub path: OrientedHamPath,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LollipopNeighbors {
    pub moves: Vec<LollipopMove>,
}

/// Pivot positions available at the end of `p`, in increasing order.
fn pivots(graph: &CubicGraph, p: &[VertexId], pos: &[usize]) -> ([usize; 2], usize) {
    let n = p.len();
    let mut out = [0; 2];
    let mut k = 0;
    for &w in graph.neighbors(p[n - 1]) {
        let i = pos[w];
        if i >= 1 && i + 3 <= n {
            out[k] = i;
            k += 1;
        }
    }
    if k == 2 && out[0] > out[1] {
        out.swap(0, 1);
    }
    (out, k)
}

pub fn lollipop_step(p: &[VertexId], pivot_index: usize) -> Vec<VertexId> {
    let mut q = p.to_vec();
    q[pivot_index + 1..].reverse();
    q
}

pub fn lollipop_neighbors(graph: &CubicGraph, p: &OrientedHamPath) -> LollipopNeighbors {
    let s = p.as_slice();
    let mut pos = vec![0; s.len()];
    for (i, &v) in s.iter().enumerate() {
        pos[v] = i;
    }
    let (idx, k) = pivots(graph, s, &pos);
    LollipopNeighbors {
        moves: idx[..k]
            .iter()
            .map(|&i| LollipopMove {
                pivot_index: i,
                pivot: s[i],
                path: OrientedHamPath::from_trusted(lollipop_step(s, i)),
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogLevel {
    /// Every path of the walk.
    Full,
    /// Only paths whose end is marked (rightmost paths for the family).
    Rightmost,
    /// Counters only.
    #[default]
    Counts,
}

#[derive(Clone, Copy, Debug)]
pub struct WalkOptions {
    pub log: LogLevel,
    pub budget: u64,
    /// Emit a progress line every this many steps; 0 disables.
    pub progress_every: u64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions {
            log: LogLevel::Counts,
            budget: DEFAULT_BUDGET,
            progress_every: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    pub start_cycle: HamCycle,
    pub distinguished_edge: Edge,
    pub steps: u64,
    /// Start path followed by one path per step, at `LogLevel::Full`.
    pub path_log: Option<Vec<OrientedHamPath>>,
    /// Step numbers after which the path's end was marked.
    pub rightmost_indices: Vec<u64>,
    /// The marked paths themselves, at `Full` or `Rightmost`.
    pub rightmost_paths: Vec<OrientedHamPath>,
    /// Steps between consecutive marked paths.
    pub gap_sizes: Vec<u64>,
    /// Closing cycle; for an aborted walk, the cycle the walk started from.
    pub end_cycle: HamCycle,
    pub completed: bool,
}

impl WalkTrace {
    pub fn max_gap(&self) -> u64 {
        self.gap_sizes.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("edge {0} is not on the start cycle")]
    EdgeNotOnCycle(Edge),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("step budget of {budget} exhausted")]
    Budget { budget: u64, partial: Box<WalkTrace> },
}

/// Runs the walk from `cycle` opened at `origin`, whose first edge is `edge`.
/// `marked` flags the end vertices whose paths are recorded as rightmost; `observe`
/// sees the start path (step 0) and every later path.
pub fn run_thomason_observed(
    graph: &CubicGraph,
    cycle: &HamCycle,
    origin: VertexId,
    edge: Edge,
    opts: &WalkOptions,
    marked: &dyn Fn(VertexId) -> bool,
    observe: &mut dyn FnMut(u64, &[VertexId]),
) -> Result<WalkTrace, WalkError> {
    let next = edge.other(origin).ok_or(WalkError::EdgeNotOnCycle(edge))?;
    if !cycle.contains_edge(edge) {
        return Err(WalkError::EdgeNotOnCycle(edge));
    }
    let mut p = cycle.open_at(origin, next)?.into_vec();
    let n = p.len();
    let mut pos = vec![0; n];
    for (i, &v) in p.iter().enumerate() {
        pos[v] = i;
    }
    let mut path_log = (opts.log == LogLevel::Full).then(|| vec![OrientedHamPath::from_trusted(p.clone())]);
    let keep_marked = opts.log != LogLevel::Counts;
    let mut trace = WalkTrace {
        start_cycle: cycle.clone(),
        distinguished_edge: edge,
        steps: 0,
        path_log: None,
        rightmost_indices: Vec::new(),
        rightmost_paths: Vec::new(),
        gap_sizes: Vec::new(),
        end_cycle: cycle.clone(),
        completed: false,
    };
    observe(0, &p);
    let mut last_pivot = usize::MAX;
    loop {
        let (idx, k) = pivots(graph, &p, &pos);
        let j = match k {
            1 => idx[0],
            2 if idx[0] == last_pivot => idx[1],
            2 => idx[0],
            _ => unreachable!("cubic graph gives one or two pivots"),
        };
        debug_assert!(trace.steps == 0 || k == 2, "walk reached a cycle without stopping");
        p[j + 1..].reverse();
        for (i, &v) in p.iter().enumerate().skip(j + 1) {
            pos[v] = i;
        }
        last_pivot = j;
        trace.steps += 1;
        observe(trace.steps, &p);
        if let Some(log) = path_log.as_mut() {
            log.push(OrientedHamPath::from_trusted(p.clone()));
        }
        if marked(p[n - 1]) {
            if let Some(&prev) = trace.rightmost_indices.last() {
                trace.gap_sizes.push(trace.steps - prev);
            }
            trace.rightmost_indices.push(trace.steps);
            if keep_marked {
                trace.rightmost_paths.push(OrientedHamPath::from_trusted(p.clone()));
            }
        }
        if graph.has_edge(p[0], p[n - 1]) {
            trace.end_cycle = HamCycle::from_trusted(&p);
            trace.completed = true;
            trace.path_log = path_log;
            return Ok(trace);
        }
        if opts.progress_every > 0 && trace.steps.is_multiple_of(opts.progress_every) {
            info!(
                "step {}: {} rightmost paths so far, end at vertex {}",
                trace.steps,
                trace.rightmost_indices.len(),
                p[n - 1]
            );
        }
        if trace.steps >= opts.budget {
            trace.path_log = path_log;
            return Err(WalkError::Budget {
                budget: opts.budget,
                partial: Box::new(trace),
            });
        }
    }
}

pub fn run_thomason(
    graph: &CubicGraph,
    cycle: &HamCycle,
    origin: VertexId,
    edge: Edge,
    opts: &WalkOptions,
) -> Result<WalkTrace, WalkError> {
    run_thomason_observed(graph, cycle, origin, edge, opts, &|_| false, &mut |_, _| {})
}

/// The walk on G_n from C_0 along the green edge, marking pac ends.
pub fn run_family(instance: &FamilyInstance, opts: &WalkOptions) -> Result<WalkTrace, WalkError> {
    run_family_observed(instance, opts, &mut |_, _| {})
}

pub fn run_family_observed(
    instance: &FamilyInstance,
    opts: &WalkOptions,
    observe: &mut dyn FnMut(u64, &[VertexId]),
) -> Result<WalkTrace, WalkError> {
    run_thomason_observed(
        &instance.graph,
        &instance.c0,
        instance.lambda,
        instance.green_edge,
        opts,
        &|v| instance.is_pac(v),
        observe,
    )
}

/// Whether a path starting at Λ ends in the pac.
///
/// # Panics
/// If `p` does not start at Λ.
pub fn detect_rightmost(instance: &FamilyInstance, p: &OrientedHamPath) -> bool {
    assert_eq!(p.first(), instance.lambda, "rightmost paths start at lambda");
    instance.is_pac(p.last())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle::{enumerate_ham_cycles, OracleConfig};
    use proptest::prelude::*;

    #[test]
    fn cycle_path_has_one_neighbour() {
        let g = named::cube();
        let p = OrientedHamPath::new(&g, vec![0, 1, 3, 2, 6, 7, 5, 4]).unwrap();
        let nb = lollipop_neighbors(&g, &p);
        assert_eq!(nb.moves.len(), 1);
        for m in &nb.moves {
            assert_eq!(m.path.as_slice()[..2], p.as_slice()[..2]);
        }
    }

    #[test]
    fn k4_paths_are_all_cycles() {
        // K4 is complete, so the open case never occurs there
        let g = named::k4();
        let p = OrientedHamPath::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(lollipop_neighbors(&g, &p).moves.len(), 1);
    }

    #[test]
    fn walk_on_small_graphs_finds_a_second_cycle() {
        for g in [named::k4(), named::cube(), named::k33()] {
            let cycles = enumerate_ham_cycles(&g, &OracleConfig::default()).unwrap();
            for c in cycles.cycles() {
                for e in c.edges() {
                    let (u, _) = e.endpoints();
                    let t = run_thomason(&g, c, u, e, &WalkOptions::default()).unwrap();
                    assert_ne!(t.end_cycle, *c);
                    assert!(t.end_cycle.contains_edge(e));
                    assert!(cycles.cycles().contains(&t.end_cycle));
                }
            }
        }
    }

    #[test]
    fn budget_aborts_with_partial_trace() {
        let g = named::cube();
        let c = HamCycle::new(&g, &[0, 1, 3, 2, 6, 7, 5, 4]).unwrap();
        let opts = WalkOptions {
            budget: 1,
            ..WalkOptions::default()
        };
        let full = run_thomason(&g, &c, 0, Edge::new(0, 1), &WalkOptions::default()).unwrap();
        if full.steps > 1 {
            match run_thomason(&g, &c, 0, Edge::new(0, 1), &opts) {
                Err(WalkError::Budget { partial, .. }) => assert_eq!(partial.steps, 1),
                other => panic!("expected budget error, got {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn same_pivot_twice_is_identity(pick in 0usize..10_000) {
            let g = named::cube();
            let paths = crate::oracle::enumerate_ham_paths(&g, None, None, &OracleConfig::default()).unwrap();
            let p = OrientedHamPath::new(&g, paths[pick % paths.len()].clone()).unwrap();
            let moves = lollipop_neighbors(&g, &p).moves;
            prop_assert_eq!(moves.len(), if p.is_closable(&g) { 1 } else { 2 });
            for m in moves {
                let back = lollipop_step(m.path.as_slice(), m.pivot_index);
                prop_assert_eq!(&back[..], p.as_slice());
                prop_assert_eq!(m.path.as_slice()[m.pivot_index], m.pivot);
            }
        }
    }
}
