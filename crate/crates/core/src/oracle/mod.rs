//! Brute-force ground truth for small instances: every Hamiltonian cycle, every oriented
//! Hamiltonian path, and the full auxiliary graph whose edges are single lollipop steps.
//!
//! Budgets are hard refusals. These routines exist to check other code on small graphs.

mod cycles;
mod lollipop_graph;

use thiserror::Error;

pub use cycles::{count_cycles_containing, enumerate_ham_cycles, enumerate_ham_paths, CycleSet};
pub use lollipop_graph::{build_lollipop_graph, ComponentInfo, ComponentKind, LollipopGraphView};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest graph (in vertices) the cycle enumerator accepts.
    pub max_vertices: usize,
    /// Largest number of oriented Hamiltonian paths materialised in a lollipop graph.
    pub max_nodes: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vertices: 30,
            max_nodes: 10_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle bound is {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("lollipop graph exceeds node budget of {budget}")]
    Budget { budget: usize },
    #[error("lollipop graph invariant broken: {0}")]
    Invariant(String),
}
