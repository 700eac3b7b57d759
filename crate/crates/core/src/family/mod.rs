//! The gadget chain G_n: a K3 cap, `n` two-vertex gadgets and a mirrored K3 pac.
//!
//! Vertex ids run left to right. The cap is `0, 1, 2`, gadget `i` (1-based) is
//! `(2i+1, 2i+2)` and the pac is `2n+3, 2n+4, 2n+5`. Each of the `n+1` cuts between
//! consecutive components is crossed by three edges. The three crossing edges of a cut
//! are kept in slot order `[A, B, Pass]`: the edge leaving the left gadget's `a`, the one
//! leaving its `b`, and the strand carried over it unchanged. The cap's three outward edges
//! use slots `0, 1, 2` by vertex id.

mod search;
mod snapshot;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CubicGraph, Edge, GraphError, HamCycle, VertexId};
use crate::oracle::{enumerate_ham_cycles, OracleConfig, OracleError};

pub use search::{search_gadget_wirings, Rejection, SearchOutcome, Survivor};
pub use snapshot::{SnapshotEntry, WiringSnapshot, SNAPSHOT_JSON};

pub const SLOT_A: u8 = 0;
pub const SLOT_B: u8 = 1;
pub const SLOT_PASS: u8 = 2;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("gadget count must be at least 1, got {0}")]
    Parameter(usize),
    #[error("wiring carries no distinguished cap data")]
    NoAnchor,
    #[error("distinguished edge selection failed: {0}")]
    Selection(String),
    #[error("no wiring satisfies the family invariants: {0}")]
    NoWiring(String),
    #[error("wiring snapshot: {0}")]
    Snapshot(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which incoming slot feeds which part of a gadget. Incoming slots are the three open
/// ends at the gadget's left cut; `to_a` and `to_b` attach to the two internal vertices
/// and `carry` passes over the gadget to become the `Pass` slot of the right cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PortMap {
    pub carry: u8,
    pub to_a: u8,
    pub to_b: u8,
}

impl PortMap {
    pub const fn new(carry: u8, to_a: u8, to_b: u8) -> Self {
        PortMap { carry, to_a, to_b }
    }

    /// All six assignments of the incoming slots.
    pub fn all() -> Vec<PortMap> {
        let mut out = Vec::new();
        for carry in 0..3 {
            for to_a in 0..3 {
                for to_b in 0..3 {
                    let p = PortMap::new(carry, to_a, to_b);
                    if p.is_permutation() {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; 3];
        for s in [self.carry, self.to_a, self.to_b] {
            if s > 2 || seen[s as usize] {
                return false;
            }
            seen[s as usize] = true;
        }
        true
    }

    /// A carried pass-through strand may not be carried again: it would cross three cuts
    /// and leave some gadget without its own pass-through.
    pub fn is_locally_valid(&self) -> bool {
        self.is_permutation() && self.carry != SLOT_PASS
    }
}

/// Rotation data for a strip. Each vertex's rotation is its sorted neighbour list, or that
/// list with the last two entries swapped when the vertex's bit is set. Sorted order is
/// role-stable (`[left, partner, right]` for gadget vertices), so one bit per role suffices.
/// Gadget bits alternate with the gadget's parity and pac bits with the parity of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbeddingRule {
    pub cap: [bool; 3],
    /// Indexed by the parity of `n`.
    pub pac: [[bool; 3]; 2],
    /// Indexed by gadget parity, then `[a, b]`.
    pub gadget: [[bool; 2]; 2],
}

impl EmbeddingRule {
    pub const N_RULES: u16 = 1 << 13;

    pub fn from_bits(bits: u16) -> Self {
        let b = |k: u16| bits >> k & 1 == 1;
        EmbeddingRule {
            cap: [b(0), b(1), b(2)],
            gadget: [[b(3), b(4)], [b(5), b(6)]],
            pac: [[b(7), b(8), b(9)], [b(10), b(11), b(12)]],
        }
    }

    fn flip_for(&self, n: usize, v: VertexId) -> bool {
        if v < 3 {
            self.cap[v]
        } else if v >= 2 * n + 3 {
            self.pac[n % 2][v - (2 * n + 3)]
        } else {
            let i = (v - 1) / 2;
            self.gadget[i % 2][(v - 1) % 2]
        }
    }
}

/// Distinguished cap data: the start vertex Λ, the green edge that every analysed path
/// starts with, and the red cap edge that lies on C_0 only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Anchor {
    pub lambda: VertexId,
    pub green: Edge,
    pub red: Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetWiring {
    pub ports: PortMap,
    pub embedding: EmbeddingRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Anchor>,
}

impl GadgetWiring {
    /// The canonical wiring from the checked-in snapshot.
    pub fn canonical() -> GadgetWiring {
        WiringSnapshot::embedded().canonical().wiring
    }
}

/// Cut bookkeeping shared by every instance with the same `n` and port map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    /// `cut_origins[j]` lists, by slot, the left-side endpoint of each edge crossing cut `j`.
    pub cut_origins: Vec<[VertexId; 3]>,
    /// `cut_edges[j]` lists the crossing edges themselves, in slot order.
    pub cut_edges: Vec<[Edge; 3]>,
}

impl Layout {
    pub fn component_of(&self, v: VertexId) -> usize {
        component_of(self.n, v)
    }

    pub fn is_pac(&self, v: VertexId) -> bool {
        v >= 2 * self.n + 3
    }

    pub fn pac_vertices(&self) -> [VertexId; 3] {
        let x = 2 * self.n + 3;
        [x, x + 1, x + 2]
    }

    /// `(a_i, b_i)` for 1-based gadget `i`.
    pub fn gadget(&self, i: usize) -> (VertexId, VertexId) {
        (2 * i + 1, 2 * i + 2)
    }

    /// Slot of the edge `u`-`v` at cut `j`, if that edge crosses it.
    pub fn cut_slot(&self, j: usize, u: VertexId, v: VertexId) -> Option<u8> {
        let e = Edge::new(u, v);
        self.cut_edges[j].iter().position(|&c| c == e).map(|s| s as u8)
    }
}

/// The bare strip: graph with rotation plus its cut layout.
#[derive(Clone, Debug)]
pub struct Strip {
    pub graph: CubicGraph,
    pub layout: Layout,
}

pub fn assemble(n: usize, ports: PortMap, embedding: &EmbeddingRule) -> Result<Strip, FamilyError> {
    if n < 1 {
        return Err(FamilyError::Parameter(n));
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut ends: [VertexId; 3] = [0, 1, 2];
    let mut cut_origins = vec![ends];
    for i in 1..=n {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.push((a, b));
        edges.push((ends[ports.to_a as usize], a));
        edges.push((ends[ports.to_b as usize], b));
        ends = [a, b, ends[ports.carry as usize]];
        cut_origins.push(ends);
    }
    let (x, y, z) = (2 * n + 3, 2 * n + 4, 2 * n + 5);
    edges.extend([(x, y), (y, z), (x, z), (ends[0], x), (ends[1], y), (ends[2], z)]);
    let bare = CubicGraph::from_edges(2 * n + 6, &edges)?;
    let rotation = (0..bare.n_vertices())
        .map(|v| {
            let [p, q, r] = *bare.neighbors(v);
            if embedding.flip_for(n, v) {
                [p, r, q]
            } else {
                [p, q, r]
            }
        })
        .collect();
    let graph = bare.with_rotation(rotation)?;
    let cut_edges = cut_origins
        .iter()
        .enumerate()
        .map(|(j, origins)| {
            origins.map(|o| {
                let far = graph
                    .neighbors(o)
                    .iter()
                    .copied()
                    .find(|&w| component_of(n, w) > j)
                    .expect("every cut origin has one rightward edge");
                Edge::new(o, far)
            })
        })
        .collect();
    Ok(Strip {
        graph,
        layout: Layout {
            n,
            cut_origins,
            cut_edges,
        },
    })
}

/// Component index of a vertex: 0 for the cap, `i` for gadget `i`, `n+1` for the pac.
pub fn component_of(n: usize, v: VertexId) -> usize {
    if v < 3 {
        0
    } else if v >= 2 * n + 3 {
        n + 1
    } else {
        (v - 1) / 2
    }
}

/// G_n together with its distinguished data.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub n: usize,
    pub graph: CubicGraph,
    pub lambda: VertexId,
    pub green_edge: Edge,
    pub red_edge: Edge,
    pub c0: HamCycle,
    pub c1: HamCycle,
    /// `gadget_vertices[i-1] = (a_i, b_i)`.
    pub gadget_vertices: Vec<(VertexId, VertexId)>,
    pub layout: Layout,
    pub wiring: GadgetWiring,
}

pub fn build(n: usize, wiring: &GadgetWiring) -> Result<FamilyInstance, FamilyError> {
    let anchor = wiring.anchor.ok_or(FamilyError::NoAnchor)?;
    let strip = assemble(n, wiring.ports, &wiring.embedding)?;
    let oracle = OracleConfig {
        max_vertices: usize::MAX,
        ..OracleConfig::default()
    };
    let (c0, c1) = select_distinguished_cycles(&strip.graph, anchor.lambda, anchor.green, anchor.red, &oracle)?;
    Ok(instance_from_parts(strip, anchor, c0, c1, *wiring))
}

pub(crate) fn instance_from_parts(
    strip: Strip,
    anchor: Anchor,
    c0: HamCycle,
    c1: HamCycle,
    wiring: GadgetWiring,
) -> FamilyInstance {
    let n = strip.layout.n;
    FamilyInstance {
        n,
        graph: strip.graph,
        lambda: anchor.lambda,
        green_edge: anchor.green,
        red_edge: anchor.red,
        c0,
        c1,
        gadget_vertices: (1..=n).map(|i| strip.layout.gadget(i)).collect(),
        layout: strip.layout,
        wiring,
    }
}

impl FamilyInstance {
    pub fn cut_edges(&self) -> &[[Edge; 3]] {
        &self.layout.cut_edges
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.layout.component_of(v)
    }

    pub fn pac_vertices(&self) -> [VertexId; 3] {
        self.layout.pac_vertices()
    }

    pub fn is_pac(&self, v: VertexId) -> bool {
        self.layout.is_pac(v)
    }

    /// The vertex of the green edge other than Λ.
    pub fn green_far(&self) -> VertexId {
        self.green_edge
            .other(self.lambda)
            .expect("green edge is incident to lambda")
    }
}

/// Picks C_0 and C_1 among the Hamiltonian cycles: the two containing `green`, told apart
/// by `red`, which must lie on exactly one of them.
pub fn select_distinguished_cycles(
    graph: &CubicGraph,
    lambda: VertexId,
    green: Edge,
    red: Edge,
    config: &OracleConfig,
) -> Result<(HamCycle, HamCycle), FamilyError> {
    if !green.contains(lambda) {
        return Err(FamilyError::Selection(format!("green edge {green} does not touch lambda {lambda}")));
    }
    let cycles = enumerate_ham_cycles(graph, config)?;
    let with_green: Vec<&HamCycle> = cycles.containing(green).collect();
    if with_green.len() != 2 {
        return Err(FamilyError::Selection(format!(
            "green edge {green} lies on {} cycles",
            with_green.len()
        )));
    }
    let red_on: Vec<bool> = with_green.iter().map(|c| c.contains_edge(red)).collect();
    match red_on[..] {
        [true, false] => Ok((with_green[0].clone(), with_green[1].clone())),
        [false, true] => Ok((with_green[1].clone(), with_green[0].clone())),
        _ => Err(FamilyError::Selection(format!(
            "red edge {red} does not separate the two green cycles"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_planarity;

    const B_RULE: PortMap = PortMap::new(1, 2, 0);

    #[test]
    fn port_maps() {
        assert_eq!(PortMap::all().len(), 6);
        assert_eq!(PortMap::all().iter().filter(|p| p.is_locally_valid()).count(), 4);
    }

    #[test]
    fn sizes_and_cuts() {
        for n in 1..=6 {
            let s = assemble(n, B_RULE, &EmbeddingRule::from_bits(0)).unwrap();
            assert_eq!(s.graph.n_vertices(), 2 * n + 6);
            assert_eq!(s.graph.n_edges(), 3 * n + 9);
            assert_eq!(s.layout.cut_origins.len(), n + 1);
            let mut crossings = 0;
            for j in 0..=n {
                let count = s
                    .graph
                    .edges()
                    .iter()
                    .filter(|e| {
                        let (u, v) = e.endpoints();
                        let (cu, cv) = (component_of(n, u), component_of(n, v));
                        cu.min(cv) <= j && j < cu.max(cv)
                    })
                    .count();
                assert_eq!(count, 3, "cut {j} of G_{n}");
                crossings += count;
            }
            assert_eq!(crossings, 3 * (n + 1));
        }
    }

    #[test]
    fn first_gadget_wiring() {
        let s = assemble(2, B_RULE, &EmbeddingRule::from_bits(0)).unwrap();
        assert!(s.graph.has_edge(3, 4));
        assert!(s.graph.has_edge(2, 3));
        assert!(s.graph.has_edge(0, 4));
        assert_eq!(s.layout.cut_origins[1], [3, 4, 1]);
        assert_eq!(s.layout.cut_edges[1][2], Edge::new(1, 5));
    }

    #[test]
    fn rejects_zero_gadgets() {
        assert!(matches!(
            assemble(0, B_RULE, &EmbeddingRule::from_bits(0)),
            Err(FamilyError::Parameter(0))
        ));
    }

    #[test]
    fn canonical_embedding_is_planar() {
        let w = GadgetWiring::canonical();
        let s = assemble(5, w.ports, &w.embedding).unwrap();
        let r = check_planarity(&s.graph).unwrap();
        assert!(r.planar);
        assert_eq!(r.faces, 24 - 16 + 2);
    }
}
