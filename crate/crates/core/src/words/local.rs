//! Gadget traversal classes realisable in isolation.
//!
//! One gadget is modelled with its six incident edges and abstract exteriors: the left
//! exterior holds the path's start and pairs up any further left crossings, the right
//! exterior holds the end (for a pass-through) and pairs up the rest. Every combination
//! that glues into a single path is a realisable class.

use std::collections::BTreeSet;

use crate::family::PortMap;

use super::structure::{LetterKey, NumberKey};

const START: usize = 0;
const END: usize = 1;
const A: usize = 2;
const B: usize = 3;
const L0: usize = 4;
const R0: usize = 7;
const N_NODES: usize = 10;

fn local_edges(ports: PortMap) -> [(usize, usize); 6] {
    [
        (A, B),
        (L0 + ports.to_a as usize, A),
        (L0 + ports.to_b as usize, B),
        (A, R0),
        (B, R0 + 1),
        (L0 + ports.carry as usize, R0 + 2),
    ]
}

/// An exterior: the slot left open for the path's end, if any, and the slot pairs joined outside.
type Exterior = (Option<usize>, Vec<(usize, usize)>);

/// Exterior wirings of a set of used slots: `(terminal slot, paired slots)`. With
/// `terminal = false` all slots are paired; at least one pair is needed since the far
/// side always has vertices to visit.
fn exteriors(slots: &[usize], terminal: bool) -> Vec<Exterior> {
    match (slots.len(), terminal) {
        (1, true) => vec![(Some(slots[0]), vec![])],
        (2, false) => vec![(None, vec![(slots[0], slots[1])])],
        (3, true) => (0..3)
            .map(|t| {
                let rest: Vec<usize> = (0..3).filter(|&i| i != t).map(|i| slots[i]).collect();
                (Some(slots[t]), vec![(rest[0], rest[1])])
            })
            .collect(),
        _ => vec![],
    }
}

struct Walk {
    internal: bool,
    left_mask: u8,
    right_mask: u8,
    entry: u8,
    exit: Option<u8>,
    last: usize,
}

/// Follows the glued structure from the start; `None` unless it is one simple path
/// through every edge.
fn glue(edges: &[(usize, usize)], internal: bool) -> Option<Walk> {
    let mut adj = vec![Vec::new(); N_NODES];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    if adj.iter().any(|a| a.len() > 2) || adj[START].len() != 1 {
        return None;
    }
    let mut seen = [false; N_NODES];
    let (mut prev, mut cur) = (usize::MAX, START);
    seen[START] = true;
    let mut used_edges = 0;
    let (mut entry, mut exit) = (None, None);
    let (mut left_mask, mut right_mask) = (0u8, 0u8);
    loop {
        let next = adj[cur].iter().copied().find(|&w| w != prev);
        let Some(w) = next else { break };
        if seen[w] {
            return None;
        }
        seen[w] = true;
        used_edges += 1;
        if (L0..L0 + 3).contains(&w) {
            left_mask |= 1 << (w - L0);
            entry.get_or_insert((w - L0) as u8);
        }
        if (R0..R0 + 3).contains(&w) {
            right_mask |= 1 << (w - R0);
            exit = Some((w - R0) as u8);
        }
        prev = cur;
        cur = w;
    }
    if used_edges != edges.len() || !seen[A] || !seen[B] {
        return None;
    }
    Some(Walk {
        internal,
        left_mask,
        right_mask,
        entry: entry?,
        exit,
        last: cur,
    })
}

fn for_each_configuration(ports: PortMap, end_inside: bool, f: &mut dyn FnMut(Walk)) {
    let base = local_edges(ports);
    for subset in 0u32..64 {
        let chosen: Vec<(usize, usize)> = (0..6).filter(|k| subset >> k & 1 == 1).map(|k| base[k]).collect();
        let used = |node: usize| chosen.iter().any(|&(u, v)| u == node || v == node);
        let left: Vec<usize> = (L0..L0 + 3).filter(|&x| used(x)).collect();
        let right: Vec<usize> = (R0..R0 + 3).filter(|&x| used(x)).collect();
        for (start, lpairs) in exteriors(&left, true) {
            for (end, rpairs) in exteriors(&right, !end_inside) {
                let mut edges = chosen.clone();
                edges.push((START, start.expect("left exterior holds the start")));
                edges.extend(lpairs.iter().copied());
                if let Some(e) = end {
                    edges.push((e, END));
                }
                edges.extend(rpairs);
                if let Some(w) = glue(&edges, subset & 1 == 1) {
                    f(w);
                }
            }
        }
    }
}

pub fn local_letter_classes(ports: PortMap) -> BTreeSet<LetterKey> {
    let mut out = BTreeSet::new();
    for_each_configuration(ports, false, &mut |w| {
        if w.last == END {
            out.insert(LetterKey {
                internal: w.internal,
                left_mask: w.left_mask,
                right_mask: w.right_mask,
                entry: w.entry,
                exit: w.exit.expect("a pass-through crosses the right cut"),
            });
        }
    });
    out
}

pub fn local_number_classes(ports: PortMap) -> BTreeSet<NumberKey> {
    let mut out = BTreeSet::new();
    for_each_configuration(ports, true, &mut |w| {
        if w.last == A || w.last == B {
            out.insert(NumberKey {
                end_at_b: w.last == B,
                internal: w.internal,
                left_mask: w.left_mask,
                right_mask: w.right_mask,
                entry: w.entry,
            });
        }
    });
    out
}
