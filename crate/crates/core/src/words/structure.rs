//! Structural description of how a Hamiltonian path traverses each gadget.
//!
//! Everything here is label-free: slots, crossing masks and crossing order. Labels are
//! attached later by the catalog.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::family::Layout;
use crate::graph::VertexId;

/// One passage of the path through a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slot: u8,
    pub rightward: bool,
}

/// The crossings of every cut `0..=n`, each in path order.
pub fn cut_crossings(layout: &Layout, path: &[VertexId]) -> Vec<Vec<Crossing>> {
    let mut out = vec![Vec::new(); layout.n + 1];
    for w in path.windows(2) {
        let (u, v) = (w[0], w[1]);
        let (cu, cv) = (layout.component_of(u), layout.component_of(v));
        if cu == cv {
            continue;
        }
        for (j, cut) in out.iter_mut().enumerate().take(cu.max(cv)).skip(cu.min(cv)) {
            let slot = layout
                .cut_slot(j, u, v)
                .expect("an edge between components crosses every cut between them");
            cut.push(Crossing {
                slot,
                rightward: cu < cv,
            });
        }
    }
    out
}

fn mask(cs: &[Crossing]) -> u8 {
    cs.iter().fold(0, |m, c| m | 1 << c.slot)
}

/// Which crossing slots a cut uses, and which one the path crosses first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutState {
    pub mask: u8,
    pub first: u8,
}

impl CutState {
    pub fn of(cs: &[Crossing]) -> Option<CutState> {
        cs.first().map(|c| CutState {
            mask: mask(cs),
            first: c.slot,
        })
    }
}

impl fmt::Display for CutState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", mask_str(self.mask), self.first)
    }
}

pub(crate) fn mask_str(m: u8) -> String {
    (0..3).filter(|s| m >> s & 1 == 1).map(|s| s.to_string()).collect()
}

/// Traversal class of a gadget the path passes through. Two letter keys with equal
/// [`SigmaKey`] use the same edge set and differ only in which right slot is crossed last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LetterKey {
    pub internal: bool,
    pub left_mask: u8,
    pub right_mask: u8,
    pub entry: u8,
    pub exit: u8,
}

impl LetterKey {
    pub fn sigma(&self) -> SigmaKey {
        SigmaKey {
            internal: self.internal,
            left_mask: self.left_mask,
            right_mask: self.right_mask,
            entry: self.entry,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SigmaKey {
    pub internal: bool,
    pub left_mask: u8,
    pub right_mask: u8,
    pub entry: u8,
}

impl SigmaKey {
    pub fn left_state(&self) -> CutState {
        CutState {
            mask: self.left_mask,
            first: self.entry,
        }
    }
}

impl fmt::Display for SigmaKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}>{}@{}",
            if self.internal { "i" } else { "-" },
            mask_str(self.left_mask),
            mask_str(self.right_mask),
            self.entry
        )
    }
}

/// Traversal class of the gadget holding the path's end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NumberKey {
    pub end_at_b: bool,
    pub internal: bool,
    pub left_mask: u8,
    pub right_mask: u8,
    pub entry: u8,
}

impl NumberKey {
    pub fn left_state(&self) -> CutState {
        CutState {
            mask: self.left_mask,
            first: self.entry,
        }
    }
}

impl fmt::Display for NumberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}>{}@{}",
            if self.end_at_b { "b" } else { "a" },
            if self.internal { "i" } else { "-" },
            mask_str(self.left_mask),
            mask_str(self.right_mask),
            self.entry
        )
    }
}

/// Structural description of a path that starts left of every gadget: one letter key per
/// gadget strictly left of the end, then the end's number key, or `None` for a pac end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub letters: Vec<LetterKey>,
    pub end: Option<NumberKey>,
    /// States of the cuts left of the end component.
    pub states: Vec<CutState>,
    /// Component holding the end: 0 for the cap, `i` for gadget `i`, `n + 1` for the pac.
    pub end_component: usize,
}

pub fn skeleton(layout: &Layout, path: &[VertexId]) -> Skeleton {
    let cuts = cut_crossings(layout, path);
    let last = *path.last().expect("paths are non-empty");
    let end_comp = layout.component_of(last);
    let mut pos = vec![0usize; path.len()];
    for (k, &v) in path.iter().enumerate() {
        pos[v] = k;
    }
    let uses = |x: VertexId, y: VertexId| pos[x].abs_diff(pos[y]) == 1;
    let mut letters = Vec::with_capacity(end_comp.saturating_sub(1));
    for i in 1..end_comp {
        let (a, b) = layout.gadget(i);
        let (l, r) = (&cuts[i - 1], &cuts[i]);
        letters.push(LetterKey {
            internal: uses(a, b),
            left_mask: mask(l),
            right_mask: mask(r),
            entry: l[0].slot,
            exit: r[r.len() - 1].slot,
        });
    }
    let end = (end_comp >= 1 && end_comp <= layout.n).then(|| {
        let (a, b) = layout.gadget(end_comp);
        let l = &cuts[end_comp - 1];
        NumberKey {
            end_at_b: last == b,
            internal: uses(a, b),
            left_mask: mask(l),
            right_mask: mask(&cuts[end_comp]),
            entry: l[0].slot,
        }
    });
    let states = (0..end_comp)
        .map(|j| CutState::of(&cuts[j]).expect("cuts left of the end are crossed"))
        .collect();
    Skeleton {
        letters,
        end,
        states,
        end_component: end_comp,
    }
}
