//! Per-step analysis of a walk on G_n: which rewrite each lollipop performs, and how
//! each number pattern moves the path's end.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::{lollipop_neighbors, WalkTrace};
use crate::family::FamilyInstance;
use crate::graph::OrientedHamPath;
use crate::oracle::{enumerate_ham_paths, OracleConfig};

use super::catalog::{PatternCatalog, PAC_RULES, RIGHT_RULES};
use super::letters::{sigma_string, PatternWord, Sigma, Terminal};
use super::structure::skeleton;
use super::WordError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionCategory {
    /// The end moves right by one of the listed rewrites.
    Listed,
    /// The inverse of a listed rewrite: the end moves back left.
    ListedReversed,
    /// Both paths end in the pac and encode the same word.
    PacInternal,
    /// The end is still in the cap: the walk has not entered the strip yet.
    Cap,
    /// Involves pattern 8, for which no rewrites are listed.
    Pattern8,
    Unlisted,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TransitionReport {
    pub counts: BTreeMap<TransitionCategory, u64>,
    /// Listed rewrites by name, e.g. `1->P3`, and how often they fired in either direction.
    pub rule_hits: BTreeMap<String, u64>,
    /// `(step, before, after)` for every pattern-8 or unlisted change.
    pub pattern8: Vec<(u64, String, String)>,
    pub unlisted: Vec<(u64, String, String)>,
    /// Whether pattern 2 always sat directly right of a `W`.
    pub two_after_w: bool,
}

impl TransitionReport {
    pub fn passed(&self) -> bool {
        self.unlisted.is_empty() && self.two_after_w
    }
}

/// Encodes every logged path of a walk on `instance`.
pub fn encode_trace(
    instance: &FamilyInstance,
    catalog: &PatternCatalog,
    trace: &WalkTrace,
) -> Result<Vec<PatternWord>, WordError> {
    let log = trace
        .path_log
        .as_ref()
        .ok_or_else(|| WordError::Unclassifiable("trace was not logged in full".into()))?;
    log.iter()
        .map(|p| catalog.encode(&instance.layout, p.as_slice()))
        .collect()
}

/// The listed rewrite taking `from` to `to` with the end moving right, if any.
fn listed_rule(from: &PatternWord, to: &PatternWord) -> Option<String> {
    let Some(Terminal::Number(k)) = from.terminal else {
        return None;
    };
    let i = from.sigma_word.len();
    if !(1..=7).contains(&k) || to.sigma_word.len() <= i || to.sigma_word[..i] != from.sigma_word[..] {
        return None;
    }
    let written = sigma_string(&to.sigma_word[i..]);
    match to.terminal? {
        Terminal::Number(l) => RIGHT_RULES[k as usize - 1]
            .1
            .iter()
            .any(|&(w, t)| w == written && t == l)
            .then(|| format!("{k}->{written}{l}")),
        Terminal::Pac => PAC_RULES[k as usize - 1]
            .1
            .contains(&written.as_str())
            .then(|| format!("{k}->{written}$")),
    }
}

fn is_eight(w: &PatternWord) -> bool {
    w.terminal == Some(Terminal::Number(8))
}

/// Classifies every consecutive pair of a fully logged walk.
pub fn verify_transitions(
    instance: &FamilyInstance,
    catalog: &PatternCatalog,
    trace: &WalkTrace,
) -> Result<TransitionReport, WordError> {
    let words = encode_trace(instance, catalog, trace)?;
    let mut r = TransitionReport {
        two_after_w: true,
        ..TransitionReport::default()
    };
    for w in &words {
        if w.terminal == Some(Terminal::Number(2)) && w.sigma_word.last() != Some(&Sigma::W) {
            r.two_after_w = false;
        }
    }
    for (t, pair) in words.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let step = t as u64 + 1;
        let cat = if a.terminal.is_none() || b.terminal.is_none() {
            TransitionCategory::Cap
        } else if let Some(rule) = listed_rule(a, b) {
            *r.rule_hits.entry(rule).or_default() += 1;
            TransitionCategory::Listed
        } else if let Some(rule) = listed_rule(b, a) {
            *r.rule_hits.entry(rule).or_default() += 1;
            TransitionCategory::ListedReversed
        } else if a.terminal == Some(Terminal::Pac) && a == b {
            TransitionCategory::PacInternal
        } else if is_eight(a) || is_eight(b) {
            r.pattern8.push((step, a.to_string(), b.to_string()));
            TransitionCategory::Pattern8
        } else {
            r.unlisted.push((step, a.to_string(), b.to_string()));
            TransitionCategory::Unlisted
        };
        *r.counts.entry(cat).or_default() += 1;
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BounceClass {
    Bouncing,
    Conducting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BounceSource {
    /// Paths visited by the walk from C_0.
    Walk,
    /// Every non-closable Hamiltonian path starting in the cap, for patterns the walk
    /// never reaches.
    CapStarts,
}

#[derive(Clone, Debug, Serialize)]
pub struct BounceReport {
    pub pattern: u8,
    pub class: BounceClass,
    pub occurrences: usize,
    pub source: BounceSource,
}

/// Applies both lollipops to every path ending in `pattern` and checks that the end
/// always moves right (bouncing), or always moves once each way (conducting).
pub fn classify_bounce(
    instance: &FamilyInstance,
    catalog: &PatternCatalog,
    trace: &WalkTrace,
    pattern: u8,
) -> Result<BounceReport, WordError> {
    let log = trace
        .path_log
        .as_ref()
        .ok_or_else(|| WordError::Unclassifiable("trace was not logged in full".into()))?;
    let key = catalog
        .number_key(pattern)
        .ok_or_else(|| WordError::Unclassifiable(format!("pattern {pattern}")))?;
    let ends_in = |p: &[usize]| skeleton(&instance.layout, p).end == Some(key);
    let mut paths: Vec<OrientedHamPath> = log.iter().filter(|p| ends_in(p.as_slice())).cloned().collect();
    let mut source = BounceSource::Walk;
    if paths.is_empty() {
        // closable paths have a single lollipop and are the walk's endpoints, not events
        source = BounceSource::CapStarts;
        let config = OracleConfig::default();
        for start in 0..3 {
            for p in enumerate_ham_paths(&instance.graph, Some(start), None, &config)? {
                if ends_in(&p) && !instance.graph.has_edge(p[0], p[p.len() - 1]) {
                    paths.push(OrientedHamPath::new(&instance.graph, p)?);
                }
            }
        }
    }
    if paths.is_empty() {
        return Err(WordError::Unclassifiable(format!(
            "pattern {pattern} does not occur on G_{}",
            instance.n
        )));
    }
    let mut seen: Option<BounceClass> = None;
    for p in &paths {
        let i = instance.component_of(p.last());
        let (mut right, mut left) = (0, 0);
        for mv in lollipop_neighbors(&instance.graph, p).moves {
            let j = instance.component_of(mv.path.last());
            if j > i {
                right += 1;
            } else if j < i {
                left += 1;
            }
        }
        let class = match (right, left) {
            (2, 0) => BounceClass::Bouncing,
            (1, 1) => BounceClass::Conducting,
            _ => {
                return Err(WordError::Classification(format!(
                    "pattern {pattern} path moves right {right} and left {left} times"
                )))
            }
        };
        if seen.is_some_and(|c| c != class) {
            return Err(WordError::Classification(format!("pattern {pattern} behaves both ways")));
        }
        seen = Some(class);
    }
    Ok(BounceReport {
        pattern,
        class: seen.expect("at least one path"),
        occurrences: paths.len(),
        source,
    })
}
