//! Pattern labels, derived rather than transcribed.
//!
//! Letter labels come from matching the observed cut-state automaton to the fixed
//! one. Number labels come from the letters each number pattern emits when its path's
//! end moves right. Primes come from the contexts in which each paired letter occurs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::engine::{lollipop_neighbors, run_thomason_observed, LogLevel, WalkOptions};
use crate::family::{assemble, EmbeddingRule, FamilyInstance, GadgetWiring, Layout, PortMap};
use crate::graph::{Edge, OrientedHamPath, VertexId};
use crate::oracle::{enumerate_ham_cycles, OracleConfig};

use super::automaton::{anchor, build_j_automaton, EmpiricalAutomaton};
use super::letters::{sigma_string, LetterPattern, PatternWord, Sigma, Terminal};
use super::local::{local_letter_classes, local_number_classes};
use super::structure::{skeleton, LetterKey, NumberKey, SigmaKey, Skeleton};
use super::WordError;

/// Right-moving rewrites of each number pattern: the letters written over the old end
/// gadget and beyond, and the number pattern the end lands in.
pub const RIGHT_RULES: [(u8, &[(&str, u8)]); 7] = [
    (1, &[("P", 3), ("WR", 5)]),
    (2, &[("R", 6), ("SQ", 7)]),
    (3, &[("Q", 4)]),
    (4, &[("UWS", 3)]),
    (5, &[("XWS", 3)]),
    (6, &[("XPQ", 7)]),
    (7, &[("UPQ", 7)]),
];

/// Rewrites that land in the pac.
pub const PAC_RULES: [(u8, &[&str]); 7] = [
    (1, &["P", "W", "WR"]),
    (2, &["R", "S", "SQ"]),
    (3, &["Q"]),
    (4, &["U", "UW", "UWS"]),
    (5, &["X", "XW", "XWS"]),
    (6, &["X", "XP", "XPQ"]),
    (7, &["U", "UP", "UPQ"]),
];

/// Gadget sizes used to derive labels; large enough that every rewrite fits left of the pac.
const DERIVE_SIZES: std::ops::RangeInclusive<usize> = 6..=11;

#[derive(Clone, Debug, Serialize)]
pub struct PatternCatalog {
    pub ports: PortMap,
    pub sigma: BTreeMap<SigmaKey, Sigma>,
    pub y_key: SigmaKey,
    pub letters: BTreeMap<LetterKey, LetterPattern>,
    pub numbers: BTreeMap<NumberKey, u8>,
}

/// A gadget's class on a given path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GadgetClass {
    Letter(LetterPattern),
    Number(u8),
}

/// Walks collected for derivation: one per gadget count.
pub(crate) struct Observed {
    pub layout: Layout,
    pub graph: crate::graph::CubicGraph,
    pub paths: Vec<Vec<VertexId>>,
    pub skeletons: Vec<Skeleton>,
}

pub(crate) fn observe_walks(
    ports: PortMap,
    embedding: &EmbeddingRule,
    lambda: VertexId,
    green: Edge,
    sizes: impl IntoIterator<Item = usize>,
) -> Result<Vec<Observed>, WordError> {
    let mut out = Vec::new();
    for m in sizes {
        let strip = assemble(m, ports, embedding)?;
        let cycles = enumerate_ham_cycles(&strip.graph, &OracleConfig::default())?;
        let with_green: Vec<_> = cycles.containing(green).collect();
        if with_green.len() != 2 {
            return Err(WordError::Anchor(format!(
                "edge {green} lies on {} cycles of G_{m}",
                with_green.len()
            )));
        }
        let opts = WalkOptions {
            log: LogLevel::Full,
            ..WalkOptions::default()
        };
        let layout = strip.layout.clone();
        let trace = run_thomason_observed(
            &strip.graph,
            with_green[0],
            lambda,
            green,
            &opts,
            &|v| layout.is_pac(v),
            &mut |_, _| {},
        )?;
        let paths: Vec<Vec<VertexId>> = trace
            .path_log
            .expect("full log requested")
            .into_iter()
            .map(OrientedHamPath::into_vec)
            .collect();
        let skeletons = paths.iter().map(|p| skeleton(&layout, p)).collect();
        out.push(Observed {
            layout,
            graph: strip.graph,
            paths,
            skeletons,
        });
    }
    Ok(out)
}

fn label_letters(map: &BTreeMap<SigmaKey, Sigma>, keys: &[LetterKey]) -> Result<String, WordError> {
    keys.iter()
        .map(|k| {
            map.get(&k.sigma())
                .map(|s| s.as_char())
                .ok_or_else(|| WordError::Unclassifiable(format!("letter class {}", k.sigma())))
        })
        .collect()
}

impl PatternCatalog {
    /// Labels for a wiring with the given start vertex and green edge.
    pub fn derive(ports: PortMap, embedding: &EmbeddingRule, lambda: VertexId, green: Edge) -> Result<Self, WordError> {
        let obs = observe_walks(ports, embedding, lambda, green, DERIVE_SIZES)?;

        let rightmost = obs
            .iter()
            .flat_map(|o| o.skeletons.iter().filter(|s| s.end_component == o.layout.n + 1));
        let empirical = EmpiricalAutomaton::from_skeletons(rightmost)?;
        let sigma = anchor(&empirical, &build_j_automaton())?;

        let local_letters = local_letter_classes(ports);
        let local_sigma: BTreeSet<SigmaKey> = local_letters.iter().map(|k| k.sigma()).collect();
        if let Some(k) = sigma.keys().find(|k| !local_sigma.contains(k)) {
            return Err(WordError::Labels(format!("observed class {k} is not locally realisable")));
        }
        let rest: Vec<SigmaKey> = local_sigma.iter().copied().filter(|k| !sigma.contains_key(k)).collect();
        let [y_key] = rest[..] else {
            return Err(WordError::Labels(format!(
                "{} letter classes left unlabelled, expected exactly one",
                rest.len()
            )));
        };

        let numbers = derive_numbers(&obs, &sigma, ports)?;
        let letters = derive_primes(&obs, &sigma, y_key, &numbers, &local_letters)?;
        Ok(PatternCatalog {
            ports,
            sigma,
            y_key,
            letters,
            numbers,
        })
    }

    /// Catalog of the canonical wiring, derived once per process.
    pub fn canonical() -> &'static PatternCatalog {
        static CATALOG: OnceLock<PatternCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let w = GadgetWiring::canonical();
            let a = w.anchor.expect("canonical wiring is anchored");
            PatternCatalog::derive(w.ports, &w.embedding, a.lambda, a.green)
                .expect("canonical wiring yields a consistent catalog")
        })
    }

    pub fn sigma_of(&self, k: SigmaKey) -> Option<Sigma> {
        self.sigma.get(&k).copied()
    }

    pub fn letter(&self, k: LetterKey) -> Result<LetterPattern, WordError> {
        self.letters
            .get(&k)
            .copied()
            .ok_or_else(|| WordError::Unclassifiable(format!("letter class {} exit {}", k.sigma(), k.exit)))
    }

    pub fn number(&self, k: NumberKey) -> Result<u8, WordError> {
        self.numbers
            .get(&k)
            .copied()
            .ok_or_else(|| WordError::Unclassifiable(format!("number class {k}")))
    }

    /// Key of a number label.
    pub fn number_key(&self, label: u8) -> Option<NumberKey> {
        self.numbers.iter().find(|&(_, &l)| l == label).map(|(&k, _)| k)
    }

    pub fn encode_skeleton(&self, sk: &Skeleton, n: usize) -> Result<PatternWord, WordError> {
        let mut word = Vec::with_capacity(sk.letters.len());
        for k in &sk.letters {
            match self.letter(*k)?.collapse() {
                Some(s) => word.push(s),
                None => return Err(WordError::Unclassifiable("Y has no letter in the alphabet".into())),
            }
        }
        let terminal = match sk.end {
            Some(k) => Some(Terminal::Number(self.number(k)?)),
            None if sk.end_component == n + 1 => Some(Terminal::Pac),
            None => None,
        };
        Ok(PatternWord {
            sigma_word: word,
            terminal,
        })
    }

    pub fn encode(&self, layout: &Layout, path: &[VertexId]) -> Result<PatternWord, WordError> {
        self.encode_skeleton(&skeleton(layout, path), layout.n)
    }

    /// Class of gadget `i` (1-based) on a path from Λ along the green edge.
    pub fn classify_gadget(
        &self,
        instance: &FamilyInstance,
        path: &OrientedHamPath,
        i: usize,
    ) -> Result<Option<GadgetClass>, WordError> {
        let p = path.as_slice();
        if p[0] != instance.lambda || p[1] != instance.green_far() {
            return Err(WordError::Unclassifiable("path does not start along the green edge".into()));
        }
        let sk = skeleton(&instance.layout, p);
        if i < sk.end_component {
            return self.letter(sk.letters[i - 1]).map(|l| Some(GadgetClass::Letter(l)));
        }
        if i == sk.end_component {
            if let Some(k) = sk.end {
                return self.number(k).map(|x| Some(GadgetClass::Number(x)));
            }
        }
        Ok(None)
    }
}

fn derive_numbers(
    obs: &[Observed],
    sigma: &BTreeMap<SigmaKey, Sigma>,
    ports: PortMap,
) -> Result<BTreeMap<NumberKey, u8>, WordError> {
    // for each end class, the right-moving rewrites seen, with the class landed in
    let mut seen: BTreeMap<NumberKey, BTreeSet<(String, Option<NumberKey>)>> = BTreeMap::new();
    for o in obs {
        let m = o.layout.n;
        for (p, sk) in o.paths.iter().zip(&o.skeletons) {
            let (Some(key), i) = (sk.end, sk.end_component) else {
                continue;
            };
            if i + 3 > m {
                continue;
            }
            let path = OrientedHamPath::new(&o.graph, p.clone())?;
            for mv in lollipop_neighbors(&o.graph, &path).moves {
                let q = skeleton(&o.layout, mv.path.as_slice());
                if q.end_component > i {
                    let written = label_letters(sigma, &q.letters[i - 1..])?;
                    seen.entry(key).or_default().insert((written, q.end));
                }
            }
        }
    }
    let mut labels: BTreeMap<NumberKey, u8> = BTreeMap::new();
    for (key, moves) in &seen {
        let written: BTreeSet<&str> = moves.iter().map(|(w, _)| w.as_str()).collect();
        let hit = RIGHT_RULES
            .iter()
            .find(|(_, rules)| rules.iter().map(|r| r.0).collect::<BTreeSet<_>>() == written);
        let Some(&(label, _)) = hit else {
            return Err(WordError::Labels(format!("end class {key} rewrites as {written:?}, matching no rule")));
        };
        if labels.values().any(|&l| l == label) {
            return Err(WordError::Labels(format!("two end classes behave like pattern {label}")));
        }
        labels.insert(*key, label);
    }
    // the classes landed in must carry the labels the rules name
    for (key, moves) in &seen {
        let rules = RIGHT_RULES[labels[key] as usize - 1].1;
        for (w, landed) in moves {
            let want = rules.iter().find(|r| r.0 == w).map(|r| r.1);
            let got = landed.and_then(|k| labels.get(&k).copied());
            if want != got {
                return Err(WordError::Labels(format!(
                    "pattern {} rewrites as {w} into {got:?}, expected {want:?}",
                    labels[key]
                )));
            }
        }
    }
    let missing: Vec<NumberKey> = local_number_classes(ports)
        .into_iter()
        .filter(|k| !labels.contains_key(k))
        .collect();
    match missing[..] {
        [k] if labels.len() == 7 => {
            labels.insert(k, 8);
        }
        _ => {
            return Err(WordError::Labels(format!(
                "{} end classes labelled by their rewrites, {} left over",
                labels.len(),
                missing.len()
            )))
        }
    }
    Ok(labels)
}

/// Primes from the two contexts that fix them: the `W` directly left of pattern 2 is `W'`,
/// and the chain `P Q U W S 3` reads `P Q U'' W'' S 3`. Both pick the lower-numbered of a
/// class's two exit slots for the double prime, and `R`, `X` are assigned the same way.
fn derive_primes(
    obs: &[Observed],
    sigma: &BTreeMap<SigmaKey, Sigma>,
    y_key: SigmaKey,
    numbers: &BTreeMap<NumberKey, u8>,
    local_letters: &BTreeSet<LetterKey>,
) -> Result<BTreeMap<LetterKey, LetterPattern>, WordError> {
    let mut w_before_2 = BTreeSet::new();
    let mut chain_u = BTreeSet::new();
    let mut chain_w = BTreeSet::new();
    for o in obs {
        for sk in &o.skeletons {
            let Some(label) = sk.end.and_then(|k| numbers.get(&k).copied()) else {
                continue;
            };
            let l = sk.letters.len();
            if label == 2 && l >= 1 {
                w_before_2.insert(sk.letters[l - 1].exit);
            }
            if label == 3 && l >= 5 && label_letters(sigma, &sk.letters[l - 5..])? == "PQUWS" {
                chain_u.insert(sk.letters[l - 3].exit);
                chain_w.insert(sk.letters[l - 2].exit);
            }
        }
    }
    let single = |s: BTreeSet<u8>, what: &str| -> Result<u8, WordError> {
        match s.into_iter().collect::<Vec<_>>()[..] {
            [x] => Ok(x),
            ref v => Err(WordError::Labels(format!("{what} occurs with exits {v:?}"))),
        }
    };
    let w1 = single(w_before_2, "W before pattern 2")?;
    let u2 = single(chain_u, "U in P Q U W S 3")?;
    let w2 = single(chain_w, "W in P Q U W S 3")?;
    // the two exits of each paired class
    let mut exits: BTreeMap<SigmaKey, Vec<u8>> = BTreeMap::new();
    for k in local_letters {
        exits.entry(k.sigma()).or_default().push(k.exit);
    }
    let key_of = |s: Sigma| sigma.iter().find(|&(_, &x)| x == s).map(|(&k, _)| k).expect("anchored letters are labelled");
    let lower = |s: Sigma, e: u8| exits[&key_of(s)].iter().all(|&x| x >= e);
    if w1 == w2 || !exits[&key_of(Sigma::W)].contains(&w1) {
        return Err(WordError::Labels(format!("W' and W'' exits {w1} and {w2} do not split W")));
    }
    // both pinned contexts must agree on which of the two exits is the double prime;
    // R and X follow the same rule
    let lower_is_double = lower(Sigma::W, w2);
    if lower(Sigma::U, u2) != lower_is_double {
        return Err(WordError::Labels("W'' and U'' disagree on the exit order".into()));
    }

    let mut out = BTreeMap::new();
    for k in local_letters {
        let pattern = if k.sigma() == y_key {
            LetterPattern::Y
        } else {
            let s = sigma[&k.sigma()];
            match LetterPattern::primes(s) {
                None => match s {
                    Sigma::P => LetterPattern::P,
                    Sigma::Q => LetterPattern::Q,
                    _ => LetterPattern::S,
                },
                Some((one, two)) => {
                    if lower(s, k.exit) == lower_is_double {
                        two
                    } else {
                        one
                    }
                }
            }
        };
        out.insert(*k, pattern);
    }
    let distinct: BTreeSet<LetterPattern> = out.values().copied().collect();
    if distinct.len() != 12 || out.len() != 12 {
        return Err(WordError::Labels(format!(
            "{} letter classes received {} distinct labels",
            out.len(),
            distinct.len()
        )));
    }
    Ok(out)
}

/// Human-readable label table.
pub fn describe(catalog: &PatternCatalog) -> String {
    let mut s = String::new();
    for (k, l) in &catalog.letters {
        s.push_str(&format!("{l:>4}  {} exit {}\n", k.sigma(), k.exit));
    }
    for (k, l) in &catalog.numbers {
        s.push_str(&format!("{l:>4}  {k}\n"));
    }
    s
}

pub fn word_string(w: &[Sigma]) -> String {
    sigma_string(w)
}
