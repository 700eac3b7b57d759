//! The rightmost-word automaton: the fixed 5-state automaton over Σ, the empirical one
//! read off a family instance's cut states, and the anchoring that matches them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::letters::Sigma;
use super::structure::{CutState, SigmaKey, Skeleton};
use super::WordError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JAutomaton {
    pub n_states: usize,
    pub initial: usize,
    pub accepting: Vec<bool>,
    pub transitions: Vec<(usize, Sigma, usize)>,
}

/// States: 0 is the start of a block, 1 follows `P` or `WS`, 2 follows `Q`, 3 follows
/// `W`, 4 follows `WR`. Every state accepts, since rightmost words are block prefixes.
pub fn build_j_automaton() -> JAutomaton {
    use Sigma::*;
    JAutomaton {
        n_states: 5,
        initial: 0,
        accepting: vec![true; 5],
        transitions: vec![
            (0, P, 1),
            (1, Q, 2),
            (2, U, 0),
            (0, W, 3),
            (3, R, 4),
            (4, X, 0),
            (3, S, 1),
        ],
    }
}

impl JAutomaton {
    pub fn step(&self, state: usize, s: Sigma) -> Option<usize> {
        self.transitions
            .iter()
            .find(|&&(from, l, _)| from == state && l == s)
            .map(|&(_, _, to)| to)
    }

    pub fn run(&self, word: &[Sigma]) -> Option<usize> {
        word.iter().try_fold(self.initial, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &[Sigma]) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    /// All accepted words of length exactly `n`, in lexicographic Σ order.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<Sigma>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.extend(self.initial, n, &mut cur, &mut out);
        out
    }

    fn extend(&self, q: usize, n: usize, cur: &mut Vec<Sigma>, out: &mut Vec<Vec<Sigma>>) {
        if cur.len() == n {
            if self.accepting[q] {
                out.push(cur.clone());
            }
            return;
        }
        let mut next: Vec<(Sigma, usize)> = self
            .transitions
            .iter()
            .filter(|t| t.0 == q)
            .map(|&(_, s, to)| (s, to))
            .collect();
        next.sort();
        for (s, to) in next {
            cur.push(s);
            self.extend(to, n, cur, out);
            cur.pop();
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph J {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.n_states {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(s, "  start -> q{};", self.initial);
        for &(from, l, to) in &self.transitions {
            let _ = writeln!(s, "  q{from} -> q{to} [label=\"{l}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Transition structure observed on rightmost paths: cut state to cut state, labelled by
/// the gadget's traversal class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmpiricalAutomaton {
    pub initial: Option<CutState>,
    pub transitions: BTreeMap<(CutState, SigmaKey), CutState>,
}

impl EmpiricalAutomaton {
    pub fn from_skeletons<'a>(rightmost: impl IntoIterator<Item = &'a Skeleton>) -> Result<Self, WordError> {
        let mut a = EmpiricalAutomaton::default();
        for sk in rightmost {
            let Some(&first) = sk.states.first() else {
                continue;
            };
            match a.initial {
                None => a.initial = Some(first),
                Some(q) if q != first => {
                    return Err(WordError::Anchor(format!("two initial cut states {q} and {first}")))
                }
                _ => {}
            }
            for (i, l) in sk.letters.iter().enumerate() {
                let (from, to) = (sk.states[i], sk.states[i + 1]);
                if let Some(&prev) = a.transitions.get(&(from, l.sigma())) {
                    if prev != to {
                        return Err(WordError::Anchor(format!("class {} from {from} is not deterministic", l.sigma())));
                    }
                }
                a.transitions.insert((from, l.sigma()), to);
            }
        }
        Ok(a)
    }

    pub fn states(&self) -> BTreeSet<CutState> {
        let mut s: BTreeSet<CutState> = self.initial.into_iter().collect();
        for (&(from, _), &to) in &self.transitions {
            s.insert(from);
            s.insert(to);
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph observed {\n  rankdir=LR;\n");
        for (&(from, k), &to) in &self.transitions {
            let _ = writeln!(s, "  \"{from}\" -> \"{to}\" [label=\"{k}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Matches the observed automaton to the fixed one by a state bijection fixing the initial
/// state. Succeeds only if exactly one bijection works; returns the induced letter labels.
pub fn anchor(observed: &EmpiricalAutomaton, reference: &JAutomaton) -> Result<BTreeMap<SigmaKey, Sigma>, WordError> {
    let states: Vec<CutState> = observed.states().into_iter().collect();
    let init = observed
        .initial
        .ok_or_else(|| WordError::Anchor("no rightmost paths observed".into()))?;
    if states.len() != reference.n_states || observed.transitions.len() != reference.transitions.len() {
        return Err(WordError::Anchor(format!(
            "observed {} states and {} transitions, expected {} and {}",
            states.len(),
            observed.transitions.len(),
            reference.n_states,
            reference.transitions.len()
        )));
    }
    let mut found: Vec<BTreeMap<SigmaKey, Sigma>> = Vec::new();
    let mut perm: Vec<usize> = (0..states.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let map = |q: CutState| p[states.iter().position(|&x| x == q).unwrap()];
        if map(init) != reference.initial {
            return;
        }
        let mut labels = BTreeMap::new();
        for (&(from, k), &to) in &observed.transitions {
            let hit = reference
                .transitions
                .iter()
                .find(|&&(f, _, t)| f == map(from) && t == map(to));
            match hit {
                Some(&(_, l, _)) => {
                    labels.insert(k, l);
                }
                None => return,
            }
        }
        let distinct: BTreeSet<Sigma> = labels.values().copied().collect();
        if distinct.len() == reference.transitions.len() {
            found.push(labels);
        }
    });
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(WordError::Anchor("observed automaton is not isomorphic to the reference".into())),
        k => Err(WordError::Anchor(format!("{k} anchorings fit, labels are ambiguous"))),
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::letters::sigma_word;

    #[test]
    fn fixed_automaton_shape() {
        let j = build_j_automaton();
        assert_eq!(j.n_states, 5);
        assert_eq!(j.transitions.len(), 7);
        assert!(j.accepts(&sigma_word("PQUWRX").unwrap()));
        assert!(j.accepts(&sigma_word("WSQ").unwrap()));
        assert!(!j.accepts(&sigma_word("PW").unwrap()));
        // the three block loops return to the start state
        for b in ["PQU", "WRX", "WSQU"] {
            assert_eq!(j.run(&sigma_word(b).unwrap()), Some(0));
        }
    }

    #[test]
    fn dot_has_all_edges() {
        let dot = build_j_automaton().to_dot();
        assert_eq!(dot.matches("label=").count(), 7);
    }
}
