//! J_n, its image L_n under φ, and the order < on K.

use std::cmp::Ordering;

use super::automaton::build_j_automaton;
use super::letters::{Gamma, GammaWord, Sigma};
use super::WordError;

const BLOCKS: [(&[Sigma], Gamma); 3] = [
    (&[Sigma::P, Sigma::Q, Sigma::U], Gamma::A),
    (&[Sigma::W, Sigma::R, Sigma::X], Gamma::T),
    (&[Sigma::W, Sigma::S, Sigma::Q, Sigma::U], Gamma::G),
];

/// Pref_n({WRX, PQU, WSQU}*), generated from the blocks directly (no automaton).
pub fn block_language(n: usize) -> Vec<Vec<Sigma>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 4);
    grow(n, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

fn grow(n: usize, cur: &mut Vec<Sigma>, out: &mut Vec<Vec<Sigma>>) {
    if cur.len() >= n {
        out.push(cur[..n].to_vec());
        return;
    }
    for (b, _) in BLOCKS {
        let k = cur.len();
        cur.extend_from_slice(b);
        grow(n, cur, out);
        cur.truncate(k);
    }
}

/// J_n via the automaton.
pub fn j_language(n: usize) -> Vec<Vec<Sigma>> {
    build_j_automaton().words_of_length(n)
}

/// The compression map J → K.
pub fn phi(word: &[Sigma]) -> Result<GammaWord, WordError> {
    use Sigma::*;
    let mut out = Vec::new();
    let mut w = word;
    while !w.is_empty() {
        if let Some(&(b, g)) = BLOCKS.iter().find(|(b, _)| w.len() > b.len() && w.starts_with(b)) {
            out.push(g);
            w = &w[b.len()..];
            continue;
        }
        let g = match w {
            [P] | [P, Q] | [P, Q, U] => Gamma::A,
            [W, R] | [W, R, X] => Gamma::T,
            [W, S] | [W, S, Q] | [W, S, Q, U] => Gamma::G,
            [W] => Gamma::C,
            _ => {
                return Err(WordError::NotInJ(super::letters::sigma_string(word)));
            }
        };
        out.push(g);
        break;
    }
    Ok(GammaWord(out))
}

fn rank(g: Gamma) -> u8 {
    match g {
        Gamma::A => 0,
        Gamma::T => 1,
        Gamma::G => 2,
        Gamma::C => 3,
    }
}

/// The order <: `A < T < G`, `A < C`, equal heads compare the tails, reversed under `T`.
/// Comparing `T` or `G` with `C`, or a word with its proper prefix, is outside the order's
/// domain and reported as an error.
pub fn compare(u: &GammaWord, w: &GammaWord) -> Result<Ordering, WordError> {
    let (mut a, mut b) = (&u.0[..], &w.0[..]);
    let mut flipped = false;
    loop {
        let ord = match (a.first(), b.first()) {
            (None, None) => Ordering::Equal,
            (Some(&x), Some(&y)) if x == y => {
                if x == Gamma::T {
                    flipped = !flipped;
                }
                a = &a[1..];
                b = &b[1..];
                continue;
            }
            (Some(&x), Some(&y)) => {
                let involves_c = x == Gamma::C || y == Gamma::C;
                if involves_c && x != Gamma::A && y != Gamma::A {
                    return Err(WordError::Incomparable(u.to_string(), w.to_string()));
                }
                rank(x).cmp(&rank(y))
            }
            _ => return Err(WordError::Incomparable(u.to_string(), w.to_string())),
        };
        return Ok(if flipped { ord.reverse() } else { ord });
    }
}

/// L_n in increasing order.
pub fn enumerate_language(n: usize) -> Result<Vec<GammaWord>, WordError> {
    let mut words: Vec<GammaWord> = j_language(n).iter().map(|w| phi(w)).collect::<Result<_, _>>()?;
    sort_by_order(&mut words)?;
    Ok(words)
}

/// Insertion sort under <, so an incomparable pair surfaces as an error instead of a
/// silently inconsistent order.
pub fn sort_by_order(words: &mut [GammaWord]) -> Result<(), WordError> {
    for i in 1..words.len() {
        let mut j = i;
        while j > 0 && compare(&words[j], &words[j - 1])? == Ordering::Less {
            words.swap(j, j - 1);
            j -= 1;
        }
    }
    Ok(())
}

/// Exhaustive check that < is a strict total order on the given set.
pub fn check_total_order(words: &[GammaWord]) -> Result<(), WordError> {
    let k = words.len();
    let mut table = vec![vec![Ordering::Equal; k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = compare(&words[i], &words[j])?;
            if (i == j) != (table[i][j] == Ordering::Equal) {
                return Err(WordError::Order(format!("{} vs {} not strict", words[i], words[j])));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            if table[i][j] != table[j][i].reverse() {
                return Err(WordError::Order(format!("{} vs {} not antisymmetric", words[i], words[j])));
            }
            if table[i][j] != Ordering::Less {
                continue;
            }
            for l in 0..k {
                if table[j][l] == Ordering::Less && table[i][l] != Ordering::Less {
                    return Err(WordError::Order(format!(
                        "{} < {} < {} not transitive",
                        words[i], words[j], words[l]
                    )));
                }
            }
        }
    }
    Ok(())
}
