//! End-to-end checks on the family: counter initialisation, bouncing, filling, and
//! step-count sweeps.

mod sweep;

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::engine::{run_family, LogLevel, WalkOptions, WalkTrace};
use crate::family::{build, FamilyInstance, GadgetWiring};
use crate::words::analysis::encode_trace;
use crate::words::letters::{sigma_string, Gamma, PatternWord, Terminal};
use crate::words::{classify_bounce, enumerate_language, phi, BounceClass, BounceSource, PatternCatalog, WordError};

pub use sweep::{render, report, sweep_steps, trace_json, ExponentFit, ReportFormat, SweepResult, SweepRow, TraceJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    Init,
    Bounce,
    Fill,
}

impl std::fmt::Display for Lemma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Lemma::Init => "init",
            Lemma::Bounce => "bounce",
            Lemma::Fill => "fill",
        })
    }
}

/// One checked case. `n` and `step` locate the path in the walk on G_n.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaCase {
    Init {
        n: usize,
        steps: u64,
        first_word: String,
        last_word: String,
        last_gamma: String,
        end_cycle_ok: bool,
        passed: bool,
    },
    Bounce {
        n: usize,
        pattern: u8,
        class: BounceClass,
        expected: BounceClass,
        occurrences: usize,
        source: BounceSource,
        passed: bool,
    },
    Fill {
        n: usize,
        step: u64,
        pattern: u8,
        path_word: String,
        before: String,
        after: String,
        expected: [String; 2],
        adjacent: bool,
        passed: bool,
    },
    Visit {
        n: usize,
        rightmost_paths: usize,
        distinct_words: usize,
        language_size: usize,
        in_order: bool,
        passed: bool,
    },
}

impl LemmaCase {
    pub fn passed(&self) -> bool {
        match self {
            LemmaCase::Init { passed, .. }
            | LemmaCase::Bounce { passed, .. }
            | LemmaCase::Fill { passed, .. }
            | LemmaCase::Visit { passed, .. } => *passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub passed: bool,
    pub cases: Vec<LemmaCase>,
}

impl LemmaReport {
    fn new(lemma: Lemma, cases: Vec<LemmaCase>) -> Self {
        LemmaReport {
            lemma,
            passed: cases.iter().all(LemmaCase::passed),
            cases,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCase> {
        self.cases.iter().filter(|c| !c.passed())
    }
}

fn periodic(block: &str, n: usize) -> String {
    block.chars().cycle().take(n).collect()
}

fn full_walk(instance: &FamilyInstance) -> Result<WalkTrace, WordError> {
    let opts = WalkOptions {
        log: LogLevel::Full,
        ..WalkOptions::default()
    };
    Ok(run_family(instance, &opts)?)
}

/// For each `n`: the walk from C_0 ends at C_1, its first rightmost word is a prefix of
/// `(PQU)^ω` and its last a prefix of `(WSQU)^ω`, whose image ends in `C` exactly when
/// `n ≡ 1 (mod 4)`.
pub fn verify_lemma_init(
    wiring: &GadgetWiring,
    catalog: &PatternCatalog,
    n_range: RangeInclusive<usize>,
) -> Result<LemmaReport, WordError> {
    let mut cases = Vec::new();
    for n in n_range {
        let inst = build(n, wiring)?;
        let opts = WalkOptions {
            log: LogLevel::Rightmost,
            ..WalkOptions::default()
        };
        let trace = run_family(&inst, &opts)?;
        let (Some(first), Some(last)) = (trace.rightmost_paths.first(), trace.rightmost_paths.last()) else {
            return Err(WordError::Unclassifiable(format!("walk on G_{n} meets no rightmost path")));
        };
        let first = catalog.encode(&inst.layout, first.as_slice())?;
        let last = catalog.encode(&inst.layout, last.as_slice())?;
        let gamma = phi(&last.sigma_word)?;
        let gc_form = gamma.0.last() == Some(&Gamma::C);
        let gamma_ok = gamma.0[..gamma.len() - usize::from(gc_form)].iter().all(|&g| g == Gamma::G);
        let (fw, lw) = (sigma_string(&first.sigma_word), sigma_string(&last.sigma_word));
        let end_cycle_ok = trace.completed && trace.end_cycle == inst.c1;
        let passed = end_cycle_ok
            && fw == periodic("PQU", n)
            && lw == periodic("WSQU", n)
            && gamma_ok
            && gc_form == (n % 4 == 1);
        cases.push(LemmaCase::Init {
            n,
            steps: trace.steps,
            first_word: fw,
            last_word: lw,
            last_gamma: gamma.to_string(),
            end_cycle_ok,
            passed,
        });
    }
    Ok(LemmaReport::new(Lemma::Init, cases))
}

/// Patterns 1 and 2 bounce, 3 to 8 conduct, on G_n.
pub fn verify_lemma_bounce(wiring: &GadgetWiring, catalog: &PatternCatalog, n: usize) -> Result<LemmaReport, WordError> {
    let inst = build(n, wiring)?;
    let trace = full_walk(&inst)?;
    let mut cases = Vec::new();
    for pattern in 1..=8u8 {
        let r = classify_bounce(&inst, catalog, &trace, pattern)?;
        let expected = if pattern <= 2 {
            BounceClass::Bouncing
        } else {
            BounceClass::Conducting
        };
        cases.push(LemmaCase::Bounce {
            n,
            pattern,
            class: r.class,
            expected,
            occurrences: r.occurrences,
            source: r.source,
            passed: r.class == expected,
        });
    }
    Ok(LemmaReport::new(Lemma::Bounce, cases))
}

/// Rightmost words produced around a bouncing event at a path encoding `word`.
pub fn fill_templates(word: &PatternWord, n: usize) -> Option<[String; 2]> {
    let omega = sigma_string(&word.sigma_word);
    let grow = |w: &str, head: &str, tail: &str| -> String {
        let mut s = format!("{w}{head}");
        while s.len() < n {
            s.push_str(tail);
        }
        s.truncate(n);
        s
    };
    match word.terminal? {
        Terminal::Number(1) => Some([grow(&omega, "PQU", "WSQU"), grow(&omega, "WRX", "WSQU")]),
        Terminal::Number(2) => {
            let w = omega.strip_suffix('W')?;
            Some([grow(w, "WSQU", "PQU"), grow(w, "WRX", "PQU")])
        }
        _ => None,
    }
}

/// Every bouncing event on G_n is bracketed by the two rightmost words of its template,
/// and the rightmost paths visit L_n in increasing order.
pub fn verify_lemma_fill(wiring: &GadgetWiring, catalog: &PatternCatalog, n: usize) -> Result<LemmaReport, WordError> {
    let inst = build(n, wiring)?;
    let trace = full_walk(&inst)?;
    let words = encode_trace(&inst, catalog, &trace)?;
    let language = enumerate_language(n)?;
    let position = |w: &PatternWord| -> Result<usize, WordError> {
        let g = phi(&w.sigma_word)?;
        language
            .iter()
            .position(|x| *x == g)
            .ok_or_else(|| WordError::NotInJ(sigma_string(&w.sigma_word)))
    };
    let rightmost: Vec<usize> = (0..words.len())
        .filter(|&t| words[t].terminal == Some(Terminal::Pac))
        .collect();

    let mut cases = Vec::new();
    for (t, w) in words.iter().enumerate() {
        let pattern = match w.terminal {
            Some(Terminal::Number(k)) if k <= 2 => k,
            _ => continue,
        };
        let before = rightmost.iter().rev().find(|&&r| r < t);
        let after = rightmost.iter().find(|&&r| r > t);
        let show = |r: Option<&usize>| r.map_or_else(|| "-".to_string(), |&r| sigma_string(&words[r].sigma_word));
        let (bs, as_) = (show(before), show(after));
        let expected = fill_templates(w, n);
        let matched = expected
            .as_ref()
            .is_some_and(|[x, y]| (bs == *x && as_ == *y) || (bs == *y && as_ == *x));
        let adjacent = match (before, after) {
            (Some(&b), Some(&a)) => position(&words[b])?.abs_diff(position(&words[a])?) == 1,
            _ => false,
        };
        cases.push(LemmaCase::Fill {
            n,
            step: t as u64,
            pattern,
            path_word: w.to_string(),
            before: bs,
            after: as_,
            expected: expected.unwrap_or_else(|| ["-".into(), "-".into()]),
            adjacent,
            passed: matched && adjacent,
        });
    }

    let mut visited = Vec::new();
    for &r in &rightmost {
        let g = phi(&words[r].sigma_word)?;
        if visited.last() != Some(&g) {
            visited.push(g);
        }
    }
    let in_order = visited == language;
    cases.push(LemmaCase::Visit {
        n,
        rightmost_paths: rightmost.len(),
        distinct_words: visited.len(),
        language_size: language.len(),
        in_order,
        passed: in_order,
    });
    Ok(LemmaReport::new(Lemma::Fill, cases))
}

/// The canonical wiring and its catalog.
pub fn canonical() -> (GadgetWiring, &'static PatternCatalog) {
    (GadgetWiring::canonical(), PatternCatalog::canonical())
}
