//! Exhaustive search over gadget wirings.
//!
//! Every locally valid port map is assembled with every embedding rule; candidates must
//! give planar, 3-connected graphs with exactly three Hamiltonian cycles for every small
//! `n`, are grouped up to isomorphism, and must admit an anchoring of the pattern
//! automaton plus a passing run of the lemma checks.

use log::{debug, info};
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    assemble, select_distinguished_cycles, Anchor, EmbeddingRule, FamilyError, GadgetWiring,
    PortMap, SLOT_PASS,
};
use crate::engine::{run_thomason_observed, LogLevel, WalkOptions};
use crate::graph::{check_planarity, check_three_connected, CubicGraph, Edge, VertexId};
use crate::oracle::{enumerate_ham_cycles, OracleConfig};
use crate::words::{letters::sigma_string, PatternCatalog};

/// A wiring that passed every check, with the port maps giving isomorphic families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub wiring: GadgetWiring,
    pub equivalent: Vec<PortMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub ports: PortMap,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub max_n_check: usize,
    pub survivors: Vec<Survivor>,
    pub rejected: Vec<Rejection>,
}

fn to_petgraph(g: &CubicGraph) -> UnGraph<(), ()> {
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            (u as u32, v as u32)
        })
        .collect();
    UnGraph::from_edges(&edges)
}

/// Smallest embedding rule that is planar for every `n` up to `max_n`.
fn planar_rule(ports: PortMap, max_n: usize) -> Result<Option<EmbeddingRule>, FamilyError> {
    'rules: for bits in 0..EmbeddingRule::N_RULES {
        let rule = EmbeddingRule::from_bits(bits);
        for n in 1..=max_n {
            let s = assemble(n, ports, &rule)?;
            if !check_planarity(&s.graph)?.planar {
                continue 'rules;
            }
        }
        return Ok(Some(rule));
    }
    Ok(None)
}

fn structural_check(ports: PortMap, rule: &EmbeddingRule, max_n: usize) -> Result<Option<String>, FamilyError> {
    for n in 1..=max_n {
        let s = assemble(n, ports, rule)?;
        if !check_three_connected(&s.graph) {
            return Ok(Some(format!("G_{n} is not 3-connected")));
        }
        let k = enumerate_ham_cycles(&s.graph, &OracleConfig::default())?.len();
        if k != 3 {
            return Ok(Some(format!("G_{n} has {k} Hamiltonian cycles")));
        }
    }
    Ok(None)
}

/// The start vertex and green edge for which the pattern automaton anchors, if exactly one works.
fn find_anchor(ports: PortMap, rule: &EmbeddingRule) -> Result<(VertexId, Edge, PatternCatalog), String> {
    let probe = assemble(1, ports, rule).map_err(|e| e.to_string())?;
    let mut hits = Vec::new();
    let mut last_err = String::from("no candidates");
    for lambda in 0..3 {
        for &w in probe.graph.neighbors(lambda) {
            let green = Edge::new(lambda, w);
            match PatternCatalog::derive(ports, rule, lambda, green) {
                Ok(c) => hits.push((lambda, green, c)),
                Err(e) => {
                    debug!("{ports:?} from {lambda} along {green}: {e}");
                    last_err = e.to_string();
                }
            }
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(format!("no start admits an anchoring ({last_err})")),
        k => Err(format!("{k} starts admit an anchoring")),
    }
}

/// C_0 is the green cycle whose walk meets rightmost paths in the order the counter
/// starts from: its first rightmost word begins `PQU`. The red edge is C_0's other edge
/// at Λ.
fn find_red(ports: PortMap, rule: &EmbeddingRule, lambda: VertexId, green: Edge, catalog: &PatternCatalog, max_n: usize) -> Result<Edge, String> {
    let mut red = None;
    for n in 3..=max_n {
        let strip = assemble(n, ports, rule).map_err(|e| e.to_string())?;
        let cycles = enumerate_ham_cycles(&strip.graph, &OracleConfig::default()).map_err(|e| e.to_string())?;
        let mut chosen = Vec::new();
        for c in cycles.containing(green) {
            let opts = WalkOptions {
                log: LogLevel::Rightmost,
                ..WalkOptions::default()
            };
            let layout = strip.layout.clone();
            let trace = run_thomason_observed(
                &strip.graph,
                c,
                lambda,
                green,
                &opts,
                &|v| layout.is_pac(v),
                &mut |_, _| {},
            )
            .map_err(|e| e.to_string())?;
            let first = trace
                .rightmost_paths
                .first()
                .ok_or_else(|| format!("walk on G_{n} meets no rightmost path"))?;
            let word = catalog.encode(&strip.layout, first.as_slice()).map_err(|e| e.to_string())?;
            let want: String = "PQU".chars().cycle().take(n).collect();
            if sigma_string(&word.sigma_word) == want {
                let s = c.as_slice();
                let k = s.iter().position(|&v| v == lambda).expect("cycle is Hamiltonian");
                let (prev, next) = (s[(k + s.len() - 1) % s.len()], s[(k + 1) % s.len()]);
                let other = if Edge::new(lambda, next) == green { prev } else { next };
                chosen.push(Edge::new(lambda, other));
            }
        }
        let [r] = chosen[..] else {
            return Err(format!("{} green cycles of G_{n} start the counter at zero", chosen.len()));
        };
        select_distinguished_cycles(&strip.graph, lambda, green, r, &OracleConfig::default())
            .map_err(|e| e.to_string())?;
        match red {
            None => red = Some(r),
            Some(x) if x != r => return Err(format!("red edge changes with n: {x} vs {r}")),
            _ => {}
        }
    }
    red.ok_or_else(|| "no sizes checked".into())
}

fn lemma_check(wiring: &GadgetWiring, catalog: &PatternCatalog, max_n: usize) -> Result<(), String> {
    let top = max_n.max(6);
    let init = crate::experiment::verify_lemma_init(wiring, catalog, 3..=top).map_err(|e| e.to_string())?;
    let bounce = crate::experiment::verify_lemma_bounce(wiring, catalog, 4).map_err(|e| e.to_string())?;
    let fill = crate::experiment::verify_lemma_fill(wiring, catalog, top).map_err(|e| e.to_string())?;
    for r in [&init, &bounce, &fill] {
        if !r.passed {
            return Err(format!("lemma check {} failed", r.lemma));
        }
    }
    Ok(())
}

/// Runs the whole search. `max_n_check` bounds the sizes used for structural checks.
pub fn search_gadget_wirings(max_n_check: usize) -> Result<SearchOutcome, FamilyError> {
    let mut rejected = Vec::new();
    let mut candidates: Vec<(PortMap, EmbeddingRule)> = Vec::new();
    for ports in PortMap::all() {
        if !ports.is_locally_valid() {
            rejected.push(Rejection {
                ports,
                reason: "carried strand is carried again".into(),
            });
            continue;
        }
        let Some(rule) = planar_rule(ports, max_n_check)? else {
            rejected.push(Rejection {
                ports,
                reason: "no planar rotation rule".into(),
            });
            continue;
        };
        if let Some(reason) = structural_check(ports, &rule, max_n_check)? {
            rejected.push(Rejection { ports, reason });
            continue;
        }
        candidates.push((ports, rule));
    }
    info!("{} port maps pass the structural checks", candidates.len());

    // isomorphism classes at the largest checked size
    let graphs: Vec<UnGraph<(), ()>> = candidates
        .iter()
        .map(|(p, r)| assemble(max_n_check, *p, r).map(|s| to_petgraph(&s.graph)))
        .collect::<Result<_, _>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..candidates.len() {
        match classes.iter_mut().find(|c| is_isomorphic(&graphs[c[0]], &graphs[i])) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }

    let check_class = |class: &Vec<usize>| -> Result<Survivor, Rejection> {
        let rep = class
            .iter()
            .copied()
            .find(|&i| candidates[i].0.to_a == SLOT_PASS)
            .unwrap_or(class[0]);
        let (ports, rule) = candidates[rep];
        let reject = |reason: String| Rejection { ports, reason };
        let (lambda, green, catalog) = find_anchor(ports, &rule).map_err(reject)?;
        let red = find_red(ports, &rule, lambda, green, &catalog, max_n_check).map_err(reject)?;
        let wiring = GadgetWiring {
            ports,
            embedding: rule,
            anchor: Some(Anchor { lambda, green, red }),
        };
        lemma_check(&wiring, &catalog, max_n_check).map_err(reject)?;
        let mut equivalent: Vec<PortMap> = class.iter().map(|&i| candidates[i].0).collect();
        equivalent.sort();
        Ok(Survivor { wiring, equivalent })
    };
    let results: Vec<Result<Survivor, Rejection>> = classes.par_iter().map(check_class).collect();

    let mut survivors = Vec::new();
    for (class, r) in classes.iter().zip(results) {
        match r {
            Ok(s) => survivors.push(s),
            Err(rej) => {
                // the other members give isomorphic families and share the verdict
                for &i in class {
                    let ports = candidates[i].0;
                    if ports != rej.ports {
                        rejected.push(Rejection {
                            ports,
                            reason: format!("isomorphic to {:?}: {}", rej.ports, rej.reason),
                        });
                    }
                }
                rejected.push(rej);
            }
        }
    }
    survivors.sort_by_key(|s| s.wiring.ports);
    rejected.sort_by_key(|r| r.ports);
    if survivors.is_empty() {
        let why: Vec<String> = rejected.iter().map(|r| format!("{:?}: {}", r.ports, r.reason)).collect();
        return Err(FamilyError::NoWiring(why.join("; ")));
    }
    Ok(SearchOutcome {
        max_n_check,
        survivors,
        rejected,
    })
}
