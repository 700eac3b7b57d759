//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lollipop_core::engine::{run_family, LogLevel, WalkOptions, DEFAULT_BUDGET};
use lollipop_core::experiment::{canonical, sweep_steps, verify_lemma_bounce, verify_lemma_fill, verify_lemma_init};
use lollipop_core::family::build;
use lollipop_core::graph::named::{cube, k4};
use lollipop_core::graph::{check_planarity, check_three_connected, CubicGraph};
use lollipop_core::oracle::{build_lollipop_graph, count_cycles_containing, enumerate_ham_cycles, OracleConfig};
use lollipop_core::words::counting::generating_function_series;
use lollipop_core::words::{enumerate_language, growth_constant, recurrence_table};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle() -> OracleConfig {
    OracleConfig {
        max_vertices: usize::MAX,
        ..OracleConfig::default()
    }
}

fn family_invariants() -> Outcome {
    let (w, _) = canonical();
    for n in 1..=12 {
        let g = build(n, &w).map_err(|e| e.to_string())?;
        let gr = &g.graph;
        ensure(gr.n_vertices() == 2 * n + 6, || format!("G_{n}: |V| = {}", gr.n_vertices()))?;
        ensure(gr.n_edges() == 3 * n + 9, || format!("G_{n}: |E| = {}", gr.n_edges()))?;
        let cubic = (0..gr.n_vertices()).all(|v| {
            let nb = gr.neighbors(v);
            nb.iter().all(|&u| u != v && gr.has_edge(u, v)) && nb[0] != nb[1] && nb[1] != nb[2] && nb[0] != nb[2]
        });
        ensure(cubic, || format!("G_{n} is not cubic"))?;
        ensure(check_three_connected(gr), || format!("G_{n} is not 3-connected"))?;
        let p = check_planarity(gr).map_err(|e| e.to_string())?;
        ensure(p.planar, || format!("G_{n}: V - E + F = {}", gr.n_vertices() + p.faces - gr.n_edges()))?;
        if n <= 10 {
            let k = enumerate_ham_cycles(gr, &oracle()).map_err(|e| e.to_string())?.len();
            ensure(k == 3, || format!("G_{n} has {k} Hamiltonian cycles"))?;
        }
    }
    Ok("n = 1..12 shape, 3-connected, planar; 3 Hamiltonian cycles for n <= 10".into())
}

fn parity_on(name: &str, g: &CubicGraph) -> Result<usize, String> {
    let cycles = enumerate_ham_cycles(g, &oracle()).map_err(|e| e.to_string())?;
    for e in g.edges() {
        let k = count_cycles_containing(&cycles, e);
        ensure(k.is_multiple_of(2), || format!("{name}: edge {e} lies on {k} cycles"))?;
    }
    let view = build_lollipop_graph(g, None, &oracle()).map_err(|e| e.to_string())?;
    for i in 0..view.n_nodes() {
        let p = view.node(i);
        let closable = g.has_edge(p[0], p[p.len() - 1]);
        let d = view.degree(i);
        ensure(d == 1 || d == 2, || format!("{name}: node {p:?} has degree {d}"))?;
        ensure((d == 1) == closable, || format!("{name}: node {p:?} has degree {d}, closable {closable}"))?;
    }
    Ok(view.n_nodes())
}

fn thomason_parity() -> Outcome {
    let (w, _) = canonical();
    let mut nodes = parity_on("K4", &k4())? + parity_on("Q3", &cube())?;
    for n in 1..=8 {
        let g = build(n, &w).map_err(|e| e.to_string())?;
        nodes += parity_on(&format!("G_{n}"), &g.graph)?;
    }
    Ok(format!("K4, Q3, G_1..G_8 even; {nodes} lollipop nodes checked"))
}

fn termination() -> Outcome {
    let (w, cat) = canonical();
    let r = verify_lemma_init(&w, cat, 3..=30).map_err(|e| e.to_string())?;
    if let Some(c) = r.failures().next() {
        return Err(format!("{c:?}"));
    }
    Ok(format!("{} runs end at C_1 with the expected first/last words", r.cases.len()))
}

fn oracle_equivalence() -> Outcome {
    let (w, _) = canonical();
    let mut total = 0;
    for n in 1..=6 {
        let inst = build(n, &w).map_err(|e| e.to_string())?;
        let opts = WalkOptions {
            log: LogLevel::Full,
            ..WalkOptions::default()
        };
        let trace = run_family(&inst, &opts).map_err(|e| e.to_string())?;
        let view = build_lollipop_graph(&inst.graph, Some(inst.lambda), &oracle()).map_err(|e| e.to_string())?;
        let start = inst
            .c0
            .open_at(inst.lambda, inst.green_far())
            .map_err(|e| e.to_string())?;
        let idx = view
            .index_of(start.as_slice())
            .ok_or_else(|| format!("G_{n}: start path is not a node"))?;
        let component = view.trace_from(idx).map_err(|e| e.to_string())?;
        let log = trace.path_log.as_ref().ok_or("no path log")?;
        ensure(log.len() == component.len(), || {
            format!("G_{n}: walk has {} paths, component {}", log.len(), component.len())
        })?;
        for (t, (p, &i)) in log.iter().zip(&component).enumerate() {
            ensure(p.as_slice() == view.node(i), || format!("G_{n}: paths differ at step {t}"))?;
        }
        ensure(trace.steps as usize == component.len() - 1, || format!("G_{n}: step count"))?;
        total += trace.steps;
    }
    Ok(format!("n = 1..6 identical, {total} steps in total"))
}

fn bounce() -> Outcome {
    let (w, cat) = canonical();
    let mut occurrences = 0;
    for n in 1..=6 {
        let r = verify_lemma_bounce(&w, cat, n).map_err(|e| e.to_string())?;
        if let Some(c) = r.failures().next() {
            return Err(format!("{c:?}"));
        }
        occurrences += r.cases.len();
    }
    Ok(format!("bouncing {{1,2}}, conducting {{3..8}} for n = 1..6 ({occurrences} pattern checks)"))
}

fn fill() -> Outcome {
    let (w, cat) = canonical();
    let mut events = 0;
    for n in 1..=12 {
        let r = verify_lemma_fill(&w, cat, n).map_err(|e| e.to_string())?;
        if let Some(c) = r.failures().next() {
            return Err(format!("{c:?}"));
        }
        events += r.cases.len() - 1;
    }
    Ok(format!("{events} bouncing events match templates; full visitation for n = 1..12"))
}

fn counting() -> Outcome {
    let a = recurrence_table(20);
    ensure(a[..4] == [1, 2, 3, 3], || format!("base {:?}", &a[..4]))?;
    let s = generating_function_series(21);
    for k in 0..=20 {
        let l = enumerate_language(k).map_err(|e| e.to_string())?.len() as u128;
        ensure(l == a[k] && a[k] as i128 == s[k], || {
            format!("k={k}: |L_k| = {l}, a_k = {}, series = {}", a[k], s[k])
        })?;
    }
    Ok(format!("|L_k| = a_k = series for k <= 20 (a_20 = {})", a[20]))
}

fn constants() -> Outcome {
    let (c, c_sqrt, _) = growth_constant().map_err(|e| e.to_string())?;
    let a = recurrence_table(61);
    let ratio = a[61] as f64 / a[60] as f64;
    ensure((c - 1.3953).abs() < 1e-3, || format!("c = {c}"))?;
    ensure((c_sqrt - 1.1812).abs() < 1e-3, || format!("sqrt c = {c_sqrt}"))?;
    ensure((ratio - c).abs() < 1e-3, || format!("a_61/a_60 = {ratio}, c = {c}"))?;
    Ok(format!("c = {c:.6}, sqrt c = {c_sqrt:.6}, a_61/a_60 = {ratio:.6}"))
}

const BAND: (f64, f64) = (4.0, 6.0);

fn growth() -> Outcome {
    let (w, _) = canonical();
    let r = sweep_steps(&w, 3, 36, DEFAULT_BUDGET, 0).map_err(|e| e.to_string())?;
    ensure(r.cycles_ok(), || "a run did not end at C_1".into())?;
    let fit = r.fit.as_ref().ok_or("no fit")?;
    ensure((fit.n_lo, fit.n_hi) == (20, 36), || format!("fit range [{}, {}]", fit.n_lo, fit.n_hi))?;
    ensure((fit.slope - r.ln_c).abs() <= 0.01, || {
        format!("slope {:.5} vs ln c {:.5}", fit.slope, r.ln_c)
    })?;
    if let Some(row) = r.rows.iter().find(|row| row.max_gap > 2 * row.n as u64) {
        return Err(format!("n = {}: gap {} > 2n", row.n, row.max_gap));
    }
    ensure(r.ratio_band.0 >= BAND.0 && r.ratio_band.1 <= BAND.1, || {
        format!("T(n)/a_n spans [{:.4}, {:.4}], outside [{}, {}]", r.ratio_band.0, r.ratio_band.1, BAND.0, BAND.1)
    })?;
    Ok(format!(
        "slope {:.5} vs ln c {:.5}; gaps <= 2n; T(n)/a_n in [{:.3}, {:.3}] within [{}, {}]",
        fit.slope, r.ln_c, r.ratio_band.0, r.ratio_band.1, BAND.0, BAND.1
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 family invariants", family_invariants, Some(Duration::from_secs(60))),
        ("2 parity", thomason_parity, Some(Duration::from_secs(120))),
        ("3 termination", termination, None),
        ("4 oracle equivalence", oracle_equivalence, None),
        ("5 bounce", bounce, None),
        ("6 fill", fill, None),
        ("7 counting", counting, None),
        ("8 constants", constants, None),
        ("9 growth", growth, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if dt > l => Err(format!("took {dt:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{dt:.1?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{dt:.1?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
