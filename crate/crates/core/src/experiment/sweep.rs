use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{run_family, LogLevel, WalkOptions, WalkTrace};
use crate::family::{build, FamilyInstance, GadgetWiring};
use crate::words::letters::sigma_string;
use crate::words::{growth_constant, recurrence_table, PatternCatalog, WordError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub steps: u64,
    pub rightmost_count: u64,
    pub max_gap: u64,
    pub end_cycle_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub n_lo: usize,
    pub n_hi: usize,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub fit: Option<ExponentFit>,
    pub ln_c: f64,
    /// Smallest and largest `T(n) / a_n`.
    pub ratio_band: (f64, f64),
    /// Smallest `n₀` with `T(n+4) > 2 T(n)` for every swept `n ≥ n₀`, if any.
    pub doubling_from: Option<usize>,
    /// Whether each row's rightmost count equals `2 a_n`.
    pub rightmost_matches: bool,
}

impl SweepResult {
    pub fn gaps_ok(&self) -> bool {
        self.rows.iter().all(|r| r.max_gap <= 2 * r.n as u64)
    }

    pub fn cycles_ok(&self) -> bool {
        self.rows.iter().all(|r| r.end_cycle_ok)
    }
}

/// Least-squares line through `(x, y)`.
pub(crate) fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn run_row(wiring: &GadgetWiring, n: usize, budget: u64) -> Result<SweepRow, WordError> {
    let inst = build(n, wiring)?;
    let opts = WalkOptions {
        log: LogLevel::Counts,
        budget,
        progress_every: 0,
    };
    let trace = run_family(&inst, &opts)?;
    Ok(SweepRow {
        n,
        steps: trace.steps,
        rightmost_count: trace.rightmost_indices.len() as u64,
        max_gap: trace.max_gap(),
        end_cycle_ok: trace.completed && trace.end_cycle == inst.c1,
    })
}

/// Runs the walk for every `n` in `n_min..=n_max` on up to `workers` threads (0 picks the
/// default) and fits `ln T(n)` over the top half of the range.
pub fn sweep_steps(
    wiring: &GadgetWiring,
    n_min: usize,
    n_max: usize,
    budget: u64,
    workers: usize,
) -> Result<SweepResult, WordError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| WordError::Numeric(e.to_string()))?;
    // largest first, so the long runs start early
    let ns: Vec<usize> = (n_min..=n_max).rev().collect();
    let mut rows: Vec<SweepRow> = pool.install(|| {
        ns.par_iter()
            .map(|&n| run_row(wiring, n, budget))
            .collect::<Result<_, _>>()
    })?;
    rows.sort_by_key(|r| r.n);

    let (ln_c, a) = (growth_constant()?.0.ln(), recurrence_table(n_max));
    let lo = n_min + (n_max - n_min).div_ceil(2);
    let top: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n >= lo)
        .map(|r| (r.n as f64, (r.steps as f64).ln()))
        .collect();
    let fit = (top.len() >= 2).then(|| {
        let (slope, intercept) = least_squares(&top);
        ExponentFit {
            n_lo: lo,
            n_hi: n_max,
            slope,
            intercept,
        }
    });
    let ratios: Vec<f64> = rows.iter().map(|r| r.steps as f64 / a[r.n] as f64).collect();
    let ratio_band = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let steps: BTreeMap<usize, u64> = rows.iter().map(|r| (r.n, r.steps)).collect();
    let doubles = |n: usize| steps.get(&(n + 4)).is_none_or(|&t4| t4 > 2 * steps[&n]);
    let doubling_from = (n_min..=n_max).find(|&n0| (n0..=n_max).all(doubles));
    let rightmost_matches = rows.iter().all(|r| r.rightmost_count == 2 * a[r.n] as u64);
    Ok(SweepResult {
        rows,
        fit,
        ln_c,
        ratio_band,
        doubling_from,
        rightmost_matches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Rounds to 12 significant digits so that reports are byte-stable.
fn fixed(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => fixed(n.as_f64().expect("f64 number")),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn render(result: &SweepResult, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut s = String::from("n,steps,rightmost_count,max_gap,end_cycle_ok\n");
            for r in &result.rows {
                let _ = writeln!(s, "{},{},{},{},{}", r.n, r.steps, r.rightmost_count, r.max_gap, r.end_cycle_ok);
            }
            s
        }
        ReportFormat::Json => {
            // serde_json's map keeps keys sorted
            let v = round_floats(serde_json::to_value(result).expect("sweep result serialises"));
            let mut s = serde_json::to_string_pretty(&v).expect("value serialises");
            s.push('\n');
            s
        }
    }
}

pub fn report(result: &SweepResult, out: &Path, format: ReportFormat) -> io::Result<()> {
    std::fs::write(out, render(result, format))
}

/// Trace file contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceJson {
    pub n: usize,
    pub steps: u64,
    pub gaps: Vec<u64>,
    pub rightmost_words: Vec<String>,
    pub end_cycle: Vec<usize>,
}

pub fn trace_json(instance: &FamilyInstance, catalog: &PatternCatalog, trace: &WalkTrace) -> Result<TraceJson, WordError> {
    let rightmost_words = trace
        .rightmost_paths
        .iter()
        .map(|p| {
            catalog
                .encode(&instance.layout, p.as_slice())
                .map(|w| sigma_string(&w.sigma_word))
        })
        .collect::<Result<_, _>>()?;
    Ok(TraceJson {
        n: instance.n,
        steps: trace.steps,
        gaps: trace.gap_sizes.clone(),
        rightmost_words,
        end_cycle: trace.end_cycle.as_slice().to_vec(),
    })
}
