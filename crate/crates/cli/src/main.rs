use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use lollipop_core::engine::{run_family, LogLevel, WalkError, WalkOptions, DEFAULT_BUDGET};
use lollipop_core::experiment::{
    self, render, sweep_steps, trace_json, LemmaReport, ReportFormat, SweepResult,
};
use lollipop_core::family::{build, search_gadget_wirings, GadgetWiring, WiringSnapshot};
use lollipop_core::graph::{CubicGraph, GraphJson};
use lollipop_core::oracle::{build_lollipop_graph, count_cycles_containing, enumerate_ham_cycles, OracleConfig};
use lollipop_core::words::{
    asymptotics, build_j_automaton, enumerate_language, PatternCatalog,
};

macro_rules! out {
    ($($t:tt)*) => { write!(io::stdout(), $($t)*)? };
}
macro_rules! outln {
    ($($t:tt)*) => { writeln!(io::stdout(), $($t)*)? };
}

#[derive(Parser)]
#[command(name = "lollipop", version, about = "Lollipop walks on cubic graphs and the G_n family")]
struct Cli {
    /// Wiring snapshot to use instead of the built-in one.
    #[arg(long, global = true, env = "LOLLIPOP_WIRING")]
    wiring: Option<PathBuf>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphEmit {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordsEmit {
    List,
    Count,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogArg {
    Full,
    Rightmost,
    Counts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    Init,
    Bounce,
    Fill,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// List the Hamiltonian cycles of a graph and how many pass through each edge.
    Cycles {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Build the lollipop graph on oriented Hamiltonian paths.
    Lollipop {
        #[arg(long)]
        graph: PathBuf,
        /// Only paths starting at this vertex.
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        emit: GraphEmit,
    },
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit G_n.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        emit: GraphEmit,
    },
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the walk on G_n from C_0 along the green edge.
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rightmost")]
        log: LogArg,
        #[arg(long, env = "LOLLIPOP_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The language L_n, its size, or the word automaton.
    Words {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "list")]
        emit: WordsEmit,
    },
    /// Recurrence table, series check and the growth constant.
    Asymptotics {
        #[arg(long, default_value_t = 60)]
        kmax: usize,
    },
    /// Check the counter lemmas on the family.
    Verify {
        #[arg(long, value_enum)]
        lemma: LemmaArg,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Step counts over a range of n, with the exponent fit.
    Sweep {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 36)]
        n_max: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, env = "LOLLIPOP_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the full result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a saved sweep as CSV or JSON.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Search all gadget wirings and write a snapshot.
    Search {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_wiring(path: Option<&Path>) -> Result<(GadgetWiring, PatternCatalog)> {
    match path {
        None => Ok((GadgetWiring::canonical(), PatternCatalog::canonical().clone())),
        Some(p) => {
            if !p.exists() {
                bail!("wiring snapshot {} not found; run `lollipop search --out {}` first", p.display(), p.display());
            }
            let snap = WiringSnapshot::load(p)?;
            let w = snap.canonical().wiring;
            let a = w.anchor.context("snapshot wiring has no anchor")?;
            let cat = PatternCatalog::derive(w.ports, &w.embedding, a.lambda, a.green)?;
            Ok((w, cat))
        }
    }
}

fn read_graph(path: &Path) -> Result<CubicGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: GraphJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(CubicGraph::try_from(&raw)?)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn print_lemma(r: &LemmaReport) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(r)?);
    eprintln!("lemma {}: {}", r.lemma, if r.passed { "PASS" } else { "FAIL" });
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let wiring_path = cli.wiring.as_deref();
    match cli.cmd {
        Cmd::Build { n, emit } => {
            let (w, _) = load_wiring(wiring_path)?;
            let inst = build(n, &w)?;
            let text = match emit {
                GraphEmit::Json => serde_json::to_string_pretty(&inst.graph.to_json())? + "\n",
                GraphEmit::Dot => inst.graph.to_dot(&format!("G_{n}"), &[inst.green_edge, inst.red_edge]),
            };
            write_out(None, &text)?;
        }
        Cmd::Oracle(OracleCmd::Cycles { graph }) => {
            let g = read_graph(&graph)?;
            let cycles = enumerate_ham_cycles(&g, &OracleConfig::default())?;
            outln!("{} Hamiltonian cycles", cycles.len());
            for c in cycles.cycles() {
                outln!("  {c}");
            }
            let mut odd = 0;
            for e in g.edges() {
                let k = count_cycles_containing(&cycles, e);
                odd += k % 2;
                outln!("  edge {e}: {k}");
            }
            if odd > 0 {
                bail!("{odd} edges lie on an odd number of cycles");
            }
        }
        Cmd::Oracle(OracleCmd::Lollipop { graph, start, emit }) => {
            let g = read_graph(&graph)?;
            let view = build_lollipop_graph(&g, start, &OracleConfig::default())?;
            match emit {
                GraphEmit::Dot => out!("{}", view.to_dot()),
                GraphEmit::Json => outln!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "nodes": view.n_nodes(),
                        "degree_one": view.degree_one_count(),
                        "components": view.components(),
                    }))?
                ),
            }
        }
        Cmd::Run { n, log, budget, out } => {
            let (w, cat) = load_wiring(wiring_path)?;
            let inst = build(n, &w)?;
            let opts = WalkOptions {
                log: match log {
                    LogArg::Full => LogLevel::Full,
                    LogArg::Rightmost => LogLevel::Rightmost,
                    LogArg::Counts => LogLevel::Counts,
                },
                budget,
                progress_every: 1_000_000,
            };
            let trace = match run_family(&inst, &opts) {
                Ok(t) => t,
                Err(WalkError::Budget { budget, partial }) => {
                    let j = trace_json(&inst, &cat, &partial)?;
                    write_out(out.as_deref(), &(serde_json::to_string_pretty(&j)? + "\n"))?;
                    bail!("budget of {budget} steps exhausted; partial trace written");
                }
                Err(e) => return Err(e.into()),
            };
            info!("{} steps, end cycle is C_1: {}", trace.steps, trace.end_cycle == inst.c1);
            let j = trace_json(&inst, &cat, &trace)?;
            write_out(out.as_deref(), &(serde_json::to_string_pretty(&j)? + "\n"))?;
            return Ok(trace.end_cycle == inst.c1);
        }
        Cmd::Words { n, emit } => match emit {
            WordsEmit::List => {
                for w in enumerate_language(n)? {
                    outln!("{w}");
                }
            }
            WordsEmit::Count => outln!("{}", enumerate_language(n)?.len()),
            WordsEmit::Dot => out!("{}", build_j_automaton().to_dot()),
        },
        Cmd::Asymptotics { kmax } => {
            let r = asymptotics(kmax)?;
            let agree = r.a_table.iter().zip(&r.gf_check).all(|(&a, &s)| a as i128 == s);
            outln!("{}", serde_json::to_string_pretty(&r)?);
            if !agree {
                bail!("recurrence and series disagree");
            }
        }
        Cmd::Verify { lemma, n_min, n_max } => {
            let (w, cat) = load_wiring(wiring_path)?;
            let mut ok = true;
            if matches!(lemma, LemmaArg::Init | LemmaArg::All) {
                let r = experiment::verify_lemma_init(&w, &cat, n_min..=n_max)?;
                print_lemma(&r)?;
                ok &= r.passed;
            }
            for n in n_min..=n_max {
                if matches!(lemma, LemmaArg::Bounce | LemmaArg::All) {
                    let r = experiment::verify_lemma_bounce(&w, &cat, n)?;
                    print_lemma(&r)?;
                    ok &= r.passed;
                }
                if matches!(lemma, LemmaArg::Fill | LemmaArg::All) {
                    let r = experiment::verify_lemma_fill(&w, &cat, n)?;
                    print_lemma(&r)?;
                    ok &= r.passed;
                }
            }
            return Ok(ok);
        }
        Cmd::Sweep {
            n_min,
            n_max,
            workers,
            budget,
            out,
        } => {
            let (w, _) = load_wiring(wiring_path)?;
            let r: SweepResult = sweep_steps(&w, n_min, n_max, budget, workers)?;
            out!("{}", render(&r, ReportFormat::Csv));
            if let Some(f) = &r.fit {
                eprintln!(
                    "slope of ln T(n) over [{}, {}]: {:.6} (ln c = {:.6})",
                    f.n_lo, f.n_hi, f.slope, r.ln_c
                );
            }
            eprintln!("T(n)/a_n in [{:.4}, {:.4}]", r.ratio_band.0, r.ratio_band.1);
            if let Some(p) = out {
                fs::write(&p, render(&r, ReportFormat::Json))?;
            }
            return Ok(r.cycles_ok() && r.gaps_ok());
        }
        Cmd::Report { input, out, format } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let r: SweepResult = serde_json::from_str(&text)?;
            let f = match format {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Json => ReportFormat::Json,
            };
            experiment::report(&r, &out, f)?;
        }
        Cmd::Search { max_n, out } => {
            let outcome = search_gadget_wirings(max_n)?;
            let snap = WiringSnapshot::from_outcome(&outcome);
            fs::write(&out, snap.to_json())?;
            eprintln!(
                "{} surviving wiring classes, {} rejected port maps",
                outcome.survivors.len(),
                outcome.rejected.len()
            );
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("checks failed");
            ExitCode::FAILURE
        }
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
