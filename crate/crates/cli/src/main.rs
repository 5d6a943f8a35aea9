use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::rc::Rc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cyclecover::compilers::{
    self, observed_shares, semantic_tamper, CompileOptions, GreedyMajorityBreaker, Mode, Protocol,
};
use cyclecover::coverfile::{closed_walks, parse_cover, write_cover};
use cyclecover::disjoint::{default_experiments, two_edge_disjoint_cover};
use cyclecover::optimal::{opt_value, optimal_cycle_cover, optimal_edge_cycle_cover};
use cyclecover::sim::{
    flood_programs, run_protocol, Adversary, Echo, FixedEavesdropper, FixedEdge, NodeProgram, NullAdversary,
    RandomEavesdropper, RandomEdge, SimConfig,
};
use cyclecover::verify::verify_cover;
use cyclecover::{ceil_log2, generators, graph_cover, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cycle covers of bridgeless graphs and resilient message-passing compilers.
///
/// Graph files use the edge-list format: a header `n m`, then one `u v`
/// line per edge.
#[derive(Parser)]
#[command(name = "cyclecover", version)]
struct Cli {
    /// Default seed for every randomized step.
    #[arg(long, global = true, env = "CYCLECOVER_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Low-congestion cover of every non-bridge edge.
    Cover {
        graph: PathBuf,
        /// Cover file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cover whose dilation is compared with the shortest cycle through each edge.
    OptCover {
        graph: PathBuf,
        /// Certify every edge with a near-shortest cycle instead of one global radius.
        #[arg(long)]
        per_edge: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three pairwise edge-disjoint paths per edge of a 3-edge-connected graph.
    DisjointCover {
        graph: PathBuf,
        #[arg(long)]
        experiments: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a cover file; exits 1 on any violation.
    Verify {
        graph: PathBuf,
        cover: PathBuf,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a compiled program against an adversary and compares outputs with a fault-free run.
    Simulate {
        graph: PathBuf,
        #[arg(long, value_enum)]
        compiler: CompilerArg,
        /// null, fixed:E, random or greedy.
        #[arg(long, default_value = "null")]
        adversary: String,
        #[arg(long, value_enum, default_value = "flood")]
        program: ProgramArg,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
        /// Trace file; summary only when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record every delivered message in the trace.
        #[arg(long)]
        full_trace: bool,
    },
    /// Dilation and congestion ratios over random instances of a family.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CompilerArg {
    ByzA,
    ByzB,
    ByzC,
    Eavesdrop,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProgramArg {
    Flood,
    Echo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Grid,
    Er,
    Flower,
}

/// Exit status 1 without an input error.
struct Violation;

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cover(g: &Graph, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let gc = graph_cover(g)?;
    let report = verify_cover(g, &walks(&gc.cover), None);
    emit(out, &write_cover(&gc.cover))?;
    if out.is_some() {
        print!("{}", report.to_text());
    } else {
        eprint!("{}", report.to_text());
    }
    Ok(())
}

fn walks(cover: &cyclecover::CycleCover) -> Vec<Vec<usize>> {
    cover.cycles.iter().map(|c| c.vertices.clone()).collect()
}

fn opt_cover(g: &Graph, per_edge: bool, seed: u64, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let ov = opt_value(g);
    let (cover, extra) = if per_edge {
        let ec = optimal_edge_cycle_cover(g, seed)?;
        let mut worst: f64 = 0.0;
        for e in 0..g.m() {
            if let (Some(c), Some(o)) = (ec.certified[e], ov.per_edge[e]) {
                worst = worst.max(c as f64 / o as f64);
            }
        }
        (ec.cover, format!("scales: {}\nmax certified/shortest: {worst:.3}\n", ec.scales.len()))
    } else {
        let oc = optimal_cycle_cover(g, seed)?;
        let clusters = oc.neighborhoods.as_ref().map_or(0, |n| n.clusters.len());
        (oc.cover, format!("clusters: {clusters}\n"))
    };
    let report = verify_cover(g, &walks(&cover), None);
    let mut summary = String::new();
    match ov.opt {
        Some(o) => {
            writeln!(summary, "opt: {o}")?;
            writeln!(summary, "dilation/opt: {:.3}", report.dilation as f64 / o as f64)?;
        }
        None => writeln!(summary, "opt: none")?,
    }
    summary.push_str(&extra);
    summary.push_str(&report.to_text());
    emit(out, &write_cover(&cover))?;
    if out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}

fn disjoint(g: &Graph, experiments: Option<usize>, seed: u64, out: &Option<PathBuf>) -> anyhow::Result<bool> {
    let k = experiments.unwrap_or_else(|| default_experiments(g));
    let r = two_edge_disjoint_cover(g, k, seed)?;
    let mut s = format!("experiments {}\nedges {}\n", r.experiments, g.m());
    for (e, t) in r.triples.iter().enumerate() {
        let (u, v) = g.edge(e);
        match t {
            Some(t) => {
                let paths: Vec<String> = t
                    .iter()
                    .map(|p| {
                        let mut x = u;
                        let mut seq = vec![u.to_string()];
                        for &f in p {
                            x = g.other_endpoint(f, x);
                            seq.push(x.to_string());
                        }
                        seq.join(" ")
                    })
                    .collect();
                writeln!(s, "edge {e} {u} {v}: {}", paths.join(" | "))?;
            }
            None => writeln!(s, "edge {e} {u} {v}: none")?,
        }
    }
    for (e, flow) in &r.failures {
        writeln!(s, "failure edge {e} flow {flow}")?;
    }
    writeln!(s, "success rate {:.4}", r.success_rate())?;
    emit(out, &s)?;
    Ok(r.failures.is_empty())
}

fn verify(g: &Graph, cover_path: &Path, out: &Option<PathBuf>) -> anyhow::Result<bool> {
    let text = fs::read_to_string(cover_path).with_context(|| format!("reading {}", cover_path.display()))?;
    let seqs = parse_cover(&text).with_context(|| format!("parsing {}", cover_path.display()))?;
    let report = verify_cover(g, &closed_walks(&seqs), None);
    emit(out, &report.to_text())?;
    Ok(report.is_ok())
}

fn base_programs(g: &Graph, program: ProgramArg, values: &[u64]) -> (Vec<Box<dyn NodeProgram>>, usize) {
    match program {
        ProgramArg::Flood => (flood_programs(g, values, 4), 4),
        ProgramArg::Echo => (
            (0..g.n()).map(|v| Box::new(Echo::new(g, v)) as Box<dyn NodeProgram>).collect(),
            ceil_log2(g.n()).max(1),
        ),
    }
}

fn adversary(choice: &str, mode: Mode, pr: &Rc<Protocol>, g: &Graph, seed: u64) -> anyhow::Result<Box<dyn Adversary>> {
    let (kind, arg) = choice.split_once(':').map_or((choice, None), |(k, a)| (k, Some(a)));
    let edge = || -> anyhow::Result<usize> {
        let e: usize = arg.context("fixed adversary needs an edge, as fixed:E")?.parse().context("bad edge id")?;
        if e >= g.m() {
            bail!("edge {e} out of range for {} edges", g.m());
        }
        Ok(e)
    };
    let eaves = mode == Mode::Eavesdrop;
    Ok(match (kind, eaves) {
        ("null", _) => Box::new(NullAdversary),
        ("fixed", false) => Box::new(FixedEdge { edge: edge()?, tamper: semantic_tamper(pr) }),
        ("fixed", true) => Box::new(FixedEavesdropper(edge()?)),
        ("random", false) => Box::new(RandomEdge::new(seed, semantic_tamper(pr))),
        ("random", true) => Box::new(RandomEavesdropper::new(seed)),
        ("greedy", false) => Box::new(GreedyMajorityBreaker::new(pr.clone())),
        ("greedy", true) => bail!("greedy is a corrupting adversary; use fixed:E or random with the eavesdrop compiler"),
        _ => bail!("unknown adversary `{choice}`"),
    })
}

struct SimulateArgs<'a> {
    compiler: CompilerArg,
    adversary: &'a str,
    program: ProgramArg,
    rounds: usize,
    out: &'a Option<PathBuf>,
    full_trace: bool,
}

fn simulate(g: &Graph, a: SimulateArgs<'_>, seed: u64) -> anyhow::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<u64> = (0..g.n()).map(|_| rng.gen_range(0..16)).collect();
    let (mut plain, msg_bits) = base_programs(g, a.program, &values);
    let reference = run_protocol(g, &mut plain, &mut NullAdversary, &SimConfig::new(a.rounds, msg_bits))?;

    let mode = match a.compiler {
        CompilerArg::ByzA => Mode::A,
        CompilerArg::ByzB => Mode::B,
        CompilerArg::ByzC => Mode::C,
        CompilerArg::Eavesdrop => Mode::Eavesdrop,
    };
    let plan = match mode {
        Mode::Eavesdrop => compilers::eavesdrop_plan(g)?,
        _ => compilers::byzantine_plan(g, seed)?,
    };
    let (base, _) = base_programs(g, a.program, &values);
    let opts = CompileOptions { msg_bits, seed };
    let mut compiled = match mode {
        Mode::Eavesdrop => compilers::compile_eavesdrop(g, &plan, base, opts)?,
        _ => compilers::compile_byzantine(g, &plan, mode, base, opts)?,
    };
    let mut adv = adversary(a.adversary, mode, &compiled.protocol, g, seed)?;
    let mut cfg = compiled.protocol.sim_config(a.rounds);
    cfg.record_messages = a.full_trace;
    let trace = run_protocol(g, &mut compiled.programs, adv.as_mut(), &cfg)?;

    let pr = &compiled.protocol;
    let check = pr.log().check();
    let outputs_match = trace.outputs == reference.outputs;
    let mut s = String::new();
    writeln!(s, "compiled rounds {} per base round {} bandwidth {}", trace.rounds, pr.timeline.len(), pr.bandwidth)?;
    writeln!(s, "plan d1 {} c1 {} d2 {} c2 {}", plan.d1, plan.c1, plan.d2, plan.c2)?;
    writeln!(s, "adversary actions {} faults {}", trace.actions().count(), trace.faults())?;
    writeln!(
        s,
        "recoveries correct {} wrong {} failed {} by majority {} majority violations {}",
        check.recovered, check.wrong, check.failed, check.by_majority, check.majority_violations
    )?;
    let mut pass = outputs_match && trace.faults() == 0 && check.majority_violations == 0;
    if mode == Mode::Eavesdrop {
        let seen = observed_shares(pr, &trace);
        let most = seen.values().map(|m| m.len()).max().unwrap_or(0);
        writeln!(s, "most shares observed of one message {most} of {}", pr.timeline.phase1 + 1)?;
        pass &= most <= pr.timeline.phase1;
    }
    for ev in &pr.log().events {
        writeln!(s, "event {ev}")?;
    }
    writeln!(s, "outputs match fault-free run: {outputs_match}")?;
    writeln!(s, "{}", if pass { "PASS" } else { "FAIL" })?;
    if let Some(p) = a.out {
        fs::write(p, trace.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    print!("{s}");
    Ok(pass)
}

fn bench(family: Family, n: usize, trials: usize, seed: u64, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let mut s = String::from("trial n m D opt dil dil/D cong opt_dil opt_dil/opt\n");
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let g = match family {
            Family::Cycle => generators::cycle(n.max(3)),
            Family::Grid => {
                let side = ((n as f64).sqrt().round() as usize).max(2);
                generators::grid(side, side)
            }
            Family::Er => generators::random_two_edge_connected(n.max(3), 2.0 * (n.max(3) as f64).ln() / n.max(3) as f64, &mut rng),
            Family::Flower => generators::flower_with_ring(10, (n.saturating_sub(20) / 2).max(3)),
        };
        let d = g.diameter().unwrap_or(0);
        let opt = opt_value(&g).opt.unwrap_or(0);
        let gc = graph_cover(&g)?;
        let oc = optimal_cycle_cover(&g, rng.gen())?;
        let (dil, odil) = (gc.cover.dilation(), oc.cover.dilation());
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        writeln!(
            s,
            "{trial} {} {} {d} {opt} {dil} {:.3} {} {odil} {:.3}",
            g.n(),
            g.m(),
            ratio(dil, d),
            gc.cover.max_congestion(),
            ratio(odil, opt)
        )?;
    }
    emit(out, &s)
}

fn run(cli: Cli) -> anyhow::Result<Result<(), Violation>> {
    let ok = |b: bool| if b { Ok(()) } else { Err(Violation) };
    Ok(match &cli.cmd {
        Cmd::Cover { graph, out } => {
            cover(&read_graph(graph)?, out)?;
            Ok(())
        }
        Cmd::OptCover { graph, per_edge, out } => {
            opt_cover(&read_graph(graph)?, *per_edge, cli.seed, out)?;
            Ok(())
        }
        Cmd::DisjointCover { graph, experiments, out } => ok(disjoint(&read_graph(graph)?, *experiments, cli.seed, out)?),
        Cmd::Verify { graph, cover, out } => ok(verify(&read_graph(graph)?, cover, out)?),
        Cmd::Simulate { graph, compiler, adversary, program, rounds, out, full_trace } => {
            let args = SimulateArgs {
                compiler: *compiler,
                adversary,
                program: *program,
                rounds: *rounds,
                out,
                full_trace: *full_trace,
            };
            ok(simulate(&read_graph(graph)?, args, cli.seed)?)
        }
        Cmd::Bench { family, n, trials, out } => {
            bench(*family, *n, *trials, cli.seed, out)?;
            Ok(())
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Violation)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
