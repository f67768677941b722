//! `flowgame`: analyze networks, build and verify equilibria, size budgets,
//! simulate play and export Graphviz drawings.
//!
//! Results are JSON on stdout; a short human-readable summary goes to
//! stderr. Exit codes: 0 success, 1 input error, 2 region, boundary or
//! assumption error (or no source-sink path), 3 verification failure.

mod dot;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flowgame::budget::{budget_analysis, solve_min_max_partition};
use flowgame::equilibria::{
    default_equilibrium, equilibrium_quantities, partition_equilibrium, scaled_equilibrium, EquilibriumProfile,
    Partition,
};
use flowgame::flowopt::{analyze, AnalysisOptions, FlowAnalysis, DEFAULT_PATH_LIMIT};
use flowgame::io;
use flowgame::mcsim::monte_carlo;
use flowgame::netmodel::{
    attack_cost, edge_flows, transport_cost, GameParams, MixedAttackStrategy, MixedFlowStrategy, MixedStrategy, Network,
};
use flowgame::verify::{verify_equilibrium, VerifyOptions};
use flowgame::{Error, Rational};
use serde_json::{json, Value};

const PATH_LIMIT_VAR: &str = "FLOWGAME_PATH_LIMIT";

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Game(String),
    #[error("not an equilibrium: gap1 = {gap1}, gap2 = {gap2}")]
    NotEquilibrium { gap1: String, gap2: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Game(_) => 2,
            CliError::NotEquilibrium { .. } => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoPathSourceToSink
            | Error::WrongRegion(_)
            | Error::BoundaryParameters(_)
            | Error::AssumptionViolated(_)
            | Error::BudgetOutOfRange { .. } => CliError::Game(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "flowgame", version, about = "Exact solver and verifier for the network flow attack-defense game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GameArgs {
    /// Network JSON file.
    network: PathBuf,
    /// Defender's value per unit of delivered flow (integer, decimal or a/b).
    #[arg(long)]
    p1: Rational,
    /// Attacker's value per unit of lost flow.
    #[arg(long)]
    p2: Rational,
}

#[derive(Args, Debug)]
#[group(multiple = true)]
struct ProfileArgs {
    /// Profile JSON with `sigma1` and `sigma2` (as written by `equilibrium`).
    #[arg(long, conflicts_with_all = ["sigma1", "sigma2"])]
    profile: Option<PathBuf>,
    /// Defender strategy JSON.
    #[arg(long, requires = "sigma2")]
    sigma1: Option<PathBuf>,
    /// Attacker strategy JSON.
    #[arg(long, requires = "sigma1")]
    sigma2: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Max-flow, min-cost max-flow, min-cuts, cheapest path cost and assumption checks.
    Analyze { network: PathBuf },
    /// Construct the equilibrium for the given parameters and self-verify it.
    Equilibrium {
        #[command(flatten)]
        game: GameArgs,
        /// Defender transport budget; builds the budget-scaled profile.
        #[arg(long, conflicts_with_all = ["partition_size", "partition"])]
        b1: Option<Rational>,
        /// Partition the canonical min-cut into this many blocks, minimizing the largest block.
        #[arg(long, conflicts_with = "partition")]
        partition_size: Option<usize>,
        /// Partition JSON: blocks of edges (`[tail, head]` pairs or indices).
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Check a strategy profile against both best-response oracles.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        strategies: ProfileArgs,
        /// Accept gaps up to this tolerance.
        #[arg(long)]
        eps: Option<Rational>,
    },
    /// Minimum defender budget, attacker budget bound and the optimal partition.
    Budget {
        #[command(flatten)]
        game: GameArgs,
        /// Also solve the partition program on every enumerable min-cut.
        #[arg(long)]
        all_cuts: bool,
    },
    /// Monte-Carlo play of a profile (the constructed equilibrium by default).
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        strategies: ProfileArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz drawing with capacity,cost labels.
    ExportDot {
        network: PathBuf,
        /// Flow action or flow strategy JSON; expected edge flows are drawn bold.
        #[arg(long, conflicts_with = "min_cost_flow")]
        flow: Option<PathBuf>,
        /// Draw the min-cost max-flow.
        #[arg(long)]
        min_cost_flow: bool,
        /// Draw the canonical min-cut dashed.
        #[arg(long)]
        cut: bool,
        /// Attack strategy JSON; edges in its support are drawn red.
        #[arg(long)]
        attack: Option<PathBuf>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_network(path: &Path) -> CliResult<Network> {
    Ok(Network::from_json(&read(path)?)?)
}

fn path_limit() -> CliResult<usize> {
    match std::env::var(PATH_LIMIT_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{PATH_LIMIT_VAR}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_PATH_LIMIT),
    }
}

fn analysis_options() -> CliResult<AnalysisOptions> {
    Ok(AnalysisOptions { path_limit: path_limit()?, ..AnalysisOptions::default() })
}

fn verify_options(eps: Option<Rational>) -> CliResult<VerifyOptions> {
    Ok(VerifyOptions { path_limit: path_limit()?, epsilon: eps, ..VerifyOptions::default() })
}

fn params(game: &GameArgs) -> CliResult<GameParams> {
    Ok(GameParams::new(game.p1.clone(), game.p2.clone())?)
}

fn load_profile(net: &Network, args: &ProfileArgs) -> CliResult<Option<(MixedFlowStrategy, MixedAttackStrategy)>> {
    if let Some(p) = &args.profile {
        let parsed = io::parse_profile(net, &read(p)?)?;
        return Ok(Some((parsed.sigma1, parsed.sigma2)));
    }
    match (&args.sigma1, &args.sigma2) {
        (Some(a), Some(b)) => {
            Ok(Some((io::parse_flow_strategy(net, &read(a)?)?, io::parse_attack_strategy(net, &read(b)?)?)))
        }
        _ => Ok(None),
    }
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")));
}

fn cmd_analyze(network: &Path) -> CliResult<()> {
    let net = load_network(network)?;
    let a = analyze(&net, analysis_options()?);
    print(&io::analysis_json(&net, &a));
    eprintln!(
        "F^max = {}, T^min = {}, alpha = {}, min-cut capacity {} on {} edges, cheapest-path assumption {}",
        a.f_max,
        a.t_min,
        a.alpha,
        a.min_cut.capacity,
        a.min_cut.edges.len(),
        if a.cheapest_paths_only { "holds" } else { "fails" }
    );
    Ok(())
}

fn build_profile(
    net: &Network,
    a: &FlowAnalysis,
    p: &GameParams,
    b1: Option<&Rational>,
    partition_size: Option<usize>,
    partition: Option<&Path>,
) -> CliResult<EquilibriumProfile> {
    if let Some(b1) = b1 {
        return Ok(scaled_equilibrium(a, p, b1)?);
    }
    if let Some(k) = partition_size {
        let cut = &a.min_cut.edges;
        let caps: Vec<Rational> = cut.iter().map(|&e| net.edge(e).capacity.clone()).collect();
        let sol = solve_min_max_partition(&caps, k)?;
        let blocks = sol.blocks().into_iter().map(|b| b.into_iter().map(|i| cut[i]).collect()).collect();
        return Ok(partition_equilibrium(a, p, &Partition::new(a, blocks)?)?);
    }
    if let Some(file) = partition {
        let blocks = io::parse_partition_blocks(net, &read(file)?)?;
        return Ok(partition_equilibrium(a, p, &Partition::new(a, blocks)?)?);
    }
    Ok(default_equilibrium(a, p)?)
}

fn cmd_equilibrium(
    game: &GameArgs,
    b1: Option<&Rational>,
    partition_size: Option<usize>,
    partition: Option<&Path>,
) -> CliResult<()> {
    let net = load_network(&game.network)?;
    let p = params(game)?;
    let a = analyze(&net, analysis_options()?);
    let profile = build_profile(&net, &a, &p, b1, partition_size, partition)?;
    let r = verify_equilibrium(&net, &profile.sigma1, &profile.sigma2, &p, &a, &verify_options(None)?)?;
    let max_transport = profile.sigma1.iter().map(|(x, _)| transport_cost(x, &net)).max().expect("nonempty");
    let max_attack = profile.sigma2.iter().map(|(mu, _)| attack_cost(mu, &net)).max().expect("nonempty");
    let mut out = io::profile_json(&net, &profile);
    out["max_transport_cost"] = json!(max_transport);
    out["max_attack_cost"] = json!(max_attack);
    out["verification"] = json!({
        "gap1": r.gap1,
        "gap2": r.gap2,
        "is_equilibrium": r.is_equilibrium,
    });
    print(&out);
    eprintln!(
        "{:?} profile in region {}: {} defender and {} attacker actions, gaps ({}, {})",
        profile.construction,
        profile.region,
        profile.sigma1.len(),
        profile.sigma2.len(),
        r.gap1,
        r.gap2
    );
    if r.is_equilibrium {
        Ok(())
    } else {
        Err(CliError::NotEquilibrium { gap1: r.gap1.to_string(), gap2: r.gap2.to_string() })
    }
}

fn cmd_verify(game: &GameArgs, strategies: &ProfileArgs, eps: Option<Rational>) -> CliResult<()> {
    let net = load_network(&game.network)?;
    let p = params(game)?;
    let (s1, s2) = load_profile(&net, strategies)?
        .ok_or_else(|| CliError::Input("give --profile or both --sigma1 and --sigma2".into()))?;
    let a = analyze(&net, analysis_options()?);
    let r = verify_equilibrium(&net, &s1, &s2, &p, &a, &verify_options(eps)?)?;
    print(&io::report_json(&net, &r));
    eprintln!("u1 = {}, u2 = {}, gap1 = {}, gap2 = {}", r.u1, r.u2, r.gap1, r.gap2);
    if r.is_equilibrium {
        Ok(())
    } else {
        Err(CliError::NotEquilibrium { gap1: r.gap1.to_string(), gap2: r.gap2.to_string() })
    }
}

fn cmd_budget(game: &GameArgs, all_cuts: bool) -> CliResult<()> {
    let net = load_network(&game.network)?;
    let p = params(game)?;
    let a = analyze(&net, analysis_options()?);
    let b = budget_analysis(&net, &a, &p, all_cuts)?;
    print(&io::budget_json(&net, &b));
    eprintln!("b1* = {}, b2 >= {}, n* = {}, z* = {}", b.b1_star, b.b2_lower, b.n_star, b.z_star);
    Ok(())
}

fn cmd_simulate(game: &GameArgs, strategies: &ProfileArgs, trials: u64, seed: u64) -> CliResult<()> {
    let net = load_network(&game.network)?;
    let p = params(game)?;
    let a = analyze(&net, analysis_options()?);
    let (s1, s2) = match load_profile(&net, strategies)? {
        Some(s) => s,
        None => {
            let e = default_equilibrium(&a, &p)?;
            (e.sigma1, e.sigma2)
        }
    };
    // closed-form targets hold for every region III equilibrium
    let targets = if a.cheapest_paths_only { equilibrium_quantities(&a, &p).ok() } else { None };
    let r = monte_carlo(&net, &s1, &s2, &p, trials, seed, targets.as_ref())?;
    print(&serde_json::to_value(&r).expect("sim results serialize"));
    let worst = r
        .quantities
        .iter()
        .filter_map(|q| q.z_score)
        .map(f64::abs)
        .fold(None, |m: Option<f64>, z| Some(m.map_or(z, |m| m.max(z))));
    match worst {
        Some(z) => eprintln!("{trials} trials, largest |z| = {z:.3}"),
        None => eprintln!("{trials} trials"),
    }
    Ok(())
}

fn load_flow_overlay(net: &Network, path: &Path) -> CliResult<Vec<Rational>> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    let strategy = if value.get("atoms").is_some() {
        io::parse_flow_strategy(net, &text)?
    } else {
        let paths: Vec<io::PathSpec> = serde_json::from_value(value["paths"].clone()).map_err(Error::from)?;
        MixedStrategy::pure(io::flow_action_from_spec(net, &paths)?)
    };
    let mut total = vec![Rational::zero(); net.edge_count()];
    for (x, prob) in strategy.iter() {
        for (t, f) in total.iter_mut().zip(edge_flows(x, net)) {
            *t += f * prob;
        }
    }
    Ok(total)
}

fn cmd_export_dot(
    network: &Path,
    flow: Option<&Path>,
    min_cost_flow: bool,
    cut: bool,
    attack: Option<&Path>,
) -> CliResult<()> {
    let net = load_network(network)?;
    let mut overlay = dot::Overlay::default();
    if min_cost_flow || cut {
        let a = analyze(&net, analysis_options()?);
        if min_cost_flow {
            overlay.flow = Some(edge_flows(&a.x_star, &net));
        }
        if cut {
            overlay.cut = a.min_cut.edges.iter().copied().collect();
        }
    }
    if let Some(f) = flow {
        overlay.flow = Some(load_flow_overlay(&net, f)?);
    }
    if let Some(f) = attack {
        let s2 = io::parse_attack_strategy(&net, &read(f)?)?;
        overlay.attacked = s2.iter().flat_map(|(mu, _)| mu.edges.iter().copied()).collect();
    }
    emit(&dot::render(&net, &overlay));
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { network } => cmd_analyze(&network),
        Command::Equilibrium { game, b1, partition_size, partition } => {
            cmd_equilibrium(&game, b1.as_ref(), partition_size, partition.as_deref())
        }
        Command::Verify { game, strategies, eps } => cmd_verify(&game, &strategies, eps),
        Command::Budget { game, all_cuts } => cmd_budget(&game, all_cuts),
        Command::Simulate { game, strategies, trials, seed } => cmd_simulate(&game, &strategies, trials, seed),
        Command::ExportDot { network, flow, min_cost_flow, cut, attack } => {
            cmd_export_dot(&network, flow.as_deref(), min_cost_flow, cut, attack.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
