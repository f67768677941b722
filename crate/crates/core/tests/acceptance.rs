//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use flowgame::budget::{
    budget_analysis, min_budget_partition_equilibrium, min_defender_budget, solve_min_max_partition,
};
use flowgame::equilibria::{
    equilibrium_quantities, min_cut_mix, partition_equilibrium, profile_quantities, region3_equilibrium,
    scaled_equilibrium, Partition,
};
use flowgame::fixtures;
use flowgame::flowopt::{analyze, enumerate_paths, AnalysisOptions, FlowAnalysis};
use flowgame::mcsim::monte_carlo;
use flowgame::netmodel::{
    attack_cost, effective_value, flow_value, is_feasible, loss, transport_cost, Attack, FlowAction, GameParams,
    MixedAttackStrategy, MixedFlowStrategy, MixedStrategy, Network, PathFlow,
};
use flowgame::verify::{check_loss_bound, verify_equilibrium, VerificationReport, VerifyOptions};
use flowgame::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn params(p1: &str, p2: &str) -> GameParams {
    GameParams::new(q(p1), q(p2)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn setup() -> (Network, FlowAnalysis) {
    let net = fixtures::three_edge_cut();
    let a = analyze(&net, AnalysisOptions::default());
    (net, a)
}

fn verify(
    net: &Network,
    a: &FlowAnalysis,
    s1: &MixedFlowStrategy,
    s2: &MixedAttackStrategy,
    p: &GameParams,
) -> VerificationReport {
    verify_equilibrium(net, s1, s2, p, a, &VerifyOptions::default()).unwrap()
}

fn zero_gaps(r: &VerificationReport) -> bool {
    r.gap1.is_zero() && r.gap2.is_zero()
}

fn edge(net: &Network, t: &str, h: &str) -> usize {
    net.resolve_edge(t, h).unwrap()
}

/// Flow analysis of the network with a unique min-cost max-flow.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let net = fixtures::unique_mcmf();
    let a = analyze(&net, AnalysisOptions::default());
    within(start, Duration::from_secs(1))?;
    let got = (a.f_max.clone(), a.t_min.clone(), a.alpha.clone(), a.cheapest_paths_only);
    ensure(got == (q("3"), q("9"), q("3"), true), || format!("(F, T, alpha, cheapest paths only) = {got:?}"))?;
    Ok(format!(
        "F^max = {}, T^min = {}, alpha = {}, cheapest paths only = {}",
        a.f_max, a.t_min, a.alpha, a.cheapest_paths_only
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (net, a) = setup();
    within(start, Duration::from_secs(1))?;
    let mut cut = vec![edge(&net, "1", "3"), edge(&net, "2", "3"), edge(&net, "2", "4")];
    cut.sort_unstable();
    ensure(a.min_cut.edges == cut, || format!("min-cut {:?}", a.min_cut.edges))?;
    ensure(a.min_cut.capacity == q("3") && a.f_max == q("3"), || "capacity or F^max differs from 3".into())?;
    let expected = FlowAction::new(
        [["s", "1", "3", "t"], ["s", "2", "3", "t"], ["s", "2", "4", "t"]]
            .iter()
            .map(|p| PathFlow::from_nodes(&net, p, q("1")).unwrap())
            .collect(),
    );
    ensure(a.x_star.same_as(&expected), || format!("x* = {:?}", a.x_star))?;
    Ok("min-cut {(1,3),(2,3),(2,4)} of capacity 3, x* = three unit paths".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (net, a) = setup();
    let p = params("6", "2");
    let profile = region3_equilibrium(&a, &p).map_err(|e| e.to_string())?;
    let r = verify(&net, &a, &profile.sigma1, &profile.sigma2, &p);
    within(start, Duration::from_secs(5))?;
    ensure(zero_gaps(&r), || format!("gaps ({}, {})", r.gap1, r.gap2))?;
    let residuals = r.quantity_residuals.as_ref().ok_or("no closed-form residuals")?;
    ensure(residuals.iter().all(|x| x.residual.is_zero()), || format!("{residuals:?}"))?;
    // closed forms with F = 3, T = 9, alpha = 3, p1 = 6, p2 = 2
    let (f, t, alpha, p1, p2) = (q("3"), q("9"), q("3"), q("6"), q("2"));
    let m = profile_quantities(&profile.sigma1, &profile.sigma2, &p, &net);
    let expect = [
        ("E[F]", m.exp_flow.clone(), &f / &p2),
        ("E[T]", m.exp_transport.clone(), &t / &p2),
        ("E[C]", m.exp_attack_cost.clone(), &f - &t / &p1),
        ("E[F_eff]", m.exp_effective.clone(), &t / (&p1 * &p2)),
        ("yield", m.yield_ratio.clone().unwrap_or_default(), &alpha / &p1),
    ];
    for (name, got, want) in &expect {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    let pinned = [q("3/2"), q("9/2"), q("3/2"), q("3/4"), q("1/2")];
    ensure(expect.iter().zip(&pinned).all(|((_, _, w), p)| w == p), || "targets differ from pinned values".into())?;
    Ok("gaps (0, 0); E[F] = 3/2, E[T] = 9/2, E[C] = 3/2, E[F_eff] = 3/4, yield = 1/2".into())
}

/// Reference attack probabilities for the three-edge cut at p1 = 5:
/// `(no attack, each block, full cut)`.
fn reference_partition_probabilities(size: usize) -> (Rational, Rational, Rational) {
    match size {
        1 => (q("3/5"), q("2/5"), q("2/5")),
        2 => (q("1/5"), q("2/5"), q("0")),
        3 => (q("0"), q("3/10"), q("1/10")),
        _ => unreachable!(),
    }
}

fn criterion_4() -> Outcome {
    let (net, a) = setup();
    let p = params("5", "2");
    let partitions = Partition::all_of(&a, &a.min_cut.edges).map_err(|e| e.to_string())?;
    ensure(partitions.len() == 5, || format!("{} partitions", partitions.len()))?;
    let full = Attack { edges: a.min_cut.edges.iter().copied().collect() };
    for part in &partitions {
        let profile = partition_equilibrium(&a, &p, part).map_err(|e| e.to_string())?;
        let r = verify(&net, &a, &profile.sigma1, &profile.sigma2, &p);
        ensure(zero_gaps(&r), || format!("partition {:?}: gaps ({}, {})", part.blocks(), r.gap1, r.gap2))?;
        let (none, each, whole) = reference_partition_probabilities(part.size());
        let s2 = &profile.sigma2;
        ensure(s2.mass_where(Attack::is_none) == none, || format!("{:?}: no-attack mass", part.blocks()))?;
        for block in part.block_attacks() {
            let mass = s2.mass_where(|mu| *mu == block);
            let want = if block == full { &whole } else { &each };
            ensure(&mass == want, || format!("{:?}: block {:?} has {mass}, expected {want}", part.blocks(), block))?;
        }
        if part.size() > 1 {
            ensure(s2.mass_where(|mu| *mu == full) == whole, || format!("{:?}: full-cut mass", part.blocks()))?;
        }
    }
    Ok("5 partitions verified with zero gaps; size 3 gives 3/10, 3/10, 3/10, 1/10".into())
}

fn criterion_5() -> Outcome {
    let (net, a) = setup();
    let p = params("5", "2");
    let b = budget_analysis(&net, &a, &p, true).map_err(|e| e.to_string())?;
    let got = (b.n_star, b.z_star.clone(), b.b2_lower.clone());
    ensure(got == (2, q("2"), q("6/5")), || format!("(n*, z*, b2_lower) = {got:?}"))?;
    let (profile, z, _) = min_budget_partition_equilibrium(&net, &a, &p).map_err(|e| e.to_string())?;
    ensure(z == q("2"), || format!("largest attack cost {z}"))?;
    let r = verify(&net, &a, &profile.sigma1, &profile.sigma2, &p);
    ensure(zero_gaps(&r), || format!("gaps ({}, {})", r.gap1, r.gap2))?;
    Ok("n* = 2, z* = 2, b2_lower = 6/5; budget-2 profile has zero gaps".into())
}

fn criterion_6() -> Outcome {
    let (net, a) = setup();
    let p = params("6", "2");
    let b1 = q("9/2");
    let profile = scaled_equilibrium(&a, &p, &b1).map_err(|e| e.to_string())?;
    let r = verify(&net, &a, &profile.sigma1, &profile.sigma2, &p);
    ensure(zero_gaps(&r), || format!("gaps ({}, {})", r.gap1, r.gap2))?;
    let max_t = profile.sigma1.iter().map(|(x, _)| transport_cost(x, &net)).max().unwrap();
    let b1_star = min_defender_budget(&a, &p).map_err(|e| e.to_string())?;
    ensure(max_t == b1 && b1_star == b1, || format!("max transport {max_t}, b1* {b1_star}"))?;
    Ok("zero gaps; max support transport cost 9/2 = b1*".into())
}

fn criterion_7() -> Outcome {
    let net = fixtures::cheap_bridge();
    let a = analyze(&net, AnalysisOptions::default());
    let p = params("6", "6");
    ensure(!a.cheapest_paths_only, || "cheapest-path assumption unexpectedly holds".into())?;
    match region3_equilibrium(&a, &p) {
        Err(Error::AssumptionViolated(_)) => {}
        other => return Err(format!("construction not rejected: {other:?}")),
    }
    let forced = min_cut_mix(&a, &p).map_err(|e| e.to_string())?;
    let r = verify(&net, &a, &forced.sigma1, &forced.sigma2, &p);
    ensure(r.gap1.is_positive() || r.gap2.is_positive(), || "forced profile has zero gaps".into())?;
    let forced_gaps = format!("({}, {})", r.gap1, r.gap2);

    let net = fixtures::off_cut_attack();
    let a = analyze(&net, AnalysisOptions::default());
    let p = params("7/2", "2");
    let s1 = min_cut_mix(&a, &p).map_err(|e| e.to_string())?.sigma1;
    let off_cut = Attack::from_pairs(&net, &[("s", "2"), ("s", "3")]).map_err(|e| e.to_string())?;
    ensure(!a.min_cut.edges.iter().any(|&e| off_cut.contains(e)), || "attack overlaps the min-cut".into())?;
    let s2 = MixedStrategy::new(vec![(Attack::none(), q("6/7")), (off_cut, q("1/7"))]).unwrap();
    let r = verify(&net, &a, &s1, &s2, &p);
    ensure(zero_gaps(&r), || format!("off-cut profile gaps ({}, {})", r.gap1, r.gap2))?;
    Ok(format!("rejected without the assumption, forced gaps {forced_gaps}; off-cut profile has zero gaps"))
}

/// Random path flow from integer weights, scaled into capacity.
fn sample_flow(net: &Network, paths: &[Vec<usize>], rng: &mut ChaCha8Rng) -> FlowAction {
    let raw = FlowAction::new(
        paths
            .iter()
            .filter_map(|p| {
                let w: i64 = rng.gen_range(0..3);
                (w > 0).then(|| PathFlow { edges: p.clone(), amount: Rational::from_integer(w) })
            })
            .collect(),
    );
    let mut load = vec![Rational::zero(); net.edge_count()];
    for p in &raw.paths {
        for &e in &p.edges {
            load[e] += &p.amount;
        }
    }
    let scale = load.iter().zip(net.edges()).filter(|(l, _)| l.is_positive()).map(|(l, e)| &e.capacity / l).min();
    match scale {
        Some(s) => raw.scaled(&(s * Rational::new(rng.gen_range(1..=3), 3))),
        None => FlowAction::none(),
    }
}

/// Smallest largest-block sum for each block count, by visiting every set
/// partition (restricted growth strings).
fn partition_optima(items: &[i64]) -> Vec<i64> {
    let n = items.len();
    let mut best = vec![i64::MAX; n + 1];
    let mut labels = vec![0usize; n];
    loop {
        let k = labels.iter().max().unwrap() + 1;
        let mut sums = vec![0i64; k];
        for (i, &l) in labels.iter().enumerate() {
            sums[l] += items[i];
        }
        let z = *sums.iter().max().unwrap();
        best[k] = best[k].min(z);
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return best;
            }
            let cap = labels[..i].iter().max().unwrap() + 1;
            if labels[i] < cap {
                labels[i] += 1;
                labels[i + 1..].iter_mut().for_each(|l| *l = 0);
                break;
            }
            i -= 1;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let nets = [
        fixtures::bridge(),
        fixtures::unique_mcmf(),
        fixtures::three_edge_cut(),
        fixtures::off_cut_attack(),
        fixtures::cheap_bridge(),
        fixtures::per_edge_alpha(),
    ];
    for net in &nets {
        let paths: Vec<Vec<usize>> = enumerate_paths(net, 10_000).unwrap().into_iter().map(|p| p.edges).collect();
        for _ in 0..1000 {
            let x = sample_flow(net, &paths, &mut rng);
            let mu = Attack { edges: (0..net.edge_count()).filter(|_| rng.gen_bool(0.5)).collect() };
            ensure(is_feasible(&x, net), || format!("{}: sampled flow infeasible", net.name()))?;
            let l = loss(&x, &mu);
            ensure(l <= attack_cost(&mu, net), || format!("{}: loss {l} exceeds cost", net.name()))?;
            let eff = effective_value(&x, &mu);
            ensure(!eff.is_negative() && eff <= flow_value(&x), || format!("{}: effective flow {eff}", net.name()))?;
        }
        let a = analyze(net, AnalysisOptions::default());
        let report = check_loss_bound(net, &a, 1000, 8).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}: {report:?}", net.name()))?;
    }
    for case in 0..1000 {
        let len = rng.gen_range(1..=8);
        let items: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
        let oracle = partition_optima(&items);
        let caps: Vec<Rational> = items.iter().map(|&c| Rational::from_integer(c)).collect();
        let mut previous: Option<Rational> = None;
        for (n, &want) in oracle.iter().enumerate().skip(1) {
            let z = solve_min_max_partition(&caps, n).map_err(|e| e.to_string())?.z_star;
            ensure(z == Rational::from_integer(want), || format!("case {case} {items:?}, n = {n}: {z} vs {want}"))?;
            ensure(previous.as_ref().is_none_or(|p| &z <= p), || {
                format!("case {case} {items:?}: increases at n = {n}")
            })?;
            previous = Some(z);
        }
    }
    Ok("loss <= cost and 0 <= F_eff <= F on 1000 pairs x 6 networks; partition program matches 1000 sampled lists; monotone in n".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let (net, a) = setup();
    let p = params("6", "2");
    let profile = region3_equilibrium(&a, &p).map_err(|e| e.to_string())?;
    let targets = equilibrium_quantities(&a, &p).map_err(|e| e.to_string())?;
    let run = || monte_carlo(&net, &profile.sigma1, &profile.sigma2, &p, 100_000, 1, Some(&targets)).unwrap();
    let first = run();
    within(start, Duration::from_secs(10))?;
    let second = run();
    ensure(first == second, || "rerun differs".into())?;
    for quantity in &first.quantities {
        ensure(quantity.within(3.0) == Some(true), || {
            format!("{} mean {} vs {:?}, se {}", quantity.name, quantity.mean, quantity.target, quantity.std_error)
        })?;
    }
    let worst = first.quantities.iter().filter_map(|x| x.z_score).fold(0.0f64, |m, z| m.max(z.abs()));
    Ok(format!(
        "10^5 trials, seed 1: all 7 quantities within 3 standard errors (max |z| = {worst:.2}); rerun identical"
    ))
}

fn criterion_10() -> Outcome {
    let (net, a) = setup();
    let p = params("5", "2");
    let s1 = region3_equilibrium(&a, &p).map_err(|e| e.to_string())?.sigma1;
    let partitions = Partition::all_of(&a, &a.min_cut.edges).map_err(|e| e.to_string())?;
    for part in &partitions {
        let s2 = partition_equilibrium(&a, &p, part).map_err(|e| e.to_string())?.sigma2;
        let r = verify(&net, &a, &s1, &s2, &p);
        ensure(zero_gaps(&r), || format!("partition {:?}: gaps ({}, {})", part.blocks(), r.gap1, r.gap2))?;
    }
    Ok(format!("defender mix against all {} partition attacks: zero gaps", partitions.len()))
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS ({took:.2}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL ({took:.2}s) {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
