use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equilibria::require_region_three;
use crate::error::Result;
use crate::flowopt::{enumerate_paths, FlowAnalysis, PathInfo, DEFAULT_PATH_LIMIT};
use crate::netmodel::{
    attack_cost, edge_flows, effective_value, expected_zero_sum_payoff, flow_value, is_feasible, loss, Attack,
    FlowAction, GameParams, MixedAttackStrategy, MixedFlowStrategy, Network, PathFlow,
};
use crate::rational::Rational;
use crate::verify::oracle::{
    best_response_attack, best_response_flow_over, expected_flow, max_expected_loss, u1_against,
};
use crate::verify::report::NamedCheck;

/// Largest cut whose every sub-attack is checked for the equality case.
const EQUALITY_CUT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LossBoundReport {
    pub trials: usize,
    pub seed: u64,
    /// Random pairs with `loss > C(mu)`.
    pub violations: usize,
    /// Random pairs breaking `0 <= F(x^mu) <= F(x)` or feasibility.
    pub sanity_violations: usize,
    /// Sub-attacks of min-cuts checked against the min-cost max-flow.
    pub equality_cases: usize,
    /// Of those, how many had `loss != C(mu)`.
    pub equality_violations: usize,
}

impl LossBoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.sanity_violations == 0 && self.equality_violations == 0
    }
}

/// Random feasible path flow: integer weights on random paths scaled to the
/// tightest capacity, then by a random fraction in `{1/4, ..., 1}`.
pub(crate) fn random_flow(net: &Network, paths: &[PathInfo], rng: &mut impl Rng) -> FlowAction {
    let weights: Vec<i64> = paths.iter().map(|_| rng.gen_range(0..4)).collect();
    let raw = FlowAction::new(
        paths
            .iter()
            .zip(&weights)
            .filter(|(_, &w)| w > 0)
            .map(|(p, &w)| PathFlow { edges: p.edges.clone(), amount: Rational::from_integer(w) })
            .collect(),
    );
    let load = edge_flows(&raw, net);
    let Some(scale) = load.iter().zip(net.edges()).filter(|(l, _)| l.is_positive()).map(|(l, e)| &e.capacity / l).min()
    else {
        return FlowAction::none();
    };
    raw.scaled(&(scale * Rational::new(rng.gen_range(1..=4), 4)))
}

pub(crate) fn random_attack(net: &Network, rng: &mut impl Rng) -> Attack {
    Attack { edges: (0..net.edge_count()).filter(|_| rng.gen_bool(0.5)).collect() }
}

/// Loss never exceeds attack cost: checked on `trials` random feasible flows
/// and attacks, plus the equality case for the min-cost max-flow against every
/// sub-attack of every known min-cut.
pub fn check_loss_bound(net: &Network, analysis: &FlowAnalysis, trials: usize, seed: u64) -> Result<LossBoundReport> {
    let paths = match &analysis.paths {
        Some(p) => p.clone(),
        None => enumerate_paths(net, DEFAULT_PATH_LIMIT)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut sanity_violations = 0;
    for _ in 0..trials {
        let x = random_flow(net, &paths, &mut rng);
        let mu = random_attack(net, &mut rng);
        if loss(&x, &mu) > attack_cost(&mu, net) {
            violations += 1;
        }
        let eff = effective_value(&x, &mu);
        if eff.is_negative() || eff > flow_value(&x) || !is_feasible(&x, net) {
            sanity_violations += 1;
        }
    }
    let mut equality_cases = 0;
    let mut equality_violations = 0;
    for cut in analysis.known_min_cuts() {
        if cut.edges.len() > EQUALITY_CUT_LIMIT {
            continue;
        }
        for mask in 1u32..1 << cut.edges.len() {
            let mu =
                Attack { edges: (0..cut.edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| cut.edges[i]).collect() };
            equality_cases += 1;
            if loss(&analysis.x_star, &mu) != attack_cost(&mu, net) {
                equality_violations += 1;
            }
        }
    }
    Ok(LossBoundReport { trials, seed, violations, sanity_violations, equality_cases, equality_violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimaxReport {
    /// `min_mu U1(sigma1, mu)`.
    pub min_u1_against_sigma1: Rational,
    /// `-E[T]` under `sigma1`.
    pub neg_exp_transport: Rational,
    /// `U1(sigma1, full min-cut attack)`.
    pub u1_at_min_cut: Rational,
    /// `max_x U1(x, sigma2)`.
    pub max_u1_against_sigma2: Rational,
    /// `max_mu U2(sigma1, mu)`.
    pub max_u2_against_sigma1: Rational,
    /// `min_x U2(x, sigma2) = -E[C]`, attained by sending nothing.
    pub min_u2_against_sigma2: Rational,
    pub checks: Vec<NamedCheck>,
}

impl MinimaxReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(NamedCheck::passed)
    }
}

/// Max-min and min-max values of both payoffs for an equilibrium candidate.
///
/// Sending nothing guarantees the defender 0 and not attacking guarantees
/// the attacker 0; against `sigma1` the worst attack (the full cut) leaves
/// the defender `-E[T]`, and neither player can gain against the other's
/// equilibrium strategy.
pub fn minimax_checks(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    analysis: &FlowAnalysis,
    params: &GameParams,
    edge_limit: usize,
) -> Result<MinimaxReport> {
    require_region_three(params, &analysis.alpha)?;
    let paths = match &analysis.paths {
        Some(p) => p.clone(),
        None => enumerate_paths(net, DEFAULT_PATH_LIMIT)?,
    };
    let exp_t = sigma1.expect(|x| crate::netmodel::transport_cost(x, net));
    let neg_exp_transport = -&exp_t;
    let worst_loss = max_expected_loss(net, sigma1, edge_limit)?;
    let min_u1_against_sigma1 = &params.p1 * (expected_flow(sigma1) - worst_loss) - &exp_t;
    let cut = Attack { edges: analysis.min_cut.edges.iter().copied().collect() };
    let u1_at_min_cut = u1_against(net, sigma1, &cut, params);
    let max_u1_against_sigma2 = best_response_flow_over(net, &paths, sigma2, params).0;
    let max_u2_against_sigma1 = best_response_attack(net, sigma1, params, edge_limit)?.0;
    let min_u2_against_sigma2 = -sigma2.expect(|mu| attack_cost(mu, net));

    let zero = Rational::zero();
    let checks = vec![
        NamedCheck::pass_if(
            "defender_worst_case_is_neg_transport",
            min_u1_against_sigma1 == neg_exp_transport && u1_at_min_cut == neg_exp_transport,
            format!("min over attacks = {min_u1_against_sigma1}, at full cut = {u1_at_min_cut}, -E[T] = {neg_exp_transport}"),
        ),
        NamedCheck::pass_if(
            "defender_maximin_zero_by_no_flow",
            min_u1_against_sigma1 <= zero,
            format!("no flow guarantees 0 >= {min_u1_against_sigma1}"),
        ),
        NamedCheck::pass_if(
            "defender_minimax_zero",
            max_u1_against_sigma2 == zero,
            format!("best defender reply to sigma2 earns {max_u1_against_sigma2}"),
        ),
        NamedCheck::pass_if(
            "attacker_maximin_zero_by_no_attack",
            min_u2_against_sigma2 <= zero,
            format!("no attack guarantees 0 >= {min_u2_against_sigma2}"),
        ),
        NamedCheck::pass_if(
            "attacker_minimax_zero",
            max_u2_against_sigma1 == zero,
            format!("best attacker reply to sigma1 earns {max_u2_against_sigma1}"),
        ),
    ];
    Ok(MinimaxReport {
        min_u1_against_sigma1,
        neg_exp_transport,
        u1_at_min_cut,
        max_u1_against_sigma2,
        max_u2_against_sigma1,
        min_u2_against_sigma2,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSumCheck {
    pub value: Rational,
    pub target: Rational,
    pub residual: Rational,
}

/// Expected zero-sum payoff against its equilibrium value
/// `(1 - alpha/p1) F^max / p2`.
pub fn zero_sum_value_check(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    analysis: &FlowAnalysis,
    params: &GameParams,
) -> Result<ZeroSumCheck> {
    require_region_three(params, &analysis.alpha)?;
    let value = expected_zero_sum_payoff(sigma1, sigma2, params, net);
    let target = (Rational::one() - &analysis.alpha / &params.p1) * &analysis.f_max / &params.p2;
    Ok(ZeroSumCheck { residual: &value - &target, value, target })
}
