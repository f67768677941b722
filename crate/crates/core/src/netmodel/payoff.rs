//! Flow quantities and the payoff functionals of the game.

use crate::error::{Error, Result};
use crate::netmodel::action::{Attack, FlowAction, PathFlow};
use crate::netmodel::network::Network;
use crate::netmodel::strategy::{MixedAttackStrategy, MixedFlowStrategy};
use crate::rational::Rational;

/// Marginal value of effective flow to the defender (`p1`) and of lost flow to
/// the attacker (`p2`). Both strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameParams {
    pub p1: Rational,
    pub p2: Rational,
}

impl GameParams {
    pub fn new(p1: Rational, p2: Rational) -> Result<Self> {
        if !p1.is_positive() || !p2.is_positive() {
            return Err(Error::InvalidParams(format!("p1 = {p1} and p2 = {p2} must both be positive")));
        }
        Ok(GameParams { p1, p2 })
    }
}

/// Edge flows induced by the path flows: each edge carries the sum of the
/// amounts of the paths through it.
pub fn edge_flows(x: &FlowAction, net: &Network) -> Vec<Rational> {
    let mut flows = vec![Rational::zero(); net.edge_count()];
    for p in &x.paths {
        for &e in &p.edges {
            flows[e] += &p.amount;
        }
    }
    flows
}

/// Capacity check only; path flows conserve flow by construction.
pub fn is_feasible(x: &FlowAction, net: &Network) -> bool {
    first_violation(x, net).is_none()
}

pub fn first_violation(x: &FlowAction, net: &Network) -> Option<usize> {
    if x.paths.iter().any(|p| p.amount.is_negative()) {
        return x.paths.iter().flat_map(|p| p.edges.first().copied()).next();
    }
    edge_flows(x, net).iter().zip(net.edges()).position(|(f, e)| f > &e.capacity)
}

/// Validates path structure and capacities.
pub fn check_feasible(x: &FlowAction, net: &Network) -> Result<()> {
    x.validate(net)?;
    match first_violation(x, net) {
        Some(e) => Err(Error::Infeasible(e)),
        None => Ok(()),
    }
}

/// Amount of flow delivered to the sink.
pub fn flow_value(x: &FlowAction) -> Rational {
    x.paths.iter().map(|p| &p.amount).sum()
}

pub fn path_cost(path: &[usize], net: &Network) -> Rational {
    path.iter().map(|&e| &net.edge(e).cost).sum()
}

/// Total transport cost, summed per path (equal to the per-edge sum).
pub fn transport_cost(x: &FlowAction, net: &Network) -> Rational {
    x.paths.iter().map(|p| &p.amount * path_cost(&p.edges, net)).sum()
}

/// Cost of an attack: total capacity of the disrupted edges.
pub fn attack_cost(mu: &Attack, net: &Network) -> Rational {
    mu.edges.iter().map(|&e| &net.edge(e).capacity).sum()
}

/// The part of `x` whose paths avoid every attacked edge. Lost flow is not
/// rerouted.
pub fn effective_flow(x: &FlowAction, mu: &Attack) -> FlowAction {
    FlowAction::new(x.paths.iter().filter(|p| mu.spares(&p.edges)).cloned().collect::<Vec<PathFlow>>())
}

pub fn effective_value(x: &FlowAction, mu: &Attack) -> Rational {
    x.paths.iter().filter(|p| mu.spares(&p.edges)).map(|p| &p.amount).sum()
}

pub fn loss(x: &FlowAction, mu: &Attack) -> Rational {
    x.paths.iter().filter(|p| !mu.spares(&p.edges)).map(|p| &p.amount).sum()
}

/// Defender payoff: value of effective flow net of transport cost.
pub fn payoff_u1(x: &FlowAction, mu: &Attack, params: &GameParams, net: &Network) -> Rational {
    &params.p1 * effective_value(x, mu) - transport_cost(x, net)
}

/// Attacker payoff: value of lost flow net of attack cost.
pub fn payoff_u2(x: &FlowAction, mu: &Attack, params: &GameParams, net: &Network) -> Rational {
    &params.p2 * loss(x, mu) - attack_cost(mu, net)
}

/// Payoff of the strategically equivalent zero-sum game:
/// `F(x^mu) - T(x)/p1 + C(mu)/p2`.
pub fn zero_sum_payoff(x: &FlowAction, mu: &Attack, params: &GameParams, net: &Network) -> Rational {
    effective_value(x, mu) - transport_cost(x, net) / &params.p1 + attack_cost(mu, net) / &params.p2
}

/// Exact expected payoffs `(U1, U2)` of a mixed profile.
pub fn expected_payoffs(
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    net: &Network,
) -> (Rational, Rational) {
    let mut u1 = Rational::zero();
    let mut u2 = Rational::zero();
    for (x, px) in sigma1.iter() {
        for (mu, pm) in sigma2.iter() {
            let w = px * pm;
            u1 += &w * payoff_u1(x, mu, params, net);
            u2 += &w * payoff_u2(x, mu, params, net);
        }
    }
    (u1, u2)
}

/// Expected zero-sum payoff of a mixed profile.
pub fn expected_zero_sum_payoff(
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    net: &Network,
) -> Rational {
    sigma1.expect(|x| sigma2.expect(|mu| zero_sum_payoff(x, mu, params, net)))
}
