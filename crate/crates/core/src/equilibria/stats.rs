use serde::Serialize;

use crate::equilibria::region::require_region_three;
use crate::error::Result;
use crate::flowopt::{CutSet, FlowAnalysis};
use crate::netmodel::{
    attack_cost, edge_flows, effective_value, expected_payoffs, flow_value, loss, transport_cost, Attack, EdgeId,
    GameParams, MixedAttackStrategy, MixedFlowStrategy, Network,
};
use crate::rational::Rational;

/// Expected payoffs and flow quantities of a profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquilibriumQuantities {
    pub u1: Rational,
    pub u2: Rational,
    pub exp_flow: Rational,
    pub exp_transport: Rational,
    pub exp_attack_cost: Rational,
    pub exp_effective: Rational,
    pub exp_loss: Rational,
    /// Expected effective flow over expected flow; `None` when no flow is
    /// ever sent.
    pub yield_ratio: Option<Rational>,
}

impl EquilibriumQuantities {
    /// `(name, value)` pairs in a fixed order; an undefined yield is omitted.
    pub fn named(&self) -> Vec<(&'static str, Rational)> {
        let mut v = vec![
            ("u1", self.u1.clone()),
            ("u2", self.u2.clone()),
            ("exp_flow", self.exp_flow.clone()),
            ("exp_transport", self.exp_transport.clone()),
            ("exp_attack_cost", self.exp_attack_cost.clone()),
            ("exp_effective", self.exp_effective.clone()),
            ("exp_loss", self.exp_loss.clone()),
        ];
        if let Some(y) = &self.yield_ratio {
            v.push(("yield", y.clone()));
        }
        v
    }
}

/// Closed-form values shared by every region III equilibrium:
/// `E[F] = F^max/p2`, `E[T] = T^min/p2`, `E[C] = F^max - T^min/p1`,
/// `E[F_eff] = T^min/(p1 p2)`, `E[loss] = (F^max - T^min/p1)/p2`,
/// yield `= alpha/p1`, payoffs 0.
pub fn equilibrium_quantities(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumQuantities> {
    require_region_three(params, &analysis.alpha)?;
    let GameParams { p1, p2 } = params;
    let (f, t) = (&analysis.f_max, &analysis.t_min);
    let exp_attack_cost = f - t / p1;
    Ok(EquilibriumQuantities {
        u1: Rational::zero(),
        u2: Rational::zero(),
        exp_flow: f / p2,
        exp_transport: t / p2,
        exp_loss: &exp_attack_cost / p2,
        exp_attack_cost,
        exp_effective: t / (p1 * p2),
        yield_ratio: Some(&analysis.alpha / p1),
    })
}

/// The same quantities evaluated directly from a strategy pair.
pub fn profile_quantities(
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    net: &Network,
) -> EquilibriumQuantities {
    let (u1, u2) = expected_payoffs(sigma1, sigma2, params, net);
    let exp_flow = sigma1.expect(flow_value);
    let exp_effective = sigma1.expect(|x| sigma2.expect(|mu| effective_value(x, mu)));
    let yield_ratio = exp_flow.is_positive().then(|| &exp_effective / &exp_flow);
    EquilibriumQuantities {
        u1,
        u2,
        exp_transport: sigma1.expect(|x| transport_cost(x, net)),
        exp_attack_cost: sigma2.expect(|mu| attack_cost(mu, net)),
        exp_loss: sigma1.expect(|x| sigma2.expect(|mu| loss(x, mu))),
        exp_flow,
        exp_effective,
        yield_ratio,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutEdgeStat {
    pub edge: EdgeId,
    pub capacity: Rational,
    pub expected_flow: Rational,
    pub disruption_probability: Rational,
}

/// Expected flow through and disruption probability of each cut edge.
pub fn cut_edge_statistics(
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    cut: &CutSet,
    net: &Network,
) -> Vec<CutEdgeStat> {
    let flows: Vec<Vec<Rational>> = sigma1.iter().map(|(x, _)| edge_flows(x, net)).collect();
    cut.edges
        .iter()
        .map(|&e| CutEdgeStat {
            edge: e,
            capacity: net.edge(e).capacity.clone(),
            expected_flow: sigma1.iter().zip(&flows).map(|((_, p), f)| p * &f[e]).sum(),
            disruption_probability: sigma2.mass_where(|mu| mu.contains(e)),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Probability of the atom, zero when absent from the support.
    pub probability: Rational,
    pub bound: Rational,
    pub holds: bool,
    pub tight: bool,
}

/// Upper bounds on the probability of the four reference actions in any
/// region III equilibrium: no flow `<= 1 - 1/p2`, min-cost max-flow
/// `<= 1/p2`, full min-cut attack `<= 1 - alpha/p1`, no attack `<= alpha/p1`.
/// Atoms are matched by exact action equality.
pub fn check_probability_bounds(
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    analysis: &FlowAnalysis,
    params: &GameParams,
) -> Vec<BoundCheck> {
    let one = Rational::one();
    let keep = &analysis.alpha / &params.p1;
    let send = params.p2.recip();
    let cut = Attack { edges: analysis.min_cut.edges.iter().copied().collect() };
    let entries = [
        ("no_flow", sigma1.mass_where(|x| x.is_none()), &one - &send),
        ("min_cost_flow", sigma1.mass_where(|x| x.same_as(&analysis.x_star)), send.clone()),
        ("min_cut_attack", sigma2.mass_where(|mu| *mu == cut), &one - &keep),
        ("no_attack", sigma2.mass_where(|mu| mu.is_none()), keep.clone()),
    ];
    entries
        .into_iter()
        .map(|(name, probability, bound)| BoundCheck {
            name,
            holds: probability <= bound,
            tight: probability == bound,
            probability,
            bound,
        })
        .collect()
}
