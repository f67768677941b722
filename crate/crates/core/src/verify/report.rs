use serde::Serialize;

use crate::equilibria::{
    check_probability_bounds, classify_region, cut_edge_statistics, equilibrium_quantities, profile_quantities,
    BoundCheck, CutEdgeStat, Region,
};
use crate::error::Result;
use crate::flowopt::{enumerate_paths, FlowAnalysis, DEFAULT_PATH_LIMIT};
use crate::netmodel::{
    attack_cost, edge_flows, expected_payoffs, path_cost, Attack, EdgeId, FlowAction, GameParams, MixedAttackStrategy,
    MixedFlowStrategy, Network,
};
use crate::rational::Rational;
use crate::verify::checks::{zero_sum_value_check, ZeroSumCheck};
use crate::verify::oracle::{best_response_attack, best_response_flow_over, DEFAULT_EDGE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl NamedCheck {
    pub(crate) fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        NamedCheck { name: name.to_string(), status, detail: detail.into() }
    }

    pub(crate) fn pass_if(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        NamedCheck::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail)
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantityResidual {
    pub name: &'static str,
    pub measured: Rational,
    pub target: Rational,
    pub residual: Rational,
}

/// Per-cut edge statistics with the two equilibrium identities: expected
/// flow `c/p2` on every cut edge, and disruption probability `1 - alpha/p1`
/// when every attack stays inside the cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutReport {
    pub cut_edges: Vec<EdgeId>,
    pub edges: Vec<CutEdgeStat>,
    pub expected_flow_check: NamedCheck,
    pub disruption_check: NamedCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub u1: Rational,
    pub u2: Rational,
    pub br1_value: Rational,
    #[serde(skip)]
    pub br1_witness: FlowAction,
    pub br2_value: Rational,
    #[serde(skip)]
    pub br2_witness: Attack,
    pub gap1: Rational,
    pub gap2: Rational,
    pub epsilon: Option<Rational>,
    pub is_equilibrium: bool,
    pub region: Region,
    /// Measured minus closed-form quantities; present only for certified
    /// equilibria in region III of networks meeting the cheapest-path
    /// assumption.
    pub quantity_residuals: Option<Vec<QuantityResidual>>,
    pub zero_sum: Option<ZeroSumCheck>,
    pub probability_bounds: Vec<BoundCheck>,
    pub support_checks: Vec<NamedCheck>,
    pub cuts: Vec<CutReport>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Every reported residual is zero and no check failed.
    pub fn all_checks_pass(&self) -> bool {
        self.quantity_residuals.iter().flatten().all(|r| r.residual.is_zero())
            && self.zero_sum.as_ref().is_none_or(|z| z.residual.is_zero())
            && self.probability_bounds.iter().all(|b| b.holds)
            && self.support_checks.iter().all(NamedCheck::passed)
            && self.cuts.iter().all(|c| c.expected_flow_check.passed() && c.disruption_check.passed())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub path_limit: usize,
    pub edge_limit: usize,
    /// Gap tolerance; `None` demands exact zero gaps.
    pub epsilon: Option<Rational>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { path_limit: DEFAULT_PATH_LIMIT, edge_limit: DEFAULT_EDGE_LIMIT, epsilon: None }
    }
}

/// Certifies `(sigma1, sigma2)` with both best-response oracles, then, for a
/// certified region III equilibrium, checks the closed-form quantities and
/// the necessary conditions on supports.
pub fn verify_equilibrium(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    analysis: &FlowAnalysis,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let paths = match &analysis.paths {
        Some(p) if options.path_limit >= p.len() => p.clone(),
        _ => enumerate_paths(net, options.path_limit)?,
    };
    let (u1, u2) = expected_payoffs(sigma1, sigma2, params, net);
    let (br1_value, br1_witness) = best_response_flow_over(net, &paths, sigma2, params);
    let (br2_value, br2_witness) = best_response_attack(net, sigma1, params, options.edge_limit)?;
    // The oracles are exact maxima, so both gaps are nonnegative.
    let gap1 = &br1_value - &u1;
    let gap2 = &br2_value - &u2;
    let within = |g: &Rational| match &options.epsilon {
        Some(eps) => g <= eps,
        None => g.is_zero(),
    };
    let is_equilibrium = within(&gap1) && within(&gap2);
    let region = classify_region(params, &analysis.alpha, None);
    let mut notes = Vec::new();

    let closed_form_applies = is_equilibrium && region == Region::III && analysis.cheapest_paths_only;
    let (quantity_residuals, zero_sum, probability_bounds) = if closed_form_applies {
        let target = equilibrium_quantities(analysis, params)?;
        let measured = profile_quantities(sigma1, sigma2, params, net);
        let residuals = measured
            .named()
            .into_iter()
            .zip(target.named())
            .map(|((name, m), (_, t))| QuantityResidual { name, residual: &m - &t, measured: m, target: t })
            .collect();
        (
            Some(residuals),
            Some(zero_sum_value_check(net, sigma1, sigma2, analysis, params)?),
            check_probability_bounds(sigma1, sigma2, analysis, params),
        )
    } else {
        notes.push(if !is_equilibrium {
            "not an equilibrium: closed-form residuals skipped".to_string()
        } else if region != Region::III {
            format!("closed-form residuals apply to region III only (region {region})")
        } else {
            "closed-form residuals need the cheapest-path assumption".to_string()
        });
        (None, None, Vec::new())
    };

    let support_checks = check_support_conditions(net, sigma1, sigma2, analysis);
    notes.push(
        "saturation of attacked edges is checked against the computed min-cost max-flow only, \
         not every min-cost max-flow"
            .into(),
    );
    let cuts = analysis
        .known_min_cuts()
        .iter()
        .map(|cut| {
            let edges = cut_edge_statistics(sigma1, sigma2, cut, net);
            let (expected_flow_check, disruption_check) = if closed_form_applies {
                let flow_ok = edges.iter().all(|s| s.expected_flow == &s.capacity / &params.p2);
                let inside = sigma2.iter().all(|(mu, _)| mu.edges.iter().all(|&e| cut.contains(e)));
                let target = Rational::one() - &analysis.alpha / &params.p1;
                let disruption = if inside {
                    NamedCheck::pass_if(
                        "cut_disruption_probability",
                        edges.iter().all(|s| s.disruption_probability == target),
                        format!("each cut edge disrupted with probability {target}"),
                    )
                } else {
                    NamedCheck::new(
                        "cut_disruption_probability",
                        CheckStatus::NotApplicable,
                        "some attack in the support leaves this cut",
                    )
                };
                (
                    NamedCheck::pass_if("cut_expected_flow", flow_ok, "expected flow = capacity / p2 on each cut edge"),
                    disruption,
                )
            } else {
                let na = |n: &str| NamedCheck::new(n, CheckStatus::NotApplicable, "not a region III equilibrium");
                (na("cut_expected_flow"), na("cut_disruption_probability"))
            };
            CutReport { cut_edges: cut.edges.clone(), edges, expected_flow_check, disruption_check }
        })
        .collect();

    Ok(VerificationReport {
        u1,
        u2,
        br1_value,
        br1_witness,
        br2_value,
        br2_witness,
        gap1,
        gap2,
        epsilon: options.epsilon.clone(),
        is_equilibrium,
        region,
        quantity_residuals,
        zero_sum,
        probability_bounds,
        support_checks,
        cuts,
        notes,
    })
}

/// Necessary conditions on the supports of any equilibrium:
/// flows use only cheapest paths (under the cheapest-path assumption), no
/// attack costs more than a min-cut, attacked edges are saturated by the
/// min-cost max-flow, and every min-cut edge carries flow in some atom.
pub fn check_support_conditions(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    analysis: &FlowAnalysis,
) -> Vec<NamedCheck> {
    let mut out = Vec::new();

    out.push(if !analysis.cheapest_paths_only {
        NamedCheck::new("cheapest_paths_only", CheckStatus::NotApplicable, "cheapest-path assumption fails")
    } else {
        let bad = sigma1.iter().enumerate().find_map(|(i, (x, _))| {
            x.paths
                .iter()
                .find(|p| p.amount.is_positive() && path_cost(&p.edges, net) != analysis.alpha)
                .map(|p| (i, p))
        });
        match bad {
            Some((i, p)) => NamedCheck::new(
                "cheapest_paths_only",
                CheckStatus::Fail,
                format!(
                    "flow atom {i} uses path {} of cost {} > alpha = {}",
                    p.node_names(net).join("->"),
                    path_cost(&p.edges, net),
                    analysis.alpha
                ),
            ),
            None => NamedCheck::new(
                "cheapest_paths_only",
                CheckStatus::Pass,
                format!("every path costs {}", analysis.alpha),
            ),
        }
    });

    let costly = sigma2.iter().enumerate().find(|(_, (mu, _))| attack_cost(mu, net) > analysis.f_max);
    out.push(match costly {
        Some((i, (mu, _))) => NamedCheck::new(
            "attack_cost_within_min_cut",
            CheckStatus::Fail,
            format!("attack atom {i} costs {} > {}", attack_cost(mu, net), analysis.f_max),
        ),
        None => NamedCheck::new(
            "attack_cost_within_min_cut",
            CheckStatus::Pass,
            format!("every attack costs <= {}", analysis.f_max),
        ),
    });

    let flows = edge_flows(&analysis.x_star, net);
    let unsaturated = sigma2
        .iter()
        .enumerate()
        .find_map(|(i, (mu, _))| mu.edges.iter().find(|&&e| flows[e] != net.edge(e).capacity).map(|&e| (i, e)));
    out.push(match unsaturated {
        Some((i, e)) => NamedCheck::new(
            "attacks_on_saturated_edges",
            CheckStatus::Fail,
            format!("attack atom {i} disrupts {}, not saturated by the min-cost max-flow", net.edge_label(e)),
        ),
        None => NamedCheck::new(
            "attacks_on_saturated_edges",
            CheckStatus::Pass,
            "approximate: checked against the computed min-cost max-flow only",
        ),
    });

    let atom_flows: Vec<Vec<Rational>> = sigma1.iter().map(|(x, _)| edge_flows(x, net)).collect();
    let unused = analysis
        .known_min_cuts()
        .iter()
        .flat_map(|c| c.edges.clone())
        .find(|&e| atom_flows.iter().all(|f| !f[e].is_positive()));
    out.push(match unused {
        Some(e) => NamedCheck::new(
            "min_cut_edges_carry_flow",
            CheckStatus::Fail,
            format!("no flow atom uses min-cut edge {}", net.edge_label(e)),
        ),
        None => NamedCheck::new(
            "min_cut_edges_carry_flow",
            CheckStatus::Pass,
            "every min-cut edge carries flow in some atom",
        ),
    });
    out
}
