use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::equilibria::region::{classify_region, require_region_three, Region};
use crate::error::{Error, Result};
use crate::flowopt::FlowAnalysis;
use crate::netmodel::{Attack, EdgeId, FlowAction, GameParams, MixedAttackStrategy, MixedFlowStrategy, MixedStrategy};
use crate::rational::Rational;

/// Which closed-form construction produced a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Pure: no flow, no attack.
    NoFlowNoAttack,
    /// Pure: min-cost max-flow, no attack.
    MinCostFlowNoAttack,
    /// No flow or the min-cost max-flow, against no attack or the full
    /// min-cut attack.
    MinCutMix,
    /// As [`Construction::MinCutMix`] with the flow scaled to a transport
    /// budget.
    ScaledMinCutMix,
    /// Partition blocks plus the no-attack action.
    PartitionNoAttack,
    /// Partition blocks plus the full min-cut attack.
    PartitionFullCut,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumProfile {
    pub sigma1: MixedFlowStrategy,
    pub sigma2: MixedAttackStrategy,
    pub construction: Construction,
    pub region: Region,
}

/// Disjoint nonempty blocks covering the edge set of a minimum cut. Each
/// block, read as an attack, disrupts exactly its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    cut_edges: Vec<EdgeId>,
    blocks: Vec<Vec<EdgeId>>,
}

impl Partition {
    /// Validates `blocks` against the min-cuts known to `analysis`.
    pub fn new(analysis: &FlowAnalysis, blocks: Vec<Vec<EdgeId>>) -> Result<Self> {
        let p = Partition::of_edges(blocks)?;
        if !analysis.is_min_cut_edge_set(&p.cut_edges) {
            return Err(Error::InvalidPartition(format!(
                "edges {:?} are not the edge set of a minimum cut",
                p.cut_edges
            )));
        }
        Ok(p)
    }

    /// Checks only disjointness and non-emptiness.
    pub(crate) fn of_edges(blocks: Vec<Vec<EdgeId>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &e in &b {
                if !seen.insert(e) {
                    return Err(Error::InvalidPartition(format!("edge {e} appears twice")));
                }
            }
            sorted.push(b);
        }
        Ok(Partition { cut_edges: seen.into_iter().collect(), blocks: sorted })
    }

    /// The one-block partition of a cut.
    pub fn whole(analysis: &FlowAnalysis, cut_edges: &[EdgeId]) -> Result<Self> {
        Partition::new(analysis, vec![cut_edges.to_vec()])
    }

    /// Every partition of `cut_edges` (a min-cut known to `analysis`), in
    /// restricted-growth order.
    pub fn all_of(analysis: &FlowAnalysis, cut_edges: &[EdgeId]) -> Result<Vec<Self>> {
        set_partitions(cut_edges.len())
            .into_iter()
            .map(|labels| {
                let n = labels.iter().max().map_or(0, |m| m + 1);
                let mut blocks = vec![Vec::new(); n];
                for (i, &k) in labels.iter().enumerate() {
                    blocks[k].push(cut_edges[i]);
                }
                Partition::new(analysis, blocks)
            })
            .collect()
    }

    pub fn cut_edges(&self) -> &[EdgeId] {
        &self.cut_edges
    }

    pub fn blocks(&self) -> &[Vec<EdgeId>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_attacks(&self) -> Vec<Attack> {
        self.blocks.iter().map(|b| Attack { edges: b.iter().copied().collect() }).collect()
    }

    pub fn full_attack(&self) -> Attack {
        Attack { edges: self.cut_edges.iter().copied().collect() }
    }
}

/// All set partitions of `0..n` as restricted-growth label vectors.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for k in 0..=max.min(i) {
            labels.push(k);
            rec(i + 1, n, if k == max { max + 1 } else { max }, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn require_assumption(analysis: &FlowAnalysis) -> Result<()> {
    if analysis.cheapest_paths_only {
        Ok(())
    } else {
        Err(Error::AssumptionViolated(format!(
            "min-cost max-flow costs {} but alpha * max-flow = {}",
            analysis.t_min,
            &analysis.alpha * &analysis.f_max
        )))
    }
}

fn min_cut_attack(analysis: &FlowAnalysis) -> Attack {
    Attack { edges: analysis.min_cut.edges.iter().copied().collect() }
}

/// The defender half shared by the region III constructions: no flow with
/// probability `1 - 1/p2`, the min-cost max-flow with probability `1/p2`.
fn defender_mix(analysis: &FlowAnalysis, params: &GameParams) -> Result<MixedFlowStrategy> {
    let send = params.p2.recip();
    MixedStrategy::from_weights(vec![(FlowAction::none(), Rational::one() - &send), (analysis.x_star.clone(), send)])
}

/// Pure no-flow, no-attack profile; requires `p1 < alpha`.
pub fn region1_equilibrium(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumProfile> {
    let region = classify_region(params, &analysis.alpha, None);
    match region {
        Region::I => Ok(EquilibriumProfile {
            sigma1: MixedStrategy::pure(FlowAction::none()),
            sigma2: MixedStrategy::pure(Attack::none()),
            construction: Construction::NoFlowNoAttack,
            region,
        }),
        Region::Boundary { reason } => Err(Error::BoundaryParameters(reason)),
        other => Err(Error::WrongRegion(format!("expected region I, got {other}"))),
    }
}

/// Pure min-cost max-flow against no attack; requires region II.
pub fn region2_equilibrium(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumProfile> {
    let region = classify_region(params, &analysis.alpha, None);
    match region {
        Region::II => {
            require_assumption(analysis)?;
            Ok(EquilibriumProfile {
                sigma1: MixedStrategy::pure(analysis.x_star.clone()),
                sigma2: MixedStrategy::pure(Attack::none()),
                construction: Construction::MinCostFlowNoAttack,
                region,
            })
        }
        Region::Boundary { reason } => Err(Error::BoundaryParameters(reason)),
        other => Err(Error::WrongRegion(format!("expected region II, got {other}"))),
    }
}

/// The region III mixed profile. Checks region and the cheapest-path
/// assumption, then defers to [`min_cut_mix`].
pub fn region3_equilibrium(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumProfile> {
    require_region_three(params, &analysis.alpha)?;
    require_assumption(analysis)?;
    min_cut_mix(analysis, params)
}

/// Builds the region III mixed profile without checking the region or the
/// cheapest-path assumption:
/// defender `{no flow: 1 - 1/p2, x*: 1/p2}`,
/// attacker `{no attack: alpha/p1, canonical min-cut: 1 - alpha/p1}`.
/// Fails only if a probability falls outside `[0, 1]`.
pub fn min_cut_mix(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumProfile> {
    let keep = &analysis.alpha / &params.p1;
    let sigma2 = MixedStrategy::from_weights(vec![
        (Attack::none(), keep.clone()),
        (min_cut_attack(analysis), Rational::one() - keep),
    ])?;
    Ok(EquilibriumProfile {
        sigma1: defender_mix(analysis, params)?,
        sigma2,
        construction: Construction::MinCutMix,
        region: classify_region(params, &analysis.alpha, None),
    })
}

/// The profile for whichever of regions I, II, III the parameters fall in.
pub fn default_equilibrium(analysis: &FlowAnalysis, params: &GameParams) -> Result<EquilibriumProfile> {
    match classify_region(params, &analysis.alpha, None) {
        Region::I => region1_equilibrium(analysis, params),
        Region::II => region2_equilibrium(analysis, params),
        Region::Boundary { reason } => Err(Error::BoundaryParameters(reason)),
        _ => region3_equilibrium(analysis, params),
    }
}

/// Partition-based profile. Below the `n alpha / (n - 1)` threshold each
/// block is attacked with probability `1 - alpha/p1` and the rest of the
/// mass goes to no attack; above it each block gets `alpha / (p1 (n - 1))`
/// and the rest goes to the full cut. The defender plays the region III mix.
pub fn partition_equilibrium(
    analysis: &FlowAnalysis,
    params: &GameParams,
    partition: &Partition,
) -> Result<EquilibriumProfile> {
    require_region_three(params, &analysis.alpha)?;
    require_assumption(analysis)?;
    if !analysis.is_min_cut_edge_set(partition.cut_edges()) {
        return Err(Error::InvalidPartition("ground set is not a known minimum cut".into()));
    }
    let n = partition.size();
    let region = classify_region(params, &analysis.alpha, Some(n));
    let nr = Rational::from_integer(n as i64);
    let one = Rational::one();
    let (atoms, construction) = match &region {
        Region::IIIa { .. } => {
            let each = &one - &analysis.alpha / &params.p1;
            let mut atoms = vec![(Attack::none(), &one - &nr * &each)];
            atoms.extend(partition.block_attacks().into_iter().map(|a| (a, each.clone())));
            (atoms, Construction::PartitionNoAttack)
        }
        Region::IIIb { .. } => {
            let each = &analysis.alpha / (&params.p1 * (&nr - &one));
            let mut atoms: Vec<(Attack, Rational)> =
                partition.block_attacks().into_iter().map(|a| (a, each.clone())).collect();
            atoms.push((partition.full_attack(), &one - &nr * &each));
            (atoms, Construction::PartitionFullCut)
        }
        Region::Boundary { reason } => return Err(Error::BoundaryParameters(reason.clone())),
        other => return Err(Error::WrongRegion(format!("expected region III, got {other}"))),
    };
    Ok(EquilibriumProfile {
        sigma1: defender_mix(analysis, params)?,
        sigma2: MixedStrategy::new(atoms)?,
        construction,
        region,
    })
}

/// Budget-scaled profile: the defender sends `x† = (b1 / T^min) x*` with
/// probability `T^min / (p2 b1)` so that every support flow costs at most
/// `b1`; the attacker plays the region III mix. Requires
/// `T^min / p2 <= b1 <= T^min`.
pub fn scaled_equilibrium(analysis: &FlowAnalysis, params: &GameParams, b1: &Rational) -> Result<EquilibriumProfile> {
    require_region_three(params, &analysis.alpha)?;
    require_assumption(analysis)?;
    let t_min = &analysis.t_min;
    if !t_min.is_positive() {
        return Err(Error::InvalidParams("budget scaling needs a positive min-cost max-flow cost".into()));
    }
    let low = t_min / &params.p2;
    if b1 < &low || b1 > t_min {
        return Err(Error::BudgetOutOfRange { budget: b1.to_string(), low: low.to_string(), high: t_min.to_string() });
    }
    let scaled = analysis.x_star.scaled(&(b1 / t_min));
    let send = t_min / (&params.p2 * b1);
    let sigma1 = MixedStrategy::from_weights(vec![(FlowAction::none(), Rational::one() - &send), (scaled, send)])?;
    let base = min_cut_mix(analysis, params)?;
    Ok(EquilibriumProfile {
        sigma1,
        sigma2: base.sigma2,
        construction: Construction::ScaledMinCutMix,
        region: base.region,
    })
}
