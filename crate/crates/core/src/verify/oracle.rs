use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flowopt::{enumerate_paths, PathInfo};
use crate::lp::maximize_packing;
use crate::netmodel::{
    flow_value, transport_cost, Attack, EdgeId, FlowAction, GameParams, MixedAttackStrategy, MixedFlowStrategy,
    Network, PathFlow,
};
use crate::rational::Rational;

pub const DEFAULT_EDGE_LIMIT: usize = 24;

/// Best defender reply to `sigma2` over every simple path of `net`.
pub fn best_response_flow(
    net: &Network,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    path_limit: usize,
) -> Result<(Rational, FlowAction)> {
    let paths = enumerate_paths(net, path_limit)?;
    Ok(best_response_flow_over(net, &paths, sigma2, params))
}

/// Best defender reply to `sigma2` using a precomputed path list.
///
/// `U1(x, sigma2)` is linear in the path amounts with weight
/// `p1 P(path survives) - path cost`, so the reply solves a path-packing LP
/// over the paths with positive weight.
pub fn best_response_flow_over(
    net: &Network,
    paths: &[PathInfo],
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
) -> (Rational, FlowAction) {
    let useful: Vec<(&PathInfo, Rational)> = paths
        .iter()
        .map(|p| {
            let survive = sigma2.mass_where(|mu| mu.spares(&p.edges));
            (p, &params.p1 * survive - &p.cost)
        })
        .filter(|(_, w)| w.is_positive())
        .collect();
    if useful.is_empty() {
        return (Rational::zero(), FlowAction::none());
    }
    let mut rows: BTreeMap<EdgeId, Vec<Rational>> = BTreeMap::new();
    for (j, (p, _)) in useful.iter().enumerate() {
        for &e in &p.edges {
            rows.entry(e).or_insert_with(|| vec![Rational::zero(); useful.len()])[j] = Rational::one();
        }
    }
    let c: Vec<Rational> = useful.iter().map(|(_, w)| w.clone()).collect();
    let b: Vec<Rational> = rows.keys().map(|&e| net.edge(e).capacity.clone()).collect();
    let a: Vec<Vec<Rational>> = rows.into_values().collect();
    let sol = maximize_packing(&c, &a, &b).expect("every path has a capacity row, so the LP is bounded");
    let witness = FlowAction::new(
        useful
            .iter()
            .zip(sol.x)
            .filter(|(_, x)| x.is_positive())
            .map(|((p, _), amount)| PathFlow { edges: p.edges.clone(), amount })
            .collect(),
    )
    .canonical();
    (sol.value, witness)
}

/// Best attacker reply to `sigma1` by exhaustive search over every edge
/// subset. Ties go to fewer edges, then to the lexicographically smallest
/// edge list.
pub fn best_response_attack(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    params: &GameParams,
    edge_limit: usize,
) -> Result<(Rational, Attack)> {
    let all: Vec<EdgeId> = (0..net.edge_count()).collect();
    if all.len() > edge_limit {
        return Err(Error::TooManyEdges { edges: all.len(), limit: edge_limit });
    }
    Ok(maximize_over_attacks(net, sigma1, &params.p2, &Rational::one(), &all))
}

/// Like [`best_response_attack`] but only over subsets of `allowed`. A
/// cross-check, not a certificate: the true best reply may use other edges.
pub fn best_response_attack_restricted(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    params: &GameParams,
    allowed: &[EdgeId],
) -> Result<(Rational, Attack)> {
    let mut cands = allowed.to_vec();
    cands.sort_unstable();
    cands.dedup();
    if cands.len() > DEFAULT_EDGE_LIMIT {
        return Err(Error::TooManyEdges { edges: cands.len(), limit: DEFAULT_EDGE_LIMIT });
    }
    if let Some(&bad) = cands.iter().find(|&&e| e >= net.edge_count()) {
        return Err(Error::InvalidEdgeIndex(bad));
    }
    Ok(maximize_over_attacks(net, sigma1, &params.p2, &Rational::one(), &cands))
}

/// Largest expected loss any attack can inflict on `sigma1`, ignoring cost.
pub(crate) fn max_expected_loss(net: &Network, sigma1: &MixedFlowStrategy, edge_limit: usize) -> Result<Rational> {
    let all: Vec<EdgeId> = (0..net.edge_count()).collect();
    if all.len() > edge_limit {
        return Err(Error::TooManyEdges { edges: all.len(), limit: edge_limit });
    }
    Ok(maximize_over_attacks(net, sigma1, &Rational::one(), &Rational::zero(), &all).0)
}

/// Expected defender payoff of `sigma1` against a pure attack.
pub(crate) fn u1_against(net: &Network, sigma1: &MixedFlowStrategy, mu: &Attack, params: &GameParams) -> Rational {
    sigma1.expect(|x| &params.p1 * crate::netmodel::effective_value(x, mu) - transport_cost(x, net))
}

pub(crate) fn expected_flow(sigma1: &MixedFlowStrategy) -> Rational {
    sigma1.expect(flow_value)
}

/// Maximizes `gain * E[loss(mu)] - price * C(mu)` over subsets of `cands`
/// (sorted, at most 63 entries). Bit `i` of a mask stands for `cands[i]`.
fn maximize_over_attacks(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    gain: &Rational,
    price: &Rational,
    cands: &[EdgeId],
) -> (Rational, Attack) {
    let bit_of = |e: EdgeId| cands.binary_search(&e).ok();
    // Expected amount per distinct hit-mask; unhittable paths never lose flow.
    let mut by_mask: BTreeMap<u64, Rational> = BTreeMap::new();
    for (x, px) in sigma1.iter() {
        for p in &x.paths {
            let m = p.edges.iter().filter_map(|&e| bit_of(e)).fold(0u64, |m, i| m | 1 << i);
            if m != 0 && !p.amount.is_zero() {
                *by_mask.entry(m).or_default() += px * &p.amount;
            }
        }
    }
    let path_masks: Vec<u64> = by_mask.keys().copied().collect();
    let path_w: Vec<Rational> = by_mask.values().map(|w| gain * w).collect();
    let edge_w: Vec<Rational> = cands.iter().map(|&e| price * &net.edge(e).capacity).collect();

    let total = 1u64 << cands.len();
    let best_mask = match IntegerWeights::new(&path_w, &edge_w) {
        Some(iw) => search(total, |m| iw.value(&path_masks, m)),
        None => search(total, |m| rational_value(&path_masks, &path_w, &edge_w, m)),
    };
    let value = rational_value(&path_masks, &path_w, &edge_w, best_mask);
    let attack = Attack { edges: (0..cands.len()).filter(|i| best_mask >> i & 1 == 1).map(|i| cands[i]).collect() };
    (value, attack)
}

fn rational_value(path_masks: &[u64], path_w: &[Rational], edge_w: &[Rational], m: u64) -> Rational {
    let gained: Rational = path_masks.iter().zip(path_w).filter(|(pm, _)| *pm & m != 0).map(|(_, w)| w).sum();
    let spent: Rational = (0..edge_w.len()).filter(|i| m >> i & 1 == 1).map(|i| &edge_w[i]).sum();
    gained - spent
}

/// Weights rescaled by a common denominator so each subset is scored with
/// integer arithmetic. Exact: the ordering of scaled values equals the
/// ordering of the rational values.
struct IntegerWeights {
    path: Vec<i128>,
    edge: Vec<i128>,
}

impl IntegerWeights {
    fn new(path_w: &[Rational], edge_w: &[Rational]) -> Option<Self> {
        let lcm = path_w.iter().chain(edge_w).fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let scale = |r: &Rational| -> Option<i128> {
            let v = r.numer() * (&lcm / r.denom());
            v.to_i64().map(i128::from)
        };
        let path = path_w.iter().map(scale).collect::<Option<Vec<_>>>()?;
        let edge = edge_w.iter().map(scale).collect::<Option<Vec<_>>>()?;
        Some(IntegerWeights { path, edge })
    }

    fn value(&self, path_masks: &[u64], m: u64) -> i128 {
        let gained: i128 = path_masks.iter().zip(&self.path).filter(|(pm, _)| *pm & m != 0).map(|(_, w)| *w).sum();
        let spent: i128 = (0..self.edge.len()).filter(|i| m >> i & 1 == 1).map(|i| self.edge[i]).sum();
        gained - spent
    }
}

/// `Greater` if `(va, a)` beats `(vb, b)`: higher value, then fewer edges,
/// then the lexicographically smaller edge list.
fn compare<V: Ord>(va: &V, a: u64, vb: &V, b: u64) -> Ordering {
    va.cmp(vb).then_with(|| b.count_ones().cmp(&a.count_ones())).then_with(|| {
        let diff = a ^ b;
        if diff == 0 {
            Ordering::Equal
        } else if a & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    })
}

/// Best mask in `0..total` under [`compare`], scanned in parallel chunks and
/// reduced with the same total order, so the result does not depend on
/// scheduling.
fn search<V, F>(total: u64, f: F) -> u64
where
    V: Ord + Send,
    F: Fn(u64) -> V + Sync,
{
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    let best_in = |lo: u64, hi: u64| {
        let mut best = (f(lo), lo);
        for m in lo + 1..hi {
            let v = f(m);
            if compare(&v, m, &best.0, best.1) == Ordering::Greater {
                best = (v, m);
            }
        }
        best
    };
    (0..chunks)
        .into_par_iter()
        .map(|c| best_in(c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .reduce_with(|a, b| if compare(&b.0, b.1, &a.0, a.1) == Ordering::Greater { b } else { a })
        .expect("at least the empty attack")
        .1
}
