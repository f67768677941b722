//! Seeded Monte-Carlo play of a mixed-strategy profile.
//!
//! Trial `i` draws from ChaCha8 stream `i` of the seed, so results do not
//! depend on thread count or scheduling. Atoms are selected by comparing a
//! uniform 64-bit draw `u` against `ceil(cum * 2^64)`, which is the exact
//! test `u / 2^64 < cum` for integer `u`. Payoffs are computed exactly per
//! atom pair and aggregated in `f64` with compensated summation.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibria::EquilibriumQuantities;
use crate::error::{Error, Result};
use crate::netmodel::{
    attack_cost, effective_value, flow_value, payoff_u1, payoff_u2, transport_cost, GameParams, MixedAttackStrategy,
    MixedFlowStrategy, Network,
};
use crate::rational::Rational;

/// Quantity names in report order.
pub const QUANTITIES: [&str; 7] = ["u1", "u2", "flow", "transport", "attack_cost", "effective", "loss"];

/// One realized round of play.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Play {
    pub flow_atom: usize,
    pub attack_atom: usize,
    pub u1: f64,
    pub u2: f64,
    pub flow: f64,
    pub transport: f64,
    pub attack_cost: f64,
    pub effective: f64,
    /// Always `flow - effective` in floating point.
    pub loss: f64,
}

impl Play {
    fn values(&self) -> [f64; 7] {
        [self.u1, self.u2, self.flow, self.transport, self.attack_cost, self.effective, self.loss]
    }
}

/// Precomputed draw thresholds and per-pair payoffs of a profile.
#[derive(Clone, Debug)]
pub struct Sampler {
    flow_thresholds: Vec<u128>,
    attack_thresholds: Vec<u128>,
    plays: Vec<Play>,
}

fn thresholds<A>(probabilities: impl Iterator<Item = (A, Rational)>) -> Vec<u128> {
    let scale = BigInt::from(1u8) << 64;
    let mut cum = Rational::zero();
    probabilities
        .map(|(_, p)| {
            cum += &p;
            let (n, d) = (cum.numer() * &scale, cum.denom());
            let ceil: BigInt = (n + d - 1) / d;
            ceil.to_u128().expect("cumulative mass lies in [0, 1]")
        })
        .collect()
}

fn pick(thresholds: &[u128], u: u64) -> usize {
    // last threshold is 2^64 > u, so the search always lands
    thresholds.partition_point(|&t| t <= u128::from(u))
}

impl Sampler {
    pub fn new(net: &Network, sigma1: &MixedFlowStrategy, sigma2: &MixedAttackStrategy, params: &GameParams) -> Self {
        let mut plays = Vec::with_capacity(sigma1.len() * sigma2.len());
        for (i, (x, _)) in sigma1.iter().enumerate() {
            let flow = flow_value(x).to_f64();
            let transport = transport_cost(x, net).to_f64();
            for (j, (mu, _)) in sigma2.iter().enumerate() {
                let effective = effective_value(x, mu).to_f64();
                plays.push(Play {
                    flow_atom: i,
                    attack_atom: j,
                    u1: payoff_u1(x, mu, params, net).to_f64(),
                    u2: payoff_u2(x, mu, params, net).to_f64(),
                    flow,
                    transport,
                    attack_cost: attack_cost(mu, net).to_f64(),
                    effective,
                    loss: flow - effective,
                });
            }
        }
        Sampler {
            flow_thresholds: thresholds(sigma1.iter().map(|(a, p)| (a, p.clone()))),
            attack_thresholds: thresholds(sigma2.iter().map(|(a, p)| (a, p.clone()))),
            plays,
        }
    }

    /// Draws one flow atom, then one attack atom, independently.
    pub fn sample_play(&self, rng: &mut impl RngCore) -> Play {
        let i = pick(&self.flow_thresholds, rng.next_u64());
        let j = pick(&self.attack_thresholds, rng.next_u64());
        self.plays[i * self.attack_thresholds.len() + j]
    }
}

/// Generator for trial `trial` of `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Neumaier's variant of compensated summation.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimQuantity {
    pub name: &'static str,
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`; zero for one trial.
    pub std_error: f64,
    pub target: Option<Rational>,
    pub abs_error: Option<f64>,
    /// `None` without a target, or when the standard error is zero.
    pub z_score: Option<f64>,
}

impl SimQuantity {
    /// Whether the mean lies within `k` standard errors of the target. A
    /// zero standard error demands agreement to `f64` conversion accuracy.
    pub fn within(&self, k: f64) -> Option<bool> {
        let err = self.abs_error?;
        Some(if self.std_error > 0.0 {
            err <= k * self.std_error
        } else {
            let t = self.target.as_ref().map_or(0.0, Rational::to_f64);
            err <= 4.0 * f64::EPSILON * t.abs().max(1.0)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub trials: u64,
    pub seed: u64,
    pub quantities: Vec<SimQuantity>,
}

impl SimResult {
    pub fn get(&self, name: &str) -> Option<&SimQuantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    /// Whether every targeted quantity is within `k` standard errors.
    pub fn all_within(&self, k: f64) -> bool {
        self.quantities.iter().filter_map(|q| q.within(k)).all(|b| b)
    }
}

fn target_values(t: &EquilibriumQuantities) -> [Rational; 7] {
    [
        t.u1.clone(),
        t.u2.clone(),
        t.exp_flow.clone(),
        t.exp_transport.clone(),
        t.exp_attack_cost.clone(),
        t.exp_effective.clone(),
        t.exp_loss.clone(),
    ]
}

/// Plays `trials` independent rounds and reports means, standard errors
/// and, given `targets`, z-scores against them.
pub fn monte_carlo(
    net: &Network,
    sigma1: &MixedFlowStrategy,
    sigma2: &MixedAttackStrategy,
    params: &GameParams,
    trials: u64,
    seed: u64,
    targets: Option<&EquilibriumQuantities>,
) -> Result<SimResult> {
    if trials == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    let sampler = Sampler::new(net, sigma1, sigma2, params);
    let base = ChaCha8Rng::seed_from_u64(seed);
    let plays: Vec<Play> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = base.clone();
            rng.set_stream(i);
            sampler.sample_play(&mut rng)
        })
        .collect();

    let n = trials as f64;
    let mut sums = [CompensatedSum::default(); 7];
    for p in &plays {
        for (s, v) in sums.iter_mut().zip(p.values()) {
            s.add(v);
        }
    }
    let means = sums.map(|s| s.total() / n);
    let mut squares = [CompensatedSum::default(); 7];
    for p in &plays {
        for ((s, v), m) in squares.iter_mut().zip(p.values()).zip(means) {
            s.add((v - m) * (v - m));
        }
    }
    let targets = targets.map(target_values);
    let quantities = QUANTITIES
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let std_error = if trials > 1 { (squares[k].total() / (n - 1.0) / n).sqrt() } else { 0.0 };
            let target = targets.as_ref().map(|t| t[k].clone());
            let abs_error = target.as_ref().map(|t| (means[k] - t.to_f64()).abs());
            let z_score = target.as_ref().filter(|_| std_error > 0.0).map(|t| (means[k] - t.to_f64()) / std_error);
            SimQuantity { name, mean: means[k], std_error, target, abs_error, z_score }
        })
        .collect();
    Ok(SimResult { trials, seed, quantities })
}
