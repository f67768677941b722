//! Budget-constrained game: the defender's minimum transport budget, a lower
//! bound on the attacker's budget, the partition size that minimizes the
//! attacker's budget, and the exact min-max partition program.

use serde::Serialize;

use crate::equilibria::{partition_equilibrium, require_region_three, EquilibriumProfile, Partition};
use crate::error::{Error, Result};
use crate::flowopt::FlowAnalysis;
use crate::netmodel::{GameParams, Network};
use crate::rational::Rational;

pub const MAX_PARTITION_EDGES: usize = 24;

fn require_assumption(analysis: &FlowAnalysis) -> Result<()> {
    if analysis.cheapest_paths_only {
        Ok(())
    } else {
        Err(Error::AssumptionViolated("budget results need the min-cost max-flow to use cheapest paths only".into()))
    }
}

/// `T^min / p2`: the expected transport cost of any region III equilibrium,
/// hence the least budget that keeps one.
pub fn min_defender_budget(analysis: &FlowAnalysis, params: &GameParams) -> Result<Rational> {
    require_region_three(params, &analysis.alpha)?;
    require_assumption(analysis)?;
    Ok(&analysis.t_min / &params.p2)
}

/// `F^max - T^min / p1`: the expected attack cost of any region III
/// equilibrium, which no support can stay strictly below.
pub fn attacker_budget_lower_bound(analysis: &FlowAnalysis, params: &GameParams) -> Result<Rational> {
    require_region_three(params, &analysis.alpha)?;
    require_assumption(analysis)?;
    Ok(&analysis.f_max - &analysis.t_min / &params.p1)
}

/// `min(floor(p1 / (p1 - alpha)), cut_size)`, the largest partition size
/// whose profile keeps the no-attack action in its support.
pub fn optimal_partition_size(params: &GameParams, alpha: &Rational, cut_size: usize) -> Result<usize> {
    if &params.p1 <= alpha {
        return Err(Error::WrongRegion(format!("need p1 > alpha = {alpha}, got p1 = {}", params.p1)));
    }
    if cut_size == 0 {
        return Err(Error::InvalidParams("empty cut".into()));
    }
    let ratio = &params.p1 / (&params.p1 - alpha);
    let floor = ratio.floor();
    Ok(if floor >= num_bigint::BigInt::from(cut_size) {
        cut_size
    } else {
        usize::try_from(floor).expect("below cut_size")
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSolution {
    /// Block of each input item; blocks are numbered by first appearance in
    /// decreasing-capacity order.
    pub assignment: Vec<usize>,
    pub z_star: Rational,
    pub n: usize,
}

impl PartitionSolution {
    /// Item indices of each block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (i, &k) in self.assignment.iter().enumerate() {
            out[k].push(i);
        }
        out
    }
}

/// Splits `capacities` into exactly `n` nonempty blocks minimizing the
/// largest block sum, by depth-first branch and bound.
///
/// Items are placed in decreasing capacity order (stable on ties); the first
/// item goes to block 0 and a new block opens only after all lower blocks
/// are used, so each partition is visited once. A node is pruned when its
/// largest block already reaches the incumbent or too few items remain to
/// fill the unopened blocks; the search stops at the bound
/// `max(max c, sum c / n)`. Only strict improvements replace the incumbent,
/// so the witness is the first optimum in search order.
pub fn solve_min_max_partition(capacities: &[Rational], n: usize) -> Result<PartitionSolution> {
    let count = capacities.len();
    if count > MAX_PARTITION_EDGES {
        return Err(Error::TooManyEdges { edges: count, limit: MAX_PARTITION_EDGES });
    }
    if n == 0 || n > count {
        return Err(Error::InvalidParams(format!("partition size {n} must lie in 1..={count}")));
    }
    if capacities.iter().any(Rational::is_negative) {
        return Err(Error::InvalidParams("negative capacity".into()));
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| capacities[b].cmp(&capacities[a]));
    let sorted: Vec<Rational> = order.iter().map(|&i| capacities[i].clone()).collect();
    let total: Rational = sorted.iter().sum();
    let lower = std::cmp::max(sorted[0].clone(), &total / Rational::from_integer(n as i64));

    struct Search<'a> {
        items: &'a [Rational],
        n: usize,
        lower: Rational,
        loads: Vec<Rational>,
        labels: Vec<usize>,
        best: Option<(Rational, Vec<usize>)>,
    }

    impl Search<'_> {
        fn done(&self) -> bool {
            self.best.as_ref().is_some_and(|(z, _)| *z == self.lower)
        }

        fn run(&mut self, i: usize, opened: usize, current_max: Rational) {
            if self.done() {
                return;
            }
            if let Some((z, _)) = &self.best {
                if current_max >= *z {
                    return;
                }
            }
            if self.items.len() - i < self.n - opened {
                return;
            }
            if i == self.items.len() {
                self.best = Some((current_max, self.labels.clone()));
                return;
            }
            for k in 0..(opened + 1).min(self.n) {
                self.loads[k] += &self.items[i];
                let next_max = std::cmp::max(current_max.clone(), self.loads[k].clone());
                self.labels.push(k);
                self.run(i + 1, opened.max(k + 1), next_max);
                self.labels.pop();
                self.loads[k] -= &self.items[i];
            }
        }
    }

    let mut s = Search {
        items: &sorted,
        n,
        lower,
        loads: vec![Rational::zero(); n],
        labels: Vec::with_capacity(count),
        best: None,
    };
    s.run(0, 0, Rational::zero());
    let (z_star, labels) = s.best.expect("n <= count admits a partition");
    let mut assignment = vec![0; count];
    for (pos, &item) in order.iter().enumerate() {
        assignment[item] = labels[pos];
    }
    Ok(PartitionSolution { assignment, z_star, n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutBudget {
    pub cut_edges: Vec<usize>,
    pub z_star: Rational,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetAnalysis {
    pub b1_star: Rational,
    pub b2_lower: Rational,
    pub n_star: usize,
    /// Min-max block capacity on the canonical cut.
    pub z_star: Rational,
    pub partition: Partition,
    /// The same program on every known min-cut, when requested.
    pub per_cut: Option<Vec<CutBudget>>,
}

impl BudgetAnalysis {
    /// Smallest `z_star` over the cuts examined.
    pub fn best_z_star(&self) -> Rational {
        self.per_cut
            .iter()
            .flatten()
            .map(|c| c.z_star.clone())
            .chain(std::iter::once(self.z_star.clone()))
            .min()
            .expect("canonical cut present")
    }
}

fn partition_for_cut(net: &Network, cut_edges: &[usize], n: usize) -> Result<(Rational, Vec<Vec<usize>>)> {
    let caps: Vec<Rational> = cut_edges.iter().map(|&e| net.edge(e).capacity.clone()).collect();
    let sol = solve_min_max_partition(&caps, n)?;
    let blocks = sol.blocks().into_iter().map(|b| b.into_iter().map(|i| cut_edges[i]).collect()).collect();
    Ok((sol.z_star, blocks))
}

/// Budgets, optimal partition size and the min-max partition of the
/// canonical cut (and, with `all_cuts`, of every known min-cut).
pub fn budget_analysis(
    net: &Network,
    analysis: &FlowAnalysis,
    params: &GameParams,
    all_cuts: bool,
) -> Result<BudgetAnalysis> {
    let b1_star = min_defender_budget(analysis, params)?;
    let b2_lower = attacker_budget_lower_bound(analysis, params)?;
    let cut = &analysis.min_cut.edges;
    let n_star = optimal_partition_size(params, &analysis.alpha, cut.len())?;
    let (z_star, blocks) = partition_for_cut(net, cut, n_star)?;
    let partition = Partition::new(analysis, blocks)?;
    let per_cut = if all_cuts {
        Some(
            analysis
                .known_min_cuts()
                .iter()
                .map(|c| {
                    let n = optimal_partition_size(params, &analysis.alpha, c.edges.len())?;
                    let (z_star, blocks) = partition_for_cut(net, &c.edges, n)?;
                    Ok(CutBudget { cut_edges: c.edges.clone(), z_star, blocks })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    Ok(BudgetAnalysis { b1_star, b2_lower, n_star, z_star, partition, per_cut })
}

/// The partition profile that minimizes the largest attack cost in the
/// attacker's support, with that cost.
pub fn min_budget_partition_equilibrium(
    net: &Network,
    analysis: &FlowAnalysis,
    params: &GameParams,
) -> Result<(EquilibriumProfile, Rational, Partition)> {
    let b = budget_analysis(net, analysis, params, false)?;
    let profile = partition_equilibrium(analysis, params, &b.partition)?;
    let z = profile.sigma2.iter().map(|(mu, _)| crate::netmodel::attack_cost(mu, net)).max().expect("nonempty support");
    Ok((profile, z, b.partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flowopt::{analyze, AnalysisOptions};
    use crate::netmodel::{attack_cost, Attack};
    use crate::rational::q;
    use crate::verify::{verify_equilibrium, VerifyOptions};
    use proptest::prelude::*;

    fn params(p1: &str, p2: &str) -> GameParams {
        GameParams::new(q(p1), q(p2)).unwrap()
    }

    fn caps(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| Rational::from_integer(c)).collect()
    }

    /// Independent oracle: every labeling of items with `n` labels that
    /// uses all labels.
    fn brute_force(c: &[Rational], n: usize) -> Rational {
        let count = c.len();
        let mut best: Option<Rational> = None;
        let mut labels = vec![0usize; count];
        loop {
            let mut loads = vec![Rational::zero(); n];
            for (i, &k) in labels.iter().enumerate() {
                loads[k] += &c[i];
            }
            let used = (0..n).all(|k| labels.contains(&k));
            if used {
                let z = loads.into_iter().max().unwrap();
                if best.as_ref().is_none_or(|b| z < *b) {
                    best = Some(z);
                }
            }
            let mut i = 0;
            while i < count && labels[i] == n - 1 {
                labels[i] = 0;
                i += 1;
            }
            if i == count {
                break;
            }
            labels[i] += 1;
        }
        best.unwrap()
    }

    #[test]
    fn budgets_on_three_edge_cut() {
        let net = fixtures::three_edge_cut();
        let a = analyze(&net, AnalysisOptions::default());
        assert_eq!(min_defender_budget(&a, &params("6", "2")).unwrap(), q("9/2"));
        assert_eq!(min_defender_budget(&a, &params("6", "3")).unwrap(), q("3"));
        assert!(min_defender_budget(&a, &params("6", "1")).is_err());
        assert_eq!(attacker_budget_lower_bound(&a, &params("5", "2")).unwrap(), q("6/5"));
        assert_eq!(attacker_budget_lower_bound(&a, &params("6", "2")).unwrap(), q("3/2"));
        assert!(attacker_budget_lower_bound(&a, &params("3001/1000", "2")).unwrap().is_positive());
    }

    #[test]
    fn partition_sizes() {
        let alpha = q("3");
        assert_eq!(optimal_partition_size(&params("5", "2"), &alpha, 3).unwrap(), 2);
        assert_eq!(optimal_partition_size(&params("100", "2"), &alpha, 3).unwrap(), 1);
        assert_eq!(optimal_partition_size(&params("7/2", "2"), &alpha, 3).unwrap(), 3);
        assert!(matches!(optimal_partition_size(&params("2", "2"), &alpha, 3), Err(Error::WrongRegion(_))));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(solve_min_max_partition(&caps(&[1, 1, 1]), 2).unwrap().z_star, q("2"));
        assert_eq!(solve_min_max_partition(&caps(&[1, 1, 1]), 3).unwrap().z_star, q("1"));
        let s = solve_min_max_partition(&caps(&[5, 3, 2, 2]), 2).unwrap();
        assert_eq!(s.z_star, q("7"));
        assert_eq!(s.blocks().len(), 2);
        assert!(solve_min_max_partition(&caps(&[1, 1]), 3).is_err());
        assert!(solve_min_max_partition(&caps(&[1; 25]), 2).is_err());
    }

    #[test]
    fn min_budget_profile() {
        let net = fixtures::three_edge_cut();
        let a = analyze(&net, AnalysisOptions::default());
        let pr = params("5", "2");
        let b = budget_analysis(&net, &a, &pr, true).unwrap();
        assert_eq!((b.n_star, b.z_star.clone(), b.b2_lower.clone()), (2, q("2"), q("6/5")));
        assert_eq!(b.best_z_star(), q("2"));
        let (p, z, part) = min_budget_partition_equilibrium(&net, &a, &pr).unwrap();
        assert_eq!(z, q("2"));
        assert_eq!(part.size(), 2);
        let r = verify_equilibrium(&net, &p.sigma1, &p.sigma2, &pr, &a, &VerifyOptions::default()).unwrap();
        assert!(r.is_equilibrium);

        let (p, z, _) = min_budget_partition_equilibrium(&net, &a, &params("100", "2")).unwrap();
        assert_eq!(z, q("3"));
        assert_eq!(p.sigma2.len(), 2);
        let full = Attack { edges: a.min_cut.edges.iter().copied().collect() };
        assert_eq!(attack_cost(&full, &net), z);
    }

    proptest! {
        #[test]
        fn matches_brute_force(c in proptest::collection::vec(1i64..=5, 1..=6), n in 1usize..=6) {
            let c = caps(&c);
            prop_assume!(n <= c.len());
            let s = solve_min_max_partition(&c, n).unwrap();
            prop_assert_eq!(&s.z_star, &brute_force(&c, n));
            // the witness realizes z_star with exactly n nonempty blocks
            let blocks = s.blocks();
            prop_assert!(blocks.iter().all(|b| !b.is_empty()));
            let worst = blocks.iter().map(|b| b.iter().map(|&i| &c[i]).sum::<Rational>()).max().unwrap();
            prop_assert_eq!(worst, s.z_star);
        }

        #[test]
        fn non_increasing_in_n(c in proptest::collection::vec(1i64..=5, 2..=8)) {
            let c = caps(&c);
            for n in 1..c.len() {
                let a = solve_min_max_partition(&c, n).unwrap().z_star;
                let b = solve_min_max_partition(&c, n + 1).unwrap().z_star;
                prop_assert!(b <= a);
            }
        }

        #[test]
        fn bracketed_by_budget_bounds(p1 in 31i64..200) {
            let net = fixtures::three_edge_cut();
            let a = analyze(&net, AnalysisOptions::default());
            let pr = GameParams::new(Rational::new(p1, 10), q("2")).unwrap();
            let b = budget_analysis(&net, &a, &pr, false).unwrap();
            prop_assert!(b.b2_lower <= b.z_star && b.z_star <= a.f_max);
        }
    }
}
