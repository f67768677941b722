use crate::flowopt::cut::CutSet;
use crate::flowopt::paths::PathInfo;
use crate::netmodel::{path_cost, FlowAction, Network};
use crate::rational::Rational;

/// Per-cut outcome of the per-edge cheapest-path check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutAlphas {
    pub cut: CutSet,
    /// Cheapest cost of any path through each cut edge, in cut edge order;
    /// `None` for an edge on no source-sink path.
    pub alphas: Vec<Option<Rational>>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerEdgeCheapestReport {
    pub holds: bool,
    /// Index into `per_cut` of the first cut satisfying the condition.
    pub witness: Option<usize>,
    pub per_cut: Vec<CutAlphas>,
}

impl PerEdgeCheapestReport {
    pub fn witness_cut(&self) -> Option<&CutAlphas> {
        self.witness.map(|i| &self.per_cut[i])
    }
}

/// Every maximum flow costs at least `alpha * f_max`; equality means the
/// min-cost max-flow uses cheapest paths only.
pub fn check_cheapest_paths_only(f_max: &Rational, t_min: &Rational, alpha: &Rational) -> bool {
    t_min == &(alpha * f_max)
}

/// For each cut, `alpha_k` is the cheapest path through cut edge `e_k`; the
/// cut qualifies iff every path of `x_star` through `e_k` costs `alpha_k`.
pub fn check_per_edge_cheapest(
    net: &Network,
    x_star: &FlowAction,
    cuts: &[CutSet],
    paths: &[PathInfo],
) -> PerEdgeCheapestReport {
    let per_cut: Vec<CutAlphas> = cuts
        .iter()
        .map(|cut| {
            let alphas: Vec<Option<Rational>> = cut
                .edges
                .iter()
                .map(|e| paths.iter().filter(|p| p.edges.contains(e)).map(|p| &p.cost).min().cloned())
                .collect();
            let holds = cut.edges.iter().zip(&alphas).all(|(e, a)| {
                x_star
                    .paths
                    .iter()
                    .filter(|p| p.amount.is_positive() && p.edges.contains(e))
                    .all(|p| Some(path_cost(&p.edges, net)) == *a)
            });
            CutAlphas { cut: cut.clone(), alphas, holds }
        })
        .collect();
    let witness = per_cut.iter().position(|c| c.holds);
    PerEdgeCheapestReport { holds: witness.is_some(), witness, per_cut }
}
