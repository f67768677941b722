//! Classical flow computations: maximum flow, min-cost maximum flow, minimum
//! cuts, the cheapest path cost and the cheapest-path assumption checks.

mod assumptions;
mod cut;
mod paths;
mod residual;

pub use assumptions::{check_cheapest_paths_only, check_per_edge_cheapest, CutAlphas, PerEdgeCheapestReport};
pub use cut::{enumerate_min_cuts, min_cut, CutSet, DEFAULT_NODE_LIMIT};
pub use paths::{alpha, enumerate_paths, PathInfo, DEFAULT_PATH_LIMIT};

use crate::netmodel::{FlowAction, Network, PathFlow};
use crate::rational::Rational;
use residual::{decompose, Residual};

/// Maximum flow value and a witness edge flow (shortest augmenting paths).
pub fn max_flow(net: &Network) -> (Rational, Vec<Rational>) {
    let mut r = Residual::new(net);
    let value = r.run_max_flow();
    (value, r.edge_flows())
}

/// A min-cost maximum flow decomposed into simple paths, and its cost.
pub fn min_cost_max_flow(net: &Network) -> (FlowAction, Rational) {
    let mut r = Residual::new(net);
    r.run_min_cost_max_flow();
    let flows = r.edge_flows();
    let t_min: Rational = flows.iter().zip(net.edges()).map(|(x, e)| x * &e.cost).sum();
    let x_star =
        FlowAction::new(decompose(net, &flows).into_iter().map(|(edges, amount)| PathFlow { edges, amount }).collect())
            .canonical();
    (x_star, t_min)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub node_limit: usize,
    pub path_limit: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { node_limit: DEFAULT_NODE_LIMIT, path_limit: DEFAULT_PATH_LIMIT }
    }
}

/// Everything the game constructions need to know about a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAnalysis {
    pub f_max: Rational,
    pub t_min: Rational,
    pub alpha: Rational,
    pub x_star: FlowAction,
    /// Canonical (residual-reachability) min-cut.
    pub min_cut: CutSet,
    /// `None` when the network exceeds the node enumeration limit.
    pub all_min_cuts: Option<Vec<CutSet>>,
    pub cheapest_paths_only: bool,
    /// `None` when path enumeration exceeds its limit.
    pub per_edge_cheapest: Option<PerEdgeCheapestReport>,
    pub paths: Option<Vec<PathInfo>>,
    /// Why optional parts are missing.
    pub notes: Vec<String>,
}

impl FlowAnalysis {
    /// Every min-cut known to the analysis; the canonical one alone when
    /// enumeration was skipped.
    pub fn known_min_cuts(&self) -> Vec<CutSet> {
        self.all_min_cuts.clone().unwrap_or_else(|| vec![self.min_cut.clone()])
    }

    /// Whether `edges` (sorted) is the edge set of a known min-cut.
    pub fn is_min_cut_edge_set(&self, edges: &[usize]) -> bool {
        self.min_cut.edges == edges || self.all_min_cuts.iter().flatten().any(|c| c.edges == edges)
    }
}

pub fn analyze(net: &Network, options: AnalysisOptions) -> FlowAnalysis {
    let (x_star, t_min) = min_cost_max_flow(net);
    let f_max = crate::netmodel::flow_value(&x_star);
    let alpha = alpha(net);
    let min_cut = min_cut(net);
    let mut notes = Vec::new();
    let all_min_cuts = match enumerate_min_cuts(net, options.node_limit) {
        Ok(c) => Some(c),
        Err(e) => {
            notes.push(format!("min-cut enumeration skipped: {e}"));
            None
        }
    };
    let paths = match enumerate_paths(net, options.path_limit) {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(format!("path enumeration skipped: {e}"));
            None
        }
    };
    let cheapest_paths_only = check_cheapest_paths_only(&f_max, &t_min, &alpha);
    let per_edge_cheapest = paths.as_ref().map(|p| {
        let cuts = all_min_cuts.clone().unwrap_or_else(|| vec![min_cut.clone()]);
        check_per_edge_cheapest(net, &x_star, &cuts, p)
    });
    FlowAnalysis {
        f_max,
        t_min,
        alpha,
        x_star,
        min_cut,
        all_min_cuts,
        cheapest_paths_only,
        per_edge_cheapest,
        paths,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::netmodel::{edge_flows, is_feasible, transport_cost};
    use crate::rational::q;
    use crate::testutil::arb_network;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn names(net: &Network, x: &FlowAction) -> Vec<(Vec<String>, Rational)> {
        x.paths.iter().map(|p| (p.node_names(net).into_iter().map(String::from).collect(), p.amount.clone())).collect()
    }

    fn labels(net: &Network, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| net.edge_label(e)).collect()
    }

    fn path(nodes: &[&str]) -> (Vec<String>, Rational) {
        (nodes.iter().map(|s| s.to_string()).collect(), q("1"))
    }

    // Independent oracle: cheapest cut over all source-side subsets.
    fn brute_force_min_cut_capacity(net: &Network) -> Rational {
        let inner: Vec<usize> = (0..net.node_count()).filter(|&v| v != net.source() && v != net.sink()).collect();
        (0u32..1 << inner.len())
            .map(|mask| {
                let mut side = BTreeSet::from([net.source()]);
                side.extend(inner.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
                CutSet::from_source_side(net, side).capacity
            })
            .min()
            .unwrap()
    }

    #[test]
    fn unique_mcmf_network() {
        let net = fixtures::unique_mcmf();
        let (value, flows) = max_flow(&net);
        assert_eq!(value, q("3"));
        assert!(flows.iter().zip(net.edges()).all(|(f, e)| f <= &e.capacity));
        let (x, t) = min_cost_max_flow(&net);
        assert_eq!(t, q("9"));
        assert_eq!(transport_cost(&x, &net), q("9"));
        let mut got = names(&net, &x);
        got.sort();
        let mut want = vec![path(&["s", "1", "t"]), path(&["s", "2", "3", "t"]), path(&["s", "2", "4", "t"])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(alpha(&net), q("3"));
        assert!(analyze(&net, AnalysisOptions::default()).cheapest_paths_only);
    }

    #[test]
    fn three_edge_cut_network() {
        let net = fixtures::three_edge_cut();
        assert_eq!(max_flow(&net).0, q("3"));
        let (x, t) = min_cost_max_flow(&net);
        assert_eq!(t, q("9"));
        let mut got = names(&net, &x);
        got.sort();
        let mut want = vec![path(&["s", "1", "3", "t"]), path(&["s", "2", "3", "t"]), path(&["s", "2", "4", "t"])];
        want.sort();
        assert_eq!(got, want);
        let cut = min_cut(&net);
        assert_eq!(labels(&net, &cut.edges), vec!["1->3", "2->3", "2->4"]);
        assert_eq!(cut.capacity, q("3"));
        assert_eq!(enumerate_min_cuts(&net, 20).unwrap().len(), 1);
        assert_eq!(alpha(&net), q("3"));
        let paths = enumerate_paths(&net, 100).unwrap();
        assert_eq!(paths.len(), 5);
        let costs: Vec<Rational> = paths.iter().map(|p| p.cost.clone()).collect();
        assert_eq!(costs.iter().filter(|c| **c == q("4")).count(), 2);
    }

    #[test]
    fn off_cut_attack_network() {
        let net = fixtures::off_cut_attack();
        let cut = min_cut(&net);
        assert_eq!(labels(&net, &cut.edges), vec!["2->t", "3->t"]);
        assert_eq!(cut.capacity, q("3"));
        assert_eq!(enumerate_min_cuts(&net, 20).unwrap().len(), 1);
        assert_eq!(alpha(&net), q("3"));
    }

    #[test]
    fn cheap_bridge_fails_cheapest_path_assumption() {
        let net = fixtures::cheap_bridge();
        let a = analyze(&net, AnalysisOptions::default());
        assert_eq!(a.alpha, q("3"));
        assert_eq!(a.f_max, q("2"));
        assert_eq!(a.t_min, q("10"));
        assert!(!a.cheapest_paths_only);
        assert_eq!(a.paths.as_ref().unwrap().len(), 3);
        assert!(!a.per_edge_cheapest.unwrap().holds);
    }

    #[test]
    fn per_edge_alpha_network() {
        let net = fixtures::per_edge_alpha();
        let a = analyze(&net, AnalysisOptions::default());
        assert!(!a.cheapest_paths_only);
        let a2 = a.per_edge_cheapest.unwrap();
        assert!(a2.holds);
        let w = a2.witness_cut().unwrap();
        assert_eq!(labels(&net, &w.cut.edges), vec!["s->1", "2->3", "4->t"]);
        assert_eq!(w.alphas, vec![Some(q("2")), Some(q("3")), Some(q("4"))]);
    }

    #[test]
    fn bridge_paths() {
        let net = fixtures::bridge();
        let paths = enumerate_paths(&net, 100).unwrap();
        let got: Vec<Vec<&str>> = paths
            .iter()
            .map(|p| crate::netmodel::PathFlow { edges: p.edges.clone(), amount: q("1") }.node_names(&net))
            .collect();
        assert_eq!(got, vec![vec!["s", "1", "2", "t"], vec!["s", "1", "t"], vec!["s", "2", "t"]]);
        assert_eq!(enumerate_paths(&net, 2), Err(crate::Error::TooManyPaths { limit: 2 }));
    }

    #[test]
    fn single_edge() {
        let net = fixtures::single_edge("5", "3");
        assert_eq!(max_flow(&net).0, q("5"));
        assert_eq!(min_cost_max_flow(&net).1, q("15"));
        assert_eq!(min_cut(&net).edges, vec![0]);
        assert_eq!(alpha(&net), q("3"));
        assert_eq!(enumerate_paths(&net, 10).unwrap().len(), 1);
        let a = analyze(&net, AnalysisOptions::default());
        assert!(a.cheapest_paths_only);
        let a2 = a.per_edge_cheapest.unwrap();
        assert!(a2.holds);
        assert_eq!(a2.per_cut[0].alphas, vec![Some(q("3"))]);
    }

    #[test]
    fn parallel_edges_form_one_cut() {
        let net = Network::from_edges("s", "t", &[("s", "t", "1", "1"), ("s", "t", "1", "2")]).unwrap();
        let cuts = enumerate_min_cuts(&net, 20).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].edges, vec![0, 1]);
        assert_eq!(min_cost_max_flow(&net).1, q("3"));
    }

    #[test]
    fn node_limit_enforced() {
        let net = fixtures::three_edge_cut();
        assert!(matches!(enumerate_min_cuts(&net, 2), Err(crate::Error::TooManyNodes { .. })));
        let a = analyze(&net, AnalysisOptions { node_limit: 2, path_limit: 1 });
        assert!(a.all_min_cuts.is_none() && a.paths.is_none() && a.per_edge_cheapest.is_none());
        assert_eq!(a.notes.len(), 2);
    }

    #[test]
    fn deterministic() {
        let net = fixtures::three_edge_cut();
        let a = analyze(&net, AnalysisOptions::default());
        assert_eq!(a, analyze(&net, AnalysisOptions::default()));
    }

    proptest! {
        #[test]
        fn max_flow_equals_min_cut(net in arb_network(5, 10)) {
            let (value, flows) = max_flow(&net);
            prop_assert_eq!(&value, &min_cut(&net).capacity);
            prop_assert_eq!(&value, &brute_force_min_cut_capacity(&net));
            prop_assert!(flows.iter().zip(net.edges()).all(|(f, e)| !f.is_negative() && f <= &e.capacity));
        }

        #[test]
        fn min_cost_flow_properties(net in arb_network(5, 10)) {
            let (x, t) = min_cost_max_flow(&net);
            let f = crate::netmodel::flow_value(&x);
            prop_assert_eq!(&f, &max_flow(&net).0);
            prop_assert!(is_feasible(&x, &net));
            prop_assert_eq!(&transport_cost(&x, &net), &t);
            let a = alpha(&net);
            prop_assert!(t >= &a * &f);
            prop_assert_eq!(check_cheapest_paths_only(&f, &t, &a), t == &a * &f);
            for cut in enumerate_min_cuts(&net, 20).unwrap() {
                prop_assert_eq!(&cut.capacity, &f);
                let flows = edge_flows(&x, &net);
                for &e in &cut.edges {
                    prop_assert_eq!(&flows[e], &net.edge(e).capacity);
                }
                for p in &x.paths {
                    prop_assert_eq!(p.edges.iter().filter(|&&e| cut.contains(e)).count(), 1);
                }
            }
        }

        #[test]
        fn every_path_crosses_every_min_cut(net in arb_network(4, 8)) {
            let paths = enumerate_paths(&net, 10_000).unwrap();
            let a = alpha(&net);
            prop_assert_eq!(paths.iter().map(|p| &p.cost).min(), Some(&a));
            for cut in enumerate_min_cuts(&net, 20).unwrap() {
                for p in &paths {
                    prop_assert!(p.edges.iter().any(|&e| cut.contains(e)));
                }
            }
        }
    }
}
