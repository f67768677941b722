//! JSON formats for strategies, profiles, partitions and reports.
//!
//! Edges are written as `[tail, head]` node-name pairs. A path or attack
//! touching a parallel edge is written by edge index instead, since a pair
//! would be ambiguous. All numbers are exact rational strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::BudgetAnalysis;
use crate::equilibria::{Construction, EquilibriumProfile, Region};
use crate::error::{Error, Result};
use crate::flowopt::{CutSet, FlowAnalysis};
use crate::netmodel::{
    check_feasible, path_from_nodes, Attack, EdgeId, FlowAction, MixedAttackStrategy, MixedFlowStrategy, MixedStrategy,
    Network, NumberText, PathFlow,
};
use crate::verify::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_index: Option<Vec<EdgeId>>,
    pub amount: NumberText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowAtomSpec {
    pub prob: NumberText,
    pub paths: Vec<PathSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackAtomSpec {
    pub prob: NumberText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_index: Option<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowStrategySpec {
    pub atoms: Vec<FlowAtomSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackStrategySpec {
    pub atoms: Vec<AttackAtomSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    pub sigma1: FlowStrategySpec,
    pub sigma2: AttackStrategySpec,
}

/// A parsed profile file; construction and region are informational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedProfile {
    pub sigma1: MixedFlowStrategy,
    pub sigma2: MixedAttackStrategy,
    pub construction: Option<Construction>,
    pub region: Option<Region>,
}

/// An edge given either by index or by `[tail, head]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeRef {
    Index(EdgeId),
    Pair(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum PartitionFile {
    Wrapped { blocks: Vec<Vec<EdgeRef>> },
    Bare(Vec<Vec<EdgeRef>>),
}

fn one_of<T>(what: &str, a: Option<T>, b: Option<T>) -> Result<Either<T>> {
    match (a, b) {
        (Some(a), None) => Ok(Either::Names(a)),
        (None, Some(b)) => Ok(Either::Indices(b)),
        _ => Err(Error::InvalidStrategy(format!("{what} needs exactly one of the name and \"edge_index\" forms"))),
    }
}

enum Either<T> {
    Names(T),
    Indices(T),
}

fn checked_index(net: &Network, e: EdgeId) -> Result<EdgeId> {
    if e < net.edge_count() {
        Ok(e)
    } else {
        Err(Error::InvalidEdgeIndex(e))
    }
}

fn resolve_ref(net: &Network, r: &EdgeRef) -> Result<EdgeId> {
    match r {
        EdgeRef::Index(e) => checked_index(net, *e),
        EdgeRef::Pair(t, h) => net.resolve_edge(t, h),
    }
}

pub fn flow_action_from_spec(net: &Network, paths: &[PathSpec]) -> Result<FlowAction> {
    let paths = paths
        .iter()
        .map(|p| {
            let amount = p.amount.parse()?;
            let edges = match one_of(
                "path",
                p.nodes.clone().map(|n| (n, vec![])),
                p.edge_index.clone().map(|e| (vec![], e)),
            )? {
                Either::Names((nodes, _)) => {
                    let nodes: Vec<&str> = nodes.iter().map(String::as_str).collect();
                    path_from_nodes(net, &nodes)?
                }
                Either::Indices((_, idx)) => idx,
            };
            PathFlow::new(net, edges, amount)
        })
        .collect::<Result<Vec<_>>>()?;
    let x = FlowAction::new(paths);
    check_feasible(&x, net)?;
    Ok(x)
}

pub fn attack_from_spec(net: &Network, atom: &AttackAtomSpec) -> Result<Attack> {
    let ids = match one_of(
        "attack",
        atom.edges.clone().map(|p| (p, vec![])),
        atom.edge_index.clone().map(|e| (vec![], e)),
    )? {
        Either::Names((pairs, _)) => pairs.iter().map(|(t, h)| net.resolve_edge(t, h)).collect::<Result<Vec<_>>>()?,
        Either::Indices((_, idx)) => idx,
    };
    Attack::new(net, ids)
}

pub fn flow_strategy_from_spec(net: &Network, spec: &FlowStrategySpec) -> Result<MixedFlowStrategy> {
    let atoms = spec
        .atoms
        .iter()
        .map(|a| Ok((flow_action_from_spec(net, &a.paths)?, a.prob.parse()?)))
        .collect::<Result<Vec<_>>>()?;
    MixedStrategy::new(atoms)
}

pub fn attack_strategy_from_spec(net: &Network, spec: &AttackStrategySpec) -> Result<MixedAttackStrategy> {
    let atoms =
        spec.atoms.iter().map(|a| Ok((attack_from_spec(net, a)?, a.prob.parse()?))).collect::<Result<Vec<_>>>()?;
    MixedStrategy::new(atoms)
}

pub fn parse_flow_strategy(net: &Network, text: &str) -> Result<MixedFlowStrategy> {
    flow_strategy_from_spec(net, &serde_json::from_str(text)?)
}

pub fn parse_attack_strategy(net: &Network, text: &str) -> Result<MixedAttackStrategy> {
    attack_strategy_from_spec(net, &serde_json::from_str(text)?)
}

pub fn parse_profile(net: &Network, text: &str) -> Result<ParsedProfile> {
    let spec: ProfileSpec = serde_json::from_str(text)?;
    Ok(ParsedProfile {
        sigma1: flow_strategy_from_spec(net, &spec.sigma1)?,
        sigma2: attack_strategy_from_spec(net, &spec.sigma2)?,
        construction: spec.construction,
        region: spec.region,
    })
}

/// Reads partition blocks, either `{"blocks": [...]}` or a bare list, each
/// block a list of edge indices or `[tail, head]` pairs.
pub fn parse_partition_blocks(net: &Network, text: &str) -> Result<Vec<Vec<EdgeId>>> {
    let blocks = match serde_json::from_str(text)? {
        PartitionFile::Wrapped { blocks } | PartitionFile::Bare(blocks) => blocks,
    };
    blocks.iter().map(|b| b.iter().map(|r| resolve_ref(net, r)).collect()).collect()
}

fn text(r: &crate::Rational) -> NumberText {
    NumberText::Text(r.to_string())
}

fn pair(net: &Network, e: EdgeId) -> (String, String) {
    let edge = net.edge(e);
    (net.node_name(edge.tail).to_string(), net.node_name(edge.head).to_string())
}

pub fn flow_action_to_spec(net: &Network, x: &FlowAction) -> Vec<PathSpec> {
    x.paths
        .iter()
        .map(|p| {
            if p.edges.iter().any(|&e| net.has_parallel(e)) {
                PathSpec { nodes: None, edge_index: Some(p.edges.clone()), amount: text(&p.amount) }
            } else {
                let nodes = p.node_names(net).into_iter().map(str::to_string).collect();
                PathSpec { nodes: Some(nodes), edge_index: None, amount: text(&p.amount) }
            }
        })
        .collect()
}

type AttackFields = (Option<Vec<(String, String)>>, Option<Vec<EdgeId>>);

fn attack_fields(net: &Network, mu: &Attack) -> AttackFields {
    if mu.edges.iter().any(|&e| net.has_parallel(e)) {
        (None, Some(mu.edges.iter().copied().collect()))
    } else {
        (Some(mu.edges.iter().map(|&e| pair(net, e)).collect()), None)
    }
}

pub fn flow_strategy_to_spec(net: &Network, s: &MixedFlowStrategy) -> FlowStrategySpec {
    FlowStrategySpec {
        atoms: s.iter().map(|(x, p)| FlowAtomSpec { prob: text(p), paths: flow_action_to_spec(net, x) }).collect(),
    }
}

pub fn attack_strategy_to_spec(net: &Network, s: &MixedAttackStrategy) -> AttackStrategySpec {
    AttackStrategySpec {
        atoms: s
            .iter()
            .map(|(mu, p)| {
                let (edges, edge_index) = attack_fields(net, mu);
                AttackAtomSpec { prob: text(p), edges, edge_index }
            })
            .collect(),
    }
}

pub fn profile_to_spec(net: &Network, profile: &EquilibriumProfile) -> ProfileSpec {
    ProfileSpec {
        construction: Some(profile.construction),
        region: Some(profile.region.clone()),
        sigma1: flow_strategy_to_spec(net, &profile.sigma1),
        sigma2: attack_strategy_to_spec(net, &profile.sigma2),
    }
}

fn edge_list(net: &Network, edges: &[EdgeId]) -> Value {
    Value::Array(edges.iter().map(|&e| json!(pair(net, e))).collect())
}

fn cut_json(net: &Network, cut: &CutSet) -> Value {
    json!({
        "edges": edge_list(net, &cut.edges),
        "edge_index": cut.edges,
        "capacity": cut.capacity,
        "source_side": cut.source_side.iter().map(|&v| net.node_name(v)).collect::<Vec<_>>(),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn analysis_json(net: &Network, a: &FlowAnalysis) -> Value {
    let per_edge_cheapest = a.per_edge_cheapest.as_ref().map(|r| {
        json!({
            "holds": r.holds,
            "witness": r.witness,
            "per_cut": r.per_cut.iter().map(|c| json!({
                "cut": edge_list(net, &c.cut.edges),
                "alphas": c.alphas,
                "holds": c.holds,
            })).collect::<Vec<_>>(),
        })
    });
    json!({
        "name": net.name(),
        "f_max": a.f_max,
        "t_min": a.t_min,
        "alpha": a.alpha,
        "x_star": { "paths": to_value(&flow_action_to_spec(net, &a.x_star)) },
        "min_cut": cut_json(net, &a.min_cut),
        "all_min_cuts": a.all_min_cuts.as_ref().map(|cs| cs.iter().map(|c| cut_json(net, c)).collect::<Vec<_>>()),
        "cheapest_paths_only": a.cheapest_paths_only,
        "per_edge_cheapest": per_edge_cheapest,
        "path_count": a.paths.as_ref().map(Vec::len),
        "notes": a.notes,
    })
}

pub fn profile_json(net: &Network, profile: &EquilibriumProfile) -> Value {
    to_value(&profile_to_spec(net, profile))
}

/// The report with best-response witnesses and cut edges written by name.
pub fn report_json(net: &Network, r: &VerificationReport) -> Value {
    let mut v = to_value(r);
    v["br1_witness"] = json!({ "paths": to_value(&flow_action_to_spec(net, &r.br1_witness)) });
    v["br2_witness"] = edge_list(net, &r.br2_witness.edges.iter().copied().collect::<Vec<_>>());
    if let Some(cuts) = v["cuts"].as_array_mut() {
        for (c, cut) in cuts.iter_mut().zip(&r.cuts) {
            c["cut_edge_names"] = edge_list(net, &cut.cut_edges);
        }
    }
    v
}

pub fn budget_json(net: &Network, b: &BudgetAnalysis) -> Value {
    let blocks = |bs: &[Vec<EdgeId>]| bs.iter().map(|blk| edge_list(net, blk)).collect::<Vec<_>>();
    json!({
        "b1_star": b.b1_star,
        "b2_lower": b.b2_lower,
        "n_star": b.n_star,
        "z_star": b.z_star,
        "partition": blocks(b.partition.blocks()),
        "per_cut": b.per_cut.as_ref().map(|cs| cs.iter().map(|c| json!({
            "cut": edge_list(net, &c.cut_edges),
            "z_star": c.z_star,
            "partition": blocks(&c.blocks),
        })).collect::<Vec<_>>()),
    })
}
