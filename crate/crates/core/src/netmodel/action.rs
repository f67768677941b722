use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::netmodel::network::{EdgeId, Network, NodeId};
use crate::rational::Rational;

/// Flow of `amount` units along one simple source-sink path, stored as the
/// edge sequence so that parallel edges stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathFlow {
    pub edges: Vec<EdgeId>,
    pub amount: Rational,
}

impl PathFlow {
    /// Checks that `edges` is a simple source-sink path of `net`.
    pub fn new(net: &Network, edges: Vec<EdgeId>, amount: Rational) -> Result<Self> {
        validate_path(net, &edges)?;
        if amount.is_negative() {
            return Err(Error::InvalidPath("negative path amount".into()));
        }
        Ok(PathFlow { edges, amount })
    }

    /// Builds a path from node names; consecutive pairs must resolve to a
    /// unique edge.
    pub fn from_nodes(net: &Network, nodes: &[&str], amount: Rational) -> Result<Self> {
        let edges = path_from_nodes(net, nodes)?;
        PathFlow::new(net, edges, amount)
    }

    pub fn node_sequence(&self, net: &Network) -> Vec<NodeId> {
        let mut out = vec![net.source()];
        out.extend(self.edges.iter().map(|&e| net.edge(e).head));
        out
    }

    pub fn node_names<'a>(&self, net: &'a Network) -> Vec<&'a str> {
        self.node_sequence(net).into_iter().map(|v| net.node_name(v)).collect()
    }
}

pub fn path_from_nodes(net: &Network, nodes: &[&str]) -> Result<Vec<EdgeId>> {
    if nodes.len() < 2 {
        return Err(Error::InvalidPath("a path needs at least two nodes".into()));
    }
    nodes.windows(2).map(|w| net.resolve_edge(w[0], w[1])).collect()
}

/// A path is valid iff it starts at the source, ends at the sink, is
/// contiguous and never revisits a node.
pub fn validate_path(net: &Network, edges: &[EdgeId]) -> Result<()> {
    let Some(&first) = edges.first() else {
        return Err(Error::InvalidPath("empty path".into()));
    };
    for &e in edges {
        if e >= net.edge_count() {
            return Err(Error::InvalidEdgeIndex(e));
        }
    }
    if net.edge(first).tail != net.source() {
        return Err(Error::InvalidPath("path does not start at the source".into()));
    }
    let mut seen = BTreeSet::from([net.source()]);
    let mut at = net.source();
    for &e in edges {
        let edge = net.edge(e);
        if edge.tail != at {
            return Err(Error::InvalidPath(format!("edge {} does not continue the path", net.edge_label(e))));
        }
        if !seen.insert(edge.head) {
            return Err(Error::InvalidPath(format!("node {} repeated", net.node_name(edge.head))));
        }
        at = edge.head;
    }
    if at != net.sink() {
        return Err(Error::InvalidPath("path does not end at the sink".into()));
    }
    Ok(())
}

/// A defender pure action: a list of simple path flows. The empty list is the
/// no-flow action.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlowAction {
    pub paths: Vec<PathFlow>,
}

impl FlowAction {
    pub fn none() -> Self {
        FlowAction::default()
    }

    pub fn new(paths: Vec<PathFlow>) -> Self {
        FlowAction { paths }
    }

    pub fn is_none(&self) -> bool {
        self.paths.iter().all(|p| p.amount.is_zero())
    }

    /// Same action with duplicate paths merged, zero paths dropped and paths
    /// sorted by edge sequence. Two actions are the same iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> FlowAction {
        let mut merged: BTreeMap<Vec<EdgeId>, Rational> = BTreeMap::new();
        for p in &self.paths {
            *merged.entry(p.edges.clone()).or_default() += &p.amount;
        }
        FlowAction {
            paths: merged
                .into_iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(edges, amount)| PathFlow { edges, amount })
                .collect(),
        }
    }

    pub fn same_as(&self, other: &FlowAction) -> bool {
        self.canonical() == other.canonical()
    }

    /// Every path amount multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> FlowAction {
        FlowAction {
            paths: self.paths.iter().map(|p| PathFlow { edges: p.edges.clone(), amount: &p.amount * factor }).collect(),
        }
    }

    pub fn validate(&self, net: &Network) -> Result<()> {
        for p in &self.paths {
            validate_path(net, &p.edges)?;
            if p.amount.is_negative() {
                return Err(Error::InvalidPath("negative path amount".into()));
            }
        }
        Ok(())
    }
}

/// An attacker pure action: the set of disrupted edges. Empty means no attack.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attack {
    pub edges: BTreeSet<EdgeId>,
}

impl Attack {
    pub fn none() -> Self {
        Attack::default()
    }

    pub fn new(net: &Network, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        if let Some(&bad) = edges.iter().find(|&&e| e >= net.edge_count()) {
            return Err(Error::InvalidEdgeIndex(bad));
        }
        Ok(Attack { edges })
    }

    /// Attack on every edge of the network.
    pub fn all(net: &Network) -> Self {
        Attack { edges: (0..net.edge_count()).collect() }
    }

    pub fn from_pairs(net: &Network, pairs: &[(&str, &str)]) -> Result<Self> {
        let edges = pairs.iter().map(|(t, h)| net.resolve_edge(t, h)).collect::<Result<Vec<_>>>()?;
        Attack::new(net, edges)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_none(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True iff no edge of `path` is attacked.
    pub fn spares(&self, path: &[EdgeId]) -> bool {
        path.iter().all(|e| !self.edges.contains(e))
    }
}
