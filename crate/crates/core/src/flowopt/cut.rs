use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::flowopt::residual::Residual;
use crate::netmodel::{EdgeId, Network, NodeId};
use crate::rational::Rational;

pub const DEFAULT_NODE_LIMIT: usize = 20;

/// An s-t cut: the source side and the edges leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    pub source_side: BTreeSet<NodeId>,
    /// Sorted by edge index.
    pub edges: Vec<EdgeId>,
    pub capacity: Rational,
}

impl CutSet {
    /// The cut induced by `source_side`, which must contain the source and
    /// not the sink.
    pub fn from_source_side(net: &Network, source_side: BTreeSet<NodeId>) -> Self {
        debug_assert!(source_side.contains(&net.source()) && !source_side.contains(&net.sink()));
        let edges: Vec<EdgeId> = (0..net.edge_count())
            .filter(|&e| {
                let edge = net.edge(e);
                source_side.contains(&edge.tail) && !source_side.contains(&edge.head)
            })
            .collect();
        let capacity = edges.iter().map(|&e| &net.edge(e).capacity).sum();
        CutSet { source_side, edges, capacity }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Canonical min-cut: the source side is everything reachable from the source
/// in the residual graph of a maximum flow.
pub fn min_cut(net: &Network) -> CutSet {
    let mut residual = Residual::new(net);
    residual.run_max_flow();
    let reach = residual.reachable_from_source();
    let side = (0..net.node_count()).filter(|&v| reach[v]).collect();
    CutSet::from_source_side(net, side)
}

/// Every minimum cut, by exhaustive enumeration over the inner nodes,
/// deduplicated by edge set. The canonical cut comes first, the rest follow
/// in enumeration order.
pub fn enumerate_min_cuts(net: &Network, node_limit: usize) -> Result<Vec<CutSet>> {
    let inner: Vec<NodeId> = (0..net.node_count()).filter(|&v| v != net.source() && v != net.sink()).collect();
    if inner.len() > node_limit || inner.len() >= 64 {
        return Err(Error::TooManyNodes { nodes: net.node_count(), limit: node_limit });
    }
    let canonical = min_cut(net);
    let mut seen = BTreeSet::from([canonical.edges.clone()]);
    let mut cuts = vec![canonical.clone()];
    for mask in 0u64..(1u64 << inner.len()) {
        let mut side = BTreeSet::from([net.source()]);
        side.extend(inner.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        let cut = CutSet::from_source_side(net, side);
        if cut.capacity == canonical.capacity && seen.insert(cut.edges.clone()) {
            cuts.push(cut);
        }
    }
    Ok(cuts)
}
