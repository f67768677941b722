use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::netmodel::{path_cost, EdgeId, Network};
use crate::rational::Rational;

pub const DEFAULT_PATH_LIMIT: usize = 10_000;

/// A simple source-sink path with its per-unit transport cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInfo {
    pub edges: Vec<EdgeId>,
    pub cost: Rational,
}

/// All simple source-sink paths, depth-first in canonical edge order.
pub fn enumerate_paths(net: &Network, limit: usize) -> Result<Vec<PathInfo>> {
    fn dfs(
        net: &Network,
        v: usize,
        on_path: &mut Vec<bool>,
        stack: &mut Vec<EdgeId>,
        out: &mut Vec<PathInfo>,
        limit: usize,
    ) -> Result<()> {
        if v == net.sink() {
            if out.len() == limit {
                return Err(Error::TooManyPaths { limit });
            }
            out.push(PathInfo { edges: stack.clone(), cost: path_cost(stack, net) });
            return Ok(());
        }
        for &e in net.out_edges(v) {
            let h = net.edge(e).head;
            if on_path[h] {
                continue;
            }
            on_path[h] = true;
            stack.push(e);
            dfs(net, h, on_path, stack, out, limit)?;
            stack.pop();
            on_path[h] = false;
        }
        Ok(())
    }

    let mut on_path = vec![false; net.node_count()];
    on_path[net.source()] = true;
    let mut out = Vec::new();
    dfs(net, net.source(), &mut on_path, &mut Vec::new(), &mut out, limit)?;
    Ok(out)
}

/// Cheapest per-unit transport cost of any source-sink path (Dijkstra; costs
/// are nonnegative so the cheapest walk is a simple path).
pub fn alpha(net: &Network) -> Rational {
    let mut dist: Vec<Option<Rational>> = vec![None; net.node_count()];
    let mut done = vec![false; net.node_count()];
    dist[net.source()] = Some(Rational::zero());
    let mut heap = BinaryHeap::from([Reverse((Rational::zero(), net.source()))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &e in net.out_edges(v) {
            let h = net.edge(e).head;
            let nd = &d + &net.edge(e).cost;
            if dist[h].as_ref().is_none_or(|old| &nd < old) {
                dist[h] = Some(nd.clone());
                heap.push(Reverse((nd, h)));
            }
        }
    }
    dist[net.sink()].clone().expect("validated networks have a source-sink path")
}
