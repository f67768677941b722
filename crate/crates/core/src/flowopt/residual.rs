use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::netmodel::{EdgeId, Network, NodeId};
use crate::rational::Rational;

/// Residual graph with two arcs per edge: `2e` forward, `2e + 1` backward.
/// Adjacency lists follow canonical edge order, so every search is
/// deterministic.
pub(crate) struct Residual {
    head: Vec<NodeId>,
    residual: Vec<Rational>,
    cost: Vec<Rational>,
    adj: Vec<Vec<usize>>,
    source: NodeId,
    sink: NodeId,
}

impl Residual {
    pub(crate) fn new(net: &Network) -> Self {
        let m = net.edge_count();
        let mut head = Vec::with_capacity(2 * m);
        let mut residual = Vec::with_capacity(2 * m);
        let mut cost = Vec::with_capacity(2 * m);
        let mut adj = vec![Vec::new(); net.node_count()];
        for (i, e) in net.edges().iter().enumerate() {
            head.push(e.head);
            residual.push(e.capacity.clone());
            cost.push(e.cost.clone());
            adj[e.tail].push(2 * i);
            head.push(e.tail);
            residual.push(Rational::zero());
            cost.push(-&e.cost);
            adj[e.head].push(2 * i + 1);
        }
        Residual { head, residual, cost, adj, source: net.source(), sink: net.sink() }
    }

    fn tail(&self, arc: usize) -> NodeId {
        self.head[arc ^ 1]
    }

    /// Flow on each original edge (= residual of its backward arc).
    pub(crate) fn edge_flows(&self) -> Vec<Rational> {
        (0..self.head.len() / 2).map(|e| self.residual[2 * e + 1].clone()).collect()
    }

    /// Nodes reachable from the source through arcs with positive residual.
    pub(crate) fn reachable_from_source(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[v] {
                let h = self.head[a];
                if !seen[h] && self.residual[a].is_positive() {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen
    }

    fn augment(&mut self, arcs: &[usize]) -> Rational {
        let amount = arcs.iter().map(|&a| &self.residual[a]).min().cloned().unwrap_or_default();
        for &a in arcs {
            self.residual[a] -= &amount;
            self.residual[a ^ 1] += &amount;
        }
        amount
    }

    fn trace(&self, parent: &[Option<usize>]) -> Vec<usize> {
        let mut arcs = Vec::new();
        let mut v = self.sink;
        while let Some(a) = parent[v] {
            arcs.push(a);
            v = self.tail(a);
        }
        arcs.reverse();
        arcs
    }

    /// Fewest-arc augmenting path by BFS.
    fn bfs_path(&self) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            if v == self.sink {
                return Some(self.trace(&parent));
            }
            for &a in &self.adj[v] {
                let h = self.head[a];
                if !seen[h] && self.residual[a].is_positive() {
                    seen[h] = true;
                    parent[h] = Some(a);
                    queue.push_back(h);
                }
            }
        }
        None
    }

    /// Saturates the network along shortest augmenting paths. Returns the
    /// total amount pushed.
    pub(crate) fn run_max_flow(&mut self) -> Rational {
        let mut total = Rational::zero();
        while let Some(path) = self.bfs_path() {
            total += self.augment(&path);
        }
        total
    }

    /// Successive shortest paths with node potentials (Dijkstra on reduced
    /// costs). Requires nonnegative edge costs.
    pub(crate) fn run_min_cost_max_flow(&mut self) -> Rational {
        let n = self.adj.len();
        let mut potential = vec![Rational::zero(); n];
        let mut total = Rational::zero();
        loop {
            let mut dist: Vec<Option<Rational>> = vec![None; n];
            let mut parent: Vec<Option<usize>> = vec![None; n];
            let mut done = vec![false; n];
            dist[self.source] = Some(Rational::zero());
            let mut heap = BinaryHeap::from([Reverse((Rational::zero(), self.source))]);
            while let Some(Reverse((d, v))) = heap.pop() {
                if done[v] {
                    continue;
                }
                done[v] = true;
                for &a in &self.adj[v] {
                    if !self.residual[a].is_positive() {
                        continue;
                    }
                    let h = self.head[a];
                    let nd = &d + &self.cost[a] + &potential[v] - &potential[h];
                    let better = match &dist[h] {
                        None => true,
                        Some(old) => &nd < old,
                    };
                    if better && !done[h] {
                        dist[h] = Some(nd.clone());
                        parent[h] = Some(a);
                        heap.push(Reverse((nd, h)));
                    }
                }
            }
            let Some(dt) = dist[self.sink].clone() else {
                break;
            };
            for v in 0..n {
                let step = match &dist[v] {
                    Some(d) if d < &dt => d.clone(),
                    _ => dt.clone(),
                };
                potential[v] += step;
            }
            let path = self.trace(&parent);
            total += self.augment(&path);
        }
        total
    }
}

/// Splits an edge flow into simple source-sink path flows (BFS over edges with
/// remaining positive flow, canonical order). Circulations left over are
/// dropped.
pub(crate) fn decompose(net: &Network, flows: &[Rational]) -> Vec<(Vec<EdgeId>, Rational)> {
    let mut remaining = flows.to_vec();
    let mut out = Vec::new();
    loop {
        let mut parent: Vec<Option<EdgeId>> = vec![None; net.node_count()];
        let mut seen = vec![false; net.node_count()];
        seen[net.source()] = true;
        let mut queue = VecDeque::from([net.source()]);
        while let Some(v) = queue.pop_front() {
            if v == net.sink() {
                break;
            }
            for &e in net.out_edges(v) {
                let h = net.edge(e).head;
                if !seen[h] && remaining[e].is_positive() {
                    seen[h] = true;
                    parent[h] = Some(e);
                    queue.push_back(h);
                }
            }
        }
        if !seen[net.sink()] {
            break;
        }
        let mut path = Vec::new();
        let mut v = net.sink();
        while let Some(e) = parent[v] {
            path.push(e);
            v = net.edge(e).tail;
        }
        path.reverse();
        let amount = path.iter().map(|&e| &remaining[e]).min().cloned().unwrap_or_default();
        for &e in &path {
            remaining[e] -= &amount;
        }
        out.push((path, amount));
    }
    out
}
