use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Rational,
    pub cost: Rational,
}

/// A validated capacitated digraph with per-edge transport cost and a
/// distinguished source and sink.
///
/// The position of an edge in [`Network::edges`] is its canonical index; every
/// deterministic tie-break in the crate keys off it. Parallel edges are allowed
/// and are told apart only by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    name: String,
    nodes: Vec<String>,
    node_index: HashMap<String, NodeId>,
    source: NodeId,
    sink: NodeId,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
}

/// Source or sink field: a single node, or a list (rejected with a hint).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Terminal {
    One(String),
    Many(Vec<String>),
}

/// A numeric field that may be given as a string (`"9/2"`, `"0.5"`) or a JSON
/// integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Text(String),
    Int(i64),
}

impl NumberText {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            NumberText::Text(s) => s.parse(),
            NumberText::Int(n) => Ok(Rational::from_integer(*n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub tail: String,
    pub head: String,
    pub capacity: NumberText,
    pub cost: NumberText,
}

/// Unvalidated network description, the JSON wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default)]
    pub name: String,
    pub source: Terminal,
    pub sink: Terminal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    pub edges: Vec<EdgeSpec>,
}

impl NetworkSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Validates a raw description into a [`Network`].
///
/// When `nodes` is omitted the node list is the source followed by edge
/// endpoints in order of first appearance.
pub fn validate_network(raw: &NetworkSpec) -> Result<Network> {
    let source = match &raw.source {
        Terminal::One(s) => s.clone(),
        Terminal::Many(v) if v.len() == 1 => v[0].clone(),
        Terminal::Many(_) => return Err(Error::MultipleTerminals),
    };
    let sink = match &raw.sink {
        Terminal::One(s) => s.clone(),
        Terminal::Many(v) if v.len() == 1 => v[0].clone(),
        Terminal::Many(_) => return Err(Error::MultipleTerminals),
    };
    if source == sink {
        return Err(Error::SourceIsSink(source));
    }

    let mut nodes: Vec<String> = Vec::new();
    let mut node_index: HashMap<String, NodeId> = HashMap::new();
    let declared = raw.nodes.is_some();
    if let Some(list) = &raw.nodes {
        for n in list {
            if !node_index.contains_key(n) {
                node_index.insert(n.clone(), nodes.len());
                nodes.push(n.clone());
            }
        }
    }
    let mut intern = |name: &str, nodes: &mut Vec<String>| -> Result<NodeId> {
        if let Some(&i) = node_index.get(name) {
            return Ok(i);
        }
        if declared {
            return Err(Error::MissingNode(name.to_string()));
        }
        node_index.insert(name.to_string(), nodes.len());
        nodes.push(name.to_string());
        Ok(nodes.len() - 1)
    };
    let s = intern(&source, &mut nodes)?;
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (index, e) in raw.edges.iter().enumerate() {
        let tail = intern(&e.tail, &mut nodes)?;
        let head = intern(&e.head, &mut nodes)?;
        if tail == head {
            return Err(Error::SelfLoop { index, node: e.tail.clone() });
        }
        let capacity = e.capacity.parse()?;
        let cost = e.cost.parse()?;
        if capacity.is_negative() {
            return Err(Error::NegativeCapacity { index, tail: e.tail.clone(), head: e.head.clone() });
        }
        if cost.is_negative() {
            return Err(Error::NegativeCost { index, tail: e.tail.clone(), head: e.head.clone() });
        }
        edges.push(Edge { tail, head, capacity, cost });
    }
    let t = intern(&sink, &mut nodes)?;

    let mut out_edges = vec![Vec::new(); nodes.len()];
    for (i, e) in edges.iter().enumerate() {
        out_edges[e.tail].push(i);
    }
    let net = Network { name: raw.name.clone(), nodes, node_index, source: s, sink: t, edges, out_edges };
    if !net.sink_reachable() {
        return Err(Error::NoPathSourceToSink);
    }
    Ok(net)
}

impl Network {
    pub fn from_json(text: &str) -> Result<Self> {
        validate_network(&NetworkSpec::from_json(text)?)
    }

    /// Convenience constructor: `(tail, head, capacity, cost)` with rational
    /// literals.
    pub fn from_edges(source: &str, sink: &str, edges: &[(&str, &str, &str, &str)]) -> Result<Self> {
        let spec = NetworkSpec {
            name: String::new(),
            source: Terminal::One(source.into()),
            sink: Terminal::One(sink.into()),
            nodes: None,
            edges: edges
                .iter()
                .map(|(t, h, c, b)| EdgeSpec {
                    tail: (*t).into(),
                    head: (*h).into(),
                    capacity: NumberText::Text((*c).into()),
                    cost: NumberText::Text((*b).into()),
                })
                .collect(),
        };
        validate_network(&spec)
    }

    pub fn to_spec(&self) -> NetworkSpec {
        NetworkSpec {
            name: self.name.clone(),
            source: Terminal::One(self.nodes[self.source].clone()),
            sink: Terminal::One(self.nodes[self.sink].clone()),
            nodes: Some(self.nodes.clone()),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    tail: self.nodes[e.tail].clone(),
                    head: self.nodes[e.head].clone(),
                    capacity: NumberText::Text(e.capacity.to_string()),
                    cost: NumberText::Text(e.cost.to_string()),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_name(&self, v: NodeId) -> &str {
        &self.nodes[v]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.node_index.get(name).copied()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Outgoing edges of `v` in canonical order.
    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    /// `"tail->head"`, for messages and reports.
    pub fn edge_label(&self, e: EdgeId) -> String {
        let edge = &self.edges[e];
        format!("{}->{}", self.nodes[edge.tail], self.nodes[edge.head])
    }

    /// All edges from `tail` to `head`, in canonical order.
    pub fn edges_between(&self, tail: NodeId, head: NodeId) -> Vec<EdgeId> {
        self.out_edges[tail].iter().copied().filter(|&e| self.edges[e].head == head).collect()
    }

    pub fn has_parallel(&self, e: EdgeId) -> bool {
        let edge = &self.edges[e];
        self.edges_between(edge.tail, edge.head).len() > 1
    }

    /// Resolves a node-name pair to an edge index. Fails on parallel edges.
    pub fn resolve_edge(&self, tail: &str, head: &str) -> Result<EdgeId> {
        let unknown = || Error::UnknownEdge { tail: tail.into(), head: head.into() };
        let t = self.node_id(tail).ok_or_else(unknown)?;
        let h = self.node_id(head).ok_or_else(unknown)?;
        match self.edges_between(t, h).as_slice() {
            [] => Err(unknown()),
            [e] => Ok(*e),
            _ => Err(Error::AmbiguousEdge { tail: tail.into(), head: head.into() }),
        }
    }

    fn sink_reachable(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(v) = queue.pop_front() {
            if v == self.sink {
                return true;
            }
            for &e in &self.out_edges[v] {
                let h = self.edges[e].head;
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn bridge() -> Network {
        Network::from_edges(
            "s",
            "t",
            &[
                ("s", "1", "2", "1"),
                ("1", "2", "1", "1"),
                ("2", "t", "2", "1"),
                ("s", "2", "1", "1"),
                ("1", "t", "1", "1"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bridge_network_is_valid() {
        let net = bridge();
        assert_eq!(net.edge_count(), 5);
        assert_eq!(net.node_count(), 4);
        let caps: Vec<_> = net.edges().iter().map(|e| e.capacity.clone()).collect();
        assert_eq!(caps, vec![q("2"), q("1"), q("2"), q("1"), q("1")]);
        assert_eq!(net.resolve_edge("s", "2").unwrap(), 3);
    }

    #[test]
    fn negative_capacity_rejected() {
        let err = Network::from_edges("s", "t", &[("s", "t", "-1", "1")]).unwrap_err();
        assert!(matches!(err, Error::NegativeCapacity { index: 0, .. }));
    }

    #[test]
    fn negative_cost_rejected() {
        let err = Network::from_edges("s", "t", &[("s", "t", "1", "-1/2")]).unwrap_err();
        assert!(matches!(err, Error::NegativeCost { .. }));
    }

    #[test]
    fn unreachable_sink_rejected() {
        let err = Network::from_edges("s", "t", &[("s", "a", "1", "1"), ("t", "a", "1", "1")]).unwrap_err();
        assert_eq!(err, Error::NoPathSourceToSink);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Network::from_edges("s", "t", &[("s", "t", "1", "1"), ("a", "a", "1", "1")]).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { index: 1, .. }));
    }

    #[test]
    fn undeclared_node_rejected() {
        let text = r#"{"source":"s","sink":"t","nodes":["s","t"],
            "edges":[{"tail":"s","head":"x","capacity":"1","cost":"1"},
                     {"tail":"x","head":"t","capacity":"1","cost":"1"}]}"#;
        assert_eq!(Network::from_json(text).unwrap_err(), Error::MissingNode("x".into()));
    }

    #[test]
    fn parallel_edges_allowed_but_ambiguous_by_name() {
        let net = Network::from_edges("s", "t", &[("s", "t", "1", "1"), ("s", "t", "1", "2")]).unwrap();
        assert!(net.has_parallel(0));
        assert!(matches!(net.resolve_edge("s", "t"), Err(Error::AmbiguousEdge { .. })));
    }

    #[test]
    fn multiple_sources_rejected_with_hint() {
        let text = r#"{"source":["a","b"],"sink":"t",
            "edges":[{"tail":"a","head":"t","capacity":"1","cost":"1"}]}"#;
        let err = Network::from_json(text).unwrap_err();
        assert_eq!(err, Error::MultipleTerminals);
        assert!(err.to_string().contains("super-source"));
    }

    #[test]
    fn integer_json_numbers_accepted() {
        let text = r#"{"source":"s","sink":"t",
            "edges":[{"tail":"s","head":"t","capacity":5,"cost":"0.5"}]}"#;
        let net = Network::from_json(text).unwrap();
        assert_eq!(net.edge(0).capacity, q("5"));
        assert_eq!(net.edge(0).cost, q("1/2"));
    }

    #[test]
    fn spec_round_trip() {
        let net = bridge();
        let text = serde_json::to_string(&net.to_spec()).unwrap();
        assert_eq!(Network::from_json(&text).unwrap(), net);
    }
}
