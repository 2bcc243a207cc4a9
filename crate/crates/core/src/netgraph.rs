//! Directed multigraph of unit-capacity edges with one source and two
//! terminals.
//!
//! Capacities above one are modelled as parallel unit edges, each with its own
//! [`EdgeId`]. Edge ids are stable: removing edges leaves holes rather than
//! renumbering, so ids computed on one network stay meaningful on every network
//! derived from it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
}

/// Message rates `(H0, H1, H2)`: the common messages wanted by both
/// terminals, and the private messages of the first and second terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Demand {
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
}

impl Demand {
    pub fn new(h0: u32, h1: u32, h2: u32) -> Self {
        Demand { h0, h1, h2 }
    }

    /// Rate the first terminal must receive.
    pub fn first(&self) -> u32 {
        self.h0 + self.h1
    }

    /// Rate the second terminal must receive.
    pub fn second(&self) -> u32 {
        self.h0 + self.h2
    }

    pub fn total(&self) -> u32 {
        self.h0 + self.h1 + self.h2
    }

    /// The same demand with the terminals' roles exchanged.
    pub fn mirrored(&self) -> Self {
        Demand { h0: self.h0, h1: self.h2, h2: self.h1 }
    }

    /// Every demand with `h0 + h1 + h2 <= max_total`, in lexicographic order.
    pub fn all_up_to(max_total: u32) -> Vec<Demand> {
        let mut out = Vec::new();
        for h0 in 0..=max_total {
            for h1 in 0..=max_total - h0 {
                for h2 in 0..=max_total - h0 - h1 {
                    out.push(Demand::new(h0, h1, h2));
                }
            }
        }
        out
    }
}

impl fmt::Display for Demand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h0, self.h1, self.h2)
    }
}

/// One unit edge produced by [`expand_capacities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitEdge<N> {
    pub id: EdgeId,
    pub tail: N,
    pub head: N,
}

/// Splits each weighted edge of capacity `c` into `c` parallel unit edges with
/// consecutive fresh ids, starting from zero.
pub fn expand_capacities<N: Clone>(weighted: &[(N, N, i64)]) -> Result<Vec<UnitEdge<N>>> {
    let mut out = Vec::new();
    for (i, (tail, head, cap)) in weighted.iter().enumerate() {
        if *cap <= 0 {
            return Err(Error::invalid(format!(
                "edge {i} has capacity {cap}; capacities must be positive integers"
            )));
        }
        for _ in 0..*cap {
            let id = EdgeId(out.len() as u32);
            out.push(UnitEdge { id, tail: tail.clone(), head: head.clone() });
        }
    }
    Ok(out)
}

/// Incremental construction of a [`Network`].
#[derive(Debug, Clone, Default)]
pub struct NetworkBuilder {
    labels: Vec<String>,
    by_label: BTreeMap<String, NodeId>,
    edges: Vec<Option<Edge>>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the node with this label, creating it if needed.
    pub fn node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.by_label.get(label) {
            return id;
        }
        let id = NodeId(self.labels.len() as u32);
        self.labels.push(label.to_string());
        self.by_label.insert(label.to_string(), id);
        id
    }

    pub fn lookup(&self, label: &str) -> Option<NodeId> {
        self.by_label.get(label).copied()
    }

    pub fn edge(&mut self, tail: NodeId, head: NodeId) -> Result<EdgeId> {
        for v in [tail, head] {
            if v.index() >= self.labels.len() {
                return Err(Error::UnknownNode(v));
            }
        }
        if tail == head {
            return Err(Error::invalid(format!(
                "self-loop on node '{}'",
                self.labels[tail.index()]
            )));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Some(Edge { id, tail, head }));
        Ok(id)
    }

    /// Adds `count` parallel unit edges and returns their ids.
    pub fn edges(&mut self, tail: NodeId, head: NodeId, count: u32) -> Result<Vec<EdgeId>> {
        (0..count).map(|_| self.edge(tail, head)).collect()
    }

    pub fn build(self, source: NodeId, terminals: [NodeId; 2]) -> Result<Network> {
        let n = self.labels.len();
        for v in [source, terminals[0], terminals[1]] {
            if v.index() >= n {
                return Err(Error::UnknownNode(v));
            }
        }
        if source == terminals[0] || source == terminals[1] || terminals[0] == terminals[1] {
            return Err(Error::invalid(
                "source and the two terminals must be pairwise distinct",
            ));
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for e in self.edges.iter().flatten() {
            out_adj[e.tail.index()].push(e.id);
            in_adj[e.head.index()].push(e.id);
        }
        Ok(Network {
            labels: self.labels,
            by_label: self.by_label,
            edges: self.edges,
            out_adj,
            in_adj,
            source,
            terminals,
        })
    }
}

/// Immutable unit-capacity multigraph with a designated source and terminal
/// pair. Cycles are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    labels: Vec<String>,
    by_label: BTreeMap<String, NodeId>,
    edges: Vec<Option<Edge>>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
    source: NodeId,
    terminals: [NodeId; 2],
}

impl Network {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn terminals(&self) -> [NodeId; 2] {
        self.terminals
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.labels.len() as u32).map(NodeId)
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    /// One past the largest edge id ever issued; sizes per-edge tables.
    pub fn edge_capacity(&self) -> usize {
        self.edges.len()
    }

    /// Live edges in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().flatten()
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges
            .get(id.index())
            .and_then(Option::as_ref)
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.by_label.get(label).copied()
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if v.index() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(v))
        }
    }

    /// Edges leaving `v`, in insertion order.
    pub fn out_edges(&self, v: NodeId) -> Result<&[EdgeId]> {
        self.check_node(v)?;
        Ok(&self.out_adj[v.index()])
    }

    pub fn in_edges(&self, v: NodeId) -> Result<&[EdgeId]> {
        self.check_node(v)?;
        Ok(&self.in_adj[v.index()])
    }

    /// A copy without the given edges. Node set and surviving edge ids are
    /// unchanged.
    pub fn remove_edges(&self, ids: &BTreeSet<EdgeId>) -> Result<Network> {
        let mut b = self.to_builder();
        for &id in ids {
            self.edge(id)?;
            b.edges[id.index()] = None;
        }
        b.build(self.source, self.terminals)
    }

    /// A builder seeded with this network's nodes and edges, so that further
    /// additions get fresh ids past the existing ones.
    pub fn to_builder(&self) -> NetworkBuilder {
        NetworkBuilder {
            labels: self.labels.clone(),
            by_label: self.by_label.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Number of parallel edges per ordered node pair.
    pub fn multiplicities(&self) -> BTreeMap<(NodeId, NodeId), u32> {
        let mut m = BTreeMap::new();
        for e in self.edges() {
            *m.entry((e.tail, e.head)).or_insert(0) += 1;
        }
        m
    }

    /// Whether the live edges contain a directed cycle.
    pub fn has_cycle(&self) -> bool {
        let live: BTreeSet<EdgeId> = self.edges().map(|e| e.id).collect();
        crate::flow::topological_edge_order(self, &live).is_err()
    }
}
