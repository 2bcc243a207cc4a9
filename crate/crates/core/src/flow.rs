//! Maximum flow, minimum cut, and decomposition of an integral flow into
//! edge-disjoint paths.
//!
//! Every edge has unit capacity, so a flow is just the set of edges that carry
//! one unit. Multiple sinks are joined through an internal super-sink that is
//! never visible in results.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgraph::{EdgeId, Network, NodeId};

/// An ordered edge progression. Consecutive edges meet head to tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgePath {
    pub edges: Vec<EdgeId>,
}

impl EdgePath {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        EdgePath { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }

    /// Visited nodes, starting with the tail of the first edge.
    pub fn nodes(&self, net: &Network) -> Result<Vec<NodeId>> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        for (i, &id) in self.edges.iter().enumerate() {
            let e = net.edge(id)?;
            if i == 0 {
                out.push(e.tail);
            }
            out.push(e.head);
        }
        Ok(out)
    }

    /// Whether `v` is visited strictly between the endpoints.
    pub fn passes_through(&self, net: &Network, v: NodeId) -> Result<bool> {
        let nodes = self.nodes(net)?;
        Ok(nodes.len() > 2 && nodes[1..nodes.len() - 1].contains(&v))
    }

    /// Checks contiguity, endpoints, and that no edge repeats.
    pub fn validate(&self, net: &Network, from: NodeId, to: NodeId) -> Result<()> {
        let bad = |msg: String| Err(Error::InvariantCorruption(msg));
        if self.edges.is_empty() {
            return bad("empty path".into());
        }
        let mut seen = BTreeSet::new();
        let mut at = from;
        for &id in &self.edges {
            let e = net.edge(id)?;
            if e.tail != at {
                return bad(format!("path breaks at edge {id}"));
            }
            if !seen.insert(id) {
                return bad(format!("path repeats edge {id}"));
            }
            at = e.head;
        }
        if at != to {
            return bad(format!("path ends at {at}, expected {to}"));
        }
        Ok(())
    }
}

impl From<Vec<EdgeId>> for EdgePath {
    fn from(edges: Vec<EdgeId>) -> Self {
        EdgePath { edges }
    }
}

/// An integral unit-capacity flow from one source into a set of sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u32,
    pub source: NodeId,
    pub sinks: Vec<NodeId>,
    carrying: BTreeSet<EdgeId>,
    absorbed: BTreeMap<NodeId, u32>,
    source_side: BTreeSet<NodeId>,
}

impl FlowResult {
    /// Wraps an arbitrary edge set as a flow. The amount each sink absorbs is
    /// its net inflow, and the value is the source's net outflow. No
    /// conservation check is made here; [`decompose_paths`] performs it.
    pub fn from_edges(
        net: &Network,
        source: NodeId,
        sinks: &[NodeId],
        carrying: BTreeSet<EdgeId>,
    ) -> Result<Self> {
        let mut balance: BTreeMap<NodeId, i64> = BTreeMap::new();
        for &id in &carrying {
            let e = net.edge(id)?;
            *balance.entry(e.tail).or_default() -= 1;
            *balance.entry(e.head).or_default() += 1;
        }
        let value = -balance.get(&source).copied().unwrap_or(0);
        let absorbed = sinks
            .iter()
            .map(|&t| (t, balance.get(&t).copied().unwrap_or(0).max(0) as u32))
            .collect();
        Ok(FlowResult {
            value: value.max(0) as u32,
            source,
            sinks: sinks.to_vec(),
            carrying,
            absorbed,
            source_side: BTreeSet::new(),
        })
    }

    /// Units on edge `e` (0 or 1).
    pub fn flow_on(&self, e: EdgeId) -> u8 {
        u8::from(self.carrying.contains(&e))
    }

    pub fn carrying_edges(&self) -> &BTreeSet<EdgeId> {
        &self.carrying
    }

    /// Units delivered to sink `t`.
    pub fn absorbed_at(&self, t: NodeId) -> u32 {
        self.absorbed.get(&t).copied().unwrap_or(0)
    }

    /// Nodes reachable from the source in the final residual graph. Empty for
    /// flows built with [`FlowResult::from_edges`].
    pub fn source_side(&self) -> &BTreeSet<NodeId> {
        &self.source_side
    }

    /// Capacity of the cut `(source_side, rest)`, counting the internal
    /// super-sink arcs of any sink left on the source side.
    pub fn cut_capacity(&self, net: &Network) -> u64 {
        let crossing = net
            .edges()
            .filter(|e| self.source_side.contains(&e.tail) && !self.source_side.contains(&e.head))
            .count() as u64;
        let stranded = self.sinks.iter().filter(|t| self.source_side.contains(t)).count() as u64;
        crossing + stranded * super_sink_multiplicity(net) as u64
    }
}

fn super_sink_multiplicity(net: &Network) -> u32 {
    net.edge_count() as u32
}

#[derive(Clone, Copy)]
enum Arc {
    Forward(EdgeId),
    Backward(EdgeId),
    ToSuper(usize),
}

/// Shortest-augmenting-path maximum flow from `src` into `sinks`.
///
/// Ties are broken by ascending edge id so results are reproducible.
pub fn max_flow(net: &Network, src: NodeId, sinks: &[NodeId]) -> Result<FlowResult> {
    let n = net.node_count();
    for &v in std::iter::once(&src).chain(sinks) {
        if v.index() >= n {
            return Err(Error::UnknownNode(v));
        }
    }
    if sinks.is_empty() {
        return Err(Error::invalid("max_flow needs at least one sink"));
    }
    if sinks.contains(&src) {
        return Err(Error::invalid("the source cannot be a sink"));
    }
    let sinks: Vec<NodeId> = {
        let set: BTreeSet<NodeId> = sinks.iter().copied().collect();
        set.into_iter().collect()
    };

    // Residual arcs per node, sorted by edge id.
    let mut arcs: Vec<Vec<(EdgeId, bool)>> = vec![Vec::new(); n];
    for e in net.edges() {
        arcs[e.tail.index()].push((e.id, true));
        arcs[e.head.index()].push((e.id, false));
    }
    for list in &mut arcs {
        list.sort_unstable_by_key(|&(id, fwd)| (id, !fwd));
    }
    let mut sink_slot = vec![None; n];
    for (i, t) in sinks.iter().enumerate() {
        sink_slot[t.index()] = Some(i);
    }
    let sink_cap = super_sink_multiplicity(net);

    let mut flow = vec![false; net.edge_capacity()];
    let mut sink_flow = vec![0u32; sinks.len()];
    let super_node = n;

    loop {
        let mut pred: Vec<Option<Arc>> = vec![None; n + 1];
        let mut seen = vec![false; n + 1];
        seen[src.index()] = true;
        let mut queue = VecDeque::from([src.index()]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &(id, fwd) in &arcs[v] {
                let e = net.edge(id)?;
                let (next, arc) = if fwd && !flow[id.index()] {
                    (e.head.index(), Arc::Forward(id))
                } else if !fwd && flow[id.index()] {
                    (e.tail.index(), Arc::Backward(id))
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    pred[next] = Some(arc);
                    queue.push_back(next);
                }
            }
            if let Some(slot) = sink_slot[v] {
                if sink_flow[slot] < sink_cap && !seen[super_node] {
                    seen[super_node] = true;
                    pred[super_node] = Some(Arc::ToSuper(slot));
                    break 'bfs;
                }
            }
        }

        if !seen[super_node] {
            let source_side = (0..n).filter(|&v| seen[v]).map(|v| NodeId(v as u32)).collect();
            let carrying: BTreeSet<EdgeId> =
                net.edges().filter(|e| flow[e.id.index()]).map(|e| e.id).collect();
            let absorbed = sinks.iter().zip(&sink_flow).map(|(&t, &f)| (t, f)).collect();
            return Ok(FlowResult {
                value: sink_flow.iter().sum(),
                source: src,
                sinks,
                carrying,
                absorbed,
                source_side,
            });
        }

        let mut at = super_node;
        while at != src.index() {
            match pred[at].expect("bfs predecessor") {
                Arc::ToSuper(slot) => {
                    sink_flow[slot] += 1;
                    at = sinks[slot].index();
                }
                Arc::Forward(id) => {
                    flow[id.index()] = true;
                    at = net.edge(id)?.tail.index();
                }
                Arc::Backward(id) => {
                    flow[id.index()] = false;
                    at = net.edge(id)?.head.index();
                }
            }
        }
    }
}

pub fn min_cut_value(net: &Network, src: NodeId, sinks: &[NodeId]) -> Result<u32> {
    Ok(max_flow(net, src, sinks)?.value)
}

/// Splits `flow` into `flow.value` pairwise edge-disjoint paths from its
/// source, each ending at one of its sinks. Circulations are dropped.
pub fn decompose_paths(net: &Network, flow: &FlowResult) -> Result<Vec<EdgePath>> {
    let src = flow.source;
    let mut out_edges: BTreeMap<NodeId, VecDeque<EdgeId>> = BTreeMap::new();
    let mut balance: BTreeMap<NodeId, i64> = BTreeMap::new();
    for &id in &flow.carrying {
        let e = net.edge(id)?;
        out_edges.entry(e.tail).or_default().push_back(id);
        *balance.entry(e.tail).or_default() -= 1;
        *balance.entry(e.head).or_default() += 1;
    }
    for v in net.nodes() {
        let have = balance.get(&v).copied().unwrap_or(0);
        let want = if v == src {
            -(flow.value as i64)
        } else {
            flow.absorbed_at(v) as i64
        };
        if have != want {
            return Err(Error::FlowInvariant(format!(
                "node '{}' has net inflow {have}, expected {want}",
                net.label(v)
            )));
        }
    }

    let mut left: BTreeMap<NodeId, u32> = flow.sinks.iter().map(|&t| (t, flow.absorbed_at(t))).collect();
    let mut paths = Vec::with_capacity(flow.value as usize);
    for _ in 0..flow.value {
        let mut stack: Vec<EdgeId> = Vec::new();
        let mut depth: BTreeMap<NodeId, usize> = BTreeMap::from([(src, 0)]);
        let mut at = src;
        loop {
            if at != src {
                if let Some(n) = left.get_mut(&at).filter(|n| **n > 0) {
                    *n -= 1;
                    break;
                }
            }
            let id = out_edges
                .get_mut(&at)
                .and_then(VecDeque::pop_front)
                .ok_or_else(|| {
                    Error::FlowInvariant(format!("walk stuck at node '{}'", net.label(at)))
                })?;
            let head = net.edge(id)?.head;
            if let Some(&k) = depth.get(&head) {
                // Closed a cycle: discard it.
                stack.truncate(k);
                depth.retain(|_, d| *d <= k);
            } else {
                stack.push(id);
                depth.insert(head, stack.len());
            }
            at = head;
        }
        paths.push(EdgePath::new(stack));
    }
    Ok(paths)
}

/// Orders the edges of `subset` so that every edge comes after all edges of
/// the subset entering its tail. Fails with an edge lying on a cycle.
pub fn topological_edge_order(
    net: &Network,
    subset: &BTreeSet<EdgeId>,
) -> std::result::Result<Vec<EdgeId>, EdgeId> {
    let mut indeg: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut outs: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for &id in subset {
        let e = net.edge(id).map_err(|_| id)?;
        *indeg.entry(e.head).or_default() += 1;
        indeg.entry(e.tail).or_default();
        outs.entry(e.tail).or_default().push(id);
    }
    let mut ready: BTreeSet<NodeId> =
        indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut order = Vec::with_capacity(subset.len());
    while let Some(v) = ready.pop_first() {
        for &id in outs.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            order.push(id);
            let head = net.edge(id).map_err(|_| id)?.head;
            let d = indeg.get_mut(&head).expect("head counted");
            *d -= 1;
            if *d == 0 {
                ready.insert(head);
            }
        }
    }
    if order.len() == subset.len() {
        Ok(order)
    } else {
        let placed: BTreeSet<EdgeId> = order.into_iter().collect();
        Err(*subset.iter().find(|id| !placed.contains(id)).expect("unplaced edge"))
    }
}
