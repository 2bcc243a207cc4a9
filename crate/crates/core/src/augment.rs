//! The augmented network: each terminal gets a virtual copy `T'` fed by a
//! bundle sized to its demand, and two collector nodes `Y1`, `Y2` gather the
//! virtual terminals' output so that a single max-flow question captures the
//! joint demand.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::flow::min_cut_value;
use crate::netgraph::{Demand, EdgeId, Network, NodeId};

pub const T1_PRIME: &str = "__T1P";
pub const T2_PRIME: &str = "__T2P";
pub const Y1: &str = "__Y1";
pub const Y2: &str = "__Y2";

/// Labels the augmentation claims for itself; input networks may not use the
/// `__` prefix at all.
pub const RESERVED_PREFIX: &str = "__";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedNetwork {
    pub net: Network,
    pub t1p: NodeId,
    pub t2p: NodeId,
    pub y1: NodeId,
    pub y2: NodeId,
    pub virtual_edge_ids: BTreeSet<EdgeId>,
    /// Number of nodes and edges slots of the original network; ids below
    /// these bounds are real.
    original_nodes: usize,
    original_edges: usize,
}

impl AugmentedNetwork {
    pub fn is_virtual_edge(&self, e: EdgeId) -> bool {
        self.virtual_edge_ids.contains(&e)
    }

    pub fn is_virtual_node(&self, v: NodeId) -> bool {
        v.index() >= self.original_nodes
    }

    pub fn original_node_count(&self) -> usize {
        self.original_nodes
    }

    pub fn original_edge_slots(&self) -> usize {
        self.original_edges
    }

    /// Virtual terminal of terminal `i` (0 or 1).
    pub fn terminal_prime(&self, i: usize) -> NodeId {
        [self.t1p, self.t2p][i]
    }

    /// Collector `Y1` (i = 0) or `Y2` (i = 1).
    pub fn collector(&self, i: usize) -> NodeId {
        [self.y1, self.y2][i]
    }
}

/// Extends `net` with `T1'`, `T2'`, `Y1`, `Y2` and the six virtual bundles:
///
/// | bundle     | multiplicity |
/// |------------|--------------|
/// | T1 → T1'   | h0 + h1      |
/// | T1' → Y1   | h0 + h1      |
/// | T1' → Y2   | h1           |
/// | T2 → T2'   | h0 + h2      |
/// | T2' → Y1   | h2           |
/// | T2' → Y2   | h0 + h2      |
pub fn build_augmented(net: &Network, d: Demand) -> Result<AugmentedNetwork> {
    let [t1, t2] = net.terminals();
    let original_nodes = net.node_count();
    let original_edges = net.edge_capacity();
    let mut b = net.to_builder();
    let t1p = b.node(T1_PRIME);
    let t2p = b.node(T2_PRIME);
    let y1 = b.node(Y1);
    let y2 = b.node(Y2);
    let mut virtual_edge_ids = BTreeSet::new();
    for (tail, head, count) in [
        (t1, t1p, d.first()),
        (t1p, y1, d.first()),
        (t1p, y2, d.h1),
        (t2, t2p, d.second()),
        (t2p, y1, d.h2),
        (t2p, y2, d.second()),
    ] {
        virtual_edge_ids.extend(b.edges(tail, head, count)?);
    }
    Ok(AugmentedNetwork {
        net: b.build(net.source(), net.terminals())?,
        t1p,
        t2p,
        y1,
        y2,
        virtual_edge_ids,
        original_nodes,
        original_edges,
    })
}

/// Which identity of the augmented-network lemma a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaIdentity {
    /// min-cut(S, T1') = h0 + h1
    FirstPrime,
    /// min-cut(S, T2') = h0 + h2
    SecondPrime,
    /// min-cut(S, {T1', T2'}) >= h0 + h1 + h2
    BothPrimes,
    /// min-cut(S, Y1) = h0 + h1 + h2
    FirstCollector,
    /// min-cut(S, Y2) = h0 + h1 + h2
    SecondCollector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub t1p: u32,
    pub t2p: u32,
    pub both: u32,
    pub y1: u32,
    pub y2: u32,
    /// False when the underlying network does not meet the three cut
    /// conditions, in which case `deviations` is informational only.
    pub applicable: bool,
    pub deviations: Vec<LemmaIdentity>,
}

impl LemmaReport {
    pub fn values(&self) -> [u32; 5] {
        [self.t1p, self.t2p, self.both, self.y1, self.y2]
    }

    /// Applicable and every identity holds.
    pub fn satisfied(&self) -> bool {
        self.applicable && self.deviations.is_empty()
    }
}

/// Computes the five cut values of the augmented network and compares them
/// with the lemma's identities.
pub fn check_lemma(aug: &AugmentedNetwork, d: Demand) -> Result<LemmaReport> {
    let g = &aug.net;
    let s = g.source();
    let [t1, t2] = g.terminals();
    let applicable = min_cut_value(g, s, &[t1])? >= d.first()
        && min_cut_value(g, s, &[t2])? >= d.second()
        && min_cut_value(g, s, &[t1, t2])? >= d.total();

    let report_values = [
        min_cut_value(g, s, &[aug.t1p])?,
        min_cut_value(g, s, &[aug.t2p])?,
        min_cut_value(g, s, &[aug.t1p, aug.t2p])?,
        min_cut_value(g, s, &[aug.y1])?,
        min_cut_value(g, s, &[aug.y2])?,
    ];
    let [t1p, t2p, both, y1, y2] = report_values;
    let mut deviations = Vec::new();
    if t1p != d.first() {
        deviations.push(LemmaIdentity::FirstPrime);
    }
    if t2p != d.second() {
        deviations.push(LemmaIdentity::SecondPrime);
    }
    if both < d.total() {
        deviations.push(LemmaIdentity::BothPrimes);
    }
    if y1 != d.total() {
        deviations.push(LemmaIdentity::FirstCollector);
    }
    if y2 != d.total() {
        deviations.push(LemmaIdentity::SecondCollector);
    }
    Ok(LemmaReport { t1p, t2p, both, y1, y2, applicable, deviations })
}
