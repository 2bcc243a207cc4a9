//! Reference implementations used as oracles. Deliberately naive and
//! independent of the library's flow code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use twosink::{EdgeId, Network, NodeId};

/// Max-flow by repeated DFS augmentation on a dense capacity matrix. The
/// sinks are merged into one extra node.
pub fn ff_max_flow(net: &Network, src: NodeId, sinks: &[NodeId]) -> u32 {
    let n = net.node_count() + 1;
    let sink = n - 1;
    let mut cap = vec![vec![0i64; n]; n];
    for e in net.edges() {
        cap[e.tail.index()][e.head.index()] += 1;
    }
    for t in sinks {
        cap[t.index()][sink] += i64::MAX / 4;
    }
    let mut flow = 0;
    loop {
        let mut seen = vec![false; n];
        if !dfs(src.index(), sink, &mut cap, &mut seen) {
            return flow;
        }
        flow += 1;
    }
}

fn dfs(u: usize, t: usize, cap: &mut [Vec<i64>], seen: &mut [bool]) -> bool {
    if u == t {
        return true;
    }
    seen[u] = true;
    for v in 0..cap.len() {
        if !seen[v] && cap[u][v] > 0 && dfs(v, t, cap, seen) {
            cap[u][v] -= 1;
            cap[v][u] += 1;
            return true;
        }
    }
    false
}

/// Minimum cut by enumerating every node set that holds `src` and no sink.
/// Only for small graphs.
pub fn brute_force_min_cut(net: &Network, src: NodeId, sinks: &[NodeId]) -> u32 {
    let free: Vec<NodeId> = net.nodes().filter(|v| *v != src && !sinks.contains(v)).collect();
    assert!(free.len() <= 16, "graph too large for subset enumeration");
    let mut best = u32::MAX;
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; net.node_count()];
        side[src.index()] = true;
        for (i, v) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                side[v.index()] = true;
            }
        }
        let cut = net.edges().filter(|e| side[e.tail.index()] && !side[e.head.index()]).count() as u32;
        best = best.min(cut);
    }
    best
}

/// All simple paths from `from` to `to`, as edge lists.
pub fn simple_paths(net: &Network, from: NodeId, to: NodeId) -> Vec<Vec<EdgeId>> {
    fn go(
        net: &Network,
        at: NodeId,
        to: NodeId,
        visited: &mut Vec<NodeId>,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        if at == to {
            out.push(path.clone());
            return;
        }
        for &e in net.out_edges(at).unwrap() {
            let head = net.edge(e).unwrap().head;
            if visited.contains(&head) {
                continue;
            }
            visited.push(head);
            path.push(e);
            go(net, head, to, visited, path, out);
            path.pop();
            visited.pop();
        }
    }
    let mut out = Vec::new();
    go(net, from, to, &mut vec![from], &mut Vec::new(), &mut out);
    out
}

/// Searches for a routing-only scheme: every symbol travels on its own edge
/// set, with no edge carrying two symbols. `needs[k]` lists which terminals
/// want symbol `k`. Returns the edge sets if one exists.
pub fn routing_only_solution(net: &Network, needs: &[Vec<NodeId>]) -> Option<Vec<BTreeSet<EdgeId>>> {
    let s = net.source();
    let mut options: Vec<Vec<BTreeSet<EdgeId>>> = Vec::new();
    for want in needs {
        let per_terminal: Vec<Vec<Vec<EdgeId>>> = want.iter().map(|&t| simple_paths(net, s, t)).collect();
        let mut sets = vec![BTreeSet::new()];
        for paths in &per_terminal {
            let mut next = Vec::new();
            for base in &sets {
                for p in paths {
                    let mut u: BTreeSet<EdgeId> = base.clone();
                    u.extend(p.iter().copied());
                    next.push(u);
                }
            }
            sets = next;
        }
        sets.sort();
        sets.dedup();
        options.push(sets);
    }
    fn assign(
        k: usize,
        options: &[Vec<BTreeSet<EdgeId>>],
        used: &mut BTreeSet<EdgeId>,
        chosen: &mut Vec<BTreeSet<EdgeId>>,
    ) -> bool {
        if k == options.len() {
            return true;
        }
        for set in &options[k] {
            if set.is_disjoint(used) {
                used.extend(set.iter().copied());
                chosen.push(set.clone());
                if assign(k + 1, options, used, chosen) {
                    return true;
                }
                chosen.pop();
                for e in set {
                    used.remove(e);
                }
            }
        }
        false
    }
    let mut chosen = Vec::new();
    assign(0, &options, &mut BTreeSet::new(), &mut chosen).then_some(chosen)
}

/// Builds a network on nodes `v0..v{n-1}` with source `v0` and terminals
/// `v1`, `v2`. Self-loops in `edges` are skipped.
pub fn network_from(n: usize, edges: &[(usize, usize)]) -> Network {
    let mut b = twosink::NetworkBuilder::new();
    let nodes: Vec<NodeId> = (0..n).map(|i| b.node(&format!("v{i}"))).collect();
    for &(u, v) in edges {
        if u % n != v % n {
            b.edge(nodes[u % n], nodes[v % n]).unwrap();
        }
    }
    b.build(nodes[0], [nodes[1], nodes[2]]).unwrap()
}

/// Arbitrary small directed multigraphs, cycles allowed.
pub fn arb_network() -> impl proptest::strategy::Strategy<Value = Network> {
    use proptest::prelude::*;
    (3usize..=7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..18).prop_map(move |edges| network_from(n, &edges))
    })
}

/// Arbitrary small DAGs: every edge goes from a lower to a higher index.
pub fn arb_dag() -> impl proptest::strategy::Strategy<Value = Network> {
    use proptest::prelude::*;
    (3usize..=8).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..15).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> =
                pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            network_from(n, &edges)
        })
    })
}

/// Demands with total rate at most 4.
pub fn arb_demand() -> impl proptest::strategy::Strategy<Value = twosink::Demand> {
    proptest::sample::select(twosink::Demand::all_up_to(4))
}
