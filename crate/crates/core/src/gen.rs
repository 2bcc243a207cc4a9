//! Seeded random instances for sweeps and fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::netgraph::{Demand, Network, NetworkBuilder};
use crate::planner::check_feasibility;

/// A random DAG with between 3 and `max_nodes` nodes and at most `max_edges`
/// unit edges (parallel edges allowed). Nodes are labelled `v0, v1, ...` in
/// topological order; the source is `v0` and the terminals are two distinct
/// other nodes.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize, max_edges: usize) -> Network {
    let n = rng.random_range(3..=max_nodes.max(3));
    let m = rng.random_range(0..=max_edges);
    let mut b = NetworkBuilder::new();
    let nodes: Vec<_> = (0..n).map(|i| b.node(&format!("v{i}"))).collect();
    for _ in 0..m {
        let i = rng.random_range(0..n - 1);
        let j = rng.random_range(i + 1..n);
        b.edge(nodes[i], nodes[j]).expect("distinct endpoints");
    }
    let mut others: Vec<usize> = (1..n).collect();
    others.shuffle(rng);
    b.build(nodes[0], [nodes[others[0]], nodes[others[1]]]).expect("valid roles")
}

/// `count` DAGs with at most 8 nodes and 14 edges, reproducible from `seed`.
pub fn sweep_networks(count: usize, seed: u64) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dag(&mut rng, 8, 14)).collect()
}

/// `count` random DAGs paired with a nonzero demand they support (total rate
/// at most 4). Graphs that support no nonzero demand are skipped.
pub fn feasible_instances(count: usize, seed: u64) -> Vec<(Network, Demand)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let net = random_dag(&mut rng, 8, 14);
        let options: Vec<Demand> = Demand::all_up_to(4)
            .into_iter()
            .filter(|&d| d.total() > 0)
            .filter(|&d| check_feasibility(&net, d).is_ok_and(|r| r.feasible))
            .collect();
        if let Some(&d) = options.get(rng.random_range(0..options.len().max(1))) {
            out.push((net, d));
        }
    }
    out
}
