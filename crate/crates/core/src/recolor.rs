//! Green/red path recoloring that exposes interference-free routing paths.
//!
//! Green paths run from the source to a collector node, red paths from the
//! source to the *other* terminal's virtual copy. Whenever a green path meets
//! a red path on a shared edge, the red path is rerouted onto the green path's
//! prefix up to that edge. At the fixpoint every green path is either entirely
//! green or starts on a shared edge; the entirely green ones avoid every red
//! path and can carry private messages by plain routing.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::augment::AugmentedNetwork;
use crate::error::{Error, Result};
use crate::flow::{decompose_paths, max_flow, EdgePath};
use crate::netgraph::{Demand, EdgeId, Network, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ColorSet {
    pub green: bool,
    pub red: bool,
}

impl ColorSet {
    pub const NONE: ColorSet = ColorSet { green: false, red: false };
    pub const GREEN: ColorSet = ColorSet { green: true, red: false };
    pub const RED: ColorSet = ColorSet { green: false, red: true };
    pub const BOTH: ColorSet = ColorSet { green: true, red: true };

    pub fn is_exclusively_green(self) -> bool {
        self == Self::GREEN
    }

    pub fn is_dual(self) -> bool {
        self == Self::BOTH
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringState {
    pub source: NodeId,
    pub green_paths: Vec<EdgePath>,
    pub red_paths: Vec<EdgePath>,
    pub edge_colors: BTreeMap<EdgeId, ColorSet>,
}

impl ColoringState {
    pub fn new(source: NodeId, green_paths: Vec<EdgePath>, red_paths: Vec<EdgePath>) -> Self {
        let mut state = ColoringState { source, green_paths, red_paths, edge_colors: BTreeMap::new() };
        state.recompute_colors();
        state
    }

    /// Rebuilds `edge_colors` from the two path lists.
    fn recompute_colors(&mut self) {
        self.edge_colors.clear();
        for p in &self.green_paths {
            for &e in &p.edges {
                self.edge_colors.entry(e).or_default().green = true;
            }
        }
        for p in &self.red_paths {
            for &e in &p.edges {
                self.edge_colors.entry(e).or_default().red = true;
            }
        }
    }

    pub fn color(&self, e: EdgeId) -> ColorSet {
        self.edge_colors.get(&e).copied().unwrap_or_default()
    }

    /// Out-edges of the source that carry red.
    pub fn red_source_edges(&self, net: &Network) -> Result<usize> {
        Ok(net
            .out_edges(self.source)?
            .iter()
            .filter(|&&e| self.color(e).red)
            .count())
    }

    /// Indices of green paths whose every edge is exclusively green.
    pub fn exclusively_green(&self) -> Vec<usize> {
        self.green_paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.edges.iter().all(|&e| self.color(e).is_exclusively_green()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks that each color's paths are pairwise edge-disjoint, start at the
    /// source, and that colors match path membership.
    pub fn check_invariants(&self) -> Result<()> {
        for (name, paths) in [("green", &self.green_paths), ("red", &self.red_paths)] {
            let mut seen = BTreeSet::new();
            for p in paths.iter() {
                for &e in &p.edges {
                    if !seen.insert(e) {
                        return Err(Error::InvariantCorruption(format!(
                            "two {name} paths share edge {e}"
                        )));
                    }
                }
            }
        }
        let mut recomputed = self.clone();
        recomputed.recompute_colors();
        if recomputed.edge_colors != self.edge_colors {
            return Err(Error::InvariantCorruption("edge colors disagree with paths".into()));
        }
        Ok(())
    }

    /// Replaces the part of red path `red_index` up to and including
    /// `shared` with `prefix`.
    fn swap_prefix(&mut self, red_index: usize, shared: EdgeId, prefix: &EdgePath) -> Result<()> {
        let red = self.red_paths.get(red_index).ok_or_else(|| {
            Error::InvariantCorruption(format!("no red path with index {red_index}"))
        })?;
        let k = red.position(shared).ok_or_else(|| {
            Error::InvariantCorruption(format!("red path {red_index} does not use edge {shared}"))
        })?;
        let mut edges = prefix.edges.clone();
        edges.extend_from_slice(&red.edges[k + 1..]);
        self.red_paths[red_index] = EdgePath::new(edges);
        self.recompute_colors();
        Ok(())
    }
}

/// Fixpoint predicate for a green path: all of its edges are exclusively
/// green, or its first edge carries both colors.
pub fn cond(p: &EdgePath, state: &ColoringState) -> bool {
    p.edges.iter().all(|&e| state.color(e).is_exclusively_green())
        || p.first().is_some_and(|e| state.color(e).is_dual())
}

/// One red-path rerouting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub green_path_index: usize,
    pub shared_edge: EdgeId,
    pub red_path_index: usize,
    /// The green path's prefix through the shared edge, which becomes the red
    /// path's new prefix.
    pub prefix_swapped: EdgePath,
    /// Red out-edges of the source after this step.
    pub red_source_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReroutingTrace {
    pub steps: Vec<TraceStep>,
}

impl ReroutingTrace {
    /// Applies the recorded steps to `initial`.
    pub fn replay(&self, initial: &ColoringState) -> Result<ColoringState> {
        let mut state = initial.clone();
        for step in &self.steps {
            state.swap_prefix(step.red_path_index, step.shared_edge, &step.prefix_swapped)?;
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Halt,
    Rerouted(TraceStep),
}

/// Applies the rerouting rule once to green path `p_index`.
///
/// Finds the first edge of the path carrying both colors. If there is none the
/// state is returned unchanged with [`StepOutcome::Halt`]. Otherwise the red
/// path through that edge is rerouted onto the green prefix ending with it;
/// red disappears from the red path's abandoned prefix.
pub fn algorithm_a(
    net: &Network,
    p_index: usize,
    state: &ColoringState,
) -> Result<(ColoringState, StepOutcome)> {
    let p = state.green_paths.get(p_index).ok_or_else(|| {
        Error::InvariantCorruption(format!("no green path with index {p_index}"))
    })?;
    let Some(pos) = p.edges.iter().position(|&e| state.color(e).is_dual()) else {
        return Ok((state.clone(), StepOutcome::Halt));
    };
    let shared = p.edges[pos];
    let red_index = state.red_paths.iter().position(|r| r.contains(shared)).ok_or_else(|| {
        Error::InvariantCorruption(format!("edge {shared} is red but on no red path"))
    })?;
    let prefix = EdgePath::new(p.edges[..=pos].to_vec());
    let mut next = state.clone();
    next.swap_prefix(red_index, shared, &prefix)?;
    let step = TraceStep {
        green_path_index: p_index,
        shared_edge: shared,
        red_path_index: red_index,
        prefix_swapped: prefix,
        red_source_edges: next.red_source_edges(net)?,
    };
    Ok((next, StepOutcome::Rerouted(step)))
}

/// Step budget for [`run_to_fixpoint`].
pub fn iteration_budget(net: &Network, state: &ColoringState) -> usize {
    net.edge_count() * state.green_paths.len() * state.red_paths.len()
}

/// Reroutes until every green path satisfies [`cond`], always picking the
/// lowest-index violating path. After each step the number of red source
/// out-edges must equal its initial value.
pub fn run_to_fixpoint(net: &Network, state: ColoringState) -> Result<(ColoringState, ReroutingTrace)> {
    let budget = iteration_budget(net, &state);
    let red_out = state.red_source_edges(net)?;
    let mut state = state;
    let mut trace = ReroutingTrace::default();
    while let Some(idx) = (0..state.green_paths.len()).find(|&i| !cond(&state.green_paths[i], &state)) {
        if trace.steps.len() >= budget {
            return Err(Error::Nontermination { budget });
        }
        let (next, outcome) = algorithm_a(net, idx, &state)?;
        let StepOutcome::Rerouted(step) = outcome else {
            return Err(Error::InvariantCorruption(format!(
                "green path {idx} violates the fixpoint condition but has no shared edge"
            )));
        };
        if step.red_source_edges != red_out {
            return Err(Error::InvariantCorruption(format!(
                "red source out-edges changed from {red_out} to {}",
                step.red_source_edges
            )));
        }
        next.check_invariants()?;
        state = next;
        trace.steps.push(step);
    }
    Ok((state, trace))
}

/// Takes the first `required` exclusively green paths (by index), each cut
/// short right after it enters `via`. Every one of them must pass through
/// `via`.
pub fn extract_exclusive_green(
    net: &Network,
    state: &ColoringState,
    via: NodeId,
    required: u32,
) -> Result<Vec<EdgePath>> {
    let exclusive = state.exclusively_green();
    if exclusive.len() < required as usize {
        return Err(Error::TheoremViolation(format!(
            "found {} exclusively green paths, need {required}",
            exclusive.len()
        )));
    }
    let mut out = Vec::with_capacity(required as usize);
    for &i in exclusive.iter().take(required as usize) {
        let p = &state.green_paths[i];
        let nodes = p.nodes(net)?;
        let k = nodes[1..nodes.len() - 1].iter().position(|&v| v == via).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "exclusively green path {i} avoids '{}'",
                net.label(via)
            ))
        })?;
        out.push(EdgePath::new(p.edges[..=k].to_vec()));
    }
    Ok(out)
}

/// Record of one recoloring pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassReport {
    pub initial: ColoringState,
    pub fixpoint: ColoringState,
    pub trace: ReroutingTrace,
    pub budget: usize,
    /// Red source out-edges before any step.
    pub red_source_edges: usize,
    /// Exclusively green paths at the fixpoint.
    pub exclusive_green: usize,
    /// Extracted routes, each ending at the virtual terminal.
    pub routes: Vec<EdgePath>,
}

/// Roles for one pass: green flows to `green_sink`, red flows to `red_sink`,
/// and the extracted paths must cross `via`.
struct PassRoles {
    green_sink: NodeId,
    red_sink: NodeId,
    via: NodeId,
    required: u32,
    min_green: u32,
    red_expected: u32,
}

fn run_pass(net: &Network, roles: &PassRoles) -> Result<PassReport> {
    let s = net.source();
    let green = max_flow(net, s, &[roles.green_sink])?;
    let red = max_flow(net, s, &[roles.red_sink])?;
    if green.value < roles.min_green {
        return Err(Error::TheoremViolation(format!(
            "only {} edge-disjoint paths to '{}', need {}",
            green.value,
            net.label(roles.green_sink),
            roles.min_green
        )));
    }
    if red.value != roles.red_expected {
        return Err(Error::TheoremViolation(format!(
            "{} edge-disjoint paths to '{}', expected {}",
            red.value,
            net.label(roles.red_sink),
            roles.red_expected
        )));
    }
    let initial = ColoringState::new(s, decompose_paths(net, &green)?, decompose_paths(net, &red)?);
    let budget = iteration_budget(net, &initial);
    let red_source_edges = initial.red_source_edges(net)?;
    let (fixpoint, trace) = run_to_fixpoint(net, initial.clone())?;
    let exclusive_green = fixpoint.exclusively_green().len();
    let routes = extract_exclusive_green(net, &fixpoint, roles.via, roles.required)?;
    Ok(PassReport { initial, fixpoint, trace, budget, red_source_edges, exclusive_green, routes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPass {
    /// `h1` routes from the source to `T1'` through `T1`.
    pub x1_routes: Vec<EdgePath>,
    /// `h2` routes from the source to `T2'` through `T2`.
    pub x2_routes: Vec<EdgePath>,
    pub first: PassReport,
    pub second: PassReport,
    /// The augmented network with both route families removed.
    pub residual: Network,
}

/// Runs the pass for the first terminal on the augmented network, removes its
/// routes, then runs the mirrored pass for the second terminal on what is
/// left.
pub fn symmetric_pass(aug: &AugmentedNetwork, d: Demand) -> Result<SymmetricPass> {
    let first = run_pass(
        &aug.net,
        &PassRoles {
            green_sink: aug.y1,
            red_sink: aug.t2p,
            via: aug.t1p,
            required: d.h1,
            min_green: d.total(),
            red_expected: d.second(),
        },
    )?;
    let x1_edges: BTreeSet<EdgeId> = first.routes.iter().flat_map(|p| p.edges.iter().copied()).collect();
    let after_first = aug.net.remove_edges(&x1_edges)?;

    let second = run_pass(
        &after_first,
        &PassRoles {
            green_sink: aug.y2,
            red_sink: aug.t1p,
            via: aug.t2p,
            required: d.h2,
            min_green: d.second(),
            red_expected: d.h0,
        },
    )?;
    let x2_edges: BTreeSet<EdgeId> = second.routes.iter().flat_map(|p| p.edges.iter().copied()).collect();
    let residual = after_first.remove_edges(&x2_edges)?;

    Ok(SymmetricPass {
        x1_routes: first.routes.clone(),
        x2_routes: second.routes.clone(),
        first,
        second,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::build_augmented;
    use crate::netgraph::NetworkBuilder;

    fn state_with(green: Vec<Vec<u32>>, red: Vec<Vec<u32>>) -> ColoringState {
        let p = |v: Vec<u32>| EdgePath::new(v.into_iter().map(EdgeId).collect());
        ColoringState::new(
            NodeId(0),
            green.into_iter().map(p).collect(),
            red.into_iter().map(p).collect(),
        )
    }

    #[test]
    fn cond_cases() {
        // all green
        let s = state_with(vec![vec![0, 1, 2]], vec![vec![5, 6]]);
        assert!(cond(&s.green_paths[0], &s));
        // first edge dual, later arbitrary
        let s = state_with(vec![vec![0, 1, 2]], vec![vec![0, 6]]);
        assert!(cond(&s.green_paths[0], &s));
        // third edge dual only
        let s = state_with(vec![vec![0, 1, 2]], vec![vec![5, 2]]);
        assert!(!cond(&s.green_paths[0], &s));
    }

    /// s --e0,e1,e2--> v, v --e3--> y, v --e4--> t. Green s-e0-v-e3-y, red
    /// s-e0-v-e4-t share their first edge.
    fn toy() -> (Network, ColoringState) {
        let mut b = NetworkBuilder::new();
        let [s, v, y, t] = ["s", "v", "y", "t"].map(|l| b.node(l));
        b.edges(s, v, 3).unwrap();
        b.edge(v, y).unwrap();
        b.edge(v, t).unwrap();
        let net = b.build(s, [y, t]).unwrap();
        let state = state_with(vec![vec![0, 3]], vec![vec![0, 4]]);
        (net, state)
    }

    #[test]
    fn shared_first_edge_is_already_a_fixpoint() {
        let (net, state) = toy();
        assert!(cond(&state.green_paths[0], &state));
        let (next, outcome) = algorithm_a(&net, 0, &state).unwrap();
        // Rule swaps the red prefix onto the identical green prefix.
        assert!(matches!(outcome, StepOutcome::Rerouted(_)));
        assert_eq!(next, state);
        let (fix, trace) = run_to_fixpoint(&net, state.clone()).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(fix, state);
    }

    #[test]
    fn disjoint_sets_halt() {
        let (net, _) = toy();
        let state = state_with(vec![vec![0, 3]], vec![vec![1, 4]]);
        let (next, outcome) = algorithm_a(&net, 0, &state).unwrap();
        assert_eq!(outcome, StepOutcome::Halt);
        assert_eq!(next, state);
    }

    /// Diamond: s -a-> u -m-> w -y-> Y ; s -b-> x -c-> u ; w -t-> T.
    /// Green path a,m,y; red path b,c,m,t. They first meet on m.
    #[test]
    fn diamond_reroutes_onto_green_prefix() {
        let mut b = NetworkBuilder::new();
        let [s, u, w, x, yy, tt] = ["s", "u", "w", "x", "Y", "T"].map(|l| b.node(l));
        let a = b.edge(s, u).unwrap();
        let m = b.edge(u, w).unwrap();
        let y = b.edge(w, yy).unwrap();
        let bb = b.edge(s, x).unwrap();
        let c = b.edge(x, u).unwrap();
        let t = b.edge(w, tt).unwrap();
        let net = b.build(s, [yy, tt]).unwrap();
        let state = ColoringState::new(
            s,
            vec![EdgePath::new(vec![a, m, y])],
            vec![EdgePath::new(vec![bb, c, m, t])],
        );
        assert!(!cond(&state.green_paths[0], &state));
        let (next, outcome) = algorithm_a(&net, 0, &state).unwrap();
        let StepOutcome::Rerouted(step) = outcome else { panic!("expected reroute") };
        assert_eq!(step.shared_edge, m);
        assert_eq!(next.red_paths[0].edges, vec![a, m, t]);
        assert_eq!(next.color(bb), ColorSet::NONE);
        assert_eq!(next.color(c), ColorSet::NONE);
        assert_eq!(next.color(a), ColorSet::BOTH);
        assert_eq!(next.red_source_edges(&net).unwrap(), 1);
        next.red_paths[0].validate(&net, s, tt).unwrap();
        next.check_invariants().unwrap();

        let (fix, trace) = run_to_fixpoint(&net, state.clone()).unwrap();
        assert_eq!(fix, next);
        assert_eq!(trace.replay(&state).unwrap(), fix);
    }

    #[test]
    fn extraction_of_parallel_bundles() {
        let mut b = NetworkBuilder::new();
        let [s, t1, t2] = ["S", "T1", "T2"].map(|l| b.node(l));
        let d = Demand::new(1, 2, 1);
        b.edges(s, t1, d.first()).unwrap();
        b.edges(s, t2, d.second()).unwrap();
        let net = b.build(s, [t1, t2]).unwrap();
        let aug = build_augmented(&net, d).unwrap();
        let pass = symmetric_pass(&aug, d).unwrap();
        assert_eq!(pass.x1_routes.len(), 2);
        assert_eq!(pass.x2_routes.len(), 1);
        for r in &pass.x1_routes {
            r.validate(&aug.net, s, aug.t1p).unwrap();
        }
        for r in &pass.x2_routes {
            r.validate(&aug.net, s, aug.t2p).unwrap();
        }
        let all: Vec<EdgeId> = pass.x1_routes.iter().chain(&pass.x2_routes).flat_map(|p| p.edges.clone()).collect();
        let set: BTreeSet<EdgeId> = all.iter().copied().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn zero_private_demand_gives_no_routes() {
        let mut b = NetworkBuilder::new();
        let [s, t1, t2] = ["S", "T1", "T2"].map(|l| b.node(l));
        b.edges(s, t1, 2).unwrap();
        b.edges(s, t2, 2).unwrap();
        let net = b.build(s, [t1, t2]).unwrap();
        let d = Demand::new(2, 0, 0);
        let pass = symmetric_pass(&build_augmented(&net, d).unwrap(), d).unwrap();
        assert!(pass.x1_routes.is_empty());
        assert!(pass.x2_routes.is_empty());
    }

    #[test]
    fn extraction_fails_when_too_few() {
        let (net, state) = toy();
        let v = NodeId(1);
        assert!(matches!(
            extract_exclusive_green(&net, &state, v, 1),
            Err(Error::TheoremViolation(_))
        ));
        assert!(extract_exclusive_green(&net, &state, v, 0).unwrap().is_empty());
    }
}
