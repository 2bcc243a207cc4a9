//! End-to-end synthesis: feasibility, route extraction, residual coding, and
//! an independent symbol-level check of the result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augment::{build_augmented, check_lemma, AugmentedNetwork, LemmaReport};
use crate::error::{Error, Result};
use crate::flow::{max_flow, min_cut_value, topological_edge_order, EdgePath};
use crate::nccode::{
    build_multicast_code, CodeInput, GaloisField, Gf, LocalCoefficients, Matrix, MulticastCode,
};
use crate::netgraph::{Demand, EdgeId, Network};
use crate::recolor::{symmetric_pass, SymmetricPass};

pub const DEFAULT_FIELD_BITS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cuts {
    pub first: u32,
    pub second: u32,
    pub both: u32,
}

impl fmt::Display for Cuts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.first, self.second, self.both)
    }
}

/// The three cut conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Inequality {
    /// min-cut(S, T1) >= h0 + h1
    First,
    /// min-cut(S, T2) >= h0 + h2
    Second,
    /// min-cut(S, {T1, T2}) >= h0 + h1 + h2
    Joint,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inequality::First => "ineq1 min-cut(S,T1)",
            Inequality::Second => "ineq2 min-cut(S,T2)",
            Inequality::Joint => "ineq3 min-cut(S,{T1,T2})",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub inequality: Inequality,
    pub required: u32,
    pub actual: u32,
}

impl Violation {
    pub fn shortfall(&self) -> u32 {
        self.required - self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub cuts: Cuts,
    pub required: Cuts,
    pub violated: Vec<Violation>,
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.feasible {
            write!(f, "FEASIBLE (cuts {} \u{2265} {})", self.cuts, self.required)
        } else {
            write!(f, "INFEASIBLE (cuts {}, required {})", self.cuts, self.required)?;
            for v in &self.violated {
                write!(f, "; {}: need {}, have {}", v.inequality, v.required, v.actual)?;
            }
            Ok(())
        }
    }
}

/// Compares the three min-cuts against the demand.
pub fn check_feasibility(net: &Network, d: Demand) -> Result<FeasibilityReport> {
    let s = net.source();
    let [t1, t2] = net.terminals();
    let cuts = Cuts {
        first: min_cut_value(net, s, &[t1])?,
        second: min_cut_value(net, s, &[t2])?,
        both: min_cut_value(net, s, &[t1, t2])?,
    };
    let required = Cuts { first: d.first(), second: d.second(), both: d.total() };
    let violated: Vec<Violation> = [
        (Inequality::First, required.first, cuts.first),
        (Inequality::Second, required.second, cuts.second),
        (Inequality::Joint, required.both, cuts.both),
    ]
    .into_iter()
    .filter(|&(_, req, have)| have < req)
    .map(|(inequality, required, actual)| Violation { inequality, required, actual })
    .collect();
    Ok(FeasibilityReport { feasible: violated.is_empty(), cuts, required, violated })
}

/// How a real terminal recovers the common messages: `matrix` (h0 rows) times
/// the symbols on `inputs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalDecoding {
    pub inputs: Vec<EdgeId>,
    pub matrix: Matrix,
}

/// A complete transmission scheme over the original network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferPlan {
    pub demand: Demand,
    pub seed: u64,
    pub field: GaloisField,
    /// Private messages of the first terminal, one route each, source to T1.
    pub x1_routes: Vec<EdgePath>,
    /// Private messages of the second terminal, source to T2.
    pub x2_routes: Vec<EdgePath>,
    pub local: LocalCoefficients,
    pub global: BTreeMap<EdgeId, Vec<Gf>>,
    pub decoders: [TerminalDecoding; 2],
}

impl TransferPlan {
    pub fn code_support(&self) -> BTreeSet<EdgeId> {
        self.local.keys().copied().collect()
    }

    pub fn route_edges(&self) -> BTreeSet<EdgeId> {
        self.x1_routes.iter().chain(&self.x2_routes).flat_map(|p| p.edges.iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub seed: u64,
    /// Width of the first field tried for the multicast code.
    pub field_bits: u32,
}

impl SynthesisOptions {
    pub fn new(seed: u64) -> Self {
        SynthesisOptions { seed, field_bits: DEFAULT_FIELD_BITS }
    }
}

/// Everything computed along the way to a plan.
#[derive(Debug, Clone)]
pub struct SynthesisReport {
    pub plan: TransferPlan,
    pub feasibility: FeasibilityReport,
    pub augmented: AugmentedNetwork,
    pub lemma: LemmaReport,
    pub passes: SymmetricPass,
    /// Max-flow from the source to T1' and T2' after both route families are
    /// removed.
    pub residual_flows: [u32; 2],
    /// The code on the residual augmented network, before projection.
    pub code: MulticastCode,
    pub transfer_ranks: [usize; 2],
}

pub fn synthesize(net: &Network, d: Demand, seed: u64) -> Result<TransferPlan> {
    Ok(synthesize_with(net, d, SynthesisOptions::new(seed))?.plan)
}

pub fn synthesize_with(net: &Network, d: Demand, opts: SynthesisOptions) -> Result<SynthesisReport> {
    let feasibility = check_feasibility(net, d)?;
    if !feasibility.feasible {
        return Err(Error::Infeasible(Box::new(feasibility)));
    }
    let augmented = build_augmented(net, d)?;
    let lemma = check_lemma(&augmented, d)?;
    if !lemma.satisfied() {
        return Err(Error::TheoremViolation(format!(
            "augmented cut values {:?} deviate in {:?}",
            lemma.values(),
            lemma.deviations
        )));
    }
    let passes = symmetric_pass(&augmented, d)?;
    let s = net.source();
    let primes = [augmented.t1p, augmented.t2p];
    let residual_flows = [
        max_flow(&passes.residual, s, &[primes[0]])?.value,
        max_flow(&passes.residual, s, &[primes[1]])?.value,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let code = build_multicast_code(&passes.residual, s, primes, d.h0 as usize, opts.field_bits, &mut rng)?;
    let transfer_ranks = [
        code.decoders[0].transfer.rank(&code.field),
        code.decoders[1].transfer.rank(&code.field),
    ];

    let plan = project(net, &augmented, &passes, &code, d, opts.seed)?;
    check_plan_invariants(net, &plan)?;
    Ok(SynthesisReport {
        plan,
        feasibility,
        augmented,
        lemma,
        passes,
        residual_flows,
        code,
        transfer_ranks,
    })
}

/// Drops the virtual part of the construction: routes stop at the real
/// terminals and decoders read the real terminals' in-edges.
fn project(
    net: &Network,
    aug: &AugmentedNetwork,
    passes: &SymmetricPass,
    code: &MulticastCode,
    d: Demand,
    seed: u64,
) -> Result<TransferPlan> {
    let truncate = |routes: &[EdgePath]| -> Result<Vec<EdgePath>> {
        routes
            .iter()
            .map(|p| match p.edges.split_last() {
                Some((&last, rest)) if aug.is_virtual_edge(last) => Ok(EdgePath::new(rest.to_vec())),
                _ => Err(Error::TheoremViolation("route does not end on a virtual edge".into())),
            })
            .collect()
    };
    let local: LocalCoefficients = code
        .local
        .iter()
        .filter(|(e, _)| !aug.is_virtual_edge(**e))
        .map(|(&e, row)| (e, row.clone()))
        .collect();
    let global = code
        .global
        .iter()
        .filter(|(e, _)| !aug.is_virtual_edge(**e))
        .map(|(&e, v)| (e, v.clone()))
        .collect();

    let h0 = d.h0 as usize;
    let decoders = [0, 1].map(|i| -> Result<TerminalDecoding> {
        let dec = &code.decoders[i];
        let mut real: BTreeSet<EdgeId> = BTreeSet::new();
        for v in &dec.inputs {
            for &(input, _) in &code.local[v] {
                match input {
                    CodeInput::Edge(e) => {
                        real.insert(e);
                    }
                    CodeInput::Source(_) => {
                        return Err(Error::TheoremViolation("virtual edge fed by the source".into()))
                    }
                }
            }
        }
        let inputs: Vec<EdgeId> = real.into_iter().collect();
        let mut mix = Matrix::zeros(h0, inputs.len());
        for (r, v) in dec.inputs.iter().enumerate() {
            for &(input, c) in &code.local[v] {
                if let CodeInput::Edge(e) = input {
                    let col = inputs.binary_search(&e).expect("collected above");
                    mix[(r, col)] = code.field.add(mix[(r, col)], c);
                }
            }
        }
        let matrix = if h0 == 0 { Matrix::zeros(0, inputs.len()) } else { dec.decode.mul(&code.field, &mix)? };
        Ok(TerminalDecoding { inputs, matrix })
    });
    let [t1, t2] = decoders;
    let plan = TransferPlan {
        demand: d,
        seed,
        field: code.field.clone(),
        x1_routes: truncate(&passes.x1_routes)?,
        x2_routes: truncate(&passes.x2_routes)?,
        local,
        global,
        decoders: [t1?, t2?],
    };
    debug_assert!(plan.route_edges().iter().all(|e| net.contains_edge(*e)));
    Ok(plan)
}

/// Structural checks every plan must pass before it is handed out or
/// simulated.
pub fn check_plan_invariants(net: &Network, plan: &TransferPlan) -> Result<()> {
    let bad = |m: String| Err(Error::PlanMismatch(m));
    let d = plan.demand;
    let s = net.source();
    let terminals = net.terminals();
    if plan.x1_routes.len() != d.h1 as usize || plan.x2_routes.len() != d.h2 as usize {
        return bad(format!(
            "expected {} and {} routes, found {} and {}",
            d.h1,
            d.h2,
            plan.x1_routes.len(),
            plan.x2_routes.len()
        ));
    }
    let mut used = BTreeSet::new();
    for (i, routes) in [&plan.x1_routes, &plan.x2_routes].into_iter().enumerate() {
        for p in routes {
            p.validate(net, s, terminals[i]).map_err(|e| match e {
                Error::UnknownEdge(id) => Error::PlanMismatch(format!("unknown edge {id}")),
                other => Error::PlanMismatch(other.to_string()),
            })?;
            for &e in &p.edges {
                if !used.insert(e) {
                    return bad(format!("edge {e} used by two routes"));
                }
            }
        }
    }
    let support = plan.code_support();
    if let Some(e) = support.intersection(&used).next() {
        return bad(format!("edge {e} both routes and codes"));
    }
    for (&e, row) in &plan.local {
        let tail = net.edge(e).map_err(|_| Error::PlanMismatch(format!("unknown edge {e}")))?.tail;
        for &(input, _) in row {
            match input {
                CodeInput::Source(i) if tail == s && i < d.h0 as usize => {}
                CodeInput::Edge(x) if support.contains(&x) && net.edge(x)?.head == tail => {}
                other => return bad(format!("edge {e} cannot read {other:?}")),
            }
        }
    }
    topological_edge_order(net, &support)
        .map_err(|e| Error::PlanMismatch(format!("coded edges form a cycle through {e}")))?;
    for (i, dec) in plan.decoders.iter().enumerate() {
        let wanted = if plan.demand.h0 == 0 { 0 } else { d.h0 as usize };
        if dec.matrix.rows() != wanted || dec.matrix.cols() != dec.inputs.len() {
            return bad(format!("decoder {} has shape {}x{}", i + 1, dec.matrix.rows(), dec.matrix.cols()));
        }
        for &e in &dec.inputs {
            if !support.contains(&e) || net.edge(e)?.head != terminals[i] {
                return bad(format!("decoder {} reads edge {e}, which is not a coded in-edge", i + 1));
            }
        }
    }
    Ok(())
}

/// One decoding failure seen during simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    /// 1 or 2.
    pub terminal: usize,
    /// Which message set was decoded wrongly: "X0" or the private one.
    pub message: &'static str,
    pub expected: Vec<Gf>,
    pub received: Vec<Gf>,
}

impl fmt::Display for TrialFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial {}: terminal T{} decoded {} as {:?}, expected {:?}",
            self.trial,
            self.terminal,
            self.message,
            self.received.iter().map(|g| g.0).collect::<Vec<_>>(),
            self.expected.iter().map(|g| g.0).collect::<Vec<_>>()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sends random message tuples through the network edge by edge and checks
/// that each terminal recovers what it asked for. Route edges copy their
/// predecessor's symbol; coded edges combine their inputs with the plan's
/// local coefficients. Global coding vectors are not consulted.
pub fn verify_plan<R: Rng + ?Sized>(
    net: &Network,
    plan: &TransferPlan,
    trials: usize,
    rng: &mut R,
) -> Result<VerificationReport> {
    check_plan_invariants(net, plan)?;
    let f = &plan.field;
    let d = plan.demand;
    let support = plan.code_support();
    let order = topological_edge_order(net, &support).expect("checked acyclic");
    let mut failures = Vec::new();
    for trial in 0..trials {
        let draw = |n: u32, rng: &mut R| -> Vec<Gf> { (0..n).map(|_| f.random(rng)).collect() };
        let x0 = draw(d.h0, rng);
        let x1 = draw(d.h1, rng);
        let x2 = draw(d.h2, rng);
        let mut symbol: BTreeMap<EdgeId, Gf> = BTreeMap::new();
        for (routes, msgs) in [(&plan.x1_routes, &x1), (&plan.x2_routes, &x2)] {
            for (p, &m) in routes.iter().zip(msgs) {
                // The source injects the message; every later hop copies
                // what arrived on the previous edge.
                let mut prev: Option<EdgeId> = None;
                for &e in &p.edges {
                    let v = prev.map_or(m, |x| symbol[&x]);
                    symbol.insert(e, v);
                    prev = Some(e);
                }
            }
        }
        for &e in &order {
            let mut acc = Gf::ZERO;
            for &(input, c) in &plan.local[&e] {
                let v = match input {
                    CodeInput::Source(i) => x0[i],
                    CodeInput::Edge(x) => symbol[&x],
                };
                acc = f.add(acc, f.mul(c, v));
            }
            symbol.insert(e, acc);
        }
        for (i, (routes, private)) in [(&plan.x1_routes, &x1), (&plan.x2_routes, &x2)].into_iter().enumerate() {
            let got: Vec<Gf> = routes.iter().map(|p| symbol[p.edges.last().expect("nonempty")]).collect();
            if &got != private {
                failures.push(TrialFailure {
                    trial,
                    terminal: i + 1,
                    message: if i == 0 { "X1" } else { "X2" },
                    expected: private.clone(),
                    received: got,
                });
            }
            let dec = &plan.decoders[i];
            let received: Vec<Gf> = dec.inputs.iter().map(|e| symbol[e]).collect();
            let got = if d.h0 == 0 { Vec::new() } else { dec.matrix.mul_vec(f, &received)? };
            if got != x0 {
                failures.push(TrialFailure {
                    trial,
                    terminal: i + 1,
                    message: "X0",
                    expected: x0.clone(),
                    received: got,
                });
            }
        }
    }
    let failed_trials: BTreeSet<usize> = failures.iter().map(|t| t.trial).collect();
    Ok(VerificationReport { trials, passed: trials - failed_trials.len(), failures })
}
