//! Random linear multicast codes with rank verification.
//!
//! The code lives on the union of `h0` edge-disjoint paths to each of the two
//! targets. Every edge of that support forms a linear combination of the
//! symbols entering its tail; the source is treated as having `h0` virtual
//! inputs carrying the unit vectors.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::{GaloisField, Gf, MAX_BITS};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::flow::{decompose_paths, max_flow, topological_edge_order};
use crate::netgraph::{EdgeId, Network, NodeId};

/// Retries per field width before the field is enlarged.
pub const RETRIES_PER_FIELD: usize = 32;

/// Where a local coefficient takes its input from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeInput {
    /// The i-th common message symbol, available at the source.
    Source(usize),
    Edge(EdgeId),
}

pub type LocalCoefficients = BTreeMap<EdgeId, Vec<(CodeInput, Gf)>>;

/// Structure of a code before coefficients are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSkeleton {
    pub h0: usize,
    pub source: NodeId,
    pub targets: [NodeId; 2],
    /// Support edges in evaluation order.
    pub order: Vec<EdgeId>,
    pub inputs: BTreeMap<EdgeId, Vec<CodeInput>>,
    /// The `h0` support edges entering each target.
    pub target_inputs: [Vec<EdgeId>; 2],
}

impl CodeSkeleton {
    /// Picks `h0` edge-disjoint paths to each target and orders their union.
    pub fn new(net: &Network, source: NodeId, targets: [NodeId; 2], h0: usize) -> Result<Self> {
        let mut support = BTreeSet::new();
        let mut target_inputs: [Vec<EdgeId>; 2] = Default::default();
        if h0 > 0 {
            for (i, &t) in targets.iter().enumerate() {
                let flow = max_flow(net, source, &[t])?;
                if (flow.value as usize) < h0 {
                    return Err(Error::InfeasibleResidual(format!(
                        "max-flow to '{}' is {}, need {h0}",
                        net.label(t),
                        flow.value
                    )));
                }
                for p in decompose_paths(net, &flow)?.into_iter().take(h0) {
                    target_inputs[i].push(*p.edges.last().expect("nonempty path"));
                    support.extend(p.edges);
                }
            }
        }
        let order = topological_edge_order(net, &support).map_err(Error::CyclicCode)?;
        let mut inputs = BTreeMap::new();
        for &id in &order {
            let tail = net.edge(id)?.tail;
            let mut ins: Vec<CodeInput> = Vec::new();
            if tail == source {
                ins.extend((0..h0).map(CodeInput::Source));
            }
            ins.extend(
                net.in_edges(tail)?
                    .iter()
                    .filter(|e| support.contains(e))
                    .map(|&e| CodeInput::Edge(e)),
            );
            inputs.insert(id, ins);
        }
        Ok(CodeSkeleton { h0, source, targets, order, inputs, target_inputs })
    }

    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.order.iter().copied()
    }

    /// Uniformly random nonzero local coefficients.
    pub fn random_coefficients<R: Rng + ?Sized>(&self, field: &GaloisField, rng: &mut R) -> LocalCoefficients {
        self.order
            .iter()
            .map(|&e| {
                let row = self.inputs[&e].iter().map(|&i| (i, field.random_nonzero(rng))).collect();
                (e, row)
            })
            .collect()
    }

    /// Global coding vectors obtained by propagating `local` in order.
    pub fn global_vectors(&self, field: &GaloisField, local: &LocalCoefficients) -> Result<BTreeMap<EdgeId, Vec<Gf>>> {
        propagate(field, self.h0, &self.order, local)
    }

    /// Completes the code if both transfer matrices are invertible.
    pub fn realize(&self, field: &GaloisField, local: LocalCoefficients) -> Result<Option<MulticastCode>> {
        let global = self.global_vectors(field, &local)?;
        let mut decoders = Vec::with_capacity(2);
        for (i, &node) in self.targets.iter().enumerate() {
            let inputs = self.target_inputs[i].clone();
            let transfer = Matrix::from_rows(inputs.iter().map(|e| global[e].clone()).collect())?;
            let transfer = if inputs.is_empty() { Matrix::zeros(0, self.h0) } else { transfer };
            let Some(decode) = transfer.inverse(field) else {
                return Ok(None);
            };
            decoders.push(TerminalDecoder { node, inputs, transfer, decode });
        }
        let [t1, t2]: [TerminalDecoder; 2] = decoders.try_into().expect("two decoders");
        Ok(Some(MulticastCode { field: field.clone(), h0: self.h0, local, global, decoders: [t1, t2] }))
    }
}

/// Evaluates global vectors from local coefficients, visiting edges in
/// `order`. Inputs must already have been visited.
pub fn propagate(
    field: &GaloisField,
    h0: usize,
    order: &[EdgeId],
    local: &LocalCoefficients,
) -> Result<BTreeMap<EdgeId, Vec<Gf>>> {
    let mut global: BTreeMap<EdgeId, Vec<Gf>> = BTreeMap::new();
    for &e in order {
        let row = local
            .get(&e)
            .ok_or_else(|| Error::PlanMismatch(format!("edge {e} has no local coefficients")))?;
        let mut v = vec![Gf::ZERO; h0];
        for &(input, c) in row {
            match input {
                CodeInput::Source(i) if i < h0 => v[i] = field.add(v[i], c),
                CodeInput::Source(i) => {
                    return Err(Error::PlanMismatch(format!("source symbol {i} out of range")));
                }
                CodeInput::Edge(src) => {
                    let g = global.get(&src).ok_or_else(|| {
                        Error::PlanMismatch(format!("edge {e} reads {src} before it is evaluated"))
                    })?;
                    for (x, &y) in v.iter_mut().zip(g) {
                        *x = field.add(*x, field.mul(c, y));
                    }
                }
            }
        }
        global.insert(e, v);
    }
    Ok(global)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalDecoder {
    pub node: NodeId,
    pub inputs: Vec<EdgeId>,
    /// Rows are the global vectors of `inputs`.
    pub transfer: Matrix,
    pub decode: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastCode {
    pub field: GaloisField,
    pub h0: usize,
    pub local: LocalCoefficients,
    pub global: BTreeMap<EdgeId, Vec<Gf>>,
    pub decoders: [TerminalDecoder; 2],
}

impl MulticastCode {
    /// A code for `h0 = 0`: no support, nothing to decode.
    pub fn empty(field: GaloisField, targets: [NodeId; 2]) -> Self {
        let dec = |node| TerminalDecoder {
            node,
            inputs: Vec::new(),
            transfer: Matrix::zeros(0, 0),
            decode: Matrix::zeros(0, 0),
        };
        MulticastCode {
            field,
            h0: 0,
            local: BTreeMap::new(),
            global: BTreeMap::new(),
            decoders: [dec(targets[0]), dec(targets[1])],
        }
    }

    pub fn support(&self) -> BTreeSet<EdgeId> {
        self.local.keys().copied().collect()
    }

    /// Symbol carried by every support edge when the source sends `x0`.
    pub fn apply(&self, x0: &[Gf]) -> Result<BTreeMap<EdgeId, Gf>> {
        if x0.len() != self.h0 {
            return Err(Error::invalid(format!("expected {} symbols, got {}", self.h0, x0.len())));
        }
        Ok(self.global.iter().map(|(&e, g)| (e, self.field.dot(g, x0))).collect())
    }

    /// Recovers the source symbols at target `i` from the edge symbols.
    pub fn decode(&self, i: usize, symbols: &BTreeMap<EdgeId, Gf>) -> Result<Vec<Gf>> {
        let dec = &self.decoders[i];
        let received: Vec<Gf> = dec
            .inputs
            .iter()
            .map(|e| symbols.get(e).copied().ok_or(Error::UnknownEdge(*e)))
            .collect::<Result<_>>()?;
        dec.decode.mul_vec(&self.field, &received)
    }
}

/// Forward evaluation of `code` on the message vector `x0`.
pub fn apply_code(code: &MulticastCode, x0: &[Gf]) -> Result<BTreeMap<EdgeId, Gf>> {
    code.apply(x0)
}

/// Builds a code delivering `h0` symbols from `source` to both `targets`.
///
/// Draws random local coefficients until both transfer matrices have full
/// rank, trying [`RETRIES_PER_FIELD`] times per field and doubling the field
/// width (up to 16 bits) after each unsuccessful round.
pub fn build_multicast_code<R: Rng + ?Sized>(
    net: &Network,
    source: NodeId,
    targets: [NodeId; 2],
    h0: usize,
    field_bits: u32,
    rng: &mut R,
) -> Result<MulticastCode> {
    let mut field = GaloisField::new(field_bits)?;
    if h0 == 0 {
        return Ok(MulticastCode::empty(field, targets));
    }
    let skel = CodeSkeleton::new(net, source, targets, h0)?;
    let mut attempts = 0;
    loop {
        for _ in 0..RETRIES_PER_FIELD {
            attempts += 1;
            let local = skel.random_coefficients(&field, rng);
            if let Some(code) = skel.realize(&field, local)? {
                return Ok(code);
            }
        }
        if field.bits() >= MAX_BITS {
            return Err(Error::CodeConstruction { attempts, field_bits: field.bits() });
        }
        field = GaloisField::new((field.bits() * 2).min(MAX_BITS))?;
    }
}
