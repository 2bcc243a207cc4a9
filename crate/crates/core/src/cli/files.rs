//! JSON file formats: networks in, plans out.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::augment::RESERVED_PREFIX;
use crate::error::{Error, Result};
use crate::flow::EdgePath;
use crate::nccode::{CodeInput, GaloisField, Gf, Matrix};
use crate::netgraph::{expand_capacities, Demand, EdgeId, Network, NetworkBuilder};
use crate::planner::{TerminalDecoding, TransferPlan};

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub cap: i64,
}

/// Network description. Edge `i` of capacity `c` becomes `c` unit edges;
/// unit edge ids are assigned consecutively in file order starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub source: String,
    pub terminals: [String; 2],
}

impl NetworkFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("network file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_network(&self) -> Result<Network> {
        if self.nodes.is_empty() {
            return Err(Error::invalid("nodes: network has no nodes"));
        }
        let mut b = NetworkBuilder::new();
        for (i, label) in self.nodes.iter().enumerate() {
            if label.starts_with(RESERVED_PREFIX) {
                return Err(Error::invalid(format!(
                    "nodes[{i}]: label '{label}' uses the reserved prefix '{RESERVED_PREFIX}'"
                )));
            }
            if b.lookup(label).is_some() {
                return Err(Error::invalid(format!("nodes[{i}]: duplicate label '{label}'")));
            }
            b.node(label);
        }
        let resolve = |field: String, label: &str| {
            b.lookup(label)
                .ok_or_else(|| Error::invalid(format!("{field}: unknown node '{label}'")))
        };
        let mut weighted = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let tail = resolve(format!("edges[{i}].from"), &e.from)?;
            let head = resolve(format!("edges[{i}].to"), &e.to)?;
            if tail == head {
                return Err(Error::invalid(format!("edges[{i}]: self-loop on '{}'", e.from)));
            }
            if e.cap <= 0 {
                return Err(Error::invalid(format!(
                    "edges[{i}].cap: capacity must be a positive integer, got {}",
                    e.cap
                )));
            }
            weighted.push((tail, head, e.cap));
        }
        let source = resolve("source".into(), &self.source)?;
        let t1 = resolve("terminals[0]".into(), &self.terminals[0])?;
        let t2 = resolve("terminals[1]".into(), &self.terminals[1])?;
        for unit in expand_capacities(&weighted)? {
            b.edge(unit.tail, unit.head)?;
        }
        b.build(source, [t1, t2])
    }

    /// One unit edge per line; ids are renumbered densely in ascending order.
    pub fn from_network(net: &Network) -> Self {
        let label = |v| net.label(v).to_string();
        let [t1, t2] = net.terminals();
        NetworkFile {
            nodes: net.nodes().map(label).collect(),
            edges: net
                .edges()
                .map(|e| EdgeSpec { from: label(e.tail), to: label(e.head), cap: 1 })
                .collect(),
            source: label(net.source()),
            terminals: [label(t1), label(t2)],
        }
    }
}

pub const PLAN_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// "GF(2^m)"
    pub name: String,
    pub bits: u32,
    /// Reduction polynomial in hex, leading term included.
    pub modulus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalTerm {
    pub input: CodeInput,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoderSpec {
    pub inputs: Vec<u32>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeSpec {
    pub t1: DecoderSpec,
    pub t2: DecoderSpec,
}

/// Serialized [`TransferPlan`]. Field elements are lowercase hex padded to
/// the field width. Edge ids refer to the unit edges of the network file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub version: u32,
    pub demand: Demand,
    pub seed: u64,
    pub field: FieldSpec,
    pub x1_routes: Vec<Vec<u32>>,
    pub x2_routes: Vec<Vec<u32>>,
    pub local_coefficients: BTreeMap<u32, Vec<LocalTerm>>,
    pub coding_vectors: BTreeMap<u32, Vec<String>>,
    pub decode: DecodeSpec,
}

impl PlanFile {
    pub fn from_plan(plan: &TransferPlan) -> Self {
        let f = &plan.field;
        let hex = |g: Gf| format!("{:0w$x}", g, w = f.hex_width());
        let routes = |rs: &[EdgePath]| rs.iter().map(|p| p.edges.iter().map(|e| e.0).collect()).collect();
        let decoder = |d: &TerminalDecoding| DecoderSpec {
            inputs: d.inputs.iter().map(|e| e.0).collect(),
            matrix: d.matrix.to_rows().into_iter().map(|r| r.into_iter().map(hex).collect()).collect(),
        };
        PlanFile {
            version: PLAN_VERSION,
            demand: plan.demand,
            seed: plan.seed,
            field: FieldSpec {
                name: f.name(),
                bits: f.bits(),
                modulus: format!("{:#x}", f.modulus()),
            },
            x1_routes: routes(&plan.x1_routes),
            x2_routes: routes(&plan.x2_routes),
            local_coefficients: plan
                .local
                .iter()
                .map(|(e, row)| {
                    let terms = row.iter().map(|&(input, c)| LocalTerm { input, coeff: hex(c) }).collect();
                    (e.0, terms)
                })
                .collect(),
            coding_vectors: plan.global.iter().map(|(e, v)| (e.0, v.iter().copied().map(hex).collect())).collect(),
            decode: DecodeSpec { t1: decoder(&plan.decoders[0]), t2: decoder(&plan.decoders[1]) },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Parses a plan, refusing any schema version other than
    /// [`PLAN_VERSION`].
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("plan file: {e}")))?;
        match value.get("version").and_then(serde_json::Value::as_u64) {
            Some(v) if v == PLAN_VERSION as u64 => {}
            Some(v) => return Err(Error::invalid(format!("plan file: unsupported version {v}"))),
            None => return Err(Error::invalid("plan file: missing version")),
        }
        serde_json::from_value(value).map_err(|e| Error::invalid(format!("plan file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_plan(&self) -> Result<TransferPlan> {
        let modulus = u32::from_str_radix(self.field.modulus.trim_start_matches("0x"), 16)
            .map_err(|e| Error::invalid(format!("field.modulus: {e}")))?;
        let field = GaloisField::with_modulus(self.field.bits, modulus)?;
        let elem = |s: &str, at: &str| -> Result<Gf> {
            let v = u32::from_str_radix(s, 16).map_err(|e| Error::invalid(format!("{at}: '{s}': {e}")))?;
            field.element(v).map_err(|e| Error::invalid(format!("{at}: {e}")))
        };
        let routes = |rs: &[Vec<u32>]| -> Vec<EdgePath> {
            rs.iter().map(|p| EdgePath::new(p.iter().map(|&e| EdgeId(e)).collect())).collect()
        };
        let mut local = BTreeMap::new();
        for (&e, terms) in &self.local_coefficients {
            let row = terms
                .iter()
                .map(|t| Ok((t.input, elem(&t.coeff, &format!("local_coefficients.{e}"))?)))
                .collect::<Result<Vec<_>>>()?;
            local.insert(EdgeId(e), row);
        }
        let mut global = BTreeMap::new();
        for (&e, v) in &self.coding_vectors {
            let v = v
                .iter()
                .map(|s| elem(s, &format!("coding_vectors.{e}")))
                .collect::<Result<Vec<_>>>()?;
            global.insert(EdgeId(e), v);
        }
        let decoder = |d: &DecoderSpec, name: &str| -> Result<TerminalDecoding> {
            let rows = d
                .matrix
                .iter()
                .map(|r| r.iter().map(|s| elem(s, &format!("decode.{name}"))).collect())
                .collect::<Result<Vec<Vec<Gf>>>>()?;
            let matrix = if rows.is_empty() {
                Matrix::zeros(0, d.inputs.len())
            } else {
                Matrix::from_rows(rows)?
            };
            Ok(TerminalDecoding { inputs: d.inputs.iter().map(|&e| EdgeId(e)).collect(), matrix })
        };
        if self.x1_routes.iter().chain(&self.x2_routes).any(Vec::is_empty) {
            return Err(Error::invalid("plan file: empty route"));
        }
        let decoders = [decoder(&self.decode.t1, "t1")?, decoder(&self.decode.t2, "t2")?];
        Ok(TransferPlan {
            demand: self.demand,
            seed: self.seed,
            field: field.clone(),
            x1_routes: routes(&self.x1_routes),
            x2_routes: routes(&self.x2_routes),
            local,
            global,
            decoders,
        })
    }
}
