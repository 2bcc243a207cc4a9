//! Graphviz rendering of networks and plans.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::augment::{T1_PRIME, T2_PRIME, Y1, Y2};
use crate::netgraph::{Demand, EdgeId, Network};
use crate::planner::TransferPlan;

const X1_STYLE: &str = "color=\"blue\", penwidth=2.5";
const X2_STYLE: &str = "color=\"red\", penwidth=2.5";
const CODED_STYLE: &str = "color=\"darkgreen\"";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `net` as a DOT digraph.
///
/// With a plan, edges on `X1` routes are blue, `X2` routes red, and coded
/// edges green with their global coding vector as label. With `augmented`,
/// the virtual terminals and collectors are drawn with one dashed edge per
/// non-empty virtual bundle, labelled by its capacity.
pub fn export_dot(net: &Network, plan: Option<&TransferPlan>, augmented: Option<Demand>) -> String {
    let mut route_of: BTreeMap<EdgeId, &str> = BTreeMap::new();
    if let Some(p) = plan {
        for (routes, name) in [(&p.x1_routes, "X1"), (&p.x2_routes, "X2")] {
            for r in routes {
                for &e in &r.edges {
                    route_of.insert(e, name);
                }
            }
        }
    }

    let mut out = String::from("digraph network {\n  rankdir=LR;\n");
    let s = net.source();
    let [t1, t2] = net.terminals();
    for v in net.nodes() {
        let shape = if v == s {
            "doublecircle"
        } else if v == t1 || v == t2 {
            "box"
        } else {
            "circle"
        };
        writeln!(out, "  {} [shape={shape}];", quote(net.label(v))).unwrap();
    }
    for e in net.edges() {
        let mut attrs = vec![format!("id=\"e{}\"", e.id.0)];
        match route_of.get(&e.id) {
            Some(&"X1") => attrs.push(format!("{X1_STYLE}, label=\"X1\"")),
            Some(_) => attrs.push(format!("{X2_STYLE}, label=\"X2\"")),
            None => {
                if let Some(v) = plan.and_then(|p| p.global.get(&e.id).map(|v| (p, v))) {
                    let (p, v) = v;
                    let w = p.field.hex_width();
                    let label: Vec<String> = v.iter().map(|g| format!("{:0w$x}", g, w = w)).collect();
                    attrs.push(format!("{CODED_STYLE}, label=\"[{}]\"", label.join(",")));
                }
            }
        }
        writeln!(
            out,
            "  {} -> {} [{}];",
            quote(net.label(e.tail)),
            quote(net.label(e.head)),
            attrs.join(", ")
        )
        .unwrap();
    }
    if let Some(d) = augmented {
        for name in [T1_PRIME, T2_PRIME, Y1, Y2] {
            writeln!(out, "  {} [shape=circle, style=dashed];", quote(name)).unwrap();
        }
        let (t1, t2) = (net.label(t1), net.label(t2));
        for (tail, head, cap) in [
            (t1, T1_PRIME, d.first()),
            (T1_PRIME, Y1, d.first()),
            (T1_PRIME, Y2, d.h1),
            (t2, T2_PRIME, d.second()),
            (T2_PRIME, Y1, d.h2),
            (T2_PRIME, Y2, d.second()),
        ] {
            if cap > 0 {
                writeln!(out, "  {} -> {} [style=dashed, label=\"{cap}\"];", quote(tail), quote(head))
                    .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
