//! Networks shipped with the crate.

use crate::cli::files::NetworkFile;
use crate::netgraph::{EdgeId, Network};

/// JSON text of the two-terminal tightness example: four source out-links
/// `1->6, 1->2, 1->3, 1->7`, with nodes 2, 3, 4, 5 forming a butterfly
/// between the source and the terminals.
pub const FIG2_JSON: &str = include_str!("../fixtures/fig2.json");

pub fn fig2() -> Network {
    NetworkFile::from_json(FIG2_JSON)
        .and_then(|f| f.to_network())
        .expect("shipped fixture parses")
}

/// Id of the first edge `from -> to` in `net`, by label.
pub fn edge_between(net: &Network, from: &str, to: &str) -> Option<EdgeId> {
    let (a, b) = (net.node_by_label(from)?, net.node_by_label(to)?);
    net.edges().find(|e| e.tail == a && e.head == b).map(|e| e.id)
}
