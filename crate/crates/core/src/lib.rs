//! Transmission schemes for a single source and two terminals that want
//! overlapping message sets.
//!
//! The source holds three message streams: `X0` wanted by both terminals,
//! `X1` wanted only by `T1`, and `X2` wanted only by `T2`, at integer rates
//! `(h0, h1, h2)`. On a unit-capacity network the demand is supportable
//! exactly when
//!
//! ```text
//! min-cut(S, T1)       >= h0 + h1
//! min-cut(S, T2)       >= h0 + h2
//! min-cut(S, {T1, T2}) >= h0 + h1 + h2
//! ```
//!
//! and when it is, the private streams can be plainly routed while only the
//! common stream needs network coding. This crate decides feasibility,
//! constructs such a scheme, and checks it by simulating every symbol.
//!
//! ```
//! use twosink::{fixtures, planner, Demand};
//! use rand::SeedableRng;
//!
//! let net = fixtures::fig2();
//! let d = Demand::new(2, 1, 1);
//! assert!(planner::check_feasibility(&net, d)?.feasible);
//!
//! let plan = planner::synthesize(&net, d, 7)?;
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! assert!(planner::verify_plan(&net, &plan, 100, &mut rng)?.all_passed());
//! # Ok::<(), twosink::Error>(())
//! ```

pub mod augment;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod gen;
pub mod nccode;
pub mod netgraph;
pub mod planner;
pub mod recolor;

pub use error::{Error, Result};
pub use flow::EdgePath;
pub use netgraph::{Demand, EdgeId, Network, NetworkBuilder, NodeId};
pub use planner::{
    check_feasibility, synthesize, synthesize_with, verify_plan, FeasibilityReport,
    SynthesisOptions, TransferPlan,
};
