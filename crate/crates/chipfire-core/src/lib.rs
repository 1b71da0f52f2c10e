//! Divisor theory on finite multigraphs: chip-firing, Dhar's burning
//! algorithm, reduced divisors, rank, gonality, and the graph surgeries
//! (subdivision, contraction, bridge splitting) needed to verify
//! low-genus existence results by exhaustive sweeps.
//!
//! The crate is `no_std` (with `alloc`); everything that touches files,
//! threads or the command line lives in the companion `chipfire` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bn;
pub mod config;
pub mod divisor;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod reduce;

pub use divisor::{Divisor, FiringScript};
pub use error::Error;
pub use graph::{ContractionMap, EdgeId, MultiGraph, TopologicalEdge, VertexId};
pub use reduce::{BurnReport, FirstBurnConfiguration};

/// Safety cap on reduction passes; overridable per call (the CLI wires it
/// to the `CHIPFIRE_ITER_CAP` environment variable).
pub const DEFAULT_ITER_CAP: usize = 1_000_000;
