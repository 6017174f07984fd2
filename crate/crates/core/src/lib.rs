//! Planted hitting set recovery in hypergraphs.
//!
//! The crate is organised around the [`Hypergraph`] type:
//!
//! - [`hypergraph`]: representation, hitting-set predicates, pruning and the
//!   weighted clique-graph projection.
//! - [`recovery`]: the randomized greedy maximal-matching hitting set and the
//!   union-of-minimal-hitting-sets (UMHS) recovery algorithm.
//! - [`oracle`]: exact small-instance machinery (minimum hitting set,
//!   minimal hitting set enumeration, sunflowers and kernelization).
//! - [`generators`]: core-fringe SBM hypergraphs, the tree lower-bound family
//!   and random fixtures.
//! - [`baselines`]: centrality and core-periphery rankers.
//! - [`eval`]: precision at core size, AUPRC and iteration sweeps.
//! - [`io`] and [`experiment`]: file formats and the batch harness behind the
//!   `umhs` binary.

pub mod baselines;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod ranking;
pub mod recovery;
mod rng;

pub use error::{Error, Result};
pub use hypergraph::{HittingSet, Hypergraph, LabeledHypergraph, NodeId};
pub use ranking::Ranking;
pub use recovery::{umhs, UmhsConfig, UmhsResult};
