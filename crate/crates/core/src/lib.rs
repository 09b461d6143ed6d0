//! Temporal contact-network analytics.
//!
//! The crate reconstructs the growth of a partner-notification contact
//! network from detection-dated records, computes a battery of structural
//! metrics per snapshot, compares them against configuration-model null
//! ensembles, clusters the giant component by modularity, and runs Monte
//! Carlo tests for temporal homogeneity of the clusters. Synthetic
//! generators produce datasets with the same shape for testing and
//! calibration.
//!
//! Everything is deterministic: all randomness flows from caller-supplied
//! seeds, ties break on vertex id, and reductions run in fixed order, so a
//! given (input, seed) pair reproduces bit-identical results regardless of
//! thread count.

pub mod clustering;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod nullmodel;
pub mod report;
pub mod rng;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{
    snapshot_schedule, DetectionMethod, EdgeRecord, Group, InfectionDirection, Snapshot,
    TemporalGraph, ValidationReport, VertexRecord,
};
