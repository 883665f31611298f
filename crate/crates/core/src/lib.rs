#![forbid(unsafe_code)]

//! Exact information measures of high-order interdependence for discrete
//! joint distributions.
//!
//! The crate provides:
//!
//! - dense joint probability tables with entropy, marginalization and
//!   mutual-information primitives ([`dist`]);
//! - the scalar measures built on them — negentropy, total correlation,
//!   binding entropy, O-information, interaction information, local
//!   O-information, TSE complexity and the ψ profile — plus their analytic
//!   bounds ([`metrics`]);
//! - the partition lattice of the variable indices, with edge weights that
//!   decompose total correlation, binding entropy and O-information along
//!   any refinement path ([`lattice`]);
//! - generators for the extremal and ensemble distributions used to probe
//!   these measures: copies, xors, channel-coupled systems, mixtures,
//!   flat-simplex draws and exact Gibbs models ([`generators`]);
//! - an estimation pipeline from categorical time series with circular
//!   block-bootstrap standard errors ([`estimation`]).
//!
//! All quantities are computed internally in nats and converted once to the
//! requested [`unit::LogUnit`]. Tables are immutable values and every
//! operation is a pure function, so everything can be shared across threads.

pub mod dist;
pub mod error;
pub mod estimation;
pub mod generators;
pub mod lattice;
pub mod metrics;
pub mod sampling;
pub mod stats;
pub mod unit;

pub use dist::{IndexSet, JointTable};
pub use error::{Error, Result};
pub use unit::LogUnit;
