//! Continuous global optimization with coupled simulated annealing.
//!
//! The crate provides three annealing drivers built on a shared ensemble
//! substrate:
//!
//! * [`csa::run_csa`] — classic coupled simulated annealing with the
//!   fast-annealing generation schedule,
//! * [`csa::run_rcsa`] / [`csa::run_bcsa_sweep`] — the random-initialization
//!   and best-of-seven initialization protocols for the same kernel,
//! * [`pocsa::run_po_csa`] — per-optimizer generation temperatures governed
//!   by the perpetual-orbit controller with minimum-gain acceptance.
//!
//! [`benchmarks`] holds the 14-function test suite (sphere through rotated
//! Schwefel) used by the experiment harness. All randomness flows through
//! seeded, stream-splittable [`rng::RngStream`]s, so every run is exactly
//! reproducible from its seed.

pub mod benchmarks;
pub mod csa;
pub mod ensemble;
pub mod error;
pub mod objective;
pub mod orbit;
pub mod pocsa;
pub mod rng;
pub mod rotation;
pub mod run;

pub use error::{Error, Result};
pub use objective::ObjectiveFunction;
pub use rng::RngStream;
pub use run::{RunResult, Trace, TraceLevel};
