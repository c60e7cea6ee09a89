//! Online contract design for hidden-action principal-agent problems.
//!
//! The crate is `no_std` and only needs `alloc`. It carries everything that
//! is pure computation:
//!
//! - [`model`]: instances, contracts, agent best response and the principal's
//!   expected utility, plus stochastic round simulation.
//! - [`discretization`]: greedy spherical-code direction covers, the two-step
//!   discretized arm set, uniform grids and intrinsic-dimension estimates.
//! - [`bandit`] and [`learners`]: the capped UCB subroutine and the three
//!   online learners (general spherical-code, linear, uniform grid).
//! - [`instances`]: hard-instance families, dynamic pricing, random and FOSD
//!   generators with structural verifiers.
//! - [`oracle`]: grid-search optimal contracts and exact pseudo-regret.
//! - [`properties`]: executable property suites over random instances.
//!
//! File formats, the CLI and parallel drivers live in the `contractlab`
//! companion crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bandit;
pub mod discretization;
mod error;
pub mod instances;
pub mod learners;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod rng;

pub use error::{Error, Result};
pub use model::{ActionSpec, AgentType, Contract, Instance, OutcomeModel, RoundSample, Violation};
