//! Exact lattice-path combinatorics for the one-sided gambler's ruin walk.
//!
//! A particle starts at `x = k > 0`, steps right with probability `p` and
//! left with probability `1 - p`, and is absorbed on its first visit to the
//! origin. Each absorbed trajectory is a lattice path with `n` right steps
//! and `n + k` left steps, so the absorption probability is the series
//!
//! ```text
//! P(x = k) = sum_{n >= 0} C_k(n) p^n (1 - p)^(n + k)
//! ```
//!
//! where `C_k(n) = k / (2n + k) * binom(2n + k, n)` counts those paths.
//!
//! The crate is organized as:
//!
//! - [`combinatorics`]: exact Catalan and ballot counts and the recurrences
//!   that relate them.
//! - [`paths`]: the concrete path model, a brute-force first-passage
//!   enumerator, and the bijections behind the counting identities.
//! - [`probability`]: the absorption probability by closed form, certified
//!   truncated series, and generating function.
//! - [`simulator`]: seeded, reproducible Monte Carlo estimates.
//! - [`verify`]: identity suites that cross-check all of the above.
//! - [`cli`]: the command-line front end used by the `ruin` binary.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod paths;
pub mod probability;
pub mod simulator;
pub mod verify;

pub use combinatorics::{
    ballot_count, ballot_via_recurrence, catalan, catalan_via_convolution, BallotCount,
};
pub use error::{Error, Result};
pub use paths::{
    enumerate_first_passage, first_return_compose, first_return_decompose, is_first_passage,
    partition_by_first_step, shift_bijection_k2, LatticePath, Step,
};
pub use probability::{
    absorption_exact, absorption_series, absorption_via_gf, generating_function,
    verify_three_term, Probability, SeriesEvaluation, SeriesOptions, StepProbability,
};
pub use simulator::{estimate_absorption, run_walk, AbsorptionEstimate, WalkConfig, WalkOutcome};
