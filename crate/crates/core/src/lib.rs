//! Kernel density classification with second-order Beta posteriors and a
//! pool-based active-learning benchmark.
//!
//! The crate is organized around one central object: the second-order
//! distribution of the class posterior. A kernel density classifier over
//! binary labels does not just produce a point estimate `p(y = +1 | x)`;
//! with a Gamma approximation of the kernel evidence per class, the
//! posterior itself becomes a Beta-distributed random variable
//! `Beta(delta + k_pos, delta + k_neg)`. Everything else is built on top:
//!
//! - [`distributions`]: Beta/Gamma primitives and the special functions
//!   (regularized incomplete beta and gamma) that the rest relies on.
//! - [`kde`]: the Gaussian-kernel evidence sums, bandwidth selection,
//!   density estimates and the plug-in classifier.
//! - [`risk`]: point risk, distribution-aware expected risk, and the
//!   training utility value (risk gap times density) used for querying.
//! - [`strategies`]: query selection — the distributional strategy plus
//!   uncertainty, error-reduction and random sampling baselines.
//! - [`preprocess`]: categorical encoding, imputation, standardization,
//!   PCA with automatic dimension selection.
//! - [`harness`]: cross-validated learning-curve simulation, truncation,
//!   area-under-learning-curve scoring, and the XOR synthetic scenario.
//! - [`stats`]: rank-based strategy comparison (Friedman test with the
//!   Iman-Davenport correction, Nemenyi critical differences).
//!
//! The crate is `no_std` (with `alloc`); all I/O, file formats and the
//! command-line driver live in the companion `deal-cli` crate. Every
//! operation that consumes randomness takes an explicit seed, so results
//! are reproducible bit for bit regardless of scheduling.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod distributions;
pub mod error;
pub mod harness;
pub mod kde;
pub mod preprocess;
pub mod risk;
pub mod stats;
pub mod strategies;

pub use error::{Error, Result};
