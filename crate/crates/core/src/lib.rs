//! Exact reduction from linear recurrence sequences to ergodic Markov chains.
//!
//! An order-`k` rational LRS becomes a strictly positive, column-stochastic
//! `(k + 1) × (k + 1)` matrix `M`, a pair of states `(i, j)` and a threshold
//! `r` such that `m_ij⁽ⁿ⁾ − r` has the sign of `u_n` for every `n ≥ 1`. Zero,
//! negativity and eventual non-negativity questions about the sequence turn
//! into threshold questions about the chain.
//!
//! - [`kernel`]: exact rationals, matrices, polynomials
//! - [`lrs`]: sequences, companion matrices, shifts and strides
//! - [`degeneracy`]: root-of-unity ratios and the stride decomposition
//! - [`reduction`]: the chain construction and its certificate
//! - [`analysis`]: exact verification, ergodicity, scans, reverse reduction
//! - [`cli`]: the command pipeline used by the `lrs-markov` binary

pub mod analysis;
pub mod cli;
pub mod degeneracy;
pub mod error;
pub mod kernel;
pub mod lrs;
pub mod reduction;
pub mod sampling;
pub mod selftest;

pub use error::{Error, Result};
pub use kernel::{Matrix, Polynomial, Rational};
pub use lrs::Lrs;
pub use reduction::{MarkovInstance, QueryKind, ReductionCertificate};
