//! Quantum testing of junta variables, simulated exactly.
//!
//! Given a Boolean function `f` of `n` variables available only as a black
//! box, the tester decides whether a chosen variable `x_i` is irrelevant
//! (a *junta* variable). It builds the derived function
//! `g(x) = f(x) ^ f(x ^ e_i)` from two copies of the black box, checks the
//! constant term of `g`, and then searches for a solution of `g` with an
//! amplitude-amplification loop driven by the partial diffusion operator
//! and an unknown number of matches. `g` has no solutions exactly when
//! `x_i` is junta.
//!
//! Modules:
//!
//! - [`boolfn`]: algebraic normal form, truth tables, variable negation and
//!   the brute-force ground truth.
//! - [`statevec`]: dense `n + 1` qubit state vector with the bit-flip oracle,
//!   partial diffusion and measurement.
//! - [`analytic`]: closed-form amplitude recurrence, success probability and
//!   iteration count.
//! - [`search`]: known-match and unknown-match search drivers.
//! - [`junta`]: the end-to-end tester and its reports.
//! - [`generators`]: named fixture generators, selected at runtime.
//! - [`validate`], [`sweep`], [`cli`]: the command-line harness.
//!
//! Bit ordering everywhere: integer input `x` assigns bit `j` (value `2^j`)
//! to variable `x_j`.

pub mod analytic;
pub mod boolfn;
pub mod cli;
mod error;
pub mod generators;
pub mod golden;
pub mod junta;
pub mod oracle;
pub mod rng;
pub mod search;
pub mod statevec;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
