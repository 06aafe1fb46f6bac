//! The ring of generalized numbers as sampled asymptotic nets.
//!
//! A net is a pure evaluator `eps -> f64` cached on the dyadic grid
//! `eps_k = 2^(-k)`. Quantifiers of the form "for all small eps" are
//! decided on the tail window of the grid; every predicate returns a
//! three-valued [`Verdict`] carrying either an exponent certificate or
//! witness indices. Magnitude comparisons run in log space so that
//! thresholds like `eps^40` at `eps = 2^(-32)` never underflow.

mod grid;
mod index_set;
mod number;
mod verdict;

pub use grid::EpsGrid;
pub use index_set::IndexSet;
pub use number::{GenNumber, OrderEstimate};
pub use verdict::{Verdict, VerdictStatus};

use thiserror::Error;

/// Errors from net construction and ring operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum NumError {
    #[error(
        "net is not moderate: grows past eps^(-m_cap) at tail indices {witnesses:?} ({label})"
    )]
    NotModerate { label: String, witnesses: Vec<u32> },
    #[error("net is not finite at grid index {k}")]
    NonFinite { k: u32 },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("division by a non-invertible net ({label})")]
    DivisionByNonInvertible { label: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
