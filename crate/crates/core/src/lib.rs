//! Arithmetic, linear algebra and Lorentzian causal geometry over the
//! ring of generalized numbers, realized as asymptotic nets sampled on
//! a dyadic grid in the smoothing parameter.
//!
//! Every classical predicate (invertibility, strict positivity,
//! freeness, signature, causality, the inverse Cauchy-Schwarz
//! inequality, energy conditions) becomes an executable asymptotic
//! [`Verdict`] with an exponent certificate or witness indices.

pub mod causal;
pub mod charts;
pub mod expr;
pub mod fixtures;
pub mod gen_linalg;
pub mod gen_num;
pub mod rng;

pub use gen_num::{EpsGrid, GenNumber, IndexSet, NumError, OrderEstimate, Verdict, VerdictStatus};
