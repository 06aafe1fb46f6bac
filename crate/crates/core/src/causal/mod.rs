//! Lorentzian geometry over the module of generalized vectors:
//! certified bilinear forms, causal classification, orthogonal
//! complements of time-like vectors, the inverse Cauchy-Schwarz
//! inequality with its zero-divisor failure mode, boosts, the
//! Riemannian form built from a time-like pair, and energy tensors
//! with the dominant energy condition.

mod boost;
mod classify;
mod complement;
mod cs;
mod energy;
mod form;

pub use boost::{lorentz_boost, normalize_timelike, riemannian_from_pair, UNIT_NOISE_FLOOR};
pub use classify::{classify, same_orientation, CausalClass, CausalKind};
pub use complement::{decompose, orthogonal_complement_basis, repair_orthogonal, ComplementBasis};
pub use cs::{inverse_cauchy_schwarz, CsReport};
pub use energy::{classify_flux, dominant_energy_check, energy_tensor, flux_vector, EnergyTensor};
pub use form::BilinearForm;

use thiserror::Error;

use crate::gen_linalg::LinalgError;
use crate::gen_num::NumError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CausalError {
    #[error("form is not Lorentzian (index must be 1)")]
    NotLorentzian,
    #[error("vector is not time-like ({which})")]
    NotTimeLike { which: &'static str },
    #[error("vector is not unit time-like ({which})")]
    NotUnit { which: &'static str },
    #[error("vectors do not share a time orientation")]
    NotSameOrientation,
    #[error("source vector is not free ({detail})")]
    NotFree { detail: String },
    #[error("vectors are not orthogonal as classes ({detail})")]
    NotOrthogonalClass { detail: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Num(#[from] NumError),
}
