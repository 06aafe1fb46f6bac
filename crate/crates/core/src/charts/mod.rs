//! Desk-scale chart layer: metric, vector and scalar fields on an open
//! box domain, evaluation at compactly supported generalized points,
//! point-value characterization of the metric index and of causality,
//! and the Riemannian construction from two time-like fields.

mod domain;
mod fields;
mod ops;

pub use domain::{ChartDomain, GenPoint};
pub use fields::{MetricField, ScalarField, VectorField};
pub use ops::{
    classify_field, eval_metric, eval_scalar, eval_vector, metric_index_at_points,
    riemannian_from_timelike, sample_points, FieldClassification, PointIndexReport,
};

use thiserror::Error;

use crate::causal::CausalError;
use crate::gen_linalg::LinalgError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ChartError {
    #[error("generalized point {point} leaves the chart domain on the tail window")]
    PointOutsideDomain { point: String },
    #[error("metric is degenerate at sampled point {point}")]
    DegenerateAtPoint { point: usize },
    #[error("metric field is not Lorentzian over the sample family")]
    NotLorentzian,
    #[error("fields are not uniformly time-like with a common orientation: {detail}")]
    OrientationMismatch { detail: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty sample family")]
    EmptyFamily,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
