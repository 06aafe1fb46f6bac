//! Independent slice-wise validators for the generalized pipeline.
//!
//! Everything here recomputes results with methods disjoint from the
//! main code path: closed-form eigenvalues for n <= 3, Householder
//! tridiagonalization with Sturm-count bisection inside Gershgorin
//! brackets for n <= 6, classical sign-based causality, and direct
//! coordinate scans for freeness. The crate also hosts the
//! deterministic random corpora used by the verification suites.

pub mod corpus;
mod eigen;

pub use eigen::{
    complex_spectrum_2x2, perturbation_check, slice_eigen_oracle, sym_eigenvalues_desc,
};

use gennum_core::gen_linalg::{gen_eigen, GenMatrix, GenVector, LinalgError};
use gennum_core::gen_num::OrderEstimate;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("slice oracles cover n <= 6, got n = {n}")]
    DimensionTooLarge { n: usize },
    #[error("slice {k} is not a classical Lorentz metric")]
    SliceNotLorentzian { k: u32 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Classical result at one grid slice, with the deviation from the
/// generalized pipeline.
#[derive(Debug, Clone)]
pub struct SliceReport {
    pub k: u32,
    pub classical: SliceValue,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub enum SliceValue {
    /// Descending eigenvalues of the slice.
    Eigenvalues(Vec<f64>),
    /// Sign code of the classical causal character: -1 time-like,
    /// 0 null, +1 space-like; payload is the norm value.
    Causal { code: i8, norm: f64 },
    /// A single scalar.
    Value(f64),
}

/// Classical causality at every tail slice: requires each slice of `g`
/// to be a Lorentz metric in the classical sense (one negative, n-1
/// positive eigenvalues) and classifies `u` by the exact sign of
/// `u^t g u`.
pub fn slice_causality_oracle(
    g: &GenMatrix,
    u: &GenVector,
) -> Result<Vec<SliceReport>, OracleError> {
    let n = g.dim();
    if n > 6 {
        return Err(OracleError::DimensionTooLarge { n });
    }
    let grid = g.grid();
    let mut out = Vec::with_capacity(grid.tail_len());
    for k in grid.tail_indices() {
        let gs = g.sample_at(k).symmetrized();
        let eigs = sym_eigenvalues_desc(n, &gs.a)?;
        let pos = eigs.iter().filter(|&&l| l > 0.0).count();
        let neg = eigs.iter().filter(|&&l| l < 0.0).count();
        if !(pos == n - 1 && neg == 1) {
            return Err(OracleError::SliceNotLorentzian { k });
        }
        let us = u.sample_at(k);
        let gu = gs.matvec(&us);
        let norm: f64 = us.iter().zip(gu.iter()).map(|(a, b)| a * b).sum();
        let code = if norm < 0.0 {
            -1
        } else if norm > 0.0 {
            1
        } else {
            0
        };
        out.push(SliceReport {
            k,
            classical: SliceValue::Causal { code, norm },
            delta: 0.0,
        });
    }
    Ok(out)
}

/// Summary of the slice-wise freeness scan of a vector.
#[derive(Debug, Clone)]
pub struct FreenessSummary {
    pub slices: Vec<SliceReport>,
    /// Least integer `m` with `max_i |v_i| > eps^m` on the whole tail,
    /// when every tail slice is nonzero.
    pub lower_bound_exponent: Option<i32>,
    /// Every tail slice has a coordinate above the effective-zero line.
    pub eventually_nonzero: bool,
}

/// Scans the tail slices of `v` for the largest coordinate magnitude
/// and fits the lower-bound exponent of the squared norm (the squared
/// max-coordinate bounds it from below); the slice-level route to
/// freeness.
pub fn freeness_oracle(v: &GenVector) -> FreenessSummary {
    let grid = v.grid();
    let m_cap = grid.m_cap() as f64;
    let mut slices = Vec::with_capacity(grid.tail_len());
    let mut eventually_nonzero = true;
    let mut worst = f64::NEG_INFINITY;
    for k in grid.tail_indices() {
        let max_abs = v
            .sample_at(k)
            .iter()
            .map(|x| x.abs())
            .fold(0.0f64, f64::max);
        let log = max_abs.log2();
        if !(log > -m_cap * k as f64) {
            eventually_nonzero = false;
        } else {
            worst = worst.max(-log / k as f64);
        }
        slices.push(SliceReport {
            k,
            classical: SliceValue::Value(max_abs),
            delta: 0.0,
        });
    }
    let lower_bound_exponent = if eventually_nonzero {
        Some(((2.0 * worst).ceil()).max(-m_cap - 1.0).min(m_cap) as i32)
    } else {
        None
    };
    FreenessSummary {
        slices,
        lower_bound_exponent,
        eventually_nonzero,
    }
}

/// The ordered eigenvalue samples of the generalized pipeline at slice
/// `k`, for comparison reports.
pub fn pipeline_eigenvalues_at(a: &GenMatrix, k: u32) -> Result<Vec<f64>, OracleError> {
    let eig = gen_eigen(a)?;
    Ok(eig.eigenvalues().iter().map(|l| l.sample(k)).collect())
}

/// Order-estimate shorthand used in reports.
pub fn order_label(o: OrderEstimate) -> String {
    match o {
        OrderEstimate::Negligible => "negligible".to_string(),
        OrderEstimate::Order {
            exponent,
            confident,
        } => {
            if confident {
                format!("order {exponent}")
            } else {
                format!("order {exponent} (low confidence)")
            }
        }
    }
}
