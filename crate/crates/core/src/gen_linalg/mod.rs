//! Matrices and vectors over the ring of generalized numbers:
//! symmetrization, slice-wise orthogonal diagonalization, determinant
//! and non-degeneracy, signature index, freeness with basis extension
//! and Steinitz exchange, principal minors and orthogonal projection.

mod basis;
pub(crate) mod dense;
mod eigen;
mod matrix;
mod project;
mod vector;

pub use basis::{
    basis_check, coefficients_in_basis, columns_matrix, extend_to_basis, is_free, steinitz_exchange,
};
pub use dense::SMat;
pub use eigen::{
    eigenvalue_nets, gen_eigen, matrix_index, principal_minor_test, EigenResult, MatrixIndex,
};
pub use matrix::{congruence_transform, symmetrize, GenMatrix};
pub use project::{gram_is_invertible, gram_matrix, orthogonal_project};
pub use vector::GenVector;

use thiserror::Error;

use crate::gen_num::NumError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error(
        "matrix is not symmetric as a class: entry ({i},{j}) differs from its transpose ({detail})"
    )]
    NotSymmetricClass { i: usize, j: usize, detail: String },
    #[error("matrix is degenerate: determinant is not invertible")]
    Degenerate,
    #[error("vector is not free ({detail})")]
    NotFree { detail: String },
    #[error("exchange coefficient {j} is not strictly nonzero ({detail})")]
    CoefficientNotStrictlyNonzero { j: usize, detail: String },
    #[error("spanning family has a degenerate Gram matrix")]
    DegenerateGram,
    #[error("form is not positive definite ({detail})")]
    NotPositiveDefinite { detail: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live on different grids")]
    GridMismatch,
    #[error(transparent)]
    Num(#[from] NumError),
}
