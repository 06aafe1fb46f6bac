use crate::gen_linalg::dense;
use crate::gen_linalg::{matrix_index, symmetrize, GenMatrix, GenVector, LinalgError};
use crate::gen_num::GenNumber;

/// Orthogonal projection of `v` onto the free submodule spanned by
/// `m_basis`, with respect to a positive definite form `h`. The basis
/// is orthonormalized slice-wise by modified Gram-Schmidt (with a
/// reorthogonalization pass) and the projection is
/// `sum_i <v, e_i>_h e_i`.
pub fn orthogonal_project(
    m_basis: &[GenVector],
    h: &GenMatrix,
    v: &GenVector,
) -> Result<GenVector, LinalgError> {
    let h = symmetrize(h)?;
    let idx = matrix_index(&h)?;
    if !idx.is_positive_definite() {
        return Err(LinalgError::NotPositiveDefinite {
            detail: idx.verdict().to_string(),
        });
    }
    if m_basis.is_empty() {
        return Err(LinalgError::DimensionMismatch(
            "empty spanning family".into(),
        ));
    }
    let n = h.dim();
    if v.dim() != n || m_basis.iter().any(|w| w.dim() != n) {
        return Err(LinalgError::DimensionMismatch(
            "projection operands must share the ambient dimension".into(),
        ));
    }
    // Gram matrix of the family under h must be non-degenerate.
    let gram = gram_matrix(m_basis, &h)?;
    if !gram.is_nondegenerate().is_holds() {
        return Err(LinalgError::DegenerateGram);
    }
    let basis: Vec<GenVector> = m_basis.to_vec();
    let v = v.clone();
    Ok(GenVector::from_eps_fn(h.grid(), n, move |eps| {
        let h_eps = h.eval_at(eps).symmetrized();
        let fam: Vec<Vec<f64>> = basis.iter().map(|w| w.eval_at(eps)).collect();
        let Some(ortho) = dense::gram_schmidt_h(&h_eps, &fam) else {
            return vec![0.0; n];
        };
        let v_eps = v.eval_at(eps);
        let mut out = vec![0.0; n];
        for e in &ortho {
            let he = h_eps.matvec(e);
            let c: f64 = v_eps.iter().zip(he.iter()).map(|(a, b)| a * b).sum();
            for i in 0..n {
                out[i] += c * e[i];
            }
        }
        out
    }))
}

/// Gram matrix `G_ij = h(w_i, w_j)` of a family under the form `h`.
/// The lower triangle mirrors the upper one, so the result is
/// symmetric sample-exactly.
pub fn gram_matrix(family: &[GenVector], h: &GenMatrix) -> Result<GenMatrix, LinalgError> {
    let k = family.len();
    let mut rows: Vec<Vec<Option<GenNumber>>> = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = h.bilinear(&family[i], &family[j])?;
            rows[i][j] = Some(v.clone());
            rows[j][i] = Some(v);
        }
    }
    GenMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|e| e.expect("filled")).collect())
            .collect(),
    )
}

/// Slice-wise determinant check used by tests: the projection is a
/// direct-summand construction exactly when the Gram matrix stays
/// invertible.
pub fn gram_is_invertible(family: &[GenVector], h: &GenMatrix) -> Result<bool, LinalgError> {
    Ok(gram_matrix(family, h)?.is_nondegenerate().is_holds())
}
