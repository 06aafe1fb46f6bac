use crate::gen_linalg::dense;
use crate::gen_linalg::{GenMatrix, GenVector, LinalgError};
use crate::gen_num::Verdict;

/// Freeness of a module element, decided through strict positivity of
/// the squared Euclidean norm net (the norm characterization; the
/// slice-wise max-coordinate route lives in the oracle crate).
pub fn is_free(v: &GenVector) -> Verdict {
    v.norm2_std()
        .is_strictly_positive()
        .with_note("squared Euclidean norm of the coefficients")
}

/// Index (0-based) of the largest-magnitude coordinate, smallest index
/// on ties.
fn argmax_abs(x: &[f64]) -> usize {
    let mut best = 0usize;
    let mut best_v = x[0].abs();
    for (i, &xi) in x.iter().enumerate().skip(1) {
        if xi.abs() > best_v {
            best_v = xi.abs();
            best = i;
        }
    }
    best
}

/// Extends a free vector to a basis: per slice, the dominating
/// coordinate `i(eps)` is swapped into the first position and the
/// images of `e_2, ..., e_n` under that transposition complete the
/// family `{v, A e_2, ..., A e_n}`.
pub fn extend_to_basis(v: &GenVector) -> Result<Vec<GenVector>, LinalgError> {
    let free = is_free(v);
    if !free.is_holds() {
        return Err(LinalgError::NotFree {
            detail: free.to_string(),
        });
    }
    let n = v.dim();
    let grid = v.grid();
    let mut basis = Vec::with_capacity(n);
    basis.push(v.clone());
    for j in 1..n {
        let v_for_swap = v.clone();
        basis.push(GenVector::from_eps_fn(grid, n, move |eps| {
            let i_eps = argmax_abs(&v_for_swap.eval_at(eps));
            // transposition of coordinates 0 and i(eps) applied to e_j
            let target = if j == i_eps { 0 } else { j };
            let mut e = vec![0.0; n];
            e[target] = 1.0;
            e
        }));
    }
    Ok(basis)
}

/// Coordinate matrix with the given family as columns.
pub fn columns_matrix(family: &[GenVector]) -> Result<GenMatrix, LinalgError> {
    let n = family.len();
    if n == 0 || family.iter().any(|v| v.dim() != n) {
        return Err(LinalgError::DimensionMismatch(
            "need n vectors of dimension n".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for col in family {
            row.push(col.entry(i).clone());
        }
        rows.push(row);
    }
    GenMatrix::from_rows(rows)
}

/// Non-degeneracy of the coordinate matrix of a family, the executable
/// basis test.
pub fn basis_check(family: &[GenVector]) -> Result<Verdict, LinalgError> {
    Ok(columns_matrix(family)?
        .is_nondegenerate()
        .with_note("determinant of the coordinate matrix"))
}

/// Coefficients of `w` in the given basis, solved slice-wise. Singular
/// slices contribute a zero sample, a representative choice that is
/// harmless for a genuine basis.
pub fn coefficients_in_basis(basis: &[GenVector], w: &GenVector) -> Result<GenVector, LinalgError> {
    let b = columns_matrix(basis)?;
    if w.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "vector dim {} vs basis dim {}",
            w.dim(),
            b.dim()
        )));
    }
    let n = b.dim();
    let w = w.clone();
    Ok(GenVector::from_eps_fn(b.grid(), n, move |eps| {
        dense::lu_solve(&b.eval_at(eps), &w.eval_at(eps)).unwrap_or_else(|| vec![0.0; n])
    }))
}

/// Steinitz exchange: replaces the `j`-th basis vector (0-based) by `w`
/// when the `j`-th coefficient of `w` in that basis is strictly
/// nonzero.
pub fn steinitz_exchange(
    basis: &[GenVector],
    w: &GenVector,
    j: usize,
) -> Result<Vec<GenVector>, LinalgError> {
    if j >= basis.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "exchange position {j} out of range for basis of size {}",
            basis.len()
        )));
    }
    let coeffs = coefficients_in_basis(basis, w)?;
    let lambda_j = coeffs.entry(j);
    let v = lambda_j.is_strictly_nonzero();
    if !v.is_holds() {
        return Err(LinalgError::CoefficientNotStrictlyNonzero {
            j,
            detail: v.to_string(),
        });
    }
    let mut out = basis.to_vec();
    out[j] = w.clone();
    Ok(out)
}
