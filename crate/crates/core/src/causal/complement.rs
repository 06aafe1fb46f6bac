use crate::causal::{classify, BilinearForm, CausalError};
use crate::gen_linalg::dense;
use crate::gen_linalg::{
    columns_matrix, congruence_transform, extend_to_basis, gram_matrix, GenMatrix, GenVector,
};
use crate::gen_num::GenNumber;

/// Basis data for the orthogonal complement of a time-like vector:
/// the `n-1` spanning vectors, their Gram matrix under `g` (positive
/// definite), and the metric in the adapted coordinates where `u`
/// spans the first axis (used by the determinant identity
/// `det(gram) * det(adapted) = adapted_11`).
#[derive(Debug, Clone)]
pub struct ComplementBasis {
    pub vectors: Vec<GenVector>,
    pub gram: GenMatrix,
    pub adapted_metric: GenMatrix,
}

/// Orthogonal complement of a time-like `u`: coordinates are adapted so
/// `u` spans the first axis, and the rows `2..n` of the inverse adapted
/// metric give the complement basis, mapped back to the canonical
/// coordinates.
pub fn orthogonal_complement_basis(
    g: &BilinearForm,
    u: &GenVector,
) -> Result<ComplementBasis, CausalError> {
    let class = classify(g, u)?;
    if !class.is_timelike() {
        return Err(CausalError::NotTimeLike {
            which: "complement anchor",
        });
    }
    let n = g.dim();
    let adapted_basis = extend_to_basis(u)?;
    let b = columns_matrix(&adapted_basis)?;
    let adapted_metric = congruence_transform(g.matrix(), &b)?;

    let mut vectors = Vec::with_capacity(n - 1);
    for row in 1..n {
        let b = b.clone();
        let adapted = adapted_metric.clone();
        vectors.push(GenVector::from_eps_fn(g.grid(), n, move |eps| {
            let inv = match dense::inverse(&adapted.eval_at(eps)) {
                Some(m) => m,
                None => return vec![0.0; n],
            };
            let xi: Vec<f64> = (0..n).map(|j| inv.get(row, j)).collect();
            b.eval_at(eps).matvec(&xi)
        }));
    }
    let gram = gram_matrix(&vectors, g.matrix())?;
    Ok(ComplementBasis {
        vectors,
        gram,
        adapted_metric,
    })
}

/// Splits `v` along a time-like `u`: returns `(a, w)` with
/// `a = g(u,v)/g(u,u)` and `w = v - a u`, so `g(u, w)` is negligible
/// and the samples reconstruct `v` exactly.
pub fn decompose(
    g: &BilinearForm,
    u: &GenVector,
    v: &GenVector,
) -> Result<(GenNumber, GenVector), CausalError> {
    let class = classify(g, u)?;
    if !class.is_timelike() {
        return Err(CausalError::NotTimeLike {
            which: "projection axis",
        });
    }
    let uu = g.apply(u, u)?;
    let uv = g.apply(u, v)?;
    let a = uv.checked_div(&uu)?;
    let w = v.sub(&u.scale(&a)?)?;
    Ok((a, w))
}

/// Representative repair: when the standard pairing `<w, v>` is
/// negligible and `w` is free, rewrites the dominating coordinate of
/// `v` at every slice so the pairing vanishes there exactly. Slices
/// where `w` vanishes are left untouched.
pub fn repair_orthogonal(w: &GenVector, v: &GenVector) -> Result<GenVector, CausalError> {
    let pairing = w.dot_std(v)?;
    let defect = pairing.is_negligible();
    if !defect.is_holds() {
        return Err(CausalError::NotOrthogonalClass {
            detail: defect.to_string(),
        });
    }
    let n = v.dim();
    let w = w.clone();
    let v = v.clone();
    Ok(GenVector::from_eps_fn(v.grid(), n, move |eps| {
        let ws = w.eval_at(eps);
        let mut vs = v.eval_at(eps);
        let pairing: f64 = ws.iter().zip(vs.iter()).map(|(a, b)| a * b).sum();
        let mut j = 0usize;
        let mut best = ws[0].abs();
        for (i, &wi) in ws.iter().enumerate().skip(1) {
            if wi.abs() > best {
                best = wi.abs();
                j = i;
            }
        }
        if best > 0.0 {
            vs[j] -= pairing / ws[j];
        }
        vs
    }))
}
