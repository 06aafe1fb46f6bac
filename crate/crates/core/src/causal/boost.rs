use crate::causal::{classify, same_orientation, BilinearForm, CausalError};
use crate::gen_linalg::dense::SMat;
use crate::gen_linalg::{GenMatrix, GenVector};

/// Absolute floor under which the unit-normalization defect of a
/// slice-wise computed vector counts as zero; covers the rounding of
/// the normalization itself.
pub const UNIT_NOISE_FLOOR: f64 = 1e-10;

/// Rescales a time-like vector to unit norm, `g(u,u) = -1`, dividing
/// by `sqrt(-g(u,u))` slice-wise. Slices where the norm sample is not
/// negative are passed through unchanged.
pub fn normalize_timelike(g: &BilinearForm, u: &GenVector) -> Result<GenVector, CausalError> {
    let class = classify(g, u)?;
    if !class.is_timelike() {
        return Err(CausalError::NotTimeLike {
            which: "normalization input",
        });
    }
    let norm = g.apply(u, u)?;
    let n = u.dim();
    let u = u.clone();
    Ok(GenVector::from_eps_fn(g.grid(), n, move |eps| {
        let nn = norm.value_at(eps);
        let us = u.eval_at(eps);
        if nn < 0.0 {
            let s = 1.0 / (-nn).sqrt();
            us.iter().map(|x| x * s).collect()
        } else {
            us
        }
    }))
}

/// The transformation mapping one unit time-like vector to another of
/// the same orientation while preserving the form:
/// `L = id - 2 eta (. , xi) + (xi + eta)((xi + eta)_cov , .) / (1 - g(xi, eta))`.
pub fn lorentz_boost(
    g: &BilinearForm,
    xi: &GenVector,
    eta: &GenVector,
) -> Result<GenMatrix, CausalError> {
    for (name, v) in [("first", xi), ("second", eta)] {
        let unit_defect = &g.apply(v, v)? + &crate::gen_num::GenNumber::constant(g.grid(), 1.0);
        if !unit_defect
            .is_negligible_with_floor(UNIT_NOISE_FLOOR)
            .is_holds()
        {
            return Err(CausalError::NotUnit { which: name });
        }
    }
    let orient = same_orientation(g, xi, eta)?;
    if !orient.is_holds() {
        return Err(CausalError::NotSameOrientation);
    }
    let n = g.dim();
    let g_mat = g.matrix().clone();
    let xi = xi.clone();
    let eta = eta.clone();
    Ok(GenMatrix::from_eps_fn(g.grid(), n, move |eps| {
        let gm = g_mat.eval_at(eps);
        let x = xi.eval_at(eps);
        let e = eta.eval_at(eps);
        let x_low = gm.matvec(&x);
        let e_low = gm.matvec(&e);
        let ip: f64 = x.iter().zip(e_low.iter()).map(|(a, b)| a * b).sum();
        let denom = 1.0 - ip;
        let mut l = SMat::identity(n);
        for mu in 0..n {
            for la in 0..n {
                let mut v = l.get(mu, la);
                v -= 2.0 * e[mu] * x_low[la];
                if denom != 0.0 {
                    v += (x[mu] + e[mu]) * (x_low[la] + e_low[la]) / denom;
                }
                l.set(mu, la, v);
            }
        }
        l
    }))
}

/// Riemannian form built from two time-like vectors of the same
/// orientation: `h_ab = u_(a v_b) - (1/2) g(u,v) g_ab`; positive
/// definite by the signature argument.
pub fn riemannian_from_pair(
    g: &BilinearForm,
    u: &GenVector,
    v: &GenVector,
) -> Result<GenMatrix, CausalError> {
    let orient = same_orientation(g, u, v)?;
    if !orient.is_holds() {
        return Err(CausalError::NotSameOrientation);
    }
    let n = g.dim();
    let g_mat = g.matrix().clone();
    let u = u.clone();
    let v = v.clone();
    Ok(GenMatrix::from_eps_fn(g.grid(), n, move |eps| {
        let gm = g_mat.eval_at(eps);
        let us = u.eval_at(eps);
        let vs = v.eval_at(eps);
        let u_low = gm.matvec(&us);
        let v_low = gm.matvec(&vs);
        let ip: f64 = us.iter().zip(v_low.iter()).map(|(a, b)| a * b).sum();
        let mut h = SMat::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let sym = 0.5 * (u_low[a] * v_low[b] + u_low[b] * v_low[a]);
                h.set(a, b, sym - 0.5 * ip * gm.get(a, b));
            }
        }
        h
    }))
}
