use crate::causal::{classify, same_orientation, BilinearForm, CausalClass, CausalError};
use crate::gen_linalg::dense::SMat;
use crate::gen_linalg::{is_free, GenMatrix, GenVector};
use crate::gen_num::Verdict;

/// The energy tensor of a source vector:
/// `E^{ab} = theta^a theta^b - (1/2) g(theta, theta) g^{ab}`,
/// symmetric in `a, b`.
#[derive(Debug, Clone)]
pub struct EnergyTensor {
    components: GenMatrix,
    source: GenVector,
}

impl EnergyTensor {
    pub fn components(&self) -> &GenMatrix {
        &self.components
    }

    pub fn source(&self) -> &GenVector {
        &self.source
    }
}

/// Assembles `E^{ab}(theta)` slice-wise.
pub fn energy_tensor(g: &BilinearForm, theta: &GenVector) -> Result<EnergyTensor, CausalError> {
    if theta.dim() != g.dim() {
        return Err(CausalError::Linalg(
            crate::gen_linalg::LinalgError::DimensionMismatch(format!(
                "source dim {} vs form dim {}",
                theta.dim(),
                g.dim()
            )),
        ));
    }
    let n = g.dim();
    let g_mat = g.matrix().clone();
    let g_inv = g.inverse_matrix().clone();
    let th = theta.clone();
    let components = GenMatrix::from_eps_fn(g.grid(), n, move |eps| {
        let gm = g_mat.eval_at(eps);
        let ginv = g_inv.eval_at(eps);
        let t = th.eval_at(eps);
        let t_low = gm.matvec(&t);
        let ip: f64 = t.iter().zip(t_low.iter()).map(|(a, b)| a * b).sum();
        let mut e = SMat::zeros(n);
        for a in 0..n {
            for b in 0..n {
                e.set(a, b, t[a] * t[b] - 0.5 * ip * ginv.get(a, b));
            }
        }
        e
    });
    Ok(EnergyTensor {
        components,
        source: theta.clone(),
    })
}

/// The dominant energy condition: `E^{ab} xi_a eta_b > 0` for a free
/// source and same-oriented time-like `xi`, `eta`.
pub fn dominant_energy_check(
    g: &BilinearForm,
    e: &EnergyTensor,
    xi: &GenVector,
    eta: &GenVector,
) -> Result<Verdict, CausalError> {
    let free = is_free(e.source());
    if !free.is_holds() {
        return Err(CausalError::NotFree {
            detail: free.to_string(),
        });
    }
    let orient = same_orientation(g, xi, eta)?;
    if !orient.is_holds() {
        return Err(CausalError::NotSameOrientation);
    }
    let xi_low = g.lower(xi)?;
    let eta_low = g.lower(eta)?;
    let value = e.components().bilinear(&xi_low, &eta_low)?;
    Ok(value
        .is_strictly_positive()
        .with_note("E^{ab} xi_a eta_b strictly positive"))
}

/// The flux `eta^b = E^{ab} xi_a` of a time-like observer `xi`.
pub fn flux_vector(
    g: &BilinearForm,
    e: &EnergyTensor,
    xi: &GenVector,
) -> Result<GenVector, CausalError> {
    let class = classify(g, xi)?;
    if !class.is_timelike() {
        return Err(CausalError::NotTimeLike { which: "observer" });
    }
    let xi_low = g.lower(xi)?;
    Ok(e.components().mul_vec(&xi_low)?)
}

/// Classification of the flux vector; time-like exactly when the
/// source's norm is invertible.
pub fn classify_flux(
    g: &BilinearForm,
    e: &EnergyTensor,
    xi: &GenVector,
) -> Result<CausalClass, CausalError> {
    let flux = flux_vector(g, e, xi)?;
    classify(g, &flux)
}
