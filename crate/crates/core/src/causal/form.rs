use crate::causal::CausalError;
use crate::gen_linalg::dense;
use crate::gen_linalg::{matrix_index, symmetrize, GenMatrix, GenVector, MatrixIndex, SMat};
use crate::gen_num::GenNumber;

/// A symmetric, non-degenerate bilinear form together with its
/// certified signature index. Lorentzian means exactly one strictly
/// negative eigenvalue direction.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    g: GenMatrix,
    g_inv: GenMatrix,
    index: MatrixIndex,
}

impl BilinearForm {
    /// Certifies a coefficient matrix: symmetric class, non-degenerate,
    /// index computed from the ordered eigenvalue nets.
    pub fn new(g: &GenMatrix) -> Result<Self, CausalError> {
        let g = symmetrize(g)?;
        let index = matrix_index(&g)?;
        if !g.is_nondegenerate().is_holds() {
            return Err(CausalError::Linalg(
                crate::gen_linalg::LinalgError::Degenerate,
            ));
        }
        // slice-wise inverse, re-symmetrized so downstream tensors built
        // from it stay symmetric sample-exactly
        let n = g.dim();
        let g_for_inv = g.clone();
        let g_inv = GenMatrix::from_eps_fn(g.grid(), n, move |eps| {
            dense::inverse(&g_for_inv.eval_at(eps))
                .map(|m| m.symmetrized())
                .unwrap_or_else(|| SMat::zeros(n))
        });
        Ok(BilinearForm { g, g_inv, index })
    }

    /// Like [`BilinearForm::new`] but additionally requires Lorentzian
    /// signature.
    pub fn lorentzian(g: &GenMatrix) -> Result<Self, CausalError> {
        let form = Self::new(g)?;
        if !form.is_lorentzian() {
            return Err(CausalError::NotLorentzian);
        }
        Ok(form)
    }

    pub fn matrix(&self) -> &GenMatrix {
        &self.g
    }

    /// Slice-wise inverse coefficient matrix, used for index raising.
    pub fn inverse_matrix(&self) -> &GenMatrix {
        &self.g_inv
    }

    pub fn index(&self) -> &MatrixIndex {
        &self.index
    }

    pub fn is_lorentzian(&self) -> bool {
        self.index.is_lorentzian()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.index.is_positive_definite()
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn grid(&self) -> crate::gen_num::EpsGrid {
        self.g.grid()
    }

    /// The scalar `g(u, v)`.
    pub fn apply(&self, u: &GenVector, v: &GenVector) -> Result<GenNumber, CausalError> {
        Ok(self.g.bilinear(u, v)?)
    }

    /// Covariant components `u_a = g_ab u^b`.
    pub fn lower(&self, u: &GenVector) -> Result<GenVector, CausalError> {
        Ok(self.g.mul_vec(u)?)
    }

    /// Contravariant components `w^a = g^ab w_b`.
    pub fn raise(&self, w: &GenVector) -> Result<GenVector, CausalError> {
        Ok(self.g_inv.mul_vec(w)?)
    }
}
