use std::sync::Arc;

use crate::gen_linalg::LinalgError;
use crate::gen_num::{EpsGrid, GenNumber};

/// Vector over the ring of generalized numbers: coefficients with
/// respect to the canonical basis, all sharing one grid.
#[derive(Debug, Clone)]
pub struct GenVector {
    entries: Vec<GenNumber>,
}

impl GenVector {
    pub fn new(entries: Vec<GenNumber>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::DimensionMismatch("empty vector".into()));
        }
        let grid = entries[0].grid();
        if entries.iter().any(|e| e.grid() != grid) {
            return Err(LinalgError::GridMismatch);
        }
        Ok(GenVector { entries })
    }

    pub fn from_f64s(grid: EpsGrid, values: &[f64]) -> Self {
        GenVector {
            entries: values
                .iter()
                .map(|&v| GenNumber::constant(grid, v))
                .collect(),
        }
    }

    /// Canonical basis vector `e_i` (0-based index).
    pub fn basis(grid: EpsGrid, dim: usize, i: usize) -> Self {
        assert!(i < dim);
        GenVector {
            entries: (0..dim)
                .map(|j| GenNumber::constant(grid, if j == i { 1.0 } else { 0.0 }))
                .collect(),
        }
    }

    pub fn zeros(grid: EpsGrid, dim: usize) -> Self {
        Self::from_f64s(grid, &vec![0.0; dim])
    }

    /// Builds each coefficient from a shared vector-valued evaluator.
    pub(crate) fn from_eps_fn(
        grid: EpsGrid,
        dim: usize,
        f: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        let f = Arc::new(f);
        let entries = (0..dim)
            .map(|i| {
                let f = Arc::clone(&f);
                GenNumber::from_fn(grid, move |eps| f(eps)[i])
            })
            .collect();
        GenVector { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn grid(&self) -> EpsGrid {
        self.entries[0].grid()
    }

    pub fn entry(&self, i: usize) -> &GenNumber {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[GenNumber] {
        &self.entries
    }

    /// Samples of all coefficients at grid index `k`.
    pub fn sample_at(&self, k: u32) -> Vec<f64> {
        self.entries.iter().map(|e| e.sample(k)).collect()
    }

    /// Coefficient values at `eps`; grid points read cached samples.
    pub fn eval_at(&self, eps: f64) -> Vec<f64> {
        match self.grid().index_of_exact(eps) {
            Some(k) => self.sample_at(k),
            None => self.entries.iter().map(|e| e.eval(eps)).collect(),
        }
    }

    pub fn add(&self, rhs: &GenVector) -> Result<GenVector, LinalgError> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenVector { entries })
    }

    pub fn sub(&self, rhs: &GenVector) -> Result<GenVector, LinalgError> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenVector { entries })
    }

    pub fn scale(&self, c: &GenNumber) -> Result<GenVector, LinalgError> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenVector { entries })
    }

    pub fn scale_f64(&self, c: f64) -> GenVector {
        GenVector {
            entries: self.entries.iter().map(|a| a.scaled(c)).collect(),
        }
    }

    pub fn negate(&self) -> GenVector {
        GenVector {
            entries: self.entries.iter().map(|a| a.negate()).collect(),
        }
    }

    /// Standard (Euclidean) inner product `sum_i x^i y^i`.
    pub fn dot_std(&self, rhs: &GenVector) -> Result<GenNumber, LinalgError> {
        self.check_dim(rhs)?;
        let mut acc = self.entries[0].checked_mul(&rhs.entries[0])?;
        for i in 1..self.dim() {
            acc = acc.checked_add(&self.entries[i].checked_mul(&rhs.entries[i])?)?;
        }
        Ok(acc)
    }

    /// Squared Euclidean norm net `sum_i (v^i)^2`.
    pub fn norm2_std(&self) -> GenNumber {
        self.dot_std(self).expect("self dot")
    }

    /// True when every coefficient is a negligible net.
    pub fn is_negligible(&self) -> bool {
        self.entries.iter().all(|e| e.is_negligible().is_holds())
    }

    fn check_dim(&self, rhs: &GenVector) -> Result<(), LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} vs {}",
                self.dim(),
                rhs.dim()
            )));
        }
        if self.grid() != rhs.grid() {
            return Err(LinalgError::GridMismatch);
        }
        Ok(())
    }
}
