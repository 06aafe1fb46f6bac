use std::sync::Arc;

use crate::gen_linalg::dense::{self, SMat};
use crate::gen_linalg::{GenVector, LinalgError};
use crate::gen_num::{EpsGrid, GenNumber, Verdict};

/// Square matrix over the ring of generalized numbers, row-major.
#[derive(Debug, Clone)]
pub struct GenMatrix {
    n: usize,
    entries: Vec<GenNumber>,
}

impl GenMatrix {
    pub fn new(n: usize, entries: Vec<GenNumber>) -> Result<Self, LinalgError> {
        if n == 0 || entries.len() != n * n {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        let grid = entries[0].grid();
        if entries.iter().any(|e| e.grid() != grid) {
            return Err(LinalgError::GridMismatch);
        }
        Ok(GenMatrix { n, entries })
    }

    pub fn from_rows_f64(grid: EpsGrid, rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix rows must be square");
            for &v in r {
                entries.push(GenNumber::constant(grid, v));
            }
        }
        GenMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<GenNumber>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(LinalgError::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(r);
        }
        Self::new(n, entries)
    }

    pub fn identity(grid: EpsGrid, n: usize) -> Self {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::from_rows_f64(grid, &rows)
    }

    /// Builds all entries from a shared matrix-valued evaluator; the
    /// cached samples come from evaluating it on the grid, so derived
    /// matrices stay reproducible.
    pub(crate) fn from_eps_fn(
        grid: EpsGrid,
        n: usize,
        f: impl Fn(f64) -> SMat + Send + Sync + 'static,
    ) -> Self {
        let f = Arc::new(f);
        let entries = (0..n * n)
            .map(|idx| {
                let f = Arc::clone(&f);
                let (i, j) = (idx / n, idx % n);
                GenNumber::from_fn(grid, move |eps| f(eps).get(i, j))
            })
            .collect();
        GenMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> EpsGrid {
        self.entries[0].grid()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GenNumber {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[GenNumber] {
        &self.entries
    }

    /// Sample slice at grid index `k` as a plain matrix.
    pub fn sample_at(&self, k: u32) -> SMat {
        SMat {
            n: self.n,
            a: self.entries.iter().map(|e| e.sample(k)).collect(),
        }
    }

    /// Slice at `eps`; grid points read cached samples instead of
    /// re-walking the entry evaluators.
    pub fn eval_at(&self, eps: f64) -> SMat {
        match self.grid().index_of_exact(eps) {
            Some(k) => self.sample_at(k),
            None => SMat {
                n: self.n,
                a: self.entries.iter().map(|e| e.eval(eps)).collect(),
            },
        }
    }

    pub fn transpose(&self) -> GenMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(j, i).clone());
            }
        }
        GenMatrix { n, entries }
    }

    pub fn add(&self, rhs: &GenMatrix) -> Result<GenMatrix, LinalgError> {
        self.check_shape(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenMatrix { n: self.n, entries })
    }

    pub fn sub(&self, rhs: &GenMatrix) -> Result<GenMatrix, LinalgError> {
        self.check_shape(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenMatrix { n: self.n, entries })
    }

    pub fn scale_f64(&self, c: f64) -> GenMatrix {
        GenMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.scaled(c)).collect(),
        }
    }

    pub fn mul_mat(&self, rhs: &GenMatrix) -> Result<GenMatrix, LinalgError> {
        self.check_shape(rhs)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.entry(i, 0).checked_mul(rhs.entry(0, j))?;
                for k in 1..n {
                    acc = acc.checked_add(&self.entry(i, k).checked_mul(rhs.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(GenMatrix { n, entries })
    }

    pub fn mul_vec(&self, v: &GenVector) -> Result<GenVector, LinalgError> {
        if v.dim() != self.n {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix {}x{} times vector {}",
                self.n,
                self.n,
                v.dim()
            )));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.entry(i, 0).checked_mul(v.entry(0))?;
            for k in 1..n {
                acc = acc.checked_add(&self.entry(i, k).checked_mul(v.entry(k))?)?;
            }
            entries.push(acc);
        }
        GenVector::new(entries)
    }

    /// Evaluates the bilinear form `u^t A v`.
    pub fn bilinear(&self, u: &GenVector, v: &GenVector) -> Result<GenNumber, LinalgError> {
        u.dot_std(&self.mul_vec(v)?)
    }

    /// Verdict of being in the symmetric class: every entry of
    /// `A - A^t` negligible.
    pub fn symmetry_defect(&self) -> Option<(usize, usize, Verdict)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = self
                    .entry(i, j)
                    .checked_sub(self.entry(j, i))
                    .expect("shared grid");
                let v = d.is_negligible();
                if !v.is_holds() {
                    return Some((i, j, v));
                }
            }
        }
        None
    }

    pub fn is_symmetric_class(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// Determinant net, computed slice-wise (closed form for n <= 3,
    /// LU with partial pivoting above).
    pub fn det(&self) -> GenNumber {
        let m = self.clone();
        GenNumber::from_fn(self.grid(), move |eps| dense::det(&m.eval_at(eps)))
    }

    /// Non-degeneracy as invertibility of the determinant net.
    pub fn is_nondegenerate(&self) -> Verdict {
        self.det().is_invertible()
    }

    /// Slice-wise inverse. Singular slices yield a zero slice, which is
    /// a valid representative choice whenever the matrix is
    /// non-degenerate as a class.
    pub fn inverse(&self) -> Result<GenMatrix, LinalgError> {
        if !self.is_nondegenerate().is_holds() {
            return Err(LinalgError::Degenerate);
        }
        let m = self.clone();
        let n = self.n;
        Ok(GenMatrix::from_eps_fn(self.grid(), n, move |eps| {
            dense::inverse(&m.eval_at(eps)).unwrap_or_else(|| SMat::zeros(n))
        }))
    }

    /// Largest entry-wise magnitude at grid index `k`.
    pub fn max_abs_at(&self, k: u32) -> f64 {
        self.entries
            .iter()
            .map(|e| e.sample(k).abs())
            .fold(0.0, f64::max)
    }

    fn check_shape(&self, rhs: &GenMatrix) -> Result<(), LinalgError> {
        if self.n != rhs.n {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} vs {}",
                self.n, rhs.n
            )));
        }
        if self.grid() != rhs.grid() {
            return Err(LinalgError::GridMismatch);
        }
        Ok(())
    }
}

/// Symmetric representative: rejects matrices that are not symmetric as
/// a class, returns `(A + A^t) / 2` otherwise (exactly symmetric
/// samples).
pub fn symmetrize(a: &GenMatrix) -> Result<GenMatrix, LinalgError> {
    if let Some((i, j, verdict)) = a.symmetry_defect() {
        return Err(LinalgError::NotSymmetricClass {
            i,
            j,
            detail: verdict.to_string(),
        });
    }
    Ok(a.add(&a.transpose())?.scale_f64(0.5))
}

/// The congruence transform `A^t B A` of a symmetric `B`, with the
/// lower triangle mirrored from the upper one so the result is
/// symmetric sample-exactly (entrywise float summation would otherwise
/// leave rounding-order asymmetries that are not negligible nets).
pub fn congruence_transform(b: &GenMatrix, a: &GenMatrix) -> Result<GenMatrix, LinalgError> {
    if b.dim() != a.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} vs {}",
            b.dim(),
            a.dim()
        )));
    }
    if b.grid() != a.grid() {
        return Err(LinalgError::GridMismatch);
    }
    let n = b.dim();
    let mut rows: Vec<Vec<Option<GenNumber>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            // T_ij = sum_{k,l} A_ki B_kl A_lj
            let mut acc: Option<GenNumber> = None;
            for k in 0..n {
                for l in 0..n {
                    let term = a
                        .entry(k, i)
                        .checked_mul(b.entry(k, l))?
                        .checked_mul(a.entry(l, j))?;
                    acc = Some(match acc {
                        None => term,
                        Some(s) => s.checked_add(&term)?,
                    });
                }
            }
            let value = acc.expect("n >= 1");
            rows[i][j] = Some(value.clone());
            rows[j][i] = Some(value);
        }
    }
    GenMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|e| e.expect("filled")).collect())
            .collect(),
    )
}
