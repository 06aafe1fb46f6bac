use crate::gen_linalg::dense::{self, SMat};
use crate::gen_linalg::{symmetrize, GenMatrix, LinalgError};
use crate::gen_num::{GenNumber, Verdict};

/// Residuals at or below this fraction of `||A_eps||_F` are the
/// documented convergence band of the Jacobi sweep; within it the zero
/// representative is stored.
const RESIDUAL_CLAMP_REL: f64 = 1e-12;

/// Slice-wise orthogonal diagonalization of a symmetric-class matrix:
/// eigenvalue nets ordered descending per slice, the diagonalizer net
/// `U` with `U A U^t = diag(lambda)` and `det U = +1`, and the residual
/// net of the decomposition.
#[derive(Debug, Clone)]
pub struct EigenResult {
    eigenvalues: Vec<GenNumber>,
    diagonalizer: GenMatrix,
    residual: GenNumber,
    residual_raw: Vec<f64>,
}

impl EigenResult {
    /// Eigenvalue nets, ordered by descending value at every slice.
    pub fn eigenvalues(&self) -> &[GenNumber] {
        &self.eigenvalues
    }

    pub fn diagonalizer(&self) -> &GenMatrix {
        &self.diagonalizer
    }

    /// Frobenius residual of `U A U^t - diag(lambda)` per slice, with
    /// the zero representative stored inside the Jacobi convergence
    /// band; see [`EigenResult::residual_raw`] for the unclamped values.
    pub fn residual(&self) -> &GenNumber {
        &self.residual
    }

    /// Unclamped residual samples, for quantitative bounds.
    pub fn residual_raw(&self) -> &[f64] {
        &self.residual_raw
    }
}

/// The ordered eigenvalue nets alone, without diagonalizer or
/// residual; the cheap path for signature work.
pub fn eigenvalue_nets(a: &GenMatrix) -> Result<Vec<GenNumber>, LinalgError> {
    let s = symmetrize(a)?;
    let grid = s.grid();
    let n = s.dim();
    Ok((0..n)
        .map(|i| {
            let s = s.clone();
            GenNumber::from_fn(grid, move |eps| {
                let (l, _) = dense::jacobi_sorted(&s.eval_at(eps).symmetrized());
                l[i]
            })
        })
        .collect())
}

/// Eigen data of a symmetric-class matrix via a cyclic Jacobi sweep on
/// every slice. Non-symmetric representatives are symmetrized first;
/// the eigenvalue nets do not depend on that choice as classes.
pub fn gen_eigen(a: &GenMatrix) -> Result<EigenResult, LinalgError> {
    let s = symmetrize(a)?;
    let grid = s.grid();
    let n = s.dim();

    let eigenvalues = eigenvalue_nets(&s)?;

    let s_for_u = s.clone();
    let diagonalizer = GenMatrix::from_eps_fn(grid, n, move |eps| {
        let (_, u) = dense::jacobi_sorted(&s_for_u.eval_at(eps).symmetrized());
        u
    });

    let s_for_r = s.clone();
    let residual = GenNumber::from_fn(grid, move |eps| {
        let m = s_for_r.eval_at(eps).symmetrized();
        let r = residual_at(&m);
        if r <= RESIDUAL_CLAMP_REL * m.frobenius().max(f64::MIN_POSITIVE) {
            0.0
        } else {
            r
        }
    });

    let residual_raw: Vec<f64> = grid
        .indices()
        .map(|k| residual_at(&s.sample_at(k).symmetrized()))
        .collect();

    Ok(EigenResult {
        eigenvalues,
        diagonalizer,
        residual,
        residual_raw,
    })
}

fn residual_at(m: &SMat) -> f64 {
    let (l, u) = dense::jacobi_sorted(m);
    let mut d = SMat::zeros(m.n);
    for i in 0..m.n {
        d.set(i, i, l[i]);
    }
    u.matmul(m).matmul(&u.transpose()).sub(&d).frobenius()
}

/// Signature data of a symmetric matrix: the counts of strictly
/// positive and strictly negative eigenvalue nets. The index is only
/// defined when every eigenvalue classifies.
#[derive(Debug, Clone)]
pub struct MatrixIndex {
    n: usize,
    counts: Option<(usize, usize)>,
    verdict: Verdict,
}

impl MatrixIndex {
    pub fn is_defined(&self) -> bool {
        self.counts.is_some()
    }

    pub fn nu_plus(&self) -> Option<usize> {
        self.counts.map(|c| c.0)
    }

    pub fn nu_minus(&self) -> Option<usize> {
        self.counts.map(|c| c.1)
    }

    /// The index (number of strictly negative eigenvalues) when defined.
    pub fn index(&self) -> Option<usize> {
        self.nu_minus()
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_positive_definite(&self) -> bool {
        self.counts == Some((self.n, 0))
    }

    /// Lorentzian signature: exactly one strictly negative direction.
    pub fn is_lorentzian(&self) -> bool {
        self.counts == Some((self.n - 1, 1))
    }
}

/// Classifies each ordered eigenvalue net of a symmetric-class,
/// non-degenerate matrix as strictly positive or strictly negative.
pub fn matrix_index(a: &GenMatrix) -> Result<MatrixIndex, LinalgError> {
    let eigenvalues = eigenvalue_nets(a)?;
    if !a.is_nondegenerate().is_holds() {
        return Err(LinalgError::Degenerate);
    }
    let n = a.dim();
    let mut nu_plus = 0usize;
    let mut nu_minus = 0usize;
    let mut certificate = i32::MIN;
    for (i, lambda) in eigenvalues.iter().enumerate() {
        let pos = lambda.is_strictly_positive();
        if pos.is_holds() {
            nu_plus += 1;
            certificate = certificate.max(pos.exponent().unwrap_or(0));
            continue;
        }
        let neg = lambda.is_strictly_negative();
        if neg.is_holds() {
            nu_minus += 1;
            certificate = certificate.max(neg.exponent().unwrap_or(0));
            continue;
        }
        let mut witnesses: Vec<u32> = pos.witnesses().to_vec();
        witnesses.extend_from_slice(neg.witnesses());
        witnesses.sort_unstable();
        witnesses.dedup();
        return Ok(MatrixIndex {
            n,
            counts: None,
            verdict: Verdict::fails(
                witnesses,
                format!(
                    "eigenvalue {} classifies neither strictly positive nor strictly negative",
                    i + 1
                ),
            ),
        });
    }
    Ok(MatrixIndex {
        n,
        counts: Some((nu_plus, nu_minus)),
        verdict: Verdict::holds(
            certificate,
            format!("nu_plus={nu_plus}, nu_minus={nu_minus}"),
        ),
    })
}

/// Principal-minor criterion: all leading minors strictly positive
/// implies positive definite.
pub fn principal_minor_test(a: &GenMatrix) -> Result<Verdict, LinalgError> {
    let s = symmetrize(a)?;
    let grid = s.grid();
    let n = s.dim();
    let mut certificate = i32::MIN;
    let mut pending: Option<Verdict> = None;
    for k in 1..=n {
        let s_k = s.clone();
        let minor = GenNumber::from_fn(grid, move |eps| {
            let full = s_k.eval_at(eps);
            let mut sub = SMat::zeros(k);
            for i in 0..k {
                for j in 0..k {
                    sub.set(i, j, full.get(i, j));
                }
            }
            dense::det(&sub)
        });
        let v = minor.is_strictly_positive();
        if v.is_fails() {
            return Ok(v.with_note(format!("leading minor {k} is not strictly positive")));
        }
        if let Some(e) = v.exponent() {
            certificate = certificate.max(e);
        }
        if v.is_inconclusive() && pending.is_none() {
            pending = Some(v.with_note(format!("leading minor {k} undecided")));
        }
    }
    if let Some(p) = pending {
        return Ok(p);
    }
    Ok(Verdict::holds(
        certificate,
        "all leading principal minors strictly positive",
    ))
}
