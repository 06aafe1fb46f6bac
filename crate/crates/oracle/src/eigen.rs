use crate::{OracleError, SliceReport, SliceValue};
use gennum_core::gen_linalg::{gen_eigen, GenMatrix};

/// Descending eigenvalues of a symmetric matrix given row-major, by
/// closed forms for n <= 3 and Sturm bisection on the tridiagonalized
/// matrix for n <= 6. Shares no code with the sweep-based pipeline.
pub fn sym_eigenvalues_desc(n: usize, flat: &[f64]) -> Result<Vec<f64>, OracleError> {
    assert_eq!(flat.len(), n * n);
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![flat[0]]),
        2 => Ok(eig2(flat)),
        3 => Ok(eig3(flat)),
        4..=6 => Ok(eig_sturm(n, flat)),
        _ => Err(OracleError::DimensionTooLarge { n }),
    }
}

/// Quadratic formula for a symmetric 2x2.
fn eig2(a: &[f64]) -> Vec<f64> {
    let (p, q, r) = (a[0], a[1], a[3]);
    let mean = 0.5 * (p + r);
    let radius = (0.25 * (p - r) * (p - r) + q * q).sqrt();
    vec![mean + radius, mean - radius]
}

/// Trigonometric method for the three real roots of a symmetric 3x3.
fn eig3(a: &[f64]) -> Vec<f64> {
    let (a00, a01, a02) = (a[0], a[1], a[2]);
    let (a11, a12, a22) = (a[4], a[5], a[8]);
    let p1 = a01 * a01 + a02 * a02 + a12 * a12;
    if p1 == 0.0 {
        let mut d = vec![a00, a11, a22];
        d.sort_by(|x, y| y.partial_cmp(x).unwrap());
        return d;
    }
    let q = (a00 + a11 + a22) / 3.0;
    let p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return vec![q, q, q];
    }
    // B = (A - q I) / p, r = det(B) / 2 in [-1, 1]
    let b = [
        (a00 - q) / p,
        a01 / p,
        a02 / p,
        a01 / p,
        (a11 - q) / p,
        a12 / p,
        a02 / p,
        a12 / p,
        (a22 - q) / p,
    ];
    let det_b = b[0] * (b[4] * b[8] - b[5] * b[7]) - b[1] * (b[3] * b[8] - b[5] * b[6])
        + b[2] * (b[3] * b[7] - b[4] * b[6]);
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = vec![e1, e2, e3];
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    out
}

/// Householder tridiagonalization by explicit reflector products.
fn tridiagonalize(n: usize, flat: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut a = flat.to_vec();
    let at = |a: &[f64], i: usize, j: usize| a[i * n + j];
    for k in 0..n.saturating_sub(2) {
        let mut x = vec![0.0; n];
        for (i, xi) in x.iter_mut().enumerate().take(n).skip(k + 1) {
            *xi = at(&a, i, k);
        }
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut v = x;
        let s = if v[k + 1] >= 0.0 { 1.0 } else { -1.0 };
        v[k + 1] += s * norm;
        let vn: f64 = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for t in v.iter_mut() {
            *t /= vn;
        }
        // A <- (I - 2vv^t) A (I - 2vv^t)
        let mut av = vec![0.0; n];
        for i in 0..n {
            av[i] = (0..n).map(|j| at(&a, i, j) * v[j]).sum();
        }
        let vav: f64 = (0..n).map(|i| v[i] * av[i]).sum();
        for i in 0..n {
            for j in 0..n {
                let delta = -2.0 * (v[i] * av[j] + av[i] * v[j]) + 4.0 * vav * v[i] * v[j];
                a[i * n + j] += delta;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| at(&a, i, i)).collect();
    let e: Vec<f64> = (0..n - 1).map(|i| at(&a, i, i + 1)).collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`,
/// by the sign-agreement count of the leading-principal-minor chain.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let n = d.len();
    let mut count = 0usize;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let denom = if q == 0.0 {
            f64::EPSILON * (e[i - 1].abs() + 1.0)
        } else {
            q
        };
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues by bisection: Gershgorin brackets for the
/// tridiagonal form, then the Sturm count isolates each one, including
/// multiplicities. Returned descending.
fn eig_sturm(n: usize, flat: &[f64]) -> Vec<f64> {
    let (d, e) = tridiagonalize(n, flat);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    let span = (hi - lo).max(1e-300);
    lo -= 1e-12 * span + 1e-300;
    hi += 1e-12 * span + 1e-300;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        // invariant: count(a) <= j < count(b)
        let mut a = lo;
        let mut b = hi;
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if sturm_count(&d, &e, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= f64::EPSILON * (a.abs().max(b.abs()) + 1.0) {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    out.reverse();
    out
}

/// Possibly-complex spectrum of a general 2x2, ordered by descending
/// real part. Used to check the perturbation bound against genuinely
/// non-symmetric slices.
pub fn complex_spectrum_2x2(flat: &[f64]) -> [(f64, f64); 2] {
    let (a, b, c, d) = (flat[0], flat[1], flat[2], flat[3]);
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = half_tr * half_tr - det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        [(half_tr + r, 0.0), (half_tr - r, 0.0)]
    } else {
        let im = (-disc).sqrt();
        [(half_tr, im), (half_tr, -im)]
    }
}

/// Compares the pipeline's ordered eigenvalue nets with this module's
/// independent solvers at every tail slice.
pub fn slice_eigen_oracle(a: &GenMatrix) -> Result<Vec<SliceReport>, OracleError> {
    let n = a.dim();
    if n > 6 {
        return Err(OracleError::DimensionTooLarge { n });
    }
    let eig = gen_eigen(a)?;
    let grid = a.grid();
    let mut out = Vec::with_capacity(grid.tail_len());
    for k in grid.tail_indices() {
        let s = a.sample_at(k).symmetrized();
        let classical = sym_eigenvalues_desc(n, &s.a)?;
        let delta = classical
            .iter()
            .enumerate()
            .map(|(i, c)| (c - eig.eigenvalues()[i].sample(k)).abs())
            .fold(0.0f64, f64::max);
        out.push(SliceReport {
            k,
            classical: SliceValue::Eigenvalues(classical),
            delta,
        });
    }
    Ok(out)
}

/// Verifies the spectral perturbation bound at every tail slice: the
/// l2 distance of the ordered spectra of `A` and `A + E` (symmetrized,
/// both solved by this module) stays within `sqrt(2) ||E||_F`. The
/// report's delta is `distance - sqrt(2) ||E_k||_F`, so nonpositive
/// values (up to solver tolerance) confirm the bound.
pub fn perturbation_check(a: &GenMatrix, e: &GenMatrix) -> Result<Vec<SliceReport>, OracleError> {
    let n = a.dim();
    if n > 6 {
        return Err(OracleError::DimensionTooLarge { n });
    }
    assert_eq!(n, e.dim(), "perturbation must match the matrix dimension");
    let grid = a.grid();
    let mut out = Vec::with_capacity(grid.tail_len());
    for k in grid.tail_indices() {
        let base = a.sample_at(k).symmetrized();
        let pert_raw = e.sample_at(k);
        let mut shifted = base.clone();
        for i in 0..n {
            for j in 0..n {
                let sym_e = 0.5 * (pert_raw.get(i, j) + pert_raw.get(j, i));
                shifted.set(i, j, shifted.get(i, j) + sym_e);
            }
        }
        let lam = sym_eigenvalues_desc(n, &base.a)?;
        let mu = sym_eigenvalues_desc(n, &shifted.a)?;
        let dist = lam
            .iter()
            .zip(mu.iter())
            .map(|(l, m)| (l - m) * (l - m))
            .sum::<f64>()
            .sqrt();
        let e_norm = pert_raw.frobenius();
        out.push(SliceReport {
            k,
            classical: SliceValue::Eigenvalues(mu),
            delta: dist - std::f64::consts::SQRT_2 * e_norm,
        });
    }
    Ok(out)
}
