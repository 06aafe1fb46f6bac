//! Plain `f64` kernels used slice-wise (one smoothing index at a time):
//! cyclic Jacobi diagonalization, LU determinant/solve, and modified
//! Gram-Schmidt. Desk scale only; matrices are row-major `Vec<f64>`.

/// Row-major square matrix of samples at a single grid index.
#[derive(Debug, Clone, PartialEq)]
pub struct SMat {
    pub n: usize,
    pub a: Vec<f64>,
}

impl SMat {
    pub fn zeros(n: usize) -> Self {
        SMat {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            a.extend_from_slice(r);
        }
        SMat { n, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> SMat {
        let n = self.n;
        let mut t = SMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn symmetrized(&self) -> SMat {
        let n = self.n;
        let mut s = SMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, 0.5 * (self.get(i, j) + self.get(j, i)));
            }
        }
        s
    }

    pub fn matmul(&self, rhs: &SMat) -> SMat {
        let n = self.n;
        assert_eq!(n, rhs.n);
        let mut c = SMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    c.a[i * n + j] += aik * rhs.get(k, j);
                }
            }
        }
        c
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(x.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += self.get(i, j) * x[j];
            }
            y[i] = s;
        }
        y
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sub(&self, rhs: &SMat) -> SMat {
        let mut c = self.clone();
        for (x, y) in c.a.iter_mut().zip(rhs.a.iter()) {
            *x -= y;
        }
        c
    }
}

/// Convergence threshold for the Jacobi sweep, relative to `||A||_F`.
const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 30;

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Returns `(lambda, v)` with `A = V diag(lambda) V^t` (columns of `v`
/// are eigenvectors), unsorted. The caller symmetrizes beforehand.
pub fn jacobi_eigen(a: &SMat) -> (Vec<f64>, SMat) {
    let n = a.n;
    let mut m = a.clone();
    let mut v = SMat::identity(n);
    if n == 1 {
        return (vec![m.get(0, 0)], v);
    }
    let norm = m.frobenius().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m.get(i, j) * m.get(i, j);
            }
        }
        if (2.0 * off).sqrt() < JACOBI_TOL * norm {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let s = theta.signum();
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for i in 0..n {
                    if i != p && i != q {
                        let aip = m.get(i, p);
                        let aiq = m.get(i, q);
                        m.set(i, p, aip - s * (aiq + tau * aip));
                        m.set(p, i, m.get(i, p));
                        m.set(i, q, aiq + s * (aip - tau * aiq));
                        m.set(q, i, m.get(i, q));
                    }
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip - s * (viq + tau * vip));
                    v.set(i, q, viq + s * (vip - tau * viq));
                }
            }
        }
    }
    let lambda = (0..n).map(|i| m.get(i, i)).collect();
    (lambda, v)
}

/// Eigen-decomposition sorted by descending eigenvalue, returned as
/// `(lambda, u)` with `U A U^t = diag(lambda)` and `det U = +1` (rows of
/// `u` are eigenvectors; a sign flip of the first row fixes the
/// determinant, which leaves the diagonalization intact).
pub fn jacobi_sorted(a: &SMat) -> (Vec<f64>, SMat) {
    let n = a.n;
    let (lambda, v) = jacobi_eigen(a);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        lambda[j]
            .partial_cmp(&lambda[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sorted: Vec<f64> = idx.iter().map(|&i| lambda[i]).collect();
    let mut u = SMat::zeros(n);
    for (row, &src) in idx.iter().enumerate() {
        for j in 0..n {
            u.set(row, j, v.get(j, src));
        }
    }
    if lu_det(&u) < 0.0 {
        for j in 0..n {
            u.set(0, j, -u.get(0, j));
        }
    }
    (sorted, u)
}

/// Determinant by closed form for n <= 3, LU with partial pivoting above.
pub fn det(a: &SMat) -> f64 {
    match a.n {
        0 => 1.0,
        1 => a.get(0, 0),
        2 => a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0),
        3 => {
            a.get(0, 0) * (a.get(1, 1) * a.get(2, 2) - a.get(1, 2) * a.get(2, 1))
                - a.get(0, 1) * (a.get(1, 0) * a.get(2, 2) - a.get(1, 2) * a.get(2, 0))
                + a.get(0, 2) * (a.get(1, 0) * a.get(2, 1) - a.get(1, 1) * a.get(2, 0))
        }
        _ => lu_det(a),
    }
}

fn lu_det(a: &SMat) -> f64 {
    let n = a.n;
    let mut m = a.clone();
    let mut sign = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = m.get(col, col).abs();
        for r in (col + 1)..n {
            let v = m.get(r, col).abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                let t = m.get(col, j);
                m.set(col, j, m.get(piv, j));
                m.set(piv, j, t);
            }
            sign = -sign;
        }
        let d = m.get(col, col);
        for r in (col + 1)..n {
            let f = m.get(r, col) / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m.set(r, j, m.get(r, j) - f * m.get(col, j));
            }
        }
    }
    let mut p = sign;
    for i in 0..n {
        p *= m.get(i, i);
    }
    p
}

/// Solve `A x = b` by LU with partial pivoting. Returns `None` when a
/// pivot vanishes (singular slice).
pub fn lu_solve(a: &SMat, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.n;
    let mut m = a.clone();
    let mut x: Vec<f64> = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = m.get(col, col).abs();
        for r in (col + 1)..n {
            let v = m.get(r, col).abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                let t = m.get(col, j);
                m.set(col, j, m.get(piv, j));
                m.set(piv, j, t);
            }
            x.swap(col, piv);
        }
        let d = m.get(col, col);
        for r in (col + 1)..n {
            let f = m.get(r, col) / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m.set(r, j, m.get(r, j) - f * m.get(col, j));
            }
            x[r] -= f * x[col];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in (i + 1)..n {
            s -= m.get(i, j) * x[j];
        }
        x[i] = s / m.get(i, i);
    }
    Some(x)
}

/// Matrix inverse via LU solves against the identity columns.
pub fn inverse(a: &SMat) -> Option<SMat> {
    let n = a.n;
    let mut inv = SMat::zeros(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let col = lu_solve(a, &e)?;
        for i in 0..n {
            inv.set(i, j, col[i]);
        }
    }
    Some(inv)
}

/// Modified Gram-Schmidt with one reorthogonalization pass under the
/// inner product `<x, y> = x^t H y` (H positive definite at this slice).
/// Returns `None` when a vector's norm collapses (degenerate family).
pub fn gram_schmidt_h(h: &SMat, vecs: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = h.n;
    let inner = |x: &[f64], y: &[f64]| -> f64 {
        let hy = h.matvec(y);
        x.iter().zip(hy.iter()).map(|(a, b)| a * b).sum()
    };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vecs.len());
    for v in vecs {
        assert_eq!(v.len(), n);
        let mut w = v.clone();
        for _pass in 0..2 {
            for e in &basis {
                let c = inner(&w, e);
                for i in 0..n {
                    w[i] -= c * e[i];
                }
            }
        }
        let norm2 = inner(&w, &w);
        if !(norm2 > 0.0) || norm2.sqrt() < 1e-150 {
            return None;
        }
        let inv = 1.0 / norm2.sqrt();
        for x in w.iter_mut() {
            *x *= inv;
        }
        basis.push(w);
    }
    Some(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn jacobi_on_diagonal_matrix() {
        let a = SMat::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        let (l, u) = jacobi_sorted(&a);
        assert_eq!(l, vec![1.0, -1.0]);
        // U A U^t = diag
        let d = u.matmul(&a).matmul(&u.transpose());
        assert_close(d.get(0, 0), 1.0, 1e-15);
        assert_close(d.get(1, 1), -1.0, 1e-15);
        assert_close(d.get(0, 1), 0.0, 1e-15);
    }

    #[test]
    fn jacobi_known_2x2() {
        let a = SMat::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let (l, u) = jacobi_sorted(&a);
        assert_close(l[0], 3.0, 1e-14);
        assert_close(l[1], 1.0, 1e-14);
        let d = u.matmul(&a).matmul(&u.transpose());
        assert_close(d.get(0, 0), 3.0, 1e-14);
        assert_close(d.get(1, 1), 1.0, 1e-14);
        assert_close(d.get(0, 1), 0.0, 1e-14);
        assert_close(lu_det(&u), 1.0, 1e-12);
    }

    #[test]
    fn jacobi_residual_small_for_random_symmetric() {
        let mut rng = crate::rng::SplitMix64::new(11);
        for n in 2..=6usize {
            for _ in 0..20 {
                let mut a = SMat::zeros(n);
                for i in 0..n {
                    for j in i..n {
                        let v = rng.range(-2.0, 2.0);
                        a.set(i, j, v);
                        a.set(j, i, v);
                    }
                }
                let (l, u) = jacobi_sorted(&a);
                let mut d = SMat::zeros(n);
                for i in 0..n {
                    d.set(i, i, l[i]);
                }
                let resid = u.matmul(&a).matmul(&u.transpose()).sub(&d).frobenius();
                assert!(
                    resid <= 10.0 * (n * n) as f64 * f64::EPSILON * a.frobenius().max(1.0),
                    "residual {resid} too large at n={n}"
                );
                // orthogonality and unit determinant
                let gram = u.matmul(&u.transpose());
                let defect = gram.sub(&SMat::identity(n)).frobenius();
                assert!(defect < 1e-13);
                assert_close(lu_det(&u), 1.0, 1e-10);
                // descending order
                for w in l.windows(2) {
                    assert!(w[0] >= w[1] - 1e-12);
                }
            }
        }
    }

    #[test]
    fn det_closed_forms_match_lu() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for n in 1..=3usize {
            for _ in 0..50 {
                let mut a = SMat::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        a.set(i, j, rng.range(-3.0, 3.0));
                    }
                }
                assert_close(det(&a), lu_det(&a), 1e-12 * det(&a).abs().max(1.0));
            }
        }
    }

    #[test]
    fn lu_solve_recovers_solution() {
        let a = SMat::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ]);
        let x0 = [1.0, -2.0, 0.5];
        let b = a.matvec(&x0);
        let x = lu_solve(&a, &b).unwrap();
        for (xi, x0i) in x.iter().zip(x0.iter()) {
            assert_close(*xi, *x0i, 1e-12);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = SMat::from_rows(&[vec![-1.0, 0.2], vec![0.2, 1.0]]);
        let inv = inverse(&a).unwrap();
        let p = a.matmul(&inv);
        assert_close(p.get(0, 0), 1.0, 1e-13);
        assert_close(p.get(1, 1), 1.0, 1e-13);
        assert_close(p.get(0, 1), 0.0, 1e-13);
    }

    #[test]
    fn gram_schmidt_orthonormalizes() {
        let h = SMat::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]);
        let vecs = vec![vec![1.0, 1.0], vec![1.0, 0.0]];
        let basis = gram_schmidt_h(&h, &vecs).unwrap();
        let inner = |x: &[f64], y: &[f64]| -> f64 {
            let hy = h.matvec(y);
            x.iter().zip(hy.iter()).map(|(a, b)| a * b).sum()
        };
        assert_close(inner(&basis[0], &basis[0]), 1.0, 1e-13);
        assert_close(inner(&basis[1], &basis[1]), 1.0, 1e-13);
        assert_close(inner(&basis[0], &basis[1]), 0.0, 1e-13);
    }

    #[test]
    fn gram_schmidt_rejects_degenerate_family() {
        let h = SMat::identity(2);
        let vecs = vec![vec![1.0, 0.0], vec![2.0, 0.0]];
        assert!(gram_schmidt_h(&h, &vecs).is_none());
    }
}
