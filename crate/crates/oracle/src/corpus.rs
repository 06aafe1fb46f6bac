//! Deterministic random corpora for the verification suites: symmetric
//! matrices with mild slice dependence, negligible perturbations,
//! invertible transforms, Lorentzian forms with known time-like
//! vectors, and mixed freeness families.

use gennum_core::fixtures;
use gennum_core::gen_linalg::{GenMatrix, GenVector};
use gennum_core::gen_num::{EpsGrid, GenNumber, IndexSet};
use gennum_core::rng::SplitMix64;

/// Net `c + eps * d` with bounded random coefficients.
fn affine_net(grid: EpsGrid, rng: &mut SplitMix64, scale: f64, wiggle: f64) -> GenNumber {
    let c = rng.range(-scale, scale);
    let d = rng.range(-wiggle, wiggle);
    GenNumber::make(grid, move |e| c + e * d).expect("affine net is moderate")
}

/// Random symmetric matrix with entries `c_ij + eps d_ij`.
pub fn random_symmetric(grid: EpsGrid, n: usize, rng: &mut SplitMix64) -> GenMatrix {
    let mut rows = vec![vec![GenNumber::constant(grid, 0.0); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = affine_net(grid, rng, 2.0, 0.5);
            rows[i][j] = x.clone();
            rows[j][i] = x;
        }
    }
    GenMatrix::from_rows(rows).expect("square")
}

/// Random, generally non-symmetric matrix whose entries decay like
/// `c * exp(-1/eps)`: negligible as a class, nonzero on every slice.
pub fn random_negligible(grid: EpsGrid, n: usize, rng: &mut SplitMix64) -> GenMatrix {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            let c = rng.range(-1.0, 1.0);
            row.push(GenNumber::make(grid, move |e| c * (-1.0 / e).exp()).expect("negligible net"));
        }
        rows.push(row);
    }
    GenMatrix::from_rows(rows).expect("square")
}

/// Random constant matrix with determinant bounded away from zero.
pub fn random_invertible(grid: EpsGrid, n: usize, rng: &mut SplitMix64) -> GenMatrix {
    loop {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.range(-1.0, 1.0)).collect())
            .collect();
        let m = GenMatrix::from_rows_f64(grid, &rows);
        let d = m.det().sample(grid.k_max()).abs();
        if d > 0.2 {
            return m;
        }
    }
}

/// Random symmetric matrix with a prescribed signature, built as
/// `Q diag(d) Q^t` with eigenvalues bounded away from zero.
pub fn random_symmetric_with_signature(
    grid: EpsGrid,
    n: usize,
    negatives: usize,
    rng: &mut SplitMix64,
) -> GenMatrix {
    assert!(negatives <= n);
    let q = random_rotation(n, rng);
    let mut d = vec![0.0; n];
    for (i, di) in d.iter_mut().enumerate() {
        let mag = rng.range(0.5, 2.0);
        *di = if i < n - negatives { mag } else { -mag };
    }
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for (k, dk) in d.iter().enumerate() {
                s += q[i][k] * dk * q[j][k];
            }
            rows[i][j] = s;
        }
    }
    // exact symmetry of samples
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (rows[i][j] + rows[j][i]);
            rows[i][j] = avg;
            rows[j][i] = avg;
        }
    }
    GenMatrix::from_rows_f64(grid, &rows)
}

/// Random orthogonal matrix from composed plane rotations.
fn random_rotation(n: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    let mut q = vec![vec![0.0; n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for p in 0..n {
        for r in (p + 1)..n {
            let phi = rng.range(0.0, std::f64::consts::TAU);
            let (s, c) = phi.sin_cos();
            for row in q.iter_mut() {
                let (xp, xr) = (row[p], row[r]);
                row[p] = c * xp - s * xr;
                row[r] = s * xp + c * xr;
            }
        }
    }
    q
}

/// A Lorentzian form `S^t H S` (constant in the smoothing parameter)
/// together with the transform needed to produce time-like vectors.
pub struct LorentzScene {
    pub form_matrix: GenMatrix,
    /// Inverse of the frame transform: maps Minkowski-frame vectors to
    /// scene vectors.
    frame_inv: Vec<Vec<f64>>,
    grid: EpsGrid,
    n: usize,
}

impl LorentzScene {
    /// Random time-like vector with a sign margin, optionally wiggled
    /// by an `eps`-linear term. Positive `t` picks a fixed orientation
    /// half-cone.
    pub fn random_timelike(&self, rng: &mut SplitMix64) -> GenVector {
        let n = self.n;
        let t = rng.range(1.0, 2.0);
        let mut y = vec![t];
        // spatial part bounded by 0.7 t keeps the Minkowski norm <= -0.51 t^2
        let mut rem = 0.7 * t;
        for _ in 1..n {
            let c = rng.range(-rem / (n as f64).sqrt(), rem / (n as f64).sqrt());
            y.push(c);
            rem = (rem * rem - c * c).max(0.0).sqrt();
        }
        let base: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| self.frame_inv[i][j] * y[j]).sum())
            .collect();
        let wiggle: Vec<f64> = (0..n).map(|_| rng.range(-0.02, 0.02)).collect();
        let grid = self.grid;
        GenVector::from_f64s(grid, &base)
            .add(&eps_linear_vector(grid, &wiggle))
            .expect("shared grid")
    }

    /// Random free vector with entries spread across scales.
    pub fn random_spacelike_candidate(&self, rng: &mut SplitMix64) -> GenVector {
        let vals: Vec<f64> = (0..self.n).map(|_| rng.range(-1.0, 1.0)).collect();
        GenVector::from_f64s(self.grid, &vals)
    }
}

fn eps_linear_vector(grid: EpsGrid, coeffs: &[f64]) -> GenVector {
    GenVector::new(
        coeffs
            .iter()
            .map(|&c| GenNumber::make(grid, move |e| c * e).expect("linear net"))
            .collect(),
    )
    .expect("vector")
}

/// Random Lorentzian scene: `S^t diag(-1, 1, ..., 1) S` with `S`
/// invertible and well-conditioned.
pub fn random_lorentz_scene(grid: EpsGrid, n: usize, rng: &mut SplitMix64) -> LorentzScene {
    loop {
        let s: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 1.0 } else { 0.0 } + rng.range(-0.3, 0.3))
                    .collect()
            })
            .collect();
        let det = det_dense(&s);
        if det.abs() < 0.3 {
            continue;
        }
        let Some(s_inv) = invert_dense(&s) else {
            continue;
        };
        // g = S^t H S
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    let h = if k == 0 { -1.0 } else { 1.0 };
                    acc += s[k][i] * h * s[k][j];
                }
                rows[i][j] = acc;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (rows[i][j] + rows[j][i]);
                rows[i][j] = avg;
                rows[j][i] = avg;
            }
        }
        return LorentzScene {
            form_matrix: GenMatrix::from_rows_f64(grid, &rows),
            frame_inv: s_inv,
            grid,
            n,
        };
    }
}

fn det_dense(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap());
        let piv = piv.unwrap();
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        let (head, tail) = a.split_at_mut(c + 1);
        for row in tail.iter_mut() {
            let f = row[c] / head[c][c];
            for j in c..n {
                row[j] -= f * head[c][j];
            }
        }
    }
    det
}

fn invert_dense(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[piv][c] == 0.0 {
            return None;
        }
        a.swap(piv, c);
        let d = a[c][c];
        for x in a[c].iter_mut() {
            *x /= d;
        }
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = a[r][c];
            if f == 0.0 {
                continue;
            }
            for j in 0..2 * n {
                a[r][j] -= f * a[c][j];
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// One member of the mixed freeness corpus with its expected verdict.
pub struct FreenessCase {
    pub vector: GenVector,
    pub expect_free: bool,
    pub kind: &'static str,
}

/// Mixed corpus: power-law vectors, characteristic-net vectors whose
/// supports may or may not cover the grid, and idempotent-partition
/// vectors.
pub fn freeness_corpus(grid: EpsGrid, count: usize, rng: &mut SplitMix64) -> Vec<FreenessCase> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        match out.len() % 5 {
            0 => {
                // pure power law, at least one nonzero coefficient
                let n = 2 + rng.below(3);
                let mut coeffs: Vec<(f64, i32)> = (0..n)
                    .map(|_| {
                        let on = rng.next_f64() < 0.7;
                        let c = if on {
                            rng.range(0.5, 2.0) * rng.sign()
                        } else {
                            0.0
                        };
                        (c, rng.below(6) as i32)
                    })
                    .collect();
                if coeffs.iter().all(|(c, _)| *c == 0.0) {
                    coeffs[0].0 = 1.0;
                }
                let entries = coeffs
                    .iter()
                    .map(|&(c, p)| GenNumber::make(grid, move |e| c * e.powi(p)).unwrap())
                    .collect();
                out.push(FreenessCase {
                    vector: GenVector::new(entries).unwrap(),
                    expect_free: true,
                    kind: "power-law",
                });
            }
            1 => {
                // all-zero vector: not free
                let n = 2 + rng.below(3);
                out.push(FreenessCase {
                    vector: GenVector::zeros(grid, n),
                    expect_free: false,
                    kind: "zero",
                });
            }
            2 => {
                // supports covering the grid: chi_even e1 + chi_odd e2 scaled
                let c1 = rng.range(0.5, 2.0);
                let c2 = rng.range(0.5, 2.0);
                let p = rng.below(4) as i32;
                let even = GenNumber::chi(grid, &IndexSet::Even).scaled(c1);
                let odd_pow = GenNumber::make(grid, move |e| c2 * e.powi(p)).unwrap();
                let odd = &GenNumber::chi(grid, &IndexSet::Odd) * &odd_pow;
                out.push(FreenessCase {
                    vector: GenVector::new(vec![even, odd]).unwrap(),
                    expect_free: true,
                    kind: "chi-covering",
                });
            }
            3 => {
                // support gap: every entry vanishes on odd indices
                let c1 = rng.range(0.5, 2.0);
                let chi = GenNumber::chi(grid, &IndexSet::Even);
                let entries = vec![chi.scaled(c1), chi.scaled(-0.5 * c1)];
                out.push(FreenessCase {
                    vector: GenVector::new(entries).unwrap(),
                    expect_free: false,
                    kind: "chi-gap",
                });
            }
            _ => {
                let n = 2 + rng.below(3);
                out.push(FreenessCase {
                    vector: fixtures::signed_partition_vector(grid, n),
                    expect_free: true,
                    kind: "partition",
                });
            }
        }
    }
    out
}
