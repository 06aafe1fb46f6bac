//! Named constructions used by demos and test suites: the Minkowski
//! form, idempotent partitions of the grid, the zero-divisor pair that
//! breaks strictness of the inverse Cauchy-Schwarz inequality, the
//! alternating diagonalizer, and the incomparable pair.

use crate::charts::{ChartDomain, ScalarField};
use crate::gen_linalg::{GenMatrix, GenVector};
use crate::gen_num::{EpsGrid, GenNumber, IndexSet};

/// Minkowski form `diag(-1, 1, ..., 1)`.
pub fn minkowski(grid: EpsGrid, n: usize) -> GenMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        0.0
                    } else if i == 0 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect();
    GenMatrix::from_rows_f64(grid, &rows)
}

/// The incomparable pair: `c = chi_even`, `d = 1 - c`. Neither
/// `c <= d` nor `d <= c` holds.
pub fn incomparable_pair(grid: EpsGrid) -> (GenNumber, GenNumber) {
    let c = GenNumber::chi(grid, &IndexSet::Even);
    let d = (&GenNumber::constant(grid, 1.0) - &c).with_label("1 - chi(even)");
    (c, d)
}

/// Idempotent partition of unity: the characteristic nets of the
/// residue classes of the grid indices mod `n`. Pairwise products
/// vanish sample-exactly and the sum is the unit.
pub fn idempotent_partition(grid: EpsGrid, n: usize) -> Vec<GenNumber> {
    IndexSet::residue_classes(n as u32)
        .iter()
        .map(|set| GenNumber::chi(grid, set))
        .collect()
}

/// The free vector built from an idempotent partition:
/// `v = sum_i (-1)^((i+1)(n+1)) lambda_i e_i` (1-based `i`).
pub fn signed_partition_vector(grid: EpsGrid, n: usize) -> GenVector {
    let lambdas = idempotent_partition(grid, n);
    let entries = lambdas
        .into_iter()
        .enumerate()
        .map(|(i0, l)| {
            let i = i0 + 1;
            if ((i + 1) * (n + 1)) % 2 == 1 {
                l.negate()
            } else {
                l
            }
        })
        .collect();
    GenVector::new(entries).expect("partition vector")
}

/// Cyclic permutation sending 1 -> n and j -> j-1 (1-based).
fn cycle(n: usize, j: usize) -> usize {
    if j == 1 {
        n
    } else {
        j - 1
    }
}

/// The basis completing the signed partition vector: `v_1 = v` and
/// `v_j = sum_k lambda_{gamma^(j-1)(k)} e_k` for `j > 1`, with `gamma`
/// the cycle above. Its coordinate matrix has determinant
/// `sum_l lambda_l = 1`.
pub fn cyclic_partition_basis(grid: EpsGrid, n: usize) -> Vec<GenVector> {
    let lambdas = idempotent_partition(grid, n);
    let mut family = Vec::with_capacity(n);
    family.push(signed_partition_vector(grid, n));
    for j in 2..=n {
        let entries = (1..=n)
            .map(|k| {
                let mut idx = k;
                for _ in 0..(j - 1) {
                    idx = cycle(n, idx);
                }
                lambdas[idx - 1].clone()
            })
            .collect();
        family.push(GenVector::new(entries).expect("partition basis vector"));
    }
    family
}

/// Symmetric matrix whose slices alternate `diag(1,-1)` (even index)
/// and `diag(-1,1)` (odd index): the image of `diag(1,-1)` under a
/// diagonalizer that alternates between the identity and the rotation
/// by pi/2. The ordered eigenvalue nets are the constants 1 and -1,
/// while the diagonal-placement nets alternate in sign.
pub fn alternating_diagonalizer(grid: EpsGrid) -> GenMatrix {
    let chi_even = GenNumber::chi(grid, &IndexSet::Even);
    let chi_odd = GenNumber::chi(grid, &IndexSet::Odd);
    let top = &chi_even - &chi_odd;
    let bottom = top.negate();
    let zero = GenNumber::constant(grid, 0.0);
    GenMatrix::from_rows(vec![vec![top, zero.clone()], vec![zero, bottom]])
        .expect("alternating matrix")
}

/// The diagonal-placement net of [`alternating_diagonalizer`]: +-1 by
/// grid parity. It makes `A - theta I` non-injective without being an
/// eigenvalue net.
pub fn alternating_placement(grid: EpsGrid) -> GenNumber {
    let chi_even = GenNumber::chi(grid, &IndexSet::Even);
    let chi_odd = GenNumber::chi(grid, &IndexSet::Odd);
    (&chi_even - &chi_odd).with_label("chi(even) - chi(odd)")
}

/// The time-like pair breaking strictness of the inverse
/// Cauchy-Schwarz inequality over a zero divisor: in the Minkowski
/// form, `u = e_1` and `v = (1, lambda * eps, 0, ..., 0)` with
/// `lambda = chi_even`. Returns `(u, v, lambda, alpha)`.
pub fn cs_zero_divisor_pair(
    grid: EpsGrid,
    n: usize,
) -> (GenVector, GenVector, GenNumber, GenNumber) {
    assert!(n >= 2);
    let lambda = GenNumber::chi(grid, &IndexSet::Even);
    let alpha = GenNumber::eps(grid);
    let u = GenVector::basis(grid, n, 0);
    let mut entries = vec![GenNumber::constant(grid, 1.0), &lambda * &alpha];
    for _ in 2..n {
        entries.push(GenNumber::constant(grid, 0.0));
    }
    let v = GenVector::new(entries).expect("zero-divisor pair");
    (u, v, lambda, alpha)
}

/// Witness that every nonzero submodule contains a strict one: for a
/// vector `u != 0` and the even index set `D`, `chi_D * (1 - chi_D)`
/// vanishes sample-exactly while `(1 - chi_D) u` is not negligible.
pub fn strict_submodule_witness(grid: EpsGrid, n: usize) -> (GenVector, GenNumber) {
    let u = GenVector::basis(grid, n, 0);
    let chi_d = GenNumber::chi(grid, &IndexSet::Even);
    (u, chi_d)
}

/// Compact bump of unit mass scale, supported in (-1, 1).
fn bump(y: f64) -> f64 {
    if y.abs() < 1.0 {
        (-1.0 / (1.0 - y * y)).exp()
    } else {
        0.0
    }
}

/// The moving mollifier `u_eps(x) = bump((x - eps)/eps) / eps` on the
/// interval (-2, 2): its value class vanishes at every standard point,
/// yet the point drifting as `x = eps` sees a net of order `1/eps`.
pub fn moving_bump_field() -> ScalarField {
    let domain = ChartDomain::centered("line", 1, 2.0).expect("bump domain");
    ScalarField::new(domain, |eps, x| bump((x[0] - eps) / eps) / eps)
}
