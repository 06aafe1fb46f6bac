use std::sync::Arc;

use crate::charts::ChartError;
use crate::gen_num::EpsGrid;

/// Open box in coordinate space, the single-chart domain everything in
/// this module lives on.
#[derive(Debug, Clone)]
pub struct ChartDomain {
    name: String,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl ChartDomain {
    pub fn new(name: impl Into<String>, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, ChartError> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(ChartError::InvalidDomain(
                "bounds must be nonempty and of equal length".into(),
            ));
        }
        if lo.iter().zip(hi.iter()).any(|(a, b)| !(a < b)) {
            return Err(ChartError::InvalidDomain(
                "box must be open and nonempty".into(),
            ));
        }
        Ok(ChartDomain {
            name: name.into(),
            lo,
            hi,
        })
    }

    /// Symmetric box `(-r, r)^dim`.
    pub fn centered(name: impl Into<String>, dim: usize, r: f64) -> Result<Self, ChartError> {
        Self::new(name, vec![-r; dim], vec![r; dim])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(self.hi.iter()))
                .all(|(xi, (lo, hi))| lo < xi && xi < hi)
    }

    /// Interior point at fractional coordinates `t` in (0,1)^dim.
    pub fn at_fraction(&self, t: &[f64]) -> Vec<f64> {
        self.lo
            .iter()
            .zip(self.hi.iter())
            .zip(t.iter())
            .map(|((lo, hi), ti)| lo + (hi - lo) * ti)
            .collect()
    }
}

type PointEval = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// A compactly supported generalized point: a net of coordinates with
/// all tail samples confined to a box.
#[derive(Clone)]
pub struct GenPoint {
    grid: EpsGrid,
    evaluator: PointEval,
    samples: Vec<Vec<f64>>,
    support_lo: Vec<f64>,
    support_hi: Vec<f64>,
    label: String,
}

impl std::fmt::Debug for GenPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GenPoint")
            .field("label", &self.label)
            .field("support_lo", &self.support_lo)
            .field("support_hi", &self.support_hi)
            .finish()
    }
}

impl GenPoint {
    pub fn new(
        grid: EpsGrid,
        dim: usize,
        label: impl Into<String>,
        evaluator: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        let evaluator: PointEval = Arc::new(evaluator);
        let samples: Vec<Vec<f64>> = grid
            .indices()
            .map(|k| {
                let x = evaluator(grid.eps_at(k));
                assert_eq!(x.len(), dim, "point evaluator must honor the dimension");
                x
            })
            .collect();
        let mut support_lo = vec![f64::INFINITY; dim];
        let mut support_hi = vec![f64::NEG_INFINITY; dim];
        for k in grid.tail_indices() {
            for (i, &xi) in samples[(k - 1) as usize].iter().enumerate() {
                support_lo[i] = support_lo[i].min(xi);
                support_hi[i] = support_hi[i].max(xi);
            }
        }
        GenPoint {
            grid,
            evaluator,
            samples,
            support_lo,
            support_hi,
            label: label.into(),
        }
    }

    /// Constant (standard) point.
    pub fn standard(grid: EpsGrid, x: &[f64]) -> Self {
        let x0 = x.to_vec();
        let label = format!("standard{x0:?}");
        Self::new(grid, x.len(), label, move |_| x0.clone())
    }

    /// Point drifting with the smoothing parameter: `x + eps * v`.
    pub fn drifting(grid: EpsGrid, x: &[f64], v: &[f64]) -> Self {
        assert_eq!(x.len(), v.len());
        let x0 = x.to_vec();
        let v0 = v.to_vec();
        let label = format!("drifting{x0:?}+eps*{v0:?}");
        Self::new(grid, x.len(), label, move |eps| {
            x0.iter().zip(v0.iter()).map(|(a, b)| a + eps * b).collect()
        })
    }

    /// Point alternating between two locations by grid-index parity.
    pub fn parity_alternating(grid: EpsGrid, a: &[f64], b: &[f64]) -> Self {
        assert_eq!(a.len(), b.len());
        let a0 = a.to_vec();
        let b0 = b.to_vec();
        let label = format!("parity({a0:?}|{b0:?})");
        Self::new(grid, a.len(), label, move |eps| {
            if grid.nearest_index(eps) % 2 == 0 {
                a0.clone()
            } else {
                b0.clone()
            }
        })
    }

    pub fn grid(&self) -> EpsGrid {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.support_lo.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, eps: f64) -> Vec<f64> {
        (self.evaluator)(eps)
    }

    pub fn sample_at(&self, k: u32) -> &[f64] {
        &self.samples[(k - 1) as usize]
    }

    /// Bounding box of the tail samples (the compact-support
    /// certificate).
    pub fn support(&self) -> (&[f64], &[f64]) {
        (&self.support_lo, &self.support_hi)
    }

    /// True when every tail sample lies inside the open domain box.
    pub fn supported_in(&self, domain: &ChartDomain) -> bool {
        if self.dim() != domain.dim() {
            return false;
        }
        self.grid
            .tail_indices()
            .all(|k| domain.contains(self.sample_at(k)))
    }

    /// Slice-wise distance to another point, as a plain sample vector.
    pub fn distance_samples(&self, other: &GenPoint) -> Vec<f64> {
        self.grid
            .indices()
            .map(|k| {
                self.sample_at(k)
                    .iter()
                    .zip(other.sample_at(k).iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }
}
