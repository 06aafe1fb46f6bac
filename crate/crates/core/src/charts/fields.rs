use std::sync::Arc;

use crate::charts::ChartDomain;

/// Metric field on a chart: a pure evaluator `(eps, x) -> g(eps, x)`
/// returning the coefficient matrix row-major. Evaluation symmetrizes
/// the output; smoothness in `x` is the caller's responsibility (the
/// module only ever samples).
#[derive(Clone)]
pub struct MetricField {
    domain: ChartDomain,
    evaluator: Arc<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>,
}

impl std::fmt::Debug for MetricField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricField")
            .field("domain", &self.domain.name())
            .finish()
    }
}

impl MetricField {
    pub fn new(
        domain: ChartDomain,
        evaluator: impl Fn(f64, &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        MetricField {
            domain,
            evaluator: Arc::new(evaluator),
        }
    }

    /// Field constant in both `eps` and `x`.
    pub fn constant(domain: ChartDomain, rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        assert_eq!(flat.len(), n * n);
        Self::new(domain, move |_, _| flat.clone())
    }

    pub fn domain(&self) -> &ChartDomain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Symmetrized coefficient matrix at `(eps, x)`, row-major.
    pub fn eval(&self, eps: f64, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let raw = (self.evaluator)(eps, x);
        assert_eq!(
            raw.len(),
            n * n,
            "metric evaluator must return an n x n matrix"
        );
        let mut sym = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                sym[i * n + j] = 0.5 * (raw[i * n + j] + raw[j * n + i]);
            }
        }
        sym
    }
}

/// Vector field on a chart: `(eps, x) -> xi(eps, x)`.
#[derive(Clone)]
pub struct VectorField {
    domain: ChartDomain,
    evaluator: Arc<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>,
}

impl std::fmt::Debug for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VectorField")
            .field("domain", &self.domain.name())
            .finish()
    }
}

impl VectorField {
    pub fn new(
        domain: ChartDomain,
        evaluator: impl Fn(f64, &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        VectorField {
            domain,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn constant(domain: ChartDomain, v: &[f64]) -> Self {
        let v0 = v.to_vec();
        Self::new(domain, move |_, _| v0.clone())
    }

    pub fn domain(&self) -> &ChartDomain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn eval(&self, eps: f64, x: &[f64]) -> Vec<f64> {
        let v = (self.evaluator)(eps, x);
        assert_eq!(
            v.len(),
            self.dim(),
            "vector field evaluator must honor the dimension"
        );
        v
    }
}

/// Scalar field on a chart: `(eps, x) -> f(eps, x)`. Used to
/// demonstrate point-value uniqueness (standard points cannot separate
/// everything; drifting points can).
#[derive(Clone)]
pub struct ScalarField {
    domain: ChartDomain,
    evaluator: Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("domain", &self.domain.name())
            .finish()
    }
}

impl ScalarField {
    pub fn new(
        domain: ChartDomain,
        evaluator: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            domain,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn domain(&self) -> &ChartDomain {
        &self.domain
    }

    pub fn eval(&self, eps: f64, x: &[f64]) -> f64 {
        (self.evaluator)(eps, x)
    }
}
