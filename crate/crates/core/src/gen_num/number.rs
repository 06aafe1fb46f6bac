use std::sync::Arc;

use crate::gen_num::{EpsGrid, IndexSet, NumError, Verdict};

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Result of fitting the decay exponent of a net on the tail window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderEstimate {
    /// The net stays below `eps^m_cap` on the whole tail window; it
    /// represents zero.
    Negligible,
    /// Fitted power-law exponent, rounded toward the conservative
    /// (smaller) integer. `confident` is false when the tail mixes
    /// effective zeros with ordinary samples or the fit residuals are
    /// large.
    Order { exponent: i32, confident: bool },
}

impl OrderEstimate {
    pub fn is_negligible(&self) -> bool {
        matches!(self, OrderEstimate::Negligible)
    }

    pub fn exponent(&self) -> Option<i32> {
        match self {
            OrderEstimate::Negligible => None,
            OrderEstimate::Order { exponent, .. } => Some(*exponent),
        }
    }
}

/// A representative of a generalized number: a pure evaluator
/// `eps -> f64` together with its cached samples on the dyadic grid.
///
/// The cached samples are always the evaluator applied to the grid
/// points, so re-evaluation is bit-identical. All asymptotic verdicts
/// are decided from the samples on the tail window, in log space.
#[derive(Clone)]
pub struct GenNumber {
    grid: EpsGrid,
    samples: Vec<f64>,
    evaluator: Evaluator,
    label: Option<String>,
    order: OrderEstimate,
}

impl std::fmt::Debug for GenNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GenNumber")
            .field("grid", &self.grid)
            .field("label", &self.label)
            .field("order", &self.order)
            .field("head", &self.samples.first())
            .field("tail_end", &self.samples.last())
            .finish()
    }
}

/// Margin added before flooring the fitted slope; absorbs bounded
/// oscillation without overstating the decay order.
const ORDER_ROUND_MARGIN: f64 = 0.25;
/// Largest acceptable log2 fit residual for a confident order estimate.
const ORDER_RESIDUAL_LIMIT: f64 = 1.0;

fn log2_abs(x: f64) -> f64 {
    x.abs().log2()
}

impl GenNumber {
    /// Gated constructor: evaluates on the grid, rejects nets that are
    /// not finite or grow faster than `eps^(-m_cap)` on the tail window.
    pub fn make(
        grid: EpsGrid,
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, NumError> {
        Self::make_labeled(grid, evaluator, None)
    }

    pub fn make_labeled(
        grid: EpsGrid,
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
        label: Option<String>,
    ) -> Result<Self, NumError> {
        let evaluator: Evaluator = Arc::new(evaluator);
        let samples: Vec<f64> = grid.indices().map(|k| evaluator(grid.eps_at(k))).collect();
        for (i, s) in samples.iter().enumerate() {
            if s.is_nan() {
                return Err(NumError::NonFinite { k: i as u32 + 1 });
            }
        }
        let m_cap = grid.m_cap() as f64;
        let wild: Vec<u32> = grid
            .tail_indices()
            .filter(|&k| log2_abs(samples[(k - 1) as usize]) > m_cap * k as f64)
            .collect();
        if !wild.is_empty() {
            return Err(NumError::NotModerate {
                label: label.unwrap_or_default(),
                witnesses: wild,
            });
        }
        if let Some(i) = samples.iter().position(|s| s.is_infinite()) {
            return Err(NumError::NonFinite { k: i as u32 + 1 });
        }
        Ok(Self::assemble(grid, samples, evaluator, label))
    }

    /// Ungated constructor for nets derived inside the crate; moderation
    /// is guaranteed by construction there.
    pub(crate) fn from_fn(
        grid: EpsGrid,
        evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let evaluator: Evaluator = Arc::new(evaluator);
        let samples: Vec<f64> = grid.indices().map(|k| evaluator(grid.eps_at(k))).collect();
        Self::assemble(grid, samples, evaluator, None)
    }

    /// Rebuilds a net from stored samples. The evaluator looks up the
    /// nearest grid sample, so off-grid evaluation is piecewise constant.
    pub fn from_samples(grid: EpsGrid, samples: Vec<f64>) -> Result<Self, NumError> {
        if samples.len() != grid.len() {
            return Err(NumError::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        let lookup = samples.clone();
        let evaluator: Evaluator =
            Arc::new(move |eps| lookup[(grid.nearest_index(eps) - 1) as usize]);
        Ok(Self::assemble(grid, samples, evaluator, None))
    }

    fn assemble(
        grid: EpsGrid,
        samples: Vec<f64>,
        evaluator: Evaluator,
        label: Option<String>,
    ) -> Self {
        let order = estimate_order_of(&grid, &samples);
        GenNumber {
            grid,
            samples,
            evaluator,
            label,
            order,
        }
    }

    /// The constant net `eps -> c`.
    pub fn constant(grid: EpsGrid, c: f64) -> Self {
        Self::from_fn(grid, move |_| c)
    }

    /// The identity net `eps -> eps`.
    pub fn eps(grid: EpsGrid) -> Self {
        Self::from_fn(grid, |e| e)
    }

    /// Characteristic net of an index set: exactly 1 on members, 0
    /// elsewhere. Off-grid evaluation uses the nearest grid index.
    pub fn chi(grid: EpsGrid, set: &IndexSet) -> Self {
        let set_for_eval = set.clone();
        let mut n = Self::from_fn(grid, move |eps| {
            if set_for_eval.contains(grid.nearest_index(eps)) {
                1.0
            } else {
                0.0
            }
        });
        n.label = Some(format!("chi({set})"));
        n
    }

    pub fn grid(&self) -> EpsGrid {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sample at grid index `k` (1-based).
    pub fn sample(&self, k: u32) -> f64 {
        self.samples[(k - 1) as usize]
    }

    pub fn log2_abs_at(&self, k: u32) -> f64 {
        log2_abs(self.sample(k))
    }

    pub fn eval(&self, eps: f64) -> f64 {
        (self.evaluator)(eps)
    }

    /// Like [`eval`](Self::eval), but grid points read the cached
    /// sample (bit-identical by construction) instead of re-walking
    /// the evaluator graph. Derived slice-wise computations use this.
    pub fn value_at(&self, eps: f64) -> f64 {
        match self.grid.index_of_exact(eps) {
            Some(k) => self.sample(k),
            None => self.eval(eps),
        }
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// True when re-running the evaluator on the grid reproduces the
    /// cached samples bit for bit.
    pub fn samples_reproducible(&self) -> bool {
        self.grid
            .indices()
            .all(|k| self.eval(self.grid.eps_at(k)).to_bits() == self.sample(k).to_bits())
    }

    fn check_grid(&self, rhs: &GenNumber) -> Result<(), NumError> {
        if self.grid != rhs.grid {
            return Err(NumError::GridMismatch);
        }
        Ok(())
    }

    fn zip(
        &self,
        rhs: &GenNumber,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + Copy + 'static,
    ) -> GenNumber {
        let a = Arc::clone(&self.evaluator);
        let b = Arc::clone(&rhs.evaluator);
        let grid = self.grid;
        let evaluator: Evaluator = Arc::new(move |eps| f(a(eps), b(eps)));
        let samples: Vec<f64> = self
            .samples
            .iter()
            .zip(rhs.samples.iter())
            .map(|(&x, &y)| f(x, y))
            .collect();
        Self::assemble(grid, samples, evaluator, None)
    }

    fn map(&self, f: impl Fn(f64) -> f64 + Send + Sync + Copy + 'static) -> GenNumber {
        let a = Arc::clone(&self.evaluator);
        let evaluator: Evaluator = Arc::new(move |eps| f(a(eps)));
        let samples: Vec<f64> = self.samples.iter().map(|&x| f(x)).collect();
        Self::assemble(self.grid, samples, evaluator, None)
    }

    pub fn checked_add(&self, rhs: &GenNumber) -> Result<GenNumber, NumError> {
        self.check_grid(rhs)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn checked_sub(&self, rhs: &GenNumber) -> Result<GenNumber, NumError> {
        self.check_grid(rhs)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    pub fn checked_mul(&self, rhs: &GenNumber) -> Result<GenNumber, NumError> {
        self.check_grid(rhs)?;
        Ok(self.zip(rhs, |a, b| a * b))
    }

    /// Division. Requires the divisor to be invertible; on samples where
    /// the divisor vanishes the quotient representative is set to 0.
    pub fn checked_div(&self, rhs: &GenNumber) -> Result<GenNumber, NumError> {
        self.check_grid(rhs)?;
        if !rhs.is_invertible().is_holds() {
            return Err(NumError::DivisionByNonInvertible {
                label: rhs.label.clone().unwrap_or_default(),
            });
        }
        Ok(self.zip(rhs, |a, b| if b == 0.0 { 0.0 } else { a / b }))
    }

    pub fn recip(&self) -> Result<GenNumber, NumError> {
        GenNumber::constant(self.grid, 1.0).checked_div(self)
    }

    pub fn negate(&self) -> GenNumber {
        self.map(|x| -x)
    }

    pub fn abs(&self) -> GenNumber {
        self.map(f64::abs)
    }

    pub fn scaled(&self, c: f64) -> GenNumber {
        self.map(move |x| c * x)
    }

    /// Integer power. Negative exponents go through the division gate.
    pub fn pow_int(&self, n: i32) -> Result<GenNumber, NumError> {
        if n >= 0 {
            Ok(self.map(move |x| x.powi(n)))
        } else {
            self.map(move |x| x.powi(-n)).recip()
        }
    }

    pub fn exp(&self) -> GenNumber {
        self.map(f64::exp)
    }

    /// Fitted decay order of this net (cached at construction).
    pub fn estimate_order(&self) -> OrderEstimate {
        self.order
    }

    /// Indices on the tail window where the sample is effectively zero,
    /// i.e. `|x_k| <= max(eps_k^m_cap, floor)`. NaN counts as a dip.
    fn tail_dips(&self, floor: f64) -> Vec<u32> {
        let m_cap = self.grid.m_cap() as f64;
        let log_floor = if floor > 0.0 {
            floor.log2()
        } else {
            f64::NEG_INFINITY
        };
        self.grid
            .tail_indices()
            .filter(|&k| {
                let l = self.log2_abs_at(k);
                l.is_nan() || l <= (-m_cap * k as f64).max(log_floor)
            })
            .collect()
    }

    /// Decides whether this net represents zero: `|x_k| <= eps_k^m_cap`
    /// across the whole tail window. Violations only in the early tail
    /// leave the verdict inconclusive.
    pub fn is_negligible(&self) -> Verdict {
        self.is_negligible_with_floor(0.0)
    }

    /// Negligibility up to an absolute noise floor. Postcondition checks
    /// on nets computed by floating-point pipelines use this with a
    /// documented floor; the pure class-level test is `floor = 0`.
    pub fn is_negligible_with_floor(&self, floor: f64) -> Verdict {
        let m_cap = self.grid.m_cap() as f64;
        let log_floor = if floor > 0.0 {
            floor.log2()
        } else {
            f64::NEG_INFINITY
        };
        let viols: Vec<u32> = self
            .grid
            .tail_indices()
            .filter(|&k| {
                let l = self.log2_abs_at(k);
                !l.is_nan() && l > (-m_cap * k as f64).max(log_floor)
            })
            .collect();
        if viols.is_empty() {
            return Verdict::holds(self.grid.m_cap(), "|x| <= eps^m_cap across tail");
        }
        if viols.iter().any(|&k| k >= self.grid.late_tail_start()) {
            Verdict::fails(
                viols,
                "samples above the negligibility line persist late in the tail",
            )
        } else {
            Verdict::inconclusive(viols, "early-tail violations only; trend unresolved")
        }
    }

    /// Invertibility test: `|x_k| > eps_k^m0` on the whole tail for the
    /// reported certificate `m0`. Fails when the tail dips to the
    /// effective-zero line.
    pub fn is_strictly_nonzero(&self) -> Verdict {
        let dips = self.tail_dips(0.0);
        if !dips.is_empty() {
            return Verdict::fails(dips, "tail samples dip below eps^m_cap");
        }
        let mut c = f64::NEG_INFINITY;
        for k in self.grid.tail_indices() {
            let v = -self.log2_abs_at(k) / k as f64;
            if v > c {
                c = v;
            }
        }
        let m_cap = self.grid.m_cap();
        let m0 = clamp_exponent(c.floor() + 1.0, m_cap);
        Verdict::holds(m0, "|x| > eps^m0 across tail")
    }

    /// Same as [`is_strictly_nonzero`](Self::is_strictly_nonzero):
    /// invertibility and strict nonzeroness coincide in this ring.
    pub fn is_invertible(&self) -> Verdict {
        self.is_strictly_nonzero()
    }

    /// Strict positivity: strictly nonzero with every tail sample
    /// positive; the certificate is the least `m0` with
    /// `x_k >= eps_k^m0` on the tail (so constants report `m0 = 0`).
    pub fn is_strictly_positive(&self) -> Verdict {
        let nonpos: Vec<u32> = self
            .grid
            .tail_indices()
            .filter(|&k| !(self.sample(k) > 0.0))
            .collect();
        if !nonpos.is_empty() {
            return Verdict::fails(nonpos, "tail samples are zero or negative");
        }
        let nz = self.is_strictly_nonzero();
        if !nz.is_holds() {
            return nz.with_note("positive but not bounded away from zero");
        }
        let mut c = f64::NEG_INFINITY;
        for k in self.grid.tail_indices() {
            let v = -self.sample(k).log2() / k as f64;
            if v > c {
                c = v;
            }
        }
        let m0 = clamp_exponent(c.ceil(), self.grid.m_cap());
        Verdict::holds(m0, "x >= eps^m0 across tail")
    }

    pub fn is_strictly_negative(&self) -> Verdict {
        self.negate().is_strictly_positive()
    }

    /// Partial-order comparison `self <= rhs`, decided on the tail:
    /// holds when `rhs - self >= -eps^m_cap` everywhere, fails on
    /// persistent late violations, inconclusive on oscillation.
    ///
    /// Panics on grid mismatch (precondition).
    pub fn leq(&self, rhs: &GenNumber) -> Verdict {
        assert_eq!(self.grid, rhs.grid, "leq requires a shared grid");
        let d = self.zip(rhs, |a, b| b - a);
        let m_cap = self.grid.m_cap() as f64;
        let viols: Vec<u32> = self
            .grid
            .tail_indices()
            .filter(|&k| {
                let dk = d.sample(k);
                dk < 0.0 && log2_abs(dk) > -m_cap * k as f64
            })
            .collect();
        if viols.is_empty() {
            return Verdict::holds(self.grid.m_cap(), "difference >= -eps^m_cap across tail");
        }
        if viols.iter().any(|&k| k >= self.grid.late_tail_start()) {
            Verdict::fails(viols, "difference stays below -eps^m_cap late in the tail")
        } else {
            Verdict::inconclusive(viols, "comparison oscillates across the decision margin")
        }
    }

    /// Class equality: the difference is negligible.
    pub fn eq_class(&self, rhs: &GenNumber) -> Verdict {
        assert_eq!(self.grid, rhs.grid, "eq_class requires a shared grid");
        self.zip(rhs, |a, b| a - b).is_negligible()
    }
}

fn clamp_exponent(x: f64, m_cap: i32) -> i32 {
    let lo = -(m_cap as f64) - 1.0;
    let hi = m_cap as f64;
    x.max(lo).min(hi) as i32
}

/// Order fitting: least-squares slope of `log2|x_k|` against `log2 eps_k`
/// over the tail window, ignoring effective zeros, rounded toward the
/// smaller integer with a fixed margin.
fn estimate_order_of(grid: &EpsGrid, samples: &[f64]) -> OrderEstimate {
    let m_cap = grid.m_cap() as f64;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(grid.tail_len());
    let mut zeros = 0usize;
    for k in grid.tail_indices() {
        let y = log2_abs(samples[(k - 1) as usize]);
        if y.is_nan() || y <= -m_cap * k as f64 {
            zeros += 1;
        } else {
            pts.push((-(k as f64), y));
        }
    }
    if pts.is_empty() {
        return OrderEstimate::Negligible;
    }
    let n = pts.len() as f64;
    let t_mean = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut stt = 0.0;
    let mut sty = 0.0;
    for &(t, y) in &pts {
        stt += (t - t_mean) * (t - t_mean);
        sty += (t - t_mean) * (y - y_mean);
    }
    let slope = if stt > 0.0 {
        sty / stt
    } else {
        // single usable point: bound-style exponent
        -pts[0].1 / -pts[0].0
    };
    let exponent = ((slope + ORDER_ROUND_MARGIN).floor()).clamp(-200.0, 200.0) as i32;
    let intercept = y_mean - slope * t_mean;
    let max_resid = pts
        .iter()
        .map(|&(t, y)| (y - (intercept + slope * t)).abs())
        .fold(0.0f64, f64::max);
    let confident = zeros == 0 && pts.len() >= 3 && max_resid <= ORDER_RESIDUAL_LIMIT;
    OrderEstimate::Order {
        exponent,
        confident,
    }
}

macro_rules! impl_bin_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&GenNumber> for &GenNumber {
            type Output = GenNumber;
            fn $method(self, rhs: &GenNumber) -> GenNumber {
                self.$checked(rhs).expect("grid mismatch")
            }
        }
        impl std::ops::$trait<GenNumber> for GenNumber {
            type Output = GenNumber;
            fn $method(self, rhs: GenNumber) -> GenNumber {
                (&self).$checked(&rhs).expect("grid mismatch")
            }
        }
    };
}

impl_bin_op!(Add, add, checked_add);
impl_bin_op!(Sub, sub, checked_sub);
impl_bin_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &GenNumber {
    type Output = GenNumber;
    fn neg(self) -> GenNumber {
        self.negate()
    }
}

impl std::ops::Neg for GenNumber {
    type Output = GenNumber;
    fn neg(self) -> GenNumber {
        self.negate()
    }
}
