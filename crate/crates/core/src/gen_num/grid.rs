use crate::gen_num::NumError;

/// Dyadic sampling grid for asymptotic nets: `eps_at(k) = 2^(-k)` for
/// `k = 1..=k_max`.
///
/// All asymptotic decisions are made on the tail window
/// `[tail_start, k_max]`; `m_cap` is the exponent cap separating
/// "moderate" from "too wild" and "ordinary" from "negligible".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsGrid {
    k_max: u32,
    tail_start: u32,
    m_cap: i32,
}

impl EpsGrid {
    pub const DEFAULT_K_MAX: u32 = 32;
    pub const DEFAULT_M_CAP: i32 = 40;

    /// Grid with `k_max` samples, tail window starting at `tail_start`
    /// and exponent cap `m_cap`.
    pub fn new(k_max: u32, tail_start: u32, m_cap: i32) -> Result<Self, NumError> {
        if !(4..=64).contains(&k_max) {
            return Err(NumError::InvalidGrid(format!(
                "k_max must be in 4..=64, got {k_max}"
            )));
        }
        if tail_start < 1 || tail_start >= k_max {
            return Err(NumError::InvalidGrid(format!(
                "tail_start must satisfy 1 <= tail_start < k_max, got {tail_start}"
            )));
        }
        if m_cap < 1 {
            return Err(NumError::InvalidGrid(format!(
                "m_cap must be positive, got {m_cap}"
            )));
        }
        Ok(EpsGrid {
            k_max,
            tail_start,
            m_cap,
        })
    }

    /// Grid with the conventional tail window `[k_max/2, k_max]`.
    pub fn with_k_max(k_max: u32) -> Result<Self, NumError> {
        Self::new(k_max, k_max / 2, Self::DEFAULT_M_CAP)
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn tail_start(&self) -> u32 {
        self.tail_start
    }

    pub fn m_cap(&self) -> i32 {
        self.m_cap
    }

    /// The smoothing parameter at index `k` (1-based): exactly `2^(-k)`.
    pub fn eps_at(&self, k: u32) -> f64 {
        debug_assert!(k >= 1 && k <= self.k_max);
        f64::exp2(-(k as f64))
    }

    /// `log2` of the smoothing parameter at index `k`: exactly `-k`.
    pub fn log2_eps_at(&self, k: u32) -> f64 {
        -(k as f64)
    }

    /// All grid indices, `1..=k_max`.
    pub fn indices(&self) -> impl Iterator<Item = u32> {
        1..=self.k_max
    }

    /// Tail-window indices, `tail_start..=k_max`.
    pub fn tail_indices(&self) -> impl Iterator<Item = u32> {
        self.tail_start..=self.k_max
    }

    pub fn len(&self) -> usize {
        self.k_max as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tail_len(&self) -> usize {
        (self.k_max - self.tail_start + 1) as usize
    }

    /// Index of the nearest grid point for an arbitrary `eps` in (0, 1].
    /// Grid points themselves map back exactly.
    pub fn nearest_index(&self, eps: f64) -> u32 {
        if !(eps > 0.0) {
            return self.k_max;
        }
        let k = (-eps.log2()).round();
        (k.max(1.0) as u32).min(self.k_max)
    }

    /// The grid index of `eps` when it is a grid point bit-exactly.
    /// Slice-wise derived quantities use this to read cached samples
    /// instead of re-walking evaluator graphs.
    pub fn index_of_exact(&self, eps: f64) -> Option<u32> {
        let k = self.nearest_index(eps);
        if eps.to_bits() == self.eps_at(k).to_bits() {
            Some(k)
        } else {
            None
        }
    }

    /// First index of the last quarter of the tail window. A violation at
    /// or beyond this index counts as persistent evidence.
    pub(crate) fn late_tail_start(&self) -> u32 {
        let span = self.k_max - self.tail_start;
        self.tail_start + span - span / 4
    }
}

impl Default for EpsGrid {
    fn default() -> Self {
        EpsGrid {
            k_max: Self::DEFAULT_K_MAX,
            tail_start: Self::DEFAULT_K_MAX / 2,
            m_cap: Self::DEFAULT_M_CAP,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_values_are_exact_powers_of_two() {
        let g = EpsGrid::default();
        assert_eq!(g.eps_at(1), 0.5);
        assert_eq!(g.eps_at(10), 1.0 / 1024.0);
        assert_eq!(g.eps_at(32), f64::exp2(-32.0));
    }

    #[test]
    fn eps_is_strictly_decreasing_and_positive() {
        let g = EpsGrid::default();
        let mut prev = f64::INFINITY;
        for k in g.indices() {
            let e = g.eps_at(k);
            assert!(e > 0.0);
            assert!(e < prev);
            prev = e;
        }
    }

    #[test]
    fn nearest_index_round_trips_grid_points() {
        let g = EpsGrid::default();
        for k in g.indices() {
            assert_eq!(g.nearest_index(g.eps_at(k)), k);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(EpsGrid::new(2, 1, 40).is_err());
        assert!(EpsGrid::new(32, 32, 40).is_err());
        assert!(EpsGrid::new(32, 0, 40).is_err());
        assert!(EpsGrid::new(32, 16, 0).is_err());
    }

    #[test]
    fn default_tail_window() {
        let g = EpsGrid::default();
        assert_eq!(g.tail_start(), 16);
        assert_eq!(g.tail_len(), 17);
        assert!(g.late_tail_start() > g.tail_start());
        assert!(g.late_tail_start() <= g.k_max());
    }
}
