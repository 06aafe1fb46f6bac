use gennum_core::gen_num::{EpsGrid, GenNumber, NumError, Verdict, VerdictStatus};
use serde::{Deserialize, Serialize};

/// Machine-readable run report. Nets are stored as
/// `{k, log2_abs, sign}` triples so that magnitudes far below the
/// double-precision underflow line survive serialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub grid: GridInfo,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridInfo {
    pub k_max: u32,
    pub tail_start: u32,
    pub m_cap: i32,
}

impl GridInfo {
    pub fn of(grid: EpsGrid) -> Self {
        GridInfo {
            k_max: grid.k_max(),
            tail_start: grid.tail_start(),
            m_cap: grid.m_cap(),
        }
    }

    pub fn to_grid(&self) -> Result<EpsGrid, NumError> {
        EpsGrid::new(self.k_max, self.tail_start, self.m_cap)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskReport {
    pub op: String,
    pub inputs: Vec<String>,
    /// One-line human conclusion.
    pub outcome: String,
    pub verdicts: Vec<VerdictJson>,
    pub nets: Vec<NetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i32>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<u32>,
    pub note: String,
}

impl VerdictJson {
    pub fn of(name: impl Into<String>, v: &Verdict) -> Self {
        VerdictJson {
            name: name.into(),
            status: match v.status() {
                VerdictStatus::Holds => "Holds".to_string(),
                VerdictStatus::Fails => "Fails".to_string(),
                VerdictStatus::Inconclusive => "Inconclusive".to_string(),
            },
            exponent: v.exponent(),
            witnesses: v.witnesses().to_vec(),
            note: v.note().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetJson {
    pub name: String,
    pub samples: Vec<SampleJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleJson {
    pub k: u32,
    /// `log2 |x_k|`; absent for an exact zero sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2_abs: Option<f64>,
    /// -1, 0 or 1.
    pub sign: i8,
}

impl NetJson {
    pub fn of(name: impl Into<String>, x: &GenNumber) -> Self {
        let grid = x.grid();
        let samples = grid
            .indices()
            .map(|k| {
                let v = x.sample(k);
                SampleJson {
                    k,
                    log2_abs: if v == 0.0 { None } else { Some(v.abs().log2()) },
                    sign: if v > 0.0 {
                        1
                    } else if v < 0.0 {
                        -1
                    } else {
                        0
                    },
                }
            })
            .collect();
        NetJson {
            name: name.into(),
            samples,
        }
    }

    /// Rebuilds the net from the stored triples.
    pub fn to_gen_number(&self, grid: EpsGrid) -> Result<GenNumber, NumError> {
        let mut samples = vec![0.0; grid.len()];
        for s in &self.samples {
            if s.k < 1 || s.k > grid.k_max() {
                return Err(NumError::InvalidGrid(format!(
                    "sample index {} out of range",
                    s.k
                )));
            }
            let mag = s.log2_abs.map(f64::exp2).unwrap_or(0.0);
            samples[(s.k - 1) as usize] = s.sign as f64 * mag;
        }
        GenNumber::from_samples(grid, samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn net_round_trip_preserves_verdicts() {
        let grid = EpsGrid::default();
        let nets = [
            GenNumber::make(grid, |e| e * e).unwrap(),
            GenNumber::make(grid, |e| (-1.0 / e).exp()).unwrap(),
            GenNumber::chi(grid, &gennum_core::gen_num::IndexSet::Even),
            GenNumber::make(grid, |e| -3.0 * e + 1.0).unwrap(),
        ];
        for x in nets {
            let json = NetJson::of("x", &x);
            let text = serde_json::to_string(&json).unwrap();
            let parsed: NetJson = serde_json::from_str(&text).unwrap();
            let y = parsed.to_gen_number(grid).unwrap();
            assert_eq!(x.is_negligible().status(), y.is_negligible().status());
            assert_eq!(x.is_invertible().status(), y.is_invertible().status());
            assert_eq!(
                x.is_strictly_positive().status(),
                y.is_strictly_positive().status()
            );
        }
    }

    #[test]
    fn zero_samples_serialize_without_magnitude() {
        let grid = EpsGrid::default();
        let x = GenNumber::chi(grid, &gennum_core::gen_num::IndexSet::Even);
        let json = NetJson::of("chi", &x);
        let odd = &json.samples[0];
        assert_eq!(odd.k, 1);
        assert_eq!(odd.sign, 0);
        assert!(odd.log2_abs.is_none());
        let even = &json.samples[1];
        assert_eq!(even.sign, 1);
        assert_eq!(even.log2_abs, Some(0.0));
    }
}
