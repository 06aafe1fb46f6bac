use crate::causal::{classify, decompose, BilinearForm, CausalError};
use crate::gen_linalg::{is_free, GenVector};
use crate::gen_num::{GenNumber, Verdict};

/// Evidence for the inverse Cauchy-Schwarz inequality on a pair of
/// time-like vectors: the two sides, their gap, the weak and strict
/// verdicts, freeness of the decomposition residual, and whether a
/// strictness failure is of zero-divisor type (gap neither strictly
/// positive nor negligible).
#[derive(Debug, Clone)]
pub struct CsReport {
    pub lhs: GenNumber,
    pub rhs: GenNumber,
    pub gap: GenNumber,
    pub inequality: Verdict,
    pub strict: Verdict,
    pub residual_free: Verdict,
    pub zero_divisor_like: bool,
}

/// `g(u,v)^2 >= g(u,u) g(v,v)` for time-like `u`, `v`; strict when the
/// residual of `v` against `u` is free.
pub fn inverse_cauchy_schwarz(
    g: &BilinearForm,
    u: &GenVector,
    v: &GenVector,
) -> Result<CsReport, CausalError> {
    let cu = classify(g, u)?;
    if !cu.is_timelike() {
        return Err(CausalError::NotTimeLike {
            which: "first argument",
        });
    }
    let cv = classify(g, v)?;
    if !cv.is_timelike() {
        return Err(CausalError::NotTimeLike {
            which: "second argument",
        });
    }
    let uv = g.apply(u, v)?;
    let lhs = &uv * &uv;
    let rhs = &g.apply(u, u)? * &g.apply(v, v)?;
    let gap = &lhs - &rhs;
    let zero = GenNumber::constant(g.grid(), 0.0);
    let inequality = zero.leq(&gap).with_note("gap >= 0");
    let strict = gap.is_strictly_positive().with_note("gap > 0");
    let (_, w) = decompose(g, u, v)?;
    let residual_free = is_free(&w).with_note("residual of v against u");
    let zero_divisor_like =
        inequality.is_holds() && strict.is_fails() && gap.is_negligible().is_fails();
    Ok(CsReport {
        lhs,
        rhs,
        gap,
        inequality,
        strict,
        residual_free,
        zero_divisor_like,
    })
}
