use crate::causal::{BilinearForm, CausalError};
use crate::gen_linalg::{is_free, GenVector};
use crate::gen_num::{GenNumber, Verdict};

/// The four possible causal kinds of a vector under a Lorentzian form.
/// Vectors whose norm net is a zero divisor (sign alternating along the
/// grid) fit no class; that outcome is data, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalKind {
    TimeLike,
    Null,
    SpaceLike,
    Unclassifiable,
}

impl std::fmt::Display for CausalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CausalKind::TimeLike => "TimeLike",
            CausalKind::Null => "Null",
            CausalKind::SpaceLike => "SpaceLike",
            CausalKind::Unclassifiable => "Unclassifiable",
        };
        write!(f, "{s}")
    }
}

/// Classification outcome with the supporting verdicts and the norm
/// net `g(u, u)` it was decided on.
#[derive(Debug, Clone)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub norm: GenNumber,
    pub negative: Verdict,
    pub positive: Verdict,
    pub null_norm: Verdict,
    pub free: Option<Verdict>,
}

impl CausalClass {
    pub fn is_timelike(&self) -> bool {
        self.kind == CausalKind::TimeLike
    }
}

/// Causal classification of `u` under a Lorentzian `g`: time-like when
/// `g(u,u)` is strictly negative, space-like when strictly positive,
/// null when the norm is negligible and `u` is zero or free.
pub fn classify(g: &BilinearForm, u: &GenVector) -> Result<CausalClass, CausalError> {
    if !g.is_lorentzian() {
        return Err(CausalError::NotLorentzian);
    }
    let norm = g.apply(u, u)?;
    let negative = norm.is_strictly_negative();
    let positive = norm.is_strictly_positive();
    let null_norm = norm.is_negligible();
    if negative.is_holds() {
        return Ok(CausalClass {
            kind: CausalKind::TimeLike,
            norm,
            negative,
            positive,
            null_norm,
            free: None,
        });
    }
    if positive.is_holds() {
        return Ok(CausalClass {
            kind: CausalKind::SpaceLike,
            norm,
            negative,
            positive,
            null_norm,
            free: None,
        });
    }
    if null_norm.is_holds() {
        if u.is_negligible() {
            return Ok(CausalClass {
                kind: CausalKind::Null,
                norm,
                negative,
                positive,
                null_norm,
                free: None,
            });
        }
        let free = is_free(u);
        let kind = if free.is_holds() {
            CausalKind::Null
        } else {
            // norm zero but the vector is neither zero nor free
            CausalKind::Unclassifiable
        };
        return Ok(CausalClass {
            kind,
            norm,
            negative,
            positive,
            null_norm,
            free: Some(free),
        });
    }
    Ok(CausalClass {
        kind: CausalKind::Unclassifiable,
        norm,
        negative,
        positive,
        null_norm,
        free: None,
    })
}

/// Two time-like vectors share their time orientation when `g(u, v)`
/// is strictly negative.
pub fn same_orientation(
    g: &BilinearForm,
    u: &GenVector,
    v: &GenVector,
) -> Result<Verdict, CausalError> {
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
    Ok(g.apply(u, v)?
        .is_strictly_negative()
        .with_note("g(u,v) strictly negative"))
}
