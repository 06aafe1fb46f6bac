use crate::causal::{classify, BilinearForm, CausalClass, CausalKind};
use crate::charts::{ChartDomain, ChartError, GenPoint, MetricField, ScalarField, VectorField};
use crate::gen_linalg::dense::SMat;
use crate::gen_linalg::{matrix_index, GenMatrix, GenVector, MatrixIndex};
use crate::gen_num::{EpsGrid, GenNumber, Verdict};
use crate::rng::SplitMix64;

/// Point value of a metric field: the generalized coefficient matrix
/// `g_eps(x_eps)`, symmetric by construction.
pub fn eval_metric(gf: &MetricField, p: &GenPoint) -> Result<GenMatrix, ChartError> {
    if p.dim() != gf.dim() {
        return Err(ChartError::DimensionMismatch(format!(
            "point dim {} vs field dim {}",
            p.dim(),
            gf.dim()
        )));
    }
    if !p.supported_in(gf.domain()) {
        return Err(ChartError::PointOutsideDomain {
            point: p.label().to_string(),
        });
    }
    let n = gf.dim();
    let gf = gf.clone();
    let p = p.clone();
    Ok(GenMatrix::from_eps_fn(p.grid(), n, move |eps| {
        let x = p.eval(eps);
        SMat {
            n,
            a: gf.eval(eps, &x),
        }
    }))
}

/// Point value of a vector field.
pub fn eval_vector(vf: &VectorField, p: &GenPoint) -> Result<GenVector, ChartError> {
    if p.dim() != vf.dim() {
        return Err(ChartError::DimensionMismatch(format!(
            "point dim {} vs field dim {}",
            p.dim(),
            vf.dim()
        )));
    }
    if !p.supported_in(vf.domain()) {
        return Err(ChartError::PointOutsideDomain {
            point: p.label().to_string(),
        });
    }
    let n = vf.dim();
    let vf = vf.clone();
    let p = p.clone();
    Ok(GenVector::from_eps_fn(p.grid(), n, move |eps| {
        vf.eval(eps, &p.eval(eps))
    }))
}

/// Point value of a scalar field, as a generalized number.
pub fn eval_scalar(sf: &ScalarField, p: &GenPoint) -> Result<GenNumber, ChartError> {
    if p.dim() != sf.domain().dim() {
        return Err(ChartError::DimensionMismatch(format!(
            "point dim {} vs field dim {}",
            p.dim(),
            sf.domain().dim()
        )));
    }
    if !p.supported_in(sf.domain()) {
        return Err(ChartError::PointOutsideDomain {
            point: p.label().to_string(),
        });
    }
    let sf = sf.clone();
    let p = p.clone();
    Ok(GenNumber::from_fn(p.grid(), move |eps| {
        sf.eval(eps, &p.eval(eps))
    }))
}

/// Point-value index data of a metric field over a family of
/// generalized points.
#[derive(Debug, Clone)]
pub struct PointIndexReport {
    pub per_point: Vec<MatrixIndex>,
    /// The common index when the verdict holds.
    pub index: Option<usize>,
    pub verdict: Verdict,
}

/// Computes the signature index at every sampled point; the field-level
/// index is certified only when all point values agree. A point where
/// some eigenvalue net classifies neither way makes the verdict fail
/// with that point as witness.
pub fn metric_index_at_points(
    gf: &MetricField,
    points: &[GenPoint],
) -> Result<PointIndexReport, ChartError> {
    if points.is_empty() {
        return Err(ChartError::EmptyFamily);
    }
    let mut per_point = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let m = eval_metric(gf, p)?;
        if !m.is_nondegenerate().is_holds() {
            return Err(ChartError::DegenerateAtPoint { point: i });
        }
        let idx = matrix_index(&m).map_err(|e| match e {
            crate::gen_linalg::LinalgError::Degenerate => {
                ChartError::DegenerateAtPoint { point: i }
            }
            other => ChartError::Linalg(other),
        })?;
        per_point.push(idx);
    }
    let mut certificate = 0i32;
    let mut common: Option<usize> = None;
    let mut witnesses: Vec<u32> = Vec::new();
    for (i, idx) in per_point.iter().enumerate() {
        match idx.index() {
            Some(j) => {
                certificate = certificate.max(idx.verdict().exponent().unwrap_or(0));
                match common {
                    None => common = Some(j),
                    Some(c) if c != j => witnesses.push(i as u32),
                    _ => {}
                }
            }
            None => witnesses.push(i as u32),
        }
    }
    let verdict = if witnesses.is_empty() {
        Verdict::holds(
            certificate,
            format!(
                "index {} at all {} sampled points",
                common.unwrap(),
                points.len()
            ),
        )
    } else {
        Verdict::fails(
            witnesses,
            "witness entries are point indices with undefined or deviating index",
        )
    };
    let index = if verdict.is_holds() { common } else { None };
    Ok(PointIndexReport {
        per_point,
        index,
        verdict,
    })
}

/// Point-wise causal classification of a vector field under a
/// Lorentzian metric field.
#[derive(Debug, Clone)]
pub struct FieldClassification {
    pub per_point: Vec<CausalClass>,
    /// The uniform kind, when every sampled point agrees.
    pub aggregate: Option<CausalKind>,
    pub verdict: Verdict,
}

/// Classifies the field at every sampled point; the aggregate kind is
/// certified only when all points agree (sampled evidence for the
/// field-level causality statement).
pub fn classify_field(
    gf: &MetricField,
    vf: &VectorField,
    points: &[GenPoint],
) -> Result<FieldClassification, ChartError> {
    let index_report = metric_index_at_points(gf, points)?;
    if index_report.index != Some(1) {
        return Err(ChartError::NotLorentzian);
    }
    let mut per_point = Vec::with_capacity(points.len());
    for p in points {
        let gm = eval_metric(gf, p)?;
        let form = BilinearForm::lorentzian(&gm)?;
        let u = eval_vector(vf, p)?;
        per_point.push(classify(&form, &u)?);
    }
    let first = per_point[0].kind;
    let witnesses: Vec<u32> = per_point
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind != first || c.kind == CausalKind::Unclassifiable)
        .map(|(i, _)| i as u32)
        .collect();
    let (aggregate, verdict) = if witnesses.is_empty() {
        (
            Some(first),
            Verdict::holds(0, format!("{first} at all {} sampled points", points.len())),
        )
    } else {
        (
            None,
            Verdict::fails(
                witnesses,
                "witness entries are point indices with deviating class",
            ),
        )
    };
    Ok(FieldClassification {
        per_point,
        aggregate,
        verdict,
    })
}

/// Builds the Riemannian metric field from two time-like, same-oriented
/// vector fields: `h_ab = xi_(a eta_b) - (1/2) g(xi, eta) g_ab`, and
/// certifies index 0 over the sample family.
pub fn riemannian_from_timelike(
    gf: &MetricField,
    xi: &VectorField,
    eta: &VectorField,
    points: &[GenPoint],
) -> Result<(MetricField, PointIndexReport), ChartError> {
    for (field, name) in [(xi, "first"), (eta, "second")] {
        let c = classify_field(gf, field, points)?;
        if c.aggregate != Some(CausalKind::TimeLike) {
            return Err(ChartError::OrientationMismatch {
                detail: format!("{name} field is not uniformly time-like"),
            });
        }
    }
    // same orientation at every sampled point
    for (i, p) in points.iter().enumerate() {
        let gm = eval_metric(gf, p)?;
        let form = BilinearForm::lorentzian(&gm)?;
        let xv = eval_vector(xi, p)?;
        let ev = eval_vector(eta, p)?;
        let orient = crate::causal::same_orientation(&form, &xv, &ev)?;
        if !orient.is_holds() {
            return Err(ChartError::OrientationMismatch {
                detail: format!("orientation differs at sampled point {i}"),
            });
        }
    }
    let n = gf.dim();
    let gf_c = gf.clone();
    let xi_c = xi.clone();
    let eta_c = eta.clone();
    let h = MetricField::new(gf.domain().clone(), move |eps, x| {
        let g = gf_c.eval(eps, x);
        let xv = xi_c.eval(eps, x);
        let ev = eta_c.eval(eps, x);
        let lower = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|a| (0..n).map(|b| g[a * n + b] * v[b]).sum())
                .collect()
        };
        let x_low = lower(&xv);
        let e_low = lower(&ev);
        let ip: f64 = xv.iter().zip(e_low.iter()).map(|(a, b)| a * b).sum();
        let mut out = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] =
                    0.5 * (x_low[a] * e_low[b] + x_low[b] * e_low[a]) - 0.5 * ip * g[a * n + b];
            }
        }
        out
    });
    let report = metric_index_at_points(&h, points)?;
    Ok((h, report))
}

/// Default sample family over a domain: standard interior points,
/// points drifting with the smoothing parameter, and parity-alternating
/// points. Deterministic for a fixed seed.
pub fn sample_points(
    domain: &ChartDomain,
    grid: EpsGrid,
    count: usize,
    seed: u64,
) -> Vec<GenPoint> {
    let mut rng = SplitMix64::new(seed);
    let dim = domain.dim();
    let interior = |rng: &mut SplitMix64| -> Vec<f64> {
        let t: Vec<f64> = (0..dim).map(|_| rng.range(0.15, 0.85)).collect();
        domain.at_fraction(&t)
    };
    let mut points = Vec::with_capacity(count);
    let n_standard = count / 2;
    let n_drifting = count / 4;
    while points.len() < n_standard {
        points.push(GenPoint::standard(grid, &interior(&mut rng)));
    }
    while points.len() < n_standard + n_drifting {
        let x = interior(&mut rng);
        let v: Vec<f64> = (0..dim).map(|_| rng.range(-0.1, 0.1)).collect();
        points.push(GenPoint::drifting(grid, &x, &v));
    }
    while points.len() < count {
        let a = interior(&mut rng);
        let b = interior(&mut rng);
        points.push(GenPoint::parity_alternating(grid, &a, &b));
    }
    points
}
