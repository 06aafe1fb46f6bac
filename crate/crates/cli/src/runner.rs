use std::time::Instant;

use gennum_core::causal::{
    classify, classify_flux, decompose, dominant_energy_check, energy_tensor, flux_vector,
    inverse_cauchy_schwarz, lorentz_boost, orthogonal_complement_basis, riemannian_from_pair,
    same_orientation, BilinearForm,
};
use gennum_core::charts::{
    classify_field, eval_metric, metric_index_at_points, riemannian_from_timelike, sample_points,
    GenPoint, MetricField, VectorField,
};
use gennum_core::gen_linalg::{
    columns_matrix, extend_to_basis, gen_eigen, is_free, matrix_index, principal_minor_test,
    symmetrize, GenMatrix, GenVector,
};
use gennum_core::gen_num::GenNumber;

use crate::manifest::{Manifest, Task, Value};
use crate::report::{GridInfo, NetJson, Report, TaskReport, VerdictJson, SCHEMA_VERSION};
use crate::CliError;

/// Number of generalized points sampled for field-level tasks.
const FIELD_SAMPLE_COUNT: usize = 32;

/// Executes every task of a manifest in order. Failing or inconclusive
/// verdicts are data; only malformed invocations are errors.
pub fn run(manifest: &Manifest, timings: bool) -> Result<Report, CliError> {
    let mut tasks = Vec::with_capacity(manifest.tasks.len());
    for t in &manifest.tasks {
        let start = Instant::now();
        let mut report = run_task(manifest, t)?;
        if timings {
            report.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        tasks.push(report);
    }
    Ok(Report {
        schema: SCHEMA_VERSION,
        grid: GridInfo::of(manifest.grid),
        seed: manifest.seed,
        tasks,
    })
}

struct Args<'a> {
    manifest: &'a Manifest,
    task: &'a Task,
}

impl<'a> Args<'a> {
    fn expect_len(&self, n: usize) -> Result<(), CliError> {
        if self.task.args.len() != n {
            return Err(CliError::Build {
                line: self.task.line,
                detail: format!(
                    "operation '{}' expects {n} argument(s), got {}",
                    self.task.op,
                    self.task.args.len()
                ),
            });
        }
        Ok(())
    }

    fn value(&self, i: usize) -> &Value {
        &self.manifest.values[&self.task.args[i]]
    }

    fn mismatch(&self, i: usize, expected: &str) -> CliError {
        CliError::TypeMismatch {
            op: self.task.op.clone(),
            expected: expected.into(),
            got: self.value(i).kind().into(),
            name: self.task.args[i].clone(),
        }
    }

    fn net(&self, i: usize) -> Result<&GenNumber, CliError> {
        match self.value(i) {
            Value::Net(x) => Ok(x),
            _ => Err(self.mismatch(i, "net")),
        }
    }

    fn vector(&self, i: usize) -> Result<&GenVector, CliError> {
        match self.value(i) {
            Value::Vector(v) => Ok(v),
            _ => Err(self.mismatch(i, "vector")),
        }
    }

    fn matrix(&self, i: usize) -> Result<&GenMatrix, CliError> {
        match self.value(i) {
            Value::Matrix(m) => Ok(m),
            _ => Err(self.mismatch(i, "matrix")),
        }
    }

    fn metric(&self, i: usize) -> Result<&MetricField, CliError> {
        match self.value(i) {
            Value::Metric(m) => Ok(m),
            _ => Err(self.mismatch(i, "metric")),
        }
    }

    fn field(&self, i: usize) -> Result<&VectorField, CliError> {
        match self.value(i) {
            Value::Field(f) => Ok(f),
            _ => Err(self.mismatch(i, "vfield")),
        }
    }

    fn point(&self, i: usize) -> Result<&GenPoint, CliError> {
        match self.value(i) {
            Value::Point(p) => Ok(p),
            _ => Err(self.mismatch(i, "point")),
        }
    }

    fn lorentzian(&self, i: usize) -> Result<BilinearForm, CliError> {
        let m = self.matrix(i)?;
        BilinearForm::lorentzian(m).map_err(|e| self.op_err(e))
    }

    fn op_err(&self, e: impl std::fmt::Display) -> CliError {
        CliError::Task {
            line: self.task.line,
            op: self.task.op.clone(),
            detail: e.to_string(),
        }
    }
}

fn run_task(manifest: &Manifest, task: &Task) -> Result<TaskReport, CliError> {
    let args = Args { manifest, task };
    let mut verdicts: Vec<VerdictJson> = Vec::new();
    let mut nets: Vec<NetJson> = Vec::new();
    let outcome: String;

    match task.op.as_str() {
        "estimate_order" => {
            args.expect_len(1)?;
            let x = args.net(0)?;
            outcome = order_label(x);
            nets.push(NetJson::of(&task.args[0], x));
        }
        "is_negligible" => {
            args.expect_len(1)?;
            let v = args.net(0)?.is_negligible();
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("is_negligible", &v));
        }
        "is_invertible" | "is_strictly_nonzero" => {
            args.expect_len(1)?;
            let v = args.net(0)?.is_strictly_nonzero();
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("is_strictly_nonzero", &v));
        }
        "is_strictly_positive" => {
            args.expect_len(1)?;
            let v = args.net(0)?.is_strictly_positive();
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("is_strictly_positive", &v));
        }
        "leq" => {
            args.expect_len(2)?;
            let x = args.net(0)?;
            let y = args.net(1)?;
            if x.grid() != y.grid() {
                return Err(args.op_err("operands live on different grids"));
            }
            let v = x.leq(y);
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("leq", &v));
        }
        "eq" => {
            args.expect_len(2)?;
            let v = args.net(0)?.eq_class(args.net(1)?);
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("eq_class", &v));
        }
        "det" => {
            args.expect_len(1)?;
            let d = args.matrix(0)?.det();
            let inv = d.is_invertible();
            outcome = format!("det computed; invertibility {inv}");
            verdicts.push(VerdictJson::of("det_invertible", &inv));
            nets.push(NetJson::of("det", &d));
        }
        "nondegenerate" => {
            args.expect_len(1)?;
            let v = args.matrix(0)?.is_nondegenerate();
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("nondegenerate", &v));
        }
        "symmetrize" => {
            args.expect_len(1)?;
            let s = symmetrize(args.matrix(0)?).map_err(|e| args.op_err(e))?;
            outcome = "symmetric representative computed".into();
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    nets.push(NetJson::of(format!("s[{i}][{j}]"), s.entry(i, j)));
                }
            }
        }
        "eigen" => {
            args.expect_len(1)?;
            let e = gen_eigen(args.matrix(0)?).map_err(|e| args.op_err(e))?;
            let res = e.residual().is_negligible();
            outcome = format!(
                "{} eigenvalue nets; residual {}",
                e.eigenvalues().len(),
                res
            );
            verdicts.push(VerdictJson::of("residual_negligible", &res));
            for (i, l) in e.eigenvalues().iter().enumerate() {
                nets.push(NetJson::of(format!("lambda{}", i + 1), l));
            }
        }
        "matrix_index" => {
            args.expect_len(1)?;
            let idx = matrix_index(args.matrix(0)?).map_err(|e| args.op_err(e))?;
            outcome = match (idx.nu_plus(), idx.nu_minus()) {
                (Some(p), Some(m)) => format!("nu_plus={p}, nu_minus={m}"),
                _ => "index undefined".to_string(),
            };
            verdicts.push(VerdictJson::of("index_defined", idx.verdict()));
        }
        "principal_minors" => {
            args.expect_len(1)?;
            let v = principal_minor_test(args.matrix(0)?).map_err(|e| args.op_err(e))?;
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("principal_minors_positive", &v));
        }
        "is_free" => {
            args.expect_len(1)?;
            let v = is_free(args.vector(0)?);
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("is_free", &v));
        }
        "extend_to_basis" => {
            args.expect_len(1)?;
            let basis = extend_to_basis(args.vector(0)?).map_err(|e| args.op_err(e))?;
            let det = columns_matrix(&basis).map_err(|e| args.op_err(e))?.det();
            let v = det.is_invertible();
            outcome = format!(
                "basis of {} vectors; coordinate determinant {v}",
                basis.len()
            );
            verdicts.push(VerdictJson::of("basis_nondegenerate", &v));
            nets.push(NetJson::of("basis_det", &det));
        }
        "classify" => {
            args.expect_len(2)?;
            let form = args.lorentzian(0)?;
            let c = classify(&form, args.vector(1)?).map_err(|e| args.op_err(e))?;
            outcome = c.kind.to_string();
            verdicts.push(VerdictJson::of("strictly_negative", &c.negative));
            verdicts.push(VerdictJson::of("strictly_positive", &c.positive));
            verdicts.push(VerdictJson::of("norm_negligible", &c.null_norm));
            if let Some(f) = &c.free {
                verdicts.push(VerdictJson::of("free", f));
            }
            nets.push(NetJson::of("g(u,u)", &c.norm));
        }
        "same_orientation" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let v = same_orientation(&form, args.vector(1)?, args.vector(2)?)
                .map_err(|e| args.op_err(e))?;
            outcome = v.to_string();
            verdicts.push(VerdictJson::of("same_orientation", &v));
        }
        "inverse_cauchy_schwarz" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let r = inverse_cauchy_schwarz(&form, args.vector(1)?, args.vector(2)?)
                .map_err(|e| args.op_err(e))?;
            outcome = format!(
                "inequality {}; strict {}{}",
                r.inequality,
                r.strict,
                if r.zero_divisor_like {
                    "; gap is zero-divisor-like"
                } else {
                    ""
                }
            );
            verdicts.push(VerdictJson::of("inequality", &r.inequality));
            verdicts.push(VerdictJson::of("strict", &r.strict));
            verdicts.push(VerdictJson::of("residual_free", &r.residual_free));
            nets.push(NetJson::of("lhs", &r.lhs));
            nets.push(NetJson::of("rhs", &r.rhs));
            nets.push(NetJson::of("gap", &r.gap));
        }
        "decompose" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let (a, w) =
                decompose(&form, args.vector(1)?, args.vector(2)?).map_err(|e| args.op_err(e))?;
            let ortho = form
                .apply(args.vector(1)?, &w)
                .map_err(|e| args.op_err(e))?
                .is_negligible();
            outcome = format!("split computed; g(u,w) {ortho}");
            verdicts.push(VerdictJson::of("residual_orthogonal", &ortho));
            nets.push(NetJson::of("a", &a));
            for (i, e) in w.entries().iter().enumerate() {
                nets.push(NetJson::of(format!("w[{i}]"), e));
            }
        }
        "complement" => {
            args.expect_len(2)?;
            let form = args.lorentzian(0)?;
            let c =
                orthogonal_complement_basis(&form, args.vector(1)?).map_err(|e| args.op_err(e))?;
            let pd = matrix_index(&c.gram).map_err(|e| args.op_err(e))?;
            outcome = format!(
                "{} complement vectors; Gram positive definite: {}",
                c.vectors.len(),
                pd.is_positive_definite()
            );
            verdicts.push(VerdictJson::of("gram_index", pd.verdict()));
        }
        "boost" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let l = lorentz_boost(&form, args.vector(1)?, args.vector(2)?)
                .map_err(|e| args.op_err(e))?;
            let mapped = l.mul_vec(args.vector(1)?).map_err(|e| args.op_err(e))?;
            let defect = mapped.sub(args.vector(2)?).map_err(|e| args.op_err(e))?;
            let all_negl = defect
                .entries()
                .iter()
                .all(|x| x.is_negligible_with_floor(1e-10).is_holds());
            outcome = format!("boost computed; maps first to second: {all_negl}");
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    nets.push(NetJson::of(format!("L[{i}][{j}]"), l.entry(i, j)));
                }
            }
        }
        "pair_metric" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let h = riemannian_from_pair(&form, args.vector(1)?, args.vector(2)?)
                .map_err(|e| args.op_err(e))?;
            let idx = matrix_index(&h).map_err(|e| args.op_err(e))?;
            outcome = format!("positive definite: {}", idx.is_positive_definite());
            verdicts.push(VerdictJson::of("pair_metric_index", idx.verdict()));
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    nets.push(NetJson::of(format!("h[{i}][{j}]"), h.entry(i, j)));
                }
            }
        }
        "energy_flux" => {
            args.expect_len(3)?;
            let form = args.lorentzian(0)?;
            let theta = args.vector(1)?;
            let xi = args.vector(2)?;
            let e = energy_tensor(&form, theta).map_err(|e| args.op_err(e))?;
            let dec = dominant_energy_check(&form, &e, xi, xi);
            let flux = flux_vector(&form, &e, xi).map_err(|e| args.op_err(e))?;
            let c = classify_flux(&form, &e, xi).map_err(|e| args.op_err(e))?;
            outcome = format!("flux is {}", c.kind);
            match dec {
                Ok(v) => verdicts.push(VerdictJson::of("dominant_energy", &v)),
                Err(err) => outcome_note(&mut verdicts, "dominant_energy_skipped", err),
            }
            nets.push(NetJson::of("flux_norm", &c.norm));
            for (i, x) in flux.entries().iter().enumerate() {
                nets.push(NetJson::of(format!("flux[{i}]"), x));
            }
        }
        "metric_index" => {
            args.expect_len(1)?;
            let gf = args.metric(0)?;
            let points = sample_points(
                gf.domain(),
                manifest.grid,
                FIELD_SAMPLE_COUNT,
                manifest.seed,
            );
            let r = metric_index_at_points(gf, &points).map_err(|e| args.op_err(e))?;
            outcome = match r.index {
                Some(j) => format!("index {j} across {} points", points.len()),
                None => "index undefined across the sample family".to_string(),
            };
            verdicts.push(VerdictJson::of("point_index", &r.verdict));
        }
        "classify_field" => {
            args.expect_len(2)?;
            let gf = args.metric(0)?;
            let vf = args.field(1)?;
            let points = sample_points(
                gf.domain(),
                manifest.grid,
                FIELD_SAMPLE_COUNT,
                manifest.seed,
            );
            let c = classify_field(gf, vf, &points).map_err(|e| args.op_err(e))?;
            outcome = match c.aggregate {
                Some(kind) => format!("{kind} at all {} points", points.len()),
                None => "classification varies across the sample family".to_string(),
            };
            verdicts.push(VerdictJson::of("field_class", &c.verdict));
        }
        "riemannian_field" => {
            args.expect_len(3)?;
            let gf = args.metric(0)?;
            let xi = args.field(1)?;
            let eta = args.field(2)?;
            let points = sample_points(
                gf.domain(),
                manifest.grid,
                FIELD_SAMPLE_COUNT,
                manifest.seed,
            );
            let (_, r) =
                riemannian_from_timelike(gf, xi, eta, &points).map_err(|e| args.op_err(e))?;
            outcome = match r.index {
                Some(j) => format!("constructed field has index {j}"),
                None => "constructed field has undefined index".to_string(),
            };
            verdicts.push(VerdictJson::of("riemannian_index", &r.verdict));
        }
        "eval_metric" => {
            args.expect_len(2)?;
            let gf = args.metric(0)?;
            let p = args.point(1)?;
            let m = eval_metric(gf, p).map_err(|e| args.op_err(e))?;
            let nd = m.is_nondegenerate();
            outcome = format!("point value computed; nondegenerate {nd}");
            verdicts.push(VerdictJson::of("nondegenerate", &nd));
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    nets.push(NetJson::of(format!("g[{i}][{j}]"), m.entry(i, j)));
                }
            }
        }
        other => {
            return Err(CliError::Task {
                line: task.line,
                op: other.to_string(),
                detail: "unknown operation".into(),
            });
        }
    }

    Ok(TaskReport {
        op: task.op.clone(),
        inputs: task.args.clone(),
        outcome,
        verdicts,
        nets,
        runtime_ms: None,
    })
}

fn outcome_note(verdicts: &mut Vec<VerdictJson>, name: &str, err: impl std::fmt::Display) {
    verdicts.push(VerdictJson {
        name: name.to_string(),
        status: "Skipped".to_string(),
        exponent: None,
        witnesses: Vec::new(),
        note: err.to_string(),
    });
}

fn order_label(x: &GenNumber) -> String {
    match x.estimate_order() {
        gennum_core::gen_num::OrderEstimate::Negligible => "negligible".to_string(),
        gennum_core::gen_num::OrderEstimate::Order {
            exponent,
            confident,
        } => {
            if confident {
                format!("order {exponent}")
            } else {
                format!("order {exponent} (low confidence)")
            }
        }
    }
}
