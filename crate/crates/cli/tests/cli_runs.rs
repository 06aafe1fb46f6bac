//! End-to-end manifest runs: parsing, execution, error reporting,
//! determinism and report round-trips.

use gennum_cli::manifest::{self, GridOverrides};
use gennum_cli::report::Report;
use gennum_cli::{demos, runner, CliError};
use gennum_core::gen_num::EpsGrid;

fn run_text(text: &str) -> Result<Report, CliError> {
    let m = manifest::parse(text, GridOverrides::default())?;
    runner::run(&m, false)
}

#[test]
fn classify_task_end_to_end() {
    let report = run_text(
        "mat g = [[-1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n\
         vec u = [1, 0, 0, 0]\n\
         task classify(g, u)\n",
    )
    .unwrap();
    assert_eq!(report.tasks.len(), 1);
    assert_eq!(report.tasks[0].outcome, "TimeLike");
}

#[test]
fn cs_scenario_end_to_end() {
    let report = run_text(
        "set kmax 24\n\
         mat g = [[-1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n\
         vec u = [1, 0, 0, 0]\n\
         vec v = [1, chi(even) * eps, 0, 0]\n\
         task inverse_cauchy_schwarz(g, u, v)\n",
    )
    .unwrap();
    let t = &report.tasks[0];
    let ineq = t.verdicts.iter().find(|v| v.name == "inequality").unwrap();
    let strict = t.verdicts.iter().find(|v| v.name == "strict").unwrap();
    assert_eq!(ineq.status, "Holds");
    assert_eq!(strict.status, "Fails");
    assert!(t.outcome.contains("zero-divisor-like"));
}

#[test]
fn division_by_zero_divisor_is_a_build_error() {
    let err = run_text("let bad = 1 / chi(even)\n").unwrap_err();
    match err {
        CliError::Build { line, detail } => {
            assert_eq!(line, 1);
            assert!(detail.contains("non-invertible"), "{detail}");
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let err = run_text("let a = eps\nlet b = eps +* 2\n").unwrap_err();
    match err {
        CliError::Parse { line, col, .. } => {
            assert_eq!(line, 2);
            assert!(col > 8, "column {col} should point into the expression");
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn unknown_names_are_rejected() {
    let err = run_text("let a = eps\ntask is_negligible(zzz)\n").unwrap_err();
    match err {
        CliError::UnknownName { name, line } => {
            assert_eq!(name, "zzz");
            assert_eq!(line, 2);
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn type_mismatches_are_rejected() {
    let err = run_text("let a = eps\ntask classify(a, a)\n").unwrap_err();
    assert!(matches!(err, CliError::TypeMismatch { .. }));
}

#[test]
fn non_lorentzian_classify_is_a_task_error() {
    let err = run_text(
        "mat g = [[1,0],[0,1]]\n\
         vec u = [1, 0]\n\
         task classify(g, u)\n",
    )
    .unwrap_err();
    match err {
        CliError::Task { op, detail, .. } => {
            assert_eq!(op, "classify");
            assert!(detail.contains("Lorentzian"), "{detail}");
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn field_tasks_run_from_manifests() {
    let report = run_text(
        "domain box = [[-1, 1], [-1, 1]]\n\
         metric g on box = [[-1 - x1*x1, 0], [0, 1]]\n\
         vfield xi on box = [1, 0]\n\
         task metric_index(g)\n\
         task classify_field(g, xi)\n",
    )
    .unwrap();
    assert!(report.tasks[0].outcome.contains("index 1"));
    assert!(report.tasks[1].outcome.contains("TimeLike"));
}

#[test]
fn grid_settings_are_honored_and_flags_win() {
    let text = "set kmax 16\nlet a = eps\ntask is_negligible(a)\n";
    let m = manifest::parse(text, GridOverrides::default()).unwrap();
    assert_eq!(m.grid.k_max(), 16);
    let flags = GridOverrides {
        k_max: Some(20),
        ..Default::default()
    };
    let m2 = manifest::parse(text, flags).unwrap();
    assert_eq!(m2.grid.k_max(), 20);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let text = "set seed 7\n\
                mat g = [[-1,0],[0,1]]\n\
                vec u = [1, 0]\n\
                let a = pow(eps, 3) + chi(odd)\n\
                domain box = [[-1, 1], [-1, 1]]\n\
                metric gf on box = [[-1, 0], [0, 1 + x1*x1]]\n\
                task is_invertible(a)\n\
                task classify(g, u)\n\
                task metric_index(gf)\n";
    let a = serde_json::to_string(&run_text(text).unwrap()).unwrap();
    let b = serde_json::to_string(&run_text(text).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn report_nets_reingest_to_identical_verdicts() {
    let text = "set kmax 24\n\
                mat g = [[-1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n\
                vec u = [1, 0, 0, 0]\n\
                vec v = [1, chi(even) * eps, 0, 0]\n\
                task inverse_cauchy_schwarz(g, u, v)\n";
    let report = run_text(text).unwrap();
    let grid = report.grid.to_grid().unwrap();
    let gap_json = report.tasks[0]
        .nets
        .iter()
        .find(|n| n.name == "gap")
        .unwrap();
    let gap = gap_json.to_gen_number(grid).unwrap();
    let zero = gennum_core::gen_num::GenNumber::constant(grid, 0.0);
    assert!(zero.leq(&gap).is_holds());
    assert!(gap.is_strictly_positive().is_fails());
    assert!(gap.is_negligible().is_fails());
}

#[test]
fn all_demos_run_on_the_default_grid() {
    for name in demos::DEMO_NAMES {
        let grid = if name == "csex" {
            EpsGrid::new(24, 12, 40).unwrap()
        } else {
            EpsGrid::default()
        };
        let (report, text) = demos::run_demo(name, grid, 42).unwrap();
        assert_eq!(report.tasks.len(), 1);
        assert!(!text.is_empty());
    }
}

#[test]
fn unknown_demo_is_rejected() {
    let err = demos::run_demo("nope", EpsGrid::default(), 1).unwrap_err();
    assert!(matches!(err, CliError::UnknownDemo { .. }));
}

#[test]
fn duplicate_names_are_rejected() {
    let err = run_text("let a = 1\nlet a = 2\n").unwrap_err();
    assert!(matches!(err, CliError::Setup(_)));
}

#[test]
fn riemannian_field_task_certifies_index_zero() {
    let report = run_text(
        "domain box = [[-1, 1], [-1, 1]]\n\
         metric g on box = [[-1, 0], [0, 1]]\n\
         vfield xi on box = [1, 0]\n\
         vfield eta on box = [1 + eps, eps]\n\
         task riemannian_field(g, xi, eta)\n",
    )
    .unwrap();
    assert!(report.tasks[0].outcome.contains("index 0"));
}

#[test]
fn shipped_tour_manifest_runs_clean() {
    let text = include_str!("../manifests/tour.gn");
    let report = run_text(text).unwrap();
    assert_eq!(report.grid.k_max, 24);
    assert_eq!(report.tasks.len(), 12);
    let by_op = |op: &str| {
        report
            .tasks
            .iter()
            .find(|t| t.op == op)
            .unwrap_or_else(|| panic!("missing task {op}"))
    };
    assert_eq!(by_op("estimate_order").outcome, "order 2");
    assert!(by_op("is_negligible").outcome.starts_with("Holds"));
    assert!(by_op("is_invertible").outcome.starts_with("Fails"));
    assert_eq!(by_op("classify").outcome, "TimeLike");
    assert!(by_op("inverse_cauchy_schwarz")
        .outcome
        .contains("zero-divisor-like"));
    assert!(by_op("pair_metric").outcome.contains("true"));
    assert!(by_op("metric_index").outcome.contains("index 1"));
    assert!(by_op("classify_field").outcome.contains("TimeLike"));
}

#[test]
fn eval_metric_task_reports_nets() {
    let report = run_text(
        "domain box = [[-1, 1], [-1, 1]]\n\
         metric g on box = [[-1 - x1*x1, 0], [0, 1]]\n\
         point p = [eps, 0]\n\
         task eval_metric(g, p)\n",
    )
    .unwrap();
    let t = &report.tasks[0];
    assert!(t.outcome.contains("nondegenerate"));
    let g00 = t.nets.iter().find(|n| n.name == "g[0][0]").unwrap();
    // at k = 1, eps = 1/2: g00 = -1.25
    let s = &g00.samples[0];
    assert_eq!(s.sign, -1);
    assert!((s.log2_abs.unwrap() - 1.25f64.log2()).abs() < 1e-12);
}
