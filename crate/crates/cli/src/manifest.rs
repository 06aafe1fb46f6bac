use std::collections::HashMap;

use gennum_core::charts::{ChartDomain, GenPoint, MetricField, VectorField};
use gennum_core::expr::{parse_expr, parse_expr_list, parse_expr_matrix, Expr};
use gennum_core::gen_linalg::{GenMatrix, GenVector};
use gennum_core::gen_num::{EpsGrid, GenNumber};

use crate::CliError;

/// A named value in a manifest run.
#[derive(Debug, Clone)]
pub enum Value {
    Net(GenNumber),
    Vector(GenVector),
    Matrix(GenMatrix),
    Domain(ChartDomain),
    Metric(MetricField),
    Field(VectorField),
    Point(GenPoint),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Net(_) => "net",
            Value::Vector(_) => "vector",
            Value::Matrix(_) => "matrix",
            Value::Domain(_) => "domain",
            Value::Metric(_) => "metric",
            Value::Field(_) => "vfield",
            Value::Point(_) => "point",
        }
    }
}

/// A task invocation: operation name plus argument names.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub line: usize,
    pub op: String,
    pub args: Vec<String>,
}

/// Parsed and built manifest: grid, named definitions (in declaration
/// order) and the task list.
pub struct Manifest {
    pub grid: EpsGrid,
    pub seed: u64,
    pub names: Vec<String>,
    pub values: HashMap<String, Value>,
    pub tasks: Vec<Task>,
}

struct RawSet {
    line: usize,
    key: String,
    value: String,
}

enum RawDef {
    Net {
        name: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Vec {
        name: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Mat {
        name: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Domain {
        name: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Metric {
        name: String,
        dom: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Field {
        name: String,
        dom: String,
        src: String,
        line: usize,
        col0: usize,
    },
    Point {
        name: String,
        src: String,
        line: usize,
        col0: usize,
    },
}

/// Grid parameters a manifest may set; flags still win over these.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridOverrides {
    pub k_max: Option<u32>,
    pub tail_start: Option<u32>,
    pub m_cap: Option<i32>,
    pub seed: Option<u64>,
}

pub fn parse(text: &str, flags: GridOverrides) -> Result<Manifest, CliError> {
    let mut sets: Vec<RawSet> = Vec::new();
    let mut defs: Vec<RawDef> = Vec::new();
    let mut tasks: Vec<Task> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let without_comment = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = without_comment.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (keyword, rest) = split_word(trimmed);
        let rest = rest.trim();
        match keyword {
            "set" => {
                let (key, value) = split_word(rest);
                if value.trim().is_empty() {
                    return Err(parse_err(line_no, 1, "expected 'set <key> <value>'"));
                }
                sets.push(RawSet {
                    line: line_no,
                    key: key.to_string(),
                    value: value.trim().to_string(),
                });
            }
            "let" | "vec" | "mat" | "point" => {
                let (name, src, col0) = split_definition(without_comment, rest, line_no)?;
                defs.push(match keyword {
                    "let" => RawDef::Net {
                        name,
                        src,
                        line: line_no,
                        col0,
                    },
                    "vec" => RawDef::Vec {
                        name,
                        src,
                        line: line_no,
                        col0,
                    },
                    "mat" => RawDef::Mat {
                        name,
                        src,
                        line: line_no,
                        col0,
                    },
                    _ => RawDef::Point {
                        name,
                        src,
                        line: line_no,
                        col0,
                    },
                });
            }
            "domain" => {
                let (name, src, col0) = split_definition(without_comment, rest, line_no)?;
                defs.push(RawDef::Domain {
                    name,
                    src,
                    line: line_no,
                    col0,
                });
            }
            "metric" | "vfield" => {
                // <name> on <domain> = <src>
                let (name, after_name) = split_word(rest);
                let after_name = after_name.trim();
                let (on_kw, after_on) = split_word(after_name);
                if on_kw != "on" {
                    return Err(parse_err(line_no, 1, "expected '<name> on <domain> = ...'"));
                }
                let (dom, after_dom) = split_word(after_on.trim());
                let after_dom = after_dom.trim();
                let Some(src) = after_dom.strip_prefix('=') else {
                    return Err(parse_err(line_no, 1, "expected '=' after the domain name"));
                };
                let col0 = without_comment.find('=').map(|p| p + 1).unwrap_or(0);
                let def = if keyword == "metric" {
                    RawDef::Metric {
                        name: name.to_string(),
                        dom: dom.to_string(),
                        src: src.trim().to_string(),
                        line: line_no,
                        col0,
                    }
                } else {
                    RawDef::Field {
                        name: name.to_string(),
                        dom: dom.to_string(),
                        src: src.trim().to_string(),
                        line: line_no,
                        col0,
                    }
                };
                defs.push(def);
            }
            "task" => {
                tasks.push(parse_task(rest, line_no)?);
            }
            other => {
                return Err(parse_err(
                    line_no,
                    1,
                    format!("unknown directive '{other}' (expected set/let/vec/mat/domain/metric/vfield/point/task)"),
                ));
            }
        }
    }

    // grid parameters: manifest sets, then flag overrides
    let mut k_max: u32 = 32;
    let mut tail: Option<u32> = None;
    let mut m_cap: i32 = EpsGrid::DEFAULT_M_CAP;
    let mut seed: u64 = 42;
    for s in &sets {
        match s.key.as_str() {
            "kmax" => k_max = parse_num(&s.value, s.line)?,
            "tail" => tail = Some(parse_num(&s.value, s.line)?),
            "mcap" => m_cap = parse_num(&s.value, s.line)?,
            "seed" => seed = parse_num(&s.value, s.line)?,
            other => {
                return Err(parse_err(
                    s.line,
                    1,
                    format!("unknown setting '{other}' (expected kmax/tail/mcap/seed)"),
                ))
            }
        }
    }
    if let Some(v) = flags.k_max {
        k_max = v;
    }
    if let Some(v) = flags.tail_start {
        tail = Some(v);
    }
    if let Some(v) = flags.m_cap {
        m_cap = v;
    }
    if let Some(v) = flags.seed {
        seed = v;
    }
    if !(8..=64).contains(&k_max) {
        return Err(CliError::Setup(format!(
            "k_max must be in 8..=64, got {k_max}"
        )));
    }
    let grid = EpsGrid::new(k_max, tail.unwrap_or(k_max / 2), m_cap)
        .map_err(|e| CliError::Setup(e.to_string()))?;

    // build definitions in order
    let mut names = Vec::new();
    let mut values: HashMap<String, Value> = HashMap::new();
    for def in defs {
        let (name, value) = build_def(def, grid, &values)?;
        if values.contains_key(&name) {
            return Err(CliError::Setup(format!("name '{name}' is defined twice")));
        }
        names.push(name.clone());
        values.insert(name, value);
    }

    // validate task references early
    for t in &tasks {
        for a in &t.args {
            if !values.contains_key(a) {
                return Err(CliError::UnknownName {
                    name: a.clone(),
                    line: t.line,
                });
            }
        }
    }

    Ok(Manifest {
        grid,
        seed,
        names,
        values,
        tasks,
    })
}

fn split_word(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(pos) => (&s[..pos], &s[pos..]),
        None => (s, ""),
    }
}

fn split_definition(
    full_line: &str,
    rest: &str,
    line: usize,
) -> Result<(String, String, usize), CliError> {
    let (name, after) = split_word(rest);
    let after = after.trim_start();
    let Some(src) = after.strip_prefix('=') else {
        return Err(parse_err(line, 1, "expected '<name> = <expression>'"));
    };
    if name.is_empty() {
        return Err(parse_err(line, 1, "missing name"));
    }
    let col0 = full_line.find('=').map(|p| p + 1).unwrap_or(0);
    Ok((name.to_string(), src.trim().to_string(), col0))
}

fn parse_task(rest: &str, line: usize) -> Result<Task, CliError> {
    let rest = rest.trim();
    let Some(open) = rest.find('(') else {
        return Err(parse_err(line, 1, "expected 'task op(args...)'"));
    };
    if !rest.ends_with(')') {
        return Err(parse_err(line, rest.len(), "expected closing ')'"));
    }
    let op = rest[..open].trim().to_string();
    let inner = &rest[open + 1..rest.len() - 1];
    let args: Vec<String> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|a| a.trim().to_string()).collect()
    };
    if op.is_empty() || args.iter().any(|a| a.is_empty()) {
        return Err(parse_err(line, 1, "malformed task invocation"));
    }
    Ok(Task { line, op, args })
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, CliError> {
    s.parse::<T>()
        .map_err(|_| parse_err(line, 1, format!("malformed number '{s}'")))
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn relocate(e: gennum_core::expr::ExprError, line: usize, col0: usize) -> CliError {
    match e {
        gennum_core::expr::ExprError::Parse { col, msg } => CliError::Parse {
            line,
            col: col0 + col,
            msg,
        },
        other => CliError::Build {
            line,
            detail: other.to_string(),
        },
    }
}

fn require_scalar_exprs(exprs: &[Expr], line: usize) -> Result<(), CliError> {
    if exprs.iter().any(|e| e.uses_coords()) {
        return Err(CliError::Build {
            line,
            detail: "coordinate symbols are only allowed in metric/vfield definitions".into(),
        });
    }
    Ok(())
}

fn build_def(
    def: RawDef,
    grid: EpsGrid,
    values: &HashMap<String, Value>,
) -> Result<(String, Value), CliError> {
    match def {
        RawDef::Net {
            name,
            src,
            line,
            col0,
        } => {
            let expr = parse_expr(&src).map_err(|e| relocate(e, line, col0))?;
            require_scalar_exprs(std::slice::from_ref(&expr), line)?;
            let net = expr
                .to_gen_number(grid)
                .map_err(|e| relocate(e, line, col0))?
                .with_label(src);
            Ok((name, Value::Net(net)))
        }
        RawDef::Vec {
            name,
            src,
            line,
            col0,
        } => {
            let exprs = parse_expr_list(&src).map_err(|e| relocate(e, line, col0))?;
            require_scalar_exprs(&exprs, line)?;
            let entries = exprs
                .iter()
                .map(|e| e.to_gen_number(grid))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| relocate(e, line, col0))?;
            let v = GenVector::new(entries).map_err(|e| CliError::Build {
                line,
                detail: e.to_string(),
            })?;
            Ok((name, Value::Vector(v)))
        }
        RawDef::Mat {
            name,
            src,
            line,
            col0,
        } => {
            let rows = parse_expr_matrix(&src).map_err(|e| relocate(e, line, col0))?;
            if rows.len() != rows[0].len() {
                return Err(CliError::Build {
                    line,
                    detail: "matrices must be square".into(),
                });
            }
            for r in &rows {
                require_scalar_exprs(r, line)?;
            }
            let gen_rows = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.to_gen_number(grid))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| relocate(e, line, col0))?;
            let m = GenMatrix::from_rows(gen_rows).map_err(|e| CliError::Build {
                line,
                detail: e.to_string(),
            })?;
            Ok((name, Value::Matrix(m)))
        }
        RawDef::Domain {
            name,
            src,
            line,
            col0,
        } => {
            let rows = parse_expr_matrix(&src).map_err(|e| relocate(e, line, col0))?;
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for r in &rows {
                if r.len() != 2 {
                    return Err(CliError::Build {
                        line,
                        detail: "domains are given as [[lo, hi], ...] per coordinate".into(),
                    });
                }
                lo.push(const_value(&r[0], grid, line)?);
                hi.push(const_value(&r[1], grid, line)?);
            }
            let d = ChartDomain::new(name.clone(), lo, hi).map_err(|e| CliError::Build {
                line,
                detail: e.to_string(),
            })?;
            Ok((name, Value::Domain(d)))
        }
        RawDef::Metric {
            name,
            dom,
            src,
            line,
            col0,
        } => {
            let domain = lookup_domain(values, &dom, line)?;
            let rows = parse_expr_matrix(&src).map_err(|e| relocate(e, line, col0))?;
            let n = domain.dim();
            if rows.len() != n || rows[0].len() != n {
                return Err(CliError::Build {
                    line,
                    detail: format!("metric must be {n}x{n} on domain '{dom}'"),
                });
            }
            check_coord_range(&rows, n, line)?;
            let flat: Vec<Expr> = rows.into_iter().flatten().collect();
            let field = MetricField::new(domain, move |eps, x| {
                flat.iter().map(|e| e.eval_at(grid, eps, x)).collect()
            });
            Ok((name, Value::Metric(field)))
        }
        RawDef::Field {
            name,
            dom,
            src,
            line,
            col0,
        } => {
            let domain = lookup_domain(values, &dom, line)?;
            let exprs = parse_expr_list(&src).map_err(|e| relocate(e, line, col0))?;
            let n = domain.dim();
            if exprs.len() != n {
                return Err(CliError::Build {
                    line,
                    detail: format!("vector field must have {n} components on domain '{dom}'"),
                });
            }
            check_coord_range(std::slice::from_ref(&exprs), n, line)?;
            let field = VectorField::new(domain, move |eps, x| {
                exprs.iter().map(|e| e.eval_at(grid, eps, x)).collect()
            });
            Ok((name, Value::Field(field)))
        }
        RawDef::Point {
            name,
            src,
            line,
            col0,
        } => {
            let exprs = parse_expr_list(&src).map_err(|e| relocate(e, line, col0))?;
            require_scalar_exprs(&exprs, line)?;
            let nets = exprs
                .iter()
                .map(|e| e.to_gen_number(grid))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| relocate(e, line, col0))?;
            let dim = nets.len();
            let label = name.clone();
            let p = GenPoint::new(grid, dim, label, move |eps| {
                nets.iter().map(|n| n.value_at(eps)).collect()
            });
            Ok((name, Value::Point(p)))
        }
    }
}

fn check_coord_range(rows: &[Vec<Expr>], n: usize, line: usize) -> Result<(), CliError> {
    for r in rows {
        for e in r {
            if let Some(i) = e.max_coord() {
                if i >= n {
                    return Err(CliError::Build {
                        line,
                        detail: format!("coordinate x{} exceeds the domain dimension {n}", i + 1),
                    });
                }
            }
        }
    }
    Ok(())
}

fn const_value(e: &Expr, grid: EpsGrid, line: usize) -> Result<f64, CliError> {
    if e.uses_coords() {
        return Err(CliError::Build {
            line,
            detail: "domain bounds must be constants".into(),
        });
    }
    Ok(e.eval_at(grid, grid.eps_at(grid.k_max()), &[]))
}

fn lookup_domain(
    values: &HashMap<String, Value>,
    name: &str,
    line: usize,
) -> Result<ChartDomain, CliError> {
    match values.get(name) {
        Some(Value::Domain(d)) => Ok(d.clone()),
        Some(other) => Err(CliError::TypeMismatch {
            op: "metric/vfield".into(),
            expected: "domain".into(),
            got: other.kind().into(),
            name: name.to_string(),
        }),
        None => Err(CliError::UnknownName {
            name: name.to_string(),
            line,
        }),
    }
}
