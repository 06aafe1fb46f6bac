//! The net-expression grammar:
//!
//! ```text
//! expr := number | "eps" | expr ("+"|"-"|"*"|"/") expr | "-" expr
//!       | "pow" "(" expr "," integer ")" | "exp" "(" expr ")"
//!       | "chi" "(" set ")" | "(" expr ")"
//! set  := "even" | "odd" | "ap" "(" int "," int ")" | "pow2" | "{" int-list "}"
//! ```
//!
//! Field expressions may additionally use the coordinate symbols
//! `x1..xn`. Division requires an invertible divisor when an
//! expression is turned into a net; building a net from an expression
//! that divides by a zero divisor is rejected.

mod lexer;
mod parser;

pub use parser::{parse_expr, parse_expr_list, parse_expr_matrix};

use thiserror::Error;

use crate::gen_num::{EpsGrid, GenNumber, IndexSet, NumError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("coordinate symbols are only allowed in field expressions")]
    CoordsNotAllowed,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Abstract syntax of a net expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Eps,
    /// Coordinate symbol `x(i+1)`, 0-based index.
    Coord(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
    Chi(IndexSet),
}

impl Expr {
    /// Highest coordinate index used, if any.
    pub fn max_coord(&self) -> Option<usize> {
        match self {
            Expr::Coord(i) => Some(*i),
            Expr::Number(_) | Expr::Eps | Expr::Chi(_) => None,
            Expr::Neg(a) | Expr::Exp(a) | Expr::Pow(a, _) => a.max_coord(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                match (a.max_coord(), b.max_coord()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                }
            }
        }
    }

    pub fn uses_coords(&self) -> bool {
        self.max_coord().is_some()
    }

    /// Builds the net this expression denotes. Division (and negative
    /// powers) go through the invertibility gate; coordinate symbols
    /// are rejected here.
    pub fn to_gen_number(&self, grid: EpsGrid) -> Result<GenNumber, ExprError> {
        Ok(match self {
            Expr::Number(c) => GenNumber::constant(grid, *c),
            Expr::Eps => GenNumber::eps(grid),
            Expr::Coord(_) => return Err(ExprError::CoordsNotAllowed),
            Expr::Add(a, b) => a
                .to_gen_number(grid)?
                .checked_add(&b.to_gen_number(grid)?)?,
            Expr::Sub(a, b) => a
                .to_gen_number(grid)?
                .checked_sub(&b.to_gen_number(grid)?)?,
            Expr::Mul(a, b) => a
                .to_gen_number(grid)?
                .checked_mul(&b.to_gen_number(grid)?)?,
            Expr::Div(a, b) => a
                .to_gen_number(grid)?
                .checked_div(&b.to_gen_number(grid)?)?,
            Expr::Neg(a) => a.to_gen_number(grid)?.negate(),
            Expr::Pow(a, n) => a.to_gen_number(grid)?.pow_int(*n)?,
            Expr::Exp(a) => a.to_gen_number(grid)?.exp(),
            Expr::Chi(set) => GenNumber::chi(grid, set),
        })
    }

    /// Field evaluation at `(eps, x)`. Division here is plain IEEE
    /// division; field evaluators must stay total on their domain.
    pub fn eval_at(&self, grid: EpsGrid, eps: f64, coords: &[f64]) -> f64 {
        match self {
            Expr::Number(c) => *c,
            Expr::Eps => eps,
            Expr::Coord(i) => coords.get(*i).copied().unwrap_or(f64::NAN),
            Expr::Add(a, b) => a.eval_at(grid, eps, coords) + b.eval_at(grid, eps, coords),
            Expr::Sub(a, b) => a.eval_at(grid, eps, coords) - b.eval_at(grid, eps, coords),
            Expr::Mul(a, b) => a.eval_at(grid, eps, coords) * b.eval_at(grid, eps, coords),
            Expr::Div(a, b) => {
                let d = b.eval_at(grid, eps, coords);
                if d == 0.0 {
                    0.0
                } else {
                    a.eval_at(grid, eps, coords) / d
                }
            }
            Expr::Neg(a) => -a.eval_at(grid, eps, coords),
            Expr::Pow(a, n) => a.eval_at(grid, eps, coords).powi(*n),
            Expr::Exp(a) => a.eval_at(grid, eps, coords).exp(),
            Expr::Chi(set) => {
                if set.contains(grid.nearest_index(eps)) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}
