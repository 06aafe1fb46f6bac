//! Command-line front end: manifests in the net-expression grammar,
//! verdict reports in a versioned JSON schema, and canned demos.

pub mod demos;
pub mod manifest;
pub mod report;
pub mod runner;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("line {line}: {detail}")]
    Build { line: usize, detail: String },
    #[error("unknown name '{name}' referenced at line {line}")]
    UnknownName { name: String, line: usize },
    #[error("type mismatch in '{op}': argument '{name}' is a {got}, expected a {expected}")]
    TypeMismatch {
        op: String,
        expected: String,
        got: String,
        name: String,
    },
    #[error("task '{op}' at line {line} failed: {detail}")]
    Task {
        line: usize,
        op: String,
        detail: String,
    },
    #[error("unknown demo '{name}'")]
    UnknownDemo { name: String },
    #[error("demo failed: {0}")]
    Demo(String),
    #[error("{0}")]
    Setup(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
