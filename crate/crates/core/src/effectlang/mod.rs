//! A small effect-annotated expression language and its reordering analysis.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod analysis;
pub mod parser;

pub use analysis::{infer_grades, reorder_report, GradeMap, ReorderEntry, ReorderReport, ReorderVerdict};
pub use parser::parse_program;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prim {
    pub name: String,
    pub grade: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    /// Dense index, children before parents.
    pub id: usize,
    pub pos: Pos,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Var(String),
    Lit(i64),
    Call(String, Box<Expr>),
    Op(String, Box<Expr>, Box<Expr>),
    Let(String, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub prims: Vec<Prim>,
    pub main: Expr,
}

impl Program {
    pub fn prim(&self, name: &str) -> Option<&Prim> {
        self.prims.iter().find(|p| p.name == name)
    }

    /// Number of expression nodes.
    pub fn size(&self) -> usize {
        self.main.id + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EffectError {
    #[error("{line}:{col}: syntax error: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("{line}:{col}: unknown primitive `{name}`")]
    UnknownPrimitive { name: String, line: usize, col: usize },
    #[error("{line}:{col}: unbound variable `{name}`")]
    UnboundVariable { name: String, line: usize, col: usize },
    #[error("{line}:{col}: grade `{grade}` is not in the pomonoid")]
    UnknownGrade { grade: String, line: usize, col: usize },
    #[error("the monad is graded by {monad}, the program by {program}")]
    GradingMismatch { monad: String, program: String },
}
