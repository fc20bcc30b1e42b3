//! Formula AST, concrete-syntax parser, and set-based evaluator for the
//! finitary spatial logics over quasi-discrete closure models.

mod ast;
mod eval;
mod parse;

pub use ast::Formula;
pub use eval::{check, evaluate, evaluate_checked, evaluate_strict};
pub use parse::{parse_formula, ParseError};
