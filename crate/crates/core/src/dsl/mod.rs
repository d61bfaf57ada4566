//! A small set-expression language.
//!
//! ```text
//! program := stmt*
//! stmt    := "let" ID "=" sexpr ";" | "show" sexpr ";" | "assert" rel ";" | cmd ";"
//! sexpr   := ID | "empty" | "space" | fn "(" args ")"
//! rel     := sexpr ("==" | "<=") sexpr
//! cmd     := "orbit" "(" sexpr ")" | "monoid" "(" mode ")" | "separate" "(" sexpr "," sexpr ")"
//! ```

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;

pub use ast::{Expr, ExprKind, Script, Stmt, StmtKind};
pub use eval::{evaluate, EvalError, EvalOptions, Evaluator, Report};
pub use lexer::{Pos, SyntaxError};
pub use parser::{parse, parse_expr};
