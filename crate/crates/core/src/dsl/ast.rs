//! Syntax tree and its printer. Equality ignores source positions, so a
//! printed script parses back to an equal tree.

use std::fmt;

use super::lexer::Pos;
use crate::geometry::Relation;
use crate::monoid::RewriteMode;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Inter,
    Diff,
    Cmpl,
    Lin,
    Cor,
    Cl,
    Int,
}

impl SetOp {
    pub fn name(self) -> &'static str {
        match self {
            SetOp::Union => "union",
            SetOp::Inter => "inter",
            SetOp::Diff => "diff",
            SetOp::Cmpl => "cmpl",
            SetOp::Lin => "lin",
            SetOp::Cor => "cor",
            SetOp::Cl => "cl",
            SetOp::Int => "int",
        }
    }

    pub fn from_name(s: &str) -> Option<SetOp> {
        [
            SetOp::Union,
            SetOp::Inter,
            SetOp::Diff,
            SetOp::Cmpl,
            SetOp::Lin,
            SetOp::Cor,
            SetOp::Cl,
            SetOp::Int,
        ]
        .into_iter()
        .find(|op| op.name() == s)
    }

    /// Accepted argument counts as `(min, max)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            SetOp::Union | SetOp::Inter => (2, usize::MAX),
            SetOp::Diff => (2, 2),
            _ => (1, 1),
        }
    }
}

/// Endpoint inclusion of a segment: `cc`, `co`, `oc` or `oo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndCode {
    pub p_closed: bool,
    pub q_closed: bool,
}

impl EndCode {
    pub fn parse(s: &str) -> Option<EndCode> {
        let b = s.as_bytes();
        if b.len() != 2 {
            return None;
        }
        let flag = |c: u8| match c {
            b'c' => Some(true),
            b'o' => Some(false),
            _ => None,
        };
        Some(EndCode {
            p_closed: flag(b[0])?,
            q_closed: flag(b[1])?,
        })
    }
}

impl fmt::Display for EndCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |b: bool| if b { 'c' } else { 'o' };
        write!(f, "'{}{}'", c(self.p_closed), c(self.q_closed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Var(String),
    Empty,
    Space,
    Op(SetOp, Vec<Expr>),
    /// `coeffs · x  rel  rhs`
    Hs {
        coeffs: Vec<Rational>,
        rel: Relation,
        rhs: Rational,
    },
    Seg {
        p: Vec<Rational>,
        q: Vec<Rational>,
        code: EndCode,
    },
    Pt(Vec<Rational>),
    /// Closed axis-aligned box.
    Box {
        lo: Vec<Rational>,
        hi: Vec<Rational>,
    },
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    /// Dimension implied by a constructor's arity.
    pub fn literal_dim(&self) -> Option<usize> {
        match &self.kind {
            ExprKind::Hs { coeffs, .. } => Some(coeffs.len()),
            ExprKind::Seg { p, .. } => Some(p.len()),
            ExprKind::Pt(x) => Some(x.len()),
            ExprKind::Box { lo, .. } => Some(lo.len()),
            _ => None,
        }
    }

    /// First constructor in source order.
    pub fn first_literal_dim(&self) -> Option<usize> {
        match &self.kind {
            ExprKind::Op(_, args) => args.iter().find_map(|a| a.first_literal_dim()),
            _ => self.literal_dim(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelOp {
    Equal,
    Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Let(String, Expr),
    Show(Expr),
    Assert(Expr, RelOp, Expr),
    Orbit(Expr),
    Monoid(RewriteMode),
    Separate(Expr, Expr),
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Stmt) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Stmt {}

impl Stmt {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            StmtKind::Let(..) => "let",
            StmtKind::Show(_) => "show",
            StmtKind::Assert(..) => "assert",
            StmtKind::Orbit(_) => "orbit",
            StmtKind::Monoid(_) => "monoid",
            StmtKind::Separate(..) => "separate",
        }
    }

    pub fn exprs(&self) -> Vec<&Expr> {
        match &self.kind {
            StmtKind::Let(_, e) | StmtKind::Show(e) | StmtKind::Orbit(e) => vec![e],
            StmtKind::Assert(a, _, b) | StmtKind::Separate(a, b) => vec![a, b],
            StmtKind::Monoid(_) => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Script {
    pub fn first_literal_dim(&self) -> Option<usize> {
        self.stmts
            .iter()
            .flat_map(|s| s.exprs())
            .find_map(|e| e.first_literal_dim())
    }
}

fn write_nums(f: &mut fmt::Formatter<'_>, nums: &[Rational]) -> fmt::Result {
    for (i, n) in nums.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(&format_rational(n))?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Var(name) => f.write_str(name),
            ExprKind::Empty => f.write_str("empty"),
            ExprKind::Space => f.write_str("space"),
            ExprKind::Op(op, args) => {
                write!(f, "{}(", op.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            ExprKind::Hs { coeffs, rel, rhs } => {
                f.write_str("hs(")?;
                write_nums(f, coeffs)?;
                write!(f, ", {rel}, {})", format_rational(rhs))
            }
            ExprKind::Seg { p, q, code } => {
                f.write_str("seg(")?;
                write_nums(f, p)?;
                f.write_str(", ")?;
                write_nums(f, q)?;
                write!(f, ", {code})")
            }
            ExprKind::Pt(x) => {
                f.write_str("pt(")?;
                write_nums(f, x)?;
                f.write_str(")")
            }
            ExprKind::Box { lo, hi } => {
                f.write_str("box(")?;
                write_nums(f, lo)?;
                f.write_str(", ")?;
                write_nums(f, hi)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Let(name, e) => write!(f, "let {name} = {e};"),
            StmtKind::Show(e) => write!(f, "show {e};"),
            StmtKind::Assert(a, op, b) => {
                let op = match op {
                    RelOp::Equal => "==",
                    RelOp::Subset => "<=",
                };
                write!(f, "assert {a} {op} {b};")
            }
            StmtKind::Orbit(e) => write!(f, "orbit({e});"),
            StmtKind::Monoid(mode) => write!(f, "monoid({mode});"),
            StmtKind::Separate(a, b) => write!(f, "separate({a}, {b});"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
