use serde::Serialize;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt::Write as _;

use super::ast::{Expr, ExprKind, RelOp, Script, SetOp, Stmt, StmtKind};
use super::lexer::Pos;
use crate::error::EngineError;
use crate::geometry::{Formula, Space};
use crate::monoid::enumerate_canonical;
use crate::operators::{cor, is_convex, lin, topo_closure, topo_interior};
use crate::orbit::{verify_convex_bound, Orbit};
use crate::rational::{format_point, Rational};
use crate::separation::{hrep_from_flagged, separate, Separation};
use crate::set::{shapes, FlaggedSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BINDING: i32 = 3;

/// Unbound identifiers, dimension mismatches and invalid constructor values.
/// Evaluation stops at the first one.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{pos}: unbound identifier `{name}`")]
    Unbound { name: String, pos: Pos },
    #[error("{pos}: dimension mismatch: script is {expected}-dimensional, expression is {found}-dimensional")]
    DimensionMismatch { expected: usize, found: usize, pos: Pos },
    #[error("{pos}: {msg}")]
    Invalid { msg: String, pos: Pos },
}

#[derive(Debug, Clone, Serialize)]
pub struct StmtReport {
    pub kind: &'static str,
    pub input: String,
    pub output: Value,
    pub verdict: &'static str,
    #[serde(skip)]
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub rng: u64,
    pub statements: usize,
    pub asserts: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub error: Option<String>,
    pub verdict: &'static str,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub statements: Vec<StmtReport>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.statements.iter().enumerate() {
            let _ = writeln!(out, "[{}] {}", i + 1, s.input);
            for line in s.text.lines() {
                let _ = writeln!(out, "    {line}");
            }
            let _ = writeln!(out, "    => {}", s.verdict);
        }
        let m = &self.summary;
        if let Some(e) = &m.error {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(
            out,
            "summary: {} statements, {} asserts ({} passed, {} failed), {} errors; dim {}, rng {}: {}",
            m.statements, m.asserts, m.passed, m.failed, m.errors, m.dim, m.rng, m.verdict
        );
        out
    }
}

fn set_output(s: &FlaggedSet) -> (Value, String) {
    if s.dim() == 1 {
        let d = s.describe();
        (Value::String(d.clone()), d)
    } else {
        let v = serde_json::to_value(s.to_json()).expect("serializable");
        let text = v.to_string();
        (v, text)
    }
}

pub struct Evaluator {
    space: Space,
    env: HashMap<String, FlaggedSet>,
}

impl Evaluator {
    pub fn new(space: Space) -> Evaluator {
        Evaluator { space, env: HashMap::new() }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    fn invalid(pos: Pos) -> impl Fn(EngineError) -> EvalError {
        move |e| EvalError::Invalid { msg: e.to_string(), pos }
    }

    pub fn eval(&self, e: &Expr) -> Result<FlaggedSet, EvalError> {
        if let Some(found) = e.literal_dim() {
            if found != self.space.dim() {
                return Err(EvalError::DimensionMismatch { expected: self.space.dim(), found, pos: e.pos });
            }
        }
        let inv = Self::invalid(e.pos);
        Ok(match &e.kind {
            ExprKind::Var(name) => self
                .env
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::Unbound { name: name.clone(), pos: e.pos })?,
            ExprKind::Empty => FlaggedSet::empty(self.space),
            ExprKind::Space => FlaggedSet::full(self.space),
            ExprKind::Op(op, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>, _>>()?;
                match op {
                    SetOp::Union | SetOp::Inter => {
                        let mut acc = vals[0].clone();
                        for v in &vals[1..] {
                            acc = if *op == SetOp::Union { acc.union(v) } else { acc.intersect(v) }
                                .map_err(&inv)?;
                        }
                        acc
                    }
                    SetOp::Diff => vals[0].difference(&vals[1]).map_err(&inv)?,
                    SetOp::Cmpl => vals[0].complement(),
                    SetOp::Lin => lin(&vals[0]),
                    SetOp::Cor => cor(&vals[0]),
                    SetOp::Cl => topo_closure(&vals[0]),
                    SetOp::Int => topo_interior(&vals[0]),
                }
            }
            ExprKind::Hs { coeffs, rel, rhs } => {
                let atom = Formula::atom(coeffs, *rel, rhs).map_err(&inv)?;
                FlaggedSet::from_formula(&atom, self.space).map_err(&inv)?
            }
            ExprKind::Seg { p, q, code } => segment(p, q, code.p_closed, code.q_closed),
            ExprKind::Pt(x) => shapes::point(x),
            ExprKind::Box { lo, hi } => {
                if lo.len() == 1 {
                    shapes::interval(&lo[0], &hi[0], true, true)
                } else {
                    shapes::rect(&lo[0], &lo[1], &hi[0], &hi[1], true)
                }
            }
        })
    }

    pub fn bind(&mut self, name: &str, value: FlaggedSet) {
        self.env.insert(name.to_string(), value);
    }

    fn stmt(&mut self, stmt: &Stmt) -> Result<StmtReport, EvalError> {
        let mut report = StmtReport {
            kind: stmt.kind_name(),
            input: stmt.to_string(),
            output: Value::Null,
            verdict: "ok",
            text: String::new(),
        };
        match &stmt.kind {
            StmtKind::Let(name, e) => {
                let v = self.eval(e)?;
                (report.output, report.text) = set_output(&v);
                self.bind(name, v);
            }
            StmtKind::Show(e) => {
                (report.output, report.text) = set_output(&self.eval(e)?);
            }
            StmtKind::Assert(a, op, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let inv = Self::invalid(stmt.pos);
                let holds = match op {
                    RelOp::Equal => x.equal(&y),
                    RelOp::Subset => x.is_subset(&y),
                }
                .map_err(inv)?;
                report.verdict = if holds { "pass" } else { "fail" };
                if holds {
                    report.output = Value::Bool(true);
                    report.text = "holds".into();
                } else {
                    let (l, lt) = set_output(&x);
                    let (r, rt) = set_output(&y);
                    report.output = json!({ "lhs": l, "rhs": r });
                    report.text = format!("lhs: {lt}\nrhs: {rt}");
                }
            }
            StmtKind::Orbit(e) => {
                let seed = self.eval(e)?;
                (report.output, report.text) = orbit_output(&seed);
            }
            StmtKind::Monoid(mode) => {
                let words = enumerate_canonical(*mode, 9).expect("max_len 9 is valid");
                let names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                report.text = format!("{} canonical words: {}", names.len(), names.join(" "));
                report.output = json!({ "mode": mode, "count": names.len(), "words": names });
            }
            StmtKind::Separate(a, b) => {
                let (s, t) = (self.eval(a)?, self.eval(b)?);
                let result = hrep_from_flagged(&s)
                    .and_then(|hs| Ok((hs, hrep_from_flagged(&t)?)))
                    .and_then(|(hs, ht)| separate(&hs, &ht));
                match result {
                    Ok(Separation::Intersects(p)) => {
                        report.verdict = "intersects";
                        report.text = format!("cor(S) meets T at {}", format_point(&p));
                        report.output = Separation::Intersects(p).to_json();
                    }
                    Ok(Separation::Separated(c)) => {
                        report.verdict = "separated";
                        report.text = c.to_string();
                        report.output = c.to_json();
                    }
                    Err(err) => {
                        report.verdict = "error";
                        report.text = err.to_string();
                        report.output = json!({ "error": err.to_string() });
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Segment with endpoint flags; a degenerate segment is a point or empty.
fn segment(p: &[Rational], q: &[Rational], p_closed: bool, q_closed: bool) -> FlaggedSet {
    let space = Space::new(p.len()).expect("dimension 1 or 2");
    if p == q {
        return if p_closed && q_closed {
            shapes::point(p)
        } else {
            FlaggedSet::empty(space)
        };
    }
    if p.len() == 1 {
        if p[0] < q[0] {
            shapes::interval(&p[0], &q[0], p_closed, q_closed)
        } else {
            shapes::interval(&q[0], &p[0], q_closed, p_closed)
        }
    } else {
        shapes::segment(p, q, p_closed, q_closed)
    }
}

pub fn orbit_output(seed: &FlaggedSet) -> (Value, String) {
    let orbit = Orbit::enumerate(seed);
    let mut json = orbit.to_json();
    let mut text = orbit.to_text();
    if is_convex(seed) {
        let r = verify_convex_bound(seed).expect("seed is convex");
        let line = format!(
            "convex seed ({}): {} members, eight-word bound {}",
            serde_json::to_value(r.regime).expect("serializable").as_str().unwrap_or(""),
            r.orbit_size,
            if r.verdict { "holds" } else { "FAILS" }
        );
        json["convex_bound"] = json!({ "regime": r.regime, "holds": r.verdict });
        text.push_str(&line);
        text.push('\n');
    }
    (json, text)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EvalOptions {
    pub dim: Option<usize>,
    pub rng: u64,
}

/// Dimension from the options, else from the first constructor, else 2.
pub fn script_space(script: &Script, opts: &EvalOptions) -> Space {
    let dim = opts.dim.or_else(|| script.first_literal_dim()).unwrap_or(2);
    Space::new(dim).unwrap_or(Space::PLANE)
}

pub fn evaluate(script: &Script, opts: &EvalOptions) -> Report {
    let space = script_space(script, opts);
    let mut ev = Evaluator::new(space);
    let mut statements = Vec::new();
    let mut error = None;
    for stmt in &script.stmts {
        match ev.stmt(stmt) {
            Ok(r) => statements.push(r),
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    let count = |v: &str| statements.iter().filter(|s| s.verdict == v).count();
    let (passed, failed, errors) = (count("pass"), count("fail"), count("error"));
    let asserts = passed + failed;
    let exit_code = if error.is_some() {
        EXIT_BINDING
    } else if failed > 0 || errors > 0 {
        EXIT_ASSERT
    } else {
        EXIT_OK
    };
    let verdict = match exit_code {
        EXIT_OK => "pass",
        EXIT_ASSERT => "fail",
        _ => "error",
    };
    Report {
        summary: Summary {
            dim: space.dim(),
            rng: opts.rng,
            statements: statements.len(),
            asserts,
            passed,
            failed,
            errors,
            error,
            verdict,
            exit_code,
        },
        statements,
    }
}
