//! Recursive-descent parser; one token of lookahead suffices.

use super::ast::{EndCode, Expr, ExprKind, RelOp, Script, SetOp, Stmt, StmtKind};
use super::lexer::{tokenize, Pos, SyntaxError, Tok};
use crate::geometry::Relation;
use crate::monoid::RewriteMode;
use crate::rational::Rational;

const KEYWORDS: [&str; 20] = [
    "let", "show", "assert", "orbit", "monoid", "separate", "empty", "space", "union", "inter",
    "diff", "cmpl", "lin", "cor", "cl", "int", "hs", "seg", "pt", "box",
];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

pub fn parse(src: &str) -> Result<Script, SyntaxError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let mut stmts = Vec::new();
    while *p.peek() != Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Script { stmts })
}

/// A single set expression, as accepted on the command line.
pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of expression")?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Pos, SyntaxError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.fail(expected)
        }
    }

    fn stmt(&mut self) -> Result<Stmt, SyntaxError> {
        let pos = self.pos();
        let Tok::Ident(head) = self.peek().clone() else {
            return self.fail("statement");
        };
        let kind = match head.as_str() {
            "let" => {
                self.bump();
                let name = match self.peek() {
                    Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => n.clone(),
                    _ => return self.fail("identifier"),
                };
                self.bump();
                self.expect(Tok::Rel(Relation::Eq), "`=`")?;
                StmtKind::Let(name, self.expr()?)
            }
            "show" => {
                self.bump();
                StmtKind::Show(self.expr()?)
            }
            "assert" => {
                self.bump();
                let lhs = self.expr()?;
                let op = match self.peek() {
                    Tok::EqEq => RelOp::Equal,
                    Tok::Rel(Relation::Le) => RelOp::Subset,
                    _ => return self.fail("`==` or `<=`"),
                };
                self.bump();
                StmtKind::Assert(lhs, op, self.expr()?)
            }
            "orbit" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                StmtKind::Orbit(e)
            }
            "monoid" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mode = match self.peek() {
                    Tok::Ident(m) => m.parse::<RewriteMode>().ok(),
                    _ => None,
                };
                let Some(mode) = mode else {
                    return self.fail("`general` or `convex`");
                };
                self.bump();
                self.expect(Tok::RParen, "`)`")?;
                StmtKind::Monoid(mode)
            }
            "separate" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                StmtKind::Separate(a, b)
            }
            _ => return self.fail("statement"),
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Stmt { kind, pos })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        let Tok::Ident(name) = self.peek().clone() else {
            return self.fail("expression");
        };
        let kind = match name.as_str() {
            "empty" => {
                self.bump();
                ExprKind::Empty
            }
            "space" => {
                self.bump();
                ExprKind::Space
            }
            "hs" | "seg" | "pt" | "box" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let kind = self.constructor(&name, pos)?;
                self.expect(Tok::RParen, "`)`")?;
                kind
            }
            n if KEYWORDS.contains(&n) => {
                let op = SetOp::from_name(n).ok_or_else(|| SyntaxError {
                    pos,
                    expected: "expression".into(),
                    found: format!("`{n}`"),
                })?;
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                let (lo, hi) = op.arity();
                if args.len() < lo || args.len() > hi {
                    let expected = if lo == hi {
                        format!("{lo} argument(s) to `{n}`")
                    } else {
                        format!("at least {lo} arguments to `{n}`")
                    };
                    return Err(SyntaxError {
                        pos,
                        expected,
                        found: format!("{}", args.len()),
                    });
                }
                self.expect(Tok::RParen, "`)`")?;
                ExprKind::Op(op, args)
            }
            _ => {
                self.bump();
                ExprKind::Var(name)
            }
        };
        Ok(Expr { kind, pos })
    }

    fn number(&mut self) -> Result<Rational, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(r)
            }
            _ => self.fail("number"),
        }
    }

    /// Comma-separated numbers, stopping before the first non-number.
    fn numbers(&mut self) -> Result<Vec<Rational>, SyntaxError> {
        let mut out = vec![self.number()?];
        while *self.peek() == Tok::Comma && matches!(self.toks[self.at + 1].0, Tok::Num(_)) {
            self.bump();
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn constructor(&mut self, name: &str, pos: Pos) -> Result<ExprKind, SyntaxError> {
        let nums = self.numbers()?;
        let arity_error = |expected: &str| SyntaxError {
            pos,
            expected: format!("{expected} in `{name}`"),
            found: format!("{} numbers", nums.len()),
        };
        match name {
            "hs" => {
                if !(1..=2).contains(&nums.len()) {
                    return Err(arity_error("1 or 2 coefficients"));
                }
                self.expect(Tok::Comma, "`,`")?;
                let rel = match self.peek() {
                    Tok::Rel(r) => *r,
                    _ => return self.fail("relation (<, <=, =, >=, >)"),
                };
                self.bump();
                self.expect(Tok::Comma, "`,`")?;
                let rhs = self.number()?;
                Ok(ExprKind::Hs { coeffs: nums, rel, rhs })
            }
            "seg" => {
                if nums.len() != 2 && nums.len() != 4 {
                    return Err(arity_error("2 or 4 coordinates"));
                }
                self.expect(Tok::Comma, "`,`")?;
                let code = match self.peek() {
                    Tok::Str(s) => EndCode::parse(s),
                    _ => None,
                };
                let Some(code) = code else {
                    return self.fail("endpoint code 'cc', 'co', 'oc' or 'oo'");
                };
                self.bump();
                let half = nums.len() / 2;
                Ok(ExprKind::Seg {
                    p: nums[..half].to_vec(),
                    q: nums[half..].to_vec(),
                    code,
                })
            }
            "pt" => {
                if !(1..=2).contains(&nums.len()) {
                    return Err(arity_error("1 or 2 coordinates"));
                }
                Ok(ExprKind::Pt(nums))
            }
            _ => {
                if nums.len() != 2 && nums.len() != 4 {
                    return Err(arity_error("2 or 4 coordinates"));
                }
                let half = nums.len() / 2;
                let (lo, hi) = if half == 1 {
                    (vec![nums[0].clone()], vec![nums[1].clone()])
                } else {
                    (vec![nums[0].clone(), nums[1].clone()], vec![nums[2].clone(), nums[3].clone()])
                };
                Ok(ExprKind::Box { lo, hi })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn strip_binding() {
        let s = parse("let A = inter(hs(1,0,>,0), hs(1,0,<,1));").unwrap();
        let StmtKind::Let(name, e) = &s.stmts[0].kind else { panic!() };
        assert_eq!(name, "A");
        let ExprKind::Op(SetOp::Inter, args) = &e.kind else { panic!() };
        assert_eq!(
            args[0].kind,
            ExprKind::Hs { coeffs: vec![int(1), int(0)], rel: Relation::Gt, rhs: int(0) }
        );
    }

    #[test]
    fn show_statement() {
        let s = parse("show lin(cmpl(A));").unwrap();
        assert_eq!(s.stmts[0].kind_name(), "show");
        assert_eq!(s.to_string(), "show lin(cmpl(A));\n");
    }

    #[test]
    fn missing_expression_column() {
        let e = parse("let A = ;").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 9 });
        assert_eq!(e.expected, "expression");
    }

    #[test]
    fn arity_and_keyword_errors() {
        assert!(parse("show hs(1, 2, 3, <, 0);").is_err());
        assert!(parse("show seg(0, 1, 2, 'cc');").is_err());
        assert!(parse("show seg(0, 1, 'cx');").is_err());
        assert!(parse("let lin = empty;").is_err());
        assert!(parse("show diff(A);").is_err());
        assert!(parse("monoid(free);").is_err());
        assert!(parse("show A").is_err());
    }

    #[test]
    fn round_trip() {
        let src = "let A = seg(0, 1, 'co');\nlet B = union(A, pt(3), box(5, 6));\n\
                   assert cmpl(cor(A)) == lin(cmpl(A));\nassert A <= B;\norbit(B);\n\
                   monoid(convex);\nseparate(box(0, 1), pt(2));\nshow hs(1/2, >=, -3);\n";
        let s = parse(src).unwrap();
        assert_eq!(s.to_string(), src);
        assert_eq!(parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn single_expression() {
        let e = parse_expr("union(seg(0,1,'co'),pt(3))").unwrap();
        assert_eq!(e.first_literal_dim(), Some(1));
        assert!(parse_expr("pt(1);").is_err());
    }
}
