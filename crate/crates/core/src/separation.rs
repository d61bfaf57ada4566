//! Exact separation of convex polyhedra given by strict and non-strict
//! linear inequalities, in dimension 1 or 2.
//!
//! Every query reduces to finitely many candidate points (pairwise boundary
//! intersections and boundary foot points) and candidate recession directions
//! (boundary directions and inward normals). A nonempty closed polyhedron
//! `P` is the convex hull of its feasible candidate points plus the cone of
//! its feasible candidate directions, which makes suprema and relative
//! interior points computable without pivoting.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::error::EngineError;
use crate::geometry::{write_linear, Formula, LinConstraint, Relation, Space};
use crate::operators::is_convex;
use crate::rational::{dot, format_rational, int, parse_rational, Point, Rational, Sign};
use crate::set::FlaggedSet;

/// `a · x ≤ b`, or `a · x < b` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub a: Vec<Rational>,
    pub b: Rational,
    pub strict: bool,
}

impl HalfSpace {
    pub fn new(a: Vec<Rational>, b: Rational, strict: bool) -> Result<HalfSpace, EngineError> {
        if a.iter().all(|c| c.is_zero()) {
            return Err(EngineError::ZeroNormal);
        }
        Ok(HalfSpace { a, b, strict })
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.b - dot(&self.a, x)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let s = self.slack(x);
        if self.strict {
            s.is_positive()
        } else {
            !s.is_negative()
        }
    }

    pub fn holds_closed(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn relation(&self) -> Relation {
        if self.strict {
            Relation::Lt
        } else {
            Relation::Le
        }
    }

    pub fn to_constraint(&self) -> LinConstraint {
        LinConstraint::new(&self.a, self.relation(), &self.b).expect("nonzero normal")
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.a)?;
        write!(f, " {} {}", self.relation(), format_rational(&self.b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeparationError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    Validation(String),
    #[error("set is not representable as a convex constraint system: {0}")]
    NotRepresentable(String),
    #[error("no separating functional among the candidates")]
    NotFound,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Conjunction of half-spaces. Every constraint is stored as `≤` or `<`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexHRep {
    space: Space,
    constraints: Vec<HalfSpace>,
}

/// Supremum of a linear functional over a constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extent {
    Empty,
    Unbounded,
    Max(Rational),
}

impl ConvexHRep {
    pub fn new(space: Space, constraints: Vec<HalfSpace>) -> Result<ConvexHRep, EngineError> {
        for c in &constraints {
            space.check(c.a.len())?;
            if c.a.iter().all(|v| v.is_zero()) {
                return Err(EngineError::ZeroNormal);
            }
        }
        Ok(ConvexHRep { space, constraints })
    }

    /// Normalizes `≥`/`>` by negation and splits `=` into two `≤`.
    pub fn from_constraints(space: Space, cons: &[LinConstraint]) -> Result<ConvexHRep, EngineError> {
        let mut out = Vec::new();
        for c in cons {
            space.check(c.plane().dim())?;
            let a = c.plane().normal_q();
            let b = c.plane().offset().clone();
            let neg = |v: &[Rational]| v.iter().map(|x| -x).collect::<Vec<_>>();
            match c.relation() {
                Relation::Lt => out.push(HalfSpace { a, b, strict: true }),
                Relation::Le => out.push(HalfSpace { a, b, strict: false }),
                Relation::Gt => out.push(HalfSpace { a: neg(&a), b: -b, strict: true }),
                Relation::Ge => out.push(HalfSpace { a: neg(&a), b: -b, strict: false }),
                Relation::Eq => {
                    out.push(HalfSpace { a: neg(&a), b: -b.clone(), strict: false });
                    out.push(HalfSpace { a, b, strict: false });
                }
            }
        }
        Ok(ConvexHRep { space, constraints: out })
    }

    pub fn whole(space: Space) -> ConvexHRep {
        ConvexHRep { space, constraints: Vec::new() }
    }

    /// `x₁ < 0 ∧ −x₁ < 0`.
    pub fn canonical_empty(space: Space) -> ConvexHRep {
        let mut e = vec![int(0); space.dim()];
        e[0] = int(1);
        let neg: Vec<Rational> = e.iter().map(|v| -v).collect();
        ConvexHRep {
            space,
            constraints: vec![
                HalfSpace { a: e, b: int(0), strict: true },
                HalfSpace { a: neg, b: int(0), strict: true },
            ],
        }
    }

    /// The single point `x`.
    pub fn point(x: &[Rational]) -> Result<ConvexHRep, EngineError> {
        let space = Space::new(x.len())?;
        let mut out = Vec::new();
        for k in 0..x.len() {
            let mut e = vec![int(0); x.len()];
            e[k] = int(1);
            out.push(HalfSpace { a: e.iter().map(|v| -v).collect(), b: -x[k].clone(), strict: false });
            out.push(HalfSpace { a: e, b: x[k].clone(), strict: false });
        }
        Ok(ConvexHRep { space, constraints: out })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn with(&self, extra: impl IntoIterator<Item = HalfSpace>) -> ConvexHRep {
        let mut constraints = self.constraints.clone();
        constraints.extend(extra);
        ConvexHRep { space: self.space, constraints }
    }

    fn with_strictness(&self, strict: bool) -> ConvexHRep {
        ConvexHRep {
            space: self.space,
            constraints: self
                .constraints
                .iter()
                .map(|c| HalfSpace { strict, ..c.clone() })
                .collect(),
        }
    }

    /// Feasible candidate points of the closed system.
    fn closed_points(&self) -> Vec<Point> {
        let mut cands: Vec<Point> = vec![self.space.origin()];
        match self.dim() {
            1 => cands.extend(self.constraints.iter().map(|c| vec![&c.b / &c.a[0]])),
            _ => {
                for c in &self.constraints {
                    let n2 = dot(&c.a, &c.a);
                    let s = &c.b / n2;
                    cands.push(c.a.iter().map(|v| v * &s).collect());
                }
                for (i, p) in self.constraints.iter().enumerate() {
                    for q in &self.constraints[i + 1..] {
                        let det = &p.a[0] * &q.a[1] - &p.a[1] * &q.a[0];
                        if det.is_zero() {
                            continue;
                        }
                        let x = (&p.b * &q.a[1] - &p.a[1] * &q.b) / &det;
                        let y = (&p.a[0] * &q.b - &p.b * &q.a[0]) / &det;
                        cands.push(vec![x, y]);
                    }
                }
            }
        }
        cands.sort();
        cands.dedup();
        cands.retain(|x| self.constraints.iter().all(|c| c.holds_closed(x)));
        cands
    }

    /// Candidate directions lying in the recession cone of the closed system;
    /// together they generate the cone.
    fn recession_dirs(&self) -> Vec<Point> {
        let mut cands: Vec<Point> = Vec::new();
        for k in 0..self.dim() {
            let mut e = vec![int(0); self.dim()];
            e[k] = int(1);
            cands.push(e.iter().map(|v| -v).collect());
            cands.push(e);
        }
        for c in &self.constraints {
            cands.push(c.a.iter().map(|v| -v).collect());
            if self.dim() == 2 {
                cands.push(vec![-c.a[1].clone(), c.a[0].clone()]);
                cands.push(vec![c.a[1].clone(), -c.a[0].clone()]);
            }
        }
        cands.sort();
        cands.dedup();
        cands.retain(|d| self.constraints.iter().all(|c| !dot(&c.a, d).is_positive()));
        cands
    }

    /// A point of the relative interior of the closed system, if nonempty.
    fn closed_relint(&self) -> Option<Point> {
        let pts = self.closed_points();
        if pts.is_empty() {
            return None;
        }
        let n = int(pts.len() as i64);
        let mut r: Point = (0..self.dim())
            .map(|k| pts.iter().map(|p| p[k].clone()).sum::<Rational>() / &n)
            .collect();
        for d in self.recession_dirs() {
            for (rk, dk) in r.iter_mut().zip(&d) {
                *rk += dk;
            }
        }
        Some(r)
    }

    /// A point of the set, if it is nonempty. A mixed system is feasible iff
    /// a relative interior point of its closure satisfies it.
    pub fn feasible_point(&self) -> Option<Point> {
        self.closed_relint().filter(|r| self.contains(r))
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    /// `sup { l·x : x ∈ self }`.
    pub fn sup(&self, l: &[Rational]) -> Extent {
        if self.is_empty() {
            return Extent::Empty;
        }
        if self.recession_dirs().iter().any(|d| dot(l, d).is_positive()) {
            return Extent::Unbounded;
        }
        let best = self
            .closed_points()
            .iter()
            .map(|p| dot(l, p))
            .max()
            .expect("nonempty system has a candidate point");
        Extent::Max(best)
    }

    /// `inf { l·x : x ∈ self }`, returned as an extent of `−l`.
    fn neg_inf(&self, l: &[Rational]) -> Extent {
        let neg: Vec<Rational> = l.iter().map(|v| -v).collect();
        self.sup(&neg)
    }
}

impl fmt::Display for ConvexHRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return f.write_str("true");
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Algebraic interior: the all-strict system when it is feasible.
pub fn cor_hrep(s: &ConvexHRep) -> ConvexHRep {
    let strict = s.with_strictness(true);
    if strict.is_empty() {
        ConvexHRep::canonical_empty(s.space)
    } else {
        strict
    }
}

/// Algebraic closure: the all-closed system, unless the set is empty.
pub fn lin_hrep(s: &ConvexHRep) -> ConvexHRep {
    if s.is_empty() {
        ConvexHRep::canonical_empty(s.space)
    } else {
        s.with_strictness(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    pub l: Vec<Rational>,
    pub alpha: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    CorPoint,
    CorSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub functional: LinearFunctional,
    pub kind: CertificateKind,
    pub checked: bool,
}

impl SeparationCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "l": self.functional.l.iter().map(format_rational).collect::<Vec<_>>(),
            "alpha": format_rational(&self.functional.alpha),
            "kind": self.kind,
            "checked": self.checked,
        })
    }
}

impl fmt::Display for SeparationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            CertificateKind::CorPoint => "cor-point",
            CertificateKind::CorSet => "cor-set",
        };
        f.write_str("l = ")?;
        write_linear(f, &self.functional.l)?;
        write!(
            f,
            ", alpha = {} ({kind}, {})",
            format_rational(&self.functional.alpha),
            if self.checked { "checked" } else { "unchecked" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// A point of `cor(S) ∩ T`.
    Intersects(Point),
    Separated(SeparationCertificate),
}

impl Separation {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Separation::Intersects(p) => serde_json::json!({
                "point": p.iter().map(format_rational).collect::<Vec<_>>(),
            }),
            Separation::Separated(c) => c.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InCor,
    Outside(SeparationCertificate),
}

fn check_dims(s: &ConvexHRep, t: &ConvexHRep) -> Result<(), SeparationError> {
    if s.dim() != t.dim() {
        return Err(EngineError::DimensionMismatch { expected: s.dim(), found: t.dim() }.into());
    }
    Ok(())
}

/// Exact check of `l(s) ≤ α ≤ l(t)` on `S × T` and `l(s) < α` on `cor(S)`.
pub fn verify_separator(
    s: &ConvexHRep,
    t: &ConvexHRep,
    cert: &SeparationCertificate,
) -> Result<bool, SeparationError> {
    check_dims(s, t)?;
    let LinearFunctional { l, alpha } = &cert.functional;
    if l.len() != s.dim() {
        return Err(SeparationError::Validation(format!(
            "functional has {} coefficients in dimension {}",
            l.len(),
            s.dim()
        )));
    }
    if l.iter().all(|v| v.is_zero()) {
        return Err(SeparationError::Validation("l = 0".into()));
    }
    let upper_ok = match s.sup(l) {
        Extent::Empty => true,
        Extent::Unbounded => false,
        Extent::Max(m) => m <= *alpha,
    };
    let lower_ok = match t.neg_inf(l) {
        Extent::Empty => true,
        Extent::Unbounded => false,
        Extent::Max(m) => -m >= *alpha,
    };
    let touch = HalfSpace {
        a: l.iter().map(|v| -v).collect(),
        b: -alpha.clone(),
        strict: false,
    };
    let strict_ok = cor_hrep(s).with([touch]).is_empty();
    Ok(upper_ok && lower_ok && strict_ok)
}

fn certify(
    s: &ConvexHRep,
    t: &ConvexHRep,
    l: Vec<Rational>,
    alpha: Rational,
    kind: CertificateKind,
) -> Result<Option<SeparationCertificate>, SeparationError> {
    let mut cert = SeparationCertificate {
        functional: LinearFunctional { l, alpha },
        kind,
        checked: false,
    };
    if verify_separator(s, t, &cert)? {
        cert.checked = true;
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

fn perp(v: &[Rational]) -> [Vec<Rational>; 2] {
    [
        vec![-v[1].clone(), v[0].clone()],
        vec![v[1].clone(), -v[0].clone()],
    ]
}

/// Candidate normals for a separating line: normals of `S`, reversed normals
/// of `T`, their perpendiculars, and lines through a candidate point of each.
fn candidate_functionals(s: &ConvexHRep, t: &ConvexHRep) -> Vec<Vec<Rational>> {
    if s.dim() == 1 {
        return vec![vec![int(1)], vec![int(-1)]];
    }
    let mut out: Vec<Vec<Rational>> = Vec::new();
    out.extend(s.constraints.iter().map(|c| c.a.clone()));
    out.extend(t.constraints.iter().map(|c| c.a.iter().map(|v| -v).collect()));
    for c in s.constraints.iter().chain(&t.constraints) {
        out.extend(perp(&c.a));
    }
    let sp = s.closed_points();
    let tp = t.closed_points();
    for v in &sp {
        for w in &tp {
            let d: Vec<Rational> = v.iter().zip(w).map(|(a, b)| a - b).collect();
            if d.iter().all(|x| x.is_zero()) {
                continue;
            }
            out.extend(perp(&d));
            out.push(d.iter().map(|x| -x).collect());
        }
    }
    for k in 0..2 {
        let mut e = vec![int(0); 2];
        e[k] = int(1);
        out.push(e.iter().map(|v| -v).collect());
        out.push(e);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|l| !l.iter().all(|v| v.is_zero()) && seen.insert(l.clone()));
    out
}

/// Either a point of `cor(S) ∩ T`, or a functional separating `S` from `T`
/// that is strict on `cor(S)`.
pub fn separate(s: &ConvexHRep, t: &ConvexHRep) -> Result<Separation, SeparationError> {
    check_dims(s, t)?;
    if s.is_empty() {
        return Err(SeparationError::Precondition("S is empty".into()));
    }
    if t.is_empty() {
        return Err(SeparationError::Precondition("T is empty".into()));
    }
    let core = cor_hrep(s);
    if core.is_empty() {
        return Err(SeparationError::Precondition("cor(S) is empty".into()));
    }
    if let Some(p) = core.with(t.constraints.iter().cloned()).feasible_point() {
        return Ok(Separation::Intersects(p));
    }
    // Functionals leaving a gap between the sets first, touching ones after.
    let mut touching = Vec::new();
    for l in candidate_functionals(s, t) {
        let (Extent::Max(hi), Extent::Max(neg_lo)) = (s.sup(&l), t.neg_inf(&l)) else {
            continue;
        };
        let lo = -neg_lo;
        if hi < lo {
            if let Some(cert) = certify(s, t, l, hi, CertificateKind::CorSet)? {
                return Ok(Separation::Separated(cert));
            }
        } else if hi == lo {
            touching.push((l, hi));
        }
    }
    for (l, alpha) in touching {
        if let Some(cert) = certify(s, t, l, alpha, CertificateKind::CorSet)? {
            return Ok(Separation::Separated(cert));
        }
    }
    Err(SeparationError::NotFound)
}

/// `InCor` when `x` satisfies every constraint strictly; otherwise the first
/// constraint `a·x ≤ b` with `a·x ≥ b` yields the certificate `(a, b)`.
pub fn cor_membership_certificate(s: &ConvexHRep, x: &[Rational]) -> Result<Membership, SeparationError> {
    s.space.check(x.len())?;
    if s.is_empty() {
        return Err(SeparationError::Precondition("S is empty".into()));
    }
    let Some(c) = s.constraints.iter().find(|c| !c.slack(x).is_positive()) else {
        return Ok(Membership::InCor);
    };
    let t = ConvexHRep::point(x)?;
    certify(s, &t, c.a.clone(), c.b.clone(), CertificateKind::CorPoint)?
        .map(Membership::Outside)
        .ok_or(SeparationError::NotFound)
}

pub fn hrep_to_flagged(s: &ConvexHRep) -> Result<FlaggedSet, EngineError> {
    let atoms = s
        .constraints
        .iter()
        .map(|c| Formula::atom(&c.a, c.relation(), &c.b))
        .collect::<Result<Vec<_>, _>>()?;
    FlaggedSet::from_formula(&Formula::and(atoms), s.space)
}

/// Tightest system of arrangement half-spaces containing `S`, each strict
/// exactly when no point of `S` lies on its line. Fails unless that system
/// describes `S` exactly.
pub fn hrep_from_flagged(s: &FlaggedSet) -> Result<ConvexHRep, SeparationError> {
    if s.is_empty() {
        return Ok(ConvexHRep::canonical_empty(s.space()));
    }
    if !is_convex(s) {
        return Err(SeparationError::NotRepresentable("set is not convex".into()));
    }
    let arr: &Arc<Arrangement> = s.arrangement();
    let mut out = Vec::new();
    for (i, h) in arr.lines().iter().enumerate() {
        let signs: Vec<Sign> = arr
            .faces()
            .iter()
            .enumerate()
            .filter(|&(id, _)| s.flag(id))
            .map(|(_, f)| f.signs[i])
            .collect();
        let on_line = signs.contains(&Sign::Zero);
        let a = h.normal_q();
        let b = h.offset().clone();
        if !signs.contains(&Sign::Pos) {
            out.push(HalfSpace { a: a.clone(), b: b.clone(), strict: !on_line });
        }
        if !signs.contains(&Sign::Neg) {
            out.push(HalfSpace { a: a.iter().map(|v| -v).collect(), b: -b, strict: !on_line });
        }
    }
    let h = ConvexHRep { space: s.space(), constraints: out };
    if hrep_to_flagged(&h)?.equal(s)? {
        Ok(h)
    } else {
        Err(SeparationError::NotRepresentable(
            "arrangement half-spaces do not cut out the set".into(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub a: Vec<String>,
    pub rel: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRepJson {
    pub dim: usize,
    pub constraints: Vec<ConstraintJson>,
}

impl ConvexHRep {
    pub fn to_json(&self) -> HRepJson {
        HRepJson {
            dim: self.dim(),
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintJson {
                    a: c.a.iter().map(format_rational).collect(),
                    rel: c.relation().symbol().to_string(),
                    b: format_rational(&c.b),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &HRepJson) -> Result<ConvexHRep, EngineError> {
        let space = Space::new(json.dim)?;
        let parse = |s: &str| parse_rational(s).map_err(|e| EngineError::Malformed(e.to_string()));
        let mut cons = Vec::new();
        for c in &json.constraints {
            let a = c.a.iter().map(|v| parse(v)).collect::<Result<Vec<_>, _>>()?;
            let rel = Relation::parse(&c.rel)
                .ok_or_else(|| EngineError::Malformed(format!("unknown relation `{}`", c.rel)))?;
            cons.push(LinConstraint::new(&a, rel, &parse(&c.b)?)?);
        }
        ConvexHRep::from_constraints(space, &cons)
    }
}
