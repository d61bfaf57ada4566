//! Hyperplanes, linear constraints and boolean formulas over them.

use crate::error::EngineError;
use crate::rational::{format_rational, Point, Rational, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Ambient space `R^dim`, `dim` in {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    dim: usize,
}

impl Space {
    pub const LINE: Space = Space { dim: 1 };
    pub const PLANE: Space = Space { dim: 2 };

    pub fn new(dim: usize) -> Result<Space, EngineError> {
        match dim {
            1 | 2 => Ok(Space { dim }),
            d => Err(EngineError::InvalidDimension(d)),
        }
    }

    pub fn dim(self) -> usize {
        self.dim
    }

    pub fn origin(self) -> Point {
        vec![Rational::zero(); self.dim]
    }

    pub fn check(self, found: usize) -> Result<(), EngineError> {
        if found == self.dim {
            Ok(())
        } else {
            Err(EngineError::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    /// Whether `a·x − b` having sign `s` satisfies `a·x rel b`.
    pub fn accepts(self, s: Sign) -> bool {
        match self {
            Relation::Lt => s == Sign::Neg,
            Relation::Le => s != Sign::Pos,
            Relation::Eq => s == Sign::Zero,
            Relation::Ge => s != Sign::Neg,
            Relation::Gt => s == Sign::Pos,
        }
    }

    /// The relation obtained by multiplying both sides by -1.
    pub fn flip(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
            Relation::Gt => Relation::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Some(match s {
            "<" => Relation::Lt,
            "<=" => Relation::Le,
            "=" => Relation::Eq,
            ">=" => Relation::Ge,
            ">" => Relation::Gt,
            _ => return None,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The hyperplane `normal · x = offset` with a primitive integer normal whose
/// first nonzero coefficient is positive. Two hyperplanes describing the same
/// point set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
    offset: Rational,
}

impl Hyperplane {
    /// Normalizes `coeffs · x = rhs`. The flag reports whether the sides were
    /// swapped (the normal was negated) during normalization.
    pub fn normalize(coeffs: &[Rational], rhs: &Rational) -> Result<(Hyperplane, bool), EngineError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(EngineError::ZeroNormal);
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut normal: Vec<BigInt> = scaled.iter().map(|c| c / &gcd).collect();
        let mut offset = rhs * Rational::new(lcm, gcd);
        let flipped = normal
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        if flipped {
            normal.iter_mut().for_each(|c| *c = -c.clone());
            offset = -offset;
        }
        Ok((Hyperplane { normal, offset }, flipped))
    }

    pub fn new(coeffs: &[Rational], rhs: &Rational) -> Result<Hyperplane, EngineError> {
        Self::normalize(coeffs, rhs).map(|(h, _)| h)
    }

    pub fn from_ints(normal: &[i64], offset: Rational) -> Result<Hyperplane, EngineError> {
        let coeffs: Vec<Rational> = normal
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Self::new(&coeffs, &offset)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn normal_q(&self) -> Vec<Rational> {
        self.normal
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    /// `normal · x − offset`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = -self.offset.clone();
        for (a, v) in self.normal.iter().zip(x) {
            if !a.is_zero() {
                acc += v * a;
            }
        }
        acc
    }

    pub fn side(&self, x: &[Rational]) -> Sign {
        Sign::of(&self.eval(x))
    }

    /// Sign of `normal · d` for an integer direction.
    pub fn dir_sign(&self, d: &[BigInt]) -> Sign {
        let s: BigInt = self.normal.iter().zip(d).map(|(a, b)| a * b).sum();
        Sign::of(&s)
    }

    /// Integer direction vector of the line (dimension 2): the normal rotated
    /// by +90 degrees.
    pub fn direction(&self) -> Vec<BigInt> {
        debug_assert_eq!(self.dim(), 2);
        vec![-self.normal[1].clone(), self.normal[0].clone()]
    }

    /// The point of the hyperplane closest to the origin.
    pub fn foot_point(&self) -> Point {
        let norm2: BigInt = self.normal.iter().map(|c| c * c).sum();
        let scale = &self.offset / Rational::from_integer(norm2);
        self.normal
            .iter()
            .map(|c| &scale * Rational::from_integer(c.clone()))
            .collect()
    }

    pub fn is_parallel(&self, other: &Hyperplane) -> bool {
        if self.dim() == 1 {
            return true;
        }
        (&self.normal[0] * &other.normal[1] - &self.normal[1] * &other.normal[0]).is_zero()
    }

    /// Intersection point of two non-parallel lines in the plane.
    pub fn intersect(&self, other: &Hyperplane) -> Option<Point> {
        if self.dim() != 2 || self.is_parallel(other) {
            return None;
        }
        let q = |c: &BigInt| Rational::from_integer(c.clone());
        let (a1, b1) = (q(&self.normal[0]), q(&self.normal[1]));
        let (a2, b2) = (q(&other.normal[0]), q(&other.normal[1]));
        let det = &a1 * &b2 - &b1 * &a2;
        let x = (&self.offset * &b2 - &b1 * &other.offset) / &det;
        let y = (&a1 * &other.offset - &self.offset * &a2) / &det;
        Some(vec![x, y])
    }

    /// Serialized as `[a1, (a2,) b]` strings.
    pub fn to_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.normal.iter().map(|c| c.to_string()).collect();
        v.push(format_rational(&self.offset));
        v
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.normal_q())?;
        write!(f, " = {}", format_rational(&self.offset))
    }
}

pub(crate) fn write_linear(f: &mut fmt::Formatter<'_>, coeffs: &[Rational]) -> fmt::Result {
    const VARS: [&str; 2] = ["x", "y"];
    let mut first = true;
    for (c, var) in coeffs.iter().zip(VARS) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mag.is_one() {
            f.write_str(var)?;
        } else {
            write!(f, "{}{}", format_rational(&mag), var)?;
        }
        first = false;
    }
    Ok(())
}

/// `plane.normal · x  relation  plane.offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinConstraint {
    plane: Hyperplane,
    relation: Relation,
}

impl LinConstraint {
    pub fn new(coeffs: &[Rational], relation: Relation, rhs: &Rational) -> Result<LinConstraint, EngineError> {
        let (plane, flipped) = Hyperplane::normalize(coeffs, rhs)?;
        let relation = if flipped { relation.flip() } else { relation };
        Ok(LinConstraint { plane, relation })
    }

    pub fn from_plane(plane: Hyperplane, relation: Relation) -> LinConstraint {
        LinConstraint { plane, relation }
    }

    pub fn plane(&self) -> &Hyperplane {
        &self.plane
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        self.relation.accepts(self.plane.side(x))
    }
}

impl fmt::Display for LinConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.plane.normal_q())?;
        write!(f, " {} {}", self.relation, format_rational(&self.plane.offset))
    }
}

/// Boolean combination of linear constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(LinConstraint),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(coeffs: &[Rational], relation: Relation, rhs: &Rational) -> Result<Formula, EngineError> {
        LinConstraint::new(coeffs, relation, rhs).map(Formula::Atom)
    }

    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::And(parts.into_iter().collect())
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::Or(parts.into_iter().collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let mut out = Vec::new();
        self.collect_planes(&mut out);
        out
    }

    fn collect_planes(&self, out: &mut Vec<Hyperplane>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(c) => out.push(c.plane.clone()),
            Formula::Not(inner) => inner.collect_planes(out),
            Formula::And(parts) | Formula::Or(parts) => {
                parts.iter().for_each(|p| p.collect_planes(out))
            }
        }
    }

    /// Evaluates the formula given the sign of each atom's `a·x − b`.
    pub fn eval_signs(&self, sign_of: &dyn Fn(&Hyperplane) -> Sign) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(c) => c.relation.accepts(sign_of(&c.plane)),
            Formula::Not(inner) => !inner.eval_signs(sign_of),
            Formula::And(parts) => parts.iter().all(|p| p.eval_signs(sign_of)),
            Formula::Or(parts) => parts.iter().any(|p| p.eval_signs(sign_of)),
        }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        self.eval_signs(&|h| h.side(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn normalization_is_canonical() {
        let h1 = Hyperplane::new(&[ratio(1, 2), ratio(-1, 3)], &ratio(1, 6)).unwrap();
        let h2 = Hyperplane::new(&[int(-3), int(2)], &int(-1)).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1.normal(), &[BigInt::from(3), BigInt::from(-2)]);
        assert_eq!(h1.offset(), &int(1));
    }

    #[test]
    fn relation_flips_with_normal() {
        let c = LinConstraint::new(&[int(-2)], Relation::Lt, &int(4)).unwrap();
        // -2x < 4  <=>  x > -2
        assert_eq!(c.relation(), Relation::Gt);
        assert_eq!(c.plane().offset(), &int(-2));
        assert!(c.holds(&[int(0)]));
        assert!(!c.holds(&[int(-2)]));
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            LinConstraint::new(&[int(0), int(0)], Relation::Le, &int(1)),
            Err(EngineError::ZeroNormal)
        );
    }

    #[test]
    fn intersection_and_foot() {
        let h1 = Hyperplane::from_ints(&[1, 1], int(1)).unwrap();
        let h2 = Hyperplane::from_ints(&[1, -1], int(0)).unwrap();
        assert_eq!(h1.intersect(&h2).unwrap(), vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(h1.foot_point(), vec![ratio(1, 2), ratio(1, 2)]);
        assert!(h1.side(&h1.foot_point()) == Sign::Zero);
    }

    #[test]
    fn display_constraint() {
        let c = LinConstraint::new(&[int(2), int(-1)], Relation::Le, &ratio(1, 2)).unwrap();
        assert_eq!(c.to_string(), "2x - y <= 1/2");
    }
}
