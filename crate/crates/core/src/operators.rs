//! Algebraic interior (`cor`) and algebraic closure (`lin`).
//!
//! `cor` and `lin` are computed from the local star of each face: a point is
//! in `cor(S)` when every direction starts with a closed segment inside `S`,
//! and in `lin(S)` when it is in `S` or some punctured segment ending at it
//! lies in `S`. Faces of an arrangement are convex and relatively open, so
//! both conditions only depend on the flags of the faces around the point.
//!
//! The topological closure and interior are computed independently from the
//! sign-vector face order, and a pointwise germ oracle evaluates the segment
//! conditions directly; both serve as cross-checks.

use crate::arrangement::{Arrangement, FaceId, FaceKind};
use crate::error::EngineError;
use crate::rational::{midpoint, Point, Rational, Sign};
use crate::set::FlaggedSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;
use std::cmp::Ordering;

/// Algebraic interior.
pub fn cor(s: &FlaggedSet) -> FlaggedSet {
    let arr = s.arrangement();
    s.with_flags(
        arr.faces()
            .iter()
            .enumerate()
            .map(|(id, f)| s.flag(id) && f.star.iter().all(|&g| s.flag(g)))
            .collect(),
    )
}

/// Algebraic closure.
pub fn lin(s: &FlaggedSet) -> FlaggedSet {
    let arr = s.arrangement();
    s.with_flags(
        arr.faces()
            .iter()
            .enumerate()
            .map(|(id, f)| s.flag(id) || f.star.iter().any(|&g| s.flag(g)))
            .collect(),
    )
}

/// `F ≤ G` in the face poset: `F` lies in the closure of `G`.
fn in_closure_of(f: &[Sign], g: &[Sign]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| a == Sign::Zero || a == b)
}

/// Topological closure: the union of the closures of all flagged faces.
pub fn topo_closure(s: &FlaggedSet) -> FlaggedSet {
    let arr = s.arrangement();
    let flagged: Vec<&[Sign]> = arr
        .faces()
        .iter()
        .enumerate()
        .filter(|&(id, _)| s.flag(id))
        .map(|(_, f)| f.signs.as_slice())
        .collect();
    s.with_flags(
        arr.faces()
            .iter()
            .map(|f| flagged.iter().any(|g| in_closure_of(&f.signs, g)))
            .collect(),
    )
}

pub fn topo_interior(s: &FlaggedSet) -> FlaggedSet {
    topo_closure(&s.complement()).complement()
}

pub fn is_algebraically_open(s: &FlaggedSet) -> bool {
    cor(s).flags() == s.flags()
}

pub fn is_algebraically_closed(s: &FlaggedSet) -> bool {
    lin(s).flags() == s.flags()
}

/// The half-open segment `x + t·d`, `t → 0⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermProbe {
    base: Point,
    direction: Vec<BigInt>,
}

impl GermProbe {
    pub fn new(base: Point, direction: Vec<BigInt>) -> Result<GermProbe, EngineError> {
        if base.len() != direction.len() {
            return Err(EngineError::DimensionMismatch {
                expected: base.len(),
                found: direction.len(),
            });
        }
        if direction.iter().all(|c| c.is_zero()) {
            return Err(EngineError::ZeroNormal);
        }
        Ok(GermProbe { base, direction })
    }

    pub fn from_ints(base: Point, direction: &[i64]) -> Result<GermProbe, EngineError> {
        Self::new(base, direction.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn direction(&self) -> &[BigInt] {
        &self.direction
    }
}

/// Face reached by `x + t·d` for small `t > 0`, given the sign vector of `x`.
fn germ_face(arr: &Arrangement, base_signs: &[Sign], d: &[BigInt]) -> FaceId {
    let signs: Vec<Sign> = base_signs
        .iter()
        .zip(arr.lines())
        .map(|(&s, h)| if s == Sign::Zero { h.dir_sign(d) } else { s })
        .collect();
    arr.face_of_signs(&signs)
        .expect("perturbed sign vector names a face")
}

/// Whether `x + t·d ∈ S` for all sufficiently small `t > 0`.
pub fn germ_member(s: &FlaggedSet, probe: &GermProbe) -> bool {
    let arr = s.arrangement();
    assert_eq!(probe.base.len(), arr.dim(), "probe dimension mismatch");
    let signs = arr.signs_of(&probe.base);
    s.flag(germ_face(arr, &signs, &probe.direction))
}

fn half_plane_upper(d: &[BigInt]) -> bool {
    d[1].is_positive() || (d[1].is_zero() && d[0].is_positive())
}

fn cross(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn angular_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    match (half_plane_upper(a), half_plane_upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => match cross(a, b) {
            c if c.is_positive() => Ordering::Less,
            c if c.is_negative() => Ordering::Greater,
            _ => Ordering::Equal,
        },
    }
}

/// One direction from each germ class at a point whose sign vector is
/// `base_signs`: both directions along every line through the point, and one
/// direction inside every angular sector between consecutive such lines.
/// A single direction suffices when no line passes through the point.
pub fn germ_directions(arr: &Arrangement, base_signs: &[Sign]) -> Vec<Vec<BigInt>> {
    if arr.dim() == 1 {
        return vec![vec![BigInt::from(1)], vec![BigInt::from(-1)]];
    }
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for (h, &s) in arr.lines().iter().zip(base_signs) {
        if s == Sign::Zero {
            let d = h.direction();
            rays.push(d.iter().map(|c| -c).collect());
            rays.push(d);
        }
    }
    if rays.is_empty() {
        return vec![vec![BigInt::from(1), BigInt::from(0)]];
    }
    rays.sort_by(|a, b| angular_cmp(a, b));
    let mut out = rays.clone();
    for k in 0..rays.len() {
        let (a, b) = (&rays[k], &rays[(k + 1) % rays.len()]);
        if cross(a, b).is_positive() {
            out.push(vec![&a[0] + &b[0], &a[1] + &b[1]]);
        } else {
            out.push(vec![-a[1].clone(), a[0].clone()]);
        }
    }
    out
}

/// Pointwise oracle for `lin`: `x ∈ S`, or some germ class from `x` lies in `S`.
pub fn lin_pointwise(s: &FlaggedSet, x: &[Rational]) -> bool {
    let arr = s.arrangement();
    let signs = arr.signs_of(x);
    s.flag(arr.face_of_signs(&signs).expect("located"))
        || germ_directions(arr, &signs)
            .iter()
            .any(|d| s.flag(germ_face(arr, &signs, d)))
}

/// Pointwise oracle for `cor`: `x ∈ S` and every germ class from `x` lies in `S`.
pub fn cor_pointwise(s: &FlaggedSet, x: &[Rational]) -> bool {
    let arr = s.arrangement();
    let signs = arr.signs_of(x);
    s.flag(arr.face_of_signs(&signs).expect("located"))
        && germ_directions(arr, &signs)
            .iter()
            .all(|d| s.flag(germ_face(arr, &signs, d)))
}

/// Germ classes evaluated once at every face representative of an
/// arrangement, so that the pointwise oracles can be applied to many sets
/// over the same arrangement.
pub struct GermTable {
    at: Vec<(FaceId, Vec<FaceId>)>,
}

impl GermTable {
    pub fn new(arr: &Arrangement) -> GermTable {
        let at = arr
            .faces()
            .iter()
            .map(|f| {
                let signs = arr.signs_of(&f.rep);
                let here = arr.face_of_signs(&signs).expect("located");
                let reach = germ_directions(arr, &signs)
                    .iter()
                    .map(|d| germ_face(arr, &signs, d))
                    .collect();
                (here, reach)
            })
            .collect();
        GermTable { at }
    }

    pub fn lin(&self, s: &FlaggedSet) -> FlaggedSet {
        s.with_flags(
            self.at
                .iter()
                .map(|(here, reach)| s.flag(*here) || reach.iter().any(|&g| s.flag(g)))
                .collect(),
        )
    }

    pub fn cor(&self, s: &FlaggedSet) -> FlaggedSet {
        s.with_flags(
            self.at
                .iter()
                .map(|(here, reach)| s.flag(*here) && reach.iter().all(|&g| s.flag(g)))
                .collect(),
        )
    }
}

/// Faces of a convex closed set `l` forming its relative interior.
fn relative_interior(l: &FlaggedSet) -> Vec<bool> {
    let arr = l.arrangement();
    let affine_dim = (0..arr.len())
        .filter(|&id| l.flag(id))
        .map(|id| arr.face_dim(id))
        .max();
    match affine_dim {
        None => vec![false; arr.len()],
        Some(d) if d == arr.dim() => cor(l).flags().to_vec(),
        Some(0) => l.flags().to_vec(),
        Some(_) => {
            // A segment, ray or line in the plane: all flagged faces lie on
            // one line; interior vertices are flanked by flagged edges.
            let mut out = vec![false; arr.len()];
            let carrier = (0..arr.lines().len()).find(|&i| {
                (0..arr.len())
                    .filter(|&id| l.flag(id))
                    .all(|id| arr.face(id).signs[i] == Sign::Zero)
            });
            let Some(line) = carrier else {
                return out;
            };
            let trace = &arr.traces()[line];
            for (pos, &id) in trace.iter().enumerate() {
                if !l.flag(id) {
                    continue;
                }
                out[id] = match arr.face(id).kind {
                    FaceKind::Vertex => l.flag(trace[pos - 1]) && l.flag(trace[pos + 1]),
                    _ => true,
                };
            }
            out
        }
    }
}

/// Smallest intersection of closed arrangement half-spaces containing `l`.
fn supporting_hull(l: &FlaggedSet) -> Vec<bool> {
    let arr = l.arrangement();
    let flagged: Vec<FaceId> = (0..arr.len()).filter(|&id| l.flag(id)).collect();
    let excluded: Vec<Option<Sign>> = (0..arr.lines().len())
        .map(|i| {
            let has = |s: Sign| flagged.iter().any(|&id| arr.face(id).signs[i] == s);
            match (has(Sign::Neg), has(Sign::Pos)) {
                (true, true) => None,
                (false, _) => Some(Sign::Neg),
                (true, false) => Some(Sign::Pos),
            }
        })
        .collect();
    // A line carrying all of `l` excludes both open sides.
    let carriers: Vec<bool> = (0..arr.lines().len())
        .map(|i| flagged.iter().all(|&id| arr.face(id).signs[i] == Sign::Zero))
        .collect();
    arr.faces()
        .iter()
        .map(|f| {
            f.signs.iter().enumerate().all(|(i, &s)| {
                if carriers[i] {
                    s == Sign::Zero
                } else {
                    excluded[i] != Some(s)
                }
            })
        })
        .collect()
}

/// Convexity decision on the arrangement:
/// (i) `lin(S)` equals its hull by supporting arrangement half-spaces,
/// (ii) the relative interior of `lin(S)` lies in `S`,
/// (iii) every line trace of `S` is a single interval.
pub fn is_convex(s: &FlaggedSet) -> bool {
    if s.is_empty() {
        return true;
    }
    let l = lin(s);
    if supporting_hull(&l) != l.flags() {
        return false;
    }
    let relint = relative_interior(&l);
    if relint.iter().zip(s.flags()).any(|(&r, &f)| r && !f) {
        return false;
    }
    s.arrangement().traces().iter().all(|trace| {
        let runs = trace
            .windows(2)
            .filter(|w| s.flag(w[0]) != s.flag(w[1]))
            .count()
            + usize::from(s.flag(trace[0]))
            + usize::from(s.flag(*trace.last().expect("nonempty trace")));
        runs <= 2
    })
}

/// Randomized convexity refutation: samples member points (face
/// representatives plus random box points) and returns a pair whose midpoint
/// leaves the set.
pub fn midpoint_violation<R: Rng>(s: &FlaggedSet, rng: &mut R, random_points: usize) -> Option<(Point, Point)> {
    let arr = s.arrangement();
    let mut pts: Vec<Point> = (0..arr.len())
        .filter(|&id| s.flag(id))
        .map(|id| arr.face(id).rep.clone())
        .collect();
    for _ in 0..random_points {
        let p: Point = (0..arr.dim())
            .map(|_| Rational::new(rng.gen_range(-24..=24).into(), rng.gen_range(1..=4).into()))
            .collect();
        if s.member(&p) {
            pts.push(p);
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if !s.member(&midpoint(&pts[i], &pts[j])) {
                return Some((pts[i].clone(), pts[j].clone()));
            }
        }
    }
    None
}

/// Outcome of checking one set identity on a seed.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorReport {
    pub identity: String,
    pub seed: FlaggedSet,
    pub lhs: FlaggedSet,
    pub rhs: FlaggedSet,
    pub verdict: bool,
}

impl OperatorReport {
    pub fn check(identity: impl Into<String>, seed: &FlaggedSet, lhs: FlaggedSet, rhs: FlaggedSet) -> Result<OperatorReport, EngineError> {
        let verdict = lhs.equal(&rhs)?;
        Ok(OperatorReport {
            identity: identity.into(),
            seed: seed.clone(),
            lhs,
            rhs,
            verdict,
        })
    }
}

/// Basic identities evaluated on one seed: `cor` idempotence, the
/// interior–closure duality, and (for convex seeds with nonempty interior)
/// `lin∘cor = lin` and `cor∘lin = cor`.
pub fn identity_reports(s: &FlaggedSet) -> Result<Vec<OperatorReport>, EngineError> {
    let mut out = vec![
        OperatorReport::check("cor(cor(S)) = cor(S)", s, cor(&cor(s)), cor(s))?,
        OperatorReport::check("X \\ cor(S) = lin(X \\ S)", s, cor(s).complement(), lin(&s.complement()))?,
    ];
    if is_convex(s) && !cor(s).is_empty() {
        out.push(OperatorReport::check("lin(cor(S)) = lin(S)", s, lin(&cor(s)), lin(s))?);
        out.push(OperatorReport::check("cor(lin(S)) = cor(S)", s, cor(&lin(s)), cor(s))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Formula, Relation, Space};
    use crate::rational::{int, int_point, point as pt, ratio};
    use crate::set::shapes::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diagonal() -> FlaggedSet {
        FlaggedSet::from_formula(&Formula::atom(&[int(1), int(-1)], Relation::Eq, &int(0)).unwrap(), Space::PLANE).unwrap()
    }

    #[test]
    fn cor_of_closed_square_is_open_square() {
        assert!(cor(&unit_square(true)).equal(&unit_square(false)).unwrap());
    }

    #[test]
    fn cor_of_segment_is_empty() {
        let seg = segment(&int_point(&[0, 0]), &int_point(&[1, 0]), true, true);
        assert!(cor(&seg).is_empty());
        assert!(lin(&seg).equal(&seg).unwrap());
    }

    #[test]
    fn cor_of_square_with_closed_left_edge() {
        let f = Formula::and([
            Formula::atom(&[int(1), int(0)], Relation::Ge, &int(0)).unwrap(),
            Formula::atom(&[int(1), int(0)], Relation::Lt, &int(1)).unwrap(),
            Formula::atom(&[int(0), int(1)], Relation::Gt, &int(0)).unwrap(),
            Formula::atom(&[int(0), int(1)], Relation::Lt, &int(1)).unwrap(),
        ]);
        let s = FlaggedSet::from_formula(&f, Space::PLANE).unwrap();
        let c = cor(&s);
        assert!(c.equal(&unit_square(false)).unwrap());
        // boundary probes through the pointwise oracle
        for p in [pt(&[(0, 1), (1, 2)]), pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (1, 2)])] {
            assert_eq!(c.member(&p), cor_pointwise(&s, &p));
        }
    }

    #[test]
    fn lin_examples_on_the_line() {
        let open = interval(&int(0), &int(1), false, false);
        assert_eq!(lin(&open).describe(), "[0, 1]");
        let s = point(&[int(0)]).union(&interval(&int(1), &int(2), false, false)).unwrap();
        assert_eq!(lin(&s).describe(), "{0} ∪ [1, 2]");
    }

    #[test]
    fn lin_of_split_square() {
        let s = unit_square(false).difference(&diagonal()).unwrap();
        let l = lin(&s);
        assert!(l.equal(&unit_square(true)).unwrap());
        for (id, f) in l.arrangement().faces().iter().enumerate() {
            assert_eq!(l.flag(id), lin_pointwise(&s, &f.rep));
        }
    }

    #[test]
    fn topological_operators() {
        let open = interval(&int(0), &int(1), false, false);
        assert!(topo_closure(&open).equal(&interval(&int(0), &int(1), true, true)).unwrap());
        assert!(topo_interior(&unit_square(true)).equal(&unit_square(false)).unwrap());
    }

    #[test]
    fn germ_examples() {
        let s = interval(&int(0), &int(1), false, false);
        assert!(germ_member(&s, &GermProbe::from_ints(vec![int(0)], &[1]).unwrap()));
        assert!(!germ_member(&s, &GermProbe::from_ints(vec![int(0)], &[-1]).unwrap()));
        let split = unit_square(false).difference(&diagonal()).unwrap();
        let probe = GermProbe::from_ints(pt(&[(1, 2), (1, 2)]), &[1, 0]).unwrap();
        assert!(germ_member(&split, &probe));
        assert!(!germ_member(&split, &GermProbe::from_ints(pt(&[(1, 2), (1, 2)]), &[1, 1]).unwrap()));
        assert!(GermProbe::from_ints(vec![int(0)], &[0]).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let sq = unit_square(false);
        assert!(lin_pointwise(&sq, &int_point(&[0, 0])));
        assert!(!lin_pointwise(&sq, &int_point(&[-1, 0])));
        assert!(cor_pointwise(&sq, &pt(&[(1, 2), (1, 2)])));
        let half = sq.union(&segment(&int_point(&[0, 0]), &int_point(&[0, 1]), false, false)).unwrap();
        assert!(half.member(&pt(&[(0, 1), (1, 2)])));
        assert!(!cor_pointwise(&half, &pt(&[(0, 1), (1, 2)])));
    }

    #[test]
    fn openness_and_closedness() {
        assert!(is_algebraically_open(&unit_square(false)));
        assert!(!is_algebraically_closed(&unit_square(false)));
        assert!(!is_algebraically_open(&unit_square(true)));
        assert!(is_algebraically_closed(&unit_square(true)));
        let ho = interval(&int(0), &int(1), true, false);
        assert!(!is_algebraically_open(&ho) && !is_algebraically_closed(&ho));
        for space in [Space::LINE, Space::PLANE] {
            let e = FlaggedSet::empty(space);
            let x = FlaggedSet::full(space);
            assert!(cor(&e).is_empty() && lin(&e).is_empty());
            assert!(cor(&x).is_full() && lin(&x).is_full());
        }
    }

    #[test]
    fn convexity_examples() {
        let two = interval(&int(0), &int(1), false, false)
            .union(&interval(&int(1), &int(2), false, false))
            .unwrap();
        assert!(!is_convex(&two));
        assert!(is_convex(&segment(&int_point(&[0, 0]), &int_point(&[1, 0]), true, true)));
        assert!(is_convex(&unit_square(true)));
        assert!(is_convex(&unit_square(false)));
        // open square plus two opposite corners
        let corners = point(&int_point(&[0, 0])).union(&point(&int_point(&[1, 1]))).unwrap();
        let s = unit_square(false).union(&corners).unwrap();
        assert!(is_convex(&s));
        // open square plus two adjacent corners
        let adj = point(&int_point(&[0, 0])).union(&point(&int_point(&[1, 0]))).unwrap();
        let t = unit_square(false).union(&adj).unwrap();
        assert!(!is_convex(&t));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(midpoint_violation(&t, &mut rng, 50).is_some());
        assert!(midpoint_violation(&s, &mut rng, 50).is_none());
        // two disjoint squares
        let far = rect(&int(3), &int(0), &int(4), &int(1), true);
        assert!(!is_convex(&unit_square(true).union(&far).unwrap()));
        // L-shape: closure not convex
        let l_shape = rect(&int(0), &int(0), &int(2), &int(1), true)
            .union(&rect(&int(0), &int(0), &int(1), &int(2), true))
            .unwrap();
        assert!(!is_convex(&l_shape));
        assert!(is_convex(&FlaggedSet::empty(Space::PLANE)));
        assert!(is_convex(&FlaggedSet::full(Space::PLANE)));
        assert!(!is_convex(&point(&[int(0)]).union(&point(&[int(2)])).unwrap()));
        assert!(is_convex(&point(&[ratio(1, 3)])));
    }

    #[test]
    fn operators_keep_the_line_set() {
        let s = unit_square(false).difference(&diagonal()).unwrap();
        for t in [cor(&s), lin(&s), topo_closure(&s), topo_interior(&s), s.complement()] {
            assert_eq!(t.arrangement().lines(), s.arrangement().lines());
        }
    }

    #[test]
    fn identity_reports_on_square() {
        let reports = identity_reports(&unit_square(true)).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.verdict));
        let json = serde_json::to_value(&reports[0]).unwrap();
        for key in ["identity", "seed", "lhs", "rhs", "verdict"] {
            assert!(json.get(key).is_some());
        }
    }

    #[test]
    fn lin_cor_needs_nonempty_interior() {
        let seg = segment(&int_point(&[0, 0]), &int_point(&[1, 0]), true, true);
        assert!(is_convex(&seg));
        assert!(lin(&cor(&seg)).is_empty());
        assert!(!lin(&cor(&seg)).equal(&lin(&seg)).unwrap());
    }
}
