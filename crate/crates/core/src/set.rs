//! Semilinear sets as flagged arrangements.

use crate::arrangement::{Arrangement, FaceId, FaceKind};
use crate::error::EngineError;
use crate::geometry::{Formula, Hyperplane, Space};
use crate::rational::{format_rational, parse_rational, Rational, Sign};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A finite union of faces of a line arrangement: one membership flag per
/// face. Values are immutable; operations return new sets.
#[derive(Clone)]
pub struct FlaggedSet {
    arr: Arc<Arrangement>,
    flags: Vec<bool>,
}

impl fmt::Debug for FlaggedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlaggedSet({})", serde_json::to_string(&self.to_json()).map_err(|_| fmt::Error)?)
    }
}

impl FlaggedSet {
    pub fn from_flags(arr: Arc<Arrangement>, flags: Vec<bool>) -> FlaggedSet {
        assert_eq!(arr.len(), flags.len(), "one flag per face");
        FlaggedSet { arr, flags }
    }

    pub fn from_fn(arr: Arc<Arrangement>, mut flag: impl FnMut(FaceId) -> bool) -> FlaggedSet {
        let flags = (0..arr.len()).map(&mut flag).collect();
        FlaggedSet { arr, flags }
    }

    pub fn empty(space: Space) -> FlaggedSet {
        FlaggedSet::from_flags(Arc::new(Arrangement::empty(space)), vec![false])
    }

    pub fn full(space: Space) -> FlaggedSet {
        FlaggedSet::from_flags(Arc::new(Arrangement::empty(space)), vec![true])
    }

    /// Flags each face of the arrangement of the formula's hyperplanes by
    /// evaluating the formula on the face.
    pub fn from_formula(formula: &Formula, space: Space) -> Result<FlaggedSet, EngineError> {
        let planes = formula.hyperplanes();
        for h in &planes {
            space.check(h.dim())?;
        }
        let arr = Arc::new(Arrangement::build(planes, space)?);
        let flags = arr
            .faces()
            .iter()
            .map(|face| {
                formula.eval_signs(&|h: &Hyperplane| {
                    let i = arr.line_index(h).expect("formula plane in arrangement");
                    face.signs[i]
                })
            })
            .collect();
        Ok(FlaggedSet { arr, flags })
    }

    pub fn space(&self) -> Space {
        self.arr.space()
    }

    pub fn dim(&self) -> usize {
        self.arr.dim()
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn flag(&self, id: FaceId) -> bool {
        self.flags[id]
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|&f| f)
    }

    pub fn is_full(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }

    /// Same arrangement, new flags.
    pub fn with_flags(&self, flags: Vec<bool>) -> FlaggedSet {
        FlaggedSet::from_flags(self.arr.clone(), flags)
    }

    /// # Panics
    /// If `x` does not have the set's dimension.
    pub fn member(&self, x: &[Rational]) -> bool {
        self.flags[self.arr.locate(x)]
    }

    pub fn complement(&self) -> FlaggedSet {
        self.with_flags(self.flags.iter().map(|f| !f).collect())
    }

    /// Re-expresses the set over the arrangement of `lines` together with its
    /// own lines.
    pub fn refine_with(&self, lines: &[Hyperplane]) -> Result<FlaggedSet, EngineError> {
        let mut all: Vec<Hyperplane> = self.arr.lines().to_vec();
        all.extend_from_slice(lines);
        let arr = Arc::new(Arrangement::build(all, self.space())?);
        Ok(self.transfer(arr))
    }

    /// Flags of a refining arrangement, read off by projecting each new face's
    /// sign vector onto the old lines.
    fn transfer(&self, arr: Arc<Arrangement>) -> FlaggedSet {
        if arr.lines() == self.arr.lines() {
            return FlaggedSet::from_flags(arr, self.flags.clone());
        }
        let map: Vec<usize> = self
            .arr
            .lines()
            .iter()
            .map(|h| arr.line_index(h).expect("refinement contains the old lines"))
            .collect();
        let flags = arr
            .faces()
            .iter()
            .map(|face| {
                let projected: Vec<Sign> = map.iter().map(|&i| face.signs[i]).collect();
                let old = self
                    .arr
                    .face_of_signs(&projected)
                    .expect("projected sign vector names an old face");
                self.flags[old]
            })
            .collect();
        FlaggedSet::from_flags(arr, flags)
    }

    /// Both sets over the arrangement of the union of their lines.
    pub fn refine(&self, other: &FlaggedSet) -> Result<(FlaggedSet, FlaggedSet), EngineError> {
        self.space().check(other.dim())?;
        if self.same_arrangement(other) {
            return Ok((self.clone(), other.clone()));
        }
        let mut all: Vec<Hyperplane> = self.arr.lines().to_vec();
        all.extend_from_slice(other.arr.lines());
        let arr = Arc::new(Arrangement::build(all, self.space())?);
        Ok((self.transfer(arr.clone()), other.transfer(arr)))
    }

    fn same_arrangement(&self, other: &FlaggedSet) -> bool {
        Arc::ptr_eq(&self.arr, &other.arr) || self.arr.lines() == other.arr.lines()
    }

    fn combine(&self, other: &FlaggedSet, op: impl Fn(bool, bool) -> bool) -> Result<FlaggedSet, EngineError> {
        let (a, b) = self.refine(other)?;
        let flags = a.flags.iter().zip(&b.flags).map(|(&x, &y)| op(x, y)).collect();
        Ok(a.with_flags(flags))
    }

    pub fn union(&self, other: &FlaggedSet) -> Result<FlaggedSet, EngineError> {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersect(&self, other: &FlaggedSet) -> Result<FlaggedSet, EngineError> {
        self.combine(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &FlaggedSet) -> Result<FlaggedSet, EngineError> {
        self.combine(other, |x, y| x && !y)
    }

    /// Semantic equality: flags agree over the common refinement.
    pub fn equal(&self, other: &FlaggedSet) -> Result<bool, EngineError> {
        let (a, b) = self.refine(other)?;
        Ok(a.flags == b.flags)
    }

    pub fn is_subset(&self, other: &FlaggedSet) -> Result<bool, EngineError> {
        let (a, b) = self.refine(other)?;
        Ok(a.flags.iter().zip(&b.flags).all(|(&x, &y)| !x || y))
    }

    /// Drops lines whose removal leaves the set unchanged, one at a time in
    /// canonical order.
    pub fn prune(&self) -> FlaggedSet {
        let mut current = self.clone();
        let mut i = 0;
        while i < current.arr.lines().len() {
            let mut lines = current.arr.lines().to_vec();
            lines.remove(i);
            let arr = Arc::new(Arrangement::build(lines, self.space()).expect("fewer lines"));
            let candidate = FlaggedSet::from_fn(arr.clone(), |id| current.member(&arr.face(id).rep));
            if candidate.equal(&current).expect("subset of lines") {
                current = candidate;
            } else {
                i += 1;
            }
        }
        current
    }

    pub fn to_json(&self) -> SetJson {
        let split = |range: std::ops::Range<usize>| self.flags[range].to_vec();
        SetJson {
            dim: self.dim(),
            lines: self.arr.lines().iter().map(Hyperplane::to_strings).collect(),
            flags: FlagsJson {
                vertices: split(self.arr.vertex_ids()),
                edges: split(self.arr.edge_ids()),
                cells: split(self.arr.cell_ids()),
            },
        }
    }

    pub fn from_json(json: &SetJson) -> Result<FlaggedSet, EngineError> {
        let space = Space::new(json.dim)?;
        let bad = |m: &str| EngineError::Malformed(m.to_string());
        let mut planes = Vec::with_capacity(json.lines.len());
        for entry in &json.lines {
            if entry.len() != json.dim + 1 {
                return Err(bad("line entries need dim + 1 components"));
            }
            let coeffs = entry[..json.dim]
                .iter()
                .map(|s| s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad("normal must be integer")))
                .collect::<Result<Vec<_>, _>>()?;
            let b = parse_rational(&entry[json.dim]).map_err(|e| bad(&e.to_string()))?;
            let h = Hyperplane::new(&coeffs, &b)?;
            if h.to_strings() != *entry {
                return Err(bad("line is not in canonical form"));
            }
            planes.push(h);
        }
        let arr = Arrangement::build(planes.clone(), space)?;
        if arr.lines() != planes.as_slice() {
            return Err(bad("lines must be sorted and distinct"));
        }
        let f = &json.flags;
        if f.vertices.len() != arr.vertex_count()
            || f.edges.len() != arr.edge_count()
            || f.cells.len() != arr.cell_count()
        {
            return Err(bad("flag counts do not match the arrangement"));
        }
        let flags = f.vertices.iter().chain(&f.edges).chain(&f.cells).copied().collect();
        Ok(FlaggedSet::from_flags(Arc::new(arr), flags))
    }

    /// Human-readable form: interval notation on the line, the JSON encoding
    /// in the plane.
    pub fn describe(&self) -> String {
        if self.dim() != 1 {
            return serde_json::to_string(&self.to_json()).expect("json");
        }
        let pruned = self.prune();
        describe_line(&pruned)
    }
}

fn describe_line(set: &FlaggedSet) -> String {
    if set.is_empty() {
        return "∅".to_string();
    }
    if set.is_full() {
        return "(-∞, ∞)".to_string();
    }
    let arr = set.arrangement();
    let order = &arr.traces()[0];
    let point = |id: FaceId| format_rational(&arr.face(id).rep[0]);
    let mut parts = Vec::new();
    let mut i = 0;
    while i < order.len() {
        if !set.flag(order[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < order.len() && set.flag(order[i + 1]) {
            i += 1;
        }
        let (a, b) = (order[start], order[i]);
        if a == b && arr.face(a).kind == FaceKind::Vertex {
            parts.push(format!("{{{}}}", point(a)));
        } else {
            let left = if arr.face(a).kind == FaceKind::Vertex {
                format!("[{}", point(a))
            } else if start == 0 {
                "(-∞".to_string()
            } else {
                format!("({}", point(order[start - 1]))
            };
            let right = if arr.face(b).kind == FaceKind::Vertex {
                format!("{}]", point(b))
            } else if i == order.len() - 1 {
                "∞)".to_string()
            } else {
                format!("{})", point(order[i + 1]))
            };
            parts.push(format!("{left}, {right}"));
        }
        i += 1;
    }
    parts.join(" ∪ ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetJson {
    pub dim: usize,
    pub lines: Vec<Vec<String>>,
    pub flags: FlagsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub cells: Vec<bool>,
}

impl Serialize for FlaggedSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Constructors for common fixtures.
pub mod shapes {
    use super::*;
    use crate::geometry::Relation;

    fn atom(coeffs: &[Rational], rel: Relation, rhs: &Rational) -> Formula {
        Formula::atom(coeffs, rel, rhs).expect("nonzero normal")
    }

    fn x_axis(dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0.into()); dim];
        v[0] = Rational::from_integer(1.into());
        v
    }

    /// Interval between `lo` and `hi` on the line; the flags say whether each
    /// endpoint is included.
    pub fn interval(lo: &Rational, hi: &Rational, lo_closed: bool, hi_closed: bool) -> FlaggedSet {
        let x = x_axis(1);
        let f = Formula::and([
            atom(&x, if lo_closed { Relation::Ge } else { Relation::Gt }, lo),
            atom(&x, if hi_closed { Relation::Le } else { Relation::Lt }, hi),
        ]);
        FlaggedSet::from_formula(&f, Space::LINE).expect("interval")
    }

    pub fn point(x: &[Rational]) -> FlaggedSet {
        let space = Space::new(x.len()).expect("dimension 1 or 2");
        let parts = (0..x.len()).map(|i| {
            let mut e = vec![Rational::from_integer(0.into()); x.len()];
            e[i] = Rational::from_integer(1.into());
            atom(&e, Relation::Eq, &x[i])
        });
        FlaggedSet::from_formula(&Formula::and(parts), space).expect("point")
    }

    /// Axis-aligned box `[x0, x1] × [y0, y1]`, closed or open.
    pub fn rect(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational, closed: bool) -> FlaggedSet {
        let (lo, hi) = if closed {
            (Relation::Ge, Relation::Le)
        } else {
            (Relation::Gt, Relation::Lt)
        };
        let ex = [Rational::from_integer(1.into()), Rational::from_integer(0.into())];
        let ey = [Rational::from_integer(0.into()), Rational::from_integer(1.into())];
        let f = Formula::and([
            atom(&ex, lo, x0),
            atom(&ex, hi, x1),
            atom(&ey, lo, y0),
            atom(&ey, hi, y1),
        ]);
        FlaggedSet::from_formula(&f, Space::PLANE).expect("rect")
    }

    pub fn unit_square(closed: bool) -> FlaggedSet {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        rect(&zero, &zero, &one, &one, closed)
    }

    /// Segment between two points of the plane with endpoint inclusion flags.
    pub fn segment(p: &[Rational], q: &[Rational], p_closed: bool, q_closed: bool) -> FlaggedSet {
        let dir: Vec<Rational> = q.iter().zip(p).map(|(a, b)| a - b).collect();
        let normal = vec![-dir[1].clone(), dir[0].clone()];
        let on_line = atom(&normal, Relation::Eq, &(&normal[0] * &p[0] + &normal[1] * &p[1]));
        let along = |x: &[Rational]| &dir[0] * &x[0] + &dir[1] * &x[1];
        let f = Formula::and([
            on_line,
            atom(&dir, if p_closed { Relation::Ge } else { Relation::Gt }, &along(p)),
            atom(&dir, if q_closed { Relation::Le } else { Relation::Lt }, &along(q)),
        ]);
        FlaggedSet::from_formula(&f, Space::PLANE).expect("segment")
    }
}
