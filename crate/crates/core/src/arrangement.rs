//! Line arrangements in the line and the plane.
//!
//! An arrangement partitions the ambient space into relatively open convex
//! faces: vertices, edges and 2-cells in the plane; breakpoints and open
//! intervals on the line. Every face is identified by its sign vector over the
//! lines, which makes point location exact: compute the signs of `a·x − b` and
//! look the vector up.
//!
//! Faces are stored in canonical construction order: vertices sorted
//! lexicographically, then edges grouped by line and ordered along it, then
//! cells sorted by sign vector. The same line set always yields the same face
//! numbering.

use crate::error::EngineError;
use crate::geometry::{Hyperplane, Space};
use crate::rational::{midpoint, Point, Rational, Sign};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

pub const MAX_LINES: usize = 64;

pub type FaceId = usize;
pub type SignVector = Vec<Sign>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceKind {
    /// A point: a line crossing in the plane, a breakpoint on the line.
    Vertex,
    /// An open segment, ray or full line lying on one line of the plane.
    Edge,
    /// A top-dimensional open region: a 2-cell, or an open interval in dimension 1.
    Cell,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub kind: FaceKind,
    pub signs: SignVector,
    /// A rational point of the face.
    pub rep: Point,
    /// Faces of higher dimension whose closure contains this face.
    pub star: Vec<FaceId>,
    /// Supporting line of an edge.
    pub line: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    space: Space,
    lines: Vec<Hyperplane>,
    faces: Vec<Face>,
    n_vertices: usize,
    n_edges: usize,
    index: HashMap<SignVector, FaceId>,
    traces: Vec<Vec<FaceId>>,
}

impl Arrangement {
    /// Builds the full face structure of the arrangement of `lines`.
    /// Duplicates are removed and lines are put in canonical order first.
    pub fn build(lines: impl IntoIterator<Item = Hyperplane>, space: Space) -> Result<Arrangement, EngineError> {
        let mut lines: Vec<Hyperplane> = lines.into_iter().collect();
        for l in &lines {
            space.check(l.dim())?;
        }
        lines.sort();
        lines.dedup();
        if lines.len() > MAX_LINES {
            return Err(EngineError::Capacity {
                lines: lines.len(),
                limit: MAX_LINES,
            });
        }
        let mut arr = match space.dim() {
            1 => build_line(lines),
            _ => build_plane(lines),
        };
        arr.index = arr
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.signs.clone(), i))
            .collect();
        debug_assert_eq!(arr.index.len(), arr.faces.len());
        Ok(arr)
    }

    pub fn empty(space: Space) -> Arrangement {
        Self::build(Vec::new(), space).expect("empty arrangement")
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn lines(&self) -> &[Hyperplane] {
        &self.lines
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn cell_count(&self) -> usize {
        self.faces.len() - self.n_vertices - self.n_edges
    }

    pub fn vertex_ids(&self) -> std::ops::Range<FaceId> {
        0..self.n_vertices
    }

    pub fn edge_ids(&self) -> std::ops::Range<FaceId> {
        self.n_vertices..self.n_vertices + self.n_edges
    }

    pub fn cell_ids(&self) -> std::ops::Range<FaceId> {
        self.n_vertices + self.n_edges..self.faces.len()
    }

    /// Dimension of a face.
    pub fn face_dim(&self, id: FaceId) -> usize {
        match self.faces[id].kind {
            FaceKind::Vertex => 0,
            FaceKind::Edge => 1,
            FaceKind::Cell => self.dim(),
        }
    }

    /// Face sequences along which one-dimensional traces are read: one per
    /// line in the plane (alternating edges and vertices in line order), and
    /// the whole axis on the line.
    pub fn traces(&self) -> &[Vec<FaceId>] {
        &self.traces
    }

    pub fn line_index(&self, h: &Hyperplane) -> Option<usize> {
        self.lines.binary_search(h).ok()
    }

    pub fn signs_of(&self, x: &[Rational]) -> SignVector {
        self.lines.iter().map(|h| h.side(x)).collect()
    }

    pub fn face_of_signs(&self, signs: &[Sign]) -> Option<FaceId> {
        self.index.get(signs).copied()
    }

    /// The unique face containing `x`.
    ///
    /// # Panics
    /// If `x` does not have the arrangement's dimension.
    pub fn locate(&self, x: &[Rational]) -> FaceId {
        assert_eq!(x.len(), self.dim(), "point dimension mismatch");
        let signs = self.signs_of(x);
        self.face_of_signs(&signs)
            .expect("faces of an arrangement partition the space")
    }
}

fn build_line(lines: Vec<Hyperplane>) -> Arrangement {
    // Normals are all [1] after normalization, so canonical order sorts the
    // breakpoints.
    let breaks: Vec<Rational> = lines.iter().map(|h| h.offset().clone()).collect();
    let k = breaks.len();
    let signs = |x: &Point| -> SignVector { lines.iter().map(|h| h.side(x)).collect() };
    let mut faces = Vec::with_capacity(2 * k + 1);
    for b in &breaks {
        let rep = vec![b.clone()];
        faces.push(Face {
            kind: FaceKind::Vertex,
            signs: signs(&rep),
            rep,
            star: Vec::new(),
            line: None,
        });
    }
    for i in 0..=k {
        let rep = if k == 0 {
            vec![Rational::zero()]
        } else if i == 0 {
            vec![&breaks[0] - Rational::one()]
        } else if i == k {
            vec![&breaks[k - 1] + Rational::one()]
        } else {
            vec![(&breaks[i - 1] + &breaks[i]) / Rational::from_integer(2.into())]
        };
        faces.push(Face {
            kind: FaceKind::Cell,
            signs: signs(&rep),
            rep,
            star: Vec::new(),
            line: None,
        });
    }
    for (v, face) in faces.iter_mut().enumerate().take(k) {
        face.star = vec![k + v, k + v + 1];
    }
    let mut trace = Vec::with_capacity(2 * k + 1);
    for i in 0..k {
        trace.push(k + i);
        trace.push(i);
    }
    trace.push(2 * k);
    Arrangement {
        space: Space::LINE,
        lines,
        faces,
        n_vertices: k,
        n_edges: 0,
        index: HashMap::new(),
        traces: vec![trace],
    }
}

fn to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn build_plane(lines: Vec<Hyperplane>) -> Arrangement {
    let n = lines.len();
    let signs = |x: &Point| -> SignVector { lines.iter().map(|h| h.side(x)).collect() };

    let mut crossings: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(p) = lines[i].intersect(&lines[j]) {
                let incident = crossings.entry(p).or_default();
                for l in [i, j] {
                    if !incident.contains(&l) {
                        incident.push(l);
                    }
                }
            }
        }
    }
    let mut faces: Vec<Face> = Vec::new();
    let mut vertex_lines: Vec<Vec<usize>> = Vec::new();
    for (p, incident) in crossings {
        faces.push(Face {
            kind: FaceKind::Vertex,
            signs: signs(&p),
            rep: p,
            star: Vec::new(),
            line: None,
        });
        vertex_lines.push(incident);
    }
    let n_vertices = faces.len();

    let mut traces: Vec<Vec<FaceId>> = Vec::with_capacity(n);
    for (li, line) in lines.iter().enumerate() {
        let dir = line.direction();
        let dir_q = to_q(&dir);
        let along = |p: &Point| -> Rational { p.iter().zip(&dir_q).map(|(a, b)| a * b).sum() };
        let mut on_line: Vec<FaceId> = (0..n_vertices)
            .filter(|&v| vertex_lines[v].contains(&li))
            .collect();
        on_line.sort_by_key(|&v| along(&faces[v].rep));
        let mut trace = Vec::with_capacity(2 * on_line.len() + 1);
        let push_edge = |faces: &mut Vec<Face>, trace: &mut Vec<FaceId>, rep: Point| {
            let id = faces.len();
            faces.push(Face {
                kind: FaceKind::Edge,
                signs: signs(&rep),
                rep,
                star: Vec::new(),
                line: Some(li),
            });
            trace.push(id);
        };
        if on_line.is_empty() {
            push_edge(&mut faces, &mut trace, line.foot_point());
        } else {
            let first = &faces[on_line[0]].rep;
            let rep: Point = first.iter().zip(&dir_q).map(|(p, d)| p - d).collect();
            push_edge(&mut faces, &mut trace, rep);
            for w in 0..on_line.len() {
                trace.push(on_line[w]);
                let cur = faces[on_line[w]].rep.clone();
                let rep = match on_line.get(w + 1) {
                    Some(&next) => midpoint(&cur, &faces[next].rep),
                    None => cur.iter().zip(&dir_q).map(|(p, d)| p + d).collect(),
                };
                push_edge(&mut faces, &mut trace, rep);
            }
        }
        traces.push(trace);
    }
    let n_edges = faces.len() - n_vertices;

    // Each 2-cell is bounded by at least one edge; its sign vector is the
    // edge's with the supporting line's zero replaced by the side.
    let mut cells: BTreeMap<SignVector, (FaceId, Sign)> = BTreeMap::new();
    for (e, face) in faces.iter().enumerate().skip(n_vertices).take(n_edges) {
        let li = face.line.expect("edge line");
        for side in [Sign::Neg, Sign::Pos] {
            let mut sv = face.signs.clone();
            sv[li] = side;
            cells.entry(sv).or_insert((e, side));
        }
    }
    if n == 0 {
        faces.push(Face {
            kind: FaceKind::Cell,
            signs: Vec::new(),
            rep: vec![Rational::zero(), Rational::zero()],
            star: Vec::new(),
            line: None,
        });
    }
    for (sv, (e, side)) in cells {
        let rep = step_off_edge(&lines, &faces[e], side);
        debug_assert_eq!(signs(&rep), sv);
        faces.push(Face {
            kind: FaceKind::Cell,
            signs: sv,
            rep,
            star: Vec::new(),
            line: None,
        });
    }

    let index: HashMap<SignVector, FaceId> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.signs.clone(), i))
        .collect();
    let side_cells = |faces: &[Face], e: FaceId| -> [FaceId; 2] {
        let li = faces[e].line.expect("edge line");
        [Sign::Neg, Sign::Pos].map(|side| {
            let mut sv = faces[e].signs.clone();
            sv[li] = side;
            index[&sv]
        })
    };
    for e in n_vertices..n_vertices + n_edges {
        let star = side_cells(&faces, e).to_vec();
        faces[e].star = star;
    }
    for trace in &traces {
        for (pos, &id) in trace.iter().enumerate() {
            if faces[id].kind != FaceKind::Vertex {
                continue;
            }
            let mut star = faces[id].star.clone();
            for e in [trace[pos - 1], trace[pos + 1]] {
                star.push(e);
                star.extend(side_cells(&faces, e));
            }
            faces[id].star = star;
        }
    }
    for f in faces.iter_mut().take(n_vertices) {
        f.star.sort_unstable();
        f.star.dedup();
    }
    Arrangement {
        space: Space::PLANE,
        lines,
        faces,
        n_vertices,
        n_edges,
        index: HashMap::new(),
        traces,
    }
}

/// A point of the cell on `side` of `edge`: move from the edge representative
/// along the (signed) normal, stopping halfway to the first line crossed.
fn step_off_edge(lines: &[Hyperplane], edge: &Face, side: Sign) -> Point {
    let li = edge.line.expect("edge line");
    let mut normal = to_q(lines[li].normal());
    if side == Sign::Neg {
        normal.iter_mut().for_each(|c| *c = -c.clone());
    }
    let p = &edge.rep;
    let mut step = Rational::one();
    for (j, h) in lines.iter().enumerate() {
        if j == li {
            continue;
        }
        let rate: Rational = h.normal_q().iter().zip(&normal).map(|(a, b)| a * b).sum();
        if rate.is_zero() {
            continue;
        }
        let hit = -h.eval(p) / rate;
        if hit.is_positive() {
            let half = hit / Rational::from_integer(2.into());
            if half < step {
                step = half;
            }
        }
    }
    p.iter().zip(&normal).map(|(x, d)| x + &step * d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn line(a: &[i64], b: i64) -> Hyperplane {
        Hyperplane::from_ints(a, int(b)).unwrap()
    }

    #[test]
    fn two_crossing_lines() {
        let arr = Arrangement::build([line(&[1, 0], 0), line(&[0, 1], 0)], Space::PLANE).unwrap();
        assert_eq!(arr.vertex_count(), 1);
        assert_eq!(arr.edge_count(), 4);
        assert_eq!(arr.cell_count(), 4);
        assert_eq!(arr.face(0).star.len(), 8);
    }

    #[test]
    fn parallel_lines_make_strips() {
        let lines = [0, 1, 2].map(|b| line(&[1, 0], b));
        let arr = Arrangement::build(lines, Space::PLANE).unwrap();
        assert_eq!(arr.vertex_count(), 0);
        assert_eq!(arr.edge_count(), 3);
        assert_eq!(arr.cell_count(), 4);
    }

    #[test]
    fn duplicates_are_merged() {
        let a = Hyperplane::new(&[int(2), int(0)], &int(2)).unwrap();
        let b = Hyperplane::new(&[int(-1), int(0)], &int(-1)).unwrap();
        let arr = Arrangement::build([a, b], Space::PLANE).unwrap();
        assert_eq!(arr.lines().len(), 1);
        assert_eq!(arr.len(), 3);
    }

    #[test]
    fn concurrent_lines_share_a_vertex() {
        let lines = [line(&[1, 0], 0), line(&[0, 1], 0), line(&[1, 1], 0)];
        let arr = Arrangement::build(lines, Space::PLANE).unwrap();
        assert_eq!(arr.vertex_count(), 1);
        assert_eq!(arr.edge_count(), 6);
        assert_eq!(arr.cell_count(), 6);
        assert_eq!(arr.face(0).star.len(), 12);
    }

    #[test]
    fn line_arrangement_intervals() {
        let lines = [2, 0].map(|b| line(&[1], b));
        let arr = Arrangement::build(lines, Space::LINE).unwrap();
        assert_eq!(arr.vertex_count(), 2);
        assert_eq!(arr.cell_count(), 3);
        assert_eq!(arr.face(arr.locate(&[ratio(1, 3)])).kind, FaceKind::Cell);
        assert_eq!(arr.locate(&[int(2)]), 1);
        assert_eq!(arr.traces()[0].len(), 5);
    }

    #[test]
    fn empty_arrangement_is_one_cell() {
        for space in [Space::LINE, Space::PLANE] {
            let arr = Arrangement::empty(space);
            assert_eq!(arr.len(), 1);
            assert_eq!(arr.locate(&space.origin()), 0);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let lines: Vec<_> = (0..65).map(|b| line(&[1, 0], b)).collect();
        assert!(matches!(
            Arrangement::build(lines, Space::PLANE),
            Err(EngineError::Capacity { lines: 65, .. })
        ));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(Arrangement::build([line(&[1], 0)], Space::PLANE).is_err());
    }

    #[test]
    fn representatives_locate_to_their_faces() {
        let lines = [
            line(&[1, 0], 0),
            line(&[0, 1], 0),
            line(&[1, 1], 1),
            line(&[1, -1], 3),
            line(&[1, 0], 2),
        ];
        let arr = Arrangement::build(lines, Space::PLANE).unwrap();
        for (id, f) in arr.faces().iter().enumerate() {
            assert_eq!(arr.locate(&f.rep), id);
        }
    }
}
