//! Combinatorics of a rectangular Z^2 patch: coloring, faces, the combined
//! lattice of vertices and faces, one-forms and their integration.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::lorentz::LVec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Vertex {
    pub i: i32,
    pub j: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Face {
    pub i: i32,
    pub j: i32,
}

macro_rules! index_conversions {
    ($t:ty) => {
        impl From<[i32; 2]> for $t {
            fn from(a: [i32; 2]) -> Self {
                Self { i: a[0], j: a[1] }
            }
        }
        impl From<$t> for [i32; 2] {
            fn from(v: $t) -> Self {
                [v.i, v.j]
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {})", self.i, self.j)
            }
        }
    };
}
index_conversions!(Vertex);
index_conversions!(Face);

pub const fn v(i: i32, j: i32) -> Vertex {
    Vertex { i, j }
}

pub const fn f(i: i32, j: i32) -> Face {
    Face { i, j }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

impl Vertex {
    pub fn color(&self) -> Color {
        if (self.i + self.j).rem_euclid(2) == 0 {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn is_black(&self) -> bool {
        self.color() == Color::Black
    }

    pub fn is_white(&self) -> bool {
        self.color() == Color::White
    }

    pub fn offset(&self, di: i32, dj: i32) -> Vertex {
        v(self.i + di, self.j + dj)
    }
}

impl Face {
    /// Corners in counterclockwise order from the lower left.
    pub fn corners(&self) -> [Vertex; 4] {
        let (i, j) = (self.i, self.j);
        [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)]
    }

    /// The two white corners, in corner order.
    pub fn whites(&self) -> [Vertex; 2] {
        let c = self.corners();
        if c[0].is_white() {
            [c[0], c[2]]
        } else {
            [c[1], c[3]]
        }
    }

    /// The two black corners, in corner order.
    pub fn blacks(&self) -> [Vertex; 2] {
        let c = self.corners();
        if c[0].is_black() {
            [c[0], c[2]]
        } else {
            [c[1], c[3]]
        }
    }

    pub fn is_corner(&self, x: Vertex) -> bool {
        self.corners().contains(&x)
    }

    /// The opposite corner of `x` in this face.
    pub fn opposite(&self, x: Vertex) -> Option<Vertex> {
        let c = self.corners();
        c.iter().position(|&y| y == x).map(|k| c[(k + 2) % 4])
    }
}

/// Node of the combined lattice Z^2 u F(Z^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombinedIndex {
    Vertex(Vertex),
    Face(Face),
}

impl CombinedIndex {
    /// Position used for classification: vertices at (i, j), faces at
    /// (i + 1/2, j + 1/2).
    pub fn position(&self) -> (f64, f64) {
        match *self {
            CombinedIndex::Vertex(x) => (x.i as f64, x.j as f64),
            CombinedIndex::Face(q) => (q.i as f64 + 0.5, q.j as f64 + 0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Horizontal,
    Vertical,
}

impl EdgeClass {
    pub fn sign(self) -> f64 {
        match self {
            EdgeClass::Horizontal => 1.0,
            EdgeClass::Vertical => -1.0,
        }
    }
}

/// Class of the combined edge between a vertex and an incident face.
pub fn combined_edge_class(x: Vertex, q: Face) -> Result<EdgeClass> {
    if !q.is_corner(x) {
        return Err(GeometryError::InvalidEdge(format!("{x} -> face {q}")));
    }
    let d1 = 2 * (q.i - x.i) + 1;
    let d2 = 2 * (q.j - x.j) + 1;
    Ok(if d1 * d2 > 0 { EdgeClass::Horizontal } else { EdgeClass::Vertical })
}

/// Class of a white-sublattice edge (diagonal step).
pub fn white_edge_class(w: Vertex, w2: Vertex) -> Result<EdgeClass> {
    let (d1, d2) = (w2.i - w.i, w2.j - w.j);
    if d1.abs() != 1 || d2.abs() != 1 || !w.is_white() {
        return Err(GeometryError::InvalidEdge(format!("{w} -> {w2}")));
    }
    Ok(if d1 * d2 > 0 { EdgeClass::Horizontal } else { EdgeClass::Vertical })
}

/// +1 for horizontal, -1 for vertical combined edges.
pub fn edge_sign(x: Vertex, q: Face) -> Result<f64> {
    combined_edge_class(x, q).map(EdgeClass::sign)
}

pub fn white_edge_sign(w: Vertex, w2: Vertex) -> Result<f64> {
    white_edge_class(w, w2).map(EdgeClass::sign)
}

/// Vertices {0..m} x {0..n}; faces indexed by their lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPatch {
    pub m: i32,
    pub n: i32,
}

impl QuadPatch {
    pub fn new(m: i32, n: i32) -> Self {
        assert!(m > 0 && n > 0, "patch dimensions must be positive");
        QuadPatch { m, n }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        (0..=self.m).contains(&x.i) && (0..=self.n).contains(&x.j)
    }

    pub fn contains_face(&self, q: Face) -> bool {
        (0..self.m).contains(&q.i) && (0..self.n).contains(&q.j)
    }

    pub fn is_interior(&self, x: Vertex) -> bool {
        x.i > 0 && x.i < self.m && x.j > 0 && x.j < self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..=self.m).flat_map(move |i| (0..=self.n).map(move |j| v(i, j)))
    }

    pub fn whites(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(Vertex::is_white)
    }

    pub fn blacks(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(Vertex::is_black)
    }

    pub fn interior_blacks(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.blacks().filter(move |b| self.is_interior(*b))
    }

    pub fn interior_whites(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.whites().filter(move |w| self.is_interior(*w))
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.m).flat_map(move |i| (0..self.n).map(move |j| f(i, j)))
    }

    /// Faces around `x` counterclockwise from the upper right, restricted
    /// to the patch.
    pub fn faces_of(&self, x: Vertex) -> Vec<Face> {
        Self::star_faces(x).into_iter().filter(|q| self.contains_face(*q)).collect()
    }

    /// The four faces around `x` counterclockwise from the upper right.
    pub fn star_faces(x: Vertex) -> [Face; 4] {
        let (i, j) = (x.i, x.j);
        [f(i, j), f(i - 1, j), f(i - 1, j - 1), f(i, j - 1)]
    }

    /// b1 = w+(1,0), b2 = w+(0,1), b3 = w-(1,0), b4 = w-(0,1).
    pub fn white_star(&self, w: Vertex) -> Result<[Vertex; 4]> {
        if !self.is_interior(w) {
            return Err(GeometryError::BoundaryVertex(w.i, w.j));
        }
        Ok(Self::cross_neighbors(w))
    }

    pub fn cross_neighbors(x: Vertex) -> [Vertex; 4] {
        [x.offset(1, 0), x.offset(0, 1), x.offset(-1, 0), x.offset(0, -1)]
    }

    /// Interior white vertices whose four neighbors are interior as well.
    pub fn deep_whites(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.interior_whites().filter(move |w| {
            Self::cross_neighbors(*w).iter().all(|b| self.is_interior(*b))
        })
    }

    /// Base vertex for integration.
    pub fn base_vertex(&self) -> Vertex {
        v(0, 1)
    }

    pub fn neighbors(&self, x: CombinedIndex) -> Vec<CombinedIndex> {
        match x {
            CombinedIndex::Vertex(p) => {
                self.faces_of(p).into_iter().map(CombinedIndex::Face).collect()
            }
            CombinedIndex::Face(q) => q.corners().into_iter().map(CombinedIndex::Vertex).collect(),
        }
    }

    /// Elementary kites (x, f, y, g) of the combined lattice: one per
    /// interior edge xy of Z^2, with f, g the faces on either side.
    pub fn kites(&self) -> Vec<(Vertex, Face, Vertex, Face)> {
        let mut out = Vec::new();
        for x in self.vertices() {
            // horizontal edge x -> x+(1,0): faces (i, j) above, (i, j-1) below
            let y = x.offset(1, 0);
            let (a, b) = (f(x.i, x.j), f(x.i, x.j - 1));
            if self.contains(y) && self.contains_face(a) && self.contains_face(b) {
                out.push((x, a, y, b));
            }
            let y = x.offset(0, 1);
            let (a, b) = (f(x.i - 1, x.j), f(x.i, x.j));
            if self.contains(y) && self.contains_face(a) && self.contains_face(b) {
                out.push((x, a, y, b));
            }
        }
        out
    }
}

/// Values that one-forms can carry.
pub trait FormValue: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn size(&self) -> f64;
}

impl FormValue for LVec3 {
    fn zero() -> Self {
        LVec3::ZERO
    }
    fn size(&self) -> f64 {
        self.max_abs()
    }
}

impl FormValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn size(&self) -> f64 {
        self.abs()
    }
}

/// A one-form on the combined lattice, stored on vertex -> face half-edges.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<V = LVec3> {
    values: BTreeMap<(Vertex, Face), V>,
}

impl<V: FormValue> Default for OneForm<V> {
    fn default() -> Self {
        OneForm { values: BTreeMap::new() }
    }
}

impl<V: FormValue> OneForm<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: Vertex, q: Face, value: V) {
        self.values.insert((x, q), value);
    }

    /// Value on x -> q.
    pub fn get(&self, x: Vertex, q: Face) -> Option<V> {
        self.values.get(&(x, q)).copied()
    }

    /// Value on q -> x, the negative of x -> q.
    pub fn get_reversed(&self, q: Face, x: Vertex) -> Option<V> {
        self.get(x, q).map(|a| -a)
    }

    pub fn get_mut(&mut self, x: Vertex, q: Face) -> Option<&mut V> {
        self.values.get_mut(&(x, q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vertex, Face), &V)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Discrete differential of a function on the combined lattice.
    pub fn differential(patch: &QuadPatch, g: impl Fn(CombinedIndex) -> V) -> Self {
        let mut form = OneForm::new();
        for q in patch.faces() {
            for x in q.corners() {
                form.insert(x, q, g(CombinedIndex::Face(q)) - g(CombinedIndex::Vertex(x)));
            }
        }
        form
    }

    fn step(&self, from: CombinedIndex, to: CombinedIndex) -> Option<V> {
        match (from, to) {
            (CombinedIndex::Vertex(x), CombinedIndex::Face(q)) => self.get(x, q),
            (CombinedIndex::Face(q), CombinedIndex::Vertex(x)) => self.get_reversed(q, x),
            _ => None,
        }
    }

    /// Maximum absolute sum around the elementary kites.
    pub fn cycle_residual(&self, patch: &QuadPatch) -> Result<f64> {
        let mut worst = 0.0f64;
        for (x, a, y, b) in patch.kites() {
            let s = self.need(x, a)? - self.need(y, a)? + self.need(y, b)? - self.need(x, b)?;
            worst = worst.max(s.size());
        }
        Ok(worst)
    }

    fn need(&self, x: Vertex, q: Face) -> Result<V> {
        self.get(x, q)
            .ok_or_else(|| GeometryError::Missing(format!("form value {x} -> face {q}")))
    }
}

/// Result of integrating a one-form: values on every node plus the largest
/// elementary-cycle residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrated<V = LVec3> {
    pub values: BTreeMap<CombinedIndex, V>,
    pub residual: f64,
}

impl<V: FormValue> Integrated<V> {
    pub fn vertex(&self, x: Vertex) -> Option<V> {
        self.values.get(&CombinedIndex::Vertex(x)).copied()
    }

    pub fn face(&self, q: Face) -> Option<V> {
        self.values.get(&CombinedIndex::Face(q)).copied()
    }

    /// Fails with `NotClosed` when the residual exceeds `tol`.
    pub fn ensure_closed(self, tol: f64) -> Result<Self> {
        if self.residual > tol || self.residual.is_nan() {
            Err(GeometryError::NotClosed { residual: self.residual })
        } else {
            Ok(self)
        }
    }
}

/// Breadth-first integration along a spanning tree from `base`.
pub fn integrate_form<V: FormValue>(
    patch: &QuadPatch,
    form: &OneForm<V>,
    base: CombinedIndex,
    base_value: V,
) -> Result<Integrated<V>> {
    let mut values = BTreeMap::new();
    values.insert(base, base_value);
    let mut queue = VecDeque::from([base]);
    while let Some(node) = queue.pop_front() {
        let here = values[&node];
        for next in patch.neighbors(node) {
            if values.contains_key(&next) {
                continue;
            }
            let step = form
                .step(node, next)
                .ok_or_else(|| GeometryError::Missing(format!("form value {node:?} -> {next:?}")))?;
            values.insert(next, here + step);
            queue.push_back(next);
        }
    }
    let residual = form.cycle_residual(patch)?;
    Ok(Integrated { values, residual })
}

/// A one-form on the white sublattice: value of w -> w' where w' is the
/// white vertex opposite w in face q. Stored on (w, q).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WhiteForm {
    values: BTreeMap<(Vertex, Face), LVec3>,
}

impl WhiteForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, w: Vertex, q: Face, value: LVec3) {
        self.values.insert((w, q), value);
    }

    pub fn get(&self, w: Vertex, q: Face) -> Option<LVec3> {
        self.values.get(&(w, q)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vertex, Face), &LVec3)> {
        self.values.iter()
    }

    /// Maximum absolute sum around interior black vertices.
    pub fn cycle_residual(&self, patch: &QuadPatch) -> Result<f64> {
        let mut worst = 0.0f64;
        for b in patch.interior_blacks() {
            let ws = QuadPatch::cross_neighbors(b);
            let mut s = LVec3::ZERO;
            for k in 0..4 {
                let (w, w2) = (ws[k], ws[(k + 1) % 4]);
                let q = face_between(w, w2);
                s += self
                    .get(w, q)
                    .ok_or_else(|| GeometryError::Missing(format!("white form {w} via {q}")))?;
            }
            worst = worst.max(s.max_abs());
        }
        Ok(worst)
    }
}

/// The face containing two diagonal neighbors.
pub fn face_between(a: Vertex, b: Vertex) -> Face {
    f(a.i.min(b.i), a.j.min(b.j))
}

/// Breadth-first integration of a white-sublattice form.
pub fn integrate_white_form(
    patch: &QuadPatch,
    form: &WhiteForm,
    base: Vertex,
    base_value: LVec3,
) -> Result<(BTreeMap<Vertex, LVec3>, f64)> {
    let mut values = BTreeMap::new();
    values.insert(base, base_value);
    let mut queue = VecDeque::from([base]);
    while let Some(w) = queue.pop_front() {
        let here = values[&w];
        for q in patch.faces_of(w) {
            let w2 = q.opposite(w).expect("corner of its own face");
            if values.contains_key(&w2) {
                continue;
            }
            let step = form
                .get(w, q)
                .ok_or_else(|| GeometryError::Missing(format!("white form {w} via {q}")))?;
            values.insert(w2, here + step);
            queue.push_back(w2);
        }
    }
    Ok((values, form.cycle_residual(patch)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coloring_and_faces() {
        let p = QuadPatch::new(3, 3);
        for q in p.faces() {
            let c = q.corners();
            assert_eq!(c.iter().filter(|x| x.is_black()).count(), 2);
            assert_eq!(q.whites().len(), 2);
        }
        assert!(v(0, 0).is_black());
        assert!(v(0, 1).is_white());
    }

    #[test]
    fn edge_signs() {
        assert_eq!(edge_sign(v(0, 0), f(0, 0)).unwrap(), 1.0);
        assert_eq!(edge_sign(v(1, 0), f(0, 0)).unwrap(), -1.0);
        assert_eq!(white_edge_sign(v(1, 0), v(2, 1)).unwrap(), 1.0);
        assert!(matches!(edge_sign(v(2, 2), f(0, 0)), Err(GeometryError::InvalidEdge(_))));
        assert!(white_edge_sign(v(1, 0), v(3, 1)).is_err());
    }

    #[test]
    fn edge_sign_constant_on_parallel_classes() {
        let p = QuadPatch::new(5, 4);
        for q in p.faces() {
            for (k, x) in q.corners().into_iter().enumerate() {
                let expect = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(edge_sign(x, q).unwrap(), expect);
            }
        }
    }

    #[test]
    fn white_star_order() {
        let p = QuadPatch::new(3, 3);
        assert_eq!(p.white_star(v(2, 1)).unwrap(), [v(3, 1), v(2, 2), v(1, 1), v(2, 0)]);
        assert!(matches!(p.white_star(v(1, 0)), Err(GeometryError::BoundaryVertex(1, 0))));
        for w in p.interior_whites() {
            assert!(p.white_star(w).unwrap().iter().all(Vertex::is_black));
        }
    }

    #[test]
    fn kites_have_length_four_and_count() {
        let p = QuadPatch::new(3, 2);
        // interior edges: horizontal ones with both faces, vertical likewise
        assert_eq!(p.kites().len(), 3 * 1 + 2 * 2);
    }

    #[test]
    fn zero_form_integrates_to_constant() {
        let p = QuadPatch::new(3, 3);
        let form = OneForm::differential(&p, |_| LVec3::ZERO);
        let base = CombinedIndex::Vertex(p.base_vertex());
        let r = integrate_form(&p, &form, base, LVec3::E1).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.values.values().all(|x| *x == LVec3::E1));
        assert_eq!(r.values.len(), 16 + 9);
    }

    #[test]
    fn exact_form_recovers_function() {
        let p = QuadPatch::new(4, 3);
        let g = |x: CombinedIndex| {
            let (a, b) = x.position();
            LVec3::new(a.sin() * b, a * a - b, (a * b).cos())
        };
        let form = OneForm::differential(&p, g);
        let base = CombinedIndex::Vertex(p.base_vertex());
        let r = integrate_form(&p, &form, base, LVec3::ZERO).unwrap();
        assert!(r.residual < 1e-13);
        let shift = g(base);
        for (k, val) in &r.values {
            assert!((*val - (g(*k) - shift)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn perturbed_form_is_not_closed() {
        let p = QuadPatch::new(3, 3);
        let mut form = OneForm::differential(&p, |x| {
            let (a, b) = x.position();
            LVec3::new(a, b, a * b)
        });
        *form.get_mut(v(1, 1), f(1, 1)).unwrap() += LVec3::new(1e-3, 0.0, 0.0);
        let r = integrate_form(&p, &form, CombinedIndex::Vertex(v(0, 1)), LVec3::ZERO).unwrap();
        assert!((r.residual - 1e-3).abs() < 1e-12);
        match r.ensure_closed(1e-9) {
            Err(GeometryError::NotClosed { residual }) => assert!((residual - 1e-3).abs() < 1e-12),
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }
}
