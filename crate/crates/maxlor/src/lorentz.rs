//! Lorentz space R^{2,1}: the form x1*y1 + x2*y2 - x3*y3, oriented spheres,
//! isotropic lines, spacelike circles and isometries.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// A point or vector of R^{2,1}. The third coordinate is timelike.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct LVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 3]> for LVec3 {
    fn from(a: [f64; 3]) -> Self {
        LVec3::new(a[0], a[1], a[2])
    }
}

impl From<LVec3> for [f64; 3] {
    fn from(v: LVec3) -> Self {
        [v.x1, v.x2, v.x3]
    }
}

impl LVec3 {
    pub const ZERO: LVec3 = LVec3::new(0.0, 0.0, 0.0);
    pub const E1: LVec3 = LVec3::new(1.0, 0.0, 0.0);
    pub const E2: LVec3 = LVec3::new(0.0, 1.0, 0.0);
    pub const E3: LVec3 = LVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LVec3 { x1, x2, x3 }
    }

    /// Rejects NaN and infinite coordinates.
    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let v = LVec3::new(x1, x2, x3);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeometryError::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn dot(&self, other: &LVec3) -> f64 {
        lorentz_dot(*self, *other)
    }

    /// Lorentz squared length; may be negative.
    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    /// sqrt(|<v,v>|).
    pub fn lnorm(&self) -> f64 {
        self.norm2().abs().sqrt()
    }

    pub fn euclid_norm(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn euclid_dot(&self, o: &LVec3) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn euclid_cross(&self, o: &LVec3) -> LVec3 {
        LVec3::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x1 * o.x2 - self.x2 * o.x1,
        )
    }

    /// Lorentz cross product eta(a x b): Lorentz-orthogonal to both factors,
    /// with <a x b, c> = det(a, b, c).
    pub fn cross(&self, o: &LVec3) -> LVec3 {
        let c = self.euclid_cross(o);
        LVec3::new(c.x1, c.x2, -c.x3)
    }

    /// Unit vector in the Lorentz sense (spacelike or timelike).
    pub fn lnormalized(&self) -> LVec3 {
        *self / self.lnorm()
    }

    /// First two coordinates, the orthogonal projection to the plane x3 = 0.
    pub fn planar(&self) -> [f64; 2] {
        [self.x1, self.x2]
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x1, self.x2, self.x3)
    }

    pub fn from_vector(v: &Vector3<f64>) -> LVec3 {
        LVec3::new(v[0], v[1], v[2])
    }

    pub fn max_abs(&self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }
}

/// a1*b1 + a2*b2 - a3*b3.
pub fn lorentz_dot(a: LVec3, b: LVec3) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3
}

impl Add for LVec3 {
    type Output = LVec3;
    fn add(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for LVec3 {
    type Output = LVec3;
    fn sub(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for LVec3 {
    type Output = LVec3;
    fn neg(self) -> LVec3 {
        LVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for LVec3 {
    type Output = LVec3;
    fn mul(self, s: f64) -> LVec3 {
        LVec3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<LVec3> for f64 {
    type Output = LVec3;
    fn mul(self, v: LVec3) -> LVec3 {
        v * self
    }
}

impl Div<f64> for LVec3 {
    type Output = LVec3;
    fn div(self, s: f64) -> LVec3 {
        LVec3::new(self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl AddAssign for LVec3 {
    fn add_assign(&mut self, o: LVec3) {
        *self = *self + o;
    }
}

impl SubAssign for LVec3 {
    fn sub_assign(&mut self, o: LVec3) {
        *self = *self - o;
    }
}

impl std::iter::Sum for LVec3 {
    fn sum<I: Iterator<Item = LVec3>>(iter: I) -> LVec3 {
        iter.fold(LVec3::ZERO, |a, b| a + b)
    }
}

/// Diagonal of the Euclidean bounding box of a point set.
pub fn diameter<'a>(points: impl IntoIterator<Item = &'a LVec3>) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        let a: [f64; 3] = (*p).into();
        for k in 0..3 {
            lo[k] = lo[k].min(a[k]);
            hi[k] = hi[k].max(a[k]);
        }
    }
    if lo[0] > hi[0] {
        return 0.0;
    }
    (0..3).map(|k| (hi[k] - lo[k]).powi(2)).sum::<f64>().sqrt()
}

/// Orientation sign of an oriented isotropic line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Pos => 1.0,
            Orientation::Neg => -1.0,
        }
    }

    pub fn of(x: f64) -> Orientation {
        if x >= 0.0 {
            Orientation::Pos
        } else {
            Orientation::Neg
        }
    }

    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Pos => Orientation::Neg,
            Orientation::Neg => Orientation::Pos,
        }
    }
}

/// Center and signed radius. Radius zero is a null-sphere (a light cone).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedSphere {
    pub center: LVec3,
    pub radius: f64,
}

impl OrientedSphere {
    pub fn new(center: LVec3, radius: f64) -> Self {
        OrientedSphere { center, radius }
    }

    pub fn null(apex: LVec3) -> Self {
        OrientedSphere { center: apex, radius: 0.0 }
    }

    pub fn is_null(&self) -> bool {
        self.radius == 0.0
    }

    /// <x-m, x-m> - r^2.
    pub fn residual(&self, x: LVec3) -> f64 {
        (x - self.center).norm2() - self.radius * self.radius
    }

    /// Laguerre offset: every oriented radius shifts by `-delta`.
    pub fn offset(&self, delta: f64) -> OrientedSphere {
        OrientedSphere::new(self.center, self.radius - delta)
    }
}

/// Oriented contact defect <dm,dm> - (r1 - r2)^2 of two oriented spheres.
pub fn contact_residual(a: &OrientedSphere, b: &OrientedSphere) -> f64 {
    let d = b.center - a.center;
    d.norm2() - (a.radius - b.radius).powi(2)
}

/// Isotropic direction (d1, d2, 1), d1^2 + d2^2 = 1, with an orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicLine {
    pub point: LVec3,
    pub direction: LVec3,
    pub orientation: Orientation,
}

impl IsotropicLine {
    /// Normalizes `direction` to d3 = 1. Rejects near-horizontal directions.
    pub fn new(point: LVec3, direction: LVec3, orientation: Orientation) -> Result<Self> {
        if direction.x3.abs() < 1e-12 * direction.euclid_norm().max(1.0) {
            return Err(GeometryError::VerticalLine);
        }
        Ok(IsotropicLine {
            point,
            direction: direction / direction.x3,
            orientation,
        })
    }

    pub fn at(&self, t: f64) -> LVec3 {
        self.point + self.direction * t
    }

    /// Canonical spacelike unit vector orthogonal to the direction.
    pub fn side_vector(&self) -> LVec3 {
        side_vector(self.direction)
    }

    /// Oriented direction of the planar projection, a unit vector.
    pub fn planar_direction(&self) -> [f64; 2] {
        let s = self.orientation.sign();
        [s * self.direction.x1, s * self.direction.x2]
    }

    /// Euclidean distance of `x` from the line.
    pub fn distance(&self, x: LVec3) -> f64 {
        let d = self.direction / self.direction.euclid_norm();
        (x - self.point).euclid_cross(&d).euclid_norm()
    }

    /// Defect of oriented contact with a sphere: the maximum of the sphere
    /// equation along the line, tangency, and the signed offset along the side
    /// vector, which fixes the orientation.
    pub fn contact_residual(&self, s: &OrientedSphere) -> f64 {
        let q = self.point - s.center;
        if s.is_null() {
            return self.distance(s.center) / (1.0 + q.euclid_norm());
        }
        let on = (q.norm2() - s.radius * s.radius).abs();
        let tangent = q.dot(&self.direction).abs();
        let side = (q.dot(&self.side_vector()) - s.radius * self.orientation.sign()).abs();
        on.max(tangent).max(side)
    }
}

/// e(d) = (d2, -d1, 0) for an isotropic d with d3 = 1.
pub fn side_vector(d: LVec3) -> LVec3 {
    LVec3::new(d.x2, -d.x1, 0.0)
}

/// The two isotropic directions (d3 = 1) Lorentz-orthogonal to a spacelike `n`.
pub fn null_directions(n: LVec3) -> Result<[LVec3; 2]> {
    let rr = n.x1 * n.x1 + n.x2 * n.x2;
    let disc = rr - n.x3 * n.x3;
    if rr == 0.0 || disc < 0.0 {
        return Err(GeometryError::DegenerateContact);
    }
    let base = (n.x3 / rr) * LVec3::new(n.x1, n.x2, 0.0);
    let t = (disc / rr).sqrt() / rr.sqrt();
    let perp = LVec3::new(-n.x2, n.x1, 0.0) * t;
    let a = base + perp;
    let b = base - perp;
    Ok([LVec3::new(a.x1, a.x2, 1.0), LVec3::new(b.x1, b.x2, 1.0)])
}

/// The two isotropic lines through the contact point of two spheres in
/// oriented contact, each lying in both spheres. Orientations are read off
/// the shared unit normal and are opposite for the two lines.
pub fn common_isotropic_lines(
    s1: &OrientedSphere,
    s2: &OrientedSphere,
    tol: f64,
) -> Result<[IsotropicLine; 2]> {
    let dm = s2.center - s1.center;
    let dr = s1.radius - s2.radius;
    let scale = 1.0 + dm.euclid_norm().powi(2);
    let res = contact_residual(s1, s2);
    if res.abs() > tol * scale {
        return Err(GeometryError::NotInContact(res));
    }
    if dr.abs() < tol {
        return Err(GeometryError::DegenerateContact);
    }
    let n = dm / dr;
    let k = s1.center + n * s1.radius;
    let [d1, d2] = null_directions(n)?;
    let mk = |d: LVec3| IsotropicLine::new(k, d, Orientation::of(n.dot(&side_vector(d))));
    Ok([mk(d1)?, mk(d2)?])
}

/// A circle in a spacelike plane: center, timelike unit axis, radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeCircle {
    pub center: LVec3,
    pub axis: LVec3,
    pub radius: f64,
}

impl SpacelikeCircle {
    /// Orthonormal basis of the circle plane.
    pub fn plane_basis(&self) -> (LVec3, LVec3) {
        let a = self.axis;
        let seed = if (a.x1.abs()) < (a.x2.abs()) { LVec3::E1 } else { LVec3::E2 };
        let u = (seed + a * seed.dot(&a)).lnormalized();
        let v = a.cross(&u).lnormalized();
        (u, v)
    }

    pub fn point(&self, t: f64) -> LVec3 {
        let (u, v) = self.plane_basis();
        self.center + (u * t.cos() + v * t.sin()) * self.radius
    }

    /// Circle through three points spanning a spacelike plane.
    pub fn through(a: LVec3, b: LVec3, c: LVec3) -> Result<SpacelikeCircle> {
        let u = b - a;
        let v = c - a;
        let g = nalgebra::Matrix2::new(u.norm2(), u.dot(&v), u.dot(&v), v.norm2());
        if g.determinant() <= 0.0 {
            return Err(GeometryError::DegenerateFacePlane);
        }
        let rhs = nalgebra::Vector2::new(u.norm2() / 2.0, v.norm2() / 2.0);
        let st = g.lu().solve(&rhs).ok_or(GeometryError::DegenerateFacePlane)?;
        let center = a + u * st[0] + v * st[1];
        let mut axis = u.cross(&v);
        if axis.norm2() >= 0.0 {
            return Err(GeometryError::DegenerateFacePlane);
        }
        axis = axis.lnormalized();
        if axis.x3 < 0.0 {
            axis = -axis;
        }
        Ok(SpacelikeCircle {
            center,
            axis,
            radius: (a - center).norm2().sqrt(),
        })
    }

    /// Lorentz-orthogonal projection onto the circle plane.
    pub fn project(&self, x: LVec3) -> LVec3 {
        x + self.axis * (x - self.center).dot(&self.axis)
    }
}

/// Which of the two sides of a circle plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// The sphere of radius `rho` containing the circle, centered on the given
/// side of its plane.
pub fn sphere_through_circle_with_radius(
    c: &SpacelikeCircle,
    rho: f64,
    side: Side,
) -> Result<OrientedSphere> {
    let d = c.radius * c.radius - rho * rho;
    if d < 0.0 && rho.abs() > c.radius * (1.0 + 1e-9) {
        return Err(GeometryError::RadiusTooLarge { rho, circle: c.radius });
    }
    let offset = d.max(0.0).sqrt();
    Ok(OrientedSphere::new(c.center + c.axis * (side.sign() * offset), rho))
}

pub fn eta() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// x -> Q x + t with Q^T eta Q = eta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LIsometry {
    pub q: Matrix3<f64>,
    pub t: LVec3,
}

impl LIsometry {
    pub fn identity() -> Self {
        LIsometry { q: Matrix3::identity(), t: LVec3::ZERO }
    }

    pub fn translation(t: LVec3) -> Self {
        LIsometry { q: Matrix3::identity(), t }
    }

    pub fn linear(q: Matrix3<f64>) -> Self {
        LIsometry { q, t: LVec3::ZERO }
    }

    pub fn apply(&self, x: LVec3) -> LVec3 {
        LVec3::from_vector(&(self.q * x.to_vector())) + self.t
    }

    /// Linear part only, for difference vectors.
    pub fn apply_vector(&self, x: LVec3) -> LVec3 {
        LVec3::from_vector(&(self.q * x.to_vector()))
    }

    /// self after other.
    pub fn compose(&self, other: &LIsometry) -> LIsometry {
        LIsometry { q: self.q * other.q, t: self.apply(other.t) }
    }

    pub fn inverse(&self) -> LIsometry {
        let e = eta();
        let qi = e * self.q.transpose() * e;
        let t = -LVec3::from_vector(&(qi * self.t.to_vector()));
        LIsometry { q: qi, t }
    }

    /// max |(Q^T eta Q - eta)_ij|.
    pub fn form_defect(&self) -> f64 {
        let e = eta();
        (self.q.transpose() * e * self.q - e).amax()
    }

    /// Rotation by `phi` in the x1x2-plane.
    pub fn rotation_e3(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        LIsometry::linear(Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
    }

    /// The pure boost taking (0,0,1) to the future unit timelike `p`.
    pub fn boost_to(p: LVec3) -> Result<Self> {
        check_future_unit(p)?;
        let k = 1.0 / (1.0 + p.x3);
        let q = Matrix3::new(
            1.0 + k * p.x1 * p.x1,
            k * p.x1 * p.x2,
            p.x1,
            k * p.x1 * p.x2,
            1.0 + k * p.x2 * p.x2,
            p.x2,
            p.x1,
            p.x2,
            p.x3,
        );
        Ok(LIsometry::linear(q))
    }

    pub fn to_rows(&self) -> [[f64; 4]; 3] {
        let mut rows = [[0.0; 4]; 3];
        let t: [f64; 3] = self.t.into();
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..3 {
                row[j] = self.q[(i, j)];
            }
            row[3] = t[i];
        }
        rows
    }
}

fn check_future_unit(p: LVec3) -> Result<()> {
    let n = p.norm2();
    if !p.is_finite() || (n + 1.0).abs() > 1e-9 * (1.0 + p.euclid_norm().powi(2)) || p.x3 <= 0.0 {
        return Err(GeometryError::NonTimelikeAxis(n));
    }
    Ok(())
}

/// Elliptic rotation by `phi` about the timelike line through 0 and `p`,
/// built as boost o rotation o boost^-1.
pub fn rotation_about_timelike_axis(p: LVec3, phi: f64) -> Result<LIsometry> {
    let b = LIsometry::boost_to(p)?;
    Ok(b.compose(&LIsometry::rotation_e3(phi)).compose(&b.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sigma(x: f64, y: f64) -> LVec3 {
        let n = x * x + y * y;
        LVec3::new(2.0 * x, 2.0 * y, 1.0 + n) / (1.0 - n)
    }

    #[test]
    fn basis_vectors() {
        assert_eq!(lorentz_dot(LVec3::E1, LVec3::E1), 1.0);
        assert_eq!(lorentz_dot(LVec3::E3, LVec3::E3), -1.0);
        let v = LVec3::new(1.0, 0.0, 1.0);
        assert_eq!(v.norm2(), 0.0);
    }

    #[test]
    fn try_new_rejects_nan() {
        assert!(LVec3::try_new(f64::NAN, 0.0, 0.0).is_err());
        assert!(LVec3::try_new(0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn lorentz_cross_is_orthogonal() {
        let a = LVec3::new(0.3, -1.2, 0.7);
        let b = LVec3::new(2.0, 0.1, -0.4);
        let c = a.cross(&b);
        assert_abs_diff_eq!(c.dot(&a), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.dot(&b), 0.0, epsilon = 1e-14);
        // spacelike plane has a timelike normal of norm -Gram determinant
        let e = LVec3::E1.cross(&LVec3::E2);
        assert_abs_diff_eq!(e.norm2(), -1.0);
    }

    #[test]
    fn rotation_at_e3_is_euclidean() {
        let j = rotation_about_timelike_axis(LVec3::E3, std::f64::consts::FRAC_PI_2).unwrap();
        let y = j.apply(LVec3::E1);
        assert_abs_diff_eq!(y.x1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y.x2, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y.x3, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rotation_zero_is_identity() {
        let p = sigma(0.4, -0.2);
        let j = rotation_about_timelike_axis(p, 0.0).unwrap();
        assert!((j.q - Matrix3::identity()).amax() < 1e-14);
    }

    #[test]
    fn rotation_fixes_axis_and_preserves_form() {
        let p = sigma(0.3, 0.0);
        let j = rotation_about_timelike_axis(p, std::f64::consts::FRAC_PI_3).unwrap();
        assert!(j.form_defect() < 1e-12);
        assert!((j.apply(p) - p).max_abs() < 1e-14);
    }

    #[test]
    fn rotation_rejects_spacelike_axis() {
        let err = rotation_about_timelike_axis(LVec3::E1, 0.3).unwrap_err();
        assert!(matches!(err, GeometryError::NonTimelikeAxis(_)));
    }

    #[test]
    fn isometry_inverse() {
        let b = LIsometry::boost_to(sigma(0.5, 0.2)).unwrap()
            .compose(&LIsometry::translation(LVec3::new(1.0, 2.0, 3.0)));
        let x = LVec3::new(0.1, 0.2, 0.3);
        assert!((b.inverse().apply(b.apply(x)) - x).max_abs() < 1e-13);
    }

    #[test]
    fn unit_spheres_common_lines() {
        let s1 = OrientedSphere::new(LVec3::E1, 1.0);
        let s2 = OrientedSphere::new(-LVec3::E1, -1.0);
        let lines = common_isotropic_lines(&s1, &s2, 1e-12).unwrap();
        let mut ys: Vec<f64> = lines.iter().map(|l| l.direction.x2).collect();
        ys.sort_by(f64::total_cmp);
        for l in &lines {
            assert!(l.point.max_abs() < 1e-15);
            assert_abs_diff_eq!(l.direction.x1, 0.0, epsilon = 1e-15);
            assert!(l.contact_residual(&s1) < 1e-12);
            assert!(l.contact_residual(&s2) < 1e-12);
        }
        assert_eq!(ys, vec![-1.0, 1.0]);
        assert_ne!(lines[0].orientation, lines[1].orientation);
    }

    #[test]
    fn null_sphere_lines_pass_through_apex() {
        // a null sphere touching a timelike one: apex on the sphere
        let s1 = OrientedSphere::new(LVec3::ZERO, 1.0);
        let apex = LVec3::new(1.5, 0.0, 1.118033988749895);
        let s2 = OrientedSphere::null(apex);
        let lines = common_isotropic_lines(&s1, &s2, 1e-12).unwrap();
        for l in &lines {
            assert!(l.distance(apex) < 1e-12);
            assert!(l.contact_residual(&s1) < 1e-12);
            assert!(l.contact_residual(&s2) < 1e-12);
        }
    }

    #[test]
    fn non_touching_spheres_are_rejected() {
        let s1 = OrientedSphere::new(LVec3::E1, 1.0);
        let s2 = OrientedSphere::new(-LVec3::E1, 1.5);
        assert!(matches!(
            common_isotropic_lines(&s1, &s2, 1e-12),
            Err(GeometryError::NotInContact(_))
        ));
    }

    #[test]
    fn sphere_through_circle_offsets() {
        let c = SpacelikeCircle { center: LVec3::ZERO, axis: LVec3::E3, radius: 1.0 };
        let s = sphere_through_circle_with_radius(&c, 0.6, Side::Plus).unwrap();
        assert_abs_diff_eq!(s.center.x3, 0.8, epsilon = 1e-15);
        for k in 0..8 {
            let x = c.point(k as f64 * 0.7);
            assert!(s.residual(x).abs() < 1e-14);
        }
        let same = sphere_through_circle_with_radius(&c, 1.0, Side::Minus).unwrap();
        assert_eq!(same.center, c.center);
        let null = sphere_through_circle_with_radius(&c, 0.0, Side::Minus).unwrap();
        assert_abs_diff_eq!(null.center.x3, -1.0);
        assert!(matches!(
            sphere_through_circle_with_radius(&c, 1.5, Side::Plus),
            Err(GeometryError::RadiusTooLarge { .. })
        ));
    }

    #[test]
    fn circle_through_three_points() {
        let c = SpacelikeCircle { center: sigma(0.2, 0.1), axis: sigma(0.2, 0.1), radius: 0.7 };
        let c2 = SpacelikeCircle::through(c.point(0.1), c.point(1.9), c.point(4.0)).unwrap();
        assert!((c2.center - c.center).max_abs() < 1e-12);
        assert!((c2.axis - c.axis).max_abs() < 1e-12);
        assert_abs_diff_eq!(c2.radius, 0.7, epsilon = 1e-12);
    }
}
