//! Hyperbolic orthogonal circle patterns in the Poincare disk.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::quad::{Face, QuadPatch, Vertex};

/// A circle of the disk, in Euclidean center/radius form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskCircle {
    pub center: Complex64,
    pub radius: f64,
}

/// Circles at the vertices of a patch and the common point of the four
/// circles around each face.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskCirclePattern {
    pub patch: QuadPatch,
    pub circles: BTreeMap<Vertex, DiskCircle>,
    pub face_points: BTreeMap<Face, Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    /// max | |c - c'|^2 - rho^2 - rho'^2 | over edges.
    pub orthogonality: f64,
    /// max | |q - c| - rho | over face corners.
    pub incidence: f64,
    /// max |c| + rho.
    pub max_extent: f64,
    pub inside_disk: bool,
}

impl PatternReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.orthogonality <= tol && self.incidence <= tol && self.inside_disk
    }
}

impl DiskCirclePattern {
    pub fn circle(&self, x: Vertex) -> Result<DiskCircle> {
        self.circles
            .get(&x)
            .copied()
            .ok_or_else(|| GeometryError::Missing(format!("circle at {x}")))
    }

    pub fn face_point(&self, q: Face) -> Result<Complex64> {
        self.face_points
            .get(&q)
            .copied()
            .ok_or_else(|| GeometryError::Missing(format!("face point {q}")))
    }

    fn from_circles(patch: QuadPatch, circles: BTreeMap<Vertex, DiskCircle>) -> Result<Self> {
        let mut face_points = BTreeMap::new();
        for q in patch.faces() {
            let [a, b, c, _] = q.corners().map(|x| circles[&x]);
            let pts = circle_intersections(a, b).ok_or(GeometryError::PatternInvalid(format!(
                "circles around face {q} do not intersect"
            )))?;
            let dev = |z: Complex64| ((z - c.center).norm() - c.radius).abs();
            let p = if dev(pts[0]) <= dev(pts[1]) { pts[0] } else { pts[1] };
            face_points.insert(q, p);
        }
        let pattern = DiskCirclePattern { patch, circles, face_points };
        let max_extent = pattern.validate().max_extent;
        if max_extent >= 1.0 {
            return Err(GeometryError::DoesNotFitInDisk(max_extent));
        }
        Ok(pattern)
    }

    pub fn validate(&self) -> PatternReport {
        validate_pattern(self)
    }

    /// Image under the disk automorphism z -> e^{i alpha} (z - a)/(1 - conj(a) z).
    pub fn apply_disk_automorphism(&self, a: Complex64, alpha: f64) -> Result<Self> {
        apply_disk_automorphism(self, a, alpha)
    }

    /// Largest Euclidean extent |c| + rho.
    pub fn max_extent(&self) -> f64 {
        self.circles.values().map(|c| c.center.norm() + c.radius).fold(0.0, f64::max)
    }
}

/// Regular pattern: radius s/sqrt(2) circles centered at s(i - m/2, j - n/2).
pub fn gen_regular_pattern(m: i32, n: i32, s: f64) -> Result<DiskCirclePattern> {
    let patch = QuadPatch::new(m, n);
    let rho = s / 2f64.sqrt();
    let circles: BTreeMap<_, _> = patch
        .vertices()
        .map(|x| {
            let c = Complex64::new(x.i as f64 - m as f64 / 2.0, x.j as f64 - n as f64 / 2.0) * s;
            (x, DiskCircle { center: c, radius: rho })
        })
        .collect();
    let extent = circles.values().map(|c| c.center.norm() + c.radius).fold(0.0, f64::max);
    if extent >= 1.0 {
        return Err(GeometryError::DoesNotFitInDisk(extent));
    }
    let face_points = patch
        .faces()
        .map(|q| {
            let z = Complex64::new(q.i as f64 + 0.5 - m as f64 / 2.0, q.j as f64 + 0.5 - n as f64 / 2.0);
            (q, z * s)
        })
        .collect();
    Ok(DiskCirclePattern { patch, circles, face_points })
}

/// Discrete exponential (Schramm) pattern: centers scale * (e^{a u + i b v} - 1) + shift
/// with (u, v) = (i - m/2, j - n/2), e^a = (1 + sin b)/cos b and radius
/// scale * |e^{a u + i b v}| * sqrt(1 - cos b).
pub fn gen_exponential_pattern(
    m: i32,
    n: i32,
    angle: f64,
    scale: f64,
    shift: Complex64,
) -> Result<DiskCirclePattern> {
    if !(angle > 0.0 && angle < std::f64::consts::FRAC_PI_2) {
        return Err(GeometryError::PatternInvalid(format!("angle step {angle} outside (0, pi/2)")));
    }
    let patch = QuadPatch::new(m, n);
    let a = ((1.0 + angle.sin()) / angle.cos()).ln();
    let k = (1.0 - angle.cos()).sqrt();
    let circles = patch
        .vertices()
        .map(|x| {
            let e = Complex64::new(a * (x.i as f64 - m as f64 / 2.0), angle * (x.j as f64 - n as f64 / 2.0)).exp();
            (x, DiskCircle { center: (e - 1.0) * scale + shift, radius: scale * e.norm() * k })
        })
        .collect();
    DiskCirclePattern::from_circles(patch, circles)
}

/// The two intersection points of two circles.
pub fn circle_intersections(a: DiskCircle, b: DiskCircle) -> Option<[Complex64; 2]> {
    let d = (b.center - a.center).norm();
    if d == 0.0 {
        return None;
    }
    let x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - x * x;
    if h2 < 0.0 {
        return None;
    }
    let u = (b.center - a.center) / d;
    let h = h2.sqrt();
    let i = Complex64::i();
    Some([a.center + u * (x + i * h), a.center + u * (x - i * h)])
}

/// Circle through three points.
pub fn circumcircle(z1: Complex64, z2: Complex64, z3: Complex64) -> DiskCircle {
    let w = (z3 - z1) / (z2 - z1);
    let c = (z2 - z1) * (w - w.norm_sqr()) / (Complex64::i() * 2.0 * w.im) + z1;
    DiskCircle { center: c, radius: (z1 - c).norm() }
}

pub fn disk_automorphism(a: Complex64, alpha: f64) -> impl Fn(Complex64) -> Complex64 {
    let rot = Complex64::from_polar(1.0, alpha);
    move |z| rot * (z - a) / (1.0 - a.conj() * z)
}

pub fn apply_disk_automorphism(p: &DiskCirclePattern, a: Complex64, alpha: f64) -> Result<DiskCirclePattern> {
    if a.norm() >= 1.0 {
        return Err(GeometryError::OutsideDisk(a.norm()));
    }
    let map = disk_automorphism(a, alpha);
    let circles = p
        .circles
        .iter()
        .map(|(x, c)| {
            let pts = [0.0, 2.1, 4.2].map(|t: f64| map(c.center + Complex64::from_polar(c.radius, t)));
            (*x, circumcircle(pts[0], pts[1], pts[2]))
        })
        .collect();
    let face_points = p.face_points.iter().map(|(q, z)| (*q, map(*z))).collect();
    Ok(DiskCirclePattern { patch: p.patch, circles, face_points })
}

pub fn validate_pattern(p: &DiskCirclePattern) -> PatternReport {
    let mut orth = 0.0f64;
    for x in p.patch.vertices() {
        for y in [x.offset(1, 0), x.offset(0, 1)] {
            if let (Some(a), Some(b)) = (p.circles.get(&x), p.circles.get(&y)) {
                orth = orth.max(orthogonality_residual(a, b).abs());
            }
        }
    }
    let mut inc = 0.0f64;
    for (q, z) in &p.face_points {
        for x in q.corners() {
            if let Some(c) = p.circles.get(&x) {
                inc = inc.max(((z - c.center).norm() - c.radius).abs());
            }
        }
    }
    let max_extent = p.max_extent();
    PatternReport {
        orthogonality: orth,
        incidence: inc,
        max_extent,
        inside_disk: max_extent < 1.0,
    }
}

/// |c - c'|^2 - rho^2 - rho'^2.
pub fn orthogonality_residual(a: &DiskCircle, b: &DiskCircle) -> f64 {
    (a.center - b.center).norm_sqr() - a.radius * a.radius - b.radius * b.radius
}
