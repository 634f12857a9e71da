//! Planar incircular nets obtained by projecting null congruences, the
//! other-tangent construction, X-variables and planar characterizations.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::koebe::Congruence;
use crate::lorentz::LVec3;
use crate::quad::{Face, QuadPatch, Vertex};

/// a x b for planar vectors stored as complex numbers.
pub fn cross2(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

pub fn planar(x: LVec3) -> Complex64 {
    Complex64::new(x.x1, x.x2)
}

/// Circle with signed radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedCircle {
    pub center: Complex64,
    pub radius: f64,
}

/// Line through `point` with unit `direction`. An oriented circle (c, r)
/// touches it when cross(direction, c - point) = r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedLine {
    pub point: Complex64,
    pub direction: Complex64,
}

impl OrientedLine {
    pub fn new(point: Complex64, direction: Complex64) -> Self {
        OrientedLine { point, direction: direction / direction.norm() }
    }

    /// Signed distance of `x`, positive on the left.
    pub fn signed_distance(&self, x: Complex64) -> f64 {
        cross2(self.direction, x - self.point)
    }

    pub fn tangency(&self, c: &OrientedCircle) -> f64 {
        self.signed_distance(c.center) - c.radius
    }

    /// Distance between two oriented lines as point sets with direction.
    pub fn deviation(&self, o: &OrientedLine) -> f64 {
        (self.direction - o.direction).norm() + self.signed_distance(o.point).abs()
    }

    pub fn intersect(&self, o: &OrientedLine) -> Result<Complex64> {
        let den = cross2(self.direction, o.direction);
        if den.abs() < 1e-14 {
            return Err(GeometryError::ParallelLines);
        }
        let t = cross2(o.point - self.point, o.direction) / den;
        Ok(self.point + self.direction * t)
    }
}

/// Incircles at white vertices, points at black vertices, oriented lines at
/// faces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncircularNet {
    pub patch: QuadPatch,
    pub white: BTreeMap<Vertex, OrientedCircle>,
    pub black: BTreeMap<Vertex, Complex64>,
    pub lines: BTreeMap<Face, OrientedLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncircularReport {
    /// max |cross(d, c - p) - r| over line/incircle incidences.
    pub tangency: f64,
    /// max distance of black points from their lines.
    pub incidence: f64,
    pub diameter: f64,
}

impl IncircularReport {
    pub fn passes(&self, tol: f64) -> bool {
        let s = self.diameter.max(1.0);
        self.tangency <= tol * s && self.incidence <= tol * s
    }
}

impl IncircularNet {
    pub fn validate(&self) -> IncircularReport {
        let mut rep = IncircularReport { tangency: 0.0, incidence: 0.0, diameter: self.diameter() };
        for (q, l) in &self.lines {
            for w in q.whites() {
                if let Some(c) = self.white.get(&w) {
                    rep.tangency = rep.tangency.max(l.tangency(c).abs());
                }
            }
            for b in q.blacks() {
                if let Some(p) = self.black.get(&b) {
                    rep.incidence = rep.incidence.max(l.signed_distance(*p).abs());
                }
            }
        }
        rep
    }

    pub fn diameter(&self) -> f64 {
        let pts = self.white.values().map(|c| c.center).chain(self.black.values().copied());
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        if lo.re > hi.re {
            0.0
        } else {
            (hi - lo).norm()
        }
    }

    fn star(&self, w: Vertex) -> Result<[Complex64; 4]> {
        let [a, b, c, d] = self
            .patch
            .white_star(w)?
            .map(|b| self.black.get(&b).copied().ok_or_else(|| GeometryError::Missing(format!("black point {b}"))));
        Ok([a?, b?, c?, d?])
    }
}

/// Orthogonal projection to the x1x2-plane: waists of the white spheres,
/// apices at black vertices, projected lines.
pub fn project(cong: &Congruence) -> Result<IncircularNet> {
    let white = cong
        .white
        .iter()
        .map(|(w, s)| (*w, OrientedCircle { center: planar(s.center), radius: s.radius }))
        .collect();
    let black = cong.black.iter().map(|(b, s)| (*b, planar(s.center))).collect();
    let mut lines = BTreeMap::new();
    for (q, l) in &cong.lines {
        if l.direction.x3.abs() < 1e-12 {
            return Err(GeometryError::VerticalLine);
        }
        let [d1, d2] = l.planar_direction();
        lines.insert(*q, OrientedLine::new(planar(l.point), Complex64::new(d1, d2)));
    }
    Ok(IncircularNet { patch: cong.patch, white, black, lines })
}

/// The complex cross-ratio -(z1 z3)/(z2 z4) before the realness check.
pub fn x_planar_complex(net: &IncircularNet, w: Vertex) -> Result<Complex64> {
    let star = net.star(w)?;
    let m = net.white.get(&w).ok_or_else(|| GeometryError::Missing(format!("incircle {w}")))?.center;
    let z = star.map(|b| b - m);
    Ok(-(z[0] * z[2]) / (z[1] * z[3]))
}

/// X-variable -(z1 z3)/(z2 z4), zk = bk - m, from the incircle center m
/// and the star b1..b4 of w. Fails if the value is not real.
pub fn x_planar(net: &IncircularNet, w: Vertex) -> Result<f64> {
    let x = x_planar_complex(net, w)?;
    let rel = x.im.abs() / x.norm().max(f64::MIN_POSITIVE);
    if !x.re.is_finite() || rel > 1e-8 {
        return Err(GeometryError::NonRealX(rel));
    }
    Ok(x.re)
}

/// X-variable |c1 - c3|^2 / |c2 - c4|^2 from the black centers of the star.
pub fn x_lorentz(cong: &Congruence, w: Vertex) -> Result<f64> {
    let [c1, c2, c3, c4] = cong.patch.white_star(w)?.map(|b| cong.black_center(b));
    let (c1, c2, c3, c4) = (c1?, c2?, c3?, c4?);
    let den = (c2 - c4).norm2();
    if den.abs() < 1e-300 || den.abs() < 1e-14 * (c2 - c4).euclid_norm().powi(2) {
        return Err(GeometryError::DegenerateDiagonal);
    }
    Ok((c1 - c3).norm2() / den)
}

/// Interior white vertices whose four black neighbors carry data.
pub fn x_vertices<'a>(patch: &'a QuadPatch, has_black: impl Fn(Vertex) -> bool + 'a) -> impl Iterator<Item = Vertex> + 'a {
    patch
        .interior_whites()
        .filter(move |w| QuadPatch::cross_neighbors(*w).iter().all(|b| has_black(*b)))
}

pub type XField = BTreeMap<Vertex, f64>;

pub fn x_field_planar(net: &IncircularNet) -> Result<XField> {
    x_vertices(&net.patch, |b| net.black.contains_key(&b)).map(|w| Ok((w, x_planar(net, w)?))).collect()
}

pub fn x_field_lorentz(cong: &Congruence) -> Result<XField> {
    x_vertices(&cong.patch, |b| cong.black.contains_key(&b)).map(|w| Ok((w, x_lorentz(cong, w)?))).collect()
}

/// Largest |a - b| / max(1, |a|) over common keys.
pub fn x_deviation(a: &XField, b: &XField) -> f64 {
    a.iter()
        .filter_map(|(w, x)| b.get(w).map(|y| (x - y).abs() / x.abs().max(1.0)))
        .fold(0.0, f64::max)
}

/// The two common oriented tangents of two oriented circles.
pub fn common_tangents(c1: &OrientedCircle, c2: &OrientedCircle) -> Result<[OrientedLine; 2]> {
    let d = c1.center - c2.center;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return Err(GeometryError::NoSecondTangent);
    }
    let a = (c1.radius - c2.radius) / l2;
    let t2 = 1.0 / l2 - a * a;
    if t2 < 0.0 {
        return Err(GeometryError::NoSecondTangent);
    }
    let base = d * a;
    let perp = Complex64::new(-d.im, d.re) * t2.sqrt();
    // unit normal n with n.(c - p) = r; direction is n turned by -90 degrees
    let line = |n: Complex64| OrientedLine::new(c1.center - n * c1.radius, Complex64::new(n.im, -n.re));
    Ok([line(base + perp), line(base - perp)])
}

/// The second common oriented tangent at every face, with black points
/// recomputed as the common points of the new lines around each black
/// vertex.
pub fn other_tangents(net: &IncircularNet, tol: f64) -> Result<IncircularNet> {
    let scale = net.diameter().max(1.0);
    let mut lines = BTreeMap::new();
    for (q, l) in &net.lines {
        let [w1, w2] = q.whites().map(|w| net.white.get(&w).copied());
        let (Some(c1), Some(c2)) = (w1, w2) else {
            return Err(GeometryError::Missing(format!("incircles at face {q}")));
        };
        let t = common_tangents(&c1, &c2)?;
        let (e0, e1) = (t[0].deviation(l), t[1].deviation(l));
        if e0.min(e1) > tol * scale {
            return Err(GeometryError::ValidationFailed(e0.min(e1)));
        }
        let other = if e0 <= e1 { t[1] } else { t[0] };
        if other.deviation(l) < 1e-12 * scale {
            return Err(GeometryError::NoSecondTangent);
        }
        lines.insert(*q, other);
    }
    let mut black = BTreeMap::new();
    for b in net.patch.blacks() {
        let around: Vec<OrientedLine> = net.patch.faces_of(b).iter().filter_map(|q| lines.get(q).copied()).collect();
        if around.len() < 2 {
            continue;
        }
        let (p, res) = least_squares_point(&around)?;
        if res > tol * scale {
            return Err(GeometryError::ValidationFailed(res));
        }
        black.insert(b, p);
    }
    Ok(IncircularNet { patch: net.patch, white: net.white.clone(), black, lines })
}

/// Least-squares common point of lines and the largest line distance to it.
pub fn least_squares_point(lines: &[OrientedLine]) -> Result<(Complex64, f64)> {
    let mut a = nalgebra::Matrix2::<f64>::zeros();
    let mut rhs = nalgebra::Vector2::<f64>::zeros();
    for l in lines {
        let n = nalgebra::Vector2::new(-l.direction.im, l.direction.re);
        a += n * n.transpose();
        rhs += n * n.dot(&nalgebra::Vector2::new(l.point.re, l.point.im));
    }
    let cond = a.symmetric_eigenvalues();
    if cond.min() <= 1e-14 * cond.max().max(f64::MIN_POSITIVE) {
        return Err(GeometryError::ParallelLines);
    }
    let x = a.lu().solve(&rhs).ok_or(GeometryError::ParallelLines)?;
    let p = Complex64::new(x[0], x[1]);
    let res = lines.iter().map(|l| l.signed_distance(p).abs()).fold(0.0, f64::max);
    Ok((p, res))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrencyReport {
    pub point: Complex64,
    pub max_distance: f64,
    pub lines: usize,
}

/// Lines through p1(b) and p2(b) for every black vertex, their
/// least-squares common point and the largest distance to it.
pub fn koebe_concurrency_test(p1: &IncircularNet, p2: &IncircularNet) -> Result<ConcurrencyReport> {
    let scale = p1.diameter().max(1.0);
    let mut lines = Vec::new();
    let mut any = None;
    for (b, a) in &p1.black {
        if let Some(c) = p2.black.get(b) {
            any = Some(*a);
            if (c - a).norm() > 1e-12 * scale {
                lines.push(OrientedLine::new(*a, c - a));
            }
        }
    }
    match lines.len() {
        0 | 1 => Ok(ConcurrencyReport {
            point: lines.first().map(|l| l.point).or(any).unwrap_or_default(),
            max_distance: 0.0,
            lines: lines.len(),
        }),
        n => {
            let (point, max_distance) = least_squares_point(&lines)?;
            Ok(ConcurrencyReport { point, max_distance, lines: n })
        }
    }
}

/// Product of (M_k - P_k)/(P_k - M_k+1) around the star of w, where M_k
/// is the midpoint of p1(b_k), p2(b_k) and P_k the intersection of
/// consecutive lines through those pairs.
pub fn menelaus_maximal_test(p1: &IncircularNet, p2: &IncircularNet, w: Vertex) -> Result<Complex64> {
    let (a, b) = (p1.star(w)?, p2.star(w)?);
    let scale = p1.diameter().max(1.0);
    if (0..4).any(|k| (b[k] - a[k]).norm() < 1e-12 * scale) {
        return Err(GeometryError::CoincidentPoints);
    }
    let mid: [Complex64; 4] = std::array::from_fn(|k| (a[k] + b[k]) / 2.0);
    let lines: [OrientedLine; 4] = std::array::from_fn(|k| OrientedLine::new(a[k], b[k] - a[k]));
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..4 {
        let p = lines[k].intersect(&lines[(k + 1) % 4])?;
        prod *= (mid[k] - p) / (p - mid[(k + 1) % 4]);
    }
    Ok(prod)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentCircleReport {
    /// max |d + 2 rho| over the other tangents around every black vertex,
    /// d the signed distance of the partner point.
    pub deviation: f64,
    pub count: usize,
    /// Faces whose incircles touch, so that no other tangent exists.
    pub skipped: usize,
}

/// The other tangents of `net` around each black vertex b against the point
/// of `partner` at b: they touch the oriented circle of radius -2 rho
/// centered there, rho the oriented contact radius of `net`.
pub fn assoc_tangent_circle_test(net: &IncircularNet, partner: &IncircularNet, rho: f64) -> Result<TangentCircleReport> {
    let mut rep = TangentCircleReport { deviation: 0.0, count: 0, skipped: 0 };
    for (b, c0) in &partner.black {
        for q in net.patch.faces_of(*b) {
            let Some(l) = net.lines.get(&q) else { continue };
            let [c1, c2] = q.whites().map(|w| net.white.get(&w).copied());
            let (Some(c1), Some(c2)) = (c1, c2) else { continue };
            let t = match common_tangents(&c1, &c2) {
                Err(GeometryError::NoSecondTangent) => {
                    rep.skipped += 1;
                    continue;
                }
                t => t?,
            };
            let other = if t[0].deviation(l) <= t[1].deviation(l) { t[1] } else { t[0] };
            rep.deviation = rep.deviation.max((other.signed_distance(*c0) + 2.0 * rho).abs());
            rep.count += 1;
        }
    }
    Ok(rep)
}
