//! The associated family of the maximal surface: rotate the dual white
//! differential about the face normals, integrate, and build the contact
//! and null congruences of each member.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::koebe::{congruence_lines, Congruence, ContactCongruence, NullCongruence, SIsothermicNet};
use crate::lorentz::{
    contact_residual, diameter, rotation_about_timelike_axis, sphere_through_circle_with_radius, IsotropicLine,
    LVec3, OrientedSphere, Side, SpacelikeCircle,
};
use crate::incircular::{project, x_deviation, x_field_lorentz, x_field_planar, XField};
use crate::quad::{edge_sign, face_between, integrate_white_form, Face, QuadPatch, Vertex, WhiteForm};

/// Value on w -> w' across face q:
/// sign(w, q) (1/|R(w)| + 1/|R(w')|) J(q)[m(w) - m(w')] / |m(w) - m(w')|,
/// J(q) the rotation by phi about the axis through the contact point.
pub fn associated_form(koebe: &SIsothermicNet, phi: f64) -> Result<WhiteForm> {
    let mut form = WhiteForm::new();
    for q in koebe.patch.faces() {
        let j = rotation_about_timelike_axis(koebe.contact_point(q)?, phi)?;
        for w in q.whites() {
            let w2 = q.opposite(w).expect("white corner");
            let (a, b) = (koebe.white_sphere(w)?, koebe.white_sphere(w2)?);
            let d = a.center - b.center;
            let k = edge_sign(w, q)? * (1.0 / a.radius.abs() + 1.0 / b.radius.abs()) / d.lnorm();
            form.insert(w, q, j.apply_vector(d) * k);
        }
    }
    Ok(form)
}

/// One member of the associated family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociatedSurface {
    pub phi: f64,
    pub patch: QuadPatch,
    /// Centers and dual radii 1/R.
    pub white: BTreeMap<Vertex, OrientedSphere>,
    /// Touching point on the white edge through each face.
    pub contact: BTreeMap<Face, LVec3>,
    /// Circle through the four contact points around each interior black
    /// vertex.
    pub circles: BTreeMap<Vertex, SpacelikeCircle>,
    /// Cycle residual of the associated form.
    pub residual: f64,
    /// Largest deviation of a fourth contact point from its circle.
    pub concyclicity: f64,
}

impl AssociatedSurface {
    pub fn diameter(&self) -> f64 {
        diameter(self.white.values().map(|s| &s.center))
    }

    /// Largest oriented-contact defect of adjacent white spheres.
    pub fn touching(&self) -> f64 {
        let mut worst = 0.0f64;
        for q in self.patch.faces() {
            let [a, b] = q.whites().map(|w| self.white[&w]);
            worst = worst.max(contact_residual(&a, &b).abs() / (1.0 + (a.center - b.center).euclid_norm().powi(2)));
        }
        worst
    }
}

pub fn integrate_associated(koebe: &SIsothermicNet, phi: f64, tol: f64) -> Result<AssociatedSurface> {
    let patch = koebe.patch;
    let form = associated_form(koebe, phi)?;
    let (centers, residual) = integrate_white_form(&patch, &form, patch.base_vertex(), LVec3::ZERO)?;
    let diam = diameter(centers.values());
    if !(residual <= tol * diam.max(1.0)) {
        return Err(GeometryError::NotClosed { residual });
    }
    let white: BTreeMap<_, _> = koebe
        .white
        .iter()
        .map(|(w, s)| (*w, OrientedSphere::new(centers[w], 1.0 / s.radius)))
        .collect();
    let mut contact = BTreeMap::new();
    for q in patch.faces() {
        let [w1, w2] = q.whites();
        let (a, b) = (white[&w1], white[&w2]);
        contact.insert(q, a.center + (b.center - a.center).lnormalized() * a.radius.abs());
    }
    let mut circles = BTreeMap::new();
    let mut concyclicity = 0.0f64;
    for b in patch.interior_blacks() {
        let k = QuadPatch::star_faces(b).map(|q| contact[&q]);
        let c = SpacelikeCircle::through(k[0], k[1], k[2])?;
        let d = k[3] - c.center;
        concyclicity = concyclicity.max((d.norm2() - c.radius * c.radius).abs()).max(d.dot(&c.axis).abs());
        circles.insert(b, c);
    }
    Ok(AssociatedSurface { phi, patch, white, contact, circles, residual, concyclicity })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceSimilarityReport {
    /// max | |Q_k+1 - Q_k| / |P*_k+1 - P*_k| - mu |.
    pub ratio: f64,
    /// max | dist(center of C, edge line of Q) - mu r* |.
    pub incircle: f64,
    pub faces: usize,
}

/// Project each quad of white centers to the plane of its circle and compare
/// with the dual quad: edge ratios mu = sqrt(1 + r^2 sin^2 phi), r the Koebe
/// incircle radius, and an incircle of radius mu / r.
pub fn face_similarity_check(
    surf: &AssociatedSurface,
    koebe: &SIsothermicNet,
    dual: &SIsothermicNet,
) -> Result<FaceSimilarityReport> {
    let mut rep = FaceSimilarityReport { ratio: 0.0, incircle: 0.0, faces: 0 };
    let s = surf.phi.sin();
    for (b, circle) in &surf.circles {
        let r = koebe.black_circle(*b)?.radius;
        let mu = (1.0 + r * r * s * s).sqrt();
        let ws = QuadPatch::cross_neighbors(*b);
        let proj = ws.map(|w| circle.project(surf.white[&w].center));
        let [a, b2, c, d] = ws.map(|w| dual.white_sphere(w).map(|s| s.center));
        let pd = [a?, b2?, c?, d?];
        for k in 0..4 {
            let e = proj[(k + 1) % 4] - proj[k];
            let e0 = pd[(k + 1) % 4] - pd[k];
            rep.ratio = rep.ratio.max((e.lnorm() / e0.lnorm() - mu).abs());
            let u = e.lnormalized();
            let x = circle.center - proj[k];
            let dist = (x - u * x.dot(&u)).norm2().max(0.0).sqrt();
            rep.incircle = rep.incircle.max((dist - mu / r).abs());
        }
        rep.faces += 1;
    }
    Ok(rep)
}

/// Rotation angle used to choose sides of the black contact spheres when
/// sin(phi) vanishes.
const SIDE_PROBE: f64 = 1e-6;

/// Per interior black vertex, which side of the circle plane carries the
/// sphere of signed radius sin(phi) touching the white sphere at b + (1, 0).
fn plus_sides(surf: &AssociatedSurface, tol: f64) -> Result<BTreeMap<Vertex, Side>> {
    let rho = surf.phi.sin();
    let mut out = BTreeMap::new();
    for (b, c) in &surf.circles {
        let w = surf.white[&b.offset(1, 0)];
        let mut found = None;
        for side in [Side::Plus, Side::Minus] {
            let s = sphere_through_circle_with_radius(c, rho.abs(), side)?;
            let d = (s.center - w.center).norm2();
            let (plus, minus) = ((d - (w.radius - rho).powi(2)).abs(), (d - (w.radius + rho).powi(2)).abs());
            let scale = 1.0 + (s.center - w.center).euclid_norm().powi(2);
            if plus.min(minus) > tol * scale {
                return Err(GeometryError::InconsistentAssignment(b.i, b.j));
            }
            if plus <= minus {
                if found.is_some() {
                    return Err(GeometryError::InconsistentAssignment(b.i, b.j));
                }
                found = Some(side);
            }
        }
        out.insert(*b, found.ok_or(GeometryError::InconsistentAssignment(b.i, b.j))?);
    }
    Ok(out)
}

/// The two contact congruences of an associated surface: black spheres of
/// radius sin(phi) (first) and -sin(phi) (second) through the circles, lines
/// the common generators of adjacent white spheres that touch them.
pub fn contact_congruences(surf: &AssociatedSurface, koebe: &SIsothermicNet, tol: f64) -> Result<[ContactCongruence; 2]> {
    let rho = surf.phi.sin();
    // at sin(phi) = 0 the side is the limit from a slightly larger phi
    let sides = if rho.abs() < SIDE_PROBE * 1e-3 {
        plus_sides(&integrate_associated(koebe, surf.phi + SIDE_PROBE, tol)?, tol)?
    } else {
        plus_sides(surf, tol)?
    };
    let build = |first: bool| -> Result<ContactCongruence> {
        let mut black = BTreeMap::new();
        for (b, c) in &surf.circles {
            let side = if first { sides[b] } else { flip(sides[b]) };
            let mut s = sphere_through_circle_with_radius(c, rho.abs(), side)?;
            s.radius = if first { rho } else { -rho };
            black.insert(*b, s);
        }
        let lines = congruence_lines(&surf.patch, &surf.white, &black, tol)?;
        Ok(Congruence { patch: surf.patch, white: surf.white.clone(), black, lines })
    };
    Ok([build(true)?, build(false)?])
}

fn flip(s: Side) -> Side {
    match s {
        Side::Plus => Side::Minus,
        Side::Minus => Side::Plus,
    }
}

/// Laguerre offset by the (common) black radius: white radii shift by -rho,
/// black spheres shrink to their centers, lines are recomputed.
pub fn null_congruences(cc: &ContactCongruence, tol: f64) -> Result<NullCongruence> {
    let rho = cc.black.values().next().map(|s| s.radius).unwrap_or(0.0);
    if let Some(s) = cc.black.values().find(|s| (s.radius - rho).abs() > tol) {
        return Err(GeometryError::ContactLost(s.radius - rho));
    }
    let white: BTreeMap<_, _> = cc.white.iter().map(|(w, s)| (*w, s.offset(rho))).collect();
    let black: BTreeMap<_, _> = cc.black.iter().map(|(b, s)| (*b, OrientedSphere::null(s.center))).collect();
    for (b, apex) in &black {
        for w in QuadPatch::cross_neighbors(*b) {
            if let Some(s) = white.get(&w) {
                let res = contact_residual(s, apex).abs() / (1.0 + (s.center - apex.center).euclid_norm().powi(2));
                if res > tol {
                    return Err(GeometryError::ContactLost(res));
                }
            }
        }
    }
    let lines = congruence_lines(&cc.patch, &white, &black, tol)?;
    Ok(Congruence { patch: cc.patch, white, black, lines })
}

/// Distances from P0 = center of w to the projections Z_k of the
/// intersections of consecutive generators around w, and the predicted
/// |R*| / cos(alpha_k / 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexStarReport {
    pub white: Vertex,
    pub distances: [f64; 4],
    pub predicted: [f64; 4],
    /// Largest gap between consecutive generators at their closest points.
    pub meet: f64,
}

impl VertexStarReport {
    pub fn deviation(&self) -> f64 {
        (0..4).map(|k| (self.distances[k] - self.predicted[k]).abs()).fold(0.0, f64::max)
    }
}

/// Closest points of two lines and their distance.
fn meet(a: &IsotropicLine, b: &IsotropicLine) -> Result<(LVec3, f64)> {
    let (u, v) = (a.direction.to_vector(), b.direction.to_vector());
    let m = nalgebra::Matrix3x2::from_columns(&[u, -v]);
    let rhs = (b.point - a.point).to_vector();
    let st = (m.transpose() * m).lu().solve(&(m.transpose() * rhs)).ok_or(GeometryError::ParallelGenerators(f64::INFINITY))?;
    let (pa, pb) = (a.at(st[0]), b.at(st[1]));
    Ok(((pa + pb) * 0.5, (pa - pb).euclid_norm()))
}

pub fn vertex_star_analysis(
    surf: &AssociatedSurface,
    cong: &Congruence,
    koebe: &SIsothermicNet,
    w: Vertex,
    tol: f64,
) -> Result<VertexStarReport> {
    if !surf.patch.is_interior(w) {
        return Err(GeometryError::BoundaryVertex(w.i, w.j));
    }
    let m = koebe.white_sphere(w)?.center;
    let n0 = m / (-m.norm2()).sqrt();
    let proj = |x: LVec3| x + n0 * x.dot(&n0);
    let p0 = surf.white[&w].center;
    let faces = QuadPatch::star_faces(w);
    let mut lines = Vec::with_capacity(4);
    let mut dirs = Vec::with_capacity(4);
    for q in faces {
        lines.push(*cong.lines.get(&q).ok_or_else(|| GeometryError::Missing(format!("line at {q}")))?);
        let w2 = q.opposite(w).expect("white corner");
        // direction of the dual edge w -> w'
        dirs.push(proj((m - koebe.white_sphere(w2)?.center) * edge_sign(w, q)?));
    }
    let r_star = surf.white[&w].radius.abs();
    let scale = 1.0 + surf.diameter();
    let mut rep = VertexStarReport { white: w, distances: [0.0; 4], predicted: [0.0; 4], meet: 0.0 };
    for k in 0..4 {
        let (y, gap) = meet(&lines[k], &lines[(k + 1) % 4])?;
        if gap > tol * scale {
            return Err(GeometryError::ParallelGenerators(gap));
        }
        rep.meet = rep.meet.max(gap);
        let z = y + n0 * (y - p0).dot(&n0);
        rep.distances[k] = (z - p0).norm2().max(0.0).sqrt();
        let (a, b) = (dirs[k], dirs[(k + 1) % 4]);
        let alpha = (a.dot(&b) / (a.lnorm() * b.lnorm())).clamp(-1.0, 1.0).acos();
        rep.predicted[k] = r_star / (alpha / 2.0).cos();
    }
    Ok(rep)
}

/// Lorentz length of every white edge, keyed by the face it crosses.
pub fn white_edge_lengths(surf: &AssociatedSurface) -> BTreeMap<Face, f64> {
    surf.patch
        .faces()
        .map(|q| {
            let [a, b] = q.whites();
            (q, (surf.white[&a].center - surf.white[&b].center).lnorm())
        })
        .collect()
}

/// The white form cycle around one black vertex, for diagnostics.
pub fn cycle_at(form: &WhiteForm, b: Vertex) -> Result<LVec3> {
    let ws = QuadPatch::cross_neighbors(b);
    (0..4)
        .map(|k| {
            let q = face_between(ws[k], ws[(k + 1) % 4]);
            form.get(ws[k], q).ok_or_else(|| GeometryError::Missing(format!("form at {q}")))
        })
        .sum()
}

/// X-variables of the projected null congruences over a grid of phi.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XSweepReport {
    /// X of the first null congruence at phi = 0.
    pub base: XField,
    /// Largest relative drift from `base` over the grid and both congruences.
    pub drift: f64,
    /// Largest relative gap between the planar and Lorentz formulas.
    pub formula_gap: f64,
    pub samples: usize,
}

pub fn x_invariance_sweep(koebe: &SIsothermicNet, phis: &[f64], tol: f64) -> Result<XSweepReport> {
    let fields = |phi: f64| -> Result<Vec<(XField, XField)>> {
        let surf = integrate_associated(koebe, phi, tol)?;
        contact_congruences(&surf, koebe, tol)?
            .iter()
            .map(|c| {
                let n = null_congruences(c, tol)?;
                Ok((x_field_planar(&project(&n)?)?, x_field_lorentz(&n)?))
            })
            .collect()
    };
    let base = fields(0.0)?.swap_remove(0).0;
    let mut rep = XSweepReport { base, drift: 0.0, formula_gap: 0.0, samples: 0 };
    for &phi in phis {
        for (planar, lorentz) in fields(phi)? {
            rep.drift = rep.drift.max(x_deviation(&rep.base, &planar));
            rep.formula_gap = rep.formula_gap.max(x_deviation(&planar, &lorentz));
            rep.samples += planar.len();
        }
    }
    Ok(rep)
}

/// The grid k 2pi / n, k = 0..n.
pub fn phi_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 * std::f64::consts::TAU / n as f64).collect()
}
