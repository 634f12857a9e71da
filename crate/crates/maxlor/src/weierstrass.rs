//! Closed-form edge increments of the maximal surface and its congruences,
//! computed directly from the disk pattern.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::christoffel::integrate_dual;
use crate::error::{GeometryError, Result};
use crate::incircular::{project, IncircularNet};
use crate::koebe::{apex_sign, congruence_lines, lift_circle_to_polar_sphere, sigma, Congruence, SIsothermicNet};
use crate::lorentz::{LVec3, OrientedSphere, SpacelikeCircle};
use crate::pattern::DiskCirclePattern;
use crate::quad::{edge_sign, CombinedIndex, Face, OneForm, Vertex};

/// Dual white radius (1 - |c|^2 + rho^2) / (2 rho).
pub fn w_radius_white(c: Complex64, rho: f64) -> Result<f64> {
    if rho == 0.0 {
        return Err(GeometryError::ZeroRadius);
    }
    Ok((1.0 - c.norm_sqr() + rho * rho) / (2.0 * rho))
}

/// Polar radius 2 rho / (1 - |c|^2 + rho^2) of a black circle.
pub fn w_radius_black(c: Complex64, rho: f64) -> f64 {
    2.0 * rho / (1.0 - c.norm_sqr() + rho * rho)
}

/// Radius R / sqrt(1 - R^2) of the lifted circle with polar radius R.
pub fn lifted_circle_radius(big_r: f64) -> f64 {
    big_r / (1.0 - big_r * big_r).sqrt()
}

/// Re[conj(u) (1 + q^2, i (1 - q^2), 2 q)] / (1 - |q|^2) for unit u.
pub fn tangent(u: Complex64, q: Complex64) -> Result<LVec3> {
    if u.norm() == 0.0 {
        return Err(GeometryError::CoincidentCenters);
    }
    let u = u.conj() / u.norm();
    let q2 = q * q;
    let i = Complex64::i();
    let v = [u * (1.0 + q2), u * i * (1.0 - q2), u * 2.0 * q];
    Ok(LVec3::new(v[0].re, v[1].re, v[2].re) / (1.0 - q.norm_sqr()))
}

/// Normal N and the two unit tangents of a face: T_white from the white
/// centers (whites[0] - whites[1]), T_black from the black centers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WFrame {
    pub normal: LVec3,
    pub t_white: LVec3,
    pub t_black: LVec3,
}

impl WFrame {
    /// max of |<N,N> + 1|, |<T,T> - 1| and |<N,T>|.
    pub fn defect(&self) -> f64 {
        [
            (self.normal.norm2() + 1.0).abs(),
            (self.t_white.norm2() - 1.0).abs(),
            (self.t_black.norm2() - 1.0).abs(),
            self.normal.dot(&self.t_white).abs(),
            self.normal.dot(&self.t_black).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn center(p: &DiskCirclePattern, x: Vertex) -> Result<Complex64> {
    Ok(p.circle(x)?.center)
}

pub fn w_frame(q: Face, p: &DiskCirclePattern) -> Result<WFrame> {
    let z = p.face_point(q)?;
    let [w1, w2] = q.whites();
    let [b1, b2] = q.blacks();
    Ok(WFrame {
        normal: sigma(z)?,
        t_white: tangent(center(p, w1)? - center(p, w2)?, z)?,
        t_black: tangent(center(p, b1)? - center(p, b2)?, z)?,
    })
}

/// h*(w) - h*(w') across face q: -sign(w, q) (R*(w) + R*(w')) T with T built
/// from c(w) - c(w').
pub fn w_edge_white(w: Vertex, w2: Vertex, q: Face, p: &DiskCirclePattern) -> Result<LVec3> {
    let (a, b) = (p.circle(w)?, p.circle(w2)?);
    let t = tangent(a.center - b.center, p.face_point(q)?)?;
    let rr = w_radius_white(a.center, a.radius)? + w_radius_white(b.center, b.radius)?;
    Ok(t * (-edge_sign(w, q)? * rr))
}

/// h*(w) - K*(q) = -sign(w, q) R*(w) T.
pub fn w_white_contact(w: Vertex, q: Face, p: &DiskCirclePattern) -> Result<LVec3> {
    let w2 = q.opposite(w).ok_or_else(|| GeometryError::InvalidEdge(format!("{w} -> face {q}")))?;
    let (a, b) = (p.circle(w)?, p.circle(w2)?);
    let t = tangent(a.center - b.center, p.face_point(q)?)?;
    Ok(t * (-edge_sign(w, q)? * w_radius_white(a.center, a.radius)?))
}

/// h*(b) - K*(q) = -sign(b, q) (T + R N) / R for the dual black circle
/// center.
pub fn w_black_circle_contact(b: Vertex, q: Face, p: &DiskCirclePattern) -> Result<LVec3> {
    let b2 = q.opposite(b).ok_or_else(|| GeometryError::InvalidEdge(format!("{b} -> face {q}")))?;
    let (c, c2) = (p.circle(b)?, p.circle(b2)?);
    let z = p.face_point(q)?;
    let t = tangent(c.center - c2.center, z)?;
    let big_r = w_radius_black(c.center, c.radius);
    Ok((t + sigma(z)? * big_r) * (-edge_sign(b, q)? / big_r))
}

/// Black and white contact increments for congruence `k`:
/// c*(b) - K*(q) = -s (1 - e R)/R (T - e N) with e = s eps(b), and
/// h*(w) - K*(q).
pub fn w_contact_increments(b: Vertex, w: Vertex, q: Face, p: &DiskCirclePattern, k: u8) -> Result<(LVec3, LVec3)> {
    let b2 = q.opposite(b).ok_or_else(|| GeometryError::InvalidEdge(format!("{b} -> face {q}")))?;
    let (c, c2) = (p.circle(b)?, p.circle(b2)?);
    if c.radius == 0.0 {
        return Err(GeometryError::ZeroRadius);
    }
    let z = p.face_point(q)?;
    let t = tangent(c.center - c2.center, z)?;
    let s = edge_sign(b, q)?;
    let e = s * apex_sign(k, b);
    let big_r = w_radius_black(c.center, c.radius);
    let black = (t - sigma(z)? * e) * (-s * (1.0 - e * big_r) / big_r);
    Ok((black, w_white_contact(w, q, p)?))
}

/// Maximal surface, its null congruence `k` and the projected incircular
/// net, all assembled from the closed-form increments.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData {
    pub net: SIsothermicNet,
    pub congruence: Congruence,
    pub incircular: IncircularNet,
    pub residual: f64,
    pub congruence_residual: f64,
    /// Largest frame defect over all faces.
    pub frame_defect: f64,
}

pub fn assemble_weierstrass(p: &DiskCirclePattern, k: u8, tol: f64) -> Result<WeierstrassData> {
    let patch = p.patch;
    let mut iso = OneForm::new();
    let mut cong = OneForm::new();
    let mut frame_defect = 0.0f64;
    for q in patch.faces() {
        frame_defect = frame_defect.max(w_frame(q, p)?.defect());
        let [w1, w2] = q.whites();
        for w in [w1, w2] {
            let d = -w_white_contact(w, q, p)?;
            iso.insert(w, q, d);
            cong.insert(w, q, d);
        }
        for b in q.blacks() {
            iso.insert(b, q, -w_black_circle_contact(b, q, p)?);
            let (db, _) = w_contact_increments(b, w1, q, p, k)?;
            cong.insert(b, q, -db);
        }
    }
    let (pos, residual) = integrate_dual(&patch, &iso, tol)?;
    let (cpos, congruence_residual) = integrate_dual(&patch, &cong, tol)?;

    let mut white = BTreeMap::new();
    for w in patch.whites() {
        let c = p.circle(w)?;
        let sign = if w.i.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        white.insert(w, OrientedSphere::new(pos.vertex(w)?, sign * w_radius_white(c.center, c.radius)?));
    }
    let mut black = BTreeMap::new();
    let mut apices = BTreeMap::new();
    for b in patch.blacks() {
        let c = p.circle(b)?;
        let polar = lift_circle_to_polar_sphere(c.center, c.radius)?;
        let axis = polar.center.lnormalized();
        let radius = 1.0 / lifted_circle_radius(polar.radius);
        black.insert(b, SpacelikeCircle { center: pos.vertex(b)?, axis, radius });
        apices.insert(b, OrientedSphere::null(cpos.vertex(b)?));
    }
    let contact = patch
        .faces()
        .map(|q| Ok((q, pos.position(CombinedIndex::Face(q))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let lines = congruence_lines(&patch, &white, &apices, tol)?;
    let congruence = Congruence { patch, white: white.clone(), black: apices, lines };
    let incircular = project(&congruence)?;
    Ok(WeierstrassData {
        net: SIsothermicNet { patch, white, black, contact },
        congruence,
        incircular,
        residual,
        congruence_residual,
        frame_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koebe::build_koebe_net;
    use crate::pattern::gen_regular_pattern;
    use crate::quad::{f, v};
    use approx::assert_abs_diff_eq;

    fn pattern() -> DiskCirclePattern {
        gen_regular_pattern(4, 4, 0.2).unwrap().apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3).unwrap()
    }

    #[test]
    fn radius_values() {
        assert_abs_diff_eq!(w_radius_white(Complex64::new(0.0, 0.0), 0.5).unwrap(), 1.25, epsilon = 1e-15);
        let (c, rho) = (Complex64::new(0.2, -0.1), 0.3);
        assert_abs_diff_eq!(w_radius_white(c, rho).unwrap() * w_radius_black(c, rho), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lifted_circle_radius(0.6), 0.75, epsilon = 1e-15);
        assert!(w_radius_white(c, 0.0).is_err());
    }

    #[test]
    fn frame_at_origin() {
        let t = tangent(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(t, LVec3::E1);
        assert_eq!(sigma(Complex64::new(0.0, 0.0)).unwrap(), LVec3::E3);
    }

    #[test]
    fn frames_are_orthonormal() {
        let p = pattern();
        for q in p.patch.faces() {
            assert!(w_frame(q, &p).unwrap().defect() < 1e-12);
        }
    }

    #[test]
    fn white_tangent_is_koebe_edge_direction() {
        let p = pattern();
        let net = build_koebe_net(&p).unwrap();
        for q in p.patch.faces() {
            let [w1, w2] = q.whites();
            let (a, b) = (net.white[&w1], net.white[&w2]);
            let t = w_frame(q, &p).unwrap().t_white;
            let edge = a.center - b.center;
            assert!((edge - t * (a.radius.abs() + b.radius.abs())).max_abs() < 1e-12);
        }
    }

    #[test]
    fn edge_increment_properties() {
        let p = pattern();
        let q = f(1, 2);
        let [w1, w2] = q.whites();
        let a = w_edge_white(w1, w2, q, &p).unwrap();
        let b = w_edge_white(w2, w1, q, &p).unwrap();
        assert!((a + b).max_abs() < 1e-14);
        let (c1, c2) = (p.circles[&w1], p.circles[&w2]);
        let len = w_radius_white(c1.center, c1.radius).unwrap() + w_radius_white(c2.center, c2.radius).unwrap();
        assert!((a.lnorm() - len).abs() < 1e-12);
        let (black, white) = w_contact_increments(v(1, 1), w1, f(1, 1), &p, 1).unwrap();
        assert!(black.norm2().abs() < 1e-10 * black.euclid_norm().powi(2).max(1.0));
        let c = p.circles[&w1];
        assert!((white.lnorm() - w_radius_white(c.center, c.radius).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn assembled_net_is_valid() {
        let p = pattern();
        let wd = assemble_weierstrass(&p, 1, 1e-9).unwrap();
        let diam = wd.net.diameter();
        assert!(wd.residual < 1e-11 * diam && wd.congruence_residual < 1e-11 * diam);
        assert!(wd.net.report().unwrap().touching < 1e-10 * diam * diam);
        assert!(wd.congruence.contact_residual() < 1e-9);
        assert!(wd.incircular.validate().passes(1e-9));
        for (w, c) in &wd.incircular.white {
            assert_eq!(c.radius, wd.net.white[w].radius);
        }
    }

    #[test]
    fn matches_christoffel_dual() {
        use crate::christoffel::{dualize, fit_translation};
        use crate::koebe::koebe_congruences;
        let p = pattern();
        let net = build_koebe_net(&p).unwrap();
        let cs = koebe_congruences(&net).unwrap();
        for k in [1u8, 2] {
            let d = dualize(&net, &cs[k as usize - 1], 1e-9).unwrap();
            let wd = assemble_weierstrass(&p, k, 1e-9).unwrap();
            let a: Vec<LVec3> = wd.net.combined_positions().into_values().collect();
            let b: Vec<LVec3> = d.net.combined_positions().into_values().collect();
            assert!(fit_translation(&a, &b).residual < 1e-9 * d.net.diameter());
            for (x, s) in &d.congruence.black {
                assert!((wd.congruence.black[x].center - s.center).max_abs() < 1e-9 * d.net.diameter());
            }
            for (x, c) in &d.net.black {
                assert!((wd.net.black[x].radius - c.radius).abs() < 1e-10 * c.radius);
                assert!((wd.net.black[x].axis - c.axis).max_abs() < 1e-12);
            }
        }
    }
}
