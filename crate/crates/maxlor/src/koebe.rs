//! Lift of a disk pattern to the upper unit hyperboloid: the Koebe
//! S-isothermic net and its two null congruences.

use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::lorentz::{
    common_isotropic_lines, contact_residual, diameter, IsotropicLine, LIsometry, LVec3, OrientedSphere,
    SpacelikeCircle,
};
use crate::pattern::DiskCirclePattern;
use crate::quad::{CombinedIndex, Face, QuadPatch, Vertex};

/// Inverse stereographic projection of the unit disk onto the upper
/// hyperboloid <x,x> = -1.
pub fn sigma(z: Complex64) -> Result<LVec3> {
    let n = z.norm_sqr();
    if n >= 1.0 {
        return Err(GeometryError::OutsideDisk(n.sqrt()));
    }
    Ok(LVec3::new(2.0 * z.re, 2.0 * z.im, 1.0 + n) / (1.0 - n))
}

/// The timelike sphere meeting the hyperboloid orthogonally in the lift of
/// the disk circle (c, rho). Returns center and (unsigned) radius.
pub fn lift_circle_to_polar_sphere(c: Complex64, rho: f64) -> Result<OrientedSphere> {
    if c.norm() + rho >= 1.0 {
        return Err(GeometryError::OutsideDisk(c.norm() + rho));
    }
    let d = 1.0 - c.norm_sqr() + rho * rho;
    let m = LVec3::new(2.0 * c.re, 2.0 * c.im, 1.0 + c.norm_sqr() - rho * rho) / d;
    Ok(OrientedSphere::new(m, 2.0 * rho / d))
}

/// The lifted circle on the hyperboloid cut out by the polar sphere (m, R).
pub fn polar_sphere_circle(s: &OrientedSphere) -> SpacelikeCircle {
    let r2 = s.radius * s.radius;
    let k = (1.0 - r2).sqrt();
    SpacelikeCircle {
        center: s.center / (1.0 - r2),
        axis: s.center / k,
        radius: s.radius.abs() / k,
    }
}

/// Polar sphere (m, R) of a circle on the hyperboloid; inverse of
/// [`polar_sphere_circle`].
pub fn circle_polar_sphere(c: &SpacelikeCircle) -> OrientedSphere {
    let big_r = c.radius / (1.0 + c.radius * c.radius).sqrt();
    OrientedSphere::new(c.center * (1.0 - big_r * big_r), big_r)
}

/// Spheres at white vertices, circles at black vertices and contact points
/// at faces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SIsothermicNet {
    pub patch: QuadPatch,
    pub white: BTreeMap<Vertex, OrientedSphere>,
    pub black: BTreeMap<Vertex, SpacelikeCircle>,
    pub contact: BTreeMap<Face, LVec3>,
}

/// Residuals of the S-isothermic conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetReport {
    /// Oriented contact of adjacent white spheres.
    pub touching: f64,
    /// Contact points on their white spheres.
    pub contact_on_white: f64,
    /// Contact points on their black circles.
    pub contact_on_black: f64,
    /// Black circles meet white spheres orthogonally at the contact points.
    pub orthogonality: f64,
    pub diameter: f64,
}

impl SIsothermicNet {
    pub fn white_sphere(&self, w: Vertex) -> Result<OrientedSphere> {
        self.white.get(&w).copied().ok_or_else(|| GeometryError::Missing(format!("white sphere {w}")))
    }

    pub fn black_circle(&self, b: Vertex) -> Result<SpacelikeCircle> {
        self.black.get(&b).copied().ok_or_else(|| GeometryError::Missing(format!("black circle {b}")))
    }

    pub fn contact_point(&self, q: Face) -> Result<LVec3> {
        self.contact.get(&q).copied().ok_or_else(|| GeometryError::Missing(format!("contact {q}")))
    }

    /// Centers map: white sphere centers and black circle centers.
    pub fn center(&self, x: Vertex) -> Result<LVec3> {
        if x.is_white() {
            Ok(self.white_sphere(x)?.center)
        } else {
            Ok(self.black_circle(x)?.center)
        }
    }

    /// Positions on the combined lattice.
    pub fn combined_positions(&self) -> BTreeMap<CombinedIndex, LVec3> {
        let mut out = BTreeMap::new();
        for (w, s) in &self.white {
            out.insert(CombinedIndex::Vertex(*w), s.center);
        }
        for (b, c) in &self.black {
            out.insert(CombinedIndex::Vertex(*b), c.center);
        }
        for (q, k) in &self.contact {
            out.insert(CombinedIndex::Face(*q), *k);
        }
        out
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<LVec3> = self.combined_positions().into_values().collect();
        diameter(&pts)
    }

    pub fn report(&self) -> Result<NetReport> {
        let mut rep = NetReport {
            touching: 0.0,
            contact_on_white: 0.0,
            contact_on_black: 0.0,
            orthogonality: 0.0,
            diameter: self.diameter(),
        };
        for q in self.patch.faces() {
            let k = self.contact_point(q)?;
            let [w1, w2] = q.whites().map(|w| self.white_sphere(w));
            let (w1, w2) = (w1?, w2?);
            rep.touching = rep.touching.max(contact_residual(&w1, &w2).abs());
            for s in [w1, w2] {
                rep.contact_on_white = rep.contact_on_white.max(s.residual(k).abs());
            }
            for b in q.blacks() {
                let c = self.black_circle(b)?;
                let d = k - c.center;
                rep.contact_on_black = rep
                    .contact_on_black
                    .max((d.norm2() - c.radius * c.radius).abs())
                    .max(d.dot(&c.axis).abs());
                for s in [w1, w2] {
                    // circle tangent at k is along the sphere normal k - m
                    let nrm = k - s.center;
                    let ortho = nrm.dot(&d).abs() + nrm.dot(&c.axis).abs();
                    rep.orthogonality = rep.orthogonality.max(ortho / (1.0 + nrm.euclid_norm()));
                }
            }
        }
        Ok(rep)
    }

    /// Null-sphere apex h - eps*r*a of a black circle; eps = +1 selects
    /// the apex on the past side of the circle plane.
    pub fn apex(&self, b: Vertex, eps: f64) -> Result<LVec3> {
        let c = self.black_circle(b)?;
        Ok(c.center - c.axis * (eps * c.radius))
    }
}

/// Spheres at vertices and isotropic lines at faces, in oriented contact at
/// every incidence. Null congruences have radius-zero black spheres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Congruence {
    pub patch: QuadPatch,
    pub white: BTreeMap<Vertex, OrientedSphere>,
    pub black: BTreeMap<Vertex, OrientedSphere>,
    pub lines: BTreeMap<Face, IsotropicLine>,
}

pub type NullCongruence = Congruence;
pub type ContactCongruence = Congruence;

impl Congruence {
    /// Max oriented-contact defect over all sphere/line incidences, relative
    /// to the local scale.
    pub fn contact_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (q, line) in &self.lines {
            for x in q.corners() {
                let s = if x.is_white() { self.white.get(&x) } else { self.black.get(&x) };
                if let Some(s) = s {
                    let scale = 1.0 + s.radius.abs() + (line.point - s.center).euclid_norm();
                    worst = worst.max(line.contact_residual(s) / scale);
                }
            }
        }
        worst
    }

    pub fn is_null(&self) -> bool {
        self.black.values().all(OrientedSphere::is_null)
    }

    pub fn black_center(&self, b: Vertex) -> Result<LVec3> {
        self.black
            .get(&b)
            .map(|s| s.center)
            .ok_or_else(|| GeometryError::Missing(format!("black sphere {b}")))
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<LVec3> = self.white.values().chain(self.black.values()).map(|s| s.center).collect();
        diameter(&pts)
    }

    /// Image under a proper orthochronous isometry. Radii are kept and the
    /// lines are recomputed from the moved spheres.
    pub fn transform(&self, iso: &LIsometry, tol: f64) -> Result<Congruence> {
        if iso.q.determinant() <= 0.0 || iso.q[(2, 2)] <= 0.0 {
            return Err(GeometryError::NonTimelikeAxis(iso.q[(2, 2)]));
        }
        let mv = |m: &BTreeMap<Vertex, OrientedSphere>| -> BTreeMap<Vertex, OrientedSphere> {
            m.iter().map(|(x, s)| (*x, OrientedSphere::new(iso.apply(s.center), s.radius))).collect()
        };
        let (white, black) = (mv(&self.white), mv(&self.black));
        let lines = congruence_lines(&self.patch, &white, &black, tol)?;
        Ok(Congruence { patch: self.patch, white, black, lines })
    }
}

/// Lines of a congruence: at each face, the common isotropic line of the two
/// white spheres that lies in the black sphere(s) present at the face.
/// Faces without black data are skipped.
pub fn congruence_lines(
    patch: &QuadPatch,
    white: &BTreeMap<Vertex, OrientedSphere>,
    black: &BTreeMap<Vertex, OrientedSphere>,
    tol: f64,
) -> Result<BTreeMap<Face, IsotropicLine>> {
    let mut lines = BTreeMap::new();
    for q in patch.faces() {
        let blacks: Vec<OrientedSphere> = q.blacks().iter().filter_map(|b| black.get(b).copied()).collect();
        if blacks.is_empty() {
            continue;
        }
        let [w1, w2] = q.whites().map(|w| white[&w]);
        let scale = 1.0 + w1.radius.abs() + w2.radius.abs();
        let cands = common_isotropic_lines(&w1, &w2, tol * scale * scale)?;
        let err = |l: &IsotropicLine| {
            blacks
                .iter()
                .map(|s| l.contact_residual(s) / (1.0 + s.radius.abs() + (l.point - s.center).euclid_norm()))
                .fold(0.0, f64::max)
        };
        let best = if err(&cands[0]) <= err(&cands[1]) { cands[0] } else { cands[1] };
        if err(&best) > tol.max(1e-12) * 1e3 {
            return Err(GeometryError::DegenerateContact);
        }
        lines.insert(q, best);
    }
    Ok(lines)
}

/// Builds the Koebe net of a valid disk pattern. White spheres are the polar
/// spheres of white circles with orientations propagated from vertex (0,1);
/// black circles are the lifted black circles; contact points are the lifted
/// face points.
pub fn build_koebe_net(p: &DiskCirclePattern) -> Result<SIsothermicNet> {
    let tol = 1e-9;
    let rep = p.validate();
    if !rep.passes(tol) {
        return Err(GeometryError::PatternInvalid(format!(
            "orthogonality {:e}, incidence {:e}, extent {}",
            rep.orthogonality, rep.incidence, rep.max_extent
        )));
    }
    let patch = p.patch;
    let mut polar = BTreeMap::new();
    for x in patch.vertices() {
        let c = p.circle(x)?;
        polar.insert(x, lift_circle_to_polar_sphere(c.center, c.radius)?);
    }
    let black = patch.blacks().map(|b| (b, polar_sphere_circle(&polar[&b]))).collect();
    let contact = patch
        .faces()
        .map(|q| Ok((q, sigma(p.face_point(q)?)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let white = orient_white_spheres(&patch, &polar, tol)?;
    Ok(SIsothermicNet { patch, white, black, contact })
}

/// Breadth-first sign propagation over the white sublattice.
fn orient_white_spheres(
    patch: &QuadPatch,
    polar: &BTreeMap<Vertex, OrientedSphere>,
    tol: f64,
) -> Result<BTreeMap<Vertex, OrientedSphere>> {
    let base = patch.base_vertex();
    let mut out = BTreeMap::new();
    out.insert(base, polar[&base]);
    let mut queue = VecDeque::from([base]);
    while let Some(w) = queue.pop_front() {
        let s = out[&w];
        for q in patch.faces_of(w) {
            let w2 = q.opposite(w).expect("corner");
            let cand = polar[&w2];
            let flipped = OrientedSphere::new(cand.center, -cand.radius);
            let (ra, rb) = (contact_residual(&s, &cand).abs(), contact_residual(&s, &flipped).abs());
            let pick = if ra <= rb { cand } else { flipped };
            let scale = 1.0 + (pick.center - s.center).euclid_norm().powi(2);
            if ra.min(rb) > tol * scale {
                return Err(GeometryError::OrientationInconsistent(w2.i, w2.j));
            }
            match out.get(&w2) {
                Some(prev) if prev.radius != pick.radius => {
                    return Err(GeometryError::OrientationInconsistent(w2.i, w2.j))
                }
                Some(_) => {}
                None => {
                    out.insert(w2, pick);
                    queue.push_back(w2);
                }
            }
        }
    }
    Ok(out)
}

/// Apex choice of congruence `k` (1 or 2) at black vertex b: congruence 1
/// takes eps = +1 at even b.i and -1 at odd b.i.
pub fn apex_sign(k: u8, b: Vertex) -> f64 {
    let parity = if b.i.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    if k == 1 {
        parity
    } else {
        -parity
    }
}

/// The two null congruences of an S-isothermic net: black null spheres at
/// the two apices h -/+ r a of each black circle, paired so that every face
/// line passes through the apices at both of its black vertices.
pub fn koebe_congruences(net: &SIsothermicNet) -> Result<[NullCongruence; 2]> {
    let tol = 1e-9;
    let build = |k: u8| -> Result<NullCongruence> {
        let black = net
            .patch
            .blacks()
            .map(|b| Ok((b, OrientedSphere::null(net.apex(b, apex_sign(k, b))?))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let lines = congruence_lines(&net.patch, &net.white, &black, tol)?;
        Ok(Congruence { patch: net.patch, white: net.white.clone(), black, lines })
    };
    Ok([build(1)?, build(2)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::gen_regular_pattern;
    use crate::quad::v;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(Complex64::new(0.0, 0.0)).unwrap(), LVec3::E3);
        let s = sigma(Complex64::new(0.6, 0.0)).unwrap();
        assert_abs_diff_eq!(s.x1, 1.875, epsilon = 1e-15);
        assert_abs_diff_eq!(s.x3, 2.125, epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm2(), -1.0, epsilon = 1e-14);
        assert!(sigma(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn polar_sphere_values() {
        let s = lift_circle_to_polar_sphere(Complex64::new(0.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(s.center.x3, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.radius, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(s.center.norm2(), s.radius * s.radius - 1.0, epsilon = 1e-15);
        let s = lift_circle_to_polar_sphere(Complex64::new(0.2, 0.0), 0.3).unwrap();
        assert_abs_diff_eq!(s.radius, 0.6 / 1.05, epsilon = 1e-15);
    }

    #[test]
    fn point_circle_lifts_to_hyperboloid_point() {
        let c = Complex64::new(0.3, -0.2);
        let s = lift_circle_to_polar_sphere(c, 1e-9).unwrap();
        assert!((s.center - sigma(c).unwrap()).max_abs() < 1e-8);
        assert!(s.radius < 1e-8);
    }

    #[test]
    fn lifted_circle_points_lie_on_both() {
        let c = Complex64::new(0.1, 0.25);
        let rho = 0.2;
        let s = lift_circle_to_polar_sphere(c, rho).unwrap();
        let circ = polar_sphere_circle(&s);
        for k in 0..6 {
            let z = c + Complex64::from_polar(rho, k as f64);
            let x = sigma(z).unwrap();
            assert!(s.residual(x).abs() < 1e-13);
            assert!(((x - circ.center).norm2() - circ.radius.powi(2)).abs() < 1e-13);
        }
        let back = circle_polar_sphere(&circ);
        assert!((back.center - s.center).max_abs() < 1e-14);
        assert_abs_diff_eq!(back.radius, s.radius, epsilon = 1e-14);
    }

    #[test]
    fn koebe_net_of_regular_pattern() {
        let p = gen_regular_pattern(4, 4, 0.2).unwrap();
        let net = build_koebe_net(&p).unwrap();
        let rep = net.report().unwrap();
        assert!(rep.touching < 1e-12, "{rep:?}");
        assert!(rep.contact_on_white < 1e-12 && rep.contact_on_black < 1e-12);
        assert!(rep.orthogonality < 1e-12);
        assert!(net.white[&v(0, 1)].radius > 0.0);
        assert!(net.white[&v(1, 2)].radius < 0.0);
    }

    #[test]
    fn congruence_apices_are_polar_ratios() {
        let p = gen_regular_pattern(4, 4, 0.2).unwrap();
        let net = build_koebe_net(&p).unwrap();
        let [c1, c2] = koebe_congruences(&net).unwrap();
        let b = v(2, 2);
        let s = lift_circle_to_polar_sphere(p.circles[&b].center, p.circles[&b].radius).unwrap();
        assert!((c1.black[&b].center - s.center / (1.0 + s.radius)).max_abs() < 1e-14);
        assert!((c2.black[&b].center - s.center / (1.0 - s.radius)).max_abs() < 1e-14);
        let b = v(1, 1);
        assert!((c1.black[&b].center - s_of(&p, b).center / (1.0 - s_of(&p, b).radius)).max_abs() < 1e-14);
        assert!(c1.contact_residual() < 1e-10 && c2.contact_residual() < 1e-10);
    }

    fn s_of(p: &DiskCirclePattern, b: Vertex) -> OrientedSphere {
        lift_circle_to_polar_sphere(p.circles[&b].center, p.circles[&b].radius).unwrap()
    }

    #[test]
    fn invalid_pattern_is_rejected() {
        let mut p = gen_regular_pattern(3, 3, 0.2).unwrap();
        p.circles.get_mut(&v(1, 1)).unwrap().radius *= 1.05;
        assert!(matches!(build_koebe_net(&p), Err(GeometryError::PatternInvalid(_))));
    }
}
