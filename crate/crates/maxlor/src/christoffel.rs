//! Christoffel dualization on the combined lattice and the maximality checks
//! for the resulting nets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::koebe::{congruence_lines, Congruence, NullCongruence, SIsothermicNet};
use crate::lorentz::{diameter, LVec3, OrientedSphere, SpacelikeCircle};
use crate::quad::{edge_sign, face_between, integrate_form, CombinedIndex, OneForm, QuadPatch, Vertex};

/// Positions on the combined lattice: vertex centers and face contact points.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedNet {
    pub patch: QuadPatch,
    pub positions: BTreeMap<CombinedIndex, LVec3>,
}

impl CombinedNet {
    pub fn from_sisothermic(net: &SIsothermicNet) -> Self {
        CombinedNet { patch: net.patch, positions: net.combined_positions() }
    }

    /// Congruence centers at vertices, contact points of `net` at faces.
    pub fn from_congruence(net: &SIsothermicNet, cong: &Congruence) -> Self {
        let mut positions = net.combined_positions();
        for (x, s) in cong.white.iter().chain(cong.black.iter()) {
            positions.insert(CombinedIndex::Vertex(*x), s.center);
        }
        CombinedNet { patch: net.patch, positions }
    }

    pub fn position(&self, x: CombinedIndex) -> Result<LVec3> {
        self.positions.get(&x).copied().ok_or_else(|| GeometryError::Missing(format!("{x:?}")))
    }

    pub fn vertex(&self, x: Vertex) -> Result<LVec3> {
        self.position(CombinedIndex::Vertex(x))
    }

    pub fn diameter(&self) -> f64 {
        diameter(self.positions.values())
    }
}

/// The isothermic dual form: on x -> q the value sign * (h(x) - h(q)) / |h(x) - h(q)|^2.
pub fn dual_form_isothermic(net: &CombinedNet) -> Result<OneForm> {
    let mut form = OneForm::new();
    for q in net.patch.faces() {
        let hq = net.position(CombinedIndex::Face(q))?;
        for x in q.corners() {
            let d = net.vertex(x)? - hq;
            let n2 = d.norm2();
            if n2.abs() <= 1e-300 || n2.abs() < 1e-24 * d.euclid_norm().powi(2) {
                return Err(GeometryError::ZeroLengthEdge);
            }
            form.insert(x, q, d * (edge_sign(x, q)? / n2));
        }
    }
    Ok(form)
}

/// The dual form of a null congruence. White half-edges are divided by R^2.
/// Black half-edges are isotropic; their in-plane part h(b) - K is treated
/// like a white half-edge and divided by r^2, while the axis part
/// c(b) - h(b) is divided by r^2 without the sign.
pub fn dual_form_congruence(net: &SIsothermicNet, cong: &Congruence) -> Result<OneForm> {
    let mut form = OneForm::new();
    for q in net.patch.faces() {
        let k = net.contact_point(q)?;
        for x in q.corners() {
            let s = edge_sign(x, q)?;
            let value = if x.is_white() {
                let sph = cong.white.get(&x).ok_or_else(|| GeometryError::Missing(format!("white {x}")))?;
                if sph.radius == 0.0 {
                    return Err(GeometryError::ZeroRadius);
                }
                (sph.center - k) * (s / (sph.radius * sph.radius))
            } else {
                let c = net.black_circle(x)?;
                if c.radius == 0.0 {
                    return Err(GeometryError::ZeroRadius);
                }
                let apex = cong.black_center(x)?;
                let r2 = c.radius * c.radius;
                (c.center - k) * (s / r2) + (apex - c.center) / r2
            };
            form.insert(x, q, value);
        }
    }
    Ok(form)
}

/// Integrate a combined-lattice form from the base vertex at the origin and
/// fail if the largest cycle residual exceeds `tol` times the diameter of
/// the result.
pub fn integrate_dual(patch: &QuadPatch, form: &OneForm, tol: f64) -> Result<(CombinedNet, f64)> {
    let base = CombinedIndex::Vertex(patch.base_vertex());
    let int = integrate_form(patch, form, base, LVec3::ZERO)?;
    let net = CombinedNet { patch: *patch, positions: int.values };
    if !(int.residual <= tol * net.diameter().max(1.0)) {
        return Err(GeometryError::NotClosed { residual: int.residual });
    }
    Ok((net, int.residual))
}

/// Dual of an S-isothermic net together with the dual of one of its null
/// congruences.
#[derive(Debug, Clone, PartialEq)]
pub struct Dualized {
    pub net: SIsothermicNet,
    pub congruence: NullCongruence,
    /// Cycle residual of the isothermic dual form.
    pub residual: f64,
    /// Cycle residual of the congruence dual form.
    pub congruence_residual: f64,
}

/// Dual net: white radii 1/R, black circles of radius 1/r in planes parallel
/// to the original ones, centers and contact points from the integrated
/// dual form.
pub fn dualize(net: &SIsothermicNet, cong: &NullCongruence, tol: f64) -> Result<Dualized> {
    let (dual, residual) = dual_positions(net, tol)?;
    let form = dual_form_congruence(net, cong)?;
    let (cdual, congruence_residual) = integrate_dual(&net.patch, &form, tol)?;
    let black = cong
        .black
        .keys()
        .map(|b| Ok((*b, OrientedSphere::null(cdual.vertex(*b)?))))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let lines = congruence_lines(&net.patch, &dual.white, &black, tol)?;
    let congruence = Congruence { patch: net.patch, white: dual.white.clone(), black, lines };
    Ok(Dualized { net: dual, congruence, residual, congruence_residual })
}

/// The isothermic dual of an S-isothermic net.
pub fn dual_positions(net: &SIsothermicNet, tol: f64) -> Result<(SIsothermicNet, f64)> {
    let form = dual_form_isothermic(&CombinedNet::from_sisothermic(net))?;
    let (pos, residual) = integrate_dual(&net.patch, &form, tol)?;
    let white = net
        .white
        .iter()
        .map(|(w, s)| Ok((*w, OrientedSphere::new(pos.vertex(*w)?, 1.0 / s.radius))))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let black = net
        .black
        .iter()
        .map(|(b, c)| {
            let circle = SpacelikeCircle { center: pos.vertex(*b)?, axis: c.axis, radius: 1.0 / c.radius };
            Ok((*b, circle))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let contact = net
        .contact
        .keys()
        .map(|q| Ok((*q, pos.position(CombinedIndex::Face(*q))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok((SIsothermicNet { patch: net.patch, white, black, contact }, residual))
}

/// x -> scale * x + translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub scale: f64,
    pub translation: LVec3,
    /// Largest coordinate deviation after the fit.
    pub residual: f64,
}

impl Similarity {
    pub fn apply(&self, x: LVec3) -> LVec3 {
        x * self.scale + self.translation
    }
}

fn centroid(pts: &[LVec3]) -> LVec3 {
    pts.iter().copied().sum::<LVec3>() / pts.len().max(1) as f64
}

/// Least-squares similarity taking `src` to `dst`.
pub fn fit_similarity(src: &[LVec3], dst: &[LVec3]) -> Similarity {
    let (cs, cd) = (centroid(src), centroid(dst));
    let num: f64 = src.iter().zip(dst).map(|(s, d)| (*s - cs).euclid_dot(&(*d - cd))).sum();
    let den: f64 = src.iter().map(|s| (*s - cs).euclid_dot(&(*s - cs))).sum();
    let scale = if den > 0.0 { num / den } else { 1.0 };
    let mut sim = Similarity { scale, translation: cd - cs * scale, residual: 0.0 };
    sim.residual = src.iter().zip(dst).map(|(s, d)| (sim.apply(*s) - *d).max_abs()).fold(0.0, f64::max);
    sim
}

/// Least-squares translation taking `src` to `dst`.
pub fn fit_translation(src: &[LVec3], dst: &[LVec3]) -> Similarity {
    let t = centroid(dst) - centroid(src);
    let residual = src.iter().zip(dst).map(|(s, d)| (*s + t - *d).max_abs()).fold(0.0, f64::max);
    Similarity { scale: 1.0, translation: t, residual }
}

/// Similarity fit between the net and its dual of the dual, over all
/// combined-lattice positions.
pub fn involution_fit(net: &SIsothermicNet, tol: f64) -> Result<Similarity> {
    let (dual, _) = dual_positions(net, tol)?;
    let (back, _) = dual_positions(&dual, tol)?;
    let a: Vec<LVec3> = back.combined_positions().into_values().collect();
    let b: Vec<LVec3> = net.combined_positions().into_values().collect();
    Ok(fit_similarity(&a, &b))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalityReport {
    /// Largest |det| of the black centers around an interior white vertex.
    pub max_volume: f64,
    pub diameter: f64,
    /// max_volume / diameter^3.
    pub normalized: f64,
    pub worst: Option<Vertex>,
}

impl MaximalityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_volume <= tol * self.diameter.powi(3)
    }
}

fn tetra_det(p: [LVec3; 4]) -> f64 {
    let m = nalgebra::Matrix3::from_columns(&[
        (p[1] - p[0]).to_vector(),
        (p[2] - p[0]).to_vector(),
        (p[3] - p[0]).to_vector(),
    ]);
    m.determinant()
}

/// Coplanarity of the four black circle centers around each interior white
/// vertex.
pub fn check_maximal(net: &SIsothermicNet) -> Result<MaximalityReport> {
    let mut worst = (0.0f64, None);
    for w in net.patch.interior_whites() {
        let [a, b, c, d] = QuadPatch::cross_neighbors(w).map(|b| net.black_circle(b).map(|c| c.center));
        let vol = tetra_det([a?, b?, c?, d?]).abs();
        if worst.1.is_none() || vol > worst.0 {
            worst = (vol, Some(w));
        }
    }
    let diam = net.diameter();
    Ok(MaximalityReport {
        max_volume: worst.0,
        diameter: diam,
        normalized: if diam > 0.0 { worst.0 / diam.powi(3) } else { 0.0 },
        worst: worst.1,
    })
}

/// Steiner expansion A(t) = A0 - 2 H t + K t^2 of one quad of white centers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinerFace {
    /// Black vertex the quad surrounds.
    pub black: Vertex,
    pub area: f64,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    /// Deviation of a fourth sample at t = 2h from the fitted quadratic.
    pub fit_defect: f64,
}

/// Vector area 1/2 sum eta(p_k x p_k+1) of a closed polygon.
pub fn vector_area(p: &[LVec3]) -> LVec3 {
    (0..p.len()).map(|k| p[k].cross(&p[(k + 1) % p.len()])).sum::<LVec3>() * 0.5
}

/// White quads around the interior black vertices, offset along `normals`.
/// Areas use the metric induced on the spacelike face plane.
pub fn steiner_coefficients(
    net: &SIsothermicNet,
    normals: &BTreeMap<Vertex, LVec3>,
    tol: f64,
) -> Result<Vec<SteinerFace>> {
    let diam = net.diameter();
    let h = 1e-2 * diam;
    let mut out = Vec::new();
    for b in net.patch.interior_blacks() {
        let ws = QuadPatch::cross_neighbors(b);
        let [a, b2, c, d] = ws.map(|w| net.white_sphere(w).map(|s| s.center));
        let p = [a?, b2?, c?, d?];
        let normal = |w: Vertex| normals.get(&w).copied().ok_or_else(|| GeometryError::Missing(format!("normal {w}")));
        let nq = [normal(ws[0])?, normal(ws[1])?, normal(ws[2])?, normal(ws[3])?];
        let v0 = vector_area(&p);
        let n2 = v0.norm2();
        if n2 >= 0.0 {
            return Err(GeometryError::DegenerateFacePlane);
        }
        let n = v0 / (-n2).sqrt();
        let offset = |t: f64| -> Result<f64> {
            let q: [LVec3; 4] = std::array::from_fn(|k| p[k] + nq[k] * t);
            let scale = diameter(q.iter()).max(f64::MIN_POSITIVE);
            let planarity = tetra_det(q).abs() / scale.powi(3);
            if planarity > tol {
                return Err(GeometryError::NonPlanarOffsetQuad(planarity));
            }
            Ok(-vector_area(&q).dot(&n))
        };
        let (a0, ap, am, a2) = (offset(0.0)?, offset(h)?, offset(-h)?, offset(2.0 * h)?);
        let mean = -(ap - am) / (4.0 * h);
        let gauss = (ap + am - 2.0 * a0) / (2.0 * h * h);
        let fit_defect = (a2 - (a0 - 4.0 * mean * h + 4.0 * gauss * h * h)).abs();
        out.push(SteinerFace { black: b, area: a0, mean_curvature: mean, gauss_curvature: gauss, fit_defect });
    }
    Ok(out)
}

/// Quad of white sphere centers around black vertex `b` with its four
/// contact points, in the order b+(1,0), b+(0,1), b-(1,0), b-(0,1).
pub fn white_quad(net: &SIsothermicNet, b: Vertex) -> Result<([LVec3; 4], [LVec3; 4], [f64; 4])> {
    let ws = QuadPatch::cross_neighbors(b);
    let mut p = [LVec3::ZERO; 4];
    let mut k = [LVec3::ZERO; 4];
    let mut r = [0.0; 4];
    for i in 0..4 {
        let s = net.white_sphere(ws[i])?;
        p[i] = s.center;
        r[i] = s.radius.abs();
        k[i] = net.contact_point(face_between(ws[i], ws[(i + 1) % 4]))?;
    }
    Ok((p, k, r))
}

/// Lorentz angles at the corners of a spacelike quad.
pub fn corner_angles(p: &[LVec3; 4]) -> [f64; 4] {
    std::array::from_fn(|i| {
        let a = p[(i + 3) % 4] - p[i];
        let b = p[(i + 1) % 4] - p[i];
        (a.dot(&b) / (a.lnorm() * b.lnorm())).clamp(-1.0, 1.0).acos()
    })
}

/// Comparison of each Koebe quad with its dual quad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualQuadReport {
    /// max |gamma* + gamma - pi|.
    pub angle: f64,
    /// max |K* - P* - R* T*| with T* the unit dual edge.
    pub contact: f64,
    /// max of |T* -/+ T| over the better sign.
    pub tangent: f64,
    /// max |r r* - 1|.
    pub incircle: f64,
}

pub fn dual_quad_report(net: &SIsothermicNet, dual: &SIsothermicNet) -> Result<DualQuadReport> {
    let mut rep = DualQuadReport { angle: 0.0, contact: 0.0, tangent: 0.0, incircle: 0.0 };
    for b in net.patch.interior_blacks() {
        let (p, _, _) = white_quad(net, b)?;
        let (ps, ks, rs) = white_quad(dual, b)?;
        let (g, gs) = (corner_angles(&p), corner_angles(&ps));
        for i in 0..4 {
            rep.angle = rep.angle.max((g[i] + gs[i] - std::f64::consts::PI).abs());
            let t = (p[(i + 1) % 4] - p[i]).lnormalized();
            let ts = (ps[(i + 1) % 4] - ps[i]).lnormalized();
            rep.tangent = rep.tangent.max((ts - t).max_abs().min((ts + t).max_abs()));
            rep.contact = rep.contact.max((ks[i] - ps[i] - ts * rs[i]).max_abs());
        }
        let r = net.black_circle(b)?.radius;
        let rd = dual.black_circle(b)?.radius;
        rep.incircle = rep.incircle.max((r * rd - 1.0).abs());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koebe::{build_koebe_net, koebe_congruences};
    use crate::pattern::gen_regular_pattern;
    use crate::quad::{f, v};
    use num_complex::Complex64;

    fn koebe() -> SIsothermicNet {
        let p = gen_regular_pattern(4, 4, 0.2).unwrap();
        let p = p.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3).unwrap();
        build_koebe_net(&p).unwrap()
    }

    #[test]
    fn dual_edge_has_reciprocal_length() {
        let net = koebe();
        let form = dual_form_isothermic(&CombinedNet::from_sisothermic(&net)).unwrap();
        let (x, q) = (v(0, 1), f(0, 0));
        let d = net.white[&x].center - net.contact[&q];
        let val = form.get(x, q).unwrap();
        assert!((val.lnorm() * d.lnorm() - 1.0).abs() < 1e-12);
        // (0,1) -> face (0,0) has offset (1/2, -1/2): vertical
        assert!((val + d / d.norm2()).max_abs() < 1e-12);
    }

    #[test]
    fn dual_closes_and_is_maximal() {
        let net = koebe();
        let [c1, _] = koebe_congruences(&net).unwrap();
        let d = dualize(&net, &c1, 1e-9).unwrap();
        let diam = d.net.diameter();
        assert!(d.residual < 1e-11 * diam && d.congruence_residual < 1e-11 * diam);
        assert!(d.net.report().unwrap().touching < 1e-10 * diam * diam);
        assert!(check_maximal(&d.net).unwrap().passes(1e-9));
        assert!(!check_maximal(&net).unwrap().passes(1e-9));
        assert!(d.congruence.contact_residual() < 1e-9);
        assert!((d.net.white[&v(0, 1)].radius * net.white[&v(0, 1)].radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn congruence_white_part_matches_isothermic_dual() {
        let net = koebe();
        let [c1, c2] = koebe_congruences(&net).unwrap();
        for c in [c1, c2] {
            let d = dualize(&net, &c, 1e-9).unwrap();
            for (w, s) in &d.congruence.white {
                assert!((s.center - d.net.white[w].center).max_abs() < 1e-10);
            }
            for (b, s) in &d.congruence.black {
                let circ = d.net.black[b];
                let off = s.center - circ.center;
                assert!((off.norm2() + circ.radius.powi(2)).abs() < 1e-9 * (1.0 + circ.radius.powi(2)));
                assert!(off.euclid_cross(&circ.axis).max_abs() < 1e-9 * (1.0 + circ.radius));
            }
        }
    }

    #[test]
    fn black_congruence_half_edges_are_isotropic() {
        let net = koebe();
        let [c1, _] = koebe_congruences(&net).unwrap();
        for q in net.patch.faces() {
            for b in q.blacks() {
                let d = c1.black[&b].center - net.contact[&q];
                assert!(d.norm2().abs() < 1e-10 * (1.0 + d.euclid_norm().powi(2)));
            }
        }
    }

    #[test]
    fn dual_of_dual_is_similar() {
        let net = koebe();
        let sim = involution_fit(&net, 1e-9).unwrap();
        assert!(sim.residual < 1e-10 * net.diameter(), "{sim:?}");
        assert!((sim.scale - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dual_quads() {
        let net = koebe();
        let (dual, _) = dual_positions(&net, 1e-9).unwrap();
        let rep = dual_quad_report(&net, &dual).unwrap();
        assert!(rep.angle < 1e-10 && rep.contact < 1e-10 && rep.tangent < 1e-10 && rep.incircle < 1e-12, "{rep:?}");
    }

    #[test]
    fn steiner_mean_curvature_vanishes() {
        let net = koebe();
        let (dual, _) = dual_positions(&net, 1e-9).unwrap();
        let normals = net.white.iter().map(|(w, s)| (*w, s.center)).collect();
        let faces = steiner_coefficients(&dual, &normals, 1e-9).unwrap();
        assert!(!faces.is_empty());
        let diam = dual.diameter();
        for sf in faces {
            assert!(sf.mean_curvature.abs() < 1e-9 * diam, "{sf:?}");
            assert!(sf.fit_defect < 1e-9 * sf.area.abs().max(1.0));
            let (p, _, _) = white_quad(&dual, sf.black).unwrap();
            let v = vector_area(&p);
            assert!((sf.area - (-v.norm2()).sqrt()).abs() < 1e-9 * sf.area);
        }
    }

    #[test]
    fn perturbed_net_does_not_close() {
        let mut net = koebe();
        net.contact.get_mut(&f(1, 1)).unwrap().x1 += 1e-4;
        let r = dual_positions(&net, 1e-9);
        assert!(matches!(r, Err(GeometryError::NotClosed { .. })));
    }

    #[test]
    fn similarity_fit_recovers_known_map() {
        let src = [LVec3::E1, LVec3::E2, LVec3::E3, LVec3::new(1.0, 2.0, 3.0)];
        let dst = src.map(|x| x * -2.5 + LVec3::new(0.1, 0.2, 0.3));
        let s = fit_similarity(&src, &dst);
        assert!((s.scale + 2.5).abs() < 1e-14 && s.residual < 1e-14);
    }
}
