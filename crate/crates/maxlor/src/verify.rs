//! Verification suites: every residual of the pipeline against its
//! threshold, collected into a machine-readable report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::associated::{
    contact_congruences, integrate_associated, null_congruences, phi_grid, vertex_star_analysis, white_edge_lengths,
    x_invariance_sweep, AssociatedSurface,
};
use crate::christoffel::{
    check_maximal, dual_positions, dual_quad_report, dualize, fit_translation, involution_fit, steiner_coefficients,
};
use crate::error::{GeometryError, Result};
use crate::incircular::{
    assoc_tangent_circle_test, koebe_concurrency_test, menelaus_maximal_test, project, x_field_planar, x_planar_complex,
    x_vertices, IncircularNet,
};
use crate::koebe::{build_koebe_net, koebe_congruences, Congruence, SIsothermicNet};
use crate::lorentz::{LIsometry, LVec3};
use crate::pattern::DiskCirclePattern;
use crate::quad::QuadPatch;
use crate::weierstrass::{assemble_weierstrass, w_radius_white};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lift,
    Dual,
    Weierstrass,
    Associated,
    Xinvariance,
    Planar,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Lift, Suite::Dual, Suite::Weierstrass, Suite::Associated, Suite::Xinvariance, Suite::Planar];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lift => "lift",
            Suite::Dual => "dual",
            Suite::Weierstrass => "weierstrass",
            Suite::Associated => "associated",
            Suite::Xinvariance => "xinvariance",
            Suite::Planar => "planar",
            Suite::All => "all",
        }
    }
}

/// One residual and its threshold. `value` is absent when the residual is
/// not finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    /// `max` checks pass when value <= threshold, `min` checks (negative
    /// controls) when value >= threshold.
    pub bound: Bound,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Max,
    Min,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, bound: Bound, threshold: f64) -> Self {
        let finite = value.is_finite();
        let passed = finite
            && match bound {
                Bound::Max => value <= threshold,
                Bound::Min => value >= threshold,
            };
        Check { name: name.into(), value: finite.then_some(value), bound, threshold, passed }
    }
}

/// A geometric error that aborted part of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub suite: String,
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl Failure {
    pub fn new(suite: &str, e: &GeometryError) -> Self {
        Failure {
            suite: suite.to_string(),
            error: e.kind().to_string(),
            message: e.to_string(),
            residual: e.residual().filter(|r| r.is_finite()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub errors: Vec<Failure>,
    /// Suites of `all` that the input does not carry data for, and
    /// configurations where a check is undefined.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), passed: true, checks: Vec::new(), errors: Vec::new(), skipped: Vec::new() }
    }

    /// A report for a single failed operation.
    pub fn from_error(operation: &str, e: &GeometryError) -> Self {
        let mut r = Report::new(operation);
        r.fail(operation, e);
        r
    }

    pub fn fail(&mut self, suite: &str, e: &GeometryError) {
        self.errors.push(Failure::new(suite, e));
        self.passed = false;
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Replaces every threshold when set.
    pub tol: Option<f64>,
    pub phi_grid: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: None, phi_grid: 16 }
    }
}

/// What a document provides to the suites.
#[derive(Debug, Clone, Default)]
pub struct Inputs {
    pub pattern: Option<DiskCirclePattern>,
    pub koebe: Option<SIsothermicNet>,
    pub koebe_congruences: Vec<Congruence>,
    pub maximal: Option<SIsothermicNet>,
    pub associated: Option<(AssociatedSurface, Vec<Congruence>)>,
    pub incircular: Vec<IncircularNet>,
}

impl Inputs {
    pub fn from_pattern(p: DiskCirclePattern) -> Self {
        Inputs { pattern: Some(p), ..Default::default() }
    }

    fn has_koebe(&self) -> bool {
        self.koebe.is_some() || self.pattern.is_some()
    }

    /// Whether the suite has the data it needs.
    pub fn supports(&self, suite: Suite) -> bool {
        match suite {
            Suite::Lift | Suite::Dual | Suite::Xinvariance => self.has_koebe(),
            Suite::Weierstrass => self.pattern.is_some(),
            Suite::Associated => self.has_koebe() || self.associated.is_some(),
            Suite::Planar => self.has_koebe() || !self.incircular.is_empty(),
            Suite::All => Suite::EACH.iter().any(|s| self.supports(*s)),
        }
    }
}

/// Thresholds and lazily built intermediate objects.
struct Ctx<'a> {
    inputs: &'a Inputs,
    opts: Options,
    report: Report,
    koebe: Option<SIsothermicNet>,
}

impl Ctx<'_> {
    fn thr(&self, default: f64) -> f64 {
        self.opts.tol.unwrap_or(default)
    }

    fn max(&mut self, name: &str, value: f64, default: f64) {
        let t = self.thr(default);
        self.report.checks.push(Check::new(name, value, Bound::Max, t));
    }

    fn min(&mut self, name: &str, value: f64, threshold: f64) {
        self.report.checks.push(Check::new(name, value, Bound::Min, threshold));
    }

    fn koebe(&mut self) -> Result<SIsothermicNet> {
        if self.koebe.is_none() {
            let net = match (&self.inputs.koebe, &self.inputs.pattern) {
                (Some(n), _) => n.clone(),
                (None, Some(p)) => build_koebe_net(p)?,
                _ => return Err(GeometryError::Missing("pattern or Koebe net".into())),
            };
            self.koebe = Some(net);
        }
        Ok(self.koebe.clone().expect("set above"))
    }

    fn congruences(&mut self) -> Result<Vec<Congruence>> {
        if self.inputs.koebe.is_some() && self.inputs.koebe_congruences.len() == 2 {
            return Ok(self.inputs.koebe_congruences.clone());
        }
        Ok(koebe_congruences(&self.koebe()?)?.to_vec())
    }
}

/// Construction tolerance handed to the geometric routines.
const BUILD_TOL: f64 = 1e-9;

pub fn run(inputs: &Inputs, suite: Suite, opts: Options) -> Report {
    let mut ctx = Ctx { inputs, opts, report: Report::new(suite.name()), koebe: None };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        if !inputs.supports(s) {
            ctx.report.skipped.push(s.name().to_string());
            continue;
        }
        let res = match s {
            Suite::Lift => lift(&mut ctx),
            Suite::Dual => dual(&mut ctx),
            Suite::Weierstrass => weierstrass(&mut ctx),
            Suite::Associated => associated(&mut ctx),
            Suite::Xinvariance => xinvariance(&mut ctx),
            Suite::Planar => planar(&mut ctx),
            Suite::All => unreachable!(),
        };
        if let Err(e) = res {
            ctx.report.fail(s.name(), &e);
        }
    }
    let mut report = ctx.report;
    report.passed = report.errors.is_empty() && report.checks.iter().all(|c| c.passed);
    report
}

fn lift(ctx: &mut Ctx) -> Result<()> {
    if let Some(p) = &ctx.inputs.pattern {
        let rep = p.validate();
        ctx.max("lift.pattern_orthogonality", rep.orthogonality, 1e-10);
        ctx.max("lift.pattern_incidence", rep.incidence, 1e-10);
        ctx.max("lift.pattern_extent", rep.max_extent, 1.0 - 1e-12);
    }
    let net = ctx.koebe()?;
    let mut hyper = 0.0f64;
    for k in net.contact.values() {
        hyper = hyper.max((k.norm2() + 1.0).abs());
    }
    for c in net.black.values() {
        for t in [0.0, 1.3, 2.9, 4.4] {
            hyper = hyper.max((c.point(t).norm2() + 1.0).abs());
        }
    }
    let polar = net.white.values().map(|s| (s.center.norm2() - s.radius * s.radius + 1.0).abs()).fold(0.0, f64::max);
    let rep = net.report()?;
    let d2 = rep.diameter.max(1.0).powi(2);
    ctx.max("lift.hyperboloid", hyper, 1e-10);
    ctx.max("lift.polar_spheres", polar, 1e-10);
    ctx.max("lift.touching", rep.touching / d2, 1e-10);
    ctx.max("lift.contact_on_white", rep.contact_on_white, 1e-10);
    ctx.max("lift.contact_on_black", rep.contact_on_black, 1e-10);
    ctx.max("lift.orthogonality", rep.orthogonality, 1e-10);
    let cong = ctx.congruences()?;
    let contact = cong.iter().map(Congruence::contact_residual).fold(0.0, f64::max);
    ctx.max("lift.congruence_contact", contact, 1e-9);
    Ok(())
}

fn dual(ctx: &mut Ctx) -> Result<()> {
    let net = ctx.koebe()?;
    let mut closed = 0.0f64;
    let mut cong_closed = 0.0f64;
    let mut dual_contact = 0.0f64;
    let mut duals = Vec::new();
    for c in ctx.congruences()? {
        let d = dualize(&net, &c, BUILD_TOL)?;
        let diam = d.net.diameter().max(1.0);
        closed = closed.max(d.residual / diam);
        cong_closed = cong_closed.max(d.congruence_residual / diam);
        dual_contact = dual_contact.max(d.congruence.contact_residual());
        duals.push(d);
    }
    ctx.max("dual.closedness", closed, 1e-11);
    ctx.max("dual.congruence_closedness", cong_closed, 1e-11);
    ctx.max("dual.congruence_contact", dual_contact, 1e-9);
    let sim = involution_fit(&net, BUILD_TOL)?;
    ctx.max("dual.involution", sim.residual / net.diameter().max(1.0), 1e-10);
    ctx.max("dual.involution_scale", (sim.scale - 1.0).abs(), 1e-10);
    let maximal = &duals[0].net;
    ctx.max("dual.maximality", check_maximal(maximal)?.normalized, 1e-9);
    ctx.min("dual.koebe_not_maximal", local_coplanarity(&net)?, 1e-6);
    let normals: BTreeMap<_, _> = net.white.iter().map(|(w, s)| (*w, s.center)).collect();
    let faces = steiner_coefficients(maximal, &normals, BUILD_TOL)?;
    let diam = maximal.diameter().max(1.0);
    let h = faces.iter().map(|f| f.mean_curvature.abs()).fold(0.0, f64::max);
    let fit = faces.iter().map(|f| f.fit_defect / f.area.abs().max(1.0)).fold(0.0, f64::max);
    ctx.max("dual.steiner_mean_curvature", h / diam, 1e-9);
    ctx.max("dual.steiner_fit", fit, 1e-9);
    let q = dual_quad_report(&net, maximal)?;
    ctx.max("dual.quad_angles", q.angle, 1e-9);
    ctx.max("dual.quad_incircle", q.incircle, 1e-9);
    if let Some(stored) = &ctx.inputs.maximal {
        let a: Vec<LVec3> = stored.combined_positions().into_values().collect();
        let b: Vec<LVec3> = maximal.combined_positions().into_values().collect();
        if a.len() != b.len() {
            return Err(GeometryError::Missing("stored maximal net does not match the patch".into()));
        }
        let fit = fit_translation(&a, &b);
        ctx.max("dual.stored_matches", fit.residual / diam, 1e-9);
        ctx.max("dual.stored_maximality", check_maximal(stored)?.normalized, 1e-9);
    }
    Ok(())
}

/// Largest |det| of the black centers around an interior white vertex,
/// relative to the cube of the local edge length.
fn local_coplanarity(net: &SIsothermicNet) -> Result<f64> {
    let mut worst = 0.0f64;
    for w in net.patch.interior_whites() {
        let [a, b, c, d] = QuadPatch::cross_neighbors(w).map(|b| net.black_circle(b).map(|c| c.center));
        let p = [a?, b?, c?, d?];
        let m = nalgebra::Matrix3::from_columns(&[(p[1] - p[0]).to_vector(), (p[2] - p[0]).to_vector(), (p[3] - p[0]).to_vector()]);
        let h = (0..4).map(|k| (p[(k + 1) % 4] - p[k]).euclid_norm()).fold(0.0, f64::max);
        worst = worst.max(m.determinant().abs() / h.powi(3));
    }
    Ok(worst)
}

fn weierstrass(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.inputs.pattern.clone().expect("checked by supports");
    let net = ctx.koebe()?;
    let cong = ctx.congruences()?;
    let mut fit = 0.0f64;
    let mut frame = 0.0f64;
    let mut closed = 0.0f64;
    let mut radii = 0.0f64;
    let mut tangency = 0.0f64;
    for (k, c) in [1u8, 2].into_iter().zip(&cong) {
        let w = assemble_weierstrass(&p, k, BUILD_TOL)?;
        let d = dualize(&net, c, BUILD_TOL)?;
        let diam = d.net.diameter().max(1.0);
        let mut a: Vec<LVec3> = w.net.combined_positions().into_values().collect();
        let mut b: Vec<LVec3> = d.net.combined_positions().into_values().collect();
        a.extend(w.congruence.black.values().map(|s| s.center));
        b.extend(d.congruence.black.values().map(|s| s.center));
        fit = fit.max(fit_translation(&a, &b).residual / diam);
        frame = frame.max(w.frame_defect);
        closed = closed.max(w.residual.max(w.congruence_residual) / diam);
        for (x, s) in &d.net.white {
            let circle = p.circle(*x)?;
            radii = radii.max((w_radius_white(circle.center, circle.radius)? - s.radius.abs()).abs());
            let inc = w.incircular.white.get(x).ok_or_else(|| GeometryError::Missing(format!("incircle {x}")))?;
            radii = radii.max((inc.radius.abs() - s.radius.abs()).abs());
        }
        let rep = w.incircular.validate();
        tangency = tangency.max(rep.tangency.max(rep.incidence) / rep.diameter.max(1.0));
    }
    ctx.max("weierstrass.matches_dual", fit, 1e-9);
    ctx.max("weierstrass.closedness", closed, 1e-11);
    ctx.max("weierstrass.frame", frame, 1e-12);
    ctx.max("weierstrass.incircle_radii", radii, 1e-10);
    ctx.max("weierstrass.incircular", tangency, 1e-9);
    Ok(())
}

fn associated(ctx: &mut Ctx) -> Result<()> {
    if let Some((s, congs)) = &ctx.inputs.associated {
        let diam = s.diameter().max(1.0);
        let contact = congs.iter().map(Congruence::contact_residual).fold(0.0, f64::max);
        let (touching, concyc) = (s.touching(), s.concyclicity / diam);
        ctx.max("associated.stored_touching", touching, 1e-10);
        ctx.max("associated.stored_concyclicity", concyc, 1e-10);
        ctx.max("associated.stored_contact", contact, 1e-9);
    }
    if !ctx.inputs.has_koebe() {
        return Ok(());
    }
    let net = ctx.koebe()?;
    let (dual, _) = dual_positions(&net, BUILD_TOL)?;
    let grid = phi_grid(ctx.opts.phi_grid);
    let s0 = integrate_associated(&net, 0.0, BUILD_TOL)?;
    let sp = integrate_associated(&net, std::f64::consts::PI, BUILD_TOL)?;
    let base = white_edge_lengths(&s0);
    let diam = s0.diameter().max(1.0);
    let sum0 = s0.white[&net.patch.base_vertex()].center + sp.white[&net.patch.base_vertex()].center;
    let symmetry =
        s0.white.iter().map(|(w, a)| (a.center + sp.white[w].center - sum0).max_abs()).fold(0.0, f64::max) / diam;
    let star_vertices: Vec<_> = net.patch.interior_whites().collect();
    let mut star_base: BTreeMap<_, [f64; 4]> = BTreeMap::new();
    let (mut closed, mut iso, mut ratio, mut incircle, mut radius, mut contact, mut null, mut star, mut star_drift) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &phi in &grid {
        let s = integrate_associated(&net, phi, BUILD_TOL)?;
        let sd = s.diameter().max(1.0);
        closed = closed.max(s.residual / sd);
        for (q, l) in white_edge_lengths(&s) {
            iso = iso.max((l - base[&q]).abs());
        }
        let sim = crate::associated::face_similarity_check(&s, &net, &dual)?;
        ratio = ratio.max(sim.ratio);
        incircle = incircle.max(sim.incircle);
        let ccs = contact_congruences(&s, &net, BUILD_TOL)?;
        for (c, sign) in ccs.iter().zip([1.0, -1.0]) {
            radius = radius.max(implied_radius_gap(c, sign * phi.sin()));
            contact = contact.max(c.contact_residual());
            null = null.max(null_congruences(c, BUILD_TOL)?.contact_residual());
        }
        for &w in &star_vertices {
            let rep = vertex_star_analysis(&s, &ccs[0], &net, w, BUILD_TOL)?;
            star = star.max(rep.deviation() / sd);
            let first = star_base.entry(w).or_insert(rep.distances);
            for k in 0..4 {
                star_drift = star_drift.max((first[k] - rep.distances[k]).abs() / sd);
            }
        }
    }
    ctx.max("associated.closedness", closed, 1e-11);
    ctx.max("associated.isometric", iso, 1e-10);
    ctx.max("associated.central_symmetry", symmetry, 1e-10);
    ctx.max("associated.similarity_factor", ratio, 1e-9);
    ctx.max("associated.similarity_incircle", incircle, 1e-9);
    ctx.max("associated.contact_radius", radius, 1e-9);
    ctx.max("associated.contact", contact, 1e-9);
    ctx.max("associated.null_contact", null, 1e-9);
    ctx.max("associated.vertex_star", star, 1e-9);
    ctx.max("associated.vertex_star_phi_drift", star_drift, 1e-9);
    Ok(())
}

/// Largest gap between `rho` and the black radius implied by contact with
/// each white neighbor, R - sqrt(<m - c, m - c>) or R + sqrt(...).
fn implied_radius_gap(c: &Congruence, rho: f64) -> f64 {
    let mut worst = 0.0f64;
    for (b, s) in &c.black {
        worst = worst.max((s.radius - rho).abs());
        for w in QuadPatch::cross_neighbors(*b) {
            let Some(ws) = c.white.get(&w) else { continue };
            let d = (ws.center - s.center).norm2().max(0.0).sqrt();
            let gap = (ws.radius - d - rho).abs().min((ws.radius + d - rho).abs());
            worst = worst.max(gap);
        }
    }
    worst
}

/// A fixed proper orthochronous isometry: rotation, boost, translation.
pub fn test_isometry() -> LIsometry {
    let (a, b) = (0.31, -0.22);
    let p = LVec3::new(a, b, (1.0 + a * a + b * b).sqrt());
    let boost = LIsometry::boost_to(p).expect("future unit vector");
    LIsometry::translation(LVec3::new(0.5, -1.1, 0.4)).compose(&boost).compose(&LIsometry::rotation_e3(0.7))
}

fn xinvariance(ctx: &mut Ctx) -> Result<()> {
    let net = ctx.koebe()?;
    let sweep = x_invariance_sweep(&net, &phi_grid(ctx.opts.phi_grid), BUILD_TOL)?;
    ctx.max("xinvariance.phi_drift", sweep.drift, 1e-8);
    ctx.max("xinvariance.formula_gap", sweep.formula_gap, 1e-10);
    let iso = test_isometry();
    let mut moved = 0.0f64;
    let mut imag = 0.0f64;
    let mut nets = ctx.congruences()?;
    let c1 = nets[0].clone();
    nets.push(dualize(&net, &c1, BUILD_TOL)?.congruence);
    for c in &nets {
        let before = project(c)?;
        let after = project(&c.transform(&iso, BUILD_TOL)?)?;
        for inc in [&before, &after] {
            for w in x_vertices(&inc.patch, |b| inc.black.contains_key(&b)) {
                let x = x_planar_complex(inc, w)?;
                imag = imag.max(x.im.abs() / x.norm().max(f64::MIN_POSITIVE));
            }
        }
        let (a, b) = (x_field_planar(&before)?, x_field_planar(&after)?);
        moved = moved.max(crate::incircular::x_deviation(&a, &b));
    }
    ctx.max("xinvariance.isometry", moved, 1e-10);
    ctx.max("xinvariance.imaginary_part", imag, 1e-8);
    Ok(())
}

fn planar(ctx: &mut Ctx) -> Result<()> {
    for (k, inc) in ctx.inputs.incircular.iter().enumerate() {
        let rep = inc.validate();
        let name = format!("planar.stored_incircular_{}", k + 1);
        let v = rep.tangency.max(rep.incidence) / rep.diameter.max(1.0);
        ctx.max(&name, v, 1e-9);
    }
    if !ctx.inputs.has_koebe() {
        return Ok(());
    }
    let net = ctx.koebe()?;
    let cong = ctx.congruences()?;
    let (p1, p2) = (project(&cong[0])?, project(&cong[1])?);
    let conc = koebe_concurrency_test(&p1, &p2)?;
    ctx.max("planar.koebe_concurrency", conc.max_distance / p1.diameter().max(1.0), 1e-9);
    ctx.max("planar.koebe_center", conc.point.norm(), 1e-9);
    let m1 = dualize(&net, &cong[0], BUILD_TOL)?.congruence;
    let m2 = dualize(&net, &cong[1], BUILD_TOL)?.congruence;
    let (q1, q2) = (project(&m1)?, project(&m2)?);
    let control = koebe_concurrency_test(&q1, &q2)?;
    ctx.min("planar.maximal_not_concurrent", control.max_distance / q1.diameter().max(1.0), 1e-6);
    let mut men = 0.0f64;
    for w in x_vertices(&net.patch, |b| q1.black.contains_key(&b) && q2.black.contains_key(&b)) {
        match menelaus_maximal_test(&q1, &q2, w) {
            Ok(x) => men = men.max((x - 1.0).norm()),
            Err(e @ (GeometryError::ParallelLines | GeometryError::CoincidentPoints)) => {
                ctx.report.skipped.push(format!("planar.menelaus at {w}: {e}"));
            }
            Err(e) => return Err(e),
        }
    }
    ctx.max("planar.menelaus", men, 1e-8);
    let mut tangent = 0.0f64;
    let mut untouched = 0;
    for phi in phi_grid(ctx.opts.phi_grid) {
        let s = integrate_associated(&net, phi, BUILD_TOL)?;
        let [c1, c2] = contact_congruences(&s, &net, BUILD_TOL)?;
        let a1 = project(&null_congruences(&c1, BUILD_TOL)?)?;
        let a2 = project(&null_congruences(&c2, BUILD_TOL)?)?;
        let scale = a1.diameter().max(1.0);
        let t1 = assoc_tangent_circle_test(&a1, &a2, phi.sin())?;
        let t2 = assoc_tangent_circle_test(&a2, &a1, -phi.sin())?;
        tangent = tangent.max(t1.deviation.max(t2.deviation) / scale);
        untouched += t1.skipped + t2.skipped;
    }
    if untouched > 0 {
        ctx.report.skipped.push(format!("planar.tangent_circle: {untouched} faces with touching incircles"));
    }
    ctx.max("planar.tangent_circle_2sin", tangent, 1e-8);
    Ok(())
}
