//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use maxlor::associated::{
    contact_congruences, face_similarity_check, integrate_associated, null_congruences, vertex_star_analysis,
};
use maxlor::christoffel::{dual_form_congruence, dual_positions, dualize, steiner_coefficients};
use maxlor::incircular::{
    assoc_tangent_circle_test, koebe_concurrency_test, menelaus_maximal_test, project, x_field_lorentz,
    x_field_planar, x_planar_complex, x_vertices, XField,
};
use maxlor::koebe::{build_koebe_net, koebe_congruences, Congruence, SIsothermicNet};
use maxlor::lorentz::{LIsometry, LVec3};
use maxlor::pattern::{gen_exponential_pattern, gen_regular_pattern, DiskCirclePattern};
use maxlor::quad::QuadPatch;
use maxlor::weierstrass::assemble_weierstrass;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

const BUILD_TOL: f64 = 1e-9;

fn mobius(m: i32, s: f64) -> DiskCirclePattern {
    gen_regular_pattern(m, m, s).unwrap().apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3).unwrap()
}

fn patterns() -> Vec<DiskCirclePattern> {
    vec![
        gen_regular_pattern(6, 6, 0.15).unwrap(),
        mobius(6, 0.15),
        mobius(8, 0.12),
        gen_exponential_pattern(6, 6, 0.3, 0.3, Complex64::new(0.04, 0.03)).unwrap(),
    ]
}

fn grid() -> Vec<f64> {
    (0..16).map(|k| k as f64 * TAU / 16.0).collect()
}

/// Worst value seen per quantity, against an upper or a lower bound.
#[derive(Default)]
struct Tally(BTreeMap<&'static str, (f64, f64, bool)>);

impl Tally {
    fn max(&mut self, name: &'static str, value: f64, bound: f64) {
        let e = self.0.entry(name).or_insert((0.0, bound, true));
        e.0 = if value.is_nan() || e.0.is_nan() { f64::NAN } else { e.0.max(value) };
    }

    fn min(&mut self, name: &'static str, value: f64, bound: f64) {
        let e = self.0.entry(name).or_insert((f64::INFINITY, bound, false));
        e.0 = if value.is_nan() || e.0.is_nan() { f64::NAN } else { e.0.min(value) };
    }

    fn outcome(self) -> Outcome {
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, (v, b, upper)) in &self.0 {
            ok &= if *upper { v < b } else { v > b };
            parts.push(format!("{name}={v:.1e}{}{b:.0e}", if *upper { "<" } else { ">" }));
        }
        let text = parts.join(" ");
        if ok {
            Ok(text)
        } else {
            Err(text)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn lorentz(a: LVec3, b: LVec3) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3
}

fn sigma(z: Complex64) -> LVec3 {
    let d = 1.0 - z.norm_sqr();
    LVec3::new(2.0 * z.re / d, 2.0 * z.im / d, (1.0 + z.norm_sqr()) / d)
}

/// Worst residual after the least-squares translation taking `a` to `b`.
fn translation_gap(a: &[LVec3], b: &[LVec3]) -> f64 {
    let shift = a.iter().zip(b).fold(LVec3::ZERO, |acc, (x, y)| acc + (*y - *x)) / a.len() as f64;
    a.iter().zip(b).map(|(x, y)| (*x + shift - *y).euclid_norm()).fold(0.0, f64::max)
}

fn positions(net: &SIsothermicNet) -> Vec<LVec3> {
    net.combined_positions().into_values().collect()
}

fn x_gap(a: &XField, b: &XField) -> f64 {
    a.iter().map(|(w, x)| (x - b[w]).abs() / x.abs().max(1e-300)).fold(0.0, f64::max)
}

fn lift_validity() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        let d2 = net.diameter().max(1.0).powi(2);
        for (q, k) in &net.contact {
            t.max("hyperboloid", (lorentz(*k, *k) + 1.0).abs(), 1e-10);
            t.max("contact_is_lift", (*k - sigma(p.face_point(*q).map_err(err)?)).max_abs(), 1e-10);
        }
        for c in net.black.values() {
            for s in 0..8 {
                let x = c.point(s as f64 * 0.8);
                t.max("hyperboloid", (lorentz(x, x) + 1.0).abs(), 1e-10);
            }
        }
        for s in net.white.values() {
            t.max("polar", (lorentz(s.center, s.center) - (s.radius * s.radius - 1.0)).abs(), 1e-10);
        }
        for q in net.patch.faces() {
            let [a, b] = q.whites().map(|w| net.white[&w]);
            let dm = b.center - a.center;
            t.max("touching", (lorentz(dm, dm) - (a.radius - b.radius).powi(2)).abs() / d2, 1e-10);
        }
    }
    let p = mobius(6, 0.15);
    let start = Instant::now();
    let net = build_koebe_net(&p).map_err(err)?;
    koebe_congruences(&net).map_err(err)?;
    let elapsed = start.elapsed();
    let text = format!("{} runtime={:.2}ms<100ms", t.outcome()?, elapsed.as_secs_f64() * 1e3);
    if elapsed < Duration::from_millis(100) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn christoffel_closedness() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        for c in koebe_congruences(&net).map_err(err)? {
            let form = dual_form_congruence(&net, &c).map_err(err)?;
            let d = dualize(&net, &c, BUILD_TOL).map_err(err)?;
            let diam = d.net.diameter().max(1.0);
            t.max("cycle", form.cycle_residual(&net.patch).map_err(err)? / diam, 1e-11);
            t.max("integration", d.residual.max(d.congruence_residual) / diam, 1e-11);
        }
        let (dual, _) = dual_positions(&net, BUILD_TOL).map_err(err)?;
        let (back, _) = dual_positions(&dual, BUILD_TOL).map_err(err)?;
        t.max("involution", translation_gap(&positions(&back), &positions(&net)) / net.diameter().max(1.0), 1e-10);
    }
    t.outcome()
}

fn maximality() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        for c in koebe_congruences(&net).map_err(err)? {
            let m = dualize(&net, &c, BUILD_TOL).map_err(err)?.net;
            let diam = m.diameter().max(1.0);
            for w in m.patch.interior_whites() {
                let [a, b, c, d] = QuadPatch::cross_neighbors(w).map(|b| m.black[&b].center);
                let (u, v, x) = (b - a, c - a, d - a);
                let det = u.x1 * (v.x2 * x.x3 - v.x3 * x.x2) - u.x2 * (v.x1 * x.x3 - v.x3 * x.x1)
                    + u.x3 * (v.x1 * x.x2 - v.x2 * x.x1);
                t.max("coplanarity", det.abs() / diam.powi(3), 1e-9);
            }
            let normals = net.white.iter().map(|(w, s)| (*w, s.center)).collect();
            for f in steiner_coefficients(&m, &normals, BUILD_TOL).map_err(err)? {
                t.max("steiner_H", f.mean_curvature.abs() / diam, 1e-9);
            }
        }
    }
    t.outcome()
}

fn weierstrass_equivalence() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        for (k, c) in [1u8, 2].into_iter().zip(koebe_congruences(&net).map_err(err)?) {
            let w = assemble_weierstrass(&p, k, BUILD_TOL).map_err(err)?;
            let d = dualize(&net, &c, BUILD_TOL).map_err(err)?;
            let mut a = positions(&w.net);
            let mut b = positions(&d.net);
            a.extend(w.congruence.black.values().map(|s| s.center));
            b.extend(d.congruence.black.values().map(|s| s.center));
            t.max("fit", translation_gap(&a, &b) / d.net.diameter().max(1.0), 1e-9);
            for (x, s) in &d.net.white {
                let star = 1.0 / net.white[x].radius.abs();
                t.max("dual_radius", (s.radius.abs() - star).abs(), 1e-10);
                t.max("incircle_radius", (w.incircular.white[x].radius.abs() - star).abs(), 1e-10);
            }
        }
    }
    t.outcome()
}

fn contact_gap(c: &Congruence) -> f64 {
    let mut worst = 0.0f64;
    for (b, s) in &c.black {
        for w in QuadPatch::cross_neighbors(*b) {
            if let Some(ws) = c.white.get(&w) {
                let dm = ws.center - s.center;
                let scale = 1.0 + dm.euclid_norm().powi(2);
                worst = worst.max((lorentz(dm, dm) - (ws.radius - s.radius).powi(2)).abs() / scale);
            }
        }
    }
    worst
}

fn associated_family() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        let (dual, _) = dual_positions(&net, BUILD_TOL).map_err(err)?;
        let lengths = |phi: f64| -> Result<BTreeMap<_, f64>, String> {
            let s = integrate_associated(&net, phi, BUILD_TOL).map_err(err)?;
            Ok(net
                .patch
                .faces()
                .map(|q| {
                    let [a, b] = q.whites().map(|w| s.white[&w].center);
                    (q, lorentz(b - a, b - a).abs().sqrt())
                })
                .collect())
        };
        let base = lengths(0.0)?;
        let f0 = integrate_associated(&net, 0.0, BUILD_TOL).map_err(err)?;
        let fpi = integrate_associated(&net, PI, BUILD_TOL).map_err(err)?;
        let sums: Vec<LVec3> = f0.white.iter().map(|(w, s)| s.center + fpi.white[w].center).collect();
        let spread = sums.iter().map(|x| (*x - sums[0]).max_abs()).fold(0.0, f64::max);
        t.max("central_symmetry", spread / f0.diameter().max(1.0), 1e-10);
        for phi in grid() {
            let s = integrate_associated(&net, phi, BUILD_TOL).map_err(err)?;
            t.max("closedness", s.residual / s.diameter().max(1.0), 1e-11);
            for (q, l) in lengths(phi)? {
                t.max("isometric", (l - base[&q]).abs(), 1e-10);
            }
            t.max("similarity", face_similarity_check(&s, &net, &dual).map_err(err)?.ratio, 1e-9);
            let cc = contact_congruences(&s, &net, BUILD_TOL).map_err(err)?;
            for (c, sign) in cc.iter().zip([1.0, -1.0]) {
                for b in c.black.values() {
                    t.max("contact_radius", (b.radius - sign * phi.sin()).abs(), 1e-9);
                }
                t.max("contact", contact_gap(c), 1e-9);
            }
        }
    }
    t.outcome()
}

fn vertex_star_law() -> Outcome {
    let mut t = Tally::default();
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        let (dual, _) = dual_positions(&net, BUILD_TOL).map_err(err)?;
        // R* / cos(alpha / 2), alpha the angle between consecutive dual edges
        let predicted: BTreeMap<_, [f64; 4]> = net
            .patch
            .interior_whites()
            .map(|w| {
                // rays from the center to the contact points with the
                // neighbors, projected to the plane normal to the Koebe center
                let s0 = dual.white[&w];
                let m = net.white[&w].center;
                let n0 = m / (-lorentz(m, m)).sqrt();
                let e = QuadPatch::star_faces(w).map(|q| {
                    let s1 = dual.white[&q.opposite(w).unwrap()];
                    let ray = (s1.center - s0.center) * (s0.radius / (s0.radius - s1.radius));
                    ray + n0 * lorentz(ray, n0)
                });
                let r_star = 1.0 / net.white[&w].radius.abs();
                let d = std::array::from_fn(|k| {
                    let (a, b) = (e[k], e[(k + 1) % 4]);
                    let cos = lorentz(a, b) / (lorentz(a, a) * lorentz(b, b)).sqrt();
                    r_star / (cos.clamp(-1.0, 1.0).acos() / 2.0).cos()
                });
                (w, d)
            })
            .collect();
        let mut first: BTreeMap<_, [f64; 4]> = BTreeMap::new();
        for phi in grid() {
            let s = integrate_associated(&net, phi, BUILD_TOL).map_err(err)?;
            let [c1, _] = contact_congruences(&s, &net, BUILD_TOL).map_err(err)?;
            for w in net.patch.interior_whites() {
                let rep = vertex_star_analysis(&s, &c1, &net, w, BUILD_TOL).map_err(err)?;
                for k in 0..4 {
                    t.max("distance", (rep.distances[k] - predicted[&w][k]).abs(), 1e-9);
                }
                let f = first.entry(w).or_insert(rep.distances);
                for k in 0..4 {
                    t.max("phi_drift", (f[k] - rep.distances[k]).abs(), 1e-9);
                }
            }
        }
    }
    t.outcome()
}

fn random_isometry(rng: &mut StdRng) -> LIsometry {
    let (a, b) = (rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
    let p = LVec3::new(a, b, (1.0f64 + a * a + b * b).sqrt());
    let shift = LVec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    LIsometry::translation(shift)
        .compose(&LIsometry::boost_to(p).unwrap())
        .compose(&LIsometry::rotation_e3(rng.gen_range(0.0..TAU)))
}

fn x_theorems() -> Outcome {
    let mut t = Tally::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for p in patterns() {
        let net = build_koebe_net(&p).map_err(err)?;
        let ks = koebe_congruences(&net).map_err(err)?;
        let mut congs: Vec<Congruence> = ks.to_vec();
        for c in &ks {
            congs.push(dualize(&net, c, BUILD_TOL).map_err(err)?.congruence);
        }
        let mut base: Option<[XField; 2]> = None;
        for phi in grid() {
            let s = integrate_associated(&net, phi, BUILD_TOL).map_err(err)?;
            let mut fields = Vec::new();
            for c in contact_congruences(&s, &net, BUILD_TOL).map_err(err)? {
                let n = null_congruences(&c, BUILD_TOL).map_err(err)?;
                fields.push(x_field_lorentz(&n).map_err(err)?);
                congs.push(n);
            }
            let fields: [XField; 2] = fields.try_into().unwrap();
            let b = base.get_or_insert_with(|| fields.clone());
            for k in 0..2 {
                t.max("phi_invariance", x_gap(&fields[k], &b[k]), 1e-8);
            }
        }
        for c in &congs {
            let inc = project(c).map_err(err)?;
            for w in x_vertices(&inc.patch, |b| inc.black.contains_key(&b)) {
                let x = x_planar_complex(&inc, w).map_err(err)?;
                t.max("real", x.im.abs() / x.norm(), 1e-8);
            }
            let planar = x_field_planar(&inc).map_err(err)?;
            let lor = x_field_lorentz(c).map_err(err)?;
            t.max("planar_vs_lorentz", x_gap(&planar, &lor), 1e-10);
        }
        for c in &congs[..4] {
            let x = x_field_lorentz(c).map_err(err)?;
            for _ in 0..3 {
                let moved = c.transform(&random_isometry(&mut rng), BUILD_TOL).map_err(err)?;
                t.max("isometry", x_gap(&x_field_planar(&project(&moved).map_err(err)?).map_err(err)?, &x), 1e-10);
            }
        }
    }
    t.outcome()
}

fn planar_characterizations() -> Outcome {
    let mut t = Tally::default();
    for (k, p) in patterns().into_iter().enumerate() {
        let net = build_koebe_net(&p).map_err(err)?;
        let [k1, k2] = koebe_congruences(&net).map_err(err)?;
        let (p1, p2) = (project(&k1).map_err(err)?, project(&k2).map_err(err)?);
        let conc = koebe_concurrency_test(&p1, &p2).map_err(err)?;
        t.max("concurrency", conc.max_distance, 1e-9);
        t.max("at_origin", conc.point.norm(), 1e-9);
        let m1 = project(&dualize(&net, &k1, BUILD_TOL).map_err(err)?.congruence).map_err(err)?;
        let m2 = project(&dualize(&net, &k2, BUILD_TOL).map_err(err)?.congruence).map_err(err)?;
        let control = koebe_concurrency_test(&m1, &m2).map_err(err)?;
        t.min("maximal_not_concurrent", control.max_distance / m1.diameter().max(1.0), 1e-6);
        // the square grid is mirror symmetric: some Menelaus lines are parallel
        // or degenerate there, and at sin phi = 0 adjacent incircles touch
        if k == 0 {
            continue;
        }
        for w in x_vertices(&net.patch, |b| m1.black.contains_key(&b)) {
            t.max("menelaus", (menelaus_maximal_test(&m1, &m2, w).map_err(err)? - 1.0).norm(), 1e-8);
        }
        for phi in grid() {
            let s = integrate_associated(&net, phi, BUILD_TOL).map_err(err)?;
            let [c1, c2] = contact_congruences(&s, &net, BUILD_TOL).map_err(err)?;
            let a1 = project(&null_congruences(&c1, BUILD_TOL).map_err(err)?).map_err(err)?;
            let a2 = project(&null_congruences(&c2, BUILD_TOL).map_err(err)?).map_err(err)?;
            let d1 = assoc_tangent_circle_test(&a1, &a2, phi.sin()).map_err(err)?;
            let d2 = assoc_tangent_circle_test(&a2, &a1, -phi.sin()).map_err(err)?;
            t.max("tangent_circle", d1.deviation.max(d2.deviation), 1e-8);
            t.max("tangent_skipped_faces", (d1.skipped + d2.skipped) as f64, 1.0);
        }
    }
    t.outcome()
}

fn end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_maxlor");
    let dir = std::env::temp_dir().join(format!("maxlor-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let pattern = dir.join("p.json");
    let gen = Command::new(bin)
        .args(["gen-pattern", "--rows", "8", "--cols", "8", "--spacing", "0.12", "--mobius", "0.2,0.1,0.3", "-o"])
        .arg(&pattern)
        .output()
        .map_err(err)?;
    if !gen.status.success() {
        return Err(String::from_utf8_lossy(&gen.stderr).into_owned());
    }
    let verify = || {
        let start = Instant::now();
        let out = Command::new(bin).args(["verify", "--suite", "all"]).arg(&pattern).env_remove("MAXLOR_TOL").output();
        out.map(|o| (o, start.elapsed()))
    };
    let (a, ta) = verify().map_err(err)?;
    let (b, tb) = verify().map_err(err)?;
    let _ = std::fs::remove_dir_all(&dir);
    let slowest = ta.max(tb);
    let text = format!(
        "exit={:?},{:?} runtime={:.0}ms<5000ms identical={}",
        a.status.code(),
        b.status.code(),
        slowest.as_secs_f64() * 1e3,
        a.stdout == b.stdout
    );
    let ok = a.status.code() == Some(0) && b.status.code() == Some(0) && slowest < Duration::from_secs(5) && a.stdout == b.stdout;
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lift validity", lift_validity),
        ("christoffel closedness and involution", christoffel_closedness),
        ("maximality", maximality),
        ("weierstrass equivalence", weierstrass_equivalence),
        ("associated family", associated_family),
        ("vertex-star distance law", vertex_star_law),
        ("x-variable theorems", x_theorems),
        ("planar characterizations", planar_characterizations),
        ("end-to-end determinism and performance", end_to_end),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(s) => println!("criterion {}: PASS {name}: {s}", k + 1),
            Err(s) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {s}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
