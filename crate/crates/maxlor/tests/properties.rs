use maxlor::associated::{integrate_associated, x_invariance_sweep};
use maxlor::christoffel::{check_maximal, dualize};
use maxlor::incircular::x_field_lorentz;
use maxlor::io::{Document, Metadata, Payload, PatternDoc};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::lorentz::{common_isotropic_lines, LIsometry, LVec3, OrientedSphere};
use maxlor::pattern::{gen_exponential_pattern, gen_regular_pattern, DiskCirclePattern};
use num_complex::Complex64;
use proptest::prelude::*;

fn isometry() -> impl Strategy<Value = LIsometry> {
    (-2.0..2.0f64, -2.0..2.0f64, -1.5..1.5f64, -1.5..1.5f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(
        |(t1, t2, a, b, theta, t3)| {
            let p = LVec3::new(a, b, (1.0 + a * a + b * b).sqrt());
            LIsometry::translation(LVec3::new(t1, t2, t3))
                .compose(&LIsometry::boost_to(p).unwrap())
                .compose(&LIsometry::rotation_e3(theta))
        },
    )
}

fn mobius_pattern() -> impl Strategy<Value = DiskCirclePattern> {
    (0.0..0.35f64, -3.2..3.2f64, -3.2..3.2f64, 0.12..0.2f64).prop_map(|(r, arg, alpha, s)| {
        gen_regular_pattern(4, 4, s).unwrap().apply_disk_automorphism(Complex64::from_polar(r, arg), alpha).unwrap()
    })
}

fn vec3(r: f64) -> impl Strategy<Value = LVec3> {
    (-r..r, -r..r, -r..r).prop_map(|(a, b, c)| LVec3::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isometries_preserve_the_form(f in isometry(), g in isometry(), x in vec3(3.0), y in vec3(3.0)) {
        prop_assert!(f.form_defect() < 1e-10);
        let fg = f.compose(&g);
        let scale = 1.0 + x.euclid_norm() * y.euclid_norm();
        let d = fg.apply(x) - fg.apply(y);
        prop_assert!((d.norm2() - (x - y).norm2()).abs() < 1e-10 * scale);
        prop_assert!((fg.apply(x) - f.apply(g.apply(x))).max_abs() < 1e-11 * (1.0 + x.euclid_norm()));
        prop_assert!((f.inverse().apply(f.apply(x)) - x).max_abs() < 1e-11 * (1.0 + x.euclid_norm()));
    }

    #[test]
    fn touching_spheres_share_two_lines(
        m in vec3(2.0),
        (r1, r2) in (-2.0..2.0f64, -2.0..2.0f64).prop_filter("distinct radii", |(a, b)| (a - b).abs() > 0.1),
        (a, b, c) in (-2.0..2.0f64, -2.0..2.0f64, -1.0..1.0f64),
    ) {
        let n = LVec3::new(a, b, c);
        prop_assume!(n.norm2() > 0.1);
        let n = n / n.norm2().sqrt();
        let s1 = OrientedSphere::new(m, r1);
        let s2 = OrientedSphere::new(m + n * (r1 - r2), r2);
        let lines = common_isotropic_lines(&s1, &s2, 1e-9).unwrap();
        let scale = 1.0 + n.euclid_norm().powi(2);
        for l in &lines {
            prop_assert!(l.direction.norm2().abs() < 1e-10 * scale);
            prop_assert!(l.contact_residual(&s1) < 1e-9 * scale);
            prop_assert!(l.contact_residual(&s2) < 1e-9 * scale);
        }
        prop_assert_ne!(lines[0].orientation, lines[1].orientation);
    }

    #[test]
    fn disk_automorphisms_keep_the_pattern_orthogonal(p in mobius_pattern()) {
        let rep = p.validate();
        prop_assert!(rep.orthogonality < 1e-10 && rep.incidence < 1e-10 && rep.inside_disk);
    }

    #[test]
    fn dual_and_associated_nets_close(p in mobius_pattern(), phi in -7.0..7.0f64) {
        let net = build_koebe_net(&p).unwrap();
        for k in koebe_congruences(&net).unwrap() {
            let d = dualize(&net, &k, 1e-9).unwrap();
            prop_assert!(d.residual < 1e-9 && d.congruence_residual < 1e-9);
            prop_assert!(check_maximal(&d.net).unwrap().passes(1e-9));
        }
        let s = integrate_associated(&net, phi, 1e-9).unwrap();
        prop_assert!(s.residual < 1e-9 * s.diameter().max(1.0));
    }

    #[test]
    fn x_is_an_isometry_invariant(p in mobius_pattern(), f in isometry()) {
        let net = build_koebe_net(&p).unwrap();
        for k in koebe_congruences(&net).unwrap() {
            let x = x_field_lorentz(&k).unwrap();
            let y = x_field_lorentz(&k.transform(&f, 1e-9).unwrap()).unwrap();
            for (w, v) in &x {
                prop_assert!((v - y[w]).abs() < 1e-8 * v.abs().max(1.0));
            }
        }
    }

    #[test]
    fn x_is_constant_in_phi(
        (a, s) in (0.25..0.35f64, 0.25..0.35f64),
        (re, im) in (0.0..0.05f64, 0.0..0.05f64),
        phis in proptest::collection::vec(-6.0..6.0f64, 1..4),
    ) {
        let p = gen_exponential_pattern(4, 4, a, s, Complex64::new(re, im)).unwrap();
        let net = build_koebe_net(&p).unwrap();
        let rep = x_invariance_sweep(&net, &phis, 1e-9).unwrap();
        prop_assert!(rep.drift < 1e-8 && rep.formula_gap < 1e-10, "{:?}", rep.drift);
    }

    #[test]
    fn pattern_documents_round_trip(p in mobius_pattern()) {
        let doc = Document::new(Metadata::default(), Payload::Pattern(PatternDoc::from(&p)));
        let text = doc.emit().unwrap();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.emit().unwrap(), text);
        let Payload::Pattern(pd) = back.payload else { panic!("kind") };
        prop_assert_eq!(DiskCirclePattern::try_from(&pd).unwrap(), p);
    }
}
