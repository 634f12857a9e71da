//! The associated family f^phi with its contact and null congruences.

use maxlor::associated::{contact_congruences, integrate_associated, null_congruences, phi_grid, vertex_star_analysis};
use maxlor::koebe::build_koebe_net;
use maxlor::pattern::gen_regular_pattern;
use maxlor::quad::v;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    for phi in phi_grid(8) {
        let s = integrate_associated(&net, phi, 1e-9)?;
        let [c1, c2] = contact_congruences(&s, &net, 1e-9)?;
        let n1 = null_congruences(&c1, 1e-9)?;
        let star = vertex_star_analysis(&s, &c1, &net, v(3, 2), 1e-9)?;
        println!(
            "phi {phi:.3}: closed {:.1e}, contact radii {:+.4} {:+.4}, null contact {:.1e}, star {:.5?}",
            s.residual,
            c1.black.values().next().map_or(0.0, |b| b.radius),
            c2.black.values().next().map_or(0.0, |b| b.radius),
            n1.contact_residual(),
            star.distances
        );
    }
    Ok(())
}
