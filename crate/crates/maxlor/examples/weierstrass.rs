//! Closed-form Weierstrass increments against the integrated dual.

use maxlor::christoffel::{dualize, fit_translation};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_regular_pattern;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    for (k, c) in [1u8, 2].into_iter().zip(koebe_congruences(&net)?) {
        let w = maxlor::weierstrass::assemble_weierstrass(&p, k, 1e-9)?;
        let d = dualize(&net, &c, 1e-9)?;
        let a: Vec<_> = w.net.combined_positions().into_values().collect();
        let b: Vec<_> = d.net.combined_positions().into_values().collect();
        let fit = fit_translation(&a, &b);
        println!(
            "congruence {k}: frame defect {:.1e}, translation fit {:.1e}, incircular tangency {:.1e}",
            w.frame_defect,
            fit.residual,
            w.incircular.validate().tangency
        );
    }
    Ok(())
}
