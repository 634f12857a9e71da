//! The Christoffel dual of a Koebe net is a discrete maximal surface.

use maxlor::christoffel::{check_maximal, dualize, involution_fit};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_regular_pattern;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    let [c1, _] = koebe_congruences(&net)?;
    let d = dualize(&net, &c1, 1e-9)?;
    println!("closedness {:.1e}, congruence closedness {:.1e}", d.residual, d.congruence_residual);
    let m = check_maximal(&d.net)?;
    println!("coplanarity of black centers {:.1e} (normalized {:.1e})", m.max_volume, m.normalized);
    println!("the Koebe net itself: {:.1e}", check_maximal(&net)?.normalized);
    let inv = involution_fit(&net, 1e-9)?;
    println!("dual of dual: scale {:.12}, residual {:.1e}", inv.scale, inv.residual);
    Ok(())
}
