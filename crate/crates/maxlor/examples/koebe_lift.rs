//! Lift a pattern to the Koebe net on the hyperboloid and build its two null
//! congruences.

use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_regular_pattern;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    let r = net.report()?;
    println!("white spheres {}, black circles {}", net.white.len(), net.black.len());
    println!("touching {:.1e}, orthogonality {:.1e}, diameter {:.3}", r.touching, r.orthogonality, r.diameter);
    for (k, c) in koebe_congruences(&net)?.iter().enumerate() {
        println!("congruence {}: {} lines, contact residual {:.1e}", k + 1, c.lines.len(), c.contact_residual());
    }
    Ok(())
}
