//! Project null congruences to incircular nets in the plane.

use maxlor::incircular::{koebe_concurrency_test, other_tangents, project};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_regular_pattern;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    let [k1, k2] = koebe_congruences(&net)?;
    let (p1, p2) = (project(&k1)?, project(&k2)?);
    let r = p1.validate();
    println!("incircles {}, tangency {:.1e}, incidence {:.1e}", p1.white.len(), r.tangency, r.incidence);
    let o = other_tangents(&p1, 1e-9)?;
    let gap = o.black.iter().map(|(b, z)| (z - p2.black[b]).norm()).fold(0.0, f64::max);
    println!("other tangents of the first projection vs the second: {gap:.1e}");
    let c = koebe_concurrency_test(&p1, &p2)?;
    println!("{} lines meet at {:.2e} (spread {:.1e})", c.lines, c.point, c.max_distance);
    Ok(())
}
