//! Orthogonal circle patterns in the unit disk and their validation.

use maxlor::pattern::{gen_exponential_pattern, gen_regular_pattern};
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let grid = gen_regular_pattern(6, 6, 0.15)?;
    let moved = grid.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let expo = gen_exponential_pattern(6, 6, 0.3, 0.3, Complex64::new(0.04, 0.03))?;
    for (name, p) in [("square grid", &grid), ("disk automorphism", &moved), ("exponential", &expo)] {
        let r = p.validate();
        println!(
            "{name:>18}: {} circles, orthogonality {:.1e}, incidence {:.1e}, extent {:.3}",
            p.circles.len(),
            r.orthogonality,
            r.incidence,
            r.max_extent
        );
    }
    Ok(())
}
