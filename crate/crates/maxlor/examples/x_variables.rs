//! X-variables: planar and Lorentz formulas, and their constancy along the
//! associated family.

use maxlor::associated::{phi_grid, x_invariance_sweep};
use maxlor::incircular::{project, x_field_lorentz, x_field_planar};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_exponential_pattern;
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_exponential_pattern(6, 6, 0.3, 0.3, Complex64::new(0.04, 0.03))?;
    let net = build_koebe_net(&p)?;
    let [k1, _] = koebe_congruences(&net)?;
    let planar = x_field_planar(&project(&k1)?)?;
    let lorentz = x_field_lorentz(&k1)?;
    for (w, x) in planar.iter().take(5) {
        println!("X{w} = {x:.12} (Lorentz {:.12})", lorentz[w]);
    }
    let sweep = x_invariance_sweep(&net, &phi_grid(16), 1e-9)?;
    println!("drift over 16 angles {:.1e}, formula gap {:.1e}", sweep.drift, sweep.formula_gap);
    Ok(())
}
