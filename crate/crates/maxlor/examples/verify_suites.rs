//! Run every verification suite on a deformed pattern and print the report.

use maxlor::pattern::gen_regular_pattern;
use maxlor::verify::{run, Inputs, Options, Suite};
use num_complex::Complex64;

fn main() -> maxlor::Result<()> {
    let p = gen_regular_pattern(8, 8, 0.12)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let report = run(&Inputs::from_pattern(p), Suite::All, Options::default());
    for c in &report.checks {
        println!("{:<40} {:>10.2e} {}", c.name, c.value.unwrap_or(f64::NAN), if c.passed { "ok" } else { "FAIL" });
    }
    println!("passed: {}", report.passed);
    Ok(())
}
