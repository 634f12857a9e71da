//! Lorentz primitives: isometries, touching spheres and their common
//! isotropic lines.

use maxlor::lorentz::{common_isotropic_lines, rotation_about_timelike_axis, LIsometry, LVec3, OrientedSphere};

fn main() -> maxlor::Result<()> {
    let x = LVec3::new(0.3, -0.4, 1.2);
    println!("<x,x> = {}", x.norm2());

    let p = LVec3::new(0.3, 0.4, (1.25f64).sqrt());
    let iso = rotation_about_timelike_axis(p, 0.8)?.compose(&LIsometry::translation(LVec3::new(1.0, 0.0, 0.5)));
    println!("form defect {:.2e}", iso.form_defect());
    println!("<Fx-Fy, Fx-Fy> = {}", (iso.apply(x) - iso.apply(LVec3::E1)).norm2());

    // unit-difference spheres touching at the origin
    let s1 = OrientedSphere::new(LVec3::new(-1.0, 0.0, 0.0), 1.0);
    let s2 = OrientedSphere::new(LVec3::new(1.0, 0.0, 0.0), -1.0);
    for l in common_isotropic_lines(&s1, &s2, 1e-12)? {
        println!(
            "line through {:?} along {:?} ({:?}), residuals {:.1e} {:.1e}",
            l.point,
            l.direction,
            l.orientation,
            l.contact_residual(&s1),
            l.contact_residual(&s2)
        );
    }
    Ok(())
}
