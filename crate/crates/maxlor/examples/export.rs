//! Documents, SVG and OBJ output. Writes to the directory given as the
//! first argument, or the system temp directory.

use std::path::PathBuf;

use maxlor::christoffel::dualize;
use maxlor::incircular::project;
use maxlor::io::{export_obj, export_svg, Document, Metadata, NetDoc, NetRole, Payload};
use maxlor::koebe::{build_koebe_net, koebe_congruences};
use maxlor::pattern::gen_regular_pattern;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let p = gen_regular_pattern(6, 6, 0.15)?.apply_disk_automorphism(Complex64::new(0.2, 0.1), 0.3)?;
    let net = build_koebe_net(&p)?;
    let [k1, k2] = koebe_congruences(&net)?;
    let d = dualize(&net, &k1, 1e-9)?;

    let doc = Document::new(
        Metadata { generator: Some("regular".into()), rows: Some(6), cols: Some(6), spacing: Some(0.15), ..Default::default() },
        Payload::Sisothermic(NetDoc::new(NetRole::Maximal, &d.net, std::slice::from_ref(&d.congruence), Some(&p))),
    );
    doc.write(&dir.join("maximal.json"))?;

    let svg = export_svg(&[&project(&k1)?, &project(&k2)?]);
    std::fs::write(dir.join("incircular.svg"), svg)?;

    let centers = d.net.white.iter().map(|(w, s)| (*w, s.center)).collect();
    std::fs::write(dir.join("maximal.obj"), export_obj(&d.net.patch, &centers))?;
    println!("wrote maximal.json, incircular.svg, maximal.obj to {}", dir.display());
    Ok(())
}
