//! The `maxlor` command line. Exit codes: 0 success, 1 validation failure
//! (JSON report on stdout), 2 I/O, schema or usage error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::associated::{contact_congruences, integrate_associated, null_congruences};
use crate::christoffel::dualize;
use crate::error::GeometryError;
use crate::incircular::{project, x_field_lorentz, x_field_planar, IncircularNet};
use crate::io::{
    export_obj, export_svg, to_json, AssociatedDoc, Document, IncircularDoc, IoError, Metadata, NetDoc, NetRole,
    PatternDoc, Payload, XFieldDoc,
};
use crate::koebe::{build_koebe_net, koebe_congruences, Congruence};
use crate::pattern::{gen_exponential_pattern, gen_regular_pattern, DiskCirclePattern};
use crate::verify::{self, Inputs, Options, Report, Suite};
use crate::weierstrass::assemble_weierstrass;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "MAXLOR_TOL";
const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "maxlor", version, about = "Discrete maximal surfaces from orthogonal circle patterns")]
struct Cli {
    /// Tolerance for closedness and contact checks; overrides MAXLOR_TOL.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an orthogonal circle pattern in the unit disk.
    GenPattern {
        #[arg(long)]
        rows: i32,
        #[arg(long)]
        cols: i32,
        /// Spacing of the regular square grid pattern.
        #[arg(long, required_unless_present = "exponential")]
        spacing: Option<f64>,
        /// Discrete exponential pattern instead: ANGLE,SCALE,SHIFT_RE,SHIFT_IM.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "spacing")]
        exponential: Option<Vec<f64>>,
        /// Disk automorphism applied afterwards: A_RE,A_IM,ALPHA.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mobius: Option<Vec<f64>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Koebe net and both null congruences of a pattern.
    Lift {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Christoffel dual of a Koebe net: the maximal surface.
    Dualize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Maximal surface from the closed-form increments of a pattern.
    Weierstrass {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Associated surface at angle phi with its contact and null congruences.
    Associate {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Orthogonal projection of a null congruence to an incircular net.
    Project {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// X-variables of an incircular net or a congruence.
    Xvars {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite; the report goes to stdout.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Number of equispaced phi values in [0, 2 pi).
        #[arg(long, default_value_t = 16)]
        phi_grid: usize,
    },
    /// SVG drawing of one or two incircular nets.
    ExportSvg {
        input: PathBuf,
        second: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// OBJ quad mesh of the white centers of a surface.
    ExportObj {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Geometry(#[from] GeometryError),
    /// A verification report that did not pass.
    #[error("verification failed")]
    Failed(Report),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (name, result) = (command_name(&cli.command), execute(cli, out));
    match result {
        Ok(()) => 0,
        Err(CliError::Failed(report)) => emit_report(&report, out, err),
        Err(CliError::Geometry(e)) => emit_report(&Report::from_error(name, &e), out, err),
        Err(e) => {
            let _ = writeln!(err, "maxlor: {e}");
            2
        }
    }
}

fn emit_report(report: &Report, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match to_json(report) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "maxlor: {e}");
            2
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::GenPattern { .. } => "gen-pattern",
        Command::Lift { .. } => "lift",
        Command::Dualize { .. } => "dualize",
        Command::Weierstrass { .. } => "weierstrass",
        Command::Associate { .. } => "associate",
        Command::Project { .. } => "project",
        Command::Xvars { .. } => "xvars",
        Command::Verify { .. } => "verify",
        Command::ExportSvg { .. } => "export-svg",
        Command::ExportObj { .. } => "export-obj",
    }
}

fn tolerance(flag: Option<f64>) -> Result<Option<f64>, CliError> {
    let tol = match flag {
        Some(t) => Some(t),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => Some(s.trim().parse::<f64>().map_err(|_| usage(format!("{TOL_ENV}={s:?} is not a number")))?),
            Err(_) => None,
        },
    };
    match tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(usage(format!("tolerance {t} must be finite and >= 0"))),
        t => Ok(t),
    }
}

fn read_doc(path: &Path) -> Result<Document, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|source| IoError::File { path: "<stdin>".into(), source })?;
        return Ok(Document::parse(&s)?);
    }
    Ok(Document::read(path)?)
}

fn write_text(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(crate::io::write_file(p, text)?),
        _ => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io(IoError::File { path: "<stdout>".into(), source })),
    }
}

fn write_doc(path: &Option<PathBuf>, doc: &Document, out: &mut dyn Write) -> Result<(), CliError> {
    write_text(path, &doc.emit()?, out)
}

fn wrong_kind(doc: &Document, wanted: &str) -> CliError {
    usage(format!("expected {wanted}, got kind {}", doc.kind))
}

fn pattern_of(doc: &Document) -> Result<DiskCirclePattern, CliError> {
    match &doc.payload {
        Payload::Pattern(p) => Ok(DiskCirclePattern::try_from(p)?),
        Payload::Sisothermic(n) => n.pattern()?.ok_or_else(|| usage("net document carries no pattern")),
        _ => Err(wrong_kind(doc, "a pattern")),
    }
}

fn koebe_of(doc: &Document) -> Result<(NetDoc, crate::koebe::SIsothermicNet), CliError> {
    match &doc.payload {
        Payload::Sisothermic(n) if n.role == NetRole::Koebe => {
            let net = n.net()?;
            Ok((n.clone(), net))
        }
        Payload::Pattern(p) => {
            let p = DiskCirclePattern::try_from(p)?;
            let net = build_koebe_net(&p)?;
            let congs = koebe_congruences(&net)?;
            Ok((NetDoc::new(NetRole::Koebe, &net, &congs, Some(&p)), net))
        }
        _ => Err(wrong_kind(doc, "a Koebe net or a pattern")),
    }
}

/// The congruence selected by `which` from any document carrying one.
fn congruence_of(doc: &Document, which: u8) -> Result<Congruence, CliError> {
    let k = usize::from(which - 1);
    let pick = |list: &[crate::io::CongruenceDoc]| -> Result<Congruence, CliError> {
        let c = list.get(k).ok_or_else(|| usage(format!("document has no congruence {which}")))?;
        Ok(Congruence::try_from(c)?)
    };
    match &doc.payload {
        Payload::Congruence(c) => Ok(Congruence::try_from(c)?),
        Payload::Sisothermic(n) => pick(&n.congruences),
        Payload::Associated(a) => pick(&a.null_congruences),
        _ => Err(wrong_kind(doc, "a congruence, net or associated surface")),
    }
}

fn incircular_of(doc: &Document) -> Result<IncircularNet, CliError> {
    match &doc.payload {
        Payload::Incircular(i) => Ok(IncircularNet::try_from(i)?),
        _ => Err(wrong_kind(doc, "an incircular net")),
    }
}

fn inputs_of(doc: &Document) -> Result<Inputs, CliError> {
    let mut inputs = Inputs::default();
    match &doc.payload {
        Payload::Pattern(p) => inputs.pattern = Some(DiskCirclePattern::try_from(p)?),
        Payload::Sisothermic(n) => {
            inputs.pattern = n.pattern()?;
            match n.role {
                NetRole::Koebe => {
                    inputs.koebe = Some(n.net()?);
                    inputs.koebe_congruences = n.congruences()?;
                }
                NetRole::Maximal => inputs.maximal = Some(n.net()?),
            }
        }
        Payload::Associated(a) => {
            let mut congs = congruences_from(&a.contact_congruences)?;
            congs.extend(congruences_from(&a.null_congruences)?);
            inputs.associated = Some((a.surface()?, congs));
        }
        Payload::Incircular(i) => inputs.incircular.push(IncircularNet::try_from(i)?),
        _ => return Err(wrong_kind(doc, "a pattern, net, associated surface or incircular net")),
    }
    Ok(inputs)
}

fn congruences_from(docs: &[crate::io::CongruenceDoc]) -> Result<Vec<Congruence>, IoError> {
    docs.iter().map(Congruence::try_from).collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let tol_override = tolerance(cli.tol)?;
    let tol = tol_override.unwrap_or(DEFAULT_TOL);
    match cli.command {
        Command::GenPattern { rows, cols, spacing, exponential, mobius, output } => {
            let mut meta = Metadata { rows: Some(rows), cols: Some(cols), ..Default::default() };
            let mut p = match (spacing, exponential) {
                (_, Some(e)) => {
                    let [angle, scale, re, im] = e[..] else {
                        return Err(usage("--exponential takes ANGLE,SCALE,SHIFT_RE,SHIFT_IM"));
                    };
                    meta.generator = Some("exponential".into());
                    gen_exponential_pattern(rows, cols, angle, scale, Complex64::new(re, im))?
                }
                (Some(s), None) => {
                    meta.generator = Some("regular".into());
                    meta.spacing = Some(s);
                    gen_regular_pattern(rows, cols, s)?
                }
                (None, None) => return Err(usage("give --spacing or --exponential")),
            };
            if let Some(m) = mobius {
                let [re, im, alpha] = m[..] else {
                    return Err(usage("--mobius takes A_RE,A_IM,ALPHA"));
                };
                p = p.apply_disk_automorphism(Complex64::new(re, im), alpha)?;
                meta.mobius = Some([re, im, alpha]);
            }
            let rep = p.validate();
            if !rep.passes(tol) {
                return Err(GeometryError::PatternInvalid(format!(
                    "orthogonality {:e}, incidence {:e}, extent {}",
                    rep.orthogonality, rep.incidence, rep.max_extent
                ))
                .into());
            }
            write_doc(&output, &Document::new(meta, Payload::Pattern(PatternDoc::from(&p))), out)
        }
        Command::Lift { input, output } => {
            let doc = read_doc(&input)?;
            let p = pattern_of(&doc)?;
            let net = build_koebe_net(&p)?;
            let congs = koebe_congruences(&net)?;
            let payload = Payload::Sisothermic(NetDoc::new(NetRole::Koebe, &net, &congs, Some(&p)));
            write_doc(&output, &Document::new(doc.metadata, payload), out)
        }
        Command::Dualize { input, output } => {
            let doc = read_doc(&input)?;
            let (nd, net) = koebe_of(&doc)?;
            let congs = nd.congruences()?;
            let congs = if congs.len() == 2 { congs } else { koebe_congruences(&net)?.to_vec() };
            let duals = congs.iter().map(|c| dualize(&net, c, tol)).collect::<Result<Vec<_>, _>>()?;
            let dual_congs: Vec<Congruence> = duals.iter().map(|d| d.congruence.clone()).collect();
            let pattern = nd.pattern()?;
            let payload = Payload::Sisothermic(NetDoc::new(NetRole::Maximal, &duals[0].net, &dual_congs, pattern.as_ref()));
            let meta = Metadata { tol: tol_override, ..doc.metadata };
            write_doc(&output, &Document::new(meta, payload), out)
        }
        Command::Weierstrass { input, output } => {
            let doc = read_doc(&input)?;
            let p = pattern_of(&doc)?;
            let w1 = assemble_weierstrass(&p, 1, tol)?;
            let w2 = assemble_weierstrass(&p, 2, tol)?;
            let congs = [w1.congruence.clone(), w2.congruence];
            let payload = Payload::Sisothermic(NetDoc::new(NetRole::Maximal, &w1.net, &congs, Some(&p)));
            let meta = Metadata { tol: tol_override, ..doc.metadata };
            write_doc(&output, &Document::new(meta, payload), out)
        }
        Command::Associate { input, phi, output } => {
            let doc = read_doc(&input)?;
            let (_, net) = koebe_of(&doc)?;
            let s = integrate_associated(&net, phi, tol)?;
            let contact = contact_congruences(&s, &net, tol)?;
            let null = contact.iter().map(|c| null_congruences(c, tol)).collect::<Result<Vec<_>, _>>()?;
            let meta = Metadata { phi: Some(phi), tol: tol_override, ..doc.metadata };
            write_doc(&output, &Document::new(meta, Payload::Associated(AssociatedDoc::new(&s, &contact, &null))), out)
        }
        Command::Project { input, which, output } => {
            let doc = read_doc(&input)?;
            let c = congruence_of(&doc, which)?;
            if !c.is_null() {
                return Err(usage("projection needs a null congruence"));
            }
            let inc = project(&c)?;
            let meta = Metadata { which: Some(which), ..doc.metadata };
            write_doc(&output, &Document::new(meta, Payload::Incircular(IncircularDoc::from(&inc))), out)
        }
        Command::Xvars { input, which, output } => {
            let doc = read_doc(&input)?;
            let (patch, x) = match &doc.payload {
                Payload::Incircular(_) => {
                    let inc = incircular_of(&doc)?;
                    (inc.patch, x_field_planar(&inc)?)
                }
                _ => {
                    let c = congruence_of(&doc, which)?;
                    (c.patch, x_field_lorentz(&c)?)
                }
            };
            write_doc(&output, &Document::new(doc.metadata, Payload::Xfield(XFieldDoc::new(patch, &x))), out)
        }
        Command::Verify { input, suite, phi_grid } => {
            let doc = read_doc(&input)?;
            let inputs = inputs_of(&doc)?;
            if !inputs.supports(suite) {
                return Err(usage(format!("suite {} cannot run on kind {}", suite.name(), doc.kind)));
            }
            if phi_grid == 0 {
                return Err(usage("--phi-grid must be positive"));
            }
            let report = verify::run(&inputs, suite, Options { tol: tol_override, phi_grid });
            if !report.passed {
                return Err(CliError::Failed(report));
            }
            write_text(&None, &to_json(&report)?, out)
        }
        Command::ExportSvg { input, second, output } => {
            let first = incircular_of(&read_doc(&input)?)?;
            let second = second.map(|p| read_doc(&p).and_then(|d| incircular_of(&d))).transpose()?;
            let nets: Vec<&IncircularNet> = std::iter::once(&first).chain(second.as_ref()).collect();
            write_text(&output, &export_svg(&nets), out)
        }
        Command::ExportObj { input, output } => {
            let doc = read_doc(&input)?;
            let (patch, white) = match &doc.payload {
                Payload::Sisothermic(n) => {
                    let net = n.net()?;
                    (net.patch, net.white.iter().map(|(w, s)| (*w, s.center)).collect())
                }
                Payload::Associated(a) => {
                    let s = a.surface()?;
                    (s.patch, s.white.iter().map(|(w, s)| (*w, s.center)).collect())
                }
                _ => return Err(wrong_kind(&doc, "a net or associated surface")),
            };
            write_text(&output, &export_obj(&patch, &white), out)
        }
    }
}
