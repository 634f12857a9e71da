//! JSON documents, SVG and OBJ export.
//!
//! Every document is `{schema_version, kind, metadata, payload}`. Maps keyed
//! by vertex or face are written as lists of records `{"at": [i, j], ...}`
//! in index order, floats with 17 significant digits, so equal inputs give
//! byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

use crate::associated::AssociatedSurface;
use crate::incircular::{IncircularNet, OrientedCircle, OrientedLine, XField};
use crate::koebe::{Congruence, SIsothermicNet};
use crate::lorentz::{IsotropicLine, LVec3, OrientedSphere, SpacelikeCircle};
use crate::pattern::{DiskCircle, DiskCirclePattern};
use crate::quad::{Face, QuadPatch, Vertex};
use crate::verify::Report;

pub const SCHEMA_VERSION: &str = "maxlor/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pattern,
    Sisothermic,
    Congruence,
    Associated,
    Incircular,
    Xfield,
    Report,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| std::fmt::Error)?;
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// Generator parameters and flags that produced a document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    /// Disk automorphism (Re a, Im a, alpha).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobius: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

/// A record of a vertex- or face-keyed map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry<K, V> {
    pub at: K,
    #[serde(flatten)]
    pub value: V,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pt<P> {
    pub point: P,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XValue {
    pub x: f64,
}

trait Key: Ord + Copy + std::fmt::Display {
    fn in_patch(&self, p: &QuadPatch) -> bool;
}

impl Key for Vertex {
    fn in_patch(&self, p: &QuadPatch) -> bool {
        p.contains(*self)
    }
}

impl Key for Face {
    fn in_patch(&self, p: &QuadPatch) -> bool {
        p.contains_face(*self)
    }
}

fn to_entries<K: Copy, V, W>(m: &BTreeMap<K, V>, f: impl Fn(&V) -> W) -> Vec<Entry<K, W>> {
    m.iter().map(|(k, v)| Entry { at: *k, value: f(v) }).collect()
}

fn from_entries<K: Key, W, V>(patch: &QuadPatch, v: &[Entry<K, W>], f: impl Fn(&W) -> V) -> Result<BTreeMap<K, V>, IoError> {
    let mut out = BTreeMap::new();
    for e in v {
        if !e.at.in_patch(patch) {
            return Err(schema(format!("{} is outside the {}x{} patch", e.at, patch.m, patch.n)));
        }
        if out.insert(e.at, f(&e.value)).is_some() {
            return Err(schema(format!("duplicate record at {}", e.at)));
        }
    }
    Ok(out)
}

fn check_patch(p: &QuadPatch) -> Result<(), IoError> {
    if p.m < 1 || p.n < 1 || p.m > 4096 || p.n > 4096 {
        return Err(schema(format!("bad patch size {}x{}", p.m, p.n)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternDoc {
    pub patch: QuadPatch,
    pub circles: Vec<Entry<Vertex, DiskCircle>>,
    pub face_points: Vec<Entry<Face, Pt<Complex64>>>,
}

impl From<&DiskCirclePattern> for PatternDoc {
    fn from(p: &DiskCirclePattern) -> Self {
        PatternDoc {
            patch: p.patch,
            circles: to_entries(&p.circles, |c| *c),
            face_points: to_entries(&p.face_points, |z| Pt { point: *z }),
        }
    }
}

impl TryFrom<&PatternDoc> for DiskCirclePattern {
    type Error = IoError;
    fn try_from(d: &PatternDoc) -> Result<Self, IoError> {
        check_patch(&d.patch)?;
        let circles = from_entries(&d.patch, &d.circles, |c| *c)?;
        let face_points = from_entries(&d.patch, &d.face_points, |p| p.point)?;
        if circles.len() != d.patch.vertices().count() || face_points.len() != d.patch.faces().count() {
            return Err(schema("pattern does not cover the patch"));
        }
        Ok(DiskCirclePattern { patch: d.patch, circles, face_points })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CongruenceDoc {
    pub patch: QuadPatch,
    pub white: Vec<Entry<Vertex, OrientedSphere>>,
    pub black: Vec<Entry<Vertex, OrientedSphere>>,
    pub lines: Vec<Entry<Face, IsotropicLine>>,
}

impl From<&Congruence> for CongruenceDoc {
    fn from(c: &Congruence) -> Self {
        CongruenceDoc {
            patch: c.patch,
            white: to_entries(&c.white, |s| *s),
            black: to_entries(&c.black, |s| *s),
            lines: to_entries(&c.lines, |l| *l),
        }
    }
}

impl TryFrom<&CongruenceDoc> for Congruence {
    type Error = IoError;
    fn try_from(d: &CongruenceDoc) -> Result<Self, IoError> {
        check_patch(&d.patch)?;
        Ok(Congruence {
            patch: d.patch,
            white: from_entries(&d.patch, &d.white, |s| *s)?,
            black: from_entries(&d.patch, &d.black, |s| *s)?,
            lines: from_entries(&d.patch, &d.lines, |l| *l)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetRole {
    Koebe,
    Maximal,
}

/// An s-isothermic net with optional congruences and the source pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetDoc {
    pub role: NetRole,
    pub patch: QuadPatch,
    pub white: Vec<Entry<Vertex, OrientedSphere>>,
    pub black: Vec<Entry<Vertex, SpacelikeCircle>>,
    pub contact: Vec<Entry<Face, Pt<LVec3>>>,
    #[serde(default)]
    pub congruences: Vec<CongruenceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternDoc>,
}

impl NetDoc {
    pub fn new(role: NetRole, net: &SIsothermicNet, congruences: &[Congruence], pattern: Option<&DiskCirclePattern>) -> Self {
        NetDoc {
            role,
            patch: net.patch,
            white: to_entries(&net.white, |s| *s),
            black: to_entries(&net.black, |c| *c),
            contact: to_entries(&net.contact, |p| Pt { point: *p }),
            congruences: congruences.iter().map(CongruenceDoc::from).collect(),
            pattern: pattern.map(PatternDoc::from),
        }
    }

    pub fn net(&self) -> Result<SIsothermicNet, IoError> {
        check_patch(&self.patch)?;
        Ok(SIsothermicNet {
            patch: self.patch,
            white: from_entries(&self.patch, &self.white, |s| *s)?,
            black: from_entries(&self.patch, &self.black, |c| *c)?,
            contact: from_entries(&self.patch, &self.contact, |p| p.point)?,
        })
    }

    pub fn congruences(&self) -> Result<Vec<Congruence>, IoError> {
        self.congruences.iter().map(Congruence::try_from).collect()
    }

    pub fn pattern(&self) -> Result<Option<DiskCirclePattern>, IoError> {
        self.pattern.as_ref().map(DiskCirclePattern::try_from).transpose()
    }
}

/// An associated surface with its two contact and two null congruences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociatedDoc {
    pub phi: f64,
    pub patch: QuadPatch,
    pub white: Vec<Entry<Vertex, OrientedSphere>>,
    pub contact: Vec<Entry<Face, Pt<LVec3>>>,
    pub circles: Vec<Entry<Vertex, SpacelikeCircle>>,
    pub residual: f64,
    pub concyclicity: f64,
    pub contact_congruences: Vec<CongruenceDoc>,
    pub null_congruences: Vec<CongruenceDoc>,
}

impl AssociatedDoc {
    pub fn new(s: &AssociatedSurface, contact: &[Congruence], null: &[Congruence]) -> Self {
        AssociatedDoc {
            phi: s.phi,
            patch: s.patch,
            white: to_entries(&s.white, |x| *x),
            contact: to_entries(&s.contact, |p| Pt { point: *p }),
            circles: to_entries(&s.circles, |c| *c),
            residual: s.residual,
            concyclicity: s.concyclicity,
            contact_congruences: contact.iter().map(CongruenceDoc::from).collect(),
            null_congruences: null.iter().map(CongruenceDoc::from).collect(),
        }
    }

    pub fn surface(&self) -> Result<AssociatedSurface, IoError> {
        check_patch(&self.patch)?;
        Ok(AssociatedSurface {
            phi: self.phi,
            patch: self.patch,
            white: from_entries(&self.patch, &self.white, |s| *s)?,
            contact: from_entries(&self.patch, &self.contact, |p| p.point)?,
            circles: from_entries(&self.patch, &self.circles, |c| *c)?,
            residual: self.residual,
            concyclicity: self.concyclicity,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncircularDoc {
    pub patch: QuadPatch,
    pub white: Vec<Entry<Vertex, OrientedCircle>>,
    pub black: Vec<Entry<Vertex, Pt<Complex64>>>,
    pub lines: Vec<Entry<Face, OrientedLine>>,
}

impl From<&IncircularNet> for IncircularDoc {
    fn from(n: &IncircularNet) -> Self {
        IncircularDoc {
            patch: n.patch,
            white: to_entries(&n.white, |c| *c),
            black: to_entries(&n.black, |p| Pt { point: *p }),
            lines: to_entries(&n.lines, |l| *l),
        }
    }
}

impl TryFrom<&IncircularDoc> for IncircularNet {
    type Error = IoError;
    fn try_from(d: &IncircularDoc) -> Result<Self, IoError> {
        check_patch(&d.patch)?;
        Ok(IncircularNet {
            patch: d.patch,
            white: from_entries(&d.patch, &d.white, |c| *c)?,
            black: from_entries(&d.patch, &d.black, |p| p.point)?,
            lines: from_entries(&d.patch, &d.lines, |l| *l)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XFieldDoc {
    pub patch: QuadPatch,
    pub values: Vec<Entry<Vertex, XValue>>,
}

impl XFieldDoc {
    pub fn new(patch: QuadPatch, x: &XField) -> Self {
        XFieldDoc { patch, values: to_entries(x, |x| XValue { x: *x }) }
    }

    pub fn field(&self) -> Result<XField, IoError> {
        from_entries(&self.patch, &self.values, |v| v.x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Pattern(PatternDoc),
    Sisothermic(NetDoc),
    Congruence(CongruenceDoc),
    Associated(AssociatedDoc),
    Incircular(IncircularDoc),
    Xfield(XFieldDoc),
    Report(Report),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Pattern(_) => Kind::Pattern,
            Payload::Sisothermic(_) => Kind::Sisothermic,
            Payload::Congruence(_) => Kind::Congruence,
            Payload::Associated(_) => Kind::Associated,
            Payload::Incircular(_) => Kind::Incircular,
            Payload::Xfield(_) => Kind::Xfield,
            Payload::Report(_) => Kind::Report,
        }
    }

    fn from_value(kind: Kind, v: serde_json::Value) -> Result<Self, IoError> {
        fn de<T: DeserializeOwned>(v: serde_json::Value) -> Result<T, IoError> {
            Ok(serde_json::from_value(v)?)
        }
        Ok(match kind {
            Kind::Pattern => Payload::Pattern(de(v)?),
            Kind::Sisothermic => Payload::Sisothermic(de(v)?),
            Kind::Congruence => Payload::Congruence(de(v)?),
            Kind::Associated => Payload::Associated(de(v)?),
            Kind::Incircular => Payload::Incircular(de(v)?),
            Kind::Xfield => Payload::Xfield(de(v)?),
            Kind::Report => Payload::Report(de(v)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Document {
    pub schema_version: String,
    pub kind: Kind,
    pub metadata: Metadata,
    pub payload: Payload,
}

#[derive(Deserialize)]
struct RawDocument {
    schema_version: String,
    kind: Kind,
    #[serde(default)]
    metadata: Metadata,
    payload: serde_json::Value,
}

impl Document {
    pub fn new(metadata: Metadata, payload: Payload) -> Self {
        Document { schema_version: SCHEMA_VERSION.to_string(), kind: payload.kind(), metadata, payload }
    }

    pub fn parse(s: &str) -> Result<Self, IoError> {
        let raw: RawDocument = serde_json::from_str(s)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(schema(format!("unsupported schema_version {:?}", raw.schema_version)));
        }
        let payload = Payload::from_value(raw.kind, raw.payload)?;
        Ok(Document { schema_version: raw.schema_version, kind: raw.kind, metadata: raw.metadata, payload })
    }

    pub fn emit(&self) -> Result<String, IoError> {
        to_json(self)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Document::parse(&read_file(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        write_file(path, &self.emit()?)
    }
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, s: &str) -> Result<(), IoError> {
    std::fs::write(path, s).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

/// Pretty JSON with every float in `{:.16e}` form. Non-finite floats are
/// an error.
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if !value.is_finite() {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "non-finite number"));
        }
        write!(w, "{value:.16e}")
    }
    // serde_json writes non-finite floats as null; documents never contain
    // a legitimate null
    fn write_null<W: ?Sized + io::Write>(&mut self, _: &mut W) -> io::Result<()> {
        Err(io::Error::new(io::ErrorKind::InvalidData, "non-finite number"))
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Deterministic JSON for any serializable value, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::with_indent(b" ")));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| schema(e.to_string()))
}

/// SVG drawing of one or two incircular nets: incircles, black points and
/// face lines clipped to the bounding box. The second net uses the stroke
/// class `net2`.
pub fn export_svg(nets: &[&IncircularNet]) -> String {
    let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    let mut grow = |z: Complex64, r: f64| {
        lo = Complex64::new(lo.re.min(z.re - r), lo.im.min(z.im - r));
        hi = Complex64::new(hi.re.max(z.re + r), hi.im.max(z.im + r));
    };
    for n in nets {
        n.white.values().for_each(|c| grow(c.center, c.radius.abs()));
        n.black.values().for_each(|z| grow(*z, 0.0));
    }
    if !lo.re.is_finite() {
        lo = Complex64::new(-1.0, -1.0);
        hi = Complex64::new(1.0, 1.0);
    }
    let pad = 0.05 * (hi - lo).norm().max(1e-9);
    let (lo, hi) = (lo - Complex64::new(pad, pad), hi + Complex64::new(pad, pad));
    let (w, h) = (hi.re - lo.re, hi.im - lo.im);
    let dot = 0.004 * w.max(h);
    let mut s = String::new();
    // y grows downward in SVG; flip it so the picture matches the plane
    let y = |v: f64| lo.im + hi.im - v;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.9} {:.9} {:.9} {:.9}">"#,
        lo.re, lo.im, w, h
    );
    let _ = writeln!(
        s,
        "<style>.incircle{{fill:none;stroke:#1f4e9c;stroke-width:{dot:.9}}} .line{{stroke:#888;stroke-width:{:.9}}} .black{{fill:#000}} .net2 .incircle,.net2 .line{{stroke:#c0392b}} .net2 .black{{fill:#c0392b}}</style>",
        dot / 2.0
    );
    for (k, n) in nets.iter().enumerate() {
        let class = if k == 0 { "net1" } else { "net2" };
        let _ = writeln!(s, r#"<g class="{class}">"#);
        for l in n.lines.values() {
            if let Some((a, b)) = clip_line(l, lo, hi) {
                let _ = writeln!(
                    s,
                    r#"<line class="line" x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}"/>"#,
                    a.re,
                    y(a.im),
                    b.re,
                    y(b.im)
                );
            }
        }
        for c in n.white.values() {
            let _ = writeln!(
                s,
                r#"<circle class="incircle" cx="{:.9}" cy="{:.9}" r="{:.9}"/>"#,
                c.center.re,
                y(c.center.im),
                c.radius.abs()
            );
        }
        for z in n.black.values() {
            let _ = writeln!(s, r#"<circle class="black" cx="{:.9}" cy="{:.9}" r="{dot:.9}"/>"#, z.re, y(z.im));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

/// Segment of an infinite line inside the box [lo, hi].
fn clip_line(l: &OrientedLine, lo: Complex64, hi: Complex64) -> Option<(Complex64, Complex64)> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, a, b) in [(l.point.re, l.direction.re, lo.re, hi.re), (l.point.im, l.direction.im, lo.im, hi.im)] {
        if d.abs() < 1e-300 {
            if p < a || p > b {
                return None;
            }
            continue;
        }
        let (ta, tb) = ((a - p) / d, (b - p) / d);
        t0 = t0.max(ta.min(tb));
        t1 = t1.min(ta.max(tb));
    }
    (t0 < t1).then(|| (l.point + l.direction * t0, l.point + l.direction * t1))
}

/// OBJ quad mesh: white centers as vertices (x3 as height), one face per
/// white quad around an interior black vertex.
pub fn export_obj(patch: &QuadPatch, white: &BTreeMap<Vertex, LVec3>) -> String {
    let mut s = String::from("# white centers, quads around black vertices\n");
    let mut index = BTreeMap::new();
    for (k, (w, p)) in white.iter().enumerate() {
        index.insert(*w, k + 1);
        let _ = writeln!(s, "v {:.16e} {:.16e} {:.16e}", p.x1, p.x2, p.x3);
    }
    for b in patch.blacks() {
        let ids: Option<Vec<usize>> = QuadPatch::cross_neighbors(b).iter().map(|w| index.get(w).copied()).collect();
        if let Some(ids) = ids {
            let _ = writeln!(s, "f {} {} {} {}", ids[0], ids[1], ids[2], ids[3]);
        }
    }
    s
}
