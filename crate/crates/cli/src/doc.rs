//! JSON documents for rings, modules, complexes, chain maps and short
//! exact sequences, and their conversion to engine objects.
//!
//! Matrices are lists of rows and act on row vectors, so a differential
//! `d_n: C_n -> C_{n-1}` has one row per generator of `C_n`. Over a ring
//! with several local factors a document either carries one component per
//! factor or uses integer entries, which are reduced into every factor.

use gorenstein::complex::{ChainMap, Complex, ShortExact};
use gorenstein::module::Module;
use gorenstein::{make_ring, Matrix, Ring, RingHandle, RingSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    pub ring: RingDoc,
    pub data: Data,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingDoc {
    Z {},
    Zmod { n: i64 },
    TruncPoly { p: i64, n: u32 },
    Product { factors: Vec<RingDoc> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Data {
    Module(ModuleDoc),
    Complex(ComplexDoc),
    ChainMap(MapDoc),
    ShortExact(SesDoc),
    Product { components: Vec<Data> },
}

/// A ring element: an integer, or the coefficient list of a truncated
/// polynomial (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Int(i64),
    Poly(Vec<i64>),
}

pub type MatrixDoc = Vec<Vec<Elem>>;

/// `R^gens` modulo the row space of `relations`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub gens: usize,
    pub relations: MatrixDoc,
}

/// Modules in degrees `lo, lo + 1, ...`; `differentials[i]` is
/// `d_{lo + i + 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub lo: i64,
    pub modules: Vec<ModuleDoc>,
    pub differentials: Vec<MatrixDoc>,
}

/// `parts[i]` is the component in degree `lo + i`; other degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub lo: i64,
    pub parts: Vec<MatrixDoc>,
}

/// `0 -> A -i-> B -p-> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesDoc {
    pub i: MapDoc,
    pub p: MapDoc,
}

/// An engine object over one local ring.
#[derive(Clone, Debug)]
pub enum Object {
    Module(Module),
    Complex(Complex),
    ChainMap(ChainMap),
    ShortExact(ShortExact),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Module(_) => "module",
            Object::Complex(_) => "complex",
            Object::ChainMap(_) => "chain_map",
            Object::ShortExact(_) => "short_exact",
        }
    }

    /// Modules are read as complexes concentrated in degree 0.
    pub fn as_complex(&self) -> Option<Complex> {
        match self {
            Object::Module(m) => Some(Complex::concentrated(m, 0)),
            Object::Complex(c) => Some(c.clone()),
            _ => None,
        }
    }
}

impl PartialEq for Object {
    fn eq(&self, other: &Object) -> bool {
        match (self, other) {
            (Object::Module(a), Object::Module(b)) => a == b,
            (Object::Complex(a), Object::Complex(b)) => a == b,
            (Object::ChainMap(a), Object::ChainMap(b)) => a == b,
            (Object::ShortExact(a), Object::ShortExact(b)) => a.i == b.i && a.p == b.p,
            _ => false,
        }
    }
}

/// A document resolved over each local factor of its ring.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub ring: RingHandle,
    pub parts: Vec<Object>,
}

impl RingDoc {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingDoc::Z {} => RingSpec::Integers,
            RingDoc::Zmod { n } => RingSpec::Zmod(*n),
            RingDoc::TruncPoly { p, n } => RingSpec::TruncPoly { p: *p, n: *n },
            RingDoc::Product { factors } => RingSpec::Product(factors.iter().map(RingDoc::spec).collect()),
        }
    }

    pub fn from_spec(spec: &RingSpec) -> RingDoc {
        match spec {
            RingSpec::Integers => RingDoc::Z {},
            RingSpec::Zmod(n) => RingDoc::Zmod { n: *n },
            RingSpec::TruncPoly { p, n } => RingDoc::TruncPoly { p: *p, n: *n },
            RingSpec::Product(parts) => RingDoc::Product { factors: parts.iter().map(RingDoc::from_spec).collect() },
        }
    }

    pub fn handle(&self) -> Result<RingHandle, CliError> {
        Ok(make_ring(&self.spec())?)
    }

    /// Accepts `Z`, `Zmod4`, `Zmod(4)`, `Z/4`, `TruncPoly(2,3)`, products
    /// joined by `*`, or an inline JSON ring description.
    pub fn parse_flag(s: &str) -> Result<RingDoc, CliError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| CliError::Parse { at: "--ring".to_string(), message: e.to_string() });
        }
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| RingDoc::parse_flag(p)).collect::<Result<_, _>>()?;
            return Ok(RingDoc::Product { factors });
        }
        let bad = || CliError::Parse { at: "--ring".to_string(), message: format!("unrecognized ring {s:?}") };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let args = |rest: &str| -> Option<Vec<i64>> {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            inner.split(',').map(|t| t.parse().ok()).collect()
        };
        if compact == "Z" || compact == "Integers" {
            return Ok(RingDoc::Z {});
        }
        if let Some(rest) = compact.strip_prefix("Zmod").or_else(|| compact.strip_prefix("Z/")) {
            return match args(rest).as_deref() {
                Some([n]) => Ok(RingDoc::Zmod { n: *n }),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = compact.strip_prefix("TruncPoly") {
            return match args(rest).as_deref() {
                Some([p, n]) if *n >= 0 && *n <= u32::MAX as i64 => Ok(RingDoc::TruncPoly { p: *p, n: *n as u32 }),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

pub fn parse_document(text: &str, at: &str) -> Result<Document, CliError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse { at: at.to_string(), message: e.to_string() })?;
    if doc.version != VERSION {
        return Err(CliError::Validation(format!("{at}: unsupported document version {}", doc.version)));
    }
    Ok(doc)
}

/// Reads a document from a file, or takes `path` itself as the document
/// when it starts with `{`.
pub fn read_document(path: &str) -> Result<Document, CliError> {
    if path.trim_start().starts_with('{') {
        return parse_document(path, "inline document");
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse { at: path.to_string(), message: e.to_string() })?;
    parse_document(&text, path)
}

/// Builds and validates the engine objects of a document.
pub fn resolve(doc: &Document) -> Result<Resolved, CliError> {
    let ring = doc.ring.handle()?;
    let factors = ring.factors().to_vec();
    let parts = match &doc.data {
        Data::Product { components } => {
            if components.len() != factors.len() {
                return Err(CliError::Validation(format!(
                    "{} components for a ring with {} local factors",
                    components.len(),
                    factors.len()
                )));
            }
            factors.iter().zip(components).map(|(&r, c)| build(r, c)).collect::<Result<_, _>>()?
        }
        data => factors.iter().map(|&r| build(r, data)).collect::<Result<_, _>>()?,
    };
    Ok(Resolved { ring, parts })
}

fn build(ring: Ring, data: &Data) -> Result<Object, CliError> {
    Ok(match data {
        Data::Module(m) => Object::Module(module(ring, m)?),
        Data::Complex(c) => Object::Complex(complex(ring, c)?),
        Data::ChainMap(f) => Object::ChainMap(chain_map(ring, f)?),
        Data::ShortExact(s) => Object::ShortExact(ShortExact::new(chain_map(ring, &s.i)?, chain_map(ring, &s.p)?)?),
        Data::Product { .. } => return Err(CliError::Validation("nested product components".to_string())),
    })
}

fn elem(ring: Ring, e: &Elem) -> Result<i64, CliError> {
    match (e, ring) {
        (Elem::Int(v), _) => Ok(ring.from_int(*v)),
        (Elem::Poly(cs), Ring::TruncPoly { p, n }) => {
            if cs.len() > n as usize {
                return Err(CliError::Validation(format!("{} coefficients for an element of {ring}", cs.len())));
            }
            let reduced: Vec<i64> = cs.iter().map(|c| c.rem_euclid(p)).collect();
            Ok(ring.from_coeffs(&reduced))
        }
        (Elem::Poly(_), _) => Err(CliError::Validation(format!("polynomial entry for an element of {ring}"))),
    }
}

fn matrix(ring: Ring, rows: usize, cols: usize, m: &MatrixDoc, what: &str) -> Result<Matrix, CliError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::Validation(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for e in m.iter().flatten() {
        data.push(elem(ring, e)?);
    }
    Ok(Matrix::from_canonical(ring, rows, cols, data)?)
}

fn module(ring: Ring, m: &ModuleDoc) -> Result<Module, CliError> {
    let rel = matrix(ring, m.relations.len(), m.gens, &m.relations, "relations")?;
    Ok(Module::new(ring, rel)?)
}

fn complex(ring: Ring, c: &ComplexDoc) -> Result<Complex, CliError> {
    if c.modules.is_empty() {
        return if c.differentials.is_empty() {
            Ok(Complex::zero(ring))
        } else {
            Err(CliError::Validation("differentials without modules".to_string()))
        };
    }
    if c.differentials.len() + 1 != c.modules.len() {
        return Err(CliError::Validation(format!(
            "{} modules need {} differentials, got {}",
            c.modules.len(),
            c.modules.len() - 1,
            c.differentials.len()
        )));
    }
    let modules: Vec<Module> = c.modules.iter().map(|m| module(ring, m)).collect::<Result<_, _>>()?;
    let mut mats = Vec::new();
    for (i, d) in c.differentials.iter().enumerate() {
        let what = format!("differential in degree {}", c.lo + i as i64 + 1);
        mats.push(matrix(ring, modules[i + 1].num_gens(), modules[i].num_gens(), d, &what)?);
    }
    Ok(Complex::from_matrices(ring, c.lo, modules, mats)?)
}

fn chain_map(ring: Ring, f: &MapDoc) -> Result<ChainMap, CliError> {
    let (s, t) = (complex(ring, &f.source)?, complex(ring, &f.target)?);
    let mut mats = Vec::new();
    for (i, m) in f.parts.iter().enumerate() {
        let n = f.lo + i as i64;
        let what = format!("chain map in degree {n}");
        mats.push(matrix(ring, s.module(n).num_gens(), t.module(n).num_gens(), m, &what)?);
    }
    Ok(ChainMap::from_matrices(s, t, f.lo, mats)?)
}

pub fn elem_doc(ring: Ring, a: i64) -> Elem {
    match ring {
        Ring::TruncPoly { .. } => Elem::Poly(ring.coeffs(a)),
        _ => Elem::Int(a),
    }
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&a| elem_doc(m.ring(), a)).collect()).collect()
}

fn module_doc(m: &Module) -> ModuleDoc {
    ModuleDoc { gens: m.num_gens(), relations: matrix_doc(m.presentation()) }
}

fn complex_doc(c: &Complex) -> ComplexDoc {
    if c.is_empty_support() {
        return ComplexDoc { lo: 0, modules: Vec::new(), differentials: Vec::new() };
    }
    ComplexDoc {
        lo: c.lo(),
        modules: c.degrees().map(|n| module_doc(&c.module(n))).collect(),
        differentials: (c.lo() + 1..=c.hi()).map(|n| matrix_doc(c.d(n).matrix())).collect(),
    }
}

fn map_doc(f: &ChainMap) -> MapDoc {
    let (lo, parts) = match f.range() {
        Some((a, b)) => (a, (a..=b).map(|n| matrix_doc(f.part(n).matrix())).collect()),
        None => (0, Vec::new()),
    };
    MapDoc { source: complex_doc(f.source()), target: complex_doc(f.target()), lo, parts }
}

fn data(o: &Object) -> Data {
    match o {
        Object::Module(m) => Data::Module(module_doc(m)),
        Object::Complex(c) => Data::Complex(complex_doc(c)),
        Object::ChainMap(f) => Data::ChainMap(map_doc(f)),
        Object::ShortExact(s) => Data::ShortExact(SesDoc { i: map_doc(&s.i), p: map_doc(&s.p) }),
    }
}

/// The document of one object per local factor of `ring`.
pub fn emit(ring: &RingDoc, parts: &[Object]) -> Document {
    let data = match parts {
        [one] => data(one),
        many => Data::Product { components: many.iter().map(data).collect() },
    };
    Document { version: VERSION, ring: ring.clone(), data }
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
