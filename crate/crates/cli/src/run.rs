//! Dispatch of requests into the engine, one local factor at a time.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use gorenstein::cohomology::{am_sequence, compare_bar_tate, ext_groups, les_first_variable, CohomologyTable, ExtOptions, Theory};
use gorenstein::complex::Complex;
use gorenstein::dimension::{dimension_report_suite, DimensionReport};
use gorenstein::fixtures::Fixtures;
use gorenstein::module::Module;
use gorenstein::resolution::PrecoverPolicy;
use gorenstein::suites::run_suite;
use gorenstein::{ExtInt, Ring};
use serde_json::{json, Value};

use crate::doc::{self, elem_doc, Object, Resolved, RingDoc, VERSION};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Homology,
    Dims,
    Ext,
    Les,
    Compare,
    Verify,
    Fixtures,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Homology => "homology",
            Command::Dims => "dims",
            Command::Ext => "ext",
            Command::Les => "les",
            Command::Compare => "compare",
            Command::Verify => "verify",
            Command::Fixtures => "fixtures",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Abs,
    Gor,
    Bar,
    Tate,
}

impl TheoryArg {
    fn theory(self) -> Theory {
        match self {
            TheoryArg::Abs => Theory::Abs,
            TheoryArg::Gor => Theory::Gor,
            TheoryArg::Bar => Theory::Bar,
            TheoryArg::Tate => Theory::Tate,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    #[value(name = "lemma7")]
    Inductive,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    Module,
    Complex,
    ExactComplex,
    ChainMap,
    ShortExact,
}

impl FixtureKind {
    fn name(self) -> &'static str {
        match self {
            FixtureKind::Module => "module",
            FixtureKind::Complex => "complex",
            FixtureKind::ExactComplex => "exact-complex",
            FixtureKind::ChainMap => "chain-map",
            FixtureKind::ShortExact => "short-exact",
        }
    }
}

/// A validated request.
#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub inputs: Vec<String>,
    pub ring: Option<String>,
    pub range: Option<(i64, i64)>,
    pub theory: Option<TheoryArg>,
    pub policy: PolicyArg,
    pub seed: u64,
    pub suite: Option<String>,
    pub count: Option<usize>,
    pub kind: FixtureKind,
    pub out: Option<PathBuf>,
}

/// A report and whether all of its verdicts passed.
pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

pub fn run(req: &Request) -> Result<Outcome, CliError> {
    let (body, pass) = match req.command {
        Command::Homology => homology(req)?,
        Command::Dims => dims(req)?,
        Command::Ext => ext(req)?,
        Command::Les => les(req)?,
        Command::Compare => compare(req)?,
        Command::Verify => verify(req)?,
        Command::Fixtures => fixtures(req)?,
    };
    let mut report = json!({ "version": VERSION, "command": req.command.name(), "status": if pass { "pass" } else { "fail" } });
    report.as_object_mut().unwrap().extend(body.as_object().cloned().unwrap_or_default());
    Ok(Outcome { report, pass })
}

fn options(req: &Request) -> ExtOptions {
    let precover = match req.policy {
        PolicyArg::Inductive => PrecoverPolicy::Inductive,
        PolicyArg::Identity => PrecoverPolicy::Identity,
    };
    ExtOptions { precover, ..ExtOptions::default() }
}

fn inputs(req: &Request, want: usize) -> Result<Vec<(RingDoc, Resolved)>, CliError> {
    if req.inputs.len() != want {
        return Err(CliError::Validation(format!("{} expects {want} --in file(s), got {}", req.command.name(), req.inputs.len())));
    }
    let mut out: Vec<(RingDoc, Resolved)> = Vec::new();
    for path in &req.inputs {
        let d = doc::read_document(path)?;
        let r = doc::resolve(&d)?;
        if let Some((_, first)) = out.first() {
            if first.ring.factors() != r.ring.factors() {
                return Err(CliError::Validation(format!("{path} is over {} but the first input is over {}", r.ring, first.ring)));
            }
        }
        out.push((d.ring, r));
    }
    Ok(out)
}

fn complex_of(o: &Object, what: &str) -> Result<Complex, CliError> {
    o.as_complex().ok_or_else(|| CliError::Validation(format!("{what} must be a module or a complex, got a {}", o.kind())))
}

fn ext_int(x: ExtInt) -> Value {
    match x {
        ExtInt::Finite(n) => json!(n),
        other => json!(other.to_string()),
    }
}

fn factors_json(m: &Module) -> Value {
    let ring = m.ring();
    json!(m.invariant_factors().iter().map(|&d| elem_doc(ring, d)).collect::<Vec<_>>())
}

fn module_json(m: &Module) -> Value {
    json!({ "factors": factors_json(m), "display": m.to_string() })
}

fn table_json(t: &CohomologyTable) -> Value {
    json!({
        "theory": t.theory.name(),
        "range": [t.range.0, t.range.1],
        "degrees": t.groups.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        "groups": t.groups.iter().map(|(_, m)| factors_json(m)).collect::<Vec<_>>(),
        "display": t.groups.iter().map(|(_, m)| m.to_string()).collect::<Vec<_>>(),
        "provenance": t.provenance,
    })
}

fn dim_json(r: &DimensionReport) -> Value {
    json!({
        "kind": r.kind.name(),
        "value": ext_int(r.value),
        "g": r.g,
        "certificates": r.certificates,
        "cross_check": ext_int(r.cross_check),
    })
}

fn with_factor(r: Ring, mut v: Value) -> Value {
    v.as_object_mut().unwrap().insert("factor".to_string(), json!(r.to_string()));
    v
}

fn ring_head(ring: &RingDoc) -> Value {
    serde_json::to_value(ring).expect("rings serialize")
}

fn homology(req: &Request) -> Result<(Value, bool), CliError> {
    let [(ring, res)] = <[_; 1]>::try_from(inputs(req, 1)?).ok().unwrap();
    let mut comps = Vec::new();
    for (&r, o) in res.ring.factors().iter().zip(&res.parts) {
        let c = complex_of(o, "input")?;
        let groups: Vec<Value> = c
            .degrees()
            .map(|n| {
                let mut v = module_json(&c.homology(n).module);
                v.as_object_mut().unwrap().insert("degree".to_string(), json!(n));
                v
            })
            .collect();
        comps.push(with_factor(r, json!({ "homology": groups, "sup_h": ext_int(c.sup_h()), "inf_h": ext_int(c.inf_h()) })));
    }
    Ok((json!({ "ring": ring_head(&ring), "components": comps }), true))
}

fn dims(req: &Request) -> Result<(Value, bool), CliError> {
    let [(ring, res)] = <[_; 1]>::try_from(inputs(req, 1)?).ok().unwrap();
    let mut comps = Vec::new();
    let mut pass = true;
    for (&r, o) in res.ring.factors().iter().zip(&res.parts) {
        let c = complex_of(o, "input")?;
        let n_gor = if r.is_finite() { 0 } else { 1 };
        let s = dimension_report_suite(&c, n_gor)?;
        pass &= s.all_hold();
        let mut reports: Vec<Value> = s.reports().into_iter().map(dim_json).collect();
        if let Some(g) = &s.gid_dual {
            let mut v = dim_json(g);
            v.as_object_mut().unwrap().insert("kind".to_string(), json!("gid-of-dual"));
            reports.push(v);
        }
        let verdicts: Vec<Value> = s.verdicts.iter().map(|v| json!({ "name": v.name, "holds": v.holds, "detail": v.detail })).collect();
        comps.push(with_factor(r, json!({ "reports": reports, "verdicts": verdicts })));
    }
    Ok((json!({ "ring": ring_head(&ring), "components": comps }), pass))
}

fn ext(req: &Request) -> Result<(Value, bool), CliError> {
    let ins = inputs(req, 2)?;
    let theory = req.theory.unwrap_or(TheoryArg::Abs).theory();
    let range = req.range.unwrap_or((0, 5));
    let mut comps = Vec::new();
    for (i, &r) in ins[0].1.ring.factors().iter().enumerate() {
        let m = complex_of(&ins[0].1.parts[i], "first input")?;
        let n = complex_of(&ins[1].1.parts[i], "second input")?;
        let t = ext_groups(&m, &n, range, theory, options(req))?;
        comps.push(with_factor(r, table_json(&t)));
    }
    Ok((json!({ "ring": ring_head(&ins[0].0), "components": comps }), true))
}

fn les(req: &Request) -> Result<(Value, bool), CliError> {
    let ins = inputs(req, 2)?;
    let range = req.range.unwrap_or((0, 4));
    let mut comps = Vec::new();
    let mut pass = true;
    for (i, &r) in ins[0].1.ring.factors().iter().enumerate() {
        let n = complex_of(&ins[1].1.parts[i], "second input")?;
        let rep = match &ins[0].1.parts[i] {
            Object::ShortExact(s) => {
                let theory = req.theory.unwrap_or(TheoryArg::Gor).theory();
                les_first_variable(s, &n, range, theory, options(req).precover)?
            }
            o => am_sequence(&complex_of(o, "first input")?, &n, range, options(req))?,
        };
        pass &= rep.all_exact();
        let terms: Vec<Value> = rep
            .terms
            .iter()
            .map(|t| {
                let mut v = module_json(&t.module);
                v.as_object_mut().unwrap().insert("label".to_string(), json!(t.label));
                v
            })
            .collect();
        let verdicts: Vec<Value> = rep.verdicts.iter().map(|(l, ok)| json!({ "at": l, "exact": ok })).collect();
        comps.push(with_factor(
            r,
            json!({ "tables": rep.tables.iter().map(table_json).collect::<Vec<_>>(), "terms": terms, "verdicts": verdicts }),
        ));
    }
    Ok((json!({ "ring": ring_head(&ins[0].0), "range": [range.0, range.1], "components": comps }), pass))
}

fn compare(req: &Request) -> Result<(Value, bool), CliError> {
    let ins = inputs(req, 2)?;
    let range = req.range.unwrap_or((0, 5));
    let mut comps = Vec::new();
    for (i, &r) in ins[0].1.ring.factors().iter().enumerate() {
        let m = complex_of(&ins[0].1.parts[i], "first input")?;
        let n = complex_of(&ins[1].1.parts[i], "second input")?;
        let c = compare_bar_tate(&m, &n, range, options(req))?;
        let verdicts: Vec<Value> = c.verdicts.iter().map(|(d, ok)| json!({ "degree": d, "isomorphic": ok })).collect();
        comps.push(with_factor(r, json!({ "bar": table_json(&c.bar), "tate": table_json(&c.tate), "verdicts": verdicts })));
    }
    Ok((json!({ "ring": ring_head(&ins[0].0), "components": comps }), true))
}

fn ring_flag(req: &Request) -> Result<RingDoc, CliError> {
    let s = req.ring.as_deref().ok_or_else(|| CliError::Validation(format!("{} needs --ring", req.command.name())))?;
    let ring = RingDoc::parse_flag(s)?;
    ring.handle()?;
    Ok(ring)
}

fn verify(req: &Request) -> Result<(Value, bool), CliError> {
    let ring = ring_flag(req)?;
    let suite = req.suite.as_deref().ok_or_else(|| CliError::Validation("verify needs --suite".to_string()))?;
    let mut comps = Vec::new();
    let mut pass = true;
    for &r in ring.handle()?.factors() {
        let rep = run_suite(suite, r, req.seed, req.count)?;
        pass &= rep.passed();
        let cases: Vec<Value> = rep.cases.iter().map(|c| json!({ "label": c.label, "pass": c.pass, "detail": c.detail })).collect();
        comps.push(with_factor(r, json!({ "passed": rep.passed(), "cases": cases })));
    }
    Ok((json!({ "ring": ring_head(&ring), "suite": suite, "seed": req.seed, "components": comps }), pass))
}

fn generate(fx: &mut Fixtures, kind: FixtureKind) -> Object {
    match kind {
        FixtureKind::Module => Object::Module(fx.module()),
        FixtureKind::Complex => Object::Complex(fx.complex()),
        FixtureKind::ExactComplex => Object::Complex(fx.exact_complex()),
        FixtureKind::ChainMap => {
            let (x, y) = (fx.complex(), fx.complex());
            Object::ChainMap(fx.chain_map(&x, &y))
        }
        FixtureKind::ShortExact => Object::ShortExact(fx.hom_exact_sequence()),
    }
}

/// Documents of `count` seeded fixtures; each local factor draws from its
/// own generator.
pub fn fixture_documents(ring: &RingDoc, seed: u64, count: usize, kind: FixtureKind) -> Result<Vec<doc::Document>, CliError> {
    let handle = ring.handle()?;
    let mut gens: Vec<Fixtures> = handle.factors().iter().map(|&r| Fixtures::new(r, seed)).collect();
    let mut docs = Vec::with_capacity(count);
    for _ in 0..count {
        let parts: Vec<Object> = gens.iter_mut().map(|fx| generate(fx, kind)).collect();
        let d = doc::emit(ring, &parts);
        // validated on write: the document must read back to the same objects
        let back = doc::resolve(&doc::parse_document(&doc::to_json(&d), "generated fixture")?)?;
        if back.parts != parts {
            return Err(CliError::Validation("generated fixture does not read back".to_string()));
        }
        docs.push(d);
    }
    Ok(docs)
}

fn fixtures(req: &Request) -> Result<(Value, bool), CliError> {
    let ring = ring_flag(req)?;
    let out = req.out.as_deref().ok_or_else(|| CliError::Validation("fixtures needs --out".to_string()))?;
    let count = req.count.unwrap_or(5);
    let docs = fixture_documents(&ring, req.seed, count, req.kind)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let mut files = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        let path = out.join(format!("{}-{i:03}.json", req.kind.name()));
        std::fs::write(&path, doc::to_json(d)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        files.push(file_name(&path));
    }
    Ok((json!({ "ring": ring_head(&ring), "seed": req.seed, "kind": req.kind.name(), "files": files }), true))
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}
