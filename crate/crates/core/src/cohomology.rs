//! Absolute, Gorenstein, generalized Tate and Tate cohomology of bounded
//! complexes, and the long exact sequences between them.
//!
//! Indexing is cohomological throughout: `H^n = H_{-n}` of the relevant
//! Hom complex. The generalized Tate groups are `bar^n = H^n Hom(M(u), N)`
//! for the cone of a lift `u: P -> G` of a DG-projective resolution into a
//! special Gorenstein projective precover, so that for modules
//! `bar^0 = 0` and `bar^n` is Tate cohomology for `n >= 1`.

use std::fmt;

use crate::complex::{exact_at, mapping_cone, ChainMap, Complex, Cone, ShortExact};
use crate::error::{Error, Result};
use crate::homcx::{dual_complex, solve_homotopy, solve_homotopy_through, HomComplex, LiftProblem};
use crate::matrix::Matrix;
use crate::module::{double_dual_evaluation, dual_map, Module, Morphism};
use crate::resolution::{
    complete_resolution, dg_projective_resolution_with, horseshoe, lift_through_precover, projective_resolution,
    special_gp_precover, DgPolicy, HorseshoeFlavor, PrecoverPolicy, ResolutionBundle,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Abs,
    Gor,
    Bar,
    Tate,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Abs, Theory::Gor, Theory::Bar, Theory::Tate];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Abs => "abs",
            Theory::Gor => "gor",
            Theory::Bar => "bar",
            Theory::Tate => "tate",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Choices that should not change any group up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtOptions {
    pub precover: PrecoverPolicy,
    pub dg: DgPolicy,
    pub pad: bool,
}

impl Default for ExtOptions {
    fn default() -> Self {
        ExtOptions { precover: PrecoverPolicy::Inductive, dg: DgPolicy::Minimal, pad: false }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub theory: Theory,
    pub range: (i64, i64),
    pub groups: Vec<(i64, Module)>,
    pub provenance: String,
}

impl CohomologyTable {
    pub fn group(&self, n: i64) -> Option<&Module> {
        self.groups.iter().find(|(k, _)| *k == n).map(|(_, m)| m)
    }

    pub fn invariant_factors(&self) -> Vec<(i64, Vec<i64>)> {
        self.groups.iter().map(|(n, m)| (*n, m.invariant_factors().to_vec())).collect()
    }

    /// Degreewise isomorphism verdicts against another table.
    pub fn compare(&self, other: &CohomologyTable) -> Vec<(i64, bool)> {
        self.groups
            .iter()
            .filter_map(|(n, m)| other.group(*n).map(|o| (*n, m.invariant_factors() == o.invariant_factors())))
            .collect()
    }

    pub fn agrees_with(&self, other: &CohomologyTable) -> bool {
        self.compare(other).iter().all(|(_, ok)| *ok)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(|(_, m)| m.is_zero())
    }
}

fn table(c: &Complex, theory: Theory, (a, b): (i64, i64), provenance: String) -> CohomologyTable {
    let groups = (a..=b).map(|n| (n, c.homology(-n).module)).collect();
    CohomologyTable { theory, range: (a, b), groups, provenance }
}

/// Degree through which a resolution of `m` is built so that the Hom
/// complex into `n` is correct in cohomological degrees `<= b`.
fn resolution_top(m: &Complex, n: &Complex, b: i64) -> i64 {
    let nhi = if n.is_empty_support() { 0 } else { n.hi() };
    let mhi = if m.is_empty_support() { 0 } else { m.hi() };
    mhi.max(nhi + b + 3)
}

fn dg_resolution(m: &Complex, top: i64, opts: ExtOptions) -> ResolutionBundle {
    dg_projective_resolution_with(m, top, opts.dg, opts.pad)
}

/// The data behind the generalized Tate groups.
#[derive(Clone, Debug)]
pub struct BarData {
    pub p: ResolutionBundle,
    pub g: ResolutionBundle,
    pub u: ChainMap,
    pub cone: Cone,
    /// Degrees above this are affected by cutting off `P`.
    pub top: i64,
}

pub fn bar_data(m: &Complex, top: i64, opts: ExtOptions) -> Result<BarData> {
    let p = dg_resolution(m, top, opts);
    let g = special_gp_precover(m, opts.precover)?;
    let u = lift_through_precover(&p.map, &g)?;
    let cone = mapping_cone(&u);
    Ok(BarData { p, g, u, cone, top })
}

/// Complete resolution window covering cohomological degrees `[a, b]`.
fn tate_window(n: &Complex, (a, b): (i64, i64)) -> (i64, i64) {
    let (lo, hi) = if n.is_empty_support() { (0, 0) } else { (n.lo(), n.hi()) };
    (lo + a - 2, hi + b + 2)
}

/// `Ext^n(M, N)` for `n` in `range` in the given theory.
pub fn ext_groups(m: &Complex, n: &Complex, range: (i64, i64), theory: Theory, opts: ExtOptions) -> Result<CohomologyTable> {
    crate::module::same_ring(m.ring(), n.ring())?;
    let top = resolution_top(m, n, range.1);
    match theory {
        Theory::Abs => {
            let p = dg_resolution(m, top, opts);
            let h = HomComplex::new(&p.resolution, n)?;
            Ok(table(&h.complex, theory, range, format!("Hom(P, N), P through degree {top}")))
        }
        Theory::Gor => {
            let g = special_gp_precover(m, opts.precover)?;
            let h = HomComplex::new(&g.resolution, n)?;
            Ok(table(&h.complex, theory, range, format!("Hom(G, N), {:?} precover", opts.precover)))
        }
        Theory::Bar => {
            let d = bar_data(m, top, opts)?;
            let h = HomComplex::new(&d.cone.complex, n)?;
            Ok(table(&h.complex, theory, range, format!("Hom(M(u), N), P through degree {top}")))
        }
        Theory::Tate => {
            let window = tate_window(n, range);
            let c = complete_resolution(m, window)?;
            let h = HomComplex::new(&c.t, n)?;
            let period = c.period.map_or(String::new(), |p| format!(", period {p}"));
            Ok(table(
                &h.complex,
                theory,
                range,
                format!("Hom(T, N), T on [{}, {}], threshold {}{period}", window.0, window.1, c.threshold),
            ))
        }
    }
}

/// One group of a long exact sequence.
#[derive(Clone, Debug)]
pub struct LesTerm {
    pub label: String,
    pub module: Module,
}

#[derive(Clone, Debug)]
pub struct LongExactSequenceReport {
    pub tables: Vec<CohomologyTable>,
    /// Consecutive terms, each mapping to the next.
    pub terms: Vec<LesTerm>,
    pub maps: Vec<Morphism>,
    /// `(label, exact)` for every term checked.
    pub verdicts: Vec<(String, bool)>,
}

impl LongExactSequenceReport {
    pub fn all_exact(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }
}

/// Long exact sequence of `0 -> A -> B -> C -> 0` (Hom complexes) on
/// cohomological degrees `[a-1, b+1]`, checked at the three terms of
/// every degree in `[a, b]`. `labels` name `H^n` of `A`, `B`, `C`.
fn assemble(
    ses: &ShortExact,
    (a, b): (i64, i64),
    labels: [&dyn Fn(i64) -> String; 3],
    tables: Vec<CohomologyTable>,
) -> LongExactSequenceReport {
    let maps = ses.long_exact_sequence(-b - 1, -a + 1);
    let mut terms = Vec::new();
    let cx = [ses.i.source(), ses.i.target(), ses.p.target()];
    for n in a - 1..=b + 1 {
        for (j, c) in cx.iter().enumerate() {
            terms.push(LesTerm { label: labels[j](n), module: c.homology(-n).module });
        }
    }
    terms.truncate(maps.len() + 1);
    let mut verdicts = Vec::new();
    for n in a..=b {
        for j in 0..3 {
            let idx = 3 * (n - a + 1) as usize + j;
            let ok = exact_at(&maps[idx - 1], &maps[idx]);
            verdicts.push((terms[idx].label.clone(), ok));
        }
    }
    LongExactSequenceReport { tables, terms, maps, verdicts }
}

/// The sequence `Ext_R^n -> bar^n -> Ext_G^{n+1} -> Ext_R^{n+1} -> ...`
/// from `0 -> Hom(P, N) -> Hom(M(u), N) -> Hom(G[-1], N) -> 0`.
pub fn am_sequence(m: &Complex, n: &Complex, range: (i64, i64), opts: ExtOptions) -> Result<LongExactSequenceReport> {
    let top = resolution_top(m, n, range.1 + 1);
    let d = bar_data(m, top, opts)?;
    let hp = HomComplex::new(&d.p.resolution, n)?;
    let hc = HomComplex::new(&d.cone.complex, n)?;
    let hg = HomComplex::new(d.cone.incl.source(), n)?;
    let i = hp.precompose(&d.cone.proj, &hc);
    let p = hc.precompose(&d.cone.incl, &hg);
    let ses = ShortExact::new(i, p)?;
    let hgor = HomComplex::new(&d.g.resolution, n)?;
    let tables = vec![
        table(&hp.complex, Theory::Abs, range, "Hom(P, N)".to_string()),
        table(&hc.complex, Theory::Bar, range, "Hom(M(u), N)".to_string()),
        table(&hgor.complex, Theory::Gor, (range.0, range.1 + 1), "Hom(G, N)".to_string()),
    ];
    Ok(assemble(
        &ses,
        range,
        [&|k| format!("Ext_R^{k}"), &|k| format!("bar^{k}"), &|k| format!("Ext_G^{}", k + 1)],
        tables,
    ))
}

/// Long exact sequence in the first variable for a short exact sequence
/// of complexes, in the Gorenstein or generalized Tate theory.
///
/// Gorenstein: from the horseshoe `0 -> G' -> G -> G'' -> 0`. Generalized
/// Tate: horseshoes on both the DG-projective and the precover side, a
/// middle lift `u = [[u', 0], [w, u'']]` compatible with the end lifts,
/// and the resulting sequence of cones `0 -> M(u') -> M(u) -> M(u'') -> 0`.
pub fn les_first_variable(
    ses: &ShortExact,
    n: &Complex,
    range: (i64, i64),
    theory: Theory,
    policy: PrecoverPolicy,
) -> Result<LongExactSequenceReport> {
    let gp = horseshoe(ses, HorseshoeFlavor::Gp(policy))?;
    let b = range.1;
    match theory {
        Theory::Gor => {
            let h1 = HomComplex::new(&gp.left.resolution, n)?;
            let h = HomComplex::new(&gp.middle.resolution, n)?;
            let h2 = HomComplex::new(&gp.right.resolution, n)?;
            let i = h2.precompose(&gp.proj, &h);
            let p = h.precompose(&gp.incl, &h1);
            let s = ShortExact::new(i, p)?;
            let tables = vec![
                table(&h2.complex, theory, range, "Hom(G'', N)".to_string()),
                table(&h.complex, theory, range, "Hom(G, N)".to_string()),
                table(&h1.complex, theory, range, "Hom(G', N)".to_string()),
            ];
            Ok(assemble(
                &s,
                range,
                [&|k| format!("Ext_G^{k}(M'')"), &|k| format!("Ext_G^{k}(M)"), &|k| format!("Ext_G^{k}(M')")],
                tables,
            ))
        }
        Theory::Bar => {
            let top = resolution_top(ses.i.target(), n, b + 1);
            let dg = horseshoe(ses, HorseshoeFlavor::Dg { top })?;
            let u1 = lift_through_precover(&dg.left.map, &gp.left)?;
            let u2 = lift_through_precover(&dg.right.map, &gp.right)?;
            let u = middle_lift(ses, &dg, &gp, &u1, &u2)?;
            let (c1, c, c2) = (mapping_cone(&u1), mapping_cone(&u), mapping_cone(&u2));
            let (ci, cp) = cone_sequence(&c1.complex, &c.complex, &c2.complex, &dg, &gp)?;
            let h1 = HomComplex::new(&c1.complex, n)?;
            let h = HomComplex::new(&c.complex, n)?;
            let h2 = HomComplex::new(&c2.complex, n)?;
            let i = h2.precompose(&cp, &h);
            let p = h.precompose(&ci, &h1);
            let s = ShortExact::new(i, p)?;
            let tables = vec![
                table(&h2.complex, theory, range, "Hom(M(u''), N)".to_string()),
                table(&h.complex, theory, range, "Hom(M(u), N)".to_string()),
                table(&h1.complex, theory, range, "Hom(M(u'), N)".to_string()),
            ];
            Ok(assemble(
                &s,
                range,
                [&|k| format!("bar^{k}(M'')"), &|k| format!("bar^{k}(M)"), &|k| format!("bar^{k}(M')")],
                tables,
            ))
        }
        _ => Err(Error::UnsupportedRing(format!("first-variable sequence for theory {theory}"))),
    }
}

/// `u: P' + P'' -> G' + G''` restricting to `u'` and inducing `u''`.
fn middle_lift(
    ses: &ShortExact,
    dg: &crate::resolution::Horseshoe,
    gp: &crate::resolution::Horseshoe,
    u1: &ChainMap,
    u2: &ChainMap,
) -> Result<ChainMap> {
    let l = &ses.i;
    let (p2, g1, g) = (&dg.right.resolution, &gp.left.resolution, &gp.middle.resolution);
    let ring = l.ring();
    let m1 = l.source();
    // e: P'' -> M' with l e = U_P - U_G u''
    let diff = dg.lift.sub(&u2.then(&gp.lift)?)?;
    let Some((a, b)) = Complex::joint_range(p2, m1) else {
        return Err(Error::LiftNotFound("empty horseshoe".to_string()));
    };
    let mut parts = Vec::new();
    for k in a..=b {
        let solver = l.part(k).preimage_solver();
        let dm = diff.part(k);
        let mut rows = Vec::new();
        for i in 0..dm.matrix().rows() {
            rows.push(
                solver
                    .solve(dm.matrix().row(i))
                    .ok_or_else(|| Error::LiftNotFound("middle lift does not factor through M'".to_string()))?,
            );
        }
        parts.push(Morphism::unchecked(p2.module(k), m1.module(k), Matrix::from_rows(ring, m1.module(k).num_gens(), &rows)));
    }
    let e = ChainMap::new(p2.clone(), m1.clone(), a, parts)?;
    let w = LiftProblem::new(&e, &gp.left.map)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("no lift of the correction term".to_string()))?;
    let p = &dg.middle.resolution;
    let Some((a, b)) = Complex::joint_range(p, g) else {
        return Ok(ChainMap::zero(p, g));
    };
    let parts: Vec<Morphism> = (a..=b)
        .map(|k| {
            let (k1, k2) = (dg.left.resolution.module(k).num_gens(), p2.module(k).num_gens());
            let (j1, j2) = (g1.module(k).num_gens(), gp.right.resolution.module(k).num_gens());
            let mut mat = Matrix::zeros(ring, k1 + k2, j1 + j2);
            mat.paste(0, 0, u1.part(k).matrix());
            mat.paste(k1, 0, w.part(k).matrix());
            mat.paste(k1, j1, u2.part(k).matrix());
            Morphism::unchecked(p.module(k), g.module(k), mat)
        })
        .collect();
    ChainMap::new(p.clone(), g.clone(), a, parts)
}

/// Inclusion `M(u') -> M(u)` and projection `M(u) -> M(u'')` of cones.
fn cone_sequence(
    c1: &Complex,
    c: &Complex,
    c2: &Complex,
    dg: &crate::resolution::Horseshoe,
    gp: &crate::resolution::Horseshoe,
) -> Result<(ChainMap, ChainMap)> {
    let ring = c.ring();
    let Some((a, b)) = Complex::joint_range(c1, c).or_else(|| Complex::joint_range(c, c2)) else {
        let z = Complex::zero(ring);
        return Ok((ChainMap::zero(c1, &z), ChainMap::zero(&z, c2)));
    };
    let lo = a.min(c.lo().min(c2.lo().max(c.lo())));
    let hi = b.max(c.hi());
    let (g1, g2, p1, p2) = (
        &gp.left.resolution,
        &gp.right.resolution,
        &dg.left.resolution,
        &dg.right.resolution,
    );
    let mut inc = Vec::new();
    let mut pro = Vec::new();
    for k in lo..=hi {
        let (x1, x2, y1, y2) = (
            g1.module(k + 1).num_gens(),
            g2.module(k + 1).num_gens(),
            p1.module(k).num_gens(),
            p2.module(k).num_gens(),
        );
        // layout of M(u)_k: G'_{k+1}, G''_{k+1}, P'_k, P''_k
        let mut i = Matrix::zeros(ring, x1 + y1, x1 + x2 + y1 + y2);
        i.paste(0, 0, &Matrix::identity(ring, x1));
        i.paste(x1, x1 + x2, &Matrix::identity(ring, y1));
        inc.push(Morphism::unchecked(c1.module(k), c.module(k), i));
        let mut p = Matrix::zeros(ring, x1 + x2 + y1 + y2, x2 + y2);
        p.paste(x1, 0, &Matrix::identity(ring, x2));
        p.paste(x1 + x2 + y1, x2, &Matrix::identity(ring, y2));
        pro.push(Morphism::unchecked(c.module(k), c2.module(k), p));
    }
    Ok((ChainMap::new(c1.clone(), c.clone(), lo, inc)?, ChainMap::new(c.clone(), c2.clone(), lo, pro)?))
}

/// Degreewise comparison of generalized Tate and Tate cohomology.
#[derive(Clone, Debug)]
pub struct BarTateComparison {
    pub bar: CohomologyTable,
    pub tate: CohomologyTable,
    pub verdicts: Vec<(i64, bool)>,
}

impl BarTateComparison {
    pub fn all_isomorphic(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }
}

/// Compares `bar^j` and `hat^j` for `j` in `range`, which must lie above
/// the top degree of `m`.
pub fn compare_bar_tate(m: &Complex, n: &Complex, range: (i64, i64), opts: ExtOptions) -> Result<BarTateComparison> {
    let t = m.trimmed();
    if !t.is_empty_support() && range.0 <= t.hi() {
        return Err(Error::ShapeMismatch(format!(
            "comparison range must start above the top degree {}",
            t.hi()
        )));
    }
    let bar = ext_groups(m, n, range, Theory::Bar, opts)?;
    let tate = ext_groups(m, n, range, Theory::Tate, opts)?;
    let verdicts = bar.compare(&tate);
    Ok(BarTateComparison { bar, tate, verdicts })
}

/// Independence of the generalized Tate groups from the choice of lift:
/// for two lifts `u, v` with `u - v = d s + s d`, the maps
/// `omega(x, y) = (x + s y, y)` and `psi(x, y) = (x - s y, y)` between the
/// cones are mutually inverse chain maps.
#[derive(Clone, Debug)]
pub struct LiftIndependence {
    pub omega: ChainMap,
    pub psi: ChainMap,
    pub mutually_inverse: bool,
    pub tables_agree: bool,
}

fn cone_map(cu: &Cone, cv: &Cone, alpha: &ChainMap, t: &crate::homcx::Homotopy) -> Result<ChainMap> {
    let (a, b) = (cu.complex.lo(), cu.complex.hi());
    let ring = alpha.ring();
    let (p, q) = (alpha.source(), alpha.target());
    let gdim = |k: i64| cu.complex.module(k).num_gens() - p.module(k).num_gens();
    let parts: Vec<Morphism> = (a..=b)
        .map(|k| {
            let (x, y) = (gdim(k), p.module(k).num_gens());
            let y2 = q.module(k).num_gens();
            let mut m = Matrix::zeros(ring, x + y, x + y2);
            m.paste(0, 0, &Matrix::identity(ring, x));
            m.paste(x, 0, t.part(k).matrix());
            m.paste(x, x, alpha.part(k).matrix());
            Morphism::unchecked(cu.complex.module(k), cv.complex.module(k), m)
        })
        .collect();
    ChainMap::new(cu.complex.clone(), cv.complex.clone(), a, parts)
}

pub fn lift_independence(m: &Complex, n: &Complex, range: (i64, i64), coeffs: &[i64], opts: ExtOptions) -> Result<LiftIndependence> {
    let top = resolution_top(m, n, range.1);
    let d = bar_data(m, top, opts)?;
    let v = LiftProblem::new(&d.p.map, &d.g.map)?
        .solve_shifted(coeffs)
        .ok_or_else(|| Error::LiftNotFound("second lift".to_string()))?;
    let s = solve_homotopy(&d.u, &v)?.ok_or_else(|| Error::LiftNotFound("lifts are not homotopic".to_string()))?;
    let cv = mapping_cone(&v);
    let id = ChainMap::identity(&d.p.resolution);
    let omega = cone_map(&d.cone, &cv, &id, &s)?;
    let neg = crate::homcx::Homotopy {
        f: s.g.clone(),
        g: s.f.clone(),
        parts: s.parts.iter().map(|(k, h)| (*k, h.neg())).collect(),
        through: None,
    };
    let psi = cone_map(&cv, &d.cone, &id, &neg)?;
    let mutually_inverse = omega.then(&psi)?.equals(&ChainMap::identity(&d.cone.complex))
        && psi.then(&omega)?.equals(&ChainMap::identity(&cv.complex));
    let hu = HomComplex::new(&d.cone.complex, n)?;
    let hv = HomComplex::new(&cv.complex, n)?;
    let tu = table(&hu.complex, Theory::Bar, range, "lift u".to_string());
    let tv = table(&hv.complex, Theory::Bar, range, "lift v".to_string());
    Ok(LiftIndependence { omega, psi, mutually_inverse, tables_agree: tu.agrees_with(&tv) })
}

/// Independence from the DG-projective resolution: comparison maps
/// `alpha: P -> P'`, `beta: P' -> P` and the induced cone maps, with
/// homotopies to the identities certified below the cutoff degree.
#[derive(Clone, Debug)]
pub struct ResolutionIndependence {
    pub alpha: ChainMap,
    pub beta: ChainMap,
    pub beta_alpha_homotopic: bool,
    pub alpha_beta_homotopic: bool,
    pub cone_maps_homotopic: bool,
    pub tables_agree: bool,
}

pub fn resolution_independence(m: &Complex, n: &Complex, range: (i64, i64), opts: ExtOptions) -> Result<ResolutionIndependence> {
    let top = resolution_top(m, n, range.1);
    let first = bar_data(m, top, ExtOptions { dg: DgPolicy::Minimal, pad: false, ..opts })?;
    let second = bar_data(m, top, ExtOptions { dg: DgPolicy::Naive, pad: true, ..opts })?;
    let (p, q) = (&first.p, &second.p);
    let alpha = LiftProblem::new(&p.map, &q.map)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("comparison P -> P'".to_string()))?;
    let beta = LiftProblem::new(&q.map, &p.map)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("comparison P' -> P".to_string()))?;
    let cut = top - 1;
    let homotopic = |f: &ChainMap, c: &Complex| -> Result<bool> {
        Ok(solve_homotopy_through(f, &ChainMap::identity(c), cut)?.is_some_and(|h| h.verify()))
    };
    let beta_alpha_homotopic = homotopic(&alpha.then(&beta)?, &p.resolution)?;
    let alpha_beta_homotopic = homotopic(&beta.then(&alpha)?, &q.resolution)?;
    // u - u' alpha lands in the kernel of the precover, so is null-homotopic
    let ta = solve_homotopy(&first.u, &alpha.then(&second.u)?)?
        .ok_or_else(|| Error::LiftNotFound("u and u' alpha are not homotopic".to_string()))?;
    let tb = solve_homotopy(&second.u, &beta.then(&first.u)?)?
        .ok_or_else(|| Error::LiftNotFound("u' and u beta are not homotopic".to_string()))?;
    let fa = cone_map(&first.cone, &second.cone, &alpha, &ta)?;
    let fb = cone_map(&second.cone, &first.cone, &beta, &tb)?;
    let cone_maps_homotopic =
        homotopic(&fa.then(&fb)?, &first.cone.complex)? && homotopic(&fb.then(&fa)?, &second.cone.complex)?;
    let t1 = table(&HomComplex::new(&first.cone.complex, n)?.complex, Theory::Bar, range, String::new());
    let t2 = table(&HomComplex::new(&second.cone.complex, n)?.complex, Theory::Bar, range, String::new());
    Ok(ResolutionIndependence {
        alpha,
        beta,
        beta_alpha_homotopic,
        alpha_beta_homotopic,
        cone_maps_homotopic,
        tables_agree: t1.agrees_with(&t2),
    })
}

/// A contraction of the cone `M(u)`, when one exists (over the integers
/// the cone is an exact bounded complex of frees).
pub fn bar_contraction(m: &Complex, opts: ExtOptions) -> Result<Option<crate::homcx::Homotopy>> {
    let t = m.trimmed();
    let top = if t.is_empty_support() { 0 } else { t.hi() + 3 };
    let d = bar_data(m, top, opts)?;
    if d.p.truncated_at.is_some() {
        return Ok(None);
    }
    let c = &d.cone.complex;
    solve_homotopy(&ChainMap::identity(c), &ChainMap::zero(c, c))
}

/// Gorenstein cohomology of modules from a special Gorenstein projective
/// resolution of `m` itself.
pub fn module_gorenstein_ext(m: &Module, n: &Module, range: (i64, i64)) -> Result<CohomologyTable> {
    let g = crate::resolution::special_gp_resolution(m);
    let h = HomComplex::new(&g.resolution, &Complex::concentrated(n, 0))?;
    Ok(table(&h.complex, Theory::Gor, range, "module resolution".to_string()))
}

/// Tate cohomology of modules over a finite ring from the complete
/// resolution spliced at degree zero: a free resolution of `m` above and
/// the dual of a free resolution of `m^+` below.
pub fn module_tate(m: &Module, n: &Module, range: (i64, i64)) -> Result<CohomologyTable> {
    let ring = m.ring();
    if !ring.is_finite() {
        return Err(Error::InfiniteRing("module Tate cohomology"));
    }
    let (a, b) = range;
    let up = (b + 2).max(1) as usize;
    let down = (2 - a).max(1) as usize;
    let p = projective_resolution(m, up);
    let (d1, d2, ev) = double_dual_evaluation(m)?;
    let q = projective_resolution(&d1.module, down);
    let dq = dual_complex(&q.resolution)?.complex;
    let q0 = q.resolution.module(0).dual()?;
    let eps_dual = dual_map(&q.map.part(0), &d2, &q0);
    let pr = &p.resolution;
    let nc = Complex::concentrated(n, 0);
    if pr.is_empty_support() {
        return Ok(table(&Complex::zero(ring), Theory::Tate, range, "zero module".to_string()));
    }
    let splice = p.map.part(0).matrix().mul(ev.matrix()).mul(eps_dual.matrix());
    let lo = dq.lo() - 1;
    let mut modules = Vec::new();
    let mut mats = Vec::new();
    for k in lo..=pr.hi() {
        modules.push(if k >= 0 { pr.module(k) } else { dq.module(k + 1) });
        if k > lo {
            mats.push(match k {
                k if k > 0 => pr.d(k).matrix().clone(),
                0 => splice.clone(),
                k => dq.d(k + 1).matrix().clone(),
            });
        }
    }
    let t = Complex::from_matrices(ring, lo, modules, mats)?;
    let h = HomComplex::new(&t, &nc)?;
    Ok(table(&h.complex, Theory::Tate, range, "module complete resolution".to_string()))
}
