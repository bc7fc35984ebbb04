//! Projective resolutions, injective coresolutions, DG-projective
//! resolutions of bounded complexes, complete resolutions, special
//! Gorenstein projective precovers, and horseshoe constructions.

use crate::classes::{class_membership, module_dimension, syzygy, ClassName, ModuleDim};
use crate::complex::{ChainMap, Complex, ShortExact};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::homcx::{dual_complex, HomComplex, LiftProblem};
use crate::matrix::Matrix;
use crate::module::{double_dual_evaluation, dual_map, Module, Morphism};
use crate::snf::Solver;
use crate::structure::{complex_pd, kernel_complex, restrict_to_kernels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Projective,
    DgProjective,
    InjectiveCo,
    GpPrecover,
}

/// Kernel of a precover map, with per-degree projective dimensions.
#[derive(Clone, Debug)]
pub struct KernelProfile {
    pub kernel: Complex,
    pub degrees: Vec<(i64, ExtInt)>,
    pub exact: bool,
    /// Projective dimension of the kernel complex.
    pub pd: ExtInt,
}

impl KernelProfile {
    fn of(map: &ChainMap) -> KernelProfile {
        let (kernel, _) = kernel_complex(map);
        let degrees = kernel
            .degrees()
            .map(|n| (n, module_dimension(&kernel.module(n), ModuleDim::Pd).value))
            .collect();
        let exact = kernel.is_exact();
        let pd = complex_pd(&kernel);
        KernelProfile { kernel, degrees, exact, pd }
    }

    /// Exact with finite projective dimension.
    pub fn is_finite(&self) -> bool {
        self.exact && self.pd != ExtInt::PosInf
    }
}

/// A resolution `map: resolution -> target` (for coresolutions the map
/// runs `target -> resolution`).
#[derive(Clone, Debug)]
pub struct ResolutionBundle {
    pub target: Complex,
    pub resolution: Complex,
    pub map: ChainMap,
    pub flavor: Flavor,
    pub kernel_profile: Option<KernelProfile>,
    /// `Some(t)` when the resolution was cut off at degree `t`; the map is
    /// then a quasi-isomorphism in degrees below `t` only.
    pub truncated_at: Option<i64>,
}

impl ResolutionBundle {
    /// Degrees in which the map is claimed to induce isomorphisms.
    pub fn valid_degrees(&self) -> Option<(i64, i64)> {
        let (a, b) = Complex::joint_range(&self.resolution, &self.target)?;
        match (self.truncated_at, self.flavor) {
            (Some(t), Flavor::InjectiveCo) => Some((t + 1, b)),
            (Some(t), _) => Some((a, t - 1)),
            (None, _) => Some((a, b)),
        }
    }

    /// Re-verifies the quasi-isomorphism claim in the valid degrees.
    pub fn verify(&self) -> bool {
        let Some((a, b)) = self.valid_degrees() else { return true };
        (a..=b).all(|n| self.map.induced(n).is_isomorphism())
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_degreewise(Morphism::is_surjective)
    }
}

/// Free resolution of a module from iterated minimal covers, placed in
/// degrees `0..=length`, with the augmentation to the module at degree 0.
pub fn projective_resolution(m: &Module, length: usize) -> ResolutionBundle {
    let ring = m.ring();
    let target = Complex::concentrated(m, 0);
    let mut frees = Vec::new();
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut cur = m.clone();
    let mut aug: Option<Morphism> = None;
    // incl: current syzygy -> previous free module
    let mut incl: Option<Matrix> = None;
    let mut terminated = false;
    for i in 0..=length {
        if cur.is_zero() {
            terminated = true;
            break;
        }
        let (_, cov) = syzygy(&cur);
        frees.push(Module::free(ring, cov.source().num_gens()));
        match &incl {
            None => aug = Some(cov.clone()),
            Some(inc) => diffs.push(cov.matrix().mul(inc)),
        }
        if i == length {
            break;
        }
        // kernel of the cover, with its inclusion into the new free module
        let nrm = cur.normalized().0;
        let k = Morphism::new(cov.source().clone(), nrm.clone(), Matrix::identity(ring, nrm.num_gens()))
            .expect("identity cover")
            .kernel();
        incl = Some(k.map.matrix().clone());
        cur = k.module;
    }
    if frees.is_empty() {
        let z = Complex::zero(ring);
        return ResolutionBundle {
            target: target.clone(),
            resolution: z.clone(),
            map: ChainMap::zero(&z, &target),
            flavor: Flavor::Projective,
            kernel_profile: None,
            truncated_at: None,
        };
    }
    let diffs: Vec<Morphism> = diffs
        .into_iter()
        .enumerate()
        .map(|(i, d)| Morphism::unchecked(frees[i + 1].clone(), frees[i].clone(), d))
        .collect();
    let top = frees.len() as i64 - 1;
    let res = Complex::new_unchecked(ring, 0, frees.clone(), diffs);
    let aug = aug.expect("nonzero module has a cover");
    let e0 = Morphism::unchecked(frees[0].clone(), m.clone(), aug.matrix().clone());
    let map = ChainMap::new_unchecked(res.clone(), target.clone(), 0, vec![e0]);
    let truncated_at = if terminated || cur.is_zero() { None } else { Some(top) };
    ResolutionBundle { target, resolution: res, map, flavor: Flavor::Projective, kernel_profile: None, truncated_at }
}

/// Injective coresolution `M -> I` over a finite ring, in degrees
/// `0, -1, ..., -length`, built as the dual of a free resolution of the
/// dual module.
pub fn injective_coresolution(m: &Module, length: usize) -> Result<ResolutionBundle> {
    let ring = m.ring();
    if !ring.is_finite() {
        return Err(Error::InfiniteRing("injective coresolution"));
    }
    let target = Complex::concentrated(m, 0);
    if m.is_zero() {
        let z = Complex::zero(ring);
        return Ok(ResolutionBundle {
            target: target.clone(),
            resolution: z.clone(),
            map: ChainMap::zero(&target, &z),
            flavor: Flavor::InjectiveCo,
            kernel_profile: None,
            truncated_at: None,
        });
    }
    let (d1, d2, ev) = double_dual_evaluation(m)?;
    let q = projective_resolution(&d1.module, length);
    let dq = dual_complex(&q.resolution)?;
    let q0dual = q.resolution.module(0).dual()?;
    let eps = q.map.part(0);
    let eps_dual = dual_map(&eps, &d2, &q0dual);
    let e = ev.then(&eps_dual)?;
    let coaug = Morphism::unchecked(m.clone(), dq.complex.module(0), e.matrix().clone());
    let map = ChainMap::new(target.clone(), dq.complex.clone(), 0, vec![coaug])?;
    let truncated_at = q.truncated_at.map(|t| -t);
    Ok(ResolutionBundle {
        target,
        resolution: dq.complex,
        map,
        flavor: Flavor::InjectiveCo,
        kernel_profile: None,
        truncated_at,
    })
}

/// How cycles are covered in the DG-projective construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DgPolicy {
    /// Cover cycles modulo those already covered by disks.
    Minimal,
    /// Cover all cycles.
    Naive,
}

/// Surjective DG-projective resolution of a bounded complex, computed
/// through degree `top`.
pub fn dg_projective_resolution(n: &Complex, top: i64) -> ResolutionBundle {
    dg_projective_resolution_with(n, top, DgPolicy::Minimal, false)
}

/// As [`dg_projective_resolution`], with a choice of covering policy and
/// optional padding by a contractible free complex of disks.
///
/// Degree `m` of the resolution is free on generators `(a, b)` of the
/// cycles of `N_m + P_{m-1}` under `(a, b) -> (d a - phi b, d b)`, mapping
/// to `a` in `N_m` and `b` in `P_{m-1}`, plus disk bottoms mapping to
/// boundaries of `N`, which make the map degreewise surjective.
pub fn dg_projective_resolution_with(n: &Complex, top: i64, policy: DgPolicy, pad: bool) -> ResolutionBundle {
    let ring = n.ring();
    let t = n.trimmed();
    if t.is_empty_support() || top < t.lo() {
        let z = Complex::zero(ring);
        return ResolutionBundle {
            target: n.clone(),
            resolution: z.clone(),
            map: ChainMap::zero(&z, n),
            flavor: Flavor::DgProjective,
            kernel_profile: None,
            truncated_at: if t.is_empty_support() { None } else { Some(top) },
        };
    }
    let a = t.lo();
    let mut ranks: Vec<usize> = Vec::new();
    let mut dmats: Vec<Matrix> = Vec::new(); // d_m for m > a
    let mut phis: Vec<Matrix> = Vec::new();
    let mut pad_bottom: Vec<Option<usize>> = Vec::new();
    let mut terminated = false;
    for m in a..=top {
        let nm = n.module(m);
        let idx = (m - a) as usize;
        let prev = if idx > 0 { ranks[idx - 1] } else { 0 };
        let prev2 = if idx > 1 { ranks[idx - 2] } else { 0 };
        let nm1 = n.module(m - 1);
        let amb = Module::direct_sum_all(ring, &[nm.clone(), Module::free(ring, prev)]);
        let tgt = Module::direct_sum_all(ring, &[nm1.clone(), Module::free(ring, prev2)]);
        let mut psi = Matrix::zeros(ring, nm.num_gens() + prev, nm1.num_gens() + prev2);
        psi.paste(0, 0, n.d(m).matrix());
        if idx > 0 {
            psi.paste(nm.num_gens(), 0, &phis[idx - 1].neg());
            if idx > 1 {
                psi.paste(nm.num_gens(), nm1.num_gens(), &dmats[idx - 1]);
            }
        }
        let z = Morphism::unchecked(amb.clone(), tgt, psi).kernel();
        let zgens = z.map.matrix().clone();
        let gens = match policy {
            DgPolicy::Naive => zgens,
            DgPolicy::Minimal => {
                let up = n.d(m + 1).matrix().clone();
                let covered = Matrix::hstack(ring, up.rows(), &[&up, &Matrix::zeros(ring, up.rows(), prev)]);
                let rels = Matrix::vstack(ring, amb.num_gens(), &[amb.presentation(), &covered]);
                let raw = Module::generated_by(&zgens, &rels);
                let (_, _, from) = raw.normalized();
                from.matrix().mul(&zgens)
            }
        };
        let mut phi_rows: Vec<Vec<i64>> = Vec::new();
        let mut d_rows: Vec<Vec<i64>> = Vec::new();
        for i in 0..gens.rows() {
            let r = gens.row(i);
            phi_rows.push(r[..nm.num_gens()].to_vec());
            d_rows.push(r[nm.num_gens()..].to_vec());
        }
        let up = n.d(m + 1);
        for i in 0..up.matrix().rows() {
            phi_rows.push(up.matrix().row(i).to_vec());
            d_rows.push(vec![0; prev]);
        }
        let natural = phi_rows.len();
        let mut bottom = None;
        if pad {
            if idx > 0 {
                if let Some(b) = pad_bottom[idx - 1] {
                    let mut row = vec![0; prev];
                    row[b] = 1;
                    phi_rows.push(vec![0; nm.num_gens()]);
                    d_rows.push(row);
                }
            }
            if m < top {
                bottom = Some(phi_rows.len());
                phi_rows.push(vec![0; nm.num_gens()]);
                d_rows.push(vec![0; prev]);
            }
        }
        pad_bottom.push(bottom);
        ranks.push(phi_rows.len());
        phis.push(Matrix::from_rows(ring, nm.num_gens(), &phi_rows));
        dmats.push(Matrix::from_rows(ring, prev, &d_rows));
        if natural == 0 && m >= t.hi() && !pad {
            terminated = true;
            break;
        }
        if natural == 0 && m >= t.hi() && pad && !terminated {
            terminated = true;
        }
    }
    let frees: Vec<Module> = ranks.iter().map(|&k| Module::free(ring, k)).collect();
    let diffs: Vec<Morphism> = (1..frees.len())
        .map(|i| Morphism::unchecked(frees[i].clone(), frees[i - 1].clone(), dmats[i].clone()))
        .collect();
    let res = Complex::new_unchecked(ring, a, frees.clone(), diffs);
    let parts: Vec<Morphism> = frees
        .iter()
        .enumerate()
        .map(|(i, f)| Morphism::unchecked(f.clone(), n.module(a + i as i64), phis[i].clone()))
        .collect();
    let map = ChainMap::new_unchecked(res.clone(), n.clone(), a, parts);
    ResolutionBundle {
        target: n.clone(),
        resolution: res,
        map,
        flavor: Flavor::DgProjective,
        kernel_profile: None,
        truncated_at: if terminated { None } else { Some(top) },
    }
}

/// A complete resolution `u: T -> P` materialized on a window.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    pub t: Complex,
    pub p: ResolutionBundle,
    pub u: ChainMap,
    /// `u_i` is the identity for `i >= threshold`.
    pub threshold: i64,
    /// Period of the syzygy orbit of the cokernel at the threshold.
    pub period: Option<usize>,
    pub window: (i64, i64),
    /// `Hom(T, R)` is exact in the interior of the window.
    pub hom_proj_exact: bool,
}

/// Solves `a * x = b` for a matrix `x` (columnwise), `a` and `b` given.
fn solve_left_factor(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ring = a.ring();
    let solver = Solver::new(&a.transpose());
    let mut x = Matrix::zeros(ring, a.cols(), b.cols());
    for j in 0..b.cols() {
        let col: Vec<i64> = (0..b.rows()).map(|i| b.get(i, j)).collect();
        let sol = solver.solve(&col)?;
        for (i, v) in sol.into_iter().enumerate() {
            x.set(i, j, v);
        }
    }
    Some(x)
}

/// Least `g >= sup H` with `C_g(P)` Gorenstein projective.
fn gp_threshold(p: &Complex, s: i64) -> i64 {
    let mut g = s;
    while !class_membership(&p.boundary_cokernel(g).module, ClassName::GorensteinProjective).member {
        g += 1;
    }
    g
}

/// Complete resolution of a bounded complex on `window`.
///
/// Over a finite ring the part below the threshold `g` is the dual of a
/// free resolution of `C_g(P)^+`, spliced on through the evaluation
/// isomorphism `C_g(P) -> C_g(P)^{++}`. Over the integers `C_g(P)` is free
/// and the complete resolution ends with it.
pub fn complete_resolution(n: &Complex, window: (i64, i64)) -> Result<CompleteResolution> {
    let ring = n.ring();
    let (wlo, whi) = window;
    let s = n.sup_h();
    let Some(s) = s.finite() else {
        // exact: P itself is totally acyclic on the window
        let p = dg_projective_resolution(n, whi + 1);
        let t = p.resolution.clone();
        let u = ChainMap::identity(&t);
        let threshold = if t.is_empty_support() { wlo } else { t.lo() };
        let hom_proj_exact = hom_proj_exact(&t, window)?;
        return Ok(CompleteResolution { t, p, u, threshold, period: None, window, hom_proj_exact });
    };
    let probe = dg_projective_resolution(n, s + 2);
    let g = gp_threshold(&probe.resolution, s);
    if g > whi {
        return Err(Error::NoCompleteResolution(format!(
            "agreement threshold {g} lies above the window [{wlo}, {whi}]"
        )));
    }
    let top = whi.max(g) + 1;
    let p = dg_projective_resolution(n, top);
    let pr = &p.resolution;
    let cg = pr.boundary_cokernel(g);
    let mut lower_modules: Vec<Module> = Vec::new(); // degrees g-1, g-2, ...
    let mut lower_diffs: Vec<Matrix> = Vec::new(); // d^T_{g}, d^T_{g-1}, ...
    let mut period = None;
    if ring.is_finite() {
        // deep enough that the comparison map reaches below the support of P
        let depth = (g - 1 - wlo.min(pr.lo() - 1)).max(0) as usize;
        let (d1, d2, ev) = double_dual_evaluation(&cg.module)?;
        let q = projective_resolution(&d1.module, depth);
        let dq = dual_complex(&q.resolution)?;
        let q0dual = q.resolution.module(0).dual()?;
        let eps_dual = dual_map(&q.map.part(0), &d2, &q0dual);
        let top_map = cg.map.matrix().mul(ev.matrix()).mul(eps_dual.matrix());
        lower_diffs.push(top_map);
        for j in 0..=depth as i64 {
            if j > q.resolution.hi() {
                break;
            }
            lower_modules.push(dq.complex.module(-j));
            if j > 0 {
                lower_diffs.push(dq.complex.d(-j + 1).matrix().clone());
            }
        }
        let orbit = module_dimension(&cg.module, ModuleDim::Pd);
        if let Some(start) = orbit.cycle_start {
            period = Some(orbit.syzygies.len() - 1 - start);
        }
    } else if !cg.module.is_zero() {
        if !cg.module.is_free() {
            return Err(Error::NoCompleteResolution(format!("C_{g}(P) is not projective")));
        }
        lower_modules.push(cg.module.clone());
        lower_diffs.push(cg.map.matrix().clone());
    }
    // assemble T on [g - lower.len(), top]
    let t_lo = g - lower_modules.len() as i64;
    let mut modules: Vec<Module> = lower_modules.iter().rev().cloned().collect();
    for i in g..=top {
        modules.push(pr.module(i));
    }
    let mut diff_mats: Vec<Matrix> = lower_diffs[1.min(lower_diffs.len())..].iter().rev().cloned().collect();
    if let Some(first) = lower_diffs.first() {
        if !lower_modules.is_empty() {
            diff_mats.push(first.clone());
        }
    }
    for i in g + 1..=top {
        diff_mats.push(pr.d(i).matrix().clone());
    }
    let t = Complex::from_matrices(ring, t_lo, modules, diff_mats)?;
    // comparison map: identity from g up, solved downward below g
    let lo = t.lo().min(pr.lo().max(t.lo()));
    let mut mats: std::collections::BTreeMap<i64, Matrix> = std::collections::BTreeMap::new();
    for i in g..=top {
        mats.insert(i, Matrix::identity(ring, pr.module(i).num_gens()));
    }
    let mut i = g - 1;
    while i >= t.lo() {
        let rhs = mats[&(i + 1)].mul(pr.d(i + 1).matrix());
        let x = solve_left_factor(t.d(i + 1).matrix(), &rhs)
            .ok_or_else(|| Error::LiftNotFound(format!("comparison map at degree {i}")))?;
        mats.insert(i, x);
        i -= 1;
    }
    let parts: Vec<Morphism> = (lo..=top)
        .map(|k| {
            let m = mats.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(ring, t.module(k).num_gens(), pr.module(k).num_gens()));
            Morphism::unchecked(t.module(k), pr.module(k), m)
        })
        .collect();
    let u = ChainMap::new(t.clone(), pr.clone(), lo, parts)?;
    let hom_proj_exact = hom_proj_exact(&t, window)?;
    Ok(CompleteResolution { t, p, u, threshold: g, period, window, hom_proj_exact })
}

fn hom_proj_exact(t: &Complex, (wlo, whi): (i64, i64)) -> Result<bool> {
    let r = Complex::concentrated(&Module::free(t.ring(), 1), 0);
    let h = HomComplex::new(t, &r)?;
    Ok((wlo + 1..whi).all(|i| h.complex.homology(-i).module.is_zero()))
}

impl CompleteResolution {
    /// `T` is exact in the interior of the window.
    pub fn is_exact_on_window(&self) -> bool {
        let (wlo, whi) = self.window;
        (wlo + 1..whi).all(|i| self.t.homology(i).module.is_zero())
    }

    /// `u_i` is bijective for every window degree at or above the threshold.
    pub fn agrees_above_threshold(&self) -> bool {
        (self.threshold..=self.window.1).all(|i| self.u.part(i).is_isomorphism())
    }
}

/// Which special Gorenstein projective precover to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrecoverPolicy {
    /// The inductive construction on the length of the complex.
    Inductive,
    /// The identity, valid when every component is Gorenstein projective.
    Identity,
}

fn identity_bundle(m: &Complex) -> ResolutionBundle {
    let map = ChainMap::identity(m);
    let kernel_profile = Some(KernelProfile::of(&map));
    ResolutionBundle {
        target: m.clone(),
        resolution: m.clone(),
        map,
        flavor: Flavor::GpPrecover,
        kernel_profile,
        truncated_at: None,
    }
}

/// Special Gorenstein projective resolution of a module, in degrees `>= 0`:
/// the module itself over a quasi-Frobenius ring, its free resolution over
/// the integers.
pub fn special_gp_resolution(m: &Module) -> ResolutionBundle {
    if m.ring().is_finite() {
        identity_bundle(&Complex::concentrated(m, 0))
    } else {
        let mut b = projective_resolution(m, 2);
        b.flavor = Flavor::GpPrecover;
        b.kernel_profile = Some(KernelProfile::of(&b.map));
        b
    }
}

/// Special Gorenstein projective precover of a bounded complex.
///
/// The inductive path adds one degree at a time: with `Gb -> M_{<k}` in
/// hand and a special resolution `G' -> M_k` of the next module, a lift
/// `u: G'[k-1] -> Gb` of `M_k -> M_{k-1}` is solved for and the new
/// precover is the cone `G_m = Gb_m + G'_{m-k}` with differential
/// `(x, y) -> (d x + u y, -d y)`.
pub fn special_gp_precover(m: &Complex, policy: PrecoverPolicy) -> Result<ResolutionBundle> {
    let ring = m.ring();
    match policy {
        PrecoverPolicy::Identity => {
            for n in m.degrees() {
                let c = class_membership(&m.module(n), ClassName::GorensteinProjective);
                if !c.member {
                    return Err(Error::UnsupportedRing(format!(
                        "identity precover needs Gorenstein projective components; degree {n}: {}",
                        c.certificate
                    )));
                }
            }
            Ok(identity_bundle(m))
        }
        PrecoverPolicy::Inductive => {
            let t = m.trimmed();
            if t.is_empty_support() {
                let z = Complex::zero(ring);
                let map = ChainMap::zero(&z, m);
                return Ok(ResolutionBundle {
                    target: m.clone(),
                    resolution: z,
                    map,
                    flavor: Flavor::GpPrecover,
                    kernel_profile: None,
                    truncated_at: None,
                });
            }
            let lo = t.lo();
            let base = special_gp_resolution(&t.module(lo));
            let mut g = base.resolution.shift(lo);
            let mut phi = base.map.shift(lo).with_endpoints(g.clone(), t.window(lo, lo));
            for k in lo + 1..=t.hi() {
                (g, phi) = inductive_step(&t, k, &g, &phi)?;
            }
            let phi = phi.with_endpoints(g.clone(), m.clone());
            let kernel_profile = Some(KernelProfile::of(&phi));
            Ok(ResolutionBundle {
                target: m.clone(),
                resolution: g,
                map: phi,
                flavor: Flavor::GpPrecover,
                kernel_profile,
                truncated_at: None,
            })
        }
    }
}

fn inductive_step(t: &Complex, k: i64, gbar: &Complex, phibar: &ChainMap) -> Result<(Complex, ChainMap)> {
    let ring = t.ring();
    let lo = t.lo();
    let low = phibar.target().clone();
    let top = t.module(k);
    let gp = special_gp_resolution(&top);
    let x = gp.resolution.shift(k - 1);
    let eps = gp.map.part(0);
    // f: X -> M_{<k}, nonzero only in degree k-1
    let f_mat = eps.matrix().mul(t.d(k).matrix());
    let f = ChainMap::new(
        x.clone(),
        low.clone(),
        k - 1,
        vec![Morphism::unchecked(x.module(k - 1), low.module(k - 1), f_mat)],
    )?;
    let u = LiftProblem::new(&f, phibar)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound(format!("no lift of the attaching map at degree {k}")))?;
    // cone G_m = Gb_m + X_{m-1}
    let a = gbar.lo().min(x.lo() + 1);
    let b = gbar.hi().max(x.hi() + 1);
    let comp = |m: i64| Module::direct_sum_all(ring, &[gbar.module(m), x.module(m - 1)]);
    let modules: Vec<Module> = (a..=b).map(comp).collect();
    let diffs: Vec<Morphism> = (a + 1..=b)
        .map(|m| {
            let (g1, x1, g0, x0) = (gbar.module(m), x.module(m - 1), gbar.module(m - 1), x.module(m - 2));
            let mut mat = Matrix::zeros(ring, g1.num_gens() + x1.num_gens(), g0.num_gens() + x0.num_gens());
            mat.paste(0, 0, gbar.d(m).matrix());
            mat.paste(g1.num_gens(), 0, u.part(m - 1).matrix());
            mat.paste(g1.num_gens(), g0.num_gens(), &x.d(m - 1).matrix().neg());
            Morphism::unchecked(modules[(m - a) as usize].clone(), modules[(m - a - 1) as usize].clone(), mat)
        })
        .collect();
    let g = Complex::new(ring, a, modules, diffs)?;
    let target = t.window(lo, k);
    let rng = Complex::joint_range(&g, &target).expect("nonempty");
    let parts: Vec<Morphism> = (rng.0..=rng.1)
        .map(|m| {
            let (gm, xm) = (gbar.module(m), x.module(m - 1));
            let mut mat = Matrix::zeros(ring, gm.num_gens() + xm.num_gens(), target.module(m).num_gens());
            if m < k {
                mat.paste(0, 0, phibar.part(m).matrix());
            } else if m == k {
                mat.paste(gm.num_gens(), 0, eps.matrix());
            }
            Morphism::unchecked(g.module(m), target.module(m), mat)
        })
        .collect();
    let phi = ChainMap::new(g.clone(), target, rng.0, parts)?;
    Ok((g, phi))
}

/// Lifts `f: X -> M` through a precover or DG-projective resolution,
/// after checking the class hypothesis on `X`.
pub fn lift_through_precover(f: &ChainMap, bundle: &ResolutionBundle) -> Result<ChainMap> {
    let class = match bundle.flavor {
        Flavor::GpPrecover => ClassName::GorensteinProjective,
        _ => ClassName::Projective,
    };
    for n in f.source().degrees() {
        let c = class_membership(&f.source().module(n), class);
        if !c.member {
            return Err(Error::LiftNotFound(format!("source component at degree {n}: {}", c.certificate)));
        }
    }
    let f = if f.target() == &bundle.target {
        f.clone()
    } else {
        return Err(Error::EndpointMismatch("map does not land in the resolved complex".to_string()));
    };
    LiftProblem::new(&f, &bundle.map)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("no chain map lifts through the precover".to_string()))
}

/// How the end resolutions of a horseshoe are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorseshoeFlavor {
    Gp(PrecoverPolicy),
    Dg { top: i64 },
}

#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub left: ResolutionBundle,
    pub middle: ResolutionBundle,
    pub right: ResolutionBundle,
    /// `G' -> G' + G''` and `G' + G'' -> G''`.
    pub incl: ChainMap,
    pub proj: ChainMap,
    /// The lift `u: G'' -> M` of the right precover.
    pub lift: ChainMap,
    /// `0 -> ker' -> ker -> ker'' -> 0` verified exact.
    pub kernels_exact: bool,
}

/// Horseshoe construction for `0 -> M' -> M -> M'' -> 0`: middle precover
/// `G' + G'' -> M`, `(x, y) -> l(phi'(x)) + u(y)`, where `u` lifts `phi''`
/// through `M -> M''`.
pub fn horseshoe(ses: &ShortExact, flavor: HorseshoeFlavor) -> Result<Horseshoe> {
    let (l, h) = (&ses.i, &ses.p);
    let (m1, m, m2) = (l.source(), l.target(), h.target());
    let ring = m.ring();
    let build = |c: &Complex| -> Result<ResolutionBundle> {
        match flavor {
            HorseshoeFlavor::Gp(p) => special_gp_precover(c, p),
            HorseshoeFlavor::Dg { top } => Ok(dg_projective_resolution(c, top)),
        }
    };
    let left = build(m1)?;
    let right = build(m2)?;
    let lift = LiftProblem::new(&right.map, h)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("the sequence is not Hom-exact for the right precover".to_string()))?;
    let (g1, g2) = (&left.resolution, &right.resolution);
    let g = g1.direct_sum(g2)?;
    let Some((a, b)) = Complex::joint_range(&g, m) else {
        return Err(Error::LiftNotFound("empty horseshoe".to_string()));
    };
    let parts: Vec<Morphism> = (a..=b)
        .map(|n| {
            let top = left.map.part(n).matrix().mul(l.part(n).matrix());
            let bottom = lift.part(n).matrix().clone();
            let mat = Matrix::vstack(ring, m.module(n).num_gens(), &[&top, &bottom]);
            Morphism::unchecked(g.module(n), m.module(n), mat)
        })
        .collect();
    let phi = ChainMap::new(g.clone(), m.clone(), a, parts)?;
    let Some((ga, gb)) = Complex::joint_range(g1, g2) else {
        return Err(Error::LiftNotFound("empty horseshoe".to_string()));
    };
    let incl_parts: Vec<Morphism> = (ga..=gb)
        .map(|n| {
            let (k1, k2) = (g1.module(n).num_gens(), g2.module(n).num_gens());
            let mut mat = Matrix::zeros(ring, k1, k1 + k2);
            mat.paste(0, 0, &Matrix::identity(ring, k1));
            Morphism::unchecked(g1.module(n), g.module(n), mat)
        })
        .collect();
    let proj_parts: Vec<Morphism> = (ga..=gb)
        .map(|n| {
            let (k1, k2) = (g1.module(n).num_gens(), g2.module(n).num_gens());
            let mut mat = Matrix::zeros(ring, k1 + k2, k2);
            mat.paste(k1, 0, &Matrix::identity(ring, k2));
            Morphism::unchecked(g.module(n), g2.module(n), mat)
        })
        .collect();
    let incl = ChainMap::new(g1.clone(), g.clone(), ga, incl_parts)?;
    let proj = ChainMap::new(g.clone(), g2.clone(), ga, proj_parts)?;
    let kernel_profile = match flavor {
        HorseshoeFlavor::Gp(_) => Some(KernelProfile::of(&phi)),
        HorseshoeFlavor::Dg { .. } => None,
    };
    let middle = ResolutionBundle {
        target: m.clone(),
        resolution: g,
        map: phi.clone(),
        flavor: left.flavor,
        kernel_profile,
        truncated_at: left.truncated_at.max(right.truncated_at),
    };
    let (k1, i1) = kernel_complex(&left.map);
    let (k, i) = kernel_complex(&phi);
    let (k2, i2) = kernel_complex(&right.map);
    let kernels_exact = match (restrict_to_kernels(&incl, &i1, &i), restrict_to_kernels(&proj, &i, &i2)) {
        (Some(a), Some(b)) => {
            let _ = (&k1, &k, &k2);
            ShortExact::new(a, b).is_ok()
        }
        _ => false,
    };
    Ok(Horseshoe { left, middle, right, incl, proj, lift, kernels_exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z4() -> Ring {
        Ring::zmod_prime_power(2, 2).unwrap()
    }

    #[test]
    fn projective_resolution_examples() {
        let k = Module::cyclic(z4(), 2);
        let b = projective_resolution(&k, 3);
        assert_eq!(b.resolution.hi(), 3);
        for n in 1..=3 {
            assert_eq!(b.resolution.d(n).matrix().entries(), &[2]);
        }
        assert!(b.verify());
        let f = projective_resolution(&Module::free(z4(), 2), 3);
        assert_eq!(f.resolution.hi(), 0);
        assert_eq!(f.truncated_at, None);
        let z = projective_resolution(&Module::cyclic(Ring::Integers, 2), 4);
        assert_eq!(z.resolution.hi(), 1);
        assert_eq!(z.truncated_at, None);
        assert!(z.verify());
    }

    #[test]
    fn injective_coresolution_examples() {
        let k = Module::cyclic(z4(), 2);
        let b = injective_coresolution(&k, 3).unwrap();
        assert_eq!(b.resolution.lo(), -3);
        assert!(b.verify());
        assert!(b.map.part(0).is_injective());
        let f = injective_coresolution(&Module::free(z4(), 1), 3).unwrap();
        assert_eq!(f.resolution.lo(), 0);
        assert!(injective_coresolution(&Module::zero(z4()), 2).unwrap().resolution.is_zero());
    }

    #[test]
    fn dg_resolution_of_residue_field() {
        let k = Complex::concentrated(&Module::cyclic(z4(), 2), 0);
        for policy in [DgPolicy::Minimal, DgPolicy::Naive] {
            for pad in [false, true] {
                let b = dg_projective_resolution_with(&k, 4, policy, pad);
                assert!(b.verify(), "{policy:?} {pad}");
                assert!(b.is_surjective());
            }
        }
        let m = dg_projective_resolution(&k, 4);
        assert!((0..=4).all(|n| m.resolution.module(n).num_gens() == 1));
    }

    #[test]
    fn dg_resolution_of_two_term_complex() {
        let r = z4();
        let k = Module::cyclic(r, 2);
        let c = Complex::from_matrices(r, 0, vec![k.clone(), k], vec![Matrix::zeros(r, 1, 1)]).unwrap();
        let b = dg_projective_resolution(&c, 5);
        assert!(b.verify());
        assert!(b.is_surjective());
        let z = Ring::Integers;
        let d = Complex::from_matrices(z, 0, vec![Module::cyclic(z, 4), Module::free(z, 1)], vec![Matrix::from_entries(z, 1, 1, &[1]).unwrap()])
            .unwrap();
        let bz = dg_projective_resolution(&d, 6);
        assert_eq!(bz.truncated_at, None);
        assert!(bz.verify());
    }

    #[test]
    fn complete_resolution_examples() {
        let k = Complex::concentrated(&Module::cyclic(z4(), 2), 0);
        let c = complete_resolution(&k, (-4, 4)).unwrap();
        assert_eq!(c.threshold, 0);
        assert!(c.is_exact_on_window());
        assert!(c.agrees_above_threshold());
        assert!(c.hom_proj_exact);
        assert_eq!(c.period, Some(1));
        let zf = Complex::concentrated(&Module::free(Ring::Integers, 1), 0);
        let c = complete_resolution(&zf, (-3, 3)).unwrap();
        assert_eq!(c.threshold, 0);
        assert!(c.t.is_exact());
        let zk = Complex::concentrated(&Module::cyclic(Ring::Integers, 2), 0);
        let c = complete_resolution(&zk, (-3, 3)).unwrap();
        assert_eq!(c.threshold, 1);
        assert!(c.t.is_exact());
        assert!(c.agrees_above_threshold());
    }

    #[test]
    fn inductive_precover_examples() {
        let r = z4();
        let k = Module::cyclic(r, 2);
        let kc = Complex::concentrated(&k, 0);
        let b = special_gp_precover(&kc, PrecoverPolicy::Inductive).unwrap();
        assert!(b.kernel_profile.as_ref().unwrap().is_finite());
        let two = Complex::from_matrices(r, 0, vec![k.clone(), k], vec![Matrix::zeros(r, 1, 1)]).unwrap();
        let b = special_gp_precover(&two, PrecoverPolicy::Inductive).unwrap();
        assert!(b.verify());
        assert!(b.kernel_profile.as_ref().unwrap().is_finite());
        let z = Ring::Integers;
        let f = Module::free(z, 1);
        let d = Complex::from_matrices(z, 0, vec![f.clone(), f], vec![Matrix::from_entries(z, 1, 1, &[2]).unwrap()]).unwrap();
        let b = special_gp_precover(&d, PrecoverPolicy::Inductive).unwrap();
        assert!(b.verify());
        assert!(crate::structure::structural_class(&b.resolution, crate::structure::ComplexClass::DgProjective).member);
        let zk = Complex::concentrated(&Module::cyclic(z, 2), 0);
        assert_eq!(special_gp_precover(&zk, PrecoverPolicy::Identity).unwrap_err().name(), "UnsupportedRing");
        let b = special_gp_precover(&zk, PrecoverPolicy::Inductive).unwrap();
        assert!(b.verify());
        assert!(b.kernel_profile.unwrap().is_finite());
    }
}
