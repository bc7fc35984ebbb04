//! Named verification suites over seeded fixtures.

use crate::cohomology::{
    am_sequence, compare_bar_tate, ext_groups, les_first_variable, lift_independence, module_gorenstein_ext,
    module_tate, resolution_independence, ExtOptions, Theory,
};
use crate::classes::{module_dimension, ModuleDim};
use crate::complex::Complex;
use crate::dimension::{dimension_of_complex, DimKind};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::fixtures::Fixtures;
use crate::homcx::{dual_complex, hom_complex, tensor_complex};
use crate::matrix::Matrix;
use crate::module::Module;
use crate::resolution::{horseshoe, HorseshoeFlavor, PrecoverPolicy};
use crate::ring::Ring;
use crate::structure::{structural_class, ComplexClass};

pub const SUITES: [&str; 11] = [
    "theorem1",
    "prop-fd",
    "prop-dual",
    "remark2",
    "theorem2",
    "remark1",
    "am",
    "conewd",
    "prop9",
    "horseshoe",
    "collapse",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub ring: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// Default number of random instances for a suite.
pub fn default_count(suite: &str) -> usize {
    match suite {
        "theorem1" | "prop-dual" => 50,
        "conewd" | "horseshoe" => 10,
        _ => 25,
    }
}

struct Runner {
    cases: Vec<CaseResult>,
}

impl Runner {
    fn push(&mut self, label: impl Into<String>, outcome: Result<(bool, String)>) {
        let (pass, detail) = match outcome {
            Ok(x) => x,
            Err(e) => (false, e.to_string()),
        };
        self.cases.push(CaseResult { label: label.into(), pass, detail });
    }
}

fn residue_field(ring: Ring) -> Module {
    let d = match ring {
        Ring::Integers => 2,
        r => r.uniformizer_power(1),
    };
    Module::cyclic(ring, d)
}

fn d_fixture() -> Complex {
    let z = Ring::Integers;
    let f = Module::free(z, 1);
    Complex::from_matrices(z, 0, vec![f.clone(), f], vec![Matrix::from_rows(z, 1, &[vec![2]])]).expect("D is a complex")
}

fn n_gor(ring: Ring) -> u32 {
    if ring.is_finite() {
        0
    } else {
        1
    }
}

/// Runs a suite on `count` instances (the suite default when `None`).
pub fn run_suite(name: &str, ring: Ring, seed: u64, count: Option<usize>) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(format!("{name}; known suites: {}", SUITES.join(", "))));
    }
    let needs_finite = matches!(name, "prop-dual" | "remark1" | "collapse" | "prop9");
    if needs_finite && !ring.is_finite() {
        return Err(Error::UnsupportedRing(format!("suite {name} needs a finite ring")));
    }
    let count = count.unwrap_or_else(|| default_count(name));
    let mut fx = Fixtures::new(ring, seed);
    let mut r = Runner { cases: Vec::new() };
    let opts = ExtOptions::default();
    match name {
        "theorem1" => {
            for i in 0..count {
                let c = fx.complex();
                r.push(format!("complex {i}"), dimension_of_complex(&c, DimKind::Gfd).map(|rep| {
                    (rep.is_consistent(), format!("gfd {} from both resolutions: {}", rep.value, rep.cross_check))
                }));
            }
        }
        "prop-fd" => {
            for i in 0..count {
                let c = fx.complex();
                r.push(format!("complex {i}"), (|| {
                    let fd = dimension_of_complex(&c, DimKind::Fd)?.value;
                    let gfd = dimension_of_complex(&c, DimKind::Gfd)?.value;
                    let ok = gfd <= fd && (!fd.is_finite() || gfd == fd);
                    Ok((ok, format!("gfd {gfd}, fd {fd}")))
                })());
            }
            if ring.is_finite() {
                let k = Complex::concentrated(&residue_field(ring), 0);
                r.push("residue field", (|| {
                    let fd = dimension_of_complex(&k, DimKind::Fd)?.value;
                    let gfd = dimension_of_complex(&k, DimKind::Gfd)?.value;
                    // over a field k is free; otherwise it witnesses gfd < fd
                    let fd_k = if ring.chain_length() == Some(1) { ExtInt::Finite(0) } else { ExtInt::PosInf };
                    Ok((gfd == ExtInt::Finite(0) && fd == fd_k, format!("gfd {gfd}, fd {fd}")))
                })());
            }
        }
        "prop-dual" => {
            for i in 0..count {
                let c = fx.complex();
                r.push(format!("complex {i}"), (|| {
                    let gfd = dimension_of_complex(&c, DimKind::Gfd)?.value;
                    let dual = dual_complex(&c)?.complex;
                    let gid = dimension_of_complex(&dual, DimKind::Gid)?.value;
                    Ok((gfd == gid, format!("gfd {gfd}, gid of dual {gid}")))
                })());
            }
        }
        "remark2" => {
            for i in 0..count {
                let e = fx.exact_complex();
                r.push(format!("exact {i}"), (|| {
                    let v: Vec<ExtInt> = [DimKind::Fd, DimKind::Gfd, DimKind::Gpd]
                        .iter()
                        .map(|k| dimension_of_complex(&e, *k).map(|x| x.value))
                        .collect::<Result<_>>()?;
                    Ok((v.iter().all(|x| *x == ExtInt::NegInf), format!("fd, gfd, gpd = {v:?}")))
                })());
            }
            for i in 0..count {
                let c = fx.non_exact_complex();
                r.push(format!("non-exact {i}"), (|| {
                    let v: Vec<ExtInt> = [DimKind::Fd, DimKind::Gfd, DimKind::Gpd]
                        .iter()
                        .map(|k| dimension_of_complex(&c, *k).map(|x| x.value))
                        .collect::<Result<_>>()?;
                    Ok((v.iter().all(|x| *x != ExtInt::NegInf), format!("fd, gfd, gpd = {v:?}")))
                })());
            }
        }
        "theorem2" => {
            let n = n_gor(ring) as i64;
            for i in 0..count {
                let c = fx.non_exact_complex();
                r.push(format!("complex {i}"), (|| {
                    let gfd = dimension_of_complex(&c, DimKind::Gfd)?.value;
                    let sup = c.sup_h();
                    let ok = if n == 0 { gfd == sup } else { gfd <= sup.plus(n) };
                    Ok((ok, format!("gfd {gfd}, n {n}, sup H {sup}")))
                })());
            }
            if !ring.is_finite() {
                let d = d_fixture();
                r.push("D attains the bound", (|| {
                    let gfd = dimension_of_complex(&d, DimKind::Gfd)?.value;
                    let bound = d.sup_h().plus(n);
                    Ok((gfd == bound && gfd == ExtInt::Finite(1), format!("gfd {gfd}, bound {bound}")))
                })());
            }
        }
        "remark1" => {
            for i in 0..count {
                let e = fx.complex();
                let f = fx.complex();
                r.push(format!("pair {i}"), (|| {
                    let lhs = dual_complex(&tensor_complex(&e, &f)?)?.complex;
                    let fplus = dual_complex(&f)?.complex;
                    let rhs = hom_complex(&e, &fplus)?;
                    let (lo, hi) = match (Complex::joint_range(&lhs, &rhs), lhs.is_empty_support() && rhs.is_empty_support()) {
                        (Some(x), _) => x,
                        (None, _) => (0, -1),
                    };
                    let degreewise = (lo..=hi).all(|n| lhs.module(n).invariant_factors() == rhs.module(n).invariant_factors());
                    let homology = (lo..=hi)
                        .all(|n| lhs.homology(n).module.invariant_factors() == rhs.homology(n).module.invariant_factors());
                    let flat = structural_class(&f, ComplexClass::DgFlat).member;
                    let inj = structural_class(&fplus, ComplexClass::DgInjective).member;
                    Ok((
                        degreewise && homology && flat == inj,
                        format!("degreewise {degreewise}, homology {homology}, dg-flat {flat}, dual dg-injective {inj}"),
                    ))
                })());
            }
        }
        "am" => {
            for i in 0..count {
                let m = fx.complex();
                let n = fx.complex();
                r.push(format!("pair {i}"), (|| {
                    let rep = am_sequence(&m, &n, (0, 6), opts)?;
                    let bad: Vec<&str> = rep.verdicts.iter().filter(|v| !v.1).map(|v| v.0.as_str()).collect();
                    let mut ok = bad.is_empty();
                    let mut detail = format!("{} positions, failing {bad:?}", rep.verdicts.len());
                    if !ring.is_finite() {
                        let bar_zero = rep.tables[1].is_zero();
                        let abs = ext_groups(&m, &n, (0, 6), Theory::Abs, opts)?;
                        let gor = ext_groups(&m, &n, (0, 6), Theory::Gor, opts)?;
                        let collapse = gor.agrees_with(&abs);
                        ok &= bar_zero && collapse;
                        detail.push_str(&format!(", bar zero {bar_zero}, gor = abs {collapse}"));
                    }
                    Ok((ok, detail))
                })());
            }
        }
        "conewd" => {
            for i in 0..count {
                let m = fx.complex();
                let n = fx.complex();
                let coeffs = [i as i64 + 1, 2, 3];
                r.push(format!("instance {i}"), (|| {
                    let li = lift_independence(&m, &n, (0, 3), &coeffs, opts)?;
                    let ri = resolution_independence(&m, &n, (0, 3), opts)?;
                    let ok = li.mutually_inverse
                        && li.tables_agree
                        && ri.beta_alpha_homotopic
                        && ri.alpha_beta_homotopic
                        && ri.cone_maps_homotopic
                        && ri.tables_agree;
                    Ok((
                        ok,
                        format!(
                            "omega/psi inverse {}, lift tables {}, ba~1 {}, ab~1 {}, cone maps {}, resolution tables {}",
                            li.mutually_inverse,
                            li.tables_agree,
                            ri.beta_alpha_homotopic,
                            ri.alpha_beta_homotopic,
                            ri.cone_maps_homotopic,
                            ri.tables_agree
                        ),
                    ))
                })());
            }
        }
        "prop9" => {
            for top in 0..=2i64 {
                for i in 0..count {
                    let m = fx.complex_with_top(top);
                    let n = Complex::concentrated(&fx.nonzero_module(), 0);
                    r.push(format!("top {top}, complex {i}"), (|| {
                        let c = compare_bar_tate(&m, &n, (top + 1, top + 5), opts)?;
                        Ok((c.all_isomorphic(), format!("bar {:?} tate {:?}", c.bar.invariant_factors(), c.tate.invariant_factors())))
                    })());
                }
            }
            let k = Complex::concentrated(&residue_field(ring), 0);
            // the order-p column, which vanishes when k is projective
            let p = if ring.chain_length() == Some(1) { 1 } else { ring.residue_prime().unwrap_or(2) as u128 };
            r.push("tate column of the residue field", (|| {
                let t = ext_groups(&k, &k, (-5, 5), Theory::Tate, opts)?;
                let orders: Vec<Option<u128>> = t.groups.iter().map(|(_, g)| g.order()).collect();
                Ok((orders.iter().all(|o| *o == Some(p)), format!("orders {orders:?}")))
            })());
        }
        "horseshoe" => {
            for i in 0..count {
                let ses = fx.hom_exact_sequence();
                let n = fx.complex();
                r.push(format!("sequence {i}"), (|| {
                    let h = horseshoe(&ses, HorseshoeFlavor::Gp(PrecoverPolicy::Inductive))?;
                    let kp = h.middle.kernel_profile.as_ref().map(|k| (k.is_finite(), k.pd));
                    let finite = kp.is_some_and(|k| k.0);
                    let gor = les_first_variable(&ses, &n, (0, 4), Theory::Gor, PrecoverPolicy::Inductive)?;
                    let bar = les_first_variable(&ses, &n, (0, 4), Theory::Bar, PrecoverPolicy::Inductive)?;
                    let ok = finite && h.kernels_exact && gor.all_exact() && bar.all_exact();
                    Ok((
                        ok,
                        format!(
                            "kernel pd {:?}, kernels exact {}, gor exact {}, bar exact {}",
                            kp.map(|k| k.1),
                            h.kernels_exact,
                            gor.all_exact(),
                            bar.all_exact()
                        ),
                    ))
                })());
            }
        }
        "collapse" => {
            for i in 0..count {
                let m = fx.nonzero_module();
                let n = fx.module();
                r.push(format!("module {i}"), (|| {
                    let (mc, nc) = (Complex::concentrated(&m, 0), Complex::concentrated(&n, 0));
                    let gor = ext_groups(&mc, &nc, (0, 4), Theory::Gor, opts)?;
                    let gor_mod = module_gorenstein_ext(&m, &n, (0, 4))?;
                    let tate = ext_groups(&mc, &nc, (-2, 4), Theory::Tate, opts)?;
                    let tate_mod = module_tate(&m, &n, (-2, 4))?;
                    let gfd = dimension_of_complex(&mc, DimKind::Gfd)?.value;
                    let gfd_mod = module_dimension(&m, ModuleDim::Gfd).value;
                    let (a, b, c) = (gor.agrees_with(&gor_mod), tate.agrees_with(&tate_mod), gfd == gfd_mod);
                    Ok((a && b && c, format!("gor {a}, tate {b}, gfd {gfd} vs {gfd_mod}")))
                })());
            }
        }
        _ => unreachable!("suite names checked above"),
    }
    Ok(SuiteReport { suite: name.to_string(), ring: ring.to_string(), seed, cases: r.cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        let r = Ring::zmod_prime_power(2, 2).unwrap();
        assert_eq!(run_suite("nope", r, 1, None).unwrap_err().name(), "UnknownSuite");
        assert_eq!(run_suite("prop-dual", Ring::Integers, 1, None).unwrap_err().name(), "UnsupportedRing");
    }

    #[test]
    fn small_runs_pass() {
        let r = Ring::zmod_prime_power(2, 2).unwrap();
        for s in SUITES {
            let rep = run_suite(s, r, 3, Some(2)).unwrap();
            assert!(rep.passed(), "{s}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
