//! Flat, Gorenstein flat, Gorenstein projective and Gorenstein injective
//! dimensions of bounded complexes.

use std::fmt;

use crate::classes::{class_membership, module_dimension, ClassName, ModuleDim};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::homcx::dual_complex;
use crate::resolution::{complete_resolution, dg_projective_resolution_with, DgPolicy, ResolutionBundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimKind {
    Fd,
    Gfd,
    Gpd,
    Gid,
}

impl DimKind {
    pub const ALL: [DimKind; 4] = [DimKind::Fd, DimKind::Gfd, DimKind::Gpd, DimKind::Gid];

    pub fn name(self) -> &'static str {
        match self {
            DimKind::Fd => "fd",
            DimKind::Gfd => "gfd",
            DimKind::Gpd => "gpd",
            DimKind::Gid => "gid",
        }
    }

    fn class(self) -> ClassName {
        match self {
            DimKind::Fd => ClassName::Flat,
            DimKind::Gfd => ClassName::GorensteinFlat,
            DimKind::Gpd => ClassName::GorensteinProjective,
            DimKind::Gid => ClassName::GorensteinInjective,
        }
    }

    fn module_kind(self) -> ModuleDim {
        match self {
            DimKind::Fd => ModuleDim::Fd,
            DimKind::Gfd => ModuleDim::Gfd,
            DimKind::Gpd => ModuleDim::Gpd,
            DimKind::Gid => ModuleDim::Gid,
        }
    }
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub kind: DimKind,
    pub value: ExtInt,
    /// The critical degree: where the class test first succeeded.
    pub g: Option<i64>,
    pub certificates: Vec<String>,
    /// The same dimension recomputed from an independent resolution.
    pub cross_check: ExtInt,
}

impl DimensionReport {
    pub fn is_consistent(&self) -> bool {
        self.value == self.cross_check
    }
}

/// Degrees through which resolutions are built: two past `sup H`.
fn resolution_top(s: i64) -> i64 {
    s + 2
}

/// Least `g >= s` with `C_g(P)` in `class`, continuing through the syzygy
/// orbit of the last cokernel once the computed range of `P` runs out.
fn cokernel_search(p: &ResolutionBundle, s: i64, class: ClassName, kind: ModuleDim, certs: &mut Vec<String>) -> (ExtInt, Option<i64>) {
    let pr = &p.resolution;
    let last = match p.truncated_at {
        Some(t) => t - 1,
        None => pr.hi().max(s),
    };
    for g in s..=last {
        let c = pr.boundary_cokernel(g).module;
        let m = class_membership(&c, class);
        certs.push(format!("C_{g}: {}", m.certificate));
        if m.member {
            return (ExtInt::Finite(g), Some(g));
        }
    }
    let c = pr.boundary_cokernel(last).module;
    let orbit = module_dimension(&c, kind);
    match orbit.value {
        ExtInt::Finite(k) => {
            certs.push(format!("syzygy {k} of C_{last} lies in the class"));
            (ExtInt::Finite(last + k), Some(last + k))
        }
        v => {
            if let Some(start) = orbit.cycle_start {
                certs.push(format!(
                    "syzygy classes of C_{last} repeat from step {start} with no member: {:?}",
                    orbit.syzygies
                ));
            }
            (v, None)
        }
    }
}

fn resolution_pair(n: &Complex, top: i64) -> (ResolutionBundle, ResolutionBundle) {
    (
        dg_projective_resolution_with(n, top, DgPolicy::Minimal, false),
        dg_projective_resolution_with(n, top, DgPolicy::Naive, true),
    )
}

fn flat_side(n: &Complex, kind: DimKind) -> DimensionReport {
    let Some(s) = n.sup_h().finite() else {
        return DimensionReport {
            kind,
            value: ExtInt::NegInf,
            g: None,
            certificates: vec!["exact complex".to_string()],
            cross_check: ExtInt::NegInf,
        };
    };
    let (p, q) = resolution_pair(n, resolution_top(s));
    let mut certs = vec![format!("sup H = {s}")];
    let (value, g) = cokernel_search(&p, s, kind.class(), kind.module_kind(), &mut certs);
    let (cross_check, _) = cokernel_search(&q, s, kind.class(), kind.module_kind(), &mut Vec::new());
    DimensionReport { kind, value, g, certificates: certs, cross_check }
}

fn gpd(n: &Complex) -> Result<DimensionReport> {
    let Some(s) = n.sup_h().finite() else {
        return Ok(DimensionReport {
            kind: DimKind::Gpd,
            value: ExtInt::NegInf,
            g: None,
            certificates: vec!["exact complex".to_string()],
            cross_check: ExtInt::NegInf,
        });
    };
    let c = complete_resolution(n, (s - 1, s + 2))?;
    let mut certs = vec![format!("sup H = {s}"), format!("complete resolution agrees from degree {}", c.threshold)];
    if let Some(period) = c.period {
        certs.push(format!("period {period}"));
    }
    if !c.agrees_above_threshold() || !c.is_exact_on_window() || !c.hom_proj_exact {
        certs.push("complete resolution failed its checks".to_string());
    }
    let (_, q) = resolution_pair(n, resolution_top(s));
    let (cross_check, _) = cokernel_search(&q, s, ClassName::GorensteinProjective, ModuleDim::Gpd, &mut Vec::new());
    Ok(DimensionReport {
        kind: DimKind::Gpd,
        value: ExtInt::Finite(c.threshold),
        g: Some(c.threshold),
        certificates: certs,
        cross_check,
    })
}

/// Gorenstein injective dimension over a finite ring: the least `n` with
/// `-n <= inf H` and the cycles `Z_{-n}(I)` Gorenstein injective, where
/// `I` is the dual of a DG-projective resolution of the dual complex.
fn gid(n: &Complex) -> Result<DimensionReport> {
    if !n.ring().is_finite() {
        return Err(Error::UnsupportedRing("Gorenstein injective dimension needs a finite ring".to_string()));
    }
    let Some(i) = n.inf_h().finite() else {
        return Ok(DimensionReport {
            kind: DimKind::Gid,
            value: ExtInt::NegInf,
            g: None,
            certificates: vec!["exact complex".to_string()],
            cross_check: ExtInt::NegInf,
        });
    };
    let dual = dual_complex(n)?.complex;
    let top = resolution_top(-i);
    let (p, q) = resolution_pair(&dual, top);
    let search = |b: &ResolutionBundle, certs: &mut Vec<String>| -> Result<(ExtInt, Option<i64>)> {
        let inj = dual_complex(&b.resolution)?.complex;
        for k in -i..top {
            let z = inj.d(-k).kernel().module;
            let m = class_membership(&z, ClassName::GorensteinInjective);
            certs.push(format!("Z_{}: {}", -k, m.certificate));
            if m.member {
                return Ok((ExtInt::Finite(k), Some(k)));
            }
        }
        Ok((ExtInt::PosInf, None))
    };
    let mut certs = vec![format!("inf H = {i}")];
    let (value, g) = search(&p, &mut certs)?;
    let (cross_check, _) = search(&q, &mut Vec::new())?;
    Ok(DimensionReport { kind: DimKind::Gid, value, g, certificates: certs, cross_check })
}

/// The dimension of a bounded complex of the given kind.
pub fn dimension_of_complex(n: &Complex, kind: DimKind) -> Result<DimensionReport> {
    match kind {
        DimKind::Fd | DimKind::Gfd => Ok(flat_side(n, kind)),
        DimKind::Gpd => gpd(n),
        DimKind::Gid => gid(n),
    }
}

/// A bounded complex of Gorenstein flat modules quasi-isomorphic to `n`
/// with top degree `Gfd n`: the soft truncation of the witness resolution.
pub fn gf_truncation_witness(n: &Complex) -> Option<(Complex, ChainMap)> {
    let s = n.sup_h().finite()?;
    let report = flat_side(n, DimKind::Gfd);
    let g = report.g?;
    let p = dg_projective_resolution_with(n, g.max(s) + 1, DgPolicy::Minimal, false);
    let (t, map) = p.resolution.soft_truncation(g);
    Some((t, map))
}

/// Named relation between dimensions with its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct DimensionSuite {
    pub fd: DimensionReport,
    pub gfd: DimensionReport,
    pub gpd: DimensionReport,
    /// `None` over the integers, where the direct path is unavailable.
    pub gid: Option<DimensionReport>,
    /// Gid of the dual complex, over finite rings.
    pub gid_dual: Option<DimensionReport>,
    pub verdicts: Vec<Verdict>,
}

impl DimensionSuite {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn reports(&self) -> Vec<&DimensionReport> {
        let mut out = vec![&self.fd, &self.gfd, &self.gpd];
        out.extend(self.gid.as_ref());
        out
    }
}

fn verdict(name: &'static str, holds: bool, detail: String) -> Verdict {
    Verdict { name, holds, detail }
}

/// All dimensions of `n` with verdicts for the relations between them.
/// `n_gor` is the self-injective dimension of the ring.
pub fn dimension_report_suite(n: &Complex, n_gor: u32) -> Result<DimensionSuite> {
    let fd = dimension_of_complex(n, DimKind::Fd)?;
    let gfd = dimension_of_complex(n, DimKind::Gfd)?;
    let gpd = dimension_of_complex(n, DimKind::Gpd)?;
    let (gid, gid_dual) = if n.ring().is_finite() {
        let dual = dual_complex(n)?.complex;
        (Some(gid(n)?), Some(gid(&dual)?))
    } else {
        (None, None)
    };
    let exact = n.is_exact();
    let sup = n.sup_h();
    let mut v = vec![
        verdict("gfd<=fd", gfd.value <= fd.value, format!("{} <= {}", gfd.value, fd.value)),
        verdict(
            "gfd=fd-if-finite",
            !fd.value.is_finite() || gfd.value == fd.value,
            format!("fd = {}, gfd = {}", fd.value, gfd.value),
        ),
        verdict("gfd<=gpd", gfd.value <= gpd.value, format!("{} <= {}", gfd.value, gpd.value)),
        verdict(
            "gfd-finite-implies-gpd-finite",
            gfd.value == ExtInt::PosInf || gpd.value != ExtInt::PosInf,
            format!("gfd = {}, gpd = {}", gfd.value, gpd.value),
        ),
        verdict(
            "gfd=-inf-iff-exact",
            (gfd.value == ExtInt::NegInf) == exact,
            format!("gfd = {}, exact = {exact}", gfd.value),
        ),
        verdict(
            "gfd<=n+supH",
            gfd.value <= sup.plus(n_gor as i64),
            format!("{} <= {n_gor} + {sup}", gfd.value),
        ),
    ];
    for r in [&fd, &gfd, &gpd].into_iter().chain(gid.as_ref()).chain(gid_dual.as_ref()) {
        v.push(verdict("cross-check", r.is_consistent(), format!("{}: {} vs {}", r.kind, r.value, r.cross_check)));
    }
    if let Some(d) = &gid_dual {
        v.push(verdict("gfd=gid-dual", gfd.value == d.value, format!("{} = {}", gfd.value, d.value)));
    }
    Ok(DimensionSuite { fd, gfd, gpd, gid, gid_dual, verdicts: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::module::Module;
    use crate::ring::Ring;

    fn d_fixture() -> Complex {
        let z = Ring::Integers;
        let f = Module::free(z, 1);
        Complex::from_matrices(z, 0, vec![f.clone(), f], vec![Matrix::from_entries(z, 1, 1, &[2]).unwrap()]).unwrap()
    }

    #[test]
    fn d_over_integers() {
        let d = d_fixture();
        let s = dimension_report_suite(&d, 1).unwrap();
        assert_eq!(s.fd.value, ExtInt::Finite(1));
        assert_eq!(s.gfd.value, ExtInt::Finite(1));
        assert_eq!(s.gpd.value, ExtInt::Finite(1));
        assert!(s.gid.is_none());
        assert!(s.all_hold(), "{:?}", s.verdicts);
        assert_eq!(dimension_of_complex(&d, DimKind::Gid).unwrap_err().name(), "UnsupportedRing");
    }

    #[test]
    fn residue_field_over_z4() {
        let r = Ring::zmod_prime_power(2, 2).unwrap();
        let k = Complex::concentrated(&Module::cyclic(r, 2), 0);
        let s = dimension_report_suite(&k, 0).unwrap();
        assert_eq!(s.gfd.value, ExtInt::Finite(0));
        assert_eq!(s.fd.value, ExtInt::PosInf);
        assert_eq!(s.gpd.value, ExtInt::Finite(0));
        assert_eq!(s.gid.as_ref().unwrap().value, ExtInt::Finite(0));
        assert!(s.all_hold(), "{:?}", s.verdicts);
        let shifted = k.shift(2);
        let s = dimension_report_suite(&shifted, 0).unwrap();
        assert_eq!(s.gfd.value, ExtInt::Finite(2));
        assert_eq!(s.gid.unwrap().value, ExtInt::Finite(-2));
        assert_eq!(s.gid_dual.unwrap().value, ExtInt::Finite(2));
    }

    #[test]
    fn exact_complexes() {
        let r = Ring::zmod_prime_power(3, 2).unwrap();
        let f = Module::free(r, 1);
        let disk = Complex::from_matrices(r, 3, vec![f.clone(), f], vec![Matrix::identity(r, 1)]).unwrap();
        for kind in DimKind::ALL {
            assert_eq!(dimension_of_complex(&disk, kind).unwrap().value, ExtInt::NegInf);
        }
    }

    #[test]
    fn truncation_witness() {
        let (t, map) = gf_truncation_witness(&d_fixture()).unwrap();
        assert_eq!(t.hi(), 1);
        assert!(map.is_quasi_isomorphism());
    }
}
