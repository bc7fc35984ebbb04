//! Structural classes of complexes and the projective dimension of a
//! complex in the category of complexes.

use crate::classes::{class_membership, module_dimension, ClassName, ModuleDim};
use crate::complex::{ChainMap, Complex};
use crate::extint::ExtInt;
use crate::matrix::Matrix;
use crate::module::Morphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexClass {
    DgProjective,
    DgFlat,
    DgInjective,
    ProjectiveComplex,
    FlatComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralVerdict {
    pub member: bool,
    /// First degree where the test failed, with the reason.
    pub failure: Option<(i64, String)>,
}

impl StructuralVerdict {
    fn pass() -> StructuralVerdict {
        StructuralVerdict { member: true, failure: None }
    }

    fn fail(n: i64, why: impl Into<String>) -> StructuralVerdict {
        StructuralVerdict { member: false, failure: Some((n, why.into())) }
    }
}

/// Decides structural classes of a finite-support complex.
///
/// A bounded complex of projectives (flats) is DG-projective (DG-flat), and a
/// bounded complex of injectives is DG-injective, so for finite support the
/// termwise test is exact. Projective and flat complexes are exact
/// complexes whose cycle modules are in the class.
pub fn structural_class(c: &Complex, class: ComplexClass) -> StructuralVerdict {
    let termwise = match class {
        ComplexClass::DgProjective | ComplexClass::ProjectiveComplex => ClassName::Projective,
        ComplexClass::DgFlat | ComplexClass::FlatComplex => ClassName::Flat,
        ComplexClass::DgInjective => ClassName::Injective,
    };
    for n in c.degrees() {
        let m = class_membership(&c.module(n), termwise);
        if !m.member {
            return StructuralVerdict::fail(n, format!("component: {}", m.certificate));
        }
    }
    if matches!(class, ComplexClass::ProjectiveComplex | ComplexClass::FlatComplex) {
        for n in c.degrees() {
            if !c.homology(n).module.is_zero() {
                return StructuralVerdict::fail(n, "homology is nonzero");
            }
            let z = c.d(n).kernel().module;
            let m = class_membership(&z, termwise);
            if !m.member {
                return StructuralVerdict::fail(n, format!("cycles: {}", m.certificate));
            }
        }
    }
    StructuralVerdict::pass()
}

/// Projective dimension of a complex in the category of complexes: finite
/// only for exact complexes whose cycle modules have finite projective
/// dimension, and then the supremum of those.
pub fn complex_pd(c: &Complex) -> ExtInt {
    if c.is_zero() {
        return ExtInt::NegInf;
    }
    if !c.is_exact() {
        return ExtInt::PosInf;
    }
    let mut best = ExtInt::NegInf;
    for n in c.degrees() {
        let z = c.d(n).kernel().module;
        best = best.max(module_dimension(&z, ModuleDim::Pd).value);
        if best == ExtInt::PosInf {
            break;
        }
    }
    best.max(ExtInt::Finite(0))
}

/// Kernel complex of a chain map and its inclusion into the source.
pub fn kernel_complex(f: &ChainMap) -> (Complex, ChainMap) {
    let src = f.source();
    let ring = src.ring();
    if src.is_empty_support() {
        let z = Complex::zero(ring);
        return (z.clone(), ChainMap::zero(&z, src));
    }
    let kers: Vec<_> = src.degrees().map(|n| f.part(n).kernel()).collect();
    let lo = src.lo();
    let modules: Vec<_> = kers.iter().map(|k| k.module.clone()).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=src.hi() {
        let k = &kers[(n - lo) as usize];
        let below = &kers[(n - lo - 1) as usize];
        let solver = below.map.preimage_solver();
        let img = k.map.matrix().mul(src.d(n).matrix());
        let rows: Vec<Vec<i64>> = (0..img.rows())
            .map(|i| solver.solve(img.row(i)).expect("differential preserves the kernel"))
            .collect();
        diffs.push(Morphism::unchecked(
            k.module.clone(),
            below.module.clone(),
            Matrix::from_rows(ring, below.module.num_gens(), &rows),
        ));
    }
    let l = Complex::new_unchecked(ring, lo, modules, diffs);
    let incl = ChainMap::new_unchecked(l.clone(), src.clone(), lo, kers.into_iter().map(|k| k.map).collect());
    (l, incl)
}

/// Restriction of `alpha: A -> B` to kernel complexes, given inclusions
/// `ka: KA -> A` and `kb: KB -> B` with `alpha` mapping `KA` into `KB`.
pub fn restrict_to_kernels(alpha: &ChainMap, ka: &ChainMap, kb: &ChainMap) -> Option<ChainMap> {
    let (s, t) = (ka.source(), kb.source());
    let ring = alpha.ring();
    let Some((a, b)) = Complex::joint_range(s, t) else {
        return Some(ChainMap::zero(s, t));
    };
    let mut parts = Vec::new();
    for n in a..=b {
        let img = ka.part(n).matrix().mul(alpha.part(n).matrix());
        let solver = kb.part(n).preimage_solver();
        let mut rows = Vec::new();
        for i in 0..img.rows() {
            rows.push(solver.solve(img.row(i))?);
        }
        parts.push(Morphism::unchecked(s.module(n), t.module(n), Matrix::from_rows(ring, t.module(n).num_gens(), &rows)));
    }
    Some(ChainMap::new_unchecked(s.clone(), t.clone(), a, parts))
}
