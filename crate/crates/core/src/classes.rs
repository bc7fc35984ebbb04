//! Homological class oracles for modules over the catalog rings, and
//! module-level dimensions.
//!
//! Over a finite chain ring (quasi-Frobenius) projective, flat and
//! injective all mean free, and every finitely generated module is
//! Gorenstein projective, flat and injective. Over the integers projective
//! and flat mean free, no nonzero finitely generated module is injective,
//! and the Gorenstein classes agree with the classical ones because the
//! ring is regular.

use std::fmt;

use crate::extint::ExtInt;
use crate::matrix::Matrix;
use crate::module::{Module, Morphism};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassName {
    Projective,
    Flat,
    Injective,
    GorensteinProjective,
    GorensteinFlat,
    GorensteinInjective,
}

impl ClassName {
    pub const ALL: [ClassName; 6] = [
        ClassName::Projective,
        ClassName::Flat,
        ClassName::Injective,
        ClassName::GorensteinProjective,
        ClassName::GorensteinFlat,
        ClassName::GorensteinInjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassName::Projective => "projective",
            ClassName::Flat => "flat",
            ClassName::Injective => "injective",
            ClassName::GorensteinProjective => "gorenstein_projective",
            ClassName::GorensteinFlat => "gorenstein_flat",
            ClassName::GorensteinInjective => "gorenstein_injective",
        }
    }
}

/// Why the oracle decided the way it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ZeroModule,
    Free { rank: usize },
    /// A cyclic summand `R/(d)` with `d` a nonzero non-unit.
    NonFreeSummand { factor: i64 },
    /// `R/(d)` is a cycle of the exact complex of frees alternating
    /// multiplication by `d` and by a generator of its annihilator.
    TotallyAcyclic { period: usize },
    /// Gorenstein classes coincide with classical ones over a regular ring.
    RegularRing(Box<Certificate>),
    /// Finitely generated nonzero modules over the integers are not
    /// divisible.
    NotDivisible { factor: i64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ZeroModule => write!(f, "zero module"),
            Certificate::Free { rank } => write!(f, "free of rank {rank}"),
            Certificate::NonFreeSummand { factor } => write!(f, "non-free summand R/({factor})"),
            Certificate::TotallyAcyclic { period } => {
                write!(f, "cycle of a {period}-periodic exact complex of frees")
            }
            Certificate::RegularRing(c) => write!(f, "regular ring: {c}"),
            Certificate::NotDivisible { factor } => write!(f, "summand R/({factor}) is not divisible"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Certificate,
}

fn free_test(m: &Module) -> Membership {
    if m.is_zero() {
        return Membership { member: true, certificate: Certificate::ZeroModule };
    }
    match m.invariant_factors().iter().find(|&&d| d != 0) {
        Some(&d) => Membership { member: false, certificate: Certificate::NonFreeSummand { factor: d } },
        None => Membership { member: true, certificate: Certificate::Free { rank: m.free_rank() } },
    }
}

/// Period of the complete resolution of `R/(d)` over a chain ring: one if
/// `d` squares to zero with annihilator `(d)`, two otherwise.
fn periodic_witness(ring: Ring, m: &Module) -> usize {
    let all_self_annihilating = m
        .invariant_factors()
        .iter()
        .filter(|&&d| d != 0)
        .all(|&d| ring.ann(d) == Some(d));
    if all_self_annihilating {
        1
    } else {
        2
    }
}

/// Decides membership of `m` in `class`.
pub fn class_membership(m: &Module, class: ClassName) -> Membership {
    let ring = m.ring();
    if m.is_zero() {
        return Membership { member: true, certificate: Certificate::ZeroModule };
    }
    if ring.is_finite() {
        match class {
            ClassName::Projective | ClassName::Flat | ClassName::Injective => free_test(m),
            _ => Membership {
                member: true,
                certificate: Certificate::TotallyAcyclic { period: periodic_witness(ring, m) },
            },
        }
    } else {
        match class {
            ClassName::Projective | ClassName::Flat => free_test(m),
            ClassName::GorensteinProjective | ClassName::GorensteinFlat => {
                let inner = free_test(m);
                Membership { member: inner.member, certificate: Certificate::RegularRing(Box::new(inner.certificate)) }
            }
            ClassName::Injective | ClassName::GorensteinInjective => {
                let factor = m.invariant_factors()[0];
                let cert = Certificate::NotDivisible { factor };
                let cert = if class == ClassName::GorensteinInjective {
                    Certificate::RegularRing(Box::new(cert))
                } else {
                    cert
                };
                Membership { member: false, certificate: cert }
            }
        }
    }
}

/// The syzygy of `m` with respect to its minimal free cover, normalized,
/// together with the cover.
pub fn syzygy(m: &Module) -> (Module, Morphism) {
    let ring = m.ring();
    let (n, _, from) = m.normalized();
    let k = n.num_gens();
    let cover = Morphism::new(Module::free(ring, k), m.clone(), from.matrix().clone())
        .expect("normal generators define a map from the free module");
    let ker = Morphism::new(Module::free(ring, k), n, Matrix::identity(ring, k)).unwrap().kernel();
    (ker.module, cover)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleDim {
    Pd,
    Fd,
    Gpd,
    Gfd,
    Gid,
}

impl ModuleDim {
    pub fn class(self) -> ClassName {
        match self {
            ModuleDim::Pd => ClassName::Projective,
            ModuleDim::Fd => ClassName::Flat,
            ModuleDim::Gpd => ClassName::GorensteinProjective,
            ModuleDim::Gfd => ClassName::GorensteinFlat,
            ModuleDim::Gid => ClassName::GorensteinInjective,
        }
    }
}

/// Result of a module dimension computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDimension {
    pub value: ExtInt,
    /// Invariant factors of the syzygies visited, starting with the module.
    pub syzygies: Vec<Vec<i64>>,
    /// For an infinite value: the index where the syzygy class repeats.
    pub cycle_start: Option<usize>,
}

/// Module dimension of the given kind. The zero module gets `-inf`.
///
/// Projective-side dimensions walk the syzygies until one lands in the
/// class; over a chain ring the syzygy classes form a finite orbit, so a
/// repeat with no member certifies an infinite value.
pub fn module_dimension(m: &Module, kind: ModuleDim) -> ModuleDimension {
    if m.is_zero() {
        return ModuleDimension { value: ExtInt::NegInf, syzygies: vec![], cycle_start: None };
    }
    if kind == ModuleDim::Gid {
        let value = if m.ring().is_finite() { ExtInt::Finite(0) } else { ExtInt::Finite(1) };
        return ModuleDimension { value, syzygies: vec![m.invariant_factors().to_vec()], cycle_start: None };
    }
    let class = kind.class();
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut cur = m.clone();
    loop {
        let inv = cur.invariant_factors().to_vec();
        if class_membership(&cur, class).member {
            let i = seen.len() as i64;
            seen.push(inv);
            return ModuleDimension { value: ExtInt::Finite(i), syzygies: seen, cycle_start: None };
        }
        if let Some(pos) = seen.iter().position(|s| *s == inv) {
            seen.push(inv);
            return ModuleDimension { value: ExtInt::PosInf, syzygies: seen, cycle_start: Some(pos) };
        }
        seen.push(inv);
        cur = syzygy(&cur).0;
    }
}
