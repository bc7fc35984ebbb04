//! The ring catalog.
//!
//! Every computation in this crate happens over a *local factor*: the
//! integers, a residue ring `Z/p^k`, or a truncated polynomial ring
//! `F_p[x]/(x^n)`. The last two are finite chain rings: every ideal is a
//! power of the maximal ideal, so every element is `unit * pi^v` for the
//! uniformizer `pi` (`p` resp. `x`).
//!
//! Catalog handles ([`RingHandle`]) may be products of factors; those are
//! always handled by dispatching to the factors, which is lossless by the
//! Chinese remainder theorem.
//!
//! Elements are stored as `i64`. Residues mod `p^k` are kept in `[0, p^k)`;
//! a truncated polynomial `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` is stored as
//! the base-`p` number with digits `c_i`, so `x^v` is encoded as `p^v`.

use std::fmt;

use crate::error::{Error, Result};

const MAX_TRUNC: usize = 24;

/// A local factor ring: the integers or a finite chain ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    /// `Z/p^k` with `p` prime, `k >= 1`.
    PrimePower { p: i64, k: u32 },
    /// `F_p[x]/(x^n)` with `p` prime, `n >= 1`.
    TruncPoly { p: i64, n: u32 },
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, k)` pairs in increasing order of `p`.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g >= 0`.
pub(crate) fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("integer overflow in exact arithmetic")
}

impl Ring {
    pub fn zmod_prime_power(p: i64, k: u32) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NonPrimeBase(p));
        }
        if k == 0 {
            return Err(Error::BadExponent(0));
        }
        if (k as f64) * (p as f64).log2() > 60.0 {
            return Err(Error::RingTooLarge(format!("Z/{p}^{k}")));
        }
        Ok(Ring::PrimePower { p, k })
    }

    pub fn trunc_poly(p: i64, n: u32) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NonPrimeBase(p));
        }
        if n == 0 {
            return Err(Error::BadExponent(0));
        }
        if n as usize > MAX_TRUNC || (n as f64) * (p as f64).log2() > 60.0 {
            return Err(Error::RingTooLarge(format!("F_{p}[x]/(x^{n})")));
        }
        Ok(Ring::TruncPoly { p, n })
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Ring::Integers)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_integers()
    }

    /// Residue characteristic `p` of a chain ring.
    pub fn residue_prime(&self) -> Option<i64> {
        match *self {
            Ring::Integers => None,
            Ring::PrimePower { p, .. } | Ring::TruncPoly { p, .. } => Some(p),
        }
    }

    /// Nilpotency index of the maximal ideal (`k` for `Z/p^k`, `n` for
    /// `F_p[x]/(x^n)`).
    pub fn chain_length(&self) -> Option<u32> {
        match *self {
            Ring::Integers => None,
            Ring::PrimePower { k, .. } => Some(k),
            Ring::TruncPoly { n, .. } => Some(n),
        }
    }

    /// Number of elements, for finite rings.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Ring::Integers => None,
            Ring::PrimePower { p, k } | Ring::TruncPoly { p, n: k } => Some((p as u64).pow(k)),
        }
    }

    /// Modulus of the integer encoding (`p^k`, resp. `p^n`).
    fn modulus(&self) -> i64 {
        self.order().expect("finite ring") as i64
    }

    pub fn zero(&self) -> i64 {
        0
    }

    pub fn one(&self) -> i64 {
        1
    }

    /// Canonical representative of an integer literal.
    pub fn from_int(&self, a: i64) -> i64 {
        match *self {
            Ring::Integers => a,
            Ring::PrimePower { .. } => a.rem_euclid(self.modulus()),
            Ring::TruncPoly { p, .. } => {
                // the integer a maps to the constant a mod p
                a.rem_euclid(p)
            }
        }
    }

    /// Encode a truncated polynomial from its coefficient list.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> i64 {
        match *self {
            Ring::TruncPoly { p, n } => {
                let mut digits = [0i64; MAX_TRUNC];
                for (i, c) in coeffs.iter().enumerate().take(n as usize) {
                    digits[i] = c.rem_euclid(p);
                }
                encode(p, n, &digits)
            }
            _ => self.from_int(coeffs.first().copied().unwrap_or(0)),
        }
    }

    /// Coefficient list of a truncated polynomial (length `n`).
    pub fn coeffs(&self, a: i64) -> Vec<i64> {
        match *self {
            Ring::TruncPoly { p, n } => decode(p, n, a)[..n as usize].to_vec(),
            _ => vec![a],
        }
    }

    pub fn is_canonical(&self, a: i64) -> bool {
        match *self {
            Ring::Integers => true,
            _ => (0..self.modulus()).contains(&a),
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        match *self {
            Ring::Integers => checked(a.checked_add(b)),
            Ring::PrimePower { .. } => (a + b).rem_euclid(self.modulus()),
            Ring::TruncPoly { p, n } => {
                let (x, y) = (decode(p, n, a), decode(p, n, b));
                let mut z = [0i64; MAX_TRUNC];
                for i in 0..n as usize {
                    z[i] = (x[i] + y[i]) % p;
                }
                encode(p, n, &z)
            }
        }
    }

    pub fn neg(&self, a: i64) -> i64 {
        match *self {
            Ring::Integers => checked(a.checked_neg()),
            Ring::PrimePower { .. } => (-a).rem_euclid(self.modulus()),
            Ring::TruncPoly { p, n } => {
                let x = decode(p, n, a);
                let mut z = [0i64; MAX_TRUNC];
                for i in 0..n as usize {
                    z[i] = (p - x[i]) % p;
                }
                encode(p, n, &z)
            }
        }
    }

    pub fn sub(&self, a: i64, b: i64) -> i64 {
        match *self {
            Ring::Integers => checked(a.checked_sub(b)),
            Ring::PrimePower { .. } => (a - b).rem_euclid(self.modulus()),
            Ring::TruncPoly { .. } => self.add(a, self.neg(b)),
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match *self {
            Ring::Integers => checked(a.checked_mul(b)),
            Ring::PrimePower { .. } => {
                ((a as i128 * b as i128).rem_euclid(self.modulus() as i128)) as i64
            }
            Ring::TruncPoly { p, n } => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let (x, y) = (decode(p, n, a), decode(p, n, b));
                let n = n as usize;
                let mut z = [0i64; MAX_TRUNC];
                for i in 0..n {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        z[i + j] = (z[i + j] + x[i] * y[j]) % p;
                    }
                }
                encode(p, n as u32, &z)
            }
        }
    }

    pub fn is_zero(&self, a: i64) -> bool {
        a == 0
    }

    /// Valuation with respect to the uniformizer. Zero has valuation equal
    /// to the chain length. Only meaningful for chain rings.
    pub fn valuation(&self, a: i64) -> u32 {
        match *self {
            Ring::Integers => panic!("valuation is only defined on chain rings"),
            Ring::PrimePower { p, k } => {
                if a == 0 {
                    return k;
                }
                let (mut a, mut v) = (a, 0);
                while a % p == 0 {
                    a /= p;
                    v += 1;
                }
                v
            }
            Ring::TruncPoly { p, n } => {
                if a == 0 {
                    return n;
                }
                let (mut a, mut v) = (a, 0);
                while a % p == 0 {
                    a /= p;
                    v += 1;
                }
                v
            }
        }
    }

    pub fn is_unit(&self, a: i64) -> bool {
        match *self {
            Ring::Integers => a == 1 || a == -1,
            _ => self.valuation(a) == 0,
        }
    }

    /// Inverse of a unit. Panics on non-units.
    pub fn inv(&self, a: i64) -> i64 {
        match *self {
            Ring::Integers => {
                assert!(a == 1 || a == -1, "{a} is not a unit in Z");
                a
            }
            Ring::PrimePower { .. } => {
                let q = self.modulus();
                let (g, s, _) = xgcd(a, q);
                assert_eq!(g, 1, "{a} is not a unit mod {q}");
                s.rem_euclid(q)
            }
            Ring::TruncPoly { p, n } => {
                let x = decode(p, n, a);
                assert!(x[0] != 0, "non-unit in truncated polynomial ring");
                let n = n as usize;
                let c0 = Ring::PrimePower { p, k: 1 }.inv(x[0]);
                let mut y = [0i64; MAX_TRUNC];
                y[0] = c0;
                for i in 1..n {
                    let mut s = 0;
                    for j in 1..=i {
                        s = (s + x[j] * y[i - j]) % p;
                    }
                    y[i] = ((p - s) % p * c0) % p;
                }
                encode(p, n as u32, &y)
            }
        }
    }

    /// `pi^v`, the canonical generator of the ideal of valuation `v`.
    pub fn uniformizer_power(&self, v: u32) -> i64 {
        match *self {
            Ring::Integers => panic!("no uniformizer in Z"),
            Ring::PrimePower { p, k } | Ring::TruncPoly { p, n: k } => {
                if v >= k {
                    0
                } else {
                    p.pow(v)
                }
            }
        }
    }

    /// Splits `a = unit * canon` with `canon` the canonical associate:
    /// a power of the uniformizer for chain rings, `|a|` for the integers.
    pub fn canonical(&self, a: i64) -> (i64, i64) {
        match *self {
            Ring::Integers => {
                if a < 0 {
                    (checked(a.checked_neg()), -1)
                } else {
                    (a, 1)
                }
            }
            _ => {
                if a == 0 {
                    return (0, 1);
                }
                let v = self.valuation(a);
                let unit = self.shift_down(a, v);
                (self.uniformizer_power(v), unit)
            }
        }
    }

    /// `a / pi^v` for `a` of valuation at least `v` (one representative).
    fn shift_down(&self, a: i64, v: u32) -> i64 {
        match *self {
            Ring::Integers => unreachable!(),
            Ring::PrimePower { p, .. } | Ring::TruncPoly { p, .. } => a / p.pow(v),
        }
    }

    /// Some `q` with `a * q = b`, if it exists.
    pub fn divide(&self, b: i64, a: i64) -> Option<i64> {
        match *self {
            Ring::Integers => {
                if a == 0 {
                    (b == 0).then_some(0)
                } else if b % a == 0 {
                    Some(b / a)
                } else {
                    None
                }
            }
            _ => {
                if b == 0 {
                    return Some(0);
                }
                let (va, vb) = (self.valuation(a), self.valuation(b));
                if va > vb {
                    return None;
                }
                let unit_a = self.shift_down(a, va);
                let q = self.mul(self.shift_down(b, va), self.inv(unit_a));
                Some(self.reduce(q))
            }
        }
    }

    fn reduce(&self, a: i64) -> i64 {
        match *self {
            Ring::Integers => a,
            _ => a.rem_euclid(self.modulus()),
        }
    }

    /// Whether `a` divides `b`.
    pub fn divides(&self, a: i64, b: i64) -> bool {
        self.divide(b, a).is_some()
    }

    /// Generator of the annihilator of `d`, or `None` when it is zero.
    pub fn ann(&self, d: i64) -> Option<i64> {
        match *self {
            Ring::Integers => (d == 0).then_some(1),
            _ => {
                let len = self.chain_length().unwrap();
                let v = self.valuation(d);
                if v == 0 {
                    None
                } else {
                    Some(self.uniformizer_power(len - v))
                }
            }
        }
    }

    /// Generator of the ideal quotient `(b) : a = { y : a y in (b) }`.
    pub fn colon(&self, b: i64, a: i64) -> i64 {
        match *self {
            Ring::Integers => {
                if b == 0 {
                    if a == 0 {
                        1
                    } else {
                        0
                    }
                } else {
                    b.abs() / gcd(a, b)
                }
            }
            _ => {
                let (va, vb) = (self.valuation(a), self.valuation(b));
                self.uniformizer_power(vb.saturating_sub(va))
            }
        }
    }

    /// Generator of the ideal `(a, b)`.
    pub fn ideal_sum(&self, a: i64, b: i64) -> i64 {
        match *self {
            Ring::Integers => gcd(a, b),
            _ => self.uniformizer_power(self.valuation(a).min(self.valuation(b))),
        }
    }

    /// Number of elements of the cyclic module `R/(d)`; `None` if infinite.
    pub fn cyclic_order(&self, d: i64) -> Option<u64> {
        match *self {
            Ring::Integers => (d != 0).then(|| d.unsigned_abs()),
            Ring::PrimePower { p, .. } | Ring::TruncPoly { p, .. } => {
                Some((p as u64).pow(self.valuation(d)))
            }
        }
    }

    /// All elements, for finite rings (used by brute-force checks).
    pub fn elements(&self) -> Option<Vec<i64>> {
        self.order().map(|q| (0..q as i64).collect())
    }

    pub fn format_elem(&self, a: i64) -> String {
        match *self {
            Ring::Integers | Ring::PrimePower { .. } => a.to_string(),
            Ring::TruncPoly { p, n } => {
                let d = decode(p, n, a);
                let mut terms = Vec::new();
                for (i, &c) in d.iter().enumerate().take(n as usize) {
                    if c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    };
                    terms.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimePower { p, k } => write!(f, "Z/{}", p.pow(k)),
            Ring::TruncPoly { p, n } => write!(f, "F{p}[x]/(x^{n})"),
        }
    }
}

fn decode(p: i64, n: u32, mut a: i64) -> [i64; MAX_TRUNC] {
    let mut d = [0i64; MAX_TRUNC];
    for slot in d.iter_mut().take(n as usize) {
        *slot = a % p;
        a /= p;
    }
    d
}

fn encode(p: i64, n: u32, d: &[i64; MAX_TRUNC]) -> i64 {
    let mut a = 0;
    for i in (0..n as usize).rev() {
        a = a * p + d[i];
    }
    a
}

/// Description of a catalog ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Zmod(i64),
    TruncPoly { p: i64, n: u32 },
    Product(Vec<RingSpec>),
}

/// Homological profile of a catalog ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinProfile {
    pub self_injective_dim: u32,
    pub is_quasi_frobenius: bool,
    pub is_coherent: bool,
    pub is_gf_closed: bool,
    pub is_finite: bool,
}

impl GorensteinProfile {
    /// Finitistic projective dimension of the ring: 0 for quasi-Frobenius
    /// catalog rings, 1 once a factor is the integers.
    pub fn finitistic_projective_dim(&self) -> u32 {
        self.self_injective_dim
    }
}

/// A catalog ring together with its decomposition into local factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHandle {
    spec: RingSpec,
    factors: Vec<Ring>,
    profile: GorensteinProfile,
}

fn flatten(spec: &RingSpec, out: &mut Vec<RingSpec>) {
    match spec {
        RingSpec::Product(parts) => parts.iter().for_each(|s| flatten(s, out)),
        other => out.push(other.clone()),
    }
}

fn factors_of(spec: &RingSpec) -> Result<Vec<Ring>> {
    match *spec {
        RingSpec::Integers => Ok(vec![Ring::Integers]),
        RingSpec::Zmod(n) => {
            if n < 2 {
                return Err(Error::BadModulus(n));
            }
            factorize(n).into_iter().map(|(p, k)| Ring::zmod_prime_power(p, k)).collect()
        }
        RingSpec::TruncPoly { p, n } => Ok(vec![Ring::trunc_poly(p, n)?]),
        RingSpec::Product(ref parts) => {
            let mut out = Vec::new();
            for part in parts {
                out.extend(factors_of(part)?);
            }
            Ok(out)
        }
    }
}

/// Builds a catalog ring, validating its parameters.
pub fn make_ring(spec: &RingSpec) -> Result<RingHandle> {
    let spec = match spec {
        RingSpec::Product(_) => {
            let mut flat = Vec::new();
            flatten(spec, &mut flat);
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                RingSpec::Product(flat)
            }
        }
        other => other.clone(),
    };
    if let RingSpec::Product(parts) = &spec {
        if parts.is_empty() {
            return Err(Error::BadModulus(1));
        }
    }
    let factors = factors_of(&spec)?;
    let is_finite = factors.iter().all(Ring::is_finite);
    let profile = GorensteinProfile {
        self_injective_dim: if is_finite { 0 } else { 1 },
        is_quasi_frobenius: is_finite,
        is_coherent: true,
        is_gf_closed: true,
        is_finite,
    };
    Ok(RingHandle { spec, factors, profile })
}

impl RingHandle {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn factors(&self) -> &[Ring] {
        &self.factors
    }

    pub fn profile(&self) -> GorensteinProfile {
        self.profile
    }

    /// The single local factor, when the handle is not a proper product.
    pub fn local(&self) -> Option<Ring> {
        (self.factors.len() == 1).then(|| self.factors[0])
    }

    /// Projects a residue of `Z/n` (for a `Zmod(n)` handle) onto the factors.
    pub fn split_residue(&self, r: i64) -> Vec<i64> {
        self.factors.iter().map(|f| f.from_int(r)).collect()
    }

    /// Recombines factor residues of a `Zmod(n)` handle by the Chinese
    /// remainder theorem.
    pub fn crt(&self, parts: &[i64]) -> Option<i64> {
        let mut acc: (i64, i64) = (0, 1);
        for (f, &r) in self.factors.iter().zip(parts) {
            let Ring::PrimePower { .. } = f else { return None };
            let m = f.order().unwrap() as i64;
            let (_, s, _) = xgcd(acc.1, m);
            // x = acc.0 + acc.1 * t with acc.1 * t = r - acc.0 mod m
            let t = ((r - acc.0) as i128 * s as i128).rem_euclid(m as i128) as i64;
            let modulus = acc.1 * m;
            acc = ((acc.0 + acc.1 * t).rem_euclid(modulus), modulus);
        }
        Some(acc.0)
    }
}

/// Returns the profile stored in a catalog handle.
pub fn ring_profile(ring: &RingHandle) -> GorensteinProfile {
    ring.profile()
}

impl fmt::Display for RingHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", names.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod4_profile() {
        let r = make_ring(&RingSpec::Zmod(4)).unwrap();
        let p = r.profile();
        assert_eq!(p.self_injective_dim, 0);
        assert!(p.is_quasi_frobenius && p.is_finite);
    }

    #[test]
    fn integers_profile() {
        let p = make_ring(&RingSpec::Integers).unwrap().profile();
        assert_eq!(p.self_injective_dim, 1);
        assert!(!p.is_quasi_frobenius && !p.is_finite);
    }

    #[test]
    fn zmod12_factors() {
        let r = make_ring(&RingSpec::Zmod(12)).unwrap();
        assert_eq!(
            r.factors(),
            &[Ring::PrimePower { p: 2, k: 2 }, Ring::PrimePower { p: 3, k: 1 }]
        );
        for x in 0..12 {
            assert_eq!(r.crt(&r.split_residue(x)), Some(x));
        }
    }

    #[test]
    fn product_flattening() {
        let a = RingSpec::Zmod(4);
        let b = RingSpec::TruncPoly { p: 2, n: 2 };
        let c = RingSpec::Integers;
        let nested = RingSpec::Product(vec![RingSpec::Product(vec![a.clone(), b.clone()]), c.clone()]);
        let flat = RingSpec::Product(vec![a, b, c]);
        assert_eq!(make_ring(&nested).unwrap(), make_ring(&flat).unwrap());
    }

    #[test]
    fn profiles_of_catalog() {
        let t = make_ring(&RingSpec::TruncPoly { p: 2, n: 3 }).unwrap();
        assert_eq!(ring_profile(&t).self_injective_dim, 0);
        let prod = make_ring(&RingSpec::Product(vec![
            RingSpec::Zmod(4),
            RingSpec::TruncPoly { p: 2, n: 2 },
        ]))
        .unwrap();
        assert!(ring_profile(&prod).is_quasi_frobenius);
        assert_eq!(ring_profile(&prod).self_injective_dim, 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_ring(&RingSpec::Zmod(1)), Err(Error::BadModulus(1)));
        assert_eq!(
            make_ring(&RingSpec::TruncPoly { p: 4, n: 2 }),
            Err(Error::NonPrimeBase(4))
        );
    }

    #[test]
    fn chain_ring_arithmetic() {
        let r = Ring::trunc_poly(3, 3).unwrap();
        let x = r.from_coeffs(&[0, 1]);
        assert_eq!(r.mul(x, r.mul(x, x)), 0);
        let u = r.from_coeffs(&[2, 1, 1]);
        assert_eq!(r.mul(u, r.inv(u)), 1);
        for a in r.elements().unwrap() {
            for b in r.elements().unwrap() {
                if let Some(q) = r.divide(b, a) {
                    assert_eq!(r.mul(a, q), b);
                }
                assert_eq!(r.divides(a, b), r.valuation(a) <= r.valuation(b));
            }
        }
        let z9 = Ring::zmod_prime_power(3, 2).unwrap();
        assert_eq!(z9.canonical(6), (3, 2));
        assert_eq!(z9.inv(2), 5);
    }
}
