//! Brute-force oracles over finite rings. Everything here works by listing
//! elements; nothing calls the normal form or the linear solver.

#![allow(dead_code)]

use std::collections::HashSet;

use gorenstein::complex::Complex;
use gorenstein::matrix::Matrix;
use gorenstein::module::Module;
use gorenstein::ring::Ring;

/// Refuse to enumerate sets larger than this.
pub const LIMIT: u64 = 300_000;

fn all_vectors(ring: Ring, len: usize) -> Option<Vec<Vec<i64>>> {
    let q = ring.order()?;
    if q.checked_pow(len as u32)? > LIMIT {
        return None;
    }
    let elems = ring.elements()?;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |&a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    Some(out)
}

fn add(ring: Ring, a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

fn scale(ring: Ring, c: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| ring.mul(c, x)).collect()
}

fn times(ring: Ring, x: &[i64], m: &Matrix) -> Vec<i64> {
    (0..m.cols())
        .map(|j| x.iter().enumerate().fold(0, |acc, (i, &xi)| ring.add(acc, ring.mul(xi, m.get(i, j)))))
        .collect()
}

/// The submodule of `R^len` spanned by the given rows, listed in full.
pub fn span(ring: Ring, len: usize, rows: &[Vec<i64>]) -> Option<HashSet<Vec<i64>>> {
    let elems = ring.elements()?;
    let mut s: HashSet<Vec<i64>> = HashSet::from([vec![0; len]]);
    for r in rows {
        let mut next = HashSet::new();
        for v in &s {
            for &c in &elems {
                next.insert(add(ring, v, &scale(ring, c, r)));
            }
            if next.len() as u64 > LIMIT {
                return None;
            }
        }
        s = next;
    }
    Some(s)
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Number of elements of `R^g / rowspace(presentation)`.
pub fn module_order(m: &Module) -> Option<u64> {
    let ring = m.ring();
    let g = m.num_gens();
    let rel = span(ring, g, &rows_of(m.presentation()))?;
    Some(ring.order()?.checked_pow(g as u32)? / rel.len() as u64)
}

/// `counts[j]` = number of elements of `sub / rel` killed by the `j`-th
/// power of the uniformizer, for `j = 0..=chain length`. Over a chain ring
/// this list determines a finite module up to isomorphism.
fn killed_counts(ring: Ring, sub: &[Vec<i64>], rel: &HashSet<Vec<i64>>) -> Vec<u64> {
    let k = ring.chain_length().expect("finite chain ring");
    (0..=k)
        .map(|j| {
            let pi = ring.uniformizer_power(j);
            let n = sub.iter().filter(|x| rel.contains(&scale(ring, pi, x))).count() as u64;
            n / rel.len() as u64
        })
        .collect()
}

/// Isomorphism profile of a presented module, by enumeration.
pub fn module_profile(m: &Module) -> Option<Vec<u64>> {
    let ring = m.ring();
    let g = m.num_gens();
    let rel = span(ring, g, &rows_of(m.presentation()))?;
    let all = all_vectors(ring, g)?;
    Some(killed_counts(ring, &all, &rel))
}

/// The same profile computed arithmetically from invariant factors.
pub fn profile_from_factors(ring: Ring, factors: &[i64]) -> Vec<u64> {
    let k = ring.chain_length().expect("finite chain ring");
    let field = residue_field_size(ring);
    (0..=k)
        .map(|j| {
            factors
                .iter()
                .map(|&d| {
                    let a = if d == 0 { k } else { ring.valuation(d) };
                    field.pow(a.min(j))
                })
                .product()
        })
        .collect()
}

pub fn residue_field_size(ring: Ring) -> u64 {
    match ring {
        Ring::PrimePower { p, .. } | Ring::TruncPoly { p, .. } => p as u64,
        Ring::Integers => panic!("infinite ring"),
    }
}

/// Isomorphism profile of `H_n(C)`, listing cycles and boundaries.
pub fn homology_profile(c: &Complex, n: i64) -> Option<Vec<u64>> {
    let ring = c.ring();
    let here = c.module(n);
    let g = here.num_gens();
    let below = c.module(n - 1);
    let rel_below = span(ring, below.num_gens(), &rows_of(below.presentation()))?;
    let d = c.d(n);
    let cycles: Vec<Vec<i64>> = all_vectors(ring, g)?
        .into_iter()
        .filter(|x| below.num_gens() == 0 || rel_below.contains(&times(ring, x, d.matrix())))
        .collect();
    let mut bound_rows = rows_of(here.presentation());
    bound_rows.extend(rows_of(c.d(n + 1).matrix()));
    let boundaries = span(ring, g, &bound_rows)?;
    Some(killed_counts(ring, &cycles, &boundaries))
}

/// Order of `Hom_R(M, N)`, listing every candidate matrix on generators
/// and keeping those that respect relations, modulo the zero maps.
pub fn hom_order(m: &Module, n: &Module) -> Option<u64> {
    let ring = m.ring();
    let (gm, gn) = (m.num_gens(), n.num_gens());
    let rel_n = span(ring, gn, &rows_of(n.presentation()))?;
    let cands = all_vectors(ring, gm * gn)?;
    let mut good = 0u64;
    let mut null = 0u64;
    for e in cands {
        let f = Matrix::from_rows(ring, gn, &e.chunks(gn.max(1)).take(gm).map(|c| c.to_vec()).collect::<Vec<_>>());
        let respects = (0..m.presentation().rows()).all(|i| rel_n.contains(&times(ring, m.presentation().row(i), &f)));
        if respects {
            good += 1;
            if (0..gm).all(|i| rel_n.contains(&f.row(i).to_vec())) {
                null += 1;
            }
        }
    }
    Some(good / null)
}

fn residue(ring: Ring, a: i64) -> i64 {
    match ring {
        Ring::PrimePower { p, .. } => a % p,
        Ring::TruncPoly { .. } => ring.coeffs(a)[0],
        Ring::Integers => panic!("infinite ring"),
    }
}

fn fp_vectors(p: i64, len: usize) -> Option<Vec<Vec<i64>>> {
    if (p as u64).checked_pow(len as u32)? > LIMIT {
        return None;
    }
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    Some(out)
}

// `m * f` over the residue field, `f` a column vector
fn apply_mod(ring: Ring, p: i64, m: &Matrix, f: &[i64]) -> Vec<i64> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(0, |acc, j| (acc + residue(ring, m.get(i, j)) * f[j]) % p))
        .collect()
}

/// Order of `H^n Hom_R(X, k)` with `k` the residue field at degree 0, from
/// scratch: `Hom(R^a / rel, k)` is the set of `f` in `k^a` killing the
/// relations, and a cochain `f` on `X_n` is a cocycle when `d_{n+1} f = 0`.
pub fn cohomology_into_residue_field(x: &Complex, n: i64) -> Option<u64> {
    let ring = x.ring();
    let p = residue_field_size(ring) as i64;
    let homs = |deg: i64| -> Option<Vec<Vec<i64>>> {
        let m = x.module(deg);
        Some(
            fp_vectors(p, m.num_gens())?
                .into_iter()
                .filter(|f| apply_mod(ring, p, m.presentation(), f).iter().all(|&v| v == 0))
                .collect(),
        )
    };
    let here = homs(n)?;
    let cocycles = here.iter().filter(|f| apply_mod(ring, p, x.d(n + 1).matrix(), f).iter().all(|&v| v == 0)).count();
    let coboundaries: HashSet<Vec<i64>> =
        homs(n - 1)?.iter().map(|g| apply_mod(ring, p, x.d(n).matrix(), g)).collect();
    Some(cocycles as u64 / coboundaries.len() as u64)
}
