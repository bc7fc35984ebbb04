//! Hom and tensor complexes, termwise duals, homotopies, and lifting of
//! chain maps.
//!
//! `Hom(X, Y)_n = sum_p Hom(X_p, Y_{p+n})` with
//! `d(f) = d^Y f - (-1)^n f d^X`, and
//! `(X (x) Y)_n = sum_t X_t (x) Y_{n-t}` with
//! `d(x (x) y) = dx (x) y + (-1)^t x (x) dy`.
//! Supports are finite, so the product in the Hom complex is a sum.

use std::collections::BTreeMap;

use crate::complex::{sign, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{HomModule, Module, Morphism};
use crate::ring::Ring;

#[derive(Clone, Debug)]
struct HomBlock {
    p: i64,
    hom: HomModule,
    offset: usize,
}

/// The complex `Hom(X, Y)` with block bookkeeping.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: Complex,
    x: Complex,
    y: Complex,
    blocks: BTreeMap<i64, Vec<HomBlock>>,
}

impl HomComplex {
    pub fn new(x: &Complex, y: &Complex) -> Result<HomComplex> {
        crate::module::same_ring(x.ring(), y.ring())?;
        let ring = x.ring();
        let mut blocks = BTreeMap::new();
        if x.is_empty_support() || y.is_empty_support() {
            return Ok(HomComplex { complex: Complex::zero(ring), x: x.clone(), y: y.clone(), blocks });
        }
        let (lo, hi) = (y.lo() - x.hi(), y.hi() - x.lo());
        let mut modules = Vec::new();
        for n in lo..=hi {
            let mut bl = Vec::new();
            let mut offset = 0;
            let mut parts = Vec::new();
            for p in x.degrees() {
                if y.in_support(p + n) {
                    let hom = x.module(p).hom(&y.module(p + n))?;
                    let k = hom.module.num_gens();
                    parts.push(hom.module.clone());
                    bl.push(HomBlock { p, hom, offset });
                    offset += k;
                }
            }
            modules.push(Module::direct_sum_all(ring, &parts));
            blocks.insert(n, bl);
        }
        let mut hc = HomComplex { complex: Complex::zero(ring), x: x.clone(), y: y.clone(), blocks };
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let m = hc.differential_matrix(n);
            diffs.push(Morphism::unchecked(
                modules[(n - lo) as usize].clone(),
                modules[(n - lo - 1) as usize].clone(),
                m,
            ));
        }
        hc.complex = Complex::new_unchecked(ring, lo, modules, diffs);
        Ok(hc)
    }

    pub fn source(&self) -> &Complex {
        &self.x
    }

    pub fn target(&self) -> &Complex {
        &self.y
    }

    fn ring(&self) -> Ring {
        self.x.ring()
    }

    fn gens(&self, n: i64) -> usize {
        self.complex.module(n).num_gens()
    }

    fn differential_matrix(&self, n: i64) -> Matrix {
        let ring = self.ring();
        let mut out = Matrix::zeros(ring, self.gens_in(n), self.gens_in(n - 1));
        let empty = Vec::new();
        let src = self.blocks.get(&n).unwrap_or(&empty);
        let tgt = self.blocks.get(&(n - 1)).unwrap_or(&empty);
        let s = ring.from_int(-sign(n));
        for b in src {
            let same = tgt.iter().find(|t| t.p == b.p);
            let next = tgt.iter().find(|t| t.p == b.p + 1);
            let dy = self.y.d(b.p + n);
            let dx = self.x.d(b.p + 1);
            for g in 0..b.hom.module.num_gens() {
                let mut e = vec![0; b.hom.module.num_gens()];
                e[g] = 1;
                let f = b.hom.to_morphism(&e);
                if let Some(t) = same {
                    let v = t.hom.from_matrix(&f.matrix().mul(dy.matrix()));
                    add_into(&mut out, ring, b.offset + g, t.offset, &v);
                }
                if let Some(t) = next {
                    let v = t.hom.from_matrix(&dx.matrix().mul(f.matrix()).scale(s));
                    add_into(&mut out, ring, b.offset + g, t.offset, &v);
                }
            }
        }
        out
    }

    fn gens_in(&self, n: i64) -> usize {
        self.blocks
            .get(&n)
            .map_or(0, |bl| bl.iter().map(|b| b.hom.module.num_gens()).sum())
    }

    /// Splits an element of degree `n` into morphisms `X_p -> Y_{p+n}`.
    pub fn to_maps(&self, n: i64, elem: &[i64]) -> BTreeMap<i64, Morphism> {
        let mut out = BTreeMap::new();
        if let Some(bl) = self.blocks.get(&n) {
            for b in bl {
                let k = b.hom.module.num_gens();
                out.insert(b.p, b.hom.to_morphism(&elem[b.offset..b.offset + k]));
            }
        }
        out
    }

    /// Assembles an element of degree `n` from component matrices; missing
    /// components are zero.
    pub fn from_maps(&self, n: i64, maps: impl Fn(i64) -> Option<Matrix>) -> Vec<i64> {
        let mut out = vec![0; self.gens(n)];
        if let Some(bl) = self.blocks.get(&n) {
            for b in bl {
                if let Some(m) = maps(b.p) {
                    let v = b.hom.from_matrix(&m);
                    out[b.offset..b.offset + v.len()].copy_from_slice(&v);
                }
            }
        }
        out
    }

    /// A chain map `X -> Y` as a degree-zero element.
    pub fn chain_map_element(&self, f: &ChainMap) -> Vec<i64> {
        self.from_maps(0, |p| Some(f.part(p).matrix().clone()))
    }

    /// A degree-zero cycle read back as a chain map.
    pub fn element_chain_map(&self, elem: &[i64]) -> ChainMap {
        let maps = self.to_maps(0, elem);
        let Some((a, b)) = Complex::joint_range(&self.x, &self.y) else {
            return ChainMap::zero(&self.x, &self.y);
        };
        let parts = (a..=b)
            .map(|p| {
                maps.get(&p)
                    .cloned()
                    .unwrap_or_else(|| Morphism::zero(&self.x.module(p), &self.y.module(p)))
            })
            .collect();
        ChainMap::new_unchecked(self.x.clone(), self.y.clone(), a, parts)
    }

    /// Map of Hom complexes induced degreewise by `op`, which receives the
    /// degree, the target block index `p`, and the source components.
    fn induced(
        &self,
        other: &HomComplex,
        op: impl Fn(i64, i64, &BTreeMap<i64, Morphism>) -> Option<Matrix>,
    ) -> ChainMap {
        let ring = self.ring();
        let Some((a, b)) = Complex::joint_range(&self.complex, &other.complex) else {
            return ChainMap::zero(&self.complex, &other.complex);
        };
        let parts = (a..=b)
            .map(|n| {
                let k = self.gens(n);
                let rows: Vec<Vec<i64>> = (0..k)
                    .map(|g| {
                        let mut e = vec![0; k];
                        e[g] = 1;
                        let maps = self.to_maps(n, &e);
                        other.from_maps(n, |p| op(n, p, &maps))
                    })
                    .collect();
                Morphism::unchecked(
                    self.complex.module(n),
                    other.complex.module(n),
                    Matrix::from_rows(ring, other.gens(n), &rows),
                )
            })
            .collect();
        ChainMap::new_unchecked(self.complex.clone(), other.complex.clone(), a, parts)
    }

    /// `Hom(alpha, Y): Hom(X, Y) -> Hom(X', Y)` for `alpha: X' -> X`.
    pub fn precompose(&self, alpha: &ChainMap, other: &HomComplex) -> ChainMap {
        self.induced(other, |_, p, maps| maps.get(&p).map(|f| alpha.part(p).matrix().mul(f.matrix())))
    }

    /// `Hom(X, beta): Hom(X, Y) -> Hom(X, Y')` for `beta: Y -> Y'`.
    pub fn postcompose(&self, beta: &ChainMap, other: &HomComplex) -> ChainMap {
        self.induced(other, |n, p, maps| maps.get(&p).map(|f| f.matrix().mul(beta.part(p + n).matrix())))
    }
}

fn add_into(out: &mut Matrix, ring: Ring, row: usize, col0: usize, v: &[i64]) {
    for (j, &x) in v.iter().enumerate() {
        if x != 0 {
            let cur = out.get(row, col0 + j);
            out.set(row, col0 + j, ring.add(cur, x));
        }
    }
}

/// The Hom complex `Hom(X, Y)`.
pub fn hom_complex(x: &Complex, y: &Complex) -> Result<Complex> {
    Ok(HomComplex::new(x, y)?.complex)
}

/// The tensor complex `X (x) Y`.
pub fn tensor_complex(x: &Complex, y: &Complex) -> Result<Complex> {
    crate::module::same_ring(x.ring(), y.ring())?;
    let ring = x.ring();
    if x.is_empty_support() || y.is_empty_support() {
        return Ok(Complex::zero(ring));
    }
    let (lo, hi) = (x.lo() + y.lo(), x.hi() + y.hi());
    // (t, offset) per degree
    let mut layout: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut modules = Vec::new();
    for n in lo..=hi {
        let mut parts = Vec::new();
        let mut bl = Vec::new();
        let mut off = 0;
        for t in x.degrees() {
            if y.in_support(n - t) {
                let m = x.module(t).tensor(&y.module(n - t))?;
                bl.push((t, off));
                off += m.num_gens();
                parts.push(m);
            }
        }
        modules.push(Module::direct_sum_all(ring, &parts));
        layout.insert(n, bl);
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let src = &modules[(n - lo) as usize];
        let tgt = &modules[(n - lo - 1) as usize];
        let mut m = Matrix::zeros(ring, src.num_gens(), tgt.num_gens());
        let tl = &layout[&(n - 1)];
        for &(t, off) in &layout[&n] {
            let (xt, ys) = (x.module(t), y.module(n - t));
            if let Some(&(_, o2)) = tl.iter().find(|(t2, _)| *t2 == t - 1) {
                let blk = x.d(t).matrix().kron(&Matrix::identity(ring, ys.num_gens()));
                m.paste(off, o2, &blk);
            }
            if let Some(&(_, o2)) = tl.iter().find(|(t2, _)| *t2 == t) {
                let blk = Matrix::identity(ring, xt.num_gens())
                    .kron(y.d(n - t).matrix())
                    .scale(ring.from_int(sign(t)));
                m.paste(off, o2, &blk);
            }
        }
        diffs.push(Morphism::unchecked(src.clone(), tgt.clone(), m));
    }
    Ok(Complex::new_unchecked(ring, lo, modules, diffs))
}

/// Termwise dual `Hom(C, R)`: degree `n` is `(C_{-n})^+`.
pub fn dual_complex(c: &Complex) -> Result<HomComplex> {
    if !c.ring().is_finite() {
        return Err(Error::InfiniteRing("dual complex"));
    }
    let r = Complex::concentrated(&Module::free(c.ring(), 1), 0);
    HomComplex::new(c, &r)
}

/// Dual of a chain map `f: X -> Y` as `Hom(Y, R) -> Hom(X, R)`.
pub fn dual_chain_map(f: &ChainMap, dy: &HomComplex, dx: &HomComplex) -> ChainMap {
    dy.precompose(f, dx)
}

/// `s_n: X_n -> Y_{n+1}` with `f - g = d s + s d`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub f: ChainMap,
    pub g: ChainMap,
    pub parts: BTreeMap<i64, Morphism>,
    /// When set, the identity is only claimed in degrees `<= through`.
    pub through: Option<i64>,
}

impl Homotopy {
    pub fn part(&self, n: i64) -> Morphism {
        self.parts
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Morphism::zero(&self.f.source().module(n), &self.f.target().module(n + 1)))
    }

    /// Re-substitutes into `f_n - g_n = d_{n+1} s_n + s_{n-1} d_n`.
    pub fn verify(&self) -> bool {
        let (x, y) = (self.f.source(), self.f.target());
        let Some((a, b)) = self.f.range() else { return true };
        let b = self.through.map_or(b, |t| b.min(t));
        (a..=b).all(|n| {
            let lhs = self.f.part(n).sub(&self.g.part(n)).unwrap();
            let t1 = self.part(n).matrix().mul(y.d(n + 1).matrix());
            let t2 = x.d(n).matrix().mul(self.part(n - 1).matrix());
            y.module(n).rows_vanish(&lhs.matrix().sub(&t1.add(&t2)))
        })
    }
}

/// A homotopy between `f` and `g`, or `None` when they are not homotopic.
pub fn solve_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::EndpointMismatch("homotopy between maps with different endpoints".to_string()));
    }
    let h = HomComplex::new(f.source(), f.target())?;
    let diff = f.sub(g)?;
    let e = h.chain_map_element(&diff);
    let Some(s) = h.complex.d(1).preimage(&e) else { return Ok(None) };
    let parts = h.to_maps(1, &s);
    let hom = Homotopy { f: f.clone(), g: g.clone(), parts, through: None };
    debug_assert!(hom.verify());
    Ok(Some(hom))
}

/// A homotopy between `f` and `g` valid in degrees `<= t`: components
/// `s_n` for `n <= t` with `f_n - g_n = d s_n + s_{n-1} d` there. Used for
/// resolutions cut off above `t`.
pub fn solve_homotopy_through(f: &ChainMap, g: &ChainMap, t: i64) -> Result<Option<Homotopy>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::EndpointMismatch("homotopy between maps with different endpoints".to_string()));
    }
    let h = HomComplex::new(f.source(), f.target())?;
    let ring = f.ring();
    let keep = |elem: &[i64]| {
        let maps = h.to_maps(0, elem);
        h.from_maps(0, |p| if p <= t { maps.get(&p).map(|m| m.matrix().clone()) } else { None })
    };
    let d1 = h.complex.d(1);
    let rows: Vec<Vec<i64>> = (0..d1.matrix().rows()).map(|i| keep(d1.matrix().row(i))).collect();
    let restricted = Morphism::unchecked(
        h.complex.module(1),
        h.complex.module(0),
        Matrix::from_rows(ring, h.complex.module(0).num_gens(), &rows),
    );
    let e = keep(&h.chain_map_element(&f.sub(g)?));
    let Some(s) = restricted.preimage(&e) else { return Ok(None) };
    let parts = h.to_maps(1, &s).into_iter().filter(|(p, _)| *p <= t).collect();
    let hom = Homotopy { f: f.clone(), g: g.clone(), parts, through: Some(t) };
    debug_assert!(hom.verify());
    Ok(Some(hom))
}

/// Solves for chain maps `u: X -> G` with `u` followed by `phi` equal to `f`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    hxg: HomComplex,
    stacked: Morphism,
    rhs: Vec<i64>,
}

impl LiftProblem {
    pub fn new(f: &ChainMap, phi: &ChainMap) -> Result<LiftProblem> {
        if f.target() != phi.target() {
            return Err(Error::EndpointMismatch("lift target mismatch".to_string()));
        }
        let ring = f.ring();
        let x = f.source();
        let g = phi.source();
        let hxg = HomComplex::new(x, g)?;
        let hxm = HomComplex::new(x, f.target())?;
        let post = hxg.postcompose(phi, &hxm);
        let d0 = hxg.complex.d(0);
        let src = hxg.complex.module(0);
        let tgt = Module::direct_sum_all(ring, &[hxg.complex.module(-1), hxm.complex.module(0)]);
        let mat = Matrix::hstack(ring, src.num_gens(), &[d0.matrix(), post.part(0).matrix()]);
        let stacked = Morphism::unchecked(src, tgt.clone(), mat);
        let mut rhs = vec![0; hxg.complex.module(-1).num_gens()];
        rhs.extend(hxm.chain_map_element(f));
        Ok(LiftProblem { hxg, stacked, rhs })
    }

    pub fn solve(&self) -> Option<ChainMap> {
        let u = self.stacked.preimage(&self.rhs)?;
        Some(self.hxg.element_chain_map(&u))
    }

    /// A lift plus a combination of solutions of the homogeneous system,
    /// with coefficients from `coeffs` (cycled).
    pub fn solve_shifted(&self, coeffs: &[i64]) -> Option<ChainMap> {
        let ring = self.stacked.ring();
        let mut u = self.stacked.preimage(&self.rhs)?;
        let ker = self.stacked.kernel();
        let km = ker.map.matrix();
        for i in 0..km.rows() {
            let c = ring.from_int(coeffs.get(i % coeffs.len().max(1)).copied().unwrap_or(0));
            for (j, x) in u.iter_mut().enumerate() {
                *x = ring.add(*x, ring.mul(c, km.get(i, j)));
            }
        }
        Some(self.hxg.element_chain_map(&u))
    }
}

/// A chain map `u: X -> G` with `phi u = f`, if one exists.
pub fn lift_chain_map(f: &ChainMap, phi: &ChainMap) -> Result<ChainMap> {
    LiftProblem::new(f, phi)?
        .solve()
        .ok_or_else(|| Error::LiftNotFound("no chain map lifts the given map".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::zmod_prime_power(2, 2).unwrap()
    }

    fn d_over_z() -> Complex {
        let r = Ring::Integers;
        let f = Module::free(r, 1);
        Complex::from_matrices(r, 0, vec![f.clone(), f], vec![Matrix::from_entries(r, 1, 1, &[2]).unwrap()]).unwrap()
    }

    #[test]
    fn hom_into_residue_field() {
        let d = d_over_z();
        let k = Complex::concentrated(&Module::cyclic(Ring::Integers, 2), 0);
        let h = hom_complex(&d, &k).unwrap();
        assert_eq!((h.lo(), h.hi()), (-1, 0));
        assert_eq!(h.module(0).order(), Some(2));
        assert_eq!(h.module(-1).order(), Some(2));
        assert!(h.d(0).is_zero());
    }

    #[test]
    fn tensor_unit() {
        let d = d_over_z();
        let r = Complex::concentrated(&Module::free(Ring::Integers, 1), 0);
        let t = tensor_complex(&d, &r).unwrap();
        for n in 0..=1 {
            assert!(t.module(n).is_isomorphic(&d.module(n)).unwrap());
        }
        assert_eq!(t.homology(0).module.invariant_factors(), &[2]);
    }

    #[test]
    fn dual_of_residue_field() {
        let k = Complex::concentrated(&Module::cyclic(z4(), 2), 0);
        let d = dual_complex(&k).unwrap();
        assert_eq!(d.complex.module(0).order(), Some(2));
        assert!(dual_complex(&Complex::zero(z4())).unwrap().complex.is_zero());
        assert_eq!(dual_complex(&d_over_z()).unwrap_err().name(), "InfiniteRing");
    }

    #[test]
    fn homotopy_examples() {
        let d = d_over_z();
        let id = ChainMap::identity(&d);
        let s = solve_homotopy(&id, &id).unwrap().unwrap();
        assert!(s.verify());
        assert!(s.parts.values().all(Morphism::is_zero));
        let zero = ChainMap::zero(&d, &d);
        assert!(solve_homotopy(&zero, &id).unwrap().is_none());
        // the cone of the identity is contractible
        let c = crate::complex::mapping_cone(&id).complex;
        let s = solve_homotopy(&ChainMap::identity(&c), &ChainMap::zero(&c, &c)).unwrap();
        assert!(s.unwrap().verify());
    }

    #[test]
    fn chain_maps_are_hom_cycles() {
        let d = d_over_z();
        let h = HomComplex::new(&d, &d).unwrap();
        let id = ChainMap::identity(&d);
        let e = h.chain_map_element(&id);
        assert!(h.complex.module(-1).is_zero_element(&h.complex.d(0).apply(&e)));
        assert!(h.element_chain_map(&e).equals(&id));
    }

    #[test]
    fn lift_through_identity() {
        let r = z4();
        let f = Module::free(r, 1);
        let two = Matrix::from_entries(r, 1, 1, &[2]).unwrap();
        let p = Complex::from_matrices(r, 0, vec![f.clone(), f.clone(), f], vec![two.clone(), two]).unwrap();
        let id = ChainMap::identity(&p);
        let u = lift_chain_map(&id, &id).unwrap();
        assert!(u.then(&id).unwrap().equals(&id));
    }
}
