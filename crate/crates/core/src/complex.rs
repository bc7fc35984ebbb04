//! Finite-support chain complexes, chain maps, homology, and mapping cones.
//!
//! Differentials lower degree: `d_n: C_n -> C_{n-1}`. Shifts follow
//! `(shift(C, k))_n = C_{n-k}` with differential `(-1)^k d`.

use std::fmt;

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::matrix::Matrix;
use crate::module::{Module, Morphism, PreimageSolver, Subquotient};
use crate::ring::Ring;
use crate::snf::Solver;

/// A chain complex supported on `[lo, hi]` (empty when `hi < lo`).
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    lo: i64,
    modules: Vec<Module>,
    /// `diffs[i]` is `d_{lo+1+i}`.
    diffs: Vec<Morphism>,
}

pub(crate) fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Complex {
    /// Builds a complex from modules in degrees `lo..` and the differentials
    /// `d_{lo+1}, ..., d_hi`, checking that consecutive differentials
    /// compose to zero.
    pub fn new(ring: Ring, lo: i64, modules: Vec<Module>, diffs: Vec<Morphism>) -> Result<Complex> {
        if modules.is_empty() {
            if !diffs.is_empty() {
                return Err(Error::DegreeGap("differentials given for an empty complex".to_string()));
            }
            return Ok(Complex::zero(ring));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::DegreeGap(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for m in &modules {
            crate::module::same_ring(ring, m.ring())?;
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &modules[i + 1] || d.target() != &modules[i] {
                return Err(Error::DegreeGap(format!(
                    "differential at degree {} has wrong endpoints",
                    lo + 1 + i as i64
                )));
            }
        }
        for i in 1..diffs.len() {
            let comp = diffs[i].then_unchecked(&diffs[i - 1]);
            if !comp.is_zero() {
                return Err(Error::NotAComplex(lo + 1 + i as i64));
            }
        }
        Ok(Complex { ring, lo, modules, diffs })
    }

    /// Builds a complex from differential matrices, checking each is a
    /// well-defined morphism.
    pub fn from_matrices(ring: Ring, lo: i64, modules: Vec<Module>, mats: Vec<Matrix>) -> Result<Complex> {
        if mats.len() + 1 != modules.len().max(1) {
            return Err(Error::DegreeGap(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                mats.len()
            )));
        }
        let mut diffs = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            diffs.push(Morphism::new(modules[i + 1].clone(), modules[i].clone(), m)?);
        }
        Complex::new(ring, lo, modules, diffs)
    }

    pub(crate) fn new_unchecked(ring: Ring, lo: i64, modules: Vec<Module>, diffs: Vec<Morphism>) -> Complex {
        debug_assert_eq!(diffs.len() + 1, modules.len().max(1));
        if modules.is_empty() {
            return Complex::zero(ring);
        }
        Complex { ring, lo, modules, diffs }
    }

    pub fn zero(ring: Ring) -> Complex {
        Complex { ring, lo: 0, modules: vec![], diffs: vec![] }
    }

    /// `m` placed in degree `n`.
    pub fn concentrated(m: &Module, n: i64) -> Complex {
        Complex { ring: m.ring(), lo: n, modules: vec![m.clone()], diffs: vec![] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn is_empty_support(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn in_support(&self, n: i64) -> bool {
        n >= self.lo() && n <= self.hi()
    }

    pub fn module(&self, n: i64) -> Module {
        if self.in_support(n) {
            self.modules[(n - self.lo) as usize].clone()
        } else {
            Module::zero(self.ring)
        }
    }

    /// `d_n: C_n -> C_{n-1}`.
    pub fn d(&self, n: i64) -> Morphism {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            Morphism::zero(&self.module(n), &self.module(n - 1))
        }
    }

    /// Whether every component is zero.
    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(Module::is_zero)
    }

    /// Support trimmed to the outermost nonzero components.
    pub fn trimmed(&self) -> Complex {
        let nz: Vec<i64> = self.degrees().filter(|&n| !self.module(n).is_zero()).collect();
        match (nz.first(), nz.last()) {
            (Some(&a), Some(&b)) => self.window(a, b),
            _ => Complex::zero(self.ring),
        }
    }

    /// Hard truncation: components outside `[a, b]` replaced by zero.
    pub fn window(&self, a: i64, b: i64) -> Complex {
        if b < a {
            return Complex::zero(self.ring);
        }
        let modules: Vec<Module> = (a..=b).map(|n| self.module(n)).collect();
        let diffs: Vec<Morphism> = (a + 1..=b).map(|n| self.d(n)).collect();
        Complex::new_unchecked(self.ring, a, modules, diffs)
    }

    /// Soft truncation at `j`: `0 -> C_j(C) -> C_{j-1} -> ...`, where
    /// `C_j(C) = coker d_{j+1}`. Returns the complex and the comparison
    /// map from `C`, a quasi-isomorphism in degrees `<= j`.
    pub fn soft_truncation(&self, j: i64) -> (Complex, ChainMap) {
        let lo = self.lo().min(j);
        let cj = self.boundary_cokernel(j);
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=j {
            modules.push(if n == j { cj.module.clone() } else { self.module(n) });
            if n > lo {
                let d = if n == j {
                    // d_j factors through the cokernel
                    let pre = cj.inverse_on_generators();
                    Morphism::unchecked(cj.module.clone(), self.module(j - 1), pre.mul(self.d(j).matrix()))
                } else {
                    self.d(n)
                };
                diffs.push(d);
            }
        }
        let t = Complex::new_unchecked(self.ring, lo, modules, diffs);
        let mut parts = Vec::new();
        for n in self.lo().min(lo)..=self.hi().max(j) {
            let p = if n == j {
                cj.map.clone()
            } else if n < j {
                Morphism::identity(&self.module(n))
            } else {
                Morphism::zero(&self.module(n), &t.module(n))
            };
            parts.push(p);
        }
        let map = ChainMap::new_unchecked(self.clone(), t.clone(), self.lo().min(lo), parts);
        (t, map)
    }

    /// `shift(C, k)_n = C_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Complex {
        if self.is_empty_support() {
            return self.clone();
        }
        let s = sign(k);
        let diffs = self.diffs.iter().map(|d| if s == 1 { d.clone() } else { d.neg() }).collect();
        Complex { ring: self.ring, lo: self.lo + k, modules: self.modules.clone(), diffs }
    }

    /// `C_j = coker d_{j+1}` with its projection from `C_j`.
    pub fn boundary_cokernel(&self, j: i64) -> Subquotient {
        self.d(j + 1).cokernel()
    }

    pub fn homology(&self, n: i64) -> Homology {
        Homology::compute(self, n)
    }

    /// Largest degree with nonzero homology, `-inf` if exact.
    pub fn sup_h(&self) -> ExtInt {
        self.degrees()
            .rev()
            .find(|&n| !self.homology(n).module.is_zero())
            .map_or(ExtInt::NegInf, ExtInt::Finite)
    }

    /// Smallest degree with nonzero homology, `+inf` if exact.
    pub fn inf_h(&self) -> ExtInt {
        self.degrees()
            .find(|&n| !self.homology(n).module.is_zero())
            .map_or(ExtInt::PosInf, ExtInt::Finite)
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|n| self.homology(n).module.is_zero())
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        crate::module::same_ring(self.ring, other.ring)?;
        if self.is_empty_support() {
            return Ok(other.clone());
        }
        if other.is_empty_support() {
            return Ok(self.clone());
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        let modules: Vec<Module> = (lo..=hi)
            .map(|n| Module::direct_sum_all(self.ring, &[self.module(n), other.module(n)]))
            .collect();
        let diffs: Vec<Morphism> = (lo + 1..=hi)
            .map(|n| {
                let d = self.d(n).direct_sum(&other.d(n));
                Morphism::unchecked(modules[(n - lo) as usize].clone(), modules[(n - lo - 1) as usize].clone(), d.matrix().clone())
            })
            .collect();
        Ok(Complex::new_unchecked(self.ring, lo, modules, diffs))
    }

    /// Union of the supports of two complexes.
    pub(crate) fn joint_range(a: &Complex, b: &Complex) -> Option<(i64, i64)> {
        match (a.is_empty_support(), b.is_empty_support()) {
            (true, true) => None,
            (true, false) => Some((b.lo(), b.hi())),
            (false, true) => Some((a.lo(), a.hi())),
            (false, false) => Some((a.lo().min(b.lo()), a.hi().max(b.hi()))),
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[{}..{}]", self.lo(), self.hi())?;
        for n in self.degrees().rev() {
            write!(f, " {n}:{}", self.module(n))?;
        }
        Ok(())
    }
}

impl Subquotient {
    /// For a cokernel projection: a matrix sending each quotient generator
    /// to a lift in the ambient generators.
    pub(crate) fn inverse_on_generators(&self) -> Matrix {
        let solver = self.map.preimage_solver();
        let k = self.module.num_gens();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                solver.solve(&e).expect("projection is surjective")
            })
            .collect();
        Matrix::from_rows(self.map.ring(), self.map.source().num_gens(), &rows)
    }
}

/// `H_n(C)` as a normalized module with cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub module: Module,
    /// Row `i` is a cycle of `C_n` representing generator `i`.
    pub reps: Matrix,
    /// Solves `x * cycle_gens + y * rels(C_n) = z`.
    cycle_solver: Solver,
    cycle_count: usize,
    /// Cycle-generator coordinates to homology coordinates.
    to_h: Matrix,
}

impl Homology {
    fn compute(c: &Complex, n: i64) -> Homology {
        let ring = c.ring();
        let cn = c.module(n);
        let zn = c.d(n).kernel();
        let zgens = zn.map.matrix().clone();
        let boundary = c.d(n + 1).matrix().clone();
        let rels = Matrix::vstack(ring, cn.num_gens(), &[cn.presentation(), &boundary]);
        let raw = Module::generated_by(&zgens, &rels);
        let (h, to, from) = raw.normalized();
        let reps = from.matrix().mul(&zgens);
        let stacked = Matrix::vstack(ring, cn.num_gens(), &[&zgens, cn.presentation()]);
        Homology {
            degree: n,
            module: h,
            reps,
            cycle_solver: Solver::new(&stacked),
            cycle_count: zgens.rows(),
            to_h: to.matrix().clone(),
        }
    }

    /// Homology class of a cycle `z` of `C_n`.
    pub fn class_of(&self, z: &[i64]) -> Vec<i64> {
        let mut x = self.cycle_solver.solve(z).expect("argument is a cycle");
        x.truncate(self.cycle_count);
        self.module.canonical_element(&self.to_h.apply(&x))
    }
}

/// A chain map; `parts` cover the union of the two supports.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    parts: Vec<Morphism>,
}

impl ChainMap {
    /// Checked constructor from per-degree morphisms starting at `lo`.
    /// Degrees not covered are zero maps.
    pub fn new(source: Complex, target: Complex, lo: i64, parts: Vec<Morphism>) -> Result<ChainMap> {
        let f = ChainMap::assemble(source, target, lo, parts)?;
        f.check()?;
        Ok(f)
    }

    /// Checked constructor from matrices.
    pub fn from_matrices(source: Complex, target: Complex, lo: i64, mats: Vec<Matrix>) -> Result<ChainMap> {
        let mut parts = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            let n = lo + i as i64;
            parts.push(Morphism::new(source.module(n), target.module(n), m)?);
        }
        ChainMap::new(source, target, lo, parts)
    }

    fn assemble(source: Complex, target: Complex, lo: i64, parts: Vec<Morphism>) -> Result<ChainMap> {
        let Some((a, b)) = Complex::joint_range(&source, &target) else {
            return Ok(ChainMap { source, target, lo: 0, parts: vec![] });
        };
        let mut out = Vec::with_capacity((b - a + 1) as usize);
        for n in a..=b {
            let idx = n - lo;
            let p = if idx >= 0 && (idx as usize) < parts.len() {
                let p = parts[idx as usize].clone();
                if p.source() != &source.module(n) || p.target() != &target.module(n) {
                    return Err(Error::ShapeMismatch(format!("chain map component at degree {n}")));
                }
                p
            } else {
                Morphism::zero(&source.module(n), &target.module(n))
            };
            out.push(p);
        }
        for (i, p) in parts.iter().enumerate() {
            let n = lo + i as i64;
            if (n < a || n > b) && !p.is_zero() {
                return Err(Error::ShapeMismatch(format!("chain map component outside support at degree {n}")));
            }
        }
        Ok(ChainMap { source, target, lo: a, parts: out })
    }

    pub(crate) fn new_unchecked(source: Complex, target: Complex, lo: i64, parts: Vec<Morphism>) -> ChainMap {
        let f = ChainMap::assemble(source, target, lo, parts).expect("consistent chain map data");
        debug_assert!(f.check().is_ok(), "chain map condition");
        f
    }

    fn check(&self) -> Result<()> {
        let Some((a, b)) = Complex::joint_range(&self.source, &self.target) else { return Ok(()) };
        for n in a..=b + 1 {
            let left = self.source.d(n).then_unchecked(&self.part(n - 1));
            let right = self.part(n).then_unchecked(&self.target.d(n));
            if !left.equals(&right) {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(())
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let parts = c.degrees().map(|n| Morphism::identity(&c.module(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), lo: c.lo(), parts }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::assemble(source.clone(), target.clone(), 0, vec![]).unwrap()
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn part(&self, n: i64) -> Morphism {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.parts.len() {
            self.parts[idx as usize].clone()
        } else {
            Morphism::zero(&self.source.module(n), &self.target.module(n))
        }
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Complex::joint_range(&self.source, &self.target)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("composition of non-composable chain maps".to_string()));
        }
        let Some((a, b)) = Complex::joint_range(&self.source, &next.target) else {
            return Ok(ChainMap::zero(&self.source, &next.target));
        };
        let parts = (a..=b).map(|n| self.part(n).then_unchecked(&next.part(n))).collect();
        Ok(ChainMap::new_unchecked(self.source.clone(), next.target.clone(), a, parts))
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch("chain maps with different endpoints".to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b).unwrap()).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), lo: self.lo, parts })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.sub(b).unwrap()).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), lo: self.lo, parts })
    }

    pub fn neg(&self) -> ChainMap {
        let parts = self.parts.iter().map(Morphism::neg).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), lo: self.lo, parts }
    }

    /// Equality as maps of complexes.
    pub fn equals(&self, other: &ChainMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a.equals(b))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Morphism::is_zero)
    }

    /// Whether each component is injective, surjective, or bijective.
    pub fn is_degreewise(&self, test: impl Fn(&Morphism) -> bool) -> bool {
        self.parts.iter().all(test)
    }

    /// `H_n(f)` between the homology presentations of source and target.
    pub fn induced(&self, n: i64) -> Morphism {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n);
        induced_between(&hs, &ht, &self.part(n))
    }

    pub fn analyze(&self) -> ChainMapAnalysis {
        let Some((a, b)) = self.range() else {
            return ChainMapAnalysis { induced: vec![], is_quasi_iso: true };
        };
        let induced: Vec<(i64, Morphism)> = (a..=b).map(|n| (n, self.induced(n))).collect();
        let is_quasi_iso = induced.iter().all(|(_, f)| f.is_isomorphism());
        ChainMapAnalysis { induced, is_quasi_iso }
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.analyze().is_quasi_iso
    }

    /// Restriction of the chain map to windows of source and target.
    pub fn window(&self, a: i64, b: i64) -> ChainMap {
        let s = self.source.window(a, b);
        let t = self.target.window(a, b);
        let parts = (a..=b).map(|n| self.part(n)).collect();
        ChainMap::new_unchecked(s, t, a, parts)
    }

    /// Replaces source and target by equal-in-range complexes (used after
    /// re-windowing); component data is kept.
    pub(crate) fn with_endpoints(&self, source: Complex, target: Complex) -> ChainMap {
        let Some((a, b)) = Complex::joint_range(&source, &target) else {
            return ChainMap::zero(&source, &target);
        };
        let parts = (a..=b)
            .map(|n| Morphism::unchecked(source.module(n), target.module(n), self.part(n).matrix().clone()))
            .collect();
        ChainMap::new_unchecked(source, target, a, parts)
    }

    /// `shift(f, k)`: same components, re-indexed.
    pub fn shift(&self, k: i64) -> ChainMap {
        let s = self.source.shift(k);
        let t = self.target.shift(k);
        let parts = self.parts.clone();
        ChainMap::new_unchecked(s, t, self.lo + k, parts)
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

/// Induced map on homology from a map of the underlying components.
pub fn induced_between(hs: &Homology, ht: &Homology, f: &Morphism) -> Morphism {
    let ring = f.ring();
    let rows: Vec<Vec<i64>> = (0..hs.reps.rows()).map(|i| ht.class_of(&f.apply(hs.reps.row(i)))).collect();
    Morphism::unchecked(hs.module.clone(), ht.module.clone(), Matrix::from_rows(ring, ht.module.num_gens(), &rows))
}

#[derive(Clone, Debug)]
pub struct ChainMapAnalysis {
    pub induced: Vec<(i64, Morphism)>,
    pub is_quasi_iso: bool,
}

/// Whether `M1 --alpha--> M2 --beta--> M3` is exact at `M2`.
pub fn exact_at(alpha: &Morphism, beta: &Morphism) -> bool {
    if alpha.target() != beta.source() {
        return false;
    }
    if !alpha.then_unchecked(beta).is_zero() {
        return false;
    }
    let ker = beta.kernel();
    let solver = alpha.preimage_solver();
    (0..ker.map.matrix().rows()).all(|i| solver.solve(ker.map.matrix().row(i)).is_some())
}

/// Mapping cone with component `G_{n+1} + P_n` in degree `n` for
/// `u: P -> G`, differential `(x, y) -> (g x + u y, -f y)`, together with
/// the structure maps `shift(G, -1) -> M(u)`, `x -> ((-1)^n x, 0)`, and
/// `M(u) -> P`, `(x, y) -> (-1)^n y`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

pub fn mapping_cone(u: &ChainMap) -> Cone {
    let ring = u.ring();
    let p = u.source();
    let g = u.target();
    let Some((a, b)) = Complex::joint_range(p, g) else {
        let z = Complex::zero(ring);
        return Cone { complex: z.clone(), incl: ChainMap::zero(&z, &z), proj: ChainMap::zero(&z, &z) };
    };
    // degrees n with G_{n+1} or P_n possibly nonzero
    let (lo, hi) = (a - 1, b);
    let comp = |n: i64| Module::direct_sum_all(ring, &[g.module(n + 1), p.module(n)]);
    let modules: Vec<Module> = (lo..=hi).map(comp).collect();
    let diffs: Vec<Morphism> = (lo + 1..=hi)
        .map(|n| {
            let (gn1, pn, gn, pn1) = (g.module(n + 1), p.module(n), g.module(n), p.module(n - 1));
            let mut m = Matrix::zeros(ring, gn1.num_gens() + pn.num_gens(), gn.num_gens() + pn1.num_gens());
            m.paste(0, 0, g.d(n + 1).matrix());
            m.paste(gn1.num_gens(), 0, u.part(n).matrix());
            m.paste(gn1.num_gens(), gn.num_gens(), &p.d(n).matrix().neg());
            Morphism::unchecked(modules[(n - lo) as usize].clone(), modules[(n - lo - 1) as usize].clone(), m)
        })
        .collect();
    let cone = Complex::new_unchecked(ring, lo, modules, diffs);
    let gs = g.shift(-1);
    let incl_parts: Vec<Morphism> = (lo..=hi)
        .map(|n| {
            let (gn1, pn) = (g.module(n + 1), p.module(n));
            let mut m = Matrix::zeros(ring, gn1.num_gens(), gn1.num_gens() + pn.num_gens());
            m.paste(0, 0, &Matrix::identity(ring, gn1.num_gens()).scale(ring.from_int(sign(n))));
            Morphism::unchecked(gs.module(n), cone.module(n), m)
        })
        .collect();
    let proj_parts: Vec<Morphism> = (lo..=hi)
        .map(|n| {
            let (gn1, pn) = (g.module(n + 1), p.module(n));
            let mut m = Matrix::zeros(ring, gn1.num_gens() + pn.num_gens(), pn.num_gens());
            m.paste(gn1.num_gens(), 0, &Matrix::identity(ring, pn.num_gens()).scale(ring.from_int(sign(n))));
            Morphism::unchecked(cone.module(n), p.module(n), m)
        })
        .collect();
    let incl = ChainMap::new_unchecked(gs, cone.clone(), lo, incl_parts);
    let proj = ChainMap::new_unchecked(cone.clone(), p.clone(), lo, proj_parts);
    Cone { complex: cone, incl, proj }
}

/// A short exact sequence of complexes `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub i: ChainMap,
    pub p: ChainMap,
}

impl ShortExact {
    /// Checks degreewise exactness: `i` injective, `p` surjective, and
    /// `im i = ker p` in every degree.
    pub fn new(i: ChainMap, p: ChainMap) -> Result<ShortExact> {
        if i.target() != p.source() {
            return Err(Error::EndpointMismatch("middle terms differ".to_string()));
        }
        let ses = ShortExact { i, p };
        if let Some(n) = ses.failing_degree() {
            return Err(Error::NotWellDefined(format!("sequence is not exact at degree {n}")));
        }
        Ok(ses)
    }

    fn failing_degree(&self) -> Option<i64> {
        let (a, b) = Complex::joint_range(self.i.source(), self.p.target())
            .map(|(a, b)| {
                let (c, d) = Complex::joint_range(self.i.target(), self.i.target()).unwrap_or((a, b));
                (a.min(c), b.max(d))
            })
            .or_else(|| Complex::joint_range(self.i.target(), self.i.target()))?;
        (a..=b).find(|&n| {
            let (i, p) = (self.i.part(n), self.p.part(n));
            !(i.is_injective() && p.is_surjective() && exact_at(&i, &p))
        })
    }

    /// Connecting map `H_n(C) -> H_{n-1}(A)` by the snake construction.
    pub fn connecting(&self, n: i64) -> Morphism {
        let (a, b, c) = (self.i.source(), self.i.target(), self.p.target());
        let hc = c.homology(n);
        let ha = a.homology(n - 1);
        let lift: PreimageSolver = self.p.part(n).preimage_solver();
        let pull: PreimageSolver = self.i.part(n - 1).preimage_solver();
        let db = b.d(n);
        let rows: Vec<Vec<i64>> = (0..hc.reps.rows())
            .map(|k| {
                let y = lift.solve(hc.reps.row(k)).expect("degreewise surjective");
                let z = db.apply(&y);
                let x = pull.solve(&z).expect("boundary of a lift lies in the subcomplex");
                ha.class_of(&x)
            })
            .collect();
        Morphism::unchecked(hc.module.clone(), ha.module.clone(), Matrix::from_rows(a.ring(), ha.module.num_gens(), &rows))
    }

    /// The long exact homology sequence over `[lo, hi]`, as consecutive
    /// maps `H_n(A) -> H_n(B) -> H_n(C) -> H_{n-1}(A) -> ...` from the top.
    pub fn long_exact_sequence(&self, lo: i64, hi: i64) -> Vec<Morphism> {
        let mut maps = Vec::new();
        for n in (lo..=hi).rev() {
            maps.push(self.i.induced(n));
            maps.push(self.p.induced(n));
            if n > lo {
                maps.push(self.connecting(n));
            }
        }
        maps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d_over_z() -> Complex {
        let r = Ring::Integers;
        let f = Module::free(r, 1);
        Complex::from_matrices(r, 0, vec![f.clone(), f], vec![Matrix::from_entries(r, 1, 1, &[2]).unwrap()]).unwrap()
    }

    fn periodic_z4(len: usize) -> Complex {
        let r = Ring::zmod_prime_power(2, 2).unwrap();
        let f = Module::free(r, 1);
        let two = Matrix::from_entries(r, 1, 1, &[2]).unwrap();
        Complex::from_matrices(r, 0, vec![f; len], vec![two; len - 1]).unwrap()
    }

    #[test]
    fn build_examples() {
        let d = d_over_z();
        assert_eq!((d.lo(), d.hi()), (0, 1));
        let r = Ring::Integers;
        let f = Module::free(r, 1);
        let two = Matrix::from_entries(r, 1, 1, &[2]).unwrap();
        let e = Complex::from_matrices(r, 0, vec![f.clone(), f.clone(), f], vec![two.clone(), two]).unwrap_err();
        assert_eq!(e, Error::NotAComplex(2));
        let s = d.shift(1);
        assert_eq!((s.lo(), s.hi()), (1, 2));
    }

    #[test]
    fn homology_examples() {
        let d = d_over_z();
        assert_eq!(d.homology(0).module.invariant_factors(), &[2]);
        assert!(d.homology(1).module.is_zero());
        assert_eq!(d.sup_h(), ExtInt::Finite(0));
        assert_eq!(Complex::zero(Ring::Integers).sup_h(), ExtInt::NegInf);
        let p = periodic_z4(5);
        assert!((1..4).all(|n| p.homology(n).module.is_zero()));
        assert!(!p.homology(0).module.is_zero());
        assert_eq!(d.boundary_cokernel(0).module.invariant_factors(), &[2]);
        assert_eq!(d.boundary_cokernel(1).module.invariant_factors(), &[0]);
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let r = Ring::zmod_prime_power(2, 2).unwrap();
        let k = Complex::concentrated(&Module::cyclic(r, 2), 0);
        let c = mapping_cone(&ChainMap::identity(&k));
        assert!(c.complex.is_exact());
        let z = mapping_cone(&ChainMap::zero(&k, &k));
        assert_eq!(z.complex.homology(0).module.order(), Some(2));
        assert_eq!(z.complex.homology(-1).module.order(), Some(2));
    }

    #[test]
    fn cone_sequence_is_exact() {
        let p = periodic_z4(4);
        let r = p.ring();
        let k = Complex::concentrated(&Module::cyclic(r, 2), 0);
        let aug = ChainMap::from_matrices(p.clone(), k, 0, vec![Matrix::identity(r, 1)]).unwrap();
        assert!(aug.analyze().induced[0].1.is_isomorphism());
        let cone = mapping_cone(&aug);
        for n in -1..=2 {
            assert!(cone.complex.homology(n).module.is_zero(), "degree {n}");
        }
        let ses = ShortExact::new(cone.incl.clone(), cone.proj.clone()).unwrap();
        let maps = ses.long_exact_sequence(-1, 3);
        for w in maps.windows(2) {
            assert!(exact_at(&w[0], &w[1]));
        }
    }

    #[test]
    fn soft_truncation_quasi_iso_below() {
        let p = periodic_z4(4);
        let (t, map) = p.soft_truncation(1);
        assert_eq!(t.hi(), 1);
        assert!(map.induced(0).is_isomorphism());
        assert!(map.induced(1).is_isomorphism());
    }
}
