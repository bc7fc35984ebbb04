//! Finitely presented modules and their morphisms.
//!
//! A module is `R^gens / rowspace(presentation)`: rows of the presentation
//! are relations among the generators. Elements are row vectors of
//! generator coefficients; a morphism is a `source.gens x target.gens`
//! matrix acting on the right.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::snf::{matrix_normal_form, Solver};

#[derive(Debug)]
struct NormalData {
    /// Non-unit invariant factors; `0` marks a free summand.
    factors: Vec<i64>,
    /// `gens x k`: generator coordinates to normal coordinates.
    to_normal: Matrix,
    /// `k x gens`: normal coordinates back to generators.
    from_normal: Matrix,
}

struct Inner {
    ring: Ring,
    gens: usize,
    presentation: Matrix,
    normal: OnceLock<NormalData>,
}

/// A finitely presented module (cheap to clone).
#[derive(Clone)]
pub struct Module(Arc<Inner>);

/// Reduces `c` to the canonical representative of its class mod `(d)`.
pub fn reduce_mod(ring: Ring, c: i64, d: i64) -> i64 {
    if d == 0 {
        return c;
    }
    match ring {
        Ring::Integers => c.rem_euclid(d),
        // d is a power of the uniformizer p^v, and the encodings of both
        // chain-ring families make reduction mod (pi^v) an integer remainder
        _ => c % d,
    }
}

impl Module {
    /// Module presented by `presentation` (relations as rows).
    pub fn new(ring: Ring, presentation: Matrix) -> Result<Module> {
        if presentation.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "presentation over {} for a module over {ring}",
                presentation.ring()
            )));
        }
        Ok(Module::raw(presentation))
    }

    fn raw(presentation: Matrix) -> Module {
        Module(Arc::new(Inner {
            ring: presentation.ring(),
            gens: presentation.cols(),
            presentation,
            normal: OnceLock::new(),
        }))
    }

    pub fn free(ring: Ring, rank: usize) -> Module {
        Module::raw(Matrix::zeros(ring, 0, rank))
    }

    pub fn zero(ring: Ring) -> Module {
        Module::free(ring, 0)
    }

    /// `R/(d)` for a canonical element `d`.
    pub fn cyclic(ring: Ring, d: i64) -> Module {
        debug_assert!(ring.is_canonical(d));
        Module::from_factors(ring, &[d])
    }

    /// `R/(d_1) + ... + R/(d_k)` on `k` generators; zero entries are free.
    pub fn from_factors(ring: Ring, factors: &[i64]) -> Module {
        let k = factors.len();
        let mut rows = Vec::new();
        for (j, &d) in factors.iter().enumerate() {
            if d != 0 {
                let mut r = vec![0; k];
                r[j] = d;
                rows.push(r);
            }
        }
        Module::raw(Matrix::from_rows(ring, k, &rows))
    }

    /// Submodule of `R^m / rowspace(rels)` generated by the rows of `gens`,
    /// presented on those generators.
    pub fn generated_by(gens: &Matrix, rels: &Matrix) -> Module {
        let ring = gens.ring();
        let k = gens.rows();
        let stacked = Matrix::vstack(ring, gens.cols(), &[gens, rels]);
        let ker = Solver::new(&stacked).left_kernel();
        let idx: Vec<usize> = (0..k).collect();
        let rel = ker.select_cols(&idx);
        Module::raw(rel)
    }

    pub fn ring(&self) -> Ring {
        self.0.ring
    }

    pub fn num_gens(&self) -> usize {
        self.0.gens
    }

    pub fn presentation(&self) -> &Matrix {
        &self.0.presentation
    }

    fn normal(&self) -> &NormalData {
        self.0.normal.get_or_init(|| {
            let ring = self.ring();
            if ring.is_integers() {
                let c = crate::zlattice::cokernel(&self.0.presentation);
                return NormalData { factors: c.factors, to_normal: c.to, from_normal: c.from };
            }
            let rep = matrix_normal_form(&self.0.presentation);
            let m = self.0.gens;
            let mut keep = Vec::new();
            let mut factors = Vec::new();
            for j in 0..m {
                let d = rep.diagonal.get(j).copied().unwrap_or(0);
                if !ring.is_unit(d) {
                    keep.push(j);
                    factors.push(d);
                }
            }
            NormalData {
                factors,
                to_normal: rep.right.select_cols(&keep),
                from_normal: rep.right_inv.select_rows(&keep),
            }
        })
    }

    /// Canonical invariant factors (non-units, divisor chain, `0` = free).
    pub fn invariant_factors(&self) -> &[i64] {
        &self.normal().factors
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors().iter().all(|&d| d == 0)
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors().iter().filter(|&&d| d == 0).count()
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        let ring = self.ring();
        let mut n: u128 = 1;
        for &d in self.invariant_factors() {
            n = n.checked_mul(ring.cyclic_order(d)? as u128)?;
        }
        Some(n)
    }

    pub fn is_isomorphic(&self, other: &Module) -> Result<bool> {
        same_ring(self.ring(), other.ring())?;
        Ok(self.invariant_factors() == other.invariant_factors())
    }

    /// The diagonal module with the same invariant factors, together with
    /// mutually inverse isomorphisms `self -> normal` and `normal -> self`.
    pub fn normalized(&self) -> (Module, Morphism, Morphism) {
        let nd = self.normal();
        let n = Module::from_factors(self.ring(), &nd.factors);
        let to = Morphism::unchecked(self.clone(), n.clone(), nd.to_normal.clone());
        let from = Morphism::unchecked(n.clone(), self.clone(), nd.from_normal.clone());
        (n, to, from)
    }

    /// Coordinates of `x` in the normal decomposition, reduced.
    pub fn normal_coords(&self, x: &[i64]) -> Vec<i64> {
        let nd = self.normal();
        let ring = self.ring();
        nd.to_normal
            .apply(x)
            .into_iter()
            .zip(&nd.factors)
            .map(|(c, &d)| reduce_mod(ring, c, d))
            .collect()
    }

    /// Whether the element `x` (generator coordinates) is zero.
    pub fn is_zero_element(&self, x: &[i64]) -> bool {
        self.normal_coords(x).iter().all(|&c| c == 0)
    }

    /// A canonical representative of the class of `x`.
    pub fn canonical_element(&self, x: &[i64]) -> Vec<i64> {
        self.normal().from_normal.apply(&self.normal_coords(x))
    }

    /// Whether every row of `m` (as an element) is zero.
    pub fn rows_vanish(&self, m: &Matrix) -> bool {
        (0..m.rows()).all(|i| self.is_zero_element(m.row(i)))
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        same_ring(self.ring(), other.ring())?;
        Ok(Module::direct_sum_all(self.ring(), &[self.clone(), other.clone()]))
    }

    pub fn direct_sum_all(ring: Ring, parts: &[Module]) -> Module {
        let pres: Vec<&Matrix> = parts.iter().map(|m| m.presentation()).collect();
        Module::raw(Matrix::block_diag(ring, &pres))
    }

    /// Tensor product, generators `(i, j)` ordered as `i * n + j`.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        same_ring(self.ring(), other.ring())?;
        let ring = self.ring();
        let (m, n) = (self.num_gens(), other.num_gens());
        let a = self.presentation().kron(&Matrix::identity(ring, n));
        let b = Matrix::identity(ring, m).kron(other.presentation());
        Ok(Module::raw(Matrix::vstack(ring, m * n, &[&a, &b])))
    }

    /// Hom module together with the dictionary between its elements and
    /// morphism matrices.
    pub fn hom(&self, other: &Module) -> Result<HomModule> {
        same_ring(self.ring(), other.ring())?;
        Ok(HomModule::new(self, other))
    }

    /// `Hom(M, R)`. Over the finite catalog rings (self-injective, local
    /// factors) this agrees with the character dual for finite modules.
    pub fn dual(&self) -> Result<HomModule> {
        if !self.ring().is_finite() {
            return Err(Error::InfiniteRing("character dual"));
        }
        Ok(HomModule::new(self, &Module::free(self.ring(), 1)))
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.presentation == other.0.presentation
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({} gens, {:?})", self.num_gens(), self.presentation())
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        let fs = self.invariant_factors();
        if fs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = fs
            .iter()
            .map(|&d| if d == 0 { "R".to_string() } else { format!("R/({})", ring.format_elem(d)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn same_ring(a: Ring, b: Ring) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

/// A module map `source -> target`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: Matrix,
}

/// A submodule or quotient with its structure map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: Module,
    /// Inclusion into the ambient module (kernel, image) or projection onto
    /// the quotient (cokernel).
    pub map: Morphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Kernel,
    Image,
    Cokernel,
}

impl Morphism {
    /// Checked constructor: shapes, rings, and that relations map to zero.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Morphism> {
        same_ring(source.ring(), target.ring())?;
        same_ring(source.ring(), matrix.ring())?;
        if matrix.rows() != source.num_gens() || matrix.cols() != target.num_gens() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.num_gens(),
                target.num_gens()
            )));
        }
        let images = source.presentation().mul(&matrix);
        if !target.rows_vanish(&images) {
            return Err(Error::NotWellDefined(
                "a relation of the source does not map to zero".to_string(),
            ));
        }
        Ok(Morphism { source, target, matrix })
    }

    pub(crate) fn unchecked(source: Module, target: Module, matrix: Matrix) -> Morphism {
        debug_assert_eq!(matrix.rows(), source.num_gens());
        debug_assert_eq!(matrix.cols(), target.num_gens());
        Morphism { source, target, matrix }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism::unchecked(m.clone(), m.clone(), Matrix::identity(m.ring(), m.num_gens()))
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism::unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.ring(), source.num_gens(), target.num_gens()),
        )
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.apply(x)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target != next.source {
            return Err(Error::ShapeMismatch("composition of non-composable maps".to_string()));
        }
        Ok(Morphism::unchecked(self.source.clone(), next.target.clone(), self.matrix.mul(&next.matrix)))
    }

    pub(crate) fn then_unchecked(&self, next: &Morphism) -> Morphism {
        Morphism::unchecked(self.source.clone(), next.target.clone(), self.matrix.mul(&next.matrix))
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_parallel(other)?;
        Ok(Morphism::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.check_parallel(other)?;
        Ok(Morphism::unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn neg(&self) -> Morphism {
        Morphism::unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: i64) -> Morphism {
        Morphism::unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    fn check_parallel(&self, other: &Morphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("maps with different endpoints".to_string()));
        }
        Ok(())
    }

    /// Whether the map is zero as a map of modules.
    pub fn is_zero(&self) -> bool {
        self.target.rows_vanish(&self.matrix)
    }

    /// Equality as maps of modules (not as matrices).
    pub fn equals(&self, other: &Morphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.target.rows_vanish(&self.matrix.sub(&other.matrix))
    }

    /// Some `x` with `f(x) = y` in the target, if `y` lies in the image.
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        let stacked = Matrix::vstack(self.ring(), self.target.num_gens(), &[&self.matrix, self.target.presentation()]);
        crate::snf::solve_once(&stacked, y).map(|mut x| {
            x.truncate(self.source.num_gens());
            x
        })
    }

    /// Reusable solver for repeated preimage queries.
    pub fn preimage_solver(&self) -> PreimageSolver {
        let ring = self.ring();
        let stacked = Matrix::vstack(ring, self.target.num_gens(), &[&self.matrix, self.target.presentation()]);
        PreimageSolver { solver: Solver::new(&stacked), gens: self.source.num_gens() }
    }

    pub fn subquotient(&self, part: Part) -> Subquotient {
        match part {
            Part::Kernel => self.kernel(),
            Part::Image => self.image(),
            Part::Cokernel => self.cokernel(),
        }
    }

    /// Kernel, normalized, with its inclusion into the source.
    pub fn kernel(&self) -> Subquotient {
        let ring = self.ring();
        let stacked = Matrix::vstack(ring, self.target.num_gens(), &[&self.matrix, self.target.presentation()]);
        let ker = Solver::new(&stacked).left_kernel();
        let idx: Vec<usize> = (0..self.source.num_gens()).collect();
        let gens = ker.select_cols(&idx);
        submodule(&self.source, gens)
    }

    /// Image, normalized, with its inclusion into the target.
    pub fn image(&self) -> Subquotient {
        submodule(&self.target, self.matrix.clone())
    }

    /// Cokernel, normalized, with the projection from the target.
    pub fn cokernel(&self) -> Subquotient {
        let ring = self.ring();
        let pres = Matrix::vstack(ring, self.target.num_gens(), &[self.target.presentation(), &self.matrix]);
        let raw = Module::raw(pres);
        let (n, to, _) = raw.normalized();
        let map = Morphism::unchecked(self.target.clone(), n.clone(), to.matrix);
        Subquotient { module: n, map }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let solver = self.preimage_solver();
        let mut rows = Vec::with_capacity(self.target.num_gens());
        for j in 0..self.target.num_gens() {
            let mut e = vec![0; self.target.num_gens()];
            e[j] = 1;
            rows.push(solver.solve(&e)?);
        }
        let m = Matrix::from_rows(self.ring(), self.source.num_gens(), &rows);
        Some(Morphism::unchecked(self.target.clone(), self.source.clone(), m))
    }

    pub fn direct_sum(&self, other: &Morphism) -> Morphism {
        let ring = self.ring();
        Morphism::unchecked(
            Module::direct_sum_all(ring, &[self.source.clone(), other.source.clone()]),
            Module::direct_sum_all(ring, &[self.target.clone(), other.target.clone()]),
            Matrix::block_diag(ring, &[&self.matrix, &other.matrix]),
        )
    }

    /// `f (x) g` between tensor products of the endpoints.
    pub fn tensor(&self, other: &Morphism) -> Result<Morphism> {
        Ok(Morphism::unchecked(
            self.source.tensor(&other.source)?,
            self.target.tensor(&other.target)?,
            self.matrix.kron(&other.matrix),
        ))
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

/// Solves `f(x) = y` for a fixed `f`.
#[derive(Clone, Debug)]
pub struct PreimageSolver {
    solver: Solver,
    gens: usize,
}

impl PreimageSolver {
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        self.solver.solve(y).map(|mut x| {
            x.truncate(self.gens);
            x
        })
    }
}

/// Submodule of `ambient` generated by the rows of `gens`, normalized.
pub(crate) fn submodule(ambient: &Module, gens: Matrix) -> Subquotient {
    let raw = Module::generated_by(&gens, ambient.presentation());
    let (n, _, from) = raw.normalized();
    let incl = from.matrix.mul(&gens);
    Subquotient { module: n.clone(), map: Morphism::unchecked(n, ambient.clone(), incl) }
}

/// `Hom(M, N)` presented as a module, with conversions to and from
/// morphism matrices.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Module,
    source: Module,
    target: Module,
    /// Normalizations of source and target.
    src_to: Matrix,
    tgt_from: Matrix,
    src_from: Matrix,
    tgt_to: Matrix,
    tgt_factors: Vec<i64>,
    /// For each generator: `(i, j, y0)`, the map sending normal generator
    /// `i` of the source to `y0` times normal generator `j` of the target.
    basis: Vec<(usize, usize, i64)>,
}

impl HomModule {
    fn new(source: &Module, target: &Module) -> HomModule {
        let ring = source.ring();
        let sf = source.invariant_factors().to_vec();
        let tf = target.invariant_factors().to_vec();
        let mut basis = Vec::new();
        let mut rels = Vec::new();
        for (i, &a) in sf.iter().enumerate() {
            for (j, &b) in tf.iter().enumerate() {
                let y0 = ring.colon(b, a);
                if reduce_mod(ring, y0, b) == 0 {
                    continue;
                }
                let c = ring.colon(b, y0);
                if ring.is_unit(c) {
                    continue;
                }
                basis.push((i, j, y0));
                rels.push(c);
            }
        }
        let sn = source.normal();
        let tn = target.normal();
        HomModule {
            module: Module::from_factors(ring, &rels),
            source: source.clone(),
            target: target.clone(),
            src_to: sn.to_normal.clone(),
            tgt_from: tn.from_normal.clone(),
            src_from: sn.from_normal.clone(),
            tgt_to: tn.to_normal.clone(),
            tgt_factors: tf,
            basis,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    /// The morphism represented by an element of the Hom module.
    pub fn to_morphism(&self, h: &[i64]) -> Morphism {
        let ring = self.module.ring();
        let mut f = Matrix::zeros(ring, self.src_to.cols(), self.tgt_from.rows());
        for (&(i, j, y0), &c) in self.basis.iter().zip(h) {
            let v = ring.add(f.get(i, j), ring.mul(c, y0));
            f.set(i, j, v);
        }
        let m = self.src_to.mul(&f).mul(&self.tgt_from);
        Morphism::unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// The element of the Hom module representing `f`.
    pub fn from_morphism(&self, f: &Morphism) -> Vec<i64> {
        self.from_matrix(f.matrix())
    }

    pub fn from_matrix(&self, f: &Matrix) -> Vec<i64> {
        let ring = self.module.ring();
        let fnorm = self.src_from.mul(f).mul(&self.tgt_to);
        let hf = self.module.invariant_factors_raw();
        self.basis
            .iter()
            .enumerate()
            .map(|(k, &(i, j, y0))| {
                let e = reduce_mod(ring, fnorm.get(i, j), self.tgt_factors[j]);
                let q = ring.divide(e, y0).expect("morphism entries are multiples of the hom generator");
                reduce_mod(ring, q, hf[k])
            })
            .collect()
    }

    /// Matrix (`hom gens x other.hom gens`) of the map of Hom modules
    /// induced by `op` on morphism matrices.
    pub fn induced(&self, other: &HomModule, op: impl Fn(&Matrix) -> Matrix) -> Morphism {
        let ring = self.module.ring();
        let k = self.module.num_gens();
        let mut rows = Vec::with_capacity(k);
        for g in 0..k {
            let mut e = vec![0; k];
            e[g] = 1;
            let f = self.to_morphism(&e);
            rows.push(other.from_matrix(&op(f.matrix())));
        }
        Morphism::unchecked(
            self.module.clone(),
            other.module.clone(),
            Matrix::from_rows(ring, other.module.num_gens(), &rows),
        )
    }
}

impl Module {
    /// Diagonal entries of a module built by `from_factors`, including any
    /// zero (free) entries, in generator order.
    fn invariant_factors_raw(&self) -> Vec<i64> {
        let p = self.presentation();
        let mut out = vec![0; self.num_gens()];
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                if p.get(i, j) != 0 {
                    out[j] = p.get(i, j);
                }
            }
        }
        out
    }
}

/// `Hom(f, N): Hom(M', N) -> Hom(M, N)` for `f: M -> M'`.
pub fn hom_pre(f: &Morphism, hm_prime: &HomModule, hm: &HomModule) -> Morphism {
    let fm = f.matrix().clone();
    hm_prime.induced(hm, move |g| fm.mul(g))
}

/// `Hom(M, g): Hom(M, N) -> Hom(M, N')` for `g: N -> N'`.
pub fn hom_post(g: &Morphism, hm: &HomModule, hm_prime: &HomModule) -> Morphism {
    let gm = g.matrix().clone();
    hm.induced(hm_prime, move |f| f.mul(&gm))
}

/// Dual of a morphism `f: M -> N`, as the map `N* -> M*`.
pub fn dual_map(f: &Morphism, dn: &HomModule, dm: &HomModule) -> Morphism {
    hom_pre(f, dn, dm)
}

/// Evaluation map `M -> M**`.
pub fn double_dual_evaluation(m: &Module) -> Result<(HomModule, HomModule, Morphism)> {
    let d1 = m.dual()?;
    let d2 = d1.module.dual()?;
    let ring = m.ring();
    let k = d1.module.num_gens();
    let phis: Vec<Matrix> = (0..k)
        .map(|g| {
            let mut e = vec![0; k];
            e[g] = 1;
            d1.to_morphism(&e).matrix().clone()
        })
        .collect();
    let mut rows = Vec::with_capacity(m.num_gens());
    for x in 0..m.num_gens() {
        let col: Vec<i64> = phis.iter().map(|p| p.get(x, 0)).collect();
        let as_map = Matrix::from_canonical(ring, k, 1, col).expect("canonical entries");
        rows.push(d2.from_matrix(&as_map));
    }
    let ev = Morphism::unchecked(m.clone(), d2.module.clone(), Matrix::from_rows(ring, d2.module.num_gens(), &rows));
    Ok((d1, d2, ev))
}
