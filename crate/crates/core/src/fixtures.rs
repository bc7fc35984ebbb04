//! Seeded random modules, complexes, chain maps and short exact sequences.
//!
//! Complexes are direct sums of small building blocks (modules in one
//! degree, disks, two-term complexes, short exact triples, periodic
//! strings) placed at random degrees, then rewritten degreewise through
//! random invertible base changes so that nothing arrives in normal form.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainMap, Complex, ShortExact};
use crate::matrix::Matrix;
use crate::module::{Module, Morphism};
use crate::ring::Ring;

/// Size limits for generated objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Cyclic summands per module.
    pub gens: usize,
    /// Number of building blocks per complex.
    pub blocks: usize,
    /// Degrees used are `0..span`.
    pub span: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { gens: 2, blocks: 3, span: 3 }
    }
}

pub struct Fixtures {
    ring: Ring,
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

impl Fixtures {
    pub fn new(ring: Ring, seed: u64) -> Fixtures {
        Fixtures { ring, rng: ChaCha8Rng::seed_from_u64(seed), bounds: Bounds::default() }
    }

    pub fn with_bounds(ring: Ring, seed: u64, bounds: Bounds) -> Fixtures {
        Fixtures { ring, rng: ChaCha8Rng::seed_from_u64(seed), bounds }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn element(&mut self) -> i64 {
        match self.ring {
            Ring::PrimePower { p, k } => self.rng.gen_range(0..p.pow(k)),
            Ring::TruncPoly { p, n } => {
                let coeffs: Vec<i64> = (0..n).map(|_| self.rng.gen_range(0..p)).collect();
                self.ring.from_coeffs(&coeffs)
            }
            Ring::Integers => self.rng.gen_range(-3..=3),
        }
    }

    fn unit(&mut self) -> i64 {
        loop {
            let u = self.element();
            if self.ring.is_unit(u) {
                return u;
            }
        }
    }

    /// A nonunit canonical divisor, zero (a free summand) included.
    fn divisor(&mut self) -> i64 {
        match self.ring.chain_length() {
            Some(k) => self.ring.uniformizer_power(self.rng.gen_range(1..=k)),
            None => *[0, 2, 3, 4, 6].choose(&mut self.rng).unwrap(),
        }
    }

    /// Random invertible matrix with its inverse.
    fn invertible(&mut self, n: usize) -> (Matrix, Matrix) {
        let ring = self.ring;
        let mut v = Matrix::identity(ring, n);
        let mut w = Matrix::identity(ring, n);
        if n == 0 {
            return (v, w);
        }
        // over the integers entries compound quickly, so use fewer, unit moves
        let moves = if ring.is_integers() { n } else { 2 * n };
        for _ in 0..moves {
            let i = self.rng.gen_range(0..n);
            let j = self.rng.gen_range(0..n);
            if i != j {
                let c = if ring.is_integers() { *[-1, 1].choose(&mut self.rng).unwrap() } else { self.element() };
                v.add_row_multiple(i, j, c);
                w.add_col_multiple(j, i, ring.neg(c));
            } else {
                let u = self.unit();
                v.scale_row(i, u);
                w.scale_col(i, ring.inv(u));
            }
        }
        (v, w)
    }

    /// A module with between `lo` and `bounds.gens` cyclic summands, with a
    /// scrambled presentation.
    pub fn module_with(&mut self, lo: usize) -> Module {
        let n = self.rng.gen_range(lo..=self.bounds.gens.max(lo));
        let factors: Vec<i64> = (0..n).map(|_| self.divisor()).collect();
        let base = Module::from_factors(self.ring, &factors);
        let (v, _) = self.invertible(n);
        Module::new(self.ring, base.presentation().mul(&v)).expect("same ring")
    }

    pub fn module(&mut self) -> Module {
        self.module_with(0)
    }

    pub fn nonzero_module(&mut self) -> Module {
        loop {
            let m = self.module_with(1);
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// A random well-defined morphism.
    pub fn morphism(&mut self, a: &Module, b: &Module) -> Morphism {
        let h = a.hom(b).expect("same ring");
        let coeffs: Vec<i64> = (0..h.module.num_gens()).map(|_| self.element()).collect();
        h.to_morphism(&coeffs)
    }

    fn block(&mut self, exact_only: bool) -> Complex {
        let ring = self.ring;
        let top = self.rng.gen_range(0..self.bounds.span);
        let mut choice = if exact_only { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..5) };
        if choice == 1 && ring.chain_length() == Some(1) {
            // a field has no nonzero nonunit to build the short exact block from
            choice = 0;
        }
        match choice {
            0 => {
                let m = self.nonzero_module();
                let id = Matrix::identity(ring, m.num_gens());
                Complex::from_matrices(ring, top - 1, vec![m.clone(), m], vec![id]).expect("disk")
            }
            1 => {
                // 0 -> R/(c') -> R -> R/(c) -> 0 with c c' = 0, or 0 -> Z -> Z -> Z/c -> 0
                let c = loop {
                    let d = self.divisor();
                    if d != 0 {
                        break d;
                    }
                };
                let sub = match ring.ann(c) {
                    Some(a) => Module::cyclic(ring, a),
                    None => Module::free(ring, 1),
                };
                let mats = vec![Matrix::from_rows(ring, 1, &[vec![1]]), Matrix::from_rows(ring, 1, &[vec![c]])];
                let mods = vec![Module::cyclic(ring, c), Module::free(ring, 1), sub];
                Complex::from_matrices(ring, top - 2, mods, mats).expect("short exact block")
            }
            2 => Complex::concentrated(&self.nonzero_module(), top),
            3 => {
                let a = self.nonzero_module();
                let b = self.nonzero_module();
                let f = self.morphism(&a, &b);
                Complex::from_matrices(ring, top - 1, vec![b, a], vec![f.matrix().clone()]).expect("two-term")
            }
            _ => {
                // R/(c) -> R/(c) -> R/(c) by x and y with x y in (c)
                let c = self.divisor();
                let len = self.rng.gen_range(2..=3usize);
                let m = Module::cyclic(ring, c);
                let x = self.divisor();
                let y = match ring.chain_length() {
                    Some(_) => ring.colon(c, x),
                    None if c == 0 => 0,
                    None => c,
                };
                let mats = (0..len - 1)
                    .map(|i| Matrix::from_rows(ring, 1, &[vec![if i % 2 == 0 { x } else { y }]]))
                    .collect();
                Complex::from_matrices(ring, top - len as i64 + 1, vec![m; len], mats).expect("string")
            }
        }
    }

    fn scramble(&mut self, c: &Complex) -> Complex {
        if c.is_empty_support() {
            return c.clone();
        }
        let ring = self.ring;
        let bases: Vec<(Matrix, Matrix)> = c.degrees().map(|n| self.invertible(c.module(n).num_gens())).collect();
        let lo = c.lo();
        let modules: Vec<Module> = c
            .degrees()
            .map(|n| {
                let (v, _) = &bases[(n - lo) as usize];
                Module::new(ring, c.module(n).presentation().mul(v)).expect("same ring")
            })
            .collect();
        let mats: Vec<Matrix> = (lo + 1..=c.hi())
            .map(|n| {
                let (_, w) = &bases[(n - lo) as usize];
                let (v, _) = &bases[(n - lo - 1) as usize];
                w.mul(c.d(n).matrix()).mul(v)
            })
            .collect();
        Complex::from_matrices(ring, lo, modules, mats).expect("base change preserves the complex")
    }

    fn assemble(&mut self, exact_only: bool, force_homology: bool) -> Complex {
        let n = self.rng.gen_range(1..=self.bounds.blocks);
        let mut c = Complex::zero(self.ring);
        for _ in 0..n {
            let b = self.block(exact_only);
            c = c.direct_sum(&b).expect("same ring");
        }
        if force_homology {
            let top = self.rng.gen_range(0..self.bounds.span);
            let m = self.nonzero_module();
            c = c.direct_sum(&Complex::concentrated(&m, top)).expect("same ring");
        }
        self.scramble(&c)
    }

    /// A bounded complex with no constraint on its homology.
    pub fn complex(&mut self) -> Complex {
        self.assemble(false, false)
    }

    pub fn exact_complex(&mut self) -> Complex {
        self.assemble(true, false)
    }

    pub fn non_exact_complex(&mut self) -> Complex {
        self.assemble(false, true)
    }

    /// A bounded complex supported in `[0, top]` with nonzero top
    /// component.
    pub fn complex_with_top(&mut self, top: i64) -> Complex {
        let saved = self.bounds;
        self.bounds.span = top + 1;
        let mut c = self.assemble(false, true).window(0, top);
        if c.module(top).is_zero() {
            let m = self.nonzero_module();
            c = c.direct_sum(&Complex::concentrated(&m, top)).expect("same ring");
        }
        self.bounds = saved;
        c.trimmed().window(0.min(c.trimmed().lo()), top)
    }

    /// A null-homotopic chain map `d s + s d` plus, where shapes allow,
    /// nothing else; always a chain map.
    pub fn chain_map(&mut self, x: &Complex, y: &Complex) -> ChainMap {
        let Some((a, b)) = Complex::joint_range(x, y) else {
            return ChainMap::zero(x, y);
        };
        let s: Vec<Morphism> = (a - 1..=b).map(|n| self.morphism(&x.module(n), &y.module(n + 1))).collect();
        let part = |n: i64| -> Matrix {
            let sn = &s[(n - a + 1) as usize];
            let sm = &s[(n - a) as usize];
            sn.matrix().mul(y.d(n + 1).matrix()).add(&x.d(n).matrix().mul(sm.matrix()))
        };
        let mats = (a..=b).map(part).collect();
        ChainMap::from_matrices(x.clone(), y.clone(), a, mats).expect("null-homotopic maps are chain maps")
    }

    /// `0 -> A -> B -> C -> 0` with `B = A + C` degreewise and differential
    /// twisted by `d s - s d` for random `s: C -> A`.
    pub fn hom_exact_sequence(&mut self) -> ShortExact {
        let ring = self.ring;
        let a = self.complex();
        let c = self.complex();
        let (lo, hi) = match (Complex::joint_range(&a, &a), Complex::joint_range(&c, &c)) {
            (Some((p, q)), Some((r, t))) => (p.min(r), q.max(t)),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => (0, 0),
        };
        let s: Vec<Morphism> = (lo - 1..=hi + 1).map(|n| self.morphism(&c.module(n), &a.module(n))).collect();
        let sm = |n: i64| s[(n - lo + 1) as usize].matrix().clone();
        let modules: Vec<Module> = (lo..=hi)
            .map(|n| Module::direct_sum_all(ring, &[a.module(n), c.module(n)]))
            .collect();
        let mats: Vec<Matrix> = (lo + 1..=hi)
            .map(|n| {
                let (ka, kc) = (a.module(n).num_gens(), c.module(n).num_gens());
                let (ka1, kc1) = (a.module(n - 1).num_gens(), c.module(n - 1).num_gens());
                let mut m = Matrix::zeros(ring, ka + kc, ka1 + kc1);
                m.paste(0, 0, a.d(n).matrix());
                m.paste(ka, ka1, c.d(n).matrix());
                // t = s d^A - d^C s in row form
                let t = sm(n).mul(a.d(n).matrix()).sub(&c.d(n).matrix().mul(&sm(n - 1)));
                m.paste(ka, 0, &t);
                m
            })
            .collect();
        let b = Complex::from_matrices(ring, lo, modules, mats).expect("twisted sum is a complex");
        let inc = (lo..=hi)
            .map(|n| {
                let (ka, kc) = (a.module(n).num_gens(), c.module(n).num_gens());
                let mut m = Matrix::zeros(ring, ka, ka + kc);
                m.paste(0, 0, &Matrix::identity(ring, ka));
                m
            })
            .collect();
        let pro = (lo..=hi)
            .map(|n| {
                let (ka, kc) = (a.module(n).num_gens(), c.module(n).num_gens());
                let mut m = Matrix::zeros(ring, ka + kc, kc);
                m.paste(ka, 0, &Matrix::identity(ring, kc));
                m
            })
            .collect();
        let i = ChainMap::from_matrices(a, b.clone(), lo, inc).expect("inclusion");
        let p = ChainMap::from_matrices(b, c, lo, pro).expect("projection");
        ShortExact::new(i, p).expect("split degreewise")
    }
}

/// The catalog rings used by the randomized suites.
pub fn suite_rings() -> Vec<Ring> {
    vec![
        Ring::zmod_prime_power(2, 2).unwrap(),
        Ring::zmod_prime_power(3, 2).unwrap(),
        Ring::trunc_poly(2, 2).unwrap(),
        Ring::trunc_poly(3, 3).unwrap(),
        Ring::Integers,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid_and_deterministic() {
        for ring in suite_rings() {
            let mut f = Fixtures::new(ring, 11);
            let mut g = Fixtures::new(ring, 11);
            for _ in 0..10 {
                let c = f.complex();
                assert_eq!(c, g.complex());
                let e = f.exact_complex();
                assert!(e.is_exact());
                g.exact_complex();
                assert!(!f.non_exact_complex().is_exact());
                g.non_exact_complex();
            }
            let x = f.complex();
            let y = f.complex();
            f.chain_map(&x, &y);
            f.hom_exact_sequence();
        }
    }
}
