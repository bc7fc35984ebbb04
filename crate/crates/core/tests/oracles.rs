//! Engine results against brute-force enumeration over finite rings.

mod common;

use common::*;
use gorenstein::classes::{module_dimension, syzygy, ModuleDim};
use gorenstein::cohomology::{bar_data, bar_contraction, compare_bar_tate, ext_groups, ExtOptions, Theory};
use gorenstein::complex::Complex;
use gorenstein::extint::ExtInt;
use gorenstein::fixtures::{Bounds, Fixtures};
use gorenstein::homcx::{dual_complex, HomComplex};
use gorenstein::matrix::Matrix;
use gorenstein::module::{Module, Morphism};
use gorenstein::resolution::{complete_resolution, dg_projective_resolution, special_gp_precover, PrecoverPolicy};
use gorenstein::ring::Ring;

fn z4() -> Ring {
    Ring::zmod_prime_power(2, 2).unwrap()
}

fn finite_rings() -> Vec<Ring> {
    vec![
        z4(),
        Ring::zmod_prime_power(3, 2).unwrap(),
        Ring::trunc_poly(2, 2).unwrap(),
        Ring::trunc_poly(3, 3).unwrap(),
    ]
}

fn small() -> Bounds {
    Bounds { gens: 2, blocks: 2, span: 3 }
}

fn engine_profile(m: &Module) -> Vec<u64> {
    profile_from_factors(m.ring(), m.invariant_factors())
}

#[test]
fn cyclic_presentations() {
    let r = z4();
    let m = Module::new(r, Matrix::from_rows(r, 1, &[vec![2]])).unwrap();
    assert_eq!(m.invariant_factors(), &[2]);
    assert_eq!(module_order(&m), Some(2));
    assert_eq!(m.order(), Some(2));

    let t = Ring::trunc_poly(2, 2).unwrap();
    let x = t.from_coeffs(&[0, 1]);
    let k = Module::new(t, Matrix::from_rows(t, 1, &[vec![x]])).unwrap();
    assert_eq!(module_order(&k), Some(2));
    assert_eq!(k.order(), Some(2));
}

#[test]
fn random_modules_match_enumeration() {
    let mut checked = 0;
    for ring in finite_rings() {
        let mut fx = Fixtures::with_bounds(ring, 5, small());
        for _ in 0..20 {
            let m = fx.module();
            if let Some(p) = module_profile(&m) {
                assert_eq!(engine_profile(&m), p, "{ring}: {:?}", m.presentation());
                checked += 1;
            }
        }
    }
    assert!(checked >= 60, "only {checked} modules enumerated");
}

#[test]
fn kernel_of_multiplication_by_two() {
    let r = z4();
    let f = Morphism::new(Module::free(r, 1), Module::free(r, 1), Matrix::from_rows(r, 1, &[vec![2]])).unwrap();
    let brute: Vec<i64> = (0..4).filter(|&x| r.mul(x, 2) == 0).collect();
    assert_eq!(brute, vec![0, 2]);
    assert_eq!(f.kernel().module.order(), Some(brute.len() as u128));
}

// classes of Z^2 modulo the row lattice of [[2,0],[0,3]], by search
#[test]
fn integer_normal_form_against_lattice_search() {
    let z = Ring::Integers;
    let a = Matrix::from_rows(z, 2, &[vec![2, 0], vec![0, 3]]);
    let rep = gorenstein::snf::matrix_normal_form(&a);
    assert_eq!(rep.diagonal, vec![1, 6]);
    assert!(rep.verify(&a));

    let in_lattice = |v: (i64, i64)| (-12..=12).any(|x| (-12..=12).any(|y| (2 * x, 3 * y) == v));
    let mut reps: Vec<(i64, i64)> = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            if !reps.iter().any(|&(a, b)| in_lattice((i - a, j - b))) {
                reps.push((i, j));
            }
        }
    }
    assert_eq!(reps.len(), 6);
    // the class of (1, 1) has order 6, so the quotient is cyclic
    let order = (1..=6).find(|&m| in_lattice((m, m))).unwrap();
    assert_eq!(order, 6);
    let coker = Module::new(z, a).unwrap();
    assert_eq!(coker.invariant_factors(), &[6]);
}

#[test]
fn hom_orders_match_enumeration() {
    let r = z4();
    let k = Module::cyclic(r, 2);
    assert_eq!(hom_order(&k, &k), Some(2));
    assert_eq!(k.hom(&k).unwrap().module.order(), Some(2));
    // dual of the residue field is the residue field
    assert_eq!(hom_order(&k, &Module::free(r, 1)), Some(2));
    assert!(k.dual().unwrap().module.is_isomorphic(&k).unwrap());

    let mut checked = 0;
    for ring in finite_rings() {
        let mut fx = Fixtures::with_bounds(ring, 9, Bounds { gens: 2, blocks: 1, span: 1 });
        for _ in 0..8 {
            let (m, n) = (fx.module(), fx.module());
            if let Some(brute) = hom_order(&m, &n) {
                assert_eq!(m.hom(&n).unwrap().module.order(), Some(brute as u128), "{ring}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} hom groups enumerated");
}

#[test]
fn homology_matches_enumeration() {
    let mut checked = 0;
    for ring in finite_rings() {
        let mut fx = Fixtures::with_bounds(ring, 21, small());
        for _ in 0..10 {
            let c = fx.complex();
            for n in c.lo() - 1..=c.hi() + 1 {
                if let Some(p) = homology_profile(&c, n) {
                    assert_eq!(engine_profile(&c.homology(n).module), p, "{ring} degree {n}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 60, "only {checked} homology groups enumerated");
}

#[test]
fn periodic_complex_is_exact() {
    let r = z4();
    let two = Matrix::from_rows(r, 1, &[vec![2]]);
    let c = Complex::from_matrices(r, 0, vec![Module::free(r, 1); 4], vec![two; 3]).unwrap();
    for n in 1..=2 {
        assert_eq!(homology_profile(&c, n), Some(vec![1, 1, 1]));
        assert!(c.homology(n).module.is_zero());
    }
}

#[test]
fn syzygies_of_residue_field_repeat() {
    let r = z4();
    let mut m = Module::cyclic(r, 2);
    for _ in 0..4 {
        m = syzygy(&m).0;
        assert_eq!(module_profile(&m), Some(vec![1, 2, 2]));
    }
    assert_eq!(module_dimension(&Module::cyclic(r, 2), ModuleDim::Fd).value, ExtInt::PosInf);
}

fn residue_field_at_0(ring: Ring) -> Complex {
    let p = ring.residue_prime().unwrap();
    let pi = if matches!(ring, Ring::TruncPoly { .. }) { ring.from_coeffs(&[0, 1]) } else { p };
    Complex::concentrated(&Module::cyclic(ring, pi), 0)
}

fn orders_match(table: &gorenstein::cohomology::CohomologyTable, x: &Complex) {
    for (n, g) in &table.groups {
        let brute = cohomology_into_residue_field(x, *n).expect("small enough to enumerate");
        assert_eq!(g.order(), Some(brute as u128), "{:?} degree {n}", table.theory);
    }
}

#[test]
fn residue_field_cohomology_by_enumeration() {
    let r = z4();
    let k = residue_field_at_0(r);
    let opts = ExtOptions::default();

    let abs = ext_groups(&k, &k, (0, 6), Theory::Abs, opts).unwrap();
    let p = dg_projective_resolution(&k, 10).resolution;
    orders_match(&abs, &p);
    assert!(abs.groups.iter().all(|(_, g)| g.order() == Some(2)));

    let tate = ext_groups(&k, &k, (-4, 4), Theory::Tate, opts).unwrap();
    let cr = complete_resolution(&k, (-6, 6)).unwrap();
    orders_match(&tate, &cr.t);
    assert!(tate.groups.iter().all(|(_, g)| g.order() == Some(2)));

    let gor = ext_groups(&k, &k, (0, 4), Theory::Gor, opts).unwrap();
    let g = special_gp_precover(&k, PrecoverPolicy::Inductive).unwrap().resolution;
    orders_match(&gor, &g);

    let bar = ext_groups(&k, &k, (0, 4), Theory::Bar, opts).unwrap();
    let cone = bar_data(&k, 10, opts).unwrap().cone.complex;
    orders_match(&bar, &cone);
}

#[test]
fn bar_and_tate_agree_by_enumeration() {
    for ring in [z4(), Ring::trunc_poly(2, 3).unwrap()] {
        let k = residue_field_at_0(ring);
        let km = k.module(0);
        let two = Complex::from_matrices(ring, 0, vec![km.clone(), km.clone()], vec![Matrix::zeros(ring, 1, 1)]).unwrap();
        let cmp = compare_bar_tate(&two, &k, (2, 5), ExtOptions::default()).unwrap();
        assert!(cmp.all_isomorphic(), "{ring}");
        let cone = bar_data(&two, 12, ExtOptions::default()).unwrap().cone.complex;
        orders_match(&cmp.bar, &cone);
        let cr = complete_resolution(&two, (0, 9)).unwrap();
        orders_match(&cmp.tate, &cr.t);
    }
}

#[test]
fn bar_vanishes_over_integers() {
    let z = Ring::Integers;
    let d = Complex::from_matrices(z, 0, vec![Module::free(z, 1); 2], vec![Matrix::from_rows(z, 1, &[vec![2]])]).unwrap();
    let opts = ExtOptions::default();
    for n in [Module::cyclic(z, 2), Module::cyclic(z, 3), Module::from_factors(z, &[2, 4])] {
        let nc = Complex::concentrated(&n, 0);
        assert!(ext_groups(&d, &nc, (0, 5), Theory::Bar, opts).unwrap().is_zero());
    }
    let h = bar_contraction(&d, opts).unwrap().expect("the cone is contractible");
    assert!(h.verify());
}

#[test]
fn double_dual_matches_degreewise() {
    for ring in finite_rings() {
        let mut fx = Fixtures::with_bounds(ring, 33, small());
        for _ in 0..5 {
            let c = fx.complex();
            let dd = dual_complex(&dual_complex(&c).unwrap().complex).unwrap().complex;
            for n in c.degrees() {
                let (a, b) = (c.module(n), dd.module(n));
                assert!(a.is_isomorphic(&b).unwrap(), "{ring} degree {n}");
                if let (Some(pa), Some(pb)) = (module_profile(&a), module_profile(&b)) {
                    assert_eq!(pa, pb);
                }
            }
        }
    }
}

#[test]
fn hom_into_residue_field_of_d_over_integers() {
    let z = Ring::Integers;
    let d = Complex::from_matrices(z, 0, vec![Module::free(z, 1); 2], vec![Matrix::from_rows(z, 1, &[vec![2]])]).unwrap();
    let k = Complex::concentrated(&Module::cyclic(z, 2), 0);
    let h = HomComplex::new(&d, &k).unwrap().complex;
    assert_eq!(h.lo(), -1);
    assert_eq!(h.hi(), 0);
    assert!(h.d(0).is_zero());
    for n in [-1, 0] {
        assert_eq!(h.module(n).invariant_factors(), &[2]);
    }
}
