use std::collections::HashSet;

use proptest::prelude::*;

use gorenstein::classes::{class_membership, module_dimension, ClassName, ModuleDim};
use gorenstein::cohomology::{ext_groups, resolution_independence, ExtOptions, Theory};
use gorenstein::complex::{exact_at, mapping_cone, ChainMap, Complex, ShortExact};
use gorenstein::dimension::{dimension_of_complex, gf_truncation_witness, DimKind};
use gorenstein::extint::ExtInt;
use gorenstein::fixtures::{suite_rings, Bounds, Fixtures};
use gorenstein::homcx::{dual_complex, hom_complex, solve_homotopy, tensor_complex};
use gorenstein::matrix::Matrix;
use gorenstein::module::{dual_map, Module, Morphism};
use gorenstein::resolution::{lift_through_precover, special_gp_precover, DgPolicy, PrecoverPolicy};
use gorenstein::ring::{make_ring, Ring, RingSpec};
use gorenstein::snf::matrix_normal_form;
use gorenstein::structure::complex_pd;

fn ring(i: usize) -> Ring {
    suite_rings()[i % 5]
}

fn finite_ring(i: usize) -> Ring {
    suite_rings()[i % 4]
}

fn small() -> Bounds {
    Bounds { gens: 2, blocks: 2, span: 3 }
}

fn random_matrix(fx: &mut Fixtures, rows: usize, cols: usize) -> Matrix {
    let e: Vec<i64> = (0..rows * cols).map(|_| fx.element()).collect();
    Matrix::from_canonical(fx.ring(), rows, cols, e).unwrap()
}

fn squares_to_zero(c: &Complex) -> bool {
    c.degrees().all(|n| c.module(n - 2).rows_vanish(&c.d(n).matrix().mul(c.d(n - 1).matrix())))
}

fn mul_mod(x: &[Vec<i64>], y: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    x.iter()
        .map(|r| {
            (0..y[0].len())
                .map(|j| r.iter().zip(y).map(|(a, yr)| a * yr[j]).sum::<i64>().rem_euclid(m))
                .collect()
        })
        .collect()
}

// |Z/12^cols / rowspace(a)| by listing every combination of rows
fn cokernel_order_mod_12(a: &[Vec<i64>], cols: usize) -> u128 {
    let rows = a.len();
    let span: HashSet<Vec<i64>> = (0..12i64.pow(rows as u32))
        .map(|mut code| {
            let coeffs: Vec<i64> = (0..rows)
                .map(|_| {
                    let c = code % 12;
                    code /= 12;
                    c
                })
                .collect();
            (0..cols).map(|j| (0..rows).map(|i| coeffs[i] * a[i][j]).sum::<i64>().rem_euclid(12)).collect()
        })
        .collect();
    12u128.pow(cols as u32) / span.len() as u128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_certifies_itself(ri in 0usize..5, seed in any::<u64>(), rows in 0usize..6, cols in 0usize..6) {
        let mut fx = Fixtures::new(ring(ri), seed);
        let a = random_matrix(&mut fx, rows, cols);
        prop_assert!(matrix_normal_form(&a).verify(&a));
    }

    #[test]
    fn product_dispatch_matches_crt(
        (rows, cols, entries) in (1usize..4, 1usize..4)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0i64..12, r * c)))
    ) {
        let h = make_ring(&RingSpec::Zmod(12)).unwrap();
        let reports: Vec<_> = h
            .factors()
            .iter()
            .map(|&f| matrix_normal_form(&Matrix::from_entries(f, rows, cols, &entries).unwrap()))
            .collect();
        let glue = |parts: Vec<Matrix>| -> Vec<Vec<i64>> {
            (0..parts[0].rows())
                .map(|i| {
                    (0..parts[0].cols())
                        .map(|j| h.crt(&parts.iter().map(|m| m.get(i, j)).collect::<Vec<_>>()).unwrap())
                        .collect()
                })
                .collect()
        };
        let u = glue(reports.iter().map(|r| r.left.clone()).collect());
        let v = glue(reports.iter().map(|r| r.right.clone()).collect());
        let d = glue(reports.iter().map(|r| r.diagonal_matrix()).collect());
        let a: Vec<Vec<i64>> = entries.chunks(cols).map(|c| c.to_vec()).collect();
        prop_assert_eq!(mul_mod(&mul_mod(&u, &a, 12), &v, 12), d);
        let total: u128 = h
            .factors()
            .iter()
            .map(|&f| Module::new(f, Matrix::from_entries(f, rows, cols, &entries).unwrap()).unwrap().order().unwrap())
            .product();
        prop_assert_eq!(total, cokernel_order_mod_12(&a, cols));
    }

    #[test]
    fn flat_modules_are_gorenstein_flat(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::new(ring(ri), seed);
        let m = fx.module();
        if class_membership(&m, ClassName::Flat).member {
            prop_assert!(class_membership(&m, ClassName::GorensteinFlat).member);
        }
        let gfd = module_dimension(&m, ModuleDim::Gfd).value;
        let fd = module_dimension(&m, ModuleDim::Fd).value;
        prop_assert!(gfd <= fd);
        if fd.is_finite() {
            prop_assert_eq!(gfd, fd);
        }
    }

    #[test]
    fn dual_preserves_short_exact_sequences(ri in 0usize..4, seed in any::<u64>()) {
        let mut fx = Fixtures::new(finite_ring(ri), seed);
        let (a, b) = (fx.module(), fx.module());
        let f = fx.morphism(&a, &b);
        // 0 -> ker f -> A -> im f -> 0
        let k = f.kernel();
        let im = f.image();
        let rows: Vec<Vec<i64>> = (0..a.num_gens())
            .map(|i| im.map.preimage(f.matrix().row(i)).expect("rows of f lie in the image"))
            .collect();
        let q = Morphism::new(a.clone(), im.module.clone(), Matrix::from_rows(a.ring(), im.module.num_gens(), &rows)).unwrap();
        prop_assert!(exact_at(&k.map, &q) && q.is_surjective() && k.map.is_injective());
        let (dk, da, di) = (k.module.dual().unwrap(), a.dual().unwrap(), im.module.dual().unwrap());
        let qd = dual_map(&q, &di, &da);
        let kd = dual_map(&k.map, &da, &dk);
        prop_assert!(qd.is_injective());
        prop_assert!(exact_at(&qd, &kd));
        prop_assert!(kd.is_surjective());
        prop_assert_eq!(da.module.order().unwrap(), dk.module.order().unwrap() * di.module.order().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn constructions_square_to_zero(ri in 0usize..5, seed in any::<u64>(), k in -2i64..3) {
        let r = ring(ri);
        let mut fx = Fixtures::with_bounds(r, seed, small());
        let (x, y) = (fx.complex(), fx.complex());
        prop_assert!(squares_to_zero(&hom_complex(&x, &y).unwrap()));
        prop_assert!(squares_to_zero(&tensor_complex(&x, &y).unwrap()));
        prop_assert!(squares_to_zero(&x.shift(k)));
        let u = fx.chain_map(&x, &y);
        prop_assert!(squares_to_zero(&mapping_cone(&u).complex));
        if r.is_finite() {
            prop_assert!(squares_to_zero(&dual_complex(&x).unwrap().complex));
        }
    }

    #[test]
    fn shift_moves_homology(ri in 0usize..5, seed in any::<u64>(), k in -3i64..4) {
        let mut fx = Fixtures::new(ring(ri), seed);
        let c = fx.complex();
        let s = c.shift(k);
        for n in c.lo() - 1..=c.hi() + 1 {
            prop_assert!(s.homology(n + k).module.is_isomorphic(&c.homology(n).module).unwrap());
        }
    }

    #[test]
    fn cone_sequence_is_exact(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let (x, y) = (fx.complex(), fx.complex());
        let u = fx.chain_map(&x, &y);
        let cone = mapping_cone(&u);
        let c = cone.complex.clone();
        let ses = ShortExact::new(cone.incl, cone.proj).unwrap();
        let maps = ses.long_exact_sequence(c.lo() - 1, c.hi() + 1);
        for w in maps.windows(2) {
            prop_assert!(exact_at(&w[0], &w[1]));
        }
    }

    #[test]
    fn homotopic_maps_agree_on_homology(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let (x, y) = (fx.complex(), fx.complex());
        let f = fx.chain_map(&x, &y);
        // fixture maps are null-homotopic, so adding one stays in the class
        let g = f.add(&fx.chain_map(&x, &y)).unwrap();
        let h = solve_homotopy(&f, &g).unwrap();
        prop_assert!(h.as_ref().is_some_and(|h| h.verify()));
        for n in x.lo() - 1..=x.hi() + 1 {
            prop_assert!(f.induced(n).equals(&g.induced(n)));
            prop_assert!(f.induced(n).is_zero());
        }
    }

    #[test]
    fn inductive_precover_kernels_are_stable(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let c = fx.complex_with_top(2);
        let lo = c.lo();
        for n in lo..c.hi() {
            let short = special_gp_precover(&c.window(lo, n), PrecoverPolicy::Inductive).unwrap();
            let long = special_gp_precover(&c.window(lo, n + 1), PrecoverPolicy::Inductive).unwrap();
            let (Some(ks), Some(kl)) = (&short.kernel_profile, &long.kernel_profile) else { continue };
            for k in lo..n {
                prop_assert!(
                    ks.kernel.module(k).is_isomorphic(&kl.kernel.module(k)).unwrap(),
                    "degree {} of truncations at {} and {}", k, n, n + 1
                );
            }
        }
    }

    #[test]
    fn precover_kernels_have_finite_pd(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let c = fx.complex();
        let g = special_gp_precover(&c, PrecoverPolicy::Inductive).unwrap();
        prop_assert!(g.is_surjective());
        if let Some(k) = &g.kernel_profile {
            prop_assert!(k.is_finite(), "kernel pd {}", k.pd);
        }
        let pd = complex_pd(&g.resolution);
        prop_assert!(matches!(pd, ExtInt::NegInf | ExtInt::Finite(0) | ExtInt::PosInf), "pd {}", pd);
    }

    #[test]
    fn precovers_are_unique_up_to_homotopy(ri in 0usize..4, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(finite_ring(ri), seed, small());
        let c = fx.complex();
        let g = special_gp_precover(&c, PrecoverPolicy::Inductive).unwrap();
        let h = special_gp_precover(&c, PrecoverPolicy::Identity).unwrap();
        let a = lift_through_precover(&h.map, &g).unwrap();
        let b = lift_through_precover(&g.map, &h).unwrap();
        let round = |x: &ChainMap, y: &ChainMap, src: &Complex| -> bool {
            solve_homotopy(&x.then(y).unwrap(), &ChainMap::identity(src)).unwrap().is_some_and(|s| s.verify())
        };
        prop_assert!(round(&b, &a, &g.resolution));
        prop_assert!(round(&a, &b, &h.resolution));
    }

    #[test]
    fn gfd_along_short_exact_sequences(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let ses = fx.hom_exact_sequence();
        let gfd = |c: &Complex| dimension_of_complex(c, DimKind::Gfd).unwrap().value;
        let (a, b, c) = (gfd(ses.i.source()), gfd(ses.i.target()), gfd(ses.p.target()));
        prop_assert!(b <= a.max(c), "{} {} {}", a, b, c);
        prop_assert!(a <= b.max(c.plus(-1)), "{} {} {}", a, b, c);
        prop_assert!(c <= b.max(a.plus(1)), "{} {} {}", a, b, c);
    }

    #[test]
    fn truncation_witness_is_gorenstein_flat(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let c = fx.non_exact_complex();
        let gfd = dimension_of_complex(&c, DimKind::Gfd).unwrap().value;
        let (t, map) = gf_truncation_witness(&c).expect("non-exact complexes have a witness");
        prop_assert!(ExtInt::Finite(t.trimmed().hi()) <= gfd);
        for n in t.degrees() {
            prop_assert!(class_membership(&t.module(n), ClassName::GorensteinFlat).member);
        }
        for n in c.lo() - 1..=c.hi() + 1 {
            prop_assert!(t.homology(n).module.is_isomorphic(&c.homology(n).module).unwrap(), "degree {}", n);
            if n <= t.hi() {
                prop_assert!(map.induced(n).is_isomorphism(), "degree {}", n);
            }
        }
    }

    #[test]
    fn dg_resolutions_give_the_same_ext(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let (m, n) = (fx.complex(), fx.complex());
        let naive = ExtOptions { dg: DgPolicy::Naive, pad: true, ..ExtOptions::default() };
        let a = ext_groups(&m, &n, (0, 3), Theory::Abs, ExtOptions::default()).unwrap();
        let b = ext_groups(&m, &n, (0, 3), Theory::Abs, naive).unwrap();
        prop_assert!(a.agrees_with(&b));
        if ring(ri).is_finite() {
            let ind = resolution_independence(&m, &n, (0, 3), ExtOptions::default()).unwrap();
            prop_assert!(ind.beta_alpha_homotopic && ind.alpha_beta_homotopic);
            prop_assert!(ind.cone_maps_homotopic && ind.tables_agree);
        }
    }

    #[test]
    fn dimensions_are_resolution_independent(ri in 0usize..5, seed in any::<u64>()) {
        let mut fx = Fixtures::with_bounds(ring(ri), seed, small());
        let c = fx.complex();
        for kind in [DimKind::Fd, DimKind::Gfd, DimKind::Gpd] {
            prop_assert!(dimension_of_complex(&c, kind).unwrap().is_consistent());
        }
        if ring(ri).is_finite() {
            let gfd = dimension_of_complex(&c, DimKind::Gfd).unwrap().value;
            let dual = dual_complex(&c).unwrap().complex;
            prop_assert_eq!(gfd, dimension_of_complex(&dual, DimKind::Gid).unwrap().value);
        }
    }
}
