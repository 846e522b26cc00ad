use std::collections::{BTreeMap, HashSet};

use holo_core::arith::mod_inv;
use holo_core::delta::{symmetric_delta_space, AllCentralGroup, AllCentralSpec, BilinearDelta, DeltaSetup};
use holo_core::experiments::families::gp_gamma;
use holo_core::experiments::pipeline::compare;
use holo_core::group::aut::DEFAULT_AUT_MEMORY_CAP;
use holo_core::group::presentation::free_class_two;
use holo_core::group::search::DEFAULT_SEARCH_BUDGET;
use holo_core::group::{
    automorphism_generators, automorphism_group, ClassTwoPresentation, Collector, GroupTable, Preset, DEFAULT_ORDER_CAP,
};
use holo_core::holomorph::{enumerate_gammas_generic, GammaMap};
use holo_core::tgroup::power::central_quotient_exponent;
use holo_core::HoloError;
use proptest::prelude::*;

fn build(p: Preset) -> GroupTable {
    GroupTable::from_preset(&p, DEFAULT_ORDER_CAP).unwrap()
}

fn solve(g: &GroupTable) -> (DeltaSetup, Vec<Vec<u32>>, Vec<BilinearDelta>, usize) {
    let setup = DeltaSetup::new(g).unwrap();
    let gens = automorphism_generators(g, DEFAULT_SEARCH_BUDGET).unwrap();
    let sol = setup.enumerate(&gens, 1_000_000);
    let dim = sol.dimension;
    (setup, gens, sol.all.unwrap(), dim)
}

#[test]
fn dimensions_of_small_presets() {
    let cases = [
        (Preset::Gp { p: 3 }, 2),
        (Preset::Gp { p: 5 }, 2),
        (Preset::Hp { p: 3 }, 1),
        (Preset::Hp { p: 5 }, 1),
        (Preset::Hp { p: 7 }, 1),
        (Preset::FreeClassTwoExpP { p: 3, n: 2 }, 1),
        (Preset::FreeClassTwoExpP { p: 5, n: 2 }, 1),
        (Preset::FreeClassTwoExpP { p: 3, n: 3 }, 1),
    ];
    for (preset, dim) in cases {
        let g = build(preset.clone());
        let (_, _, all, d) = solve(&g);
        assert_eq!(d, dim, "{}", preset.label());
        assert_eq!(all.len() as u64, g.prime().unwrap().pow(dim as u32));
    }
}

#[test]
fn delta_and_generic_agree() {
    for preset in [
        Preset::Gp { p: 3 },
        Preset::Gp { p: 5 },
        Preset::Hp { p: 3 },
        Preset::Hp { p: 5 },
        Preset::FreeClassTwoExpP { p: 3, n: 2 },
        Preset::FreeClassTwoExpP { p: 5, n: 2 },
    ] {
        let g = build(preset.clone());
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        let generic = enumerate_gammas_generic(&g, &aut, DEFAULT_SEARCH_BUDGET).unwrap();
        let (setup, gens, all, _) = solve(&g);
        let from_delta: Vec<GammaMap> = all.iter().map(|d| setup.gamma_from_delta(&g, d, &gens).unwrap()).collect();
        let cmp = compare(&g, &generic, &from_delta);
        assert!(cmp.agree, "{}", preset.label());
        assert!(cmp.outside_correspondence.is_empty(), "{}", preset.label());
    }
}

#[test]
fn free_solutions_are_commutator_multiples() {
    for (p, n) in [(3, 2), (5, 2), (3, 3)] {
        let g = build(Preset::FreeClassTwoExpP { p, n });
        let (setup, _, all, _) = solve(&g);
        let multiples: HashSet<BilinearDelta> =
            (0..p as i64).map(|c| setup.commutator_delta(&g, c).unwrap()).collect();
        assert_eq!(multiples.len() as u64, p);
        assert_eq!(all.into_iter().collect::<HashSet<_>>(), multiples);
    }
}

/// `Delta(x, y) = x^{pt}`, `Delta(y, x) = x^{ps}`, `Delta(y, y) = y^{p(s+t)}`,
/// read off the automorphisms in the definition of `gamma_{s,t}`.
#[test]
fn gp_gamma_delta_values() {
    for p in [3i64, 5] {
        let g = build(Preset::Gp { p: p as u64 });
        let setup = DeltaSetup::new(&g).unwrap();
        let (x, y) = (g.pc_gens()[0], g.pc_gens()[1]);
        for s in 0..p {
            for t in 0..p {
                let d = setup.delta_from_gamma(&g, &gp_gamma(&g, s, t).unwrap()).unwrap();
                assert_eq!(setup.eval(&d, x, x), 0);
                assert_eq!(setup.eval(&d, x, y), g.pow(x, p * t));
                assert_eq!(setup.eval(&d, y, x), g.pow(x, p * s));
                assert_eq!(setup.eval(&d, y, y), g.pow(y, p * (s + t)));
            }
        }
    }
}

#[test]
fn frozen_gp3_coordinates() {
    let g = build(Preset::Gp { p: 3 });
    let setup = DeltaSetup::new(&g).unwrap();
    let coords = |s, t| setup.delta_from_gamma(&g, &gp_gamma(&g, s, t).unwrap()).unwrap().values;
    assert_eq!(setup.shape(), (2, 2, 2));
    assert_eq!(coords(1, 0), vec![0, 0, 0, 0, 1, 0, 0, 1]);
    assert_eq!(coords(0, 1), vec![0, 0, 1, 0, 0, 0, 0, 1]);
    assert_eq!(coords(2, 1), vec![0, 0, 1, 0, 2, 0, 0, 0]);
}

#[test]
fn commutator_multiples_on_free_group() {
    for p in [3u64, 5] {
        let g = build(Preset::FreeClassTwoExpP { p, n: 2 });
        let gens = automorphism_generators(&g, DEFAULT_SEARCH_BUDGET).unwrap();
        let setup = DeltaSetup::new(&g).unwrap();
        let pi = p as i64;
        for c in 0..pi {
            let gm = setup.gamma_from_delta(&g, &setup.commutator_delta(&g, c).unwrap(), &gens).unwrap();
            let circle = gm.circle_table(&g).unwrap();
            if c == 0 {
                assert!(gm.is_identity());
            }
            if (1 + 2 * c) % pi == 0 {
                assert!(circle.is_abelian(), "c = -1/2 gives an abelian circle group");
                continue;
            }
            // x -> x^d with d = (1 + 2c)^{-1} is an isomorphism onto the circle group
            let d = mod_inv((1 + 2 * c).rem_euclid(pi), pi).unwrap();
            let images: Vec<u32> = g.gens().iter().map(|&s| g.pow(s, d)).collect();
            let hom = g.extend_hom(&images, &circle).expect("homomorphism");
            let all: Vec<u32> = (0..g.order() as u32).map(|x| g.pow(x, d)).collect();
            assert_eq!(hom, all);
            assert_eq!(hom.iter().collect::<HashSet<_>>().len(), g.order());
        }
    }
}

#[test]
fn commutator_map_gives_inner_automorphisms() {
    let g = build(Preset::Hp { p: 3 });
    let gens = automorphism_generators(&g, DEFAULT_SEARCH_BUDGET).unwrap();
    let setup = DeltaSetup::new(&g).unwrap();
    let gm = setup.gamma_from_delta(&g, &setup.commutator_delta(&g, 1).unwrap(), &gens).unwrap();
    for h in 0..g.order() as u32 {
        for x in 0..g.order() as u32 {
            assert_eq!(gm.act(x, h), g.conj(x, h));
        }
    }
}

#[test]
fn round_trip_bilinearity_and_equivariance_on_g3() {
    let g = build(Preset::Gp { p: 3 });
    let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
    let (setup, gens, all, _) = solve(&g);
    let n = g.order() as u32;
    for d in &all {
        let gm = setup.gamma_from_delta(&g, d, &gens).unwrap();
        assert_eq!(&setup.delta_from_gamma(&g, &gm).unwrap(), d);
        for a in 0..n {
            for b in 0..n {
                for h in 0..n {
                    let ab = setup.eval(d, g.mul(a, b), h);
                    assert_eq!(ab, g.mul(setup.eval(d, a, h), setup.eval(d, b, h)));
                    let right = setup.eval(d, h, g.mul(a, b));
                    assert_eq!(right, g.mul(setup.eval(d, h, a), setup.eval(d, h, b)));
                }
            }
        }
        for i in 0..aut.len() as u32 {
            assert!(setup.is_equivariant(d, aut.set.perm(i)));
        }
    }
}

#[test]
fn central_quotient_of_larger_exponent_is_rejected() {
    // <x, y : x^81, y^9, [x, y] = x^9> has G/Z(G) of exponent 9
    let pres = ClassTwoPresentation {
        p: 3,
        orders: vec![81, 9],
        powers: BTreeMap::new(),
        commutators: BTreeMap::from([((1, 0), vec![(0, 72)])]),
    };
    let g = GroupTable::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(central_quotient_exponent(&g).unwrap(), 9);
    assert!(matches!(DeltaSetup::new(&g), Err(HoloError::UnsupportedModuli(_))));
}

fn n3_coefficients() -> Vec<Vec<u64>> {
    vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]
}

#[test]
fn closed_form_arithmetic_matches_collector() {
    let coeffs = n3_coefficients();
    let pres = free_class_two(3, 3, Some(&coeffs));
    let table = GroupTable::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap();
    let ac = AllCentralGroup::from_presentation(&pres).unwrap();
    assert_eq!(ac.order(), table.order() as u64);
    let n = table.order() as u32;
    for a in 0..n {
        for b in 0..n {
            assert_eq!(ac.mul(a, b), table.mul(a, b));
        }
    }
}

#[test]
fn closed_form_arithmetic_matches_collector_on_fixture() {
    let spec: AllCentralSpec = serde_json::from_str(include_str!("../data/all_central_p3_n4.json")).unwrap();
    let ac = AllCentralGroup::new(&spec).unwrap();
    let col = Collector::new(&free_class_two(3, 4, Some(&spec.coefficients))).unwrap();
    assert_eq!(col.order(), ac.order());
    let mut rng = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng % ac.order()) as u32
    };
    for _ in 0..20_000 {
        let (a, b) = (next(), next());
        assert_eq!(ac.mul(a, b) as u64, col.mul(a as u64, b as u64).unwrap());
    }
}

/// Invertible `A` over `F_3` for which `x_i -> x_i A` (commutator part zero)
/// extends to an automorphism of the table.
fn liftable_matrices(g: &GroupTable, ac: &AllCentralGroup) -> u64 {
    let n = ac.n;
    let xs: Vec<u32> = (0..n).map(|i| ac.generator(i)).collect();
    assert_eq!(g.gens(), xs.as_slice());
    let mut count = 0;
    for code in 0..3u64.pow((n * n) as u32) {
        let mut c = code;
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = c % 3;
                        c /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        let images: Vec<u32> = rows.iter().map(|r| ac.join(r, &vec![0; ac.m])).collect();
        if let Some(perm) = g.extend_hom(&images, g) {
            if g.is_automorphism(&perm) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn centrality_scan_matches_lifting_automorphisms() {
    let pres = free_class_two(3, 3, Some(&n3_coefficients()));
    let g = GroupTable::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap();
    let ac = AllCentralGroup::from_presentation(&pres).unwrap();
    let report = ac.centrality().unwrap();
    assert_eq!(report.compatible_matrices, liftable_matrices(&g, &ac));
    assert_eq!(report.all_central, report.compatible_matrices == 1);
}

#[test]
#[ignore = "scans all 3^16 matrices"]
fn free_shape_n4_has_full_linear_group() {
    let spec = AllCentralSpec { p: 3, n: 4, coefficients: vec![vec![0; 6]; 4] };
    let report = AllCentralGroup::new(&spec).unwrap().centrality().unwrap();
    assert_eq!(report.compatible_matrices, 24_261_120);
}

#[test]
fn theta_delta_is_an_isomorphism_onto_the_circle_group() {
    let pres = free_class_two(3, 3, Some(&n3_coefficients()));
    let g = GroupTable::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap();
    let ac = AllCentralGroup::from_presentation(&pres).unwrap();
    let (dim, basis) = symmetric_delta_space(3, 3);
    assert_eq!(dim, 18);
    let n = g.order() as u32;
    let thetas: Vec<Vec<u32>> = basis.iter().take(4).map(|d| ac.theta_delta(d).unwrap()).collect();
    for (d, theta) in basis.iter().zip(&thetas) {
        for a in 0..n {
            for b in 0..n {
                assert_eq!(theta[g.mul(a, b) as usize], ac.circle(d, theta[a as usize], theta[b as usize]));
            }
        }
        assert_eq!(&ac.delta_from_theta(theta), d);
    }
    let sum = BilinearDelta {
        values: basis[0].values.iter().zip(&basis[1].values).map(|(a, b)| (a + b) % 3).collect(),
    };
    let composed: Vec<u32> = thetas[0].iter().map(|&x| thetas[1][x as usize]).collect();
    assert_eq!(ac.theta_delta(&sum).unwrap(), composed);
}

#[test]
fn theta_delta_needs_symmetry() {
    let ac = AllCentralGroup::new(&AllCentralSpec { p: 3, n: 3, coefficients: n3_coefficients() }).unwrap();
    let mut d = BilinearDelta { values: vec![0; 27] };
    // Delta(x_0, x_1) = c_{01}, Delta(x_1, x_0) = 1
    d.values[3] = 1;
    assert!(matches!(ac.theta_delta(&d), Err(HoloError::NotInNHol(_))));
}

#[test]
fn symmetric_dimensions() {
    for (p, n, dim) in [(3, 2, 3), (3, 4, 60), (3, 5, 150), (5, 4, 60)] {
        assert_eq!(symmetric_delta_space(p, n).0, dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The circle product of a symmetric Delta agrees with the table-level
    /// product `g^{gamma(h)} h` with `g^{gamma(h)} = g Delta(g, h)`.
    #[test]
    fn circle_product_matches_delta_definition(m in 0u64..3u64.pow(5), a in 0u32..729, b in 0u32..729) {
        let ac = AllCentralGroup::new(&AllCentralSpec { p: 3, n: 3, coefficients: n3_coefficients() }).unwrap();
        let (_, basis) = symmetric_delta_space(3, 3);
        let mut d = BilinearDelta { values: vec![0; 27] };
        let mut k = m;
        for bvec in basis.iter().take(5) {
            let c = k % 3;
            k /= 3;
            for (x, y) in d.values.iter_mut().zip(&bvec.values) {
                *x = (*x + c * y) % 3;
            }
        }
        let (e, _) = ac.split(a);
        let (f, _) = ac.split(b);
        let w = ac.join(&[0, 0, 0], &ac.delta_value(&d, &e, &f));
        prop_assert_eq!(ac.circle(&d, a, b), ac.mul(ac.mul(a, w), b));
        // symmetric: Delta(a, b) = Delta(b, a)
        prop_assert_eq!(ac.delta_value(&d, &e, &f), ac.delta_value(&d, &f, &e));
    }
}
