use std::collections::HashSet;

use holo_core::group::aut::{FrattiniQuotient, DEFAULT_AUT_MEMORY_CAP};
use holo_core::group::search::DEFAULT_SEARCH_BUDGET;
use holo_core::group::subgroup::quotient;
use holo_core::group::{automorphism_group, GroupTable, Preset, DEFAULT_ORDER_CAP};
use proptest::prelude::*;

fn build(p: Preset) -> GroupTable {
    GroupTable::from_preset(&p, DEFAULT_ORDER_CAP).unwrap()
}

fn presets() -> Vec<Preset> {
    vec![
        Preset::Gp { p: 3 },
        Preset::Hp { p: 3 },
        Preset::Hp { p: 5 },
        Preset::FreeClassTwoExpP { p: 3, n: 2 },
        Preset::FreeClassTwoExpP { p: 5, n: 2 },
        Preset::Abelian { factors: vec![9] },
        Preset::Abelian { factors: vec![3, 3] },
    ]
}

/// Counts automorphisms by trying every pair of generator images without pruning.
fn brute_force_aut_count(g: &GroupTable) -> usize {
    assert_eq!(g.gens().len(), 2);
    let n = g.order() as u32;
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if let Some(phi) = g.extend_hom(&[a, b], g) {
                let distinct: HashSet<u32> = phi.iter().copied().collect();
                if distinct.len() == phi.len() {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn aut_g3_matches_unpruned_search() {
    let g = build(Preset::Gp { p: 3 });
    let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
    assert_eq!(brute_force_aut_count(&g), 486);
    assert_eq!(aut.len(), 486);
}

#[test]
fn aut_h3_matches_unpruned_search() {
    let g = build(Preset::Hp { p: 3 });
    let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
    assert_eq!(aut.len(), brute_force_aut_count(&g));
    assert_eq!(aut.len(), 54);
}

#[test]
fn automorphism_lists_are_groups() {
    for preset in presets() {
        let g = build(preset.clone());
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        for a in 0..aut.len() as u32 {
            assert!(g.is_automorphism(aut.set.perm(a)), "{preset:?}");
            assert_eq!(aut.compose(a, aut.inv[a as usize]), aut.identity);
        }
        for &a in &aut.generators {
            for b in 0..aut.len() as u32 {
                assert!(aut.set.compose(a, b).is_some());
            }
        }
    }
}

#[test]
fn aut_orders() {
    let cases = [
        (Preset::Gp { p: 5 }, 12500),
        (Preset::Hp { p: 5 }, 500),
        (Preset::FreeClassTwoExpP { p: 3, n: 2 }, 432),
        (Preset::FreeClassTwoExpP { p: 5, n: 2 }, 12000),
        (Preset::Abelian { factors: vec![3, 3] }, 48),
        (Preset::Abelian { factors: vec![27] }, 18),
    ];
    for (preset, expected) in cases {
        let g = build(preset.clone());
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        assert_eq!(aut.len(), expected, "{preset:?}");
    }
}

/// Aut(G_p) induces the triangular matrices with rows `x -> (a, 0)`,
/// `y -> (b, 1)` on `G/Frat(G)`; for H_p the rows are `x -> (a, b)`, `y -> (0, 1)`.
/// Both groups have order `p(p-1)`.
#[test]
fn induced_matrix_group_on_frattini_quotient() {
    for preset in [Preset::Gp { p: 3 }, Preset::Gp { p: 5 }, Preset::Hp { p: 3 }, Preset::Hp { p: 5 }] {
        let (p, is_g) = match preset {
            Preset::Gp { p } => (p, true),
            Preset::Hp { p } => (p, false),
            _ => unreachable!(),
        };
        let g = build(preset);
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        let fq = FrattiniQuotient::new(&g).unwrap();
        let image: HashSet<Vec<Vec<u8>>> =
            (0..aut.len() as u32).map(|a| fq.matrix(&g, aut.set.perm(a))).collect();
        assert_eq!(image.len() as u64, p * (p - 1));
        for m in &image {
            assert_ne!(m[0][0], 0);
            assert_eq!(m[1][1], 1, "{m:?}");
            if is_g {
                assert_eq!(m[0][1], 0, "{m:?}");
            } else {
                assert_eq!(m[1][0], 0, "{m:?}");
            }
        }
    }
}

#[test]
fn characteristic_subgroups_are_stable() {
    for preset in presets() {
        let g = build(preset);
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        let subs = [g.center(), g.derived(), g.frattini().unwrap()];
        for a in 0..aut.len() as u32 {
            for s in &subs {
                assert!(s.is_stable_under(aut.set.perm(a)));
            }
        }
    }
}

#[test]
fn quotient_by_center_of_g3() {
    let g = build(Preset::Gp { p: 3 });
    let z = g.center();
    let (q, proj) = quotient(&g, &z).unwrap();
    assert_eq!((q.order(), q.exponent()), (9, 3));
    assert!(q.is_abelian());
    for a in 0..81u32 {
        for b in 0..81u32 {
            assert_eq!(proj[g.mul(a, b) as usize], q.mul(proj[a as usize], proj[b as usize]));
        }
    }
    let kernel: Vec<u32> = (0..81).filter(|&a| proj[a as usize] == 0).collect();
    assert_eq!(kernel, z.elements);
}

#[test]
fn g7_builds_within_default_cap() {
    let g = build(Preset::Gp { p: 7 });
    assert_eq!(g.order(), 2401);
    assert_eq!(g.center().order(), 49);
    assert_eq!(g.derived().order(), 7);
}

fn binomial2(n: i64) -> i64 {
    n * (n - 1) / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `(gh)^n = g^n h^n [h, g]^{C(n, 2)}` in every class-two preset.
    #[test]
    fn class_two_power_identity(which in 0usize..7, a in 0u32..10_000, b in 0u32..10_000, n in 0i64..30) {
        let g = build(presets()[which].clone());
        let (a, b) = (a % g.order() as u32, b % g.order() as u32);
        let n = n % g.exponent() as i64;
        let lhs = g.pow(g.mul(a, b), n);
        let rhs = g.mul(g.mul(g.pow(a, n), g.pow(b, n)), g.pow(g.comm(b, a), binomial2(n)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_is_associative_on_samples(which in 0usize..7, a in 0u32..10_000, b in 0u32..10_000, c in 0u32..10_000) {
        let g = build(presets()[which].clone());
        let n = g.order() as u32;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
    }
}
