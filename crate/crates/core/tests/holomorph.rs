use holo_core::group::aut::DEFAULT_AUT_MEMORY_CAP;
use holo_core::group::search::DEFAULT_SEARCH_BUDGET;
use holo_core::group::{automorphism_group, AutList, GroupTable, Preset, DEFAULT_ORDER_CAP};
use holo_core::holomorph::properties::{
    eqcond_check, formulas_check, is_normal_in_hol, structural_checks,
};
use holo_core::holomorph::{enumerate_gammas_generic, hc_set, jc_set, GammaMap};

fn setup(p: Preset) -> (GroupTable, AutList) {
    let g = GroupTable::from_preset(&p, DEFAULT_ORDER_CAP).unwrap();
    let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
    (g, aut)
}

fn gammas(g: &GroupTable, aut: &AutList) -> Vec<GammaMap> {
    enumerate_gammas_generic(g, aut, DEFAULT_SEARCH_BUDGET).unwrap()
}

#[test]
fn identity_gamma_gives_g_itself() {
    let (g, aut) = setup(Preset::Gp { p: 3 });
    let id = GammaMap::identity(&g);
    let circle = id.circle_table(&g).unwrap();
    assert_eq!(circle.table(), g.table());
    assert!(is_normal_in_hol(&g, &aut, &id));
    assert!(formulas_check(&g, &aut, &id).passed);
}

#[test]
fn counts_for_small_presets() {
    let cases = [
        (Preset::Gp { p: 3 }, 9, 6),
        (Preset::Hp { p: 3 }, 3, 2),
        (Preset::Hp { p: 5 }, 5, 4),
        (Preset::FreeClassTwoExpP { p: 3, n: 2 }, 3, 2),
        (Preset::Abelian { factors: vec![9] }, 1, 1),
        (Preset::Abelian { factors: vec![3, 3] }, 1, 1),
    ];
    for (preset, j, h) in cases {
        let (g, aut) = setup(preset.clone());
        let jc = jc_set(&g, gammas(&g, &aut), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(jc.len(), j, "{preset:?}");
        assert_eq!(hc_set(&jc).len(), h, "{preset:?}");
        for n in &jc {
            assert!(is_normal_in_hol(&g, &aut, &n.gamma));
        }
    }
}

#[test]
fn abelian_circle_groups() {
    // Exactly one member of J(H_3) has an abelian circle group and it is not in H.
    let (g, aut) = setup(Preset::Hp { p: 3 });
    let jc = jc_set(&g, gammas(&g, &aut), DEFAULT_SEARCH_BUDGET).unwrap();
    let abelian: Vec<_> = jc.iter().filter(|n| n.circle_abelian).collect();
    assert_eq!(abelian.len(), 1);
    assert!(!abelian[0].iso_to_g());
}

/// A multiplicative but non-equivariant map is rejected by the normality test.
#[test]
fn non_equivariant_anti_homomorphism_is_not_normal() {
    let (g, aut) = setup(Preset::Hp { p: 3 });
    let gens = aut.generator_perms();
    let mut witness = None;
    'outer: for a in 0..aut.len() as u32 {
        for b in 0..aut.len() as u32 {
            let values = [aut.set.perm(a).to_vec(), aut.set.perm(b).to_vec()];
            if let Ok(gm) = GammaMap::from_generator_values(&g, &values) {
                if gm.equivariance_failure(&g, &gens).is_some() {
                    witness = Some(gm);
                    break 'outer;
                }
            }
        }
    }
    let gm = witness.expect("H_3 has a non-equivariant anti-homomorphism into Aut");
    assert!(!is_normal_in_hol(&g, &aut, &gm));
    assert!(gm.validate(&g, &gens).is_err());
}

#[test]
fn properties_hold_on_small_presets() {
    for preset in [
        Preset::Gp { p: 3 },
        Preset::Hp { p: 3 },
        Preset::Hp { p: 5 },
        Preset::FreeClassTwoExpP { p: 3, n: 2 },
        Preset::Abelian { factors: vec![9] },
    ] {
        let (g, aut) = setup(preset.clone());
        for gm in gammas(&g, &aut) {
            assert!(formulas_check(&g, &aut, &gm).passed, "{preset:?}");
            for r in structural_checks(&g, &gm) {
                assert!(r.passed, "{preset:?}: {r:?}");
            }
            let (_, flags) = eqcond_check(&g, &gm);
            assert!(flags.iter().all(|&f| f == flags[0]));
        }
    }
}

#[test]
fn g5_counts_and_properties() {
    let (g, aut) = setup(Preset::Gp { p: 5 });
    let jc = jc_set(&g, gammas(&g, &aut), DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(jc.len(), 25);
    assert_eq!(hc_set(&jc).len(), 20);
    for n in &jc {
        assert!(formulas_check(&g, &aut, &n.gamma).passed);
        for r in structural_checks(&g, &n.gamma) {
            assert!(r.passed, "{r:?}");
        }
    }
}
