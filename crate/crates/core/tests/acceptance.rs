//! Exit gate: one PASS/FAIL line per acceptance criterion.

use holo_core::delta::DeltaSetup;
use holo_core::experiments::pipeline::compare;
use holo_core::experiments::repro::{run_suite, ReproOptions, Suite};
use holo_core::group::aut::DEFAULT_AUT_MEMORY_CAP;
use holo_core::group::search::DEFAULT_SEARCH_BUDGET;
use holo_core::group::{automorphism_group, GroupTable, Preset, DEFAULT_ORDER_CAP};
use holo_core::holomorph::properties::{central_hypotheses, formulas_check, is_normal_in_hol, structural_checks};
use holo_core::holomorph::{enumerate_gammas_generic, GammaMap};
use holo_core::Result;

fn suite(s: Suite) -> Result<(bool, String)> {
    let reports = run_suite(s, &ReproOptions::default())?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.matched)
        .map(|r| format!("{} {}: expected {}, computed {}", r.group, r.check, r.expected, r.computed))
        .collect();
    if failed.is_empty() {
        Ok((true, format!("{} checks matched", reports.len())))
    } else {
        Ok((false, failed.join("; ")))
    }
}

const PROPERTY_PRESETS: &[fn() -> Preset] = &[
    || Preset::Gp { p: 3 },
    || Preset::Gp { p: 5 },
    || Preset::Hp { p: 3 },
    || Preset::Hp { p: 5 },
    || Preset::Hp { p: 7 },
    || Preset::FreeClassTwoExpP { p: 3, n: 2 },
    || Preset::FreeClassTwoExpP { p: 5, n: 2 },
    || Preset::Abelian { factors: vec![9] },
    || Preset::Abelian { factors: vec![25] },
    || Preset::Abelian { factors: vec![27] },
    || Preset::Abelian { factors: vec![3, 3] },
];

/// Every identity on every gamma of every preset, the bilinear round trip
/// where both hypotheses hold, and generic-vs-delta agreement.
fn properties() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut gammas_checked = 0;
    for make in PROPERTY_PRESETS {
        let preset = make();
        let label = preset.label();
        let g = GroupTable::from_preset(&preset, DEFAULT_ORDER_CAP)?;
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP)?;
        let gens = aut.generator_perms();
        let generic = enumerate_gammas_generic(&g, &aut, DEFAULT_SEARCH_BUDGET)?;
        let setup = DeltaSetup::new(&g).ok();
        for gm in &generic {
            gammas_checked += 1;
            let mut reports = structural_checks(&g, gm);
            reports.push(formulas_check(&g, &aut, gm));
            for r in reports.iter().filter(|r| !r.passed) {
                failures.push(format!("{label}: {} ({})", r.name, r.detail));
            }
            if !is_normal_in_hol(&g, &aut, gm) {
                failures.push(format!("{label}: gamma is not normal in Hol(G)"));
            }
            if let (Some(setup), (true, true)) = (&setup, central_hypotheses(&g, gm)) {
                let back = setup.delta_from_gamma(&g, gm).and_then(|d| setup.gamma_from_delta(&g, &d, &gens));
                if !back.is_ok_and(|b| b.signature(&g) == gm.signature(&g)) {
                    failures.push(format!("{label}: bilinear round trip fails"));
                }
            }
        }
        if !g.is_abelian() {
            let setup = DeltaSetup::new(&g)?;
            let sol = setup.enumerate(&gens, 1_000_000);
            let from_delta: Vec<GammaMap> = sol
                .all
                .unwrap_or_default()
                .iter()
                .map(|d| setup.gamma_from_delta(&g, d, &gens))
                .collect::<Result<_>>()?;
            let cmp = compare(&g, &generic, &from_delta);
            if !cmp.agree || !cmp.outside_correspondence.is_empty() {
                failures.push(format!(
                    "{label}: generic {} vs delta {} ({} outside)",
                    cmp.generic_count,
                    cmp.delta_count,
                    cmp.outside_correspondence.len()
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok((true, format!("{gammas_checked} gamma functions on {} presets", PROPERTY_PRESETS.len())))
    } else {
        Ok((false, failures.join("; ")))
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<(bool, String)>); 7] = [
        ("G_p suite", || suite(Suite::Gp)),
        ("H_p suite", || suite(Suite::Hp)),
        ("free class-two exponent-p suite", || suite(Suite::Free)),
        ("power-map suite", || suite(Suite::Powers)),
        ("abelian suite", || suite(Suite::Abelian)),
        ("symmetric bilinear dimension and theta_Delta family", || suite(Suite::BigDeltaDim)),
        ("property suites", properties),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!("criterion {} {}: {} ({detail})", i + 1, if ok { "PASS" } else { "FAIL" }, name);
    }
    assert!(all, "some acceptance criteria failed");
}
