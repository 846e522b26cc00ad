//! Reproduction suites: fixed parameter grids checked against the expected
//! values in `data/repro_manifest.json`.

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::delta::solver::rank;
use crate::delta::{symmetric_delta_space, AllCentralGroup, AllCentralSpec, BilinearDelta, DeltaSetup};
use crate::error::{HoloError, Result};
use crate::experiments::config::{RunConfig, Strategy};
use crate::experiments::families::{gp_gamma, gp_theta, hp_gamma, inv_mod};
use crate::experiments::pipeline::{prepare, run_jc, run_tgroup, Prepared};
use crate::group::search::DEFAULT_SEARCH_BUDGET;
use crate::group::Preset;
use crate::tgroup::power::{central_quotient_exponent, gamma_is_inner_power, power_theta_family, rho_to_theta_d_holds};
use crate::tgroup::theta::{compose, gamma_signature_from_theta, invert};

const MANIFEST: &str = include_str!("../../data/repro_manifest.json");
const FIXTURE: &str = include_str!("../../data/all_central_p3_n4.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gp,
    Hp,
    Free,
    Powers,
    BigDeltaDim,
    Abelian,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Gp, Suite::Hp, Suite::Free, Suite::Powers, Suite::BigDeltaDim, Suite::Abelian];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Gp => "gp",
            Suite::Hp => "hp",
            Suite::Free => "free",
            Suite::Powers => "powers",
            Suite::BigDeltaDim => "big-delta-dim",
            Suite::Abelian => "abelian",
        }
    }
}

impl FromStr for Suite {
    type Err = HoloError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| HoloError::InvalidConfig(format!("unknown suite {s}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReproOptions {
    /// Adds the p = 7 groups to the gp and powers grids.
    pub include_p7: bool,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub suite: String,
    pub group: String,
    pub check: String,
    pub claim: String,
    pub expected: Value,
    pub computed: Value,
    pub matched: bool,
    /// Wall time of the computation shared by all checks on this group.
    pub wall_ms: u128,
}

#[derive(Deserialize)]
struct Manifest {
    claims: BTreeMap<String, String>,
    expected: Vec<Expected>,
}

#[derive(Deserialize)]
struct Expected {
    suite: String,
    group: String,
    check: String,
    value: Value,
}

fn manifest() -> Result<Manifest> {
    Ok(serde_json::from_str(MANIFEST)?)
}

/// Computed values for one group, in check order.
struct GroupRun {
    group: String,
    values: Vec<(&'static str, Value)>,
    wall_ms: u128,
}

fn timed(group: String, f: impl FnOnce() -> Result<Vec<(&'static str, Value)>>) -> Result<GroupRun> {
    let start = Instant::now();
    let values = f()?;
    Ok(GroupRun { group, values, wall_ms: start.elapsed().as_millis() })
}

fn config(preset: Preset, opts: &ReproOptions, strategy: Strategy) -> RunConfig {
    let mut cfg = RunConfig::preset(preset).with_strategy(strategy);
    cfg.cache_dir = opts.cache_dir.clone();
    cfg
}

fn prepared(preset: Preset, opts: &ReproOptions, strategy: Strategy) -> Result<Prepared> {
    prepare(&config(preset, opts, strategy), strategy != Strategy::Delta)
}

pub fn run_suite(suite: Suite, opts: &ReproOptions) -> Result<Vec<ReproReport>> {
    let runs = match suite {
        Suite::Gp => gp_suite(opts)?,
        Suite::Hp => hp_suite(opts)?,
        Suite::Free => free_suite(opts)?,
        Suite::Powers => powers_suite(opts)?,
        Suite::BigDeltaDim => big_delta_suite()?,
        Suite::Abelian => abelian_suite(opts)?,
    };
    let m = manifest()?;
    let mut reports = Vec::new();
    for run in runs {
        for (check, computed) in run.values {
            let key = format!("{}.{check}", suite.id());
            let exp = m
                .expected
                .iter()
                .find(|e| e.suite == suite.id() && e.group == run.group && e.check == check)
                .ok_or_else(|| HoloError::InvalidConfig(format!("no expected value for {key} on {}", run.group)))?;
            let claim = m
                .claims
                .get(&key)
                .ok_or_else(|| HoloError::InvalidConfig(format!("no claim text for {key}")))?;
            reports.push(ReproReport {
                suite: suite.id().to_string(),
                group: run.group.clone(),
                check: check.to_string(),
                claim: claim.clone(),
                matched: exp.value == computed,
                expected: exp.value.clone(),
                computed,
                wall_ms: run.wall_ms,
            });
        }
    }
    Ok(reports)
}

/// `MismatchFound` listing every failed check, or `Ok` when all match.
pub fn check_reports(reports: &[ReproReport]) -> Result<()> {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.matched)
        .map(|r| format!("{} {} {}: expected {}, computed {}", r.suite, r.group, r.check, r.expected, r.computed))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(HoloError::MismatchFound(failed.join("; ")))
    }
}

fn gp_suite(opts: &ReproOptions) -> Result<Vec<GroupRun>> {
    let mut grid = vec![(3u64, Strategy::Both), (5, Strategy::Both)];
    if opts.include_p7 {
        // Aut(G_7) is too large to list, so only the delta path applies.
        grid.push((7, Strategy::Delta));
    }
    grid.into_iter()
        .map(|(p, strategy)| timed(format!("G_{p}"), || gp_checks(p, strategy, opts)))
        .collect()
}

fn gp_checks(p: u64, strategy: Strategy, opts: &ReproOptions) -> Result<Vec<(&'static str, Value)>> {
    let prep = prepared(Preset::Gp { p }, opts, strategy)?;
    let g = &prep.group;
    let jc = run_jc(&prep, strategy, DEFAULT_SEARCH_BUDGET)?;
    let hc_count = jc.members.iter().filter(|n| n.iso_to_g()).count();
    let (_, report) = run_tgroup(&prep, &jc)?;
    let pi = p as i64;

    let family: HashSet<Vec<u32>> = (0..pi)
        .flat_map(|s| (0..pi).map(move |t| (s, t)))
        .map(|(s, t)| gp_gamma(g, s, t).map(|gm| gm.signature(g)))
        .collect::<Result<_>>()?;
    let found: HashSet<Vec<u32>> = jc.members.iter().map(|n| n.gamma.signature(g)).collect();

    // Delta coordinates of gamma_{s,t} are linear in (s, t).
    let setup = DeltaSetup::new(g)?;
    let coords = |s: i64, t: i64| -> Result<BilinearDelta> { setup.delta_from_gamma(g, &gp_gamma(g, s, t)?) };
    let (e1, e2) = (coords(1, 0)?, coords(0, 1)?);
    let mut linear = rank(&[e1.values.clone(), e2.values.clone()], e1.values.len(), p) == 2;
    for s in 0..pi {
        for tt in 0..pi {
            let mut expect = setup.zero();
            for _ in 0..s {
                expect = setup.add(&expect, &e1);
            }
            for _ in 0..tt {
                expect = setup.add(&expect, &e2);
            }
            linear &= coords(s, tt)? == expect;
        }
    }

    // theta_{d,s} theta_{e,u} has the class of theta_{de, s e' + u}.
    let mut thetas = BTreeMap::new();
    for d in 1..pi {
        for s in 0..pi {
            let (theta, gamma) = gp_theta(g, d, s)?;
            thetas.insert((d, s), (theta, gamma.signature(g)));
        }
    }
    let mut law_holds = 0u64;
    for (&(d, s), (t1, _)) in &thetas {
        for (&(e, u), (t2, _)) in &thetas {
            let prod = compose(t1, t2);
            let target = &thetas[&((d * e) % pi, (s * inv_mod(e, pi) + u) % pi)].1;
            if &gamma_signature_from_theta(g, &prod, &invert(&prod)) == target {
                law_holds += 1;
            }
        }
    }
    Ok(vec![
        ("jc_count", json!(jc.members.len())),
        ("hc_count", json!(hc_count)),
        ("t_order", json!(report.order)),
        ("t_abelian", json!(report.abelian)),
        ("agl1p", json!(report.agl1p)),
        ("involution_subgroup_index", json!(report.inv_subgroup_index)),
        ("gamma_family_is_jc", json!(family == found)),
        ("delta_coordinates_linear", json!(linear)),
        ("theta_law_pairs", json!(law_holds)),
    ])
}

fn hp_suite(opts: &ReproOptions) -> Result<Vec<GroupRun>> {
    [3u64, 5, 7]
        .into_iter()
        .map(|p| timed(format!("H_{p}"), || hp_checks(p, opts)))
        .collect()
}

fn hp_checks(p: u64, opts: &ReproOptions) -> Result<Vec<(&'static str, Value)>> {
    let prep = prepared(Preset::Hp { p }, opts, Strategy::Both)?;
    let g = &prep.group;
    let jc = run_jc(&prep, Strategy::Both, DEFAULT_SEARCH_BUDGET)?;
    let (_, report) = run_tgroup(&prep, &jc)?;
    let outside: Vec<_> = jc.members.iter().filter(|n| !n.iso_to_g()).collect();
    let mut outside_t = Vec::new();
    for n in &outside {
        let sig = n.gamma.signature(g);
        for t in 0..p as i64 {
            if hp_gamma(g, t)?.signature(g) == sig {
                outside_t.push(json!({"t": t, "circle_abelian": n.circle_abelian}));
            }
        }
    }
    Ok(vec![
        ("jc_count", json!(jc.members.len())),
        ("t_order", json!(report.order)),
        ("t_cyclic", json!(report.cyclic)),
        ("outside_h", json!(outside_t)),
    ])
}

fn free_suite(opts: &ReproOptions) -> Result<Vec<GroupRun>> {
    [(2usize, 3u64, Strategy::Both), (2, 5, Strategy::Both), (3, 3, Strategy::Delta)]
        .into_iter()
        .map(|(n, p, s)| timed(format!("free(n={n},p={p})"), || free_checks(n, p, s, opts)))
        .collect()
}

fn free_checks(n: usize, p: u64, strategy: Strategy, opts: &ReproOptions) -> Result<Vec<(&'static str, Value)>> {
    let prep = prepared(Preset::FreeClassTwoExpP { p, n }, opts, strategy)?;
    let g = &prep.group;
    let jc = run_jc(&prep, strategy, DEFAULT_SEARCH_BUDGET)?;
    let (_, report) = run_tgroup(&prep, &jc)?;
    let setup = DeltaSetup::new(g)?;
    let sol = setup.enumerate(&prep.aut_gens, 0);
    let comm = setup.commutator_delta(g, 1)?;
    // dimension one and the commutator map a nonzero solution
    let commutator_span = sol.dimension == 1
        && comm != setup.zero()
        && prep.aut_gens.iter().all(|a| setup.is_equivariant(&comm, a));
    let mut outside_c = Vec::new();
    for m in jc.members.iter().filter(|m| !m.iso_to_g()) {
        let d = setup.delta_from_gamma(g, &m.gamma)?;
        for c in 0..p as i64 {
            if setup.commutator_delta(g, c)? == d {
                outside_c.push(json!({"c": c, "circle_abelian": m.circle_abelian}));
            }
        }
    }
    Ok(vec![
        ("delta_dimension", json!(sol.dimension)),
        ("solutions_are_commutator_multiples", json!(commutator_span)),
        ("jc_count", json!(jc.members.len())),
        ("t_order", json!(report.order)),
        ("t_cyclic", json!(report.cyclic)),
        ("outside_h", json!(outside_c)),
    ])
}

fn powers_suite(opts: &ReproOptions) -> Result<Vec<GroupRun>> {
    let mut presets = vec![
        Preset::Gp { p: 3 },
        Preset::Gp { p: 5 },
        Preset::Hp { p: 3 },
        Preset::Hp { p: 5 },
        Preset::Hp { p: 7 },
        Preset::FreeClassTwoExpP { p: 3, n: 2 },
        Preset::FreeClassTwoExpP { p: 5, n: 2 },
        Preset::Abelian { factors: vec![9] },
        Preset::Abelian { factors: vec![25] },
        Preset::Abelian { factors: vec![27] },
        Preset::Abelian { factors: vec![3, 3] },
    ];
    if opts.include_p7 {
        presets.push(Preset::Gp { p: 7 });
    }
    presets
        .into_iter()
        .map(|preset| timed(preset.label(), || powers_checks(preset.clone(), opts)))
        .collect()
}

fn euler_phi_prime_power(r: u64, p: u64) -> u64 {
    if r == 1 {
        1
    } else {
        r / p * (p - 1)
    }
}

fn powers_checks(preset: Preset, opts: &ReproOptions) -> Result<Vec<(&'static str, Value)>> {
    let prep = prepared(preset, opts, Strategy::Delta)?;
    let g = &prep.group;
    let p = g.prime().ok_or(HoloError::NotPGroup)?;
    let r = central_quotient_exponent(g)?;
    let family = power_theta_family(g, &prep.aut_gens)?;
    let sigs: Vec<Vec<u32>> = family.iter().map(|(_, c)| c.gamma.signature(g)).collect();
    let distinct = sigs.iter().collect::<HashSet<_>>().len();
    let mut closed = true;
    for (d1, c1) in &family {
        for (d2, c2) in &family {
            let prod = compose(&c1.theta, &c2.theta);
            let key = if r == 1 { 1 } else { d1 * d2 % r };
            let target = family.iter().position(|(d, _)| *d == key);
            closed &= target.is_some_and(|i| gamma_signature_from_theta(g, &prod, &invert(&prod)) == sigs[i]);
        }
    }
    // the units mod r form a cyclic group; the class map is injective and
    // multiplicative, so the image is cyclic when some d has full order
    let has_generator = family.iter().any(|(d, _)| {
        if r == 1 {
            return family.len() == 1;
        }
        let mut x = *d % r;
        let mut k = 1;
        while x != 1 {
            x = x * d % r;
            k += 1;
        }
        k == family.len()
    });
    let rho_identity = family.iter().all(|(d, _)| rho_to_theta_d_holds(g, *d as i64));
    let gamma_form = family.iter().all(|(d, c)| gamma_is_inner_power(g, c, *d as i64));
    Ok(vec![
        ("central_quotient_exponent", json!(r)),
        ("distinct_classes", json!(distinct)),
        ("expected_order_phi", json!(euler_phi_prime_power(r, p))),
        ("closed_under_composition", json!(closed)),
        ("cyclic", json!(has_generator)),
        ("rho_to_theta_d_identity", json!(rho_identity)),
        ("gamma_is_inner_power", json!(gamma_form)),
    ])
}

/// The checks on the frozen all-central fixture group.
pub fn all_central_checks(spec: &AllCentralSpec, pair_samples: usize) -> Result<Vec<(&'static str, Value)>> {
    let group = AllCentralGroup::new(spec)?;
    let report = group.centrality()?;
    let (dim, basis) = symmetric_delta_space(group.p, group.n);
    let mut thetas = Vec::with_capacity(basis.len());
    let mut recovered = Vec::with_capacity(basis.len());
    for d in &basis {
        let theta = group.theta_delta(d)?;
        recovered.push(group.delta_from_theta(&theta).values);
        thetas.push(theta);
    }
    let round_trip = recovered.iter().zip(&basis).all(|(r, d)| r == &d.values);
    let log_order = rank(&recovered, recovered.first().map_or(0, Vec::len), group.p);
    let p = group.p;
    let add = |a: &BilinearDelta, b: &BilinearDelta| BilinearDelta {
        values: a.values.iter().zip(&b.values).map(|(x, y)| (x + y) % p).collect(),
    };
    let mut law = true;
    let k = basis.len();
    for s in 0..pair_samples.min(k * k) {
        // spread the samples over the basis pairs deterministically
        let (i, j) = (s % k, (s * 7 + 3) % k);
        let sum = group.theta_delta(&add(&basis[i], &basis[j]))?;
        law &= compose(&thetas[i], &thetas[j]) == sum && compose(&thetas[j], &thetas[i]) == sum;
    }
    Ok(vec![
        ("fixture_all_central", json!(report.all_central)),
        ("fixture_symmetric_dimension", json!(dim)),
        ("fixture_theta_round_trip", json!(round_trip)),
        ("fixture_theta_subgroup_log_order", json!(log_order)),
        ("fixture_theta_law", json!(law)),
    ])
}

fn big_delta_suite() -> Result<Vec<GroupRun>> {
    let mut runs = Vec::new();
    for (p, n) in [(3u64, 4usize), (3, 5)] {
        runs.push(timed(format!("shape(p={p},n={n})"), || {
            Ok(vec![("symmetric_dimension", json!(symmetric_delta_space(p, n).0))])
        })?);
    }
    let spec: AllCentralSpec = serde_json::from_str(FIXTURE)?;
    runs.push(timed("all_central_p3_n4".into(), || all_central_checks(&spec, 32))?);
    Ok(runs)
}

fn abelian_suite(opts: &ReproOptions) -> Result<Vec<GroupRun>> {
    [vec![9u64], vec![25], vec![27], vec![3, 3]]
        .into_iter()
        .map(|factors| {
            let preset = Preset::Abelian { factors };
            timed(preset.label(), || {
                let prep = prepared(preset.clone(), opts, Strategy::Generic)?;
                let jc = run_jc(&prep, Strategy::Generic, DEFAULT_SEARCH_BUDGET)?;
                let (_, report) = run_tgroup(&prep, &jc)?;
                Ok(vec![
                    ("hc_count", json!(jc.members.iter().filter(|n| n.iso_to_g()).count())),
                    ("t_order", json!(report.order)),
                ])
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses_and_every_check_has_a_claim() {
        let m = manifest().unwrap();
        for e in &m.expected {
            let key = format!("{}.{}", e.suite, e.check);
            assert!(m.claims.contains_key(&key), "{key}");
            assert!(Suite::from_str(&e.suite).is_ok());
        }
    }
}
