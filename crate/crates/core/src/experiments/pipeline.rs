//! Drivers shared by the CLI and the reproduction suites.

use std::collections::HashSet;

use log::info;
use serde::Serialize;

use crate::delta::{DeltaExport, DeltaSetup};
use crate::error::{HoloError, Result};
use crate::experiments::cache::{cache_aut, load_aut_or_warn};
use crate::experiments::config::{RunConfig, Strategy};
use crate::group::{automorphism_generators, automorphism_group, AutList, GroupTable};
use crate::holomorph::properties::central_hypotheses;
use crate::holomorph::regular::RegularSubgroupRecord;
use crate::holomorph::{enumerate_gammas_generic, jc_set, GammaMap, RegularSubgroup};
use crate::tgroup::{analyze, build_t_group, TGroup, TReport};

/// Largest number of bilinear maps listed by the delta strategy.
pub const DELTA_LIST_CAP: u64 = 1_000_000;

/// A group with its automorphism data.
pub struct Prepared {
    pub label: String,
    pub group: GroupTable,
    pub aut_gens: Vec<Vec<u32>>,
    pub aut_list: Option<AutList>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub order: usize,
    pub prime: Option<u64>,
    pub exponent: u64,
    pub abelian: bool,
    pub class_le_two: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub frattini_order: Option<usize>,
    pub minimal_generators: usize,
    pub canonical_hash: String,
}

pub fn load_group(cfg: &RunConfig) -> Result<GroupTable> {
    cfg.validate()?;
    GroupTable::from_presentation(&cfg.presentation()?, cfg.order_cap)
}

pub fn summary(label: &str, g: &GroupTable) -> GroupSummary {
    GroupSummary {
        group: label.to_string(),
        order: g.order(),
        prime: g.prime(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
        class_le_two: g.is_class_le_two(),
        center_order: g.center().order(),
        derived_order: g.derived().order(),
        frattini_order: g.frattini().ok().map(|f| f.order()),
        minimal_generators: g.gens().len(),
        canonical_hash: g.canonical_hash(),
    }
}

/// Builds the group and its automorphism data, using the cache when
/// configured. The full list is computed only when `need_list`.
pub fn prepare(cfg: &RunConfig, need_list: bool) -> Result<Prepared> {
    let group = load_group(cfg)?;
    let label = cfg.label();
    let cached = cfg.cache_dir.as_deref().and_then(|d| load_aut_or_warn(d, &group));
    let (aut_gens, aut_list, fresh) = match cached {
        Some(c) if c.list.is_some() || !need_list => (c.generators, c.list, false),
        _ if need_list => {
            let list = automorphism_group(&group, cfg.budget, cfg.aut_memory_cap).map_err(|e| match e {
                HoloError::AutListTooLarge(msg) => {
                    HoloError::AutListTooLarge(format!("{msg}; the delta strategy needs only generators"))
                }
                e => e,
            })?;
            (list.generator_perms(), Some(list), true)
        }
        _ => (automorphism_generators(&group, cfg.budget)?, None, true),
    };
    if fresh {
        if let Some(dir) = &cfg.cache_dir {
            cache_aut(dir, &group, &aut_gens, aut_list.as_ref())?;
        }
    } else {
        info!("automorphism data for {label} taken from the cache");
    }
    Ok(Prepared { label, group, aut_gens, aut_list })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaSummary {
    pub shape: (usize, usize, usize),
    pub dimension: usize,
    pub basis: Vec<DeltaExport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub generic_count: usize,
    pub delta_count: usize,
    /// Gamma signatures of generic results failing either check of
    /// [`central_hypotheses`].
    pub outside_correspondence: Vec<Vec<u32>>,
    pub agree: bool,
}

pub struct JcOutcome {
    pub members: Vec<RegularSubgroup>,
    pub delta: Option<DeltaSummary>,
    pub comparison: Option<Comparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JcReport {
    pub group: String,
    pub strategy: Strategy,
    pub count: usize,
    pub hc_count: usize,
    pub members: Vec<RegularSubgroupRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

fn generic_gammas(prep: &Prepared, budget: u64) -> Result<Vec<GammaMap>> {
    let aut = prep
        .aut_list
        .as_ref()
        .ok_or_else(|| HoloError::InvalidConfig("the generic strategy needs the full automorphism list".into()))?;
    enumerate_gammas_generic(&prep.group, aut, budget)
}

/// Gamma functions of all equivariant bilinear maps.
pub fn delta_gammas(prep: &Prepared) -> Result<(Vec<GammaMap>, DeltaSummary)> {
    let g = &prep.group;
    let setup = DeltaSetup::new(g)?;
    let sol = setup.enumerate(&prep.aut_gens, DELTA_LIST_CAP);
    let all = sol
        .all
        .as_ref()
        .ok_or_else(|| HoloError::SearchBudgetExceeded(DELTA_LIST_CAP))?;
    let mut gammas = Vec::with_capacity(all.len());
    for d in all {
        gammas.push(setup.gamma_from_delta(g, d, &prep.aut_gens)?);
    }
    let summary = DeltaSummary {
        shape: setup.shape(),
        dimension: sol.dimension,
        basis: sol.basis.iter().map(|d| setup.export(d, true, sol.dimension)).collect(),
    };
    Ok((gammas, summary))
}

/// Compares the generic list against the delta list: every generic gamma
/// satisfying both hypotheses must come from a bilinear map and vice versa.
pub fn compare(g: &GroupTable, generic: &[GammaMap], delta: &[GammaMap]) -> Comparison {
    let mut outside = Vec::new();
    let mut inside: HashSet<Vec<u32>> = HashSet::new();
    for gm in generic {
        let (a, b) = central_hypotheses(g, gm);
        if a && b {
            inside.insert(gm.signature(g));
        } else {
            outside.push(gm.signature(g));
        }
    }
    let from_delta: HashSet<Vec<u32>> = delta.iter().map(|gm| gm.signature(g)).collect();
    Comparison {
        generic_count: generic.len(),
        delta_count: delta.len(),
        outside_correspondence: outside,
        agree: inside == from_delta && from_delta.len() == delta.len(),
    }
}

pub fn run_jc(prep: &Prepared, strategy: Strategy, budget: u64) -> Result<JcOutcome> {
    let g = &prep.group;
    let (gammas, delta, comparison) = match strategy {
        Strategy::Generic => (generic_gammas(prep, budget)?, None, None),
        Strategy::Delta => {
            let (gammas, summary) = delta_gammas(prep)?;
            (gammas, Some(summary), None)
        }
        Strategy::Both => {
            let generic = generic_gammas(prep, budget)?;
            let (from_delta, summary) = delta_gammas(prep)?;
            let cmp = compare(g, &generic, &from_delta);
            if !cmp.agree {
                return Err(HoloError::MismatchFound(format!(
                    "generic strategy finds {} gamma functions ({} outside the correspondence), delta strategy {}",
                    cmp.generic_count,
                    cmp.outside_correspondence.len(),
                    cmp.delta_count
                )));
            }
            (generic, Some(summary), Some(cmp))
        }
    };
    let members = jc_set(g, gammas, budget)?;
    Ok(JcOutcome { members, delta, comparison })
}

pub fn jc_report(prep: &Prepared, strategy: Strategy, out: JcOutcome, only_hc: bool) -> JcReport {
    let hc_count = out.members.iter().filter(|n| n.iso_to_g()).count();
    let members: Vec<RegularSubgroupRecord> = out
        .members
        .iter()
        .filter(|n| !only_hc || n.iso_to_g())
        .map(|n| n.record(&prep.group))
        .collect();
    JcReport {
        group: prep.label.clone(),
        strategy,
        count: members.len(),
        hc_count,
        members,
        delta: out.delta,
        comparison: out.comparison,
    }
}

/// `T(G)` and its report.
pub fn run_tgroup(prep: &Prepared, jc: &JcOutcome) -> Result<(TGroup, TReport)> {
    let hc: Vec<&RegularSubgroup> = jc.members.iter().filter(|n| n.iso_to_g()).collect();
    let t = build_t_group(&prep.group, &hc)?;
    let p = prep.group.prime().ok_or(HoloError::NotPGroup)?;
    let report = analyze(&t, &prep.group, p)?;
    Ok((t, report))
}
