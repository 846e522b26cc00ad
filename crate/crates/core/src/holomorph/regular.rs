use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::search::isomorphism_search;
use crate::group::GroupTable;
use crate::holomorph::gamma::GammaMap;

/// A regular subgroup `N = { (gamma(h), h) }` normal in `Hol(G)`.
///
/// The circle group `(G, o)` is not stored; `iso` is the first isomorphism
/// `G -> (G, o)` in search order when one exists. An `N` isomorphic to `G`
/// has normaliser of order `|Hol(N)| = |Hol(G)|` in `S(G)`, and that
/// normaliser contains `Hol(G)`, so the two coincide and membership in
/// `H(G)` is decided by the isomorphism test alone.
#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    pub gamma: GammaMap,
    pub circle_abelian: bool,
    pub iso: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularSubgroupRecord {
    pub gamma: Vec<u32>,
    pub automorphisms: Vec<Vec<u32>>,
    pub circle_abelian: bool,
    #[serde(rename = "iso_to_G")]
    pub iso_to_g: bool,
}

impl RegularSubgroup {
    pub fn new(g: &GroupTable, gamma: GammaMap, budget: u64) -> Result<Self> {
        let circle = gamma.circle_table(g)?;
        let circle_abelian = circle.is_abelian();
        let iso = isomorphism_search(g, &circle, budget)?;
        Ok(RegularSubgroup { gamma, circle_abelian, iso })
    }

    pub fn iso_to_g(&self) -> bool {
        self.iso.is_some()
    }

    pub fn record(&self, g: &GroupTable) -> RegularSubgroupRecord {
        let e = self.gamma.export(g);
        RegularSubgroupRecord {
            gamma: e.gamma,
            automorphisms: e.automorphisms,
            circle_abelian: self.circle_abelian,
            iso_to_g: self.iso_to_g(),
        }
    }
}

/// `J(G)` from a complete list of gamma functions.
pub fn jc_set(g: &GroupTable, gammas: Vec<GammaMap>, budget: u64) -> Result<Vec<RegularSubgroup>> {
    gammas.into_iter().map(|gm| RegularSubgroup::new(g, gm, budget)).collect()
}

/// `H(G)`: the members of `J(G)` isomorphic to `G`.
pub fn hc_set(jc: &[RegularSubgroup]) -> Vec<&RegularSubgroup> {
    jc.iter().filter(|n| n.iso_to_g()).collect()
}
