//! Backtracking search for isomorphisms given by images of a minimal
//! generating set.
//!
//! Images are tried in ascending element index, so results come out in
//! lexicographic order of the image tuple.

use crate::error::{HoloError, Result};
use crate::group::subgroup::Subgroup;
use crate::group::table::GroupTable;

pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Cheap invariants that must agree between isomorphic groups. The size of
/// `gens()` is an invariant only for p-groups, where it is the rank of
/// `G/Frat(G)`.
pub fn invariants_match(src: &GroupTable, dst: &GroupTable) -> bool {
    src.order() == dst.order()
        && (src.prime().is_none() || src.gens().len() == dst.gens().len())
        && src.is_abelian() == dst.is_abelian()
        && src.order_histogram() == dst.order_histogram()
        && src.center().order() == dst.center().order()
        && src.derived().order() == dst.derived().order()
}

struct Ctx<'a> {
    src: &'a GroupTable,
    dst: &'a GroupTable,
    frat: Option<Subgroup>,
    candidates: Vec<Vec<u32>>,
    pair_prod: Vec<Vec<u32>>,
    pair_comm: Vec<Vec<u32>>,
    budget: u64,
    steps: u64,
}

/// Calls `visit` with each isomorphism `src -> dst` (as a permutation of
/// element indices) until it returns `false`.
pub fn search_isomorphisms(
    src: &GroupTable,
    dst: &GroupTable,
    budget: u64,
    mut visit: impl FnMut(Vec<u32>) -> bool,
) -> Result<()> {
    if !invariants_match(src, dst) {
        return Ok(());
    }
    let d = src.gens().len();
    if d == 0 {
        visit(vec![0]);
        return Ok(());
    }
    let frat = if src.prime().is_some() { dst.frattini().ok() } else { None };
    let candidates = src
        .gens()
        .iter()
        .map(|&s| {
            (1..dst.order() as u32)
                .filter(|&c| dst.order_of(c) == src.order_of(s))
                .filter(|&c| frat.as_ref().map_or(true, |f| !f.contains(c)))
                .collect()
        })
        .collect();
    let gens = src.gens();
    let mut pair_prod = vec![vec![0; d]; d];
    let mut pair_comm = vec![vec![0; d]; d];
    for l in 0..d {
        for k in 0..d {
            pair_prod[l][k] = src.element_orders()[src.mul(gens[l], gens[k]) as usize];
            pair_comm[l][k] = src.element_orders()[src.comm(gens[l], gens[k]) as usize];
        }
    }
    let mut ctx = Ctx { src, dst, frat, candidates, pair_prod, pair_comm, budget, steps: 0 };
    let mut images = Vec::with_capacity(d);
    let span = ctx.frat.clone();
    ctx.descend(&mut images, span, &mut visit)?;
    Ok(())
}

impl Ctx<'_> {
    /// Returns `Ok(false)` once the visitor asks to stop.
    fn descend(
        &mut self,
        images: &mut Vec<u32>,
        span: Option<Subgroup>,
        visit: &mut impl FnMut(Vec<u32>) -> bool,
    ) -> Result<bool> {
        let k = images.len();
        let d = self.src.gens().len();
        if k == d {
            if let Some(phi) = self.src.extend_hom(images, self.dst) {
                let mut seen = vec![false; phi.len()];
                if phi.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)) {
                    return Ok(visit(phi));
                }
            }
            return Ok(true);
        }
        let cands = self.candidates[k].clone();
        for c in cands {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(HoloError::SearchBudgetExceeded(self.budget));
            }
            if let Some(s) = &span {
                if s.contains(c) {
                    continue;
                }
            }
            let ok = (0..k).all(|l| {
                let a = images[l];
                let orders = self.dst.element_orders();
                orders[self.dst.mul(a, c) as usize] == self.pair_prod[l][k]
                    && orders[self.dst.mul(c, a) as usize] == self.pair_prod[k][l]
                    && orders[self.dst.comm(a, c) as usize] == self.pair_comm[l][k]
            });
            if !ok {
                continue;
            }
            images.push(c);
            let next = match &span {
                Some(s) if k + 1 < d => {
                    let mut s = s.clone();
                    s.add_generator(self.dst, c);
                    Some(s)
                }
                _ => span.clone(),
            };
            let cont = self.descend(images, next, visit)?;
            images.pop();
            if !cont {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The first isomorphism in search order, if any.
pub fn isomorphism_search(src: &GroupTable, dst: &GroupTable, budget: u64) -> Result<Option<Vec<u32>>> {
    let mut found = None;
    search_isomorphisms(src, dst, budget, |phi| {
        found = Some(phi);
        false
    })?;
    Ok(found)
}
