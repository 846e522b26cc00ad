use serde::Serialize;

use crate::error::{HoloError, Result};
use crate::group::search::{isomorphism_search, DEFAULT_SEARCH_BUDGET};
use crate::group::GroupTable;
use crate::tgroup::build::TGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TReport {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub involutions: usize,
    pub inv_subgroup_order: usize,
    pub inv_subgroup_index: usize,
    pub cyclic: bool,
    pub elem_abelian_p_rank: u32,
    pub agl1p: bool,
    /// Gamma signatures (see `GammaMap::signature`), in class order.
    pub class_gammas: Vec<Vec<u32>>,
}

/// `AGL(1, p)`: pairs `(a, b)` acting by `x -> a x + b`, composed left to
/// right; `(1, 0)` is element 0.
pub fn agl1_table(p: u64) -> Result<GroupTable> {
    let elems: Vec<(u64, u64)> = (1..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let index = |(a, b): (u64, u64)| ((a - 1) * p + b) as u32;
    let mut mul = Vec::with_capacity(elems.len() * elems.len());
    for &(a1, b1) in &elems {
        for &(a2, b2) in &elems {
            // x -> a1 x + b1 -> a2 (a1 x + b1) + b2
            mul.push(index((a1 * a2 % p, (a2 * b1 + b2) % p)));
        }
    }
    GroupTable::from_table(elems.len(), mul)
}

/// Largest `k` such that the table has an elementary abelian subgroup of
/// order `p^k`.
pub fn elementary_abelian_rank(t: &GroupTable, p: u64) -> u32 {
    let order_p: Vec<u32> = (1..t.order() as u32).filter(|&x| t.order_of(x) == p).collect();
    fn grow(t: &GroupTable, cands: &[u32], chosen: &mut Vec<u32>, best: &mut u32, p: u64) {
        *best = (*best).max(chosen.len() as u32);
        let span = t.closure(chosen);
        for (i, &c) in cands.iter().enumerate() {
            if span.contains(c) || !chosen.iter().all(|&x| t.mul(x, c) == t.mul(c, x)) {
                continue;
            }
            chosen.push(c);
            grow(t, &cands[i + 1..], chosen, best, p);
            chosen.pop();
        }
    }
    let mut best = 0;
    grow(t, &order_p, &mut Vec::new(), &mut best, p);
    best
}

/// Recognises `AGL(1, p)` structurally (non-abelian of order `p(p-1)` with a
/// unique subgroup of order `p` and an element of order `p - 1`) and by an
/// explicit isomorphism; the two must agree.
pub fn is_agl1p(t: &GroupTable, p: u64) -> Result<bool> {
    let structural = !t.is_abelian()
        && t.order() as u64 == p * (p - 1)
        && (0..t.order() as u32).filter(|&x| t.order_of(x) == p).count() as u64 == p - 1
        && (0..t.order() as u32).any(|x| t.order_of(x) == p - 1);
    let explicit = t.order() as u64 == p * (p - 1)
        && isomorphism_search(t, &agl1_table(p)?, DEFAULT_SEARCH_BUDGET)?.is_some();
    if structural != explicit {
        return Err(HoloError::MismatchFound(format!(
            "AGL(1, {p}) recognition disagrees: structural {structural}, isomorphism {explicit}"
        )));
    }
    Ok(explicit)
}

pub fn analyze(tg: &TGroup, g: &GroupTable, p: u64) -> Result<TReport> {
    let t = &tg.table;
    let n = t.order() as u32;
    let invs: Vec<u32> = (0..n).filter(|&x| t.order_of(x) == 2).collect();
    let inv_sub = t.closure(&invs).order();
    Ok(TReport {
        order: t.order(),
        abelian: t.is_abelian(),
        exponent: t.exponent(),
        involutions: invs.len(),
        inv_subgroup_order: inv_sub,
        inv_subgroup_index: t.order() / inv_sub,
        cyclic: (0..n).any(|x| t.order_of(x) as usize == t.order()),
        elem_abelian_p_rank: elementary_abelian_rank(t, p),
        agl1p: is_agl1p(t, p)?,
        class_gammas: tg.classes.iter().map(|c| c.gamma.signature(g)).collect(),
    })
}
