//! Exhaustive search for gamma functions over a full automorphism list.
//!
//! Values on the minimal generators are chosen by backtracking, extended to
//! all of `G` by the anti-homomorphism law and rejected on the first
//! conflict; survivors are checked for equivariance. A candidate value
//! `alpha` for a generator `s` is kept only if its order divides the order of
//! `s` and it commutes with the stabiliser of `s` in `Aut(G)`, both of which
//! every gamma function satisfies.

use log::debug;

use crate::error::{HoloError, Result};
use crate::group::{AutList, GroupTable};
use crate::holomorph::gamma::GammaMap;

fn aut_order(aut: &AutList, a: u32) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != aut.identity {
        x = aut.compose(x, a);
        k += 1;
    }
    k
}

/// Every gamma function of `g`, sorted by the vector of automorphism indices.
pub fn enumerate_gammas_generic(g: &GroupTable, aut: &AutList, budget: u64) -> Result<Vec<GammaMap>> {
    let gens = g.gens();
    let d = gens.len();
    if d == 0 {
        return Ok(vec![GammaMap::identity(g)]);
    }
    let n_aut = aut.len() as u32;
    let orders: Vec<u64> = (0..n_aut).map(|a| aut_order(aut, a)).collect();
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(d);
    for &s in gens {
        let stab: Vec<u32> = (0..n_aut).filter(|&b| aut.set.apply(b, s) == s).collect();
        let c: Vec<u32> = (0..n_aut)
            .filter(|&a| g.order_of(s) % orders[a as usize] == 0)
            .filter(|&a| stab.iter().all(|&b| aut.compose(a, b) == aut.compose(b, a)))
            .collect();
        debug!("generator {s}: {} candidate values, stabiliser of order {}", c.len(), stab.len());
        candidates.push(c);
    }

    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut choice = vec![0u32; d];
    let mut steps = 0u64;
    let mut values = vec![u32::MAX; g.order()];
    let gen_perms = aut.generator_perms();
    let inv_gens: Vec<u32> = aut.generators.iter().map(|&b| aut.inv[b as usize]).collect();

    fn rec(
        k: usize,
        ctx: &mut Search<'_>,
        choice: &mut Vec<u32>,
        candidates: &[Vec<u32>],
        values: &mut [u32],
        found: &mut Vec<Vec<u32>>,
        steps: &mut u64,
    ) -> Result<()> {
        if k == choice.len() {
            if ctx.extend(choice, values, steps)? && ctx.equivariant(values) {
                found.push(values.to_vec());
            }
            return Ok(());
        }
        for &a in &candidates[k] {
            choice[k] = a;
            rec(k + 1, ctx, choice, candidates, values, found, steps)?;
        }
        Ok(())
    }

    let mut ctx = Search { g, aut, budget, gen_perms: &gen_perms, inv_gens: &inv_gens };
    rec(0, &mut ctx, &mut choice, &candidates, &mut values, &mut found, &mut steps)?;
    found.sort();
    debug!("{} gamma functions after {steps} propagation steps", found.len());
    found
        .into_iter()
        .map(|v| GammaMap::from_fn(g, |h| aut.set.perm(v[h as usize]).to_vec()))
        .collect()
}

struct Search<'a> {
    g: &'a GroupTable,
    aut: &'a AutList,
    budget: u64,
    gen_perms: &'a [Vec<u32>],
    inv_gens: &'a [u32],
}

impl Search<'_> {
    /// Fills `values` from the generator choice; false on a conflict.
    fn extend(&self, choice: &[u32], values: &mut [u32], steps: &mut u64) -> Result<bool> {
        let g = self.g;
        values[0] = self.aut.identity;
        for &b in &g.bfs_order()[1..] {
            let (pa, k) = g.tree_parent(b);
            values[b as usize] = self.aut.compose(choice[k], values[pa as usize]);
        }
        for x in 0..g.order() as u32 {
            for (k, &s) in g.gens().iter().enumerate() {
                *steps += 1;
                if *steps > self.budget {
                    return Err(HoloError::SearchBudgetExceeded(self.budget));
                }
                if values[g.mul(x, s) as usize] != self.aut.compose(choice[k], values[x as usize]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn equivariant(&self, values: &[u32]) -> bool {
        let aut = self.aut;
        self.gen_perms.iter().zip(&aut.generators).zip(self.inv_gens).all(|((beta, &b), &bi)| {
            self.g.gens().iter().all(|&s| {
                let lhs = values[beta[s as usize] as usize];
                let rhs = aut.compose(aut.compose(bi, values[s as usize]), b);
                lhs == rhs
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::aut::DEFAULT_AUT_MEMORY_CAP;
    use crate::group::search::DEFAULT_SEARCH_BUDGET;
    use crate::group::{automorphism_group, Preset, DEFAULT_ORDER_CAP};

    fn count(p: Preset) -> usize {
        let g = GroupTable::from_preset(&p, DEFAULT_ORDER_CAP).unwrap();
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        let gammas = enumerate_gammas_generic(&g, &aut, DEFAULT_SEARCH_BUDGET).unwrap();
        for gm in &gammas {
            gm.validate(&g, &aut.generator_perms()).unwrap();
        }
        gammas.len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(Preset::Hp { p: 3 }), 3);
        assert_eq!(count(Preset::Gp { p: 3 }), 9);
        assert_eq!(count(Preset::Abelian { factors: vec![9] }), 1);
    }
}
