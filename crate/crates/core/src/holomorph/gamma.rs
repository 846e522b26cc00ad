//! Maps `gamma: G -> Aut(G)` with `gamma(gh) = gamma(h) gamma(g)` and
//! `gamma(g^beta) = gamma(g)^beta`. Each one encodes the regular subgroup
//! `N = { (gamma(h), h) }` normal in the holomorph, and the circle operation
//! `g o h = g^{gamma(h)} h`.

use serde::{Deserialize, Serialize};

use crate::error::{HoloError, Result};
use crate::group::{AutSet, GroupTable};

#[derive(Clone, Debug)]
pub struct GammaMap {
    pool: AutSet,
    idx: Vec<u32>,
}

/// JSON form: `gamma[h]` indexes `automorphisms`, whose entries are the
/// images of the minimal generators of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaExport {
    pub gamma: Vec<u32>,
    pub automorphisms: Vec<Vec<u32>>,
}

fn identity_perm(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

impl GammaMap {
    /// `gamma = 1`, the subgroup `rho(G)`.
    pub fn identity(g: &GroupTable) -> Self {
        let mut pool = AutSet::new(g).expect("key fits");
        pool.insert(identity_perm(g.order()));
        GammaMap { pool, idx: vec![0; g.order()] }
    }

    /// Builds the map from a permutation for every element.
    pub fn from_fn(g: &GroupTable, mut f: impl FnMut(u32) -> Vec<u32>) -> Result<Self> {
        let mut pool = AutSet::new(g)?;
        let idx = (0..g.order() as u32).map(|h| pool.insert(f(h))).collect();
        Ok(GammaMap { pool, idx })
    }

    /// Extends values on `g.gens()` by the anti-homomorphism law along the
    /// spanning tree; fails if the extension is inconsistent.
    pub fn from_generator_values(g: &GroupTable, values: &[Vec<u32>]) -> Result<Self> {
        let n = g.order();
        let mut pool = AutSet::new(g)?;
        let one = pool.insert(identity_perm(n));
        let gen_idx: Vec<u32> = values.iter().map(|v| pool.insert(v.clone())).collect();
        let mut idx = vec![u32::MAX; n];
        idx[0] = one;
        for &b in &g.bfs_order()[1..] {
            let (pa, k) = g.tree_parent(b);
            // gamma(pa * s) = gamma(s) gamma(pa)
            let perm: Vec<u32> = {
                let s = pool.perm(gen_idx[k]);
                let q = pool.perm(idx[pa as usize]);
                s.iter().map(|&x| q[x as usize]).collect()
            };
            idx[b as usize] = pool.insert(perm);
        }
        let map = GammaMap { pool, idx };
        map.check_anti_hom(g)?;
        Ok(map)
    }

    pub fn pool(&self) -> &AutSet {
        &self.pool
    }

    pub fn pool_index(&self, h: u32) -> u32 {
        self.idx[h as usize]
    }

    pub fn perm(&self, h: u32) -> &[u32] {
        self.pool.perm(self.idx[h as usize])
    }

    /// `x^{gamma(h)}`.
    #[inline]
    pub fn act(&self, x: u32, h: u32) -> u32 {
        self.pool.apply(self.idx[h as usize], x)
    }

    /// Whether `gamma(h) = 1`.
    pub fn is_trivial_at(&self, h: u32) -> bool {
        self.pool.identity() == Some(self.idx[h as usize])
    }

    pub fn is_identity(&self) -> bool {
        self.pool.len() == 1
    }

    /// `|gamma(G)|`.
    pub fn image_size(&self) -> usize {
        self.pool.len()
    }

    /// `g o h = g^{gamma(h)} h`.
    #[inline]
    pub fn circle(&self, g: &GroupTable, x: u32, h: u32) -> u32 {
        g.mul(self.act(x, h), h)
    }

    /// Complete invariant of the map: images of the generators under
    /// `gamma` of each generator.
    pub fn signature(&self, g: &GroupTable) -> Vec<u32> {
        g.gens()
            .iter()
            .flat_map(|&h| g.gens().iter().map(move |&x| self.act(x, h)))
            .collect()
    }

    fn check_anti_hom(&self, g: &GroupTable) -> Result<()> {
        for x in 0..g.order() as u32 {
            for (k, &s) in g.gens().iter().enumerate() {
                let lhs = self.idx[g.mul(x, s) as usize];
                if self.pool.compose(self.idx[s as usize], self.idx[x as usize]) != Some(lhs) {
                    return Err(HoloError::InvalidGamma(format!(
                        "gamma(g s) != gamma(s) gamma(g) at g = {x}, generator {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks both defining conditions: values are automorphisms, the
    /// anti-homomorphism law, and equivariance under `aut_gens` (a generating
    /// set of `Aut(G)`).
    pub fn validate(&self, g: &GroupTable, aut_gens: &[Vec<u32>]) -> Result<()> {
        if self.perm(0) != identity_perm(g.order()).as_slice() {
            return Err(HoloError::InvalidGamma("gamma(1) is not the identity".into()));
        }
        for i in 0..self.pool.len() as u32 {
            if !g.is_automorphism(self.pool.perm(i)) {
                return Err(HoloError::InvalidGamma("a value is not an automorphism".into()));
            }
        }
        self.check_anti_hom(g)?;
        if let Some((s, _)) = self.equivariance_failure(g, aut_gens) {
            return Err(HoloError::InvalidGamma(format!("not equivariant at generator {s}")));
        }
        Ok(())
    }

    /// First `(generator, beta index)` with `gamma(s^beta) != gamma(s)^beta`.
    pub fn equivariance_failure(&self, g: &GroupTable, aut_gens: &[Vec<u32>]) -> Option<(u32, usize)> {
        for (bi, beta) in aut_gens.iter().enumerate() {
            let mut beta_inv = vec![0u32; beta.len()];
            for (x, &y) in beta.iter().enumerate() {
                beta_inv[y as usize] = x as u32;
            }
            for &s in g.gens() {
                let sb = beta[s as usize];
                for &t in g.gens() {
                    let lhs = self.act(t, sb);
                    let rhs = beta[self.act(beta_inv[t as usize], s) as usize];
                    if lhs != rhs {
                        return Some((s, bi));
                    }
                }
            }
        }
        None
    }

    pub fn circle_table(&self, g: &GroupTable) -> Result<GroupTable> {
        let n = g.order() as u32;
        let mut table = Vec::with_capacity((n * n) as usize);
        for x in 0..n {
            for h in 0..n {
                table.push(self.circle(g, x, h));
            }
        }
        GroupTable::from_table(n as usize, table)
    }

    pub fn circle_is_abelian(&self, g: &GroupTable) -> bool {
        let n = g.order() as u32;
        (0..n).all(|x| (x + 1..n).all(|h| self.circle(g, x, h) == self.circle(g, h, x)))
    }

    pub fn export(&self, g: &GroupTable) -> GammaExport {
        let mut auts: Vec<(Vec<u32>, u32)> =
            (0..self.pool.len() as u32).map(|i| (self.pool.images(i), i)).collect();
        auts.sort();
        let mut rank = vec![0u32; auts.len()];
        for (r, (_, i)) in auts.iter().enumerate() {
            rank[*i as usize] = r as u32;
        }
        GammaExport {
            gamma: (0..g.order() as u32).map(|h| rank[self.idx[h as usize] as usize]).collect(),
            automorphisms: auts.into_iter().map(|(imgs, _)| imgs).collect(),
        }
    }

    pub fn from_export(g: &GroupTable, e: &GammaExport) -> Result<Self> {
        if e.gamma.len() != g.order() || e.gamma.iter().any(|&i| i as usize >= e.automorphisms.len()) {
            return Err(HoloError::InvalidGamma("export has the wrong shape".into()));
        }
        let perms: Vec<Vec<u32>> = e
            .automorphisms
            .iter()
            .map(|imgs| {
                g.extend_hom(imgs, g)
                    .ok_or_else(|| HoloError::InvalidGamma("exported value is not an endomorphism".into()))
            })
            .collect::<Result<_>>()?;
        GammaMap::from_fn(g, |h| perms[e.gamma[h as usize] as usize].clone())
    }
}

impl PartialEq for GammaMap {
    fn eq(&self, other: &Self) -> bool {
        self.idx.len() == other.idx.len()
            && (0..self.idx.len() as u32).all(|h| self.perm(h) == other.perm(h))
    }
}

impl Eq for GammaMap {}
