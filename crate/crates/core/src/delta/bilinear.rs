//! Equivariant bilinear maps `Delta : G/Z(G) x G/G' -> Z(G)` and their
//! correspondence with gamma functions satisfying
//! (a) `gamma(G) <= Aut_c(G)` and (b) `[Z(G), gamma(G)] = 1`, through
//! `g^{gamma(h)} = g Delta(g, h)`.
//!
//! When `G/Z(G)` has exponent `p`, bilinearity gives
//! `Delta(g, h)^p = Delta(g^p, h) = 1` and `Delta(g, h^p) = 1`, so `Delta`
//! factors through `V = G/Z(G)`, `V2 = G/Frat(G)` and `W = Omega_1(Z(G))`,
//! all elementary abelian; the search is then a linear system over `F_p`.
//! Any other `G` is rejected with `UnsupportedModuli`.

use serde::{Deserialize, Serialize};

use crate::delta::section::{ElementarySection, NONE};
use crate::delta::solver::nullspace;
use crate::error::{HoloError, Result};
use crate::group::{GroupTable, Subgroup};
use crate::holomorph::properties::central_hypotheses;
use crate::holomorph::GammaMap;

/// The three sections carrying `Delta`, with fixed bases.
#[derive(Clone, Debug)]
pub struct DeltaSetup {
    pub p: u64,
    pub v: ElementarySection,
    pub v2: ElementarySection,
    pub w: ElementarySection,
}

/// Values `Delta(v_i, v2_j)` as `W`-coordinates, flattened with index
/// `(i * dim V2 + j) * dim W + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilinearDelta {
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaExport {
    pub basis_values: Vec<Vec<Vec<u64>>>,
    pub symmetric: bool,
    pub equivariant_checked: bool,
    pub dimension: usize,
}

/// The solution space of the equivariance system.
#[derive(Clone, Debug)]
pub struct DeltaSolutions {
    pub dimension: usize,
    pub basis: Vec<BilinearDelta>,
    /// Every solution, when there are at most the requested number.
    pub all: Option<Vec<BilinearDelta>>,
}

impl DeltaSetup {
    pub fn new(g: &GroupTable) -> Result<Self> {
        let p = g.prime().ok_or(HoloError::NotPGroup)?;
        let z = g.center();
        let v = ElementarySection::quotient(g, &z, p).map_err(|_| {
            HoloError::UnsupportedModuli("G/Z(G) does not have exponent p".into())
        })?;
        let v2 = ElementarySection::quotient(g, &g.frattini()?, p)?;
        let mask: Vec<bool> =
            (0..g.order() as u32).map(|x| z.contains(x) && g.pow(x, p as i64) == 0).collect();
        let w = ElementarySection::subgroup(g, &Subgroup::from_mask(g, mask), p)?;
        Ok(DeltaSetup { p, v, v2, w })
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.v.dim(), self.v2.dim(), self.w.dim())
    }

    pub fn num_unknowns(&self) -> usize {
        let (a, b, c) = self.shape();
        a * b * c
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let (_, b, c) = self.shape();
        (i * b + j) * c + k
    }

    pub fn zero(&self) -> BilinearDelta {
        BilinearDelta { values: vec![0; self.num_unknowns()] }
    }

    /// `W`-coordinates of `Delta` at basis vectors `(v_i, v2_j)`.
    pub fn entry(&self, d: &BilinearDelta, i: usize, j: usize) -> Vec<u64> {
        (0..self.w.dim()).map(|k| d.values[self.index(i, j, k)]).collect()
    }

    /// `Delta(x, h)` as an element of `G`.
    pub fn eval(&self, d: &BilinearDelta, x: u32, h: u32) -> u32 {
        let xs = self.v.digits(self.v.code(x));
        let hs = self.v2.digits(self.v2.code(h));
        let mut out = vec![0u64; self.w.dim()];
        for (i, &xi) in xs.iter().enumerate() {
            for (j, &hj) in hs.iter().enumerate() {
                let f = xi * hj % self.p;
                if f == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + f * d.values[self.index(i, j, k)]) % self.p;
                }
            }
        }
        self.w.lift(self.w.pack(&out))
    }

    /// Linear equations `Delta(v_i^beta, v2_j^beta) = Delta(v_i, v2_j)^beta`
    /// for one automorphism.
    pub fn equivariance_rows(&self, perm: &[u32]) -> Vec<Vec<u64>> {
        let p = self.p;
        let (a, b, c) = self.shape();
        let m1 = self.v.matrix(perm);
        let m2 = self.v2.matrix(perm);
        let m3 = self.w.matrix(perm);
        let mut rows = Vec::with_capacity(a * b * c);
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let mut row = vec![0u64; a * b * c];
                    for (i2, &x) in m1[i].iter().enumerate() {
                        for (j2, &y) in m2[j].iter().enumerate() {
                            let idx = self.index(i2, j2, k);
                            row[idx] = (row[idx] + x * y) % p;
                        }
                    }
                    for (k2, m3row) in m3.iter().enumerate() {
                        let idx = self.index(i, j, k2);
                        row[idx] = (row[idx] + (p - m3row[k])) % p;
                    }
                    rows.push(row);
                }
            }
        }
        rows
    }

    pub fn is_equivariant(&self, d: &BilinearDelta, perm: &[u32]) -> bool {
        self.v.basis.iter().all(|&x| {
            self.v2.basis.iter().all(|&h| {
                self.eval(d, perm[x as usize], perm[h as usize]) == perm[self.eval(d, x, h) as usize]
            })
        })
    }

    /// All equivariant `Delta`, for `aut_gens` generating `Aut(G)`.
    pub fn enumerate(&self, aut_gens: &[Vec<u32>], list_cap: u64) -> DeltaSolutions {
        let rows: Vec<Vec<u64>> = aut_gens.iter().flat_map(|b| self.equivariance_rows(b)).collect();
        let kernel = nullspace(&rows, self.num_unknowns(), self.p);
        let basis: Vec<BilinearDelta> = kernel.into_iter().map(|values| BilinearDelta { values }).collect();
        let dimension = basis.len();
        let all = (self.p as u128)
            .checked_pow(dimension as u32)
            .filter(|&n| n <= list_cap as u128)
            .map(|n| (0..n as u64).map(|m| self.combination(&basis, m)).collect());
        DeltaSolutions { dimension, basis, all }
    }

    /// `sum_i digit_i(m) basis[i]`.
    pub fn combination(&self, basis: &[BilinearDelta], mut m: u64) -> BilinearDelta {
        let mut out = self.zero();
        for b in basis {
            let c = m % self.p;
            m /= self.p;
            for (o, &x) in out.values.iter_mut().zip(&b.values) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    pub fn add(&self, d1: &BilinearDelta, d2: &BilinearDelta) -> BilinearDelta {
        BilinearDelta { values: d1.values.iter().zip(&d2.values).map(|(a, b)| (a + b) % self.p).collect() }
    }

    /// `Delta_c(g, h) = [g, h]^c`.
    pub fn commutator_delta(&self, g: &GroupTable, c: i64) -> Result<BilinearDelta> {
        let mut d = self.zero();
        for (i, &x) in self.v.basis.iter().enumerate() {
            for (j, &h) in self.v2.basis.iter().enumerate() {
                let code = self.w.code(g.pow(g.comm(x, h), c));
                if code == NONE {
                    return Err(HoloError::UnsupportedModuli("commutator of order above p".into()));
                }
                for (k, digit) in self.w.digits(code).into_iter().enumerate() {
                    d.values[self.index(i, j, k)] = digit;
                }
            }
        }
        Ok(d)
    }

    /// For each `V2` code, the permutation `x -> x Delta(x, h)`.
    fn gamma_perms(&self, g: &GroupTable, d: &BilinearDelta) -> Vec<Vec<u32>> {
        let (a, b, c) = self.shape();
        let p = self.p;
        (0..self.v2.size() as u32)
            .map(|hc| {
                let hs = self.v2.digits(hc);
                // Delta(v_i, h) for each basis vector of V
                let rows: Vec<Vec<u64>> = (0..a)
                    .map(|i| {
                        (0..c)
                            .map(|k| (0..b).map(|j| hs[j] * self.entry(d, i, j)[k]).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                let table: Vec<u32> = (0..self.v.size() as u32)
                    .map(|xc| {
                        let xs = self.v.digits(xc);
                        let out: Vec<u64> = (0..c)
                            .map(|k| (0..a).map(|i| xs[i] * rows[i][k]).sum::<u64>() % p)
                            .collect();
                        self.w.lift(self.w.pack(&out))
                    })
                    .collect();
                (0..g.order() as u32).map(|x| g.mul(x, table[self.v.code(x) as usize])).collect()
            })
            .collect()
    }

    /// The gamma function `g^{gamma(h)} = g Delta(g, h)`, validated against
    /// both defining conditions.
    pub fn gamma_from_delta(&self, g: &GroupTable, d: &BilinearDelta, aut_gens: &[Vec<u32>]) -> Result<GammaMap> {
        let perms = self.gamma_perms(g, d);
        let gm = GammaMap::from_fn(g, |h| perms[self.v2.code(h) as usize].clone())?;
        gm.validate(g, aut_gens)?;
        Ok(gm)
    }

    /// `Delta(gZ, hG') = [g, gamma(h)]`, after checking hypotheses (a) and
    /// (b); the result is verified to reproduce `gamma` on every pair.
    pub fn delta_from_gamma(&self, g: &GroupTable, gamma: &GammaMap) -> Result<BilinearDelta> {
        let (a, b) = central_hypotheses(g, gamma);
        if !a {
            return Err(HoloError::HypothesisViolated('a'));
        }
        if !b {
            return Err(HoloError::HypothesisViolated('b'));
        }
        let mut d = self.zero();
        for (i, &x) in self.v.basis.iter().enumerate() {
            for (j, &h) in self.v2.basis.iter().enumerate() {
                let code = self.w.code(g.mul(g.inv(x), gamma.act(x, h)));
                if code == NONE {
                    return Err(HoloError::InvalidGamma("[g, gamma(h)] outside Omega_1(Z(G))".into()));
                }
                for (k, digit) in self.w.digits(code).into_iter().enumerate() {
                    d.values[self.index(i, j, k)] = digit;
                }
            }
        }
        let perms = self.gamma_perms(g, &d);
        for h in 0..g.order() as u32 {
            if perms[self.v2.code(h) as usize] != gamma.perm(h) {
                return Err(HoloError::InvalidGamma(format!(
                    "[g, gamma(h)] is not bilinear in (gZ, h Frat(G)) at h = {h}"
                )));
            }
        }
        Ok(d)
    }

    /// Whether the bases of `V` and `V2` correspond and `Delta` is symmetric
    /// in them.
    pub fn is_symmetric(&self, d: &BilinearDelta) -> bool {
        let (a, b, _) = self.shape();
        a == b
            && self.v.basis.iter().enumerate().all(|(i, &x)| {
                let mut unit = vec![0u64; b];
                unit[i] = 1;
                self.v2.code(x) == self.v2.pack(&unit)
            })
            && (0..a).all(|i| (0..i).all(|j| self.entry(d, i, j) == self.entry(d, j, i)))
    }

    pub fn export(&self, d: &BilinearDelta, equivariant_checked: bool, dimension: usize) -> DeltaExport {
        let (a, b, _) = self.shape();
        DeltaExport {
            basis_values: (0..a).map(|i| (0..b).map(|j| self.entry(d, i, j)).collect()).collect(),
            symmetric: self.is_symmetric(d),
            equivariant_checked,
            dimension,
        }
    }
}
