//! Class-two groups `<x_1..x_n : x_i^p = prod_{j<k} [x_j, x_k]^{a_{i,j,k}}>`
//! of exponent-`p` commutator type, too large for a multiplication table,
//! with closed-form arithmetic; the test for all automorphisms being
//! central; and the symmetric bilinear maps `V x V -> W` with their bijections
//! `theta_Delta`.
//!
//! Elements are `x_1^{e_1} .. x_n^{e_n} w` with `w` in `W = G'`, indexed as
//! `code(e) + p^n code(w)`, the same normal form and indexing as the
//! collector for [`free_class_two`](crate::group::presentation::free_class_two)
//! with power coefficients.

use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::delta::bilinear::BilinearDelta;
use crate::delta::solver::nullspace;
use crate::error::{HoloError, Result};
use crate::group::ClassTwoPresentation;

/// Upper bound on `p^{n^2}` for the scan of `GL(n, p)`.
const MATRIX_SCAN_LIMIT: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllCentralSpec {
    pub p: u64,
    pub n: usize,
    /// `coefficients[i][pair]`, pairs `(j, k)` with `j < k` in lexicographic order.
    pub coefficients: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct AllCentralGroup {
    pub p: u64,
    pub n: usize,
    /// `C(n, 2)`.
    pub m: usize,
    pub coefficients: Vec<Vec<u64>>,
    vsize: u32,
    pairs: Vec<(usize, usize)>,
}

/// Outcome of the scan for matrices compatible with the power map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    /// Invertible `A` with `P(vA) = P(v) (wedge^2 A)`; the image of `Aut(G)`
    /// in `GL(n, p)` has this order.
    pub compatible_matrices: u64,
    pub matrices_scanned: u64,
    pub all_central: bool,
}

impl AllCentralGroup {
    pub fn new(spec: &AllCentralSpec) -> Result<Self> {
        let (p, n) = (spec.p, spec.n);
        if !crate::arith::is_prime(p) || p == 2 {
            return Err(HoloError::InvalidPresentation(format!("p = {p} is not an odd prime")));
        }
        if n < 2 {
            return Err(HoloError::ShapeMismatch(format!("need n >= 2, got {n}")));
        }
        let m = binomial(n as u64, 2) as usize;
        if spec.coefficients.len() != n || spec.coefficients.iter().any(|r| r.len() != m) {
            return Err(HoloError::ShapeMismatch(format!("coefficients must be {n} x {m}")));
        }
        let order = (p as u128).pow((n + m) as u32);
        if order > u32::MAX as u128 {
            return Err(HoloError::OrderCapExceeded { order: u64::MAX.min(order as u64), cap: u32::MAX as u64 });
        }
        let pairs = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
        Ok(AllCentralGroup {
            p,
            n,
            m,
            coefficients: spec.coefficients.iter().map(|r| r.iter().map(|a| a % p).collect()).collect(),
            vsize: p.pow(n as u32) as u32,
            pairs,
        })
    }

    /// Reads the shape produced by `free_class_two(p, n, Some(a))`.
    pub fn from_presentation(pres: &ClassTwoPresentation) -> Result<Self> {
        pres.validate()?;
        let p = pres.p;
        let total = pres.num_gens();
        let n = (1..=total).find(|&n| n + (binomial(n as u64, 2) as usize) == total).ok_or_else(|| {
            HoloError::ShapeMismatch(format!("{total} generators is not n + C(n, 2)"))
        })?;
        let expected = crate::group::presentation::free_class_two(p, n, None);
        if pres.orders != expected.orders || pres.commutators != expected.commutators {
            return Err(HoloError::ShapeMismatch("commutator relations are not those of the free class-two shape".into()));
        }
        let m = total - n;
        let mut coefficients = vec![vec![0u64; m]; n];
        for (&i, word) in &pres.powers {
            if i >= n {
                return Err(HoloError::ShapeMismatch("commutator generators must have trivial p-th powers".into()));
            }
            for &(gen, e) in word {
                if gen < n {
                    return Err(HoloError::ShapeMismatch("p-th powers must lie in the derived subgroup".into()));
                }
                coefficients[i][gen - n] = (coefficients[i][gen - n] + e) % p;
            }
        }
        AllCentralGroup::new(&AllCentralSpec { p, n, coefficients })
    }

    pub fn spec(&self) -> AllCentralSpec {
        AllCentralSpec { p: self.p, n: self.n, coefficients: self.coefficients.clone() }
    }

    pub fn order(&self) -> u64 {
        self.vsize as u64 * self.p.pow(self.m as u32)
    }

    fn digits(&self, mut c: u32, len: usize) -> Vec<u64> {
        (0..len)
            .map(|_| {
                let d = c as u64 % self.p;
                c /= self.p as u32;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d % self.p) as u32
    }

    pub fn split(&self, a: u32) -> (Vec<u64>, Vec<u64>) {
        (self.digits(a % self.vsize, self.n), self.digits(a / self.vsize, self.m))
    }

    pub fn join(&self, v: &[u64], w: &[u64]) -> u32 {
        self.pack(v) + self.vsize * self.pack(w)
    }

    pub fn generator(&self, i: usize) -> u32 {
        self.p.pow(i as u32) as u32
    }

    /// Code of the `V` part.
    #[inline]
    pub fn v_code(&self, a: u32) -> u32 {
        a % self.vsize
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (e, mut w) = self.split(a);
        let (f, w2) = self.split(b);
        for (x, y) in w.iter_mut().zip(&w2) {
            *x = (*x + y) % p;
        }
        // x_j^{e_j} x_i^{f_i} = x_i^{f_i} x_j^{e_j} [x_i, x_j]^{-e_j f_i} for i < j
        for (pair, &(i, j)) in self.pairs.iter().enumerate() {
            w[pair] = (w[pair] + (p - e[j] * f[i] % p)) % p;
        }
        let mut v = vec![0u64; self.n];
        for i in 0..self.n {
            let s = e[i] + f[i];
            v[i] = s % p;
            if s >= p {
                for (x, &a) in w.iter_mut().zip(&self.coefficients[i]) {
                    *x = (*x + a) % p;
                }
            }
        }
        self.join(&v, &w)
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn inv(&self, a: u32) -> u32 {
        // exponent p^2
        self.pow(a, self.p * self.p - 1)
    }

    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `W`-coordinates of `v_1 wedge v_2`, which is `[x^{v_1}, x^{v_2}]`.
    pub fn wedge(&self, v1: &[u64], v2: &[u64]) -> Vec<u64> {
        let p = self.p;
        self.pairs.iter().map(|&(j, k)| (v1[j] * v2[k] % p + p - v1[k] * v2[j] % p) % p).collect()
    }

    /// `W`-coordinates of `(x^v)^p`, a linear function of `v`.
    pub fn power_map(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.m];
        for (i, &vi) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(&self.coefficients[i]) {
                *o = (*o + vi * a) % self.p;
            }
        }
        out
    }

    /// Every automorphism is central iff the identity is the only invertible
    /// `A` with `P(vA) = P(v) (wedge^2 A)`: such `A` are exactly the maps on
    /// `V = G/Frat(G)` induced by automorphisms, and an automorphism acting
    /// trivially on `V` moves every element within its coset of `Frat(G) = Z(G)`.
    pub fn centrality(&self) -> Result<CentralityReport> {
        let (p, n, m) = (self.p, self.n, self.m);
        let rows = self.vsize as usize;
        let total = (rows as u128).pow(n as u32);
        if total > MATRIX_SCAN_LIMIT as u128 {
            return Err(HoloError::AutListTooLarge(format!("{total} matrices to scan")));
        }
        let wsize = p.pow(m as u32) as usize;
        let vecs: Vec<Vec<u64>> = (0..rows as u32).map(|c| self.digits(c, n)).collect();
        let power: Vec<u32> = vecs.iter().map(|v| self.pack(&self.power_map(v))).collect();
        let wedge: Vec<u32> = (0..rows * rows)
            .map(|x| self.pack(&self.wedge(&vecs[x / rows], &vecs[x % rows])))
            .collect();
        let wvecs: Vec<Vec<u64>> = (0..wsize as u32).map(|c| self.digits(c, m)).collect();
        let add = |a: u32, b: u32| -> u32 {
            let s: Vec<u64> = wvecs[a as usize].iter().zip(&wvecs[b as usize]).map(|(x, y)| (x + y) % p).collect();
            self.pack(&s)
        };
        let add_table: Vec<u32> = (0..wsize * wsize).map(|x| add((x / wsize) as u32, (x % wsize) as u32)).collect();
        let scale: Vec<Vec<u32>> = (0..p)
            .map(|k| wvecs.iter().map(|w| self.pack(&w.iter().map(|x| x * k % p).collect::<Vec<_>>())).collect())
            .collect();

        let mut row = vec![0usize; n];
        let mut wedges = vec![0u32; m];
        let mut compatible = 0u64;
        let mut scanned = 0u64;
        loop {
            scanned += 1;
            for (pair, &(j, k)) in self.pairs.iter().enumerate() {
                wedges[pair] = wedge[row[j] * rows + row[k]];
            }
            let ok = (0..n).all(|i| {
                let mut rhs = 0u32;
                for (pair, &w) in wedges.iter().enumerate() {
                    let a = self.coefficients[i][pair];
                    if a != 0 {
                        rhs = add_table[rhs as usize * wsize + scale[a as usize][w as usize] as usize];
                    }
                }
                rhs == power[row[i]]
            });
            if ok {
                let mat: Vec<Vec<u8>> = row.iter().map(|&r| vecs[r].iter().map(|&x| x as u8).collect()).collect();
                if crate::group::aut::det_mod_p(&mat, p) != 0 {
                    compatible += 1;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(CentralityReport {
                        compatible_matrices: compatible,
                        matrices_scanned: scanned,
                        all_central: compatible == 1,
                    });
                }
                row[i] += 1;
                if row[i] < rows {
                    break;
                }
                row[i] = 0;
                i += 1;
            }
        }
    }

    /// Whether the centre and the Frattini subgroup both equal `W`: the
    /// commutator pairing on `V` has trivial radical, and `G^p <= W` holds
    /// by construction.
    pub fn center_is_derived(&self) -> bool {
        let gens: Vec<u32> = (0..self.n).map(|i| self.generator(i)).collect();
        (1..self.vsize).all(|v| gens.iter().any(|&x| self.comm(v, x) != 0))
    }

    /// `Delta(x^e, x^f)` for `Delta` given on basis pairs with index
    /// `(i * n + j) * m + k`.
    pub fn delta_value(&self, d: &BilinearDelta, e: &[u64], f: &[u64]) -> Vec<u64> {
        let (n, m, p) = (self.n, self.m, self.p);
        let mut out = vec![0u64; m];
        for i in 0..n {
            for j in 0..n {
                let c = e[i] * f[j] % p;
                if c != 0 {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o = (*o + c * d.values[(i * n + j) * m + k]) % p;
                    }
                }
            }
        }
        out
    }

    /// `g o h = g Delta(g, h) h`.
    pub fn circle(&self, d: &BilinearDelta, a: u32, b: u32) -> u32 {
        let (e, _) = self.split(a);
        let (f, _) = self.split(b);
        let delta = self.join(&vec![0; self.n], &self.delta_value(d, &e, &f));
        self.mul(self.mul(a, delta), b)
    }

    /// The homomorphism `G -> (G, o)` fixing every `x_i`, built along
    /// right multiplication by generators and checked on every edge. Fails
    /// unless `Delta` is symmetric.
    pub fn theta_delta(&self, d: &BilinearDelta) -> Result<Vec<u32>> {
        let order = self.order() as usize;
        let gens: Vec<u32> = (0..self.n).map(|i| self.generator(i)).collect();
        let mut theta = vec![u32::MAX; order];
        theta[0] = 0;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let h = queue[head];
            head += 1;
            for &x in &gens {
                let k = self.mul(h, x) as usize;
                let image = self.circle(d, theta[h as usize], x);
                if theta[k] == u32::MAX {
                    theta[k] = image;
                    queue.push(k as u32);
                } else if theta[k] != image {
                    return Err(HoloError::NotInNHol(format!(
                        "no homomorphism onto the circle group fixes the generators (conflict at {k})"
                    )));
                }
            }
        }
        let mut seen = vec![false; order];
        for &t in &theta {
            if t == u32::MAX || std::mem::replace(&mut seen[t as usize], true) {
                return Err(HoloError::NotInNHol("theta is not a bijection".into()));
            }
        }
        Ok(theta)
    }

    /// Reads `Delta(x_i, x_j)` back from `(x_i x_j)^theta = x_i x_j Delta(x_i, x_j)`.
    pub fn delta_from_theta(&self, theta: &[u32]) -> BilinearDelta {
        let (n, m) = (self.n, self.m);
        let mut values = vec![0u64; n * n * m];
        for i in 0..n {
            for j in 0..n {
                let xy = self.mul(self.generator(i), self.generator(j));
                let (_, w) = self.split(self.mul(self.inv(xy), theta[xy as usize]));
                values[(i * n + j) * m..(i * n + j + 1) * m].copy_from_slice(&w);
            }
        }
        BilinearDelta { values }
    }
}

/// The symmetric bilinear maps `F_p^n x F_p^n -> F_p^{C(n,2)}`, as the kernel
/// of `Delta(e_i, e_j) - Delta(e_j, e_i) = 0`: dimension and basis, with
/// index `(i * n + j) * C(n,2) + k`.
pub fn symmetric_delta_space(p: u64, n: usize) -> (usize, Vec<BilinearDelta>) {
    let m = binomial(n as u64, 2) as usize;
    let unknowns = n * n * m;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..m {
                let mut row = vec![0u64; unknowns];
                row[(i * n + j) * m + k] = 1;
                row[(j * n + i) * m + k] = p - 1;
                rows.push(row);
            }
        }
    }
    let basis: Vec<BilinearDelta> =
        nullspace(&rows, unknowns, p).into_iter().map(|values| BilinearDelta { values }).collect();
    (basis.len(), basis)
}

/// [`symmetric_delta_space`] for a concrete group, after checking that the
/// group has the required shape and that all its automorphisms are central,
/// which makes equivariance automatic.
pub fn symmetric_delta_space_for(group: &AllCentralGroup) -> Result<(usize, Vec<BilinearDelta>, CentralityReport)> {
    if !group.center_is_derived() {
        return Err(HoloError::ShapeMismatch("Z(G) is larger than G'".into()));
    }
    let report = group.centrality()?;
    if !report.all_central {
        return Err(HoloError::ShapeMismatch(format!(
            "Aut(G) induces a group of order {} on G/Frat(G)",
            report.compatible_matrices
        )));
    }
    let (dim, basis) = symmetric_delta_space(group.p, group.n);
    Ok((dim, basis, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_dimensions() {
        assert_eq!(symmetric_delta_space(3, 2).0, 3);
        assert_eq!(symmetric_delta_space(3, 3).0, 18);
        assert_eq!(symmetric_delta_space(5, 4).0, 60);
    }

    #[test]
    fn free_shape_is_not_all_central() {
        // With no power relations every matrix is compatible.
        let g = AllCentralGroup::new(&AllCentralSpec { p: 3, n: 2, coefficients: vec![vec![0], vec![0]] }).unwrap();
        let r = g.centrality().unwrap();
        assert_eq!(r.compatible_matrices, 48);
        assert!(!r.all_central);
    }
}
