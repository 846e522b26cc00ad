//! Automorphism groups: the full list by backtracking, or a generating set
//! built from liftable matrices on `G/Frat(G)` and the kernel of that action.

use std::collections::{HashMap, HashSet};

use log::{debug, warn};

use crate::error::{HoloError, Result};
use crate::group::search::search_isomorphisms;
use crate::group::subgroup::{quotient, Subgroup};
use crate::group::table::GroupTable;

/// Refuse to store more than this many permutation entries (|Aut| * |G|).
pub const DEFAULT_AUT_MEMORY_CAP: usize = 100_000_000;

/// Automorphisms keyed by the images of the minimal generators of `G`,
/// stored as permutations of element indices.
#[derive(Clone, Debug)]
pub struct AutSet {
    n: usize,
    key_gens: Vec<u32>,
    perms: Vec<u32>,
    index: HashMap<u128, u32>,
}

impl AutSet {
    pub fn new(g: &GroupTable) -> Result<Self> {
        let bits = (g.order().max(2) as f64).log2().ceil() as usize * g.gens().len();
        if bits > 127 {
            return Err(HoloError::AutListTooLarge(format!(
                "{} generators of a group of order {} do not fit a key",
                g.gens().len(),
                g.order()
            )));
        }
        Ok(AutSet { n: g.order(), key_gens: g.gens().to_vec(), perms: Vec::new(), index: HashMap::new() })
    }

    pub fn key_of(&self, perm: &[u32]) -> u128 {
        self.key_gens
            .iter()
            .fold(0u128, |acc, &s| acc * self.n as u128 + perm[s as usize] as u128)
    }

    fn key_of_images(&self, images: impl Iterator<Item = u32>) -> u128 {
        images.fold(0u128, |acc, x| acc * self.n as u128 + x as u128)
    }

    /// Inserts a permutation (assumed to be an automorphism) and returns its index.
    pub fn insert(&mut self, perm: Vec<u32>) -> u32 {
        debug_assert_eq!(perm.len(), self.n);
        let key = self.key_of(&perm);
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.len() as u32;
        self.perms.extend_from_slice(&perm);
        self.index.insert(key, i);
        i
    }

    pub fn len(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.perms.len() / self.n
        }
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: u32) -> &[u32] {
        &self.perms[i as usize * self.n..(i as usize + 1) * self.n]
    }

    #[inline]
    pub fn apply(&self, i: u32, g: u32) -> u32 {
        self.perms[i as usize * self.n + g as usize]
    }

    pub fn images(&self, i: u32) -> Vec<u32> {
        self.key_gens.iter().map(|&s| self.apply(i, s)).collect()
    }

    pub fn find(&self, perm: &[u32]) -> Option<u32> {
        self.index.get(&self.key_of(perm)).copied()
    }

    pub fn find_images(&self, images: &[u32]) -> Option<u32> {
        self.index.get(&self.key_of_images(images.iter().copied())).copied()
    }

    /// Index of `a` followed by `b`, if it belongs to the set.
    pub fn compose(&self, a: u32, b: u32) -> Option<u32> {
        let key = self.key_of_images(self.key_gens.iter().map(|&s| self.apply(b, self.apply(a, s))));
        self.index.get(&key).copied()
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        let p = self.perm(a);
        let mut inv = vec![0u32; self.n];
        for (x, &y) in p.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        self.find(&inv)
    }

    pub fn identity(&self) -> Option<u32> {
        self.find_images(&self.key_gens)
    }

    pub fn group_order(&self) -> usize {
        self.n
    }
}

/// The full automorphism group with inverses and a generating set.
#[derive(Clone, Debug)]
pub struct AutList {
    pub set: AutSet,
    pub inv: Vec<u32>,
    pub identity: u32,
    pub generators: Vec<u32>,
}

impl AutList {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn compose(&self, a: u32, b: u32) -> u32 {
        self.set.compose(a, b).expect("automorphism list is closed")
    }

    pub fn generator_perms(&self) -> Vec<Vec<u32>> {
        self.generators.iter().map(|&i| self.set.perm(i).to_vec()).collect()
    }

    /// Index of the inner automorphism `h -> g^{-1} h g`.
    pub fn inner(&self, g: &GroupTable, x: u32) -> u32 {
        let perm: Vec<u32> = (0..g.order() as u32).map(|h| g.conj(h, x)).collect();
        self.set.find(&perm).expect("inner automorphisms are listed")
    }

    /// Builds an [`AutList`] from permutations already known to be
    /// automorphisms, checking closure under composition of generators.
    pub fn from_perms(g: &GroupTable, perms: Vec<Vec<u32>>) -> Result<Self> {
        let mut set = AutSet::new(g)?;
        for p in perms {
            set.insert(p);
        }
        let identity = set
            .identity()
            .ok_or_else(|| HoloError::CacheCorrupt("identity automorphism missing".into()))?;
        let mut inv = Vec::with_capacity(set.len());
        for a in 0..set.len() as u32 {
            inv.push(
                set.inverse(a)
                    .ok_or_else(|| HoloError::CacheCorrupt("automorphism list not closed under inverses".into()))?,
            );
        }
        let generators = greedy_generators(&set, identity)?;
        Ok(AutList { set, inv, identity, generators })
    }
}

/// Greedy generating set of a closed set of automorphisms in list order.
fn greedy_generators(set: &AutSet, identity: u32) -> Result<Vec<u32>> {
    let n = set.len();
    let mut reached = vec![false; n];
    reached[identity as usize] = true;
    let mut members = vec![identity];
    let mut gens: Vec<u32> = Vec::new();
    for a in 0..n as u32 {
        if reached[a as usize] {
            continue;
        }
        gens.push(a);
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in &gens {
                let y = set
                    .compose(x, s)
                    .ok_or_else(|| HoloError::CacheCorrupt("automorphism list not closed".into()))?;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    members.push(y);
                }
            }
        }
    }
    Ok(gens)
}

/// Every automorphism of `g`, in lexicographic order of generator images.
pub fn automorphism_group(g: &GroupTable, budget: u64, memory_cap: usize) -> Result<AutList> {
    let mut set = AutSet::new(g)?;
    let mut too_large = false;
    search_isomorphisms(g, g, budget, |phi| {
        if (set.len() + 1) * g.order() > memory_cap {
            too_large = true;
            return false;
        }
        set.insert(phi);
        true
    })?;
    if too_large {
        return Err(HoloError::AutListTooLarge(format!(
            "more than {} automorphisms of a group of order {}",
            memory_cap / g.order(),
            g.order()
        )));
    }
    debug!("found {} automorphisms of a group of order {}", set.len(), g.order());
    let identity = set.identity().expect("identity is an automorphism");
    let inv = (0..set.len() as u32).map(|a| set.inverse(a).expect("closed under inverses")).collect();
    let generators = greedy_generators(&set, identity)?;
    Ok(AutList { set, inv, identity, generators })
}

/// Coordinates on the elementary abelian quotient `G/Frat(G)` with respect to
/// the images of `g.gens()`.
pub struct FrattiniQuotient {
    pub p: u64,
    pub rank: usize,
    pub frattini: Subgroup,
    coords: Vec<Vec<u8>>,
    proj: Vec<u32>,
}

impl FrattiniQuotient {
    pub fn new(g: &GroupTable) -> Result<Self> {
        let p = g.prime().ok_or(HoloError::NotPGroup)?;
        let frattini = g.frattini()?;
        let (q, proj) = quotient(g, &frattini)?;
        let rank = g.gens().len();
        // the images of g.gens() form a basis of q
        let basis: Vec<u32> = g.gens().iter().map(|&s| proj[s as usize]).collect();
        let mut coords = vec![Vec::new(); q.order()];
        coords[0] = vec![0u8; rank];
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (i, &b) in basis.iter().enumerate() {
                let c = q.mul(a, b);
                if coords[c as usize].is_empty() {
                    let mut v = coords[a as usize].clone();
                    v[i] = ((v[i] as u64 + 1) % p) as u8;
                    coords[c as usize] = v;
                    queue.push(c);
                }
            }
        }
        Ok(FrattiniQuotient { p, rank, frattini, coords, proj })
    }

    pub fn coords(&self, x: u32) -> &[u8] {
        &self.coords[self.proj[x as usize] as usize]
    }

    /// Matrix (rows = images of the generators) induced by an automorphism.
    pub fn matrix(&self, g: &GroupTable, perm: &[u32]) -> Vec<Vec<u8>> {
        g.gens().iter().map(|&s| self.coords(perm[s as usize]).to_vec()).collect()
    }
}

fn mat_mul(a: &[Vec<u8>], b: &[Vec<u8>], p: u64) -> Vec<Vec<u8>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((0..n).map(|k| a[i][k] as u64 * b[k][j] as u64).sum::<u64>() % p) as u8)
                .collect()
        })
        .collect()
}

pub fn det_mod_p(m: &[Vec<u8>], p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let p = p as i64;
    let mut det = 1i64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] % p != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = det * a[col][col] % p;
        let inv = crate::arith::mod_inv(a[col][col], p).unwrap();
        for r in col + 1..n {
            let f = a[r][col] * inv % p;
            for c in col..n {
                a[r][c] = (a[r][c] - f * a[col][c]).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p) as u64
}

/// Maximum number of candidate matrices / kernel images examined by
/// [`automorphism_generators`].
const GENERATOR_SEARCH_LIMIT: u64 = 5_000_000;

/// A generating set of `Aut(G)` for a p-group without listing the group:
/// lifts of matrices generating the image of `Aut(G)` in `GL(d, p)`, plus
/// generators of the automorphisms acting trivially on `G/Frat(G)`.
pub fn automorphism_generators(g: &GroupTable, budget: u64) -> Result<Vec<Vec<u32>>> {
    let fq = FrattiniQuotient::new(g)?;
    let (d, p) = (fq.rank, fq.p);
    let mut gens: Vec<Vec<u32>> = Vec::new();
    if d == 0 {
        return Ok(gens);
    }
    let total = (p as u128).pow((d * d) as u32);
    if total > GENERATOR_SEARCH_LIMIT as u128 {
        return Err(HoloError::AutListTooLarge(format!("GL({d}, {p}) is too large to scan")));
    }
    // Cosets of Frat by coordinate vector.
    let mut by_coords: HashMap<Vec<u8>, Vec<u32>> = HashMap::new();
    for x in 0..g.order() as u32 {
        by_coords.entry(fq.coords(x).to_vec()).or_default().push(x);
    }
    let identity: Vec<Vec<u8>> =
        (0..d).map(|i| (0..d).map(|j| u8::from(i == j)).collect()).collect();
    let mut image: HashSet<Vec<Vec<u8>>> = HashSet::from([identity.clone()]);
    let mut image_gens: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut steps = 0u64;
    for code in 0..total {
        let mut m = vec![vec![0u8; d]; d];
        let mut c = code;
        for i in (0..d).rev() {
            for j in (0..d).rev() {
                m[i][j] = (c % p as u128) as u8;
                c /= p as u128;
            }
        }
        if image.contains(&m) || det_mod_p(&m, p) == 0 {
            continue;
        }
        let cands: Vec<Vec<u32>> = m.iter().map(|row| by_coords[row].clone()).collect();
        if let Some(phi) = lift(g, &cands, budget, &mut steps)? {
            gens.push(phi);
            image_gens.push(m);
            image = close_matrices(&image_gens, &identity, p);
        }
    }
    debug!("image of Aut in GL({d},{p}) has order {}", image.len());
    // Kernel: x_i -> x_i f_i with f_i in Frat.
    let frat = &fq.frattini.elements;
    let kernel_total = (frat.len() as u128).pow(d as u32);
    let mut kernel_gens: Vec<Vec<u32>> = Vec::new();
    let mut kernel_keys: HashSet<Vec<u32>> = HashSet::from([g.gens().to_vec()]);
    let consider = |images: Vec<u32>, kernel_gens: &mut Vec<Vec<u32>>, keys: &mut HashSet<Vec<u32>>| {
        if keys.contains(&images) {
            return;
        }
        if let Some(phi) = g.extend_hom(&images, g) {
            if is_bijective(&phi) {
                kernel_gens.push(phi);
                *keys = close_images(g, kernel_gens);
            }
        }
    };
    if kernel_total <= GENERATOR_SEARCH_LIMIT as u128 {
        for code in 0..kernel_total {
            let mut c = code;
            let images: Vec<u32> = g
                .gens()
                .iter()
                .map(|&s| {
                    let f = frat[(c % frat.len() as u128) as usize];
                    c /= frat.len() as u128;
                    g.mul(s, f)
                })
                .collect();
            consider(images, &mut kernel_gens, &mut kernel_keys);
        }
    } else {
        warn!("kernel of the action on G/Frat(G) scanned one generator at a time");
        for i in 0..d {
            for &f in frat {
                let mut images = g.gens().to_vec();
                images[i] = g.mul(images[i], f);
                consider(images, &mut kernel_gens, &mut kernel_keys);
            }
        }
    }
    debug!("kernel of the action on G/Frat(G) has order {}", kernel_keys.len());
    gens.extend(kernel_gens);
    Ok(gens)
}

fn is_bijective(phi: &[u32]) -> bool {
    let mut seen = vec![false; phi.len()];
    phi.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

/// An automorphism whose generator images are drawn from `cands`.
fn lift(g: &GroupTable, cands: &[Vec<u32>], budget: u64, steps: &mut u64) -> Result<Option<Vec<u32>>> {
    fn rec(
        g: &GroupTable,
        cands: &[Vec<u32>],
        images: &mut Vec<u32>,
        budget: u64,
        steps: &mut u64,
    ) -> Result<Option<Vec<u32>>> {
        let k = images.len();
        if k == cands.len() {
            return Ok(g.extend_hom(images, g).filter(|phi| is_bijective(phi)));
        }
        let s = g.gens()[k];
        for &c in &cands[k] {
            *steps += 1;
            if *steps > budget {
                return Err(HoloError::SearchBudgetExceeded(budget));
            }
            if g.order_of(c) != g.order_of(s) {
                continue;
            }
            let ok = (0..k).all(|l| {
                let a = images[l];
                let t = g.gens()[l];
                g.order_of(g.mul(a, c)) == g.order_of(g.mul(t, s))
                    && g.order_of(g.comm(a, c)) == g.order_of(g.comm(t, s))
            });
            if !ok {
                continue;
            }
            images.push(c);
            if let Some(phi) = rec(g, cands, images, budget, steps)? {
                return Ok(Some(phi));
            }
            images.pop();
        }
        Ok(None)
    }
    rec(g, cands, &mut Vec::new(), budget, steps)
}

fn close_matrices(gens: &[Vec<Vec<u8>>], identity: &[Vec<u8>], p: u64) -> HashSet<Vec<Vec<u8>>> {
    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::from([identity.to_vec()]);
    let mut queue = vec![identity.to_vec()];
    while let Some(m) = queue.pop() {
        for s in gens {
            let x = mat_mul(&m, s, p);
            if seen.insert(x.clone()) {
                queue.push(x);
            }
        }
    }
    seen
}

/// Generator-image tuples of the group generated by `gens`.
fn close_images(g: &GroupTable, gens: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let start = g.gens().to_vec();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(imgs) = queue.pop() {
        for s in gens {
            let x: Vec<u32> = imgs.iter().map(|&y| s[y as usize]).collect();
            if seen.insert(x.clone()) {
                queue.push(x);
            }
        }
    }
    seen
}
