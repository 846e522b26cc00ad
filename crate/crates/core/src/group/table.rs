//! Dense multiplication tables. The identity is always element 0.

use sha2::{Digest, Sha256};

use crate::arith::{gcd, prime_of_power};
use crate::error::{HoloError, Result};
use crate::group::collector::Collector;
use crate::group::presentation::{ClassTwoPresentation, Preset, Word};
use crate::group::subgroup::Subgroup;

pub const DEFAULT_ORDER_CAP: u64 = 3000;

#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elt_order: Vec<u32>,
    gens: Vec<u32>,
    bfs: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u8>,
    prime: Option<u64>,
    presentation: Option<ClassTwoPresentation>,
    pc_gens: Vec<u32>,
}

impl GroupTable {
    pub fn from_preset(preset: &Preset, cap: u64) -> Result<Self> {
        Self::from_presentation(&preset.presentation()?, cap)
    }

    /// Builds the table of a class-two presentation and certifies it: the
    /// result is associative, has the declared order, every normal form
    /// evaluates to its own index, and every relation holds. A group of the
    /// declared order generated by elements satisfying the relations is the
    /// presented group.
    pub fn from_presentation(pres: &ClassTwoPresentation, cap: u64) -> Result<Self> {
        pres.validate()?;
        let order = pres.order().expect("validated");
        if order > cap {
            return Err(HoloError::OrderCapExceeded { order, cap });
        }
        let col = Collector::new(pres)?;
        let n = order as usize;
        let k = pres.num_gens();
        let pc_gens: Vec<u32> = (0..k).map(|i| col.generator(i) as u32).collect();

        let mut right = vec![0u32; n * k];
        for a in 0..n {
            let va = col.decode(a as u64);
            for i in 0..k {
                let mut unit = vec![0; k];
                unit[i] = 1;
                right[a * k + i] = col.encode(&col.mul_vec(&va, &unit, 0)?) as u32;
            }
        }
        let (bfs, parent, parent_gen) = spanning_tree(n, k, |a, i| right[a as usize * k + i]);
        if bfs.len() != n {
            return Err(HoloError::InconsistentPresentation(
                "generators do not reach every normal form".into(),
            ));
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &b in &bfs[1..] {
                let pa = row[parent[b as usize] as usize];
                row[b as usize] = right[pa as usize * k + parent_gen[b as usize] as usize];
            }
        }
        let inconsistent = |e: HoloError| match e {
            HoloError::NotAGroup(m) => HoloError::InconsistentPresentation(m),
            other => other,
        };
        let mut g = Self::finish(n, mul, &pc_gens).map_err(inconsistent)?;
        g.pc_gens = pc_gens;
        g.certify_presentation(pres)?;
        g.presentation = Some(pres.clone());
        if !g.is_class_le_two() {
            return Err(HoloError::InconsistentPresentation("group has class above two".into()));
        }
        Ok(g)
    }

    fn certify_presentation(&self, pres: &ClassTwoPresentation) -> Result<()> {
        let bad = |m: String| Err(HoloError::InconsistentPresentation(m));
        let k = pres.num_gens();
        let x = &self.pc_gens;
        // normal forms
        let mut radix = Vec::with_capacity(k);
        let mut m = 1usize;
        for &o in &pres.orders {
            radix.push(m);
            m *= o as usize;
        }
        let mut pows: Vec<Vec<u32>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut v = vec![0u32];
            for e in 1..pres.orders[i] {
                v.push(self.mul(v[e as usize - 1], x[i]));
            }
            pows.push(v);
        }
        for a in 0..self.order {
            let mut acc = 0u32;
            for i in 0..k {
                let e = (a / radix[i]) % pres.orders[i] as usize;
                acc = self.mul(acc, pows[i][e]);
            }
            if acc as usize != a {
                return bad(format!("normal form {a} evaluates to {acc}"));
            }
        }
        for i in 0..k {
            let lhs = self.mul(pows[i][pres.orders[i] as usize - 1], x[i]);
            let rhs = pres.powers.get(&i).map_or(0, |w| self.eval_word(w));
            if lhs != rhs {
                return bad(format!("power relation of x_{i} fails"));
            }
        }
        for j in 0..k {
            for i in 0..j {
                let lhs = self.comm(x[j], x[i]);
                let rhs = pres.commutators.get(&(j, i)).map_or(0, |w| self.eval_word(w));
                if lhs != rhs {
                    return bad(format!("commutator relation [x_{j}, x_{i}] fails"));
                }
            }
        }
        Ok(())
    }

    /// Wraps an arbitrary multiplication table after checking the group axioms.
    /// Element 0 must be the identity.
    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != order * order || order == 0 {
            return Err(HoloError::NotAGroup("table has the wrong size".into()));
        }
        if mul.iter().any(|&c| c as usize >= order) {
            return Err(HoloError::NotAGroup("entry out of range".into()));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(HoloError::NotAGroup("element 0 is not the identity".into()));
            }
        }
        // Generators for the magma: greedily add the least element not yet
        // reached by right multiplication.
        let mut reached = vec![false; order];
        reached[0] = true;
        let mut gens: Vec<u32> = Vec::new();
        let mut list = vec![0u32];
        while list.len() < order {
            let s = (0..order).find(|&a| !reached[a]).unwrap() as u32;
            gens.push(s);
            let mut head = 0;
            while head < list.len() {
                let a = list[head] as usize;
                head += 1;
                for &t in &gens {
                    let b = mul[a * order + t as usize];
                    if !reached[b as usize] {
                        reached[b as usize] = true;
                        list.push(b);
                    }
                }
            }
        }
        Self::finish(order, mul, &gens)
    }

    /// Associativity (Light's test over `check_gens`), inverses, orders,
    /// minimal generators and the spanning tree.
    fn finish(order: usize, mul: Vec<u32>, check_gens: &[u32]) -> Result<Self> {
        let n = order;
        for &s in check_gens {
            for a in 0..n {
                let as_ = mul[a * n + s as usize] as usize;
                for b in 0..n {
                    let lhs = mul[as_ * n + b];
                    let sb = mul[s as usize * n + b] as usize;
                    if lhs != mul[a * n + sb] {
                        return Err(HoloError::NotAGroup(format!(
                            "associativity fails at ({a}, {s}, {b})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            if let Some(b) = row.iter().position(|&c| c == 0) {
                if mul[b * n + a] != 0 {
                    return Err(HoloError::NotAGroup(format!("element {a} has no two-sided inverse")));
                }
                inv[a] = b as u32;
            } else {
                return Err(HoloError::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        let mut elt_order = vec![0u32; n];
        for a in 0..n {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elt_order[a] = k;
        }
        elt_order[0] = 1;
        let mut g = GroupTable {
            order: n,
            mul,
            inv,
            elt_order,
            gens: check_gens.to_vec(),
            bfs: Vec::new(),
            parent: Vec::new(),
            parent_gen: Vec::new(),
            prime: prime_of_power(n as u64),
            presentation: None,
            pc_gens: check_gens.to_vec(),
        };
        g.gens = g.minimal_generators();
        let gens = g.gens.clone();
        let (bfs, parent, parent_gen) =
            spanning_tree(n, gens.len(), |a, i| g.mul[a as usize * n + gens[i] as usize]);
        g.bfs = bfs;
        g.parent = parent;
        g.parent_gen = parent_gen;
        Ok(g)
    }

    /// For p-groups, the greedy choice in ascending index order of elements
    /// independent modulo the Frattini subgroup; otherwise a greedy
    /// generating set.
    fn minimal_generators(&self) -> Vec<u32> {
        let n = self.order as u32;
        let mut sub = match self.frattini() {
            Ok(f) => f,
            Err(_) => Subgroup::trivial(self),
        };
        let mut gens = Vec::new();
        for a in 1..n {
            if !sub.contains(a) {
                gens.push(a);
                sub.add_generator(self, a);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let ord = self.elt_order[a as usize] as i64;
        let mut e = k.rem_euclid(ord);
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `h^g = g^{-1} h g`.
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    #[inline]
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn order_of(&self, a: u32) -> u64 {
        self.elt_order[a as usize] as u64
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.elt_order
    }

    pub fn exponent(&self) -> u64 {
        self.elt_order.iter().fold(1u64, |acc, &o| acc / gcd(acc, o as u64) * o as u64)
    }

    /// Minimal generating set (for p-groups), in ascending index order.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Generators of the presentation the table was built from, or the
    /// generators used to check associativity for tables built directly.
    pub fn pc_gens(&self) -> &[u32] {
        &self.pc_gens
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn presentation(&self) -> Option<&ClassTwoPresentation> {
        self.presentation.as_ref()
    }

    /// Elements in breadth-first order over [`Self::gens`], starting at 0.
    pub fn bfs_order(&self) -> &[u32] {
        &self.bfs
    }

    /// Tree edge reaching `b`: `b = parent * gens[k]`.
    pub fn tree_parent(&self, b: u32) -> (u32, usize) {
        (self.parent[b as usize], self.parent_gen[b as usize] as usize)
    }

    pub fn eval_word(&self, w: &Word) -> u32 {
        w.iter().fold(0, |acc, &(g, e)| self.mul(acc, self.pow(self.pc_gens[g], e as i64)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subgroup {
        let mask: Vec<bool> = (0..self.order as u32)
            .map(|a| self.gens.iter().all(|&s| self.mul(a, s) == self.mul(s, a)))
            .collect();
        Subgroup::from_mask(self, mask)
    }

    pub fn derived(&self) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                comms.push(self.comm(a, b));
            }
        }
        Subgroup::generated(self, &comms).normal_closure(self)
    }

    /// `<g^p : g in G>`.
    pub fn power_subgroup(&self, p: u64) -> Subgroup {
        let mut sub = Subgroup::trivial(self);
        for a in 0..self.order as u32 {
            let b = self.pow(a, p as i64);
            sub.add_generator(self, b);
        }
        sub
    }

    /// `G' G^p`; only defined for p-groups.
    pub fn frattini(&self) -> Result<Subgroup> {
        let p = self.prime.ok_or(HoloError::NotPGroup)?;
        let mut sub = self.power_subgroup(p);
        let derived = self.derived();
        for &d in &derived.gens {
            sub.add_generator(self, d);
        }
        Ok(sub)
    }

    pub fn is_class_le_two(&self) -> bool {
        let z = self.center();
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| z.contains(self.comm(a, b))))
    }

    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        Subgroup::generated(self, gens)
    }

    /// Histogram of element orders, sorted by order.
    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for &o in &self.elt_order {
            *h.entry(o).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }

    /// Hex SHA-256 of the order and the multiplication table.
    pub fn canonical_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        for &c in &self.mul {
            hasher.update(c.to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }

    /// The homomorphism to `target` sending `gens()[k]` to `images[k]`, if one
    /// exists.
    pub fn extend_hom(&self, images: &[u32], target: &GroupTable) -> Option<Vec<u32>> {
        debug_assert_eq!(images.len(), self.gens.len());
        let mut phi = vec![0u32; self.order];
        for &b in &self.bfs[1..] {
            let (pa, k) = self.tree_parent(b);
            phi[b as usize] = target.mul(phi[pa as usize], images[k]);
        }
        for (k, &s) in self.gens.iter().enumerate() {
            for a in 0..self.order as u32 {
                if phi[self.mul(a, s) as usize] != target.mul(phi[a as usize], images[k]) {
                    return None;
                }
            }
        }
        Some(phi)
    }

    /// Whether `perm` is a bijective endomorphism.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        if perm.len() != self.order || perm[0] != 0 {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &x in perm {
            if x as usize >= self.order || std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        self.gens.iter().all(|&s| {
            (0..self.order as u32)
                .all(|a| perm[self.mul(a, s) as usize] == self.mul(perm[a as usize], perm[s as usize]))
        })
    }
}

fn spanning_tree(
    n: usize,
    k: usize,
    right: impl Fn(u32, usize) -> u32,
) -> (Vec<u32>, Vec<u32>, Vec<u8>) {
    let mut parent = vec![u32::MAX; n];
    let mut parent_gen = vec![0u8; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    parent[0] = 0;
    let mut bfs = vec![0u32];
    let mut head = 0;
    while head < bfs.len() {
        let a = bfs[head];
        head += 1;
        for i in 0..k {
            let b = right(a, i);
            if !seen[b as usize] {
                seen[b as usize] = true;
                parent[b as usize] = a;
                parent_gen[b as usize] = i as u8;
                bfs.push(b);
            }
        }
    }
    (bfs, parent, parent_gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(p: Preset) -> GroupTable {
        GroupTable::from_preset(&p, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn g3_structure() {
        let g = build(Preset::Gp { p: 3 });
        assert_eq!(g.order(), 81);
        assert_eq!(g.center().order(), 9);
        assert_eq!(g.derived().order(), 3);
        assert_eq!(g.frattini().unwrap().order(), 9);
        assert_eq!(g.gens(), &[1, 9]);
        assert!(g.is_class_le_two());
        assert!(!g.is_abelian());
    }

    #[test]
    fn h3_and_free() {
        let h = build(Preset::Hp { p: 3 });
        assert_eq!((h.order(), h.exponent()), (27, 9));
        assert_eq!(h.frattini().unwrap().order(), 3);
        let f = build(Preset::FreeClassTwoExpP { p: 3, n: 2 });
        assert_eq!((f.order(), f.exponent()), (27, 3));
        assert_eq!(f.center().order(), 3);
    }

    #[test]
    fn abelian_tables() {
        let g = build(Preset::Abelian { factors: vec![3, 3] });
        for a in 0..9u32 {
            for b in 0..9u32 {
                let s = (a % 3 + b % 3) % 3 + 3 * ((a / 3 + b / 3) % 3);
                assert_eq!(g.mul(a, b), s);
            }
        }
        let c9 = build(Preset::Abelian { factors: vec![9] });
        assert_eq!(c9.center().order(), 9);
        assert_eq!(c9.gens(), &[1]);
    }

    #[test]
    fn cap_and_inconsistency() {
        let err = GroupTable::from_preset(&Preset::Gp { p: 11 }, DEFAULT_ORDER_CAP).unwrap_err();
        assert!(matches!(err, HoloError::OrderCapExceeded { order: 14641, cap: 3000 }));
        // [y, x] = y is not central
        let mut pres = Preset::Hp { p: 3 }.presentation().unwrap();
        pres.commutators.insert((1, 0), vec![(1, 1)]);
        let err = GroupTable::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap_err();
        assert!(matches!(err, HoloError::InconsistentPresentation(_)), "{err:?}");
    }

    #[test]
    fn non_group_table_is_rejected() {
        // x - y mod 3 has identity on the right only
        let t: Vec<u32> = (0..3u32).flat_map(|a| (0..3u32).map(move |b| (a + 3 - b) % 3)).collect();
        assert!(matches!(GroupTable::from_table(3, t), Err(HoloError::NotAGroup(_))));
    }

    #[test]
    fn distinct_tables_hash_apart() {
        let g = build(Preset::Gp { p: 3 });
        let h = build(Preset::Hp { p: 3 });
        let f = build(Preset::FreeClassTwoExpP { p: 3, n: 2 });
        assert_ne!(g.canonical_hash(), h.canonical_hash());
        assert_ne!(h.canonical_hash(), f.canonical_hash());
        assert_eq!(h.canonical_hash(), build(Preset::Hp { p: 3 }).canonical_hash());
    }
}
