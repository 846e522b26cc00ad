use crate::error::{HoloError, Result};
use crate::group::table::GroupTable;

/// A subgroup as a sorted set of element indices plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub gens: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(g: &GroupTable, gens: &[u32]) -> Self {
        let mut sub = Subgroup::trivial(g);
        for &s in gens {
            sub.add_generator(g, s);
        }
        sub
    }

    pub fn trivial(g: &GroupTable) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup { elements: vec![0], gens: Vec::new(), mask }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Subgroup {
            elements: (0..g.order() as u32).collect(),
            gens: g.gens().to_vec(),
            mask: vec![true; g.order()],
        }
    }

    /// Subgroup from an element set already known to be closed.
    pub fn from_mask(g: &GroupTable, mask: Vec<bool>) -> Self {
        let elements: Vec<u32> = (0..g.order() as u32).filter(|&a| mask[a as usize]).collect();
        let mut sub = Subgroup::trivial(g);
        for &a in &elements {
            if !sub.contains(a) {
                sub.add_generator(g, a);
            }
        }
        debug_assert_eq!(sub.elements, elements);
        sub
    }

    /// Adds `s` to the generators and recloses. Returns false if `s` was
    /// already a member.
    pub fn add_generator(&mut self, g: &GroupTable, s: u32) -> bool {
        if self.mask[s as usize] {
            return false;
        }
        self.gens.push(s);
        let mut queue = self.elements.clone();
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &t in &self.gens {
                let b = g.mul(a, t);
                if !self.mask[b as usize] {
                    self.mask[b as usize] = true;
                    queue.push(b);
                }
            }
        }
        queue.sort_unstable();
        self.elements = queue;
        true
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.mask[a as usize]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn is_normal(&self, g: &GroupTable) -> bool {
        self.gens
            .iter()
            .all(|&n| g.gens().iter().all(|&s| self.contains(g.conj(n, s))))
    }

    /// Smallest normal subgroup containing `self`.
    pub fn normal_closure(mut self, g: &GroupTable) -> Self {
        loop {
            let extra = self
                .gens
                .iter()
                .flat_map(|&n| g.gens().iter().map(move |&s| (n, s)))
                .map(|(n, s)| g.conj(n, s))
                .find(|&c| !self.contains(c));
            match extra {
                Some(c) => {
                    self.add_generator(g, c);
                }
                None => return self,
            }
        }
    }

    /// Whether every automorphism in `perms` maps the subgroup onto itself.
    pub fn is_stable_under(&self, perm: &[u32]) -> bool {
        self.elements.iter().all(|&a| self.contains(perm[a as usize]))
    }
}

/// Quotient `G/N` with the projection. Cosets are numbered by their least
/// element, so the identity coset is 0.
pub fn quotient(g: &GroupTable, n: &Subgroup) -> Result<(GroupTable, Vec<u32>)> {
    if !n.is_normal(g) {
        return Err(HoloError::NotNormal);
    }
    let order = g.order();
    let mut label = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for a in 0..order as u32 {
        if label[a as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(a);
        for &m in &n.elements {
            label[g.mul(a, m) as usize] = id;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &r in &reps {
        for &s in &reps {
            table.push(label[g.mul(r, s) as usize]);
        }
    }
    let qt = GroupTable::from_table(q, table)?;
    Ok((qt, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::Preset;

    #[test]
    fn quotient_of_h3_by_derived_is_elementary() {
        let g = GroupTable::from_preset(&Preset::Hp { p: 3 }, 3000).unwrap();
        let d = g.derived();
        let (q, proj) = quotient(&g, &d).unwrap();
        assert_eq!(q.order(), 9);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 3);
        for a in 0..27u32 {
            for b in 0..27u32 {
                assert_eq!(proj[g.mul(a, b) as usize], q.mul(proj[a as usize], proj[b as usize]));
            }
        }
        let kernel: Vec<u32> = (0..27).filter(|&a| proj[a as usize] == 0).collect();
        assert_eq!(kernel, d.elements);
    }

    #[test]
    fn non_normal_is_rejected() {
        // <y> is not normal in H_3 since [y, x] = x^{-3}.
        let g = GroupTable::from_preset(&Preset::Hp { p: 3 }, 3000).unwrap();
        let y = g.pc_gens()[1];
        let sub = Subgroup::generated(&g, &[y]);
        assert!(matches!(quotient(&g, &sub), Err(HoloError::NotNormal)));
        let (t, _) = quotient(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(t.order(), 1);
    }
}
