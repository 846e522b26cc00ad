use crate::group::{AutSet, GroupTable};

/// `(alpha, g)` acting by `h -> h^alpha g`; `alpha` indexes an [`AutSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HolElement {
    pub aut: u32,
    pub g: u32,
}

/// Holomorph arithmetic over a set of automorphisms closed under the
/// operations used.
pub struct Hol<'a> {
    pub group: &'a GroupTable,
    pub auts: &'a AutSet,
    identity: u32,
    inverses: Vec<u32>,
}

impl<'a> Hol<'a> {
    pub fn new(group: &'a GroupTable, auts: &'a AutSet) -> Self {
        let identity = auts.identity().expect("automorphism set contains the identity");
        let inverses = (0..auts.len() as u32)
            .map(|a| auts.inverse(a).expect("automorphism set is closed under inverses"))
            .collect();
        Hol { group, auts, identity, inverses }
    }

    pub fn one(&self) -> HolElement {
        HolElement { aut: self.identity, g: 0 }
    }

    pub fn rho(&self, g: u32) -> HolElement {
        HolElement { aut: self.identity, g }
    }

    pub fn aut(&self, a: u32) -> HolElement {
        HolElement { aut: a, g: 0 }
    }

    /// The left translation `h -> g h`, which is `(iota(g^{-1}), g)`.
    pub fn lambda(&self, g: u32) -> Option<HolElement> {
        let gi = self.group.inv(g);
        let perm: Vec<u32> = (0..self.group.order() as u32).map(|h| self.group.conj(h, gi)).collect();
        self.auts.find(&perm).map(|aut| HolElement { aut, g })
    }

    pub fn act(&self, e: HolElement, h: u32) -> u32 {
        self.group.mul(self.auts.apply(e.aut, h), e.g)
    }

    /// `(alpha, g)(beta, h) = (alpha beta, g^beta h)`.
    pub fn mul(&self, e: HolElement, f: HolElement) -> HolElement {
        HolElement {
            aut: self.auts.compose(e.aut, f.aut).expect("automorphism set is closed"),
            g: self.group.mul(self.auts.apply(f.aut, e.g), f.g),
        }
    }

    /// `(alpha, g)^{-1} = (alpha^{-1}, (g^{-1})^{alpha^{-1}})`.
    pub fn inv(&self, e: HolElement) -> HolElement {
        let ai = self.inverses[e.aut as usize];
        HolElement { aut: ai, g: self.auts.apply(ai, self.group.inv(e.g)) }
    }

    pub fn pow(&self, e: HolElement, n: u64) -> HolElement {
        (0..n).fold(self.one(), |acc, _| self.mul(acc, e))
    }

    /// `e^f = f^{-1} e f`.
    pub fn conj(&self, e: HolElement, f: HolElement) -> HolElement {
        self.mul(self.mul(self.inv(f), e), f)
    }

    pub fn comm(&self, e: HolElement, f: HolElement) -> HolElement {
        self.mul(self.mul(self.inv(e), self.inv(f)), self.mul(e, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::aut::DEFAULT_AUT_MEMORY_CAP;
    use crate::group::search::DEFAULT_SEARCH_BUDGET;
    use crate::group::{automorphism_group, Preset, DEFAULT_ORDER_CAP};

    #[test]
    fn translations_and_composition() {
        let g = GroupTable::from_preset(&Preset::Hp { p: 3 }, DEFAULT_ORDER_CAP).unwrap();
        let aut = automorphism_group(&g, DEFAULT_SEARCH_BUDGET, DEFAULT_AUT_MEMORY_CAP).unwrap();
        let hol = Hol::new(&g, &aut.set);
        for x in 0..27 {
            for h in 0..27 {
                assert_eq!(hol.act(hol.rho(x), h), g.mul(h, x));
                assert_eq!(hol.act(hol.lambda(x).unwrap(), h), g.mul(x, h));
            }
        }
        let a = 5u32;
        assert_eq!(hol.mul(hol.aut(a), hol.rho(7)), HolElement { aut: a, g: 7 });
        // composition matches composition of the induced permutations
        for (a, b) in [(3u32, 11u32), (20, 40), (0, 53)] {
            let e = HolElement { aut: a, g: 4 };
            let f = HolElement { aut: b, g: 13 };
            for h in 0..27 {
                assert_eq!(hol.act(hol.mul(e, f), h), hol.act(f, hol.act(e, h)));
                assert_eq!(hol.act(hol.inv(e), hol.act(e, h)), h);
            }
        }
    }
}
