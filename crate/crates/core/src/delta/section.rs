use crate::error::{HoloError, Result};
use crate::group::subgroup::quotient;
use crate::group::{GroupTable, Subgroup};

/// Marks elements outside a subgroup section.
pub const NONE: u32 = u32::MAX;

/// An elementary abelian section of `G` with a chosen basis: either a
/// quotient `G/N` or a subgroup of `G`. Coordinates are packed base-`p`
/// integers, digit `i` being the coefficient of `basis[i]`.
#[derive(Clone, Debug)]
pub struct ElementarySection {
    pub p: u64,
    /// Representatives in `G` of the basis vectors.
    pub basis: Vec<u32>,
    code: Vec<u32>,
    lift: Vec<u32>,
}

impl ElementarySection {
    /// `G/N`, which must be elementary abelian of exponent `p`.
    pub fn quotient(g: &GroupTable, n: &Subgroup, p: u64) -> Result<Self> {
        let (q, proj) = quotient(g, n)?;
        let candidates: Vec<u32> = (0..q.order() as u32).collect();
        let (qbasis, qcode) = span_codes(&q, &candidates, p)?;
        if qcode.iter().any(|&c| c == NONE) {
            return Err(HoloError::UnsupportedModuli("quotient is not elementary abelian".into()));
        }
        let basis: Vec<u32> = qbasis
            .iter()
            .map(|&b| proj.iter().position(|&x| x == b).expect("projection is onto") as u32)
            .collect();
        let code = proj.iter().map(|&x| qcode[x as usize]).collect();
        Ok(Self::finish(g, p, basis, code))
    }

    /// The subgroup `n`, which must be elementary abelian of exponent `p`.
    pub fn subgroup(g: &GroupTable, n: &Subgroup, p: u64) -> Result<Self> {
        let (basis, code) = span_codes(g, &n.elements, p)?;
        if n.elements.iter().any(|&x| code[x as usize] == NONE) {
            return Err(HoloError::UnsupportedModuli("subgroup is not elementary abelian".into()));
        }
        Ok(Self::finish(g, p, basis, code))
    }

    fn finish(g: &GroupTable, p: u64, basis: Vec<u32>, code: Vec<u32>) -> Self {
        let size = p.pow(basis.len() as u32) as usize;
        let mut lift = vec![0u32; size];
        for c in 1..size {
            // strip the lowest nonzero digit
            let mut i = 0;
            let mut unit = 1usize;
            while (c / unit) % p as usize == 0 {
                i += 1;
                unit *= p as usize;
            }
            lift[c] = g.mul(lift[c - unit], basis[i]);
        }
        ElementarySection { p, basis, code, lift }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> usize {
        self.lift.len()
    }

    /// Packed coordinates of `x`, or [`NONE`] for elements outside a
    /// subgroup section.
    #[inline]
    pub fn code(&self, x: u32) -> u32 {
        self.code[x as usize]
    }

    /// The element `prod basis[i]^{digit i}` of `G`.
    #[inline]
    pub fn lift(&self, code: u32) -> u32 {
        self.lift[code as usize]
    }

    pub fn digits(&self, code: u32) -> Vec<u64> {
        let mut c = code as u64;
        (0..self.dim())
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d % self.p) as u32
    }

    /// Matrix (rows are images of basis vectors) of the map induced by an
    /// automorphism.
    pub fn matrix(&self, perm: &[u32]) -> Vec<Vec<u64>> {
        self.basis.iter().map(|&b| self.digits(self.code(perm[b as usize]))).collect()
    }
}

/// Greedy basis of the span of `candidates` inside the abelian group `q`,
/// with packed coordinates for every element of the span.
fn span_codes(q: &GroupTable, candidates: &[u32], p: u64) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut code = vec![NONE; q.order()];
    code[0] = 0;
    let mut members = vec![0u32];
    let mut basis = Vec::new();
    let mut unit = 1u64;
    for &b in candidates {
        if code[b as usize] != NONE {
            continue;
        }
        if q.order_of(b) != p {
            return Err(HoloError::UnsupportedModuli(format!("element of order {} in a section of exponent {p}", q.order_of(b))));
        }
        let old = members.clone();
        let mut power = 0u32;
        for k in 1..p {
            power = q.mul(power, b);
            for &s in &old {
                let x = q.mul(s, power);
                if code[x as usize] != NONE {
                    return Err(HoloError::UnsupportedModuli("section is not abelian".into()));
                }
                code[x as usize] = code[s as usize] + (k * unit) as u32;
                members.push(x);
            }
        }
        basis.push(b);
        unit *= p;
    }
    for &x in &members {
        for &y in &basis {
            if q.mul(x, y) != q.mul(y, x) {
                return Err(HoloError::UnsupportedModuli("section is not abelian".into()));
            }
        }
    }
    Ok((basis, code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Preset, DEFAULT_ORDER_CAP};

    #[test]
    fn sections_of_g3() {
        let g = GroupTable::from_preset(&Preset::Gp { p: 3 }, DEFAULT_ORDER_CAP).unwrap();
        let z = g.center();
        let v = ElementarySection::quotient(&g, &z, 3).unwrap();
        assert_eq!(v.dim(), 2);
        let w = ElementarySection::subgroup(&g, &z, 3).unwrap();
        assert_eq!(w.dim(), 2);
        for c in 0..w.size() as u32 {
            assert_eq!(w.code(w.lift(c)), c);
        }
        for x in 0..g.order() as u32 {
            // lift(code(x)) agrees with x modulo Z
            let l = v.lift(v.code(x));
            assert!(z.contains(g.mul(g.inv(l), x)));
        }
        assert!(ElementarySection::subgroup(&g, &Subgroup::whole(&g), 3).is_err());
    }
}
