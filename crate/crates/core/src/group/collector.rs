//! Multiplication of normal forms `x_0^{a_0} ... x_{n-1}^{a_{n-1}}` in a
//! class-two presentation.
//!
//! In class two, `x^a x^b = prod_i x_i^{a_i + b_i} * prod_{j > i} [x_j, x_i]^{a_j b_i}`,
//! and an overflowing exponent `a_i + b_i = r_i + q_i * ord_i` contributes the
//! central word `(x_i^{ord_i})^{q_i}`. The correction words are multiplied in
//! recursively. Nothing here proves the result is a group; callers certify the
//! table (see [`crate::group::GroupTable::from_presentation`]).

use crate::error::{HoloError, Result};
use crate::group::presentation::{ClassTwoPresentation, Word};

const MAX_DEPTH: usize = 48;

#[derive(Clone, Debug)]
pub struct Collector {
    pres: ClassTwoPresentation,
    radix: Vec<u64>,
    order: u64,
    power_nf: Vec<Option<Vec<u64>>>,
    comm_nf: Vec<Vec<Option<Vec<u64>>>>,
}

impl Collector {
    pub fn new(pres: &ClassTwoPresentation) -> Result<Self> {
        pres.validate()?;
        let n = pres.num_gens();
        let mut radix = Vec::with_capacity(n);
        let mut m = 1u64;
        for &o in &pres.orders {
            radix.push(m);
            m *= o;
        }
        let mut col = Collector {
            pres: pres.clone(),
            radix,
            order: m,
            power_nf: vec![None; n],
            comm_nf: vec![vec![None; n]; n],
        };
        // Normal forms of the right-hand sides, computed with the uncached
        // recursion and then frozen.
        let mut power_nf = vec![None; n];
        for (&i, w) in &pres.powers {
            if !w.is_empty() {
                power_nf[i] = Some(col.word_nf(w, 1)?);
            }
        }
        let mut comm_nf = vec![vec![None; n]; n];
        for (&(j, i), w) in &pres.commutators {
            if !w.is_empty() {
                comm_nf[j][i] = Some(col.word_nf(w, 1)?);
            }
        }
        col.power_nf = power_nf;
        col.comm_nf = comm_nf;
        Ok(col)
    }

    pub fn presentation(&self) -> &ClassTwoPresentation {
        &self.pres
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn num_gens(&self) -> usize {
        self.pres.num_gens()
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.radix).map(|(a, m)| a * m).sum()
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        self.pres
            .orders
            .iter()
            .map(|&o| {
                let a = idx % o;
                idx /= o;
                a
            })
            .collect()
    }

    /// Index of the generator `x_i`.
    pub fn generator(&self, i: usize) -> u64 {
        self.radix[i]
    }

    pub fn mul(&self, a: u64, b: u64) -> Result<u64> {
        let v = self.mul_vec(&self.decode(a), &self.decode(b), 0)?;
        Ok(self.encode(&v))
    }

    pub fn mul_vec(&self, a: &[u64], b: &[u64], depth: usize) -> Result<Vec<u64>> {
        if depth > MAX_DEPTH {
            return Err(HoloError::InconsistentPresentation(
                "collection does not terminate; relations are not central".into(),
            ));
        }
        let n = a.len();
        let orders = &self.pres.orders;
        let mut out = Vec::with_capacity(n);
        let mut carries = Vec::with_capacity(n);
        for i in 0..n {
            let s = a[i] + b[i];
            out.push(s % orders[i]);
            carries.push(s / orders[i]);
        }
        for i in 0..n {
            if carries[i] > 0 {
                let w = self.power_word(i, depth)?;
                if let Some(w) = w {
                    let c = self.pow_vec(&w, carries[i], depth + 1)?;
                    out = self.mul_vec(&out, &c, depth + 1)?;
                }
            }
        }
        for i in 0..n {
            if b[i] == 0 {
                continue;
            }
            for j in i + 1..n {
                if a[j] == 0 {
                    continue;
                }
                if let Some(w) = self.comm_word(j, i, depth)? {
                    let c = self.pow_vec(&w, a[j] * b[i], depth + 1)?;
                    out = self.mul_vec(&out, &c, depth + 1)?;
                }
            }
        }
        Ok(out)
    }

    fn power_word(&self, i: usize, depth: usize) -> Result<Option<Vec<u64>>> {
        if let Some(v) = &self.power_nf[i] {
            return Ok(Some(v.clone()));
        }
        match self.pres.powers.get(&i) {
            Some(w) if !w.is_empty() => Ok(Some(self.word_nf(w, depth + 1)?)),
            _ => Ok(None),
        }
    }

    fn comm_word(&self, j: usize, i: usize, depth: usize) -> Result<Option<Vec<u64>>> {
        if let Some(v) = &self.comm_nf[j][i] {
            return Ok(Some(v.clone()));
        }
        match self.pres.commutators.get(&(j, i)) {
            Some(w) if !w.is_empty() => Ok(Some(self.word_nf(w, depth + 1)?)),
            _ => Ok(None),
        }
    }

    fn unit(&self, g: usize, e: u64) -> Vec<u64> {
        let mut v = vec![0; self.num_gens()];
        v[g] = e;
        v
    }

    fn word_nf(&self, w: &Word, depth: usize) -> Result<Vec<u64>> {
        let mut acc = vec![0; self.num_gens()];
        for &(g, e) in w {
            acc = self.mul_vec(&acc, &self.unit(g, e), depth + 1)?;
        }
        Ok(acc)
    }

    fn pow_vec(&self, v: &[u64], mut k: u64, depth: usize) -> Result<Vec<u64>> {
        let mut result = vec![0; v.len()];
        let mut base = v.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_vec(&result, &base, depth)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_vec(&base, &base, depth)?;
            }
        }
        Ok(result)
    }

    /// Normal form index of a word.
    pub fn eval_word(&self, w: &Word) -> Result<u64> {
        Ok(self.encode(&self.word_nf(w, 0)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::Preset;

    #[test]
    fn commutator_relation_is_collected() {
        let col = Collector::new(&Preset::Gp { p: 3 }.presentation().unwrap()).unwrap();
        let x = col.generator(0);
        let y = col.generator(1);
        // y x = x y [y, x] = x y x^{-3} = x^{7} y
        let yx = col.mul(y, x).unwrap();
        assert_eq!(col.decode(yx), vec![7, 1]);
        assert_eq!(col.order(), 81);
    }

    #[test]
    fn power_overflow_uses_power_word() {
        let col = Collector::new(&Preset::Abelian { factors: vec![27] }.presentation().unwrap()).unwrap();
        assert_eq!(col.mul(20, 10).unwrap(), 3);
    }
}
