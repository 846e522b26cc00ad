//! Power-commutator presentations of class-two p-groups and the named presets.
//!
//! Generators are numbered from 0. A word is a list of `(generator, exponent)`
//! pairs read left to right, with `0 <= exponent < order(generator)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{binomial, is_prime, log_p, prime_of_power};
use crate::error::{HoloError, Result};

pub type Word = Vec<(usize, u64)>;

/// A presentation `<x_0, .., x_{n-1}>` with relative orders `orders[i]`,
/// power relations `x_i^{orders[i]} = powers[i]` and commutator relations
/// `[x_j, x_i] = commutators[(j, i)]` for `j > i`.
///
/// Every right-hand side must be central; relations not listed are trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTwoPresentation {
    pub p: u64,
    pub orders: Vec<u64>,
    #[serde(default)]
    pub powers: BTreeMap<usize, Word>,
    #[serde(default, with = "pair_keys")]
    pub commutators: BTreeMap<(usize, usize), Word>,
}

mod pair_keys {
    use super::*;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, usize), Word>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &Word> =
            map.iter().map(|(&(j, i), w)| (format!("{j},{i}"), w)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<(usize, usize), Word>, D::Error> {
        let keyed: BTreeMap<String, Word> = BTreeMap::deserialize(d)?;
        keyed
            .into_iter()
            .map(|(k, w)| {
                let (j, i) = k
                    .split_once(',')
                    .ok_or_else(|| serde::de::Error::custom(format!("bad commutator key {k:?}")))?;
                let j = j.trim().parse().map_err(serde::de::Error::custom)?;
                let i = i.trim().parse().map_err(serde::de::Error::custom)?;
                Ok(((j, i), w))
            })
            .collect()
    }
}

impl ClassTwoPresentation {
    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    /// Declared order, the product of the relative orders.
    pub fn order(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HoloError::InvalidPresentation(m));
        if self.p < 3 || !is_prime(self.p) {
            return bad(format!("p = {} is not an odd prime", self.p));
        }
        if self.orders.is_empty() {
            return bad("no generators".into());
        }
        for (i, &o) in self.orders.iter().enumerate() {
            if o < self.p || log_p(o, self.p).is_none() {
                return bad(format!("relative order {o} of x_{i} is not a power of {}", self.p));
            }
        }
        if self.order().is_none() {
            return bad("order overflows u64".into());
        }
        let n = self.num_gens();
        let check_word = |w: &Word, what: &str| -> Result<()> {
            for &(g, e) in w {
                if g >= n {
                    return bad(format!("{what}: generator {g} out of range"));
                }
                if e >= self.orders[g] {
                    return bad(format!(
                        "{what}: exponent {e} of x_{g} not below its relative order {}",
                        self.orders[g]
                    ));
                }
            }
            Ok(())
        };
        for (&i, w) in &self.powers {
            if i >= n {
                return bad(format!("power relation for missing generator {i}"));
            }
            check_word(w, &format!("power relation of x_{i}"))?;
        }
        for (&(j, i), w) in &self.commutators {
            if j >= n || i >= j {
                return bad(format!("commutator key ({j},{i}) must satisfy {i} < {j} < {n}"));
            }
            check_word(w, &format!("commutator [x_{j}, x_{i}]"))?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pres: Self = serde_json::from_str(text)?;
        pres.validate()?;
        Ok(pres)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

/// The named families of presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Preset {
    /// `<x, y : x^{p^2}, y^{p^2}, [x, y] = x^p>`, order `p^4`.
    Gp { p: u64 },
    /// `<x, y : x^{p^2}, y^p, [x, y] = x^p>`, order `p^3` and exponent `p^2`.
    Hp { p: u64 },
    /// Free group of class two and exponent `p` on `n` generators.
    FreeClassTwoExpP { p: u64, n: usize },
    /// Abelian group with the given invariant factors.
    Abelian { factors: Vec<u64> },
}

impl Preset {
    pub fn from_name(name: &str, p: Option<u64>, n: Option<usize>, factors: &[u64]) -> Result<Self> {
        let need_p = || p.ok_or_else(|| HoloError::UnsupportedPreset(format!("{name} needs -p")));
        Ok(match name {
            "gp" => Preset::Gp { p: need_p()? },
            "hp" => Preset::Hp { p: need_p()? },
            "free" | "free_c2_exp_p" => Preset::FreeClassTwoExpP { p: need_p()?, n: n.unwrap_or(2) },
            "abelian" => {
                if factors.is_empty() {
                    return Err(HoloError::UnsupportedPreset("abelian needs --factors".into()));
                }
                Preset::Abelian { factors: factors.to_vec() }
            }
            other => return Err(HoloError::UnsupportedPreset(other.to_string())),
        })
    }

    pub fn label(&self) -> String {
        match self {
            Preset::Gp { p } => format!("G_{p}"),
            Preset::Hp { p } => format!("H_{p}"),
            Preset::FreeClassTwoExpP { p, n } => format!("free(n={n},p={p})"),
            Preset::Abelian { factors } => {
                let parts: Vec<String> = factors.iter().map(|f| format!("C_{f}")).collect();
                parts.join("x")
            }
        }
    }

    pub fn presentation(&self) -> Result<ClassTwoPresentation> {
        let pres = match self {
            Preset::Gp { p } => two_generator(*p, p * p),
            Preset::Hp { p } => two_generator(*p, *p),
            Preset::FreeClassTwoExpP { p, n } => {
                if *n < 2 {
                    return Err(HoloError::UnsupportedPreset(format!(
                        "free class-two group needs n >= 2, got {n}"
                    )));
                }
                free_class_two(*p, *n, None)
            }
            Preset::Abelian { factors } => {
                let p = factors
                    .first()
                    .and_then(|&f| prime_of_power(f))
                    .ok_or_else(|| HoloError::UnsupportedPreset("abelian factors must be prime powers".into()))?;
                if factors.iter().any(|&f| prime_of_power(f) != Some(p)) {
                    return Err(HoloError::UnsupportedPreset(
                        "abelian factors must be powers of a single prime".into(),
                    ));
                }
                ClassTwoPresentation {
                    p,
                    orders: factors.clone(),
                    powers: BTreeMap::new(),
                    commutators: BTreeMap::new(),
                }
            }
        };
        pres.validate()?;
        Ok(pres)
    }
}

fn two_generator(p: u64, y_order: u64) -> ClassTwoPresentation {
    // [y, x] = [x, y]^{-1} = x^{-p}
    let mut commutators = BTreeMap::new();
    commutators.insert((1, 0), vec![(0, p * p - p)]);
    ClassTwoPresentation { p, orders: vec![p * p, y_order], powers: BTreeMap::new(), commutators }
}

/// Index of the commutator generator `c_{jk} = [x_j, x_k]`, `j < k`, among the
/// `n + C(n,2)` generators of the class-two presets.
pub fn commutator_generator(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < n);
    let before: usize = (0..j).map(|r| n - 1 - r).sum();
    n + before + (k - j - 1)
}

/// Class-two presentation on `x_0..x_{n-1}` and central `c_{jk} = [x_j, x_k]`,
/// all of order `p`. With `power_coeffs = Some(a)`, the relations
/// `x_i^p = prod_{j<k} c_{jk}^{a[i][pair]}` are added (pairs in lexicographic order).
pub fn free_class_two(p: u64, n: usize, power_coeffs: Option<&[Vec<u64>]>) -> ClassTwoPresentation {
    let m = n + binomial(n as u64, 2) as usize;
    let mut commutators = BTreeMap::new();
    for j in 0..n {
        for k in j + 1..n {
            commutators.insert((k, j), vec![(commutator_generator(n, j, k), p - 1)]);
        }
    }
    let mut powers = BTreeMap::new();
    if let Some(coeffs) = power_coeffs {
        for (i, row) in coeffs.iter().enumerate().take(n) {
            let word: Word = row
                .iter()
                .enumerate()
                .filter(|(_, &a)| a % p != 0)
                .map(|(pair, &a)| (n + pair, a % p))
                .collect();
            if !word.is_empty() {
                powers.insert(i, word);
            }
        }
    }
    ClassTwoPresentation { p, orders: vec![p; m], powers, commutators }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_pair_keys() {
        let pres = Preset::Gp { p: 3 }.presentation().unwrap();
        let text = pres.to_json();
        assert!(text.contains("\"1,0\""));
        assert_eq!(ClassTwoPresentation::from_json(&text).unwrap(), pres);
    }

    #[test]
    fn rejects_bad_input() {
        let mut pres = Preset::Hp { p: 3 }.presentation().unwrap();
        pres.orders[1] = 6;
        assert!(matches!(pres.validate(), Err(HoloError::InvalidPresentation(_))));
        let mut pres = Preset::Hp { p: 3 }.presentation().unwrap();
        pres.p = 2;
        assert!(pres.validate().is_err());
        assert!(matches!(
            Preset::from_name("dihedral", Some(3), None, &[]),
            Err(HoloError::UnsupportedPreset(_))
        ));
        assert!(Preset::Abelian { factors: vec![9, 5] }.presentation().is_err());
    }

    #[test]
    fn preset_orders() {
        assert_eq!(Preset::Gp { p: 5 }.presentation().unwrap().order(), Some(625));
        assert_eq!(Preset::FreeClassTwoExpP { p: 3, n: 2 }.presentation().unwrap().order(), Some(27));
        assert_eq!(Preset::FreeClassTwoExpP { p: 3, n: 3 }.presentation().unwrap().order(), Some(729));
        assert_eq!(Preset::Abelian { factors: vec![9] }.presentation().unwrap().order(), Some(9));
        assert_eq!(commutator_generator(3, 0, 1), 3);
        assert_eq!(commutator_generator(3, 0, 2), 4);
        assert_eq!(commutator_generator(3, 1, 2), 5);
    }
}
