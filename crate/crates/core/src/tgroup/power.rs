//! The power maps `theta_d : x -> x^d`, which normalise `Hol(G)` for
//! class-two `G` and odd `p`, with
//! `rho(g)^{theta_d} = iota(g^{(1-d)/2}) rho(g^d)` and
//! `gamma(g) = iota(g^{(d'-1)/2})`, `d'` the inverse of `d` modulo `exp(G)`.

use crate::arith::{gcd, mod_inv};
use crate::error::{HoloError, Result};
use crate::group::subgroup::quotient;
use crate::group::GroupTable;
use crate::tgroup::theta::{gamma_from_theta, ThetaClass};

/// `exp(G/Z(G))`.
pub fn central_quotient_exponent(g: &GroupTable) -> Result<u64> {
    let (q, _) = quotient(g, &g.center())?;
    Ok(q.exponent())
}

pub fn power_map(g: &GroupTable, d: i64) -> Vec<u32> {
    (0..g.order() as u32).map(|x| g.pow(x, d)).collect()
}

/// `(1 - d)/2` modulo `exp(G)`.
fn half(g: &GroupTable, v: i64) -> i64 {
    let e = g.exponent() as i64;
    v.rem_euclid(e) * mod_inv(2, e).expect("exponent is odd") % e
}

/// Whether `(h^{d'} x)^d = h^{iota(x^{(1-d)/2})} x^d` for all `h, x`.
pub fn rho_to_theta_d_holds(g: &GroupTable, d: i64) -> bool {
    let e = g.exponent() as i64;
    let Some(d_inv) = mod_inv(d, e) else { return false };
    let c = half(g, 1 - d);
    let n = g.order() as u32;
    (0..n).all(|x| {
        let k = g.pow(x, c);
        let xd = g.pow(x, d);
        (0..n).all(|h| g.pow(g.mul(g.pow(h, d_inv), x), d) == g.mul(g.conj(h, k), xd))
    })
}

/// Whether the gamma function of `class` is `g -> iota(g^{(d'-1)/2})`.
pub fn gamma_is_inner_power(g: &GroupTable, class: &ThetaClass, d: i64) -> bool {
    let e = g.exponent() as i64;
    let Some(d_inv) = mod_inv(d, e) else { return false };
    let c = half(g, d_inv - 1);
    let n = g.order() as u32;
    (0..n).all(|h| {
        let k = g.pow(h, c);
        g.gens().iter().all(|&x| class.gamma.act(x, h) == g.conj(x, k))
    })
}

/// `theta_d` for every `d` in `1..exp(G/Z(G))` coprime to `p`, each with its
/// validated gamma function.
pub fn power_theta_family(g: &GroupTable, aut_gens: &[Vec<u32>]) -> Result<Vec<(u64, ThetaClass)>> {
    let p = g.prime().ok_or(HoloError::NotPGroup)?;
    let r = central_quotient_exponent(g)?;
    let ds: Vec<u64> = if r == 1 { vec![1] } else { (1..r).filter(|&d| gcd(d, p) == 1).collect() };
    ds.into_iter()
        .map(|d| {
            let theta = power_map(g, d as i64);
            let gamma = gamma_from_theta(g, &theta, aut_gens)?;
            Ok((d, ThetaClass { theta, gamma }))
        })
        .collect()
}
