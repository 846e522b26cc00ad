//! Bijections `theta` of `G` fixing 1 that normalise `Hol(G)`, and the gamma
//! function of the regular subgroup `rho(G)^theta`.

use crate::error::{HoloError, Result};
use crate::group::GroupTable;
use crate::holomorph::{GammaMap, RegularSubgroup};

/// An element of `T(G)`: a representative bijection and its gamma function.
/// Two classes are equal exactly when their gamma functions are.
#[derive(Clone, Debug)]
pub struct ThetaClass {
    pub theta: Vec<u32>,
    pub gamma: GammaMap,
}

pub fn invert(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

/// `theta1` then `theta2`.
pub fn compose(theta1: &[u32], theta2: &[u32]) -> Vec<u32> {
    theta1.iter().map(|&x| theta2[x as usize]).collect()
}

fn check_bijection(g: &GroupTable, theta: &[u32]) -> Result<()> {
    if theta.len() != g.order() || theta[0] != 0 {
        return Err(HoloError::NotInNHol("theta does not fix 1".into()));
    }
    let mut seen = vec![false; theta.len()];
    for &x in theta {
        if x as usize >= theta.len() || std::mem::replace(&mut seen[x as usize], true) {
            return Err(HoloError::NotInNHol("theta is not a bijection".into()));
        }
    }
    Ok(())
}

/// `x^{gamma(h)} = (x^{theta^{-1}} h^{theta^{-1}})^theta h^{-1}`.
#[inline]
fn act(g: &GroupTable, theta: &[u32], theta_inv: &[u32], x: u32, h: u32) -> u32 {
    let y = g.mul(theta_inv[x as usize], theta_inv[h as usize]);
    g.mul(theta[y as usize], g.inv(h))
}

/// The gamma function attached to `theta`, validated against both defining
/// conditions; `aut_gens` generates `Aut(G)`.
pub fn gamma_from_theta(g: &GroupTable, theta: &[u32], aut_gens: &[Vec<u32>]) -> Result<GammaMap> {
    check_bijection(g, theta)?;
    let theta_inv = invert(theta);
    let n = g.order() as u32;
    let gm = GammaMap::from_fn(g, |h| (0..n).map(|x| act(g, theta, &theta_inv, x, h)).collect())?;
    gm.validate(g, aut_gens).map_err(|e| HoloError::NotInNHol(e.to_string()))?;
    Ok(gm)
}

/// [`GammaMap::signature`] of the gamma function attached to `theta`,
/// computed on generators only. Only meaningful when `theta` is known to
/// normalise `Hol(G)`.
pub fn gamma_signature_from_theta(g: &GroupTable, theta: &[u32], theta_inv: &[u32]) -> Vec<u32> {
    g.gens()
        .iter()
        .flat_map(|&h| g.gens().iter().map(move |&x| act(g, theta, theta_inv, x, h)))
        .collect()
}

/// `rho(x)^theta = nu(x^theta)` as permutations, for all `x`:
/// `(h^{theta^{-1}} x)^theta = h^{gamma(x^theta)} x^theta` for all `h`.
pub fn rho_theta_nu_holds(g: &GroupTable, theta: &[u32], gamma: &GammaMap) -> bool {
    let theta_inv = invert(theta);
    let n = g.order() as u32;
    (0..n).all(|x| {
        let xt = theta[x as usize];
        (0..n).all(|h| theta[g.mul(theta_inv[h as usize], x) as usize] == gamma.circle(g, h, xt))
    })
}

/// The class sending `rho(G)` to `n`, represented by the first isomorphism
/// `G -> (G, o)` found by the search.
pub fn theta_for(g: &GroupTable, n: &RegularSubgroup) -> Result<ThetaClass> {
    let theta = n.iso.clone().ok_or(HoloError::NoIsomorphism)?;
    if !rho_theta_nu_holds(g, &theta, &n.gamma) {
        return Err(HoloError::NotInNHol("rho(g)^theta != nu(g^theta)".into()));
    }
    Ok(ThetaClass { theta, gamma: n.gamma.clone() })
}
