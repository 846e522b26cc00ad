//! Closed-form gamma functions and bijections for the two-generator presets
//! `G_p = <x, y : x^{p^2}, y^{p^2}, [x, y] = x^p>` and
//! `H_p = <x, y : x^{p^2}, y^p, [x, y] = x^p>`.

use crate::arith::mod_inv;
use crate::error::{HoloError, Result};
use crate::group::GroupTable;
use crate::holomorph::GammaMap;

fn xy(g: &GroupTable) -> Result<(u32, u32, i64)> {
    let p = g.prime().ok_or(HoloError::NotPGroup)? as i64;
    let pc = g.pc_gens();
    if pc.len() != 2 || g.gens() != pc {
        return Err(HoloError::ShapeMismatch("expected the two-generator presentation".into()));
    }
    Ok((pc[0], pc[1], p))
}

fn automorphism(g: &GroupTable, images: [u32; 2]) -> Result<Vec<u32>> {
    g.extend_hom(&images, g)
        .filter(|perm| g.is_automorphism(perm))
        .ok_or_else(|| HoloError::InvalidGamma("generator images do not define an automorphism".into()))
}

/// Inverse of `d` modulo `p`.
pub fn inv_mod(d: i64, p: i64) -> i64 {
    mod_inv(d.rem_euclid(p), p).expect("d is a unit mod p")
}

/// `gamma_{s,t}` on `G_p`: `gamma(x) : x -> x, y -> x^{ps} y` and
/// `gamma(y) : x -> x^{1+pt}, y -> y^{1+p(s+t)}`.
pub fn gp_gamma(g: &GroupTable, s: i64, t: i64) -> Result<GammaMap> {
    let (x, y, p) = xy(g)?;
    let gx = automorphism(g, [x, g.mul(g.pow(x, p * s), y)])?;
    let gy = automorphism(g, [g.pow(x, 1 + p * t), g.pow(y, 1 + p * (s + t))])?;
    GammaMap::from_generator_values(g, &[gx, gy])
}

/// `gamma_t` on `H_p`: `gamma(x) : x -> x, y -> x^{-pt} y` and
/// `gamma(y) : x -> x^{1+pt}, y -> y`.
pub fn hp_gamma(g: &GroupTable, t: i64) -> Result<GammaMap> {
    let (x, y, p) = xy(g)?;
    let gx = automorphism(g, [x, g.mul(g.pow(x, -p * t), y)])?;
    let gy = automorphism(g, [g.pow(x, 1 + p * t), y])?;
    GammaMap::from_generator_values(g, &[gx, gy])
}

/// `t = d' + s - 1`, the partner of `theta_{d,s}`.
pub fn gp_partner_t(p: i64, d: i64, s: i64) -> i64 {
    (inv_mod(d, p) + s - 1).rem_euclid(p)
}

/// `theta_{d,s} : x -> x, y -> y^d`, the isomorphism from `G_p` onto its
/// circle group under `gamma_{s,t}`, `t = d' + s - 1`.
pub fn gp_theta(g: &GroupTable, d: i64, s: i64) -> Result<(Vec<u32>, GammaMap)> {
    let (x, y, p) = xy(g)?;
    let gamma = gp_gamma(g, s, gp_partner_t(p, d, s))?;
    let theta = circle_hom(g, &gamma, [x, g.pow(y, d)])?;
    Ok((theta, gamma))
}

/// `theta_d : x -> x, y -> y^d` onto the circle group of `gamma_t` on
/// `H_p`, with `d = (1 + 2t)^{-1}`.
pub fn hp_theta(g: &GroupTable, t: i64) -> Result<(Vec<u32>, GammaMap)> {
    let (x, y, p) = xy(g)?;
    let gamma = hp_gamma(g, t)?;
    let d = inv_mod(1 + 2 * t, p);
    let theta = circle_hom(g, &gamma, [x, g.pow(y, d)])?;
    Ok((theta, gamma))
}

fn circle_hom(g: &GroupTable, gamma: &GammaMap, images: [u32; 2]) -> Result<Vec<u32>> {
    let circle = gamma.circle_table(g)?;
    let theta = g.extend_hom(&images, &circle).ok_or(HoloError::NoIsomorphism)?;
    let mut seen = vec![false; theta.len()];
    if theta.iter().any(|&v| std::mem::replace(&mut seen[v as usize], true)) {
        return Err(HoloError::NoIsomorphism);
    }
    Ok(theta)
}
