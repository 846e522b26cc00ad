//! Identities every gamma function satisfies, checked exhaustively. Failures
//! are reported with a witness rather than raised: a failure means the
//! implementation is wrong, not the input.

use serde::Serialize;

use crate::group::{AutList, GroupTable};
use crate::holomorph::gamma::GammaMap;
use crate::holomorph::hol::{Hol, HolElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyReport {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        PropertyReport { name: name.into(), passed: true, detail: detail.into() }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        PropertyReport { name: name.into(), passed: false, detail: detail.into() }
    }
}

/// `[g, alpha] = g^{-1} g^alpha`.
fn comm_aut(g: &GroupTable, gamma: &GammaMap, x: u32, h: u32) -> u32 {
    g.mul(g.inv(x), gamma.act(x, h))
}

/// `gamma(g^beta g^{-1}) = [gamma(g), beta]` for all `g` and all `beta` in
/// `Aut(G)`, and `gamma([h, g^{-1}]) = iota((h^{-1})^{gamma(g)} h)` for all
/// `g, h`. Automorphisms are compared on the generators.
pub fn formulas_check(g: &GroupTable, aut: &AutList, gamma: &GammaMap) -> PropertyReport {
    let name = "commutator formulas";
    let n = g.order() as u32;
    for b in 0..aut.len() as u32 {
        let bi = aut.inv[b as usize];
        for x in 0..n {
            let xi = g.inv(x);
            let lhs_elt = g.mul(aut.set.apply(b, x), xi);
            for &t in g.gens() {
                let lhs = gamma.act(t, lhs_elt);
                // t^{gamma(g)^{-1} beta^{-1} gamma(g) beta}
                let rhs = aut.set.apply(b, gamma.act(aut.set.apply(bi, gamma.act(t, xi)), x));
                if lhs != rhs {
                    return PropertyReport::fail(name, format!("first identity fails at g = {x}, beta = {b}"));
                }
            }
        }
    }
    for x in 0..n {
        let xi = g.inv(x);
        for h in 0..n {
            let lhs_elt = g.comm(h, xi);
            let k = g.mul(gamma.act(g.inv(h), x), h);
            for &t in g.gens() {
                if gamma.act(t, lhs_elt) != g.conj(t, k) {
                    return PropertyReport::fail(name, format!("second identity fails at g = {x}, h = {h}"));
                }
            }
        }
    }
    PropertyReport::pass(name, "both identities hold for all g, h and all automorphisms")
}

/// The four conditions `gamma(G') = 1`, `gamma(G)` abelian,
/// `[gamma(G), G] <= Z(G)` and `[gamma(G), G] <= ker gamma`, which agree for
/// class-two `G`; when they hold, `gamma(G)` also centralises `G'`.
pub fn eqcond_check(g: &GroupTable, gamma: &GammaMap) -> (PropertyReport, [bool; 4]) {
    let name = "four equivalent conditions";
    let n = g.order() as u32;
    let derived = g.derived();
    let center = g.center();
    let c1 = derived.elements.iter().all(|&d| gamma.is_trivial_at(d));
    let c2 = g.gens().iter().all(|&a| {
        g.gens().iter().all(|&b| {
            g.gens().iter().all(|&t| gamma.act(gamma.act(t, a), b) == gamma.act(gamma.act(t, b), a))
        })
    });
    let c3 = (0..n).all(|x| g.gens().iter().all(|&h| center.contains(comm_aut(g, gamma, x, h))));
    let c4 = (0..n).all(|x| (0..n).all(|h| gamma.is_trivial_at(comm_aut(g, gamma, x, h))));
    let flags = [c1, c2, c3, c4];
    if flags.iter().any(|&f| f != c1) {
        return (PropertyReport::fail(name, format!("conditions disagree: {flags:?}")), flags);
    }
    if c1 {
        let centralises = derived.elements.iter().all(|&d| (0..n).all(|h| gamma.act(d, h) == d));
        if !centralises {
            return (PropertyReport::fail(name, "gamma(G) does not centralise G'"), flags);
        }
    }
    (PropertyReport::pass(name, format!("all four conditions are {c1}")), flags)
}

fn nu(gamma: &GammaMap, h: u32) -> HolElement {
    HolElement { aut: gamma.pool_index(h), g: h }
}

/// `nu(g o h) = nu(g) nu(h)` and `g^{nu(h)} = g o h` for all pairs, with
/// `nu` injective.
pub fn nu_check(g: &GroupTable, gamma: &GammaMap) -> PropertyReport {
    let name = "nu is an isomorphism onto N";
    let hol = Hol::new(g, gamma.pool());
    let n = g.order() as u32;
    for x in 0..n {
        if hol.act(nu(gamma, x), 0) != x {
            return PropertyReport::fail(name, format!("1^nu({x}) != {x}"));
        }
        for h in 0..n {
            let c = gamma.circle(g, x, h);
            if hol.act(nu(gamma, h), x) != c {
                return PropertyReport::fail(name, format!("g^nu(h) != g o h at ({x}, {h})"));
            }
            if hol.mul(nu(gamma, x), nu(gamma, h)) != nu(gamma, c) {
                return PropertyReport::fail(name, format!("nu(g o h) != nu(g) nu(h) at ({x}, {h})"));
            }
        }
    }
    PropertyReport::pass(name, "checked on all pairs")
}

/// The pair `(a, b)`: (a) `gamma(G) <= Aut_c(G)`, (b) `[Z(G), gamma(G)] = 1`.
pub fn central_hypotheses(g: &GroupTable, gamma: &GammaMap) -> (bool, bool) {
    let center = g.center();
    let n = g.order() as u32;
    let a = (0..n).all(|x| g.gens().iter().all(|&h| center.contains(comm_aut(g, gamma, x, h))));
    let b = center.elements.iter().all(|&z| g.gens().iter().all(|&h| gamma.act(z, h) == z));
    (a, b)
}

/// Under the central hypotheses, `[nu(g), nu(h)] = nu([g, h] [g, gamma(h)] [h, gamma(g)]^{-1})`
/// computed in the holomorph, for all pairs.
pub fn commutator_of_nu_check(g: &GroupTable, gamma: &GammaMap) -> PropertyReport {
    let name = "commutator of nu";
    let (a, b) = central_hypotheses(g, gamma);
    if !(a && b) {
        return PropertyReport::pass(name, "not applicable: central hypotheses fail");
    }
    let hol = Hol::new(g, gamma.pool());
    let n = g.order() as u32;
    for x in 0..n {
        for h in 0..n {
            let lhs = hol.comm(nu(gamma, x), nu(gamma, h));
            let k = g.mul(
                g.mul(g.comm(x, h), comm_aut(g, gamma, x, h)),
                g.inv(comm_aut(g, gamma, h, x)),
            );
            if lhs != nu(gamma, k) {
                return PropertyReport::fail(name, format!("fails at ({x}, {h})"));
            }
        }
    }
    PropertyReport::pass(name, "checked on all pairs")
}

/// Under the central hypotheses, for every `g` and `1 <= n <= exp(G)`:
/// `nu(g)^n = nu(g^n [g, gamma(g)]^{C(n,2)})`, for odd `n` also
/// `nu(g)^n = nu((g^n)^{gamma(g^{(n-1)/2})})`, and `nu(g)` has the order of `g`.
pub fn powers_check(g: &GroupTable, gamma: &GammaMap) -> PropertyReport {
    let name = "powers of nu";
    let (a, b) = central_hypotheses(g, gamma);
    if !(a && b) {
        return PropertyReport::pass(name, "not applicable: central hypotheses fail");
    }
    let hol = Hol::new(g, gamma.pool());
    let e = g.exponent();
    for x in 0..g.order() as u32 {
        let v = nu(gamma, x);
        let delta = comm_aut(g, gamma, x, x);
        let mut acc = v;
        let mut order = None;
        for k in 1..=e {
            if k > 1 {
                acc = hol.mul(acc, v);
            }
            let ki = k as i64;
            let rhs = g.mul(g.pow(x, ki), g.pow(delta, ki * (ki - 1) / 2));
            if acc != nu(gamma, rhs) {
                return PropertyReport::fail(name, format!("additive form fails at g = {x}, n = {k}"));
            }
            if k % 2 == 1 {
                let rhs = gamma.act(g.pow(x, ki), g.pow(x, (ki - 1) / 2));
                if acc != nu(gamma, rhs) {
                    return PropertyReport::fail(name, format!("odd form fails at g = {x}, n = {k}"));
                }
            }
            if order.is_none() && acc == hol.one() {
                order = Some(k);
            }
        }
        if order != Some(g.order_of(x)) {
            return PropertyReport::fail(name, format!("order of nu({x}) differs from the order of {x}"));
        }
    }
    PropertyReport::pass(name, "checked for all g and all n up to the exponent")
}

/// Whether `N` is normalised by the generators of `Aut(G)` and of `rho(G)`,
/// computed with holomorph arithmetic.
pub fn is_normal_in_hol(g: &GroupTable, aut: &AutList, gamma: &GammaMap) -> bool {
    let mut values = Vec::with_capacity(g.order());
    for h in 0..g.order() as u32 {
        match aut.set.find(gamma.perm(h)) {
            Some(a) => values.push(a),
            None => return false,
        }
    }
    let hol = Hol::new(g, &aut.set);
    let member = |e: HolElement| values[e.g as usize] == e.aut;
    let conjugators: Vec<HolElement> = aut
        .generators
        .iter()
        .map(|&b| hol.aut(b))
        .chain(g.gens().iter().map(|&t| hol.rho(t)))
        .collect();
    g.gens().iter().all(|&s| {
        let v = HolElement { aut: values[s as usize], g: s };
        conjugators.iter().all(|&c| member(hol.conj(v, c)))
    })
}

/// All property checks that need no automorphism list.
pub fn structural_checks(g: &GroupTable, gamma: &GammaMap) -> Vec<PropertyReport> {
    vec![
        eqcond_check(g, gamma).0,
        nu_check(g, gamma),
        commutator_of_nu_check(g, gamma),
        powers_check(g, gamma),
    ]
}
