use std::collections::HashMap;

use serde::Serialize;

use crate::error::{HoloError, Result};
use crate::group::GroupTable;
use crate::holomorph::RegularSubgroup;
use crate::tgroup::theta::{compose, gamma_signature_from_theta, invert, theta_for, ThetaClass};

/// `T(G)` with class 0 the identity. `table` is the multiplication table of
/// class indices, `a * b` meaning "a then b".
#[derive(Clone, Debug)]
pub struct TGroup {
    pub classes: Vec<ThetaClass>,
    pub table: GroupTable,
    signatures: HashMap<Vec<u32>, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub theta_generator_images: Vec<u32>,
    pub gamma_signature: Vec<u32>,
}

impl TGroup {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class whose gamma function has this signature.
    pub fn class_of_signature(&self, sig: &[u32]) -> Option<usize> {
        self.signatures.get(sig).copied()
    }

    /// Class of an arbitrary bijection known to normalise `Hol(G)`.
    pub fn class_of_theta(&self, g: &GroupTable, theta: &[u32]) -> Result<usize> {
        let sig = gamma_signature_from_theta(g, theta, &invert(theta));
        self.class_of_signature(&sig)
            .ok_or_else(|| HoloError::ClosureFailure("gamma of theta is not in H(G)".into()))
    }

    pub fn records(&self, g: &GroupTable) -> Vec<ClassRecord> {
        self.classes
            .iter()
            .map(|c| ClassRecord {
                theta_generator_images: g.gens().iter().map(|&s| c.theta[s as usize]).collect(),
                gamma_signature: c.gamma.signature(g),
            })
            .collect()
    }
}

/// Builds `T(G)` from `H(G)`: one class per member, products looked up by
/// the gamma function of the composed representatives.
pub fn build_t_group(g: &GroupTable, hc: &[&RegularSubgroup]) -> Result<TGroup> {
    let mut members: Vec<&RegularSubgroup> = hc.to_vec();
    let id = members
        .iter()
        .position(|n| n.gamma.is_identity())
        .ok_or_else(|| HoloError::ClosureFailure("rho(G) is missing from H(G)".into()))?;
    let first = members.remove(id);
    members.insert(0, first);
    let classes: Vec<ThetaClass> = members.iter().map(|n| theta_for(g, n)).collect::<Result<_>>()?;
    let mut signatures = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        if signatures.insert(c.gamma.signature(g), i).is_some() {
            return Err(HoloError::ClosureFailure("two members of H(G) share a gamma function".into()));
        }
    }
    let inverses: Vec<Vec<u32>> = classes.iter().map(|c| invert(&c.theta)).collect();
    let k = classes.len();
    let mut mul = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            let theta = compose(&classes[a].theta, &classes[b].theta);
            let theta_inv = compose(&inverses[b], &inverses[a]);
            let sig = gamma_signature_from_theta(g, &theta, &theta_inv);
            let c = signatures.get(&sig).ok_or_else(|| {
                HoloError::ClosureFailure(format!("product of classes {a} and {b} is not in H(G)"))
            })?;
            mul[a * k + b] = *c as u32;
        }
    }
    let table = GroupTable::from_table(k, mul).map_err(|e| HoloError::ClosureFailure(e.to_string()))?;
    Ok(TGroup { classes, table, signatures })
}
