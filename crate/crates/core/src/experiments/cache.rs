//! On-disk cache of automorphism data, keyed by the canonical hash of the
//! multiplication table. Entries are re-verified on load.

use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::error::{HoloError, Result};
use crate::group::{AutList, GroupTable};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheFile {
    hash: String,
    order: usize,
    /// Images of `g.gens()` under a generating set of `Aut(G)`.
    generators: Vec<Vec<u32>>,
    /// Images of `g.gens()` under every automorphism, in list order.
    elements: Option<Vec<Vec<u32>>>,
}

/// Automorphism data recovered from the cache.
#[derive(Clone, Debug)]
pub struct CachedAut {
    pub generators: Vec<Vec<u32>>,
    pub list: Option<AutList>,
}

pub fn cache_path(dir: &Path, g: &GroupTable) -> PathBuf {
    dir.join(format!("aut-{}.json", g.canonical_hash()))
}

fn images(g: &GroupTable, perm: &[u32]) -> Vec<u32> {
    g.gens().iter().map(|&s| perm[s as usize]).collect()
}

/// Writes generators and, when given, the full list.
pub fn cache_aut(dir: &Path, g: &GroupTable, generators: &[Vec<u32>], list: Option<&AutList>) -> Result<()> {
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        hash: g.canonical_hash(),
        order: g.order(),
        generators: generators.iter().map(|p| images(g, p)).collect(),
        elements: list.map(|l| (0..l.len() as u32).map(|i| l.set.images(i)).collect()),
    };
    fs::write(cache_path(dir, g), serde_json::to_string(&file)?)?;
    Ok(())
}

fn verified_perm(g: &GroupTable, imgs: &[u32]) -> Result<Vec<u32>> {
    if imgs.len() != g.gens().len() || imgs.iter().any(|&x| x as usize >= g.order()) {
        return Err(HoloError::CacheCorrupt("entry has the wrong shape".into()));
    }
    g.extend_hom(imgs, g)
        .filter(|perm| g.is_automorphism(perm))
        .ok_or_else(|| HoloError::CacheCorrupt("entry is not an automorphism".into()))
}

/// Reads and verifies a cache entry. `Ok(None)` when there is none.
pub fn load_aut(dir: &Path, g: &GroupTable) -> Result<Option<CachedAut>> {
    let path = cache_path(dir, g);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    let file: CacheFile =
        serde_json::from_str(&text).map_err(|e| HoloError::CacheCorrupt(format!("{}: {e}", path.display())))?;
    if file.hash != g.canonical_hash() || file.order != g.order() {
        return Err(HoloError::CacheCorrupt("hash or order does not match".into()));
    }
    let generators: Vec<Vec<u32>> =
        file.generators.iter().map(|imgs| verified_perm(g, imgs)).collect::<Result<_>>()?;
    let list = match file.elements {
        Some(elements) => {
            let perms = elements.iter().map(|imgs| verified_perm(g, imgs)).collect::<Result<Vec<_>>>()?;
            let list = AutList::from_perms(g, perms)?;
            if generators.iter().any(|p| list.set.find(p).is_none()) {
                return Err(HoloError::CacheCorrupt("generator missing from the list".into()));
            }
            Some(list)
        }
        None => None,
    };
    info!("loaded automorphism data from {}", path.display());
    Ok(Some(CachedAut { generators, list }))
}

/// [`load_aut`], downgrading a corrupt entry to a miss with a warning.
pub fn load_aut_or_warn(dir: &Path, g: &GroupTable) -> Option<CachedAut> {
    match load_aut(dir, g) {
        Ok(c) => c,
        Err(e) => {
            warn!("ignoring automorphism cache: {e}; recomputing");
            None
        }
    }
}
