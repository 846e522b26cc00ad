use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HoloError, Result};
use crate::group::aut::DEFAULT_AUT_MEMORY_CAP;
use crate::group::search::DEFAULT_SEARCH_BUDGET;
use crate::group::{ClassTwoPresentation, Preset, DEFAULT_ORDER_CAP};

/// How `J(G)` is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Backtracking over the full automorphism list.
    Generic,
    /// Linear algebra over `F_p` on equivariant bilinear maps.
    Delta,
    /// Both, cross-checked.
    Both,
}

impl FromStr for Strategy {
    type Err = HoloError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Strategy::Generic),
            "delta" => Ok(Strategy::Delta),
            "both" => Ok(Strategy::Both),
            other => Err(HoloError::InvalidConfig(format!("unknown strategy {other}"))),
        }
    }
}

/// Where the group comes from.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Preset(Preset),
    Presentation(ClassTwoPresentation),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: GroupSource,
    pub strategy: Strategy,
    pub order_cap: u64,
    pub budget: u64,
    pub aut_memory_cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: GroupSource) -> Self {
        RunConfig {
            source,
            strategy: Strategy::Generic,
            order_cap: DEFAULT_ORDER_CAP,
            budget: DEFAULT_SEARCH_BUDGET,
            aut_memory_cap: DEFAULT_AUT_MEMORY_CAP,
            cache_dir: None,
        }
    }

    pub fn preset(preset: Preset) -> Self {
        Self::new(GroupSource::Preset(preset))
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.order_cap == 0 || self.budget == 0 || self.aut_memory_cap == 0 {
            return Err(HoloError::InvalidConfig("caps and budgets must be positive".into()));
        }
        let pres = self.presentation()?;
        if pres.p == 2 {
            return Err(HoloError::InvalidConfig("p must be odd".into()));
        }
        Ok(())
    }

    pub fn presentation(&self) -> Result<ClassTwoPresentation> {
        match &self.source {
            GroupSource::Preset(p) => p.presentation(),
            GroupSource::Presentation(p) => {
                p.validate()?;
                Ok(p.clone())
            }
        }
    }

    pub fn label(&self) -> String {
        match &self.source {
            GroupSource::Preset(p) => p.label(),
            GroupSource::Presentation(p) => format!("presentation(p={}, order={})", p.p, p.order().unwrap_or(0)),
        }
    }
}
