//! TOML configuration. Every section and field is optional.
//!
//! ```toml
//! capacities = [1000, 875, 1200, 525, 1500, 1700]
//!
//! [objective]
//! alpha = 1.0
//! theta = 100.0
//! beta = 100.0
//!
//! [cost]
//! big_n = 10000.0
//! big_m = 1000.0
//! theta = 0.01
//! lambda = 1.0
//!
//! [sort]
//! n = 4
//! m = 4
//!
//! [search]
//! omega = 95.0
//! gamma = 100
//! micro_repeats = 3
//! seed = 0
//!
//! [forge]
//! scheme = "perfect"
//! density = 107.0
//! ```

use std::path::Path;

use anyhow::{Context, Result};
use atucp_core::forge::{catalog_with_capacities, ForgeParams, DEFAULT_CAPACITIES};
use atucp_core::geometry::{Kg, ObjectiveParams, TuType};
use atucp_core::packer::{CostParams, SortParams};
use atucp_core::search::{SearchParams, SolverParams};
use serde::Deserialize;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "ATUCP_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub capacities: Option<[Kg; 6]>,
    pub objective: ObjectiveParams,
    pub cost: CostParams,
    pub sort: SortParams,
    pub search: SearchParams,
    pub forge: ForgeParams,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads `path` when given; otherwise returns the defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                Self::from_toml(&text).with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }

    pub fn solver(&self) -> SolverParams {
        SolverParams {
            objective: self.objective,
            cost: self.cost,
            sort: self.sort,
            search: self.search,
        }
    }

    pub fn catalog(&self) -> Vec<TuType> {
        catalog_with_capacities(&self.capacities.unwrap_or(DEFAULT_CAPACITIES))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use atucp_core::forge::Scheme;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn partial_sections_keep_other_defaults() {
        let c = Config::from_toml(
            "capacities = [1,2,3,4,5,6]\n[search]\nomega = 80.0\n[forge]\nscheme = \"layers\"\n",
        )
        .unwrap();
        assert_eq!(c.search.omega, 80.0);
        assert_eq!(c.search.gamma, SearchParams::default().gamma);
        assert_eq!(c.forge.scheme, Scheme::Layers);
        assert_eq!(c.catalog()[5].capacity, 6);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Config::from_toml("[search]\nomgea = 80.0\n").is_err());
        assert!(Config::from_toml("speed = 1\n").is_err());
    }
}
