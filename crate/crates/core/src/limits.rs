use std::str::FromStr;

use crate::error::{Error, Result};

/// Resource ceilings shared by the search-heavy operations.
///
/// Hitting a ceiling yields [`Error::ResourceExhausted`], never a partial answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of Hilbert basis / minimal solution vectors.
    pub max_basis: usize,
    /// Maximum number of search nodes (completion candidates, branch-and-bound nodes).
    pub max_nodes: u64,
    /// Maximum number of standard pairs.
    pub max_pairs: usize,
    /// Maximum number of column subsets enumerated for subdeterminants.
    pub max_subsets: u64,
    /// Maximum number of intermediate rays in the double description method.
    pub max_rays: usize,
    /// Worker threads for independent sub-computations; 1 means sequential.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 1_000_000,
            max_nodes: 10_000_000,
            max_pairs: 100_000,
            max_subsets: 1_000_000,
            max_rays: 100_000,
            jobs: 1,
        }
    }
}

impl Limits {
    /// Applies `key=value` overrides separated by commas or whitespace,
    /// e.g. `max_nodes=1000,max_pairs=50`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("limit override `{item}` lacks `=`")))?;
            let bad = || Error::InvalidInput(format!("limit `{key}` has invalid value `{value}`"));
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "max_basis" => self.max_basis = value.parse().map_err(|_| bad())?,
                "max_nodes" => self.max_nodes = value.parse().map_err(|_| bad())?,
                "max_pairs" => self.max_pairs = value.parse().map_err(|_| bad())?,
                "max_subsets" => self.max_subsets = value.parse().map_err(|_| bad())?,
                "max_rays" => self.max_rays = value.parse().map_err(|_| bad())?,
                "jobs" => self.jobs = value.parse().map_err(|_| bad())?,
                _ => return Err(Error::InvalidInput(format!("unknown limit `{key}`"))),
            }
        }
        Ok(())
    }
}

impl FromStr for Limits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut limits = Limits::default();
        limits.apply_overrides(s)?;
        Ok(limits)
    }
}
