//! Run configuration: strongness mode, search caps and the `dual-6b` switch.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which test sets `C` count when deciding `A ≤ B`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongnessMode {
    /// Only `C` with `A ∪ C` L-closed in the ambient.
    #[default]
    LClosed,
    /// Every `C`.
    Literal,
}

impl std::str::FromStr for StrongnessMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lclosed" | "l-closed" => Ok(StrongnessMode::LClosed),
            "literal" => Ok(StrongnessMode::Literal),
            _ => Err(Error::BadParameter(format!("unknown strongness mode {s:?}"))),
        }
    }
}

/// Explicit caps. Exceeding one is a `BudgetExceeded` error, never a silent cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest free part (per connected component) enumerated exhaustively.
    pub max_free_bits: u32,
    /// Largest component on which the full subset lattice is built.
    pub oracle_cap: u32,
    /// Cap on subsets visited by one connected-subset sweep.
    pub max_subsets: u64,
    /// Largest extension handled by minimality and decomposition searches.
    pub max_extension: u32,
    /// Largest `B` in the general simple-pair scan.
    pub max_pair_size: u32,
    /// Cap on branch-and-bound nodes in a packing search.
    pub packing_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_free_bits: 24,
            oracle_cap: 20,
            max_subsets: 1 << 24,
            max_extension: 14,
            max_pair_size: 6,
            packing_nodes: 2_000_000,
        }
    }
}

pub const BUDGET_ENV: &str = "TRIGEOM_BUDGETS";

impl Budgets {
    /// Defaults overridden by `TRIGEOM_BUDGETS="key=value,key=value"`.
    pub fn from_env() -> Result<Budgets> {
        let mut b = Budgets::default();
        if let Ok(spec) = std::env::var(BUDGET_ENV) {
            b.apply_overrides(&spec)?;
        }
        Ok(b)
    }

    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("budget item {item:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::BadParameter(format!("budget value {v:?}")))?;
            let small = |v: u64| -> Result<u32> {
                u32::try_from(v).map_err(|_| Error::BadParameter(format!("budget value {v}")))
            };
            match k.trim() {
                "max_free_bits" => self.max_free_bits = small(v)?.min(62),
                "oracle_cap" => self.oracle_cap = small(v)?.min(26),
                "max_subsets" => self.max_subsets = v,
                "max_extension" => self.max_extension = small(v)?,
                "max_pair_size" => self.max_pair_size = small(v)?,
                "packing_nodes" => self.packing_nodes = v,
                other => return Err(Error::BadParameter(format!("unknown budget {other:?}"))),
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub mode: StrongnessMode,
    pub budgets: Budgets,
    /// Also impose condition 6b on planes.
    pub dual6b: bool,
}

impl Config {
    pub fn literal() -> Config {
        Config {
            mode: StrongnessMode::Literal,
            ..Config::default()
        }
    }

    pub fn with_mode(mode: StrongnessMode) -> Config {
        Config {
            mode,
            ..Config::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let mut b = Budgets::default();
        b.apply_overrides("max_free_bits=12, oracle_cap=10").unwrap();
        assert_eq!(b.max_free_bits, 12);
        assert_eq!(b.oracle_cap, 10);
        assert!(b.apply_overrides("nope=1").is_err());
        assert!(b.apply_overrides("max_subsets").is_err());
    }

    #[test]
    fn mode_names() {
        assert_eq!("literal".parse::<StrongnessMode>().unwrap(), StrongnessMode::Literal);
        assert_eq!(StrongnessMode::default(), StrongnessMode::LClosed);
        assert!("x".parse::<StrongnessMode>().is_err());
    }
}
