//! Full subset lattice of one small universe: predimension of every subset,
//! the least admissible superset value, and the intersection of all strong
//! supersets. Cost is `O(N · 2^N)`; used as the brute-force oracle.

use crate::config::{Config, StrongnessMode};
use crate::error::{Error, Result};
use crate::graph::{Id, IdSet, TriGraph};
use crate::local::Local;
use std::collections::BTreeMap;

pub const LATTICE_HARD_CAP: usize = 26;

pub struct Lattice {
    pub loc: Local,
    pub delta: Vec<i32>,
    /// Least predimension over admissible supersets.
    pub minsup: Vec<i32>,
    /// Intersection of all strong supersets.
    pub cl: Vec<u32>,
}

impl Lattice {
    pub fn new(loc: Local, mode: StrongnessMode) -> Result<Lattice> {
        let n = loc.len();
        if n > LATTICE_HARD_CAP {
            return Err(Error::BudgetExceeded {
                what: "subset lattice",
                needed: n as u64,
                cap: LATTICE_HARD_CAP as u64,
            });
        }
        let size = 1usize << n;
        let mut delta = vec![0i32; size];
        for m in 1..size {
            let v = m.trailing_zeros() as usize;
            let rest = m & (m - 1);
            delta[m] = delta[rest] + loc.marginal(v, rest as u64) as i32;
        }
        let mut minsup: Vec<i32> = (0..size)
            .map(|m| {
                if mode == StrongnessMode::Literal || loc.l_closed(m as u64) {
                    delta[m]
                } else {
                    i32::MAX
                }
            })
            .collect();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..size {
                if m & bit == 0 {
                    let up = minsup[m | bit];
                    if up < minsup[m] {
                        minsup[m] = up;
                    }
                }
            }
        }
        let fullm = (size - 1) as u32;
        let mut cl: Vec<u32> = (0..size)
            .map(|m| {
                if minsup[m] >= delta[m] {
                    m as u32
                } else {
                    fullm
                }
            })
            .collect();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..size {
                if m & bit == 0 {
                    cl[m] &= cl[m | bit];
                }
            }
        }
        Ok(Lattice {
            loc,
            delta,
            minsup,
            cl,
        })
    }

    pub fn is_strong(&self, m: u64) -> bool {
        let m = m as usize;
        self.minsup[m] >= self.delta[m]
    }

    pub fn closure(&self, m: u64) -> u64 {
        self.cl[m as usize] as u64
    }

    /// Least predimension of an admissible superset.
    pub fn d(&self, m: u64) -> i64 {
        self.minsup[m as usize] as i64
    }
}

/// Strongness queries against one fixed graph: a lattice per component within
/// the oracle cap, the direct search elsewhere.
pub struct StrongOracle {
    comps: Vec<(IdSet, Option<Lattice>)>,
    owner: BTreeMap<Id, usize>,
}

impl StrongOracle {
    pub fn new(g: &TriGraph, cfg: &Config) -> Result<StrongOracle> {
        let mut comps = Vec::new();
        let mut owner = BTreeMap::new();
        for (i, c) in g.components().into_iter().enumerate() {
            for &x in &c {
                owner.insert(x, i);
            }
            let lat = if c.len() <= cfg.budgets.oracle_cap as usize {
                Some(Lattice::new(Local::new(g, &c)?, cfg.mode)?)
            } else {
                None
            };
            comps.push((c, lat));
        }
        Ok(StrongOracle { comps, owner })
    }

    /// `A ≤ G`, decided component by component.
    pub fn is_strong(&self, g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<bool> {
        g.check_ids(a)?;
        let mut parts: BTreeMap<usize, IdSet> = BTreeMap::new();
        for &x in a {
            parts.entry(self.owner[&x]).or_default().insert(x);
        }
        for (i, (c, lat)) in self.comps.iter().enumerate() {
            let part = parts.remove(&i).unwrap_or_default();
            let ok = match lat {
                Some(l) => l.is_strong(l.loc.mask(&part)),
                None => crate::predim::find_violation(g, &part, c, None, cfg)?.is_none(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn two_points_on_a_line() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        let loc = Local::new(&g, &g.ids()).unwrap();
        let lat = Lattice::new(loc, StrongnessMode::LClosed).unwrap();
        assert!(!lat.is_strong(0b011));
        assert_eq!(lat.closure(0b011), 0b111);
        assert_eq!(lat.closure(0b001), 0b001);
        assert_eq!(lat.d(0b011), 16);
    }
}
