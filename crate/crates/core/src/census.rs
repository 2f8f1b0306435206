//! Exhaustive enumeration of the members of K (and K_μ) up to a vertex bound,
//! one graph per isomorphism type, with the lower bounds on δ checked on each.

use crate::canon::graph_code;
use crate::config::Config;
use crate::error::Result;
use crate::graph::{IdSet, Sort, TriGraph};
use crate::kclass::{check_hereditary, check_k};
use crate::mu::{check_kmu, MuPolicy};
use crate::predim::{delta, delta1, delta_rel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub size: usize,
    pub k_members: u64,
    pub kmu_members: u64,
    pub min_delta: Option<i64>,
    pub min_delta_with_line: Option<i64>,
    pub min_delta_with_flag: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u32,
    pub max_vertices: usize,
    pub rows: Vec<CensusRow>,
    /// Graphs and residue sets checked against the lower bounds.
    pub bound_checks: u64,
    pub bound_violations: Vec<String>,
}

impl CensusReport {
    pub fn holds(&self) -> bool {
        self.bound_violations.is_empty()
    }
}

fn min_opt(a: Option<i64>, b: i64) -> Option<i64> {
    Some(a.map_or(b, |a| a.min(b)))
}

/// Lower bounds for a nonempty member of K: `δ ≥ 2(n−1)`, `≥ 3(n−1)−1` with a
/// line, `≥ 3(n−1)+1` with a complete flag; and `δ(A/x) = δ₁(A) ≥ n−1` for
/// every nonempty `A ⊆ res(x)`, `x` a point or plane.
fn check_bounds(g: &TriGraph, out: &mut CensusReport) -> Result<()> {
    let m = g.n() as i64 - 1;
    let d = delta(g, &g.ids())?;
    let has_line = !g.ids_of(Sort::Line).is_empty();
    let has_flag = !g.flags().is_empty();
    let floor = if has_flag {
        3 * m + 1
    } else if has_line {
        3 * m - 1
    } else {
        2 * m
    };
    out.bound_checks += 1;
    if d < floor {
        out.bound_violations.push(format!("{} δ={d} < {floor}", g.to_json()));
    }
    for (x, s) in g.vertices() {
        if s == Sort::Line {
            continue;
        }
        let res: Vec<_> = g.residue(x)?.into_iter().collect();
        for mask in 1u64..(1 << res.len()) {
            let a: IdSet = (0..res.len()).filter(|b| mask >> b & 1 == 1).map(|b| res[b]).collect();
            let rel = delta_rel(g, &a, &IdSet::from([x]))?;
            let d1 = delta1(g, &a)?;
            out.bound_checks += 1;
            if rel != d1 || d1 < m {
                out.bound_violations.push(format!("{} x={x} A={a:?}: δ(A/x)={rel} δ₁={d1}", g.to_json()));
            }
        }
    }
    Ok(())
}

pub fn census(n: u32, max_vertices: usize, policy: &MuPolicy, cfg: &Config) -> Result<CensusReport> {
    let mut out = CensusReport {
        n,
        max_vertices,
        rows: Vec::new(),
        bound_checks: 0,
        bound_violations: Vec::new(),
    };
    let mut level: BTreeMap<String, TriGraph> = BTreeMap::new();
    level.insert(graph_code(&TriGraph::new(n))?, TriGraph::new(n));
    for size in 1..=max_vertices {
        let mut next: BTreeMap<String, TriGraph> = BTreeMap::new();
        for g in level.values() {
            let v = g.fresh_id();
            for sort in [Sort::Point, Sort::Line, Sort::Plane] {
                let cands: Vec<_> = g.vertices().filter(|&(_, s)| s != sort).map(|(x, _)| x).collect();
                for mask in 0u64..(1 << cands.len()) {
                    let mut h = g.clone();
                    h.add_vertex(v, sort)?;
                    for (b, &x) in cands.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            h.add_edge(v, x)?;
                        }
                    }
                    if check_hereditary(&h, cfg)?.is_some() {
                        continue;
                    }
                    let code = graph_code(&h)?;
                    if next.contains_key(&code) || !check_k(&h, cfg)?.holds {
                        continue;
                    }
                    next.insert(code, h);
                }
            }
        }
        let mut row = CensusRow {
            size,
            k_members: next.len() as u64,
            kmu_members: 0,
            min_delta: None,
            min_delta_with_line: None,
            min_delta_with_flag: None,
        };
        for g in next.values() {
            if check_kmu(g, policy, cfg)?.holds {
                row.kmu_members += 1;
            }
            let d = delta(g, &g.ids())?;
            row.min_delta = min_opt(row.min_delta, d);
            if !g.ids_of(Sort::Line).is_empty() {
                row.min_delta_with_line = min_opt(row.min_delta_with_line, d);
            }
            if !g.flags().is_empty() {
                row.min_delta_with_flag = min_opt(row.min_delta_with_flag, d);
            }
            check_bounds(g, &mut out)?;
        }
        out.rows.push(row);
        level = next;
    }
    Ok(out)
}
