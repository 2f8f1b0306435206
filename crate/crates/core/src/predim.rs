//! The predimension calculus: `δ`, `δ₁`, strongness, closure and `d`.

use crate::config::{Config, StrongnessMode};
use crate::error::{Error, Result};
use crate::graph::{Id, IdSet, Sort, TriGraph};
use crate::lattice::Lattice;
use crate::local::{scan_violations, Local};
use crate::verdict::{Certificate, Verdict};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Integer weights of the predimension for a fixed `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaWeights {
    pub line: i64,
    pub point_plane: i64,
    pub e: i64,
    pub e2_flag: i64,
}

impl DeltaWeights {
    pub fn for_n(n: u32) -> DeltaWeights {
        let m = n as i64 - 1;
        DeltaWeights {
            line: 3 * m - 1,
            point_plane: 2 * m,
            e: 2 * m - 1,
            e2_flag: m,
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub lines: i64,
    pub points_planes: i64,
    pub e: i64,
    pub e2: i64,
    pub flags: i64,
}

pub fn counts(g: &TriGraph, s: &IdSet) -> Result<Counts> {
    g.check_ids(s)?;
    let mut c = Counts::default();
    for &v in s {
        match g.sort_of(v) {
            Sort::Line => {
                c.lines += 1;
                let nb: Vec<Id> = g.neighbors(v).intersection(s).copied().collect();
                c.e += nb.len() as i64;
                for &p in &nb {
                    if g.sort_of(p) == Sort::Point {
                        c.flags += nb
                            .iter()
                            .filter(|&&e| g.sort_of(e) == Sort::Plane && g.adjacent(p, e))
                            .count() as i64;
                    }
                }
            }
            Sort::Point => {
                c.points_planes += 1;
                c.e2 += g
                    .neighbors_of_sort(v, Sort::Plane)
                    .filter(|e| s.contains(e))
                    .count() as i64;
            }
            Sort::Plane => c.points_planes += 1,
        }
    }
    Ok(c)
}

pub fn delta_of_counts(w: &DeltaWeights, c: &Counts) -> i64 {
    w.line * c.lines + w.point_plane * c.points_planes - w.e * c.e - w.e2_flag * (c.e2 - c.flags)
}

pub fn delta(g: &TriGraph, s: &IdSet) -> Result<i64> {
    Ok(delta_of_counts(&DeltaWeights::for_n(g.n()), &counts(g, s)?))
}

/// `δ(B/A) = δ(A ∪ B) − δ(A)`.
pub fn delta_rel(g: &TriGraph, b: &IdSet, a: &IdSet) -> Result<i64> {
    let ab: IdSet = a.union(b).copied().collect();
    Ok(delta(g, &ab)? - delta(g, a)?)
}

/// Rank-2 predimension on one bipartite half.
pub fn delta1(g: &TriGraph, a: &IdSet) -> Result<i64> {
    g.check_ids(a)?;
    let has = |s| a.iter().any(|&x| g.sort_of(x) == s);
    if has(Sort::Point) && has(Sort::Plane) {
        return Err(Error::MixedSorts);
    }
    let c = counts(g, a)?;
    let n = g.n() as i64;
    Ok((n - 1) * a.len() as i64 - (n - 2) * c.e)
}

fn require_subset(a: &IdSet, b: &IdSet) -> Result<()> {
    if a.is_subset(b) {
        Ok(())
    } else {
        Err(Error::BadParameter(
            "base must be a subset of the extension".into(),
        ))
    }
}

/// Lines of `B \ A` meeting two points or two planes of `A`.
pub fn is_l_strong(g: &TriGraph, a: &IdSet, b: &IdSet) -> Result<Verdict> {
    g.check_ids(a.iter().chain(b.iter()))?;
    require_subset(a, b)?;
    for &l in b.difference(a) {
        if g.sort_of(l) != Sort::Line {
            continue;
        }
        let pts = g.neighbors_of_sort(l, Sort::Point).filter(|x| a.contains(x)).count();
        let pls = g.neighbors_of_sort(l, Sort::Plane).filter(|x| a.contains(x)).count();
        if pts >= 2 || pls >= 2 {
            return Ok(Verdict::fails(
                StrongnessMode::LClosed,
                Certificate::Line { line: l },
            ));
        }
    }
    Ok(Verdict::holds(StrongnessMode::LClosed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub set: IdSet,
    pub delta: i64,
}

fn better(a: &(i64, IdSet), b: &(i64, IdSet)) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.1.iter().cmp(b.1.iter()) == Ordering::Less,
    }
}

/// The violating test set `C ⊆ B \ A` (optionally `|C| ≤ k`) minimising
/// `(δ(C/A), |C|, ids)`, searched per connected component of `B` and combined.
pub fn find_violation(
    g: &TriGraph,
    a: &IdSet,
    b: &IdSet,
    kmax: Option<usize>,
    cfg: &Config,
) -> Result<Option<Violation>> {
    g.check_ids(a.iter().chain(b.iter()))?;
    require_subset(a, b)?;
    let lc = cfg.mode == StrongnessMode::LClosed;
    // dp[size] = best (delta, union) over the components seen so far.
    let mut dp: BTreeMap<usize, (i64, IdSet)> = BTreeMap::new();
    dp.insert(0, (0, IdSet::new()));
    for comp in g.components_of(b) {
        let free: IdSet = comp.difference(a).copied().collect();
        if free.is_empty() {
            continue;
        }
        if kmax.is_none() && free.len() > cfg.budgets.max_free_bits as usize {
            return Err(Error::BudgetExceeded {
                what: "free part of a component",
                needed: free.len() as u64,
                cap: cfg.budgets.max_free_bits as u64,
            });
        }
        let loc = Local::new(g, &comp)?;
        let s = loc.mask(a);
        let out = scan_violations(&loc, s, loc.full() & !s, lc, kmax, cfg.budgets.max_subsets)?;
        let options: Vec<(usize, i64, IdSet)> = out
            .by_size
            .iter()
            .enumerate()
            .filter_map(|(sz, o)| o.map(|(d, m)| (sz, d, loc.set(m))))
            .collect();
        if options.is_empty() {
            continue;
        }
        let mut next = dp.clone();
        for (&sz, (d, u)) in &dp {
            for (t, dx, x) in &options {
                let tot = sz + t;
                if kmax.is_some_and(|k| tot > k) {
                    continue;
                }
                let cand = (d + dx, u.union(x).copied().collect::<IdSet>());
                match next.get(&tot) {
                    Some(cur) if !better(&cand, cur) => {}
                    _ => {
                        next.insert(tot, cand);
                    }
                }
            }
        }
        dp = next;
    }
    let best = dp
        .into_iter()
        .filter(|(sz, (d, _))| *sz > 0 && *d < 0)
        .min_by(|(s1, (d1, u1)), (s2, (d2, u2))| {
            d1.cmp(d2)
                .then(s1.cmp(s2))
                .then_with(|| u1.iter().cmp(u2.iter()))
        });
    Ok(best.map(|(_, (d, u))| Violation { set: u, delta: d }))
}

fn verdict_from(v: Option<Violation>, mode: StrongnessMode) -> Verdict {
    match v {
        None => Verdict::holds(mode),
        Some(v) => Verdict::fails(
            mode,
            Certificate::Violation {
                set: v.set.into_iter().collect(),
                delta: v.delta,
            },
        ),
    }
}

/// `A ≤ B`, deciding over the test sets admitted by the configured mode.
pub fn is_strong(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<Verdict> {
    let v = find_violation(g, a, b, None, cfg)?;
    Ok(verdict_from(v, cfg.mode).with_value("delta_base", delta(g, a)?))
}

/// `A ≤_k B`: no admissible test set of at most `k` elements is negative.
pub fn is_k_strong(g: &TriGraph, a: &IdSet, b: &IdSet, k: usize, cfg: &Config) -> Result<Verdict> {
    if k == 0 {
        g.check_ids(a.iter().chain(b.iter()))?;
        require_subset(a, b)?;
        return Ok(Verdict::holds(cfg.mode));
    }
    let v = find_violation(g, a, b, Some(k), cfg)?;
    Ok(verdict_from(v, cfg.mode).with_value("k", k as i64))
}

pub fn strong_in_graph(g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<bool> {
    Ok(find_violation(g, a, &g.ids(), None, cfg)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub set: IdSet,
    pub d: i64,
    /// Sets adjoined by the iteration, in order.
    pub steps: Vec<Vec<Id>>,
    /// Every component was small enough for the brute-force cross-check.
    pub oracle_checked: bool,
}

/// Self-sufficient closure by iterated adjoining of the minimal violating set,
/// cross-checked against the intersection of all strong supersets (and `d`
/// against the least admissible superset) on every component within the
/// oracle cap.
pub fn closure_report(g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<ClosureReport> {
    g.check_ids(a)?;
    let all = g.ids();
    let mut s = a.clone();
    let mut steps = Vec::new();
    while let Some(v) = find_violation(g, &s, &all, None, cfg)? {
        steps.push(v.set.iter().copied().collect());
        s.extend(v.set);
    }
    let d = delta(g, &s)?;
    let mut oracle_checked = true;
    for comp in g.components() {
        if comp.len() > cfg.budgets.oracle_cap as usize {
            oracle_checked = false;
            continue;
        }
        let loc = Local::new(g, &comp)?;
        let lat = Lattice::new(loc, cfg.mode)?;
        let m = lat.loc.mask(a);
        let brute = lat.loc.set(lat.closure(m));
        let mine: IdSet = s.intersection(&comp).copied().collect();
        if brute != mine {
            return Err(Error::OracleMismatch {
                what: "closure",
                iterative: format!("{mine:?}"),
                brute: format!("{brute:?}"),
            });
        }
        let dm = delta(g, &mine)?;
        if lat.d(m) != dm {
            return Err(Error::OracleMismatch {
                what: "d",
                iterative: dm.to_string(),
                brute: lat.d(m).to_string(),
            });
        }
    }
    Ok(ClosureReport {
        set: s,
        d,
        steps,
        oracle_checked,
    })
}

pub fn closure(g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<IdSet> {
    Ok(closure_report(g, a, cfg)?.set)
}

/// `d(A) = δ(cl(A))`.
pub fn d_value(g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<i64> {
    Ok(closure_report(g, a, cfg)?.d)
}

/// `d(A/B) = d(A ∪ B) − d(B)`.
pub fn d_rel(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<i64> {
    let ab: IdSet = a.union(b).copied().collect();
    Ok(d_value(g, &ab, cfg)? - d_value(g, b, cfg)?)
}

/// `d(x/A) = 0`, read on the finite graph.
pub fn is_algebraic(g: &TriGraph, x: Id, a: &IdSet, cfg: &Config) -> Result<bool> {
    g.sort(x)?;
    if a.contains(&x) {
        g.check_ids(a)?;
        return Ok(true);
    }
    Ok(d_rel(g, &IdSet::from([x]), a, cfg)? == 0)
}

/// `d(A/B) = d(A/BC)`. When it holds the certificate records `B' = cl(AB) ∩ cl(BC)`,
/// whether `cl(ABC) = cl(AB) ∪ cl(BC)`, and whether that union is free over `B'`.
pub fn d_independent(
    g: &TriGraph,
    a: &IdSet,
    b: &IdSet,
    c: &IdSet,
    cfg: &Config,
) -> Result<Verdict> {
    let bc: IdSet = b.union(c).copied().collect();
    let d1 = d_rel(g, a, b, cfg)?;
    let d2 = d_rel(g, a, &bc, cfg)?;
    let mut values = BTreeMap::new();
    values.insert("d(A/B)".to_string(), d1);
    values.insert("d(A/BC)".to_string(), d2);
    if d1 != d2 {
        let mut v = Verdict::fails(cfg.mode, Certificate::Values { values: values.clone() });
        v.values = values;
        return Ok(v);
    }
    let ab: IdSet = a.union(b).copied().collect();
    let abc: IdSet = ab.union(c).copied().collect();
    let cl_ab = closure(g, &ab, cfg)?;
    let cl_bc = closure(g, &bc, cfg)?;
    let cl_abc = closure(g, &abc, cfg)?;
    let b_prime: IdSet = cl_ab.intersection(&cl_bc).copied().collect();
    let union: IdSet = cl_ab.union(&cl_bc).copied().collect();
    let left: IdSet = cl_ab.difference(&cl_bc).copied().collect();
    let right: IdSet = cl_bc.difference(&cl_ab).copied().collect();
    let mut free = true;
    for &x in &left {
        for &y in g.neighbors(x) {
            if !right.contains(&y) {
                continue;
            }
            let sx = g.sort_of(x);
            if sx == Sort::Line
                || g.sort_of(y) == Sort::Line
                || !g.is_induced_edge(x, y)?.iter().any(|l| b_prime.contains(l))
            {
                free = false;
            }
        }
    }
    Ok(Verdict {
        holds: true,
        certificate: Some(Certificate::Decomposition {
            b_prime: b_prime.into_iter().collect(),
            union_is_closure: union == cl_abc,
            free_over_b_prime: free,
        }),
        mode: cfg.mode,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{flag_graph, set, GraphBuilder};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn single_vertices_and_flag() {
        let g = GraphBuilder::new(6).point(0).line(1).plane(2).build();
        assert_eq!(delta(&g, &set(&[0])).unwrap(), 10);
        assert_eq!(delta(&g, &set(&[1])).unwrap(), 14);
        assert_eq!(delta(&g, &set(&[2])).unwrap(), 10);
        let f = flag_graph(6, 0, 1, 2);
        assert_eq!(delta(&f, &f.ids()).unwrap(), 16);
        assert_eq!(delta(&f, &IdSet::new()).unwrap(), 0);
    }

    #[test]
    fn relative_delta_examples() {
        let f = flag_graph(6, 0, 1, 2);
        assert_eq!(delta_rel(&f, &set(&[0]), &set(&[1])).unwrap(), 1);
        assert_eq!(delta_rel(&f, &set(&[0]), &set(&[0, 1])).unwrap(), 0);
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .plane(3)
            .edges(&[(0, 2), (1, 2), (2, 3), (0, 3), (1, 3)])
            .build();
        assert_eq!(delta_rel(&g, &set(&[3]), &set(&[0, 1])).unwrap(), 0);
        assert_eq!(delta_rel(&g, &set(&[3]), &set(&[0, 1, 2])).unwrap(), 1);
    }

    #[test]
    fn delta1_examples() {
        let g = GraphBuilder::new(6).point(0).line(1).plane(2).edge(0, 1).build();
        assert_eq!(delta1(&g, &set(&[0])).unwrap(), 5);
        assert_eq!(delta1(&g, &set(&[0, 1])).unwrap(), 6);
        assert_eq!(delta1(&g, &set(&[0, 2])), Err(Error::MixedSorts));
        let mut b = GraphBuilder::new(6);
        for i in 0..12 {
            b = if i % 2 == 0 { b.point(i) } else { b.line(i) };
        }
        for i in 0..12 {
            b = b.edge(i, (i + 1) % 12);
        }
        let c = b.build();
        assert_eq!(delta1(&c, &c.ids()).unwrap(), 12);
    }

    #[test]
    fn l_strong_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        assert!(is_l_strong(&g, &g.ids(), &g.ids()).unwrap().holds);
        let v = is_l_strong(&g, &set(&[0, 1]), &g.ids()).unwrap();
        assert_eq!(v.certificate, Some(Certificate::Line { line: 2 }));
    }

    #[test]
    fn strong_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        assert!(is_strong(&g, &g.ids(), &g.ids(), &cfg()).unwrap().holds);
        let v = is_strong(&g, &set(&[0, 1]), &g.ids(), &cfg()).unwrap();
        assert_eq!(v.violation(), Some((&[2][..], -4)));
    }

    #[test]
    fn k_strong_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .plane(3)
            .edges(&[(0, 2), (1, 2), (2, 3), (0, 3), (1, 3)])
            .build();
        let a = set(&[0, 1]);
        assert!(is_k_strong(&g, &a, &g.ids(), 0, &cfg()).unwrap().holds);
        let v = is_k_strong(&g, &a, &g.ids(), 1, &cfg()).unwrap();
        assert_eq!(v.violation(), Some((&[2][..], -4)));
        assert_eq!(
            is_k_strong(&g, &a, &g.ids(), 2, &cfg()).unwrap().holds,
            is_strong(&g, &a, &g.ids(), &cfg()).unwrap().holds
        );
    }

    #[test]
    fn closure_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        assert_eq!(closure(&g, &set(&[0]), &cfg()).unwrap(), set(&[0]));
        assert!(closure(&g, &set(&[0, 1]), &cfg()).unwrap().contains(&2));
        assert_eq!(closure(&g, &g.ids(), &cfg()).unwrap(), g.ids());
    }

    #[test]
    fn d_values_on_a_flag() {
        let f = flag_graph(6, 0, 1, 2);
        let c = cfg();
        assert_eq!(d_value(&f, &set(&[0]), &c).unwrap(), 10);
        assert_eq!(d_rel(&f, &set(&[0]), &set(&[1]), &c).unwrap(), 1);
        assert_eq!(d_rel(&f, &set(&[0]), &set(&[1, 2]), &c).unwrap(), 1);
        assert_eq!(d_rel(&f, &set(&[1]), &set(&[2]), &c).unwrap(), 5);
        assert_eq!(d_value(&f, &set(&[1]), &c).unwrap(), 14);
        assert!(!is_algebraic(&f, 2, &set(&[0, 1]), &c).unwrap());
        assert!(is_algebraic(&f, 0, &set(&[0, 1]), &c).unwrap());
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .plane(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        assert!(is_algebraic(&g, 2, &set(&[0, 1]), &c).unwrap());
    }

    #[test]
    fn d_independence_on_a_flag() {
        let f = flag_graph(6, 0, 1, 2);
        let c = cfg();
        let dep = d_independent(&f, &set(&[0]), &IdSet::new(), &set(&[2]), &c).unwrap();
        assert!(!dep.holds);
        assert_eq!(dep.values["d(A/B)"], 10);
        assert_eq!(dep.values["d(A/BC)"], 5);
        let ind = d_independent(&f, &set(&[0]), &set(&[1]), &set(&[2]), &c).unwrap();
        assert!(ind.holds);
        assert!(d_independent(&f, &set(&[0]), &set(&[1, 2]), &set(&[2]), &c)
            .unwrap()
            .holds);
    }
}
