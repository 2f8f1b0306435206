//! Membership in the class K, generalized n-gon recognition and the universal
//! parts of the target geometry axioms.
//!
//! Conditions 1, 2, 4 and 5 are hereditary, so once the whole graph passes
//! them only condition 3 can fail on a subset. Condition 6 is read as "every
//! subset satisfying 1–5 satisfies 6a/6b". For 6a a violating subset can be
//! taken connected (one- and two-element members have predimension at least
//! `2(n−1)`, so a disconnected set below `3(n−1)+1` has a violating piece), and
//! the sweep enumerates connected subsets only.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{Id, IdSet, Sort, TriGraph};
use crate::local::{bits, lex_less, pc, Local};
use crate::verdict::{Certificate, KCondition, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

fn kfail(cond: KCondition, witness: Vec<Id>, center: Option<Id>, cfg: &Config) -> Verdict {
    Verdict::fails(
        cfg.mode,
        Certificate::K {
            condition: cond,
            witness,
            center,
        },
    )
}

/// Shortest cycle length in the graph on `m` (`None` for a forest).
pub fn girth(loc: &Local, m: u64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in bits(m) {
        let mut dist = vec![usize::MAX; loc.len()];
        let mut parent = vec![usize::MAX; loc.len()];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for w in bits(loc.adj[u] & m) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// The lexicographically least cycle of length `len` on `m`, listed from its
/// least vertex with the smaller neighbour second.
pub fn least_cycle(loc: &Local, m: u64, len: usize) -> Option<Vec<usize>> {
    fn rec(loc: &Local, m: u64, len: usize, path: &mut Vec<usize>, used: u64) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            return loc.adj[last] & (1 << start) != 0 && path[1] < path[len - 1];
        }
        for w in bits(loc.adj[last] & m & !used) {
            if w <= start {
                continue;
            }
            path.push(w);
            if rec(loc, m, len, path, used | 1 << w) {
                return true;
            }
            path.pop();
        }
        false
    }
    if len < 3 {
        return None;
    }
    for v in bits(m) {
        let mut path = vec![v];
        if rec(loc, m, len, &mut path, 1 << v) {
            return Some(path);
        }
    }
    None
}

/// Whether the graph on `m` has a simple cycle of length at least `min_len`.
pub fn has_long_cycle(loc: &Local, m: u64, min_len: usize) -> bool {
    fn rec(loc: &Local, m: u64, min_len: usize, start: usize, last: usize, depth: usize, used: u64) -> bool {
        for w in bits(loc.adj[last] & m) {
            if w == start && depth + 1 >= min_len && depth >= 2 {
                return true;
            }
            if used & (1 << w) != 0 || w < start {
                continue;
            }
            if rec(loc, m, min_len, start, w, depth + 1, used | 1 << w) {
                return true;
            }
        }
        false
    }
    if (m.count_ones() as usize) < min_len {
        return false;
    }
    bits(m).any(|v| rec(loc, m, min_len, v, v, 0, 1 << v))
}

/// Generalized n-gon test on the graph induced by `s`: girth at least `2n`
/// and diameter exactly `n`.
pub fn check_ngon(g: &TriGraph, s: &IdSet, n: u32, cfg: &Config) -> Result<Verdict> {
    g.check_ids(s)?;
    let sorts: std::collections::BTreeSet<Sort> = s.iter().map(|&x| g.sort_of(x)).collect();
    if sorts.len() > 2 {
        return Err(Error::BadParameter(
            "an n-gon candidate has at most two sorts".into(),
        ));
    }
    if s.is_empty() {
        let mut values = BTreeMap::new();
        values.insert("vertices".to_string(), 0);
        return Ok(Verdict::fails(cfg.mode, Certificate::Values { values }));
    }
    let loc = Local::new(g, s)?;
    let m = loc.full();
    let n = n as usize;
    if let Some(gi) = girth(&loc, m) {
        if gi < 2 * n {
            let cyc = least_cycle(&loc, m, gi).expect("a cycle of the girth length exists");
            return Ok(Verdict::fails(
                cfg.mode,
                Certificate::Cycle {
                    cycle: cyc.into_iter().map(|i| loc.ids[i]).collect(),
                },
            )
            .with_value("girth", gi as i64));
        }
    }
    let mut worst: Option<(usize, usize, Option<usize>)> = None;
    for a in 0..loc.len() {
        let mut dist = vec![usize::MAX; loc.len()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(u) = q.pop_front() {
            for w in bits(loc.adj[u] & m) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        for (b, &d) in dist.iter().enumerate().skip(a + 1) {
            let d = if d == usize::MAX { None } else { Some(d) };
            let worse = match worst {
                None => true,
                Some((_, _, None)) => false,
                Some((_, _, Some(w))) => d.is_none_or(|d| d > w),
            };
            if worse {
                worst = Some((a, b, d));
            }
        }
    }
    let diameter = match worst {
        None => Some(0),
        Some((_, _, d)) => d,
    };
    if diameter == Some(n) {
        return Ok(Verdict::holds(cfg.mode).with_value("diameter", n as i64));
    }
    let (a, b) = worst.map_or((0, 0), |(a, b, _)| (a, b));
    Ok(Verdict::fails(
        cfg.mode,
        Certificate::Distance {
            a: loc.ids[a],
            b: loc.ids[b],
            distance: diameter.map(|d| d as u32),
        },
    ))
}

fn common<'a>(g: &'a TriGraph, a: Id, b: Id, sort: Sort) -> impl Iterator<Item = Id> + 'a {
    g.neighbors_of_sort(a, sort).filter(move |&x| g.adjacent(b, x))
}

fn pairs_of(ids: &IdSet) -> impl Iterator<Item = (Id, Id)> + '_ {
    ids.iter()
        .flat_map(move |&a| ids.range(a + 1..).map(move |&b| (a, b)))
}

/// Conditions 1–5 on the whole graph; `None` when all hold.
pub fn check_c1_to_c5(g: &TriGraph, cfg: &Config) -> Result<Option<Verdict>> {
    conditions(g, true, cfg)
}

/// Conditions 1, 2, 4 and 5, which pass to induced subgraphs.
pub fn check_hereditary(g: &TriGraph, cfg: &Config) -> Result<Option<Verdict>> {
    conditions(g, false, cfg)
}

fn conditions(g: &TriGraph, with_c3: bool, cfg: &Config) -> Result<Option<Verdict>> {
    let points = g.ids_of(Sort::Point);
    let planes = g.ids_of(Sort::Plane);
    // C1: two lines through two points (or two planes).
    for set in [&points, &planes] {
        for (a, b) in pairs_of(set) {
            let ls: Vec<Id> = common(g, a, b, Sort::Line).collect();
            if ls.len() >= 2 {
                return Ok(Some(kfail(KCondition::C1, vec![a, ls[0], b, ls[1]], None, cfg)));
            }
        }
    }
    // C2: the joining line lies in every plane through both points; dually.
    for (set, other) in [(&points, Sort::Plane), (&planes, Sort::Point)] {
        for (a, b) in pairs_of(set) {
            for l in common(g, a, b, Sort::Line) {
                for x in common(g, a, b, other) {
                    if !g.adjacent(l, x) {
                        return Ok(Some(kfail(KCondition::C2, vec![a, b, l, x], None, cfg)));
                    }
                }
            }
        }
    }
    // C3: unjoined pairs share at most one plane (point).
    let c3 = if with_c3 { vec![(&points, Sort::Plane), (&planes, Sort::Point)] } else { vec![] };
    for (set, other) in c3 {
        for (a, b) in pairs_of(set) {
            if common(g, a, b, Sort::Line).next().is_some() {
                continue;
            }
            let xs: Vec<Id> = common(g, a, b, other).collect();
            if xs.len() >= 2 {
                return Ok(Some(kfail(KCondition::C3, vec![a, b, xs[0], xs[1]], None, cfg)));
            }
        }
    }
    // C4: incidence is transitive through lines.
    for &p in &points {
        for l in g.neighbors_of_sort(p, Sort::Line) {
            for e in g.neighbors_of_sort(l, Sort::Plane) {
                if !g.adjacent(p, e) {
                    return Ok(Some(kfail(KCondition::C4, vec![p, l, e], None, cfg)));
                }
            }
        }
    }
    // C5: residues of points and planes have girth at least 2n.
    let two_n = 2 * g.n() as usize;
    for (x, s) in g.vertices() {
        if s == Sort::Line {
            continue;
        }
        let res = g.residue(x)?;
        if res.len() < 3 {
            continue;
        }
        let loc = Local::new(g, &res)?;
        if let Some(gi) = girth(&loc, loc.full()) {
            if gi < two_n {
                let cyc = least_cycle(&loc, loc.full(), gi).expect("girth cycle");
                return Ok(Some(kfail(
                    KCondition::C5,
                    cyc.into_iter().map(|i| loc.ids[i]).collect(),
                    Some(x),
                    cfg,
                )));
            }
        }
    }
    Ok(None)
}

/// Subsets that break condition 3 although the whole graph satisfies it:
/// both points (planes) and two common planes (points) present, joining line absent.
struct C3Guard {
    pair: u64,
    line: u64,
    common: u64,
}

fn c3_guards(loc: &Local) -> Vec<C3Guard> {
    let mut out = Vec::new();
    for (set, other) in [(loc.pts, loc.planes), (loc.planes, loc.pts)] {
        let v: Vec<usize> = bits(set).collect();
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                let lines = loc.adj[a] & loc.adj[b] & loc.lines;
                let common = loc.adj[a] & loc.adj[b] & other;
                if lines != 0 && pc(common) >= 2 {
                    out.push(C3Guard {
                        pair: 1 << a | 1 << b,
                        line: lines,
                        common,
                    });
                }
            }
        }
    }
    out
}

fn c3_holds(guards: &[C3Guard], m: u64) -> bool {
    guards
        .iter()
        .all(|g| m & g.pair != g.pair || m & g.line != 0 || pc(m & g.common) < 2)
}

/// Visit every connected subset of `m` exactly once, with its predimension.
/// Returns the number visited, or `BudgetExceeded` past `cap`.
pub fn for_each_connected(
    loc: &Local,
    m: u64,
    cap: u64,
    visit: &mut dyn FnMut(u64, i64),
) -> Result<u64> {
    for_each_connected_upto(loc, m, usize::MAX, cap, visit)
}

/// As [`for_each_connected`], restricted to subsets of at most `max_size` vertices.
pub fn for_each_connected_upto(
    loc: &Local,
    m: u64,
    max_size: usize,
    cap: u64,
    visit: &mut dyn FnMut(u64, i64),
) -> Result<u64> {
    struct St<'a> {
        loc: &'a Local,
        m: u64,
        max_size: usize,
        cap: u64,
        count: u64,
        visit: &'a mut dyn FnMut(u64, i64),
    }
    fn rec(st: &mut St, s: u64, d: i64, mut ext: u64, mut excl: u64) -> Result<()> {
        st.count += 1;
        if st.count > st.cap {
            return Err(Error::BudgetExceeded {
                what: "connected subset sweep",
                needed: st.count,
                cap: st.cap,
            });
        }
        (st.visit)(s, d);
        if s.count_ones() as usize >= st.max_size {
            return Ok(());
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            let bit = 1u64 << w;
            ext &= !bit;
            let dw = st.loc.marginal(w, s);
            let new_ext = ext | (st.loc.adj[w] & st.m & !excl & !s & !bit);
            rec(st, s | bit, d + dw, new_ext, excl | bit)?;
            excl |= bit;
        }
        Ok(())
    }
    let mut st = St {
        loc,
        m,
        max_size,
        cap,
        count: 0,
        visit,
    };
    for v in bits(m) {
        let below = (1u64 << v) - 1;
        let bit = 1u64 << v;
        let d = loc.marginal(v, 0);
        let excl = below | bit | !m;
        rec(&mut st, bit, d, loc.adj[v] & m & !excl, excl)?;
    }
    Ok(st.count)
}

fn check_c6(g: &TriGraph, comp: &IdSet, cfg: &Config) -> Result<Option<Verdict>> {
    let loc = Local::new(g, comp)?;
    let n = g.n() as i64;
    let bound = 3 * (n - 1) + 1;
    let guards = c3_guards(&loc);
    let mut best: Option<(i64, u32, u64)> = None;
    for_each_connected(&loc, loc.full(), cfg.budgets.max_subsets, &mut |s, d| {
        if d >= bound || s.count_ones() < 3 || !c3_holds(&guards, s) {
            return;
        }
        let size = s.count_ones();
        let take = match best {
            None => true,
            Some((bd, bs, bm)) => (d, size) < (bd, bs) || ((d, size) == (bd, bs) && lex_less(s, bm)),
        };
        if take {
            best = Some((d, size, s));
        }
    })?;
    if let Some((d, _, s)) = best {
        return Ok(Some(
            kfail(KCondition::C6a, loc.vec(s), None, cfg).with_value("delta", d),
        ));
    }
    // 6b: within a residue, a long cycle forces delta1 >= 2(n+1). Inside one
    // residue, condition 3 cannot fail, so every trace is realised by a member.
    let long = 2 * (g.n() as usize + 1);
    let floor = 2 * (n + 1);
    for &x in comp {
        let s = g.sort_of(x);
        if s == Sort::Line || (s == Sort::Plane && !cfg.dual6b) {
            continue;
        }
        let res = g.residue(x)?;
        if res.len() < long {
            continue;
        }
        let rl = Local::new(g, &res)?;
        if girth(&rl, rl.full()).is_none() || !has_long_cycle(&rl, rl.full(), long) {
            continue;
        }
        let mut found: Option<(i64, u32, u64)> = None;
        for_each_connected(&rl, rl.full(), cfg.budgets.max_subsets, &mut |r, _| {
            let v = pc(r);
            let e = rl.edges_in(r);
            let d1 = (n - 1) * v - (n - 2) * e;
            if d1 >= floor || (v as usize) < long {
                return;
            }
            let size = r.count_ones();
            let better = match found {
                None => true,
                Some((bd, bs, bm)) => {
                    (d1, size) < (bd, bs) || ((d1, size) == (bd, bs) && lex_less(r, bm))
                }
            };
            if better && has_long_cycle(&rl, r, long) {
                found = Some((d1, size, r));
            }
        })?;
        if let Some((d1, _, r)) = found {
            return Ok(Some(
                kfail(KCondition::C6b, rl.vec(r), Some(x), cfg).with_value("delta1", d1),
            ));
        }
    }
    Ok(None)
}

/// Membership in K with a certificate naming the first failed condition.
pub fn check_k(g: &TriGraph, cfg: &Config) -> Result<Verdict> {
    if let Some(v) = check_c1_to_c5(g, cfg)? {
        return Ok(v);
    }
    for comp in g.components() {
        if let Some(v) = check_c6(g, &comp, cfg)? {
            return Ok(v);
        }
    }
    Ok(Verdict::holds(cfg.mode))
}

/// Re-check a condition-failure certificate against its own witness.
pub fn recheck_k_certificate(g: &TriGraph, v: &Verdict, cfg: &Config) -> Result<bool> {
    let Some(Certificate::K {
        condition,
        witness,
        center,
    }) = &v.certificate
    else {
        return Ok(false);
    };
    let w: IdSet = witness.iter().copied().collect();
    let n = g.n() as i64;
    Ok(match condition {
        KCondition::C1 | KCondition::C2 | KCondition::C3 | KCondition::C4 => {
            let sub = g.induced(&w)?;
            let mut c = cfg.clone();
            c.dual6b = false;
            check_c1_to_c5(&sub, &c)?.and_then(|v| v.k_condition()) == Some(*condition)
        }
        KCondition::C5 => {
            let x = center.ok_or_else(|| Error::BadParameter("missing center".into()))?;
            let res = g.residue(x)?;
            w.is_subset(&res)
                && w.len() < 2 * g.n() as usize
                && witness
                    .iter()
                    .zip(witness.iter().cycle().skip(1))
                    .all(|(&a, &b)| g.adjacent(a, b))
        }
        KCondition::C6a => {
            crate::predim::delta(g, &w)? < 3 * (n - 1) + 1
                && w.len() >= 3
                && check_c1_to_c5(&g.induced(&w)?, cfg)?.is_none()
        }
        KCondition::C6b => {
            let x = center.ok_or_else(|| Error::BadParameter("missing center".into()))?;
            w.is_subset(&g.residue(x)?) && crate::predim::delta1(g, &w)? < 2 * (n + 1)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub hit: u64,
    pub total: u64,
}

impl Coverage {
    pub fn ratio(&self) -> Option<f64> {
        (self.total > 0).then(|| self.hit as f64 / self.total as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub universal: BTreeMap<String, Verdict>,
    pub all_universal_hold: bool,
    /// Diameter of each point or plane residue (`None` when disconnected or empty).
    pub residue_diameters: BTreeMap<Id, Option<u32>>,
    pub coverage: BTreeMap<String, Coverage>,
}

fn residue_diameter(g: &TriGraph, x: Id) -> Result<Option<u32>> {
    let res = g.residue(x)?;
    if res.is_empty() {
        return Ok(None);
    }
    let loc = Local::new(g, &res)?;
    let mut worst = 0;
    for a in 0..loc.len() {
        let mut seen = 1u64 << a;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= loc.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
            if frontier != 0 {
                d += 1;
            }
        }
        if seen != loc.full() {
            return Ok(None);
        }
        worst = worst.max(d);
    }
    Ok(Some(worst))
}

/// Exact verdicts for the universal halves of the geometry axioms, coverage
/// ratios for the existential halves.
pub fn check_geometry(g: &TriGraph, cfg: &Config) -> Result<GeometryReport> {
    let points = g.ids_of(Sort::Point);
    let planes = g.ids_of(Sort::Plane);
    let mut universal = BTreeMap::new();
    let mut coverage = BTreeMap::new();
    for (name, set) in [
        ("at_most_one_line_through_two_points", &points),
        ("at_most_one_line_in_two_planes", &planes),
    ] {
        let mut v = Verdict::holds(cfg.mode);
        for (a, b) in pairs_of(set) {
            let ls: Vec<Id> = common(g, a, b, Sort::Line).collect();
            if ls.len() >= 2 {
                v = kfail(KCondition::C1, vec![a, ls[0], b, ls[1]], None, cfg);
                break;
            }
        }
        universal.insert(name.to_string(), v);
    }
    for (name, cov, set, other) in [
        (
            "at_most_one_plane_through_unjoined_points",
            "unjoined_point_pairs_with_common_plane",
            &points,
            Sort::Plane,
        ),
        (
            "at_most_one_point_on_unjoined_planes",
            "unjoined_plane_pairs_with_common_point",
            &planes,
            Sort::Point,
        ),
    ] {
        let mut v = Verdict::holds(cfg.mode);
        let mut c = Coverage { hit: 0, total: 0 };
        for (a, b) in pairs_of(set) {
            if common(g, a, b, Sort::Line).next().is_some() {
                continue;
            }
            c.total += 1;
            let xs: Vec<Id> = common(g, a, b, other).collect();
            if !xs.is_empty() {
                c.hit += 1;
            }
            if xs.len() >= 2 && v.holds {
                v = kfail(KCondition::C3, vec![a, b, xs[0], xs[1]], None, cfg);
            }
        }
        universal.insert(name.to_string(), v);
        coverage.insert(cov.to_string(), c);
    }
    let mut v = Verdict::holds(cfg.mode);
    'outer: for l in g.ids_of(Sort::Line) {
        for p in g.neighbors_of_sort(l, Sort::Point) {
            for e in g.neighbors_of_sort(l, Sort::Plane) {
                if !g.adjacent(p, e) {
                    v = kfail(KCondition::C4, vec![p, l, e], None, cfg);
                    break 'outer;
                }
            }
        }
    }
    universal.insert("line_residues_complete_bipartite".to_string(), v);
    let mut v = Verdict::holds(cfg.mode);
    let mut diam = BTreeMap::new();
    let mut ngon = Coverage { hit: 0, total: 0 };
    let two_n = 2 * g.n() as usize;
    for (x, s) in g.vertices() {
        if s == Sort::Line {
            continue;
        }
        let res = g.residue(x)?;
        let d = residue_diameter(g, x)?;
        diam.insert(x, d);
        ngon.total += 1;
        if res.len() >= 3 {
            let loc = Local::new(g, &res)?;
            let gi = girth(&loc, loc.full());
            if let Some(gi) = gi.filter(|&gi| gi < two_n) {
                if v.holds {
                    let cyc = least_cycle(&loc, loc.full(), gi).expect("girth cycle");
                    v = kfail(
                        KCondition::C5,
                        cyc.into_iter().map(|i| loc.ids[i]).collect(),
                        Some(x),
                        cfg,
                    );
                }
            } else if d == Some(g.n()) {
                ngon.hit += 1;
            }
        }
    }
    universal.insert("residue_girth_at_least_2n".to_string(), v);
    coverage.insert("residues_that_are_ngons".to_string(), ngon);
    let mut induced = Coverage { hit: 0, total: 0 };
    for (a, b) in g.e2_edges() {
        induced.total += 1;
        if !g.is_induced_edge(a, b)?.is_empty() {
            induced.hit += 1;
        }
    }
    coverage.insert("e2_edges_with_joining_line".to_string(), induced);
    let all = universal.values().all(|v| v.holds);
    Ok(GeometryReport {
        universal,
        all_universal_hold: all,
        residue_diameters: diam,
        coverage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{flag_graph, set, GraphBuilder};

    fn cycle(len: u32, n: u32) -> TriGraph {
        let mut b = GraphBuilder::new(n);
        for i in 0..len {
            b = if i % 2 == 0 { b.point(i) } else { b.line(i) };
        }
        for i in 0..len {
            b = b.edge(i, (i + 1) % len);
        }
        b.build()
    }

    #[test]
    fn ngon_examples() {
        let c = Config::default();
        let g = GraphBuilder::new(6).point(0).line(1).edge(0, 1).build();
        assert!(!check_ngon(&g, &g.ids(), 6, &c).unwrap().holds);
        let h = cycle(6, 6);
        assert!(check_ngon(&h, &h.ids(), 3, &c).unwrap().holds);
        let d = cycle(10, 6);
        let v = check_ngon(&d, &d.ids(), 6, &c).unwrap();
        assert!(!v.holds);
        assert!(matches!(v.certificate, Some(Certificate::Cycle { ref cycle }) if cycle.len() == 10));
    }

    #[test]
    fn k_examples() {
        let c = Config::default();
        assert!(check_k(&TriGraph::new(6), &c).unwrap().holds);
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .line(3)
            .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
            .build();
        let v = check_k(&g, &c).unwrap();
        assert_eq!(v.k_condition(), Some(KCondition::C1));
        assert!(matches!(&v.certificate, Some(Certificate::K { witness, .. }) if witness == &vec![0, 2, 1, 3]));
        assert!(recheck_k_certificate(&g, &v, &c).unwrap());
        let g = GraphBuilder::new(6)
            .point(0)
            .line(1)
            .plane(2)
            .edges(&[(0, 1), (1, 2)])
            .build();
        assert_eq!(check_k(&g, &c).unwrap().k_condition(), Some(KCondition::C4));
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .plane(2)
            .plane(3)
            .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
            .build();
        assert_eq!(check_k(&g, &c).unwrap().k_condition(), Some(KCondition::C3));
        assert!(check_k(&flag_graph(6, 0, 1, 2), &c).unwrap().holds);
    }

    #[test]
    fn c2_violation() {
        let c = Config::default();
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .plane(3)
            .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
            .build();
        let v = check_k(&g, &c).unwrap();
        assert_eq!(v.k_condition(), Some(KCondition::C2));
        assert!(recheck_k_certificate(&g, &v, &c).unwrap());
    }

    #[test]
    fn short_residue_cycle_fails_c5() {
        let c = Config::default();
        // plane 100 over a 10-cycle of points and lines
        let mut g = cycle(10, 6);
        g.add_vertex(100, Sort::Plane).unwrap();
        for i in 0..10 {
            g.add_edge(i, 100).unwrap();
        }
        let v = check_k(&g, &c).unwrap();
        assert_eq!(v.k_condition(), Some(KCondition::C5));
        assert!(recheck_k_certificate(&g, &v, &c).unwrap());
    }

    #[test]
    fn connected_sweep_counts() {
        // path on 3 vertices has 6 connected subsets
        let g = GraphBuilder::new(6)
            .point(0)
            .line(1)
            .point(2)
            .edges(&[(0, 1), (1, 2)])
            .build();
        let loc = Local::new(&g, &g.ids()).unwrap();
        let mut seen = Vec::new();
        let n = for_each_connected(&loc, loc.full(), 100, &mut |m, d| {
            assert_eq!(d, loc.delta(m));
            seen.push(m);
        })
        .unwrap();
        assert_eq!(n, 6);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn geometry_reports() {
        let c = Config::default();
        let r = check_geometry(&TriGraph::new(6), &c).unwrap();
        assert!(r.all_universal_hold);
        assert!(r.coverage.values().all(|c| c.total == 0));
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .line(3)
            .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
            .build();
        let r = check_geometry(&g, &c).unwrap();
        assert!(!r.all_universal_hold);
        assert!(!r.universal["at_most_one_line_through_two_points"].holds);
        let _ = set(&[]);
    }
}
