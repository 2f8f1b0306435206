//! The μ policy, copy counting `χ`, and membership in `K_μ`.

use crate::amalgam::{classify_extension, pair_core, PairOverBase};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{embeddings_over, Id, IdSet, Sort, TriGraph};
use crate::kclass::{check_k, for_each_connected_upto};
use crate::local::{bits, Local};
use crate::predim::{delta, is_l_strong};
use crate::verdict::{Certificate, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Canonical μ (`2δ(A)` off the special shapes) with per-type overrides keyed
/// by canonical pair code.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuPolicy {
    #[serde(default)]
    pub overrides: BTreeMap<String, u64>,
}

impl MuPolicy {
    pub fn canonical() -> MuPolicy {
        MuPolicy::default()
    }

    pub fn from_json(text: &str) -> Result<MuPolicy> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Two points (planes) and one plane (point) on both.
    TwoOverOne,
    /// `A = {x, y, z}` and a residue path of `n − 2` new elements from `y` to `z`.
    ResiduePath,
    General,
}

fn is_residue_path(g: &TriGraph, a: &IdSet, b: &IdSet) -> bool {
    if a.len() != 3 || b.len() + 2 != g.n() as usize {
        return false;
    }
    a.iter().any(|&x| {
        if g.sort_of(x) == Sort::Line {
            return false;
        }
        let ends: Vec<Id> = a.iter().copied().filter(|&v| v != x).collect();
        if !ends.iter().chain(b.iter()).all(|&v| g.adjacent(x, v)) {
            return false;
        }
        let trace: IdSet = ends.iter().chain(b.iter()).copied().collect();
        let deg = |v: Id| g.neighbors(v).intersection(&trace).count();
        if ends.iter().any(|&v| deg(v) != 1) || b.iter().any(|&v| deg(v) != 2) {
            return false;
        }
        // degrees fit a path or a path plus cycles; connectivity decides
        g.components_of(&trace).len() == 1
    })
}

pub fn shape_of(pair: &PairOverBase) -> Shape {
    let g = &pair.ambient;
    let (a, b) = (&pair.a, &pair.b);
    if a.len() == 2 && b.len() == 1 {
        let sorts: BTreeSet<Sort> = a.iter().map(|&x| g.sort_of(x)).collect();
        let e = *b.iter().next().unwrap();
        if sorts.len() == 1
            && !sorts.contains(&Sort::Line)
            && g.sort_of(e) == sorts.iter().next().unwrap().dual()
            && a.iter().all(|&x| g.adjacent(x, e))
        {
            return Shape::TwoOverOne;
        }
    }
    if is_residue_path(g, a, b) {
        return Shape::ResiduePath;
    }
    Shape::General
}

/// μ of a simple pair under `policy`.
pub fn mu_value(policy: &MuPolicy, pair: &PairOverBase, cfg: &Config) -> Result<u64> {
    let class = match classify_extension(&pair.ambient, &pair.a, &pair.b, cfg) {
        Ok(c) => c,
        Err(Error::NotStrong { .. }) => {
            return Err(Error::NotSimple("the extension is not strong".into()))
        }
        Err(e) => return Err(e),
    };
    if !class.simple {
        return Err(Error::NotSimple(format!(
            "i = {}, minimal = {}, core covers the base = {}",
            class.i,
            class.minimal,
            pair_core(&pair.ambient, &pair.a, &pair.b)? == pair.a
        )));
    }
    let over = policy.overrides.get(&pair.code()?).copied();
    if shape_of(pair) != Shape::General {
        return match over {
            Some(v) if v != 1 => Err(Error::InvalidOverride { value: v, floor: 1 }),
            _ => Ok(1),
        };
    }
    let floor = 2 * delta(&pair.ambient, &pair.a)?.max(0) as u64;
    match over {
        Some(v) if v < floor => Err(Error::InvalidOverride { value: v, floor }),
        Some(v) => Ok(v),
        None => Ok(floor),
    }
}

/// All `B' ⊆ N \ A` isomorphic to `B` over `A` with `A ∪ B' ≤_L N`, in id order.
pub fn enumerate_copies(n: &TriGraph, pair: &PairOverBase) -> Result<Vec<IdSet>> {
    n.check_ids(&pair.a)?;
    for &x in &pair.a {
        if n.sort_of(x) != pair.ambient.sort_of(x) {
            return Err(Error::BaseMismatch(format!("vertex {x} changes sort")));
        }
        for &y in pair.a.range(x + 1..) {
            if n.adjacent(x, y) != pair.ambient.adjacent(x, y) {
                return Err(Error::BaseMismatch(format!("pair ({x}, {y}) differs")));
            }
        }
    }
    let all = n.ids();
    if !is_l_strong(n, &pair.a, &all)?.holds {
        return Err(Error::PreconditionFailed("base is not L-strong in N".into()));
    }
    let targets: IdSet = all.difference(&pair.a).copied().collect();
    let mut out = BTreeSet::new();
    for emb in embeddings_over(&pair.ambient, &pair.a, &pair.b, n, &targets, false, None) {
        let img: IdSet = emb.image().difference(&pair.a).copied().collect();
        if out.contains(&img) {
            continue;
        }
        let whole: IdSet = pair.a.union(&img).copied().collect();
        if is_l_strong(n, &whole, &all)?.holds {
            out.insert(img);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub chi: u64,
    pub packing: Vec<IdSet>,
}

/// Largest pairwise-disjoint subfamily, exact by branch and bound.
pub fn pack(copies: &[IdSet], node_cap: u64) -> Result<Packing> {
    struct St<'a> {
        sets: &'a [IdSet],
        used: IdSet,
        cur: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        cap: u64,
    }
    fn rec(st: &mut St, i: usize) -> Result<()> {
        st.nodes += 1;
        if st.nodes > st.cap {
            return Err(Error::BudgetExceeded {
                what: "packing search nodes",
                needed: st.nodes,
                cap: st.cap,
            });
        }
        let open = st.sets[i..]
            .iter()
            .filter(|s| s.is_disjoint(&st.used))
            .count();
        if st.cur.len() + open <= st.best.len() {
            return Ok(());
        }
        if i == st.sets.len() {
            st.best = st.cur.clone();
            return Ok(());
        }
        if st.sets[i].is_disjoint(&st.used) {
            st.used.extend(st.sets[i].iter().copied());
            st.cur.push(i);
            rec(st, i + 1)?;
            st.cur.pop();
            for x in &st.sets[i] {
                st.used.remove(x);
            }
        }
        rec(st, i + 1)
    }
    // greedy lower bound
    let mut used = IdSet::new();
    let mut greedy = Vec::new();
    for (i, s) in copies.iter().enumerate() {
        if s.is_disjoint(&used) {
            used.extend(s.iter().copied());
            greedy.push(i);
        }
    }
    let mut st = St {
        sets: copies,
        used: IdSet::new(),
        cur: Vec::new(),
        best: greedy,
        nodes: 0,
        cap: node_cap,
    };
    rec(&mut st, 0)?;
    Ok(Packing {
        chi: st.best.len() as u64,
        packing: st.best.iter().map(|&i| copies[i].clone()).collect(),
    })
}

pub fn chi(n: &TriGraph, pair: &PairOverBase, cfg: &Config) -> Result<Packing> {
    let copies = enumerate_copies(n, pair)?;
    pack(&copies, cfg.budgets.packing_nodes)
}

fn chi_failure(pair: &PairOverBase, p: Packing, mu: u64, cfg: &Config) -> Verdict {
    Verdict::fails(
        cfg.mode,
        Certificate::Chi {
            base: pair.a.iter().copied().collect(),
            extension: pair.b.iter().copied().collect(),
            chi: p.chi,
            mu,
            packing: p
                .packing
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        },
    )
}

/// Checks one candidate pair found inside `n`; `None` unless it is simple and over-counted.
fn test_pair(
    n: &TriGraph,
    pair: &PairOverBase,
    policy: &MuPolicy,
    cfg: &Config,
) -> Result<Option<Verdict>> {
    let c = match classify_extension(&pair.ambient, &pair.a, &pair.b, cfg) {
        Ok(c) => c,
        Err(Error::NotStrong { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !c.simple {
        return Ok(None);
    }
    let mu = mu_value(policy, pair, cfg)?;
    let p = chi(n, pair, cfg)?;
    Ok((p.chi > mu).then(|| chi_failure(pair, p, mu, cfg)))
}

/// Induced paths `y … z` inside `res` with exactly `inner` interior vertices,
/// grouped by endpoints, interiors as sets.
fn residue_paths(g: &TriGraph, res: &IdSet, inner: usize) -> BTreeMap<(Id, Id), BTreeSet<IdSet>> {
    let mut out: BTreeMap<(Id, Id), BTreeSet<IdSet>> = BTreeMap::new();
    fn rec(
        g: &TriGraph,
        res: &IdSet,
        inner: usize,
        path: &mut Vec<Id>,
        out: &mut BTreeMap<(Id, Id), BTreeSet<IdSet>>,
    ) {
        let last = *path.last().unwrap();
        let ok_next = |w: Id, path: &[Id]| {
            !path.contains(&w)
                && path[..path.len() - 1].iter().all(|&u| !g.adjacent(u, w))
        };
        for &w in g.neighbors(last).intersection(res) {
            if !ok_next(w, path) {
                continue;
            }
            if path.len() == inner + 1 {
                let y = path[0];
                if y < w {
                    out.entry((y, w))
                        .or_default()
                        .insert(path[1..].iter().copied().collect());
                }
            } else {
                path.push(w);
                rec(g, res, inner, path, out);
                path.pop();
            }
        }
    }
    for &y in res {
        let mut path = vec![y];
        rec(g, res, inner, &mut path, &mut out);
    }
    out
}

/// A simple pair of `n` whose copies outnumber μ, without first checking `K`.
pub fn find_chi_violation(n: &TriGraph, policy: &MuPolicy, cfg: &Config) -> Result<Option<Verdict>> {
    let all = n.ids();
    // two points (planes) over one plane (point)
    for (s, other) in [(Sort::Point, Sort::Plane), (Sort::Plane, Sort::Point)] {
        let xs = n.ids_of(s);
        for &p in &xs {
            for &q in xs.range(p + 1..) {
                let common: Vec<Id> = n
                    .neighbors_of_sort(p, other)
                    .filter(|&e| n.adjacent(q, e))
                    .collect();
                if common.len() < 2 {
                    continue;
                }
                let a = IdSet::from([p, q]);
                if !is_l_strong(n, &a, &all)?.holds {
                    continue;
                }
                let pair = PairOverBase::new(n, &a, &IdSet::from([common[0]]))?;
                if let Some(v) = test_pair(n, &pair, policy, cfg)? {
                    return Ok(Some(v));
                }
            }
        }
    }
    // residue paths with n − 2 interior elements
    let inner = n.n() as usize - 2;
    for (x, s) in n.vertices() {
        if s == Sort::Line {
            continue;
        }
        let res = n.residue(x)?;
        for ((y, z), interiors) in residue_paths(n, &res, inner) {
            if interiors.len() < 2 {
                continue;
            }
            let a = IdSet::from([x, y, z]);
            if !is_l_strong(n, &a, &all)?.holds {
                continue;
            }
            let pair = PairOverBase::new(n, &a, interiors.iter().next().unwrap())?;
            if let Some(v) = test_pair(n, &pair, policy, cfg)? {
                return Ok(Some(v));
            }
        }
    }
    // everything else: only large components can hold more than 2δ(A) copies
    let k = n.n() as i64;
    let floor = 2 * (3 * (k - 1) + 1);
    for comp in n.components() {
        if (comp.len() as i64) - 2 <= floor {
            continue;
        }
        for pair in general_pairs(n, &comp, cfg)? {
            if let Some(v) = test_pair(n, &pair, policy, cfg)? {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Candidate simple pairs of general shape inside one component: connected
/// `A ∪ B` with `δ(A) = δ(A ∪ B)`, `A` the pair core and `A ≤_L N`.
pub fn general_pairs(n: &TriGraph, comp: &IdSet, cfg: &Config) -> Result<Vec<PairOverBase>> {
    let loc = Local::new(n, comp)?;
    let max = cfg.budgets.max_pair_size as usize * 2;
    let mut sets = Vec::new();
    for_each_connected_upto(&loc, loc.full(), max, cfg.budgets.max_subsets, &mut |s, d| {
        if s.count_ones() >= 3 {
            sets.push((s, d));
        }
    })?;
    let all = n.ids();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (s, d) in sets {
        let idx: Vec<usize> = bits(s).collect();
        for sub in 1u64..(1u64 << idx.len()) - 1 {
            let am: u64 = bits(sub).fold(0, |m, i| m | 1 << idx[i]);
            let bm = s & !am;
            if pc(bm) > cfg.budgets.max_pair_size as usize || loc.delta(am) != d {
                continue;
            }
            let a = loc.set(am);
            let b = loc.set(bm);
            if pair_core(n, &a, &b)? != a || !is_l_strong(n, &a, &all)?.holds {
                continue;
            }
            let pair = PairOverBase::new(n, &a, &b)?;
            if shape_of(&pair) != Shape::General {
                continue;
            }
            if seen.insert((a.clone(), pair.code()?)) {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

fn pc(x: u64) -> usize {
    x.count_ones() as usize
}

/// `N ∈ K_μ`: `N ∈ K` and every simple pair has at most μ disjoint copies.
pub fn check_kmu(n: &TriGraph, policy: &MuPolicy, cfg: &Config) -> Result<Verdict> {
    let v = check_k(n, cfg)?;
    if !v.holds {
        return Ok(v);
    }
    Ok(find_chi_violation(n, policy, cfg)?.unwrap_or_else(|| Verdict::holds(cfg.mode)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{flag_graph, set, GraphBuilder};
    use crate::verdict::KCondition;

    fn cfg() -> Config {
        Config::default()
    }

    fn two_planes() -> TriGraph {
        GraphBuilder::new(6)
            .point(0)
            .point(1)
            .plane(2)
            .plane(3)
            .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
            .build()
    }

    #[test]
    fn special_shapes_get_one() {
        let g = two_planes();
        let pair = PairOverBase::new(&g, &set(&[0, 1]), &set(&[2])).unwrap();
        assert_eq!(shape_of(&pair), Shape::TwoOverOne);
        assert_eq!(mu_value(&MuPolicy::default(), &pair, &cfg()).unwrap(), 1);
        let g = crate::amalgam::tests::residue_path(6, 4);
        let pair = PairOverBase::new(&g, &set(&[0, 1, 2]), &set(&[3, 4, 5, 6])).unwrap();
        assert_eq!(shape_of(&pair), Shape::ResiduePath);
        assert_eq!(mu_value(&MuPolicy::default(), &pair, &cfg()).unwrap(), 1);
        let mut pol = MuPolicy::default();
        pol.overrides.insert(pair.code().unwrap(), 3);
        assert!(matches!(
            mu_value(&pol, &pair, &cfg()),
            Err(Error::InvalidOverride { value: 3, floor: 1 })
        ));
    }

    #[test]
    fn non_simple_rejected() {
        let f = flag_graph(6, 0, 1, 2);
        let pair = PairOverBase::new(&f, &set(&[1]), &set(&[0])).unwrap();
        assert!(matches!(
            mu_value(&MuPolicy::default(), &pair, &cfg()),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn copies_and_chi() {
        let g = two_planes();
        let pair = PairOverBase::new(&g, &set(&[0, 1]), &set(&[2])).unwrap();
        assert_eq!(enumerate_copies(&g, &pair).unwrap(), vec![set(&[2]), set(&[3])]);
        assert_eq!(chi(&g, &pair, &cfg()).unwrap().chi, 2);
        let own = pair.ambient.clone();
        assert_eq!(enumerate_copies(&own, &pair).unwrap(), vec![set(&[2])]);
        // a line on two planes of A ∪ B' excludes that copy
        let h = GraphBuilder::new(6)
            .point(0)
            .plane(1)
            .plane(2)
            .plane(3)
            .line(4)
            .edges(&[(0, 1), (0, 2), (0, 3), (4, 1), (4, 3)])
            .build();
        let pair = PairOverBase::new(&h, &set(&[0, 1]), &set(&[2])).unwrap();
        assert_eq!(enumerate_copies(&h, &pair).unwrap(), vec![set(&[2])]);
        // a line joining the base points breaks the precondition
        let mut h2 = g.clone();
        h2.add_vertex(9, Sort::Line).unwrap();
        h2.add_edge(9, 0).unwrap();
        h2.add_edge(9, 1).unwrap();
        let pair = PairOverBase::new(&g, &set(&[0, 1]), &set(&[2])).unwrap();
        assert!(matches!(enumerate_copies(&h2, &pair), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn packing_is_exact() {
        let sets = vec![set(&[1, 2]), set(&[2, 3]), set(&[3, 4]), set(&[5])];
        let p = pack(&sets, 1000).unwrap();
        assert_eq!(p.chi, 3);
        assert_eq!(p.packing, vec![set(&[1, 2]), set(&[3, 4]), set(&[5])]);
        assert_eq!(pack(&[], 10).unwrap().chi, 0);
        assert_eq!(pack(&[set(&[1, 2]), set(&[2])], 10).unwrap().chi, 1);
    }

    #[test]
    fn kmu_examples() {
        let f = flag_graph(6, 0, 1, 2);
        assert!(check_kmu(&f, &MuPolicy::default(), &cfg()).unwrap().holds);
        let g = two_planes();
        let v = check_kmu(&g, &MuPolicy::default(), &cfg()).unwrap();
        assert_eq!(v.k_condition(), Some(KCondition::C3));
        let v = find_chi_violation(&g, &MuPolicy::default(), &cfg()).unwrap().unwrap();
        assert!(matches!(v.certificate, Some(Certificate::Chi { chi: 2, mu: 1, .. })));
    }

    #[test]
    fn short_residue_cycle_over_counts_paths() {
        // plane 100 whose residue is a 10-cycle of points and lines
        let mut g = TriGraph::new(6);
        g.add_vertex(100, Sort::Plane).unwrap();
        for i in 0..10 {
            g.add_vertex(i, if i % 2 == 0 { Sort::Point } else { Sort::Line }).unwrap();
            g.add_edge(i, 100).unwrap();
        }
        for i in 0..10 {
            g.add_edge(i, (i + 1) % 10).unwrap();
        }
        assert_eq!(check_kmu(&g, &MuPolicy::default(), &cfg()).unwrap().k_condition(), Some(KCondition::C5));
        let v = find_chi_violation(&g, &MuPolicy::default(), &cfg()).unwrap().unwrap();
        match v.certificate {
            Some(Certificate::Chi { base, chi, mu, packing, .. }) => {
                assert_eq!((chi, mu), (2, 1));
                assert_eq!(base, vec![0, 5, 100]);
                assert_eq!(packing.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }
}
