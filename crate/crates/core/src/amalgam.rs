//! Free amalgams, minimal and simple extensions, and the step-by-step
//! amalgamation of strong extensions inside `K_μ`.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{embeddings_over, Embedding, Id, IdSet, Sort, TriGraph};
use crate::mu::{check_kmu, MuPolicy};
use crate::predim::{delta, delta_rel, find_violation, is_k_strong};
use crate::verdict::Certificate;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An extension `B` over a base `A`, carried by the induced graph on `A ∪ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOverBase {
    pub ambient: TriGraph,
    pub a: IdSet,
    pub b: IdSet,
    /// `δ(B/A)`.
    pub i: i64,
}

impl PairOverBase {
    pub fn new(g: &TriGraph, a: &IdSet, b: &IdSet) -> Result<PairOverBase> {
        g.check_ids(a.iter().chain(b.iter()))?;
        if !a.is_disjoint(b) {
            return Err(Error::BadParameter("base and extension overlap".into()));
        }
        let ab: IdSet = a.union(b).copied().collect();
        let ambient = g.induced(&ab)?;
        let i = delta_rel(&ambient, b, a)?;
        Ok(PairOverBase {
            ambient,
            a: a.clone(),
            b: b.clone(),
            i,
        })
    }

    pub fn code(&self) -> Result<String> {
        crate::canon::canonical_code(&self.ambient, &self.a, &self.b)
    }

    pub fn union(&self) -> IdSet {
        self.a.union(&self.b).copied().collect()
    }
}

fn same_structure(g: &TriGraph, h: &TriGraph, s: &IdSet) -> Result<()> {
    for &x in s {
        match (g.sort(x), h.sort(x)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => {
                return Err(Error::BaseMismatch(format!("vertex {x} changes sort")));
            }
            _ => return Err(Error::BaseMismatch(format!("vertex {x} missing on one side"))),
        }
    }
    for &x in s {
        for &y in s.range(x + 1..) {
            if g.adjacent(x, y) != h.adjacent(x, y) {
                return Err(Error::BaseMismatch(format!("pair ({x}, {y}) differs")));
            }
        }
    }
    Ok(())
}

/// `B ⊗_A C` together with the renaming applied to `C` (ids of `C \ A` that
/// clash with `B` move above both graphs).
pub fn free_amalgam_map(b: &TriGraph, a: &IdSet, c: &TriGraph) -> Result<(TriGraph, BTreeMap<Id, Id>)> {
    if b.n() != c.n() {
        return Err(Error::BaseMismatch(format!("n = {} against n = {}", b.n(), c.n())));
    }
    same_structure(b, c, a)?;
    let mut next = b.fresh_id().max(c.fresh_id());
    let mut map = BTreeMap::new();
    for (x, _) in c.vertices() {
        if a.contains(&x) {
            map.insert(x, x);
        } else if b.contains(x) {
            map.insert(x, next);
            next += 1;
        } else {
            map.insert(x, x);
        }
    }
    let c2 = c.relabel(&map)?;
    let mut d = b.clone();
    d.absorb(&c2)?;
    // E2 pairs forced through lines of the base.
    for &w in a {
        if b.sort_of(w) != Sort::Line {
            continue;
        }
        for (left, right) in [(b, &c2), (&c2, b)] {
            for p in left.neighbors_of_sort(w, Sort::Point) {
                if a.contains(&p) {
                    continue;
                }
                for e in right.neighbors_of_sort(w, Sort::Plane) {
                    if !a.contains(&e) && !d.adjacent(p, e) {
                        d.add_e2(p, e)?;
                    }
                }
            }
        }
    }
    Ok((d, map))
}

pub fn free_amalgam(b: &TriGraph, a: &IdSet, c: &TriGraph) -> Result<TriGraph> {
    Ok(free_amalgam_map(b, a, c)?.0)
}

/// Elements of `c0` joined to `b` by an E edge, or by an E2 edge that no line
/// of `c0 ∪ b` induces.
pub fn pair_core(g: &TriGraph, c0: &IdSet, b: &IdSet) -> Result<IdSet> {
    g.check_ids(c0.iter().chain(b.iter()))?;
    let inside = |w: &Id| c0.contains(w) || b.contains(w);
    let mut out = IdSet::new();
    for &x in c0 {
        let hit = g.neighbors(x).iter().filter(|y| b.contains(y)).any(|&y| {
            match crate::graph::edge_kind(g.sort_of(x), g.sort_of(y)) {
                Some(crate::graph::EdgeKind::E) => true,
                _ => !g
                    .neighbors_of_sort(x, Sort::Line)
                    .any(|w| inside(&w) && g.adjacent(w, y)),
            }
        });
        if hit {
            out.insert(x);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub i: i64,
    pub minimal: bool,
    pub simple: bool,
    /// The least intermediate strong set when not minimal.
    pub intermediate: Option<Vec<Id>>,
}

fn not_strong(g: &TriGraph, a: &IdSet, ab: &IdSet, cfg: &Config) -> Result<()> {
    if let Some(v) = find_violation(g, a, ab, None, cfg)? {
        return Err(Error::NotStrong {
            certificate: v.set.into_iter().collect(),
            delta: v.delta,
        });
    }
    Ok(())
}

/// Combinations of `items` of size `k` in lexicographic order.
fn combinations(items: &[Id], k: usize, f: &mut dyn FnMut(&[Id]) -> bool) -> bool {
    fn rec(items: &[Id], k: usize, start: usize, cur: &mut Vec<Id>, f: &mut dyn FnMut(&[Id]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Least `X ⊊ B` (size, then ids) with `A ≤ AX ≤ AB`, `X` nonempty.
pub fn smallest_intermediate(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<Option<IdSet>> {
    if b.len() > cfg.budgets.max_extension as usize {
        return Err(Error::BudgetExceeded {
            what: "extension size",
            needed: b.len() as u64,
            cap: cfg.budgets.max_extension as u64,
        });
    }
    let ab: IdSet = a.union(b).copied().collect();
    let items: Vec<Id> = b.iter().copied().collect();
    let mut err = None;
    let mut found = None;
    for k in 1..items.len() {
        let hit = combinations(&items, k, &mut |x| {
            let c: IdSet = a.iter().chain(x.iter()).copied().collect();
            let ok = find_violation(g, a, &c, None, cfg)
                .and_then(|v| Ok(v.is_none() && find_violation(g, &c, &ab, None, cfg)?.is_none()));
            match ok {
                Ok(true) => {
                    found = Some(x.iter().copied().collect());
                    true
                }
                Ok(false) => false,
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if hit {
            break;
        }
    }
    Ok(found)
}

/// `i = δ(B/A)`, minimality over `A`, and simplicity of `(A, B)`.
pub fn classify_extension(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<Classification> {
    g.check_ids(a.iter().chain(b.iter()))?;
    if b.is_empty() || !a.is_disjoint(b) {
        return Err(Error::BadParameter(
            "extension must be nonempty and disjoint from the base".into(),
        ));
    }
    let ab: IdSet = a.union(b).copied().collect();
    not_strong(g, a, &ab, cfg)?;
    let i = delta_rel(g, b, a)?;
    let inter = smallest_intermediate(g, a, b, cfg)?;
    let minimal = inter.is_none();
    let simple = minimal && i == 0 && pair_core(g, a, b)? == *a;
    Ok(Classification {
        i,
        minimal,
        simple,
        intermediate: inter.map(|s| s.into_iter().collect()),
    })
}

/// `A = F0 ⊊ F1 ⊊ … ⊊ Fm = A ∪ B`, each step the least strong intermediate.
pub fn decompose_minimal(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<Vec<IdSet>> {
    g.check_ids(a.iter().chain(b.iter()))?;
    let ab: IdSet = a.union(b).copied().collect();
    not_strong(g, a, &ab, cfg)?;
    let mut chain = vec![a.clone()];
    let mut cur = a.clone();
    while cur != ab {
        let rest: IdSet = ab.difference(&cur).copied().collect();
        let next = match smallest_intermediate(g, &cur, &rest, cfg)? {
            Some(x) => cur.union(&x).copied().collect(),
            None => ab.clone(),
        };
        chain.push(next.clone());
        cur = next;
    }
    Ok(chain)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    Free,
    InternalCopy { onto: Vec<Id> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLog {
    pub step: usize,
    /// Ids of `C2`.
    pub base: Vec<Id>,
    pub added: Vec<Id>,
    pub i: i64,
    pub core: Vec<Id>,
    /// `φ(F_j) ≤_{|X|} D` before the step (checked for `i ≥ 1` only).
    pub side_condition: Option<bool>,
    pub resolution: Resolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamResult {
    pub d: TriGraph,
    pub embed1: Embedding,
    pub embed2: Embedding,
    pub path: Vec<StepLog>,
}

fn strong_in(g: &TriGraph, a: &IdSet, cfg: &Config) -> Result<bool> {
    Ok(find_violation(g, a, &g.ids(), None, cfg)?.is_none())
}

fn precondition(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(what.to_string()))
    }
}

/// Amalgamate `c1` and `c2` over the shared vertices of `c0`, one minimal step
/// at a time; a 0-step whose free amalgam leaves `K_μ` is folded onto a strong
/// copy already present.
pub fn amalgamate(
    c0: &TriGraph,
    c1: &TriGraph,
    c2: &TriGraph,
    policy: &MuPolicy,
    cfg: &Config,
) -> Result<AmalgamResult> {
    let base = c0.ids();
    same_structure(c0, c1, &base)?;
    same_structure(c0, c2, &base)?;
    if c0.n() != c1.n() || c0.n() != c2.n() {
        return Err(Error::BaseMismatch("graphs disagree on n".into()));
    }
    precondition(strong_in(c1, &base, cfg)?, "base is not strong in the first graph")?;
    precondition(strong_in(c2, &base, cfg)?, "base is not strong in the second graph")?;
    for (g, name) in [(c0, "base"), (c1, "first graph"), (c2, "second graph")] {
        precondition(check_kmu(g, policy, cfg)?.holds, &format!("{name} is not in K_mu"))?;
    }
    let ext: IdSet = c2.ids().difference(&base).copied().collect();
    let chain = decompose_minimal(c2, &base, &ext, cfg)?;
    let mut d = c1.clone();
    let mut phi: BTreeMap<Id, Id> = base.iter().map(|&x| (x, x)).collect();
    let mut path = Vec::new();
    for (j, w) in chain.windows(2).enumerate() {
        let (fj, fnext) = (&w[0], &w[1]);
        let x: IdSet = fnext.difference(fj).copied().collect();
        let i = delta_rel(c2, &x, fj)?;
        let core = pair_core(c2, fj, &x)?;
        let mut fresh = d.fresh_id();
        let mut map = BTreeMap::new();
        for &v in fnext {
            if let Some(&t) = phi.get(&v) {
                map.insert(v, t);
            } else {
                map.insert(v, fresh);
                fresh += 1;
            }
        }
        let step_graph = c2.induced(fnext)?.relabel(&map)?;
        let base_d: IdSet = fj.iter().map(|v| map[v]).collect();
        let new_d: IdSet = x.iter().map(|v| map[v]).collect();
        let side_condition = if i >= 1 {
            Some(is_k_strong(&d, &base_d, &d.ids(), x.len(), cfg)?.holds)
        } else {
            None
        };
        let (cand, cmap) = free_amalgam_map(&d, &base_d, &step_graph)?;
        let resolution = if check_kmu(&cand, policy, cfg)?.holds {
            for &v in &x {
                phi.insert(v, cmap[&map[&v]]);
            }
            d = cand;
            Resolution::Free
        } else {
            let targets: IdSet = d.ids().difference(&base_d).copied().collect();
            let mut chosen = None;
            for emb in embeddings_over(&step_graph, &base_d, &new_d, &d, &targets, false, None) {
                let img = emb.image();
                let whole: IdSet = base_d.union(&img).copied().collect();
                if strong_in(&d, &whole, cfg)? {
                    chosen = Some(emb);
                    break;
                }
            }
            let emb = chosen.ok_or(Error::InternalCopyMissing { step: j })?;
            for &v in &x {
                phi.insert(v, emb.mapping[&map[&v]]);
            }
            Resolution::InternalCopy {
                onto: new_d.iter().map(|v| emb.mapping[v]).collect(),
            }
        };
        path.push(StepLog {
            step: j,
            base: fj.iter().copied().collect(),
            added: x.into_iter().collect(),
            i,
            core: core.into_iter().collect(),
            side_condition,
            resolution,
        });
    }
    let post = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::PostconditionFailed(what.to_string()))
        }
    };
    let kmu = check_kmu(&d, policy, cfg)?;
    post(kmu.holds, "amalgam is not in K_mu")?;
    post(strong_in(&d, &c1.ids(), cfg)?, "first graph is not strong in the amalgam")?;
    let image: IdSet = phi.values().copied().collect();
    post(strong_in(&d, &image, cfg)?, "second graph is not strong in the amalgam")?;
    let emb2 = Embedding {
        mapping: phi,
        base: base.clone(),
    };
    post(is_embedding(c2, &d, &emb2), "second map is not an embedding")?;
    Ok(AmalgamResult {
        embed1: Embedding {
            mapping: c1.ids().iter().map(|&x| (x, x)).collect(),
            base,
        },
        embed2: emb2,
        d,
        path,
    })
}

/// Sort-preserving, injective, and preserving and reflecting incidence.
pub fn is_embedding(g: &TriGraph, h: &TriGraph, e: &Embedding) -> bool {
    let img: IdSet = e.mapping.values().copied().collect();
    if img.len() != e.mapping.len() || e.mapping.len() != g.len() {
        return false;
    }
    e.mapping.iter().all(|(&x, &y)| h.contains(y) && g.sort_of(x) == h.sort_of(y))
        && e.mapping.iter().all(|(&x, &y)| {
            e.mapping
                .range(x + 1..)
                .all(|(&x2, &y2)| g.adjacent(x, x2) == h.adjacent(y, y2))
        })
}

/// The certificate of `δ` additivity of a free amalgam, as a value map.
pub fn additivity_values(b: &TriGraph, a: &IdSet, c: &TriGraph) -> Result<Certificate> {
    let d = free_amalgam(b, a, c)?;
    let mut values = BTreeMap::new();
    values.insert("delta(D)".to_string(), delta(&d, &d.ids())?);
    values.insert("delta(B)".to_string(), delta(b, &b.ids())?);
    values.insert("delta(C)".to_string(), delta(c, &c.ids())?);
    values.insert("delta(A)".to_string(), delta(b, a)?);
    Ok(Certificate::Values { values })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::{flag_graph, set, GraphBuilder};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn free_amalgam_examples() {
        let b = GraphBuilder::new(6).line(0).point(1).edge(0, 1).build();
        let c = GraphBuilder::new(6).line(0).plane(2).edge(0, 2).build();
        let d = free_amalgam(&b, &set(&[0]), &c).unwrap();
        assert_eq!(d.flags().len(), 1);
        assert!(d.adjacent(1, 2));
        assert_eq!(delta(&d, &d.ids()).unwrap(), 16);
        // C = A gives B back
        let a_only = GraphBuilder::new(6).line(0).build();
        assert_eq!(free_amalgam(&b, &set(&[0]), &a_only).unwrap(), b);
        // over the empty base: disjoint union with clashing ids renamed
        let f = flag_graph(6, 0, 1, 2);
        let (u, map) = free_amalgam_map(&f, &IdSet::new(), &f).unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(map[&0], 3);
        assert_eq!(delta(&u, &u.ids()).unwrap(), 32);
    }

    #[test]
    fn base_mismatch_detected() {
        let b = GraphBuilder::new(6).line(0).point(1).edge(0, 1).build();
        let c = GraphBuilder::new(6).line(0).point(1).build();
        assert!(matches!(
            free_amalgam(&b, &set(&[0, 1]), &c),
            Err(Error::BaseMismatch(_))
        ));
        let c = GraphBuilder::new(6).plane(0).build();
        assert!(matches!(free_amalgam(&b, &set(&[0]), &c), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn pair_core_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .plane(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        assert_eq!(pair_core(&g, &set(&[0, 1]), &set(&[2])).unwrap(), set(&[0, 1]));
        assert!(pair_core(&g, &set(&[0]), &IdSet::new()).unwrap().is_empty());
        // E2 from x to y induced by z inside the base
        let f = flag_graph(6, 0, 1, 2);
        let core = pair_core(&f, &set(&[0, 1]), &set(&[2])).unwrap();
        assert_eq!(core, set(&[1]));
    }

    #[test]
    fn classify_examples() {
        let g = GraphBuilder::new(6)
            .point(0)
            .point(1)
            .plane(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        let c = classify_extension(&g, &set(&[0, 1]), &set(&[2]), &cfg()).unwrap();
        assert_eq!((c.i, c.minimal, c.simple), (0, true, true));
        let f = flag_graph(6, 0, 1, 2);
        let c = classify_extension(&f, &set(&[1]), &set(&[0]), &cfg()).unwrap();
        assert_eq!((c.i, c.minimal, c.simple), (1, true, false));
        // residue path of n-2 = 4 new elements in a plane
        let g = residue_path(6, 4);
        let c = classify_extension(&g, &set(&[0, 1, 2]), &set(&[3, 4, 5, 6]), &cfg()).unwrap();
        assert_eq!((c.i, c.minimal, c.simple), (0, true, true));
        // not strong
        let g = GraphBuilder::new(6).point(0).point(1).line(2).edges(&[(0, 2), (1, 2)]).build();
        assert!(matches!(
            classify_extension(&g, &set(&[0, 1]), &set(&[2]), &cfg()),
            Err(Error::NotStrong { .. })
        ));
    }

    /// Plane 0; residue point 1 and line 2 joined by `interior` new residue elements.
    pub(crate) fn residue_path(n: u32, interior: u32) -> TriGraph {
        let mut g = TriGraph::new(n);
        g.add_vertex(0, Sort::Plane).unwrap();
        g.add_vertex(1, Sort::Point).unwrap();
        let mut prev = 1;
        let mut sort = Sort::Line;
        let ids: Vec<Id> = (3..3 + interior).chain([2]).collect();
        for &v in &ids {
            g.add_vertex(v, sort).unwrap();
            g.add_edge(prev, v).unwrap();
            g.add_edge(0, v).unwrap();
            prev = v;
            sort = if sort == Sort::Line { Sort::Point } else { Sort::Line };
        }
        g.add_edge(0, 1).unwrap();
        g
    }

    #[test]
    fn decompositions() {
        let g = GraphBuilder::new(6)
            .line(0)
            .point(1)
            .point(2)
            .plane(3)
            .edges(&[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
            .build();
        let chain = decompose_minimal(&g, &set(&[0]), &set(&[1, 2, 3]), &cfg()).unwrap();
        assert_eq!(chain.len(), 4);
        for w in chain.windows(2) {
            let x: IdSet = w[1].difference(&w[0]).copied().collect();
            assert_eq!(x.len(), 1);
            assert_eq!(delta_rel(&g, &x, &w[0]).unwrap(), 1);
        }
        let g = GraphBuilder::new(6).point(0).point(1).build();
        let chain = decompose_minimal(&g, &IdSet::new(), &set(&[0, 1]), &cfg()).unwrap();
        assert_eq!(chain, vec![set(&[]), set(&[0]), set(&[0, 1])]);
    }

    #[test]
    fn amalgamate_point_on_line() {
        let c0 = GraphBuilder::new(6).line(0).build();
        let c1 = flag_graph(6, 1, 0, 2);
        let c2 = GraphBuilder::new(6).line(0).point(1).edge(0, 1).build();
        let r = amalgamate(&c0, &c1, &c2, &MuPolicy::default(), &cfg()).unwrap();
        assert_eq!(r.d.len(), 4);
        assert_eq!(r.path.len(), 1);
        assert_eq!(r.path[0].resolution, Resolution::Free);
        assert_eq!(r.path[0].i, 1);
    }

    #[test]
    fn amalgamate_folds_bare_plane() {
        let c0 = GraphBuilder::new(6).point(0).point(1).build();
        let c1 = GraphBuilder::new(6).point(0).point(1).plane(5).edges(&[(0, 5), (1, 5)]).build();
        let c2 = GraphBuilder::new(6).point(0).point(1).plane(2).edges(&[(0, 2), (1, 2)]).build();
        let r = amalgamate(&c0, &c1, &c2, &MuPolicy::default(), &cfg()).unwrap();
        assert_eq!(r.d, c1);
        assert_eq!(r.path[0].resolution, Resolution::InternalCopy { onto: vec![5] });
        assert_eq!(r.embed2.mapping[&2], 5);
        // identical sides: result is the second graph
        let r = amalgamate(&c0, &c0, &c2, &MuPolicy::default(), &cfg()).unwrap();
        assert_eq!(r.d, c2);
    }
}
