//! Finite approximations of the generic model: rounds of (base, extension
//! type) tasks folded in by strong amalgamation, and finite checks of the
//! axioms of the limit theory.

use crate::amalgam::{amalgamate, classify_extension, free_amalgam, PairOverBase, Resolution};
use crate::canon::{canonical_form, canonical_form_labelled};
use crate::config::{Config, StrongnessMode};
use crate::error::{Error, Result};
use crate::graph::{embeddings_over, flag_graph, Id, IdSet, Sort, TriGraph};
use crate::kclass::check_hereditary;
use crate::lattice::StrongOracle;
use crate::mu::{check_kmu, chi, mu_value, MuPolicy};
use crate::predim::{delta, find_violation, is_k_strong, is_l_strong};
use crate::verdict::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub const STATE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildBudgets {
    pub steps: u64,
    /// Largest `|C \ A|`.
    pub max_ext: usize,
    /// Largest base `A`.
    pub max_base: usize,
    /// Tasks that would grow a component past this are skipped.
    pub max_component: usize,
    /// Cap on candidate extensions generated for one base type.
    pub max_candidates: u64,
}

impl Default for BuildBudgets {
    fn default() -> Self {
        BuildBudgets {
            steps: 50,
            max_ext: 4,
            max_base: 2,
            max_component: 16,
            max_candidates: 500_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub round: u64,
    pub k: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub step: u64,
    pub round: u64,
    pub base: Vec<Id>,
    /// Canonical code of the extension type.
    pub code: String,
    pub i: i64,
    /// Vertices new to the graph (empty when every piece folded onto a copy).
    pub added: Vec<Id>,
    pub resolutions: Vec<String>,
    pub delta_before: i64,
    pub delta_after: i64,
    /// For `i ≥ 1` minimal steps over `A ≤_k M` (`k = |B| + n − 1`): whether
    /// the new copy is `≤_k` as well.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_extension: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuilderState {
    pub version: u32,
    pub n: u32,
    pub seed: u64,
    pub mode: StrongnessMode,
    pub budgets: BuildBudgets,
    pub policy: MuPolicy,
    pub graph: TriGraph,
    /// The graph as it stood when the current round began.
    pub round_graph: TriGraph,
    pub cursor: Cursor,
    pub steps_done: u64,
    pub log: Vec<Event>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped: Option<String>,
}

impl BuilderState {
    /// Seeded with one complete flag `(0, 1, 2)`.
    pub fn new(n: u32, seed: u64, budgets: BuildBudgets, policy: MuPolicy, mode: StrongnessMode) -> BuilderState {
        let g = flag_graph(n, 0, 1, 2);
        BuilderState {
            version: STATE_VERSION,
            n,
            seed,
            mode,
            budgets,
            policy,
            round_graph: g.clone(),
            graph: g,
            cursor: Cursor {
                round: 0,
                k: 1,
                index: 0,
            },
            steps_done: 0,
            log: Vec::new(),
            stopped: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<BuilderState> {
        let s: BuilderState = serde_json::from_str(text)?;
        if s.version != STATE_VERSION {
            return Err(Error::Parse(format!("state version {} (expected {STATE_VERSION})", s.version)));
        }
        Ok(s)
    }
}

/// One abstract extension `C` of a base: `C` carries the base ids plus `new`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub graph: TriGraph,
    pub new: IdSet,
    pub i: i64,
    /// Isomorphism type of the pair.
    pub code: String,
    /// Type over the base with every base vertex pinned.
    pub labelled: String,
}

fn compatible(a: Sort, b: Sort) -> bool {
    a != b
}

fn pins(base: &IdSet) -> BTreeMap<Id, u64> {
    base.iter().enumerate().map(|(i, &x)| (x, i as u64)).collect()
}

/// Every extension `C ⊇ base` with `k` new vertices, `C ∈ K_μ` and `base ≤ C`,
/// one per isomorphism type over the pointwise-fixed base.
pub fn extension_types(
    base: &TriGraph,
    k: usize,
    policy: &MuPolicy,
    cfg: &Config,
    cap: u64,
) -> Result<Vec<Extension>> {
    let start = base.fresh_id();
    let bset = base.ids();
    let mut out: BTreeMap<String, Extension> = BTreeMap::new();
    let mut count = 0u64;
    struct Ctx<'a> {
        bset: &'a IdSet,
        start: Id,
        k: usize,
        policy: &'a MuPolicy,
        cfg: &'a Config,
        cap: u64,
    }
    fn rec(
        cx: &Ctx,
        g: &mut TriGraph,
        j: usize,
        min_sort: u8,
        count: &mut u64,
        out: &mut BTreeMap<String, Extension>,
    ) -> Result<()> {
        if j == cx.k {
            let new: IdSet = (cx.start..cx.start + cx.k as Id).collect();
            let all = g.ids();
            if find_violation(g, cx.bset, &all, None, cx.cfg)?.is_some() {
                return Ok(());
            }
            let (_, labelled) = canonical_form_labelled(g, cx.bset, &new, &pins(cx.bset))?;
            if out.contains_key(&labelled) || !check_kmu(g, cx.policy, cx.cfg)?.holds {
                return Ok(());
            }
            let code = canonical_form(g, cx.bset, &new)?.1;
            let i = delta(g, &all)? - delta(g, cx.bset)?;
            out.insert(
                labelled.clone(),
                Extension {
                    graph: g.clone(),
                    new,
                    i,
                    code,
                    labelled,
                },
            );
            return Ok(());
        }
        let v = cx.start + j as Id;
        for sort in [Sort::Point, Sort::Line, Sort::Plane] {
            if sort.code() < min_sort {
                continue;
            }
            let cands: Vec<Id> = g
                .vertices()
                .filter(|&(_, s)| compatible(sort, s))
                .map(|(x, _)| x)
                .collect();
            for mask in 0u64..(1u64 << cands.len()) {
                *count += 1;
                if *count > cx.cap {
                    return Err(Error::BudgetExceeded {
                        what: "candidate extensions",
                        needed: *count,
                        cap: cx.cap,
                    });
                }
                let mut h = g.clone();
                h.add_vertex(v, sort)?;
                for (bit, &x) in cands.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        h.add_edge(v, x)?;
                    }
                }
                if check_hereditary(&h, cx.cfg)?.is_some() {
                    continue;
                }
                rec(cx, &mut h, j + 1, sort.code(), count, out)?;
            }
        }
        Ok(())
    }
    let cx = Ctx {
        bset: &bset,
        start,
        k,
        policy,
        cfg,
        cap,
    };
    let mut g = base.clone();
    rec(&cx, &mut g, 0, 0, &mut count, &mut out)?;
    Ok(out.into_values().collect())
}

/// A scheduled task: the `ext`-th extension of the base type of `base`.
#[derive(Clone, Debug)]
struct TaskRef {
    code: String,
    base_pos: usize,
    labelled: String,
    base: IdSet,
    type_key: String,
    ext: usize,
}

/// Representative base graphs (ids `0..|A|` in canonical order) and their extensions.
type TypeCache = BTreeMap<String, (Vec<Id>, Vec<Extension>)>;

fn subsets_upto(ids: &[Id], max: usize, f: &mut dyn FnMut(&IdSet) -> Result<()>) -> Result<()> {
    fn rec(ids: &[Id], k: usize, start: usize, cur: &mut Vec<Id>, f: &mut dyn FnMut(&IdSet) -> Result<()>) -> Result<()> {
        if cur.len() == k {
            return f(&cur.iter().copied().collect());
        }
        for i in start..ids.len() {
            cur.push(ids[i]);
            rec(ids, k, i + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    for k in 0..=max.min(ids.len()) {
        rec(ids, k, 0, &mut Vec::new(), f)?;
    }
    Ok(())
}

fn touched_size(g: &TriGraph, comp_of: &BTreeMap<Id, (usize, usize)>, a: &IdSet) -> usize {
    let _ = g;
    let comps: BTreeMap<usize, usize> = a.iter().map(|x| comp_of[x]).collect();
    comps.values().sum()
}

fn comp_index(g: &TriGraph) -> BTreeMap<Id, (usize, usize)> {
    let mut m = BTreeMap::new();
    for (i, c) in g.components().into_iter().enumerate() {
        for &x in &c {
            m.insert(x, (i, c.len()));
        }
    }
    m
}

/// Base type key and the map from representative ids onto `a`.
fn base_type(g: &TriGraph, a: &IdSet) -> Result<(String, Vec<Id>)> {
    let (order, code) = canonical_form(g, &IdSet::new(), a)?;
    Ok((code, order))
}

fn representative(g: &TriGraph, order: &[Id]) -> Result<TriGraph> {
    let map: BTreeMap<Id, Id> = order.iter().enumerate().map(|(i, &x)| (x, i as Id)).collect();
    let s: IdSet = order.iter().copied().collect();
    g.induced(&s)?.relabel(&map)
}

fn level_tasks(
    snapshot: &TriGraph,
    k: usize,
    st: &BuilderState,
    cfg: &Config,
    cache: &mut TypeCache,
) -> Result<Vec<TaskRef>> {
    let oracle = StrongOracle::new(snapshot, cfg)?;
    let comp_of = comp_index(snapshot);
    let ids: Vec<Id> = snapshot.ids().into_iter().collect();
    let mut bases: Vec<IdSet> = Vec::new();
    subsets_upto(&ids, st.budgets.max_base, &mut |a| {
        if touched_size(snapshot, &comp_of, a) + k <= st.budgets.max_component
            && oracle.is_strong(snapshot, a, cfg)?
        {
            bases.push(a.clone());
        }
        Ok(())
    })?;
    let mut tasks = Vec::new();
    for (pos, a) in bases.iter().enumerate() {
        let (key, order) = base_type(snapshot, a)?;
        let ck = format!("{key}#{k}");
        if !cache.contains_key(&ck) {
            let rep = representative(snapshot, &order)?;
            let exts = extension_types(&rep, k, &st.policy, cfg, st.budgets.max_candidates)?;
            cache.insert(ck.clone(), ((0..order.len() as Id).collect(), exts));
        }
        let (_, exts) = &cache[&ck];
        for (e, ext) in exts.iter().enumerate() {
            tasks.push(TaskRef {
                code: ext.code.clone(),
                base_pos: pos,
                labelled: ext.labelled.clone(),
                base: a.clone(),
                type_key: ck.clone(),
                ext: e,
            });
        }
    }
    tasks.sort_by(|x, y| {
        (&x.code, x.base_pos, &x.labelled).cmp(&(&y.code, y.base_pos, &y.labelled))
    });
    if !tasks.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(st.seed ^ (st.cursor.round << 32) ^ k as u64);
        let off = rng.gen_range(0..tasks.len());
        tasks.rotate_left(off);
    }
    Ok(tasks)
}

/// The extension of a task, carried onto the concrete base `a` with fresh ids above `m`.
fn concrete(ext: &Extension, snapshot: &TriGraph, a: &IdSet, m: &TriGraph) -> Result<(TriGraph, IdSet)> {
    let (_, order) = base_type(snapshot, a)?;
    let mut map: BTreeMap<Id, Id> = order.iter().enumerate().map(|(i, &x)| (i as Id, x)).collect();
    let first = m.fresh_id().max(snapshot.fresh_id());
    let mut new = IdSet::new();
    for (&v, next) in ext.new.iter().zip(first..) {
        map.insert(v, next);
        new.insert(next);
    }
    Ok((ext.graph.relabel(&map)?, new))
}

/// A copy of `new` over `a` inside `m` with `a ∪ copy ≤ m`.
pub fn realized(m: &TriGraph, c: &TriGraph, a: &IdSet, new: &IdSet, cfg: &Config) -> Result<Option<IdSet>> {
    let oracle = StrongOracle::new(m, cfg)?;
    realized_with(m, &oracle, c, a, new, cfg)
}

fn realized_with(
    m: &TriGraph,
    oracle: &StrongOracle,
    c: &TriGraph,
    a: &IdSet,
    new: &IdSet,
    cfg: &Config,
) -> Result<Option<IdSet>> {
    let targets: IdSet = m.ids().difference(a).copied().collect();
    let mut seen = BTreeSet::new();
    for emb in embeddings_over(c, a, new, m, &targets, false, None) {
        let img: IdSet = emb.image();
        if !seen.insert(img.clone()) {
            continue;
        }
        if oracle.is_strong(m, &img, cfg)? {
            return Ok(Some(img.difference(a).copied().collect()));
        }
    }
    Ok(None)
}

/// Fold one extension `c ⊇ a` into the state's graph; one logged step.
pub fn apply_task(st: &mut BuilderState, a: &IdSet, c: &TriGraph, code: &str, cfg: &Config) -> Result<()> {
    let m = st.graph.clone();
    let new: IdSet = c.ids().difference(a).copied().collect();
    let c0 = m.induced(a)?;
    let before = delta(&m, &m.ids())?;
    let class = classify_extension(c, a, &new, cfg)?;
    let ks = new.len() + st.n as usize - 1;
    let side = if class.minimal && class.i >= 1 {
        Some(is_k_strong(&m, a, &m.ids(), ks, cfg)?.holds)
    } else {
        None
    };
    let r = amalgamate(&c0, &m, c, &st.policy, cfg)?;
    let image: IdSet = new.iter().map(|v| r.embed2.mapping[v]).collect();
    let strong_extension = match side {
        Some(true) => {
            let ab: IdSet = a.union(&image).copied().collect();
            Some(is_k_strong(&r.d, &ab, &r.d.ids(), ks, cfg)?.holds)
        }
        _ => None,
    };
    let after = delta(&r.d, &r.d.ids())?;
    let added: Vec<Id> = r.d.ids().difference(&m.ids()).copied().collect();
    st.steps_done += 1;
    st.log.push(Event {
        step: st.steps_done,
        round: st.cursor.round,
        base: a.iter().copied().collect(),
        code: code.to_string(),
        i: class.i,
        added,
        resolutions: r
            .path
            .iter()
            .map(|s| match &s.resolution {
                Resolution::Free => "free".to_string(),
                Resolution::InternalCopy { onto } => format!("copy {onto:?}"),
            })
            .collect(),
        delta_before: before,
        delta_after: after,
        strong_extension,
    });
    st.graph = r.d;
    Ok(())
}

fn config_of(st: &BuilderState, cfg: &Config) -> Config {
    Config {
        mode: st.mode,
        ..cfg.clone()
    }
}

/// Run until `budgets.steps` steps are done. A budget overrun stops the run
/// with the state intact and the reason recorded.
pub fn run(st: &mut BuilderState, cfg: &Config) -> Result<()> {
    let cfg = config_of(st, cfg);
    let mut cache: TypeCache = BTreeMap::new();
    let mut tasks: Option<(u64, usize, Vec<TaskRef>)> = None;
    let mut idle_round = true;
    while st.steps_done < st.budgets.steps {
        if st.cursor.k > st.budgets.max_ext {
            if idle_round && st.round_graph == st.graph {
                st.stopped = Some("every task within budgets is realized".into());
                return Ok(());
            }
            st.cursor = Cursor {
                round: st.cursor.round + 1,
                k: 1,
                index: 0,
            };
            st.round_graph = st.graph.clone();
            idle_round = true;
        }
        let key = (st.cursor.round, st.cursor.k);
        if tasks.as_ref().is_none_or(|(r, k, _)| (*r, *k) != key) {
            let snap = st.round_graph.clone();
            match level_tasks(&snap, st.cursor.k, st, &cfg, &mut cache) {
                Ok(t) => tasks = Some((key.0, key.1, t)),
                Err(e @ Error::BudgetExceeded { .. }) => {
                    st.stopped = Some(e.to_string());
                    return Ok(());
                }
                Err(e) => return Err(e),
            }
        }
        let list = &tasks.as_ref().unwrap().2;
        if st.cursor.index >= list.len() {
            st.cursor.k += 1;
            st.cursor.index = 0;
            continue;
        }
        let t = list[st.cursor.index].clone();
        st.cursor.index += 1;
        let ext = cache[&t.type_key].1[t.ext].clone();
        match step_task(st, &t, &ext, &cfg) {
            Ok(true) => idle_round = false,
            Ok(false) => {}
            Err(e @ Error::BudgetExceeded { .. }) => {
                st.stopped = Some(e.to_string());
                return Ok(());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn step_task(st: &mut BuilderState, t: &TaskRef, ext: &Extension, cfg: &Config) -> Result<bool> {
    let m = st.graph.clone();
    let comp_of = comp_index(&m);
    if touched_size(&m, &comp_of, &t.base) + ext.new.len() > st.budgets.max_component {
        return Ok(false);
    }
    let oracle = StrongOracle::new(&m, cfg)?;
    if !oracle.is_strong(&m, &t.base, cfg)? {
        return Ok(false);
    }
    let (c, new) = concrete(ext, &st.round_graph, &t.base, &m)?;
    if realized_with(&m, &oracle, &c, &t.base, &new, cfg)?.is_some() {
        return Ok(false);
    }
    apply_task(st, &t.base, &c, &t.code, cfg)?;
    Ok(true)
}

/// Fresh state run to completion.
pub fn build(n: u32, seed: u64, budgets: BuildBudgets, policy: MuPolicy, cfg: &Config) -> Result<BuilderState> {
    if n < 6 {
        return Err(Error::BadParameter(format!("n = {n} (need n >= 6)")));
    }
    if budgets.max_ext == 0 || budgets.max_component == 0 {
        return Err(Error::BadParameter("budgets must be positive".into()));
    }
    let mut st = BuilderState::new(n, seed, budgets, policy, cfg.mode);
    run(&mut st, cfg)?;
    Ok(st)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub satisfied: u64,
    pub violated: u64,
    /// Side condition of the axiom not met, so nothing is demanded.
    pub not_applicable: u64,
    pub out_of_budget: u64,
    /// Violations explained by a finite deficit: the copies of the extension
    /// already in the graph number fewer than μ (axiom 3 only).
    pub below_mu: u64,
    /// First few violations: base and extension code.
    pub examples: Vec<(Vec<Id>, String)>,
}

impl Tally {
    fn violation(&mut self, base: &IdSet, code: &str) {
        self.violated += 1;
        if self.examples.len() < 5 {
            self.examples.push((base.iter().copied().collect(), code.to_string()));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmuReport {
    pub semantics: String,
    pub axiom1: Verdict,
    pub axiom2: Tally,
    pub axiom3: Tally,
}

/// Check the three axioms on `m` for bases of at most `max_base` vertices and
/// extensions of at most `max_ext` vertices. Axioms 2 and 3 report deficits.
pub fn verify_tmu(
    m: &TriGraph,
    policy: &MuPolicy,
    max_base: usize,
    max_ext: usize,
    cfg: &Config,
) -> Result<TmuReport> {
    let axiom1 = check_kmu(m, policy, cfg)?;
    let mut ax2 = Tally::default();
    let mut ax3 = Tally::default();
    let all = m.ids();
    let ids: Vec<Id> = all.iter().copied().collect();
    let mut cache: BTreeMap<String, Vec<Extension>> = BTreeMap::new();
    let n1 = m.n() as usize - 1;
    let mut bases = Vec::new();
    subsets_upto(&ids, max_base, &mut |a| {
        bases.push(a.clone());
        Ok(())
    })?;
    for a in &bases {
        let l_strong = is_l_strong(m, a, &all)?.holds;
        if !l_strong {
            continue;
        }
        let (key, order) = base_type(m, a)?;
        for k in 1..=max_ext {
            let ck = format!("{key}#{k}");
            if !cache.contains_key(&ck) {
                let rep = representative(m, &order)?;
                match extension_types(&rep, k, policy, cfg, cfg.budgets.max_subsets) {
                    Ok(e) => {
                        cache.insert(ck.clone(), e);
                    }
                    Err(Error::BudgetExceeded { .. }) => {
                        ax2.out_of_budget += 1;
                        ax3.out_of_budget += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
            for ext in &cache[&ck] {
                let (c, new) = concrete(ext, m, a, m)?;
                let class = match classify_extension(&c, a, &new, cfg) {
                    Ok(cl) => cl,
                    Err(Error::BudgetExceeded { .. }) => {
                        ax2.out_of_budget += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if !class.minimal {
                    continue;
                }
                if class.i >= 1 {
                    let ks = new.len() + n1;
                    if !is_k_strong(m, a, &all, ks, cfg)?.holds {
                        ax2.not_applicable += 1;
                        continue;
                    }
                    let mut ok = false;
                    let targets: IdSet = all.difference(a).copied().collect();
                    for emb in embeddings_over(&c, a, &new, m, &targets, false, None) {
                        let img = emb.image();
                        if is_k_strong(m, &img, &all, ks, cfg)?.holds {
                            ok = true;
                            break;
                        }
                    }
                    if ok {
                        ax2.satisfied += 1;
                    } else {
                        ax2.violation(a, &ext.code);
                    }
                } else if class.simple {
                    let d = free_amalgam(m, a, &c)?;
                    if check_kmu(&d, policy, cfg)?.holds {
                        ax3.violation(a, &ext.code);
                        let pair = PairOverBase::new(&c, a, &new)?;
                        if chi(m, &pair, cfg)?.chi < mu_value(policy, &pair, cfg)? {
                            ax3.below_mu += 1;
                        }
                    } else {
                        ax3.satisfied += 1;
                    }
                }
            }
        }
    }
    Ok(TmuReport {
        semantics: "finite-approximation".into(),
        axiom1,
        axiom2: ax2,
        axiom3: ax3,
    })
}
