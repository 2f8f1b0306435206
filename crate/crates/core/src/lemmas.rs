//! Executable lemma suites: exact numerology, exhaustive residue
//! configurations and seeded randomized laws. Each suite returns a report
//! listing the instances it tried and any counterexamples.

use crate::amalgam::{amalgamate, classify_extension, decompose_minimal, free_amalgam_map, is_embedding};
use crate::builder::realized;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::gen::{random_extension, random_extension_with, random_graph, random_simple_extension, twin, random_residue, random_subset, rng, Class};
use crate::graph::{GraphBuilder, Id, IdSet, Sort, TriGraph};
use crate::kclass::check_k;
use crate::mu::{check_kmu, find_chi_violation, MuPolicy};
use crate::predim::{closure_report, delta, delta1, delta_rel, find_violation, is_k_strong, is_l_strong};
use crate::verdict::{Certificate, KCondition};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    /// The first few counterexamples.
    pub counterexamples: Vec<String>,
    pub values: BTreeMap<String, i64>,
}

impl LemmaReport {
    fn new(name: &str) -> LemmaReport {
        LemmaReport {
            name: name.to_string(),
            ..LemmaReport::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 10 {
                self.counterexamples.push(what());
            }
        }
    }

    fn bump(&mut self, key: &str) {
        *self.values.entry(key.to_string()).or_default() += 1;
    }

    pub fn holds(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

fn strong(g: &TriGraph, a: &IdSet, b: &IdSet, cfg: &Config) -> Result<bool> {
    Ok(find_violation(g, a, b, None, cfg)?.is_none())
}

fn ids(s: &IdSet) -> String {
    format!("{:?}", s.iter().collect::<Vec<_>>())
}

/// δ of the one- and two-vertex graphs and the complete flag against their
/// closed forms in `n`.
pub fn delta_numerology(n: u32) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("delta numerology");
    let m = n as i64 - 1;
    let cases: Vec<(&str, TriGraph, i64)> = vec![
        ("point", GraphBuilder::new(n).point(0).build(), 2 * m),
        ("line", GraphBuilder::new(n).line(0).build(), 3 * m - 1),
        ("plane", GraphBuilder::new(n).plane(0).build(), 2 * m),
        ("point-line edge", GraphBuilder::new(n).point(0).line(1).edge(0, 1).build(), 3 * m),
        ("complete flag", crate::graph::flag_graph(n, 0, 1, 2), 3 * m + 1),
    ];
    for (name, g, want) in cases {
        let got = delta(&g, &g.ids())?;
        r.values.insert(name.to_string(), got);
        r.check(got == want, || format!("{name}: {got} != {want}"));
    }
    Ok(r)
}

/// Two points, the line joining them and a plane through the line:
/// `δ(e/B) = 1 > δ(e/A) = 0`.
pub fn non_submodularity(n: u32) -> Result<LemmaReport> {
    let mut r = LemmaReport::new(&format!("non-submodularity n={n}"));
    let g = GraphBuilder::new(n)
        .point(0)
        .point(1)
        .line(2)
        .plane(3)
        .edges(&[(0, 2), (1, 2), (2, 3), (0, 3), (1, 3)])
        .build();
    let e = IdSet::from([3]);
    let over_a = delta_rel(&g, &e, &IdSet::from([0, 1]))?;
    let over_b = delta_rel(&g, &e, &IdSet::from([0, 1, 2]))?;
    r.values.insert("delta(e/A)".into(), over_a);
    r.values.insert("delta(e/B)".into(), over_b);
    r.check(over_a == 0 && over_b == 1, || format!("δ(e/A)={over_a} δ(e/B)={over_b}"));
    Ok(r)
}

/// `δ(A/x) = δ₁(A)` for random `A ⊆ res(x)`.
pub fn residue_identity(seed: u64, count: usize, max: usize, n: u32) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("residue identity");
    let mut rg = rng(seed);
    for _ in 0..count {
        let (g, x, a) = random_residue(&mut rg, n, max)?;
        let lhs = delta_rel(&g, &a, &IdSet::from([x]))?;
        let rhs = delta1(&g, &a)?;
        r.check(lhs == rhs, || format!("{}: δ(A/x)={lhs} δ₁(A)={rhs}", g.to_json()));
    }
    Ok(r)
}

/// Plane 0 with endpoints 1 and `k` joined by a path of `k` edges inside its residue.
pub fn residue_path_graph(n: u32, k: u32) -> Result<TriGraph> {
    let mut g = TriGraph::new(n);
    g.add_vertex(0, Sort::Plane)?;
    let mut sort = Sort::Point;
    for v in 1..=k + 1 {
        g.add_vertex(v as Id, sort)?;
        g.add_edge(0, v as Id)?;
        if v > 1 {
            g.add_edge(v as Id - 1, v as Id)?;
        }
        sort = if sort == Sort::Point { Sort::Line } else { Sort::Point };
    }
    Ok(g)
}

/// `{a, b, x}` is strong in its extension by a residue path of `k` edges iff `k ≥ n − 1`.
pub fn path_extension(n: u32, ks: &[u32], cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new(&format!("path extension n={n}"));
    for &k in ks {
        let g = residue_path_graph(n, k)?;
        let a = IdSet::from([0, 1, k as Id + 1]);
        let s = strong(&g, &a, &g.ids(), cfg)?;
        r.values.insert(format!("k={k}"), s as i64);
        r.check(s == (k + 1 >= n), || format!("k={k}: strong={s}"));
    }
    Ok(r)
}

/// Additivity, strongness transfer and the K-failure classification for free
/// amalgams of random members of K.
pub fn free_amalgam_laws(seed: u64, count: usize, max_d: usize, n: u32, cfg: &Config) -> Result<Vec<LemmaReport>> {
    let mut add = LemmaReport::new("free amalgam additivity");
    let mut transfer = LemmaReport::new("free amalgam strongness transfer");
    let mut ink = LemmaReport::new("free amalgam K-failures have i = 0");
    let mut rg = rng(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < count && attempts < 50 * count {
        attempts += 1;
        let paired = rg.gen_bool(0.35);
        let s0 = if paired { rg.gen_range(2..=4) } else { rg.gen_range(0..=3) };
        let c0 = random_graph(&mut rg, n, s0, &Class::K, cfg)?;
        let room = max_d - c0.len();
        let e1 = rg.gen_range(1..=room / 2);
        let e2 = rg.gen_range(1..=room - e1);
        let density = if paired { 0.95 } else { 0.5 };
        let e2 = if paired { e2.min(2) } else { e2 };
        let special = if paired && rg.gen_bool(0.6) {
            random_simple_extension(&mut rg, &c0, &Class::K, cfg)?
        } else {
            None
        };
        let c2 = match special {
            Some(c) => Some(c),
            None => random_extension_with(&mut rg, &c0, e2, true, density, &Class::K, cfg)?,
        };
        let Some(c2) = c2 else {
            continue;
        };
        let a = c0.ids();
        let c1 = if paired {
            twin(&c2, &a)?
        } else {
            match random_extension(&mut rg, &c0, e1, false, &Class::K, cfg)? {
                Some(c) => c,
                None => continue,
            }
        };
        done += 1;
        let (d, map) = free_amalgam_map(&c1, &a, &c2)?;
        let c2_img: IdSet = c2.ids().iter().map(|x| map[x]).collect();
        let free1 = c1.len() - a.len();
        let mut k = 0;
        while k < free1 && is_k_strong(&c1, &a, &c1.ids(), k + 1, cfg)?.holds {
            k += 1;
        }
        let c0_strong = k == free1;
        let tag = || format!("C0={} C1={} C2={}", c0.to_json(), c1.to_json(), c2.to_json());
        if c0_strong {
            let lhs = delta(&d, &d.ids())?;
            let rhs = delta(&c1, &c1.ids())? + delta(&c2, &c2.ids())? - delta(&c0, &a)?;
            add.check(lhs == rhs, || format!("{} δ(D)={lhs} sum={rhs}", tag()));
        }
        let t1 = strong(&d, &c1.ids(), &d.ids(), cfg)?;
        let t2 = is_k_strong(&d, &c2_img, &d.ids(), k, cfg)?.holds;
        transfer.check(t1 && t2, || format!("{} k={k} C1≤D={t1} C2≤kD={t2}", tag()));
        // minimal first step of C2 over C0
        let new2: IdSet = c2.ids().difference(&a).copied().collect();
        let chain = match decompose_minimal(&c2, &a, &new2, cfg) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        let step: IdSet = a.union(&chain[1]).copied().collect();
        let c2m = c2.induced(&step)?;
        let added: IdSet = step.difference(&a).copied().collect();
        let i = classify_extension(&c2m, &a, &added, cfg)?.i;
        if k + 1 >= n as usize || c0_strong {
            let (dm, _) = free_amalgam_map(&c1, &a, &c2m)?;
            if !check_k(&dm, cfg)?.holds {
                ink.bump(&format!("K-failures at i={i}"));
                let mut ok = i == 0;
                if ok && c0_strong {
                    ok = realized(&c1, &c2m, &a, &added, cfg)?.is_some();
                }
                ink.check(ok, || format!("{} i={i}", tag()));
            } else {
                ink.instances += 1;
            }
        }
    }
    Ok(vec![add, transfer, ink])
}

/// Every labelled configuration `A ⊆ res(x)` with `|A| ≤ max`, `A` and `Ax`
/// in K and `δ(x/A) ≥ 0`.
pub fn residue_degree(n: u32, max: usize, cfg: &Config) -> Result<Vec<LemmaReport>> {
    let mut r1 = LemmaReport::new("residue degree: point or plane");
    let mut r2 = LemmaReport::new("residue degree: line");
    for x_sort in [Sort::Plane, Sort::Point, Sort::Line] {
        let sorts: [Sort; 2] = match x_sort {
            Sort::Line => [Sort::Point, Sort::Plane],
            s => [s.dual(), Sort::Line],
        };
        for size in 1..=max {
            for first in 0..=size {
                let mut base = TriGraph::new(n);
                base.add_vertex(0, x_sort)?;
                for v in 1..=size {
                    let s = if v <= first { sorts[0] } else { sorts[1] };
                    base.add_vertex(v as Id, s)?;
                    base.add_edge(0, v as Id)?;
                }
                let pairs: Vec<(Id, Id)> = (1..=first as Id)
                    .flat_map(|u| (first as Id + 1..=size as Id).map(move |v| (u, v)))
                    .collect();
                for mask in 0u64..(1 << pairs.len()) {
                    let mut g = base.clone();
                    for (b, &(u, v)) in pairs.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            g.add_edge(u, v)?;
                        }
                    }
                    let a: IdSet = (1..=size as Id).collect();
                    let r = if x_sort == Sort::Line { &mut r2 } else { &mut r1 };
                    r.bump("configurations");
                    if delta_rel(&g, &IdSet::from([0]), &a)? < 0 {
                        continue;
                    }
                    r.bump("delta(x/A) >= 0");
                    if !check_k(&g, cfg)?.holds || !check_k(&g.induced(&a)?, cfg)?.holds {
                        continue;
                    }
                    let count = |s: Sort| a.iter().filter(|&&v| g.sort_of(v) == s).count();
                    if x_sort == Sort::Line {
                        let ok = count(Sort::Point) <= 1 && count(Sort::Plane) <= 1;
                        r2.check(ok, || g.to_json());
                    } else {
                        let lines: Vec<Id> = a.iter().copied().filter(|&v| g.sort_of(v) == Sort::Line).collect();
                        let ok = match lines.as_slice() {
                            [] => a.len() <= 2,
                            [l] => a.iter().all(|&v| v == *l || g.adjacent(v, *l)),
                            _ => false,
                        };
                        r1.check(ok, || g.to_json());
                    }
                }
            }
        }
    }
    Ok(vec![r1, r2])
}

/// Closure against the intersection of all strong supersets, plus strongness,
/// idempotence, monotonicity and closure of strong sets under intersection.
pub fn closure_laws(seed: u64, count: usize, max: usize, n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("closure oracle");
    let mut rg = rng(seed);
    let policy = MuPolicy::default();
    for _ in 0..count {
        let size = rg.gen_range(1..=max);
        let m = random_graph(&mut rg, n, size, &Class::Kmu(policy.clone()), cfg)?;
        let all = m.ids();
        let list: Vec<Id> = all.iter().copied().collect();
        let mut strong_sets: Vec<IdSet> = Vec::new();
        for mask in 0u64..(1 << list.len()) {
            let s: IdSet = (0..list.len()).filter(|b| mask >> b & 1 == 1).map(|b| list[b]).collect();
            if strong(&m, &s, &all, cfg)? {
                strong_sets.push(s);
            }
        }
        let a = random_subset(&mut rg, &all);
        let extra = random_subset(&mut rg, &all);
        let a2: IdSet = a.union(&extra).copied().collect();
        let brute = strong_sets
            .iter()
            .filter(|s| a.is_subset(s))
            .fold(all.clone(), |acc, s| acc.intersection(s).copied().collect());
        let tag = || format!("{} A={}", m.to_json(), ids(&a));
        let rep = match closure_report(&m, &a, cfg) {
            Ok(rep) => rep,
            Err(e @ Error::OracleMismatch { .. }) => {
                r.check(false, || format!("{} {e}", tag()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let cl = rep.set;
        r.check(cl == brute, || format!("{} cl={} brute={}", tag(), ids(&cl), ids(&brute)));
        r.check(strong(&m, &cl, &all, cfg)?, || format!("{} closure not strong", tag()));
        let again = closure_report(&m, &cl, cfg)?.set;
        r.check(again == cl, || format!("{} not idempotent", tag()));
        let cl2 = closure_report(&m, &a2, cfg)?.set;
        r.check(cl.is_subset(&cl2), || format!("{} not monotone in {}", tag(), ids(&a2)));
        for _ in 0..10 {
            let x = &strong_sets[rg.gen_range(0..strong_sets.len())];
            let y = &strong_sets[rg.gen_range(0..strong_sets.len())];
            let meet: IdSet = x.intersection(y).copied().collect();
            r.check(strong(&m, &meet, &all, cfg)?, || {
                format!("{} {}∩{} not strong", m.to_json(), ids(x), ids(y))
            });
        }
    }
    Ok(r)
}

/// Random triples `C0 ≤ C1, C2` in K_μ amalgamated end to end, plus the
/// bare-plane fold.
pub fn amalgamation_e2e(seed: u64, count: usize, max: usize, n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("amalgamation end to end");
    let policy = MuPolicy::default();
    let class = Class::Kmu(policy.clone());
    let mut rg = rng(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < count && attempts < 50 * count {
        attempts += 1;
        let paired = rg.gen_bool(0.35);
        let s0 = if paired { rg.gen_range(2..=4) } else { rg.gen_range(0..=3) };
        let c0 = random_graph(&mut rg, n, s0, &class, cfg)?;
        if c0.len() >= max {
            continue;
        }
        let e1 = rg.gen_range(1..=max - c0.len());
        let e2 = rg.gen_range(1..=max - c0.len());
        let density = if paired { 0.95 } else { 0.5 };
        let e2 = if paired { e2.min(2) } else { e2 };
        let special = if paired && rg.gen_bool(0.6) {
            random_simple_extension(&mut rg, &c0, &class, cfg)?
        } else {
            None
        };
        let c2 = match special {
            Some(c) => Some(c),
            None => random_extension_with(&mut rg, &c0, e2, true, density, &class, cfg)?,
        };
        let Some(c2) = c2 else {
            continue;
        };
        let c1 = if paired {
            twin(&c2, &c0.ids())?
        } else {
            match random_extension(&mut rg, &c0, e1, true, &class, cfg)? {
                Some(c) => c,
                None => continue,
            }
        };
        done += 1;
        let tag = || format!("C0={} C1={} C2={}", c0.to_json(), c1.to_json(), c2.to_json());
        match amalgamate(&c0, &c1, &c2, &policy, cfg) {
            Ok(res) => {
                for st in &res.path {
                    r.bump(match st.resolution {
                        crate::amalgam::Resolution::Free => "free steps",
                        crate::amalgam::Resolution::InternalCopy { .. } => "internal copies",
                    });
                }
                let d = &res.d;
                let ok = check_kmu(d, &policy, cfg)?.holds
                    && is_embedding(&c1, d, &res.embed1)
                    && is_embedding(&c2, d, &res.embed2)
                    && strong(d, &res.embed1.image(), &d.ids(), cfg)?
                    && strong(d, &res.embed2.image(), &d.ids(), cfg)?;
                r.check(ok, tag);
            }
            Err(Error::BudgetExceeded { .. }) => r.bump("over budget"),
            Err(e) => r.check(false, || format!("{} {e}", tag())),
        }
    }
    let c0 = GraphBuilder::new(n).point(0).point(1).build();
    let c1 = GraphBuilder::new(n).point(0).point(1).plane(5).edges(&[(0, 5), (1, 5)]).build();
    let c2 = GraphBuilder::new(n).point(0).point(1).plane(2).edges(&[(0, 2), (1, 2)]).build();
    let res = amalgamate(&c0, &c1, &c2, &policy, cfg)?;
    let folded = matches!(
        res.path.first().map(|s| &s.resolution),
        Some(crate::amalgam::Resolution::InternalCopy { .. })
    );
    r.check(folded && res.d == c1, || "bare plane not folded".into());
    Ok(r)
}

/// Two bare planes over two points and a short cycle in a plane residue are
/// both caught twice: by a class condition and by the count bound.
pub fn mu_chi_guards(n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("mu/chi guards");
    let policy = MuPolicy::default();
    let two = GraphBuilder::new(n)
        .point(0)
        .point(1)
        .plane(2)
        .plane(3)
        .edges(&[(0, 2), (1, 2), (0, 3), (1, 3)])
        .build();
    let cycle_len = 2 * (n as Id - 1);
    let mut cyc = TriGraph::new(n);
    cyc.add_vertex(100, Sort::Plane)?;
    for i in 0..cycle_len {
        cyc.add_vertex(i, if i % 2 == 0 { Sort::Point } else { Sort::Line })?;
        cyc.add_edge(100, i)?;
    }
    for i in 0..cycle_len {
        cyc.add_edge(i, (i + 1) % cycle_len)?;
    }
    for (name, g, cond) in [("two planes", &two, KCondition::C3), ("short residue cycle", &cyc, KCondition::C5)] {
        let k = check_k(g, cfg)?;
        r.check(k.k_condition() == Some(cond), || format!("{name}: {:?}", k.certificate));
        let chi = find_chi_violation(g, &policy, cfg)?;
        let (c, m) = match chi.and_then(|v| v.certificate) {
            Some(Certificate::Chi { chi, mu, .. }) => (chi as i64, mu as i64),
            _ => (0, 0),
        };
        r.values.insert(format!("{name} chi"), c);
        r.values.insert(format!("{name} mu"), m);
        r.check(c > m && m >= 1, || format!("{name}: chi={c} mu={m}"));
    }
    Ok(r)
}

/// `δ(C/A) ≥ δ(C/B)` whenever `AC ≤_L BC`, `B ∩ C = ∅` and `C` is strong over `B`.
pub fn conditional_submodularity(seed: u64, count: usize, n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("conditional submodularity");
    let mut rg = rng(seed);
    let mut tries = 0;
    while (r.instances as usize) < count && tries < 200 * count {
        tries += 1;
        let size = rg.gen_range(2..=9);
        let g = random_graph(&mut rg, n, size, &Class::K, cfg)?;
        let all = g.ids();
        let b = random_subset(&mut rg, &all);
        let a = random_subset(&mut rg, &b);
        let rest: IdSet = all.difference(&b).copied().collect();
        let c = random_subset(&mut rg, &rest);
        if c.is_empty() {
            continue;
        }
        let ac: IdSet = a.union(&c).copied().collect();
        let bc: IdSet = b.union(&c).copied().collect();
        if !is_l_strong(&g, &ac, &bc)?.holds || !strong(&g, &b, &bc, cfg)? {
            continue;
        }
        let lhs = delta_rel(&g, &c, &a)?;
        let rhs = delta_rel(&g, &c, &b)?;
        r.check(lhs >= rhs, || {
            format!("{} A={} B={} C={} {lhs}<{rhs}", g.to_json(), ids(&a), ids(&b), ids(&c))
        });
    }
    Ok(r)
}

/// `A ≤ C` and `b` a point or plane of `A` give `A₀b ≤ C₀b` on the residue traces.
pub fn strong_residue(seed: u64, count: usize, n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("strongness restricts to residues");
    let mut rg = rng(seed);
    let mut tries = 0;
    while (r.instances as usize) < count && tries < 200 * count {
        tries += 1;
        let size = rg.gen_range(2..=10);
        let c = random_graph(&mut rg, n, size, &Class::K, cfg)?;
        let all = c.ids();
        let a = random_subset(&mut rg, &all);
        let bs: Vec<Id> = a.iter().copied().filter(|&x| c.sort_of(x) != Sort::Line).collect();
        if bs.is_empty() || !strong(&c, &a, &all, cfg)? {
            continue;
        }
        let b = bs[rg.gen_range(0..bs.len())];
        let res = c.residue(b)?;
        let mut a0b: IdSet = a.intersection(&res).copied().collect();
        let mut c0b = res.clone();
        a0b.insert(b);
        c0b.insert(b);
        let ok = strong(&c, &a0b, &c0b, cfg)?;
        r.check(ok, || format!("{} A={} b={b}", c.to_json(), ids(&a)));
    }
    Ok(r)
}

/// `δ(B/Az) ≤ δ(B/A) − (n − 2)` for an `E²` edge from `A` to `B` induced by a
/// line `z` outside `AB`, when `A, AB ≤_L N`.
pub fn induced_line_drop(seed: u64, count: usize, n: u32, cfg: &Config) -> Result<LemmaReport> {
    let mut r = LemmaReport::new("induced-line drop");
    let mut rg = rng(seed);
    let mut tries = 0;
    while (r.instances as usize) < count && tries < 400 * count {
        tries += 1;
        let size = rg.gen_range(3..=10);
        let g = random_graph(&mut rg, n, size, &Class::K, cfg)?;
        let lines: Vec<Id> = g.ids_of(Sort::Line).into_iter().collect();
        let Some(&z) = lines.get(rg.gen_range(0..lines.len().max(1))) else {
            continue;
        };
        let pts: Vec<Id> = g.neighbors_of_sort(z, Sort::Point).collect();
        let pls: Vec<Id> = g.neighbors_of_sort(z, Sort::Plane).collect();
        if pts.is_empty() || pls.is_empty() {
            continue;
        }
        let p = pts[rg.gen_range(0..pts.len())];
        let e = pls[rg.gen_range(0..pls.len())];
        let (x, y) = if rg.gen_bool(0.5) { (p, e) } else { (e, p) };
        let all = g.ids();
        let pool: IdSet = all.iter().copied().filter(|&v| v != z && v != x && v != y).collect();
        let mut a = random_subset(&mut rg, &pool);
        a.insert(x);
        let rest: IdSet = pool.difference(&a).copied().collect();
        let mut b = random_subset(&mut rg, &rest);
        b.insert(y);
        let ab: IdSet = a.union(&b).copied().collect();
        if !is_l_strong(&g, &a, &all)?.holds || !is_l_strong(&g, &ab, &all)?.holds {
            continue;
        }
        let mut az = a.clone();
        az.insert(z);
        let lhs = delta_rel(&g, &b, &az)?;
        let rhs = delta_rel(&g, &b, &a)? - (n as i64 - 2);
        r.check(lhs <= rhs, || format!("{} A={} B={} z={z}", g.to_json(), ids(&a), ids(&b)));
    }
    Ok(r)
}

/// Work done by [`run_suite`]: `1` is quick, larger values scale the
/// randomized instance counts.
type Task<'a> = Box<dyn Fn() -> Result<Vec<LemmaReport>> + Send + Sync + 'a>;

fn suite_tasks(budget: u32, cfg: &Config) -> Vec<Task<'_>> {
    let b = budget.max(1) as usize;
    vec![
        Box::new(move || {
            let mut v = vec![delta_numerology(6)?];
            for n in [6, 7, 8] {
                v.push(non_submodularity(n)?);
            }
            v.push(residue_identity(1, 100 * b, 8, 6)?);
            v.push(path_extension(6, &[4, 5, 6], cfg)?);
            Ok(v)
        }),
        Box::new(move || free_amalgam_laws(2, 60 * b, 12, 6, cfg)),
        Box::new(move || residue_degree(6, 3 + b.min(3), cfg)),
        Box::new(move || Ok(vec![closure_laws(3, 40 * b, 10, 6, cfg)?])),
        Box::new(move || Ok(vec![amalgamation_e2e(4, 20 * b, 8, 6, cfg)?, mu_chi_guards(6, cfg)?])),
        Box::new(move || {
            Ok(vec![
                conditional_submodularity(5, 60 * b, 6, cfg)?,
                strong_residue(6, 60 * b, 6, cfg)?,
                induced_line_drop(7, 30 * b, 6, cfg)?,
            ])
        }),
    ]
}

/// Every suite at scale `budget`, in a fixed order.
pub fn run_suite(budget: u32, cfg: &Config) -> Result<Vec<LemmaReport>> {
    run_suite_jobs(budget, 1, cfg)
}

/// As [`run_suite`] spread over `jobs` threads; the reports do not depend on `jobs`.
pub fn run_suite_jobs(budget: u32, jobs: usize, cfg: &Config) -> Result<Vec<LemmaReport>> {
    let tasks = suite_tasks(budget, cfg);
    let mut results: Vec<Option<Result<Vec<LemmaReport>>>> = (0..tasks.len()).map(|_| None).collect();
    if jobs <= 1 {
        for (slot, t) in results.iter_mut().zip(&tasks) {
            *slot = Some(t());
        }
    } else {
        let next = AtomicUsize::new(0);
        let slots = Mutex::new(&mut results);
        std::thread::scope(|s| {
            for _ in 0..jobs.min(tasks.len()) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= tasks.len() {
                        break;
                    }
                    let r = tasks[i]();
                    slots.lock().expect("workers do not panic")[i] = Some(r);
                });
            }
        });
    }
    let mut out = Vec::new();
    for r in results {
        out.extend(r.expect("every task ran")?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn exact_suites() {
        let r = delta_numerology(6).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["complete flag"], 16);
        for n in [6, 7, 8] {
            assert!(non_submodularity(n).unwrap().holds());
        }
        let p = path_extension(6, &[4, 5, 6], &cfg()).unwrap();
        assert!(p.holds(), "{p:?}");
        assert_eq!((p.values["k=4"], p.values["k=5"], p.values["k=6"]), (0, 1, 1));
        assert!(mu_chi_guards(6, &cfg()).unwrap().holds());
    }

    #[test]
    fn small_random_suites() {
        assert!(residue_identity(9, 50, 8, 6).unwrap().holds());
        for r in residue_degree(6, 4, &cfg()).unwrap() {
            assert!(r.holds(), "{r:?}");
        }
    }
}
