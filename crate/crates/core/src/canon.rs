//! Canonical codes for small structures `(A, B)`: an induced subgraph with a
//! marked base. Two pairs get the same code iff they are isomorphic as pairs.
//!
//! Colour refinement splits the vertices into ordered classes, then every
//! class-respecting ordering is tried and the least edge list wins.

use crate::error::{Error, Result};
use crate::graph::{Id, IdSet, Sort, TriGraph};
use std::collections::BTreeMap;

/// Orderings tried before giving up.
pub const CANON_CAP: u64 = 2_000_000;

fn sort_char(s: Sort) -> char {
    match s {
        Sort::Point => 'p',
        Sort::Line => 'l',
        Sort::Plane => 'e',
    }
}

/// Stable colour classes after refinement, listed in canonical class order.
fn refine(g: &TriGraph, verts: &[Id], init: &BTreeMap<Id, u64>) -> Vec<Vec<Id>> {
    let mut color: BTreeMap<Id, u64> = init.clone();
    let mut classes = usize::MAX;
    loop {
        let sigs: BTreeMap<Id, (u64, Vec<u64>)> = verts
            .iter()
            .map(|&v| {
                let mut nb: Vec<u64> = g
                    .neighbors(v)
                    .iter()
                    .filter_map(|w| color.get(w).copied())
                    .collect();
                nb.sort_unstable();
                (v, (color[&v], nb))
            })
            .collect();
        let mut uniq: Vec<&(u64, Vec<u64>)> = sigs.values().collect();
        uniq.sort();
        uniq.dedup();
        let rank: BTreeMap<&(u64, Vec<u64>), u64> = uniq
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u64))
            .collect();
        let next: BTreeMap<Id, u64> = sigs.iter().map(|(&v, s)| (v, rank[s])).collect();
        let k = uniq.len();
        color = next;
        if k == classes {
            break;
        }
        classes = k;
    }
    let mut by: BTreeMap<u64, Vec<Id>> = BTreeMap::new();
    for &v in verts {
        by.entry(color[&v]).or_default().push(v);
    }
    by.into_values().collect()
}

/// Canonical ordering of `a ∪ b` (base first) and its code.
pub fn canonical_form(g: &TriGraph, a: &IdSet, b: &IdSet) -> Result<(Vec<Id>, String)> {
    canonical_form_labelled(g, a, b, &BTreeMap::new())
}

/// As [`canonical_form`], with extra initial colours for some vertices
/// (used to pin base vertices individually).
pub fn canonical_form_labelled(
    g: &TriGraph,
    a: &IdSet,
    b: &IdSet,
    pins: &BTreeMap<Id, u64>,
) -> Result<(Vec<Id>, String)> {
    g.check_ids(a.iter().chain(b.iter()))?;
    if !a.is_disjoint(b) {
        return Err(Error::BadParameter("base and extension overlap".into()));
    }
    let verts: Vec<Id> = a.iter().chain(b.iter()).copied().collect();
    let init: BTreeMap<Id, u64> = verts
        .iter()
        .map(|&v| {
            let side = b.contains(&v) as u64;
            let pin = pins.get(&v).map_or(0, |p| p + 1);
            (v, (side << 40) | (pin << 8) | g.sort_of(v).code() as u64)
        })
        .collect();
    let classes = refine(g, &verts, &init);
    let mut perms: u64 = 1;
    for c in &classes {
        for k in 2..=c.len() as u64 {
            perms = perms.saturating_mul(k);
        }
    }
    if perms > CANON_CAP {
        return Err(Error::BudgetExceeded {
            what: "canonical labelling orderings",
            needed: perms,
            cap: CANON_CAP,
        });
    }
    let inside: IdSet = verts.iter().copied().collect();
    let mut best: Option<(Vec<(usize, usize)>, Vec<Id>)> = None;
    let mut order: Vec<Id> = Vec::with_capacity(verts.len());
    search(g, &inside, &classes, 0, &mut order, &mut best);
    let (edges, order) = best.unwrap_or_default();
    let base: String = order
        .iter()
        .filter(|v| a.contains(v))
        .map(|&v| sort_char(g.sort_of(v)))
        .collect();
    let ext: String = order
        .iter()
        .filter(|v| b.contains(v))
        .map(|&v| sort_char(g.sort_of(v)))
        .collect();
    let mut code = format!("n{}|{base}/{ext}|", g.n());
    let parts: Vec<String> = edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
    code.push_str(&parts.join(","));
    Ok((order, code))
}

fn search(
    g: &TriGraph,
    inside: &IdSet,
    classes: &[Vec<Id>],
    ci: usize,
    order: &mut Vec<Id>,
    best: &mut Option<(Vec<(usize, usize)>, Vec<Id>)>,
) {
    if ci == classes.len() {
        let pos: BTreeMap<Id, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (&v, &i) in &pos {
            for w in g.neighbors(v) {
                if let Some(&j) = pos.get(w) {
                    if i < j && inside.contains(w) {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| edges < *b) {
            *best = Some((edges, order.clone()));
        }
        return;
    }
    let class = &classes[ci];
    permute(class, &mut vec![false; class.len()], order, &mut |order| {
        search(g, inside, classes, ci + 1, order, best)
    });
}

fn permute(
    items: &[Id],
    used: &mut Vec<bool>,
    order: &mut Vec<Id>,
    f: &mut dyn FnMut(&mut Vec<Id>),
) {
    if used.iter().all(|&u| u) {
        f(order);
        return;
    }
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        order.push(items[i]);
        permute(items, used, order, f);
        order.pop();
        used[i] = false;
    }
}

pub fn canonical_code(g: &TriGraph, a: &IdSet, b: &IdSet) -> Result<String> {
    Ok(canonical_form(g, a, b)?.1)
}

/// Code of a whole graph with no base.
pub fn graph_code(g: &TriGraph) -> Result<String> {
    canonical_code(g, &IdSet::new(), &g.ids())
}
