//! Finite 3-sorted incidence graphs.
//!
//! Vertices are points, lines or planes. A point-line or line-plane pair is an
//! `E` edge; a point-plane pair is an `E2` edge. Because the edge kind is fixed by
//! the sorts of its endpoints, a single adjacency relation stores both. Flags
//! (point, line, plane triples with all three incidences) are always derived.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Id = u32;
pub type IdSet = BTreeSet<Id>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Point,
    Line,
    Plane,
}

impl Sort {
    /// Swap points and planes.
    pub fn dual(self) -> Sort {
        match self {
            Sort::Point => Sort::Plane,
            Sort::Line => Sort::Line,
            Sort::Plane => Sort::Point,
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Sort::Point => 0,
            Sort::Line => 1,
            Sort::Plane => 2,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Point => "point",
            Sort::Line => "line",
            Sort::Plane => "plane",
        })
    }
}

/// The kind of incidence two sorts may carry, if any.
pub fn edge_kind(a: Sort, b: Sort) -> Option<EdgeKind> {
    match (a, b) {
        (Sort::Line, Sort::Point)
        | (Sort::Point, Sort::Line)
        | (Sort::Line, Sort::Plane)
        | (Sort::Plane, Sort::Line) => Some(EdgeKind::E),
        (Sort::Point, Sort::Plane) | (Sort::Plane, Sort::Point) => Some(EdgeKind::E2),
        _ => None,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    E,
    E2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flag {
    pub p: Id,
    pub l: Id,
    pub e: Id,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub mapping: BTreeMap<Id, Id>,
    pub base: IdSet,
}

impl Embedding {
    pub fn identity(ids: &IdSet) -> Embedding {
        Embedding {
            mapping: ids.iter().map(|&i| (i, i)).collect(),
            base: ids.clone(),
        }
    }

    pub fn image(&self) -> IdSet {
        self.mapping.values().copied().collect()
    }

    pub fn apply(&self, x: Id) -> Option<Id> {
        self.mapping.get(&x).copied()
    }

    pub fn inverse(&self) -> Embedding {
        Embedding {
            mapping: self.mapping.iter().map(|(&a, &b)| (b, a)).collect(),
            base: self.base.clone(),
        }
    }
}

/// Serialized through [`GraphDoc`]; embedded graphs accept any `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphDoc", try_from = "GraphDoc")]
pub struct TriGraph {
    n: u32,
    verts: BTreeMap<Id, Sort>,
    adj: BTreeMap<Id, IdSet>,
}

impl TriGraph {
    pub fn new(n: u32) -> TriGraph {
        TriGraph {
            n,
            verts: BTreeMap::new(),
            adj: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, id: Id) -> bool {
        self.verts.contains_key(&id)
    }

    pub fn sort(&self, id: Id) -> Result<Sort> {
        self.verts.get(&id).copied().ok_or(Error::UnknownId(id))
    }

    pub fn sort_of(&self, id: Id) -> Sort {
        self.verts[&id]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Id, Sort)> + '_ {
        self.verts.iter().map(|(&i, &s)| (i, s))
    }

    pub fn ids(&self) -> IdSet {
        self.verts.keys().copied().collect()
    }

    pub fn ids_of(&self, sort: Sort) -> IdSet {
        self.vertices()
            .filter(|&(_, s)| s == sort)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_id(&self) -> Option<Id> {
        self.verts.keys().next_back().copied()
    }

    pub fn fresh_id(&self) -> Id {
        self.max_id().map_or(0, |m| m + 1)
    }

    pub fn neighbors(&self, id: Id) -> &IdSet {
        &self.adj[&id]
    }

    pub fn adjacent(&self, a: Id, b: Id) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn add_vertex(&mut self, id: Id, sort: Sort) -> Result<()> {
        if self.verts.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        self.verts.insert(id, sort);
        self.adj.insert(id, IdSet::new());
        Ok(())
    }

    fn check_pair(&self, a: Id, b: Id, want: Option<EdgeKind>) -> Result<()> {
        let sa = self.sort(a)?;
        let sb = self.sort(b)?;
        let kind = if a == b { None } else { edge_kind(sa, sb) };
        let label = match want {
            Some(EdgeKind::E2) => "e2",
            _ => "e",
        };
        match (kind, want) {
            (None, _) => Err(Error::SortViolation {
                kind: label,
                a,
                b,
                sa,
                sb,
            }),
            (Some(k), Some(w)) if k != w => Err(Error::SortViolation {
                kind: label,
                a,
                b,
                sa,
                sb,
            }),
            _ => Ok(()),
        }
    }

    /// Add an incidence; its kind is inferred from the sorts.
    pub fn add_edge(&mut self, a: Id, b: Id) -> Result<()> {
        self.check_pair(a, b, None)?;
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn add_e(&mut self, a: Id, b: Id) -> Result<()> {
        self.check_pair(a, b, Some(EdgeKind::E))?;
        self.add_edge(a, b)
    }

    pub fn add_e2(&mut self, a: Id, b: Id) -> Result<()> {
        self.check_pair(a, b, Some(EdgeKind::E2))?;
        self.add_edge(a, b)
    }

    /// All edges as normalized `(min, max)` pairs, in ascending order.
    pub fn edges(&self) -> Vec<(Id, Id)> {
        let mut out = Vec::new();
        for (&a, nb) in &self.adj {
            for &b in nb.range(a + 1..) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn e_edges(&self) -> Vec<(Id, Id)> {
        self.edges()
            .into_iter()
            .filter(|&(a, b)| edge_kind(self.sort_of(a), self.sort_of(b)) == Some(EdgeKind::E))
            .collect()
    }

    pub fn e2_edges(&self) -> Vec<(Id, Id)> {
        self.edges()
            .into_iter()
            .filter(|&(a, b)| edge_kind(self.sort_of(a), self.sort_of(b)) == Some(EdgeKind::E2))
            .collect()
    }

    pub fn check_ids<'a>(&self, s: impl IntoIterator<Item = &'a Id>) -> Result<()> {
        for &i in s {
            if !self.contains(i) {
                return Err(Error::UnknownId(i));
            }
        }
        Ok(())
    }

    pub fn induced(&self, s: &IdSet) -> Result<TriGraph> {
        self.check_ids(s)?;
        let mut g = TriGraph::new(self.n);
        for &i in s {
            g.verts.insert(i, self.verts[&i]);
            g.adj
                .insert(i, self.adj[&i].intersection(s).copied().collect());
        }
        Ok(g)
    }

    pub fn residue(&self, x: Id) -> Result<IdSet> {
        self.sort(x)?;
        Ok(self.adj[&x].clone())
    }

    /// Neighbours of `x` of the given sort.
    pub fn neighbors_of_sort(&self, x: Id, sort: Sort) -> impl Iterator<Item = Id> + '_ {
        self.adj[&x]
            .iter()
            .copied()
            .filter(move |&y| self.verts[&y] == sort)
    }

    pub fn flags(&self) -> Vec<Flag> {
        let mut out = Vec::new();
        for (p, s) in self.vertices() {
            if s != Sort::Point {
                continue;
            }
            for l in self.neighbors_of_sort(p, Sort::Line) {
                for e in self.neighbors_of_sort(l, Sort::Plane) {
                    if self.adjacent(p, e) {
                        out.push(Flag { p, l, e });
                    }
                }
            }
        }
        out
    }

    pub fn is_flag(&self, p: Id, l: Id, e: Id) -> bool {
        self.verts.get(&p) == Some(&Sort::Point)
            && self.verts.get(&l) == Some(&Sort::Line)
            && self.verts.get(&e) == Some(&Sort::Plane)
            && self.adjacent(p, l)
            && self.adjacent(l, e)
            && self.adjacent(p, e)
    }

    /// Lines inducing the E2 edge `{p, e}`; empty means non-induced.
    pub fn is_induced_edge(&self, p: Id, e: Id) -> Result<Vec<Id>> {
        self.sort(p)?;
        self.sort(e)?;
        let (p, e) = match (self.sort_of(p), self.sort_of(e)) {
            (Sort::Point, Sort::Plane) => (p, e),
            (Sort::Plane, Sort::Point) => (e, p),
            _ => return Err(Error::NotAnE2Edge(p, e)),
        };
        if !self.adjacent(p, e) {
            return Err(Error::NotAnE2Edge(p, e));
        }
        Ok(self
            .neighbors_of_sort(p, Sort::Line)
            .filter(|&l| self.adjacent(l, e))
            .collect())
    }

    /// Connected components of the induced subgraph on `s`, each as an id set,
    /// ordered by least element.
    pub fn components_of(&self, s: &IdSet) -> Vec<IdSet> {
        let mut seen = IdSet::new();
        let mut out = Vec::new();
        for &start in s {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = IdSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[&v] {
                    if s.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<IdSet> {
        self.components_of(&self.ids())
    }

    /// Point/plane swap.
    pub fn dual(&self) -> TriGraph {
        TriGraph {
            n: self.n,
            verts: self.verts.iter().map(|(&i, &s)| (i, s.dual())).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Rename vertices through `map`; ids missing from `map` are kept.
    pub fn relabel(&self, map: &BTreeMap<Id, Id>) -> Result<TriGraph> {
        let f = |i: Id| map.get(&i).copied().unwrap_or(i);
        let mut g = TriGraph::new(self.n);
        for (i, s) in self.vertices() {
            g.add_vertex(f(i), s)?;
        }
        for (a, b) in self.edges() {
            g.add_edge(f(a), f(b))?;
        }
        Ok(g)
    }

    /// Copy the vertices and edges of `other` into `self`. Shared ids must
    /// carry the same sort.
    pub fn absorb(&mut self, other: &TriGraph) -> Result<()> {
        for (i, s) in other.vertices() {
            match self.verts.get(&i) {
                Some(&t) if t != s => {
                    return Err(Error::BaseMismatch(format!(
                        "vertex {i} is a {t} on one side and a {s} on the other"
                    )))
                }
                Some(_) => {}
                None => self.add_vertex(i, s)?,
            }
        }
        for (a, b) in other.edges() {
            self.add_edge(a, b)?;
        }
        Ok(())
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.n,
            vertices: self
                .vertices()
                .map(|(id, sort)| VertexDoc { id, sort })
                .collect(),
            e: self.e_edges().into_iter().map(|(a, b)| [a, b]).collect(),
            e2: self.e2_edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc, allow_small_n: bool) -> Result<TriGraph> {
        if doc.n < 2 || (doc.n < 6 && !allow_small_n) {
            return Err(Error::BadParameter(format!(
                "n = {} (need n >= 6 unless small n is allowed)",
                doc.n
            )));
        }
        let mut g = TriGraph::new(doc.n);
        for v in &doc.vertices {
            g.add_vertex(v.id, v.sort)?;
        }
        for &[a, b] in &doc.e {
            g.add_e(a, b)?;
        }
        for &[a, b] in &doc.e2 {
            g.add_e2(a, b)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("graph documents always serialize")
    }
}

/// On-disk graph document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: u32,
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub e: Vec<[Id; 2]>,
    #[serde(default)]
    pub e2: Vec<[Id; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: Id,
    pub sort: Sort,
}

impl From<TriGraph> for GraphDoc {
    fn from(g: TriGraph) -> GraphDoc {
        g.to_doc()
    }
}

impl TryFrom<GraphDoc> for TriGraph {
    type Error = Error;
    fn try_from(doc: GraphDoc) -> Result<TriGraph> {
        TriGraph::from_doc(&doc, true)
    }
}

pub fn parse_graph(text: &str, allow_small_n: bool) -> Result<TriGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    TriGraph::from_doc(&doc, allow_small_n)
}

pub fn serialize_graph(g: &TriGraph) -> String {
    g.to_json()
}

/// Small fluent constructor used by tests and examples.
pub struct GraphBuilder {
    g: TriGraph,
}

impl GraphBuilder {
    pub fn new(n: u32) -> GraphBuilder {
        GraphBuilder { g: TriGraph::new(n) }
    }

    pub fn point(mut self, id: Id) -> Self {
        self.g.add_vertex(id, Sort::Point).expect("fresh id");
        self
    }

    pub fn line(mut self, id: Id) -> Self {
        self.g.add_vertex(id, Sort::Line).expect("fresh id");
        self
    }

    pub fn plane(mut self, id: Id) -> Self {
        self.g.add_vertex(id, Sort::Plane).expect("fresh id");
        self
    }

    pub fn edge(mut self, a: Id, b: Id) -> Self {
        self.g.add_edge(a, b).expect("valid incidence");
        self
    }

    pub fn edges(mut self, pairs: &[(Id, Id)]) -> Self {
        for &(a, b) in pairs {
            self.g.add_edge(a, b).expect("valid incidence");
        }
        self
    }

    pub fn build(self) -> TriGraph {
        self.g
    }
}

/// A single complete flag with ids `p`, `l`, `e`.
pub fn flag_graph(n: u32, p: Id, l: Id, e: Id) -> TriGraph {
    GraphBuilder::new(n)
        .point(p)
        .line(l)
        .plane(e)
        .edges(&[(p, l), (l, e), (p, e)])
        .build()
}

pub fn set(ids: &[Id]) -> IdSet {
    ids.iter().copied().collect()
}

/// Injective maps from `s1` (in `g1`) into `targets` (in `g2`) that fix `base`
/// pointwise and preserve and reflect incidence on `base ∪ s1`. With `onto`
/// set, `|s1| = |targets|` and the maps are bijections.
pub fn embeddings_over(
    g1: &TriGraph,
    base: &IdSet,
    s1: &IdSet,
    g2: &TriGraph,
    targets: &IdSet,
    onto: bool,
    limit: Option<usize>,
) -> Vec<Embedding> {
    if onto && s1.len() != targets.len() {
        return Vec::new();
    }
    let src: Vec<Id> = s1.iter().copied().collect();
    let mut cands: Vec<Vec<Id>> = Vec::with_capacity(src.len());
    for &u in &src {
        let su = g1.sort_of(u);
        let nb_base: IdSet = g1.neighbors(u).intersection(base).copied().collect();
        let deg_in = if onto {
            Some(g1.neighbors(u).iter().filter(|w| base.contains(w) || s1.contains(w)).count())
        } else {
            None
        };
        let c: Vec<Id> = targets
            .iter()
            .copied()
            .filter(|&t| {
                g2.contains(t)
                    && !base.contains(&t)
                    && g2.sort_of(t) == su
                    && g2.neighbors(t).intersection(base).copied().collect::<IdSet>() == nb_base
                    && deg_in.is_none_or(|d| {
                        g2.neighbors(t)
                            .iter()
                            .filter(|w| base.contains(w) || targets.contains(w))
                            .count()
                            == d
                    })
            })
            .collect();
        if c.is_empty() {
            return Vec::new();
        }
        cands.push(c);
    }
    let mut out = Vec::new();
    let mut assign: Vec<Id> = Vec::with_capacity(src.len());
    let mut used = IdSet::new();
    fn rec(
        k: usize,
        src: &[Id],
        cands: &[Vec<Id>],
        g1: &TriGraph,
        g2: &TriGraph,
        assign: &mut Vec<Id>,
        used: &mut IdSet,
        base: &IdSet,
        out: &mut Vec<Embedding>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if k == src.len() {
            let mut mapping: BTreeMap<Id, Id> = base.iter().map(|&b| (b, b)).collect();
            for (i, &u) in src.iter().enumerate() {
                mapping.insert(u, assign[i]);
            }
            out.push(Embedding {
                mapping,
                base: base.clone(),
            });
            return;
        }
        for &t in &cands[k] {
            if used.contains(&t) {
                continue;
            }
            let ok = (0..k).all(|j| g1.adjacent(src[j], src[k]) == g2.adjacent(assign[j], t));
            if !ok {
                continue;
            }
            assign.push(t);
            used.insert(t);
            rec(k + 1, src, cands, g1, g2, assign, used, base, out, limit);
            used.remove(&t);
            assign.pop();
        }
    }
    rec(
        0, &src, &cands, g1, g2, &mut assign, &mut used, base, &mut out, limit,
    );
    out
}

/// All isomorphisms `s1 → s2` over `base` inside one graph.
pub fn isomorphisms_over(g: &TriGraph, base: &IdSet, s1: &IdSet, s2: &IdSet) -> Vec<Embedding> {
    embeddings_over(g, base, s1, g, s2, true, None)
}
