//! Seeded random instances: members of K and K_μ grown vertex by vertex,
//! random (strong) extensions, and residue configurations.

use crate::config::Config;
use crate::error::Result;
use crate::graph::{Id, IdSet, Sort, TriGraph};
use crate::kclass::{check_hereditary, check_k};
use crate::mu::{check_kmu, MuPolicy};
use crate::predim::find_violation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which class a generated graph must lie in.
#[derive(Clone, Debug)]
pub enum Class {
    K,
    Kmu(MuPolicy),
}

impl Class {
    pub fn contains(&self, g: &TriGraph, cfg: &Config) -> Result<bool> {
        Ok(match self {
            Class::K => check_k(g, cfg)?.holds,
            Class::Kmu(p) => check_kmu(g, p, cfg)?.holds,
        })
    }
}

const SORTS: [Sort; 3] = [Sort::Point, Sort::Line, Sort::Plane];

/// Add vertex `v` of a random sort joined to a random set of earlier vertices.
fn random_vertex(rng: &mut impl Rng, g: &TriGraph, v: Id, p: f64) -> Result<TriGraph> {
    let sort = *SORTS.choose(rng).expect("nonempty");
    let mut h = g.clone();
    h.add_vertex(v, sort)?;
    for (x, s) in g.vertices() {
        if s != sort && rng.gen_bool(p) {
            h.add_edge(v, x)?;
        }
    }
    Ok(h)
}

/// Grow up to `size` vertices, keeping each addition that stays in `class`.
pub fn random_graph(rng: &mut impl Rng, n: u32, size: usize, class: &Class, cfg: &Config) -> Result<TriGraph> {
    let mut g = TriGraph::new(n);
    let mut tries = 0;
    while g.len() < size && tries < 40 * size {
        tries += 1;
        let p = rng.gen_range(0.1..0.6);
        let h = random_vertex(rng, &g, g.fresh_id(), p)?;
        if check_hereditary(&h, cfg)?.is_none() && class.contains(&h, cfg)? {
            g = h;
        }
    }
    Ok(g)
}

/// A graph `C ⊇ base` in `class` with up to `extra` new vertices, strong over
/// `base` when `strong` is set. `None` when every attempt failed.
pub fn random_extension(
    rng: &mut impl Rng,
    base: &TriGraph,
    extra: usize,
    strong: bool,
    class: &Class,
    cfg: &Config,
) -> Result<Option<TriGraph>> {
    random_extension_with(rng, base, extra, strong, 0.5, class, cfg)
}

/// As [`random_extension`] with edge probabilities drawn below `density`.
pub fn random_extension_with(
    rng: &mut impl Rng,
    base: &TriGraph,
    extra: usize,
    strong: bool,
    density: f64,
    class: &Class,
    cfg: &Config,
) -> Result<Option<TriGraph>> {
    let a = base.ids();
    for _ in 0..60 {
        let mut g = base.clone();
        let mut tries = 0;
        while g.len() < base.len() + extra && tries < 30 * extra.max(1) {
            tries += 1;
            let p = rng.gen_range(0.05..density);
            let h = random_vertex(rng, &g, g.fresh_id(), p)?;
            if check_hereditary(&h, cfg)?.is_none() {
                g = h;
            }
        }
        if g.len() == base.len() {
            continue;
        }
        if strong && find_violation(&g, &a, &g.ids(), None, cfg)?.is_some() {
            continue;
        }
        if class.contains(&g, cfg)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// One of the two special simple extensions of `base`, when `base` has room
/// for it: a bare plane (point) over two unjoined points (planes), or a path
/// of `n − 2` new residue elements of a base plane or point.
pub fn random_simple_extension(
    rng: &mut impl Rng,
    base: &TriGraph,
    class: &Class,
    cfg: &Config,
) -> Result<Option<TriGraph>> {
    let a = base.ids();
    let mut options: Vec<TriGraph> = Vec::new();
    for s in [Sort::Point, Sort::Plane] {
        let xs: Vec<Id> = base.ids_of(s).into_iter().collect();
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i + 1..] {
                let joined = base.neighbors_of_sort(x, Sort::Line).any(|l| base.adjacent(l, y));
                if joined {
                    continue;
                }
                let mut g = base.clone();
                let v = g.fresh_id();
                g.add_vertex(v, s.dual())?;
                g.add_edge(v, x)?;
                g.add_edge(v, y)?;
                options.push(g);
            }
        }
    }
    let inner = base.n() as usize - 2;
    for x in base.ids() {
        if base.sort_of(x) == Sort::Line {
            continue;
        }
        let res: Vec<Id> = base.residue(x)?.into_iter().collect();
        for &p in &res {
            for &q in &res {
                // n − 1 edges: the endpoints have different sorts
                if base.sort_of(p) == base.sort_of(q) || p > q {
                    continue;
                }
                let mut g = base.clone();
                let mut prev = p;
                let mut sort = if base.sort_of(p) == Sort::Line { x_dual(base, x) } else { Sort::Line };
                for _ in 0..inner {
                    let v = g.fresh_id();
                    g.add_vertex(v, sort)?;
                    g.add_edge(v, x)?;
                    g.add_edge(v, prev)?;
                    prev = v;
                    sort = if sort == Sort::Line { x_dual(base, x) } else { Sort::Line };
                }
                g.add_edge(prev, q)?;
                options.push(g);
            }
        }
    }
    while !options.is_empty() {
        let g = options.swap_remove(rng.gen_range(0..options.len()));
        if check_hereditary(&g, cfg)?.is_none()
            && find_violation(&g, &a, &g.ids(), None, cfg)?.is_none()
            && class.contains(&g, cfg)?
        {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// The non-line sort in the residue of `x`.
fn x_dual(g: &TriGraph, x: Id) -> Sort {
    g.sort_of(x).dual()
}

/// `c` with every vertex outside `base` moved above both graphs' ids, so
/// the two are copies of each other over `base`.
pub fn twin(c: &TriGraph, base: &IdSet) -> Result<TriGraph> {
    let shift = c.fresh_id();
    let map = c
        .ids()
        .into_iter()
        .map(|x| (x, if base.contains(&x) { x } else { x + shift }))
        .collect();
    c.relabel(&map)
}

/// A point or plane `x` (returned first) and a random `A ⊆ res(x)` of
/// `1..=max` vertices with random incidences inside `A`.
pub fn random_residue(rng: &mut impl Rng, n: u32, max: usize) -> Result<(TriGraph, Id, IdSet)> {
    let x_sort = if rng.gen_bool(0.5) { Sort::Point } else { Sort::Plane };
    let mut g = TriGraph::new(n);
    g.add_vertex(0, x_sort)?;
    let size = rng.gen_range(1..=max);
    let sorts = [Sort::Line, x_sort.dual()];
    let p = rng.gen_range(0.1..0.7);
    for v in 1..=size as Id {
        let s = *sorts.choose(rng).expect("nonempty");
        g.add_vertex(v, s)?;
        g.add_edge(0, v)?;
        for u in 1..v {
            if g.sort_of(u) != s && rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    let a: IdSet = (1..=size as Id).collect();
    Ok((g, 0, a))
}

/// A uniformly random subset of `s`.
pub fn random_subset(rng: &mut impl Rng, s: &IdSet) -> IdSet {
    s.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_graphs_are_members() {
        let cfg = Config::default();
        let mut r = rng(7);
        for _ in 0..10 {
            let g = random_graph(&mut r, 6, 7, &Class::Kmu(MuPolicy::default()), &cfg).unwrap();
            assert!(check_kmu(&g, &MuPolicy::default(), &cfg).unwrap().holds);
            if let Some(c) = random_extension(&mut r, &g, 3, true, &Class::K, &cfg).unwrap() {
                assert!(find_violation(&c, &g.ids(), &c.ids(), None, &cfg).unwrap().is_none());
            }
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let cfg = Config::default();
        let a = random_graph(&mut rng(3), 6, 6, &Class::K, &cfg).unwrap();
        let b = random_graph(&mut rng(3), 6, 6, &Class::K, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
