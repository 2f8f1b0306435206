//! Bitmask view of a vertex set (at most 64 vertices) for the exhaustive searches.
//! Local indices follow ascending vertex id, so mask order and id order agree.

use crate::error::{Error, Result};
use crate::graph::{Id, IdSet, Sort, TriGraph};
use crate::predim::DeltaWeights;

#[derive(Clone, Debug)]
pub struct Local {
    pub ids: Vec<Id>,
    pub sort: Vec<Sort>,
    pub adj: Vec<u64>,
    pub pts: u64,
    pub lines: u64,
    pub planes: u64,
    pub w: DeltaWeights,
}

pub const MAX_LOCAL: usize = 64;

#[inline]
pub fn pc(x: u64) -> i64 {
    x.count_ones() as i64
}

#[inline]
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// `a` precedes `b` in lexicographic order of sorted id lists (equal sizes).
#[inline]
pub fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Local {
    pub fn new(g: &TriGraph, s: &IdSet) -> Result<Local> {
        if s.len() > MAX_LOCAL {
            return Err(Error::BudgetExceeded {
                what: "local vertex set",
                needed: s.len() as u64,
                cap: MAX_LOCAL as u64,
            });
        }
        g.check_ids(s)?;
        let ids: Vec<Id> = s.iter().copied().collect();
        let pos = |x: Id| ids.binary_search(&x).ok();
        let mut l = Local {
            sort: Vec::with_capacity(ids.len()),
            adj: vec![0; ids.len()],
            pts: 0,
            lines: 0,
            planes: 0,
            w: DeltaWeights::for_n(g.n()),
            ids: ids.clone(),
        };
        for (i, &v) in ids.iter().enumerate() {
            let so = g.sort_of(v);
            l.sort.push(so);
            match so {
                Sort::Point => l.pts |= 1 << i,
                Sort::Line => l.lines |= 1 << i,
                Sort::Plane => l.planes |= 1 << i,
            }
            for &w in g.neighbors(v) {
                if let Some(j) = pos(w) {
                    l.adj[i] |= 1 << j;
                }
            }
        }
        Ok(l)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn full(&self) -> u64 {
        full(self.len())
    }

    pub fn index(&self, id: Id) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Mask of the members of `s` that belong to this universe.
    pub fn mask(&self, s: &IdSet) -> u64 {
        s.iter()
            .filter_map(|&x| self.index(x))
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn set(&self, m: u64) -> IdSet {
        bits(m).map(|i| self.ids[i]).collect()
    }

    pub fn vec(&self, m: u64) -> Vec<Id> {
        bits(m).map(|i| self.ids[i]).collect()
    }

    pub fn sort_mask(&self, s: Sort) -> u64 {
        match s {
            Sort::Point => self.pts,
            Sort::Line => self.lines,
            Sort::Plane => self.planes,
        }
    }

    pub fn edges_in(&self, m: u64) -> i64 {
        bits(m & self.lines).map(|l| pc(self.adj[l] & m)).sum()
    }

    pub fn e2_in(&self, m: u64) -> i64 {
        bits(m & self.pts)
            .map(|p| pc(self.adj[p] & m & self.planes))
            .sum()
    }

    pub fn flags_in(&self, m: u64) -> i64 {
        let mut f = 0;
        for l in bits(m & self.lines) {
            let al = self.adj[l] & m;
            for p in bits(al & self.pts) {
                f += pc(self.adj[p] & al & self.planes);
            }
        }
        f
    }

    pub fn delta(&self, m: u64) -> i64 {
        let w = &self.w;
        w.line * pc(m & self.lines) + w.point_plane * pc(m & (self.pts | self.planes))
            - w.e * self.edges_in(m)
            - w.e2_flag * (self.e2_in(m) - self.flags_in(m))
    }

    /// `delta(m ∪ {v}) − delta(m)` for `v ∉ m`.
    pub fn marginal(&self, v: usize, m: u64) -> i64 {
        let w = &self.w;
        let a = self.adj[v] & m;
        match self.sort[v] {
            Sort::Line => {
                let mut flags = 0;
                for p in bits(a & self.pts) {
                    flags += pc(self.adj[p] & a & self.planes);
                }
                w.line - w.e * pc(a) + w.e2_flag * flags
            }
            s => {
                let other = if s == Sort::Point { self.planes } else { self.pts };
                let mut flags = 0;
                for l in bits(a & self.lines) {
                    flags += pc(self.adj[l] & a & other);
                }
                w.point_plane - w.e * pc(a & self.lines) - w.e2_flag * pc(a & other)
                    + w.e2_flag * flags
            }
        }
    }

    /// A line outside `m` meeting two points or two planes of `m`, if any.
    pub fn open_line(&self, m: u64) -> Option<usize> {
        bits(self.lines & !m & self.full()).find(|&l| {
            pc(self.adj[l] & m & self.pts) >= 2 || pc(self.adj[l] & m & self.planes) >= 2
        })
    }

    pub fn l_closed(&self, m: u64) -> bool {
        self.open_line(m).is_none()
    }

    /// Connected pieces of the induced subgraph on `m`.
    pub fn components(&self, m: u64) -> Vec<u64> {
        let mut rest = m;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v] & m;
                }
                frontier = next & !comp;
                comp |= next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }
}

/// Best violating test set of each size: `best[s] = Some((delta(C/S), C))`.
pub type BySize = Vec<Option<(i64, u64)>>;

pub struct SearchOutcome {
    pub by_size: BySize,
    pub visited: u64,
}

/// Exhaustive scan of `C ⊆ free` for negative `delta(C/S)`, keeping the best
/// set of each size under (delta, lexicographic). With `l_closed`, only `C`
/// with `S ∪ C` L-closed in the universe are admitted.
pub fn scan_violations(
    loc: &Local,
    s: u64,
    free: u64,
    l_closed: bool,
    kmax: Option<usize>,
    cap: u64,
) -> Result<SearchOutcome> {
    let lines: Vec<usize> = bits(free & loc.lines).collect();
    let others: Vec<usize> = bits(free & !loc.lines).collect();
    let order: Vec<usize> = lines.iter().chain(others.iter()).copied().collect();
    let m = order.len();
    let kcap = kmax.unwrap_or(m).min(m);
    let estimate: u64 = if kcap >= m {
        if m >= 63 {
            u64::MAX
        } else {
            1u64 << m
        }
    } else {
        let mut total: u64 = 0;
        let mut c: u64 = 1;
        for j in 0..=kcap as u64 {
            total = total.saturating_add(c);
            c = c.saturating_mul(m as u64 - j) / (j + 1);
        }
        total
    };
    if estimate > cap {
        return Err(Error::BudgetExceeded {
            what: "test-set enumeration",
            needed: estimate,
            cap,
        });
    }
    let base = loc.delta(s);
    let outside = loc.lines & loc.full() & !s & !free;
    if l_closed
        && bits(outside)
            .any(|l| pc(loc.adj[l] & s & loc.pts) >= 2 || pc(loc.adj[l] & s & loc.planes) >= 2)
    {
        return Ok(SearchOutcome {
            by_size: vec![None; kcap + 1],
            visited: 0,
        });
    }
    let mut st = Scan {
        loc,
        order: &order,
        n_lines: lines.len(),
        l_closed,
        kcap,
        base,
        by_size: vec![None; kcap + 1],
        visited: 0,
    };
    // Lines of S never block; an excluded free line with two same-sort
    // neighbours already in S is pruned when it is excluded.
    st.rec(0, s, 0, outside, base);
    Ok(SearchOutcome {
        by_size: st.by_size,
        visited: st.visited,
    })
}

struct Scan<'a> {
    loc: &'a Local,
    order: &'a [usize],
    n_lines: usize,
    l_closed: bool,
    kcap: usize,
    base: i64,
    by_size: BySize,
    visited: u64,
}

impl Scan<'_> {
    fn rec(&mut self, k: usize, cur: u64, chosen: u64, excluded: u64, d: i64) {
        let size = chosen.count_ones() as usize;
        if k == self.order.len() {
            self.visited += 1;
            let rel = d - self.base;
            if rel < 0 {
                let slot = &mut self.by_size[size];
                let better = match *slot {
                    None => true,
                    Some((bd, bm)) => rel < bd || (rel == bd && lex_less(chosen, bm)),
                };
                if better {
                    *slot = Some((rel, chosen));
                }
            }
            return;
        }
        let v = self.order[k];
        let loc = self.loc;
        let bit = 1u64 << v;
        if k < self.n_lines {
            // v is a line.
            if size < self.kcap {
                let dv = loc.marginal(v, cur);
                self.rec(k + 1, cur | bit, chosen | bit, excluded, d + dv);
            }
            let blocked = self.l_closed
                && (pc(loc.adj[v] & cur & loc.pts) >= 2 || pc(loc.adj[v] & cur & loc.planes) >= 2);
            if !blocked {
                self.rec(k + 1, cur, chosen, excluded | bit, d);
            }
        } else {
            if size < self.kcap {
                let same = loc.sort_mask(loc.sort[v]);
                let blocked = self.l_closed
                    && bits(loc.adj[v] & excluded).any(|l| loc.adj[l] & cur & same != 0);
                if !blocked {
                    let dv = loc.marginal(v, cur);
                    self.rec(k + 1, cur | bit, chosen | bit, excluded, d + dv);
                }
            }
            self.rec(k + 1, cur, chosen, excluded, d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{flag_graph, set};

    #[test]
    fn marginals_match_delta() {
        let g = flag_graph(6, 0, 1, 2);
        let loc = Local::new(&g, &g.ids()).unwrap();
        for m in 0..8u64 {
            for v in 0..3 {
                if m & (1 << v) == 0 {
                    assert_eq!(loc.delta(m | 1 << v), loc.delta(m) + loc.marginal(v, m));
                }
            }
        }
        assert_eq!(loc.delta(7), 16);
    }

    #[test]
    fn lex_order_on_masks() {
        assert!(lex_less(0b0011, 0b0101));
        assert!(!lex_less(0b0101, 0b0011));
        assert!(!lex_less(0b1, 0b1));
    }

    #[test]
    fn open_line_found() {
        let g = crate::graph::GraphBuilder::new(6)
            .point(0)
            .point(1)
            .line(2)
            .edges(&[(0, 2), (1, 2)])
            .build();
        let loc = Local::new(&g, &set(&[0, 1, 2])).unwrap();
        assert_eq!(loc.open_line(0b011), Some(2));
        assert!(loc.l_closed(0b111));
    }
}
