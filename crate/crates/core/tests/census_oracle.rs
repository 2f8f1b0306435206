// Brute-force recount of the census on labelled graphs with plain arrays:
// every sort assignment and every edge set, class K tested condition by
// condition, isomorphism types by trying all permutations.

use std::collections::BTreeSet;
use trigeom::census::census;
use trigeom::mu::MuPolicy;
use trigeom::Config;

const POINT: u8 = 0;
const LINE: u8 = 1;
const PLANE: u8 = 2;

#[derive(Clone)]
struct G {
    sorts: Vec<u8>,
    adj: Vec<Vec<bool>>,
}

impl G {
    fn sub(&self, mask: u32) -> G {
        let keep: Vec<usize> = (0..self.sorts.len()).filter(|i| mask >> i & 1 == 1).collect();
        G {
            sorts: keep.iter().map(|&i| self.sorts[i]).collect(),
            adj: keep.iter().map(|&i| keep.iter().map(|&j| self.adj[i][j]).collect()).collect(),
        }
    }

    fn of(&self, s: u8) -> Vec<usize> {
        (0..self.sorts.len()).filter(|&i| self.sorts[i] == s).collect()
    }

    fn common(&self, a: usize, b: usize, s: u8) -> Vec<usize> {
        self.of(s).into_iter().filter(|&x| self.adj[a][x] && self.adj[b][x]).collect()
    }

    fn delta(&self) -> i64 {
        let k = self.sorts.len();
        let (mut lines, mut pe, mut e, mut e2, mut flags) = (0, 0, 0, 0, 0);
        for i in 0..k {
            if self.sorts[i] == LINE {
                lines += 1;
            } else {
                pe += 1;
            }
            for j in i + 1..k {
                if self.adj[i][j] {
                    if self.sorts[i] == LINE || self.sorts[j] == LINE {
                        e += 1;
                    } else {
                        e2 += 1;
                    }
                }
            }
        }
        for p in self.of(POINT) {
            for l in self.of(LINE) {
                for x in self.of(PLANE) {
                    if self.adj[p][l] && self.adj[l][x] && self.adj[p][x] {
                        flags += 1;
                    }
                }
            }
        }
        14 * lines + 10 * pe - 9 * e - 5 * (e2 - flags)
    }

    /// C1 to C4; residues here have at most three vertices, so C5 and the
    /// long-cycle condition cannot apply.
    fn local(&self) -> bool {
        for (s, t) in [(POINT, PLANE), (PLANE, POINT)] {
            let xs = self.of(s);
            for (i, &a) in xs.iter().enumerate() {
                for &b in &xs[i + 1..] {
                    let ls = self.common(a, b, LINE);
                    if ls.len() > 1 {
                        return false;
                    }
                    let ts = self.common(a, b, t);
                    if ls.len() == 1 && ts.iter().any(|&x| !self.adj[ls[0]][x]) {
                        return false;
                    }
                    if ls.is_empty() && ts.len() > 1 {
                        return false;
                    }
                }
            }
        }
        for p in self.of(POINT) {
            for l in self.of(LINE) {
                for x in self.of(PLANE) {
                    if self.adj[p][l] && self.adj[l][x] && !self.adj[p][x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// C1 to C4 on the whole graph, and `δ(B) ≥ 3(n−1)+1 = 16` on every
    /// subset `B` of at least three vertices that satisfies C1 to C4 itself.
    fn in_k(&self) -> bool {
        let k = self.sorts.len();
        self.local()
            && (0u32..(1 << k)).all(|mask| {
                let h = self.sub(mask);
                h.sorts.len() < 3 || !h.local() || h.delta() >= 16
            })
    }

    fn code(&self) -> Vec<u8> {
        let k = self.sorts.len();
        let mut best: Option<Vec<u8>> = None;
        let mut perm: Vec<usize> = (0..k).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut c: Vec<u8> = p.iter().map(|&i| self.sorts[i]).collect();
            for a in 0..k {
                for b in a + 1..k {
                    c.push(self.adj[p[a]][p[b]] as u8);
                }
            }
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

fn oracle_row(k: usize) -> (usize, Option<i64>) {
    let mut types = BTreeSet::new();
    let mut min = None::<i64>;
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    for sm in 0..3usize.pow(k as u32) {
        let sorts: Vec<u8> = (0..k).map(|i| (sm / 3usize.pow(i as u32) % 3) as u8).collect();
        let open: Vec<(usize, usize)> = slots.iter().copied().filter(|&(a, b)| sorts[a] != sorts[b]).collect();
        for em in 0u32..(1 << open.len()) {
            let mut adj = vec![vec![false; k]; k];
            for (t, &(a, b)) in open.iter().enumerate() {
                if em >> t & 1 == 1 {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
            let g = G { sorts: sorts.clone(), adj };
            if g.in_k() {
                min = Some(min.map_or(g.delta(), |m| m.min(g.delta())));
                types.insert(g.code());
            }
        }
    }
    (types.len(), min)
}

#[test]
fn census_matches_brute_force() {
    let r = census(6, 5, &MuPolicy::canonical(), &Config::default()).unwrap();
    for k in 1..=5 {
        let (count, min) = oracle_row(k);
        let row = &r.rows[k - 1];
        assert_eq!(row.k_members as usize, count, "size {k}");
        assert_eq!(row.min_delta, min, "size {k}");
    }
}

#[test]
fn by_hand_small_rows() {
    let r = census(6, 2, &MuPolicy::canonical(), &Config::default()).unwrap();
    // one vertex of each sort; two vertices: six sort pairs, three joinable
    assert_eq!(r.rows[0].k_members, 3);
    assert_eq!(r.rows[1].k_members, 9);
    assert_eq!(r.rows[0].min_delta, Some(10));
    // two points, the cheapest pair
    assert_eq!(r.rows[1].min_delta, Some(15));
}
