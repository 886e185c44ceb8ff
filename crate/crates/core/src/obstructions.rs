//! Induced matchings, co-matchings and stacked paths; the `(p, q, r)`
//! profile; Ramsey numbers and the recursive letter-count bounds.
//!
//! Bound values grow very fast, so all table arithmetic saturates at
//! `u128::MAX`.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{contains_induced, ones, stacked_path, Graph};

/// A maximum induced matching as `(size, edges)`. Among maximum matchings the
/// witness is the lexicographically least list of edges `(u, v)`, `u < v`.
pub fn max_induced_matching(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let edges = g.edges();
    let mut search = MatchingSearch {
        g,
        edges: &edges,
        best: Vec::new(),
        current: Vec::new(),
    };
    let mut free = vec![0u64; g.word_count()];
    for v in g.vertices() {
        free[v / 64] |= 1 << (v % 64);
    }
    search.run(0, &free);
    let best = search.best;
    (best.len(), best)
}

struct MatchingSearch<'a> {
    g: &'a Graph,
    edges: &'a [(usize, usize)],
    best: Vec<(usize, usize)>,
    current: Vec<(usize, usize)>,
}

impl MatchingSearch<'_> {
    fn run(&mut self, start: usize, free: &[u64]) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        // every further edge consumes two free vertices with at least one
        // free neighbour each, so half the free non-isolated vertices bound
        // the remaining gain
        let live = ones(free)
            .filter(|&v| self.g.row(v).iter().zip(free).any(|(r, f)| r & f != 0))
            .count();
        if self.current.len() + live / 2 <= self.best.len() {
            return;
        }
        for i in start..self.edges.len() {
            let (u, v) = self.edges[i];
            if !get(free, u) || !get(free, v) {
                continue;
            }
            let mut next: Vec<u64> = free
                .iter()
                .zip(self.g.row(u))
                .zip(self.g.row(v))
                .map(|((f, a), b)| f & !a & !b)
                .collect();
            clear(&mut next, u);
            clear(&mut next, v);
            self.current.push((u, v));
            self.run(i + 1, &next);
            self.current.pop();
            if self.current.len() + live / 2 <= self.best.len() {
                return;
            }
        }
    }
}

fn get(s: &[u64], v: usize) -> bool {
    s[v / 64] >> (v % 64) & 1 == 1
}

fn clear(s: &mut [u64], v: usize) {
    s[v / 64] &= !(1u64 << (v % 64));
}

/// Largest `r` with `R_r` an induced subgraph, with the vertex map of a
/// witness (`R_0` is the empty graph, witnessed by the empty map).
pub fn max_stacked_path(g: &Graph) -> (usize, Vec<usize>) {
    let mut r = 0;
    let mut witness = Vec::new();
    while 4 * (r + 1) <= g.n() {
        let (pattern, _) = stacked_path(r + 1).expect("r + 1 >= 1");
        match contains_induced(g, &pattern) {
            Some(map) => {
                r += 1;
                witness = map;
            }
            None => break,
        }
    }
    (r, witness)
}

/// `p`, `q`, `r`: the least values such that `G` avoids `pK_2`, its
/// complement avoids `pK_2` for `q`, and `G` avoids `R_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassProfile {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

pub fn profile(g: &Graph) -> ClassProfile {
    let (m, _) = max_induced_matching(g);
    let (c, _) = max_induced_matching(&g.complement());
    let (r, _) = max_stacked_path(g);
    ClassProfile {
        p: m + 1,
        q: c + 1,
        r: r + 1,
    }
}

/// Profile together with the witnesses that realise it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    #[serde(flatten)]
    pub profile: ClassProfile,
    pub matching: Vec<(usize, usize)>,
    pub co_matching: Vec<(usize, usize)>,
    pub stacked_path: Vec<usize>,
}

pub fn profile_report(g: &Graph) -> ProfileReport {
    let (m, matching) = max_induced_matching(g);
    let (c, co_matching) = max_induced_matching(&g.complement());
    let (r, stacked_path) = max_stacked_path(g);
    ProfileReport {
        profile: ClassProfile {
            p: m + 1,
            q: c + 1,
            r: r + 1,
        },
        matching,
        co_matching,
        stacked_path,
    }
}

/// Upper bound on the Ramsey number `R(p, q)` (every graph on at least this
/// many vertices has a clique of size `p` or a co-clique of size `q`). Exact
/// for `min(p, q) <= 2` and for the known small values; elsewhere the
/// recurrence `R(p, q) <= R(p-1, q) + R(p, q-1)`.
pub fn ramsey(p: usize, q: usize) -> u128 {
    let mut memo = FxHashMap::default();
    ramsey_memo(p, q, &mut memo)
}

fn ramsey_memo(p: usize, q: usize, memo: &mut FxHashMap<(usize, usize), u128>) -> u128 {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    match (p, q) {
        (0, _) => return 0,
        (1, _) => return 1,
        (2, q) => return q as u128,
        (3, 3) => return 6,
        (3, 4) => return 9,
        (3, 5) => return 14,
        (4, 4) => return 18,
        _ => {}
    }
    if let Some(&v) = memo.get(&(p, q)) {
        return v;
    }
    let v = ramsey_memo(p - 1, q, memo).saturating_add(ramsey_memo(p, q - 1, memo));
    memo.insert((p, q), v);
    v
}

/// Values of both recursive bounds at one `(m, p, q, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub ramsey: u128,
    /// The `g` term of the tight recursion (0 at the base cases).
    pub g: u128,
    /// Tight recursion `f = g + p + q + 2`.
    pub f_paper: u128,
    /// Recursion actually realised by the composer.
    pub f_impl: u128,
}

/// Memoised bound tables for one `m`.
#[derive(Debug, Clone)]
pub struct BoundTable {
    m: usize,
    tight: FxHashMap<(usize, usize, usize), u128>,
    implemented: FxHashMap<(usize, usize, usize), u128>,
}

impl BoundTable {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        Ok(BoundTable {
            m,
            tight: FxHashMap::default(),
            implemented: FxHashMap::default(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bounds(&mut self, p: usize, q: usize, r: usize) -> Result<Bounds> {
        if p == 0 || q == 0 || r == 0 {
            return Err(Error::InvalidParameter(format!(
                "profile entries must be at least 1, got ({p}, {q}, {r})"
            )));
        }
        let g = if base(p, q, r).is_some() {
            0
        } else {
            let worst = self
                .f_paper(p - 1, q, r)
                .max(self.f_paper(p, q - 1, r))
                .max(self.f_paper(p, q, r - 1));
            (ramsey(p, q) - 1).saturating_mul(worst)
        };
        Ok(Bounds {
            m: self.m,
            p,
            q,
            r,
            ramsey: ramsey(p, q),
            g,
            f_paper: self.f_paper(p, q, r),
            f_impl: self.f_impl(p, q, r),
        })
    }

    /// `f(p, q, r)`; zero when any argument is zero.
    pub fn f_paper(&mut self, p: usize, q: usize, r: usize) -> u128 {
        if let Some(v) = base(p, q, r) {
            return v;
        }
        if let Some(&v) = self.tight.get(&(p, q, r)) {
            return v;
        }
        let worst = self
            .f_paper(p - 1, q, r)
            .max(self.f_paper(p, q - 1, r))
            .max(self.f_paper(p, q, r - 1));
        let v = (ramsey(p, q) - 1)
            .saturating_mul(worst)
            .saturating_add((p + q + 2) as u128);
        self.tight.insert((p, q, r), v);
        v
    }

    /// `F(p, q, r)`; zero when any argument is zero.
    pub fn f_impl(&mut self, p: usize, q: usize, r: usize) -> u128 {
        if let Some(v) = base(p, q, r) {
            return v;
        }
        if let Some(&v) = self.implemented.get(&(p, q, r)) {
            return v;
        }
        let a = self.f_impl(p - 1, q, r);
        let b = self.f_impl(p, q - 1, r);
        let c = self.f_impl(p, q, r - 1);
        let union = a.saturating_mul(2).saturating_add(2);
        let join = b.saturating_mul(2).saturating_add(2);
        let prime = (ramsey(p, q) - 1)
            .saturating_mul(a.max(b).max(c))
            .saturating_add((self.m as u128).saturating_mul(p.max(q) as u128))
            .saturating_add(2);
        let v = union.max(join).max(prime);
        self.implemented.insert((p, q, r), v);
        v
    }
}

fn base(p: usize, q: usize, r: usize) -> Option<u128> {
    if p == 0 || q == 0 || r == 0 {
        Some(0)
    } else if p == 1 || q == 1 {
        Some(1)
    } else {
        None
    }
}

/// One-off evaluation of both bounds.
pub fn bounds(m: usize, p: usize, q: usize, r: usize) -> Result<Bounds> {
    BoundTable::new(m)?.bounds(p, q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn build(f: Family, n: usize) -> Graph {
        f.build(n).unwrap()
    }

    #[test]
    fn induced_matching_numbers() {
        assert_eq!(max_induced_matching(&build(Family::Matching, 3)).0, 3);
        assert_eq!(max_induced_matching(&build(Family::Complete, 6)).0, 1);
        assert_eq!(max_induced_matching(&build(Family::Coclique, 6)).0, 0);
        assert_eq!(max_induced_matching(&build(Family::Bull, 0)).0, 1);
        assert_eq!(max_induced_matching(&build(Family::Path, 7)).0, 2);
        assert_eq!(max_induced_matching(&build(Family::Path, 8)).0, 3);
        assert_eq!(max_induced_matching(&build(Family::Cycle, 6)).0, 2);
        assert_eq!(max_induced_matching(&Graph::empty(0)).0, 0);
    }

    #[test]
    fn matching_witness_is_induced_and_least() {
        let g = build(Family::Path, 5);
        let (m, w) = max_induced_matching(&g);
        assert_eq!(m, 2);
        assert_eq!(w, vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn stacked_paths_have_matching_number_one() {
        for n in 1..=4 {
            let (g, _) = stacked_path(n).unwrap();
            assert_eq!(max_induced_matching(&g).0, 1, "R_{n}");
            assert_eq!(max_induced_matching(&g.complement()).0, 1, "co-R_{n}");
        }
    }

    #[test]
    fn stacked_path_number() {
        let (r3, _) = stacked_path(3).unwrap();
        assert_eq!(max_stacked_path(&r3).0, 3);
        assert_eq!(max_stacked_path(&build(Family::Matching, 2)).0, 0);
        assert_eq!(max_stacked_path(&build(Family::Bull, 0)).0, 1);
    }

    #[test]
    fn profiles() {
        let one = ClassProfile { p: 1, q: 1, r: 1 };
        assert_eq!(profile(&Graph::empty(1)), one);
        assert_eq!(
            profile(&build(Family::Matching, 2)),
            ClassProfile { p: 3, q: 2, r: 1 }
        );
        let (r2, _) = stacked_path(2).unwrap();
        assert_eq!(profile(&r2), ClassProfile { p: 2, q: 2, r: 3 });
    }

    #[test]
    fn ramsey_values() {
        assert_eq!(ramsey(1, 7), 1);
        assert_eq!(ramsey(2, 5), 5);
        assert_eq!(ramsey(5, 2), 5);
        assert_eq!(ramsey(3, 3), 6);
        assert_eq!(ramsey(4, 3), 9);
        assert_eq!(ramsey(4, 4), 18);
        assert_eq!(ramsey(4, 5), ramsey(3, 5) + ramsey(4, 4));
    }

    #[test]
    fn bound_values() {
        let b = bounds(1, 2, 2, 1).unwrap();
        assert_eq!(b.f_paper, 7);
        assert_eq!(b.g, 1);
        assert_eq!(bounds(1, 1, 1, 5).unwrap().f_paper, 1);
        assert_eq!(bounds(3, 1, 4, 4).unwrap().f_impl, 1);
        assert!(bounds(1, 0, 2, 2).is_err());
        assert!(BoundTable::new(0).is_err());
    }

    #[test]
    fn bound_tables_are_monotone_and_ordered() {
        for m in 1..=4 {
            let mut t = BoundTable::new(m).unwrap();
            let mut next = BoundTable::new(m + 1).unwrap();
            for p in 1..=5 {
                for q in 1..=5 {
                    for r in 1..=5 {
                        let b = t.bounds(p, q, r).unwrap();
                        if m >= 2 {
                            assert!(b.f_impl >= b.f_paper, "m={m} ({p},{q},{r})");
                        }
                        assert!(t.f_impl(p + 1, q, r) >= b.f_impl);
                        assert!(t.f_impl(p, q + 1, r) >= b.f_impl);
                        assert!(t.f_impl(p, q, r + 1) >= b.f_impl);
                        assert!(t.f_paper(p + 1, q, r) >= b.f_paper);
                        assert!(t.f_paper(p, q + 1, r) >= b.f_paper);
                        assert!(t.f_paper(p, q, r + 1) >= b.f_paper);
                        assert!(next.f_impl(p, q, r) >= b.f_impl);
                    }
                }
            }
        }
    }

    #[test]
    fn implemented_bound_at_smallest_prime_case() {
        // every prime graph needs two letters, so m = 1 never meets a prime node
        assert_eq!(bounds(1, 2, 2, 1).unwrap().f_impl, 5);
        assert_eq!(bounds(2, 2, 2, 1).unwrap().f_impl, 7);
    }

    #[test]
    fn large_arguments_saturate() {
        let b = bounds(8, 30, 30, 30).unwrap();
        assert_eq!(b.f_impl, u128::MAX);
    }
}
