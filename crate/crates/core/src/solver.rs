//! Exact lettering search.
//!
//! The outer loop walks decoders over `k` letters, one per orbit under
//! renaming letters (the orbit's least row-major matrix), in increasing
//! order. For each decoder the word is built left to right; every unplaced
//! vertex keeps the set of letters still compatible with all placed
//! positions, and a failed set of domains is remembered so it is never
//! expanded twice. The first success in this order is returned, so results
//! do not depend on how many threads evaluate the decoders.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::letter::{Decoder, Lettering};
use crate::par;

/// Largest alphabet the decoder enumeration supports.
pub const HARD_MAX_K: usize = 5;

const DECODER_CHUNK: usize = 64;
const CLOCK_EVERY: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_n: usize,
    pub max_k: usize,
    pub budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_n: 12,
            max_k: 5,
            budget: None,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }
}

/// Vertex classes that must each be written with one letter, distinct
/// classes with distinct letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LetterClassConstraint {
    classes: Vec<Vec<usize>>,
}

impl LetterClassConstraint {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = FxHashSet::default();
        for class in &classes {
            for &v in class {
                if !seen.insert(v) {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} appears in two letter classes"
                    )));
                }
            }
        }
        Ok(LetterClassConstraint { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        for &v in self.classes.iter().flatten() {
            g.check_vertex(v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Lettering),
    Exhausted,
}

impl Outcome {
    pub fn lettering(&self) -> Option<&Lettering> {
        match self {
            Outcome::Found(l) => Some(l),
            Outcome::Exhausted => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub k: usize,
    pub outcome: Outcome,
    pub decoders_tried: u64,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct SolveReportJson<'a> {
    k: usize,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lettering: Option<&'a Lettering>,
    decoders_tried: u64,
    nodes_expanded: u64,
    elapsed_ms: f64,
}

impl Serialize for SolveReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolveReportJson {
            k: self.k,
            outcome: match self.outcome {
                Outcome::Found(_) => "found",
                Outcome::Exhausted => "exhausted",
            },
            lettering: self.outcome.lettering(),
            decoders_tried: self.decoders_tried,
            nodes_expanded: self.nodes_expanded,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
        }
        .serialize(s)
    }
}

/// Orbit representatives of `k x k` boolean matrices under simultaneous
/// row/column permutation: each is the least code in its orbit. Sorted.
pub fn canonical_decoders(k: usize) -> &'static [u64] {
    static CACHE: [OnceLock<Vec<u64>>; HARD_MAX_K + 1] =
        [const { OnceLock::new() }; HARD_MAX_K + 1];
    assert!(
        k <= HARD_MAX_K,
        "decoder enumeration supports k <= {HARD_MAX_K}"
    );
    CACHE[k].get_or_init(|| enumerate_canonical(k))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn enumerate_canonical(k: usize) -> Vec<u64> {
    let kk = k * k;
    if k == 0 {
        return vec![0];
    }
    // for each non-identity permutation, the source bit index of each
    // target position (MSB-first order)
    let sources: Vec<Vec<u32>> = permutations(k)
        .into_iter()
        .skip(1)
        .map(|p| {
            (0..kk)
                .map(|t| {
                    let (a, b) = (t / k, t % k);
                    (p[a] * k + p[b]) as u32
                })
                .collect()
        })
        .collect();
    let total: u64 = 1 << kk;
    let chunk = 1u64 << 16.min(kk);
    let chunks = total.div_ceil(chunk) as usize;
    let parts = par::map_range(0..chunks, |c| {
        let lo = c as u64 * chunk;
        let hi = (lo + chunk).min(total);
        (lo..hi)
            .filter(|&code| is_orbit_minimum(code, kk, &sources))
            .collect::<Vec<u64>>()
    });
    parts.into_iter().flatten().collect()
}

fn is_orbit_minimum(code: u64, kk: usize, sources: &[Vec<u32>]) -> bool {
    let bit = |i: usize| code >> (kk - 1 - i) & 1;
    sources.iter().all(|src| {
        for (t, &s) in src.iter().enumerate() {
            let (p, o) = (bit(s as usize), bit(t));
            if p != o {
                return p > o;
            }
        }
        true
    })
}

/// Searches for a `k`-lettering of `g`, optionally under a letter-class
/// constraint. A found lettering is the first success in decoder order,
/// then in (letter, vertex) order position by position.
pub fn is_k_letterable(
    g: &Graph,
    k: usize,
    constraint: Option<&LetterClassConstraint>,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    let n = g.n();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if n > opts.max_n || n > 32 || k > opts.max_k.min(HARD_MAX_K) || n * k > 128 {
        return Err(Error::ScaleGuard {
            n,
            k,
            max_n: opts.max_n,
            max_k: opts.max_k.min(HARD_MAX_K),
        });
    }
    let empty = LetterClassConstraint::default();
    let constraint = constraint.unwrap_or(&empty);
    constraint.check(g)?;

    let report = |outcome, decoders_tried, nodes_expanded| SolveReport {
        k,
        outcome,
        decoders_tried,
        nodes_expanded,
        elapsed: start.elapsed(),
    };

    if n == 0 {
        let l = Lettering::identity(Decoder::new(k), Vec::new())?;
        return Ok(report(Outcome::Found(l), 0, 0));
    }
    let Some(problem) = Problem::new(g, k, constraint) else {
        return Ok(report(Outcome::Exhausted, 0, 0));
    };

    let deadline = opts.budget.map(|b| start + b);
    let abort = AtomicBool::new(false);
    let decoders = canonical_decoders(k);
    let mut tried = 0u64;
    let mut nodes = 0u64;
    for chunk in decoders.chunks(DECODER_CHUNK) {
        let results = par::map(chunk, |&code| problem.run(code, deadline, &abort));
        if abort.load(Ordering::Relaxed) {
            return Err(Error::BudgetExhausted {
                elapsed_ms: start.elapsed().as_millis(),
            });
        }
        for (code, (found, expanded)) in chunk.iter().zip(results) {
            tried += 1;
            nodes += expanded;
            if let Some(order) = found {
                let l = problem.lettering(*code, &order)?;
                return Ok(report(Outcome::Found(l), tried, nodes));
            }
        }
    }
    Ok(report(Outcome::Exhausted, tried, nodes))
}

/// `ℓ(G)` together with the lettering found at that size.
pub fn lettericity(g: &Graph, opts: &SolveOptions) -> Result<(usize, Lettering)> {
    if g.n() == 0 {
        return Ok((0, Lettering::identity(Decoder::new(0), Vec::new())?));
    }
    for k in 1..=g.n() {
        let r = is_k_letterable(g, k, None, opts)?;
        if let Outcome::Found(l) = r.outcome {
            return Ok((k, l));
        }
    }
    Err(Error::Internal(
        "no lettering with |V(G)| letters; every graph has one".into(),
    ))
}

/// Smallest `k <= max_k` admitting a lettering under `constraint`, with the
/// report of the last search performed.
pub fn least_letterable(
    g: &Graph,
    constraint: Option<&LetterClassConstraint>,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let mut last = None;
    for k in 1..=opts.max_k.clamp(1, HARD_MAX_K) {
        let r = is_k_letterable(g, k, constraint, opts)?;
        if r.outcome.is_found() {
            return Ok(r);
        }
        last = Some(r);
    }
    Ok(last.expect("at least one k tried"))
}

/// Graph and constraint data shared by every decoder.
struct Problem {
    n: usize,
    k: usize,
    adj: Vec<u32>,
    /// class id per vertex
    class_of: Vec<Option<usize>>,
    class_members: Vec<u32>,
    /// 1 = class induces a clique, 0 = co-clique, for classes of size >= 2
    class_self_pair: Vec<Option<bool>>,
}

type Placement = Vec<(usize, usize)>;

impl Problem {
    fn new(g: &Graph, k: usize, constraint: &LetterClassConstraint) -> Option<Problem> {
        let n = g.n();
        let adj: Vec<u32> = g
            .vertices()
            .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u))
            .collect();
        let classes: Vec<&Vec<usize>> = constraint
            .classes()
            .iter()
            .filter(|c| !c.is_empty())
            .collect();
        if classes.len() > k {
            return None;
        }
        let mut class_of = vec![None; n];
        let mut class_members = Vec::new();
        let mut class_self_pair = Vec::new();
        for (c, members) in classes.iter().enumerate() {
            let mut mask = 0u32;
            let (mut edge, mut non_edge) = (false, false);
            for (i, &u) in members.iter().enumerate() {
                class_of[u] = Some(c);
                mask |= 1 << u;
                for &w in &members[i + 1..] {
                    if g.has_edge(u, w) {
                        edge = true;
                    } else {
                        non_edge = true;
                    }
                }
            }
            // one letter encodes a clique or a co-clique, never both
            if edge && non_edge {
                return None;
            }
            class_members.push(mask);
            class_self_pair.push(if edge {
                Some(true)
            } else if non_edge {
                Some(false)
            } else {
                None
            });
        }
        Some(Problem {
            n,
            k,
            adj,
            class_of,
            class_members,
            class_self_pair,
        })
    }

    fn lettering(&self, code: u64, order: &Placement) -> Result<Lettering> {
        let decoder = Decoder::from_code(self.k, code);
        let (vop, word) = order.iter().copied().unzip();
        Lettering::new(decoder, word, vop)
    }

    /// Word search under one decoder: the placement found (if any) and the
    /// number of nodes expanded.
    fn run(
        &self,
        code: u64,
        deadline: Option<Instant>,
        abort: &AtomicBool,
    ) -> (Option<Placement>, u64) {
        if abort.load(Ordering::Relaxed) {
            return (None, 0);
        }
        if deadline.is_some_and(|t| Instant::now() > t) {
            abort.store(true, Ordering::Relaxed);
            return (None, 0);
        }
        let k = self.k;
        let d = Decoder::from_code(k, code);
        // compatible[a][e]: letters b with (a, b) ∈ D iff e
        let mut compatible = [[0u8; 2]; HARD_MAX_K];
        let mut self_paired = 0u8;
        for a in 0..k {
            for b in 0..k {
                compatible[a][d.contains(a, b) as usize] |= 1 << b;
            }
            if d.contains(a, a) {
                self_paired |= 1 << a;
            }
        }
        let all = ((1u16 << k) - 1) as u8;
        let mut domains = vec![all; self.n];
        debug_assert!(self.n <= 32);
        for v in 0..self.n {
            if let Some(c) = self.class_of[v] {
                match self.class_self_pair[c] {
                    Some(true) => domains[v] &= self_paired,
                    Some(false) => domains[v] &= !self_paired & all,
                    None => {}
                }
                if domains[v] == 0 {
                    return (None, 0);
                }
            }
        }
        let classed = self.class_members.iter().fold(0u32, |m, &c| m | c);
        let mut search = WordSearch {
            p: self,
            compatible,
            classed,
            memo: FxHashSet::default(),
            nodes: 0,
            order: Vec::with_capacity(self.n),
            deadline,
            abort,
        };
        let found = search.dfs(&domains, 0);
        let nodes = search.nodes;
        (found.then_some(search.order), nodes)
    }
}

struct WordSearch<'a> {
    p: &'a Problem,
    compatible: [[u8; 2]; HARD_MAX_K],
    classed: u32,
    memo: FxHashSet<u128>,
    nodes: u64,
    order: Placement,
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
}

impl WordSearch<'_> {
    fn key(&self, domains: &[u8]) -> u128 {
        domains
            .iter()
            .fold(0u128, |acc, &d| (acc << self.p.k) | d as u128)
    }

    fn out_of_time(&mut self) -> bool {
        if self.nodes.is_multiple_of(CLOCK_EVERY) {
            if self.abort.load(Ordering::Relaxed) {
                return true;
            }
            if let Some(t) = self.deadline {
                if Instant::now() > t {
                    self.abort.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// `domains[v] == 0` marks a placed vertex.
    fn dfs(&mut self, domains: &[u8], placed: u32) -> bool {
        let n = self.p.n;
        if self.order.len() == n {
            return true;
        }
        self.nodes += 1;
        if self.out_of_time() {
            return false;
        }
        let mut next = vec![0u8; n];
        for a in 0..self.p.k {
            let bit = 1u8 << a;
            for v in 0..n {
                if placed >> v & 1 == 1 || domains[v] & bit == 0 {
                    continue;
                }
                if !self.place(domains, placed, v, a, &mut next) {
                    continue;
                }
                let key = self.key(&next);
                if self.memo.contains(&key) {
                    continue;
                }
                self.order.push((v, a));
                if self.dfs(&next, placed | 1 << v) {
                    return true;
                }
                self.order.pop();
                if self.abort.load(Ordering::Relaxed) {
                    return false;
                }
            }
        }
        let key = self.key(domains);
        self.memo.insert(key);
        false
    }

    /// Domains after writing letter `a` for vertex `v`; false if some
    /// unplaced vertex is left without a letter.
    fn place(&self, domains: &[u8], placed: u32, v: usize, a: usize, next: &mut [u8]) -> bool {
        let p = self.p;
        let bit = 1u8 << a;
        let row = p.adj[v];
        let (same, other) = match p.class_of[v] {
            Some(c) => (p.class_members[c], self.classed & !p.class_members[c]),
            None => (0, 0),
        };
        for u in 0..p.n {
            if u == v || placed >> u & 1 == 1 {
                next[u] = 0;
                continue;
            }
            let mut dom = domains[u] & self.compatible[a][(row >> u & 1) as usize];
            if same >> u & 1 == 1 {
                dom &= bit;
            } else if other >> u & 1 == 1 {
                dom &= !bit;
            }
            if dom == 0 {
                return false;
            }
            next[u] = dom;
        }
        next[v] = 0;
        true
    }
}
