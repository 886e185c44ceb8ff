//! Finite simple undirected graphs stored as symmetric adjacency bit-rows.
//!
//! Vertices are always `0..n`. Everything here is a pure function of its
//! inputs; a [`Graph`] never changes after construction unless the owner
//! mutates it through [`Graph::add_edge`].

mod families;
mod io;
mod search;

pub use families::{
    bull, stacked_path, stacked_path_inductive, threshold, Family, StackedPathLabels, StackedRole,
    StackedSide, ThresholdStep,
};
pub use io::{from_graph6, to_dot, to_graph6};
pub use search::{canonical_code, contains_induced, is_isomorphic, ISOMORPHISM_LIMIT};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            for u in 0..v {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Panics if either endpoint is out of range or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as packed 64-bit words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn word_count(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.row(v).iter().all(|&w| w == 0)
    }

    pub fn is_dominating(&self, v: usize) -> bool {
        self.degree(v) + 1 == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// `G ⊎ H`: vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        self.combine(other, false)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        self.combine(other, true)
    }

    fn combine(&self, other: &Graph, cross: bool) -> Graph {
        let off = self.n;
        Graph::from_fn(self.n + other.n, |u, v| match (u < off, v < off) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - off, v - off),
            _ => cross,
        })
    }

    /// `r` disjoint copies of `self`.
    pub fn copies(&self, r: usize) -> Graph {
        (0..r).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// Subgraph induced by `vertices`, renumbered `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(Graph::from_fn(vertices.len(), |i, j| {
            self.has_edge(vertices[i], vertices[j])
        }))
    }

    /// Induced subgraph on a subset, keeping the relative order of vertex ids.
    pub fn induced_sorted(&self, vertices: &[usize]) -> Result<Graph> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        self.induced(&sorted)
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Graph> {
        if order.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                order.len(),
                self.n
            )));
        }
        self.induced(order)
    }

    /// `H[G_v : v ∈ V(H)]`. Block `v` occupies a consecutive id range, in the
    /// vertex order of `self`. Returns the graph and each vertex's block.
    pub fn inflate(&self, modules: &[Graph]) -> Result<(Graph, Vec<usize>)> {
        if modules.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} module graphs for a quotient on {} vertices",
                modules.len(),
                self.n
            )));
        }
        let mut block = Vec::new();
        let mut local = Vec::new();
        for (v, m) in modules.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::EmptyModule(v));
            }
            for i in 0..m.n() {
                block.push(v);
                local.push(i);
            }
        }
        let g = Graph::from_fn(block.len(), |x, y| {
            let (bx, by) = (block[x], block[y]);
            if bx == by {
                modules[bx].has_edge(local[x], local[y])
            } else {
                self.has_edge(bx, by)
            }
        });
        Ok((g, block))
    }

    /// Connected component containing `v`, as a sorted vertex list.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![0u64; self.words];
        set_bit(&mut seen, v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for (w, (s, r)) in seen.iter_mut().zip(self.row(u)).enumerate() {
                let fresh = r & !*s;
                *s |= fresh;
                stack.extend(ones_word(fresh, w));
            }
        }
        ones(&seen).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0).len() == self.n
    }
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn ones_word(mut word: u64, index: usize) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            return None;
        }
        let b = word.trailing_zeros() as usize;
        word &= word - 1;
        Some(index * 64 + b)
    })
}

/// Indices of set bits, ascending.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| ones_word(w, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_triangle_is_edgeless() {
        let k3 = Family::Complete.build(3).unwrap();
        let c = k3.complement();
        assert_eq!(c.n(), 3);
        assert!(c.is_edgeless());
    }

    #[test]
    fn union_of_two_edges_is_2k2() {
        let k2 = Family::Matching.build(1).unwrap();
        let u = k2.disjoint_union(&k2);
        assert_eq!(u, Family::Matching.build(2).unwrap());
        assert_eq!(u.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn join_adds_all_cross_edges() {
        let e = Graph::empty(2);
        let j = e.join(&e);
        assert_eq!(j.edge_count(), 4);
        assert!(!j.has_edge(0, 1) && !j.has_edge(2, 3));
    }

    #[test]
    fn induced_rejects_out_of_range_and_duplicates() {
        let p4 = Family::Path.build(4).unwrap();
        assert!(matches!(
            p4.induced(&[0, 7]),
            Err(Error::VertexOutOfRange { vertex: 7, n: 4 })
        ));
        assert!(matches!(
            p4.induced(&[1, 1]),
            Err(Error::DuplicateVertex(1))
        ));
    }

    #[test]
    fn induced_keeps_given_order() {
        let p4 = Family::Path.build(4).unwrap();
        let sub = p4.induced(&[1, 2, 3]).unwrap();
        assert_eq!(sub.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn identity_inflation() {
        let k2 = Family::Complete.build(2).unwrap();
        let k1 = Graph::empty(1);
        let (g, block) = k2.inflate(&[k1.clone(), k1]).unwrap();
        assert_eq!(g, k2);
        assert_eq!(block, vec![0, 1]);
    }

    #[test]
    fn inflation_rejects_empty_module() {
        let k2 = Family::Complete.build(2).unwrap();
        assert_eq!(
            k2.inflate(&[Graph::empty(1), Graph::empty(0)]),
            Err(Error::EmptyModule(1))
        );
    }

    #[test]
    fn inflate_p4_first_vertex_by_edge() {
        let p4 = Family::Path.build(4).unwrap();
        let k2 = Family::Complete.build(2).unwrap();
        let k1 = Graph::empty(1);
        let (g, block) = p4.inflate(&[k2, k1.clone(), k1.clone(), k1]).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(block, vec![0, 0, 1, 2, 3]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn components() {
        let g = Family::Matching.build(3).unwrap();
        assert_eq!(g.component_of(2), vec![2, 3]);
        assert!(!g.is_connected());
        assert!(Family::Path.build(5).unwrap().is_connected());
    }

    #[test]
    fn wide_rows_span_several_words() {
        let g = Family::Path.build(130).unwrap();
        assert_eq!(g.word_count(), 3);
        assert!(g.has_edge(63, 64) && g.has_edge(128, 129));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert!(g.is_connected());
        assert_eq!(g.complement().complement(), g);
    }
}
