//! Modules, prime graphs and the top-level quotient.
//!
//! The smallest module containing a seed set is found by repeatedly adding
//! every outside vertex that sees part, but not all, of the set. When both
//! `G` and its complement are connected, two vertices lie in the same
//! maximal proper module exactly when the smallest module containing them is
//! not all of `V(G)`; that relation yields the quotient blocks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{set_bit, to_graph6, Graph};

fn bitset(g: &Graph, vertices: &[usize]) -> Result<Vec<u64>> {
    let mut s = vec![0u64; g.word_count()];
    for &v in vertices {
        g.check_vertex(v)?;
        set_bit(&mut s, v);
    }
    Ok(s)
}

/// `N(u) \ M = N(v) \ M` for all `u, v ∈ M`.
pub fn is_module(g: &Graph, set: &[usize]) -> Result<bool> {
    let s = bitset(g, set)?;
    Ok(splitter(g, &s).is_none())
}

/// Some vertex outside `s` adjacent to part but not all of `s`.
fn splitter(g: &Graph, s: &[u64]) -> Option<usize> {
    let members = s.iter().map(|w| w.count_ones()).sum::<u32>();
    if members <= 1 {
        return None;
    }
    g.vertices().find(|&x| {
        if s[x / 64] >> (x % 64) & 1 == 1 {
            return false;
        }
        let hits: u32 = g
            .row(x)
            .iter()
            .zip(s)
            .map(|(r, m)| (r & m).count_ones())
            .sum();
        hits != 0 && hits != members
    })
}

/// Smallest module containing `seed`.
pub(crate) fn module_closure(g: &Graph, seed: &[u64]) -> Vec<u64> {
    let mut s = seed.to_vec();
    while let Some(x) = splitter(g, &s) {
        set_bit(&mut s, x);
    }
    s
}

fn is_full(g: &Graph, s: &[u64]) -> bool {
    s.iter().map(|w| w.count_ones() as usize).sum::<usize>() == g.n()
}

fn pair_closure_is_full(g: &Graph, u: usize, w: usize) -> bool {
    let mut seed = vec![0u64; g.word_count()];
    set_bit(&mut seed, u);
    set_bit(&mut seed, w);
    is_full(g, &module_closure(g, &seed))
}

/// No module other than `∅`, singletons and `V(G)`.
pub fn is_prime(g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|w| pair_closure_is_full(g, u, w)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    /// `G` disconnected; quotient is two non-adjacent vertices.
    Parallel,
    /// Complement disconnected; quotient is `K_2`.
    Series,
    /// Quotient prime on at least four vertices.
    Prime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDecomposition {
    pub kind: QuotientKind,
    pub quotient: Graph,
    /// Vertex set of `G` for each quotient vertex, each sorted ascending.
    pub modules: Vec<Vec<usize>>,
    pub module_graphs: Vec<Graph>,
}

impl QuotientDecomposition {
    /// Vertex order placing each module's vertices consecutively, in quotient
    /// order; this is the identification under which inflating the quotient
    /// by the module graphs reproduces `G`.
    pub fn block_order(&self) -> Vec<usize> {
        self.modules.iter().flatten().copied().collect()
    }
}

#[derive(Serialize)]
struct QuotientJson<'a> {
    kind: QuotientKind,
    quotient: String,
    modules: &'a [Vec<usize>],
}

impl Serialize for QuotientDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuotientJson {
            kind: self.kind,
            quotient: to_graph6(&self.quotient),
            modules: &self.modules,
        }
        .serialize(s)
    }
}

fn two_way_split(g: &Graph, first: Vec<usize>) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in &first {
        inside[v] = true;
    }
    let rest = g.vertices().filter(|&v| !inside[v]).collect();
    vec![first, rest]
}

/// Prime quotient `H` and modules with `G ≅ H[G_v]`. In the disconnected
/// (resp. co-disconnected) case the modules are the (co-)component of
/// vertex 0 and everything else.
pub fn quotient(g: &Graph) -> Result<QuotientDecomposition> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "quotient needs at least two vertices, got {n}"
        )));
    }
    let (kind, modules) = if !g.is_connected() {
        (QuotientKind::Parallel, two_way_split(g, g.component_of(0)))
    } else {
        let co = g.complement();
        if !co.is_connected() {
            (QuotientKind::Series, two_way_split(g, co.component_of(0)))
        } else {
            let mut block = vec![usize::MAX; n];
            let mut modules: Vec<Vec<usize>> = Vec::new();
            for u in 0..n {
                if block[u] != usize::MAX {
                    continue;
                }
                let id = modules.len();
                block[u] = id;
                let mut members = vec![u];
                for w in u + 1..n {
                    if block[w] == usize::MAX && !pair_closure_is_full(g, u, w) {
                        block[w] = id;
                        members.push(w);
                    }
                }
                modules.push(members);
            }
            (QuotientKind::Prime, modules)
        }
    };
    let reps: Vec<usize> = modules.iter().map(|m| m[0]).collect();
    let quotient = g.induced(&reps)?;
    let module_graphs = modules
        .iter()
        .map(|m| g.induced(m))
        .collect::<Result<Vec<_>>>()?;
    if kind == QuotientKind::Prime && (quotient.n() < 4 || !is_prime(&quotient)) {
        return Err(Error::Internal(format!(
            "quotient {} is not prime on four or more vertices",
            to_graph6(&quotient)
        )));
    }
    Ok(QuotientDecomposition {
        kind,
        quotient,
        modules,
        module_graphs,
    })
}

/// Full decomposition: the quotient applied recursively to every module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTree {
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<QuotientKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<DecompositionTree>,
}

pub fn decomposition_tree(g: &Graph) -> Result<DecompositionTree> {
    let all: Vec<usize> = g.vertices().collect();
    tree_rec(g, &all)
}

fn tree_rec(g: &Graph, ids: &[usize]) -> Result<DecompositionTree> {
    if g.n() < 2 {
        return Ok(DecompositionTree {
            vertices: ids.to_vec(),
            kind: None,
            quotient: None,
            children: Vec::new(),
        });
    }
    let q = quotient(g)?;
    let children = q
        .modules
        .iter()
        .zip(&q.module_graphs)
        .map(|(m, mg)| {
            let sub_ids: Vec<usize> = m.iter().map(|&v| ids[v]).collect();
            tree_rec(mg, &sub_ids)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionTree {
        vertices: ids.to_vec(),
        kind: Some(q.kind),
        quotient: Some(to_graph6(&q.quotient)),
        children,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoleKind {
    P4End,
    P4Mid,
    BullNose,
}

/// How a vertex of a prime graph sits in an induced `P_4` or bull.
///
/// Witness layout: `P4End` is the path `[v, x, y, z]`; `P4Mid` is the path
/// `[x, v, y, z]`; `BullNose` is the path `[a, b, c, d]` followed by `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRole {
    pub role: RoleKind,
    pub witness: Vec<usize>,
}

fn is_induced_p4(g: &Graph, p: [usize; 4]) -> bool {
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
    distinct
        && g.has_edge(p[0], p[1])
        && g.has_edge(p[1], p[2])
        && g.has_edge(p[2], p[3])
        && !g.has_edge(p[0], p[2])
        && !g.has_edge(p[0], p[3])
        && !g.has_edge(p[1], p[3])
}

impl VertexRole {
    /// Re-checks the witness against `h`.
    pub fn holds(&self, h: &Graph, v: usize) -> bool {
        let w = &self.witness;
        match self.role {
            RoleKind::P4End => {
                w.len() == 4 && w[0] == v && is_induced_p4(h, [w[0], w[1], w[2], w[3]])
            }
            RoleKind::P4Mid => {
                w.len() == 4 && w[1] == v && is_induced_p4(h, [w[0], w[1], w[2], w[3]])
            }
            RoleKind::BullNose => {
                w.len() == 5
                    && w[4] == v
                    && !w[..4].contains(&v)
                    && is_induced_p4(h, [w[0], w[1], w[2], w[3]])
                    && h.has_edge(v, w[1])
                    && h.has_edge(v, w[2])
                    && !h.has_edge(v, w[0])
                    && !h.has_edge(v, w[3])
            }
        }
    }
}

/// First role found in the order `P4End`, `P4Mid`, `BullNose`, each with its
/// lexicographically least witness. Every vertex of a prime graph on four or
/// more vertices has one; failing to find it is reported as an internal error.
pub fn classify_vertex(h: &Graph, v: usize) -> Result<VertexRole> {
    h.check_vertex(v)?;
    if h.n() < 4 || !is_prime(h) {
        return Err(Error::InvalidParameter(
            "vertex roles are defined for prime graphs on four or more vertices".into(),
        ));
    }
    let n = h.n();
    let others = |skip: usize| (0..n).filter(move |&x| x != skip);
    for x in others(v) {
        for y in others(v) {
            for z in others(v) {
                if is_induced_p4(h, [v, x, y, z]) {
                    return Ok(VertexRole {
                        role: RoleKind::P4End,
                        witness: vec![v, x, y, z],
                    });
                }
            }
        }
    }
    for x in others(v) {
        for y in others(v) {
            for z in others(v) {
                if is_induced_p4(h, [x, v, y, z]) {
                    return Ok(VertexRole {
                        role: RoleKind::P4Mid,
                        witness: vec![x, v, y, z],
                    });
                }
            }
        }
    }
    let nbrs: Vec<usize> = h.neighbors(v).collect();
    for a in others(v) {
        for b in nbrs.iter().copied() {
            for c in nbrs.iter().copied() {
                for d in others(v) {
                    let role = VertexRole {
                        role: RoleKind::BullNose,
                        witness: vec![a, b, c, d, v],
                    };
                    if role.holds(h, v) {
                        return Ok(role);
                    }
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "vertex {v} of prime graph {} lies in no induced P4 and is no bull nose",
        to_graph6(h)
    )))
}
