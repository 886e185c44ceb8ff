//! Backtracking induced-subgraph search, isomorphism and a small canonical form.

use super::{get_bit, ones, set_bit, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 16;

/// Lexicographically least injective map `φ` (in vertex-id order of the
/// pattern, then of `g`) under which `pattern` is an induced subgraph of `g`.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    embed(g, pattern, false)
}

/// Exhaustive isomorphism test for graphs up to [`ISOMORPHISM_LIMIT`] vertices.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let n = a.n().max(b.n());
    if n > ISOMORPHISM_LIMIT {
        return Err(Error::TooLarge {
            what: "isomorphism test",
            n,
            limit: ISOMORPHISM_LIMIT,
        });
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(embed(b, a, true).is_some())
}

fn embed(g: &Graph, pattern: &Graph, same_degree: bool) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > g.n() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let words = g.word_count();
    let full: Vec<u64> = {
        let mut f = vec![0u64; words];
        for v in g.vertices() {
            set_bit(&mut f, v);
        }
        f
    };
    // complement rows restricted to V(g), without the diagonal
    let non_rows: Vec<Vec<u64>> = g
        .vertices()
        .map(|v| {
            let mut r: Vec<u64> = g.row(v).iter().zip(&full).map(|(a, f)| !a & f).collect();
            r[v / 64] &= !(1 << (v % 64));
            r
        })
        .collect();

    let mut cands: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let (dp, np) = (pattern.degree(i), k - 1 - pattern.degree(i));
            let mut c = vec![0u64; words];
            for v in g.vertices() {
                let dg = g.degree(v);
                let ok = if same_degree {
                    dg == dp
                } else {
                    dg >= dp && g.n() - 1 - dg >= np
                };
                if ok {
                    set_bit(&mut c, v);
                }
            }
            c
        })
        .collect();

    let mut phi = vec![usize::MAX; k];
    if extend(g, pattern, &non_rows, &mut cands, &mut phi, 0) {
        Some(phi)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    pattern: &Graph,
    non_rows: &[Vec<u64>],
    cands: &mut Vec<Vec<u64>>,
    phi: &mut [usize],
    i: usize,
) -> bool {
    let k = pattern.n();
    if i == k {
        return true;
    }
    let options: Vec<usize> = ones(&cands[i]).collect();
    for c in options {
        let saved: Vec<Vec<u64>> = cands[i + 1..].to_vec();
        let mut dead = false;
        for j in i + 1..k {
            let mask = if pattern.has_edge(i, j) {
                g.row(c)
            } else {
                &non_rows[c][..]
            };
            let cj = &mut cands[j];
            let mut any = 0;
            for (w, m) in cj.iter_mut().zip(mask) {
                *w &= m;
                any |= *w;
            }
            if any == 0 {
                dead = true;
                break;
            }
        }
        if !dead {
            phi[i] = c;
            if extend(g, pattern, non_rows, cands, phi, i + 1) {
                return true;
            }
        }
        cands[i + 1..].clone_from_slice(&saved);
    }
    false
}

/// Stable colour refinement, started from degrees. Colours are renumbered
/// by sorted signature so the result is invariant under relabelling.
pub(crate) fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = (0..n)
            .map(|v| distinct.binary_search(&sigs[v]).expect("present"))
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

/// Canonical code for graphs on at most 11 vertices: the least graph6-order
/// bit string over all orderings compatible with the refined colouring.
/// Two graphs of the same order are isomorphic iff their codes agree.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > 11 {
        return Err(Error::TooLarge {
            what: "canonical code",
            n,
            limit: 11,
        });
    }
    let colors = refine_colors(g);
    let mut cell_of_position: Vec<usize> = colors.clone();
    cell_of_position.sort_unstable();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![0u64; 1];
    canon_rec(
        g,
        &colors,
        &cell_of_position,
        &mut order,
        &mut used,
        0,
        &mut best,
    );
    Ok(best)
}

fn canon_rec(
    g: &Graph,
    colors: &[usize],
    cells: &[usize],
    order: &mut Vec<usize>,
    used: &mut [u64],
    prefix: u64,
    best: &mut u64,
) {
    let n = g.n();
    let j = order.len();
    if j == n {
        if prefix < *best {
            *best = prefix;
        }
        return;
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    for v in 0..n {
        if colors[v] != cells[j] || get_bit(used, v) {
            continue;
        }
        let mut p = prefix;
        for &u in order.iter() {
            p = (p << 1) | g.has_edge(u, v) as u64;
        }
        // compare against the best code truncated to the same prefix length
        let placed_bits = (j + 1) * j / 2;
        if *best != u64::MAX && p > *best >> (total_bits - placed_bits) {
            continue;
        }
        order.push(v);
        set_bit(used, v);
        canon_rec(g, colors, cells, order, used, p, best);
        used[0] &= !(1 << v);
        order.pop();
    }
}
