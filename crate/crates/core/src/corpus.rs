//! Graph corpora: exhaustive enumeration up to isomorphism and seeded
//! random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::{canonical_code, Family, Graph};
use crate::par;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by canonical code. Supported for `n <= 9`.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 9 {
        return Err(Error::TooLarge {
            what: "exhaustive enumeration",
            n,
            limit: 9,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let candidates: Vec<Vec<(u64, Graph)>> = par::map(&level, |g| {
            (0u32..1 << (size - 1))
                .map(|mask| {
                    let h = Graph::from_fn(size, |u, v| {
                        if v == size - 1 {
                            mask >> u & 1 == 1
                        } else {
                            g.has_edge(u, v)
                        }
                    });
                    (canonical_code(&h).expect("n <= 9"), h)
                })
                .collect()
        });
        let mut seen = FxHashSet::default();
        let mut next: Vec<(u64, Graph)> = candidates
            .into_iter()
            .flatten()
            .filter(|(code, _)| seen.insert(*code))
            .collect();
        next.sort_by_key(|(code, _)| *code);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}

/// All graphs with `lo <= n <= hi`, smallest first.
pub fn all_graphs_between(lo: usize, hi: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(all_graphs(n)?);
    }
    Ok(out)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Random cograph on exactly `n >= 1` vertices: a random binary cotree with
/// uniformly chosen union/join nodes.
pub fn random_cograph(rng: &mut impl Rng, n: usize) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let left = rng.gen_range(1..n);
    let a = random_cograph(rng, left);
    let b = random_cograph(rng, n - left);
    if rng.gen_bool(0.5) {
        a.disjoint_union(&b)
    } else {
        a.join(&b)
    }
}

/// Random inflation of `P_4`, the bull or `C_5` by random cographs, with at
/// most `max_n` vertices in total. Returns the graph and the base family name.
pub fn random_prime_inflation(rng: &mut impl Rng, max_n: usize) -> (Graph, &'static str) {
    let bases: [(&'static str, Graph); 3] = [
        ("P4", Family::Path.build(4).expect("P4")),
        ("bull", Family::Bull.build(0).expect("bull")),
        ("C5", Family::Cycle.build(5).expect("C5")),
    ];
    let (name, base) = bases.choose(rng).expect("nonempty").clone();
    let k = base.n();
    assert!(max_n >= k, "need room for one vertex per module");
    let total = rng.gen_range(k..=max_n);
    // distribute total vertices over k modules, each at least one
    let mut sizes = vec![1usize; k];
    for _ in k..total {
        let i = rng.gen_range(0..k);
        sizes[i] += 1;
    }
    let modules: Vec<Graph> = sizes.iter().map(|&s| random_cograph(rng, s)).collect();
    let (g, _) = base.inflate(&modules).expect("nonempty modules");
    (g, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_graphs() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn random_cograph_has_no_induced_p4() {
        let mut r = rng(7);
        let p4 = Family::Path.build(4).unwrap();
        for n in 1..20 {
            let g = random_cograph(&mut r, n);
            assert_eq!(g.n(), n);
            assert!(crate::graph::contains_induced(&g, &p4).is_none());
        }
    }

    #[test]
    fn inflations_respect_size_cap() {
        let mut r = rng(11);
        for _ in 0..50 {
            let (g, _) = random_prime_inflation(&mut r, 40);
            assert!(g.n() >= 4 && g.n() <= 40);
        }
    }

    #[test]
    fn seeded_generators_are_reproducible() {
        let a = random_graph(&mut rng(3), 20, 0.4);
        let b = random_graph(&mut rng(3), 20, 0.4);
        assert_eq!(a, b);
    }
}
