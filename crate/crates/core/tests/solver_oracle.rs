//! Cross-checks the exact solver against a brute force that tries every
//! decoder, every letter assignment and every vertex order.

use letterkit::corpus::{all_graphs, random_graph, rng};
use letterkit::solver::{is_k_letterable, SolveOptions};
use letterkit::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// `order[t]` is the vertex at position `t`; `letter[v]` its letter.
fn brute_force(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let orders = permutations(n);
    for d in 0u32..1 << (k * k) {
        let pair = |a: usize, b: usize| d >> (a * k + b) & 1 == 1;
        for assign in 0..k.pow(n as u32) {
            let letter: Vec<usize> = (0..n).map(|v| assign / k.pow(v as u32) % k).collect();
            let fits = |order: &Vec<usize>| {
                (0..n).all(|s| {
                    (s + 1..n).all(|t| {
                        let (u, v) = (order[s], order[t]);
                        g.has_edge(u, v) == pair(letter[u], letter[v])
                    })
                })
            };
            if orders.iter().any(fits) {
                return true;
            }
        }
    }
    false
}

fn agree(g: &Graph, k: usize) {
    let fast = is_k_letterable(g, k, None, &SolveOptions::default())
        .unwrap()
        .outcome
        .is_found();
    assert_eq!(fast, brute_force(g, k), "k = {k}, graph {:?}", g);
}

#[test]
fn one_and_two_letters_on_all_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in all_graphs(n).unwrap() {
            agree(&g, 1);
            agree(&g, 2);
        }
    }
}

#[test]
fn three_letters_on_all_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in all_graphs(n).unwrap() {
            agree(&g, 3);
        }
    }
}

#[test]
fn two_letters_on_random_six_vertex_graphs() {
    let mut r = rng(17);
    for _ in 0..12 {
        agree(&random_graph(&mut r, 6, 0.5), 2);
    }
}

#[test]
fn brute_force_sees_the_matching_bound() {
    let two_k2 = letterkit::graph::Family::Matching.build(2).unwrap();
    assert!(!brute_force(&two_k2, 1));
    assert!(brute_force(&two_k2, 2));
}
