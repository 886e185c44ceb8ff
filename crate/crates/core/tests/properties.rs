use letterkit::composer::{compose, ComposeOptions};
use letterkit::graph::{contains_induced, from_graph6, threshold, to_graph6, ThresholdStep};
use letterkit::letter::{
    decode, distinguisher_violations, reverse_lettering, threshold_lettering, verify, Decoder,
    Lettering,
};
use letterkit::modular::{is_module, is_prime, quotient};
use letterkit::obstructions::profile;
use letterkit::solver::{lettericity, SolveOptions};
use letterkit::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut it = bits.into_iter();
                Graph::from_fn(n, |_, _| it.next().unwrap_or(false))
            },
        )
    })
}

/// A decoder on `1..=max_k` letters with a word over it.
fn lettering(max_k: usize, max_len: usize) -> impl Strategy<Value = Lettering> {
    (1..=max_k).prop_flat_map(move |k| {
        (
            proptest::collection::vec(any::<bool>(), k * k),
            proptest::collection::vec(0..k, 0..=max_len),
        )
            .prop_flat_map(move |(pairs, word)| {
                let n = word.len();
                (
                    Just(pairs),
                    Just(word),
                    Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                )
            })
            .prop_map(move |(pairs, word, vop)| {
                let list: Vec<(usize, usize)> = (0..k * k)
                    .filter(|&i| pairs[i])
                    .map(|i| (i / k, i % k))
                    .collect();
                Lettering::new(Decoder::from_pairs(k, &list).unwrap(), word, vop).unwrap()
            })
    })
}

fn steps() -> impl Strategy<Value = Vec<ThresholdStep>> {
    proptest::collection::vec(
        prop_oneof![
            Just(ThresholdStep::Isolated),
            Just(ThresholdStep::Dominating)
        ],
        1..=50,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(g in graph(20)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.n();
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn graph6_roundtrips(g in graph(70)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn complemented_decoder_decodes_complement(l in lettering(4, 14)) {
        let g = l.graph();
        prop_assert!(verify(&g.complement(), &l.complemented()).unwrap());
        prop_assert_eq!(
            decode(&l.decoder().complement(), l.word()).unwrap(),
            decode(l.decoder(), l.word()).unwrap().complement()
        );
    }

    #[test]
    fn reversal_keeps_the_graph(l in lettering(4, 14)) {
        prop_assert!(verify(&l.graph(), &reverse_lettering(&l)).unwrap());
    }

    #[test]
    fn no_distinguisher_outside_an_interval(l in lettering(4, 14)) {
        prop_assert!(distinguisher_violations(&l).is_empty());
    }

    #[test]
    fn deleting_vertices_keeps_a_lettering(
        l in lettering(4, 14),
        mask in proptest::collection::vec(any::<bool>(), 14),
    ) {
        let g = l.graph();
        let removed: Vec<usize> = (0..g.n()).filter(|&v| mask[v]).collect();
        let kept: Vec<usize> = (0..g.n()).filter(|&v| !mask[v]).collect();
        let smaller = l.delete_vertices(&removed);
        prop_assert!(verify(&g.induced_sorted(&kept).unwrap(), &smaller).unwrap());
        prop_assert!(smaller.letters_used() <= l.letters_used());
    }

    #[test]
    fn lettering_json_roundtrips(l in lettering(5, 10)) {
        let text = serde_json::to_string(&l).unwrap();
        let back: Lettering = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn threshold_lettering_verifies(s in steps()) {
        let l = threshold_lettering(&s).unwrap();
        prop_assert!(verify(&threshold(&s), &l).unwrap());
        prop_assert!(l.letters_used() <= 2);
    }

    #[test]
    fn induced_search_finds_planted_subgraphs(
        g in graph(10),
        mask in proptest::collection::vec(any::<bool>(), 10),
    ) {
        let chosen: Vec<usize> = (0..g.n()).filter(|&v| mask[v]).collect();
        let pattern = g.induced(&chosen).unwrap();
        let w = contains_induced(&g, &pattern).expect("planted copy exists");
        prop_assert_eq!(g.induced(&w).unwrap(), pattern.clone());
        // the least witness is no later than the planted one
        prop_assert!(w <= chosen);
    }

    #[test]
    fn quotient_reassembles_the_graph(g in graph(24)) {
        prop_assume!(g.n() >= 2);
        let q = quotient(&g).unwrap();
        prop_assert!(is_prime(&q.quotient));
        for m in &q.modules {
            prop_assert!(is_module(&g, m).unwrap());
        }
        let (inflated, _) = q.quotient.inflate(&q.module_graphs).unwrap();
        prop_assert_eq!(inflated, g.permuted(&q.block_order()).unwrap());
    }

    #[test]
    fn profile_is_monotone_under_induced_subgraphs(
        g in graph(12),
        mask in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let kept: Vec<usize> = (0..g.n()).filter(|&v| !mask[v]).collect();
        let (big, small) = (profile(&g), profile(&g.induced(&kept).unwrap()));
        prop_assert!(small.p <= big.p && small.q <= big.q && small.r <= big.r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composer_output_verifies(g in graph(8)) {
        let c = compose(&g, &ComposeOptions::default()).unwrap();
        prop_assert!(verify(&g, &c.lettering).unwrap());
        prop_assert_eq!(c.alphabet_size, c.lettering.letters_used());
        prop_assert!(c.bound_check.unwrap().within_f_impl);
    }

    #[test]
    fn lettericity_is_hereditary_and_self_dual(
        g in graph(7),
        mask in proptest::collection::vec(any::<bool>(), 7),
    ) {
        let opts = SolveOptions::default();
        let (k, l) = lettericity(&g, &opts).unwrap();
        prop_assert!(verify(&g, &l).unwrap());
        let kept: Vec<usize> = (0..g.n()).filter(|&v| !mask[v]).collect();
        let (ks, _) = lettericity(&g.induced(&kept).unwrap(), &opts).unwrap();
        prop_assert!(ks <= k);
        let (kc, _) = lettericity(&g.complement(), &opts).unwrap();
        prop_assert_eq!(kc, k);
    }
}
