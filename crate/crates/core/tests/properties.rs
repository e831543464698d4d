mod common;

use proptest::prelude::*;

use permgraph::classify::{
    ci_bruteforce_transpositional, ci_structural_graph, perm_complete_bruteforce,
    perm_complete_structural, reduce_sequence, Answer, OracleVerdict,
};
use permgraph::construct::{bike_product_sequence, NumberSeq};
use permgraph::enumeration::{
    arrangements_count, enumerate_prod, es_equivalent, find_rearrangement, trace_paths, Budget,
    Rearrangement,
};
use permgraph::multigraph::Multigraph;
use permgraph::perm::{Parity, Permutation, Transposition};
use permgraph::sequence::TranspSequence;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms3(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn pair(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..n, 0..n).prop_filter("distinct points", |(a, b)| a != b)
}

fn seq_on(n: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TranspSequence> {
    prop::collection::vec(pair(n), len)
        .prop_map(move |pairs| TranspSequence::from_pairs(n, &pairs).unwrap())
}

fn seq(
    ns: std::ops::RangeInclusive<usize>,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = TranspSequence> {
    ns.prop_flat_map(move |n| seq_on(n, len.clone()))
}

/// A sequence together with a shuffled copy of itself.
fn seq_and_shuffle(
    ns: std::ops::RangeInclusive<usize>,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (TranspSequence, TranspSequence)> {
    seq(ns, len).prop_flat_map(|s| {
        let terms = s.terms().to_vec();
        let n = s.degree();
        (Just(s), Just(terms).prop_shuffle())
            .prop_map(move |(s, t)| (s, TranspSequence::new(n, t).unwrap()))
    })
}

/// A random labelled tree on `n` vertices from a Prüfer-like parent array.
fn tree(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TranspSequence> {
    ns.prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        (Just(n), parents, perm(n))
    })
    .prop_flat_map(|(n, parents, relabel)| {
        let pairs: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| (relabel.image(i + 1), relabel.image(p)))
            .collect();
        Just(pairs)
            .prop_shuffle()
            .prop_map(move |pairs| TranspSequence::from_pairs(n, &pairs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative((f, g, h) in perms3(8)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels((f, _, _) in perms3(8)) {
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert!(f.inverse().compose(&f).unwrap().is_identity());
    }

    #[test]
    fn conjugation_keeps_cycle_type((f, g, _) in perms3(8)) {
        let c = f.conjugate_by(&g).unwrap();
        prop_assert_eq!(c.cycle_type(), f.cycle_type());
        prop_assert!(c.is_conjugate(&f).unwrap());
    }

    #[test]
    fn cycle_notation_roundtrips((f, _, _) in perms3(9)) {
        let back = Permutation::parse_cycles(&f.to_string(), f.degree()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn parity_matches_cycle_type((f, g, _) in perms3(8)) {
        prop_assert_eq!(f.parity(), f.cycle_type().parity());
        let fg = f.compose(&g).unwrap();
        let expected = if f.parity() == g.parity() { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(fg.parity(), expected);
    }

    #[test]
    fn product_parity_is_length_parity(s in seq(2..=9, 0..=12)) {
        prop_assert_eq!(s.product().parity(), Parity::of_len(s.len()));
    }

    #[test]
    fn rotation_conjugates_product(s in seq(2..=8, 1..=10), i in 0usize..10) {
        prop_assert!(s.rotated(i).product().is_conjugate(&s.product()).unwrap());
    }

    #[test]
    fn reversal_inverts_product(s in seq(2..=8, 0..=10)) {
        prop_assert_eq!(s.reversed().product(), s.product().inverse());
    }

    #[test]
    fn multigraph_ignores_order((s, t) in seq_and_shuffle(2..=7, 0..=10)) {
        prop_assert_eq!(Multigraph::from_sequence(&s), Multigraph::from_sequence(&t));
    }

    #[test]
    fn weighted_degrees_sum_to_twice_length(s in seq(2..=7, 0..=10)) {
        let g = Multigraph::from_sequence(&s);
        let total: usize = (0..g.vertex_count()).map(|v| g.weighted_degree(v)).sum();
        prop_assert_eq!(total, 2 * s.len());
        prop_assert_eq!(g.total_multiplicity(), s.len());
    }

    #[test]
    fn canonical_sequence_rebuilds_graph(s in seq(2..=7, 0..=10)) {
        let g = Multigraph::from_sequence(&s);
        prop_assert_eq!(Multigraph::from_sequence(&g.canonical_sequence()), g);
    }

    #[test]
    fn text_and_json_roundtrip(s in seq(2..=7, 0..=10)) {
        let g = Multigraph::from_sequence(&s);
        prop_assert_eq!(Multigraph::parse_text(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(Multigraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(s in seq(2..=6, 0..=9), relabel in (2usize..=6).prop_flat_map(perm)) {
        prop_assume!(relabel.degree() == s.degree());
        let g = Multigraph::from_sequence(&s);
        let h = g.relabel(relabel.images());
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
        prop_assert!(g.is_isomorphic(&h).unwrap());
    }

    #[test]
    fn multitree_means_connected_with_n_minus_one_edges(s in seq(2..=6, 0..=8)) {
        let g = Multigraph::from_sequence(&s);
        let expected = g.is_connected() && g.distinct_edge_count() + 1 == g.vertex_count();
        prop_assert_eq!(g.is_multitree(), expected);
    }

    #[test]
    fn walks_end_at_images(s in seq(2..=7, 1..=10)) {
        prop_assume!((0..s.degree()).all(|x| s.terms().iter().any(|t| t.contains(x))));
        let paths = trace_paths(&s).unwrap();
        prop_assert!(paths.is_arc_partition());
        let p = s.product();
        for x in 0..s.degree() {
            prop_assert_eq!(paths.endpoint(x), p.image(x));
        }
    }

    #[test]
    fn bike_identity(x in (1usize..=4).prop_flat_map(|t| {
        Just((2..10).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..2 * t].to_vec())
    })) {
        let r = bike_product_sequence(&NumberSeq::new(x.clone()).unwrap()).unwrap();
        let n = r.degree();
        let mut expected = vec![vec![0, 1]];
        expected.push(x);
        prop_assert_eq!(r.product(), Permutation::from_cycles(n, &expected).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn prod_is_one_coset_closed_under_inverse(s in seq(2..=6, 0..=8)) {
        let prod = enumerate_prod(&s, &Budget::default()).unwrap();
        let parity = Parity::of_len(s.len());
        for f in prod.members() {
            prop_assert_eq!(f.parity(), parity);
            prop_assert!(prod.contains(&f.inverse()));
        }
        prop_assert!(prod.contains(&s.product()));
    }

    #[test]
    fn prod_matches_naive_listing(s in seq(2..=6, 0..=7)) {
        let prod = enumerate_prod(&s, &Budget::default()).unwrap();
        let naive: Vec<Permutation> = common::naive_prod(&s).into_iter().collect();
        prop_assert_eq!(prod.members(), &naive[..]);
    }

    #[test]
    fn prod_is_bounded_by_arrangements(s in seq(2..=6, 0..=9)) {
        let prod = enumerate_prod(&s, &Budget::default()).unwrap();
        prop_assert!(num_bigint::BigUint::from(prod.len()) <= arrangements_count(&s));
    }

    #[test]
    fn prod_ignores_order((s, t) in seq_and_shuffle(2..=6, 0..=8)) {
        let a = enumerate_prod(&s, &Budget::default()).unwrap();
        let b = enumerate_prod(&t, &Budget::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn search_agrees_with_prod(s in seq(2..=5, 0..=8), target in (2usize..=5).prop_flat_map(perm)) {
        prop_assume!(target.degree() == s.degree());
        let budget = Budget::default();
        let prod = enumerate_prod(&s, &budget).unwrap();
        match find_rearrangement(&s, &target, &budget).unwrap() {
            Rearrangement::Found(r) => {
                prop_assert!(prod.contains(&target));
                prop_assert_eq!(r.product(), target);
                prop_assert_eq!(Multigraph::from_sequence(&r), Multigraph::from_sequence(&s));
            }
            Rearrangement::Absent => prop_assert!(!prod.contains(&target)),
            Rearrangement::Refused(r) => prop_assert!(false, "refused: {}", r),
        }
    }

    #[test]
    fn supersequence_of_perm_complete_stays_perm_complete(
        (s, extra) in (2usize..=4).prop_flat_map(|n| (seq_on(n, 0..=7), pair(n)))
    ) {
        let budget = Budget::default();
        prop_assume!(perm_complete_bruteforce(&s, &budget) == OracleVerdict::Yes);
        let mut sup = s.clone();
        sup.push(Transposition::new(extra.0, extra.1).unwrap()).unwrap();
        prop_assert_eq!(perm_complete_bruteforce(&sup, &budget), OracleVerdict::Yes);
    }

    #[test]
    fn reduction_keeps_conjugacy_invariance(u in seq(2..=4, 0..=8)) {
        let budget = Budget::default();
        let r = reduce_sequence(&u);
        prop_assert_eq!(r.product().parity(), u.product().parity());
        let g = Multigraph::from_sequence(&r);
        prop_assert!(g.edges().all(|(_, _, m)| m <= 3));
        if ci_bruteforce_transpositional(&u, &budget) == OracleVerdict::Yes {
            prop_assert_eq!(ci_bruteforce_transpositional(&r, &budget), OracleVerdict::Yes);
        }
    }

    #[test]
    fn tree_products_agree_exactly_when_local_orders_do(
        (u, s) in tree(2..=7).prop_flat_map(|u| {
            let n = u.degree();
            let terms = u.terms().to_vec();
            (Just(u), Just(terms).prop_shuffle().prop_map(move |t| TranspSequence::new(n, t).unwrap()))
        })
    ) {
        let same = u.product() == s.product();
        prop_assert_eq!(es_equivalent(&u, &s).unwrap(), same);
    }

    #[test]
    fn tree_products_are_full_cycles(u in tree(2..=7)) {
        let prod = enumerate_prod(&u, &Budget::default()).unwrap();
        let n = u.degree();
        prop_assert!(prod.members().iter().all(|f| f.cycle_lengths() == vec![n]));
    }

    #[test]
    fn structural_verdicts_are_sound(s in seq(2..=5, 1..=8)) {
        let g = Multigraph::from_sequence(&s);
        let prod = enumerate_prod(&s, &Budget::default()).unwrap();
        let pc = perm_complete_structural(&g);
        prop_assert!(pc.validate(&g));
        match pc.answer {
            Answer::Yes => prop_assert!(prod.is_full_coset()),
            Answer::No => prop_assert!(!prod.is_full_coset()),
            Answer::Unknown => {}
        }
        let ci = ci_structural_graph(&g);
        prop_assert!(ci.validate(&g));
        let ty = s.product().cycle_type();
        let ci_oracle = prod.members().iter().all(|f| f.cycle_type() == ty);
        prop_assert_eq!(ci.answer == Answer::Yes, ci_oracle);
    }
}
