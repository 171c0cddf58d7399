use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::subsequence;

use hyperdeg::combinatorics::{binomial, colex_subsets_of_range};
use hyperdeg::flips::hinge_flip;
use hyperdeg::lbds::{lbds_construct, perturbation_series, LbdsSpec};
use hyperdeg::oracle::{decide_exact, ExactOutcome, SearchBudget};
use hyperdeg::reduction::{
    build_gadget, combine, embed_in_n, extract, gadget_reduce, lift, lift_realization,
    restrict_to_n, unlift_realization,
};
use hyperdeg::{
    degrees_of, power_bound_ceil, power_bound_floor, verify_realization, DegreeSequence, Exponent,
    SparseParams, UniformHypergraph,
};

/// A `t`-uniform hypergraph on `n` vertices with a random subset of all edges.
fn hypergraph(
    t: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = UniformHypergraph> {
    n_range.prop_flat_map(move |n| {
        let all = colex_subsets_of_range(n, t);
        let len = all.len();
        subsequence(all, 0..=len.min(60))
            .prop_map(move |edges| UniformHypergraph::from_edges(t, n, edges).unwrap())
    })
}

fn seq(v: Vec<u64>) -> DegreeSequence {
    DegreeSequence::new(v).unwrap()
}

fn hard() -> SparseParams {
    SparseParams::new(3, Exponent::new(1, 2).unwrap(), Exponent::integer(1)).unwrap()
}

proptest! {
    #[test]
    fn hinge_flip_moves_one_degree(
        h in hypergraph(3, 4..=9),
        pick in any::<prop::sample::Index>(),
        out_pick in 0usize..3,
        in_pick in any::<prop::sample::Index>(),
    ) {
        prop_assume!(h.edge_count() > 0);
        let edges = h.edges_colex();
        let e = edges[pick.index(edges.len())].clone();
        let u = e.vertices()[out_pick];
        let outside: Vec<usize> = (0..h.n()).filter(|&v| !e.contains(v)).collect();
        let w = outside[in_pick.index(outside.len())];
        let before = h.degree_vector();
        match hinge_flip(&h, &e, u, w) {
            Ok(g) => {
                let after = g.degree_vector();
                prop_assert_eq!(g.edge_count(), h.edge_count());
                prop_assert!(!g.contains(&e));
                prop_assert!(g.contains(&e.replace(u, w)));
                for v in 0..h.n() {
                    let expected = if v == u { before[v] - 1 } else if v == w { before[v] + 1 } else { before[v] };
                    prop_assert_eq!(after[v], expected);
                }
            }
            Err(_) => prop_assert!(h.contains(&e.replace(u, w))),
        }
    }

    #[test]
    fn lbds_shape(n in 1usize..=50, delta in 0u64..=12, spread in 0u64..=12, offset in 0u64..=600) {
        let big = (delta + spread).min(12);
        let low = n as u64 * delta;
        let sigma = low + offset % (n as u64 * big - low + 1);
        let spec = LbdsSpec::new(n, delta, big, sigma).unwrap();
        let l = lbds_construct(&spec);
        prop_assert_eq!(l.len(), n);
        prop_assert_eq!(l.sum(), sigma as u128);
        prop_assert!(l.as_slice().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(l.iter().all(|x| (delta..=big).contains(&x)));
        prop_assert!(l.iter().filter(|&x| x != delta && x != big).count() <= 1);
    }

    #[test]
    fn perturbation_series_reaches_the_lbds(d in prop::collection::vec(0u64..=12, 1..=50)) {
        let d = seq(d);
        let s = perturbation_series(&d);
        prop_assert_eq!(s.lbds.sum(), d.sum());
        let sorted = lbds_construct(&s.spec());
        for (p, &v) in s.order.iter().enumerate() {
            prop_assert_eq!(sorted.as_slice()[p], s.lbds.as_slice()[v]);
        }
        let (lo, hi) = (d.min(), d.max());
        let mut cur = d.as_slice().to_vec();
        for step in &s.steps {
            cur[step.i] -= 1;
            cur[step.j] += 1;
            prop_assert!(cur.iter().all(|&x| (lo..=hi).contains(&x)));
        }
        prop_assert_eq!(cur.as_slice(), s.lbds.as_slice());
    }

    #[test]
    fn power_bounds_are_exact(c in 1u64..=6, n in 1u64..=10_000, q in 1u64..=12, p_frac in 0u64..=12) {
        let p = p_frac.min(q);
        let exp = Exponent::new(p, q).unwrap();
        let target = BigUint::from(c).pow(q as u32) * BigUint::from(n).pow(p as u32);
        let lo = power_bound_floor(c, n, exp);
        prop_assert!(BigUint::from(lo).pow(q as u32) <= target);
        prop_assert!(BigUint::from(lo + 1).pow(q as u32) > target);
        let hi = power_bound_ceil(c, n, exp);
        prop_assert!(BigUint::from(hi).pow(q as u32) >= target);
        prop_assert!(hi == 0 || BigUint::from(hi - 1).pow(q as u32) < target);
    }

    #[test]
    fn gadget_preserves_divisibility(d in (3usize..=7).prop_flat_map(|m| {
        let cap = binomial(m as u64 - 1, 2) as u64;
        prop::collection::vec(0..=cap, m)
    })) {
        let d = seq(d);
        let (dp, cert) = gadget_reduce(&d, &hard()).unwrap();
        prop_assert_eq!(dp.sum() % 3 == 0, d.sum().is_multiple_of(3));
        prop_assert_eq!(dp.len(), cert.n);
        prop_assert_eq!(&dp, &cert.target());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lift_round_trip(h in prop_oneof![hypergraph(3, 3..=8), hypergraph(4, 4..=8)]) {
        let lifted = lift_realization(&h);
        prop_assert_eq!(lifted.t(), h.t() + 1);
        prop_assert_eq!(degrees_of(&lifted), lift(&degrees_of(&h), h.t()).unwrap());
        prop_assert_eq!(unlift_realization(&lifted, h.n()).unwrap(), h);
    }

    #[test]
    fn combine_and_extract(h in hypergraph(3, 3..=6)) {
        let d = degrees_of(&h);
        let (dp, cert) = gadget_reduce(&d, &hard()).unwrap();
        let g = build_gadget(&cert).unwrap();
        let padded = h.with_vertex_count(cert.m).unwrap();
        let h_n = embed_in_n(&padded, &cert).unwrap();
        let full = combine(&h_n, &g, &cert).unwrap();
        prop_assert_eq!(verify_realization(&full, &dp), Ok(true));
        let back = extract(&full, &cert).unwrap();
        prop_assert_eq!(restrict_to_n(&back, &cert).unwrap(), padded);
    }
}

#[test]
fn oracle_realizations_extend_to_the_gadget() {
    let budget = SearchBudget::default();
    for d in [
        vec![1, 1, 1, 0, 0],
        vec![3, 3, 3, 3, 0],
        vec![2, 2, 1, 1, 0],
        vec![3, 3, 3, 3, 3, 3],
    ] {
        let d = seq(d);
        let (dp, cert) = gadget_reduce(&d, &hard()).unwrap();
        let g = build_gadget(&cert).unwrap();
        let ExactOutcome::Some(h) = decide_exact(&d, 3, budget).unwrap() else {
            panic!("{d:?} should be realizable");
        };
        let padded = h.with_vertex_count(cert.m).unwrap();
        let full = combine(&embed_in_n(&padded, &cert).unwrap(), &g, &cert).unwrap();
        assert_eq!(verify_realization(&full, &dp), Ok(true));
        assert_eq!(
            restrict_to_n(&extract(&full, &cert).unwrap(), &cert).unwrap(),
            padded
        );
    }
}
