mod common;

use property_o::constructions::*;
use property_o::verify::recheck_violation;
use property_o::*;
use proptest::prelude::*;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn exhaustive(h: &OrientedHypergraph) -> VerificationCertificate {
    check_property_o(h, MethodChoice::Exhaustive, &opts()).unwrap()
}

fn backtracking(h: &OrientedHypergraph) -> VerificationCertificate {
    check_property_o(h, MethodChoice::Backtracking, &opts()).unwrap()
}

#[test]
fn consistency_examples() {
    let ord = |v: Vec<usize>| LinearOrder::new(v).unwrap();
    assert!(is_consistent(&[0, 1, 2], &ord(vec![0, 1, 2, 3])).unwrap());
    assert!(is_consistent(&[2, 0], &ord(vec![2, 0, 1])).unwrap());
    assert!(!is_consistent(&[0, 1, 2], &ord(vec![1, 0, 2])).unwrap());
    assert!(is_consistent(&[0, 5], &ord(vec![0, 1])).is_err());
}

#[test]
fn validation_examples() {
    let dup = OrientedHypergraph::from_raw(3, 3, [[0, 1, 2], [2, 1, 0]]).unwrap();
    let v = dup.validate().unwrap_err();
    assert_eq!(v.len(), 1);
    assert!(v[0]
        .to_string()
        .contains("duplicate underlying set {0,1,2}"));
    let rep = OrientedHypergraph::from_raw(3, 3, [[0, 0, 1]]).unwrap();
    let v = rep.validate().unwrap_err();
    assert!(v[0].to_string().starts_with("repeated vertex in edge 0"));
    assert!(construct_claim1().validate().is_ok());
    assert!(OrientedHypergraph::new(3, 3, [[0, 1, 3]]).is_err());
}

#[test]
fn support_restriction_examples() {
    let h = OrientedHypergraph::new(3, 10, [[0, 1, 2], [3, 2, 1]]).unwrap();
    let r = h.support_restriction();
    assert_eq!(r.n(), 4);
    assert_eq!(r.edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
    assert_eq!(OrientedHypergraph::empty(3, 7).support_restriction().n(), 0);
    assert_eq!(construct_h2().support_restriction(), construct_h2());
}

#[test]
fn reversal_examples() {
    let e = OrientedEdge::new(vec![0, 1, 2]).unwrap();
    assert_eq!(e.reversed().vertices(), &[2, 1, 0]);
    let c = construct_claim1();
    assert_eq!(c.reverse().reverse(), c);
    assert!(exhaustive(&construct_h1().reverse()).has_property_o());
}

#[test]
fn count_consistent_orders_matches_enumeration() {
    assert_eq!(count_consistent_orders(3, 8).unwrap(), 6720);
    assert_eq!(count_consistent_orders(4, 4).unwrap(), 1);
    assert_eq!(count_consistent_orders(2, 4).unwrap(), 12);
    for n in 2..=6 {
        for k in 2..=n {
            let edge: Vec<usize> = (0..k).rev().collect();
            let brute = common::orders(n)
                .iter()
                .filter(|o| common::reads_in_order(&edge, o))
                .count();
            assert_eq!(count_consistent_orders(k, n).unwrap(), brute as u128);
        }
    }
}

#[test]
fn exhaustive_examples() {
    let single = OrientedHypergraph::new(2, 2, [[0, 1]]).unwrap();
    let found = find_violating_order_exhaustive(&single, &opts()).unwrap();
    assert_eq!(found.unwrap().ascending(), &[1, 0]);
    let found = find_violating_order_exhaustive(&construct_cyclic_triangle(), &opts()).unwrap();
    assert!(found.is_none());

    let h = construct_h2().without_edge(0);
    let order = find_violating_order_exhaustive(&h, &opts())
        .unwrap()
        .unwrap();
    assert_eq!(common::consistent_count(&h, order.ascending()), 0);
    // the sweep is lexicographic, so it matches the first brute-force violation
    assert_eq!(Some(order.into_vec()), common::first_violation(&h));
}

#[test]
fn backtracking_examples() {
    let (found, _) = find_violating_order_backtracking(&construct_claim1(), &opts()).unwrap();
    assert!(found.is_none());
    let single = OrientedHypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
    let (found, _) = find_violating_order_backtracking(&single, &opts()).unwrap();
    let order = found.unwrap();
    assert!(!is_consistent(&[0, 1, 2], &order).unwrap());
}

#[test]
fn certificate_examples() {
    let c = check_property_o(&construct_h1(), MethodChoice::Auto, &opts()).unwrap();
    assert!(c.has_property_o());
    assert_eq!(c.method, Method::Exhaustive);
    assert_eq!(c.orders_examined, 720);

    let c = check_property_o(
        &OrientedHypergraph::empty(2, 3),
        MethodChoice::Auto,
        &opts(),
    )
    .unwrap();
    assert_eq!(c.verdict, Verdict::Violated);
    assert_eq!(c.violating_order.unwrap().ascending(), &[0, 1, 2]);

    let c = exhaustive(&construct_h2());
    assert!(c.has_property_o());
    assert_eq!(c.orders_examined, 720);

    let c = exhaustive(&construct_claim1());
    assert!(c.has_property_o());
    assert_eq!(c.orders_examined, 40320);

    // auto switches to backtracking above the exhaustive threshold
    let c = check_property_o(
        &construct_general(3).unwrap().with_vertex_count(10).unwrap(),
        MethodChoice::Auto,
        &opts(),
    )
    .unwrap();
    assert_eq!(c.method, Method::Backtracking);
    assert!(c.has_property_o());
}

#[test]
fn invalid_input_is_rejected() {
    let dup = OrientedHypergraph::from_raw(2, 3, [[0, 1], [1, 0]]).unwrap();
    assert!(matches!(
        check_property_o(&dup, MethodChoice::Auto, &opts()),
        Err(Error::Invalid(_))
    ));
    let big = OrientedHypergraph::empty(2, 13);
    assert!(matches!(
        check_property_o(&big, MethodChoice::Exhaustive, &opts()),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn fixtures_agree_with_oracle() {
    for h in common::fixture_corpus() {
        let oracle = common::first_violation(&h);
        for c in [exhaustive(&h), backtracking(&h)] {
            assert_eq!(c.has_property_o(), oracle.is_none());
            if let Some(order) = &c.violating_order {
                assert_eq!(common::consistent_count(&h, order.ascending()), 0);
            }
        }
    }
}

#[test]
fn random_tournaments_agree_with_oracle() {
    let mut agreements = 0;
    for seed in 0..60u64 {
        let (n, k) = [(4, 2), (5, 2), (5, 3), (6, 3), (6, 2), (4, 3)][seed as usize % 6];
        let h = random_tournament(n, k, seed).unwrap();
        let oracle = common::first_violation(&h).is_none();
        assert_eq!(exhaustive(&h).has_property_o(), oracle);
        assert_eq!(backtracking(&h).has_property_o(), oracle);
        agreements += 1;
    }
    assert_eq!(agreements, 60);
}

#[test]
fn h2_minus_edge_violation_passes_recheck() {
    for i in 0..10 {
        let h = construct_h2().without_edge(i);
        let c = backtracking(&h);
        let order = c.violating_order.unwrap();
        recheck_violation(&h, &order).unwrap();
        assert!(h.edges().all(|e| !is_consistent(e, &order).unwrap()));
    }
}

#[test]
fn coverage_examples() {
    let hist = coverage_histogram(&construct_cyclic_triangle(), &opts()).unwrap();
    assert_eq!(
        hist.counts
            .iter()
            .map(|(&c, &m)| (c, m))
            .collect::<Vec<_>>(),
        vec![(1, 3), (2, 3)]
    );

    let single = OrientedHypergraph::new(2, 2, [[0, 1]]).unwrap();
    let hist = coverage_histogram(&single, &opts()).unwrap();
    assert_eq!(
        hist.counts
            .iter()
            .map(|(&c, &m)| (c, m))
            .collect::<Vec<_>>(),
        vec![(0, 1), (1, 1)]
    );

    let h2 = construct_h2();
    let hist = coverage_histogram(&h2, &opts()).unwrap();
    assert_eq!(hist.counts.get(&0).copied().unwrap_or(0), 0);
    assert_eq!(hist.weighted_sum(), 1200);
    assert_eq!(hist.total_orders(), 720);
    let mut oracle = std::collections::BTreeMap::new();
    for o in common::orders(6) {
        *oracle
            .entry(common::consistent_count(&h2, &o))
            .or_insert(0u128) += 1;
    }
    assert_eq!(hist.counts, oracle);
}

/// σ̄-orders: a permutation of the base edge's vertices, then everything else ascending.
fn audit_oracle(h: &OrientedHypergraph, base: usize) -> (Vec<u128>, usize) {
    let base_vertices = h.edge(base).to_vec();
    let rest: Vec<usize> = (0..h.n()).filter(|v| !base_vertices.contains(v)).collect();
    let mut sizes = vec![0u128; h.num_edges()];
    let mut min_cov = usize::MAX;
    for sigma in common::orders(h.k()) {
        let order: Vec<usize> = sigma
            .iter()
            .map(|&i| base_vertices[i])
            .chain(rest.iter().copied())
            .collect();
        let mut cov = 0;
        for (i, e) in h.edges().enumerate() {
            if common::reads_in_order(e, &order) {
                sizes[i] += 1;
                cov += 1;
            }
        }
        min_cov = min_cov.min(cov);
    }
    (sizes, min_cov)
}

#[test]
fn audit_of_claim1() {
    let h = construct_claim1();
    assert_eq!(h.edge(0), &[0, 1, 2]);
    let report = lower_bound_audit(&h, 0).unwrap();
    assert_eq!(report.class_sizes, vec![1, 3, 0, 3, 0, 3, 0, 0, 6, 0]);
    assert_eq!(report.total, 16);
    assert!(report.min_coverage >= 1);
    let (sizes, min_cov) = audit_oracle(&h, 0);
    assert_eq!(report.class_sizes, sizes);
    assert_eq!(report.min_coverage, min_cov);
}

#[test]
fn audit_matches_oracle_everywhere() {
    for (_, h) in common::small_fixtures() {
        for base in 0..h.num_edges() {
            let report = lower_bound_audit(&h, base).unwrap();
            let (sizes, min_cov) = audit_oracle(&h, base);
            assert_eq!(report.class_sizes, sizes);
            assert_eq!(report.min_coverage, min_cov);
            assert_eq!(report.class_sizes[base], 1);
            let k_fact: u128 = (1..=h.k() as u128).product();
            assert!(report.total >= k_fact);
            for (&s, &m) in report.class_sizes.iter().zip(&report.intersection_sizes) {
                let allowed = k_fact / (1..=m as u128).product::<u128>();
                assert!(s == 0 || s == allowed);
            }
        }
    }
}

#[test]
fn audit_disjoint_ascending_edge_has_full_class() {
    let h = OrientedHypergraph::new(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
    let report = lower_bound_audit(&h, 0).unwrap();
    assert_eq!(report.class_sizes, vec![1, 6]);
    assert_eq!(report.intersection_sizes, vec![3, 0]);
}

#[test]
fn six_edge_subsets_of_h2_lack_property_o() {
    let h2 = construct_h2();
    let mut checked = 0;
    for mask in 0u32..1 << 10 {
        if mask.count_ones() != 6 {
            continue;
        }
        let idx: Vec<usize> = (0..10).filter(|i| mask >> i & 1 == 1).collect();
        let h = h2.select_edges(&idx);
        assert!(!exhaustive(&h).has_property_o());
        checked += 1;
    }
    assert_eq!(checked, 210);
}

#[test]
fn f2_is_three() {
    assert!(exhaustive(&construct_cyclic_triangle()).has_property_o());
    let pairs: Vec<[usize; 2]> = (0..4)
        .flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| [a, b]))
        .collect();
    let mut seen = 0;
    for (i, e) in pairs.iter().enumerate() {
        for f in &pairs[i + 1..] {
            let Ok(h) = OrientedHypergraph::new(2, 4, [e, f]) else {
                continue;
            };
            assert!(common::first_violation(&h).is_some());
            assert!(!exhaustive(&h).has_property_o());
            seen += 1;
        }
    }
    // 12 ordered pairs, minus the 6 same-set pairs of pairs
    assert_eq!(seen, 12 * 11 / 2 - 6);
}

fn arb_hypergraph() -> impl Strategy<Value = OrientedHypergraph> {
    (2usize..=3, 3usize..=6, any::<u64>(), any::<u32>()).prop_map(|(k, n, seed, mask)| {
        let t = random_tournament(n, k, seed).unwrap();
        let idx: Vec<usize> = (0..t.num_edges())
            .filter(|i| mask >> (i % 32) & 1 == 1)
            .collect();
        t.select_edges(&idx)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deciders_agree(h in arb_hypergraph()) {
        let oracle = common::first_violation(&h).is_none();
        prop_assert_eq!(exhaustive(&h).has_property_o(), oracle);
        prop_assert_eq!(backtracking(&h).has_property_o(), oracle);
    }

    #[test]
    fn relabel_invariance(h in arb_hypergraph(), seed in any::<u64>()) {
        let map = perm::unrank(h.n(), seed as u128 % arith::factorial(h.n()).unwrap()).unwrap();
        let g = h.relabel(&map).unwrap();
        prop_assert_eq!(exhaustive(&g).has_property_o(), exhaustive(&h).has_property_o());
    }

    #[test]
    fn reversal_invariance(h in arb_hypergraph()) {
        prop_assert_eq!(exhaustive(&h.reverse()).has_property_o(), exhaustive(&h).has_property_o());
    }

    #[test]
    fn edge_monotonicity(h in arb_hypergraph(), extra in any::<u64>()) {
        // adding an edge never destroys Property O
        let full = random_tournament(h.n(), h.k(), extra).unwrap();
        let mut g = h.clone();
        for e in full.edges() {
            if let Ok(bigger) = g.with_edge(e) {
                g = bigger;
                break;
            }
        }
        if exhaustive(&h).has_property_o() {
            prop_assert!(exhaustive(&g).has_property_o());
        }
    }

    #[test]
    fn histogram_conservation(h in arb_hypergraph()) {
        let hist = coverage_histogram(&h, &opts()).unwrap();
        let n_fact = arith::factorial(h.n()).unwrap();
        let k_fact = arith::factorial(h.k()).unwrap();
        prop_assert_eq!(hist.total_orders(), n_fact);
        prop_assert_eq!(hist.weighted_sum(), h.num_edges() as u128 * n_fact / k_fact);
        prop_assert_eq!(hist.uncovered() == 0, exhaustive(&h).has_property_o());
    }
}
