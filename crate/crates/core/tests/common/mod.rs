#![allow(dead_code)]

use property_o::constructions::*;
use property_o::OrientedHypergraph;

/// Every permutation of `0..n` in lexicographic order, built recursively.
pub fn orders(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Whether `edge` reads left to right in `ascending`.
pub fn reads_in_order(edge: &[usize], ascending: &[usize]) -> bool {
    let at = |v: usize| ascending.iter().position(|&u| u == v).unwrap();
    edge.windows(2).all(|w| at(w[0]) < at(w[1]))
}

pub fn consistent_count(h: &OrientedHypergraph, ascending: &[usize]) -> usize {
    h.edges().filter(|e| reads_in_order(e, ascending)).count()
}

/// First order (lexicographically) avoiding every edge.
pub fn first_violation(h: &OrientedHypergraph) -> Option<Vec<usize>> {
    orders(h.n())
        .into_iter()
        .find(|o| consistent_count(h, o) == 0)
}

/// Constructions small enough for exhaustive checking.
pub fn small_fixtures() -> Vec<(&'static str, OrientedHypergraph)> {
    vec![
        ("cyclic", construct_cyclic_triangle()),
        ("claim1", construct_claim1()),
        ("general3", construct_general(3).unwrap()),
        ("h1", construct_h1()),
        ("h2", construct_h2()),
    ]
}

/// Fixtures, their reversals, and all single-edge deletions of both.
pub fn fixture_corpus() -> Vec<OrientedHypergraph> {
    let mut out = Vec::new();
    for (_, h) in small_fixtures() {
        for g in [h.clone(), h.reverse()] {
            for i in 0..g.num_edges() {
                out.push(g.without_edge(i));
            }
            out.push(g);
        }
    }
    out
}
