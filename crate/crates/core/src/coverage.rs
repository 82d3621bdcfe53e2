//! Order-coverage statistics: how many edges each linear order makes
//! consistent, and the permutation-class audit around a base edge.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{count_consistent_orders, factorial};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::order::{consistent_with_positions, LinearOrder};
use crate::perm::{all_permutations, next_permutation};
use crate::verify::{with_workers, VerifyOptions};

/// `counts[c]` is the number of linear orders with exactly `c` consistent edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverageHistogram {
    pub counts: BTreeMap<usize, u128>,
}

impl CoverageHistogram {
    pub fn total_orders(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn weighted_sum(&self) -> u128 {
        self.counts.iter().map(|(&c, &m)| c as u128 * m).sum()
    }

    pub fn uncovered(&self) -> u128 {
        self.counts.get(&0).copied().unwrap_or(0)
    }

    fn merge(mut self, other: Self) -> Self {
        for (c, m) in other.counts {
            *self.counts.entry(c).or_default() += m;
        }
        self
    }
}

/// The two identities every histogram must satisfy:
/// `Σ counts = n!` and `Σ c·counts = |E|·n!/k!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conservation {
    pub total_orders: u128,
    pub expected_orders: u128,
    pub weighted_sum: u128,
    pub expected_weighted_sum: u128,
}

impl Conservation {
    pub fn of(h: &OrientedHypergraph, hist: &CoverageHistogram) -> Result<Self> {
        let expected_orders = factorial(h.n())?;
        let per_edge = if h.num_edges() == 0 {
            0
        } else {
            count_consistent_orders(h.k(), h.n())?
        };
        Ok(Self {
            total_orders: hist.total_orders(),
            expected_orders,
            weighted_sum: hist.weighted_sum(),
            expected_weighted_sum: per_edge
                .checked_mul(h.num_edges() as u128)
                .ok_or(Error::Overflow("|E|·n!/k!"))?,
        })
    }

    pub fn orders_hold(&self) -> bool {
        self.total_orders == self.expected_orders
    }

    pub fn weighted_holds(&self) -> bool {
        self.weighted_sum == self.expected_weighted_sum
    }
}

pub fn coverage_histogram(
    h: &OrientedHypergraph,
    opts: &VerifyOptions,
) -> Result<CoverageHistogram> {
    h.validate().map_err(Error::Invalid)?;
    let n = h.n();
    if n > opts.max_exhaustive_n {
        return Err(Error::BudgetExceeded {
            what: "coverage histogram (vertices)",
            requested: n as u128,
            limit: opts.max_exhaustive_n as u128,
        });
    }
    let chunk = |first: usize| {
        let mut hist = CoverageHistogram::default();
        let mut order: Vec<usize> = std::iter::once(first)
            .chain((0..n).filter(|&v| v != first))
            .collect();
        let mut pos = vec![0; n];
        loop {
            for (r, &v) in order.iter().enumerate() {
                pos[v] = r;
            }
            let c = h
                .edges()
                .filter(|e| consistent_with_positions(e, &pos))
                .count();
            *hist.counts.entry(c).or_default() += 1;
            if !next_permutation(&mut order[1..]) {
                return hist;
            }
        }
    };
    let hist = if n == 0 {
        let mut hist = CoverageHistogram::default();
        hist.counts.insert(0, 1);
        hist
    } else if opts.jobs <= 1 {
        (0..n)
            .map(chunk)
            .fold(CoverageHistogram::default(), CoverageHistogram::merge)
    } else {
        with_workers(opts.jobs, || {
            (0..n)
                .into_par_iter()
                .map(chunk)
                .reduce(CoverageHistogram::default, CoverageHistogram::merge)
        })
    };

    let check = Conservation::of(h, &hist)?;
    if !check.orders_hold() || !check.weighted_holds() {
        return Err(Error::Invariant(format!(
            "histogram conservation failed: {check:?}"
        )));
    }
    Ok(hist)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub base_edge: usize,
    /// Per edge, the number of base permutations whose order makes it consistent.
    pub class_sizes: Vec<u128>,
    /// Per edge, how many of its vertices belong to the base edge.
    pub intersection_sizes: Vec<usize>,
    pub total: u128,
    pub residue: u128,
    /// Fewest consistent edges over all base-permutation orders.
    pub min_coverage: usize,
}

/// Relabels so the base edge reads `0, 1, ..., k-1` and the other vertices
/// follow in ascending original order, then, for every permutation `σ` of the
/// base block, examines the order `σ(0) < ... < σ(k-1) < k < k+1 < ...`.
pub fn lower_bound_audit(h: &OrientedHypergraph, base_edge: usize) -> Result<AuditReport> {
    h.validate().map_err(Error::Invalid)?;
    if base_edge >= h.num_edges() {
        return Err(Error::OutOfRange {
            what: "base edge index",
            value: base_edge as u128,
            min: 0,
            max: h.num_edges().saturating_sub(1) as u128,
        });
    }
    let (k, n) = (h.k(), h.n());
    let base = h.edge(base_edge);

    let mut map = vec![usize::MAX; n];
    for (i, &v) in base.iter().enumerate() {
        map[v] = i;
    }
    for (next, slot) in (k..).zip(map.iter_mut().filter(|s| **s == usize::MAX)) {
        *slot = next;
    }
    let relabeled = h.relabel(&map)?;

    let k_fact = factorial(k)?;
    let mut class_sizes = vec![0u128; h.num_edges()];
    let mut min_coverage = usize::MAX;
    let mut pos = vec![0; n];
    for sigma in all_permutations(k) {
        let order = LinearOrder::from_vec_unchecked(sigma.iter().copied().chain(k..n).collect());
        for (r, &v) in order.ascending().iter().enumerate() {
            pos[v] = r;
        }
        let mut covered = 0;
        for (i, e) in relabeled.edges().enumerate() {
            if consistent_with_positions(e, &pos) {
                class_sizes[i] += 1;
                covered += 1;
            }
        }
        min_coverage = min_coverage.min(covered);
    }

    let intersection_sizes: Vec<usize> = relabeled
        .edges()
        .map(|e| e.iter().filter(|&&v| v < k).count())
        .collect();
    for (i, (&size, &m)) in class_sizes.iter().zip(&intersection_sizes).enumerate() {
        let allowed = k_fact / factorial(m)?;
        if size != 0 && size != allowed {
            return Err(Error::Invariant(format!(
                "class size of edge {i} is {size}, expected 0 or {allowed}"
            )));
        }
    }
    if class_sizes[base_edge] != 1 {
        return Err(Error::Invariant(format!(
            "base edge class size is {}",
            class_sizes[base_edge]
        )));
    }

    let total: u128 = class_sizes.iter().sum();
    Ok(AuditReport {
        base_edge,
        residue: total % k as u128,
        total,
        class_sizes,
        intersection_sizes,
        min_coverage,
    })
}
