//! Seeded random `k`-tournaments and Property O rate estimates.

use rayon::prelude::*;

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::perm::unrank;
use crate::rng::{below, derive};
use crate::tournament::colex_subsets;
use crate::verify::{check_property_o, with_workers, MethodChoice, VerifyOptions};

/// Largest number of edges a sampled tournament may have.
pub const RANDOM_TOURNAMENT_EDGE_BUDGET: u128 = 1_000_000;

/// A uniformly random `k`-tournament on `n` vertices. Subset `s` (colex
/// order) gets orientation `unrank(k, below(derive(seed, s), k!))`; see
/// [`crate::rng`] for the generator.
pub fn random_tournament(n: usize, k: usize, seed: u64) -> Result<OrientedHypergraph> {
    if k < 2 || n < k {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u128,
            min: 2,
            max: n.max(2) as u128,
        });
    }
    let edges = binomial(n, k)?;
    if edges > RANDOM_TOURNAMENT_EDGE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "random tournament (edges)",
            requested: edges,
            limit: RANDOM_TOURNAMENT_EDGE_BUDGET,
        });
    }
    let orientations = u64::try_from(factorial(k)?).map_err(|_| Error::Overflow("k!"))?;
    let mut flat = Vec::with_capacity(edges as usize * k);
    for (s, subset) in colex_subsets(n, k).iter().enumerate() {
        let draw = below(derive(seed, s as u64), orientations);
        flat.extend(unrank(k, draw as u128)?.into_iter().map(|p| subset[p]));
    }
    Ok(OrientedHypergraph::from_flat_unchecked(k, n, flat))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary {
    pub n: usize,
    pub k: usize,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub standard_error: f64,
    pub seed: u64,
}

/// Fraction of `trials` random tournaments with Property O. Trial `t` uses
/// the tournament seeded by `derive(seed, t)`, so the summary does not depend
/// on `jobs`.
pub fn estimate_property_o_rate(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<TrialSummary> {
    if trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0,
            min: 1,
            max: u64::MAX as u128,
        });
    }
    let opts = VerifyOptions::default();
    let trial = |t: u64| -> Result<u64> {
        let h = random_tournament(n, k, derive(seed, t))?;
        Ok(check_property_o(&h, MethodChoice::Auto, &opts)?.has_property_o() as u64)
    };
    let successes = if jobs <= 1 {
        (0..trials).map(trial).sum::<Result<u64>>()?
    } else {
        with_workers(jobs, || {
            (0..trials).into_par_iter().map(trial).sum::<Result<u64>>()
        })?
    };
    let rate = successes as f64 / trials as f64;
    Ok(TrialSummary {
        n,
        k,
        trials,
        successes,
        rate,
        standard_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
        seed,
    })
}
