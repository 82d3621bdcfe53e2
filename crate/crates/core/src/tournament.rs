//! Indexing of `k`-tournaments on `n` vertices.
//!
//! `k`-subsets are listed in colexicographic order and orientations of a
//! subset `s_0 < ... < s_{k-1}` in lexicographic order of the permutation
//! `p` with edge `(s_{p(0)}, ..., s_{p(k-1)})`; orientation 0 is ascending.
//! A tournament is the mixed-radix number whose digit `s` (radix `k!`,
//! subset 0 least significant) is the orientation of subset `s`.

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::perm::{all_permutations, rank};

/// All `k`-subsets of `0..n` in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance: bump the first entry that can move up
        let mut i = 0;
        while i < k && (i + 1 == k && cur[i] + 1 >= n || i + 1 < k && cur[i] + 1 == cur[i + 1]) {
            i += 1;
        }
        if i == k {
            return out;
        }
        cur[i] += 1;
        for (t, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = t;
        }
    }
}

/// Colex rank of a sorted subset: `Σ C(s_t, t + 1)`.
pub fn colex_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(t, &s)| binomial(s, t + 1).expect("small binomial") as usize)
        .sum()
}

#[derive(Debug, Clone)]
pub struct TournamentSpace {
    pub n: usize,
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
    pub orientations: Vec<Vec<usize>>,
    pub radix: u64,
    pub total: u64,
}

impl TournamentSpace {
    /// Fails when `C(n,k)·log2(k!)` exceeds `max_bits` or the count does not
    /// fit in 64 bits.
    pub fn new(n: usize, k: usize, max_bits: u32) -> Result<Self> {
        if k < 2 || n < k {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as u128,
                min: 2,
                max: n.max(2) as u128,
            });
        }
        let digits = binomial(n, k)?;
        let radix = factorial(k)?;
        let bits = digits as f64 * (radix as f64).log2();
        let total = u32::try_from(digits)
            .ok()
            .and_then(|d| u64::try_from(radix).ok()?.checked_pow(d));
        match total {
            Some(total) if bits <= max_bits as f64 => Ok(Self {
                n,
                k,
                subsets: colex_subsets(n, k),
                orientations: all_permutations(k),
                radix: radix as u64,
                total,
            }),
            _ => Err(Error::BudgetExceeded {
                what: "tournament enumeration (bits)",
                requested: bits.ceil() as u128,
                limit: max_bits as u128,
            }),
        }
    }

    pub fn digits(&self) -> usize {
        self.subsets.len()
    }

    pub fn decode(&self, mut index: u64, digits: &mut [u64]) {
        for d in digits.iter_mut() {
            *d = index % self.radix;
            index /= self.radix;
        }
    }

    pub fn write_edge(&self, flat: &mut [usize], subset: usize, orientation: u64) {
        let s = &self.subsets[subset];
        let p = &self.orientations[orientation as usize];
        let slot = &mut flat[subset * self.k..(subset + 1) * self.k];
        for (dst, &pi) in slot.iter_mut().zip(p) {
            *dst = s[pi];
        }
    }

    pub fn build(&self, digits: &[u64]) -> OrientedHypergraph {
        let mut flat = vec![0; self.digits() * self.k];
        for (s, &d) in digits.iter().enumerate() {
            self.write_edge(&mut flat, s, d);
        }
        OrientedHypergraph::from_flat_unchecked(self.k, self.n, flat)
    }

    /// Orientation digit of an edge lying on subset `colex_rank(sorted(edge))`.
    pub fn orientation_of(&self, edge: &[usize]) -> (usize, u64) {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let pattern: Vec<usize> = edge
            .iter()
            .map(|v| sorted.binary_search(v).expect("vertex of its own subset"))
            .collect();
        (
            colex_rank(&sorted),
            rank(&pattern).expect("pattern is a permutation") as u64,
        )
    }
}
