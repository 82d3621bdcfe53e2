//! Exhaustive census of `k`-tournaments and edge-minimality analysis.
//!
//! Adding edges never destroys Property O, and any oriented `k`-graph can be
//! completed to a tournament, so "no `k`-tournament on `n` vertices has
//! Property O" is equivalent to "no oriented `k`-graph on `n` vertices does".

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::order::{consistent_with_positions, LinearOrder};
use crate::perm::all_permutations;
use crate::tournament::TournamentSpace;
use crate::verify::{check_property_o, with_workers, Backtracker, MethodChoice, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Contiguous index ranges processed by independent workers.
    pub parallel_partitions: usize,
    /// Visit only tournaments whose index is minimal among all relabelings.
    pub symmetry_pruning: bool,
    /// Print a progress line to stderr every this many tournaments; 0 disables.
    pub progress_interval: u64,
    /// Stop at the first (lowest-index) tournament with Property O.
    pub stop_on_witness: bool,
    /// Skip the enumeration when `C(n,k) <= k!`.
    pub early_reject: bool,
    /// Re-check every violating order found against all edges.
    pub recheck_violations: bool,
    /// Refuse spaces needing more than this many bits to index.
    pub max_bits: u32,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            parallel_partitions: 1,
            symmetry_pruning: false,
            progress_interval: 0,
            stop_on_witness: true,
            early_reject: true,
            recheck_violations: false,
            max_bits: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    pub k: usize,
    pub total_enumerated: u64,
    /// Index at which the visitor asked to stop, if it did.
    pub stopped_at: Option<u64>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    pub total_enumerated: u64,
    pub property_o_found: u64,
    pub first_witness: Option<OrientedHypergraph>,
    pub first_witness_index: Option<u64>,
    /// Decided by `C(n,k) <= k!` without enumerating.
    pub early_rejected: bool,
    pub violations_rechecked: u64,
    pub elapsed: Duration,
    pub options: CensusOptions,
}

/// Relabeling images of every (subset, orientation) pair, for all
/// non-identity vertex permutations.
struct SymmetryTable {
    cells: usize,
    images: Vec<(u32, u32)>,
}

const SYMMETRY_TABLE_BUDGET: u128 = 1 << 24;

impl SymmetryTable {
    fn new(space: &TournamentSpace) -> Result<Self> {
        let cells = space.digits() * space.radix as usize;
        let relabelings = factorial(space.n)? - 1;
        let size = relabelings * cells as u128;
        if size > SYMMETRY_TABLE_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "symmetry table (entries)",
                requested: size,
                limit: SYMMETRY_TABLE_BUDGET,
            });
        }
        let mut images = Vec::with_capacity(size as usize);
        let mut edge = vec![0; space.k];
        for rho in all_permutations(space.n).into_iter().skip(1) {
            for s in 0..space.digits() {
                for d in 0..space.radix {
                    let sub = &space.subsets[s];
                    let p = &space.orientations[d as usize];
                    for (dst, &pi) in edge.iter_mut().zip(p) {
                        *dst = rho[sub[pi]];
                    }
                    let (s2, d2) = space.orientation_of(&edge);
                    images.push((s2 as u32, d2 as u32));
                }
            }
        }
        Ok(Self { cells, images })
    }

    /// True when no relabeling maps `digits` to a smaller index.
    fn is_canonical(&self, space: &TournamentSpace, digits: &[u64], image: &mut [u64]) -> bool {
        let radix = space.radix as usize;
        for table in self.images.chunks_exact(self.cells) {
            for (s, &d) in digits.iter().enumerate() {
                let (s2, d2) = table[s * radix + d as usize];
                image[s2 as usize] = d2 as u64;
            }
            // most significant digit is the last subset
            for (a, b) in image.iter().rev().zip(digits.iter().rev()) {
                if a != b {
                    if a < b {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }
}

struct Progress {
    interval: u64,
    examined: AtomicU64,
    found: AtomicU64,
    start: Instant,
}

impl Progress {
    const BATCH: u64 = 1 << 12;

    fn add(&self, examined: u64) {
        if self.interval == 0 {
            return;
        }
        let before = self.examined.fetch_add(examined, Ordering::Relaxed);
        let after = before + examined;
        if after / self.interval > before / self.interval {
            eprintln!(
                "examined={} found={} elapsed={:.3}",
                after,
                self.found.load(Ordering::Relaxed),
                self.start.elapsed().as_secs_f64()
            );
        }
    }
}

struct ChunkResult {
    lo: u64,
    visited: u64,
    stopped_at: Option<u64>,
}

/// Visits every `k`-tournament on `n` vertices in index order (see
/// [`crate::tournament`]). Stopping is deterministic: the run behaves as if
/// indices were visited one by one up to the lowest index at which the
/// visitor returned [`Visit::Stop`]; visits past that index are discarded
/// from the count.
pub fn enumerate_tournaments(
    n: usize,
    k: usize,
    options: &CensusOptions,
    visitor: impl Fn(u64, &OrientedHypergraph) -> Visit + Sync,
) -> Result<EnumerationReport> {
    enumerate_with_state(n, k, options, || (), |_, i, h| visitor(i, h))
}

fn enumerate_with_state<S>(
    n: usize,
    k: usize,
    options: &CensusOptions,
    init: impl Fn() -> S + Sync,
    visit: impl Fn(&mut S, u64, &OrientedHypergraph) -> Visit + Sync,
) -> Result<EnumerationReport> {
    let start = Instant::now();
    let space = TournamentSpace::new(n, k, options.max_bits)?;
    let symmetry = if options.symmetry_pruning {
        Some(SymmetryTable::new(&space)?)
    } else {
        None
    };
    let partitions = options.parallel_partitions.max(1) as u64;
    let stop = AtomicU64::new(u64::MAX);
    let progress = Progress {
        interval: options.progress_interval,
        examined: AtomicU64::new(0),
        found: AtomicU64::new(0),
        start,
    };

    let run_chunk = |part: u64| -> ChunkResult {
        let lo = space.total / partitions * part + part.min(space.total % partitions);
        let hi = lo + space.total / partitions + u64::from(part < space.total % partitions);
        let mut result = ChunkResult {
            lo,
            visited: 0,
            stopped_at: None,
        };
        if lo >= hi {
            return result;
        }
        let mut state = init();
        let mut digits = vec![0u64; space.digits()];
        let mut image = vec![0u64; space.digits()];
        space.decode(lo, &mut digits);
        let mut h = space.build(&digits);
        let mut pending = 0u64;
        let mut idx = lo;
        loop {
            if idx > stop.load(Ordering::Relaxed) {
                break;
            }
            let canonical = symmetry
                .as_ref()
                .is_none_or(|t| t.is_canonical(&space, &digits, &mut image));
            if canonical {
                result.visited += 1;
                pending += 1;
                if visit(&mut state, idx, &h) == Visit::Stop {
                    result.stopped_at = Some(idx);
                    stop.fetch_min(idx, Ordering::Relaxed);
                    break;
                }
                if pending == Progress::BATCH {
                    progress.add(pending);
                    pending = 0;
                }
            }
            idx += 1;
            if idx == hi {
                break;
            }
            let mut s = 0;
            loop {
                digits[s] += 1;
                if digits[s] < space.radix {
                    space.write_edge(h.flat_mut(), s, digits[s]);
                    break;
                }
                digits[s] = 0;
                space.write_edge(h.flat_mut(), s, 0);
                s += 1;
            }
        }
        progress.add(pending);
        result
    };

    let chunks: Vec<ChunkResult> = if partitions == 1 {
        vec![run_chunk(0)]
    } else {
        with_workers(partitions as usize, || {
            (0..partitions).into_par_iter().map(run_chunk).collect()
        })
    };

    let stopped_at = chunks.iter().filter_map(|c| c.stopped_at).min();
    let total_enumerated = chunks
        .iter()
        .filter(|c| stopped_at.is_none_or(|s| c.lo <= s))
        .map(|c| c.visited)
        .sum();
    Ok(EnumerationReport {
        n,
        k,
        total_enumerated,
        stopped_at,
        elapsed: start.elapsed(),
    })
}

/// Census of all `k`-tournaments on `n` vertices. `property_o_found == 0`
/// certifies that no oriented `k`-graph on `n` vertices has Property O.
pub fn prove_vertex_lower_bound(
    n: usize,
    k: usize,
    options: &CensusOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let edges = binomial(n, k)?;
    if options.early_reject && k >= 2 && n >= k && edges <= factorial(k)? {
        return Ok(SearchReport {
            n,
            k,
            total_enumerated: 0,
            property_o_found: 0,
            first_witness: None,
            first_witness_index: None,
            early_rejected: true,
            violations_rechecked: 0,
            elapsed: start.elapsed(),
            options: *options,
        });
    }

    let witnesses: Mutex<Vec<(u64, OrientedHypergraph)>> = Mutex::new(Vec::new());
    let rechecked = AtomicU64::new(0);
    let failed_recheck = AtomicU64::new(0);
    let report = enumerate_with_state(
        n,
        k,
        options,
        || (Backtracker::default(), vec![0usize; n]),
        |(bt, pos), idx, h| {
            let violated = bt.run(h, None).expect("uniformity checked by the space");
            if violated {
                if options.recheck_violations {
                    for (r, &v) in bt.order.iter().enumerate() {
                        pos[v] = r;
                    }
                    if h.edges().any(|e| consistent_with_positions(e, pos)) {
                        failed_recheck.fetch_add(1, Ordering::Relaxed);
                    }
                    rechecked.fetch_add(1, Ordering::Relaxed);
                }
                return Visit::Continue;
            }
            witnesses.lock().unwrap().push((idx, h.clone()));
            if options.stop_on_witness {
                Visit::Stop
            } else {
                Visit::Continue
            }
        },
    )?;
    if failed_recheck.load(Ordering::Relaxed) > 0 {
        return Err(Error::Invariant(
            "a census violating order failed its re-check".into(),
        ));
    }

    let mut witnesses = witnesses.into_inner().unwrap();
    witnesses.retain(|(i, _)| report.stopped_at.is_none_or(|s| *i <= s));
    witnesses.sort_by_key(|(i, _)| *i);
    let property_o_found = witnesses.len() as u64;
    let first = witnesses.into_iter().next();
    Ok(SearchReport {
        n,
        k,
        total_enumerated: report.total_enumerated,
        property_o_found,
        first_witness_index: first.as_ref().map(|(i, _)| *i),
        first_witness: first.map(|(_, h)| h),
        early_rejected: false,
        violations_rechecked: rechecked.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        options: *options,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVerdict {
    pub edge: usize,
    pub essential: bool,
    /// A violating order of the hypergraph without this edge.
    pub witness: Option<LinearOrder>,
}

/// For each edge, whether deleting it destroys Property O.
pub fn edge_minimality(h: &OrientedHypergraph, opts: &VerifyOptions) -> Result<Vec<EdgeVerdict>> {
    if !check_property_o(h, MethodChoice::Auto, opts)?.has_property_o() {
        return Err(Error::NotPropertyO);
    }
    let verdict = |edge: usize| -> Result<EdgeVerdict> {
        let cert = check_property_o(&h.without_edge(edge), MethodChoice::Auto, opts)?;
        Ok(EdgeVerdict {
            edge,
            essential: !cert.has_property_o(),
            witness: cert.violating_order,
        })
    };
    (0..h.num_edges()).map(verdict).collect()
}
