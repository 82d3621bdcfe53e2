//! Explicit hypergraphs with Property O and the case-coverage checker for the
//! general `k`-uniform construction.
//!
//! General construction layout, for uniformity `k` and `m = (k-1)!`:
//!
//! | vertex            | index                                   |
//! |-------------------|-----------------------------------------|
//! | `x_i`, 1 ≤ i < k  | `i - 1`                                 |
//! | `a_j`, 1 ≤ j ≤ m  | `(k - 1) + (j - 1)`                     |
//! | fresh `(j, i)`    | `(k - 1) + m + (j - 1)(k - 1) + (i - 1)` |
//!
//! Edges come in two groups. First, for each `j`, the tuple `π_j(x)` followed
//! by `a_j`. Then, for each `j`, each insertion point `i` and each replacement
//! position `ℓ` of the [`ReplacementPlan`], the tuple obtained by inserting
//! `a_j` into `π_j(x)` before position `i` and overwriting position `ℓ` with
//! the fresh vertex `(j, i)`.

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::perm::{next_permutation, unrank};
use crate::verify::{Method, Verdict, VerificationCertificate};

/// Largest edge count `construct_general` will materialise.
pub const GENERAL_EDGE_BUDGET: u128 = 5_000_000;

fn require_k_at_least_3(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u128,
            min: 3,
            max: u8::MAX as u128,
        });
    }
    Ok(())
}

/// The `j`-th (1-based) permutation of `1..=k-1` in lexicographic order;
/// `j = 1` is the identity.
pub fn permutation_at(k: usize, j: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u128,
            min: 2,
            max: u8::MAX as u128,
        });
    }
    let count = factorial(k - 1)?;
    if j == 0 || j as u128 > count {
        return Err(Error::OutOfRange {
            what: "permutation index j",
            value: j as u128,
            min: 1,
            max: count,
        });
    }
    Ok(unrank(k - 1, j as u128 - 1)?
        .into_iter()
        .map(|v| v + 1)
        .collect())
}

/// Places `y` immediately before the `i`-th (1-based) entry of `tuple`.
pub fn insert_at<T: Copy>(tuple: &[T], y: T, i: usize) -> Result<Vec<T>> {
    if i == 0 || i > tuple.len() {
        return Err(Error::OutOfRange {
            what: "insertion position i",
            value: i as u128,
            min: 1,
            max: tuple.len() as u128,
        });
    }
    let mut out = Vec::with_capacity(tuple.len() + 1);
    out.extend_from_slice(&tuple[..i - 1]);
    out.push(y);
    out.extend_from_slice(&tuple[i - 1..]);
    Ok(out)
}

/// Replacement positions `L = {odd ℓ < k} ∪ {k}` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementPlan {
    k: usize,
    positions: Vec<usize>,
}

impl ReplacementPlan {
    pub fn new(k: usize) -> Self {
        let positions = (1..k).step_by(2).chain(std::iter::once(k)).collect();
        Self { k, positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Smallest `ℓ ∈ L` with `rank ∈ {ℓ - 1, ℓ}`: overwriting position `ℓ`
    /// of a consistent tuple with a vertex that has `rank` tuple entries
    /// below it yields a consistent tuple.
    pub fn witness_for_rank(&self, rank: usize) -> Option<usize> {
        self.positions
            .iter()
            .copied()
            .find(|&l| rank + 1 == l || rank == l)
    }

    /// True when every rank `0..=k` has a witness position.
    pub fn covers_all_ranks(&self) -> bool {
        (0..=self.k).all(|r| self.witness_for_rank(r).is_some())
    }
}

/// Index arithmetic for the general construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralLayout {
    k: usize,
    perms: usize,
    plan: ReplacementPlan,
}

impl GeneralLayout {
    pub fn new(k: usize) -> Result<Self> {
        require_k_at_least_3(k)?;
        let perms = usize::try_from(factorial(k - 1)?).map_err(|_| Error::Overflow("(k-1)!"))?;
        Ok(Self {
            k,
            perms,
            plan: ReplacementPlan::new(k),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(k-1)!`, the number of `a_j` vertices.
    pub fn permutations(&self) -> usize {
        self.perms
    }

    pub fn plan(&self) -> &ReplacementPlan {
        &self.plan
    }

    pub fn x_index(&self, i: usize) -> usize {
        i - 1
    }

    pub fn a_index(&self, j: usize) -> usize {
        (self.k - 1) + (j - 1)
    }

    pub fn fresh_index(&self, j: usize, i: usize) -> usize {
        (self.k - 1) + self.perms + (j - 1) * (self.k - 1) + (i - 1)
    }

    pub fn vertex_count(&self) -> usize {
        (self.k - 1) + self.k * self.perms
    }

    pub fn edge_count(&self) -> usize {
        ((self.k - 1) * self.plan.positions.len() + 1) * self.perms
    }

    /// `π_j(x)` as vertex indices.
    pub fn permuted_x(&self, j: usize) -> Result<Vec<usize>> {
        Ok(permutation_at(self.k, j)?
            .into_iter()
            .map(|p| self.x_index(p))
            .collect())
    }

    pub fn base_edge(&self, j: usize) -> Result<Vec<usize>> {
        let mut e = self.permuted_x(j)?;
        e.push(self.a_index(j));
        Ok(e)
    }

    /// `π_j(x)` with `a_j` inserted before position `i`.
    pub fn inserted_tuple(&self, permuted_x: &[usize], j: usize, i: usize) -> Result<Vec<usize>> {
        insert_at(permuted_x, self.a_index(j), i)
    }

    /// As [`Self::inserted_tuple`], writing into a buffer of length `k`.
    pub fn inserted_tuple_into(&self, permuted_x: &[usize], j: usize, i: usize, out: &mut [usize]) {
        out[..i - 1].copy_from_slice(&permuted_x[..i - 1]);
        out[i - 1] = self.a_index(j);
        out[i..].copy_from_slice(&permuted_x[i - 1..]);
    }

    pub fn replaced_edge(&self, inserted: &[usize], j: usize, i: usize, l: usize) -> Vec<usize> {
        let mut e = vec![0; self.k];
        self.replaced_edge_into(inserted, j, i, l, &mut e);
        e
    }

    /// Writes `inserted` with position `l` (1-based) overwritten by the
    /// fresh vertex `(j, i)` into `out`.
    pub fn replaced_edge_into(
        &self,
        inserted: &[usize],
        j: usize,
        i: usize,
        l: usize,
        out: &mut [usize],
    ) {
        for (dst, v) in out
            .iter_mut()
            .zip(self.replaced_edge_iter(inserted, j, i, l))
        {
            *dst = v;
        }
    }

    pub fn replaced_edge_iter<'a>(
        &self,
        inserted: &'a [usize],
        j: usize,
        i: usize,
        l: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        let fresh = self.fresh_index(j, i);
        inserted
            .iter()
            .enumerate()
            .map(move |(q, &v)| if q + 1 == l { fresh } else { v })
    }

    pub fn base_edge_index(&self, j: usize) -> usize {
        j - 1
    }

    pub fn replaced_edge_index(&self, j: usize, i: usize, l: usize) -> usize {
        let slot = self
            .plan
            .positions
            .iter()
            .position(|&p| p == l)
            .expect("position belongs to the replacement plan");
        self.perms + ((j - 1) * (self.k - 1) + (i - 1)) * self.plan.positions.len() + slot
    }
}

/// `k = 2`, `n = 3`, edges `(0,1), (1,2), (2,0)`.
pub fn construct_cyclic_triangle() -> OrientedHypergraph {
    OrientedHypergraph::from_flat_unchecked(2, 3, vec![0, 1, 1, 2, 2, 0])
}

/// The 10-edge 3-graph on `x, y, a, b, c, d, e, f` (indices 0..8 in that order).
pub fn construct_claim1() -> OrientedHypergraph {
    const X: usize = 0;
    const Y: usize = 1;
    const A: usize = 2;
    const B: usize = 3;
    const C: usize = 4;
    const D: usize = 5;
    const E: usize = 6;
    const F: usize = 7;
    let edges = [
        [X, Y, A],
        [A, X, C],
        [C, X, Y],
        [X, A, D],
        [D, A, Y],
        [Y, X, B],
        [B, Y, E],
        [E, Y, X],
        [Y, B, F],
        [F, B, X],
    ];
    OrientedHypergraph::from_flat_unchecked(3, 8, edges.concat())
}

/// The general construction; see the module docs for layout and edge order.
pub fn construct_general(k: usize) -> Result<OrientedHypergraph> {
    let layout = GeneralLayout::new(k)?;
    let count = layout.edge_count() as u128;
    if count > GENERAL_EDGE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "general construction (edges)",
            requested: count,
            limit: GENERAL_EDGE_BUDGET,
        });
    }
    let mut flat = Vec::with_capacity(layout.edge_count() * k);
    for j in 1..=layout.perms {
        flat.extend(layout.base_edge(j)?);
    }
    for j in 1..=layout.perms {
        let px = layout.permuted_x(j)?;
        for i in 1..k {
            let t = layout.inserted_tuple(&px, j, i)?;
            for &l in layout.plan.positions() {
                flat.extend(layout.replaced_edge(&t, j, i, l));
            }
        }
    }
    Ok(OrientedHypergraph::from_flat_unchecked(
        k,
        layout.vertex_count(),
        flat,
    ))
}

/// The 18-edge 3-graph on `a0, a1, a2, b0, b1, b2` (indices 0..6): every
/// `(a_i, a_{i+1}, b_j)` and `(b_i, b_{i+1}, a_j)`, indices mod 3.
pub fn construct_h1() -> OrientedHypergraph {
    let mut flat = Vec::with_capacity(54);
    for (lo, hi) in [(0, 3), (3, 0)] {
        for i in 0..3 {
            for j in 0..3 {
                flat.extend([lo + i, lo + (i + 1) % 3, hi + j]);
            }
        }
    }
    OrientedHypergraph::from_flat_unchecked(3, 6, flat)
}

/// [`construct_claim1`] with `e` identified with `d` and `f` with `c`,
/// on `x, y, a, b, c, d` (indices 0..6).
pub fn construct_h2() -> OrientedHypergraph {
    const X: usize = 0;
    const Y: usize = 1;
    const A: usize = 2;
    const B: usize = 3;
    const C: usize = 4;
    const D: usize = 5;
    let edges = [
        [X, Y, A],
        [A, X, C],
        [C, X, Y],
        [X, A, D],
        [D, A, Y],
        [Y, X, B],
        [B, Y, D],
        [D, Y, X],
        [Y, B, C],
        [C, B, X],
    ];
    OrientedHypergraph::from_flat_unchecked(3, 6, edges.concat())
}

/// `(⌊k/2⌋ + 1)·k! − ⌊k/2⌋·(k−1)!`, exact.
pub fn theorem2_edge_count(k: usize) -> Result<u128> {
    require_k_at_least_3(k)?;
    let half = (k / 2) as u128;
    let lead = (half + 1)
        .checked_mul(factorial(k)?)
        .ok_or(Error::Overflow("edge count"))?;
    let tail = half
        .checked_mul(factorial(k - 1)?)
        .ok_or(Error::Overflow("edge count"))?;
    Ok(lead - tail)
}

/// The same count written as `((k−1)(⌊k/2⌋+1) + 1)·(k−1)!`.
pub fn theorem2_edge_count_product_form(k: usize) -> Result<u128> {
    require_k_at_least_3(k)?;
    let per_perm = (k as u128 - 1) * (k as u128 / 2 + 1) + 1;
    per_perm
        .checked_mul(factorial(k - 1)?)
        .ok_or(Error::Overflow("edge count"))
}

/// One covered case: relative order `π_j` of the `x`'s, `a_j` inserted
/// before position `i`, and the fresh vertex `(j, i)` having `rank` entries
/// of the inserted tuple below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseWitness {
    pub j: u32,
    pub i: u8,
    pub rank: u8,
    /// Replacement position of the witnessing edge.
    pub position: u8,
    pub edge_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredReport {
    pub k: usize,
    /// `π_1 = id` and the `π_j` are pairwise distinct, so every relative
    /// order of the `x`'s is some `π_j`.
    pub permutations_cover: bool,
    /// For every `j`, the insertion points put `a_j` at every non-final
    /// rank while preserving `π_j(x)`.
    pub insertions_cover: bool,
    /// Every rank `0..=k` of a fresh vertex has a replacement position.
    pub ranks_cover: bool,
    pub cases_checked: u64,
    pub expected_cases: u64,
    /// Cases whose witnessing edge turned out not to be consistent.
    pub uncovered: Vec<CaseWitness>,
    /// Every case with its witness; filled only on request.
    pub witnesses: Vec<CaseWitness>,
}

impl StructuredReport {
    pub fn holds(&self) -> bool {
        self.permutations_cover
            && self.insertions_cover
            && self.ranks_cover
            && self.uncovered.is_empty()
            && self.cases_checked == self.expected_cases
    }

    pub fn certificate(&self) -> VerificationCertificate {
        VerificationCertificate {
            verdict: if self.holds() {
                Verdict::PropertyO
            } else {
                Verdict::Violated
            },
            method: Method::Structured,
            violating_order: None,
            orders_examined: 0,
            nodes_expanded: self.cases_checked,
        }
    }
}

/// Checks, without enumerating linear orders, that the case analysis behind
/// the general construction is exhaustive. Every order puts the `x`'s in
/// the relative order of exactly one `π_j`; either the base edge of `j` is
/// consistent, or `a_j` sits at some non-final rank `i - 1`, in which case
/// the fresh vertex `(j, i)` has some rank `r` among that inserted tuple, and
/// the replaced edge chosen for `r` must be consistent with that arrangement.
pub fn structured_verify_general(k: usize, detailed: bool) -> Result<StructuredReport> {
    let layout = GeneralLayout::new(k)?;
    let perms = layout.permutations();
    let plan = layout.plan().positions().to_vec();
    let witness_at: Vec<Option<usize>> =
        (0..=k).map(|r| layout.plan().witness_for_rank(r)).collect();
    let witness_slot: Vec<usize> = witness_at
        .iter()
        .map(|w| {
            w.and_then(|l| plan.iter().position(|&p| p == l))
                .unwrap_or(0)
        })
        .collect();

    let mut permutations_cover = true;
    let mut insertions_cover = true;
    let mut cases_checked = 0u64;
    let mut uncovered = Vec::new();
    let mut witnesses = Vec::new();

    let mut slot_of_x = vec![0usize; k - 1];
    let mut t = vec![0usize; k];
    // per plan position, the fresh ranks r for which the replaced edge is consistent
    let mut valid_ranks = vec![(0usize, 0usize); plan.len()];
    // π_j stepped in place through lexicographic order
    let mut pi: Vec<usize> = (1..k).collect();
    let mut px = vec![0usize; k - 1];
    let mut exhausted = false;
    for j in 1..=perms {
        if exhausted {
            permutations_cover = false;
            break;
        }
        if j == 1 || j == perms {
            permutations_cover &= pi == permutation_at(k, j)?;
        }
        for (dst, &p) in px.iter_mut().zip(&pi) {
            *dst = layout.x_index(p);
        }
        exhausted = !next_permutation(&mut pi);

        let a = layout.a_index(j);
        for i in 1..k {
            layout.inserted_tuple_into(&px, j, i, &mut t);
            if t[i - 1] != a || !t.iter().filter(|&&v| v != a).eq(px.iter()) {
                insertions_cover = false;
                continue;
            }
            for (q, &v) in t.iter().enumerate() {
                if v != a {
                    slot_of_x[v] = q;
                }
            }
            let fresh = layout.fresh_index(j, i);
            for (li, &l) in plan.iter().enumerate() {
                let slots = layout.replaced_edge_iter(&t, j, i, l).map(|v| {
                    if v == fresh {
                        FRESH
                    } else if v == a {
                        i - 1
                    } else {
                        slot_of_x[v]
                    }
                });
                valid_ranks[li] = consistent_fresh_ranks(slots, k);
            }
            cases_checked += witness_at.len() as u64;
            for (r, &witness) in witness_at.iter().enumerate() {
                let consistent = witness.is_some() && {
                    let (lo, hi) = valid_ranks[witness_slot[r]];
                    lo <= r && r <= hi
                };
                if consistent && !detailed {
                    continue;
                }
                let case = CaseWitness {
                    j: j as u32,
                    i: i as u8,
                    rank: r as u8,
                    position: witness.unwrap_or(0) as u8,
                    edge_index: witness.map_or(usize::MAX, |l| layout.replaced_edge_index(j, i, l)),
                };
                if !consistent {
                    uncovered.push(case);
                }
                if detailed && witness.is_some() {
                    witnesses.push(case);
                }
            }
        }
    }
    permutations_cover &= exhausted;

    Ok(StructuredReport {
        k,
        permutations_cover,
        insertions_cover,
        ranks_cover: layout.plan().covers_all_ranks(),
        cases_checked,
        expected_cases: (perms as u64) * (k as u64 - 1) * (k as u64 + 1),
        uncovered,
        witnesses,
    })
}

const FRESH: usize = usize::MAX;

/// Range `lo..=hi` of ranks `r` for which an edge is consistent with the
/// arrangement `t[0] < ... < t[r-1] < fresh < t[r] < ... < t[k-1]`, given
/// the slot in `t` of each edge vertex (`FRESH` for the fresh vertex).
/// An empty range comes back with `lo > hi`.
fn consistent_fresh_ranks(mut slots: impl Iterator<Item = usize>, k: usize) -> (usize, usize) {
    // non-fresh slot q has rank q + [q >= r]; the fresh vertex has rank r
    let (mut lo, mut hi) = (0, k);
    let Some(mut prev) = slots.next() else {
        return (lo, hi);
    };
    for cur in slots {
        match (prev == FRESH, cur == FRESH) {
            (false, false) if prev >= cur => return (1, 0),
            (false, false) => {}
            (false, true) => lo = lo.max(prev + 1),
            (true, false) => hi = hi.min(cur),
            (true, true) => return (1, 0),
        }
        prev = cur;
    }
    (lo, hi)
}

/// Named families for the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    CyclicTriangle,
    Claim1,
    General(usize),
    H1,
    H2,
}

pub fn construct(family: Family) -> Result<OrientedHypergraph> {
    Ok(match family {
        Family::CyclicTriangle => construct_cyclic_triangle(),
        Family::Claim1 => construct_claim1(),
        Family::General(k) => construct_general(k)?,
        Family::H1 => construct_h1(),
        Family::H2 => construct_h2(),
    })
}
