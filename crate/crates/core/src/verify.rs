//! Property O deciders.
//!
//! Two independent routes decide whether some linear order avoids every edge:
//! a lexicographic sweep over all `n!` orders, and a depth-first search that
//! builds the order from the minimum upwards while tracking, per edge, how
//! far the prefix has advanced through it.

use rayon::prelude::*;

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::order::{consistent_with_positions, is_consistent, LinearOrder};
use crate::perm::{next_permutation, rank};
use crate::states::StateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PropertyO,
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Backtracking,
    Structured,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Backtracking => "backtracking",
            Method::Structured => "structured",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    Exhaustive,
    Backtracking,
    #[default]
    Auto,
}

/// Largest vertex count for which `Auto` picks the exhaustive sweep.
pub const AUTO_EXHAUSTIVE_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Exhaustive enumeration refuses hypergraphs with more vertices.
    pub max_exhaustive_n: usize,
    /// Worker threads for the exhaustive sweep.
    pub jobs: usize,
    /// Abort the depth-first search after this many placements.
    pub node_limit: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_exhaustive_n: 12,
            jobs: 1,
            node_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub violating_order: Option<LinearOrder>,
    pub orders_examined: u128,
    pub nodes_expanded: u64,
}

impl VerificationCertificate {
    pub fn has_property_o(&self) -> bool {
        self.verdict == Verdict::PropertyO
    }
}

fn exhaustive_budget(h: &OrientedHypergraph, opts: &VerifyOptions) -> Result<()> {
    if h.n() > opts.max_exhaustive_n {
        return Err(Error::BudgetExceeded {
            what: "exhaustive enumeration (vertices)",
            requested: h.n() as u128,
            limit: opts.max_exhaustive_n as u128,
        });
    }
    Ok(())
}

/// Runs `visit` on every order of `0..n` whose minimum is `first`, in
/// lexicographic order, until it returns `Some`.
fn sweep_orders_starting_with<T>(
    n: usize,
    first: usize,
    mut visit: impl FnMut(&[usize], &[usize]) -> Option<T>,
) -> Option<T> {
    let mut order: Vec<usize> = std::iter::once(first)
        .chain((0..n).filter(|&v| v != first))
        .collect();
    let mut pos = vec![0; n];
    loop {
        for (r, &v) in order.iter().enumerate() {
            pos[v] = r;
        }
        if let Some(t) = visit(&order, &pos) {
            return Some(t);
        }
        if !next_permutation(&mut order[1..]) {
            return None;
        }
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads, or inline when `jobs <= 1`.
pub(crate) fn with_workers<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// The lexicographically first order (by ascending sequence) consistent with
/// no edge, or `None` when `h` has Property O.
pub fn find_violating_order_exhaustive(
    h: &OrientedHypergraph,
    opts: &VerifyOptions,
) -> Result<Option<LinearOrder>> {
    exhaustive_budget(h, opts)?;
    Ok(exhaustive_search(h, opts.jobs))
}

fn exhaustive_search(h: &OrientedHypergraph, jobs: usize) -> Option<LinearOrder> {
    let n = h.n();
    if n == 0 {
        return (h.num_edges() == 0).then(|| LinearOrder::identity(0));
    }
    let chunk = |first: usize| {
        sweep_orders_starting_with(n, first, |order, pos| {
            h.edges()
                .all(|e| !consistent_with_positions(e, pos))
                .then(|| order.to_vec())
        })
    };
    let found = if jobs <= 1 {
        (0..n).find_map(chunk)
    } else {
        with_workers(jobs, || (0..n).into_par_iter().find_map_first(chunk))
    };
    found.map(LinearOrder::from_vec_unchecked)
}

/// Depth-first search for a violating order.
///
/// Vertices are appended smallest-first. Each edge records the index of the
/// next vertex it expects; placing that vertex advances the edge, placing any
/// other vertex of the edge kills it. A live edge that has advanced to its
/// last vertex can no longer be avoided, so a placement leading there is
/// never tried. A vertex that no live edge currently expects can only kill
/// edges, so it is placed at once without branching. On hypergraphs with
/// more than [`MEMO_MIN_N`] vertices, exhausted states are remembered.
pub fn find_violating_order_backtracking(
    h: &OrientedHypergraph,
    opts: &VerifyOptions,
) -> Result<(Option<LinearOrder>, u64)> {
    let mut bt = Backtracker::default();
    let found = bt.run(h, opts.node_limit)?;
    Ok((
        found.then(|| LinearOrder::from_vec_unchecked(bt.order.clone())),
        bt.nodes,
    ))
}

const DEAD: u8 = u8::MAX;

/// Vertex count above which the search keeps a table of exhausted states.
pub const MEMO_MIN_N: usize = 12;
const MEMO_CAPACITY: usize = 20_000_000;

/// Reusable search state; buffers survive across calls.
#[derive(Debug, Default)]
pub(crate) struct Backtracker {
    n: usize,
    k: usize,
    flat: Vec<usize>,
    occ_start: Vec<usize>,
    occ: Vec<(u32, u8)>,
    progress: Vec<u8>,
    expected_by: Vec<u32>,
    placed: Vec<bool>,
    pub(crate) order: Vec<usize>,
    undo: Vec<(u32, u8)>,
    pub(crate) nodes: u64,
    node_limit: u64,
    memo: Option<StateSet>,
    key: Vec<u8>,
}

enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

impl Backtracker {
    fn load(&mut self, h: &OrientedHypergraph) {
        let (n, k) = (h.n(), h.k());
        self.n = n;
        self.k = k;
        self.flat.clear();
        self.flat.extend_from_slice(h.flat());
        let m = h.num_edges();

        self.occ_start.clear();
        self.occ_start.resize(n + 1, 0);
        for &v in &self.flat {
            self.occ_start[v + 1] += 1;
        }
        for v in 0..n {
            self.occ_start[v + 1] += self.occ_start[v];
        }
        self.occ.clear();
        self.occ.resize(self.flat.len(), (0, 0));
        let mut fill = self.occ_start.clone();
        for (i, &v) in self.flat.iter().enumerate() {
            self.occ[fill[v]] = ((i / k) as u32, (i % k) as u8);
            fill[v] += 1;
        }

        self.progress.clear();
        self.progress.resize(m, 0);
        self.expected_by.clear();
        self.expected_by.resize(n, 0);
        for e in 0..m {
            self.expected_by[self.flat[e * k]] += 1;
        }
        self.placed.clear();
        self.placed.resize(n, false);
        self.order.clear();
        self.undo.clear();
        self.nodes = 0;
        self.memo = (n > MEMO_MIN_N).then(|| StateSet::new(n.div_ceil(8) + m));
    }

    /// Returns whether a violating order exists; on success it is in `order`.
    pub(crate) fn run(&mut self, h: &OrientedHypergraph, node_limit: Option<u64>) -> Result<bool> {
        if h.k() >= DEAD as usize {
            return Err(Error::OutOfRange {
                what: "uniformity",
                value: h.k() as u128,
                min: 2,
                max: DEAD as u128 - 1,
            });
        }
        self.load(h);
        self.node_limit = node_limit.unwrap_or(u64::MAX);
        match self.search() {
            Outcome::Found => Ok(true),
            Outcome::Exhausted => Ok(false),
            Outcome::Aborted => Err(Error::BudgetExceeded {
                what: "backtracking search (nodes)",
                requested: self.nodes as u128,
                limit: self.node_limit as u128,
            }),
        }
    }

    fn set_progress(&mut self, e: usize, new: u8) {
        let old = self.progress[e];
        if old != DEAD && (old as usize) < self.k {
            self.expected_by[self.flat[e * self.k + old as usize]] -= 1;
        }
        if new != DEAD && (new as usize) < self.k {
            self.expected_by[self.flat[e * self.k + new as usize]] += 1;
        }
        self.progress[e] = new;
    }

    /// Placing `v` would leave some live edge with only its last vertex
    /// unplaced (or complete it outright).
    fn blocked(&self, v: usize) -> bool {
        self.occ[self.occ_start[v]..self.occ_start[v + 1]]
            .iter()
            .any(|&(e, p)| self.progress[e as usize] == p && p as usize + 2 >= self.k)
    }

    /// Placed set plus per-edge progress; determines every continuation.
    fn fill_state_key(&mut self) {
        self.key.clear();
        for chunk in self.placed.chunks(8) {
            self.key.push(
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (b, &p)| acc | (p as u8) << b),
            );
        }
        self.key.extend_from_slice(&self.progress);
    }

    fn place(&mut self, v: usize) {
        for idx in self.occ_start[v]..self.occ_start[v + 1] {
            let (e, p) = self.occ[idx];
            let e = e as usize;
            let cur = self.progress[e];
            if cur == DEAD {
                continue;
            }
            self.undo.push((e as u32, cur));
            self.set_progress(e, if cur == p { cur + 1 } else { DEAD });
        }
        self.placed[v] = true;
        self.order.push(v);
        self.nodes += 1;
    }

    fn unplace(&mut self, v: usize, undo_mark: usize) {
        while self.undo.len() > undo_mark {
            let (e, old) = self.undo.pop().unwrap();
            self.set_progress(e as usize, old);
        }
        self.placed[v] = false;
        self.order.pop();
    }

    fn search(&mut self) -> Outcome {
        if self.order.len() == self.n {
            return Outcome::Found;
        }
        if self.nodes >= self.node_limit {
            return Outcome::Aborted;
        }
        let memoize = self.memo.is_some();
        if memoize {
            self.fill_state_key();
            if self.memo.as_ref().is_some_and(|m| m.contains(&self.key)) {
                return Outcome::Exhausted;
            }
        }
        let out = self.expand();
        if memoize && matches!(out, Outcome::Exhausted) {
            // children overwrote the key buffer
            self.fill_state_key();
            if let Some(memo) = self.memo.as_mut().filter(|m| m.len() < MEMO_CAPACITY) {
                memo.insert(&self.key);
            }
        }
        out
    }

    fn expand(&mut self) -> Outcome {
        let forced = (0..self.n).find(|&v| !self.placed[v] && self.expected_by[v] == 0);
        if let Some(v) = forced {
            let mark = self.undo.len();
            self.place(v);
            let out = self.search();
            if !matches!(out, Outcome::Found) {
                self.unplace(v, mark);
            }
            return out;
        }
        for v in 0..self.n {
            if self.placed[v] || self.blocked(v) {
                continue;
            }
            let mark = self.undo.len();
            self.place(v);
            match self.search() {
                Outcome::Exhausted => self.unplace(v, mark),
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Decides Property O with the chosen method. Violating orders are
/// re-checked against every edge before being returned.
pub fn check_property_o(
    h: &OrientedHypergraph,
    choice: MethodChoice,
    opts: &VerifyOptions,
) -> Result<VerificationCertificate> {
    h.validate().map_err(Error::Invalid)?;
    let method = match choice {
        MethodChoice::Exhaustive => Method::Exhaustive,
        MethodChoice::Backtracking => Method::Backtracking,
        MethodChoice::Auto if h.n() <= AUTO_EXHAUSTIVE_MAX_N => Method::Exhaustive,
        MethodChoice::Auto => Method::Backtracking,
    };
    let cert = match method {
        Method::Exhaustive => {
            let found = find_violating_order_exhaustive(h, opts)?;
            let orders_examined = match &found {
                Some(o) => rank(o.ascending())? + 1,
                None => factorial(h.n())?,
            };
            VerificationCertificate {
                verdict: if found.is_some() {
                    Verdict::Violated
                } else {
                    Verdict::PropertyO
                },
                method,
                orders_examined,
                violating_order: found,
                nodes_expanded: 0,
            }
        }
        _ => {
            let (found, nodes) = find_violating_order_backtracking(h, opts)?;
            VerificationCertificate {
                verdict: if found.is_some() {
                    Verdict::Violated
                } else {
                    Verdict::PropertyO
                },
                method: Method::Backtracking,
                orders_examined: found.is_some() as u128,
                violating_order: found,
                nodes_expanded: nodes,
            }
        }
    };
    if let Some(order) = &cert.violating_order {
        recheck_violation(h, order)?;
    }
    Ok(cert)
}

/// Confirms that no edge of `h` is consistent with `order`.
pub fn recheck_violation(h: &OrientedHypergraph, order: &LinearOrder) -> Result<()> {
    for (i, e) in h.edges().enumerate() {
        if is_consistent(e, order)? {
            return Err(Error::Invariant(format!(
                "order {order} claimed violating but edge {i} is consistent with it"
            )));
        }
    }
    Ok(())
}
