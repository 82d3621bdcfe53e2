//! Oriented `k`-uniform hypergraphs.
//!
//! Vertices are `0..n`. Edges are stored back to back in a flat buffer with
//! stride `k`; the tuple order of an edge is its orientation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered tuple of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    vertices: Vec<usize>,
}

impl OrientedEdge {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!(
                "vertex {} repeated in edge {vertices:?}",
                w[0]
            )));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }
}

impl AsRef<[usize]> for OrientedEdge {
    fn as_ref(&self) -> &[usize] {
        &self.vertices
    }
}

/// A single broken invariant, reported by [`OrientedHypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UniformityTooSmall {
        k: usize,
    },
    RepeatedVertex {
        edge: usize,
        vertex: usize,
    },
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    DuplicateSet {
        first: usize,
        second: usize,
        set: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UniformityTooSmall { k } => write!(f, "uniformity {k} is below 2"),
            Violation::RepeatedVertex { edge, vertex } => {
                write!(f, "repeated vertex in edge {edge} (vertex {vertex})")
            }
            Violation::VertexOutOfRange { edge, vertex, n } => {
                write!(f, "vertex {vertex} out of range in edge {edge} (n = {n})")
            }
            Violation::DuplicateSet { first, second, set } => {
                let items: Vec<String> = set.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "duplicate underlying set {{{}}} (edges {first} and {second})",
                    items.join(",")
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedHypergraph {
    k: usize,
    n: usize,
    flat: Vec<usize>,
}

impl OrientedHypergraph {
    /// Builds a hypergraph and checks every invariant.
    pub fn new<E: AsRef<[usize]>>(
        k: usize,
        n: usize,
        edges: impl IntoIterator<Item = E>,
    ) -> Result<Self> {
        let h = Self::from_raw(k, n, edges)?;
        h.validate().map_err(Error::Invalid)?;
        Ok(h)
    }

    /// Builds a hypergraph checking only that every edge has `k` entries.
    /// The result may break the other invariants; see [`Self::validate`].
    pub fn from_raw<E: AsRef<[usize]>>(
        k: usize,
        n: usize,
        edges: impl IntoIterator<Item = E>,
    ) -> Result<Self> {
        let mut flat = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::OutOfRange {
                    what: "edge arity",
                    value: e.len() as u128,
                    min: k as u128,
                    max: k as u128,
                });
            }
            flat.extend_from_slice(e);
        }
        Ok(Self { k, n, flat })
    }

    pub(crate) fn from_flat_unchecked(k: usize, n: usize, flat: Vec<usize>) -> Self {
        debug_assert_eq!(flat.len() % k.max(1), 0);
        Self { k, n, flat }
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            flat: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.flat.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.flat[index * self.k..(index + 1) * self.k]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, usize> {
        self.flat.chunks_exact(self.k.max(1))
    }

    pub(crate) fn flat(&self) -> &[usize] {
        &self.flat
    }

    pub(crate) fn flat_mut(&mut self) -> &mut [usize] {
        &mut self.flat
    }

    /// Checks every invariant, listing all violations found.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.k < 2 {
            violations.push(Violation::UniformityTooSmall { k: self.k });
        }
        let mut seen_sets: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, e) in self.edges().enumerate() {
            for &v in e {
                if v >= self.n {
                    violations.push(Violation::VertexOutOfRange {
                        edge: i,
                        vertex: v,
                        n: self.n,
                    });
                }
            }
            let mut set = e.to_vec();
            set.sort_unstable();
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                violations.push(Violation::RepeatedVertex {
                    edge: i,
                    vertex: w[0],
                });
                continue;
            }
            if let Some(&first) = seen_sets.get(&set) {
                violations.push(Violation::DuplicateSet {
                    first,
                    second: i,
                    set,
                });
            } else {
                seen_sets.insert(set, i);
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Every edge tuple reversed.
    pub fn reverse(&self) -> Self {
        let mut flat = self.flat.clone();
        for e in flat.chunks_exact_mut(self.k.max(1)) {
            e.reverse();
        }
        Self { flat, ..*self }
    }

    /// Applies the vertex bijection `v -> map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        if map.len() != self.n || crate::order::LinearOrder::new(map.to_vec()).is_err() {
            return Err(Error::Invariant(format!(
                "relabeling {map:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        Ok(Self {
            flat: self.flat.iter().map(|&v| map[v]).collect(),
            ..*self
        })
    }

    /// Restriction to the vertices that occur in some edge, with indices
    /// compacted in their original relative order.
    pub fn support_restriction(&self) -> Self {
        let mut used = vec![false; self.n];
        for &v in &self.flat {
            used[v] = true;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, &u) in used.iter().enumerate() {
            if u {
                map[v] = next;
                next += 1;
            }
        }
        Self {
            k: self.k,
            n: next,
            flat: self.flat.iter().map(|&v| map[v]).collect(),
        }
    }

    /// The hypergraph with edge `index` removed.
    pub fn without_edge(&self, index: usize) -> Self {
        let mut flat = self.flat.clone();
        flat.drain(index * self.k..(index + 1) * self.k);
        Self { flat, ..*self }
    }

    /// Keeps only the edges at the given indices, in the given order.
    pub fn select_edges(&self, indices: &[usize]) -> Self {
        let mut flat = Vec::with_capacity(indices.len() * self.k);
        for &i in indices {
            flat.extend_from_slice(self.edge(i));
        }
        Self { flat, ..*self }
    }

    /// Appends an edge and revalidates.
    pub fn with_edge(&self, edge: &[usize]) -> Result<Self> {
        let mut flat = self.flat.clone();
        flat.extend_from_slice(edge);
        Self::new(self.k, self.n, flat.chunks_exact(self.k.max(1)))
    }

    /// The same edges on a vertex set enlarged to `n` vertices.
    pub fn with_vertex_count(&self, n: usize) -> Result<Self> {
        Self::new(self.k, n, self.edges())
    }

    /// True when every `k`-subset of the vertices carries exactly one edge.
    pub fn is_tournament(&self) -> bool {
        self.is_valid()
            && crate::arith::binomial(self.n, self.k).is_ok_and(|c| c == self.num_edges() as u128)
    }
}
