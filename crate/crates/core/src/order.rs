use std::fmt;

use crate::error::{Error, Result};

/// A linear order on `0..n`, stored as the ascending sequence of vertices:
/// `ascending()[0]` is the smallest element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder {
    ascending: Vec<usize>,
}

impl LinearOrder {
    pub fn new(ascending: Vec<usize>) -> Result<Self> {
        let n = ascending.len();
        let mut seen = vec![false; n];
        for &v in &ascending {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(Error::Invariant(format!(
                    "vertex {v} occurs twice in a linear order"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { ascending })
    }

    pub(crate) fn from_vec_unchecked(ascending: Vec<usize>) -> Self {
        debug_assert!(Self::new(ascending.clone()).is_ok());
        Self { ascending }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ascending: (0..n).collect(),
        }
    }

    pub fn ascending(&self) -> &[usize] {
        &self.ascending
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.ascending
    }

    pub fn len(&self) -> usize {
        self.ascending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ascending.is_empty()
    }

    /// `positions()[v]` is the rank of vertex `v` (0 for the minimum).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.ascending.len()];
        for (rank, &v) in self.ascending.iter().enumerate() {
            pos[v] = rank;
        }
        pos
    }

    /// The same vertices ordered the other way round.
    pub fn reversed(&self) -> Self {
        let mut ascending = self.ascending.clone();
        ascending.reverse();
        Self { ascending }
    }

    /// Image of this order under the vertex map `v -> map[v]`.
    pub fn relabeled(&self, map: &[usize]) -> Self {
        Self::from_vec_unchecked(self.ascending.iter().map(|&v| map[v]).collect())
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.ascending {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// True iff the vertices of `edge` appear in strictly increasing position
/// within `order`.
pub fn is_consistent(edge: &[usize], order: &LinearOrder) -> Result<bool> {
    let n = order.len();
    if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    Ok(consistent_with_positions(edge, &order.positions()))
}

#[inline]
pub(crate) fn consistent_with_positions(edge: &[usize], pos: &[usize]) -> bool {
    edge.windows(2).all(|w| pos[w[0]] < pos[w[1]])
}
