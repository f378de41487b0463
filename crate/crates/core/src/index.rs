//! Multi-indices of symmetric tensors and their combinatorial ranking.
//!
//! A canonical multi-index is a non-decreasing tuple `(i_1, ..., i_m)` with
//! entries in `1..=n`. Vertex labels are 1-based throughout the crate.
//! Storage positions follow the colexicographic rank of the strictly
//! increasing tuple `c_k = (i_k - 1) + k`, which is `sum_k C(c_k, k + 1)`.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the number of stored values of a single tensor.
pub const MAX_ENTRIES: usize = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
    dim: usize,
}

impl MultiIndex {
    /// Sorts `raw` into canonical form after range-checking every entry.
    pub fn canonicalize(raw: &[usize], dim: usize) -> Result<Self> {
        if let Some(&entry) = raw.iter().find(|&&e| e == 0 || e > dim) {
            return Err(Error::IndexOutOfRange { entry, dim });
        }
        let mut entries = raw.to_vec();
        entries.sort_unstable();
        Ok(MultiIndex { entries, dim })
    }

    pub(crate) fn from_sorted(entries: Vec<usize>, dim: usize) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        MultiIndex { entries, dim }
    }

    /// The all-`i` index of the given order.
    pub fn diagonal(vertex: usize, order: usize, dim: usize) -> Result<Self> {
        Self::canonicalize(&vec![vertex; order], dim)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Distinct entries in increasing order.
    pub fn base_set(&self) -> Vec<usize> {
        let mut base = self.entries.clone();
        base.dedup();
        base
    }

    pub fn base_size(&self) -> usize {
        1 + self.entries.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// `(sum of entries) - m`, in `0..=m(n-1)`.
    pub fn level(&self) -> usize {
        self.entries.iter().sum::<usize>() - self.entries.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.first() == self.entries.last()
    }

    /// How often `vertex` occurs.
    pub fn count(&self, vertex: usize) -> usize {
        self.entries.iter().filter(|&&e| e == vertex).count()
    }

    /// Number of raw tuples that sort to this index, `m! / (k_1! ... k_r!)`.
    pub fn multiplicity(&self) -> u128 {
        let mut result: u128 = 1;
        let mut placed: u128 = 0;
        let mut run: u128 = 0;
        for (pos, e) in self.entries.iter().enumerate() {
            if pos > 0 && self.entries[pos - 1] == *e {
                run += 1;
            } else {
                run = 1;
            }
            placed += 1;
            // C(placed, run) built incrementally keeps every step integral.
            result = result * placed / run;
        }
        result
    }

    pub fn is_subset_of(&self, base: &[usize]) -> bool {
        self.entries.iter().all(|e| base.binary_search(e).is_ok())
    }

    /// Comma-separated entries, the text-format rendering.
    pub fn to_csv(&self) -> String {
        join(&self.entries)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

pub(crate) fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `C(n, k)` or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// Order and dimension of a symmetric tensor together with the ranking table.
#[derive(Clone, Debug)]
pub struct Shape {
    order: usize,
    dim: usize,
    len: usize,
    // binom[a * (order + 1) + k] = C(a, k) for a < dim + order
    binom: Vec<usize>,
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim
    }
}

impl Eq for Shape {}

impl Shape {
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidOrder { order, min: 1 });
        }
        let too_large = Error::TooLarge { order, dim };
        let len = match dim {
            0 => 0,
            _ => binomial(dim + order - 1, order).ok_or(too_large.clone())?,
        };
        if len > MAX_ENTRIES {
            return Err(too_large);
        }
        let rows = dim + order;
        let mut binom = vec![0usize; rows * (order + 1)];
        for a in 0..rows {
            for k in 0..=order {
                binom[a * (order + 1) + k] = binomial(a, k).ok_or(too_large.clone())?;
            }
        }
        Ok(Shape {
            order,
            dim,
            len,
            binom,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of canonical multi-indices, `C(n + m - 1, m)`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Storage position of a canonical index.
    pub fn rank(&self, index: &MultiIndex) -> usize {
        debug_assert_eq!(index.order(), self.order);
        index
            .entries()
            .iter()
            .enumerate()
            .map(|(k, &e)| self.binom[(e - 1 + k) * (self.order + 1) + k + 1])
            .sum()
    }

    /// Range-checks and canonicalizes a raw tuple.
    pub fn canonical(&self, raw: &[usize]) -> Result<MultiIndex> {
        if raw.len() != self.order {
            return Err(Error::WrongIndexLength {
                found: raw.len(),
                order: self.order,
            });
        }
        MultiIndex::canonicalize(raw, self.dim)
    }

    /// Canonical indices in storage order.
    pub fn indices(&self) -> CanonicalIndices {
        CanonicalIndices {
            next: (self.dim > 0).then(|| vec![1; self.order]),
            dim: self.dim,
        }
    }
}

/// Colexicographic enumeration of non-decreasing tuples.
#[derive(Clone, Debug)]
pub struct CanonicalIndices {
    next: Option<Vec<usize>>,
    dim: usize,
}

impl Iterator for CanonicalIndices {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let m = current.len();
        let mut succ = current.clone();
        let pivot = (0..m).find(|&k| {
            let bound = if k + 1 < m { succ[k + 1] } else { self.dim };
            succ[k] < bound
        });
        if let Some(k) = pivot {
            succ[k] += 1;
            succ[..k].iter_mut().for_each(|e| *e = 1);
            self.next = Some(succ);
        }
        Some(MultiIndex::from_sorted(current, self.dim))
    }
}
