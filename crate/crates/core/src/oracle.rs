//! Exhaustive search for `{0,1}` decompositions of small integral tensors.
//!
//! Shares no logic with the closed-form certifiers. Candidates are the nonzero 0/1
//! vectors, identified by bitmask (bit `i-1` set iff coordinate `i` is 1) and
//! tried in increasing mask order. A decomposition is a non-decreasing
//! sequence of masks; iterative deepening over the number of factors `K`
//! makes the first hit minimal, and the depth-first order makes it the
//! lexicographically first among minimal ones.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::SymmetricTensor;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Largest dimension the oracle accepts.
pub const MAX_ORACLE_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome<T> {
    /// A decomposition with the minimal number of factors `k`.
    Found {
        factors: Vec<Vec<T>>,
        k: usize,
        nodes: u64,
    },
    /// No decomposition with at most `k_max` factors exists.
    Exhausted { k_max: usize, nodes: u64 },
}

impl<T> OracleOutcome<T> {
    pub fn minimal_k(&self) -> Option<usize> {
        match self {
            OracleOutcome::Found { k, .. } => Some(*k),
            OracleOutcome::Exhausted { .. } => None,
        }
    }
}

struct Search {
    residual: Vec<i64>,
    /// Storage positions of all indices whose base set lies in each candidate.
    covers: Vec<Vec<usize>>,
    diagonal_pos: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Search {
    fn admissible(&self, cand: usize) -> bool {
        self.covers[cand].iter().all(|&p| self.residual[p] >= 1)
    }

    fn apply(&mut self, cand: usize, delta: i64) {
        for &p in &self.covers[cand] {
            self.residual[p] -= delta;
        }
    }

    fn dfs(&mut self, first: usize, slots: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::SearchSpaceTooLarge { cap: self.cap });
        }
        let diag: Vec<i64> = self
            .diagonal_pos
            .iter()
            .map(|&p| self.residual[p])
            .collect();
        let diag_sum: i64 = diag.iter().sum();
        if slots == 0 {
            return Ok(self.residual.iter().all(|&r| r == 0));
        }
        // Each factor lowers the diagonal sum by 1..=n and any one diagonal
        // entry by at most 1.
        let n = diag.len() as i64;
        if diag_sum < slots as i64
            || diag_sum > slots as i64 * n
            || diag.iter().any(|&d| d > slots as i64)
        {
            return Ok(false);
        }
        for cand in first..self.covers.len() {
            if !self.admissible(cand) {
                continue;
            }
            self.apply(cand, 1);
            self.chosen.push(cand);
            if self.dfs(cand, slots - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.apply(cand, -1);
        }
        Ok(false)
    }
}

/// Searches every multiset of at most `k_max` nonzero 0/1 vectors for one
/// whose `m`-th powers sum to `A`.
pub fn oracle_binary_cp_search<T: Scalar>(
    a: &SymmetricTensor<T>,
    k_max: usize,
    node_cap: u64,
) -> Result<OracleOutcome<T>> {
    let n = a.dim();
    if n > MAX_ORACLE_DIM {
        return Err(Error::TooLarge {
            order: a.order(),
            dim: n,
        });
    }
    let mut residual = Vec::with_capacity(a.len());
    for (idx, v) in a.iter() {
        let natural = v
            .to_natural()
            .and_then(|x| i64::try_from(x).ok())
            .ok_or_else(|| Error::DomainError {
                index: idx.to_string(),
                value: v.to_string(),
                domain: crate::tensor::Domain::Integer,
            })?;
        residual.push(natural);
    }

    let masks: Vec<u32> = (1..(1u32 << n)).collect();
    let mut covers = vec![Vec::new(); masks.len()];
    for (pos, idx) in a.indices().enumerate() {
        let base_mask = idx
            .entries()
            .iter()
            .fold(0u32, |acc, &i| acc | 1 << (i - 1));
        for (c, &mask) in masks.iter().enumerate() {
            if base_mask & !mask == 0 {
                covers[c].push(pos);
            }
        }
    }
    let diagonal_pos = (1..=n)
        .map(|i| {
            a.shape()
                .rank(&crate::index::MultiIndex::diagonal(i, a.order(), n).expect("in range"))
        })
        .collect();

    let mut search = Search {
        residual,
        covers,
        diagonal_pos,
        chosen: Vec::new(),
        nodes: 0,
        cap: node_cap,
    };
    for k in 0..=k_max {
        if search.dfs(0, k)? {
            let factors = search
                .chosen
                .iter()
                .map(|&c| {
                    (0..n)
                        .map(|i| {
                            if masks[c] >> i & 1 == 1 {
                                T::one()
                            } else {
                                T::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            return Ok(OracleOutcome::Found {
                factors,
                k,
                nodes: search.nodes,
            });
        }
    }
    Ok(OracleOutcome::Exhausted {
        k_max,
        nodes: search.nodes,
    })
}

/// Sum of the diagonal, an upper bound on the number of factors of any
/// `{0,1}` decomposition.
pub fn trace_bound<T: Scalar>(a: &SymmetricTensor<T>) -> usize {
    (1..=a.dim())
        .filter_map(|i| a.diagonal_value(i).to_natural())
        .sum::<u64>() as usize
}
