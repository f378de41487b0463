//! Structure of `(0,1)` symmetric tensors: reducibility, irreducible blocks
//! under permutational similarity, and `{0,1}`-CP certification.
//!
//! Two reducibility predicates appear here. [`is_reducible`] is the literal
//! one: every entry with exactly one subscript in `I` vanishes. [`splits`]
//! is the one a direct-sum split needs: every entry whose base set meets
//! both `I` and its complement vanishes. They agree for matrices; for
//! `m >= 3` the literal predicate is strictly weaker (see the tests), so
//! block decomposition is driven by [`splits`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gramian::{verify_cp_decomposition, CpDecomposition, FactorMatrix};
use crate::index::MultiIndex;
use crate::permutation::Permutation;
use crate::scalar::Scalar;
use crate::tensor::{Domain, SymmetricTensor};

fn check_subset(subset: &[usize], dim: usize) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() != subset.len() {
        return Err(Error::BadSubset("repeated vertex".into()));
    }
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > dim) {
        return Err(Error::BadSubset(format!("vertex {v} outside 1..={dim}")));
    }
    if set.is_empty() || set.len() == dim {
        return Err(Error::BadSubset(
            "subset must be proper and nonempty".into(),
        ));
    }
    Ok(set)
}

/// `a(i_1..i_m) = 0` whenever `i_1` is in `I` and `i_2..i_m` are not.
pub fn is_reducible<T: Scalar>(a: &SymmetricTensor<T>, subset: &[usize]) -> Result<bool> {
    let set = check_subset(subset, a.dim())?;
    Ok(a.iter().all(|(idx, v)| {
        let inside = idx.entries().iter().filter(|e| set.contains(e)).count();
        inside != 1 || v.is_zero()
    }))
}

/// `a(s) = 0` whenever the base set of `s` meets both `I` and its complement,
/// so that `A` is permutationally similar to `A[I] ⊕ A[I^c]`.
pub fn splits<T: Scalar>(a: &SymmetricTensor<T>, subset: &[usize]) -> Result<bool> {
    let set = check_subset(subset, a.dim())?;
    Ok(a.iter().all(|(idx, v)| {
        let inside = idx.entries().iter().filter(|e| set.contains(e)).count();
        inside == 0 || inside == idx.order() || v.is_zero()
    }))
}

/// `permute(A, perm) = blocks[0] ⊕ ... ⊕ blocks[r-1] ⊕ O`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition<T> {
    pub perm: Permutation,
    pub blocks: Vec<SymmetricTensor<T>>,
    /// Original vertices of each block, increasing.
    pub block_vertices: Vec<Vec<usize>>,
    /// Original vertices sent to the trailing zero block, increasing.
    pub zero_vertices: Vec<usize>,
}

impl<T: Scalar> BlockDecomposition<T> {
    pub fn zero_dim(&self) -> usize {
        self.zero_vertices.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.block_vertices.iter().map(Vec::len).collect()
    }

    /// The direct sum of all blocks followed by the zero block.
    pub fn reassemble(&self, order: usize) -> Result<SymmetricTensor<T>> {
        let mut acc = SymmetricTensor::zeros(order, 0)?;
        for block in &self.blocks {
            acc = acc.direct_sum(block)?;
        }
        acc.direct_sum(&SymmetricTensor::zeros(order, self.zero_dim())?)
    }
}

/// Splits `A` into irreducible blocks.
///
/// Vertices `i != j` are joined when some nonzero entry has both in its base
/// set. Components are ordered by their smallest vertex; vertices touching
/// no nonzero entry form the trailing zero block.
pub fn irreducible_components<T: Scalar>(a: &SymmetricTensor<T>) -> BlockDecomposition<T> {
    let n = a.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut active = vec![false; n];

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for (idx, v) in a.iter() {
        if v.is_zero() {
            continue;
        }
        let base = idx.base_set();
        let root = find(&mut parent, base[0] - 1);
        active[base[0] - 1] = true;
        for &other in &base[1..] {
            active[other - 1] = true;
            let r = find(&mut parent, other - 1);
            parent[r] = root;
        }
    }

    let mut block_vertices: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root: Vec<Option<usize>> = vec![None; n];
    let mut zero_vertices = Vec::new();
    for (v, &is_active) in active.iter().enumerate() {
        if !is_active {
            zero_vertices.push(v + 1);
            continue;
        }
        let root = find(&mut parent, v);
        let slot = *block_of_root[root].get_or_insert_with(|| {
            block_vertices.push(Vec::new());
            block_vertices.len() - 1
        });
        block_vertices[slot].push(v + 1);
    }

    let mut images = vec![0; n];
    for (pos, &v) in block_vertices
        .iter()
        .flatten()
        .chain(&zero_vertices)
        .enumerate()
    {
        images[v - 1] = pos + 1;
    }
    let perm = Permutation::new(images).expect("block layout is a bijection");
    let blocks = block_vertices
        .iter()
        .map(|vs| a.principal_subtensor(vs).expect("block vertices in range"))
        .collect();
    BlockDecomposition {
        perm,
        blocks,
        block_vertices,
        zero_vertices,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BinaryCpResult<T> {
    /// `A = sum_j u_j^m` with pairwise disjoint 0/1 columns `u_j`.
    BinaryCp {
        u: FactorMatrix<T>,
        block_sizes: Vec<usize>,
    },
    /// An irreducible block that is not all-ones.
    NotBinaryCp {
        vertices: Vec<usize>,
        block: SymmetricTensor<T>,
    },
}

impl<T: Scalar> BinaryCpResult<T> {
    pub fn is_binary_cp(&self) -> bool {
        matches!(self, BinaryCpResult::BinaryCp { .. })
    }
}

fn first_outside_domain<T: Scalar>(a: &SymmetricTensor<T>, domain: Domain) -> Result<()> {
    match a.iter().find(|(_, v)| !domain.admits(*v)) {
        Some((idx, v)) => Err(Error::DomainError {
            index: idx.to_string(),
            value: v.to_string(),
            domain,
        }),
        None => Ok(()),
    }
}

/// Decides `{0,1}`-complete positivity of a `(0,1)` symmetric tensor: it
/// holds iff every irreducible block is all-ones, and the indicator vectors
/// of the blocks are then a decomposition with `U^T U = diag(n_1..n_q)`.
pub fn certify_binary_cp_01<T: Scalar>(a: &SymmetricTensor<T>) -> Result<BinaryCpResult<T>> {
    first_outside_domain(a, Domain::Binary)?;
    let blocks = irreducible_components(a);
    for (vertices, block) in blocks.block_vertices.iter().zip(&blocks.blocks) {
        if !block.values().iter().all(|v| v.is_one()) {
            return Ok(BinaryCpResult::NotBinaryCp {
                vertices: vertices.clone(),
                block: block.clone(),
            });
        }
    }
    let columns = blocks
        .block_vertices
        .iter()
        .map(|vs| {
            let mut u = vec![T::zero(); a.dim()];
            vs.iter().for_each(|&v| u[v - 1] = T::one());
            u
        })
        .collect();
    Ok(BinaryCpResult::BinaryCp {
        u: FactorMatrix::new(a.dim(), columns)?,
        block_sizes: blocks.block_sizes(),
    })
}

/// Binary cp-rank of a nonnegative integral diagonal tensor: the trace,
/// realised by `d_i` copies of `e_i`.
pub fn diagonal_bcprank<T: Scalar>(d: &SymmetricTensor<T>) -> Result<(usize, CpDecomposition<T>)> {
    if let Some((idx, _)) = d.iter().find(|(idx, v)| !idx.is_diagonal() && !v.is_zero()) {
        return Err(Error::NotDiagonal(idx));
    }
    first_outside_domain(d, Domain::Integer)?;
    let mut factors = Vec::new();
    for i in 1..=d.dim() {
        let copies = d.diagonal_value(i).to_natural().expect("checked integral");
        let mut e = vec![T::zero(); d.dim()];
        e[i - 1] = T::one();
        factors.extend(std::iter::repeat_n(e, copies as usize));
    }
    Ok((factors.len(), CpDecomposition::factors(factors)?))
}

/// Structural facts about a verified uniform `{0,1}` decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformReport<T> {
    /// Common support size `k` of the factors.
    pub support_size: usize,
    /// Number of factors `r`.
    pub factors: usize,
    /// Every entry of `A` is 0 or 1.
    pub is_binary: bool,
    /// Off-diagonal entries are 0 or 1; the diagonal is unconstrained.
    pub is_essential_binary: bool,
    pub pairwise_disjoint: bool,
    pub max_pairwise_intersection: usize,
    /// For two factors sharing vertices `s < t`, the index `(s,t,...,t)` and
    /// its value, which is at least 2.
    pub overlap_witness: Option<(MultiIndex, T)>,
    /// `n == m r`, reported when `A` is binary and `k == m`.
    pub n_equals_m_r: Option<bool>,
    /// `ceil(n / (k - 1))` for `k >= 2`. Informational only.
    pub essential_bound: Option<usize>,
}

pub fn uniform_bounds_check<T: Scalar>(
    a: &SymmetricTensor<T>,
    factors: &[Vec<T>],
) -> Result<UniformReport<T>> {
    let invalid = |msg: &str| Error::InvalidDecomposition(msg.to_string());
    if factors.iter().flatten().any(|v| !v.is_binary()) {
        return Err(invalid("factors must be 0/1 vectors"));
    }
    let decomposition = CpDecomposition::factors(factors.to_vec())?;
    if !verify_cp_decomposition(a, &decomposition)?.is_positive() {
        return Err(invalid("decomposition does not reproduce the tensor"));
    }
    let supports: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| (1..=f.len()).filter(|&i| f[i - 1].is_one()).collect())
        .collect();
    let support_size = supports.first().map_or(0, Vec::len);
    if supports.iter().any(|s| s.len() != support_size) {
        return Err(invalid("factors do not share one support size"));
    }

    let mut max_pairwise_intersection = 0;
    let mut overlap_witness = None;
    for (p, sp) in supports.iter().enumerate() {
        for sq in &supports[p + 1..] {
            let common: Vec<usize> = sp.iter().copied().filter(|v| sq.contains(v)).collect();
            max_pairwise_intersection = max_pairwise_intersection.max(common.len());
            if common.len() >= 2 && overlap_witness.is_none() {
                let (s, t) = (common[0], common[1]);
                let mut raw = vec![t; a.order()];
                raw[0] = s;
                let idx = MultiIndex::canonicalize(&raw, a.dim())?;
                let value = a.at(&idx).clone();
                overlap_witness = Some((idx, value));
            }
        }
    }

    let is_binary = a.is_binary();
    let is_essential_binary = a.iter().all(|(idx, v)| idx.is_diagonal() || v.is_binary());
    Ok(UniformReport {
        support_size,
        factors: factors.len(),
        is_binary,
        is_essential_binary,
        pairwise_disjoint: max_pairwise_intersection == 0,
        max_pairwise_intersection,
        overlap_witness,
        n_equals_m_r: (is_binary && support_size == a.order())
            .then(|| a.dim() == a.order() * factors.len()),
        essential_bound: (support_size >= 2).then(|| a.dim().div_ceil(support_size - 1)),
    })
}
