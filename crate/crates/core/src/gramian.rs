//! Hadamard and m-inner products, m-norms, Gramian tensors, and exact
//! verification of CP decompositions.
//!
//! The Gramian tensor of columns `alpha_1..alpha_n` in `R^d` has entry
//! `(alpha_{i_1}, ..., alpha_{i_m})` at `(i_1..i_m)`: the coordinate sum of
//! the Hadamard product of the selected columns. Reading the same `d x n`
//! matrix by rows gives `d` vectors `beta_j` in `R^n` with
//! `Gram(B) = sum_j beta_j^m`, which is how decompositions and Gramian
//! tensors are converted into each other.
//!
//! Only the nonnegative-Gramian/CP correspondence is implemented. Nothing
//! here decides double nonnegativity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::scalar::{pow, Scalar};
use crate::tensor::{check_nonnegative, rank_one_entry, SymmetricTensor};

/// A list of column vectors sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorMatrix<T> {
    dim: usize,
    columns: Vec<Vec<T>>,
    nonnegative: bool,
}

impl<T: Scalar> FactorMatrix<T> {
    pub fn new(dim: usize, columns: Vec<Vec<T>>) -> Result<Self> {
        if let Some(col) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: col.len(),
            });
        }
        let nonnegative = columns.iter().flatten().all(|v| !v.is_negative());
        Ok(FactorMatrix {
            dim,
            columns,
            nonnegative,
        })
    }

    /// Builds the matrix from its rows; the result has `rows[0].len()`
    /// columns of dimension `rows.len()`.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(row) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: row.len(),
            });
        }
        let columns = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::new(rows.len(), columns)
    }

    /// Length of every column.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[T] {
        &self.columns[j]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|r| self.columns.iter().map(|c| c[r].clone()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        FactorMatrix {
            dim: self.ncols(),
            columns: self.rows(),
            nonnegative: self.nonnegative,
        }
    }

    /// `M^T M` as a dense matrix.
    pub fn gram_matrix(&self) -> Vec<Vec<T>> {
        self.columns
            .iter()
            .map(|a| self.columns.iter().map(|b| dot(a, b)).collect())
            .collect()
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// A rank-one term `(w^{1/m} v)^m` kept as the exact pair `(w, v)`; its
/// value at an index is `w * prod_k v[i_k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFactor<T> {
    pub weight: T,
    pub direction: Vec<T>,
}

/// A nonnegative symmetric rank-one decomposition `A = sum_j beta_j^m`.
#[derive(Clone, Debug, PartialEq)]
pub enum CpDecomposition<T> {
    /// Explicit factor vectors.
    Factors(Vec<Vec<T>>),
    /// Factors whose entries are `m`-th roots, stored by their weights.
    Weighted(Vec<WeightedFactor<T>>),
}

impl<T: Scalar> CpDecomposition<T> {
    pub fn factors(factors: Vec<Vec<T>>) -> Result<Self> {
        check_common_dim(factors.iter().map(Vec::len))?;
        for (j, f) in factors.iter().enumerate() {
            check_nonnegative(j, f)?;
        }
        Ok(CpDecomposition::Factors(factors))
    }

    pub fn weighted(terms: Vec<WeightedFactor<T>>) -> Result<Self> {
        check_common_dim(terms.iter().map(|t| t.direction.len()))?;
        for (j, t) in terms.iter().enumerate() {
            check_nonnegative(j, &t.direction)?;
            if t.weight.is_negative() {
                return Err(Error::NegativeFactor {
                    factor: j,
                    coordinate: 0,
                });
            }
        }
        Ok(CpDecomposition::Weighted(terms))
    }

    /// Number of rank-one terms, `K`.
    pub fn len(&self) -> usize {
        match self {
            CpDecomposition::Factors(f) => f.len(),
            CpDecomposition::Weighted(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Common factor dimension, if there is at least one factor.
    pub fn dim(&self) -> Option<usize> {
        match self {
            CpDecomposition::Factors(f) => f.first().map(Vec::len),
            CpDecomposition::Weighted(w) => w.first().map(|t| t.direction.len()),
        }
    }

    /// `sum_j (beta_j^m)(idx)`.
    pub fn value_at(&self, idx: &MultiIndex) -> T {
        match self {
            CpDecomposition::Factors(f) => f
                .iter()
                .fold(T::zero(), |acc, b| acc + rank_one_entry(b, idx)),
            CpDecomposition::Weighted(w) => w.iter().fold(T::zero(), |acc, t| {
                acc + t.weight.clone() * rank_one_entry(&t.direction, idx)
            }),
        }
    }

    pub fn to_tensor(&self, order: usize, dim: usize) -> Result<SymmetricTensor<T>> {
        if let Some(d) = self.dim().filter(|&d| d != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: d,
            });
        }
        SymmetricTensor::from_fn(order, dim, |idx| self.value_at(idx))
    }
}

fn check_common_dim(mut dims: impl Iterator<Item = usize>) -> Result<()> {
    if let Some(first) = dims.next() {
        if let Some(other) = dims.find(|&d| d != first) {
            return Err(Error::DimensionMismatch {
                expected: first,
                found: other,
            });
        }
    }
    Ok(())
}

fn common_dim<T, V: AsRef<[T]>>(vectors: &[V]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyFamily)?.as_ref().len();
    check_common_dim(vectors.iter().map(|v| v.as_ref().len()))?;
    Ok(first)
}

/// Coordinatewise product of a nonempty family.
pub fn hadamard<T: Scalar, V: AsRef<[T]>>(vectors: &[V]) -> Result<Vec<T>> {
    let dim = common_dim(vectors)?;
    Ok((0..dim)
        .map(|k| {
            vectors
                .iter()
                .fold(T::one(), |acc, v| acc * v.as_ref()[k].clone())
        })
        .collect())
}

/// The m-inner product `(alpha_1, ..., alpha_m)`: the coordinate sum of the
/// Hadamard product.
pub fn m_inner_product<T: Scalar, V: AsRef<[T]>>(vectors: &[V]) -> Result<T> {
    Ok(hadamard(vectors)?
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v))
}

/// `||alpha||_m`, exact when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Norm {
    Exact(BigRational),
    /// `lower < ||alpha||_m < upper`, with `upper - lower = 2^-NORM_BITS`.
    Enclosure {
        lower: BigRational,
        upper: BigRational,
    },
}

/// Bits of precision of a [`Norm::Enclosure`].
pub const NORM_BITS: usize = 50;

impl Norm {
    pub fn contains(&self, x: &BigRational) -> bool {
        match self {
            Norm::Exact(v) => v == x,
            Norm::Enclosure { lower, upper } => lower <= x && x <= upper,
        }
    }
}

/// The m-norm `(alpha, ..., alpha)^{1/m}`.
pub fn m_norm<T: Scalar>(alpha: &[T], order: usize) -> Result<Norm> {
    if order < 1 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let power = alpha
        .iter()
        .fold(T::zero(), |acc, a| acc + pow(a, order))
        .to_rational();
    if power.is_negative() {
        return Err(Error::UndefinedNorm);
    }
    Ok(rational_root(&power, order))
}

/// `x^{1/m}` for `x >= 0`: exact when numerator and denominator are perfect
/// powers, otherwise a dyadic enclosure of width `2^-NORM_BITS`.
pub fn rational_root(x: &BigRational, order: usize) -> Norm {
    let m = order as u32;
    let (num, den) = (x.numer(), x.denom());
    let (rn, rd) = (num.nth_root(m), den.nth_root(m));
    if num_traits::pow(rn.clone(), order) == *num && num_traits::pow(rd.clone(), order) == *den {
        return Norm::Exact(BigRational::new(rn, rd));
    }
    let scale = BigInt::one() << NORM_BITS;
    let scaled: BigInt = (num << (NORM_BITS * order)) / den;
    let r = scaled.nth_root(m);
    Norm::Enclosure {
        lower: BigRational::new(r.clone(), scale.clone()),
        upper: BigRational::new(r + 1, scale),
    }
}

/// `Gram^(m)(B)`: entry `(alpha_{i_1}, ..., alpha_{i_m})` for the columns of `B`.
pub fn gram_tensor<T: Scalar>(b: &FactorMatrix<T>, order: usize) -> Result<SymmetricTensor<T>> {
    if order < 2 {
        return Err(Error::InvalidOrder { order, min: 2 });
    }
    SymmetricTensor::from_fn(order, b.ncols(), |idx| {
        let selected: Vec<&[T]> = idx.entries().iter().map(|&i| b.column(i - 1)).collect();
        m_inner_product(&selected).expect("columns share a dimension")
    })
}

/// The rows of `B` as factor vectors, so that
/// `sum_rank_one(rows) == gram_tensor(B)`.
pub fn decomposition_from_gram<T: Scalar>(b: &FactorMatrix<T>) -> Result<CpDecomposition<T>> {
    CpDecomposition::factors(b.rows())
}

/// Checks `A == sum_j beta_j^m` exactly, reporting the first differing
/// canonical index in storage order.
pub fn verify_cp_decomposition<T: Scalar>(
    a: &SymmetricTensor<T>,
    decomposition: &CpDecomposition<T>,
) -> Result<Certificate<T>> {
    if let Some(d) = decomposition.dim().filter(|&d| d != a.dim()) {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: d,
        });
    }
    for (idx, expected) in a.iter() {
        let found = decomposition.value_at(&idx);
        if found != *expected {
            return Ok(Certificate::Negative(Witness::Mismatch {
                index: idx,
                expected: expected.clone(),
                found,
            }));
        }
    }
    Ok(Certificate::Positive(decomposition.clone()))
}

/// Both sides of the Hölder inequality
/// `(alpha_1, ..., alpha_m)^m <= prod_j (alpha_j, ..., alpha_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

pub fn holder_check<T: Scalar, V: AsRef<[T]>>(vectors: &[V]) -> Result<HolderReport<T>> {
    common_dim(vectors)?;
    for (j, v) in vectors.iter().enumerate() {
        check_nonnegative(j, v.as_ref())?;
    }
    let m = vectors.len();
    let lhs = pow(&m_inner_product(vectors)?, m);
    let rhs = vectors.iter().fold(T::one(), |acc, v| {
        let pure = v.as_ref().iter().fold(T::zero(), |s, a| s + pow(a, m));
        acc * pure
    });
    let holds = lhs <= rhs;
    Ok(HolderReport { lhs, rhs, holds })
}
