//! Canonical storage and algebra for symmetric tensors.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gramian::FactorMatrix;
use crate::index::{CanonicalIndices, MultiIndex, Shape, MAX_ENTRIES};
use crate::permutation::Permutation;
use crate::scalar::{pow, Scalar};

/// Value domain of a tensor, from narrowest to widest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// Every value is 0 or 1.
    Binary,
    /// Every value is a nonnegative integer.
    Integer,
    Rational,
}

impl Domain {
    /// Narrowest domain containing `value`.
    pub fn of<T: Scalar>(value: &T) -> Domain {
        if value.is_binary() {
            Domain::Binary
        } else if value.is_integer() && !value.is_negative() {
            Domain::Integer
        } else {
            Domain::Rational
        }
    }

    pub fn admits<T: Scalar>(self, value: &T) -> bool {
        Domain::of(value) <= self
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Binary => "binary",
            Domain::Integer => "integer",
            Domain::Rational => "rational",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "binary" => Ok(Domain::Binary),
            "integer" => Ok(Domain::Integer),
            "rational" => Ok(Domain::Rational),
            other => Err(format!("unknown domain '{other}'")),
        }
    }
}

/// An order-`m`, dimension-`n` symmetric tensor holding one value per
/// canonical multi-index.
#[derive(Clone, Debug)]
pub struct SymmetricTensor<T> {
    shape: Shape,
    domain: Domain,
    values: Vec<T>,
}

/// Equality of shapes and values; the domain flag is not compared.
impl<T: PartialEq> PartialEq for SymmetricTensor<T> {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.values == other.values
    }
}

impl<T: Scalar> SymmetricTensor<T> {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let shape = Shape::new(order, dim)?;
        let values = vec![T::zero(); shape.len()];
        Ok(SymmetricTensor {
            shape,
            domain: Domain::Binary,
            values,
        })
    }

    /// The all-ones tensor `e^m`.
    pub fn ones(order: usize, dim: usize) -> Result<Self> {
        Self::from_fn(order, dim, |_| T::one())
    }

    pub fn diagonal(order: usize, diag: &[T]) -> Result<Self> {
        Self::from_fn(order, diag.len(), |idx| {
            if idx.is_diagonal() {
                diag[idx.entries()[0] - 1].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Builds a tensor by evaluating `f` on every canonical index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&MultiIndex) -> T) -> Result<Self> {
        let shape = Shape::new(order, dim)?;
        let values: Vec<T> = shape.indices().map(|idx| f(&idx)).collect();
        Ok(Self::from_parts(shape, values))
    }

    /// Builds a tensor from `(raw index, value)` pairs; missing indices are
    /// zero and two pairs with the same canonical index are rejected.
    pub fn from_entries<I, R>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (R, T)>,
        R: AsRef<[usize]>,
    {
        let shape = Shape::new(order, dim)?;
        let mut values: Vec<Option<T>> = vec![None; shape.len()];
        for (raw, value) in entries {
            let idx = shape.canonical(raw.as_ref())?;
            let slot = &mut values[shape.rank(&idx)];
            if slot.is_some() {
                return Err(Error::DuplicateIndex(idx));
            }
            *slot = Some(value);
        }
        let values = values
            .into_iter()
            .map(|v| v.unwrap_or_else(T::zero))
            .collect();
        Ok(Self::from_parts(shape, values))
    }

    fn from_parts(shape: Shape, values: Vec<T>) -> Self {
        let domain = values
            .iter()
            .map(Domain::of)
            .max()
            .unwrap_or(Domain::Binary);
        SymmetricTensor {
            shape,
            domain,
            values,
        }
    }

    /// Widens (or re-checks) the domain flag. Fails when a value does not fit.
    pub fn with_domain(mut self, domain: Domain) -> Result<Self> {
        if let Some((idx, v)) = self.iter().find(|(_, v)| !domain.admits(*v)) {
            return Err(Error::DomainError {
                index: idx.to_string(),
                value: v.to_string(),
                domain,
            });
        }
        self.domain = domain;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Number of stored values, `C(n + m - 1, m)`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in canonical storage order.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Lookup by any raw subscript tuple.
    pub fn get(&self, raw: &[usize]) -> Result<&T> {
        let idx = self.shape.canonical(raw)?;
        Ok(self.at(&idx))
    }

    /// Lookup by canonical index; panics when the index does not belong to
    /// this tensor's shape.
    pub fn at(&self, idx: &MultiIndex) -> &T {
        assert!(
            idx.order() == self.order() && idx.entries().iter().all(|&e| e <= self.dim()),
            "index {idx} does not fit a tensor of order {} and dimension {}",
            self.order(),
            self.dim()
        );
        &self.values[self.shape.rank(idx)]
    }

    /// `A(i, i, ..., i)`.
    pub fn diagonal_value(&self, vertex: usize) -> &T {
        let idx = MultiIndex::from_sorted(vec![vertex; self.order()], self.dim());
        self.at(&idx)
    }

    pub fn indices(&self) -> CanonicalIndices {
        self.shape.indices()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &T)> {
        self.shape.indices().zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Every value is a nonnegative integer.
    pub fn is_integral(&self) -> bool {
        self.domain <= Domain::Integer
            || self.values.iter().all(|v| Domain::of(v) <= Domain::Integer)
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().all(Scalar::is_binary)
    }

    /// Strong symmetry: the value at an index depends only on its base set.
    pub fn is_strong_symmetric(&self) -> bool {
        let mut seen: std::collections::HashMap<Vec<usize>, &T> = Default::default();
        self.iter()
            .all(|(idx, v)| match seen.entry(idx.base_set()) {
                std::collections::hash_map::Entry::Occupied(e) => *e.get() == v,
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(v);
                    true
                }
            })
    }

    /// The full multilinear form `A x^m`, summed over canonical indices with
    /// multinomial multiplicities.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut total = T::zero();
        for (idx, v) in self.iter() {
            if v.is_zero() {
                continue;
            }
            let mult = T::from_u128(idx.multiplicity()).expect("multiplicity fits the scalar type");
            let prod = idx
                .entries()
                .iter()
                .fold(T::one(), |acc, &i| acc * x[i - 1].clone());
            total = total + v.clone() * mult * prod;
        }
        Ok(total)
    }

    /// Block-diagonal combination; all mixed entries are zero.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let split = self.dim();
        Self::from_fn(self.order(), split + other.dim(), |idx| {
            let e = idx.entries();
            if e[e.len() - 1] <= split {
                self.at(idx).clone()
            } else if e[0] > split {
                let shifted = e.iter().map(|&i| i - split).collect();
                other
                    .at(&MultiIndex::from_sorted(shifted, other.dim()))
                    .clone()
            } else {
                T::zero()
            }
        })
    }

    /// Simultaneous relabeling of all modes:
    /// `result(p(i_1), ..., p(i_m)) = A(i_1, ..., i_m)`.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        let inv = p.inverse();
        let values = self
            .indices()
            .map(|idx| {
                let pulled: Vec<usize> = idx.entries().iter().map(|&i| inv.apply(i)).collect();
                self.values[self.shape.rank(
                    &MultiIndex::canonicalize(&pulled, self.dim())
                        .expect("permuted index in range"),
                )]
                .clone()
            })
            .collect();
        let mut out = Self::from_parts(self.shape.clone(), values);
        out.domain = self.domain;
        Ok(out)
    }

    /// `A[I]`: the principal subtensor on the given sorted vertex list.
    pub fn principal_subtensor(&self, vertices: &[usize]) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > self.dim()) {
            return Err(Error::IndexOutOfRange {
                entry: v,
                dim: self.dim(),
            });
        }
        Self::from_fn(self.order(), vertices.len(), |idx| {
            let raw: Vec<usize> = idx.entries().iter().map(|&i| vertices[i - 1]).collect();
            self.get(&raw).expect("subtensor index in range").clone()
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self::from_parts(self.shape.clone(), values))
    }

    pub fn scale(&self, factor: &T) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| v.clone() * factor.clone())
            .collect();
        Self::from_parts(self.shape.clone(), values)
    }

    pub(crate) fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_nonnegative<T: Scalar>(factor: usize, v: &[T]) -> Result<()> {
    match v.iter().position(|x| x.is_negative()) {
        Some(coordinate) => Err(Error::NegativeFactor { factor, coordinate }),
        None => Ok(()),
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder { order, min: 2 });
    }
    Ok(())
}

/// `beta^m`, with `(beta^m)(i_1..i_m) = beta[i_1] * ... * beta[i_m]`.
pub fn rank_one_power<T: Scalar>(beta: &[T], order: usize) -> Result<SymmetricTensor<T>> {
    check_order(order)?;
    check_nonnegative(0, beta)?;
    SymmetricTensor::from_fn(order, beta.len(), |idx| rank_one_entry(beta, idx))
}

pub(crate) fn rank_one_entry<T: Scalar>(beta: &[T], idx: &MultiIndex) -> T {
    idx.entries()
        .iter()
        .fold(T::one(), |acc, &i| acc * beta[i - 1].clone())
}

/// `sum_j beta_j^m`; the empty sum is the zero tensor of dimension `dim`.
pub fn sum_rank_one<T: Scalar>(
    factors: &[Vec<T>],
    order: usize,
    dim: usize,
) -> Result<SymmetricTensor<T>> {
    check_order(order)?;
    for (j, f) in factors.iter().enumerate() {
        if f.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.len(),
            });
        }
        check_nonnegative(j, f)?;
    }
    SymmetricTensor::from_fn(order, dim, |idx| {
        factors
            .iter()
            .fold(T::zero(), |acc, f| acc + rank_one_entry(f, idx))
    })
}

/// The `m`-fold Khatri-Rao power of `W`, summed over columns.
///
/// The raw `n^m`-by-`r` column-wise Kronecker product is formed explicitly
/// and folded onto canonical indices, so the identity with
/// [`sum_rank_one`] is a checked fact rather than the implementation.
pub fn khatri_rao_power<T: Scalar>(
    w: &FactorMatrix<T>,
    order: usize,
) -> Result<SymmetricTensor<T>> {
    check_order(order)?;
    for (j, col) in w.columns().iter().enumerate() {
        check_nonnegative(j, col)?;
    }
    let n = w.dim();
    let raw_len = n
        .checked_pow(order as u32)
        .filter(|&len| len <= MAX_ENTRIES)
        .ok_or(Error::TooLarge { order, dim: n })?;

    // Row-sum of the Khatri-Rao product: raw[t] = sum_j prod_k W[t_k, j].
    let mut raw = vec![T::zero(); raw_len];
    for col in w.columns() {
        let mut kron = vec![T::one()];
        for _ in 0..order {
            kron = kron
                .iter()
                .flat_map(|a| col.iter().map(move |b| a.clone() * b.clone()))
                .collect();
        }
        for (slot, v) in raw.iter_mut().zip(kron) {
            *slot = slot.clone() + v;
        }
    }

    let linear = |entries: &[usize]| entries.iter().fold(0usize, |acc, &i| acc * n + (i - 1));
    let tensor = SymmetricTensor::from_fn(order, n, |idx| raw[linear(idx.entries())].clone())?;
    debug_assert!(raw_tuples(order, n)
        .all(|t| { raw[linear(&t)] == *tensor.get(&t).expect("raw tuple in range") }));
    Ok(tensor)
}

/// Every raw subscript tuple in row-major order (test oracles and
/// debug checks; `n^m` items).
pub fn raw_tuples(order: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if dim == 0 { 0 } else { dim.pow(order as u32) };
    (0..total).map(move |mut t| {
        let mut tuple = vec![0; order];
        for slot in tuple.iter_mut().rev() {
            *slot = t % dim + 1;
            t /= dim;
        }
        tuple
    })
}

/// `(beta^T x)^m`.
pub fn linear_form_power<T: Scalar>(beta: &[T], x: &[T], order: usize) -> T {
    let dot = beta
        .iter()
        .zip(x)
        .fold(T::zero(), |acc, (b, xi)| acc + b.clone() * xi.clone());
    pow(&dot, order)
}
