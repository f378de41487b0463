//! Exact certification of 2-dimensional symmetric tensors, plus the two
//! pairwise necessary conditions that apply in any dimension.
//!
//! A 2-dimensional order-`m` symmetric tensor is described by its profile
//! `a_0..a_m`, where `a_r` is the value on indices with exactly `r` ones.
//! When it is also strong symmetric there are only three values: the two
//! diagonals and one common off-diagonal value.

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::gramian::{verify_cp_decomposition, CpDecomposition, WeightedFactor};
use crate::index::MultiIndex;
use crate::scalar::Scalar;
use crate::tensor::SymmetricTensor;

#[derive(Clone, Debug, PartialEq)]
pub struct Dim2Profile<T> {
    pub order: usize,
    /// `values[r]` is the value on indices with exactly `r` ones. Empty when
    /// the profile is invalid.
    pub values: Vec<T>,
    pub valid: bool,
    /// First pair of raw tuples with the same number of ones and different
    /// values, for invalid profiles.
    pub offending: Option<(Vec<usize>, Vec<usize>)>,
}

impl<T: Scalar> Dim2Profile<T> {
    /// `a_1 = ... = a_{m-1}`.
    pub fn is_strong_symmetric(&self) -> bool {
        self.valid && self.values[1..self.order].windows(2).all(|w| w[0] == w[1])
    }

    /// Profile of a raw (not necessarily symmetric) `2 x ... x 2` array given
    /// in row-major order. It is valid exactly when the array is symmetric.
    pub fn from_raw(order: usize, raw: &[T]) -> Result<Self> {
        let expected = 1usize << order;
        if raw.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: raw.len(),
            });
        }
        let mut values: Vec<Option<(Vec<usize>, &T)>> = vec![None; order + 1];
        for (t, tuple) in crate::tensor::raw_tuples(order, 2).enumerate() {
            let ones = tuple.iter().filter(|&&i| i == 1).count();
            match &values[ones] {
                Some((first, v)) if *v != &raw[t] => {
                    return Ok(Dim2Profile {
                        order,
                        values: Vec::new(),
                        valid: false,
                        offending: Some((first.clone(), tuple)),
                    })
                }
                Some(_) => {}
                None => values[ones] = Some((tuple, &raw[t])),
            }
        }
        Ok(Dim2Profile {
            order,
            values: values
                .into_iter()
                .map(|v| v.expect("every class is inhabited").1.clone())
                .collect(),
            valid: true,
            offending: None,
        })
    }
}

/// The profile of a stored symmetric tensor, which is always valid.
pub fn profile_dim2<T: Scalar>(a: &SymmetricTensor<T>) -> Result<Dim2Profile<T>> {
    if a.dim() != 2 {
        return Err(Error::WrongDimension(a.dim()));
    }
    let m = a.order();
    let values = (0..=m)
        .map(|r| a.at(&ones_then_twos(r, m)).clone())
        .collect();
    Ok(Dim2Profile {
        order: m,
        values,
        valid: true,
        offending: None,
    })
}

fn ones_then_twos(ones: usize, order: usize) -> MultiIndex {
    let mut entries = vec![1; ones];
    entries.resize(order, 2);
    MultiIndex::from_sorted(entries, 2)
}

/// Outcome of the `{0,1}`-CP test for 2-dimensional tensors.
#[derive(Clone, Debug, PartialEq)]
pub enum BcpCertificate<T> {
    BinaryCp {
        decomposition: CpDecomposition<T>,
        bcprank: usize,
    },
    NotBinaryCp {
        witness: Witness<T>,
    },
}

impl<T> BcpCertificate<T> {
    pub fn bcprank(&self) -> Option<usize> {
        match self {
            BcpCertificate::BinaryCp { bcprank, .. } => Some(*bcprank),
            BcpCertificate::NotBinaryCp { .. } => None,
        }
    }
}

/// Diagonals and the common off-diagonal value of a strong-symmetric
/// 2-dimensional tensor.
struct Dim2Values<T> {
    first: T,
    second: T,
    off: T,
    off_index: MultiIndex,
}

fn dim2_values<T: Scalar>(a: &SymmetricTensor<T>) -> Result<Dim2Values<T>> {
    if a.dim() != 2 {
        return Err(Error::WrongDimension(a.dim()));
    }
    if a.order() < 2 {
        return Err(Error::InvalidOrder {
            order: a.order(),
            min: 2,
        });
    }
    if !a.is_strong_symmetric() {
        return Err(Error::NotApplicable(
            "off-diagonal entries are not all equal (tensor is not strong symmetric)".into(),
        ));
    }
    let m = a.order();
    let off_index = ones_then_twos(m - 1, m);
    Ok(Dim2Values {
        first: a.diagonal_value(1).clone(),
        second: a.diagonal_value(2).clone(),
        off: a.at(&off_index).clone(),
        off_index,
    })
}

/// Decides `{0,1}`-complete positivity of a strong-symmetric nonnegative
/// integral 2-dimensional tensor.
///
/// With `n1 = A(1..1)`, `n2 = A(2..2)` and off-diagonal value `n12`, the
/// tensor is `{0,1}`-CP iff `n12 <= min(n1, n2)`, and then its binary
/// cp-rank is `n1 + n2 - n12`. The certificate lists that many 0/1 factors:
/// `n12` copies of `(1,1)`, `n1 - n12` of `(1,0)` and `n2 - n12` of `(0,1)`.
pub fn certify_binary_cp_dim2<T: Scalar>(a: &SymmetricTensor<T>) -> Result<BcpCertificate<T>> {
    let v = dim2_values(a)?;
    let natural = |x: &T| {
        x.to_natural()
            .ok_or_else(|| Error::NotApplicable(format!("value {x} is not a nonnegative integer")))
    };
    let (n1, n2, n12) = (natural(&v.first)?, natural(&v.second)?, natural(&v.off)?);

    if n12 > n1.min(n2) {
        let (vertex, diagonal) = if n12 > n1 {
            (1, v.first)
        } else {
            (2, v.second)
        };
        return Ok(BcpCertificate::NotBinaryCp {
            witness: Witness::Dominance {
                index: v.off_index,
                value: v.off,
                vertex,
                diagonal,
            },
        });
    }

    // Factor j holds coordinate i iff j lies in the support S_i, where
    // S_1 = [1..n1] and S_2 = [1..n12] followed by [n1+1 .. n1+n2-n12].
    let p = (n1 + n2 - n12) as usize;
    let (one, zero) = (T::one(), T::zero());
    let factors: Vec<Vec<T>> = (1..=p as u64)
        .map(|j| {
            let in_first = j <= n1;
            let in_second = j <= n12 || j > n1;
            vec![
                if in_first { one.clone() } else { zero.clone() },
                if in_second { one.clone() } else { zero.clone() },
            ]
        })
        .collect();
    let decomposition = CpDecomposition::factors(factors)?;
    debug_assert!(verify_cp_decomposition(a, &decomposition)?.is_positive());
    Ok(BcpCertificate::BinaryCp {
        decomposition,
        bcprank: p,
    })
}

/// Constructive sufficient test for complete positivity of a strong-symmetric
/// nonnegative 2-dimensional tensor.
///
/// When the off-diagonal value `a3` satisfies `0 <= a3 <= min(a1, a2)`, the
/// tensor is `(a1-a3) e_1^m + (a2-a3) e_2^m + a3 (1,1)^m`. Terms with zero
/// weight are dropped, so at most three factors remain. The factor count is
/// that of this construction and is not claimed minimal.
pub fn construct_cp_dim2<T: Scalar>(a: &SymmetricTensor<T>) -> Result<Certificate<T>> {
    let v = dim2_values(a)?;
    if !a.is_nonnegative() {
        return Err(Error::NotApplicable("tensor has a negative entry".into()));
    }
    if v.off > v.first || v.off > v.second {
        return Ok(Certificate::Inconclusive(format!(
            "off-diagonal value {} exceeds a diagonal value; the construction needs {} <= min({}, {})",
            v.off, v.off, v.first, v.second
        )));
    }
    let (one, zero) = (T::one(), T::zero());
    let terms = [
        (
            v.first.clone() - v.off.clone(),
            vec![one.clone(), zero.clone()],
        ),
        (v.second.clone() - v.off.clone(), vec![zero, one.clone()]),
        (v.off.clone(), vec![one.clone(), one]),
    ]
    .into_iter()
    .filter(|(w, _)| !w.is_zero())
    .map(|(weight, direction)| WeightedFactor { weight, direction })
    .collect();
    let decomposition = CpDecomposition::weighted(terms)?;
    verify_cp_decomposition(a, &decomposition)
}

/// Necessary condition for complete positivity of a strong-symmetric tensor:
/// `A(s)^2 <= A(i..i) A(j..j)` for every index `s` with base set `{i, j}`.
/// A violation proves the tensor is not CP; passing proves nothing.
pub fn pairwise_necessary_check<T: Scalar>(a: &SymmetricTensor<T>) -> Certificate<T> {
    if !a.is_strong_symmetric() {
        return Certificate::NotApplicable("tensor is not strong symmetric".into());
    }
    for (idx, value) in a.iter() {
        let base = idx.base_set();
        if base.len() != 2 {
            continue;
        }
        let (i, j) = (base[0], base[1]);
        let (di, dj) = (a.diagonal_value(i).clone(), a.diagonal_value(j).clone());
        if value.clone() * value.clone() > di.clone() * dj.clone() {
            return Certificate::Negative(Witness::Pairwise {
                index: idx,
                value: value.clone(),
                left: (i, di),
                right: (j, dj),
            });
        }
    }
    Certificate::Passed
}

/// Necessary condition for `{0,1}`-complete positivity of an integral tensor:
/// every entry is at most each diagonal entry associated with it.
pub fn dominance_necessary_check<T: Scalar>(a: &SymmetricTensor<T>) -> Certificate<T> {
    if !a.is_integral() {
        return Certificate::NotApplicable("tensor is not nonnegative integral".into());
    }
    for (idx, value) in a.iter() {
        for vertex in idx.base_set() {
            let diagonal = a.diagonal_value(vertex);
            if value > diagonal {
                return Certificate::Negative(Witness::Dominance {
                    index: idx,
                    value: value.clone(),
                    vertex,
                    diagonal: diagonal.clone(),
                });
            }
        }
    }
    Certificate::Passed
}

/// The strong-symmetric 2-dimensional tensor with diagonals `first`,
/// `second` and off-diagonal value `off`.
pub fn strong_symmetric_dim2<T: Scalar>(
    order: usize,
    first: T,
    second: T,
    off: T,
) -> Result<SymmetricTensor<T>> {
    SymmetricTensor::from_fn(order, 2, |idx| {
        if !idx.is_diagonal() {
            off.clone()
        } else if idx.entries()[0] == 1 {
            first.clone()
        } else {
            second.clone()
        }
    })
}
