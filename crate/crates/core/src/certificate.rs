use std::fmt;

use crate::gramian::CpDecomposition;
use crate::index::MultiIndex;
use crate::scalar::Scalar;

/// Outcome of a certification.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<T> {
    /// The tensor equals the sum of the decomposition's rank-one terms.
    Positive(CpDecomposition<T>),
    /// A concrete violated identity or inequality.
    Negative(Witness<T>),
    /// A necessary condition holds. Not a proof of complete positivity.
    Passed,
    /// A sufficient condition failed, so nothing is concluded.
    Inconclusive(String),
    /// The input lies outside the hypotheses of the check.
    NotApplicable(String),
}

impl<T> Certificate<T> {
    pub fn is_positive(&self) -> bool {
        matches!(self, Certificate::Positive(_))
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Certificate::Negative(_))
    }

    pub fn decomposition(&self) -> Option<&CpDecomposition<T>> {
        match self {
            Certificate::Positive(d) => Some(d),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness<T>> {
        match self {
            Certificate::Negative(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T> {
    /// `A(index) = expected` but the decomposition reconstructs `found`.
    Mismatch {
        index: MultiIndex,
        expected: T,
        found: T,
    },
    /// `A(index)^2 > A(i..i) A(j..j)` for the base set `{i, j}` of `index`.
    Pairwise {
        index: MultiIndex,
        value: T,
        left: (usize, T),
        right: (usize, T),
    },
    /// `A(index) > A(vertex..vertex)` with `vertex` in the base set of `index`.
    Dominance {
        index: MultiIndex,
        value: T,
        vertex: usize,
        diagonal: T,
    },
}

impl<T: Scalar> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mismatch {
                index,
                expected,
                found,
            } => write!(
                f,
                "A{index} = {expected} but the decomposition gives {found}"
            ),
            Witness::Pairwise {
                index,
                value,
                left,
                right,
            } => {
                let m = index.order();
                write!(
                    f,
                    "A{index}^2 = {} > A{}*A{} = {}",
                    value.clone() * value.clone(),
                    diag(left.0, m),
                    diag(right.0, m),
                    left.1.clone() * right.1.clone()
                )
            }
            Witness::Dominance {
                index,
                value,
                vertex,
                diagonal,
            } => write!(
                f,
                "A{index} = {value} > A{} = {diagonal}",
                diag(*vertex, index.order())
            ),
        }
    }
}

fn diag(vertex: usize, order: usize) -> String {
    let entries = vec![vertex.to_string(); order];
    format!("({})", entries.join(","))
}
