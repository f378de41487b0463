//! Reference computations shared by the integration tests. Everything here
//! works on raw `n^m` arrays and never calls the canonical-index machinery
//! it is used to check.

#![allow(dead_code)]

use cptensor::{Rational, SymmetricTensor};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// All tuples in `[1..=n]^m`, last position fastest.
pub fn tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `sum_j prod_k beta_j[t_k]` for every raw tuple `t`.
pub fn raw_sum_of_powers(factors: &[Vec<Rational>], m: usize, n: usize) -> Vec<Rational> {
    tuples(m, n)
        .iter()
        .map(|t| {
            factors
                .iter()
                .map(|b| t.iter().fold(Rational::one(), |acc, &i| acc * &b[i - 1]))
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// The tensor read back as a raw array through symmetric lookups.
pub fn raw_values(a: &SymmetricTensor<Rational>) -> Vec<Rational> {
    tuples(a.order(), a.dim())
        .iter()
        .map(|t| a.get(t).unwrap().clone())
        .collect()
}

/// `A x^m` as the plain sum over all `n^m` tuples.
pub fn evaluate_raw(a: &SymmetricTensor<Rational>, x: &[Rational]) -> Rational {
    tuples(a.order(), a.dim())
        .iter()
        .map(|t| {
            t.iter()
                .fold(a.get(t).unwrap().clone(), |acc, &i| acc * &x[i - 1])
        })
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// `sum_j (beta_j . x)^m`.
pub fn sum_of_linear_powers(factors: &[Vec<Rational>], x: &[Rational], m: usize) -> Rational {
    factors
        .iter()
        .map(|b| {
            let dot = b
                .iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (u, v)| acc + u * v);
            num_traits::pow(dot, m)
        })
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// Smallest `K <= k_max` such that some multiset of `K` nonzero 0/1 vectors
/// has `m`-th powers summing to `A`, by unpruned enumeration.
pub fn naive_binary_rank(a: &SymmetricTensor<Rational>, k_max: usize) -> Option<usize> {
    let (m, n) = (a.order(), a.dim());
    let target = raw_values(a);
    let candidates: Vec<Vec<Rational>> = (1u32..1 << n)
        .map(|mask| (0..n).map(|i| q(i64::from(mask >> i & 1))).collect())
        .collect();
    let powers: Vec<Vec<Rational>> = candidates
        .iter()
        .map(|c| raw_sum_of_powers(std::slice::from_ref(c), m, n))
        .collect();

    fn search(
        powers: &[Vec<Rational>],
        first: usize,
        left: usize,
        acc: &mut Vec<Rational>,
        target: &[Rational],
    ) -> bool {
        if left == 0 {
            return acc.as_slice() == target;
        }
        for c in first..powers.len() {
            for (a, p) in acc.iter_mut().zip(&powers[c]) {
                *a += p;
            }
            let hit = search(powers, c, left - 1, acc, target);
            for (a, p) in acc.iter_mut().zip(&powers[c]) {
                *a -= p;
            }
            if hit {
                return true;
            }
        }
        false
    }

    (0..=k_max).find(|&k| search(&powers, 0, k, &mut vec![q(0); target.len()], &target))
}

pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.gen_range(0..=max_num).into(),
        rng.gen_range(1..=max_den).into(),
    )
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, max_num: i64, max_den: i64) -> Vec<Rational> {
    (0..dim)
        .map(|_| random_rational(rng, max_num, max_den))
        .collect()
}

/// Random 0/1 symmetric tensor where each canonical entry is 1 with
/// probability `density`.
pub fn random_binary<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    density: f64,
) -> SymmetricTensor<Rational> {
    SymmetricTensor::from_fn(m, n, |_| q(i64::from(rng.gen_bool(density)))).unwrap()
}
