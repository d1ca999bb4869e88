//! Oracles shared by the integration tests. Nothing here calls the series
//! pipeline or the multiple-logarithm dynamic program.

#![allow(dead_code)]

use num_traits::{One, Zero};
use polynum::numeric::{factorial, sign_pow};
use polynum::{Rational, Scalar};

/// `sum_{0 < m_1 < ... < m_r = n} prod m_i^{-k_i}` by enumerating every chain.
pub fn chain_sum(k: &[i64], n: usize) -> Rational {
    fn go(k: &[i64], top: usize, acc: Rational) -> Rational {
        match k.split_last() {
            None => acc,
            Some((&kj, rest)) => {
                let weighted = acc * Rational::int_pow(top as i64, -kj);
                if rest.is_empty() {
                    weighted
                } else {
                    (rest.len()..top)
                        .map(|m| go(rest, m, weighted.clone()))
                        .fold(Rational::zero(), |a, b| a + b)
                }
            }
        }
    }
    if n < k.len() || n == 0 {
        return Rational::zero();
    }
    go(k, n, Rational::one())
}

/// Depth-one multi-Bernoulli numbers,
/// `B_n^{(k)} = sum_m (-1)^(n-m) m! S2(n,m) / (m+1)^k`,
/// with `S2` from the explicit alternating sum.
pub fn depth_one_bernoulli(k: i64, n: usize) -> Rational {
    (0..=n)
        .map(|m| {
            sign_pow((n - m) as i64)
                * Rational::from_integer(factorial(m as u64))
                * stirling2_explicit(n, m)
                * Rational::int_pow(m as i64 + 1, -k)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// `S2(n, m) = (1/m!) sum_j (-1)^(m-j) C(m, j) j^n`.
pub fn stirling2_explicit(n: usize, m: usize) -> Rational {
    let sum = (0..=m)
        .map(|j| {
            sign_pow((m - j) as i64)
                * Rational::from_integer(polynum::numeric::binomial(m as u64, j as i64))
                * Rational::from_integer(num_bigint::BigInt::from(j).pow(n as u32))
        })
        .fold(Rational::zero(), |a, b| a + b);
    sum / Rational::from_integer(factorial(m as u64))
}
