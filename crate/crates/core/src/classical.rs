//! Stirling numbers of both kinds, Lah numbers, higher-order Bernoulli numbers,
//! and the factorial-basis connection identities between them.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, sign_pow};
use crate::report::{IdentityCase, IdentityReport};
use crate::scalar::Scalar;
use crate::series::Builtin;
use crate::{Rational, Series};

/// Rows above this bound are computed on the fly instead of being memoized.
pub const MEMO_CAP: usize = 512;

type RowStep = fn(&[BigInt], usize) -> Vec<BigInt>;

/// Lazily grown triangle `T(n, k)`, `0 <= k <= n`.
struct Triangle {
    rows: RwLock<Vec<Vec<BigInt>>>,
    step: RowStep,
}

impl Triangle {
    fn new(step: RowStep) -> Self {
        Self {
            rows: RwLock::new(vec![vec![BigInt::one()]]),
            step,
        }
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        if n > MEMO_CAP {
            let mut row = vec![BigInt::one()];
            for m in 1..=n {
                row = (self.step)(&row, m);
            }
            return row[k].clone();
        }
        {
            let rows = self.rows.read().unwrap();
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= n {
            let m = rows.len();
            let next = (self.step)(&rows[m - 1], m);
            rows.push(next);
        }
        rows[n][k].clone()
    }
}

fn at(row: &[BigInt], k: usize) -> BigInt {
    row.get(k).cloned().unwrap_or_default()
}

static STIRLING1: LazyLock<Triangle> = LazyLock::new(|| {
    Triangle::new(|prev, n| {
        (0..=n)
            .map(|k| {
                let left = if k == 0 {
                    BigInt::zero()
                } else {
                    at(prev, k - 1)
                };
                left + at(prev, k) * (n - 1)
            })
            .collect()
    })
});

static STIRLING2: LazyLock<Triangle> = LazyLock::new(|| {
    Triangle::new(|prev, n| {
        (0..=n)
            .map(|k| {
                let left = if k == 0 {
                    BigInt::zero()
                } else {
                    at(prev, k - 1)
                };
                left + at(prev, k) * k
            })
            .collect()
    })
});

static BERNOULLI_ORDER: LazyLock<RwLock<HashMap<u32, Vec<Rational>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Unsigned Stirling number of the first kind `[n brack k]`.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    STIRLING1.get(n, k)
}

/// Signed Stirling number of the first kind, `(-1)^(n-k) [n brack k]`.
pub fn stirling1_signed(n: usize, k: usize) -> BigInt {
    let c = stirling1_unsigned(n, k);
    if (n + k) % 2 == 1 {
        -c
    } else {
        c
    }
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING2.get(n, k)
}

/// Unsigned Lah number, `C(n-1, k-1) n!/k!` for `n, k >= 1`, with
/// `L(0, 0) = 1` and `L(n, 0) = 0` otherwise.
pub fn lah(n: usize, k: usize) -> BigInt {
    if k == 0 {
        return if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if k > n {
        return BigInt::zero();
    }
    binomial(n as u64 - 1, k as i64 - 1) * factorial(n as u64) / factorial(k as u64)
}

/// `B_0^{(r)}, ..., B_{max_n}^{(r)}`: `n!` times the coefficients of `(t/(e^t-1))^r`.
pub fn bernoulli_order_row(r: u32, max_n: usize) -> Result<Vec<Rational>> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "Bernoulli order must be >= 1".into(),
        ));
    }
    if let Some(row) = BERNOULLI_ORDER.read().unwrap().get(&r) {
        if row.len() > max_n {
            return Ok(row[..=max_n].to_vec());
        }
    }
    let row = Builtin::BernoulliGf(r)
        .series::<Rational>(max_n)
        .egf_values();
    if max_n <= MEMO_CAP {
        let mut cache = BERNOULLI_ORDER.write().unwrap();
        let slot = cache.entry(r).or_default();
        if slot.len() < row.len() {
            *slot = row.clone();
        }
    }
    Ok(row)
}

/// Higher-order Bernoulli number `B_n^{(r)}`.
pub fn bernoulli_order(n: usize, r: u32) -> Result<Rational> {
    Ok(bernoulli_order_row(r, n)?.swap_remove(n))
}

/// `(x)_n = x(x-1)...(x-n+1)`.
pub fn falling_factorial_eval(x: &Rational, n: usize) -> Rational {
    (0..n as i64).fold(Rational::one(), |acc, i| acc * (x - Rational::from_int(i)))
}

/// `<x>_n = x(x+1)...(x+n-1)`.
pub fn rising_factorial_eval(x: &Rational, n: usize) -> Rational {
    (0..n as i64).fold(Rational::one(), |acc, i| acc * (x + Rational::from_int(i)))
}

fn rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Evaluates the four factorial-basis connection identities at every sample
/// point for every `n <= n_max`:
///
/// * `<x>_n = sum_k L(n,k) (x)_k`
/// * `(x)_n = sum_k (-1)^(n-k) L(n,k) <x>_k`
/// * `(x)_n = sum_k S1(n,k) x^k`
/// * `x^n = sum_k S2(n,k) (x)_k`
///
/// Both sides are polynomials of degree `n`, so agreement at `n_max + 1`
/// distinct points certifies each identity.
pub fn check_connection_identities(n_max: usize, points: &[Rational]) -> Result<IdentityReport> {
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < n_max + 1 {
        return Err(Error::InsufficientPoints {
            needed: n_max + 1,
            got: distinct.len(),
        });
    }
    let mut report = IdentityReport::new("connection")
        .param("n_max", n_max)
        .param("points", points.len());
    for (id, r) in [
        ("eq1", check_eq1(n_max, points)),
        ("eq1-inverse", check_eq1_inverse(n_max, points)),
        ("eq4", check_eq4(n_max, points)),
        ("eq5", check_eq5(n_max, points)),
    ] {
        debug_assert_eq!(r.identity, id);
        report.absorb(r);
    }
    Ok(report.finish())
}

fn point_cases(
    id: &str,
    n_max: usize,
    points: &[Rational],
    f: impl Fn(usize, &Rational) -> (Rational, Rational),
) -> IdentityReport {
    let mut report = IdentityReport::new(id).param("n_max", n_max);
    for n in 0..=n_max {
        for x in points {
            let (lhs, rhs) = f(n, x);
            report.push(IdentityCase::new(
                format!("n={n},x={}", crate::numeric::format_rational(x)),
                lhs,
                rhs,
            ));
        }
    }
    report.finish()
}

pub fn check_eq1(n_max: usize, points: &[Rational]) -> IdentityReport {
    point_cases("eq1", n_max, points, |n, x| {
        let rhs = (0..=n)
            .map(|k| rat(lah(n, k)) * falling_factorial_eval(x, k))
            .sum();
        (rising_factorial_eval(x, n), rhs)
    })
}

pub fn check_eq1_inverse(n_max: usize, points: &[Rational]) -> IdentityReport {
    point_cases("eq1-inverse", n_max, points, |n, x| {
        let rhs = (0..=n)
            .map(|k| sign_pow((n - k) as i64) * rat(lah(n, k)) * rising_factorial_eval(x, k))
            .sum();
        (falling_factorial_eval(x, n), rhs)
    })
}

pub fn check_eq4(n_max: usize, points: &[Rational]) -> IdentityReport {
    point_cases("eq4", n_max, points, |n, x| {
        let rhs = (0..=n)
            .map(|k| rat(stirling1_signed(n, k)) * num_traits::Pow::pow(x, k as u32))
            .sum();
        (falling_factorial_eval(x, n), rhs)
    })
}

pub fn check_eq5(n_max: usize, points: &[Rational]) -> IdentityReport {
    point_cases("eq5", n_max, points, |n, x| {
        let rhs = (0..=n)
            .map(|k| rat(stirling2(n, k)) * falling_factorial_eval(x, k))
            .sum();
        (num_traits::Pow::pow(x, n as u32), rhs)
    })
}

/// Compares `n! [t^n] base^k / k!` with `table(n, k)` for `k_min <= k <= n <= n_max`.
fn gf_cases(
    id: &str,
    n_max: usize,
    k_min: usize,
    base: &Series,
    table: fn(usize, usize) -> BigInt,
) -> IdentityReport {
    let mut report = IdentityReport::new(id).param("n_max", n_max);
    let mut power = Series::one(n_max);
    for k in 0..=n_max {
        if k > 0 {
            power = &power * base;
        }
        if k < k_min {
            continue;
        }
        let egf = power
            .scale(&(Rational::one() / Rational::factorial(k)))
            .egf_values();
        for (n, value) in egf.into_iter().enumerate().skip(k) {
            report.push(IdentityCase::new(
                format!("n={n},k={k}"),
                value,
                rat(table(n, k)),
            ));
        }
    }
    report.finish()
}

/// `(t/(1-t))^k / k! = sum_n L(n,k) t^n/n!` for `1 <= k <= n <= n_max`.
pub fn check_eq2(n_max: usize) -> IdentityReport {
    let base = &Builtin::Geometric.series::<Rational>(n_max) - &Series::one(n_max);
    gf_cases("eq2", n_max, 1, &base, lah)
}

/// `(e^t-1)^k / k! = sum_n S2(n,k) t^n/n!` for `0 <= k <= n <= n_max`.
pub fn check_eq6(n_max: usize) -> IdentityReport {
    let base = &Builtin::Exp.series::<Rational>(n_max) - &Series::one(n_max);
    gf_cases("eq6", n_max, 0, &base, stirling2)
}

/// `(log(1+t))^k / k! = sum_n S1(n,k) t^n/n!` for `0 <= k <= n <= n_max`.
pub fn check_eq7(n_max: usize) -> IdentityReport {
    let base = Builtin::LogOnePlus.series::<Rational>(n_max);
    gf_cases("eq7", n_max, 0, &base, stirling1_signed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rational};

    /// Coefficients of `x(x+1)...(x+n-1)` by direct polynomial expansion.
    fn rising_poly(n: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::one()];
        for i in 0..n {
            let mut next = vec![BigInt::zero(); p.len() + 1];
            for (d, c) in p.iter().enumerate() {
                next[d + 1] += c;
                next[d] += c * i;
            }
            p = next;
        }
        p
    }

    /// Number of partitions of {0..n} into exactly k nonempty blocks, by
    /// enumerating restricted growth strings.
    fn count_partitions(n: usize, k: usize) -> usize {
        fn go(i: usize, n: usize, used: usize, k: usize) -> usize {
            if i == n {
                return usize::from(used == k);
            }
            (0..=used.min(k - 1))
                .map(|b| go(i + 1, n, used.max(b + 1), k))
                .sum()
        }
        if k == 0 {
            return usize::from(n == 0);
        }
        go(0, n, 0, k)
    }

    #[test]
    fn stirling_first_kind() {
        assert_eq!(rising_poly(4)[2], BigInt::from(11));
        assert_eq!(stirling1_unsigned(4, 2), BigInt::from(11));
        assert_eq!(stirling1_signed(4, 2), BigInt::from(11));
        assert_eq!(stirling1_signed(4, 3), BigInt::from(-6));
        for n in 0..=12 {
            assert_eq!(stirling1_unsigned(n, n), BigInt::one());
            assert_eq!(
                rising_poly(n),
                (0..=n)
                    .map(|k| stirling1_unsigned(n, k))
                    .collect::<Vec<_>>()
            );
        }
        assert_eq!(stirling1_unsigned(2, 5), BigInt::zero());
    }

    #[test]
    fn row_sums_are_factorials() {
        for n in 1..=12 {
            let sum: BigInt = (0..=n).map(|k| stirling1_unsigned(n, k)).sum();
            assert_eq!(sum, factorial(n as u64));
        }
    }

    #[test]
    fn stirling_second_kind() {
        assert_eq!(count_partitions(4, 2), 7);
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        for n in 1..=12 {
            assert_eq!(stirling2(n, 1), BigInt::one());
        }
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(stirling2(n, k), BigInt::from(count_partitions(n, k)));
            }
        }
        assert_eq!(stirling2(3, 5), BigInt::zero());
    }

    #[test]
    fn beyond_memo_cap_matches_recurrence() {
        let n = MEMO_CAP + 2;
        assert_eq!(stirling2(n, 1), BigInt::one());
        assert_eq!(stirling1_unsigned(n, n - 1), binomial(n as u64, 2));
    }

    #[test]
    fn lah_values() {
        assert_eq!(lah(4, 2), BigInt::from(36));
        assert_eq!(lah(3, 1), BigInt::from(6));
        assert_eq!(lah(0, 0), BigInt::one());
        assert_eq!(lah(3, 0), BigInt::zero());
        for n in 1..=12 {
            assert_eq!(lah(n, n), BigInt::one());
        }
        // n! [t^4] (t/(1-t))^2 / 2! = 24 * 3 / 2
        assert_eq!(BigInt::from(24 * 3 / 2), lah(4, 2));
    }

    #[test]
    fn lah_is_an_involution_up_to_sign() {
        for n in 0..=10 {
            for k in 0..=n {
                let sum: BigInt = (k..=n)
                    .map(|j| {
                        let term = lah(n, j) * lah(j, k);
                        if (n - j) % 2 == 1 {
                            -term
                        } else {
                            term
                        }
                    })
                    .sum();
                let delta = if n == k {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                assert_eq!(sum, delta, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn higher_order_bernoulli() {
        assert_eq!(bernoulli_order(2, 1).unwrap(), rational(1, 6).unwrap());
        assert_eq!(bernoulli_order(1, 2).unwrap(), int(-1));
        for r in 1..=5 {
            assert_eq!(bernoulli_order(0, r).unwrap(), int(1));
            assert_eq!(
                bernoulli_order(1, r).unwrap(),
                rational(-(r as i64), 2).unwrap()
            );
        }
        assert!(bernoulli_order(3, 0).is_err());
        // cache returns prefixes consistently
        let long = bernoulli_order_row(3, 10).unwrap();
        assert_eq!(bernoulli_order_row(3, 4).unwrap(), long[..=4].to_vec());
    }

    #[test]
    fn order_one_is_classical_bernoulli() {
        let expected = [
            (1, 1),
            (-1, 2),
            (1, 6),
            (0, 1),
            (-1, 30),
            (0, 1),
            (1, 42),
            (0, 1),
            (-1, 30),
            (0, 1),
            (5, 66),
            (0, 1),
            (-691, 2730),
        ];
        let row = bernoulli_order_row(1, 12).unwrap();
        for (b, (p, q)) in row.iter().zip(expected) {
            assert_eq!(b, &rational(p, q).unwrap());
        }
    }

    #[test]
    fn factorial_evaluations() {
        assert_eq!(rising_factorial_eval(&int(1), 4), int(24));
        assert_eq!(
            falling_factorial_eval(&rational(1, 2).unwrap(), 2),
            rational(-1, 4).unwrap()
        );
        assert_eq!(falling_factorial_eval(&rational(7, 3).unwrap(), 0), int(1));
        assert_eq!(rising_factorial_eval(&int(-3), 0), int(1));
    }

    #[test]
    fn connection_identities() {
        let points: Vec<_> = (0..=6).map(int).collect();
        let report = check_connection_identities(6, &points).unwrap();
        assert!(report.all_equal);
        assert_eq!(report.cases.len(), 4 * 7 * 7);

        let report = check_connection_identities(0, &[int(0)]).unwrap();
        assert!(report.all_equal);

        let eq1 = check_eq1(1, &[int(5)]);
        let case = eq1.cases.iter().find(|c| c.label == "n=1,x=5/1").unwrap();
        assert_eq!((case.lhs.clone(), case.rhs.clone()), (int(5), int(5)));
    }

    #[test]
    fn connection_identities_need_enough_points() {
        let points = vec![int(0), int(1), int(1)];
        assert_eq!(
            check_connection_identities(2, &points),
            Err(Error::InsufficientPoints { needed: 3, got: 2 })
        );
    }

    #[test]
    fn generating_function_cross_checks() {
        for report in [check_eq2(12), check_eq6(12), check_eq7(12)] {
            assert!(report.all_equal, "{}", report.identity);
        }
        assert_eq!(check_eq2(3).cases.len(), 3 + 2 + 1);
        assert_eq!(check_eq6(3).cases.len(), 4 + 3 + 2 + 1);
    }
}
