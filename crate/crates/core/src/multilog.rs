//! Truncated series of the multiple logarithm
//!
//! ```text
//! Li_{k_1,...,k_r}(t) = sum_{0 < m_1 < ... < m_r} t^{m_r} / (m_1^{k_1} ... m_r^{k_r})
//! ```
//!
//! computed by a prefix-sum dynamic program over the chain length.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::report::{IdentityCase, IdentityReport};
use crate::scalar::Scalar;
use crate::series::{Builtin, TruncatedSeries};
use crate::{Rational, Series};

/// Exponent tuple `(k_1, ..., k_r)`.
///
/// Every entry but the last must be positive. The last entry may be any
/// integer; an index whose entries are all positive is in *standard mode*.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    /// Index with positive prefix and arbitrary last entry.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let Some((_, prefix)) = entries.split_last() else {
            return Err(Error::InvalidIndex(
                "index must have at least one entry".into(),
            ));
        };
        if let Some(bad) = prefix.iter().find(|&&k| k < 1) {
            return Err(Error::InvalidIndex(format!(
                "only the last entry may be nonpositive, found {bad} earlier"
            )));
        }
        Ok(Self(entries))
    }

    /// Index with every entry positive.
    pub fn standard(entries: Vec<i64>) -> Result<Self> {
        let index = Self::new(entries)?;
        index.require_standard()?;
        Ok(index)
    }

    pub fn all_ones(depth: usize) -> Self {
        assert!(depth >= 1, "depth must be positive");
        Self(vec![1; depth])
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("nonempty")
    }

    pub fn is_standard(&self) -> bool {
        self.last() >= 1
    }

    pub fn require_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!(
                "({self}) has a nonpositive last entry; this family needs every entry >= 1"
            )))
        }
    }

    /// Same prefix, last entry replaced.
    pub fn with_last(&self, k: i64) -> Self {
        let mut entries = self.0.clone();
        *entries.last_mut().expect("nonempty") = k;
        Self(entries)
    }

    /// The index without its last entry, or `None` at depth 1.
    pub fn prefix(&self) -> Option<Self> {
        (self.depth() > 1).then(|| Self(self.0[..self.depth() - 1].to_vec()))
    }

    /// `1 / (1^{k_1} 2^{k_2} ... r^{k_r})`, the coefficient of `t^r` in `Li_k`.
    pub fn minimal_chain_weight<T: Scalar>(&self) -> T {
        self.0
            .iter()
            .enumerate()
            .fold(T::one(), |acc, (i, &k)| acc * T::int_pow(i as i64 + 1, -k))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Comma-separated integers without spaces, e.g. `1,2,-3`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|part| {
                let digits = part.strip_prefix('-').unwrap_or(part);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::InvalidIndex(format!(
                        "malformed entry {part:?} in {s:?}"
                    )));
                }
                part.parse::<i64>()
                    .map_err(|_| Error::InvalidIndex(format!("entry {part:?} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// `Li_k(t)` known to `order`.
///
/// The coefficient of `t^n` is `f_r(n)` where `f_1(n) = n^{-k_1}` and
/// `f_j(n) = n^{-k_j} * sum_{m<n} f_{j-1}(m)`; it vanishes for `n < r`.
pub fn li_series<T: Scalar>(k: &MultiIndex, order: usize) -> TruncatedSeries<T> {
    let mut layer: Vec<T> = (0..=order)
        .map(|n| {
            if n == 0 {
                T::zero()
            } else {
                T::int_pow(n as i64, -k.entries()[0])
            }
        })
        .collect();
    for &kj in &k.entries()[1..] {
        let mut prefix = T::zero();
        let mut next = Vec::with_capacity(order + 1);
        for (n, value) in layer.iter().enumerate() {
            next.push(if n == 0 {
                T::zero()
            } else {
                T::int_pow(n as i64, -kj) * prefix.clone()
            });
            prefix = prefix + value.clone();
        }
        layer = next;
    }
    TruncatedSeries::from_coeffs(layer).expect("order + 1 coefficients")
}

/// `(-log(1-t))^r / r!` known to `order`.
pub fn li_all_ones_closed_form(r: usize, order: usize) -> Series {
    Builtin::NegLogOneMinus
        .series::<Rational>(order)
        .pow(r as u32)
        .scale(&(Rational::one() / Rational::factorial(r)))
}

/// The two derivative identities of the multiple logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// `t d/dt Li_{...,k_r} = Li_{...,k_r - 1}`, for `k_r >= 2`.
    LowerLast,
    /// `(1-t) d/dt Li_{...,1} = Li_{...}` (last entry dropped), for `k_r = 1`, `r >= 2`.
    DropLast,
}

impl Recurrence {
    pub fn id(self) -> &'static str {
        match self {
            Recurrence::LowerLast => "eq11",
            Recurrence::DropLast => "eq12",
        }
    }

    /// The branch that applies to `k`, if any.
    pub fn for_index(k: &MultiIndex) -> Option<Self> {
        match k.last() {
            kr if kr >= 2 => Some(Recurrence::LowerLast),
            1 if k.depth() >= 2 => Some(Recurrence::DropLast),
            _ => None,
        }
    }
}

/// Checks one derivative identity for `Li_k` as a series identity up to `order - 1`.
pub fn check_derivative_recurrence(
    k: &MultiIndex,
    order: usize,
    branch: Recurrence,
) -> Result<IdentityReport> {
    k.require_standard()?;
    if order == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if Recurrence::for_index(k) != Some(branch) {
        let need = match branch {
            Recurrence::LowerLast => "k_r >= 2",
            Recurrence::DropLast => "k_r = 1 and r >= 2",
        };
        return Err(Error::InvalidArgument(format!(
            "{} does not apply to ({k}): requires {need}",
            branch.id()
        )));
    }
    let known = order - 1;
    let derivative = li_series::<Rational>(k, order).diff()?;
    let (lhs, rhs) = match branch {
        Recurrence::LowerLast => (
            &Series::monomial(1, known) * &derivative,
            li_series(&k.with_last(k.last() - 1), known),
        ),
        Recurrence::DropLast => {
            let one_minus_t = &Series::one(known) - &Series::monomial(1, known);
            let prefix = k.prefix().expect("depth >= 2");
            (&one_minus_t * &derivative, li_series(&prefix, known))
        }
    };
    let mut report = IdentityReport::new(branch.id())
        .param("index", k)
        .param("order", order);
    for (n, (a, b)) in lhs
        .into_coeffs()
        .into_iter()
        .zip(rhs.into_coeffs())
        .enumerate()
    {
        report.push(IdentityCase::new(format!("t^{n}"), a, b));
    }
    Ok(report.finish())
}

/// Checks whichever derivative identity applies to `k`.
pub fn check_derivative_recurrences(k: &MultiIndex, order: usize) -> Result<IdentityReport> {
    let branch = Recurrence::for_index(k).ok_or_else(|| {
        Error::InvalidArgument(format!("no derivative recurrence applies to ({k})"))
    })?;
    check_derivative_recurrence(k, order, branch)
}

/// `Li_{1,...,1}` from the dynamic program against `(-log(1-t))^r / r!`, per coefficient.
pub fn check_all_ones_closed_form(r_max: usize, order: usize) -> IdentityReport {
    let mut report = IdentityReport::new("eq13")
        .param("r_max", r_max)
        .param("order", order);
    for r in 1..=r_max {
        let dp = li_series::<Rational>(&MultiIndex::all_ones(r), order);
        let closed = li_all_ones_closed_form(r, order);
        for (n, (a, b)) in dp
            .into_coeffs()
            .into_iter()
            .zip(closed.into_coeffs())
            .enumerate()
        {
            report.push(IdentityCase::new(format!("r={r},t^{n}"), a, b));
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::stirling1_unsigned;
    use crate::numeric::{int, rational};

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn index_parsing_and_modes() {
        assert_eq!(idx("1,2,3").entries(), &[1, 2, 3]);
        assert!(idx("1,-2").entries() == [1, -2] && !idx("1,-2").is_standard());
        assert!(idx("2,0").entries() == [2, 0]);
        for bad in ["", "1,,2", "1, 2", "-1,2", "0,1", "a", "1,2-", "--1", "+1"] {
            assert!(bad.parse::<MultiIndex>().is_err(), "{bad:?}");
        }
        assert!(MultiIndex::standard(vec![1, 0]).is_err());
        assert!(MultiIndex::new(vec![]).is_err());
        assert_eq!(idx("3,-1").to_string(), "3,-1");
    }

    #[test]
    fn polylogarithm_depth_one() {
        let li: Series = li_series(&idx("2"), 4);
        assert_eq!(
            li.coeffs(),
            &[
                int(0),
                int(1),
                rational(1, 4).unwrap(),
                rational(1, 9).unwrap(),
                rational(1, 16).unwrap()
            ]
        );
    }

    #[test]
    fn spot_coefficients() {
        let li: Series = li_series(&idx("1,2"), 3);
        assert_eq!(li.coeff(3).unwrap(), &rational(1, 6).unwrap());
        let li: Series = li_series(&idx("1,-1"), 3);
        assert_eq!(li.coeff(3).unwrap(), &rational(9, 2).unwrap());
    }

    #[test]
    fn closed_form_all_ones() {
        assert_eq!(
            li_all_ones_closed_form(1, 3).coeffs(),
            &[
                int(0),
                int(1),
                rational(1, 2).unwrap(),
                rational(1, 3).unwrap()
            ]
        );
        let c = li_all_ones_closed_form(2, 3).egf_values();
        assert_eq!(c[3], Rational::from_integer(stirling1_unsigned(3, 2)));
        assert_eq!(li_all_ones_closed_form(3, 4).coeff(2).unwrap(), &int(0));
        assert!(check_all_ones_closed_form(4, 16).all_equal);
    }

    #[test]
    fn valuation_and_leading_coefficient() {
        for s in ["1", "3", "2,1", "1,3", "3,3,1", "1,1,1,1", "2,1,3,2"] {
            let k = idx(s);
            let li: Series = li_series(&k, 8);
            assert_eq!(li.valuation(), Some(k.depth()), "{s}");
            assert_eq!(
                li.coeff(k.depth()).unwrap(),
                &k.minimal_chain_weight::<Rational>()
            );
        }
    }

    #[test]
    fn derivative_recurrences() {
        for (s, branch) in [
            ("1,2", Recurrence::LowerLast),
            ("1,1", Recurrence::DropLast),
            ("2", Recurrence::LowerLast),
        ] {
            let report = check_derivative_recurrence(&idx(s), 10, branch).unwrap();
            assert!(report.all_equal, "{s}");
            assert_eq!(report.cases.len(), 10);
        }
        assert!(check_derivative_recurrence(&idx("1,1"), 10, Recurrence::LowerLast).is_err());
        assert!(check_derivative_recurrence(&idx("2"), 10, Recurrence::DropLast).is_err());
        assert!(check_derivative_recurrences(&idx("1"), 10).is_err());
        assert!(check_derivative_recurrences(&idx("1,-1"), 10).is_err());
        assert!(check_derivative_recurrences(&idx("2"), 0).is_err());
    }

    #[test]
    fn float_dp_tracks_exact() {
        let k = idx("2,1,3");
        let exact: Series = li_series(&k, 12);
        let approx: crate::SeriesF64 = li_series(&k, 12);
        for (e, a) in exact.coeffs().iter().zip(approx.coeffs()) {
            let e = num_traits::ToPrimitive::to_f64(e).unwrap();
            assert!((e - a).abs() <= 1e-14 * e.abs().max(1.0));
        }
    }
}
