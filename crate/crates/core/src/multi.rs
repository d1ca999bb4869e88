//! Multi-Stirling numbers of the first kind, multi-Bernoulli numbers and
//! multi-Lah numbers.
//!
//! With `z = 1 - e^{-t}` and `r` the depth of the index `k`:
//!
//! ```text
//! Li_k(t)               = sum_n S1^{(k)}(n, r) t^n / n!
//! Li_k(z) / z^r         = sum_m B_m^{(k)} t^m / m!
//! Li_k(z) / (1 - t)^r   = sum_n L^{(k)}(n, r) t^n / n!
//! ```
//!
//! None of these are integers in general.

use crate::error::{Error, Result};
use crate::multilog::{li_series, MultiIndex};
use crate::scalar::Scalar;
use crate::series::{Builtin, TruncatedSeries};
use crate::Rational;

pub const DEFAULT_ORDER_CAP: usize = 512;

/// Upper bound on the series order any single computation may request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCap(usize);

impl OrderCap {
    pub fn new(cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument("order cap must be >= 1".into()));
        }
        Ok(Self(cap))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, requested: usize) -> Result<()> {
        if requested > self.0 {
            Err(Error::OrderCapExceeded {
                requested,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for OrderCap {
    fn default() -> Self {
        Self(DEFAULT_ORDER_CAP)
    }
}

/// Generating function of `S1^{(k)}(n, r)`: `Li_k(t)` known to `max_n`.
pub fn multi_stirling1_series<T: Scalar>(
    k: &MultiIndex,
    max_n: usize,
    cap: OrderCap,
) -> Result<TruncatedSeries<T>> {
    k.require_standard()?;
    cap.check(max_n)?;
    Ok(li_series(k, max_n))
}

/// Generating function of `B_m^{(k)}`: `Li_k(z)/z^r` at `z = 1 - e^{-t}`, known to `max_m`.
///
/// Dividing by `z^r` (valuation `r`) costs `r` coefficients, so the pipeline
/// works at order `max_m + r`.
pub fn multi_bernoulli_series<T: Scalar>(
    k: &MultiIndex,
    max_m: usize,
    cap: OrderCap,
) -> Result<TruncatedSeries<T>> {
    k.require_standard()?;
    let working = max_m + k.depth();
    cap.check(working)?;
    let z = Builtin::OneMinusExpNeg.series::<T>(working);
    let li_of_z = TruncatedSeries::compose(&li_series(k, working), &z)?;
    li_of_z.div_series(&z.pow(k.depth() as u32))
}

/// Generating function of `L^{(k)}(n, r)`: `Li_k(1 - e^{-t}) / (1-t)^r`, known to `max_n`.
/// The last index entry may be nonpositive.
pub fn multi_lah_series<T: Scalar>(
    k: &MultiIndex,
    max_n: usize,
    cap: OrderCap,
) -> Result<TruncatedSeries<T>> {
    cap.check(max_n)?;
    let z = Builtin::OneMinusExpNeg.series::<T>(max_n);
    let li_of_z = TruncatedSeries::compose(&li_series(k, max_n), &z)?;
    let one_minus_t = &TruncatedSeries::one(max_n) - &TruncatedSeries::monomial(1, max_n);
    li_of_z.div_series(&one_minus_t.pow(k.depth() as u32))
}

/// `S1^{(k)}(n, r)` for `n = 0..=max_n`.
pub fn multi_stirling1_table(k: &MultiIndex, max_n: usize) -> Result<Vec<Rational>> {
    Ok(multi_stirling1_series::<Rational>(k, max_n, OrderCap::default())?.egf_values())
}

/// `S1^{(k)}(n, r)`; zero for `n < r`.
pub fn multi_stirling1(k: &MultiIndex, n: usize) -> Result<Rational> {
    Ok(multi_stirling1_table(k, n)?.swap_remove(n))
}

/// `B_0^{(k)}, ..., B_{max_m}^{(k)}`.
pub fn multi_bernoulli(k: &MultiIndex, max_m: usize) -> Result<Vec<Rational>> {
    Ok(multi_bernoulli_series::<Rational>(k, max_m, OrderCap::default())?.egf_values())
}

/// `L^{(k)}(n, r)` for `n = 0..=max_n`.
pub fn multi_lah_table(k: &MultiIndex, max_n: usize) -> Result<Vec<Rational>> {
    Ok(multi_lah_series::<Rational>(k, max_n, OrderCap::default())?.egf_values())
}

/// `L^{(k)}(n, r)`; zero for `n < r`.
pub fn multi_lah(k: &MultiIndex, n: usize) -> Result<Rational> {
    Ok(multi_lah_table(k, n)?.swap_remove(n))
}
