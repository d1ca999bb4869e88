//! Truncated formal power series.
//!
//! A [`TruncatedSeries`] stores `c_0, ..., c_N` and nothing else: coefficients of
//! `t^m` for `m > N` are unknown, not zero. Binary operations therefore return the
//! smaller of the two input orders, and division additionally loses the valuation
//! of the divisor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::format_rational;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| T::zero())
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `t^k` known to `order`. When `k > order` this is the zero series.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `t^n`, or `None` when `n` is beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero stored coefficient; `None` if all are zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`. Asking for a higher order is a no-op.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Equality over the coefficients both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_fn(self.order(), |n| {
            if n >= k {
                self.coeffs[n - k].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Divides by `t^k`, which must divide the series. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::NotRepresentable(format!(
                "cannot remove t^{k} from a series known only to order {}",
                self.order()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRepresentable(format!(
                "series is not divisible by t^{k}"
            )));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| f(&self.coeffs[i], &other.coeffs[i]))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self { coeffs: out }
    }

    /// Quotient `self / divisor`.
    ///
    /// With `v` the valuation of `divisor`, both sides are divided by `t^v` first
    /// and the quotient is then found by long division against the unit that
    /// remains. The result has order `min(order(self), order(divisor)) - v`.
    pub fn div_series(&self, divisor: &Self) -> Result<Self> {
        let v = divisor
            .valuation()
            .ok_or_else(|| Error::NotRepresentable("divisor is zero".into()))?;
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(Error::NotRepresentable(format!(
                    "dividend valuation {va} is below divisor valuation {v}"
                )));
            }
        }
        let n = self.order().min(divisor.order());
        if n < v {
            return Err(Error::NotRepresentable(format!(
                "no coefficient survives dividing by a valuation-{v} series at order {n}"
            )));
        }
        let num = self.truncate(n).shift_down(v)?;
        let den = divisor.truncate(n).shift_down(v)?;
        let lead = den.coeffs[0].clone();
        let m = n - v;
        let mut q: Vec<T> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = num.coeffs[i].clone();
            for j in 1..=i {
                let d = &den.coeffs[j];
                if !d.is_zero() {
                    acc = acc - d.clone() * q[i - j].clone();
                }
            }
            q.push(acc / lead.clone());
        }
        Ok(Self { coeffs: q })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotRepresentable(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        Self::one(self.order()).div_series(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }

    /// `outer(inner(t))`, by Horner evaluation over series.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = outer.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(outer.coeffs[n].clone(), n);
        for c in outer.coeffs[..n].iter().rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Formal derivative; the order drops by one.
    pub fn diff(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InvalidArgument(
                "the derivative of an order-0 series has no known coefficient".into(),
            ));
        }
        Ok(Self::from_fn(self.order() - 1, |n| {
            self.coeffs[n + 1].clone() * T::from_int(n as i64 + 1)
        }))
    }

    /// Integral from 0; the constant term is 0 and the order rises by one.
    pub fn integrate(&self) -> Self {
        Self::from_fn(self.order() + 1, |n| {
            if n == 0 {
                T::zero()
            } else {
                self.coeffs[n - 1].clone() / T::from_int(n as i64)
            }
        })
    }

    /// Exponential-generating-function view: `n! * c_n` for every stored `n`.
    pub fn egf_values(&self) -> Vec<T> {
        let mut fact = T::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact = fact.clone() * T::from_int(n as i64);
                }
                c.clone() * fact.clone()
            })
            .collect()
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        self.mul_series(rhs)
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries<Rational> {
    /// `c0 + c1*t + c2*t^2 + ...` with every coefficient in `p/q` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let c = format_rational(c);
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{n}")?,
            }
        }
        Ok(())
    }
}

/// Named generating functions with closed-form Taylor coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `1/(1-t)`
    Geometric,
    /// `1 - e^{-t}`
    OneMinusExpNeg,
    /// `e^t`
    Exp,
    /// `log(1+t)`
    LogOnePlus,
    /// `-log(1-t)`
    NegLogOneMinus,
    /// `t^k`
    Power(u32),
    /// `(t/(e^t - 1))^r`, the generating function of order-`r` Bernoulli numbers.
    BernoulliGf(u32),
}

impl Builtin {
    pub const NAMES: [&'static str; 7] = [
        "geometric",
        "one_minus_exp_neg",
        "exp",
        "log_one_plus",
        "neg_log_one_minus",
        "power",
        "bernoulli_gf_order_r",
    ];

    /// Resolves a builtin by name; `power` needs `k`, `bernoulli_gf_order_r`
    /// needs `r >= 1`.
    pub fn from_name(name: &str, k: Option<u32>, r: Option<u32>) -> Result<Self> {
        match name {
            "power" => k
                .map(Builtin::Power)
                .ok_or_else(|| Error::InvalidArgument("power requires k".into())),
            "bernoulli_gf_order_r" => match r {
                Some(r) if r >= 1 => Ok(Builtin::BernoulliGf(r)),
                Some(_) => Err(Error::InvalidArgument(
                    "bernoulli_gf_order_r requires r >= 1".into(),
                )),
                None => Err(Error::InvalidArgument(
                    "bernoulli_gf_order_r requires r".into(),
                )),
            },
            other => other.parse(),
        }
    }

    pub fn series<T: Scalar>(self, order: usize) -> TruncatedSeries<T> {
        // 1/n! for n = 0..=order+1
        let mut inv_fact = Vec::with_capacity(order + 2);
        inv_fact.push(T::one());
        for n in 1..=order + 1 {
            let prev: T = inv_fact[n - 1].clone();
            inv_fact.push(prev / T::from_int(n as i64));
        }
        let recip = |n: usize| T::one() / T::from_int(n as i64);
        match self {
            Builtin::Geometric => TruncatedSeries::from_fn(order, |_| T::one()),
            Builtin::OneMinusExpNeg => TruncatedSeries::from_fn(order, |n| match n {
                0 => T::zero(),
                n if n % 2 == 1 => inv_fact[n].clone(),
                n => -inv_fact[n].clone(),
            }),
            Builtin::Exp => TruncatedSeries::from_fn(order, |n| inv_fact[n].clone()),
            Builtin::LogOnePlus => TruncatedSeries::from_fn(order, |n| match n {
                0 => T::zero(),
                n if n % 2 == 1 => recip(n),
                n => -recip(n),
            }),
            Builtin::NegLogOneMinus => {
                TruncatedSeries::from_fn(order, |n| if n == 0 { T::zero() } else { recip(n) })
            }
            Builtin::Power(k) => TruncatedSeries::monomial(k as usize, order),
            Builtin::BernoulliGf(r) => {
                // (e^t - 1)/t has coefficients 1/(n+1)! and constant term 1.
                let quotient = TruncatedSeries::from_fn(order, |n| inv_fact[n + 1].clone());
                quotient.reciprocal().expect("(e^t - 1)/t is a unit").pow(r)
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Parses the parameterless names only.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(Builtin::Geometric),
            "one_minus_exp_neg" => Ok(Builtin::OneMinusExpNeg),
            "exp" => Ok(Builtin::Exp),
            "log_one_plus" => Ok(Builtin::LogOnePlus),
            "neg_log_one_minus" => Ok(Builtin::NegLogOneMinus),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}
