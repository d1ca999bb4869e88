//! Exact computation of multi-Stirling numbers of the first kind, multi-Bernoulli
//! numbers and multi-Lah numbers.
//!
//! Every family is defined through a generating function built from the multiple
//! logarithm `Li_{k_1,...,k_r}`. All of them are computed here on truncated formal
//! power series, by default over arbitrary-precision rationals, so the identities
//! relating them can be checked with exact equality.
//!
//! The series algebra and the multiple-logarithm dynamic program are generic over
//! [`Scalar`]; the number families and the identity verifiers work over
//! [`Rational`].

pub mod classical;
pub mod cli;
pub mod error;
pub mod identity;
pub mod multi;
pub mod multilog;
pub mod numeric;
pub mod report;
pub mod scalar;
pub mod series;
pub mod table;

pub use error::{Error, Result};
pub use multilog::MultiIndex;
pub use report::{IdentityCase, IdentityReport};
pub use scalar::Scalar;
pub use series::{Builtin, TruncatedSeries};
pub use table::{Family, NumberTable, TableRow};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Exact truncated power series.
pub type Series = TruncatedSeries<Rational>;

/// Double-precision truncated power series, useful for quick numerical previews.
pub type SeriesF64 = TruncatedSeries<f64>;

/// Single-precision truncated power series.
pub type SeriesF32 = TruncatedSeries<f32>;
