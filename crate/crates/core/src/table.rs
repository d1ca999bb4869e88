//! Number tables: the unit of CLI output and of the on-disk cache.
//!
//! JSON form:
//!
//! ```text
//! {"family": "...", "index": [k1, ...], "max_n": N, "rows": [{"n": .., "r": .., "value": "p/q"}]}
//! ```
//!
//! CSV and TSV carry the header `n,r,value` followed by one row per entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::{bernoulli_order_row, lah, stirling1_signed, stirling1_unsigned, stirling2};
use crate::error::{Error, Result};
use crate::multi::{multi_bernoulli_series, multi_lah_series, multi_stirling1_series, OrderCap};
use crate::multilog::{li_series, MultiIndex};
use crate::numeric::{format_rational, serde_rational};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Stirling1Signed,
    Stirling1Unsigned,
    Stirling2,
    Lah,
    BernoulliOrder,
    MultiStirling1,
    MultiBernoulli,
    MultiLah,
    LiCoeffs,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Stirling1Signed,
        Family::Stirling1Unsigned,
        Family::Stirling2,
        Family::Lah,
        Family::BernoulliOrder,
        Family::MultiStirling1,
        Family::MultiBernoulli,
        Family::MultiLah,
        Family::LiCoeffs,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Stirling1Signed => "stirling1-signed",
            Family::Stirling1Unsigned => "stirling1-unsigned",
            Family::Stirling2 => "stirling2",
            Family::Lah => "lah",
            Family::BernoulliOrder => "bernoulli-order",
            Family::MultiStirling1 => "multi-stirling1",
            Family::MultiBernoulli => "multi-bernoulli",
            Family::MultiLah => "multi-lah",
            Family::LiCoeffs => "li-coeffs",
        }
    }

    pub fn needs_index(self) -> bool {
        matches!(
            self,
            Family::MultiStirling1 | Family::MultiBernoulli | Family::MultiLah | Family::LiCoeffs
        )
    }

    /// Whether the last index entry may be nonpositive.
    pub fn accepts_extended_index(self) -> bool {
        matches!(self, Family::MultiLah | Family::LiCoeffs)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub r: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberTable {
    pub family: Family,
    pub index: Vec<i64>,
    pub max_n: usize,
    pub rows: Vec<TableRow>,
}

/// Output encodings for a [`NumberTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// What to tabulate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRequest {
    pub family: Family,
    pub index: Option<MultiIndex>,
    /// Order `r` of the higher-order Bernoulli numbers.
    pub bernoulli_order: Option<u32>,
    pub max_n: usize,
}

impl FamilyRequest {
    pub fn new(family: Family, max_n: usize) -> Self {
        Self {
            family,
            index: None,
            bernoulli_order: None,
            max_n,
        }
    }

    pub fn with_index(mut self, index: MultiIndex) -> Self {
        self.index = Some(index);
        self
    }

    pub fn with_bernoulli_order(mut self, r: u32) -> Self {
        self.bernoulli_order = Some(r);
        self
    }

    /// Checks the presence and mode of the parameters the family needs.
    pub fn validate(&self) -> Result<()> {
        match (&self.index, self.family.needs_index()) {
            (None, true) => {
                return Err(Error::InvalidArgument(format!(
                    "family {} requires an index",
                    self.family
                )))
            }
            (Some(_), false) => {
                return Err(Error::InvalidArgument(format!(
                    "family {} takes no index",
                    self.family
                )))
            }
            (Some(k), true) if !self.family.accepts_extended_index() => k.require_standard()?,
            _ => {}
        }
        if self.family == Family::BernoulliOrder {
            match self.bernoulli_order {
                Some(r) if r >= 1 => {}
                _ => {
                    return Err(Error::InvalidArgument(
                        "bernoulli-order requires an order r >= 1".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Stable identifier of the request, used as the cache key.
    pub fn cache_key(&self) -> String {
        let mut key = self.family.tag().to_string();
        if let Some(k) = &self.index {
            key.push_str(&format!("_k{k}"));
        }
        if let Some(r) = self.bernoulli_order {
            key.push_str(&format!("_r{r}"));
        }
        key.push_str(&format!("_n{}", self.max_n));
        key
    }

    pub fn compute(&self, cap: OrderCap) -> Result<NumberTable> {
        self.validate()?;
        let max_n = self.max_n;
        cap.check(max_n)?;
        let triangle = |f: fn(usize, usize) -> num_bigint::BigInt| {
            (0..=max_n)
                .flat_map(|n| (0..=n).map(move |r| (n, r)))
                .map(|(n, r)| TableRow {
                    n,
                    r,
                    value: Rational::from_integer(f(n, r)),
                })
                .collect::<Vec<_>>()
        };
        let column = |r: usize, values: Vec<Rational>, from: usize| {
            values
                .into_iter()
                .enumerate()
                .skip(from)
                .map(|(n, value)| TableRow { n, r, value })
                .collect::<Vec<_>>()
        };
        let rows = match self.family {
            Family::Stirling1Signed => triangle(stirling1_signed),
            Family::Stirling1Unsigned => triangle(stirling1_unsigned),
            Family::Stirling2 => triangle(stirling2),
            Family::Lah => triangle(lah),
            Family::BernoulliOrder => {
                let r = self.bernoulli_order.expect("validated");
                column(r as usize, bernoulli_order_row(r, max_n)?, 0)
            }
            Family::MultiStirling1 => {
                let k = self.index.as_ref().expect("validated");
                let s = multi_stirling1_series::<Rational>(k, max_n, cap)?;
                column(k.depth(), s.egf_values(), k.depth())
            }
            Family::MultiBernoulli => {
                let k = self.index.as_ref().expect("validated");
                let s = multi_bernoulli_series::<Rational>(k, max_n, cap)?;
                column(k.depth(), s.egf_values(), 0)
            }
            Family::MultiLah => {
                let k = self.index.as_ref().expect("validated");
                let s = multi_lah_series::<Rational>(k, max_n, cap)?;
                column(k.depth(), s.egf_values(), k.depth())
            }
            Family::LiCoeffs => {
                let k = self.index.as_ref().expect("validated");
                column(k.depth(), li_series::<Rational>(k, max_n).into_coeffs(), 0)
            }
        };
        Ok(NumberTable {
            family: self.family,
            index: self
                .index
                .as_ref()
                .map(|k| k.entries().to_vec())
                .unwrap_or_default(),
            max_n,
            rows,
        })
    }
}

impl NumberTable {
    pub fn get(&self, n: usize, r: usize) -> Option<&Rational> {
        self.rows
            .binary_search_by(|row| (row.n, row.r).cmp(&(n, r)))
            .ok()
            .map(|i| &self.rows[i].value)
    }

    /// Rows strictly increasing in `(n, r)`.
    pub fn is_well_ordered(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| (w[0].n, w[0].r) < (w[1].n, w[1].r))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let table: NumberTable = serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("malformed table JSON: {e}")))?;
        if !table.is_well_ordered() {
            return Err(Error::InvalidArgument(
                "table rows must be strictly increasing in (n, r)".into(),
            ));
        }
        Ok(table)
    }

    fn to_delimited(&self, delimiter: u8) -> String {
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(Vec::new());
        w.write_record(["n", "r", "value"])
            .expect("in-memory write");
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                row.r.to_string(),
                format_rational(&row.value),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_delimited(b','),
            Format::Tsv => self.to_delimited(b'\t'),
        }
    }
}
