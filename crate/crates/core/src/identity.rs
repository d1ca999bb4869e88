//! Executable checks of the relations between the multi-number families.
//!
//! Each verifier recomputes both sides through separate code paths (the series
//! pipeline on one side, closed finite sums over classical tables on the other)
//! and records every exact value in an [`IdentityReport`].

use num_traits::Zero;

use crate::classical::{self, bernoulli_order_row, lah, stirling1_unsigned, stirling2};
use crate::error::{Error, Result};
use crate::multi::{multi_bernoulli, multi_lah_table, multi_stirling1_table, OrderCap};
use crate::multilog::{self, li_series, MultiIndex, Recurrence};
use crate::numeric::{binomial, factorial, int, sign_pow};
use crate::report::{IdentityCase, IdentityReport};
use crate::scalar::Scalar;
use crate::series::Builtin;
use crate::{Rational, Series};

fn big(n: num_bigint::BigInt) -> Rational {
    Rational::from_integer(n)
}

fn binom(n: usize, k: usize) -> Rational {
    big(binomial(n as u64, k as i64))
}

fn fact(n: usize) -> Rational {
    big(factorial(n as u64))
}

/// Every index of depth `1..=max_depth` with entries in `1..=max_entry`, in
/// lexicographic order by depth then entries.
pub fn standard_index_grid(max_depth: usize, max_entry: i64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_depth {
        level = level
            .iter()
            .flat_map(|prefix| {
                (1..=max_entry).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
        out.extend(
            level
                .iter()
                .map(|v| MultiIndex::standard(v.clone()).expect("positive")),
        );
    }
    out
}

/// `S1^{(1,...,1)}(n, r) = [n brack r]` for `1 <= r <= r_max`, `r <= n <= n_max`.
pub fn verify_lemma21(r_max: usize, n_max: usize) -> Result<IdentityReport> {
    if r_max < 1 || n_max < r_max {
        return Err(Error::InvalidArgument(
            "requires 1 <= r_max <= n_max".into(),
        ));
    }
    let mut report = IdentityReport::new("lemma2.1")
        .param("r_max", r_max)
        .param("n_max", n_max);
    for r in 1..=r_max {
        let table = multi_stirling1_table(&MultiIndex::all_ones(r), n_max)?;
        for (n, value) in table.into_iter().enumerate().skip(r) {
            report.push(IdentityCase::new(
                format!("r={r},n={n}"),
                value,
                big(stirling1_unsigned(n, r)),
            ));
        }
    }
    Ok(report.finish())
}

/// `L^{(1,...,1)}(n, r) = L(n, r)` for `1 <= r <= r_max`, `0 <= n <= n_max`.
pub fn verify_eq19(r_max: usize, n_max: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("eq19")
        .param("r_max", r_max)
        .param("n_max", n_max);
    for r in 1..=r_max {
        let table = multi_lah_table(&MultiIndex::all_ones(r), n_max)?;
        for (n, value) in table.into_iter().enumerate() {
            report.push(IdentityCase::new(
                format!("r={r},n={n}"),
                value,
                big(lah(n, r)),
            ));
        }
    }
    Ok(report.finish())
}

/// `B_m^{(1,...,1)} = (-1)^m B_m^{(r)} / r!` for `1 <= r <= r_max`, `m <= m_max`.
pub fn verify_all_ones_bernoulli(r_max: usize, m_max: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("bernoulli-all-ones")
        .param("r_max", r_max)
        .param("m_max", m_max);
    for r in 1..=r_max {
        let multi = multi_bernoulli(&MultiIndex::all_ones(r), m_max)?;
        let classical = bernoulli_order_row(r as u32, m_max)?;
        let r_fact = fact(r);
        for (m, (lhs, b)) in multi.into_iter().zip(classical).enumerate() {
            let rhs = sign_pow(m as i64) * b / &r_fact;
            report.push(IdentityCase::new(format!("r={r},m={m}"), lhs, rhs));
        }
    }
    Ok(report.finish())
}

/// All-ones reductions of the three families plus the closed form of
/// `Li_{1,...,1}`.
pub fn verify_reductions(r_max: usize, n_max: usize) -> Result<IdentityReport> {
    if r_max < 1 {
        return Err(Error::InvalidArgument("requires r_max >= 1".into()));
    }
    let mut report = IdentityReport::new("reductions")
        .param("r_max", r_max)
        .param("n_max", n_max);
    report.absorb(verify_lemma21(r_max, n_max.max(r_max))?);
    report.absorb(verify_eq19(r_max, n_max)?);
    report.absorb(verify_all_ones_bernoulli(r_max, n_max)?);
    report.absorb(multilog::check_all_ones_closed_form(r_max, n_max));
    Ok(report.finish())
}

/// Multi-Bernoulli numbers from the series pipeline against
///
/// ```text
/// B_n^{(k)} = sum_{l=0}^{n} sum_{m=r}^{l+r}
///     C(n,l) B_{n-l}^{(r)} (-1)^{n-r-m} / (r! C(l+r,r)) * S2(l+r,m) S1^{(k)}(m,r)
/// ```
pub fn verify_thm22(k: &MultiIndex, n_max: usize) -> Result<IdentityReport> {
    k.require_standard()?;
    let r = k.depth();
    let lhs = multi_bernoulli(k, n_max)?;
    let s1 = multi_stirling1_table(k, n_max + r)?;
    let higher = bernoulli_order_row(r as u32, n_max)?;
    let r_fact = fact(r);
    let mut report = IdentityReport::new("thm2.2")
        .param("index", k)
        .param("n_max", n_max);
    for (n, value) in lhs.into_iter().enumerate() {
        let mut rhs = Rational::zero();
        for l in 0..=n {
            let outer = binom(n, l) * &higher[n - l] / (&r_fact * binom(l + r, r));
            let inner: Rational = (r..=l + r)
                .map(|m| {
                    sign_pow(n as i64 - r as i64 - m as i64) * big(stirling2(l + r, m)) * &s1[m]
                })
                .sum();
            rhs += outer * inner;
        }
        report.push(IdentityCase::new(format!("n={n}"), value, rhs));
    }
    Ok(report.finish())
}

/// `sum_{m>=1} m^s z^m` known to `order`.
fn power_weighted_geometric(s: i64, order: usize) -> Series {
    Series::from_fn(order, |m| {
        if m == 0 {
            Rational::zero()
        } else {
            Rational::int_pow(m as i64, s)
        }
    })
}

/// `L^{(k_1,...,k_{r-1},-k_r)}(n, r)` for `n <= n_max`, by splitting off the
/// last chain variable: with `m_r = m_{r-1} + m`,
///
/// ```text
/// Li_{...,k_{r-1},-k_r}(z)
///     = sum_j C(k_r, j) Li_{...,k_{r-1}-j}(z) * sum_{m>=1} m^{k_r-j} z^m
/// ```
///
/// and then substituting `z = 1 - e^{-t}` and dividing by `(1-t)^r`.
pub fn negative_last_lah_by_expansion(k: &MultiIndex, n_max: usize) -> Result<Vec<Rational>> {
    let prefix = k
        .prefix()
        .ok_or_else(|| Error::InvalidArgument("theorem requires r >= 2".into()))?;
    let kr = k.last();
    let kp = prefix.last();
    let mut li = Series::zero(n_max);
    for j in 0..=kr {
        let lower: Series = li_series(&prefix.with_last(kp - j), n_max);
        let tail = power_weighted_geometric(kr - j, n_max);
        let term = (&lower * &tail).scale(&binom(kr as usize, j as usize));
        li = &li + &term;
    }
    let z = Builtin::OneMinusExpNeg.series::<Rational>(n_max);
    let composed = Series::compose(&li, &z)?;
    let one_minus_t = &Series::one(n_max) - &Series::monomial(1, n_max);
    Ok(composed
        .div_series(&one_minus_t.pow(k.depth() as u32))?
        .egf_values())
}

/// Recurrence for multi-Lah numbers with a negative last entry.
///
/// `k` lists positive entries `(k_1, ..., k_r)` and stands for the index
/// `(k_1, ..., k_{r-1}, -k_r)`. Each case compares the series-pipeline value
/// with
///
/// ```text
/// sum_{p=r}^{n} sum_{l=1}^{p} sum_{m=1}^{p} sum_{j=0}^{k_r}
///     (-1)^{m+l} m! m^{k_r-j} C(p,l) C(k_r,j) S2(l,m)
///     L^{(k_1,...,k_{r-2},k_{r-1}-j)}(p-l, r-1) n!/p!
/// ```
///
/// where the inner multi-Lah numbers vanish below their depth. That comparison
/// is reported without being asserted. Each case also carries the left side
/// recomputed by [`negative_last_lah_by_expansion`]; that agreement is asserted.
pub fn verify_thm23(k: &MultiIndex, n_max: usize) -> Result<IdentityReport> {
    k.require_standard()?;
    let r = k.depth();
    if r < 2 {
        return Err(Error::InvalidArgument("theorem requires r >= 2".into()));
    }
    if n_max < r {
        return Err(Error::InvalidArgument(format!("requires n_max >= r = {r}")));
    }
    let kr = k.last();
    let target = k.with_last(-kr);
    let lhs = multi_lah_table(&target, n_max)?;
    let expanded = negative_last_lah_by_expansion(k, n_max)?;

    let prefix = k.prefix().expect("r >= 2");
    let kp = prefix.last();
    let lower: Vec<Vec<Rational>> = (0..=kr)
        .map(|j| multi_lah_table(&prefix.with_last(kp - j), n_max))
        .collect::<Result<_>>()?;

    let mut report = IdentityReport::new("thm2.3")
        .param("index", &target)
        .param("input", k)
        .param("n_max", n_max)
        .informational();
    for n in r..=n_max {
        let mut rhs = Rational::zero();
        for p in r..=n {
            let mut inner = Rational::zero();
            for l in 1..=p {
                for m in 1..=p {
                    let s2 = stirling2(l, m);
                    if s2.is_zero() {
                        continue;
                    }
                    let base = sign_pow((m + l) as i64) * fact(m) * binom(p, l) * big(s2);
                    for j in 0..=kr {
                        let lower_lah = &lower[j as usize][p - l];
                        if lower_lah.is_zero() {
                            continue;
                        }
                        inner += &base
                            * Rational::int_pow(m as i64, kr - j)
                            * binom(kr as usize, j as usize)
                            * lower_lah;
                    }
                }
            }
            rhs += inner * fact(n) / fact(p);
        }
        report.push(
            IdentityCase::new(format!("n={n}"), lhs[n].clone(), rhs)
                .with_cross_check(expanded[n].clone()),
        );
    }
    Ok(report.finish())
}

/// `S1^{(k)}(n+r, r) = r! C(n+r, n) sum_{m=0}^{n} B_m^{(k)} [n brack m]`.
pub fn verify_thm24(k: &MultiIndex, n_max: usize) -> Result<IdentityReport> {
    k.require_standard()?;
    let r = k.depth();
    let s1 = multi_stirling1_table(k, n_max + r)?;
    let b = multi_bernoulli(k, n_max)?;
    let r_fact = fact(r);
    let mut report = IdentityReport::new("thm2.4")
        .param("index", k)
        .param("n_max", n_max);
    for n in 0..=n_max {
        let sum: Rational = (0..=n).map(|m| &b[m] * big(stirling1_unsigned(n, m))).sum();
        let rhs = &r_fact * binom(n + r, n) * sum;
        report.push(IdentityCase::new(format!("n={n}"), s1[n + r].clone(), rhs));
    }
    Ok(report.finish())
}

/// ```text
/// L^{(k)}(n, r) = sum_{l=r}^{n} sum_{m=r}^{l}
///     S1^{(k)}(m,r) (-1)^{m-l} S2(l,m) C(r+n-l-1, n-l) n!/l!
/// ```
pub fn verify_thm25(k: &MultiIndex, n_max: usize) -> Result<IdentityReport> {
    k.require_standard()?;
    let r = k.depth();
    if n_max < r {
        return Err(Error::InvalidArgument(format!("requires n_max >= r = {r}")));
    }
    let lhs = multi_lah_table(k, n_max)?;
    let s1 = multi_stirling1_table(k, n_max)?;
    let mut report = IdentityReport::new("thm2.5")
        .param("index", k)
        .param("n_max", n_max);
    for (n, value) in lhs.into_iter().enumerate().skip(r) {
        let mut rhs = Rational::zero();
        for l in r..=n {
            let weight = binom(r + n - l - 1, n - l) * fact(n) / fact(l);
            let inner: Rational = (r..=l)
                .map(|m| &s1[m] * sign_pow(m as i64 - l as i64) * big(stirling2(l, m)))
                .sum();
            rhs += weight * inner;
        }
        report.push(IdentityCase::new(format!("n={n}"), value, rhs));
    }
    Ok(report.finish())
}

/// Derivative recurrences for every index of the grid to which one applies.
pub fn verify_derivative_grid(
    max_depth: usize,
    max_entry: i64,
    order: usize,
    branch: Recurrence,
) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(branch.id())
        .param("max_depth", max_depth)
        .param("max_entry", max_entry)
        .param("order", order);
    for k in standard_index_grid(max_depth, max_entry) {
        if Recurrence::for_index(&k) == Some(branch) {
            let sub = multilog::check_derivative_recurrence(&k, order, branch)?;
            for mut case in sub.cases {
                case.label = format!("({k}) {}", case.label);
                report.push(case);
            }
        }
    }
    Ok(report.finish())
}

/// Grid sizes used by [`verify_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub gf_n_max: usize,
    pub connection_n_max: usize,
    pub reduction_r_max: usize,
    pub reduction_n_max: usize,
    pub theorem_depth: usize,
    pub theorem_entry: i64,
    pub thm22_n_max: usize,
    pub thm24_n_max: usize,
    pub thm25_n_max: usize,
    pub thm23_entry: i64,
    pub thm23_n_max: usize,
    pub recurrence_order: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            gf_n_max: 12,
            connection_n_max: 8,
            reduction_r_max: 4,
            reduction_n_max: 14,
            theorem_depth: 3,
            theorem_entry: 3,
            thm22_n_max: 10,
            thm24_n_max: 10,
            thm25_n_max: 12,
            thm23_entry: 2,
            thm23_n_max: 8,
            recurrence_order: 20,
        }
    }
}

/// Thm 2.3 inputs: depth 2 and 3, entries `1..=max_entry`.
pub fn thm23_grid(max_entry: i64) -> Vec<MultiIndex> {
    standard_index_grid(3, max_entry)
        .into_iter()
        .filter(|k| k.depth() >= 2)
        .collect()
}

/// Runs every verifier over `grid`, in a fixed order.
pub fn verify_all(grid: &Grid) -> Result<Vec<IdentityReport>> {
    let points: Vec<Rational> = (0..=grid.connection_n_max as i64).map(int).collect();
    let mut reports = vec![
        classical::check_eq1(grid.connection_n_max, &points),
        classical::check_eq1_inverse(grid.connection_n_max, &points),
        classical::check_eq2(grid.gf_n_max),
        classical::check_eq4(grid.connection_n_max, &points),
        classical::check_eq5(grid.connection_n_max, &points),
        classical::check_eq6(grid.gf_n_max),
        classical::check_eq7(grid.gf_n_max),
    ];
    for branch in [Recurrence::LowerLast, Recurrence::DropLast] {
        reports.push(verify_derivative_grid(
            grid.theorem_depth,
            grid.theorem_entry,
            grid.recurrence_order,
            branch,
        )?);
    }
    reports.push(multilog::check_all_ones_closed_form(
        grid.reduction_r_max,
        grid.reduction_n_max,
    ));
    reports.push(verify_eq19(grid.reduction_r_max, grid.reduction_n_max)?);
    reports.push(verify_lemma21(grid.reduction_r_max, grid.reduction_n_max)?);
    reports.push(verify_all_ones_bernoulli(
        grid.reduction_r_max,
        grid.reduction_n_max,
    )?);
    let indices = standard_index_grid(grid.theorem_depth, grid.theorem_entry);
    for k in &indices {
        reports.push(verify_thm22(k, grid.thm22_n_max)?);
    }
    for k in thm23_grid(grid.thm23_entry) {
        reports.push(verify_thm23(&k, grid.thm23_n_max)?);
    }
    for k in &indices {
        reports.push(verify_thm24(k, grid.thm24_n_max)?);
    }
    for k in &indices {
        reports.push(verify_thm25(k, grid.thm25_n_max)?);
    }
    Ok(reports)
}

/// Order cap needed by [`verify_all`] for `grid`.
pub fn required_order(grid: &Grid) -> usize {
    let theorem = (grid.thm22_n_max + grid.theorem_depth)
        .max(grid.thm24_n_max + grid.theorem_depth)
        .max(grid.thm25_n_max);
    theorem
        .max(grid.reduction_n_max + grid.reduction_r_max)
        .max(grid.recurrence_order)
        .max(grid.gf_n_max)
}

/// Fails with [`Error::OrderCapExceeded`] when `grid` needs more than `cap`.
pub fn check_grid_cap(grid: &Grid, cap: OrderCap) -> Result<()> {
    cap.check(required_order(grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn index_grid_enumeration() {
        let grid = standard_index_grid(3, 3);
        assert_eq!(grid.len(), 3 + 9 + 27);
        assert_eq!(grid[0], idx("1"));
        assert_eq!(grid[3], idx("1,1"));
        assert_eq!(grid.last().unwrap(), &idx("3,3,3"));
        assert_eq!(thm23_grid(2).len(), 4 + 8);
    }

    #[test]
    fn lemma21() {
        let report = verify_lemma21(4, 12).unwrap();
        assert!(report.all_equal);
        let first = &report.cases[0];
        assert_eq!((first.label.as_str(), &first.lhs), ("r=1,n=1", &int(1)));
        let c = report.cases.iter().find(|c| c.label == "r=2,n=4").unwrap();
        assert_eq!((&c.lhs, &c.rhs), (&int(11), &int(11)));
        assert!(verify_lemma21(0, 3).is_err());
        assert!(verify_lemma21(4, 3).is_err());
    }

    #[test]
    fn thm22() {
        let report = verify_thm22(&idx("2"), 10).unwrap();
        assert!(report.all_equal);
        assert_eq!(report.cases[1].lhs, rational(1, 4).unwrap());
        let report = verify_thm22(&idx("1,2"), 0).unwrap();
        assert_eq!(report.cases[0].lhs, rational(1, 4).unwrap());
        assert_eq!(report.cases[0].rhs, rational(1, 4).unwrap());
        assert!(verify_thm22(&idx("1,1,1"), 8).unwrap().all_equal);
        assert!(verify_thm22(&idx("1,-1"), 3).is_err());
    }

    #[test]
    fn thm23_routes_and_case_count() {
        let report = verify_thm23(&idx("1,1"), 6).unwrap();
        assert_eq!(report.params["index"], "1,-1");
        assert_eq!(report.cases.len(), 6 - 2 + 1);
        assert!(report.cross_checks_agree());
        assert!(report.passed());
        assert!(!report.rhs_asserted);
        let n2 = &report.cases[0];
        assert_eq!(n2.cross_check.as_ref().unwrap().value, n2.lhs);

        assert!(verify_thm23(&idx("2"), 5).is_err());
        assert!(verify_thm23(&idx("1,1"), 1).is_err());
    }

    #[test]
    fn thm24() {
        let report = verify_thm24(&idx("2"), 2).unwrap();
        assert!(report.all_equal);
        assert_eq!(report.cases[0].lhs, int(1));
        assert_eq!(report.cases[2].lhs, rational(2, 3).unwrap());
        assert!(verify_thm24(&idx("1,2"), 8).unwrap().all_equal);
    }

    #[test]
    fn thm25() {
        let k = idx("2,3");
        let report = verify_thm25(&k, 4).unwrap();
        assert!(report.all_equal);
        let leading = fact(2) * k.minimal_chain_weight::<Rational>();
        assert_eq!(report.cases[0].lhs, leading);
        assert_eq!(report.cases[0].rhs, leading);

        let report = verify_thm25(&idx("1,1"), 12).unwrap();
        assert!(report.all_equal);
        for (case, n) in report.cases.iter().zip(2..) {
            assert_eq!(case.lhs, big(lah(n, 2)));
        }
        assert!(verify_thm25(&idx("1,2"), 3).unwrap().all_equal);
        assert!(verify_thm25(&idx("1,2"), 1).is_err());
    }

    #[test]
    fn reductions() {
        let report = verify_reductions(4, 12).unwrap();
        assert!(report.all_equal);
        let r1: Vec<_> = report
            .cases
            .iter()
            .filter(|c| c.label.starts_with("eq19: r=1,"))
            .collect();
        for (n, case) in r1.iter().enumerate() {
            let expected = if n == 0 { int(0) } else { fact(n) };
            assert_eq!(case.rhs, expected);
        }
        let eq13 = report
            .cases
            .iter()
            .find(|c| c.label == "eq13: r=2,t^2")
            .unwrap();
        assert_eq!(eq13.lhs, rational(1, 2).unwrap());
    }

    #[test]
    fn cap_bookkeeping() {
        let grid = Grid::default();
        assert_eq!(required_order(&grid), 20);
        assert!(check_grid_cap(&grid, OrderCap::new(19).unwrap()).is_err());
        assert!(check_grid_cap(&grid, OrderCap::default()).is_ok());
    }

    #[test]
    fn derivative_grid_skips_inapplicable_indices() {
        let report = verify_derivative_grid(1, 3, 6, Recurrence::LowerLast).unwrap();
        assert_eq!(report.cases.len(), 2 * 6);
        assert!(report.all_equal);
        let report = verify_derivative_grid(1, 3, 6, Recurrence::DropLast).unwrap();
        assert!(report.cases.is_empty());
    }
}
