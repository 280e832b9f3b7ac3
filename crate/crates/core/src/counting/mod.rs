//! Exact counts for multi-edge trees by edges, and for d-ary trees by vertices.
//!
//! Height-restricted counts are available three independent ways: the
//! weighted-trinomial closed form, coefficient extraction from the
//! continued-fraction recurrence `T_h = (1 - z) / (1 - z - z T_{h-1})`, and
//! tallying the exhaustive generator. They must agree exactly.

mod cache;
mod export;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::TruncatedSeries;
use crate::trees::{Enumerator, TreeError};

pub use cache::{TableCache, CACHE_DIR_ENV};
pub use export::{
    a_n_bfile, a_n_csv, a_n_json, height_table_csv, height_tables_csv, parse_height_tables_csv,
    vertex_table_csv,
};

#[derive(Debug, Error)]
pub enum CountingError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cache file: {0}")]
    Malformed(String),
}

/// `C(n, k)`, zero whenever `k < 0` or `k > n` (and for negative `n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `A_0, ..., A_{n_max}`, the number of plane multi-edge trees by edge count.
///
/// `T = 1 + z T^2 / (1 - z)`, i.e. `z T^2 - (1 - z) T + (1 - z) = 0`,
/// gives `t_n = t_{n-1} + sum_{i+j=n-1} t_i t_j` for `n >= 2`,
/// with `t_0 = t_1 = 1`.
pub fn a_sequence(n_max: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let value = match n {
            0 | 1 => BigInt::one(),
            _ => {
                let m = n - 1;
                // symmetric convolution: sum_{i+j=m} t_i t_j
                let mut conv = BigInt::zero();
                for i in 0..m.div_ceil(2) {
                    conv += &t[i] * &t[m - i];
                }
                conv *= 2;
                if m % 2 == 0 {
                    conv += &t[m / 2] * &t[m / 2];
                }
                &t[n - 1] + conv
            }
        };
        t.push(value);
    }
    t
}

pub fn a_n(n: usize) -> BigInt {
    a_sequence(n).pop().expect("sequence is non-empty")
}

/// Coefficients of `(1 + 3v + v^2)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialRow {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl TrinomialRow {
    pub fn new(n: usize) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); coeffs.len() + 2];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c * 3u32;
                next[i + 2] += c;
            }
            coeffs = next;
        }
        Self { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[v^k]`, zero outside `0..=2n`.
    pub fn get(&self, k: i64) -> BigInt {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// `[v^k](1 + 3v + v^2)^n`.
pub fn trinomial_131(n: usize, k: i64) -> BigInt {
    if k < 0 || k > 2 * n as i64 {
        return BigInt::zero();
    }
    TrinomialRow::new(n).get(k)
}

/// Number of trees with `n` edges and height `> h`, given the trinomial row
/// of order `n - 1`.
fn height_gt_from_row(n: usize, h: usize, row: &TrinomialRow) -> BigInt {
    debug_assert_eq!(row.n() + 1, n);
    let mut total = BigInt::zero();
    let step = (h + 2) as i64;
    let mut j = n as i64 - (h as i64 + 1);
    while j >= 0 {
        total += row.get(j) - row.get(j - 2) * 2u32 + row.get(j - 4);
        j -= step;
    }
    total
}

/// Number of multi-edge trees with `n` edges and height strictly greater than `h`,
/// by the weighted-trinomial sum.
pub fn count_height_gt(n: usize, h: usize) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    height_gt_from_row(n, h, &TrinomialRow::new(n - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightRow {
    pub height: usize,
    pub count_gt: BigInt,
    pub count_eq: BigInt,
}

/// Height profile of all multi-edge trees of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightCountTable {
    n: usize,
    total: BigInt,
    rows: Vec<HeightRow>,
}

impl HeightCountTable {
    /// Builds the table from `count_le(h)` for `h = 0..=h_max` and the total.
    fn from_cumulative(n: usize, total: BigInt, le: Vec<BigInt>) -> Self {
        let mut rows = Vec::with_capacity(le.len());
        let mut prev = BigInt::zero();
        for (height, cum) in le.into_iter().enumerate() {
            rows.push(HeightRow {
                height,
                count_gt: &total - &cum,
                count_eq: &cum - &prev,
            });
            prev = cum;
        }
        Self { n, total, rows }
    }

    /// Closed-form route: one trinomial row, then the finite `k`-sum per height.
    pub fn by_formula(n: usize) -> Self {
        let total = a_n(n);
        let le = if n == 0 {
            vec![BigInt::one()]
        } else {
            let row = TrinomialRow::new(n - 1);
            (0..=n)
                .map(|h| &total - height_gt_from_row(n, h, &row))
                .collect()
        };
        Self::from_cumulative(n, total, le)
    }

    /// Brute-force route through the exhaustive generator.
    pub fn by_enumeration(n: usize, enumerator: &Enumerator) -> Result<Self, CountingError> {
        let mut eq = vec![0u64; n + 1];
        let total = enumerator.multi_edge(n, |t| eq[t.height()] += 1)?;
        let mut cum = 0u64;
        let le = eq
            .into_iter()
            .map(|c| {
                cum += c;
                BigInt::from(cum)
            })
            .collect();
        Ok(Self::from_cumulative(n, total, le))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn rows(&self) -> &[HeightRow] {
        &self.rows
    }

    pub fn max_height(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn count_eq(&self, h: usize) -> BigInt {
        self.rows
            .get(h)
            .map(|r| r.count_eq.clone())
            .unwrap_or_default()
    }

    pub fn count_gt(&self, h: usize) -> BigInt {
        match self.rows.get(h) {
            Some(r) => r.count_gt.clone(),
            None if h >= self.n => BigInt::zero(),
            None => panic!("height {h} not tabulated (max {})", self.max_height()),
        }
    }

    /// `E(H_n) = sum_h P(H_n > h)` as an exact fraction.
    pub fn expected_height(&self) -> BigRational {
        let numer: BigInt = self.rows.iter().map(|r| &r.count_gt).sum();
        BigRational::new(numer, self.total.clone())
    }

    /// Rebuilds a table from stored rows, checking the internal identities.
    pub(crate) fn from_rows(
        n: usize,
        total: BigInt,
        rows: Vec<HeightRow>,
    ) -> Result<Self, CountingError> {
        let mut prev_le = BigInt::zero();
        for (i, r) in rows.iter().enumerate() {
            let le = &total - &r.count_gt;
            if r.height != i || &le - &prev_le != r.count_eq {
                return Err(CountingError::Malformed(format!(
                    "row {i} of n={n} is inconsistent"
                )));
            }
            prev_le = le;
        }
        Ok(Self { n, total, rows })
    }
}

/// Series route: tables for every `n <= n_max`, rows `h = 0..=h_max`.
///
/// Runs the continued-fraction recurrence up to height `max(n_max, h_max)`;
/// since heights never exceed the edge count, the last iterate is `T` itself
/// to order `n_max` and supplies the totals.
pub fn height_tables_by_series(n_max: usize, h_max: usize) -> Vec<HeightCountTable> {
    let order = n_max;
    let one_minus_z = TruncatedSeries::one(order)
        .sub(&TruncatedSeries::z(order))
        .expect("same order");
    let top = n_max.max(h_max);
    let mut iterates = Vec::with_capacity(top + 1);
    iterates.push(TruncatedSeries::one(order));
    for h in 1..=top {
        let prev: &TruncatedSeries = &iterates[h - 1];
        let denom = one_minus_z.sub(&prev.shift()).expect("same order");
        let next = one_minus_z
            .mul(&denom.reciprocal().expect("constant term is 1"))
            .expect("same order");
        iterates.push(next);
    }
    let full = &iterates[top];
    (0..=n_max)
        .map(|n| {
            let le = iterates[..=h_max].iter().map(|t| t.coeff(n)).collect();
            HeightCountTable::from_cumulative(n, full.coeff(n), le)
        })
        .collect()
}

/// Number of multi-edge trees with `n` edges and `k` vertices:
/// `C_{k-1} * C(n-1, k-2)`, i.e. a plane tree with `k` vertices whose `k - 1`
/// links share the `n` edges as a composition.
///
/// The binomial is undefined at `(n, k) = (0, 1)`; the isolated vertex makes
/// that count 1.
pub fn count_vertices_eq(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return if k == 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if k < 2 || k > n + 1 {
        return BigInt::zero();
    }
    let k_i = k as i64;
    let numer = binomial(2 * k_i - 2, k_i - 1);
    let (catalan, rem) = numer.div_rem(&BigInt::from(k));
    assert!(rem.is_zero(), "C(2k-2, k-1) not divisible by k at k={k}");
    catalan * binomial(n as i64 - 1, k_i - 2)
}

/// Vertex-count profile of all trees of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCountTable {
    n: usize,
    rows: Vec<(usize, BigInt)>,
}

impl VertexCountTable {
    pub fn new(n: usize) -> Self {
        let rows = (1..=n + 1).map(|k| (k, count_vertices_eq(n, k))).collect();
        Self { n, rows }
    }

    pub fn by_enumeration(n: usize, enumerator: &Enumerator) -> Result<Self, CountingError> {
        let mut counts = vec![0u64; n + 2];
        enumerator.multi_edge(n, |t| counts[t.stats().vertices] += 1)?;
        let rows = (1..=n + 1).map(|k| (k, BigInt::from(counts[k]))).collect();
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(k, count)` for `k = 1..=n+1`, zeros included.
    pub fn rows(&self) -> &[(usize, BigInt)] {
        &self.rows
    }

    pub fn total(&self) -> BigInt {
        self.rows.iter().map(|(_, c)| c).sum()
    }

    pub fn count(&self, k: usize) -> BigInt {
        self.rows
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Exact mean and variance of the vertex count.
    pub fn moments(&self) -> (BigRational, BigRational) {
        let total = self.total();
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for (k, c) in &self.rows {
            let kc = c * *k;
            s2 += &kc * *k;
            s1 += kc;
        }
        let mean = BigRational::new(s1, total.clone());
        let second = BigRational::new(s2, total);
        let var = second - &mean * &mean;
        (mean, var)
    }
}

/// `(1/n) C(nd, n-1)`: d-ary trees (and d-ary multi-edge trees) with `n` vertices.
pub fn fuss_catalan(d: u32, n: usize) -> Result<BigInt, CountingError> {
    if d == 0 || n == 0 {
        return Err(CountingError::Domain(format!(
            "fuss_catalan needs d >= 1 and n >= 1 (got d={d}, n={n})"
        )));
    }
    let c = binomial(n as i64 * i64::from(d), n as i64 - 1);
    let (q, r) = c.div_rem(&BigInt::from(n));
    assert!(r.is_zero(), "C(nd, n-1) not divisible by n at d={d}, n={n}");
    Ok(q)
}

pub fn expected_height_exact(n: usize) -> BigRational {
    HeightCountTable::by_formula(n).expected_height()
}

pub fn vertex_moments_exact(n: usize) -> (BigRational, BigRational) {
    VertexCountTable::new(n).moments()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(big(p), big(q))
    }

    #[test]
    fn listed_sequence() {
        let want = [1, 1, 3, 10, 36, 137, 543, 2219, 9285, 39587];
        let got = a_sequence(9);
        assert_eq!(got, want.iter().map(|&v| big(v)).collect::<Vec<_>>());
        assert_eq!(a_n(0), big(1));
        assert_eq!(a_n(3), big(10));
        assert_eq!(a_n(9), big(39587));
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn trinomial_values() {
        assert_eq!(
            (0..3).map(|k| trinomial_131(1, k)).collect::<Vec<_>>(),
            [big(1), big(3), big(1)]
        );
        assert_eq!(trinomial_131(2, 2), big(11));
        assert_eq!(trinomial_131(5, -1), big(0));
        assert_eq!(trinomial_131(5, 11), big(0));
    }

    #[test]
    fn trinomial_matches_multinomial_sum() {
        // sum over a + b + c = n with b + 2c = k of n!/(a! b! c!) 3^b
        for n in 0..12usize {
            let row = TrinomialRow::new(n);
            for k in 0..=2 * n {
                let mut want = BigInt::zero();
                for c in 0..=k / 2 {
                    let b = k - 2 * c;
                    if b + c > n {
                        continue;
                    }
                    let multinom =
                        binomial(n as i64, c as i64) * binomial((n - c) as i64, b as i64);
                    want += multinom * BigInt::from(3).pow(b as u32);
                }
                assert_eq!(row.get(k as i64), want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn trinomial_is_palindromic() {
        for n in 0..30usize {
            let row = TrinomialRow::new(n);
            for k in 0..=2 * n as i64 {
                assert_eq!(row.get(k), row.get(2 * n as i64 - k));
            }
        }
    }

    #[test]
    fn height_gt_examples() {
        assert_eq!(count_height_gt(1, 0), big(1));
        assert_eq!(count_height_gt(2, 1), big(1));
        assert_eq!(count_height_gt(3, 1), big(6));
        assert_eq!(count_height_gt(0, 0), big(0));
    }

    #[test]
    fn height_gt_properties() {
        for n in 1..40 {
            let an = a_n(n);
            assert_eq!(count_height_gt(n, 0), an);
            let row = TrinomialRow::new(n - 1);
            let mut prev = an;
            for h in 0..=n + 2 {
                let g = height_gt_from_row(n, h, &row);
                assert!(g <= prev, "not nonincreasing at n={n} h={h}");
                if h >= n {
                    assert!(g.is_zero());
                }
                prev = g;
            }
        }
    }

    #[test]
    fn series_table_examples() {
        let tables = height_tables_by_series(6, 6);
        // [z^0] T_0 = 1, [z^n] T_0 = 0 otherwise
        assert_eq!(tables[0].count_eq(0), big(1));
        for t in &tables[1..] {
            assert_eq!(t.count_eq(0), big(0));
        }
        // [z^2] T_1 = 2
        assert_eq!(&tables[2].count_eq(0) + tables[2].count_eq(1), big(2));
        for (n, t) in tables.iter().enumerate() {
            assert_eq!(t.total(), &a_n(n));
        }
    }

    #[test]
    fn formula_and_series_tables_agree() {
        let series = height_tables_by_series(25, 25);
        for (n, s) in series.iter().enumerate() {
            let f = HeightCountTable::by_formula(n);
            for h in 0..=n {
                assert_eq!(s.count_gt(h), f.count_gt(h), "n={n} h={h}");
                assert_eq!(s.count_eq(h), f.count_eq(h), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn table_invariants() {
        for n in 0..20 {
            let t = HeightCountTable::by_formula(n);
            let sum: BigInt = t.rows().iter().map(|r| &r.count_eq).sum();
            assert_eq!(&sum, t.total());
            for h in 0..=n {
                let tail: BigInt = t.rows()[h + 1..].iter().map(|r| &r.count_eq).sum();
                assert_eq!(t.count_gt(h), tail);
            }
            if n >= 1 {
                assert!(t.count_gt(n).is_zero());
                assert!(t.count_gt(n + 5).is_zero());
            }
        }
    }

    #[test]
    fn n3_height_profile() {
        let t = HeightCountTable::by_formula(3);
        let eq: Vec<_> = (0..=3).map(|h| t.count_eq(h)).collect();
        assert_eq!(eq, [big(0), big(4), big(5), big(1)]);
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(count_vertices_eq(4, 4), big(15));
        let row: Vec<_> = (2..=5).map(|k| count_vertices_eq(4, k)).collect();
        assert_eq!(row, [big(1), big(6), big(15), big(14)]);
        assert_eq!(VertexCountTable::new(4).total(), big(36));
        assert_eq!(count_vertices_eq(1, 2), big(1));
        assert_eq!(count_vertices_eq(0, 1), big(1));
        assert_eq!(count_vertices_eq(0, 2), big(0));
        assert_eq!(count_vertices_eq(5, 1), big(0));
        assert_eq!(count_vertices_eq(5, 7), big(0));
    }

    #[test]
    fn vertex_sum_identity() {
        let a = a_sequence(200);
        for (n, an) in a.iter().enumerate() {
            assert_eq!(&VertexCountTable::new(n).total(), an, "n={n}");
        }
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(2, 3).unwrap(), big(5));
        assert_eq!(fuss_catalan(5, 2).unwrap(), big(5));
        for n in 1..10 {
            assert_eq!(fuss_catalan(1, n).unwrap(), big(1));
        }
        assert!(fuss_catalan(0, 3).is_err());
        assert!(fuss_catalan(2, 0).is_err());
    }

    #[test]
    fn expected_height_examples() {
        assert_eq!(expected_height_exact(0), ratio(0, 1));
        assert_eq!(expected_height_exact(1), ratio(1, 1));
        assert_eq!(expected_height_exact(2), ratio(4, 3));
    }

    #[test]
    fn vertex_moment_examples() {
        assert_eq!(vertex_moments_exact(0), (ratio(1, 1), ratio(0, 1)));
        assert_eq!(vertex_moments_exact(1), (ratio(2, 1), ratio(0, 1)));
        assert_eq!(vertex_moments_exact(4).0, ratio(25, 6));
    }
}
