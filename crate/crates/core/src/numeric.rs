//! Conversions from exact values to floats, and a chi-square goodness-of-fit test.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Nearest double to `num / den`, for operands far beyond `f64` range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let (num, den) = (r.numer(), r.denom());
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let num = num.abs();
    // keep ~66 significant bits in the integer quotient
    let shift = 66 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        (num >> (-shift) as usize) / den
    };
    // two steps so results in the subnormal range do not flush to zero
    let half = -shift / 2;
    sign * q.to_f64().expect("66-bit quotient fits")
        * 2f64.powi(half as i32)
        * 2f64.powi((-shift - half) as i32)
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().ln();
    }
    let drop = bits - 64;
    let top = (x >> drop as usize).to_f64().unwrap();
    top.ln() + drop as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Number of bins after pooling sparse ones.
    pub bins: usize,
}

impl ChiSquareTest {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value > significance
    }
}

/// Pearson's test of `observed` counts against category probabilities.
///
/// Adjacent categories are pooled until each pooled bin expects at least
/// five observations.
pub fn chi_square_gof(observed: &[u64], probabilities: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), probabilities.len());
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probabilities) {
        acc.0 += o as f64;
        acc.1 += p * total;
        if acc.1 >= 5.0 {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }
    let statistic: f64 = bins
        .iter()
        .map(|&(o, e)| {
            if e > 0.0 {
                (o - e).powi(2) / e
            } else if o > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .sum();
    let dof = bins.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else if statistic.is_finite() {
        1.0 - ChiSquared::new(dof as f64).expect("dof > 0").cdf(statistic)
    } else {
        0.0
    };
    ChiSquareTest {
        statistic,
        degrees_of_freedom: dof,
        p_value,
        bins: bins.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_conversion() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(ratio_to_f64(&r), 1.0 / 3.0);
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(&big * 7, &big * 2);
        assert_eq!(ratio_to_f64(&r), 3.5);
        let r = BigRational::new(-BigInt::from(5), BigInt::from(10).pow(320));
        assert!((ratio_to_f64(&r) / -5e-320 - 1.0).abs() < 1e-3);
        assert_eq!(ratio_to_f64(&BigRational::zero()), 0.0);
    }

    #[test]
    fn big_logs() {
        assert!((ln_big(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
        let x = BigInt::from(5).pow(1000);
        assert!((ln_big(&x) / (1000.0 * 5f64.ln()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chi_square_detects_bias() {
        let fair = chi_square_gof(&[2510, 2490, 2500, 2500], &[0.25; 4]);
        assert!(fair.passes(0.001));
        assert_eq!(fair.degrees_of_freedom, 3);
        let biased = chi_square_gof(&[3000, 2000, 2500, 2500], &[0.25; 4]);
        assert!(!biased.passes(0.001));
    }

    #[test]
    fn sparse_bins_are_pooled() {
        let t = chi_square_gof(&[50, 48, 1, 1, 0], &[0.5, 0.48, 0.01, 0.005, 0.005]);
        assert_eq!(t.bins, 2);
    }
}
