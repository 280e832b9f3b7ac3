//! Floating-point evaluators for the asymptotic laws, and the harness that
//! confronts them with exact counts.

mod conformal;
mod validate;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::counting::binomial;
use crate::numeric::{ln_big, ratio_to_f64};

pub use conformal::{maclaurin_coefficients, upsilon, zeta, ConformalPoint};
pub use validate::{
    dary_height_profile, validate, Claim, ClaimReport, DaryHeightProfile, ValidateError,
    ValidationReport, Verdict, DEFAULT_GRID_A_N, DEFAULT_GRID_EXPECTED_HEIGHT,
    DEFAULT_GRID_VERTEX_MOMENTS, EXPECTED_HEIGHT_SLOPE_TOLERANCE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("argument outside domain: {0}")]
    OutsideDomain(String),
}

/// `(2/sqrt 5) sqrt(pi n) - 3/2`.
pub fn expected_height_asym(n: usize) -> f64 {
    2.0 / 5f64.sqrt() * (PI * n as f64).sqrt() - 1.5
}

/// Which of the two Poisson-dual expressions to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GForm {
    /// `sum_{m>=1} (2 a^2 m^2 - 3) m^2 exp(-a^2 m^2)`
    Primal,
    /// `pi^{5/2} / a^5 sum_{m>=1} (2 (pi/a)^2 m^2 - 3) m^2 exp(-(pi/a)^2 m^2)`
    Dual,
    /// Whichever decays faster: dual below `a = sqrt(pi)`, primal above.
    Auto,
}

/// `sum_{m>=1} (2 s^2 m^2 - 3) m^2 exp(-s^2 m^2)`, stopped at the first term
/// past the peak whose magnitude is below `1e-16` of the absolute sum so far.
fn theta_sum(s: f64) -> f64 {
    let s2 = s * s;
    let mut sum = 0.0;
    let mut scale = 0.0;
    let mut m = 1u64;
    loop {
        let mf = m as f64;
        let x = s2 * mf * mf;
        let term = (2.0 * x - 3.0) * mf * mf * (-x).exp();
        sum += term;
        scale += term.abs();
        // past the sign change at x = 3/2 and the peak of m^4 e^{-x}
        if x > 2.0 && term.abs() <= 1e-16 * scale {
            break;
        }
        m += 1;
    }
    sum
}

/// The height density kernel `G(alpha)`.
pub fn g_alpha(alpha: f64, form: GForm) -> Result<f64, AsymptoticsError> {
    if alpha.is_nan() || alpha <= 0.0 || alpha.is_infinite() {
        return Err(AsymptoticsError::OutsideDomain(format!("G({alpha})")));
    }
    let form = match form {
        GForm::Auto if alpha * alpha < PI => GForm::Dual,
        GForm::Auto => GForm::Primal,
        f => f,
    };
    Ok(match form {
        GForm::Primal => theta_sum(alpha),
        GForm::Dual => PI.powf(2.5) / alpha.powi(5) * theta_sum(PI / alpha),
        GForm::Auto => unreachable!(),
    })
}

/// `(5h/n) G(sqrt(5) h / (2 sqrt n))`, the local-limit approximation of
/// `P(H_n = h)` for multi-edge trees with `n` edges. Zero at `h = 0`, its limit.
pub fn llt_density_multi(n: usize, h: usize) -> f64 {
    if h == 0 {
        return 0.0;
    }
    let n = n as f64;
    let h = h as f64;
    let alpha = 5f64.sqrt() * h / (2.0 * n.sqrt());
    5.0 * h / n * g_alpha(alpha, GForm::Auto).expect("alpha > 0")
}

fn dary_c(d: u32) -> f64 {
    (2.0 * (d as f64 - 1.0) / d as f64).sqrt()
}

/// Height density of d-ary trees with `n` vertices:
/// `2c/(beta sqrt n) sum_m m^2 (2 (m/beta)^2 - 3) e^{-(m/beta)^2}` with
/// `c = sqrt(2(d-1)/d)` and `beta = 2 sqrt(n) / (c h)`.
pub fn llt_density_dary(d: u32, n: usize, h: usize) -> Result<f64, AsymptoticsError> {
    if d < 2 || n == 0 {
        return Err(AsymptoticsError::OutsideDomain(format!(
            "d-ary density d={d} n={n}"
        )));
    }
    if h == 0 {
        return Ok(0.0);
    }
    let c = dary_c(d);
    let sqrt_n = (n as f64).sqrt();
    let inv_beta = c * h as f64 / (2.0 * sqrt_n);
    Ok(2.0 * c * inv_beta / sqrt_n * g_alpha(inv_beta, GForm::Auto)?)
}

/// `sqrt(2 pi d n / (d - 1))`.
pub fn avg_height_dary(d: u32, n: usize) -> Result<f64, AsymptoticsError> {
    if d < 2 {
        return Err(AsymptoticsError::OutsideDomain(format!(
            "average height needs d >= 2, got {d}"
        )));
    }
    let d = d as f64;
    Ok((2.0 * PI * d * n as f64 / (d - 1.0)).sqrt())
}

/// Limiting proportion of vertices with exactly `r` children in d-ary trees:
/// `C(d, r) (d-1)^{d-r} / d^d`, evaluated exactly and rounded once.
pub fn children_proportion(d: u32, r: u32) -> Result<f64, AsymptoticsError> {
    if d == 0 || r > d {
        return Err(AsymptoticsError::OutsideDomain(format!(
            "children proportion d={d} r={r}"
        )));
    }
    let numer = binomial(i64::from(d), i64::from(r)) * BigInt::from(d - 1).pow(d - r);
    let denom = BigInt::from(d).pow(d);
    Ok(ratio_to_f64(&BigRational::new(numer, denom)))
}

pub fn vertex_mean_asym(n: usize) -> f64 {
    0.8 * n as f64 + 0.9
}

pub fn vertex_variance_asym(n: usize) -> f64 {
    4.0 * n as f64 / 25.0 + 2.0 / 25.0
}

fn standardized_vertices(n: usize, k: f64) -> f64 {
    let n = n as f64;
    (k - 0.8 * n) / (0.4 * n.sqrt())
}

/// Central-limit approximation of `P(V_n <= k)`.
pub fn vertex_normal_approx(n: usize, k: f64) -> f64 {
    let v = standardized_vertices(n, k);
    0.5 * statrs::function::erf::erfc(-v / std::f64::consts::SQRT_2)
}

/// Local-limit approximation of `P(V_n = k)`.
pub fn vertex_llt(n: usize, k: usize) -> f64 {
    let v = standardized_vertices(n, k as f64);
    5.0 / (2.0 * (2.0 * n as f64 * PI).sqrt()) * (-0.5 * v * v).exp()
}

/// `ln` of `5^{n+1/2} / (2 sqrt(pi n^3))`, kept in log space since the value
/// leaves double range near `n = 440`.
pub fn log_a_n_asym(n: usize) -> f64 {
    let nf = n as f64;
    (nf + 0.5) * 5f64.ln() - 2f64.ln() - 0.5 * (PI * nf.powi(3)).ln()
}

/// `A_n` divided by its leading-order asymptotic.
pub fn a_n_ratio(n: usize, exact: &BigInt) -> f64 {
    (ln_big(exact) - log_a_n_asym(n)).exp()
}
