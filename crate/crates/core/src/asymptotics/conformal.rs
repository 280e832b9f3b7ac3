//! The substitution `z = u / (u^2 + 3u + 1)` that makes the height generating
//! functions explicit, and its inverse on the slit plane.

use num_complex::Complex64;

use super::AsymptoticsError;

fn quadratic(u: Complex64) -> Complex64 {
    u * u + 3.0 * u + 1.0
}

/// `u / (u^2 + 3u + 1)`, defined on the open unit disk minus the pole
/// `(-3 + sqrt 5) / 2`.
pub fn zeta(u: Complex64) -> Result<Complex64, AsymptoticsError> {
    let q = quadratic(u);
    if u.norm() >= 1.0 || q.norm() < 1e-12 {
        return Err(AsymptoticsError::OutsideDomain(format!("zeta({u})")));
    }
    Ok(u / q)
}

/// Inverse of [`zeta`] on the plane slit along `[1/5, 1]`.
///
/// Evaluated as `2z / (1 - 3z + sqrt(1 - 5z) sqrt(1 - z))`, which equals
/// `(1 - 3z - sqrt(1 - 5z) sqrt(1 - z)) / (2z)` away from zero, has no
/// cancellation near `z = 0`, and gives the removable value 0 there.
/// Principal square roots throughout.
pub fn upsilon(z: Complex64) -> Result<Complex64, AsymptoticsError> {
    if z.im == 0.0 && (0.2..=1.0).contains(&z.re) {
        return Err(AsymptoticsError::OutsideDomain(format!("upsilon({z})")));
    }
    let one = Complex64::new(1.0, 0.0);
    let s = (one - 5.0 * z).sqrt() * (one - z).sqrt();
    Ok(2.0 * z / (one - 3.0 * z + s))
}

/// A point of the `u`-disk with its image `z` and the two roots `alpha`,
/// `beta` of `Q^2 - (1 - z) Q + z (1 - z) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalPoint {
    pub z: Complex64,
    pub u: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl ConformalPoint {
    pub fn from_u(u: Complex64) -> Result<Self, AsymptoticsError> {
        let z = zeta(u)?;
        let q = quadratic(u);
        Ok(Self {
            z,
            u,
            alpha: (u + 1.0) / q,
            beta: u * (u + 1.0) / q,
        })
    }

    pub fn from_z(z: Complex64) -> Result<Self, AsymptoticsError> {
        let u = upsilon(z)?;
        let q = quadratic(u);
        Ok(Self {
            z,
            u,
            alpha: (u + 1.0) / q,
            beta: u * (u + 1.0) / q,
        })
    }

    /// Largest deviation from `alpha + beta = 1 - z` and `alpha beta = z (1 - z)`.
    pub fn root_relation_defect(&self) -> f64 {
        let one_minus_z = 1.0 - self.z;
        let sum = (self.alpha + self.beta - one_minus_z).norm();
        let prod = (self.alpha * self.beta - self.z * one_minus_z).norm();
        sum.max(prod)
    }

    /// `T(z) = beta / z = u + 1`, the generating function of all trees.
    pub fn t(&self) -> Complex64 {
        self.u + 1.0
    }

    /// `T_h(z) = (u + 1) (1 - u^{h+1}) / (1 - u^{h+2})`, trees of height at most `h`.
    pub fn t_h(&self, h: u32) -> Complex64 {
        let u = self.u;
        (u + 1.0) * (1.0 - u.powu(h + 1)) / (1.0 - u.powu(h + 2))
    }

    /// `(T - T_h)(z) = ((1 - u^2) / u) u^{h+2} / (1 - u^{h+2})`.
    pub fn tail(&self, h: u32) -> Complex64 {
        let u = self.u;
        // ((1-u^2)/u) u^{h+2} written without dividing by u
        (1.0 - u * u) * u.powu(h + 1) / (1.0 - u.powu(h + 2))
    }
}

/// First `count` Taylor coefficients of an analytic `f` at 0, by the
/// trapezoidal rule on the Cauchy integral over `|z| = radius`.
pub fn maclaurin_coefficients<F>(f: F, count: usize, radius: f64, points: usize) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let samples: Vec<Complex64> = (0..points)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / points as f64;
            f(Complex64::from_polar(radius, theta))
        })
        .collect();
    (0..count)
        .map(|n| {
            let acc: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let theta = std::f64::consts::TAU * (j * n % points) as f64 / points as f64;
                    v * Complex64::from_polar(1.0, -theta)
                })
                .sum();
            acc / (points as f64 * radius.powi(n as i32))
        })
        .collect()
}
