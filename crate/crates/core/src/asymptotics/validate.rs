//! Exact-versus-asymptotic comparison harness.
//!
//! Each [`Claim`] names one asymptotic statement. [`validate`] evaluates it on
//! a grid, records one [`ValidationReport`] per compared value and reduces
//! them to a verdict. The implied constants of the `O(.)` terms are unknown,
//! so most verdicts are trend checks over the grid; every threshold used is
//! written into the report next to its rationale.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use super::{
    a_n_ratio, avg_height_dary, expected_height_asym, g_alpha, llt_density_dary, llt_density_multi,
    vertex_llt, vertex_mean_asym, vertex_variance_asym, AsymptoticsError, GForm,
};
use crate::counting::{a_sequence, HeightCountTable, VertexCountTable};
use crate::numeric::ratio_to_f64;
use crate::trees::{Enumerator, TreeError};

pub const DEFAULT_GRID_EXPECTED_HEIGHT: [usize; 3] = [100, 200, 400];
pub const DEFAULT_GRID_A_N: [usize; 4] = [50, 100, 200, 400];
pub const DEFAULT_GRID_VERTEX_MOMENTS: [usize; 4] = [50, 100, 200, 400];
const DEFAULT_GRID_LLT: [usize; 1] = [500];
const DEFAULT_GRID_DUALITY: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];
const DEFAULT_GRID_DARY: [usize; 1] = [12];

/// Largest log-log slope of `sqrt(n) |E_exact - E_asym|` against `n` still
/// read as "not increasing". A slope of `s` means the raw error decays like
/// `n^{s - 1/2}`.
pub const EXPECTED_HEIGHT_SLOPE_TOLERANCE: f64 = 0.01;
const HEIGHT_LLT_REL_TOL: f64 = 0.05;
const HEIGHT_LLT_MASS_TOL: f64 = 0.01;
const VERTEX_LLT_REL_TOL: f64 = 0.02;
const DUALITY_ABS_TOL: f64 = 1e-12;
const DARY_MEAN_REL_TOL: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    ExpectedHeight,
    AN,
    VertexMoments,
    HeightLlt,
    VertexLlt,
    PoissonDuality,
    DaryHeight,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::ExpectedHeight,
        Claim::AN,
        Claim::VertexMoments,
        Claim::HeightLlt,
        Claim::VertexLlt,
        Claim::PoissonDuality,
        Claim::DaryHeight,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Claim::ExpectedHeight => "expected-height",
            Claim::AN => "a-n",
            Claim::VertexMoments => "vertex-moments",
            Claim::HeightLlt => "height-llt",
            Claim::VertexLlt => "vertex-llt",
            Claim::PoissonDuality => "poisson-duality",
            Claim::DaryHeight => "dary-height",
        }
    }

    pub fn default_grid(&self) -> Vec<f64> {
        let ns = |g: &[usize]| g.iter().map(|&n| n as f64).collect();
        match self {
            Claim::ExpectedHeight => ns(&DEFAULT_GRID_EXPECTED_HEIGHT),
            Claim::AN => ns(&DEFAULT_GRID_A_N),
            Claim::VertexMoments => ns(&DEFAULT_GRID_VERTEX_MOMENTS),
            Claim::HeightLlt | Claim::VertexLlt => ns(&DEFAULT_GRID_LLT),
            Claim::PoissonDuality => DEFAULT_GRID_DUALITY.to_vec(),
            Claim::DaryHeight => ns(&DEFAULT_GRID_DARY),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Claim::ALL.iter().map(Claim::name).collect();
                format!("unknown claim {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        *self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One exact value next to its asymptotic approximation. Errors are always
/// derived from the two stored values; serialized error fields are output
/// only and ignored when reading a report back.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub quantity: String,
    pub exact: f64,
    pub asymptotic: f64,
}

impl ValidationReport {
    pub fn new(n: usize, quantity: impl Into<String>, exact: f64, asymptotic: f64) -> Self {
        Self {
            n,
            quantity: quantity.into(),
            exact,
            asymptotic,
        }
    }

    pub fn abs_error(&self) -> f64 {
        (self.exact - self.asymptotic).abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.exact.abs()
    }

    pub const CSV_HEADER: &'static str = "n,quantity,exact,asymptotic,abs_error,rel_error";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:e},{:e},{:e},{:e}",
            self.n,
            self.quantity,
            self.exact,
            self.asymptotic,
            self.abs_error(),
            self.rel_error()
        )
    }
}

impl Serialize for ValidationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            n: usize,
            quantity: &'a str,
            exact: f64,
            asymptotic: f64,
            abs_error: f64,
            rel_error: f64,
        }
        Row {
            n: self.n,
            quantity: &self.quantity,
            exact: self.exact,
            asymptotic: self.asymptotic,
            abs_error: self.abs_error(),
            rel_error: self.rel_error(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub grid: Vec<f64>,
    pub rows: Vec<ValidationReport>,
    /// Derived statistics (bounds, slopes, sums) the verdict is based on.
    pub summary: Vec<(String, f64)>,
    /// The acceptance rule, including its threshold and why it was chosen.
    pub criterion: String,
    pub verdict: Verdict,
}

impl ClaimReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,");
        out.push_str(ValidationReport::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(self.claim.name());
            out.push(',');
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ValidateError {
    #[error("grid value {0} is not a valid size for this claim")]
    BadGrid(f64),
    #[error("claim needs at least {0} grid points")]
    GridTooShort(usize),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn sizes(grid: &[f64], min: usize) -> Result<Vec<usize>, ValidateError> {
    grid.iter()
        .map(|&g| {
            if g.fract() == 0.0 && g >= min as f64 {
                Ok(g as usize)
            } else {
                Err(ValidateError::BadGrid(g))
            }
        })
        .collect()
}

/// Runs `f` over the grid on scoped threads, keeping grid order.
fn fan_out<T, F>(grid: &[usize], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    std::thread::scope(|s| {
        let handles: Vec<_> = grid
            .iter()
            .map(|&n| {
                let f = &f;
                s.spawn(move || f(n))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("validation worker panicked"))
            .collect()
    })
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

pub fn validate(claim: Claim, grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    match claim {
        Claim::ExpectedHeight => expected_height(grid),
        Claim::AN => a_n(grid),
        Claim::VertexMoments => vertex_moments(grid),
        Claim::HeightLlt => height_llt(grid),
        Claim::VertexLlt => vertex_llt_claim(grid),
        Claim::PoissonDuality => poisson_duality(grid),
        Claim::DaryHeight => dary_height(grid),
    }
}

fn expected_height(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    if ns.len() < 2 {
        return Err(ValidateError::GridTooShort(2));
    }
    let exact = fan_out(&ns, |n| {
        ratio_to_f64(&HeightCountTable::by_formula(n).expected_height())
    });
    let rows: Vec<_> = ns
        .iter()
        .zip(exact)
        .map(|(&n, e)| ValidationReport::new(n, "E(H_n)", e, expected_height_asym(n)))
        .collect();
    let x: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let scaled: Vec<f64> = rows
        .iter()
        .map(|r| r.abs_error() * (r.n as f64).sqrt())
        .collect();
    let bound = scaled.iter().copied().fold(0.0, f64::max);
    let slope = log_log_slope(&x, &scaled);
    let mut summary: Vec<(String, f64)> = ns
        .iter()
        .zip(&scaled)
        .map(|(n, s)| (format!("scaled_error_{n}"), *s))
        .collect();
    summary.push(("scaled_error_bound".into(), bound));
    summary.push(("scaled_error_log_slope".into(), slope));
    Ok(ClaimReport {
        claim: Claim::ExpectedHeight,
        grid: grid.to_vec(),
        rows,
        summary,
        criterion: format!(
            "sqrt(n)*|error| must be bounded and not increase across the grid: \
             fitted log-log slope <= {EXPECTED_HEIGHT_SLOPE_TOLERANCE} \
             (the O(1/sqrt n) constant is unknown, so no absolute bound is imposed)"
        ),
        verdict: Verdict::from_bool(bound.is_finite() && slope <= EXPECTED_HEIGHT_SLOPE_TOLERANCE),
    })
}

fn a_n(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    let seq = a_sequence(ns.iter().copied().max().unwrap_or(0));
    let rows: Vec<_> = ns
        .iter()
        .map(|&n| ValidationReport::new(n, "A_n/asymptotic", a_n_ratio(n, &seq[n]), 1.0))
        .collect();
    let errs: Vec<f64> = rows.iter().map(ValidationReport::abs_error).collect();
    Ok(ClaimReport {
        claim: Claim::AN,
        grid: grid.to_vec(),
        summary: vec![(
            "last_ratio".into(),
            rows.last().map_or(f64::NAN, |r| r.exact),
        )],
        rows,
        criterion: "|A_n / asymptotic - 1| strictly decreases along the grid (1 + O(1/n))".into(),
        verdict: Verdict::from_bool(strictly_decreasing(&errs)),
    })
}

fn vertex_moments(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    let moments = fan_out(&ns, |n| VertexCountTable::new(n).moments());
    let mut rows = Vec::new();
    for (&n, (mean, var)) in ns.iter().zip(&moments) {
        rows.push(ValidationReport::new(
            n,
            "E(V_n)",
            ratio_to_f64(mean),
            vertex_mean_asym(n),
        ));
        rows.push(ValidationReport::new(
            n,
            "Var(V_n)",
            ratio_to_f64(var),
            vertex_variance_asym(n),
        ));
    }
    let mean_err: Vec<f64> = rows
        .iter()
        .step_by(2)
        .map(ValidationReport::abs_error)
        .collect();
    let var_err: Vec<f64> = rows
        .iter()
        .skip(1)
        .step_by(2)
        .map(ValidationReport::abs_error)
        .collect();
    Ok(ClaimReport {
        claim: Claim::VertexMoments,
        grid: grid.to_vec(),
        summary: vec![
            (
                "max_mean_error".into(),
                mean_err.iter().copied().fold(0.0, f64::max),
            ),
            (
                "max_variance_error".into(),
                var_err.iter().copied().fold(0.0, f64::max),
            ),
        ],
        rows,
        criterion: "mean and variance errors strictly decrease along the grid (O(1/n) terms)"
            .into(),
        verdict: Verdict::from_bool(
            strictly_decreasing(&mean_err) && strictly_decreasing(&var_err),
        ),
    })
}

/// Exact height distribution of size-`n` trees as floats, indexed by height.
fn height_distribution(n: usize) -> Vec<f64> {
    let table = HeightCountTable::by_formula(n);
    table
        .rows()
        .iter()
        .map(|r| ratio_to_f64(&BigRational::new(r.count_eq.clone(), table.total().clone())))
        .collect()
}

fn height_llt(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    let dists = fan_out(&ns, height_distribution);
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut ok = true;
    for (&n, p) in ns.iter().zip(&dists) {
        let mode = (0..p.len())
            .max_by(|&a, &b| p[a].total_cmp(&p[b]))
            .expect("nonempty");
        let mean: f64 = p.iter().enumerate().map(|(h, q)| h as f64 * q).sum();
        let sd = p
            .iter()
            .enumerate()
            .map(|(h, q)| (h as f64 - mean).powi(2) * q)
            .sum::<f64>()
            .sqrt();
        let lo = (mode as f64 - sd).ceil().max(1.0) as usize;
        let hi = (mode as f64 + sd).floor() as usize;
        let mut worst: f64 = 0.0;
        for h in lo..=hi.min(n) {
            let r = ValidationReport::new(n, format!("P(H_n={h})"), p[h], llt_density_multi(n, h));
            worst = worst.max(r.rel_error());
            rows.push(r);
        }
        let mass: f64 = (1..=n).map(|h| llt_density_multi(n, h)).sum();
        rows.push(ValidationReport::new(n, "sum_h density", 1.0, mass));
        ok &= worst < HEIGHT_LLT_REL_TOL && (mass - 1.0).abs() < HEIGHT_LLT_MASS_TOL;
        summary.push((format!("mode_{n}"), mode as f64));
        summary.push((format!("sd_{n}"), sd));
        summary.push((format!("max_rel_error_{n}"), worst));
        summary.push((format!("density_mass_{n}"), mass));
    }
    Ok(ClaimReport {
        claim: Claim::HeightLlt,
        grid: grid.to_vec(),
        rows,
        summary,
        criterion: format!(
            "relative error < {HEIGHT_LLT_REL_TOL} for every h with |h - mode| <= sd of the exact \
             height law (compared at the same h, no shift), and |sum density - 1| < {HEIGHT_LLT_MASS_TOL}"
        ),
        verdict: Verdict::from_bool(ok),
    })
}

fn vertex_llt_claim(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    let seq = a_sequence(ns.iter().copied().max().unwrap_or(0));
    let rows: Vec<_> = ns
        .iter()
        .map(|&n| {
            let k = (0.8 * n as f64).round() as usize;
            let p = BigRational::new(crate::counting::count_vertices_eq(n, k), seq[n].clone());
            ValidationReport::new(n, format!("P(V_n={k})"), ratio_to_f64(&p), vertex_llt(n, k))
        })
        .collect();
    let worst = rows
        .iter()
        .map(ValidationReport::rel_error)
        .fold(0.0, f64::max);
    Ok(ClaimReport {
        claim: Claim::VertexLlt,
        grid: grid.to_vec(),
        rows,
        summary: vec![("max_rel_error".into(), worst)],
        criterion: format!("relative error < {VERTEX_LLT_REL_TOL} at k = round(4n/5)"),
        verdict: Verdict::from_bool(worst < VERTEX_LLT_REL_TOL),
    })
}

fn poisson_duality(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let mut rows = Vec::new();
    for &alpha in grid {
        let primal = g_alpha(alpha, GForm::Primal)?;
        let dual = g_alpha(alpha, GForm::Dual)?;
        rows.push(ValidationReport::new(
            0,
            format!("G({alpha})"),
            primal,
            dual,
        ));
    }
    let worst = rows
        .iter()
        .map(ValidationReport::abs_error)
        .fold(0.0, f64::max);
    Ok(ClaimReport {
        claim: Claim::PoissonDuality,
        grid: grid.to_vec(),
        rows,
        summary: vec![("max_abs_difference".into(), worst)],
        criterion: format!("|primal - dual| < {DUALITY_ABS_TOL} at every alpha"),
        verdict: Verdict::from_bool(worst < DUALITY_ABS_TOL),
    })
}

/// Height counts of all pruned d-ary trees with `n` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct DaryHeightProfile {
    pub d: u32,
    pub n: usize,
    pub by_height: Vec<u64>,
    pub total: BigInt,
}

impl DaryHeightProfile {
    pub fn mean_height(&self) -> f64 {
        let s: u64 = self
            .by_height
            .iter()
            .enumerate()
            .map(|(h, c)| h as u64 * c)
            .sum();
        ratio_to_f64(&BigRational::new(BigInt::from(s), self.total.clone()))
    }

    pub fn probability(&self, h: usize) -> f64 {
        let c = self.by_height.get(h).copied().unwrap_or(0);
        ratio_to_f64(&BigRational::new(BigInt::from(c), self.total.clone()))
    }
}

pub fn dary_height_profile(
    d: u32,
    n: usize,
    enumerator: &Enumerator,
) -> Result<DaryHeightProfile, TreeError> {
    let mut by_height = vec![0u64; n.max(1)];
    let total = enumerator.dary(d, n, |t| by_height[t.height()] += 1)?;
    Ok(DaryHeightProfile {
        d,
        n,
        by_height,
        total,
    })
}

fn dary_height(grid: &[f64]) -> Result<ClaimReport, ValidateError> {
    let ns = sizes(grid, 1)?;
    let d = 2;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut ok = true;
    for &n in &ns {
        let profile = dary_height_profile(d, n, &Enumerator::with_ceiling(n))?;
        let r = ValidationReport::new(
            n,
            "E(height;d=2)",
            profile.mean_height(),
            avg_height_dary(d, n)?,
        );
        ok &= r.rel_error() <= DARY_MEAN_REL_TOL;
        summary.push((format!("rel_error_{n}"), r.rel_error()));
        rows.push(r);
        // the density is normalized over all h >= 1, not only the reachable heights
        let mut mass = 0.0;
        let mut h = 1;
        loop {
            let p = llt_density_dary(d, n, h)?;
            mass += p;
            if h > n && p < 1e-18 {
                break;
            }
            h += 1;
        }
        summary.push((format!("density_mass_{n}"), mass));
    }
    Ok(ClaimReport {
        claim: Claim::DaryHeight,
        grid: grid.to_vec(),
        rows,
        summary,
        criterion: format!(
            "exhaustive d=2 mean height within {DARY_MEAN_REL_TOL} relative of sqrt(4 pi n)"
        ),
        verdict: Verdict::from_bool(ok),
    })
}
