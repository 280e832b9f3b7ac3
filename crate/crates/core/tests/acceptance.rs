//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiedge::asymptotics::{
    avg_height_dary, children_proportion, llt_density_dary, maclaurin_coefficients, upsilon,
    validate, zeta, Claim, ClaimReport,
};
use multiedge::bijection::{from_dary, to_dary};
use multiedge::counting::{
    a_n, a_sequence, count_vertices_eq, fuss_catalan, height_tables_by_series,
    vertex_moments_exact, HeightCountTable, VertexCountTable,
};
use multiedge::numeric::{chi_square_gof, ratio_to_f64};
use multiedge::sampler::Sampler;
use multiedge::trees::Enumerator;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within_budget(start: Instant, budget: Duration) -> (bool, String) {
    let t = start.elapsed();
    (
        t < budget,
        format!("{:.2}s of {}s", t.as_secs_f64(), budget.as_secs()),
    )
}

fn sequence() -> Outcome {
    let start = Instant::now();
    let want = [1u64, 1, 3, 10, 36, 137, 543, 2219, 9285, 39587];
    let got: Vec<BigInt> = (0..10).map(a_n).collect();
    let exact = got.iter().zip(want).all(|(g, w)| *g == BigInt::from(w));
    let (fast, t) = within_budget(start, Duration::from_secs(1));
    outcome(exact && fast, format!("A_0..A_9 exact={exact}, {t}"))
}

fn triple_height_oracle() -> Outcome {
    let start = Instant::now();
    let series = height_tables_by_series(8, 8);
    let enumerator = Enumerator::default();
    let mut mismatches = 0;
    for n in 0..=8 {
        let formula = HeightCountTable::by_formula(n);
        let brute = HeightCountTable::by_enumeration(n, &enumerator).expect("below ceiling");
        for h in 0..=n + 1 {
            let f = formula.count_eq(h);
            if f != series[n].count_eq(h) || f != brute.count_eq(h) {
                mismatches += 1;
            }
        }
    }
    let (fast, t) = within_budget(start, Duration::from_secs(60));
    outcome(
        mismatches == 0 && fast,
        format!("n<=8, every h: {mismatches} mismatches, {t}"),
    )
}

fn vertex_identity() -> Outcome {
    let start = Instant::now();
    let a = a_sequence(200);
    let sums_ok = (0..=200).all(|n| {
        let s: BigInt = (0..=n + 1).map(|k| count_vertices_eq(n, k)).sum();
        s == a[n]
    });
    let enumerator = Enumerator::default();
    let brute_ok = (0..=8).all(|n| {
        let brute = VertexCountTable::by_enumeration(n, &enumerator).expect("below ceiling");
        (0..=n + 2).all(|k| brute.count(k) == count_vertices_eq(n, k))
    });
    let (fast, t) = within_budget(start, Duration::from_secs(10));
    outcome(
        sums_ok && brute_ok && fast,
        format!("sum identity n<=200: {sums_ok}, brute force n<=8: {brute_ok}, {t}"),
    )
}

fn bijection() -> Outcome {
    let start = Instant::now();
    let enumerator = Enumerator::default();
    let mut ok = true;
    let mut checked = 0u64;
    for d in [2, 3] {
        for k in 1..=7 {
            let mut images = HashSet::new();
            enumerator
                .dary_multi(d, k, |t| {
                    let image = to_dary(t).expect("bounded tree maps");
                    ok &= from_dary(&image) == *t;
                    ok &= image.stats() == t.stats();
                    ok &= images.insert(image);
                    checked += 1;
                })
                .expect("below ceiling");
            let mut targets = 0usize;
            enumerator
                .dary(d, k, |t| {
                    ok &= images.contains(t);
                    targets += 1;
                })
                .expect("below ceiling");
            ok &= targets == images.len();
        }
    }
    let (fast, t) = within_budget(start, Duration::from_secs(60));
    outcome(
        ok && fast,
        format!("d in {{2,3}}, up to 7 vertices, {checked} trees, {t}"),
    )
}

fn fuss_catalan_counts() -> Outcome {
    let enumerator = Enumerator::default();
    let mut ok = true;
    for d in [2, 3, 5] {
        for n in 1..=7 {
            let count = enumerator.dary_multi(d, n, |_| {}).expect("below ceiling");
            ok &= count == fuss_catalan(d, n).expect("d >= 1, n >= 1");
        }
    }
    outcome(ok, "d in {2,3,5}, 1 <= n <= 7")
}

fn summary(report: &ClaimReport) -> String {
    report
        .summary
        .iter()
        .map(|(k, v)| {
            if v.abs() < 1e-3 && *v != 0.0 {
                format!("{k}={v:.3e}")
            } else {
                format!("{k}={v:.6}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn expected_height() -> Outcome {
    let report = validate(Claim::ExpectedHeight, &[100.0, 200.0, 400.0]).expect("valid grid");
    outcome(report.verdict.passed(), summary(&report))
}

fn poisson_duality() -> Outcome {
    let start = Instant::now();
    let report = validate(Claim::PoissonDuality, &[0.5, 1.0, 1.5, 2.0, 3.0]).expect("valid grid");
    let (fast, t) = within_budget(start, Duration::from_secs(1));
    outcome(
        report.verdict.passed() && fast,
        format!("{}, {t}", summary(&report)),
    )
}

fn height_llt() -> Outcome {
    let report = validate(Claim::HeightLlt, &[500.0]).expect("valid grid");
    let failing: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.quantity.starts_with("P(") && r.rel_error() >= 0.05)
        .map(|r| r.quantity.clone())
        .collect();
    outcome(
        report.verdict.passed(),
        format!("{}; outside 5%: {}", summary(&report), failing.join(" ")),
    )
}

fn vertex_statistics() -> Outcome {
    let (mean, var) = vertex_moments_exact(100);
    let dm = ratio_to_f64(&mean) - 80.9;
    let dv = ratio_to_f64(&var) - 16.08;
    let llt = validate(Claim::VertexLlt, &[500.0]).expect("valid grid");
    outcome(
        dm.abs() < 0.05 && dv.abs() < 0.1 && llt.verdict.passed(),
        format!(
            "mean delta={dm:.5}, variance delta={dv:.5}, {}",
            summary(&llt)
        ),
    )
}

fn sampler_exactness() -> Outcome {
    let start = Instant::now();
    let n = 8;
    let draws = 100_000;
    let total = a_n(n).to_f64().unwrap();
    let heights = HeightCountTable::by_formula(n);
    let vertices = VertexCountTable::new(n);
    let mut h_obs = vec![0u64; n + 1];
    let mut v_obs = vec![0u64; n + 2];
    let mut sampler = Sampler::new(n, 20_241_018);
    for _ in 0..draws {
        let s = sampler.sample().stats();
        h_obs[s.height] += 1;
        v_obs[s.vertices] += 1;
    }
    let h_p: Vec<f64> = (0..=n)
        .map(|h| heights.count_eq(h).to_f64().unwrap() / total)
        .collect();
    let v_p: Vec<f64> = (0..=n + 1)
        .map(|k| vertices.count(k).to_f64().unwrap() / total)
        .collect();
    let h_test = chi_square_gof(&h_obs, &h_p);
    let v_test = chi_square_gof(&v_obs, &v_p);
    let (fast, t) = within_budget(start, Duration::from_secs(60));
    outcome(
        h_test.passes(0.001) && v_test.passes(0.001) && fast,
        format!(
            "height p={:.4}, vertices p={:.4}, {t}",
            h_test.p_value, v_test.p_value
        ),
    )
}

fn conformal_maps() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        // uniform on the disk of radius 0.9
        let r = 0.9 * rng.gen::<f64>().sqrt();
        let u = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let back = upsilon(zeta(u).expect("inside disk")).expect("off the slit");
        worst = worst.max((back - u).norm());
    }
    let coeffs = maclaurin_coefficients(|z| upsilon(z).expect("|z| < 1/5"), 7, 0.1, 128);
    let a = a_sequence(6);
    let coeffs_ok = (1..=6).all(|n| (coeffs[n].re - a[n].to_f64().unwrap()).abs() < 1e-9);
    outcome(
        worst < 1e-12 && coeffs_ok,
        format!(
            "max |upsilon(zeta(u)) - u| = {worst:.2e}, coefficients match A_1..A_6: {coeffs_ok}"
        ),
    )
}

fn dary_asymptotics() -> Outcome {
    // the evaluators themselves: density mass over h >= 1, children proportions
    let mass: f64 = (1..2000)
        .map(|h| llt_density_dary(3, 100, h).unwrap())
        .sum();
    let props: f64 = (0..=3).map(|r| children_proportion(3, r).unwrap()).sum();
    let evaluators_ok = (mass - 1.0).abs() < 1e-6
        && (props - 1.0).abs() < 1e-12
        && (avg_height_dary(2, 12).unwrap() - (4.0 * std::f64::consts::PI * 12.0).sqrt()).abs()
            < 1e-12;
    let report = validate(Claim::DaryHeight, &[12.0]).expect("valid grid");
    let r = &report.rows[0];
    outcome(
        evaluators_ok && report.verdict.passed(),
        format!(
            "evaluators ok: {evaluators_ok}; d=2, 12 vertices: exact mean {:.4} vs sqrt(4 pi n) {:.4}, rel error {:.3}",
            r.exact,
            r.asymptotic,
            r.rel_error()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        ("sequence reproduction", sequence),
        ("triple-oracle height counts", triple_height_oracle),
        ("vertex-count identity", vertex_identity),
        ("bijection", bijection),
        ("Fuss-Catalan counts", fuss_catalan_counts),
        ("expected height trend", expected_height),
        ("Poisson duality", poisson_duality),
        ("multi-edge height local limit", height_llt),
        ("vertex statistics", vertex_statistics),
        ("sampler exactness", sampler_exactness),
        ("conformal maps", conformal_maps),
        ("d-ary asymptotics", dary_asymptotics),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2}. {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
