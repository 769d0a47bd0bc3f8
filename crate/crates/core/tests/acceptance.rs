//! Acceptance suite. Runs each criterion in turn, prints one PASS/FAIL line
//! per criterion and exits nonzero if any fails.
//!
//! ```text
//! cargo test --test acceptance
//! ```

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ifs_cdf::analysis::{
    combo_monotone_check, combo_residual, equation_residual, extend_phi, extension_residual,
    independence_probe, integral_equalwidth, integral_quadrature, nominal_residual_bound,
    ComboSpec, Monotonicity,
};
use ifs_cdf::mc::{chaos_game, ks_distance, DEFAULT_BURN_IN};
use ifs_cdf::measure::{cell_mass, gap_mass, phi_equalwidth, phi_eval, phi_p};
use ifs_cdf::{DigitString, IfsSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{spread, RawSystem};

// Tolerances and limits, fixed here.
const RESIDUAL_TOL: f64 = 1e-10;
const IDENTITY_SLACK: f64 = 1e-12;
const DYADIC_REL: f64 = 1e-12;
const INTEGRAL_AGREEMENT: f64 = 2e-5;
const KS_LIMIT: f64 = 0.01;
const ADDITIVITY: f64 = 1e-14;
const STANDARD_ERRORS: f64 = 5.0;
const DET_FLOOR: f64 = 1e-6;

type Check = fn() -> Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn within(limit_secs: u64, start: Instant) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(limit_secs) {
        Err(format!(
            "took {:.1} s, limit {limit_secs} s",
            elapsed.as_secs_f64()
        ))
    } else {
        Ok(())
    }
}

fn equation_residuals() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let s = RawSystem::random(&mut r, 4).build();
        let xs: Vec<f64> = (0..1000).map(|_| r.random()).collect();
        let bound = nominal_residual_bound(&s, RESIDUAL_TOL);
        let max = xs
            .par_iter()
            .map(|&x| equation_residual(&s, x, RESIDUAL_TOL).map(|r| r.value.abs()))
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
            .map_err(|e| e.to_string())?;
        if max > bound {
            return Err(format!("system {i}: residual {max:e} > {bound:e}"));
        }
        worst = worst.max(max / bound);
    }
    within(30, start)?;
    Ok(format!(
        "50 systems x 1000 points, max |r| / (2N+2)tol = {worst:.3}"
    ))
}

fn identity_case() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let count = r.random_range(2..=5);
        let raw: Vec<f64> = (0..count).map(|_| r.random()).collect();
        let rho = spread(&raw, 0.1);
        let s = IfsSystem::similitudes(&rho, rho.clone()).map_err(|e| e.to_string())?;
        for i in 0..1000 {
            let x = i as f64 / 999.0;
            let v = phi_eval(&s, x, 1e-12).map_err(|e| e.to_string())?;
            let err = (v.value - x).abs();
            if err > v.error_bound + IDENTITY_SLACK {
                return Err(format!("rho = {rho:?}, x = {x}: |phi - x| = {err:e}"));
            }
            worst = worst.max(err);
        }
    }
    within(5, start)?;
    Ok(format!(
        "10 systems x 1000 points, max |phi(x) - x| = {worst:e}"
    ))
}

fn dyadic_values() -> Result<String, String> {
    let mut worst = 0.0f64;
    for i in 1..=9 {
        let p = i as f64 / 10.0;
        for k in 1..=20 {
            // relative accuracy at values down to 1e-20 needs a tolerance far below them
            let v = phi_p(p, 0.5f64.powi(k), f64::MIN_POSITIVE).map_err(|e| e.to_string())?;
            let expected = p.powi(k);
            let rel = (v.value - expected).abs() / expected;
            if rel > DYADIC_REL {
                return Err(format!("p = {p}, k = {k}: {} vs {expected}", v.value));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "p in 0.1..0.9, k <= 20, max relative error {worst:e}"
    ))
}

fn anchor_values() -> Result<String, String> {
    let mut r = rng(4);
    let mut checked = 0;
    for n in 1..=4usize {
        for _ in 0..10 {
            let raw: Vec<f64> = (0..=n).map(|_| r.random()).collect();
            let w = spread(&raw, 0.05);
            let s = IfsSystem::equal_width(w.clone()).map_err(|e| e.to_string())?;
            let mut partial = 0.0;
            for k in 0..=n + 1 {
                let x = k as f64 / (n + 1) as f64;
                let v = phi_eval(&s, x, 1e-12).map_err(|e| e.to_string())?;
                if (v.value - partial).abs() > v.error_bound {
                    return Err(format!(
                        "weights {w:?}, x = {k}/{}: {} vs {partial}",
                        n + 1,
                        v.value
                    ));
                }
                checked += 1;
                if k <= n {
                    partial += w[k];
                }
            }
        }
    }
    Ok(format!("{checked} anchors, N = 1..4, all exact"))
}

fn integral_identity() -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for n in 1..=3usize {
        for _ in 0..10 {
            let raw: Vec<f64> = (0..=n).map(|_| r.random()).collect();
            let s = IfsSystem::equal_width(spread(&raw, 0.05)).map_err(|e| e.to_string())?;
            let closed = integral_equalwidth(&s).map_err(|e| e.to_string())?;
            let quad = integral_quadrature(&s, 100_000, 1e-12).map_err(|e| e.to_string())?;
            let gap = (closed - quad.value).abs();
            if gap > INTEGRAL_AGREEMENT {
                return Err(format!(
                    "weights {:?}: closed {closed} vs quadrature {}",
                    s.weights(),
                    quad.value
                ));
            }
            worst = worst.max(gap);
        }
    }
    within(60, start)?;
    Ok(format!(
        "30 systems, grid 1e5, max |closed - quadrature| = {worst:e}"
    ))
}

fn fast_paths() -> Result<String, String> {
    let mut r = rng(6);
    let mut compared = 0;
    for p in [0.3, 0.5, 0.77] {
        let s = IfsSystem::similitudes(&[0.5, 0.5], vec![p, 1.0 - p]).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let x: f64 = r.random();
            let a = phi_eval(&s, x, 1e-12).map_err(|e| e.to_string())?;
            let b = phi_p(p, x, 1e-12).map_err(|e| e.to_string())?;
            if (a.value - b.value).abs() > a.error_bound + b.error_bound {
                return Err(format!("phi_p, p = {p}, x = {x}: {a:?} vs {b:?}"));
            }
            compared += 1;
        }
    }
    for w in [
        vec![0.2, 0.3, 0.5],
        vec![0.1, 0.4, 0.25, 0.25],
        vec![0.3, 0.05, 0.3, 0.05, 0.3],
    ] {
        let s = IfsSystem::equal_width(w.clone()).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let x: f64 = r.random();
            let a = phi_eval(&s, x, 1e-12).map_err(|e| e.to_string())?;
            let b = phi_equalwidth(&w, x, 1e-12).map_err(|e| e.to_string())?;
            if (a.value - b.value).abs() > a.error_bound + b.error_bound {
                return Err(format!(
                    "phi_equalwidth, w = {w:?}, x = {x}: {a:?} vs {b:?}"
                ));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} comparisons within summed bounds"))
}

fn monte_carlo() -> Result<String, String> {
    let start = Instant::now();
    let mut report = Vec::new();
    for (p, seed) in [(0.3, 71), (0.5, 72)] {
        let s = IfsSystem::similitudes(&[0.5, 0.5], vec![p, 1.0 - p]).map_err(|e| e.to_string())?;
        let run = chaos_game(&s, seed, DEFAULT_BURN_IN, 1_000_000).map_err(|e| e.to_string())?;
        let ks = ks_distance(&run, &s, 1e-12)
            .map_err(|e| e.to_string())?
            .statistic();
        if ks > KS_LIMIT {
            return Err(format!("p = {p}: KS {ks} > {KS_LIMIT}"));
        }
        report.push(format!("p = {p}: KS {ks:.5}"));
    }
    within(20, start)?;
    Ok(report.join(", "))
}

fn cylinder_masses() -> Result<String, String> {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let s = RawSystem::random(&mut r, 4).build();
        let base = s.maps().len();
        let depth = r.random_range(0..=10);
        let digits = DigitString::new((0..depth).map(|_| r.random_range(0..base)).collect());
        let parent = cell_mass(&s, &digits).map_err(|e| e.to_string())?;
        let mut children = 0.0;
        for n in 0..base {
            let child = digits.extended(n);
            let mass = cell_mass(&s, &child).map_err(|e| e.to_string())?;
            let gap = gap_mass(&s, &child).map_err(|e| e.to_string())?;
            // the gap inside the parent is the mass of the earlier siblings
            let err = (gap - children).abs();
            worst = worst.max(err);
            if err > ADDITIVITY {
                return Err(format!("gap of {child}: {gap} vs {children}"));
            }
            children += mass;
        }
        let err = (parent - children).abs();
        worst = worst.max(err);
        if err > ADDITIVITY {
            return Err(format!("cell {digits}: {parent} vs children {children}"));
        }
    }

    let m = 1_000_000;
    let systems = [
        (
            IfsSystem::similitudes(&[0.2, 0.5, 0.3], vec![0.5, 0.2, 0.3]),
            81,
        ),
        (
            IfsSystem::warped(&[0.0, 0.4, 1.0], &[0.8, -0.25], vec![0.35, 0.65]),
            82,
        ),
    ];
    let mut worst_z = 0.0f64;
    for (s, seed) in systems {
        let s = s.map_err(|e| e.to_string())?;
        let run = chaos_game(&s, seed, DEFAULT_BURN_IN, m).map_err(|e| e.to_string())?;
        let base = s.maps().len();
        for code in 0..base.pow(3) {
            let digits = DigitString::new(vec![
                code / (base * base),
                (code / base) % base,
                code % base,
            ]);
            let mass = cell_mass(&s, &digits).map_err(|e| e.to_string())?;
            let (low, high) = s.compose_cell(&digits).map_err(|e| e.to_string())?;
            let freq = run.empirical_mass(low, high);
            let z = (freq - mass).abs() / (mass * (1.0 - mass) / m as f64).sqrt();
            if z > STANDARD_ERRORS {
                return Err(format!(
                    "cell {digits}: frequency {freq} vs mass {mass}, {z:.2} standard errors"
                ));
            }
            worst_z = worst_z.max(z);
        }
    }
    Ok(format!(
        "additivity error {worst:e}; depth-3 frequencies within {worst_z:.2} standard errors"
    ))
}

fn extension() -> Result<String, String> {
    let mut worst = 0.0f64;
    for w in [
        vec![0.3, 0.7],
        vec![0.2, 0.3, 0.5],
        vec![0.1, 0.4, 0.25, 0.25],
        vec![0.3, 0.05, 0.3, 0.05, 0.3],
    ] {
        let s = IfsSystem::equal_width(w.clone()).map_err(|e| e.to_string())?;
        for i in 0..=600 {
            // grid points on a dyadic lattice, so that x + 1 is exact
            let x = ((-3.0 + i as f64 / 100.0) * 2f64.powi(40)).round() / 2f64.powi(40);
            let a = extend_phi(&s, x, 1e-12).map_err(|e| e.to_string())?;
            let b = extend_phi(&s, x + 1.0, 1e-12).map_err(|e| e.to_string())?;
            if b.integer_part != a.integer_part + 1.0 || b.fraction != a.fraction {
                return Err(format!("w = {w:?}, x = {x}: shift by one is not exact"));
            }
            let r = extension_residual(&s, x, 1e-12).map_err(|e| e.to_string())?;
            if !r.within_bound() {
                return Err(format!(
                    "w = {w:?}, x = {x}: residual {} > bound {}",
                    r.value, r.bound
                ));
            }
            worst = worst.max(r.value.abs());
        }
    }
    Ok(format!(
        "4 systems x 601 points, exact shifts, max |residual| = {worst:e}"
    ))
}

fn random_params<R: Rng>(r: &mut R, n: usize, gap: f64) -> Vec<f64> {
    loop {
        let mut p: Vec<f64> = (0..n).map(|_| r.random_range(0.05..0.95)).collect();
        p.sort_by(f64::total_cmp);
        if p.windows(2).all(|w| w[1] - w[0] >= gap) {
            return p;
        }
    }
}

fn combo_space() -> Result<String, String> {
    let mut r = rng(10);
    let grid: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let n = r.random_range(1..=4);
        let params = random_params(&mut r, n, 1e-3);
        let terms: Vec<(f64, f64)> = params
            .iter()
            .map(|&p| (r.random_range(-2.0..2.0), p))
            .collect();
        let combo = ComboSpec::new(&terms, r.random_range(-1.0..1.0)).map_err(|e| e.to_string())?;
        for &x in &grid {
            let res = combo_residual(&combo, x, 1e-12).map_err(|e| e.to_string())?;
            if !res.within_bound() {
                return Err(format!("combo {i} {terms:?}, x = {x}: {res:?}"));
            }
            worst = worst.max(res.value.abs());
        }
    }
    for i in 0..20 {
        let n = r.random_range(1..=4);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let params = random_params(&mut r, n, 1e-3);
        let terms: Vec<(f64, f64)> = params
            .iter()
            .map(|&p| (sign * r.random_range(0.1..2.0), p))
            .collect();
        let combo = ComboSpec::new(&terms, 0.0).map_err(|e| e.to_string())?;
        let report = combo_monotone_check(&combo, 1000, 1e-12).map_err(|e| e.to_string())?;
        let expected = if sign > 0.0 {
            Monotonicity::NonDecreasing
        } else {
            Monotonicity::NonIncreasing
        };
        if report.predicted != Some(expected) || report.empirical != expected {
            return Err(format!("same-sign combo {terms:?}: {report:?}"));
        }
    }
    let mut min_det = f64::INFINITY;
    for _ in 0..10 {
        let params = random_params(&mut r, 3, 0.1);
        let det = independence_probe(&params)
            .map_err(|e| e.to_string())?
            .abs();
        if det <= DET_FLOOR {
            return Err(format!("params {params:?}: |det| = {det:e}"));
        }
        min_det = min_det.min(det);
    }
    Ok(format!(
        "max |residual| {worst:e}; 20 same-sign combos monotone; min |det| {min_det:e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("functional-equation residual", equation_residuals),
        ("identity case", identity_case),
        ("dyadic values", dyadic_values),
        ("equal-width anchor values", anchor_values),
        ("integral identity", integral_identity),
        ("series vs fast paths", fast_paths),
        ("Monte-Carlo oracle", monte_carlo),
        ("cylinder-mass consistency", cylinder_masses),
        ("extension", extension),
        ("combo space", combo_space),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} ({secs:.2} s)",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {detail} ({secs:.2} s)",
                    i + 1
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
