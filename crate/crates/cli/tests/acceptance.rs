//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line and then asserts.
//!
//! The tests share a lock so that the wall-clock budgets are measured without
//! competition from the other criteria.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use alpha_harmonic::hypergeom::gamma_fn;
use alpha_harmonic::kernel::{c_n_alpha, kernel_gradient, kernel_mass, kernel_value, BallPoint, ProblemParams, UnitDirection};
use alpha_harmonic::landau::{big_g, landau_radius, normalized_linear_witness, psi, verify_univalence};
use alpha_harmonic::matrix::Matrix;
use alpha_harmonic::poisson::{alpha_laplacian_residual, poisson_extend, poisson_jacobian, BoundaryData};
use alpha_harmonic::sharp_bounds::infinity::c_infty_direction_beta;
use alpha_harmonic::sharp_bounds::{
    c_infty_sup, c_infty_sup_as_printed, classify, i_bruteforce_beta, lp_coefficient, script_j, script_j_monotonicity,
    sup_i_closed, thresholds, ExponentPair, Maximizer, Monotonicity,
};
use alpha_harmonic::sphere::{reduce_zonal_split, SphereRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

const MASS_TOL: f64 = 1e-8;
const MASS_BUDGET: Duration = Duration::from_secs(10);
const DECAY_RANGE: (f64, f64) = (3.5, 4.5);
const RESIDUAL_FLOOR: f64 = 1e-8;
const HARMONICITY_BUDGET: Duration = Duration::from_secs(30);
const FD_STEP: f64 = 1e-5;
const GRADIENT_TOL: f64 = 1e-6;
const ORIGIN_TOL: f64 = 1e-12;
const SWEEP_TOL: f64 = 1e-6;
const SWEEP_POINTS: usize = 181;
const SWEEP_DEGREE: usize = 48;
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const MONOTONE_SLACK: f64 = 1e-9;
const RADIAL_TOL: f64 = 1e-6;
const SHARPNESS_TOL: f64 = 1e-4;
const PSI_TOL: f64 = 1e-10;
const EQUATION_TOL: f64 = 1e-10;
const WITNESS_COVER_TOL: f64 = 1e-6;
const WITNESS_BUDGET: Duration = Duration::from_secs(60);
const VERIFY_BUDGET: Duration = Duration::from_secs(120);

fn report(criterion: u32, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn params(n: usize, alpha: f64) -> ProblemParams<f64> {
    ProblemParams::new(n, alpha).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

fn in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<f64> {
    let s = radius * rng.random::<f64>().powf(1.0 / n as f64);
    unit(rng, n).into_iter().map(|c| c * s).collect()
}

fn beta_grid(points: usize, upper: f64) -> impl Iterator<Item = f64> {
    (0..points).map(move |k| upper * k as f64 / (points - 1) as f64)
}

fn argmax(vals: &[f64]) -> (usize, f64) {
    vals.iter().copied().enumerate().fold((0, f64::MIN), |b, (k, v)| if v > b.1 { (k, v) } else { b })
}

#[test]
fn criterion_01_kernel_mass_oracle() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let rule = SphereRule::gauss(256, 256);
    let mut worst = 0.0_f64;
    for n in [3, 4, 5] {
        for alpha in [-2.0, -1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            for t in [0.0, 0.3, 0.6, 0.9] {
                let x = BallPoint::on_axis(n, t).unwrap();
                let closed = kernel_mass(&p, &x).unwrap();
                let breaks: Vec<f64> = [1.0, 4.0, 16.0].iter().map(|k| (k * (1.0 - t)).min(3.0)).collect();
                let quad = reduce_zonal_split(
                    n,
                    |s| {
                        let mut z = vec![0.0; n];
                        z[0] = s;
                        z[1] = (1.0 - s * s).max(0.0).sqrt();
                        kernel_value(&p, &x, &UnitDirection::new(z).unwrap()).unwrap()
                    },
                    &rule,
                    &breaks,
                )
                .unwrap();
                worst = worst.max((closed - quad.value).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = worst <= MASS_TOL && elapsed < MASS_BUDGET;
    report(1, ok, &format!("max |mass - quadrature| = {worst:e} <= {MASS_TOL:e}, {elapsed:.2?} < {MASS_BUDGET:?}"));
}

#[test]
fn criterion_02_alpha_harmonicity() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let rule = SphereRule::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut lo, mut hi) = (f64::INFINITY, f64::MIN);
    let (mut floored, mut bad) = (0, Vec::new());
    for n in [3, 4] {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| ((i * n + j) as f64 + 1.0).sin()).collect()).collect();
        let families = [
            ("coordinate", BoundaryData::coordinate(n, 0).unwrap()),
            ("linear", BoundaryData::linear(Matrix::from_rows(&rows).unwrap()).unwrap()),
        ];
        for alpha in [-1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            for (name, phi) in &families {
                for _ in 0..20 {
                    let x = BallPoint::new(in_ball(&mut rng, n, 0.7)).unwrap();
                    let u = |y: &[f64]| poisson_extend(phi, &p, &BallPoint::new(y.to_vec())?, &rule);
                    let norm = |v: Vec<f64>| v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    let r1 = norm(alpha_laplacian_residual(u, &p, &x, 1e-3).unwrap());
                    let r2 = norm(alpha_laplacian_residual(u, &p, &x, 5e-4).unwrap());
                    // linear data at α = 0 extend to linear maps: the residual vanishes
                    // identically and only round-off remains, so no decay order exists
                    if alpha == 0.0 && r1.max(r2) <= RESIDUAL_FLOOR {
                        floored += 1;
                        continue;
                    }
                    let ratio = r1 / r2;
                    lo = lo.min(ratio);
                    hi = hi.max(ratio);
                    if !(DECAY_RANGE.0..=DECAY_RANGE.1).contains(&ratio) {
                        bad.push(format!("{name} n={n} a={alpha} ratio={ratio}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < HARMONICITY_BUDGET;
    report(
        2,
        ok,
        &format!(
            "decay ratios in [{lo:.4}, {hi:.4}] vs {DECAY_RANGE:?}, {floored} residual pairs at round-off floor {RESIDUAL_FLOOR:e}, \
             {} out of range, {elapsed:.2?} < {HARMONICITY_BUDGET:?}",
            bad.len()
        ),
    );
}

#[test]
fn criterion_03_gradient_oracle() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0_f64;
    for k in 0..100 {
        let n = 3 + k % 3;
        let p = params(n, [-2.0, -1.0, 0.0, 0.5][k % 4]);
        let x = in_ball(&mut rng, n, 0.9);
        let zeta = UnitDirection::new(unit(&mut rng, n)).unwrap();
        let grad = kernel_gradient(&p, &BallPoint::new(x.clone()).unwrap(), &zeta).unwrap();
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        for j in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += FD_STEP;
            xm[j] -= FD_STEP;
            let fp = kernel_value(&p, &BallPoint::new(xp).unwrap(), &zeta).unwrap();
            let fm = kernel_value(&p, &BallPoint::new(xm).unwrap(), &zeta).unwrap();
            worst = worst.max(((fp - fm) / (2.0 * FD_STEP) - grad[j]).abs() / gnorm);
        }
    }
    report(3, worst <= GRADIENT_TOL, &format!("max |FD - gradient| / |gradient| = {worst:e} <= {GRADIENT_TOL:e} on 100 pairs"));
}

#[test]
fn criterion_04_origin_consistency() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut worst = 0.0_f64;
    for n in [3, 4, 5] {
        let nf = n as f64;
        for alpha in [-2.0, -1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            for q in [1.0, 1.5, 2.0, 4.0] {
                let got = lp_coefficient(&p, &ExponentPair::from_q(q).unwrap(), &BallPoint::origin(n)).unwrap();
                let ratio = gamma_fn(nf / 2.0).unwrap() * gamma_fn((1.0 + q) / 2.0).unwrap()
                    / (PI.sqrt() * gamma_fn((nf + q) / 2.0).unwrap());
                let expected = p.n_minus_alpha() * c_n_alpha(&p) * ratio.powf(1.0 / q);
                worst = worst.max(rel(got, expected));
            }
        }
    }
    report(4, worst <= ORIGIN_TOL, &format!("max relative gap at x = 0: {worst:e} <= {ORIGIN_TOL:e}"));
}

#[test]
fn criterion_05_regime_closed_forms_match_sweep() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let rule = SphereRule::gauss(SWEEP_DEGREE, SWEEP_DEGREE);
    let mut worst = 0.0_f64;
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in [3, 4] {
        for alpha in [-1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            let (lo, hi) = thresholds(&p);
            let mut qs = vec![lo, hi, 0.5 * (lo + hi), hi + 1.0];
            if lo > 1.0 {
                qs.push(0.5 * (1.0 + lo));
            }
            for q in qs.into_iter().filter(|&q| q >= 1.0) {
                for t in [0.3, 0.6, 0.9] {
                    let (closed, tag) = sup_i_closed(&p, q, t).unwrap();
                    let vals: Vec<f64> = beta_grid(SWEEP_POINTS, PI).map(|b| i_bruteforce_beta(&p, q, t, b, &rule).unwrap()).collect();
                    let (arg, max) = argmax(&vals);
                    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
                    let class_ok = match tag.maximizer {
                        Maximizer::Any => max - min <= SWEEP_TOL * max,
                        Maximizer::Radial => arg == 0 || arg == SWEEP_POINTS - 1,
                        Maximizer::Tangential => arg.abs_diff(SWEEP_POINTS / 2) <= 1,
                    };
                    let gap = rel(max, closed.value());
                    worst = worst.max(gap);
                    cases += 1;
                    if gap > SWEEP_TOL || !class_ok {
                        bad.push(format!("n={n} a={alpha} q={q} t={t} {tag}: gap {gap:e}, argmax index {arg}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < SWEEP_BUDGET;
    report(
        5,
        ok,
        &format!(
            "{cases} cases, max relative gap {worst:e} <= {SWEEP_TOL:e}, {} mismatches {:?}, {elapsed:.2?} < {SWEEP_BUDGET:?}",
            bad.len(),
            bad.first()
        ),
    );
}

#[test]
fn criterion_06_script_j_monotonicity() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut worst = 0.0_f64;
    let mut combos = 0;
    for alpha in [0.0, -1.0] {
        let p = params(3, alpha);
        let (lo, hi) = thresholds(&p);
        for q in [lo, 0.5 * (lo + hi), hi + 1.0] {
            let dir = script_j_monotonicity(classify(&p, q));
            for (r, s) in [(0.6, 0.7), (0.3, 0.2)] {
                combos += 1;
                let vals: Vec<f64> = beta_grid(19, FRAC_PI_2).map(|b| script_j(&p, b, q, r, s).unwrap()).collect();
                for w in vals.windows(2) {
                    let v = match dir {
                        Monotonicity::Constant => (w[1] - w[0]).abs(),
                        Monotonicity::Increasing => w[0] - w[1],
                        Monotonicity::Decreasing => w[1] - w[0],
                    };
                    worst = worst.max(v / w[0].abs().max(1.0));
                }
            }
        }
    }
    report(6, combos == 12 && worst <= MONOTONE_SLACK, &format!("{combos} combinations, max violation {worst:e} <= {MONOTONE_SLACK:e}"));
}

/// Judged against the published closed form, which lacks the factor `(1+|x|)^{-α}`;
/// the corrected form is reported alongside.
#[test]
fn criterion_07_infinity_constant_closed_form() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut bad = Vec::new();
    let (mut worst_printed, mut worst_corrected) = (0.0_f64, 0.0_f64);
    let mut cases = 0;
    for n in [3, 4] {
        let nf = n as f64;
        for alpha in [2.0 - nf, 0.0, 0.5, 1.0 - nf, -1.0 - nf] {
            let p = params(n, alpha);
            for t in [0.3, 0.6, 0.9] {
                cases += 1;
                let sweep: Vec<f64> = beta_grid(SWEEP_POINTS, PI).map(|b| c_infty_direction_beta(&p, t, b).unwrap()).collect();
                let (arg, max) = argmax(&sweep);
                let printed = c_infty_sup_as_printed(&p, t).unwrap();
                let corrected = c_infty_sup(&p, t).unwrap();
                if printed.is_interval() {
                    if !printed.contains(max, RADIAL_TOL) {
                        bad.push(format!("n={n} a={alpha} t={t}: sweep {max} outside [{}, {}]", printed.lower, printed.upper));
                    }
                    if !corrected.contains(max, RADIAL_TOL) {
                        worst_corrected = f64::INFINITY;
                    }
                } else {
                    let gap = rel(max, printed.value());
                    worst_printed = worst_printed.max(gap);
                    worst_corrected = worst_corrected.max(rel(max, corrected.value()));
                    if gap > RADIAL_TOL || !(arg == 0 || arg == SWEEP_POINTS - 1) {
                        bad.push(format!("n={n} a={alpha} t={t}: sweep {max} vs {} (gap {gap:e})", printed.value()));
                    }
                }
            }
        }
    }
    report(
        7,
        bad.is_empty(),
        &format!(
            "{} of {cases} cases off the published form (max gap {worst_printed:e}, first {:?}); \
             with (1+t)^(-alpha) restored max gap {worst_corrected:e}",
            bad.len(),
            bad.first()
        ),
    );
}

#[test]
fn criterion_08_sharpness_at_origin() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut worst = 0.0_f64;
    for n in [3, 4] {
        for alpha in [-1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            let phi = BoundaryData::signed(UnitDirection::axis(n, 0));
            let jac = poisson_jacobian(&phi, &p, &BallPoint::origin(n), &SphereRule::default()).unwrap();
            let g = jac.row(0).iter().map(|v| v * v).sum::<f64>().sqrt();
            let coef = lp_coefficient(&p, &ExponentPair::from_q(1.0).unwrap(), &BallPoint::origin(n)).unwrap();
            worst = worst.max((g - coef).abs());
        }
    }
    report(8, worst <= SHARPNESS_TOL, &format!("max | |grad u(0)| - coefficient | = {worst:e} <= {SHARPNESS_TOL:e}"));
}

#[test]
fn criterion_09_landau_consistency() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let (mut worst_psi, mut worst_eq, mut worst_r) = (f64::MIN, 0.0_f64, 0.0_f64);
    let mut bad = Vec::new();
    for n in [3, 4] {
        for alpha in [-1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            let mut last = f64::INFINITY;
            for m in [1.0, 2.0, 4.0] {
                let res = landau_radius(&p, m).unwrap();
                worst_psi = worst_psi.max(psi(&p, m, res.r0).unwrap());
                worst_eq = worst_eq.max(res.equation_residual.abs());
                let left_positive = (1..10_000)
                    .map(|k| k as f64 * 1e-4)
                    .take_while(|&r| r < res.r0)
                    .all(|r| psi(&p, m, r).unwrap() > 0.0);
                if !left_positive {
                    bad.push(format!("psi not positive left of r0 at n={n} a={alpha} M={m}"));
                }
                if res.r0 >= last {
                    bad.push(format!("r0 not decreasing at n={n} a={alpha} M={m}"));
                }
                last = res.r0;
                worst_r = worst_r.max(rel(res.big_r0, 0.5 * m * res.r0 * res.r0 * big_g(&p, res.r0).unwrap()));
            }
        }
    }
    let ok = worst_psi <= PSI_TOL && worst_eq <= EQUATION_TOL && worst_r <= 1e-14 && bad.is_empty();
    report(
        9,
        ok,
        &format!(
            "max psi(r0) = {worst_psi:e} <= {PSI_TOL:e}, max equation residual {worst_eq:e} <= {EQUATION_TOL:e}, \
             R0 identity gap {worst_r:e}, {} ordering/sign issues",
            bad.len()
        ),
    );
}

#[test]
fn criterion_10_univalence_witness() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut min_ratio = f64::INFINITY;
    let mut min_cover = f64::INFINITY;
    for n in [3, 4] {
        for alpha in [-1.0, 0.0, 0.5] {
            let p = params(n, alpha);
            let phi = normalized_linear_witness(&p).unwrap();
            let report = verify_univalence(&phi, &p, phi.sup_norm(), 10_000, 1_000, 10, &SphereRule::default()).unwrap();
            min_ratio = min_ratio.min(report.min_ratio);
            min_cover = min_cover.min(report.min_boundary_image / report.landau.big_r0);
        }
    }
    let elapsed = start.elapsed();
    let ok = min_ratio > 0.0 && min_cover >= 1.0 - WITNESS_COVER_TOL && elapsed < WITNESS_BUDGET;
    report(
        10,
        ok,
        &format!(
            "min separation ratio {min_ratio:e} > 0, min |u| / R0 on |x| = r0 is {min_cover} >= 1 - {WITNESS_COVER_TOL:e}, \
             {elapsed:.2?} < {WITNESS_BUDGET:?}"
        ),
    );
}

#[test]
fn criterion_11_full_verify_suite() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_alpha-harmonic"))
        .args(["verify", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let ok = out.status.success() && elapsed < VERIFY_BUDGET;
    let stderr = String::from_utf8_lossy(&out.stderr);
    report(11, ok, &format!("exit {:?}, {elapsed:.2?} < {VERIFY_BUDGET:?} {}", out.status.code(), stderr.trim()));
}
