//! Landau-type univalence radius for normalized α-harmonic maps: the functions `g` and
//! `G`, the lower bound `N*` on `l(Du(0))`, the root `r₀` of `ψ`, the covered radius
//! `R₀`, and an empirical injectivity check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Error, Result};
use crate::hypergeom::{gamma_fn, hyp2f1};
use crate::kernel::{c_n_alpha, BallPoint, ProblemParams};
use crate::matrix::Matrix;
use crate::poisson::{poisson_extend, poisson_jacobian, BoundaryData};
use crate::real::{norm, Real};
use crate::sphere::SphereRule;

pub use crate::matrix::{matrix_functionals, MatrixFunctionals};

/// Below this radius `g` is evaluated from its Taylor expansion.
pub const G_TAYLOR_RADIUS: f64 = 1e-4;
/// Points in the grid for each inner maximum of `G`.
pub const INNER_GRID: usize = 1024;
/// Points in the sign scan that brackets `r₀`.
pub const SCAN_GRID: usize = 10_000;

const GOLDEN_TOL: f64 = 1e-12;

fn check_r<T: Real>(r: T) -> Result<()> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(domain(format!("r must lie in [0, 1), got {r}")));
    }
    Ok(())
}

fn check_m<T: Real>(m: T) -> Result<()> {
    if !(m > T::zero()) || !m.is_finite() {
        return Err(domain(format!("M must be positive and finite, got {m}")));
    }
    Ok(())
}

/// `g(r) = (2(1+r²)^{(n+2-α)/2} - (1-r)^{n+2-α} - (1-r²)^{1-α}) / r`, `g(0) = n+2-α`.
pub fn g_fn<T: Real>(params: &ProblemParams<T>, r: T) -> Result<T> {
    check_r(r)?;
    let two_m = params.dim() + T::two() - params.alpha();
    let m = two_m * T::half();
    let one = T::one();
    if r < T::lit(G_TAYLOR_RADIUS) {
        let c2 = T::lit(3.0) * m - T::two() * m * m + one - params.alpha();
        let c3 = two_m * (two_m - one) * (two_m - T::two()) / T::lit(6.0);
        return Ok(two_m + r * (c2 + r * c3));
    }
    let num = T::two() * (one + r * r).powf(m) - (one - r).powf(two_m) - (one - r * r).powf(one - params.alpha());
    Ok(num / r)
}

/// Maximum of `f` on `[0, r]`: grid, then golden-section around the best grid point.
fn inner_max<T: Real>(r: T, f: impl Fn(T) -> Result<T>) -> Result<T> {
    if r == T::zero() {
        return f(T::zero());
    }
    let last = INNER_GRID - 1;
    let step = r / T::from_usize_lossy(last);
    let (mut best_k, mut best) = (0, T::neg_infinity());
    for k in 0..=last {
        let v = f(step * T::from_usize_lossy(k))?;
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let center = step * T::from_usize_lossy(best_k);
    let (mut lo, mut hi) = ((center - step).max(T::zero()), (center + step).min(r));
    let ratio = (T::lit(5.0).sqrt() - T::one()) * T::half();
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > T::lit(GOLDEN_TOL) * r.max(T::one()) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(best.max(f1).max(f2))
}

/// The three summands of `G(r)`.
pub fn big_g_terms<T: Real>(params: &ProblemParams<T>, r: T) -> Result<[T; 3]> {
    check_r(r)?;
    let n = params.dim();
    let a = params.alpha();
    let half = T::half();
    let c = c_n_alpha(params);
    let d = params.n_minus_alpha();
    let one = T::one();
    let f1 = |t: T| hyp2f1(a * half, (n + a) * half - one, n * half, t * t);
    let f2 = |t: T| hyp2f1(a * half - one, (n + a) * half - T::two(), n * half, t * t);
    let f3 = |t: T| Ok(f2(t)? * g_fn(params, t)?);
    let defect = one - r * r;
    Ok([
        T::two() * (one - a) * c * inner_max(r, f1)? / defect,
        d * c * inner_max(r, f2)? / (defect * defect),
        d * c * inner_max(r, f3)? / defect.powf(T::lit(3.0) - a),
    ])
}

/// `G(r)`, the sum of [`big_g_terms`].
pub fn big_g<T: Real>(params: &ProblemParams<T>, r: T) -> Result<T> {
    let [a, b, c] = big_g_terms(params, r)?;
    Ok(a + b + c)
}

/// `N* = M (n-α) C Γ(n/2) / (√π Γ((n+1)/2))`.
pub fn n_star<T: Real>(params: &ProblemParams<T>, m: T) -> Result<T> {
    check_m(m)?;
    let n = params.dim();
    let half = T::half();
    Ok(m * params.n_minus_alpha() * c_n_alpha(params) * gamma_fn(n * half)?
        / (T::PI().sqrt() * gamma_fn((n + T::one()) * half)?))
}

/// `ψ(r) = N*^{1-n} - M r G(r)`.
pub fn psi<T: Real>(params: &ProblemParams<T>, m: T, r: T) -> Result<T> {
    let ns = n_star(params, m)?;
    Ok(ns.powi(1 - params.n() as i32) - m * r * big_g(params, r)?)
}

/// Right-hand side of `M^n r G(r) = (√π Γ((n+1)/2) / ((n-α) C Γ(n/2)))^{n-1}`.
pub fn landau_equation_rhs<T: Real>(params: &ProblemParams<T>) -> Result<T> {
    let n = params.dim();
    let half = T::half();
    let base = T::PI().sqrt() * gamma_fn((n + T::one()) * half)?
        / (params.n_minus_alpha() * c_n_alpha(params) * gamma_fn(n * half)?);
    Ok(base.powi(params.n() as i32 - 1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LandauResult<T> {
    pub r0: T,
    /// Radius of the ball about `u(0)` covered by `u(B(r₀))`.
    pub big_r0: T,
    pub m: T,
    pub psi_residual: T,
    /// `M^n r₀ G(r₀) / rhs - 1`.
    pub equation_residual: T,
    pub bracket: (T, T),
}

/// Smallest positive root `r₀` of `ψ` and `R₀ = (M/2) r₀² G(r₀)`.
pub fn landau_radius<T: Real>(params: &ProblemParams<T>, m: T) -> Result<LandauResult<T>> {
    check_m(m)?;
    let step = T::one() / T::from_usize_lossy(SCAN_GRID);
    let mut lo = T::zero();
    let mut hi = None;
    for k in 1..SCAN_GRID {
        let r = step * T::from_usize_lossy(k);
        if psi(params, m, r)? <= T::zero() {
            hi = Some(r);
            break;
        }
        lo = r;
    }
    let hi = hi.ok_or_else(|| Error::Infeasible(format!("psi has no sign change on (0, 1) for M = {m}")))?;
    let bracket = (lo, hi);
    let (mut a, mut b) = bracket;
    for _ in 0..200 {
        let mid = (a + b) * T::half();
        if mid <= a || mid >= b {
            break;
        }
        if psi(params, m, mid)? > T::zero() {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (pa, pb) = (psi(params, m, a)?, psi(params, m, b)?);
    let (r0, psi_residual) = if pa.abs() <= pb.abs() { (a, pa) } else { (b, pb) };
    let g = big_g(params, r0)?;
    let lhs = m.powi(params.n() as i32) * r0 * g;
    Ok(LandauResult {
        r0,
        big_r0: m * T::half() * r0 * r0 * g,
        m,
        psi_residual,
        equation_residual: lhs / landau_equation_rhs(params)? - T::one(),
        bracket,
    })
}

/// Linear boundary data `c ζ` with `c = n / ((n-α) C)`, so that `u(0) = 0` and `Du(0) = I`.
pub fn normalized_linear_witness<T: Real>(params: &ProblemParams<T>) -> Result<BoundaryData<T>> {
    let c = params.dim() / (params.n_minus_alpha() * c_n_alpha(params));
    BoundaryData::linear(Matrix::identity(params.n()).scaled(c))
}

/// Outcome of [`verify_univalence`].
#[derive(Clone, Debug, PartialEq)]
pub struct UnivalenceReport<T> {
    pub landau: LandauResult<T>,
    /// `min |u(x') - u(x'')| / |x' - x''|` over the sampled pairs.
    pub min_ratio: T,
    pub worst_pair: (Vec<T>, Vec<T>),
    /// `min |u(ς) - u(0)|` over sampled `|ς| = r₀`.
    pub min_boundary_image: T,
    pub worst_boundary_point: Vec<T>,
    pub injective: bool,
    pub covers: bool,
}

impl<T: Real> UnivalenceReport<T> {
    pub fn passed(&self) -> bool {
        self.injective && self.covers
    }
}

fn random_direction<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-300 {
            return v.iter().map(|c| T::lit(c / r)).collect();
        }
    }
}

fn random_in_ball<T: Real>(rng: &mut ChaCha8Rng, n: usize, radius: T) -> Vec<T> {
    let u: f64 = rng.random();
    let scale = radius * T::lit(u.powf(1.0 / n as f64));
    random_direction::<T>(rng, n).into_iter().map(|c| c * scale).collect()
}

/// Samples `pairs` point pairs in `B(r₀)` and `boundary_samples` points on `|ς| = r₀`,
/// checking injectivity and that `|u(ς) - u(0)| ≥ R₀`.
pub fn verify_univalence<T: Real>(
    phi: &BoundaryData<T>,
    params: &ProblemParams<T>,
    m: T,
    pairs: usize,
    boundary_samples: usize,
    seed: u64,
    rule: &SphereRule,
) -> Result<UnivalenceReport<T>> {
    let n = params.n();
    if phi.value_dim() != n {
        return Err(Error::Univalence(format!("boundary data must be R^{n}-valued, got {} components", phi.value_dim())));
    }
    if phi.sup_norm() > m * (T::one() + T::lit(1e-12)) {
        return Err(Error::Univalence(format!("sup |phi| = {} exceeds M = {m}", phi.sup_norm())));
    }
    let origin = BallPoint::origin(n);
    let u0 = poisson_extend(phi, params, &origin, rule)?;
    let jac = matrix_functionals(&poisson_jacobian(phi, params, &origin, rule)?)?;
    let tol = T::lit(1e-8);
    if norm(&u0) > tol || (jac.det - T::one()).abs() > tol {
        return Err(Error::Univalence(format!(
            "need u(0) = 0 and J_u(0) = 1, got |u(0)| = {}, J_u(0) = {}",
            norm(&u0),
            jac.det
        )));
    }
    let landau = landau_radius(params, m)?;
    let radius = landau.r0 * (T::one() - T::lit(1e-9));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = |p: &[T]| -> Result<Vec<T>> { poisson_extend(phi, params, &BallPoint::new(p.to_vec())?, rule) };

    let mut min_ratio = T::infinity();
    let mut worst_pair = (Vec::new(), Vec::new());
    for _ in 0..pairs {
        let (a, b) = loop {
            let a = random_in_ball::<T>(&mut rng, n, radius);
            let b = random_in_ball::<T>(&mut rng, n, radius);
            if a != b {
                break (a, b);
            }
        };
        let (ua, ub) = (u(&a)?, u(&b)?);
        let du: Vec<T> = ua.iter().zip(&ub).map(|(&x, &y)| x - y).collect();
        let dx: Vec<T> = a.iter().zip(&b).map(|(&x, &y)| x - y).collect();
        let ratio = norm(&du) / norm(&dx);
        if ratio < min_ratio {
            min_ratio = ratio;
            worst_pair = (a, b);
        }
    }

    let mut min_image = T::infinity();
    let mut worst_boundary = Vec::new();
    for _ in 0..boundary_samples {
        let s: Vec<T> = random_direction::<T>(&mut rng, n).into_iter().map(|c| c * landau.r0).collect();
        let us = u(&s)?;
        let d: Vec<T> = us.iter().zip(&u0).map(|(&x, &y)| x - y).collect();
        let v = norm(&d);
        if v < min_image {
            min_image = v;
            worst_boundary = s;
        }
    }

    Ok(UnivalenceReport {
        injective: min_ratio > T::zero(),
        covers: min_image >= landau.big_r0 * (T::one() - T::lit(1e-6)),
        landau,
        min_ratio,
        worst_pair,
        min_boundary_image: min_image,
        worst_boundary_point: worst_boundary,
    })
}
