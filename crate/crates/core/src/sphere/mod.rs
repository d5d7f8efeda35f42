//! Integration over `S^{n-1}` against the normalized surface measure σ.

mod gauss;
mod monte_carlo;

use rayon::prelude::*;

pub use gauss::GaussLegendre;
pub(crate) use gauss::pieces;
pub use monte_carlo::{fill_block, monte_carlo_max, monte_carlo_sphere, monte_carlo_sphere_vec, McEstimate, BLOCK};

use crate::error::{domain, Error, Result};
use crate::hypergeom::{gamma_fn, hyp2f1};
use crate::real::{CompensatedSum, Real};

pub const DEFAULT_RADIAL: usize = 256;
pub const DEFAULT_ANGULAR: usize = 512;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// How sphere integrals are evaluated.
///
/// `Gauss` drives the dimension-reduced rules: zonal integrands use `radial` nodes,
/// bizonal ones use `radial × angular` nodes. `MonteCarlo` samples the full sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereRule {
    Gauss { radial: usize, angular: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for SphereRule {
    fn default() -> Self {
        Self::Gauss { radial: DEFAULT_RADIAL, angular: DEFAULT_ANGULAR }
    }
}

impl SphereRule {
    pub fn gauss(radial: usize, angular: usize) -> Self {
        Self::Gauss { radial, angular }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self::MonteCarlo { samples, seed }
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, Self::Gauss { .. })
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            Self::Gauss { radial, angular } if radial == 0 || angular == 0 => {
                Err(Error::Quadrature("quadrature degrees must be positive".into()))
            }
            Self::MonteCarlo { samples, .. } if samples < 2 => {
                Err(Error::Quadrature(format!("Monte Carlo needs at least 2 samples, got {samples}")))
            }
            _ => Ok(()),
        }
    }
}

/// A sphere integral together with its error estimate (zero for deterministic rules).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereIntegral<T> {
    pub value: T,
    pub stderr: T,
}

impl<T: Real> SphereIntegral<T> {
    fn exact(value: T) -> Self {
        Self { value, stderr: T::zero() }
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        return Err(domain(format!("sphere reductions need n >= 3, got {n}")));
    }
    Ok(())
}

fn finite<T: Real>(value: T) -> Result<T> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Quadrature(format!("integrand produced non-finite value {value}")))
    }
}

/// `1 / ∫_0^π sin^{n-2}θ dθ`, the density of `ζ₁ = cos θ` under σ on `S^{n-1}`
/// (valid for `n >= 2`).
pub fn zonal_normalizer<T: Real>(n: usize) -> T {
    let nn = T::from_usize_lossy(n);
    let g = gamma_fn(nn * T::half()).unwrap_or_else(|_| T::nan())
        / gamma_fn((nn - T::one()) * T::half()).unwrap_or_else(|_| T::nan());
    g / T::PI().sqrt()
}

/// Componentwise `∫ f(ζ₁) dσ(ζ)` for `K` integrands sharing one pass over the nodes,
/// with breakpoints given as angles `θ ∈ (0, π)`, `ζ₁ = cos θ`.
pub fn reduce_zonal_multi<T, F, const K: usize>(
    n: usize,
    f: F,
    rule: &SphereRule,
    theta_breaks: &[T],
) -> Result<[SphereIntegral<T>; K]>
where
    T: Real,
    F: Fn(T) -> [T; K] + Sync,
{
    check_dimension(n)?;
    rule.validate()?;
    match *rule {
        SphereRule::Gauss { radial, .. } => {
            let gl = GaussLegendre::of_degree(radial);
            let mut acc = [CompensatedSum::new(); K];
            let power = (n - 2) as i32;
            for (a, b) in pieces(T::zero(), T::PI(), theta_breaks) {
                for (theta, w) in gl.mapped(a, b) {
                    let weight = w * theta.sin().powi(power);
                    for (slot, v) in acc.iter_mut().zip(f(theta.cos())) {
                        slot.add(weight * v);
                    }
                }
            }
            let scale = zonal_normalizer::<T>(n);
            exact_all(acc.map(|a| a.value() * scale))
        }
        SphereRule::MonteCarlo { samples, seed } => {
            let est = monte_carlo_sphere_vec(n, K, |z: &[T], out: &mut [T]| out.copy_from_slice(&f(z[0])), samples, seed);
            estimates(est)
        }
    }
}

fn exact_all<T: Real, const K: usize>(values: [T; K]) -> Result<[SphereIntegral<T>; K]> {
    let mut out = [SphereIntegral::exact(T::zero()); K];
    for (o, v) in out.iter_mut().zip(values) {
        *o = SphereIntegral::exact(finite(v)?);
    }
    Ok(out)
}

fn estimates<T: Real, const K: usize>(est: Vec<McEstimate<T>>) -> Result<[SphereIntegral<T>; K]> {
    let mut out = [SphereIntegral::exact(T::zero()); K];
    for (o, e) in out.iter_mut().zip(est) {
        *o = SphereIntegral { value: finite(e.estimate)?, stderr: e.stderr };
    }
    Ok(out)
}

/// `∫ f(ζ₁) dσ(ζ)` with breakpoints given as angles `θ ∈ (0, π)`, `ζ₁ = cos θ`.
pub fn reduce_zonal_split<T, F>(n: usize, f: F, rule: &SphereRule, theta_breaks: &[T]) -> Result<SphereIntegral<T>>
where
    T: Real,
    F: Fn(T) -> T + Sync,
{
    reduce_zonal_multi(n, |s| [f(s)], rule, theta_breaks).map(|[v]| v)
}

/// `∫ f(ζ₁) dσ(ζ)` reduced to one dimension.
pub fn reduce_zonal<T, F>(n: usize, f: F, rule: &SphereRule) -> Result<SphereIntegral<T>>
where
    T: Real,
    F: Fn(T) -> T + Sync,
{
    reduce_zonal_split(n, f, rule, &[])
}

/// Componentwise `∫ f(ζ₁, ζ₂) dσ(ζ)` via polar coordinates `(ζ₁, ζ₂) = r (cos θ, sin θ)`
/// with `r = sin u`, which removes the `(1 - r²)^{(n-4)/2}` endpoint singularity at `n = 3`.
///
/// `radial_breaks` are values of `r` where the integrand has a kink, and
/// `angular_breaks(r)` lists the angles in `(-π, π)` where it jumps on the circle of
/// radius `r`.
pub fn reduce_bizonal_multi<T, F, B, const K: usize>(
    n: usize,
    f: F,
    rule: &SphereRule,
    radial_breaks: &[T],
    angular_breaks: B,
) -> Result<[SphereIntegral<T>; K]>
where
    T: Real,
    F: Fn(T, T) -> [T; K] + Sync,
    B: Fn(T) -> Vec<T> + Sync,
{
    check_dimension(n)?;
    rule.validate()?;
    match *rule {
        SphereRule::Gauss { radial, angular } => {
            let gl_r = GaussLegendre::of_degree(radial);
            let gl_t = GaussLegendre::of_degree(angular);
            let u_breaks: Vec<T> = radial_breaks
                .iter()
                .filter(|r| **r > T::zero() && **r < T::one())
                .map(|r| r.asin())
                .collect();
            let nodes: Vec<(T, T)> = pieces(T::zero(), T::FRAC_PI_2(), &u_breaks)
                .into_iter()
                .flat_map(|(a, b)| gl_r.mapped(a, b).collect::<Vec<_>>())
                .collect();
            let power = (n - 3) as i32;
            let rows: Vec<[T; K]> = nodes
                .par_iter()
                .map(|&(u, w)| {
                    let r = u.sin();
                    let weight = w * u.cos().powi(power) * r;
                    let mut acc = [CompensatedSum::new(); K];
                    let breaks = angular_breaks(r);
                    for (a, b) in pieces(-T::PI(), T::PI(), &breaks) {
                        for (theta, wt) in gl_t.mapped(a, b) {
                            for (slot, v) in acc.iter_mut().zip(f(r * theta.cos(), r * theta.sin())) {
                                slot.add(wt * v);
                            }
                        }
                    }
                    acc.map(|a| weight * a.value())
                })
                .collect();
            let mut total = [CompensatedSum::new(); K];
            for row in rows {
                for (slot, v) in total.iter_mut().zip(row) {
                    slot.add(v);
                }
            }
            let scale = T::from_usize_lossy(n - 2) / (T::two() * T::PI());
            exact_all(total.map(|a| a.value() * scale))
        }
        SphereRule::MonteCarlo { samples, seed } => {
            let est = monte_carlo_sphere_vec(
                n,
                K,
                |z: &[T], out: &mut [T]| out.copy_from_slice(&f(z[0], z[1])),
                samples,
                seed,
            );
            estimates(est)
        }
    }
}

/// Scalar form of [`reduce_bizonal_multi`].
pub fn reduce_bizonal_split<T, F, B>(
    n: usize,
    f: F,
    rule: &SphereRule,
    radial_breaks: &[T],
    angular_breaks: B,
) -> Result<SphereIntegral<T>>
where
    T: Real,
    F: Fn(T, T) -> T + Sync,
    B: Fn(T) -> Vec<T> + Sync,
{
    reduce_bizonal_multi(n, |a, b| [f(a, b)], rule, radial_breaks, angular_breaks).map(|[v]| v)
}

/// `∫ f(ζ₁, ζ₂) dσ(ζ)` reduced to two dimensions.
pub fn reduce_bizonal<T, F>(n: usize, f: F, rule: &SphereRule) -> Result<SphereIntegral<T>>
where
    T: Real,
    F: Fn(T, T) -> T + Sync,
{
    reduce_bizonal_split(n, f, rule, &[], |_| Vec::new())
}

/// Componentwise `∫ f(ζ₁, ζ₂) dσ(ζ)` in axial coordinates `ζ₁ = cos φ`,
/// `ζ₂ = sin φ cos ψ` with `φ, ψ ∈ [0, π]`.
///
/// Unlike the polar form, a jump across a hyperplane `{ζ₁ = h}` sits at the fixed
/// angle `φ = arccos h`, so it is handled exactly by `phi_breaks`. `psi_breaks` lists
/// angles in `(0, π)` where the integrand varies rapidly in `ψ`.
pub fn reduce_axial_multi<T, F, const K: usize>(
    n: usize,
    f: F,
    rule: &SphereRule,
    phi_breaks: &[T],
    psi_breaks: &[T],
) -> Result<[SphereIntegral<T>; K]>
where
    T: Real,
    F: Fn(T, T) -> [T; K] + Sync,
{
    check_dimension(n)?;
    rule.validate()?;
    match *rule {
        SphereRule::Gauss { radial, angular } => {
            let gl_phi = GaussLegendre::of_degree(radial);
            let gl_psi = GaussLegendre::of_degree(angular);
            let nodes: Vec<(T, T)> = pieces(T::zero(), T::PI(), phi_breaks)
                .into_iter()
                .flat_map(|(a, b)| gl_phi.mapped(a, b).collect::<Vec<_>>())
                .collect();
            let psi_nodes: Vec<(T, T)> = pieces(T::zero(), T::PI(), psi_breaks)
                .into_iter()
                .flat_map(|(a, b)| gl_psi.mapped(a, b).collect::<Vec<_>>())
                .map(|(psi, w)| (psi.cos(), w * psi.sin().powi((n - 3) as i32)))
                .collect();
            let outer = (n - 2) as i32;
            let rows: Vec<[T; K]> = nodes
                .par_iter()
                .map(|&(phi, w)| {
                    let (s, sin_phi) = (phi.cos(), phi.sin());
                    let mut acc = [CompensatedSum::new(); K];
                    for &(cos_psi, wt) in &psi_nodes {
                        for (slot, v) in acc.iter_mut().zip(f(s, sin_phi * cos_psi)) {
                            slot.add(wt * v);
                        }
                    }
                    let weight = w * sin_phi.powi(outer);
                    acc.map(|a| weight * a.value())
                })
                .collect();
            let mut total = [CompensatedSum::new(); K];
            for row in rows {
                for (slot, v) in total.iter_mut().zip(row) {
                    slot.add(v);
                }
            }
            let scale = zonal_normalizer::<T>(n) * zonal_normalizer::<T>(n - 1);
            exact_all(total.map(|a| a.value() * scale))
        }
        SphereRule::MonteCarlo { samples, seed } => {
            let est = monte_carlo_sphere_vec(
                n,
                K,
                |z: &[T], out: &mut [T]| out.copy_from_slice(&f(z[0], z[1])),
                samples,
                seed,
            );
            estimates(est)
        }
    }
}

/// `∫ |x - ζ|^{-2λ} dσ(ζ) = 2F1(λ, λ - n/2 + 1; n/2; t)` with `t = |x|²`.
pub fn distance_power_mean<T: Real>(n: usize, lambda: T, t: T) -> Result<T> {
    check_dimension(n)?;
    if !(t >= T::zero() && t < T::one()) {
        return Err(domain(format!("distance_power_mean needs t = |x|^2 in [0, 1), got {t}")));
    }
    let half_n = T::from_usize_lossy(n) * T::half();
    hyp2f1(lambda, lambda - half_n + T::one(), half_n, t)
}

/// The Euler-transformed form `(1 - t)^{n-2λ-1} 2F1(n/2 - λ, n - λ - 1; n/2; t)`.
pub fn distance_power_mean_euler<T: Real>(n: usize, lambda: T, t: T) -> Result<T> {
    check_dimension(n)?;
    if !(t >= T::zero() && t < T::one()) {
        return Err(domain(format!("distance_power_mean needs t = |x|^2 in [0, 1), got {t}")));
    }
    let nn = T::from_usize_lossy(n);
    let half_n = nn * T::half();
    let prefactor = (T::one() - t).powf(nn - T::two() * lambda - T::one());
    Ok(prefactor * hyp2f1(half_n - lambda, nn - lambda - T::one(), half_n, t)?)
}
