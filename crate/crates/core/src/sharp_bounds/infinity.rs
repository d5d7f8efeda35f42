//! Constants for `q = ∞`: the directional supremum of `|⟨∇P_α(x, ·), l⟩|`, its maximum
//! over directions, and the `L¹` gradient coefficient.

use crate::error::{domain, Result};
use crate::kernel::{c_n_alpha, BallPoint, ProblemParams, UnitDirection};
use crate::real::{dot, Real};

use super::BoundValue;

const THETA_GRID: usize = 4096;
const GOLDEN_TOL: f64 = 1e-12;

/// `A(ρ)` and `B(ρ)` with `⟨∇P, n_x⟩ ∝ -(A + B cos θ)` on the great circle through `n_x`.
fn radial_parts<T: Real>(params: &ProblemParams<T>, rho: T) -> (T, T) {
    let n = params.dim();
    let a = params.alpha();
    let three = T::lit(3.0);
    let big_a = (T::two() - three * a + n) * rho + (T::two() - a - n) * rho.powi(3);
    let big_b = a - n + (n + three * a - T::lit(4.0)) * rho * rho;
    (big_a, big_b)
}

/// The reduced directional profile; its maximum over `θ` and the sign is `𝐂(x; l)` up
/// to the factor `C (1-ρ²)^{-α}`.
fn profile<T: Real>(params: &ProblemParams<T>, rho: T, beta: T) -> impl Fn(T) -> T {
    let d = params.n_minus_alpha();
    let (big_a, big_b) = radial_parts(params, rho);
    let defect = T::one() - rho * rho;
    let power = d * T::half() + T::one();
    let (cb, sb) = (beta.cos(), beta.sin());
    move |theta: T| {
        let (s, c) = theta.sin_cos();
        let tangential = d * defect * sb * s;
        let radial = (big_a + big_b * c) * cb;
        let dist = (T::one() - rho).sq() + T::two() * rho * (T::one() - c);
        (tangential.abs() + radial.abs()) / dist.powf(power)
    }
}

/// Grid maximum over `[0, 2π)` followed by golden-section refinement around it.
fn maximize_periodic<T: Real>(f: impl Fn(T) -> T) -> T {
    let step = T::two() * T::PI() / T::from_usize_lossy(THETA_GRID);
    let (mut best_k, mut best) = (0, T::neg_infinity());
    for k in 0..THETA_GRID {
        let v = f(step * T::from_usize_lossy(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let center = step * T::from_usize_lossy(best_k);
    let (mut lo, mut hi) = (center - step, center + step);
    let ratio = (T::lit(5.0).sqrt() - T::one()) * T::half();
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > T::lit(GOLDEN_TOL) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    best.max(f1).max(f2)
}

/// `𝐂_{α,∞}(x; l) = sup_ζ |⟨∇P_α(x, ζ), l⟩|`.
pub fn c_infty_direction<T: Real>(params: &ProblemParams<T>, x: &BallPoint<T>, l: &UnitDirection<T>) -> Result<T> {
    if x.dim() != params.n() || l.dim() != params.n() {
        return Err(domain("point and direction must have dimension n"));
    }
    let rho = x.norm();
    let beta = if rho == T::zero() {
        T::zero()
    } else {
        (dot(x.coords(), l.coords()) / rho).max(-T::one()).min(T::one()).acos()
    };
    c_infty_direction_beta(params, rho, beta)
}

/// [`c_infty_direction`] at `|x| = ρ` and angle `β` between `n_x` and `l`.
pub fn c_infty_direction_beta<T: Real>(params: &ProblemParams<T>, rho: T, beta: T) -> Result<T> {
    if !(rho >= T::zero() && rho < T::one()) {
        return Err(domain(format!("|x| must lie in [0, 1), got {rho}")));
    }
    if rho == T::zero() {
        return Ok(params.n_minus_alpha() * c_n_alpha(params));
    }
    let scale = c_n_alpha(params) * (T::one() - rho * rho).powf(-params.alpha());
    Ok(scale * maximize_periodic(profile(params, rho, beta)))
}

fn radial_value<T: Real>(params: &ProblemParams<T>, t: T, sign: T) -> T {
    let n = params.dim();
    let a = params.alpha();
    c_n_alpha(params) * (params.n_minus_alpha() + sign * (n + a - T::two()) * t)
        / ((T::one() + t).powf(a) * (T::one() - t).powi(params.n() as i32))
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if !(t >= T::zero() && t < T::one()) {
        return Err(domain(format!("|x| must lie in [0, 1), got {t}")));
    }
    Ok(())
}

/// `sup_l 𝐂_{α,∞}(x; l)`: exact (radial maximizer) for `α ≥ 2-n`, an enclosure otherwise.
pub fn c_infty_sup<T: Real>(params: &ProblemParams<T>, t: T) -> Result<BoundValue<T>> {
    check_t(t)?;
    let lower = radial_value(params, t, T::one());
    if params.alpha() >= T::two() - params.dim() {
        Ok(BoundValue::exact(lower))
    } else {
        Ok(BoundValue::interval(lower, radial_value(params, t, -T::one())))
    }
}

/// The published form of [`c_infty_sup`], which omits the factor `(1+|x|)^{-α}`.
pub fn c_infty_sup_as_printed<T: Real>(params: &ProblemParams<T>, t: T) -> Result<BoundValue<T>> {
    check_t(t)?;
    let shift = (T::one() + t).powf(params.alpha());
    let v = c_infty_sup(params, t)?;
    Ok(BoundValue { lower: v.lower * shift, upper: v.upper * shift, exact: v.exact })
}

/// Certified bound on `|∇u(x)|` per unit `‖φ‖_{L¹}`.
pub fn l1_coefficient<T: Real>(params: &ProblemParams<T>, t: T) -> Result<T> {
    Ok(c_infty_sup(params, t)?.upper)
}

/// `C (n-α ± (n+α-2)|x|) / (1-|x|)^n` with the sign chosen by `α ⋛ 2-n`, as published.
pub fn l1_coefficient_as_printed<T: Real>(params: &ProblemParams<T>, t: T) -> Result<T> {
    Ok(c_infty_sup_as_printed(params, t)?.upper)
}

/// The rational function whose monotonicity in `t` decides the radial maximizer.
pub fn k_alpha<T: Real>(params: &ProblemParams<T>, rho: T, t: T) -> Result<T> {
    check_k_args(rho, t)?;
    let n = params.dim();
    let a = params.alpha();
    let d = params.n_minus_alpha();
    let r2 = rho * rho;
    let middle = T::two() * (T::two() - T::lit(3.0) * a * (T::two() - a) - (n - T::two()) * n) * r2;
    let slope = T::lit(4.0) * (T::one() - a) * rho * (d + (T::two() - a - n) * r2) * t;
    Ok((d * d + middle + (n + a - T::two()).sq() * r2 * r2 - slope) / (T::one() + r2 - T::two() * rho * t))
}

/// `[(n-α)²(1-ρ²)²(1-t²) + (A + Bt)²] / (1+ρ²-2ρt)²`, the squared directional profile
/// after maximizing over the tangential angle.
pub fn k_alpha_factored<T: Real>(params: &ProblemParams<T>, rho: T, t: T) -> Result<T> {
    check_k_args(rho, t)?;
    let (big_a, big_b) = radial_parts(params, rho);
    let d = params.n_minus_alpha();
    let r2 = rho * rho;
    let num = (d * (T::one() - r2)).sq() * (T::one() - t * t) + (big_a + big_b * t).sq();
    Ok(num / (T::one() + r2 - T::two() * rho * t).sq())
}

fn check_k_args<T: Real>(rho: T, t: T) -> Result<()> {
    if !(rho > T::zero() && rho < T::one()) || !(t.abs() <= T::one()) {
        return Err(domain(format!("K_alpha needs rho in (0, 1) and t in [-1, 1], got {rho}, {t}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(n: usize, alpha: f64) -> ProblemParams<f64> {
        ProblemParams::new(n, alpha).unwrap()
    }

    #[test]
    fn origin_value() {
        let params = p(4, -0.7);
        let want = params.n_minus_alpha() * c_n_alpha(&params);
        for beta in [0.0, 0.4, 1.5] {
            assert_eq!(c_infty_direction_beta(&params, 0.0, beta).unwrap(), want);
        }
        assert_relative_eq!(c_infty_sup(&params, 0.0).unwrap().upper, want, max_relative = 1e-15);
        assert_relative_eq!(c_infty_sup(&params, 0.0).unwrap().lower, want, max_relative = 1e-15);
    }

    #[test]
    fn harmonic_example() {
        let params = p(3, 0.0);
        let v = c_infty_sup(&params, 0.5).unwrap();
        assert!(v.exact);
        assert_relative_eq!(v.upper, 28.0, max_relative = 1e-14);
        assert_relative_eq!(c_infty_direction_beta(&params, 0.5, 0.0).unwrap(), 28.0, max_relative = 1e-10);
    }

    #[test]
    fn direction_matches_direct_maximum() {
        // max over a (θ, γ) grid of |⟨∇P(x, ζ), l⟩| with ζ = (cos θ, sin θ cos γ, sin θ sin γ)
        let params = p(3, 0.5);
        let rho = 0.6;
        let beta = 0.9;
        let x = BallPoint::on_axis(3, rho).unwrap();
        let l = UnitDirection::l_beta(3, beta);
        let mut best: f64 = 0.0;
        for i in 0..=2000 {
            let theta = std::f64::consts::PI * i as f64 / 2000.0;
            for gamma in [0.0, std::f64::consts::PI] {
                let z = UnitDirection::new(vec![theta.cos(), theta.sin() * gamma.cos(), theta.sin() * gamma.sin()]).unwrap();
                let g = crate::kernel::kernel_gradient(&params, &x, &z).unwrap();
                best = best.max(dot(&g, l.coords()).abs());
            }
        }
        let got = c_infty_direction(&params, &x, &l).unwrap();
        assert!(got >= best * (1.0 - 1e-12));
        assert_relative_eq!(got, best, max_relative = 1e-5);
    }

    #[test]
    fn radial_direction_attains_sup_when_alpha_at_least_two_minus_n() {
        for (n, alpha) in [(3, -1.0), (3, 0.5), (4, 0.0)] {
            let params = p(n, alpha);
            for t in [0.3, 0.6, 0.9] {
                let closed = c_infty_sup(&params, t).unwrap().upper;
                let radial = c_infty_direction_beta(&params, t, 0.0).unwrap();
                assert_relative_eq!(radial, closed, max_relative = 1e-9);
                for k in 1..=8 {
                    let beta = std::f64::consts::PI * k as f64 / 8.0;
                    assert!(c_infty_direction_beta(&params, t, beta).unwrap() <= closed * (1.0 + 1e-9));
                }
            }
        }
    }

    #[test]
    fn printed_forms_differ_only_by_shift() {
        let params = p(3, 0.5);
        let t = 0.6;
        let fixed = l1_coefficient(&params, t).unwrap();
        let printed = l1_coefficient_as_printed(&params, t).unwrap();
        assert_relative_eq!(printed, fixed * 1.6_f64.powf(0.5), max_relative = 1e-14);
        let harmonic = p(3, 0.0);
        assert_eq!(l1_coefficient(&harmonic, t).unwrap(), l1_coefficient_as_printed(&harmonic, t).unwrap());
    }

    #[test]
    fn k_alpha_endpoints_and_factored_form() {
        for (n, alpha) in [(3, 0.0), (4, -3.0), (5, 0.7)] {
            let params = p(n, alpha);
            let (nn, rho) = (n as f64, 0.4);
            let k1 = (nn - alpha + (nn + alpha - 2.0) * rho).powi(2);
            let km1 = (alpha - nn + (nn + alpha - 2.0) * rho).powi(2);
            assert_relative_eq!(k_alpha(&params, rho, 1.0).unwrap(), k1, max_relative = 1e-12);
            assert_relative_eq!(k_alpha(&params, rho, -1.0).unwrap(), km1, max_relative = 1e-12);
            for t in [-0.7, 0.0, 0.3, 0.9] {
                assert_relative_eq!(k_alpha(&params, rho, t).unwrap(), k_alpha_factored(&params, rho, t).unwrap(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn k_alpha_slope_sign() {
        for (n, alpha) in [(3, 0.5), (3, -1.0), (3, -2.0), (4, -4.0)] {
            let params = p(n, alpha);
            let sign = ((n as f64 - alpha) * (n as f64 + alpha - 2.0)).signum();
            for k in 0..20 {
                let t = -0.95 + 0.1 * k as f64;
                let d = k_alpha(&params, 0.5, t + 1e-4).unwrap() - k_alpha(&params, 0.5, t - 1e-4).unwrap();
                if sign == 0.0 {
                    assert!(d.abs() < 1e-9);
                } else {
                    assert_eq!(d.signum(), sign);
                }
            }
        }
    }
}
