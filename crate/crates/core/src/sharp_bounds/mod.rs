//! Schwarz–Pick constants for `u = P_α[φ]`: the direction integral `I(α, q, x, l)`, its
//! closed-form supremum over directions in each exponent regime, the correction term
//! `J`, and the resulting `L^p` gradient coefficient. The `q = ∞` constants live in
//! [`infinity`].

pub mod infinity;

use num_rational::Ratio;

use crate::error::{domain, Error, Result};
use crate::hypergeom::{gamma_fn, hyp2f1, hyp3f2, hyp_pfq, two_f_one_at_one, HypergeomSpec, default_tol};
use crate::kernel::{c_n_alpha, BallPoint, ProblemParams, UnitDirection};
use crate::real::{dot, CompensatedSum, Real};
use crate::sphere::{pieces, reduce_bizonal_multi, GaussLegendre, SphereRule};

pub use infinity::{
    c_infty_direction, c_infty_sup, c_infty_sup_as_printed, k_alpha, k_alpha_factored, l1_coefficient,
    l1_coefficient_as_printed,
};

/// Relative tolerance for recognising the two threshold exponents.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// Hölder-conjugate exponents, `1/p + 1/q = 1`, `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPair<T> {
    p: T,
    q: T,
    exact_q: Option<Ratio<i64>>,
}

impl<T: Real> ExponentPair<T> {
    pub fn from_p(p: T) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(domain(format!("p must lie in [1, inf], got {p}")));
        }
        Ok(Self { p, q: conjugate(p), exact_q: None })
    }

    pub fn from_q(q: T) -> Result<Self> {
        if !(q >= T::one()) {
            return Err(domain(format!("q must lie in [1, inf], got {q}")));
        }
        Ok(Self { p: conjugate(q), q, exact_q: None })
    }

    /// `q` given exactly as a ratio, so the threshold comparison can be exact.
    pub fn from_q_ratio(q: Ratio<i64>) -> Result<Self> {
        let ratio = |r: Ratio<i64>| T::lit(*r.numer() as f64) / T::lit(*r.denom() as f64);
        let pair = Self::from_q(ratio(q))?;
        let one = Ratio::from_integer(1);
        let p = if q == one { pair.p } else { ratio(q / (q - one)) };
        Ok(Self { p, exact_q: Some(q), ..pair })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn exact_q(&self) -> Option<Ratio<i64>> {
        self.exact_q
    }
}

fn conjugate<T: Real>(p: T) -> T {
    if p.is_infinite() {
        T::one()
    } else if p == T::one() {
        T::infinity()
    } else {
        p / (p - T::one())
    }
}

/// Position of `q` relative to `(2n-2)/(n-α)` and `2n/(n-α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeCase {
    LowerThreshold,
    UpperThreshold,
    Between,
    Outside,
}

/// Directions attaining `sup_l I(α, q, x, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Maximizer {
    Any,
    Tangential,
    Radial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegimeTag {
    pub case: RegimeCase,
    pub maximizer: Maximizer,
}

impl RegimeTag {
    fn of(case: RegimeCase) -> Self {
        let maximizer = match case {
            RegimeCase::LowerThreshold | RegimeCase::UpperThreshold => Maximizer::Any,
            RegimeCase::Between => Maximizer::Tangential,
            RegimeCase::Outside => Maximizer::Radial,
        };
        Self { case, maximizer }
    }
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let case = match self.case {
            RegimeCase::LowerThreshold => "lower-threshold",
            RegimeCase::UpperThreshold => "upper-threshold",
            RegimeCase::Between => "between",
            RegimeCase::Outside => "outside",
        };
        let who = match self.maximizer {
            Maximizer::Any => "any",
            Maximizer::Tangential => "tangential",
            Maximizer::Radial => "radial",
        };
        write!(f, "{case}/{who}")
    }
}

/// `((2n-2)/(n-α), 2n/(n-α))`.
pub fn thresholds<T: Real>(params: &ProblemParams<T>) -> (T, T) {
    let d = params.n_minus_alpha();
    let n = params.dim();
    ((T::two() * n - T::two()) / d, T::two() * n / d)
}

/// Classifies a finite `q`, snapping to a threshold within relative [`THRESHOLD_TOL`].
pub fn classify<T: Real>(params: &ProblemParams<T>, q: T) -> RegimeTag {
    let (lo, hi) = thresholds(params);
    let tol = T::lit(THRESHOLD_TOL);
    let case = if (q - lo).abs() <= tol * lo {
        RegimeCase::LowerThreshold
    } else if (q - hi).abs() <= tol * hi {
        RegimeCase::UpperThreshold
    } else if q > lo && q < hi {
        RegimeCase::Between
    } else {
        RegimeCase::Outside
    };
    RegimeTag::of(case)
}

/// Exact classification when both `α` and `q` are rationals.
pub fn classify_exact(n: usize, alpha: Ratio<i64>, q: Ratio<i64>) -> Result<RegimeTag> {
    let n = i64::try_from(n).map_err(|_| domain("dimension too large"))?;
    let d = Ratio::from_integer(n) - alpha;
    if d <= Ratio::from_integer(0) {
        return Err(domain("n - alpha must be positive"));
    }
    let lo = Ratio::from_integer(2 * n - 2) / d;
    let hi = Ratio::from_integer(2 * n) / d;
    let case = if q == lo {
        RegimeCase::LowerThreshold
    } else if q == hi {
        RegimeCase::UpperThreshold
    } else if q > lo && q < hi {
        RegimeCase::Between
    } else {
        RegimeCase::Outside
    };
    Ok(RegimeTag::of(case))
}

/// Regime of a pair: exact when the pair carries an exact `q` and `alpha` is supplied as
/// a ratio, by tolerance otherwise.
pub fn classify_pair<T: Real>(params: &ProblemParams<T>, pair: &ExponentPair<T>, alpha: Option<Ratio<i64>>) -> Result<RegimeTag> {
    match (pair.exact_q(), alpha) {
        (Some(q), Some(a)) => classify_exact(params.n(), a, q),
        _ => Ok(classify(params, pair.q())),
    }
}

/// A closed-form constant, or a two-sided enclosure when only bounds are known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValue<T> {
    pub lower: T,
    pub upper: T,
    /// Set when the value is asserted to equal the constant, not merely bound it.
    pub exact: bool,
}

impl<T: Real> BoundValue<T> {
    pub fn exact(value: T) -> Self {
        Self { lower: value, upper: value, exact: true }
    }

    pub fn interval(lower: T, upper: T) -> Self {
        Self { lower: lower.min(upper), upper: lower.max(upper), exact: false }
    }

    pub fn is_interval(&self) -> bool {
        self.lower != self.upper || !self.exact
    }

    /// The certified (upper) value.
    pub fn value(&self) -> T {
        self.upper
    }

    pub fn contains(&self, v: T, rel: T) -> bool {
        v >= self.lower * (T::one() - rel) && v <= self.upper * (T::one() + rel)
    }
}

fn check_q<T: Real>(q: T) -> Result<()> {
    if !(q >= T::one()) || !q.is_finite() {
        return Err(domain(format!("q must be finite and at least 1, got {q}")));
    }
    Ok(())
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if !(t >= T::zero() && t < T::one()) {
        return Err(domain(format!("|x| must lie in [0, 1), got {t}")));
    }
    Ok(())
}

/// `Γ(n/2) Γ((q+1)/2) / (√π Γ((q+n)/2)) = ∫ |ζ₁|^q dσ`.
pub fn origin_factor<T: Real>(n: usize, q: T) -> Result<T> {
    let nn = T::from_usize_lossy(n);
    let half = T::half();
    Ok(gamma_fn(nn * half)? * gamma_fn((q + T::one()) * half)? / (T::PI().sqrt() * gamma_fn((q + nn) * half)?))
}

/// The exponent `(n-α)q - 2n + 2` of `|η - x|` in the direction integral.
pub fn distance_exponent<T: Real>(params: &ProblemParams<T>, q: T) -> T {
    params.n_minus_alpha() * q - T::two() * params.dim() + T::two()
}

/// `J(α, q, x) = q t κ (1 + κt)^{q-1} 2F1(n-1-q(n-α)/2, (n-q(n-α))/2; n/2; t²)` with
/// `κ = |2-α-n| / (n-α)` and `t = |x|`.
pub fn j_term<T: Real>(params: &ProblemParams<T>, q: T, t: T) -> Result<T> {
    check_q(q)?;
    check_t(t)?;
    let d = params.n_minus_alpha();
    let n = params.dim();
    let kappa = (T::two() - params.alpha() - n).abs() / d;
    if t == T::zero() || kappa == T::zero() {
        return Ok(T::zero());
    }
    let f = hyp2f1(n - T::one() - q * d * T::half(), (n - q * d) * T::half(), n * T::half(), t * t)?;
    Ok(q * t * kappa * (T::one() + kappa * t).powf(q - T::one()) * f)
}

/// `∫_{-π}^{π} (A - B cos θ)^a |cos(θ - β)|^b dθ`.
pub fn script_i<T: Real>(big_a: T, big_b: T, a: T, b: T, beta: T) -> Result<T> {
    if !(big_b >= T::zero() && big_b < big_a) || !(b > T::zero()) {
        return Err(domain(format!("script_I needs 0 <= B < A and b > 0, got A = {big_a}, B = {big_b}, b = {b}")));
    }
    let gl = GaussLegendre::of_degree(SCRIPT_DEGREE);
    let breaks = angle_breaks(beta);
    let mut acc = CompensatedSum::new();
    for (lo, hi) in pieces(-T::PI(), T::PI(), &breaks) {
        for (theta, w) in gl.mapped(lo, hi) {
            acc.add(w * (big_a - big_b * theta.cos()).powf(a) * (theta - beta).cos().abs().powf(b));
        }
    }
    Ok(acc.value())
}

const SCRIPT_DEGREE: usize = 128;

/// The zeros of `cos(θ - β)` in `(-π, π)` plus the peak of the radial factor at 0.
fn angle_breaks<T: Real>(beta: T) -> Vec<T> {
    let wrap = |x: T| {
        let two_pi = T::two() * T::PI();
        x - two_pi * (x / two_pi).round()
    };
    vec![wrap(beta + T::FRAC_PI_2()), wrap(beta - T::FRAC_PI_2()), T::zero()]
}

/// `𝒥(α, β, q, r, s) = script_I(1 + s², 2rs; (n-α)q/2 - n + 1, q; β)`.
pub fn script_j<T: Real>(params: &ProblemParams<T>, beta: T, q: T, r: T, s: T) -> Result<T> {
    check_q(q)?;
    if !(r >= T::zero() && r < T::one() && s >= T::zero() && s < T::one()) {
        return Err(domain(format!("script_J needs r, s in [0, 1), got r = {r}, s = {s}")));
    }
    let a = distance_exponent(params, q) * T::half();
    script_i(T::one() + s * s, T::two() * r * s, a, q, beta)
}

/// Monotonicity of `β ↦ 𝒥` on `[0, π/2]` in each regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
}

pub fn script_j_monotonicity(tag: RegimeTag) -> Monotonicity {
    match tag.case {
        RegimeCase::LowerThreshold | RegimeCase::UpperThreshold => Monotonicity::Constant,
        RegimeCase::Between => Monotonicity::Increasing,
        RegimeCase::Outside => Monotonicity::Decreasing,
    }
}

/// `I(α, q, x, l) = ∫ |η - x|^{(n-α)q-2n+2} |⟨η, l⟩|^q dσ(η)` by quadrature in the plane
/// spanned by `n_x` and `l`.
pub fn i_bruteforce<T: Real>(
    params: &ProblemParams<T>,
    q: T,
    x: &BallPoint<T>,
    l: &UnitDirection<T>,
    rule: &SphereRule,
) -> Result<T> {
    check_q(q)?;
    if x.dim() != params.n() || l.dim() != params.n() {
        return Err(domain("point and direction must have dimension n"));
    }
    let beta = if x.norm() == T::zero() {
        T::zero()
    } else {
        (dot(x.coords(), l.coords()) / x.norm()).max(-T::one()).min(T::one()).acos()
    };
    i_bruteforce_beta(params, q, x.norm(), beta, rule)
}

/// [`i_bruteforce`] at `x = t e₁`, `l = l_β`.
pub fn i_bruteforce_beta<T: Real>(params: &ProblemParams<T>, q: T, t: T, beta: T, rule: &SphereRule) -> Result<T> {
    check_q(q)?;
    check_t(t)?;
    let half_e = distance_exponent(params, q) * T::half();
    let (cb, sb) = (beta.cos(), beta.sin());
    let peaked = half_e < T::zero() && t > T::half();
    let width = T::one() - t;
    let radial_breaks: Vec<T> = if peaked {
        [T::one(), T::lit(4.0), T::lit(16.0)]
            .iter()
            .map(|&k| (k * width).min(T::FRAC_PI_2()).cos())
            .collect()
    } else {
        Vec::new()
    };
    let [v] = reduce_bizonal_multi(
        params.n(),
        |a, b| {
            let d = T::one() + t * t - T::two() * t * a;
            [d.powf(half_e) * (cb * a + sb * b).abs().powf(q)]
        },
        rule,
        &radial_breaks,
        |_| {
            let mut br = angle_breaks(beta);
            if peaked {
                for k in [T::one(), T::lit(4.0), T::lit(16.0)] {
                    br.push(k * width);
                    br.push(-k * width);
                }
            }
            br
        },
    )?;
    Ok(v.value)
}

/// Closed-form `sup_l I(α, q, x, l)` at `|x| = t` with the regime it was computed in.
pub fn sup_i_closed<T: Real>(params: &ProblemParams<T>, q: T, t: T) -> Result<(BoundValue<T>, RegimeTag)> {
    sup_i_closed_in(params, q, t, classify(params, q))
}

/// [`sup_i_closed`] in a regime fixed by the caller (e.g. from [`classify_exact`]).
pub fn sup_i_closed_in<T: Real>(params: &ProblemParams<T>, q: T, t: T, tag: RegimeTag) -> Result<(BoundValue<T>, RegimeTag)> {
    check_q(q)?;
    check_t(t)?;
    let n = params.dim();
    let d = params.n_minus_alpha();
    let half = T::half();
    let g0 = origin_factor(params.n(), q)?;
    let t2 = t * t;
    let value = match tag.case {
        RegimeCase::LowerThreshold => g0,
        RegimeCase::UpperThreshold => g0 * (T::one() + t2),
        RegimeCase::Between => {
            g0 * hyp2f1(n - T::one() - d * q * half, (n - (n + T::one() - params.alpha()) * q) * half, (q + n) * half, t2)?
        }
        RegimeCase::Outside => {
            let expo = d * q * half - n + T::one();
            let z = T::lit(4.0) * t2 / (T::one() + t2).sq();
            (T::one() + t2).powf(expo) * g0 * hyp3f2(outside_upper(params, q), [half, (q + n) * half], z)?
        }
    };
    Ok((BoundValue::exact(value), tag))
}

fn outside_upper<T: Real>(params: &ProblemParams<T>, q: T) -> [T; 3] {
    let n = params.dim();
    let dq = params.n_minus_alpha() * q;
    let quarter = T::lit(0.25);
    [
        (T::two() * n - T::two() - dq) * quarter,
        (T::two() * n - dq) * quarter,
        (q + T::one()) * T::half(),
    ]
}

/// `sup_x sup_l I(α, q, x, l)`, the unit-argument values of the between/outside forms.
pub fn sup_i_global<T: Real>(params: &ProblemParams<T>, q: T) -> Result<BoundValue<T>> {
    sup_i_global_in(params, q, classify(params, q))
}

pub fn sup_i_global_in<T: Real>(params: &ProblemParams<T>, q: T, tag: RegimeTag) -> Result<BoundValue<T>> {
    check_q(q)?;
    let n = params.dim();
    let d = params.n_minus_alpha();
    let half = T::half();
    let g0 = origin_factor(params.n(), q)?;
    match tag.case {
        RegimeCase::LowerThreshold | RegimeCase::UpperThreshold => Err(Error::RegimeMismatch(format!(
            "q = {q} sits on a threshold; the global supremum is only defined between or outside them"
        ))),
        RegimeCase::Between => {
            let f = two_f_one_at_one(n - T::one() - d * q * half, (n - (n + T::one() - params.alpha()) * q) * half, (q + n) * half)?;
            Ok(BoundValue::exact(g0 * f))
        }
        RegimeCase::Outside => {
            let spec = HypergeomSpec::new(outside_upper(params, q).to_vec(), vec![half, (q + n) * half], T::one())?;
            let f = hyp_pfq(&spec, default_tol())?;
            Ok(BoundValue::exact(T::two().powf(d * q * half - n + T::one()) * g0 * f))
        }
    }
}

/// Gradient coefficient for `p ∈ (1, ∞]`:
/// `(n-α) C (1-|x|²)^{-(n(q-1)+1)/q} (sup_l I + J)^{1/q}`.
pub fn lp_coefficient<T: Real>(params: &ProblemParams<T>, pair: &ExponentPair<T>, x: &BallPoint<T>) -> Result<T> {
    lp_coefficient_in(params, pair, x, classify(params, pair.q()))
}

pub fn lp_coefficient_in<T: Real>(
    params: &ProblemParams<T>,
    pair: &ExponentPair<T>,
    x: &BallPoint<T>,
    tag: RegimeTag,
) -> Result<T> {
    let q = pair.q();
    if q.is_infinite() {
        return Err(domain("p = 1 has q = inf; use l1_coefficient"));
    }
    let t = x.norm();
    let (sup, _) = sup_i_closed_in(params, q, t, tag)?;
    let j = j_term(params, q, t)?;
    let n = params.dim();
    let power = -(n * (q - T::one()) + T::one()) / q;
    Ok(params.n_minus_alpha() * c_n_alpha(params) * x.defect().powf(power) * (sup.value() + j).powf(q.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(n: usize, alpha: f64) -> ProblemParams<f64> {
        ProblemParams::new(n, alpha).unwrap()
    }

    #[test]
    fn conjugates() {
        let e = ExponentPair::from_p(f64::INFINITY).unwrap();
        assert_eq!(e.q(), 1.0);
        let e = ExponentPair::from_p(1.0_f64).unwrap();
        assert!(e.q().is_infinite());
        let e = ExponentPair::from_q(4.0_f64).unwrap();
        assert_relative_eq!(e.p(), 4.0 / 3.0);
        assert!(ExponentPair::from_q(0.5_f64).is_err());
    }

    #[test]
    fn regimes_for_n3_alpha0() {
        let params = p(3, 0.0);
        assert_eq!(classify(&params, 4.0 / 3.0).case, RegimeCase::LowerThreshold);
        assert_eq!(classify(&params, 2.0).case, RegimeCase::UpperThreshold);
        assert_eq!(classify(&params, 1.5), RegimeTag { case: RegimeCase::Between, maximizer: Maximizer::Tangential });
        assert_eq!(classify(&params, 4.0), RegimeTag { case: RegimeCase::Outside, maximizer: Maximizer::Radial });
        assert_eq!(classify(&params, 1.0).case, RegimeCase::Outside);
        let exact = classify_exact(3, Ratio::new(1, 2), Ratio::new(8, 5)).unwrap();
        assert_eq!(exact.case, RegimeCase::LowerThreshold);
        let exact = classify_exact(3, Ratio::new(1, 2), Ratio::new(12, 5)).unwrap();
        assert_eq!(exact.case, RegimeCase::UpperThreshold);
    }

    #[test]
    fn j_term_examples() {
        assert_eq!(j_term(&p(4, 0.5), 2.0, 0.0).unwrap(), 0.0);
        assert_eq!(j_term(&p(4, -2.0), 3.0, 0.7).unwrap(), 0.0);
        // n = 3, α = 0, q = 2, t = 0.5: κ = 1/3, 2F1(-1, -3/2; 3/2; 1/4) = 5/4
        let want = 2.0 * 0.5 / 3.0 * (1.0 + 0.5 / 3.0) * 1.25;
        assert_relative_eq!(j_term(&p(3, 0.0), 2.0, 0.5).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn closed_forms_collapse_at_origin() {
        let params = p(4, -1.0);
        let q = 2.5;
        let g0 = origin_factor(4, q).unwrap();
        for case in [RegimeCase::LowerThreshold, RegimeCase::UpperThreshold, RegimeCase::Between, RegimeCase::Outside] {
            let (v, _) = sup_i_closed_in(&params, q, 0.0, RegimeTag::of(case)).unwrap();
            assert_relative_eq!(v.value(), g0, max_relative = 1e-12);
        }
    }

    #[test]
    fn lower_threshold_matches_printed_gamma_ratio() {
        let (n, alpha) = (5.0_f64, -0.5_f64);
        let params = p(5, alpha);
        let (q1, _) = thresholds(&params);
        let printed = gamma_fn(n / 2.0).unwrap() * gamma_fn((3.0 * n - alpha - 2.0) / (2.0 * n - 2.0 * alpha)).unwrap()
            / (std::f64::consts::PI.sqrt()
                * gamma_fn((n * n + 2.0 * n - alpha * n - 2.0) / (2.0 * n - 2.0 * alpha)).unwrap());
        let (v, tag) = sup_i_closed(&params, q1, 0.4).unwrap();
        assert_eq!(tag.case, RegimeCase::LowerThreshold);
        assert_relative_eq!(v.value(), printed, max_relative = 1e-13);
    }

    #[test]
    fn bruteforce_at_origin_is_origin_factor() {
        let params = p(3, 0.5);
        let rule = SphereRule::gauss(96, 96);
        let v = i_bruteforce(&params, 2.2, &BallPoint::origin(3), &UnitDirection::axis(3, 1), &rule).unwrap();
        assert_relative_eq!(v, origin_factor(3, 2.2).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn vanishing_exponent_removes_x_dependence() {
        let params = p(4, -1.0);
        let (q1, _) = thresholds(&params);
        let rule = SphereRule::gauss(96, 96);
        let x = BallPoint::new(vec![0.3, 0.2, -0.4, 0.1]).unwrap();
        let l = UnitDirection::new(vec![1.0, 2.0, 0.5, -1.0]).unwrap();
        let v = i_bruteforce(&params, q1, &x, &l, &rule).unwrap();
        assert_relative_eq!(v, origin_factor(4, q1).unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn script_i_examples() {
        let base = script_i(2.0_f64, 0.0, 1.7, 2.0, 0.0).unwrap();
        // ∫ cos² = π
        assert_relative_eq!(base, 2.0_f64.powf(1.7) * std::f64::consts::PI, max_relative = 1e-13);
        assert_relative_eq!(script_i(2.0, 0.0, 1.7, 2.0, 1.1).unwrap(), base, max_relative = 1e-13);
        let a0 = script_i(1.5_f64, 0.9, 0.0, 1.3, 0.2).unwrap();
        assert_relative_eq!(script_i(1.5, 0.9, 0.0, 1.3, 1.4).unwrap(), a0, max_relative = 1e-9);
        let mut last = f64::INFINITY;
        for k in 0..=18 {
            let beta = std::f64::consts::FRAC_PI_2 * k as f64 / 18.0;
            let v = script_i(1.5, 0.9, 2.0, 1.3, beta).unwrap();
            assert!(v <= last + 1e-12);
            last = v;
        }
        assert!(script_i(1.0_f64, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn global_sup_refuses_thresholds() {
        let params = p(3, 0.0);
        assert!(matches!(sup_i_global(&params, 2.0), Err(Error::RegimeMismatch(_))));
        let g = sup_i_global(&params, 1.5).unwrap();
        for k in 0..20 {
            let t = 0.05 * k as f64;
            assert!(sup_i_closed(&params, 1.5, t).unwrap().0.value() <= g.value() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn lp_coefficient_at_origin() {
        let params = p(4, 0.5);
        for q in [1.0, 1.5, 2.0, 4.0] {
            let pair = ExponentPair::from_q(q).unwrap();
            let got = lp_coefficient(&params, &pair, &BallPoint::origin(4)).unwrap();
            let want = params.n_minus_alpha() * c_n_alpha(&params) * origin_factor(4, q).unwrap().powf(1.0 / q);
            assert_relative_eq!(got, want, max_relative = 1e-13);
        }
        assert!(lp_coefficient(&params, &ExponentPair::from_p(1.0).unwrap(), &BallPoint::origin(4)).is_err());
    }
}
