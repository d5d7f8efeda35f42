//! The Poisson–Szegő kernel `P_α(x, ζ) = C_{n,α} (1 - |x|²)^{1-α} / |x - ζ|^{n-α}`.

use crate::error::{domain, Result};
use crate::hypergeom::{gamma_fn, hyp2f1, ln_gamma};
use crate::real::{dot, norm, Real};

/// Dimension `n >= 3` and parameter `α < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemParams<T> {
    n: usize,
    alpha: T,
}

impl<T: Real> ProblemParams<T> {
    pub fn new(n: usize, alpha: T) -> Result<Self> {
        if n < 3 {
            return Err(domain(format!("dimension n must be at least 3, got {n}")));
        }
        if !(alpha < T::one()) || !alpha.is_finite() {
            return Err(domain(format!("alpha must be a finite number below 1, got {alpha}")));
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `n` as a scalar.
    pub fn dim(&self) -> T {
        T::from_usize_lossy(self.n)
    }

    /// `n - α`, positive under the invariants.
    pub fn n_minus_alpha(&self) -> T {
        self.dim() - self.alpha
    }

    /// `2 - n`, the hyperbolic-harmonic value of `α`.
    pub fn hyperbolic_alpha(&self) -> T {
        T::two() - self.dim()
    }
}

/// A point of the open unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint<T> {
    coords: Vec<T>,
    norm: T,
}

impl<T: Real> BallPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(domain("ball point has non-finite coordinates"));
        }
        let r = norm(&coords);
        if !(r < T::one()) {
            return Err(domain(format!("point must lie in the open unit ball, |x| = {r}")));
        }
        Ok(Self { coords, norm: r })
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![T::zero(); n], norm: T::zero() }
    }

    /// `t e_1`.
    pub fn on_axis(n: usize, t: T) -> Result<Self> {
        let mut coords = vec![T::zero(); n];
        coords[0] = t;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    /// `1 - |x|²` without cancellation near the sphere.
    pub fn defect(&self) -> T {
        (T::one() - self.norm) * (T::one() + self.norm)
    }
}

/// A unit vector of `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDirection<T> {
    coords: Vec<T>,
}

impl<T: Real> UnitDirection<T> {
    /// Normalizes `coords`; fails on the zero vector.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        let r = norm(&coords);
        if !(r > T::zero()) || !r.is_finite() {
            return Err(domain("direction must be a nonzero finite vector"));
        }
        Ok(Self { coords: coords.into_iter().map(|c| c / r).collect() })
    }

    /// The coordinate vector `e_i` (zero-based).
    pub fn axis(n: usize, i: usize) -> Self {
        let mut coords = vec![T::zero(); n];
        coords[i] = T::one();
        Self { coords }
    }

    /// `n_x = x / |x|`.
    pub fn radial(x: &BallPoint<T>) -> Result<Self> {
        if x.norm() == T::zero() {
            return Err(domain("the radial direction of the origin is undefined"));
        }
        Self::new(x.coords().to_vec())
    }

    /// A unit vector orthogonal to `n_x`: the coordinate axis least aligned with `x`,
    /// Gram–Schmidt projected.
    pub fn tangential(x: &BallPoint<T>) -> Result<Self> {
        let nx = Self::radial(x)?;
        Ok(nx.orthogonal_complement_vector())
    }

    pub(crate) fn orthogonal_complement_vector(&self) -> Self {
        let (k, _) = self
            .coords
            .iter()
            .enumerate()
            .fold((0, T::infinity()), |best, (i, c)| if c.abs() < best.1 { (i, c.abs()) } else { best });
        let mut v = vec![T::zero(); self.coords.len()];
        v[k] = T::one();
        let proj = self.coords[k];
        for (vi, &ci) in v.iter_mut().zip(&self.coords) {
            *vi -= proj * ci;
        }
        Self::new(v).expect("projection of a coordinate axis onto the complement is nonzero")
    }

    /// `l_β = cos β e_1 + sin β e_2`.
    pub fn l_beta(n: usize, beta: T) -> Self {
        let mut coords = vec![T::zero(); n];
        coords[0] = beta.cos();
        coords[1] = beta.sin();
        Self { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn check_dims<T: Real>(params: &ProblemParams<T>, len: usize, what: &str) -> Result<()> {
    if len != params.n() {
        return Err(domain(format!("{what} has dimension {len}, expected {}", params.n())));
    }
    Ok(())
}

/// `C_{n,α} = Γ((n-α)/2) Γ(1-α/2) / (Γ(n/2) Γ(1-α))`.
pub fn c_n_alpha<T: Real>(params: &ProblemParams<T>) -> T {
    let half = T::half();
    let args = [
        params.n_minus_alpha() * half,
        T::one() - params.alpha() * half,
        params.dim() * half,
        T::one() - params.alpha(),
    ];
    // every argument is positive when α < 1
    if args.iter().all(|&a| a <= T::lit(40.0)) {
        let g = |x: T| gamma_fn(x).expect("positive Gamma argument");
        g(args[0]) * g(args[1]) / (g(args[2]) * g(args[3]))
    } else {
        let lg = |x: T| ln_gamma(x).expect("positive Gamma argument");
        (lg(args[0]) + lg(args[1]) - lg(args[2]) - lg(args[3])).exp()
    }
}

/// The kernel restricted to a fixed `|x| = ρ`, as a function of `s = ⟨n_x, ζ⟩`.
///
/// Precomputes every factor that does not depend on `ζ`, so quadratures over the sphere
/// only pay for one power per node.
#[derive(Clone, Copy, Debug)]
pub struct KernelProfile<T> {
    rho: T,
    n_minus_alpha: T,
    one_minus_alpha: T,
    defect: T,
    value_scale: T,
    gradient_scale: T,
    log_space: bool,
    log_value_scale: T,
    log_gradient_scale: T,
}

impl<T: Real> KernelProfile<T> {
    pub fn new(params: &ProblemParams<T>, rho: T) -> Self {
        Self::with_constant(params, rho, c_n_alpha(params))
    }

    /// Same as [`KernelProfile::new`] with an explicit normalizing constant.
    pub fn with_constant(params: &ProblemParams<T>, rho: T, c: T) -> Self {
        let alpha = params.alpha();
        let defect = (T::one() - rho) * (T::one() + rho);
        let log_space = rho > T::lit(0.99);
        let one_minus_alpha = T::one() - alpha;
        Self {
            rho,
            n_minus_alpha: params.n_minus_alpha(),
            one_minus_alpha,
            defect,
            value_scale: c * defect.powf(one_minus_alpha),
            gradient_scale: c * defect.powf(-alpha),
            log_space,
            log_value_scale: c.ln() + one_minus_alpha * defect.ln(),
            log_gradient_scale: c.ln() - alpha * defect.ln(),
        }
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    /// `|x - ζ|²` for `⟨n_x, ζ⟩ = s`.
    #[inline]
    pub fn distance_sq(&self, s: T) -> T {
        // (1 - ρ)² + 2ρ(1 - s) avoids cancellation when ζ is close to n_x
        (T::one() - self.rho).sq() + T::two() * self.rho * (T::one() - s)
    }

    /// `P_α(x, ζ)`.
    #[inline]
    pub fn value(&self, s: T) -> T {
        self.value_at_distance_sq(self.distance_sq(s))
    }

    #[inline]
    pub fn value_at_distance_sq(&self, d: T) -> T {
        let e = self.n_minus_alpha * T::half();
        if self.log_space {
            (self.log_value_scale - e * d.ln()).exp()
        } else {
            self.value_scale * d.powf(-e)
        }
    }

    /// Coefficients `(a, b)` with `∇_x P_α(x, ζ) = a x + b ζ`.
    #[inline]
    pub fn gradient_coeffs(&self, s: T) -> (T, T) {
        self.gradient_coeffs_at_distance_sq(self.distance_sq(s))
    }

    #[inline]
    pub fn gradient_coeffs_at_distance_sq(&self, d: T) -> (T, T) {
        let e = (self.n_minus_alpha + T::two()) * T::half();
        let common = if self.log_space {
            (self.log_gradient_scale - e * d.ln()).exp()
        } else {
            self.gradient_scale * d.powf(-e)
        };
        let b = common * self.n_minus_alpha * self.defect;
        let a = -common * (T::two() * self.one_minus_alpha * d + self.n_minus_alpha * self.defect);
        (a, b)
    }
}

/// `P_α(x, ζ)`.
pub fn kernel_value<T: Real>(params: &ProblemParams<T>, x: &BallPoint<T>, zeta: &UnitDirection<T>) -> Result<T> {
    check_dims(params, x.dim(), "x")?;
    check_dims(params, zeta.dim(), "zeta")?;
    let profile = KernelProfile::new(params, x.norm());
    Ok(profile.value_at_distance_sq(distance_sq(x.coords(), zeta.coords())))
}

/// `∇_x P_α(x, ζ) = -C [2(1-α) x |x-ζ|² + (n-α)(1-|x|²)(x-ζ)] / ((1-|x|²)^α |x-ζ|^{n+2-α})`.
pub fn kernel_gradient<T: Real>(
    params: &ProblemParams<T>,
    x: &BallPoint<T>,
    zeta: &UnitDirection<T>,
) -> Result<Vec<T>> {
    check_dims(params, x.dim(), "x")?;
    check_dims(params, zeta.dim(), "zeta")?;
    let profile = KernelProfile::new(params, x.norm());
    let (a, b) = profile.gradient_coeffs_at_distance_sq(distance_sq(x.coords(), zeta.coords()));
    Ok(x.coords().iter().zip(zeta.coords()).map(|(&xi, &zi)| a * xi + b * zi).collect())
}

/// `∫ P_α(x, ζ) dσ(ζ) = C (1-|x|²)^{1-α} 2F1((n-α)/2, 1-α/2; n/2; |x|²)`.
///
/// For `|x|² > 1/2` the Euler-transformed `C 2F1(α/2, (n+α)/2 - 1; n/2; |x|²)` is
/// summed instead; it converges at `|x| = 1` and carries no large prefactor.
pub fn kernel_mass<T: Real>(params: &ProblemParams<T>, x: &BallPoint<T>) -> Result<T> {
    check_dims(params, x.dim(), "x")?;
    kernel_mass_at(params, x.norm(), c_n_alpha(params))
}

pub(crate) fn kernel_mass_at<T: Real>(params: &ProblemParams<T>, rho: T, c: T) -> Result<T> {
    let half = T::half();
    let alpha = params.alpha();
    let half_n = params.dim() * half;
    let t = rho * rho;
    if t > half {
        return Ok(c * hyp2f1(alpha * half, half_n + alpha * half - T::one(), half_n, t)?);
    }
    let defect = (T::one() - rho) * (T::one() + rho);
    let f = hyp2f1(params.n_minus_alpha() * half, T::one() - alpha * half, half_n, t)?;
    Ok(c * defect.powf(T::one() - alpha) * f)
}

fn distance_sq<T: Real>(x: &[T], zeta: &[T]) -> T {
    x.iter().zip(zeta).map(|(&a, &b)| (a - b).sq()).sum()
}

/// `⟨n_x, ζ⟩`, or 0 at the origin.
pub fn radial_cosine<T: Real>(x: &BallPoint<T>, zeta: &[T]) -> T {
    if x.norm() == T::zero() {
        T::zero()
    } else {
        dot(x.coords(), zeta) / x.norm()
    }
}
