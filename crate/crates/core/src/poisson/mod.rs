//! Boundary data on `S^{n-1}`, its α-harmonic extension `u = P_α[φ]`, the Jacobian of
//! the extension, `L^p` norms, and a finite-difference `Δ_α` residual.
//!
//! Deterministic rules exploit the symmetry of each builtin family: constant, coordinate
//! and linear data need only one-dimensional moments of the kernel in `s = ⟨n_x, ζ⟩`;
//! signed and cap data depend on `⟨ζ, l⟩` as well and are integrated in axial
//! coordinates about `l`, with the jump placed on a quadrature breakpoint. Tabulated
//! data is always integrated by Monte Carlo.

mod tabulated;

pub use tabulated::{TabulatedData, RENORMALIZE_WARN};

use crate::error::{domain, Error, Result};
use crate::kernel::{c_n_alpha, BallPoint, KernelProfile, ProblemParams, UnitDirection};
use crate::matrix::Matrix;
use crate::real::{dot, norm, Real};
use crate::sphere::{
    monte_carlo_sphere_vec, reduce_axial_multi, reduce_zonal_multi, SphereIntegral, SphereRule, DEFAULT_SAMPLES,
    DEFAULT_SEED,
};

/// `Du(x)`; row `i` is `∇u_i`.
pub type JacobianMatrix<T> = Matrix<T>;

/// The builtin boundary families.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryFamily<T> {
    /// `ζ ↦ c`, with `c ∈ R^m`.
    Constant(Vec<T>),
    /// `ζ ↦ ζ_i` (zero-based index).
    Coordinate(usize),
    /// `ζ ↦ sgn⟨ζ, l⟩`.
    Signed(UnitDirection<T>),
    /// `ζ ↦ Aζ` for an `n×n` matrix, or a `1×n` row for scalar data.
    Linear(Matrix<T>),
    /// Indicator of `{⟨ζ, l⟩ > h}`.
    Cap { axis: UnitDirection<T>, height: T },
    Tabulated(TabulatedData<T>),
}

/// Boundary data `φ : S^{n-1} → R^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryData<T> {
    n: usize,
    family: BoundaryFamily<T>,
}

impl<T: Real> BoundaryData<T> {
    pub fn constant(n: usize, c: Vec<T>) -> Result<Self> {
        if c.len() != 1 && c.len() != n {
            return Err(Error::BoundaryData(format!("constant must have 1 or {n} components, got {}", c.len())));
        }
        Ok(Self { n, family: BoundaryFamily::Constant(c) })
    }

    pub fn coordinate(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::BoundaryData(format!("coordinate index {i} out of range for n = {n}")));
        }
        Ok(Self { n, family: BoundaryFamily::Coordinate(i) })
    }

    pub fn signed(axis: UnitDirection<T>) -> Self {
        Self { n: axis.dim(), family: BoundaryFamily::Signed(axis) }
    }

    pub fn linear(a: Matrix<T>) -> Result<Self> {
        if a.rows() != 1 && !a.is_square() {
            return Err(Error::BoundaryData(format!(
                "linear data needs an n x n matrix or a single row, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(Self { n: a.cols(), family: BoundaryFamily::Linear(a) })
    }

    pub fn cap(axis: UnitDirection<T>, height: T) -> Result<Self> {
        if !(height > -T::one() && height < T::one()) {
            return Err(Error::BoundaryData(format!("cap height must lie in (-1, 1), got {height}")));
        }
        Ok(Self { n: axis.dim(), family: BoundaryFamily::Cap { axis, height } })
    }

    pub fn tabulated(data: TabulatedData<T>) -> Self {
        Self { n: data.dim(), family: BoundaryFamily::Tabulated(data) }
    }

    pub fn family(&self) -> &BoundaryFamily<T> {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of components `m`.
    pub fn value_dim(&self) -> usize {
        match &self.family {
            BoundaryFamily::Constant(c) => c.len(),
            BoundaryFamily::Linear(a) => a.rows(),
            BoundaryFamily::Tabulated(t) => t.value_dim(),
            _ => 1,
        }
    }

    /// `φ(ζ)` written into `out` (length `m`).
    pub fn eval(&self, zeta: &[T], out: &mut [T]) {
        match &self.family {
            BoundaryFamily::Constant(c) => out.copy_from_slice(c),
            BoundaryFamily::Coordinate(i) => out[0] = zeta[*i],
            BoundaryFamily::Signed(l) => out[0] = sign(dot(zeta, l.coords())),
            BoundaryFamily::Linear(a) => out.copy_from_slice(&a.mul_vec(zeta)),
            BoundaryFamily::Cap { axis, height } => {
                out[0] = if dot(zeta, axis.coords()) > *height { T::one() } else { T::zero() }
            }
            BoundaryFamily::Tabulated(t) => t.eval(zeta, out),
        }
    }

    /// `ess sup |φ|`.
    pub fn sup_norm(&self) -> T {
        match &self.family {
            BoundaryFamily::Constant(c) => norm(c),
            BoundaryFamily::Coordinate(_) | BoundaryFamily::Signed(_) | BoundaryFamily::Cap { .. } => T::one(),
            BoundaryFamily::Linear(a) => a.singular_values().first().copied().unwrap_or_else(T::zero),
            BoundaryFamily::Tabulated(t) => t.sup_norm(),
        }
    }

    /// The `i`-th component as scalar data, where the family allows it.
    pub fn component(&self, i: usize) -> Result<Self> {
        if i >= self.value_dim() {
            return Err(Error::BoundaryData(format!("component {i} out of range")));
        }
        match &self.family {
            BoundaryFamily::Constant(c) => Self::constant(self.n, vec![c[i]]),
            BoundaryFamily::Linear(a) => Self::linear(Matrix::new(1, self.n, a.row(i).to_vec())?),
            _ => Ok(self.clone()),
        }
    }

    fn check(&self, params: &ProblemParams<T>, x: Option<&BallPoint<T>>) -> Result<()> {
        if self.n != params.n() {
            return Err(domain(format!("boundary data lives on S^{}, params have n = {}", self.n - 1, params.n())));
        }
        if let Some(x) = x {
            if x.dim() != self.n {
                return Err(domain(format!("point has dimension {}, expected {}", x.dim(), self.n)));
            }
        }
        Ok(())
    }
}

fn sign<T: Real>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Monte Carlo settings used when a deterministic rule cannot serve a family.
fn fallback_rule(rule: &SphereRule) -> SphereRule {
    match *rule {
        SphereRule::MonteCarlo { .. } => *rule,
        SphereRule::Gauss { .. } => SphereRule::monte_carlo(DEFAULT_SAMPLES, DEFAULT_SEED),
    }
}

/// `(∫|φ|^p dσ)^{1/p}`, or the sup norm for `p = ∞`.
pub fn lp_norm<T: Real>(phi: &BoundaryData<T>, p: T, rule: &SphereRule) -> Result<T> {
    if !(p >= T::one()) {
        return Err(domain(format!("p must be at least 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(phi.sup_norm());
    }
    let n = phi.n;
    let root = |v: T| v.powf(p.recip());
    match &phi.family {
        BoundaryFamily::Constant(c) => Ok(norm(c)),
        BoundaryFamily::Signed(_) => Ok(T::one()),
        BoundaryFamily::Coordinate(_) if rule.is_deterministic() => {
            let [v] = reduce_zonal_multi(n, |s| [s.abs().powf(p)], rule, &[T::FRAC_PI_2()])?;
            Ok(root(v.value))
        }
        BoundaryFamily::Cap { height, .. } if rule.is_deterministic() => {
            let h = *height;
            let [v] = reduce_zonal_multi(n, |s| [if s > h { T::one() } else { T::zero() }], rule, &[h.acos()])?;
            Ok(root(v.value))
        }
        BoundaryFamily::Linear(a) if p == T::two() => {
            let frob: T = a.as_slice().iter().map(|v| v.sq()).sum();
            Ok((frob / T::from_usize_lossy(n)).sqrt())
        }
        _ => {
            let mc = fallback_rule(rule);
            let SphereRule::MonteCarlo { samples, seed } = mc else { unreachable!() };
            let m = phi.value_dim();
            let est = monte_carlo_sphere_vec(
                n,
                1,
                |z: &[T], out: &mut [T]| {
                    let mut v = vec![T::zero(); m];
                    phi.eval(z, &mut v);
                    out[0] = norm(&v).powf(p);
                },
                samples,
                seed,
            );
            Ok(root(est[0].estimate))
        }
    }
}

/// The extension and its Jacobian at one point, each entry with its quadrature error.
#[derive(Clone, Debug, PartialEq)]
pub struct Extension<T> {
    pub value: Vec<SphereIntegral<T>>,
    pub jacobian: Vec<SphereIntegral<T>>,
    m: usize,
    n: usize,
}

impl<T: Real> Extension<T> {
    pub fn values(&self) -> Vec<T> {
        self.value.iter().map(|v| v.value).collect()
    }

    pub fn jacobian(&self) -> JacobianMatrix<T> {
        Matrix::new(self.m, self.n, self.jacobian.iter().map(|v| v.value).collect())
            .expect("jacobian has m x n entries")
    }

    /// Largest standard error over all entries (zero for deterministic rules).
    pub fn max_stderr(&self) -> T {
        self.value.iter().chain(&self.jacobian).fold(T::zero(), |m, v| m.max(v.stderr))
    }
}

/// Radial kernel moments `∫ P s^k`, `∫ a s^k`, `∫ b s^k`, with `∇P = a x + b ζ`.
#[derive(Clone, Copy, Debug)]
struct Moments<T> {
    p0: T,
    p1: T,
    a0: T,
    a1: T,
    b0: T,
    b1: T,
    b2: T,
}

/// Angles where the kernel at `|x| = ρ` changes on the scale `1 - ρ`.
pub(crate) fn peak_breaks<T: Real>(rho: T, center: T) -> Vec<T> {
    if rho < T::half() {
        return Vec::new();
    }
    let width = T::one() - rho;
    [T::one(), T::lit(4.0), T::lit(16.0)]
        .iter()
        .flat_map(|&k| [center - k * width, center + k * width])
        .filter(|&b| b > T::zero() && b < T::PI())
        .collect()
}

fn moments<T: Real>(n: usize, profile: &KernelProfile<T>, rule: &SphereRule) -> Result<[SphereIntegral<T>; 7]> {
    reduce_zonal_multi(
        n,
        |s| {
            let d = profile.distance_sq(s);
            let p = profile.value_at_distance_sq(d);
            let (a, b) = profile.gradient_coeffs_at_distance_sq(d);
            [p, p * s, a, a * s, b, b * s, b * s * s]
        },
        rule,
        &peak_breaks(profile.rho(), T::zero()),
    )
}

/// An orthonormal pair `(e1, e2)` with `e1 = n_x` (or `fallback` at the origin).
fn radial_frame<T: Real>(x: &BallPoint<T>, fallback: &UnitDirection<T>) -> Vec<T> {
    if x.norm() == T::zero() {
        fallback.coords().to_vec()
    } else {
        x.coords().iter().map(|&c| c / x.norm()).collect()
    }
}

/// Evaluates `u(x)` and `Du(x)` together.
pub fn poisson_extension<T: Real>(
    phi: &BoundaryData<T>,
    params: &ProblemParams<T>,
    x: &BallPoint<T>,
    rule: &SphereRule,
) -> Result<Extension<T>> {
    poisson_extension_with_constant(phi, params, x, rule, c_n_alpha(params))
}

/// [`poisson_extension`] with an explicit kernel normalization (used by perturbation checks).
pub fn poisson_extension_with_constant<T: Real>(
    phi: &BoundaryData<T>,
    params: &ProblemParams<T>,
    x: &BallPoint<T>,
    rule: &SphereRule,
    c: T,
) -> Result<Extension<T>> {
    phi.check(params, Some(x))?;
    let n = params.n();
    let m = phi.value_dim();
    let profile = KernelProfile::with_constant(params, x.norm(), c);
    let tabulated = matches!(phi.family, BoundaryFamily::Tabulated(_));
    if !rule.is_deterministic() || tabulated {
        return extension_monte_carlo(phi, &profile, x, &fallback_rule(rule));
    }
    let exact = |v: T| SphereIntegral { value: v, stderr: T::zero() };
    match &phi.family {
        BoundaryFamily::Constant(cvec) => {
            let mo = moments(n, &profile, rule)?.map(|v| v.value);
            let mo = Moments { p0: mo[0], p1: mo[1], a0: mo[2], a1: mo[3], b0: mo[4], b1: mo[5], b2: mo[6] };
            let nx = radial_frame(x, &UnitDirection::axis(n, 0));
            let grad: Vec<T> = x.coords().iter().zip(&nx).map(|(&xi, &ni)| mo.a0 * xi + mo.b1 * ni).collect();
            Ok(Extension {
                value: cvec.iter().map(|&ci| exact(ci * mo.p0)).collect(),
                jacobian: cvec.iter().flat_map(|&ci| grad.iter().map(move |&g| exact(ci * g))).collect(),
                m,
                n,
            })
        }
        BoundaryFamily::Coordinate(_) | BoundaryFamily::Linear(_) => {
            let a = match &phi.family {
                BoundaryFamily::Linear(a) => a.clone(),
                BoundaryFamily::Coordinate(i) => {
                    let mut e = Matrix::zeros(1, n);
                    e[(0, *i)] = T::one();
                    e
                }
                _ => unreachable!(),
            };
            let mo = moments(n, &profile, rule)?.map(|v| v.value);
            let mo = Moments { p0: mo[0], p1: mo[1], a0: mo[2], a1: mo[3], b0: mo[4], b1: mo[5], b2: mo[6] };
            let nx = radial_frame(x, &UnitDirection::axis(n, 0));
            // ∫ ζ ∇Pᵀ dσ = A1 n_x xᵀ + B2 n_x n_xᵀ + (B0 - B2)/(n - 1) (I - n_x n_xᵀ)
            let kappa = (mo.b0 - mo.b2) / T::from_usize_lossy(n - 1);
            let mut inner = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let delta = if i == j { T::one() } else { T::zero() };
                    inner[(i, j)] =
                        mo.a1 * nx[i] * x.coords()[j] + mo.b2 * nx[i] * nx[j] + kappa * (delta - nx[i] * nx[j]);
                }
            }
            let du = a.mul(&inner);
            let u = a.mul_vec(&nx.iter().map(|&v| v * mo.p1).collect::<Vec<_>>());
            Ok(Extension {
                value: u.into_iter().map(exact).collect(),
                jacobian: du.as_slice().iter().map(|&v| exact(v)).collect(),
                m,
                n,
            })
        }
        BoundaryFamily::Signed(axis) | BoundaryFamily::Cap { axis, .. } => {
            let height = match &phi.family {
                BoundaryFamily::Cap { height, .. } => Some(*height),
                _ => None,
            };
            extension_axial(&profile, x, axis, height, rule, n)
        }
        BoundaryFamily::Tabulated(_) => unreachable!(),
    }
}

/// Signed (`height = None`) or cap data about `axis`, in axial coordinates about `axis`.
fn extension_axial<T: Real>(
    profile: &KernelProfile<T>,
    x: &BallPoint<T>,
    axis: &UnitDirection<T>,
    height: Option<T>,
    rule: &SphereRule,
    n: usize,
) -> Result<Extension<T>> {
    let l = axis.coords();
    let nx = radial_frame(x, axis);
    // n_x = cos β l + sin β m with m ⟂ l
    let cos_b = dot(&nx, l).max(-T::one()).min(T::one());
    let mut perp: Vec<T> = nx.iter().zip(l).map(|(&a, &b)| a - cos_b * b).collect();
    let sin_b = norm(&perp);
    if sin_b <= T::epsilon() * T::lit(8.0) {
        perp = axis.orthogonal_complement_vector().coords().to_vec();
    } else {
        perp.iter_mut().for_each(|v| *v /= sin_b);
    }
    let sin_b = if sin_b <= T::epsilon() * T::lit(8.0) { T::zero() } else { sin_b };
    let jump = height.map_or(T::FRAC_PI_2(), |h| h.acos());
    let mut phi_breaks = vec![jump];
    phi_breaks.extend(peak_breaks(profile.rho(), cos_b.acos()));
    let psi_breaks = if sin_b > T::zero() { peak_breaks(profile.rho(), T::zero()) } else { Vec::new() };
    let data = |s: T| match height {
        Some(h) => {
            if s > h {
                T::one()
            } else {
                T::zero()
            }
        }
        None => sign(s),
    };
    let [value, a_int, b_s, b_w] = reduce_axial_multi(
        n,
        |s, w| {
            let f = data(s);
            if f == T::zero() {
                return [T::zero(); 4];
            }
            let radial = cos_b * s + sin_b * w;
            let d = profile.distance_sq(radial);
            let p = profile.value_at_distance_sq(d);
            let (a, b) = profile.gradient_coeffs_at_distance_sq(d);
            [p * f, a * f, b * f * s, b * f * w]
        },
        rule,
        &phi_breaks,
        &psi_breaks,
    )?;
    let grad: Vec<SphereIntegral<T>> = (0..n)
        .map(|j| SphereIntegral {
            value: a_int.value * x.coords()[j] + b_s.value * l[j] + b_w.value * perp[j],
            stderr: T::zero(),
        })
        .collect();
    Ok(Extension { value: vec![value], jacobian: grad, m: 1, n })
}

fn extension_monte_carlo<T: Real>(
    phi: &BoundaryData<T>,
    profile: &KernelProfile<T>,
    x: &BallPoint<T>,
    rule: &SphereRule,
) -> Result<Extension<T>> {
    let SphereRule::MonteCarlo { samples, seed } = *rule else {
        return Err(Error::Quadrature("Monte Carlo extension needs a Monte Carlo rule".into()));
    };
    let n = phi.n;
    let m = phi.value_dim();
    let xc = x.coords();
    let est = monte_carlo_sphere_vec(
        n,
        m + m * n,
        |z: &[T], out: &mut [T]| {
            let mut v = vec![T::zero(); m];
            phi.eval(z, &mut v);
            let d: T = xc.iter().zip(z).map(|(&a, &b)| (a - b).sq()).sum();
            let p = profile.value_at_distance_sq(d);
            let (a, b) = profile.gradient_coeffs_at_distance_sq(d);
            for i in 0..m {
                out[i] = p * v[i];
                for j in 0..n {
                    out[m + i * n + j] = (a * xc[j] + b * z[j]) * v[i];
                }
            }
        },
        samples,
        seed,
    );
    let all: Vec<SphereIntegral<T>> = est
        .into_iter()
        .map(|e| SphereIntegral { value: e.estimate, stderr: e.stderr })
        .collect();
    if all.iter().any(|v| !v.value.is_finite()) {
        return Err(Error::Quadrature("Monte Carlo extension produced non-finite values".into()));
    }
    Ok(Extension { value: all[..m].to_vec(), jacobian: all[m..].to_vec(), m, n })
}

/// `u(x) = ∫ P_α(x, ζ) φ(ζ) dσ(ζ)`.
pub fn poisson_extend<T: Real>(
    phi: &BoundaryData<T>,
    params: &ProblemParams<T>,
    x: &BallPoint<T>,
    rule: &SphereRule,
) -> Result<Vec<T>> {
    Ok(poisson_extension(phi, params, x, rule)?.values())
}

/// `Du(x)_{ij} = ∫ ∂_j P_α(x, ζ) φ_i(ζ) dσ(ζ)`.
pub fn poisson_jacobian<T: Real>(
    phi: &BoundaryData<T>,
    params: &ProblemParams<T>,
    x: &BallPoint<T>,
    rule: &SphereRule,
) -> Result<JacobianMatrix<T>> {
    Ok(poisson_extension(phi, params, x, rule)?.jacobian())
}

/// Central-difference `Δ_α u(x) = (1-|x|²)[(1-|x|²) Δu - 2α ⟨x, ∇u⟩ + α(2-n-α) u]`.
pub fn alpha_laplacian_residual<T, F>(u: F, params: &ProblemParams<T>, x: &BallPoint<T>, h: T) -> Result<Vec<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<Vec<T>>,
{
    let n = params.n();
    if x.dim() != n {
        return Err(domain(format!("point has dimension {}, expected {n}", x.dim())));
    }
    if !(h > T::zero()) {
        return Err(domain(format!("step must be positive, got {h}")));
    }
    if !(T::one() - x.norm() > h * T::from_usize_lossy(n).sqrt()) {
        return Err(domain(format!("point at |x| = {} is within h*sqrt(n) of the sphere", x.norm())));
    }
    let center = u(x.coords())?;
    let m = center.len();
    let mut lap = vec![T::zero(); m];
    let mut radial = vec![T::zero(); m];
    let mut probe = x.coords().to_vec();
    for j in 0..n {
        let xj = probe[j];
        probe[j] = xj + h;
        let plus = u(&probe)?;
        probe[j] = xj - h;
        let minus = u(&probe)?;
        probe[j] = xj;
        for i in 0..m {
            lap[i] += (plus[i] - center[i] - center[i] + minus[i]) / (h * h);
            radial[i] += xj * (plus[i] - minus[i]) / (T::two() * h);
        }
    }
    let alpha = params.alpha();
    let defect = x.defect();
    let zeroth = alpha * (params.hyperbolic_alpha() - alpha);
    Ok((0..m)
        .map(|i| defect * (defect * lap[i] - T::two() * alpha * radial[i] + zeroth * center[i]))
        .collect())
}
