use alpha_harmonic::kernel::{c_n_alpha, kernel_gradient, kernel_mass, kernel_value, BallPoint, ProblemParams, UnitDirection};
use alpha_harmonic::sphere::{monte_carlo_sphere, reduce_zonal_split, SphereRule};
use approx::assert_relative_eq;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.into_iter().map(|c| c / r).collect()
}

fn in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<f64> {
    let s = radius * rng.random::<f64>();
    unit(rng, n).into_iter().map(|c| c * s).collect()
}

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-5;
    for k in 0..100 {
        let n = 3 + k % 3;
        let alpha = [-2.0, -1.0, 0.0, 0.5][k % 4];
        let params = ProblemParams::new(n, alpha).unwrap();
        let x = in_ball(&mut rng, n, 0.9);
        let zeta = UnitDirection::new(unit(&mut rng, n)).unwrap();
        let grad = kernel_gradient(&params, &BallPoint::new(x.clone()).unwrap(), &zeta).unwrap();
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        for j in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let fp = kernel_value(&params, &BallPoint::new(xp).unwrap(), &zeta).unwrap();
            let fm = kernel_value(&params, &BallPoint::new(xm).unwrap(), &zeta).unwrap();
            let fd = (fp - fm) / (2.0 * h);
            assert!((fd - grad[j]).abs() <= 1e-6 * gnorm, "pair {k}, component {j}: {fd} vs {}", grad[j]);
        }
    }
}

#[test]
fn kernel_is_rotation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [3, 4, 5] {
        let params = ProblemParams::new(n, -0.5).unwrap();
        let raw: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
        let q = DMatrix::from_row_slice(n, n, &raw).qr().q();
        for _ in 0..10 {
            let x = in_ball(&mut rng, n, 0.8);
            let z = unit(&mut rng, n);
            let qx: Vec<f64> = (&q * nalgebra::DVector::from_vec(x.clone())).iter().copied().collect();
            let qz: Vec<f64> = (&q * nalgebra::DVector::from_vec(z.clone())).iter().copied().collect();
            let a = kernel_value(&params, &BallPoint::new(x).unwrap(), &UnitDirection::new(z).unwrap()).unwrap();
            let b = kernel_value(&params, &BallPoint::new(qx).unwrap(), &UnitDirection::new(qz).unwrap()).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }
}

#[test]
fn mass_matches_quadrature_and_monte_carlo() {
    let rule = SphereRule::gauss(256, 256);
    for n in [3, 4, 5] {
        for alpha in [-2.0, 0.0, 0.5] {
            let params = ProblemParams::new(n, alpha).unwrap();
            for t in [0.0, 0.3, 0.6, 0.9] {
                let x = BallPoint::on_axis(n, t).unwrap();
                let closed = kernel_mass(&params, &x).unwrap();
                let breaks: Vec<f64> = [1.0, 4.0, 16.0].iter().map(|k: &f64| (k * (1.0 - t)).min(3.0)).collect();
                let quad = reduce_zonal_split(
                    n,
                    |s| {
                        let z = UnitDirection::new(vec![s, (1.0 - s * s).max(0.0).sqrt()].into_iter().chain(std::iter::repeat(0.0)).take(n).collect()).unwrap();
                        kernel_value(&params, &x, &z).unwrap()
                    },
                    &rule,
                    &breaks,
                )
                .unwrap();
                assert!((closed - quad.value).abs() <= 1e-8, "n={n} a={alpha} t={t}: {closed} vs {}", quad.value);
                if t <= 0.6 {
                    let mc = monte_carlo_sphere(
                        n,
                        |z: &[f64]| kernel_value(&params, &x, &UnitDirection::new(z.to_vec()).unwrap()).unwrap(),
                        100_000,
                        3,
                    );
                    assert!((mc.estimate - closed).abs() <= 5.0 * mc.stderr + 1e-12, "n={n} a={alpha} t={t}");
                }
            }
        }
    }
}

#[test]
fn harmonic_mass_is_one_and_constant_matches_known_values() {
    // α = 0 reproduces constants; C_{3,0} = 1
    let params = ProblemParams::new(3, 0.0).unwrap();
    assert_relative_eq!(c_n_alpha(&params), 1.0, max_relative = 1e-15);
    for t in [0.0, 0.5, 0.95] {
        assert_relative_eq!(kernel_mass(&params, &BallPoint::on_axis(3, t).unwrap()).unwrap(), 1.0, max_relative = 1e-13);
    }
    // α = 2 - n is the hyperbolic case, which also reproduces constants
    let params = ProblemParams::new(4, -2.0).unwrap();
    for t in [0.2, 0.7] {
        assert_relative_eq!(kernel_mass(&params, &BallPoint::on_axis(4, t).unwrap()).unwrap(), 1.0, max_relative = 1e-12);
    }
}
