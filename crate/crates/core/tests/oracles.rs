use minspace_core::functionals::kappa;
use minspace_core::quadrature::{integrate_disk, monte_carlo_disk, series_kernel_integral};
use minspace_core::symbol::comp_second_derivative;
use minspace_core::{Complex, QuadConfig, Sequential, Symbol};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn kernel(alpha: Complex, p: f64) -> impl Fn(Complex) -> f64 + Sync + Send {
    move |z: Complex| (Complex::new(1.0, 0.0) - alpha.conj() * z).norm().powf(-p)
}

#[test]
fn kernel_family_against_series() {
    let cfg = QuadConfig::default();
    for p in [2.0, 3.0, 4.0] {
        for a in [0.0, 0.5, 0.9] {
            let alpha = Complex::new(a, 0.0);
            let q = integrate_disk(kernel(alpha, p), &cfg).unwrap();
            let s = series_kernel_integral(alpha, p).unwrap();
            assert!((q.value / s - 1.0).abs() < 1e-6, "p={p} a={a}: {} vs {s}", q.value);
        }
    }
}

#[test]
fn kernel_family_against_monte_carlo() {
    let cfg = QuadConfig::default();
    for (i, p) in [2.0, 3.0, 4.0].into_iter().enumerate() {
        for (j, a) in [0.0, 0.5, 0.9].into_iter().enumerate() {
            let alpha = Complex::new(a, 0.0);
            let q = integrate_disk(kernel(alpha, p), &cfg).unwrap();
            let mc = monte_carlo_disk(kernel(alpha, p), 1_000_000, (10 * i + j) as u64, &Sequential).unwrap();
            assert!((q.value - mc.value).abs() <= 3.0 * mc.std_error.max(1e-15), "p={p} a={a}: {} vs {mc:?}", q.value);
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn kappa_against_monte_carlo_on_random_pairs() {
    let cfg = QuadConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let point = |rmax: f64, rng: &mut ChaCha8Rng| {
        Complex::from_polar(rmax * uniform(rng).sqrt(), 2.0 * std::f64::consts::PI * uniform(rng))
    };
    for k in 0..5 {
        let zeros: Vec<Complex> = (0..=k % 3).map(|_| point(0.7, &mut rng)).collect();
        let psi = Symbol::blaschke(zeros, Complex::new(1.0, 0.0)).unwrap();
        let alpha = point(0.8, &mut rng);
        let q = kappa(&psi, alpha, &cfg).unwrap();
        let f = |z| comp_second_derivative(alpha, &psi, z).unwrap().norm();
        let mc = monte_carlo_disk(f, 1_000_000, 100 + k as u64, &Sequential).unwrap();
        assert!((q.value - mc.value).abs() <= 3.0 * mc.std_error, "{} vs {mc:?}", q.value);
    }
}
