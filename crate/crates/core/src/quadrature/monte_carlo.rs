use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Complex, Error, Executor, Result};

/// Samples drawn from one ChaCha stream.
pub const MC_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if o.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return o;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments { n, mean: self.mean + d * o.n / n, m2: self.m2 + o.m2 + d * d * self.n * o.n / n }
    }
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Plain Monte Carlo estimate of `∫_𝔻 f dA` (normalized measure) with points
/// `√U₁ · e^{2πiU₂}`. Chunk `k` draws from stream `k` of a ChaCha8 generator
/// seeded with `seed`, so the result does not depend on the executor.
pub fn monte_carlo_disk<F, E>(f: F, n_samples: usize, seed: u64, exec: &E) -> Result<McEstimate>
where
    F: Fn(Complex) -> f64 + Sync + Send,
    E: Executor,
{
    if n_samples < 1000 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least 1000 samples"));
    }
    let chunks = n_samples.div_ceil(MC_CHUNK);
    let parts = exec.map(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let count = MC_CHUNK.min(n_samples - k * MC_CHUNK);
        let mut m = Moments::default();
        for _ in 0..count {
            let r = libm::sqrt(unit(&mut rng));
            let theta = 2.0 * core::f64::consts::PI * unit(&mut rng);
            m.push(f(Complex::from_polar(r, theta)));
        }
        m
    });
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = total.m2 / (total.n - 1.0);
    Ok(McEstimate { value: total.mean, std_error: libm::sqrt(var / total.n), samples: n_samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Sequential;

    #[test]
    fn constant_is_exact() {
        let e = monte_carlo_disk(|_| 1.0, 5000, 7, &Sequential).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn second_moment_within_three_sigma() {
        let e = monte_carlo_disk(|z| z.norm_sqr(), 1_000_000, 42, &Sequential).unwrap();
        assert!((e.value - 0.5).abs() <= 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn same_seed_same_value() {
        let a = monte_carlo_disk(|z| z.re.exp(), 200_000, 3, &Sequential).unwrap();
        let b = monte_carlo_disk(|z| z.re.exp(), 200_000, 3, &Sequential).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let c = monte_carlo_disk(|z| z.re.exp(), 200_000, 4, &Sequential).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(monte_carlo_disk(|_| 1.0, 999, 0, &Sequential).is_err());
    }
}
