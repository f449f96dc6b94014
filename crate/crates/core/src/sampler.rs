use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operators::Region;
use crate::vector::RealVector;

/// Seeded point sampler over a box or a Euclidean ball.
///
/// Backed by ChaCha8 (256-bit key, 64-bit stream position); the sequence is a
/// pure function of `(seed, region, dim)`.
#[derive(Debug, Clone)]
pub struct DomainSampler {
    region: Region,
    dim: usize,
    seed: u64,
    rng: ChaCha8Rng,
}

impl DomainSampler {
    pub fn new(region: Region, dim: usize, seed: u64) -> Self {
        assert!(dim > 0, "sampler dimension must be positive");
        DomainSampler {
            region,
            dim,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample(&mut self) -> RealVector {
        let coords = match self.region {
            Region::Box { lo, hi } => (0..self.dim)
                .map(|_| {
                    if lo == hi {
                        lo
                    } else {
                        self.rng.gen_range(lo..=hi)
                    }
                })
                .collect(),
            Region::Ball { radius } => self.sample_ball(radius),
        };
        RealVector::new(coords).expect("samples are finite")
    }

    pub fn pair(&mut self) -> (RealVector, RealVector) {
        let x = self.sample();
        let y = self.sample();
        (x, y)
    }

    // Gaussian direction via Box-Muller, radius ∝ U^{1/d}.
    fn sample_ball(&mut self, radius: f64) -> Vec<f64> {
        let mut g: Vec<f64> = Vec::with_capacity(self.dim + 1);
        while g.len() < self.dim {
            let u1: f64 = 1.0 - self.rng.gen::<f64>();
            let u2: f64 = self.rng.gen();
            let r = libm::sqrt(-2.0 * libm::log(u1));
            let theta = 2.0 * core::f64::consts::PI * u2;
            g.push(r * libm::cos(theta));
            g.push(r * libm::sin(theta));
        }
        g.truncate(self.dim);
        let n = libm::sqrt(g.iter().map(|v| v * v).sum::<f64>());
        let u: f64 = self.rng.gen();
        let scale = if n > 0.0 {
            radius * libm::pow(u, 1.0 / self.dim as f64) / n
        } else {
            0.0
        };
        let mut out: Vec<f64> = g.into_iter().map(|v| v * scale).collect();
        // Guard the boundary against rounding.
        Region::Ball { radius }.project(&mut out);
        out
    }
}
