//! Seeded Monte Carlo integration over the sphere.
//!
//! Samples are drawn in fixed blocks of [`BLOCK`] points. Block `k` uses a ChaCha8
//! generator seeded with the user seed on stream `k`, so any partition of the blocks
//! across threads yields the same samples, and the per-block statistics are merged in
//! block order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::real::Real;

pub const BLOCK: usize = 64;

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate<T> {
    pub estimate: T,
    pub stderr: T,
}

#[derive(Clone, Copy, Debug)]
struct Welford {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Welford {
    const EMPTY: Self = Self { count: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Writes block `block` of uniformly distributed points on `S^{n-1}` into `out`
/// (row-major, `len` points of dimension `n`).
pub fn fill_block<T: Real>(n: usize, seed: u64, block: usize, len: usize, out: &mut Vec<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    out.clear();
    let mut point = vec![0.0_f64; n];
    for _ in 0..len {
        loop {
            for c in point.iter_mut() {
                *c = StandardNormal.sample(&mut rng);
            }
            let r = point.iter().map(|c| c * c).sum::<f64>().sqrt();
            if r > 1e-300 {
                out.extend(point.iter().map(|c| T::lit(c / r)));
                break;
            }
        }
    }
}

fn block_len(count: usize, block: usize) -> usize {
    BLOCK.min(count - block * BLOCK)
}

/// Estimates the componentwise integrals of a vector-valued `f` with `m` outputs.
pub fn monte_carlo_sphere_vec<T, F>(n: usize, m: usize, f: F, count: usize, seed: u64) -> Vec<McEstimate<T>>
where
    T: Real,
    F: Fn(&[T], &mut [T]) + Sync,
{
    let blocks = count.div_ceil(BLOCK);
    let stats: Vec<Vec<Welford>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut pts = Vec::with_capacity(BLOCK * n);
            fill_block::<T>(n, seed, b, block_len(count, b), &mut pts);
            let mut acc = vec![Welford::EMPTY; m];
            let mut value = vec![T::zero(); m];
            for zeta in pts.chunks_exact(n) {
                f(zeta, &mut value);
                for (a, v) in acc.iter_mut().zip(&value) {
                    a.push(v.to_f64_lossy());
                }
            }
            acc
        })
        .collect();
    (0..m)
        .map(|j| {
            let total = stats.iter().fold(Welford::EMPTY, |acc, s| acc.merge(s[j]));
            let var = if total.count > 1.0 { total.m2 / (total.count - 1.0) } else { 0.0 };
            McEstimate {
                estimate: T::lit(total.mean),
                stderr: T::lit((var / total.count).sqrt()),
            }
        })
        .collect()
}

/// Estimates `∫ f dσ` with `count` uniform samples.
pub fn monte_carlo_sphere<T, F>(n: usize, f: F, count: usize, seed: u64) -> McEstimate<T>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    monte_carlo_sphere_vec(n, 1, |z: &[T], out: &mut [T]| out[0] = f(z), count, seed)[0]
}

/// Largest value of `f` over `count` seeded samples, with the maximizing point.
pub fn monte_carlo_max<T, F>(n: usize, f: F, count: usize, seed: u64) -> (T, Vec<T>)
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let blocks = count.div_ceil(BLOCK);
    let best: Vec<(T, Vec<T>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut pts = Vec::with_capacity(BLOCK * n);
            fill_block::<T>(n, seed, b, block_len(count, b), &mut pts);
            let mut best = (T::neg_infinity(), Vec::new());
            for zeta in pts.chunks_exact(n) {
                let v = f(zeta);
                if v > best.0 {
                    best = (v, zeta.to_vec());
                }
            }
            best
        })
        .collect();
    // first block wins ties, independent of thread scheduling
    best.into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .unwrap_or((T::neg_infinity(), Vec::new()))
}
