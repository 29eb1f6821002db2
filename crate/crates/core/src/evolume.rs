//! The polytope `E_{n,γ} = {x ∈ ℝⁿ : Σ|x_j| + |1 − Σx_j| ≤ γ}` and its volume `χₙ(γ)/n!`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::legendre::{chi, chi_sum};
use crate::scalar::Real;

/// Samples drawn from one ChaCha8 substream in [`e_volume_mc`].
pub const MC_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnGamma<T> {
    dim: usize,
    gamma: T,
}

impl<T: Real> EnGamma<T> {
    pub fn new(dim: usize, gamma: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("E_{n,γ} needs n >= 1".into()));
        }
        if !(gamma >= T::one()) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "E_{{n,γ}} needs γ >= 1, got {gamma}"
            )));
        }
        Ok(Self { dim, gamma })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// `Σ|x_j| + |1 − Σx_j|`.
    pub fn gauge(x: &[T]) -> T {
        let (abs, sum) = x
            .iter()
            .fold((T::zero(), T::zero()), |(a, s), &v| (a + v.abs(), s + v));
        abs + (T::one() - sum).abs()
    }

    pub fn contains(&self, x: &Point<T>) -> Result<bool> {
        x.check_dim(self.dim)?;
        Ok(Self::gauge(x.coords()) <= self.gamma)
    }

    /// `χₙ(γ)/n!`.
    pub fn volume_exact(&self) -> T {
        let fact = (2..=self.dim).fold(T::one(), |f, i| f * T::from_usize_lossy(i));
        chi(self.dim as u32, self.gamma) / fact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
}

/// Uniform sampling in the enclosing box `[−γ, γ]ⁿ`.
///
/// The budget is cut into chunks of [`MC_CHUNK`] samples; chunk `k` draws from
/// ChaCha8 stream `k` of `seed`, so the result does not depend on how chunks are
/// scheduled.
pub fn e_volume_mc(spec: &EnGamma<f64>, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    let n = spec.dim;
    let g = spec.gamma;
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .map(|k| {
            let count = MC_CHUNK.min(samples - k * MC_CHUNK);
            count_hits(n, g, count, seed, k)
        })
        .sum();
    let box_vol = (2.0 * g).powi(n as i32);
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: box_vol * p,
        std_error: box_vol * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        hits,
        seed,
    })
}

fn count_hits(n: usize, gamma: f64, count: u64, seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut x = vec![0.0; n];
    let mut hits = 0;
    for _ in 0..count {
        for v in x.iter_mut() {
            *v = rng.random_range(-gamma..gamma);
        }
        if EnGamma::gauge(&x) <= gamma {
            hits += 1;
        }
    }
    hits
}

/// `|mes_{n+1} − ((2n+1)/(n+1)² · t · mes_n − mes_{n−1}/(n+1)²)|`, with each volume
/// taken from the closed-form binomial sum.
pub fn e_measure_recurrence_check<T: Real>(n: usize, t: T) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidInput("recurrence check needs n >= 1".into()));
    }
    let mes = |k: usize| -> Result<T> {
        let fact = (2..=k).fold(T::one(), |f, i| f * T::from_usize_lossy(i));
        Ok(chi_sum(k as u32, t)? / fact)
    };
    let n1 = T::from_usize_lossy(n + 1);
    let nn = T::from_usize_lossy(2 * n + 1);
    let rhs = nn / (n1 * n1) * t * mes(n)? - mes(n - 1)? / (n1 * n1);
    Ok((mes(n + 1)? - rhs).abs())
}
