//! Standardized Legendre polynomials `χₙ` (normalized so that `χₙ(1) = 1`).
//!
//! The three-term recurrence is the canonical evaluator. On `[1, ∞)` every
//! `χₙ` with `n ≥ 1` is strictly increasing, which is what makes [`chi_inv`]
//! well defined.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::ln_factorial;

/// Largest degree accepted by the closed-form sum; keeps `C(n,i)²` finite.
pub const MAX_SUM_DEGREE: u32 = 200;

const INVERSE_MAX_ITERS: usize = 200;

/// Binomial coefficient `C(n, k)` by incremental multiplication.
pub fn binomial<T: Real>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut c = T::one();
    for i in 1..=k {
        c = c * T::from_u32(n - k + i).unwrap() / T::from_u32(i).unwrap();
    }
    c.round()
}

/// `χₙ(t)` by `χₙ₊₁ = ((2n+1) t χₙ − n χₙ₋₁) / (n+1)` from `χ₀ = 1`, `χ₁ = t`.
pub fn chi<T: Real>(n: u32, t: T) -> T {
    if n == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut cur = t;
    for k in 1..n {
        let kf = T::from_u32(k).unwrap();
        let next = ((kf + kf + T::one()) * t * cur - kf * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `(1/2ⁿ) Σᵢ C(n,i)² (γ−1)^(n−i) (γ+1)^i`, which equals `χₙ(γ)` for `γ ≥ 1`.
pub fn chi_sum<T: Real>(n: u32, gamma: T) -> Result<T> {
    if !(gamma >= T::one()) {
        return Err(Error::Domain(format!(
            "chi_sum needs gamma >= 1, got {gamma}"
        )));
    }
    if n > MAX_SUM_DEGREE {
        return Err(Error::Domain(format!(
            "chi_sum degree {n} exceeds {MAX_SUM_DEGREE}"
        )));
    }
    let half = T::lit(0.5);
    // Fold the 1/2ⁿ into the powers: ((γ−1)/2)^(n−i) ((γ+1)/2)^i.
    let lo = (gamma - T::one()) * half;
    let hi = (gamma + T::one()) * half;
    let mut total = T::zero();
    for i in 0..=n {
        let c: T = binomial(n, i);
        total += c * c * lo.powi((n - i) as i32) * hi.powi(i as i32);
    }
    Ok(total)
}

/// Inverse of `χₙ` on `[1, ∞)`: the `t ≥ 1` with `χₙ(t) = s`.
///
/// The bracket starts at `[1, 2]` and doubles until it encloses `s`; bisection
/// then runs to floating-point resolution (at most 200 halvings).
pub fn chi_inv<T: Real>(n: u32, s: T) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("chi_inv needs degree n >= 1".into()));
    }
    if !(s >= T::one()) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "chi_inv needs a finite s >= 1, got {s}"
        )));
    }
    if s == T::one() {
        return Ok(T::one());
    }
    if n == 1 {
        return Ok(s);
    }
    let two = T::lit(2.0);
    let mut lo = T::one();
    let mut hi = two;
    while chi(n, hi) < s {
        lo = hi;
        hi = hi * two;
        if !hi.is_finite() {
            return Err(Error::Domain(format!(
                "chi_inv bracket overflow for s = {s}"
            )));
        }
    }
    for _ in 0..INVERSE_MAX_ITERS {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if chi(n, mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick whichever endpoint reproduces s more closely.
    let elo = (chi(n, lo) - s).abs();
    let ehi = (chi(n, hi) - s).abs();
    Ok(if elo <= ehi { lo } else { hi })
}

/// `ln χₙ(t)` for `t ≥ 1`, by log-sum-exp over the binomial sum; finite where `χₙ(t)` overflows.
pub fn ln_chi(n: u32, t: f64) -> Result<f64> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "ln_chi needs a finite t >= 1, got {t}"
        )));
    }
    let nu = n as usize;
    let (ln_lo, ln_hi) = (((t - 1.0) * 0.5).ln(), ((t + 1.0) * 0.5).ln());
    let terms: Vec<f64> = (0..=nu)
        .filter(|&i| i == nu || t > 1.0)
        .map(|i| {
            let ln_c = ln_factorial(nu) - ln_factorial(i) - ln_factorial(nu - i);
            let lo_part = if i == nu {
                0.0
            } else {
                (nu - i) as f64 * ln_lo
            };
            2.0 * ln_c + lo_part + i as f64 * ln_hi
        })
        .collect();
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(m + terms.iter().map(|x| (x - m).exp()).sum::<f64>().ln())
}

/// `χₙ⁻¹(exp(ln_s))`, for arguments too large to hold as `f64`.
pub fn chi_inv_ln(n: u32, ln_s: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("chi_inv_ln needs degree n >= 1".into()));
    }
    if !(ln_s >= 0.0) || !ln_s.is_finite() {
        return Err(Error::Domain(format!(
            "chi_inv_ln needs a finite ln s >= 0, got {ln_s}"
        )));
    }
    if ln_s == 0.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while ln_chi(n, hi)? < ln_s {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain(format!(
                "chi_inv_ln bracket overflow for ln s = {ln_s}"
            )));
        }
    }
    for _ in 0..INVERSE_MAX_ITERS {
        let mid = lo + (hi - lo) * 0.5;
        if mid <= lo || mid >= hi {
            break;
        }
        if ln_chi(n, mid)? < ln_s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * 0.5)
}

/// Lower estimate `(s / C(n, ⌊n/2⌋))^(1/n)` of `χₙ⁻¹(s)`, strict for `n > 1`.
pub fn chi_inv_lower<T: Real>(n: u32, s: T) -> Result<T> {
    if n <= 1 {
        return Err(Error::Domain("chi_inv_lower needs degree n > 1".into()));
    }
    if !(s >= T::one()) {
        return Err(Error::Domain(format!(
            "chi_inv_lower needs s >= 1, got {s}"
        )));
    }
    let c: T = binomial(n, n / 2);
    Ok((s / c).powf(T::one() / T::from_u32(n).unwrap()))
}
