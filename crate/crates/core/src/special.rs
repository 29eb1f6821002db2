//! Closed-form volumes of the unit ball and of its inscribed regular simplex.

use crate::scalar::Real;

/// `κₙ`, the volume of the unit ball in `ℝⁿ`, via the even/odd product forms
/// `κ₂ₖ = πᵏ/k!` and `κ₂ₖ₊₁ = 2ᵏ⁺¹πᵏ/(2k+1)!!`.
pub fn unit_ball_volume<T: Real>(n: usize) -> T {
    let pi = T::from_f64(std::f64::consts::PI).unwrap();
    let k = n / 2;
    if n % 2 == 0 {
        (1..=k).fold(T::one(), |acc, i| acc * pi / T::from_usize_lossy(i))
    } else {
        let two = T::lit(2.0);
        (1..=k).fold(two, |acc, i| {
            acc * two * pi / T::from_usize_lossy(2 * i + 1)
        })
    }
}

/// `σₙ = √(n+1) ((n+1)/n)^(n/2) / n!`, the volume of a regular simplex inscribed in `Bₙ`.
pub fn inscribed_regular_simplex_volume<T: Real>(n: usize) -> T {
    assert!(n >= 1, "dimension must be positive");
    let nf = T::from_usize_lossy(n);
    let n1 = nf + T::one();
    let ln_fact: T = (2..=n).map(|i| T::from_usize_lossy(i).ln()).sum();
    let ln = T::lit(0.5) * n1.ln() + nf * T::lit(0.5) * (n1 / nf).ln() - ln_fact;
    ln.exp()
}

/// Natural log of `n!`.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert_relative_eq!(unit_ball_volume::<f64>(1), 2.0);
        assert_relative_eq!(unit_ball_volume::<f64>(2), PI, max_relative = 1e-15);
        assert_relative_eq!(
            unit_ball_volume::<f64>(3),
            4.0 * PI / 3.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            unit_ball_volume::<f64>(4),
            PI * PI / 2.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            unit_ball_volume::<f64>(5),
            8.0 * PI * PI / 15.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn ball_volume_matches_gamma_form() {
        // κₙ = π^(n/2) / Γ(n/2 + 1) with Γ of half-integers from Γ(1/2) = √π.
        for n in 1..=40usize {
            let mut gamma = if n % 2 == 0 { 1.0 } else { PI.sqrt() };
            let mut x = if n % 2 == 0 { 1.0 } else { 0.5 };
            while x < n as f64 / 2.0 + 1.0 - 1e-9 {
                gamma *= x;
                x += 1.0;
            }
            let expected = PI.powf(n as f64 / 2.0) / gamma;
            assert_relative_eq!(unit_ball_volume::<f64>(n), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn simplex_volumes() {
        assert_relative_eq!(
            inscribed_regular_simplex_volume::<f64>(1),
            2.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            inscribed_regular_simplex_volume::<f64>(2),
            3.0 * 3f64.sqrt() / 4.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            inscribed_regular_simplex_volume::<f64>(3),
            8.0 / (9.0 * 3f64.sqrt()),
            max_relative = 1e-14
        );
    }
}
