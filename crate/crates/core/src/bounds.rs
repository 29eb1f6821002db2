//! Closed-form bounds and known values for the minimal projector norm `θₙ(K)`.
//!
//! Table data is stored as exact integer ratios (or, for the few irrational and
//! truncated entries, as the printed expression) and converted to `f64` on demand.

use std::f64::consts::{E, PI};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hadamard::hadamard;
use crate::legendre::{chi, chi_inv, chi_inv_ln, ln_chi};
use crate::special::{inscribed_regular_simplex_volume, ln_factorial, unit_ball_volume};

/// Dimensions covered by the table of maximum cube-simplex volumes.
pub const NU_TABLE_MAX: usize = 12;
/// Dimensions covered by the table of upper estimates for `θₙ(Qₙ)`.
pub const THETA_UPPER_MAX: usize = 27;
/// Slack for comparisons between independently computed bounds.
pub const CONSISTENCY_TOL: f64 = 1e-9;

const NU_TABLE: [(i64, i64); NU_TABLE_MAX] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 8),
    (1, 24),
    (1, 80),
    (2, 315),
    (1, 720),
    (1, 2520),
    (1, 11340),
    (9, 246400),
    (3, 394240),
];

/// `νₙ`, the largest volume of a simplex in `Qₙ`, for `1 ≤ n ≤ 12`.
pub fn nu_table(n: usize) -> Option<Ratio<i64>> {
    (1..=NU_TABLE_MAX).contains(&n).then(|| {
        let (p, q) = NU_TABLE[n - 1];
        Ratio::new(p, q)
    })
}

/// `hₙ = n! νₙ`, the largest determinant of an `n×n` 0/1 matrix, for `1 ≤ n ≤ 12`.
pub fn h_table(n: usize) -> Option<i64> {
    let nu = nu_table(n)?;
    let fact = Ratio::from_integer((2..=n as i64).product::<i64>());
    let h = nu * fact;
    h.is_integer().then(|| h.to_integer())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NuSource {
    /// The exact value from the table.
    Table,
    /// The upper bound `(n+1)^((n+1)/2) / (2ⁿ n!)`.
    HadamardBound,
}

impl NuSource {
    pub fn as_str(self) -> &'static str {
        match self {
            NuSource::Table => "nu_table",
            NuSource::HadamardBound => "nu_hadamard_bound",
        }
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `ln((n+1)^((n+1)/2) / (2ⁿ n!))`.
fn ln_nu_hadamard(n: usize) -> f64 {
    let m = (n + 1) as f64;
    0.5 * m * m.ln() - n as f64 * 2f64.ln() - ln_factorial(n)
}

/// `νₙ` from the table when known, otherwise its Hadamard upper bound.
pub fn nu_value(n: usize) -> (f64, NuSource) {
    match nu_table(n) {
        Some(r) => (ratio_f64(r), NuSource::Table),
        None => (ln_nu_hadamard(n).exp(), NuSource::HadamardBound),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuBounds {
    /// `(3/4)^((n+1)/2) (n+1)^((n+1)/2) / (2ⁿ n!)`, a strict lower bound.
    pub lower: f64,
    /// `(n+1)^((n+1)/2) / (2ⁿ n!)`, attained iff `n+1` is a Hadamard order.
    pub upper: f64,
    /// `n^(n/2) √(2n+1) / (2ⁿ n!)`, for even `n`.
    pub upper_even: Option<f64>,
    /// `(n−1)^((n−1)/2) / (2ⁿ⁻¹ (n−1)!)`, for `n > 1`, `n ≡ 1 (mod 4)`.
    pub upper_1mod4: Option<f64>,
}

pub fn nu_bounds(n: usize) -> Result<NuBounds> {
    if n < 2 {
        return Err(Error::Domain("nu_bounds needs n >= 2".into()));
    }
    let nf = n as f64;
    let m = nf + 1.0;
    let upper = ln_nu_hadamard(n).exp();
    let lower = (0.5 * m * 0.75f64.ln() + ln_nu_hadamard(n)).exp();
    let upper_even = (n % 2 == 0).then(|| {
        (0.5 * nf * nf.ln() + 0.5 * (2.0 * nf + 1.0).ln() - nf * 2f64.ln() - ln_factorial(n)).exp()
    });
    let upper_1mod4 = (n % 4 == 1).then(|| {
        let k = nf - 1.0;
        (0.5 * k * k.ln() - k * 2f64.ln() - ln_factorial(n - 1)).exp()
    });
    Ok(NuBounds {
        lower,
        upper,
        upper_even,
        upper_1mod4,
    })
}

/// `(κₙ, σₙ)`: volumes of the unit ball and of its inscribed regular simplex.
pub fn kappa_sigma(n: usize) -> (f64, f64) {
    (unit_ball_volume(n), inscribed_regular_simplex_volume(n))
}

/// `ln(κₙ/σₙ)` through the parity-split closed forms:
/// `n = 2k`: `π^k (2k)! / (k! √(2k+1) ((2k+1)/(2k))^k)`;
/// `n = 2k+1`: `2 k! (4π)^k / (√(2k+2) ((2k+2)/(2k+1))^((2k+1)/2))`.
pub fn ln_kappa_over_sigma(n: usize) -> f64 {
    let k = (n / 2) as f64;
    if n % 2 == 0 {
        k * PI.ln() + ln_factorial(n)
            - ln_factorial(n / 2)
            - 0.5 * (2.0 * k + 1.0).ln()
            - k * ((2.0 * k + 1.0) / (2.0 * k)).ln()
    } else {
        2f64.ln() + ln_factorial(n / 2) + k * (4.0 * PI).ln()
            - 0.5 * (2.0 * k + 2.0).ln()
            - 0.5 * (2.0 * k + 1.0) * ((2.0 * k + 2.0) / (2.0 * k + 1.0)).ln()
    }
}

/// `χₙ⁻¹(vol/simp)`: no projector with nodes in a body of volume `vol` whose largest
/// inscribed simplex has volume `simp` has norm below this. With `simp` replaced by the
/// volume of a particular node simplex it bounds that projector's norm.
pub fn theta_lower_general(vol: f64, simp: f64, n: usize) -> Result<f64> {
    if !(simp > 0.0) || !(vol >= simp) {
        return Err(Error::Domain(format!(
            "need vol >= simp > 0, got vol = {vol}, simp = {simp}"
        )));
    }
    chi_inv(n as u32, vol / simp)
}

/// `χₙ⁻¹(1/νₙ)`, with the source of `νₙ`.
pub fn theta_cube_chi_lower(n: usize) -> (f64, NuSource) {
    let (nu, src) = nu_value(n);
    let v = match n {
        1 => 1.0,
        _ if (1.0 / nu).is_finite() => chi_inv(n as u32, 1.0 / nu).expect("1/nu >= 1"),
        _ => chi_inv_ln(n as u32, -ln_nu_hadamard(n)).expect("1/nu >= 1"),
    };
    (v, src)
}

/// `max(3 − 4/(n+1), χₙ⁻¹(1/νₙ))`.
pub fn theta_cube_lower(n: usize) -> f64 {
    let n1 = (n + 1) as f64;
    (3.0 - 4.0 / n1).max(theta_cube_chi_lower(n).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqrtLowerBounds {
    /// `√(n−1)/e`.
    pub sqrt_n_minus_1: f64,
    /// `(2√2/(3e)) √n`.
    pub c_sqrt_n: f64,
}

impl SqrtLowerBounds {
    pub fn max(&self) -> f64 {
        self.sqrt_n_minus_1.max(self.c_sqrt_n)
    }
}

pub fn theta_cube_sqrt_lower(n: usize) -> SqrtLowerBounds {
    let nf = n as f64;
    SqrtLowerBounds {
        sqrt_n_minus_1: (nf - 1.0).max(0.0).sqrt() / E,
        c_sqrt_n: 2.0 * 2f64.sqrt() / (3.0 * E) * nf.sqrt(),
    }
}

/// `∛π / (√(12e) · ⁶√3)`.
pub fn ball_sqrt_constant() -> f64 {
    PI.cbrt() / ((12.0 * E).sqrt() * 3f64.powf(1.0 / 6.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallLowerBounds {
    /// `χₙ⁻¹(κₙ/σₙ)`.
    pub chi_inv: f64,
    /// `c √n` with `c = ∛π / (√(12e) · ⁶√3)`.
    pub c_sqrt_n: f64,
}

pub fn theta_ball_lower(n: usize) -> Result<BallLowerBounds> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let ln_ratio = ln_kappa_over_sigma(n).max(0.0);
    let chi_inv = match ln_ratio.exp() {
        r if r.is_finite() => chi_inv(n as u32, r.max(1.0))?,
        _ => chi_inv_ln(n as u32, ln_ratio)?,
    };
    Ok(BallLowerBounds {
        chi_inv,
        c_sqrt_n: ball_sqrt_constant() * (n as f64).sqrt(),
    })
}

/// `(n, (n²−3)/(n−1))` for `n > 2` and `(n, n+1)` otherwise: bounds on `ξₙ(Qₙ)`.
pub fn xi_cube_bounds(n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let nf = n as f64;
    let upper = if n > 2 {
        (nf * nf - 3.0) / (nf - 1.0)
    } else {
        nf + 1.0
    };
    Ok((nf, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallOptimum {
    pub n: usize,
    pub a: usize,
    pub psi_a: f64,
    pub psi_a1: f64,
    pub p: f64,
    pub k: usize,
    /// `ψ(a) = ψ(a+1)`; `k` is then taken as `a + 1`.
    pub tie: bool,
}

/// `ψ(t) = (2√n/(n+1)) √(t(n+1−t)) + |1 − 2t/(n+1)|`.
pub fn psi(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let n1 = nf + 1.0;
    2.0 * nf.sqrt() / n1 * (t * (n1 - t)).max(0.0).sqrt() + (1.0 - 2.0 * t / n1).abs()
}

/// `θₙ(Bₙ) = pₙ = max(ψ(aₙ), ψ(aₙ+1))` with `aₙ = ⌊(n+1)/2 − √(n+1)/2⌋`.
pub fn ball_optimum(n: usize) -> Result<BallOptimum> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let n1 = (n + 1) as f64;
    let a = (n1 / 2.0 - n1.sqrt() / 2.0).floor() as usize;
    let psi_a = psi(n, a as f64);
    let psi_a1 = psi(n, (a + 1) as f64);
    let tie = (psi_a - psi_a1).abs() <= 1e-12 * psi_a.max(psi_a1);
    let k = if psi_a > psi_a1 && !tie { a } else { a + 1 };
    Ok(BallOptimum {
        n,
        a,
        psi_a,
        psi_a1,
        p: psi_a.max(psi_a1),
        k,
        tie,
    })
}

/// `pₙ = 3 − 4/(n+1)` within `1e-9`.
pub fn theta_ball_34_check(n: usize) -> Result<bool> {
    let p = ball_optimum(n)?.p;
    Ok((p - (3.0 - 4.0 / (n + 1) as f64)).abs() <= CONSISTENCY_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum N0Verdict {
    Satisfied,
    NotSatisfied,
    /// Only the Hadamard bound on `νₙ` was available and it was too weak.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct N0Check {
    pub n: usize,
    /// `χₙ((3n−5)/(n−1)) · νₙ`.
    pub value: f64,
    pub nu_source: NuSource,
    pub verdict: N0Verdict,
}

/// The sufficient condition `χₙ((3n−5)/(n−1)) · νₙ < 1` for strictness of the
/// upper norm/absorption inequality at `n > 2`. With the Hadamard bound in place of
/// `νₙ` the test can only confirm the condition.
pub fn n0_check(n: usize) -> Result<N0Check> {
    if n <= 2 {
        return Err(Error::Domain("the n0 condition needs n > 2".into()));
    }
    let nf = n as f64;
    let t = (3.0 * nf - 5.0) / (nf - 1.0);
    let (nu, nu_source) = nu_value(n);
    let direct = chi(n as u32, t) * nu;
    let value = match nu_source {
        NuSource::HadamardBound if !(direct.is_finite() && nu > 0.0) => {
            (ln_chi(n as u32, t)? + ln_nu_hadamard(n)).exp()
        }
        _ => direct,
    };
    let verdict = match (value < 1.0, nu_source) {
        (true, _) => N0Verdict::Satisfied,
        (false, NuSource::Table) => N0Verdict::NotSatisfied,
        (false, NuSource::HadamardBound) => N0Verdict::Inconclusive,
    };
    Ok(N0Check {
        n,
        value,
        nu_source,
        verdict,
    })
}

/// `Some(true/false)` when decided, `None` when inconclusive.
pub fn n0_sufficient(n: usize) -> Result<Option<bool>> {
    Ok(match n0_check(n)?.verdict {
        N0Verdict::Satisfied => Some(true),
        N0Verdict::NotSatisfied => Some(false),
        N0Verdict::Inconclusive => None,
    })
}

/// One entry of the table of upper estimates for `θₙ(Qₙ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperEntry {
    Rational {
        numer: i64,
        denom: i64,
    },
    /// An irrational closed form, kept as text with its value.
    Surd {
        expr: &'static str,
        value: f64,
    },
    /// A printed decimal; `truncated` marks a value printed with a trailing ellipsis.
    Decimal {
        mantissa: i64,
        decimals: u32,
        truncated: bool,
    },
}

impl UpperEntry {
    pub fn value(&self) -> f64 {
        match *self {
            UpperEntry::Rational { numer, denom } => numer as f64 / denom as f64,
            UpperEntry::Surd { value, .. } => value,
            UpperEntry::Decimal {
                mantissa, decimals, ..
            } => mantissa as f64 / 10f64.powi(decimals as i32),
        }
    }

    /// Largest real number consistent with the printed entry.
    pub fn sup(&self) -> f64 {
        match *self {
            UpperEntry::Decimal {
                decimals,
                truncated: true,
                ..
            } => self.value() + 10f64.powi(-(decimals as i32)),
            _ => self.value(),
        }
    }

    pub fn as_ratio(&self) -> Option<Ratio<i64>> {
        match *self {
            UpperEntry::Rational { numer, denom } => Some(Ratio::new(numer, denom)),
            _ => None,
        }
    }

    pub fn display(&self) -> String {
        match *self {
            UpperEntry::Rational { numer, denom: 1 } => numer.to_string(),
            UpperEntry::Rational { numer, denom } => format!("{numer}/{denom}"),
            UpperEntry::Surd { expr, .. } => expr.to_string(),
            UpperEntry::Decimal {
                mantissa,
                decimals,
                truncated,
            } => {
                let s = format!(
                    "{:.*}",
                    decimals as usize,
                    mantissa as f64 / 10f64.powi(decimals as i32)
                );
                if truncated {
                    s + "..."
                } else {
                    s
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaUpper {
    pub n: usize,
    pub entry: UpperEntry,
    /// The entry is the exact value of `θₙ(Qₙ)`, not only an upper estimate.
    pub exact: bool,
}

const fn rat(numer: i64, denom: i64) -> UpperEntry {
    UpperEntry::Rational { numer, denom }
}

const fn dec(mantissa: i64, decimals: u32, truncated: bool) -> UpperEntry {
    UpperEntry::Decimal {
        mantissa,
        decimals,
        truncated,
    }
}

/// The 27 known upper estimates of `θₙ(Qₙ)`, exact for `n ∈ {1, 2, 3, 7}`.
pub fn upper_estimates_table() -> Vec<ThetaUpper> {
    let five = 5f64.sqrt();
    let entries = [
        rat(1, 1),
        UpperEntry::Surd {
            expr: "2*sqrt(5)/5+1",
            value: 2.0 * five / 5.0 + 1.0,
        },
        rat(2, 1),
        UpperEntry::Surd {
            expr: "3*(4+sqrt(2))/7",
            value: 3.0 * (4.0 + 2f64.sqrt()) / 7.0,
        },
        dec(2448804, 6, false),
        dec(26000, 4, true),
        rat(5, 2),
        rat(22, 7),
        rat(3, 1),
        rat(19, 5),
        rat(3, 1),
        rat(17, 5),
        rat(49, 13),
        rat(21, 5),
        rat(7, 2),
        rat(21, 5),
        rat(139, 34),
        dec(51400, 4, true),
        rat(4, 1),
        dec(468879, 5, true),
        rat(251, 50),
        rat(1817, 335),
        rat(9, 2),
        rat(103, 21),
        rat(5, 1),
        rat(474, 91),
        rat(5, 1),
    ];
    entries
        .into_iter()
        .enumerate()
        .map(|(i, entry)| ThetaUpper {
            n: i + 1,
            entry,
            exact: matches!(i + 1, 1 | 2 | 3 | 7),
        })
        .collect()
}

pub fn theta_upper(n: usize) -> Option<ThetaUpper> {
    (1..=THETA_UPPER_MAX)
        .contains(&n)
        .then(|| upper_estimates_table()[n - 1])
}

/// Exact `ξₙ(Qₙ)` for the dimensions where `θₙ(Qₙ)` is also known exactly.
pub fn xi_cube_exact(n: usize) -> Option<f64> {
    match n {
        1 => Some(1.0),
        2 => Some(3.0 * 5f64.sqrt() / 5.0 + 1.0),
        3 => Some(3.0),
        7 => Some(7.0),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyTag {
    Cube,
    Ball,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaggedValue {
    pub value: f64,
    pub formula: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub body: BodyTag,
    pub lower_bounds: Vec<TaggedValue>,
    pub upper_bounds: Vec<TaggedValue>,
    pub exact: Option<f64>,
    /// Where `νₙ` came from (cube reports only).
    pub nu_source: Option<NuSource>,
}

impl BoundReport {
    pub fn max_lower(&self) -> f64 {
        self.lower_bounds
            .iter()
            .map(|b| b.value)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_upper(&self) -> f64 {
        self.upper_bounds
            .iter()
            .map(|b| b.value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Every lower bound ≤ every upper bound, and `exact` (if any) between them.
    pub fn is_consistent(&self) -> bool {
        let lo = self.max_lower();
        let hi = self.min_upper();
        lo <= hi + CONSISTENCY_TOL
            && self
                .exact
                .is_none_or(|e| lo <= e + CONSISTENCY_TOL && e <= hi + CONSISTENCY_TOL)
    }
}

/// All bounds on `θₙ(K)` for `K = Qₙ` or `K = Bₙ`.
pub fn bound_report(body: BodyTag, n: usize) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let nf = n as f64;
    Ok(match body {
        BodyTag::Cube => {
            let (chi_lower, src) = theta_cube_chi_lower(n);
            let sq = theta_cube_sqrt_lower(n);
            let lower_bounds = vec![
                TaggedValue {
                    value: 3.0 - 4.0 / (nf + 1.0),
                    formula: "3-4/(n+1)",
                },
                TaggedValue {
                    value: chi_lower,
                    formula: "chi_inv(1/nu_n)",
                },
                TaggedValue {
                    value: sq.sqrt_n_minus_1,
                    formula: "sqrt(n-1)/e",
                },
                TaggedValue {
                    value: sq.c_sqrt_n,
                    formula: "2*sqrt(2)/(3e)*sqrt(n)",
                },
            ];
            let (_, xi_hi) = xi_cube_bounds(n)?;
            let mut upper_bounds = vec![TaggedValue {
                value: 2.0 * nf / (nf + 1.0) * (xi_hi - 1.0) + 1.0,
                formula: "2n/(n+1)*(xi_upper-1)+1",
            }];
            if hadamard(n + 1).is_ok() {
                upper_bounds.push(TaggedValue {
                    value: (nf + 1.0).sqrt(),
                    formula: "sqrt(n+1)",
                });
            }
            if let Some(u) = theta_upper(n) {
                upper_bounds.push(TaggedValue {
                    value: u.entry.sup(),
                    formula: "upper_table",
                });
            }
            let exact = theta_upper(n).filter(|u| u.exact).map(|u| u.entry.value());
            BoundReport {
                n,
                body,
                lower_bounds,
                upper_bounds,
                exact,
                nu_source: Some(src),
            }
        }
        BodyTag::Ball => {
            let lb = theta_ball_lower(n)?;
            let opt = ball_optimum(n)?;
            BoundReport {
                n,
                body,
                lower_bounds: vec![
                    TaggedValue {
                        value: lb.chi_inv,
                        formula: "chi_inv(kappa_n/sigma_n)",
                    },
                    TaggedValue {
                        value: lb.c_sqrt_n,
                        formula: "c*sqrt(n)",
                    },
                ],
                upper_bounds: vec![
                    TaggedValue {
                        value: opt.p,
                        formula: "p_n",
                    },
                    TaggedValue {
                        value: (nf + 1.0).sqrt(),
                        formula: "sqrt(n+1)",
                    },
                ],
                exact: Some(opt.p),
                nu_source: None,
            }
        }
    })
}

/// One row of the cube bound table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeBoundRow {
    pub n: usize,
    pub lower_legendre: f64,
    pub lower_sqrt: f64,
    pub upper_table: Option<f64>,
    pub exact_if_known: Option<f64>,
    pub provenance: &'static str,
}

pub fn cube_bound_rows(max_n: usize) -> Vec<CubeBoundRow> {
    (1..=max_n)
        .map(|n| {
            let (_, src) = theta_cube_chi_lower(n);
            let up = theta_upper(n);
            CubeBoundRow {
                n,
                lower_legendre: theta_cube_lower(n),
                lower_sqrt: theta_cube_sqrt_lower(n).max(),
                upper_table: up.map(|u| u.entry.value()),
                exact_if_known: up.filter(|u| u.exact).map(|u| u.entry.value()),
                provenance: src.as_str(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn nu_and_h_tables() {
        assert_eq!(nu_table(11), Some(Ratio::new(9, 246400)));
        assert_eq!(nu_table(13), None);
        let h: Vec<i64> = (1..=12).map(|n| h_table(n).unwrap()).collect();
        assert_eq!(h, vec![1, 1, 2, 3, 5, 9, 32, 56, 144, 320, 1458, 3645]);
        assert_eq!(nu_value(20).1, NuSource::HadamardBound);
    }

    #[test]
    fn table_values_respect_nu_bounds() {
        for n in 2..=12 {
            let b = nu_bounds(n).unwrap();
            let nu = ratio_f64(nu_table(n).unwrap());
            assert!(b.lower < nu && nu <= b.upper * (1.0 + 1e-12), "n={n}");
            if let Some(u) = b.upper_even {
                assert!(nu <= u * (1.0 + 1e-12), "n={n}");
            }
            if let Some(u) = b.upper_1mod4 {
                assert!(nu <= u * (1.0 + 1e-12), "n={n}");
            }
        }
    }

    #[test]
    fn nu_bound_examples() {
        assert_relative_eq!(nu_bounds(3).unwrap().upper, 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(
            nu_bounds(4).unwrap().upper_even.unwrap(),
            0.125,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            nu_bounds(5).unwrap().upper_1mod4.unwrap(),
            1.0 / 24.0,
            max_relative = 1e-12
        );
        assert!(nu_bounds(3).unwrap().upper_even.is_none());
        assert!(nu_bounds(1).is_err());
    }

    #[test]
    fn kappa_sigma_values() {
        let (k2, s2) = kappa_sigma(2);
        assert_relative_eq!(k2, PI, max_relative = 1e-14);
        assert_relative_eq!(s2, 3.0 * 3f64.sqrt() / 4.0, max_relative = 1e-14);
        let (k3, s3) = kappa_sigma(3);
        assert_relative_eq!(k3, 4.0 * PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(s3, 8.0 / (9.0 * 3f64.sqrt()), max_relative = 1e-14);
        for n in 1..=50 {
            let (k, s) = kappa_sigma(n);
            assert!(k / s >= 1.0);
            assert_relative_eq!(ln_kappa_over_sigma(n), (k / s).ln(), epsilon = 1e-10);
        }
    }

    #[test]
    fn general_lower_bound() {
        assert_relative_eq!(
            theta_lower_general(1.0, 0.5, 2).unwrap(),
            (5.0f64 / 3.0).sqrt(),
            max_relative = 1e-12
        );
        let (k, s) = kappa_sigma(2);
        // χ₂(t) = (3t² − 1)/2 inverts to t = √((2s + 1)/3).
        let t = ((2.0 * k / s + 1.0) / 3.0).sqrt();
        assert_relative_eq!(
            theta_lower_general(k, s, 2).unwrap(),
            t,
            max_relative = 1e-12
        );
        assert_relative_eq!(t, 1.394847, epsilon = 1e-6);
        assert_eq!(theta_lower_general(0.7, 0.7, 5).unwrap(), 1.0);
        assert!(matches!(
            theta_lower_general(0.5, 1.0, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cube_lower_examples() {
        assert_relative_eq!(theta_cube_lower(2), 5.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(theta_cube_lower(3), 2.0, max_relative = 1e-15);
        assert_relative_eq!(theta_cube_lower(7), 2.5, max_relative = 1e-15);
        assert_eq!(theta_cube_lower(1), 1.0);
        let sq = theta_cube_sqrt_lower(1);
        assert_eq!(sq.sqrt_n_minus_1, 0.0);
        assert_relative_eq!(sq.c_sqrt_n, 0.3468, epsilon = 1e-4);
        assert_relative_eq!(
            theta_cube_sqrt_lower(10).sqrt_n_minus_1,
            3.0 / E,
            max_relative = 1e-15
        );
    }

    #[test]
    fn ball_lower_examples() {
        assert_relative_eq!(ball_sqrt_constant(), 0.2135, epsilon = 1e-4);
        let b2 = theta_ball_lower(2).unwrap();
        let s = 4.0 * PI / (3.0 * 3f64.sqrt());
        assert_relative_eq!(
            b2.chi_inv,
            ((2.0 * s + 1.0) / 3.0).sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(theta_ball_lower(1).unwrap().chi_inv, 1.0, epsilon = 1e-12);
        let b4 = theta_ball_lower(4).unwrap();
        assert!(b4.chi_inv <= 2.2 && b4.c_sqrt_n <= 2.2);
    }

    #[test]
    fn xi_bounds() {
        assert_eq!(xi_cube_bounds(3).unwrap(), (3.0, 3.0));
        let (lo, hi) = xi_cube_bounds(7).unwrap();
        assert_eq!(lo, 7.0);
        assert_relative_eq!(hi, 46.0 / 6.0);
        assert_eq!(xi_cube_bounds(2).unwrap(), (2.0, 3.0));
        for n in [1, 2, 3, 7] {
            let (lo, hi) = xi_cube_bounds(n).unwrap();
            let x = xi_cube_exact(n).unwrap();
            assert!(lo <= x && x <= hi);
        }
    }

    #[test]
    fn ball_optimum_examples() {
        let o3 = ball_optimum(3).unwrap();
        assert_eq!((o3.a, o3.k), (1, 1));
        assert_relative_eq!(o3.psi_a, 2.0, max_relative = 1e-15);
        assert_relative_eq!(o3.psi_a1, 3f64.sqrt(), max_relative = 1e-15);
        let o1 = ball_optimum(1).unwrap();
        assert!(o1.tie);
        assert_eq!(o1.k, 1);
        assert_eq!(o1.p, 1.0);
        assert_eq!(ball_optimum(50).unwrap().k, 22);
        assert_eq!(ball_optimum(100).unwrap().k, 45);
        assert_eq!(ball_optimum(1000).unwrap().k, 485);
    }

    #[test]
    fn ball_optimum_sandwich_and_k_bound() {
        for n in 1..=200 {
            let o = ball_optimum(n).unwrap();
            let nf = n as f64;
            assert!(
                nf.sqrt() <= o.p + 1e-12 && o.p <= (nf + 1.0).sqrt() + 1e-12,
                "n={n}"
            );
            if n >= 2 {
                assert!(o.k as f64 <= nf / 2.0, "n={n}");
                assert!(o.p > nf.sqrt(), "n={n}");
            }
        }
    }

    #[test]
    fn three_minus_four_over_n_plus_one() {
        for n in 1..=4 {
            assert!(theta_ball_34_check(n).unwrap(), "n={n}");
        }
        for n in 5..=60 {
            assert!(!theta_ball_34_check(n).unwrap(), "n={n}");
            assert!(ball_optimum(n).unwrap().k > 1);
        }
    }

    #[test]
    fn n0_condition() {
        assert_eq!(n0_sufficient(3).unwrap(), Some(false));
        // Values from exact rational evaluation of χₙ with the tabulated νₙ.
        assert_relative_eq!(
            n0_check(10).unwrap().value,
            315.24648419496845,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            n0_check(12).unwrap().value,
            863.0481368084761,
            max_relative = 1e-12
        );
        for n in 3..=12 {
            assert_eq!(n0_sufficient(n).unwrap(), Some(false), "n={n}");
        }
        for n in 13..=54 {
            assert_eq!(n0_sufficient(n).unwrap(), None, "n={n}");
        }
        for n in 55..=80 {
            assert_eq!(n0_sufficient(n).unwrap(), Some(true), "n={n}");
        }
        assert!(n0_check(2).is_err());
        let c3 = n0_check(3).unwrap();
        assert_relative_eq!(c3.value, 17.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn upper_table_shape() {
        let t = upper_estimates_table();
        assert_eq!(t.len(), 27);
        assert_eq!(
            theta_upper(8).unwrap().entry.as_ratio(),
            Some(Ratio::new(22, 7))
        );
        assert_eq!(
            theta_upper(23).unwrap().entry.as_ratio(),
            Some(Ratio::new(9, 2))
        );
        assert_eq!(
            theta_upper(13).unwrap().entry.as_ratio(),
            Some(Ratio::new(49, 13))
        );
        assert_eq!(theta_upper(6).unwrap().entry.display(), "2.6000...");
        assert_eq!(theta_upper(20).unwrap().entry.display(), "4.68879...");
        assert_eq!(theta_upper(5).unwrap().entry.display(), "2.448804");
        assert!(theta_upper(28).is_none());
        let exact: Vec<usize> = t.iter().filter(|u| u.exact).map(|u| u.n).collect();
        assert_eq!(exact, vec![1, 2, 3, 7]);
    }

    #[test]
    fn reports_are_consistent() {
        for n in 1..=27 {
            let r = bound_report(BodyTag::Cube, n).unwrap();
            assert!(r.is_consistent(), "cube n={n}: {r:?}");
        }
        for n in 1..=50 {
            let r = bound_report(BodyTag::Ball, n).unwrap();
            assert!(r.is_consistent(), "ball n={n}: {r:?}");
        }
        assert_eq!(cube_bound_rows(30).len(), 30);
    }

    proptest! {
        #[test]
        fn general_lower_bound_is_monotone(n in 1usize..30, r in 1.0f64..1e6, f in 1.0f64..10.0) {
            let a = theta_lower_general(r, 1.0, n).unwrap();
            let b = theta_lower_general(r * f, 1.0, n).unwrap();
            prop_assert!(a <= b);
        }
    }
}
