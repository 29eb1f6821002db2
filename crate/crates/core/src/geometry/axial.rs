//! Axial diameters: the longest segment inside a simplex parallel to a coordinate axis.

use super::Simplex;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Real;

/// `d_i(S)` for the 0-based axis `axis`, as the optimum of
/// `max t` subject to `λ_j(x) ≥ 0` and `λ_j(x + t eᵢ) ≥ 0` for all `j`.
pub fn axial_diameter<T: Real>(s: &Simplex<T>, axis: usize) -> Result<T> {
    let n = s.dim();
    if axis >= n {
        return Err(Error::InvalidInput(format!(
            "axis {axis} out of range for dimension {n}"
        )));
    }
    let b = s.barycentric()?;
    // Variables: x_1..x_n (free), t >= 0.
    let mut objective = vec![T::zero(); n + 1];
    objective[n] = T::one();
    let mut lp = LinearProgram::maximize(objective);
    for v in 0..n {
        lp.set_free(v);
    }
    let row = b.axis_row(axis);
    for j in 0..=n {
        let g = b.gradient(j);
        let rhs = -b.offsets()[j];
        let mut at_start = g.to_vec();
        at_start.push(T::zero());
        lp.constrain(at_start, Relation::Ge, rhs);
        let mut at_end = g.to_vec();
        at_end.push(row[j]);
        lp.constrain(at_end, Relation::Ge, rhs);
    }
    Ok(lp.solve()?.objective)
}

/// `2 / Σ_j |l_ij|`; agrees with [`axial_diameter`] (checked in tests against the LP).
pub fn axial_diameter_closed_form<T: Real>(s: &Simplex<T>, axis: usize) -> Result<T> {
    let n = s.dim();
    if axis >= n {
        return Err(Error::InvalidInput(format!(
            "axis {axis} out of range for dimension {n}"
        )));
    }
    let b = s.barycentric()?;
    let sum: T = b.axis_row(axis).iter().map(|v| v.abs()).sum();
    Ok(T::lit(2.0) / sum)
}
