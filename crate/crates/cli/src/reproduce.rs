//! The reference tables as rows, and the `reproduce` run that writes them to CSV.

use std::fs;
use std::path::Path;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use lagrange_core::bounds::{
    ball_optimum, cube_bound_rows, h_table, nu_table, theta_upper, xi_cube_exact, NU_TABLE_MAX,
    THETA_UPPER_MAX,
};
use lagrange_core::constructions::{catalog, maxvol_simplex_cube, MaxVolMode, EXHAUSTIVE_MAX_DIM};
use lagrange_core::geometry::{Body, Simplex};
use lagrange_core::projector::{absorption, Projector};
use lagrange_core::Result;

use crate::Failure;

pub const NU_HEADER: &[&str] = &["n", "nu", "h", "nu_value", "ok"];
pub const THETA_HEADER: &[&str] = &[
    "n",
    "upper",
    "upper_value",
    "exact",
    "lower_legendre",
    "lower_sqrt",
    "provenance",
    "ok",
];
pub const BALL_K_HEADER: &[&str] = &["n", "a", "p", "k", "tie", "printed_k", "ok"];
pub const EXACT_HEADER: &[&str] = &[
    "n",
    "quantity",
    "computed",
    "expected",
    "expected_expr",
    "diff",
    "ok",
];

const EXACT_TOL: f64 = 1e-9;

/// Printed values of `kₙ`.
pub const PRINTED_K: [(usize, usize); 18] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 1),
    (5, 2),
    (6, 2),
    (7, 3),
    (8, 3),
    (9, 3),
    (10, 4),
    (11, 4),
    (12, 5),
    (13, 5),
    (14, 6),
    (15, 6),
    (50, 22),
    (100, 45),
    (1000, 485),
];

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn is_ok(row: &[Value]) -> bool {
    row.last().and_then(Value::as_bool).unwrap_or(false)
}

/// `νₙ = hₙ / n!`; for small `n` the determinant is also recomputed by exhaustive search.
pub fn nu_rows() -> Result<Vec<Vec<Value>>> {
    (1..=NU_TABLE_MAX)
        .map(|n| {
            let nu = nu_table(n).expect("tabulated");
            let h = h_table(n).expect("tabulated");
            let mut ok = nu == Ratio::new(h, factorial(n));
            if n <= EXHAUSTIVE_MAX_DIM {
                ok &= maxvol_simplex_cube(n, MaxVolMode::Exhaustive, 0)?.determinant == h as u64;
            }
            Ok(vec![
                json!(n),
                json!(nu.to_string()),
                json!(h),
                json!(*nu.numer() as f64 / *nu.denom() as f64),
                json!(ok),
            ])
        })
        .collect()
}

pub fn theta_rows() -> Vec<Vec<Value>> {
    cube_bound_rows(THETA_UPPER_MAX)
        .into_iter()
        .map(|r| {
            let up = theta_upper(r.n).expect("tabulated");
            let ok = r.lower_legendre.max(r.lower_sqrt) <= up.entry.sup() + 1e-9;
            vec![
                json!(r.n),
                json!(up.entry.display()),
                json!(up.entry.value()),
                json!(up.exact),
                json!(r.lower_legendre),
                json!(r.lower_sqrt),
                json!(r.provenance),
                json!(ok),
            ]
        })
        .collect()
}

pub fn ball_k_rows(ns: impl IntoIterator<Item = usize>) -> Result<Vec<Vec<Value>>> {
    ns.into_iter()
        .map(|n| {
            let b = ball_optimum(n)?;
            let printed = PRINTED_K.iter().find(|&&(m, _)| m == n).map(|&(_, k)| k);
            let ok = printed.is_none_or(|k| k == b.k);
            Ok(vec![
                json!(n),
                json!(b.a),
                json!(b.p),
                json!(b.k),
                json!(b.tie),
                json!(printed),
                json!(ok),
            ])
        })
        .collect()
}

/// The simplex realizing both exact values in dimension `n`.
fn extremal_simplex(n: usize) -> Result<Simplex<f64>> {
    match n {
        1 => Ok(Simplex::unit(1)),
        2 => catalog("golden_triangle"),
        3 => catalog("S_prime_3"),
        _ => catalog("hadamard_7"),
    }
}

pub fn exact_rows() -> Result<Vec<Vec<Value>>> {
    let mut rows = Vec::new();
    for n in [1, 2, 3, 7] {
        let s = extremal_simplex(n)?;
        let cube = Body::cube(n)?;
        let theta = Projector::new(s.clone())?.norm(&cube)?.value;
        let xi = absorption(&cube, &s)?.xi;
        let up = theta_upper(n).expect("tabulated");
        let xi_expr = match n {
            2 => "3*sqrt(5)/5+1".to_string(),
            _ => format!("{}", xi_cube_exact(n).expect("known")),
        };
        for (q, computed, expected, expr) in [
            ("theta", theta, up.entry.value(), up.entry.display()),
            ("xi", xi, xi_cube_exact(n).expect("known"), xi_expr),
        ] {
            let diff = (computed - expected).abs();
            rows.push(vec![
                json!(n),
                json!(q),
                json!(computed),
                json!(expected),
                json!(expr),
                json!(diff),
                json!(diff < EXACT_TOL),
            ]);
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
pub struct Summary {
    pub files: Vec<String>,
    pub rows: usize,
    pub mismatches: usize,
    pub failed: Vec<String>,
}

fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<Value>],
) -> std::result::Result<(), Failure> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }))?;
    }
    w.flush()?;
    Ok(())
}

pub fn reproduce(dir: &Path) -> std::result::Result<Summary, Failure> {
    fs::create_dir_all(dir)?;
    let tables = [
        ("nu.csv", NU_HEADER, nu_rows()?),
        ("theta_upper.csv", THETA_HEADER, theta_rows()),
        (
            "ball_k.csv",
            BALL_K_HEADER,
            ball_k_rows(PRINTED_K.iter().map(|&(n, _)| n))?,
        ),
        ("exact_checks.csv", EXACT_HEADER, exact_rows()?),
    ];
    let mut summary = Summary {
        files: Vec::new(),
        rows: 0,
        mismatches: 0,
        failed: Vec::new(),
    };
    for (name, header, rows) in &tables {
        let path = dir.join(name);
        write_csv(&path, header, rows)?;
        summary.files.push(path.display().to_string());
        summary.rows += rows.len();
        for r in rows {
            if !is_ok(r) {
                summary.mismatches += 1;
                summary.failed.push(format!("{name}: n={}", r[0]));
            }
        }
    }
    Ok(summary)
}
