//! Regular simplices in the cube and the ball, the named extremal simplices, and
//! maximum-volume simplices with vertices among the cube's vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Body, Point, Simplex};
use crate::hadamard::hadamard;
use crate::projector::{visit_cube_vertices, Projector};
use crate::scalar::Real;

/// Largest dimension for the exhaustive maximum-volume search.
pub const EXHAUSTIVE_MAX_DIM: usize = 5;
/// Largest dimension for the vertex-exchange search.
pub const HEURISTIC_MAX_DIM: usize = 12;
/// A vertex exchange must grow `|det|` by at least this relative amount.
const EXCHANGE_GAIN: f64 = 1e-9;
/// Cap on the subsets examined by [`maxvol_simplex_in_points`].
const POINT_SUBSET_CAP: u128 = 5_000_000;

pub const CATALOG_NAMES: [&str; 4] = [
    "golden_triangle",
    "S_prime_3",
    "S_doubleprime_3",
    "hadamard_7",
];

/// Vertices at cube vertices: normalize an order-`n+1` Hadamard matrix so the
/// first column is all ones, then map `+1 ↦ 0`, `−1 ↦ 1` in the other `n` columns.
pub fn regular_simplex_in_cube(n: usize) -> Result<Simplex<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let h = hadamard(n + 1)?.normalized();
    let rows = h
        .entries()
        .iter()
        .map(|r| {
            r[1..]
                .iter()
                .map(|&v| if v > 0 { 0.0 } else { 1.0 })
                .collect()
        })
        .collect();
    Simplex::from_rows(rows)
}

/// Regular simplex inscribed in `B(center; radius)`.
///
/// The standard basis of `ℝⁿ⁺¹`, centred at its centroid, is expressed in the
/// Helmert basis `uᵢ = (1, …, 1, −i, 0, …)/√(i(i+1))` of the sum-zero hyperplane, so
/// coordinate `i` of vertex `k` is `uᵢ[k]`; every vertex then has length `√(n/(n+1))`.
pub fn regular_simplex_in_ball<T: Real>(
    n: usize,
    center: &Point<T>,
    radius: T,
) -> Result<Simplex<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    center.check_dim(n)?;
    if !(radius > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let nf = T::from_usize_lossy(n);
    let scale = radius / (nf / (nf + T::one())).sqrt();
    let rows = (0..=n)
        .map(|k| {
            (1..=n)
                .map(|i| {
                    let fi = T::from_usize_lossy(i);
                    let norm = (fi * (fi + T::one())).sqrt();
                    let u = if k < i {
                        T::one() / norm
                    } else if k == i {
                        -fi / norm
                    } else {
                        T::zero()
                    };
                    center[i - 1] + scale * u
                })
                .collect()
        })
        .collect();
    Simplex::from_rows(rows)
}

/// The named simplices in the cube, with their exact vertex lists.
pub fn catalog(name: &str) -> Result<Simplex<f64>> {
    let tau = (3.0 - 5f64.sqrt()) / 2.0;
    let rows: Vec<Vec<f64>> = match name {
        "golden_triangle" => vec![vec![0.0, 0.0], vec![1.0, tau], vec![tau, 1.0]],
        "S_prime_3" => vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0],
        ],
        "S_doubleprime_3" => {
            vec![
                vec![0.5, 0.0, 0.0],
                vec![0.5, 1.0, 0.0],
                vec![0.0, 0.5, 1.0],
                vec![1.0, 0.5, 1.0],
            ]
        }
        "hadamard_7" => [
            [1, 1, 1, 1, 1, 1, 1],
            [0, 1, 0, 1, 0, 1, 0],
            [0, 0, 1, 1, 0, 0, 1],
            [1, 0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1, 1],
            [1, 0, 1, 0, 0, 1, 0],
            [1, 1, 0, 0, 0, 0, 1],
            [0, 1, 1, 0, 1, 0, 0],
        ]
        .iter()
        .map(|r| r.iter().map(|&v| v as f64).collect())
        .collect(),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Simplex::from_rows(rows)
}

/// The cube each catalog simplex lives in.
pub fn catalog_body(name: &str) -> Result<Body<f64>> {
    Body::cube(catalog(name)?.dim())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HadamardNormCheck {
    pub n: usize,
    pub norm: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `‖P_S‖_{Qₙ} ≤ √(n+1)` for the simplex of [`regular_simplex_in_cube`].
pub fn hadamard_norm_bound_check(n: usize) -> Result<HadamardNormCheck> {
    let s = regular_simplex_in_cube(n)?;
    let norm = Projector::new(s)?.norm_over_cube()?.value;
    let bound = ((n + 1) as f64).sqrt();
    Ok(HadamardNormCheck {
        n,
        norm,
        bound,
        holds: norm <= bound + 1e-9,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum MaxVolMode {
    Exhaustive,
    Heuristic { restarts: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxVolResult {
    pub simplex: Simplex<f64>,
    /// `|det A|`, an integer for 0/1 vertices.
    pub determinant: u64,
    pub volume: f64,
    pub mode: MaxVolMode,
    pub seed: u64,
    /// Best `|det A|` reached by each restart (a single entry in exhaustive mode).
    pub trace: Vec<u64>,
}

/// Exact determinant of a small integer matrix (fraction-free elimination).
pub fn integer_determinant(rows: &[Vec<i64>]) -> i64 {
    let m = rows.len();
    if m == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[m - 1][m - 1]) as i64
}

fn factorial(n: usize) -> f64 {
    (2..=n).map(|i| i as f64).product()
}

fn vertex_rows(n: usize, idx: &[u64]) -> Vec<Vec<i64>> {
    idx.iter()
        .map(|&v| (0..n).map(|i| (v >> i & 1) as i64).chain([1]).collect())
        .collect()
}

fn abs_det_of(n: usize, idx: &[u64]) -> u64 {
    integer_determinant(&vertex_rows(n, idx)).unsigned_abs()
}

fn simplex_of(n: usize, idx: &[u64]) -> Simplex<f64> {
    Simplex::new(idx.iter().map(|&v| Body::cube_vertex(n, v)).collect())
        .expect("n + 1 points of dimension n")
}

/// Maximum-volume simplex with vertices among the vertices of `Qₙ`.
///
/// `Exhaustive` (n ≤ 5) fixes one vertex at the origin, which loses nothing because
/// the reflections `xᵢ ↦ 1 − xᵢ` act transitively on the cube's vertices, and scans
/// all `C(2ⁿ−1, n)` choices of the rest. `Heuristic` (n ≤ 12) runs seeded
/// steepest-ascent vertex exchange: replacing vertex `j` by `x` multiplies `|det|` by
/// `|λ_j(x)|`, so each step takes the cube vertex and slot maximizing it. Restart `r`
/// draws from ChaCha8 stream `r` of `seed`; the best restart wins, earliest on ties.
pub fn maxvol_simplex_cube(n: usize, mode: MaxVolMode, seed: u64) -> Result<MaxVolResult> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let (idx, trace) = match mode {
        MaxVolMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_DIM {
                return Err(Error::DimensionTooLarge {
                    n,
                    max: EXHAUSTIVE_MAX_DIM,
                });
            }
            let best = exhaustive_cube(n);
            let d = abs_det_of(n, &best);
            (best, vec![d])
        }
        MaxVolMode::Heuristic { restarts } => {
            if n > HEURISTIC_MAX_DIM {
                return Err(Error::DimensionTooLarge {
                    n,
                    max: HEURISTIC_MAX_DIM,
                });
            }
            if restarts == 0 {
                return Err(Error::InvalidInput(
                    "at least one restart is required".into(),
                ));
            }
            let mut best: Option<(u64, Vec<u64>)> = None;
            let mut trace = Vec::with_capacity(restarts);
            for r in 0..restarts {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r as u64);
                let idx = exchange_ascent(n, &mut rng);
                let d = abs_det_of(n, &idx);
                trace.push(d);
                if best.as_ref().is_none_or(|(b, _)| d > *b) {
                    best = Some((d, idx));
                }
            }
            (best.expect("restarts >= 1").1, trace)
        }
    };
    let determinant = abs_det_of(n, &idx);
    Ok(MaxVolResult {
        simplex: simplex_of(n, &idx),
        determinant,
        volume: determinant as f64 / factorial(n),
        mode,
        seed,
        trace,
    })
}

fn exhaustive_cube(n: usize) -> Vec<u64> {
    let count = 1u64 << n;
    let mut chosen = vec![0u64; n];
    let mut best = (0u64, Vec::new());

    fn recurse(
        n: usize,
        start: u64,
        count: u64,
        depth: usize,
        chosen: &mut Vec<u64>,
        best: &mut (u64, Vec<u64>),
    ) {
        if depth == n {
            let rows: Vec<Vec<i64>> = chosen
                .iter()
                .map(|&v| (0..n).map(|i| (v >> i & 1) as i64).collect())
                .collect();
            let d = integer_determinant(&rows).unsigned_abs();
            if d > best.0 {
                *best = (d, chosen.clone());
            }
            return;
        }
        for v in start..count {
            chosen[depth] = v;
            recurse(n, v + 1, count, depth + 1, chosen, best);
        }
    }

    recurse(n, 1, count, 0, &mut chosen, &mut best);
    let mut idx = vec![0u64];
    idx.extend(best.1);
    idx
}

fn random_nondegenerate(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let count = 1u64 << n;
    loop {
        let mut idx: Vec<u64> = Vec::with_capacity(n + 1);
        while idx.len() <= n {
            let v = rng.random_range(0..count);
            if !idx.contains(&v) {
                idx.push(v);
            }
        }
        if abs_det_of(n, &idx) != 0 {
            return idx;
        }
    }
}

fn exchange_ascent(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut idx = random_nondegenerate(n, rng);
    loop {
        let system = simplex_of(n, &idx)
            .barycentric()
            .expect("nondegenerate by construction");
        let mut best = (1.0 + EXCHANGE_GAIN, None);
        visit_cube_vertices(&system, |v, lambda| {
            for (j, l) in lambda.iter().enumerate() {
                if l.abs() > best.0 {
                    best = (l.abs(), Some((j, v)));
                }
            }
        });
        match best.1 {
            Some((j, v)) => idx[j] = v,
            None => return idx,
        }
    }
}

/// Maximum-volume simplex with vertices among `points`, by scanning all
/// `(n+1)`-subsets (at most five million of them).
pub fn maxvol_simplex_in_points(points: &[Point<f64>]) -> Result<Simplex<f64>> {
    let first = points.first().ok_or(Error::EmptyVertexSet)?;
    let n = first.dim();
    for p in points {
        p.check_dim(n)?;
    }
    let m = points.len();
    let k = n + 1;
    if m < k {
        return Err(Error::InvalidInput(format!(
            "need at least {k} points, got {m}"
        )));
    }
    let subsets = (0..k as u128).fold(1u128, |c, i| c * (m as u128 - i) / (i + 1));
    if subsets > POINT_SUBSET_CAP {
        return Err(Error::InvalidInput(format!(
            "{subsets} vertex subsets exceed the cap {POINT_SUBSET_CAP}"
        )));
    }
    let mut comb: Vec<usize> = (0..k).collect();
    let mut best: Option<(f64, Simplex<f64>)> = None;
    loop {
        let s = Simplex::new(comb.iter().map(|&i| points[i].clone()).collect())?;
        if let Ok(d) = s.checked_abs_det() {
            if best.as_ref().is_none_or(|(b, _)| d > *b) {
                best = Some((d, s));
            }
        }
        // Next combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| comb[i] < m - k + i) else {
            break;
        };
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
    best.map(|(_, s)| s).ok_or(Error::DegenerateSimplex {
        det: 0.0,
        threshold: 0.0,
    })
}
