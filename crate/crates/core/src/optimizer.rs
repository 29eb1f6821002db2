//! Seeded search for interpolation node sets of small projector norm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::bounds::{ball_optimum, theta_cube_lower, theta_lower_general};
use crate::error::{Error, Result};
use crate::geometry::{Body, Point, Simplex};
use crate::projector::Projector;

/// Largest cube dimension for [`exhaustive_cube_vertex_search`].
pub const EXHAUSTIVE_SEARCH_MAX_DIM: usize = 4;
/// The pattern search stops once its step falls below this.
pub const MIN_STEP: f64 = 1e-9;
/// Moves that shrink `|det A|` below this fraction of its starting value are rejected.
pub const DEGENERACY_GUARD: f64 = 1e-10;
/// Tolerance for agreement between a reported norm and its recomputation.
pub const CERTIFY_TOL: f64 = 1e-9;
/// Seeds used when a caller wants a spread of independent runs.
pub const DEFAULT_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];
/// Random directions polled per node coordinate when no coordinate move improves.
const RANDOM_POLLS_PER_COORD: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    ExhaustiveCubeVertices,
    ContinuousLocal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub body: Body<f64>,
    pub mode: SearchMode,
    pub restarts: usize,
    /// Cap on polling sweeps per restart.
    pub max_iters: usize,
    pub step_init: f64,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(body: Body<f64>, mode: SearchMode) -> Self {
        Self {
            body,
            mode,
            restarts: 16,
            max_iters: 20_000,
            step_init: 0.25,
            seed: 0,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidInput("restarts must be at least 1".into()));
        }
        if !(self.step_init > 0.0) {
            return Err(Error::InvalidInput("step_init must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    /// Norm after every accepted move, starting with the initial simplex.
    pub history: Vec<f64>,
}

impl RestartTrace {
    pub fn best(&self) -> f64 {
        *self
            .history
            .last()
            .expect("history starts with the initial norm")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub nodes: Simplex<f64>,
    pub norm: f64,
    pub trace: Vec<RestartTrace>,
    pub seed_used: u64,
    pub config: Option<SearchConfig>,
}

impl SearchResult {
    pub fn projector(&self) -> Result<Projector<f64>> {
        Projector::new(self.nodes.clone())
    }
}

/// The best node set among all `(n+1)`-subsets of the vertices of `Qₙ`, `n ≤ 4`.
/// Degenerate subsets are skipped; ties keep the lexicographically first subset.
pub fn exhaustive_cube_vertex_search(n: usize) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    if n > EXHAUSTIVE_SEARCH_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            max: EXHAUSTIVE_SEARCH_MAX_DIM,
        });
    }
    let m = 1usize << n;
    let k = n + 1;
    let mut comb: Vec<usize> = (0..k).collect();
    let mut best: Option<(f64, Simplex<f64>)> = None;
    let mut history = Vec::new();
    loop {
        let s = Simplex::new(
            comb.iter()
                .map(|&v| Body::cube_vertex(n, v as u64))
                .collect(),
        )?;
        if let Ok(p) = Projector::new(s.clone()) {
            let v = p.norm_over_cube()?.value;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, s));
                history.push(v);
            }
        }
        let Some(i) = (0..k).rev().find(|&i| comb[i] < m - k + i) else {
            break;
        };
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
    let (norm, nodes) = best.expect("the cube has nondegenerate vertex simplices");
    Ok(SearchResult {
        nodes,
        norm,
        trace: vec![RestartTrace {
            restart: 0,
            history,
        }],
        seed_used: 0,
        config: None,
    })
}

/// Euclidean projection onto a cube or ball.
fn project(body: &Body<f64>, x: &mut [f64]) {
    match body {
        Body::Cube { .. } => x.iter_mut().for_each(|v| *v = v.clamp(0.0, 1.0)),
        Body::Ball { center, radius } => {
            let d: f64 = x
                .iter()
                .zip(center.coords())
                .map(|(a, c)| (a - c) * (a - c))
                .sum::<f64>()
                .sqrt();
            if d > *radius {
                let f = radius / d;
                x.iter_mut()
                    .zip(center.coords())
                    .for_each(|(a, c)| *a = c + (*a - c) * f);
            }
        }
        _ => unreachable!("checked by the caller"),
    }
}

fn random_point(body: &Body<f64>, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = body.dim();
    match body {
        Body::Cube { .. } => (0..n).map(|_| rng.random::<f64>()).collect(),
        Body::Ball { center, radius } => {
            let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let len = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
            g.iter()
                .zip(center.coords())
                .map(|(v, c)| c + r * v / len)
                .collect()
        }
        _ => unreachable!("checked by the caller"),
    }
}

fn random_simplex(body: &Body<f64>, rng: &mut ChaCha8Rng) -> Simplex<f64> {
    let n = body.dim();
    loop {
        let rows = (0..=n).map(|_| random_point(body, rng)).collect();
        let s = Simplex::from_rows(rows).expect("n + 1 points of dimension n");
        if !s.is_degenerate() {
            return s;
        }
    }
}

fn norm_of(body: &Body<f64>, rows: &[Vec<f64>]) -> Option<(f64, f64)> {
    let s = Simplex::from_rows(rows.to_vec()).ok()?;
    let det = s.determinant().abs();
    let p = Projector::new(s).ok()?;
    Some((p.norm(body).ok()?.value, det))
}

/// Pattern search with restarts from seeded random simplices in a cube or ball.
/// Each sweep polls `±step` along every coordinate of every node, projecting moved
/// nodes back into the body and keeping improving moves; if none improves, random
/// directions in the joint node space are polled, and only then is the step halved. Restart `r` draws from ChaCha8
/// stream `r` of the seed, and the lowest final norm wins (earliest restart on ties).
pub fn continuous_local_search(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let body = &config.body;
    if !matches!(body, Body::Cube { .. } | Body::Ball { .. }) {
        return Err(Error::UnsupportedBody(
            "continuous search needs a cube or a ball",
        ));
    }
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    let mut traces = Vec::with_capacity(config.restarts);
    for r in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(r as u64);
        let start = random_simplex(body, &mut rng);
        let (norm, rows, history) = pattern_search(config, start, &mut rng)?;
        traces.push(RestartTrace {
            restart: r,
            history,
        });
        if best.as_ref().is_none_or(|(b, _)| norm < *b) {
            best = Some((norm, rows));
        }
    }
    let (_, rows) = best.expect("restarts >= 1");
    let nodes = Simplex::from_rows(rows)?;
    let norm = Projector::new(nodes.clone())?.norm(body)?.value;
    Ok(SearchResult {
        nodes,
        norm,
        trace: traces,
        seed_used: config.seed,
        config: Some(config.clone()),
    })
}

fn pattern_search(
    config: &SearchConfig,
    start: Simplex<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, Vec<Vec<f64>>, Vec<f64>)> {
    let body = &config.body;
    let n = body.dim();
    let mut rows: Vec<Vec<f64>> = start
        .vertices()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect();
    let (mut f, det0) = norm_of(body, &rows).ok_or(Error::DegenerateSimplex {
        det: 0.0,
        threshold: 0.0,
    })?;
    let guard = DEGENERACY_GUARD * det0;
    let mut history = vec![f];
    let mut step = config.step_init;
    let mut sweeps = 0;

    // Moves every node by `step · d[j]`, projects, and keeps the result if it improves.
    let try_move = |rows: &mut Vec<Vec<f64>>,
                    d: &[Vec<f64>],
                    step: f64,
                    f: &mut f64,
                    history: &mut Vec<f64>| {
        let cand: Vec<Vec<f64>> = rows
            .iter()
            .zip(d)
            .map(|(r, dj)| {
                let mut c: Vec<f64> = r.iter().zip(dj).map(|(a, b)| a + step * b).collect();
                project(body, &mut c);
                c
            })
            .collect();
        if cand == *rows {
            return false;
        }
        match norm_of(body, &cand) {
            Some((fc, det)) if det >= guard && fc < *f => {
                *rows = cand;
                *f = fc;
                history.push(fc);
                true
            }
            _ => false,
        }
    };

    while step >= MIN_STEP && sweeps < config.max_iters {
        sweeps += 1;
        let mut improved = false;
        for j in 0..=n {
            for i in 0..n {
                for dir in [1.0, -1.0] {
                    let mut d = vec![vec![0.0; n]; n + 1];
                    d[j][i] = dir;
                    improved |= try_move(&mut rows, &d, step, &mut f, &mut history);
                }
            }
        }
        if !improved {
            // At a kink of the max no single coordinate may descend; poll random
            // directions in the space of all node coordinates before shrinking.
            for _ in 0..RANDOM_POLLS_PER_COORD * n * (n + 1) {
                let d: Vec<Vec<f64>> = (0..=n)
                    .map(|_| {
                        (0..n)
                            .map(|_| rng.sample::<f64, _>(StandardNormal))
                            .collect()
                    })
                    .collect();
                if try_move(&mut rows, &d, step, &mut f, &mut history) {
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((f, rows, history))
}

/// Dispatches on `config.mode`.
pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    match config.mode {
        SearchMode::ExhaustiveCubeVertices => match config.body {
            Body::Cube { n } => {
                let mut r = exhaustive_cube_vertex_search(n)?;
                r.config = Some(config.clone());
                Ok(r)
            }
            _ => Err(Error::UnsupportedBody(
                "exhaustive vertex search needs a cube",
            )),
        },
        SearchMode::ContinuousLocal => continuous_local_search(config),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub reported_norm: f64,
    pub recomputed_norm: f64,
    pub norm_agrees: bool,
    /// `χₙ⁻¹(vol K / vol S)` for the node simplex `S`.
    pub projector_lower_bound: f64,
    /// Best known lower bound on `θₙ(K)`, when one is available for the body.
    pub global_lower_bound: Option<f64>,
    /// `norm − global_lower_bound`.
    pub gap: Option<f64>,
}

/// Independent check of a node set: the norm is recomputed by plain evaluation at the
/// body's extreme points (cube vertices, or the closed-form maximizer per sign class
/// for a ball) and set against the lower bounds.
pub fn certify(nodes: &Simplex<f64>, reported_norm: f64, body: &Body<f64>) -> Result<Certificate> {
    let n = body.dim();
    let p = Projector::new(nodes.clone())?;
    let recomputed = match body {
        Body::Cube { .. } => {
            let b = p.system();
            (0..1u64 << n)
                .map(|i| b.lebesgue(Body::<f64>::cube_vertex(n, i).coords()))
                .fold(f64::NEG_INFINITY, f64::max)
        }
        _ => p.norm(body)?.value,
    };
    let vol_k = body.volume(100_000, 0)?.value;
    let vol_s = nodes.volume()?;
    let projector_lower_bound = theta_lower_general(vol_k.max(vol_s), vol_s, n)?;
    let global_lower_bound = match body {
        Body::Cube { .. } => Some(theta_cube_lower(n)),
        Body::Ball { .. } => Some(ball_optimum(n)?.p),
        _ => None,
    };
    Ok(Certificate {
        reported_norm,
        recomputed_norm: recomputed,
        norm_agrees: (recomputed - reported_norm).abs() <= CERTIFY_TOL,
        projector_lower_bound,
        global_lower_bound,
        gap: global_lower_bound.map(|g| recomputed - g),
    })
}

/// Cube symmetries: all `2ⁿ n!` maps `x ↦ (εᵢ x_{π(i)} + (1−εᵢ)/2)`.
pub fn cube_images(p: &Point<f64>) -> Vec<Point<f64>> {
    let n = p.dim();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for pre in &perms {
            for i in (0..n).filter(|i| !pre.contains(i)) {
                let mut q = pre.clone();
                q.push(i);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for perm in &perms {
        for flips in 0..1u32 << n {
            let c: Vec<f64> = (0..n)
                .map(|i| {
                    if flips >> i & 1 == 1 {
                        1.0 - p[perm[i]]
                    } else {
                        p[perm[i]]
                    }
                })
                .collect();
            out.push(Point::new(c).expect("finite"));
        }
    }
    out
}
