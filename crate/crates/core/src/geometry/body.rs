use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Point;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::Real;
use crate::special::unit_ball_volume;

/// Slack for membership tests of computed points in cubes and balls.
pub const CONTAINMENT_TOL: f64 = 1e-9;

/// The bodies the projector norms and absorption indices are computed over.
#[derive(Debug, Clone, PartialEq)]
pub enum Body<T: Real> {
    /// The unit cube `[0, 1]ⁿ`.
    Cube { n: usize },
    /// The closed Euclidean ball `B(center; radius)`.
    Ball { center: Point<T>, radius: T },
    /// The convex hull of the listed points.
    VertexPolytope { vertices: Vec<Point<T>> },
    /// A finite point set `E`; norms are taken over `E` itself.
    PointCloud { points: Vec<Point<T>> },
}

/// A volume value; Monte Carlo estimates carry their standard error and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate<T> {
    pub value: T,
    pub std_error: T,
    pub approximate: bool,
    pub samples: u64,
    pub seed: Option<u64>,
}

impl<T: Real> VolumeEstimate<T> {
    fn exact(value: T) -> Self {
        Self {
            value,
            std_error: T::zero(),
            approximate: false,
            samples: 0,
            seed: None,
        }
    }
}

impl<T: Real> Body<T> {
    pub fn cube(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "cube dimension must be positive".into(),
            ));
        }
        Ok(Body::Cube { n })
    }

    pub fn ball(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Body::Ball { center, radius })
    }

    /// `Bₙ = B(0; 1)`.
    pub fn unit_ball(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "ball dimension must be positive".into(),
            ));
        }
        Self::ball(Point::origin(n), T::one())
    }

    pub fn vertex_polytope(vertices: Vec<Point<T>>) -> Result<Self> {
        let n = common_dim(&vertices)?;
        if vertices.len() < n + 1 || !affinely_spanning(&vertices) {
            return Err(Error::InvalidInput(format!(
                "a vertex polytope in dimension {n} needs at least {} affinely spanning vertices",
                n + 1
            )));
        }
        Ok(Body::VertexPolytope { vertices })
    }

    pub fn point_cloud(points: Vec<Point<T>>) -> Result<Self> {
        common_dim(&points)?;
        Ok(Body::PointCloud { points })
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Cube { n } => *n,
            Body::Ball { center, .. } => center.dim(),
            Body::VertexPolytope { vertices } => vertices[0].dim(),
            Body::PointCloud { points } => points[0].dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Body::Cube { .. } => "cube",
            Body::Ball { .. } => "ball",
            Body::VertexPolytope { .. } => "poly",
            Body::PointCloud { .. } => "cloud",
        }
    }

    pub fn contains(&self, x: &Point<T>) -> Result<bool> {
        x.check_dim(self.dim())?;
        let tol = T::lit(CONTAINMENT_TOL);
        Ok(match self {
            Body::Cube { .. } => x.coords().iter().all(|&c| c >= -tol && c <= T::one() + tol),
            Body::Ball { center, radius } => x.distance(center) <= *radius * (T::one() + tol),
            Body::VertexPolytope { vertices } => in_convex_hull(vertices, x.coords()),
            Body::PointCloud { points } => points.iter().any(|p| p == x),
        })
    }

    /// Volume of the body: exact for cubes and balls, Monte Carlo over the bounding
    /// box for vertex polytopes (`samples` draws from a ChaCha8 stream seeded by `seed`).
    pub fn volume(&self, samples: u64, seed: u64) -> Result<VolumeEstimate<T>> {
        match self {
            Body::Cube { .. } => Ok(VolumeEstimate::exact(T::one())),
            Body::Ball { center, radius } => Ok(VolumeEstimate::exact(
                unit_ball_volume::<T>(center.dim()) * radius.powi(center.dim() as i32),
            )),
            Body::VertexPolytope { vertices } => Ok(polytope_volume_mc(vertices, samples, seed)),
            Body::PointCloud { .. } => Err(Error::UnsupportedBody("a point cloud has no volume")),
        }
    }

    /// Cube vertex with coordinates given by the bits of `index` (bit `i` is coordinate `i`).
    pub fn cube_vertex(n: usize, index: u64) -> Point<T> {
        Point(
            (0..n)
                .map(|i| {
                    if index >> i & 1 == 1 {
                        T::one()
                    } else {
                        T::zero()
                    }
                })
                .collect(),
        )
    }
}

fn common_dim<T: Real>(points: &[Point<T>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyVertexSet)?;
    let n = first.dim();
    for p in points {
        p.check_dim(n)?;
    }
    Ok(n)
}

fn affinely_spanning<T: Real>(points: &[Point<T>]) -> bool {
    // Rank of the difference vectors by Gaussian elimination.
    let n = points[0].dim();
    let base = points[0].coords();
    let mut rows: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| p.coords().iter().zip(base).map(|(a, b)| *a - *b).collect())
        .collect();
    let scale = rows.iter().flatten().fold(T::zero(), |m, v| m.max(v.abs()));
    let tol = T::kernel_tol() * scale.max(T::one());
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).unwrap())
        else {
            break;
        };
        if rows[p][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / rows[rank][col];
            for c in col..n {
                let v = rows[rank][c];
                rows[r][c] -= f * v;
            }
        }
        rank += 1;
    }
    rank == n
}

/// Linear feasibility: is `x = Σ μ_k v_k` with `μ ≥ 0`, `Σ μ_k = 1`?
pub(crate) fn in_convex_hull<T: Real>(vertices: &[Point<T>], x: &[T]) -> bool {
    let m = vertices.len();
    let mut lp = LinearProgram::feasibility(m);
    lp.constrain(vec![T::one(); m], Relation::Eq, T::one());
    for i in 0..x.len() {
        lp.constrain(vertices.iter().map(|v| v[i]).collect(), Relation::Eq, x[i]);
    }
    lp.solve().is_ok()
}

fn polytope_volume_mc<T: Real>(
    vertices: &[Point<T>],
    samples: u64,
    seed: u64,
) -> VolumeEstimate<T> {
    let n = vertices[0].dim();
    let lo: Vec<f64> = (0..n)
        .map(|i| {
            vertices
                .iter()
                .map(|v| v[i].as_f64())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let hi: Vec<f64> = (0..n)
        .map(|i| {
            vertices
                .iter()
                .map(|v| v[i].as_f64())
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![T::zero(); n];
    let mut hits = 0u64;
    for _ in 0..samples {
        for i in 0..n {
            x[i] = T::lit(rng.random_range(lo[i]..=hi[i]));
        }
        if in_convex_hull(vertices, &x) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples.max(1) as f64;
    let se = box_vol * (p * (1.0 - p) / samples.max(1) as f64).sqrt();
    VolumeEstimate {
        value: T::lit(box_vol * p),
        std_error: T::lit(se),
        approximate: true,
        samples,
        seed: Some(seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pt(c: &[f64]) -> Point<f64> {
        Point::from_f64(c).unwrap()
    }

    #[test]
    fn membership() {
        assert!(Body::<f64>::cube(2)
            .unwrap()
            .contains(&pt(&[0.5, 0.5]))
            .unwrap());
        assert!(!Body::<f64>::cube(2)
            .unwrap()
            .contains(&pt(&[1.5, 0.5]))
            .unwrap());
        assert!(!Body::unit_ball(2)
            .unwrap()
            .contains(&pt(&[1.0, 1.0]))
            .unwrap());
        assert!(Body::unit_ball(2)
            .unwrap()
            .contains(&pt(&[0.6, 0.8]))
            .unwrap());

        let tri =
            Body::vertex_polytope(vec![pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]).unwrap();
        assert!(!tri.contains(&pt(&[0.9, 0.9])).unwrap());
        assert!(tri.contains(&pt(&[0.2, 0.3])).unwrap());
        assert!(tri.contains(&pt(&[0.5, 0.5])).unwrap());

        let cloud = Body::point_cloud(vec![pt(&[0.0, 0.0]), pt(&[2.0, 1.0])]).unwrap();
        assert!(cloud.contains(&pt(&[2.0, 1.0])).unwrap());
        assert!(!cloud.contains(&pt(&[1.0, 0.5])).unwrap());

        assert!(matches!(
            Body::<f64>::cube(2).unwrap().contains(&pt(&[0.5])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invalid_bodies() {
        assert!(Body::ball(pt(&[0.0]), 0.0).is_err());
        assert!(
            Body::vertex_polytope(vec![pt(&[0.0, 0.0]), pt(&[1.0, 1.0]), pt(&[2.0, 2.0])]).is_err()
        );
        assert!(Body::<f64>::point_cloud(vec![]).is_err());
    }

    #[test]
    fn exact_volumes() {
        assert_eq!(
            Body::<f64>::cube(5).unwrap().volume(0, 0).unwrap().value,
            1.0
        );
        let b2 = Body::<f64>::unit_ball(2).unwrap().volume(0, 0).unwrap();
        assert_relative_eq!(b2.value, PI, max_relative = 1e-15);
        assert!(!b2.approximate);
        let b3 = Body::<f64>::unit_ball(3).unwrap().volume(0, 0).unwrap();
        assert_relative_eq!(b3.value, 4.0 * PI / 3.0, max_relative = 1e-15);
        let big = Body::ball(pt(&[1.0, 2.0]), 2.0)
            .unwrap()
            .volume(0, 0)
            .unwrap();
        assert_relative_eq!(big.value, 4.0 * PI, max_relative = 1e-15);
        assert!(matches!(
            Body::point_cloud(vec![pt(&[0.0])]).unwrap().volume(10, 0),
            Err(Error::UnsupportedBody(_))
        ));
    }

    #[test]
    fn monte_carlo_triangle_area() {
        let tri =
            Body::vertex_polytope(vec![pt(&[0.0, 0.0]), pt(&[2.0, 0.0]), pt(&[0.0, 1.0])]).unwrap();
        let est = tri.volume(20_000, 7).unwrap();
        assert!(est.approximate);
        assert!((est.value - 1.0).abs() <= 3.0 * est.std_error, "{est:?}");
        assert_eq!(tri.volume(20_000, 7).unwrap(), est);
    }
}
