//! Linear interpolation projectors: exact operator norms and absorption indices.
//!
//! For nodes forming a simplex `S` with barycentric coordinates `λ_j`,
//! `‖P‖_K = max_{x∈K} Σ_j |λ_j(x)|`. The maximand is convex, so over a polytope
//! it is attained at a vertex. Over a ball it is handled per sign vector `f`:
//! `max_{x∈B(x⁰;R)} Σ f_j λ_j(x) = Σ f_j λ_j(x⁰) + R ‖Σ f_j ∇λ_j‖`.

use serde::Serialize;

use crate::constructions::{self, MaxVolMode};
use crate::error::{Error, Result};
use crate::geometry::{BarycentricSystem, Body, Point, Simplex};
use crate::scalar::Real;

/// Largest cube dimension whose `2ⁿ` vertices are enumerated.
pub const CUBE_MAX_DIM: usize = 28;
/// Largest ball dimension whose `2ⁿ` sign classes are enumerated.
pub const BALL_MAX_DIM: usize = 25;
/// Below this, `max_K(−λ_k)` counts as zero, i.e. `K ⊆ S`.
pub const INCLUSION_TOL: f64 = 1e-12;
/// Spread allowed between the `n + 1` maxima for `ξ(S)S` to count as circumscribed.
pub const CIRCUMSCRIBED_TOL: f64 = 1e-9;
/// Slack on both sides of the norm/absorption sandwich.
pub const SANDWICH_TOL: f64 = 1e-9;

/// Gray-code runs are restarted from a fresh evaluation every `2^GRAY_BLOCK_BITS` steps.
const GRAY_BLOCK_BITS: usize = 16;

/// The interpolation projector whose nodes are the vertices of `nodes`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T: Real> {
    nodes: Simplex<T>,
    system: BarycentricSystem<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport<T: Real> {
    pub value: T,
    #[serde(rename = "witness")]
    pub witness_point: Point<T>,
    #[serde(rename = "signs")]
    pub witness_signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorptionReport<T: Real> {
    pub xi: T,
    pub alpha: T,
    pub circumscribed: bool,
    /// `max_{x∈K} (−λ_k(x))` for each node `k`.
    pub max_negative: Vec<T>,
    /// A maximizing point for each entry of `max_negative`.
    pub witnesses: Vec<Point<T>>,
}

#[inline]
fn sign_of<T: Real>(v: T) -> i8 {
    if v < T::zero() {
        -1
    } else {
        1
    }
}

impl<T: Real> Projector<T> {
    pub fn new(nodes: Simplex<T>) -> Result<Self> {
        let system = nodes.barycentric()?;
        Ok(Self { nodes, system })
    }

    pub fn nodes(&self) -> &Simplex<T> {
        &self.nodes
    }

    pub fn system(&self) -> &BarycentricSystem<T> {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.nodes.dim()
    }

    fn report_at(&self, x: Point<T>) -> NormReport<T> {
        let lambda = self.system.eval(&x).expect("dimension checked");
        NormReport {
            value: lambda.iter().map(|v| v.abs()).sum(),
            witness_signs: lambda.iter().map(|&v| sign_of(v)).collect(),
            witness_point: x,
        }
    }

    /// `max_{x ∈ vertices} Σ_j |λ_j(x)|`; ties go to the earliest listed point.
    pub fn norm_over_vertex_set(&self, vertices: &[Point<T>]) -> Result<NormReport<T>> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let n = self.dim();
        let mut buf = vec![T::zero(); n + 1];
        let mut best: Option<(T, usize)> = None;
        for (k, v) in vertices.iter().enumerate() {
            v.check_dim(n)?;
            self.system.eval_into(v.coords(), &mut buf);
            let s: T = buf.iter().map(|x| x.abs()).sum();
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, k));
            }
        }
        let (_, k) = best.expect("nonempty");
        Ok(self.report_at(vertices[k].clone()))
    }

    /// Norm over `[0,1]ⁿ` by Gray-code enumeration of its `2ⁿ` vertices.
    /// Ties go to the smallest vertex index (bit `i` = coordinate `i`).
    pub fn norm_over_cube(&self) -> Result<NormReport<T>> {
        let n = self.dim();
        if n > CUBE_MAX_DIM {
            return Err(Error::TooManyVertices {
                n,
                cap: CUBE_MAX_DIM,
            });
        }
        let mut best = T::neg_infinity();
        let mut best_idx = 0u64;
        visit_cube_vertices(&self.system, |idx, lambda| {
            let s: T = lambda.iter().map(|v| v.abs()).sum();
            if s > best || (s == best && idx < best_idx) {
                best = s;
                best_idx = idx;
            }
        });
        Ok(self.report_at(Body::cube_vertex(n, best_idx)))
    }

    /// Exact norm over `B(center; radius)` by enumerating sign vectors `f` with
    /// `f_(n+1) = +1` (the pair `±f` is covered by taking `|Σ f_j λ_j(center)|`).
    pub fn norm_over_ball(&self, center: &Point<T>, radius: T) -> Result<NormReport<T>> {
        let n = self.dim();
        center.check_dim(n)?;
        if n > BALL_MAX_DIM {
            return Err(Error::TooManySignVectors {
                n,
                cap: BALL_MAX_DIM,
            });
        }
        let lambda0 = self.system.eval(center)?;
        let grads = self.system.gradients();

        // Start from f = (+1, …, +1).
        let mut v = vec![T::zero(); n];
        for g in grads {
            v.iter_mut().zip(g).for_each(|(a, b)| *a += *b);
        }
        let mut c: T = lambda0.iter().copied().sum();
        let mut gray = 0u64;
        let mut best = T::neg_infinity();
        let mut best_mask = 0u64;
        let steps = 1u64 << n;
        for k in 0..steps {
            let val = c.abs() + radius * v.iter().map(|a| *a * *a).sum::<T>().sqrt();
            if val > best || (val == best && gray < best_mask) {
                best = val;
                best_mask = gray;
            }
            if k + 1 == steps {
                break;
            }
            let bit = (k + 1).trailing_zeros() as usize;
            // Flip f_bit: +1 → −1 subtracts twice its contribution, −1 → +1 adds it back.
            let two = T::lit(2.0);
            let sgn = if gray >> bit & 1 == 1 { two } else { -two };
            v.iter_mut()
                .zip(&grads[bit])
                .for_each(|(a, g)| *a += sgn * *g);
            c += sgn * lambda0[bit];
            gray ^= 1 << bit;
        }

        // Rebuild the maximizing sign vector and the point where it is attained.
        let mut f: Vec<i8> = (0..=n)
            .map(|j| {
                if j < n && best_mask >> j & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        let mut c = T::zero();
        let mut v = vec![T::zero(); n];
        for (j, &fj) in f.iter().enumerate() {
            let fj = if fj < 0 { -T::one() } else { T::one() };
            c += fj * lambda0[j];
            v.iter_mut().zip(&grads[j]).for_each(|(a, g)| *a += fj * *g);
        }
        if c < T::zero() {
            f.iter_mut().for_each(|s| *s = -*s);
            v.iter_mut().for_each(|a| *a = -*a);
        }
        let len = v.iter().map(|a| *a * *a).sum::<T>().sqrt();
        let witness = if len > T::zero() {
            Point(
                center
                    .coords()
                    .iter()
                    .zip(&v)
                    .map(|(x0, a)| *x0 + radius * *a / len)
                    .collect(),
            )
        } else {
            center.clone()
        };
        let lambda = self.system.eval(&witness)?;
        let value = lambda
            .iter()
            .zip(&f)
            .map(|(l, &s)| if s < 0 { -*l } else { *l })
            .sum();
        Ok(NormReport {
            value,
            witness_point: witness,
            witness_signs: f,
        })
    }

    /// `‖P‖_K` for any supported body.
    pub fn norm(&self, body: &Body<T>) -> Result<NormReport<T>> {
        if body.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: body.dim(),
            });
        }
        match body {
            Body::Cube { .. } => self.norm_over_cube(),
            Body::Ball { center, radius } => self.norm_over_ball(center, *radius),
            Body::VertexPolytope { vertices } => self.norm_over_vertex_set(vertices),
            Body::PointCloud { points } => self.norm_over_vertex_set(points),
        }
    }
}

/// Calls `visit(index, λ(v))` for every vertex `v` of `[0,1]ⁿ`, walking each block of
/// `2^16` vertices in Gray-code order (one row update per step) and re-evaluating
/// `λ` from scratch at the start of each block.
pub fn visit_cube_vertices<T: Real>(
    system: &BarycentricSystem<T>,
    mut visit: impl FnMut(u64, &[T]),
) {
    let n = system.dim();
    let low = n.min(GRAY_BLOCK_BITS);
    let high = n - low;
    let mut lambda = vec![T::zero(); n + 1];
    let mut x = vec![T::zero(); n];
    let steps = 1u64 << low;
    for h in 0..1u64 << high {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = if i >= low && (h >> (i - low)) & 1 == 1 {
                T::one()
            } else {
                T::zero()
            };
        }
        system.eval_into(&x, &mut lambda);
        let mut gray = 0u64;
        for k in 0..steps {
            visit((h << low) | gray, &lambda);
            if k + 1 == steps {
                break;
            }
            let bit = (k + 1).trailing_zeros() as usize;
            let row = system.axis_row(bit);
            if gray >> bit & 1 == 1 {
                lambda.iter_mut().zip(row).for_each(|(l, r)| *l -= *r);
            } else {
                lambda.iter_mut().zip(row).for_each(|(l, r)| *l += *r);
            }
            gray ^= 1 << bit;
        }
    }
}

fn check_nodes_in_body<T: Real>(body: &Body<T>, s: &Simplex<T>) -> Result<()> {
    if body.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: s.dim(),
        });
    }
    for (k, v) in s.vertices().iter().enumerate() {
        if !body.contains(v)? {
            return Err(Error::SimplexNotInBody { vertex: k });
        }
    }
    Ok(())
}

/// `max_{x∈K}(−λ_k(x))` for every `k`, with maximizers.
fn max_negative_lambdas<T: Real>(
    body: &Body<T>,
    b: &BarycentricSystem<T>,
) -> (Vec<T>, Vec<Point<T>>) {
    let n = b.dim();
    let mut maxima = Vec::with_capacity(n + 1);
    let mut witnesses = Vec::with_capacity(n + 1);
    match body {
        Body::Cube { .. } => {
            // An affine function is maximized over the box coordinatewise.
            for k in 0..=n {
                let g = b.gradient(k);
                let x: Vec<T> = g
                    .iter()
                    .map(|&gi| if -gi > T::zero() { T::one() } else { T::zero() })
                    .collect();
                let m = -b.offsets()[k] + g.iter().map(|&gi| (-gi).max(T::zero())).sum::<T>();
                maxima.push(m);
                witnesses.push(Point(x));
            }
        }
        Body::Ball { center, radius } => {
            let l0 = b.eval(center).expect("dimension checked");
            for k in 0..=n {
                let g = b.gradient(k);
                let len = g.iter().map(|a| *a * *a).sum::<T>().sqrt();
                maxima.push(-l0[k] + *radius * len);
                witnesses.push(Point(
                    center
                        .coords()
                        .iter()
                        .zip(g)
                        .map(|(c, gi)| *c - *radius * *gi / len)
                        .collect(),
                ));
            }
        }
        Body::VertexPolytope { vertices: pts } | Body::PointCloud { points: pts } => {
            let mut buf = vec![T::zero(); n + 1];
            let mut best = vec![(T::neg_infinity(), 0usize); n + 1];
            for (idx, p) in pts.iter().enumerate() {
                b.eval_into(p.coords(), &mut buf);
                for k in 0..=n {
                    if -buf[k] > best[k].0 {
                        best[k] = (-buf[k], idx);
                    }
                }
            }
            for (m, idx) in best {
                maxima.push(m);
                witnesses.push(pts[idx].clone());
            }
        }
    }
    (maxima, witnesses)
}

/// `ξ(K; S)`, `α(K; S)` and the circumscription test, all from the maxima of `−λ_k` over `K`.
///
/// `ξ = (n+1) max_k max_K(−λ_k) + 1` when `K ⊄ S` and `ξ = 1` otherwise;
/// `α = Σ_k max_K(−λ_k) + 1`.
pub fn absorption<T: Real>(body: &Body<T>, s: &Simplex<T>) -> Result<AbsorptionReport<T>> {
    check_nodes_in_body(body, s)?;
    let b = s.barycentric()?;
    let n = s.dim();
    let (maxima, witnesses) = max_negative_lambdas(body, &b);
    let top = maxima.iter().copied().fold(T::neg_infinity(), T::max);
    let bottom = maxima.iter().copied().fold(T::infinity(), T::min);
    let xi = if top <= T::lit(INCLUSION_TOL) {
        T::one()
    } else {
        T::from_usize_lossy(n + 1) * top + T::one()
    };
    let alpha = maxima.iter().copied().sum::<T>() + T::one();
    Ok(AbsorptionReport {
        xi,
        alpha,
        circumscribed: top - bottom <= T::lit(CIRCUMSCRIBED_TOL),
        max_negative: maxima,
        witnesses,
    })
}

pub fn xi<T: Real>(body: &Body<T>, s: &Simplex<T>) -> Result<T> {
    Ok(absorption(body, s)?.xi)
}

pub fn alpha<T: Real>(body: &Body<T>, s: &Simplex<T>) -> Result<T> {
    Ok(absorption(body, s)?.alpha)
}

pub fn circumscribed_check<T: Real>(body: &Body<T>, s: &Simplex<T>) -> Result<bool> {
    Ok(absorption(body, s)?.circumscribed)
}

/// `(n+1)/(2n) (‖P‖−1) + 1 ≤ ξ ≤ (n+1)/2 (‖P‖−1) + 1`, with [`SANDWICH_TOL`] slack.
pub fn sandwich_check(norm: f64, xi: f64, n: usize) -> bool {
    let nf = n as f64;
    let lower = (nf + 1.0) / (2.0 * nf) * (norm - 1.0) + 1.0;
    let upper = (nf + 1.0) / 2.0 * (norm - 1.0) + 1.0;
    lower <= xi + SANDWICH_TOL && xi <= upper + SANDWICH_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxVolBoundCheck {
    pub simplex: Simplex<f64>,
    pub xi: f64,
    pub norm: f64,
    /// `ξ(K; S) ≤ n + 2` and `‖P_S‖_K ≤ n + 1`.
    pub holds: bool,
}

/// Builds a maximum-volume simplex in `body` and checks `ξ(K;S) ≤ n+2`, `‖P_S‖_K ≤ n+1`.
///
/// Cubes use the exhaustive search up to dimension 5 and the seeded vertex-exchange
/// search above that; balls use the inscribed regular simplex; polytopes and point
/// sets use exhaustive search over their listed points.
pub fn maxvol_norm_bound_check(body: &Body<f64>) -> Result<MaxVolBoundCheck> {
    let n = body.dim();
    let simplex = match body {
        Body::Cube { .. } => {
            let mode = if n <= constructions::EXHAUSTIVE_MAX_DIM {
                MaxVolMode::Exhaustive
            } else {
                MaxVolMode::Heuristic { restarts: 50 }
            };
            constructions::maxvol_simplex_cube(n, mode, 0)?.simplex
        }
        Body::Ball { center, radius } => {
            constructions::regular_simplex_in_ball(n, center, *radius)?
        }
        Body::VertexPolytope { vertices: pts } | Body::PointCloud { points: pts } => {
            constructions::maxvol_simplex_in_points(pts)?
        }
    };
    let xi = absorption(body, &simplex)?.xi;
    let norm = Projector::new(simplex.clone())?.norm(body)?.value;
    let nf = n as f64;
    let holds = xi <= nf + 2.0 + 1e-9 && norm <= nf + 1.0 + 1e-9;
    Ok(MaxVolBoundCheck {
        simplex,
        xi,
        norm,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tri(rows: &[&[f64]]) -> Simplex<f64> {
        Simplex::from_f64_rows(rows).unwrap()
    }

    fn corner() -> Simplex<f64> {
        tri(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])
    }

    fn golden() -> Simplex<f64> {
        let t = (3.0 - 5f64.sqrt()) / 2.0;
        tri(&[&[0.0, 0.0], &[1.0, t], &[t, 1.0]])
    }

    /// Σ|λ_j| at every vertex, straight from the definition.
    fn brute_cube_norm(p: &Projector<f64>) -> f64 {
        let n = p.dim();
        (0..1u64 << n)
            .map(|i| p.system().lebesgue(Body::<f64>::cube_vertex(n, i).coords()))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn corner_triangle_on_square() {
        let p = Projector::new(corner()).unwrap();
        let r = p.norm_over_cube().unwrap();
        assert_relative_eq!(r.value, 3.0, epsilon = 1e-12);
        assert_eq!(r.witness_point.coords(), &[1.0, 1.0]);
        assert_eq!(r.witness_signs, vec![-1, 1, 1]);
        let verts: Vec<_> = (0..4).map(|i| Body::cube_vertex(2, i)).collect();
        assert_eq!(p.norm_over_vertex_set(&verts).unwrap(), r);
    }

    #[test]
    fn golden_triangle_norm() {
        let p = Projector::new(golden()).unwrap();
        assert_relative_eq!(
            p.norm_over_cube().unwrap().value,
            2.0 * 5f64.sqrt() / 5.0 + 1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gray_code_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in [1usize, 2, 3, 5, 8, 17] {
            let rows = (0..=n)
                .map(|_| (0..n).map(|_| rng.random::<f64>()).collect())
                .collect();
            let p = Projector::new(Simplex::from_rows(rows).unwrap()).unwrap();
            let fast = p.norm_over_cube().unwrap();
            assert!(
                (fast.value - brute_cube_norm(&p)).abs() < 1e-9 * fast.value,
                "n={n}"
            );
            let lambda = p.system().eval(&fast.witness_point).unwrap();
            let signed: f64 = lambda
                .iter()
                .zip(&fast.witness_signs)
                .map(|(l, &s)| l * s as f64)
                .sum();
            assert!((signed - fast.value).abs() < 1e-9);
        }
    }

    #[test]
    fn cube_cap_and_empty_set() {
        let p = Projector::new(Simplex::<f64>::unit(2)).unwrap();
        assert_eq!(
            p.norm_over_vertex_set(&[]).unwrap_err(),
            Error::EmptyVertexSet
        );
        assert!(matches!(
            p.norm_over_vertex_set(&[Point::from_f64(&[1.0]).unwrap()]),
            Err(Error::DimensionMismatch { .. })
        ));
        let big = Projector::new(Simplex::<f64>::unit(CUBE_MAX_DIM + 1)).unwrap();
        assert!(matches!(
            big.norm_over_cube(),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn ball_norm_against_dense_sampling() {
        // Sample the boundary circle densely; the exact value must dominate and be approached.
        let s = tri(&[&[0.3, -0.2], &[-0.5, 0.4], &[0.1, 0.8]]);
        let p = Projector::new(s).unwrap();
        let exact = p.norm_over_ball(&Point::origin(2), 1.0).unwrap();
        let mut sampled = f64::NEG_INFINITY;
        for k in 0..200_000 {
            let th = k as f64 / 200_000.0 * std::f64::consts::TAU;
            sampled = sampled.max(p.system().lebesgue(&[th.cos(), th.sin()]));
        }
        assert!(exact.value >= sampled - 1e-12);
        assert!(exact.value - sampled < 1e-6);
        assert!((exact.witness_point.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ball_norm_small_radius_limit() {
        let s = tri(&[&[0.3, -0.2], &[-0.5, 0.4], &[0.1, 0.8]]);
        let c = s.centroid();
        let p = Projector::new(s).unwrap();
        let r = p.norm_over_ball(&c, 1e-9).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn ball_cap() {
        let p = Projector::new(Simplex::<f64>::unit(BALL_MAX_DIM + 1)).unwrap();
        assert!(matches!(
            p.norm_over_ball(&Point::origin(BALL_MAX_DIM + 1), 1.0),
            Err(Error::TooManySignVectors { .. })
        ));
    }

    #[test]
    fn absorption_corner_triangle() {
        let cube = Body::cube(2).unwrap();
        let r = absorption(&cube, &corner()).unwrap();
        assert_relative_eq!(r.xi, 4.0, epsilon = 1e-12);
        assert_relative_eq!(r.alpha, 2.0, epsilon = 1e-12);
        assert!(!r.circumscribed);
        assert!(sandwich_check(3.0, r.xi, 2));
    }

    #[test]
    fn absorption_of_a_simplex_by_itself() {
        let s = tri(&[&[0.0, 0.0], &[2.0, 0.5], &[0.5, 1.5]]);
        let body = Body::vertex_polytope(s.vertices().to_vec()).unwrap();
        let r = absorption(&body, &s).unwrap();
        assert_eq!(r.xi, 1.0);
        assert_relative_eq!(r.alpha, 1.0, epsilon = 1e-12);
        assert!(r.circumscribed);
        assert_relative_eq!(
            Projector::new(s).unwrap().norm(&body).unwrap().value,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn simplex_outside_body() {
        let s = tri(&[&[0.0, 0.0], &[1.5, 0.0], &[0.0, 1.0]]);
        assert_eq!(
            absorption(&Body::cube(2).unwrap(), &s).unwrap_err(),
            Error::SimplexNotInBody { vertex: 1 }
        );
    }

    #[test]
    fn cube_absorption_matches_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..6 {
            let rows = (0..=n)
                .map(|_| (0..n).map(|_| rng.random::<f64>()).collect())
                .collect();
            let s = Simplex::from_rows(rows).unwrap();
            let verts: Vec<_> = (0..1u64 << n).map(|i| Body::cube_vertex(n, i)).collect();
            let closed = absorption(&Body::cube(n).unwrap(), &s).unwrap();
            let listed = absorption(&Body::vertex_polytope(verts).unwrap(), &s).unwrap();
            assert!((closed.xi - listed.xi).abs() < 1e-12);
            assert!((closed.alpha - listed.alpha).abs() < 1e-12);
        }
    }

    #[test]
    fn sandwich_examples() {
        assert!(sandwich_check(3.0, 4.0, 2));
        assert!(sandwich_check(2.5, 7.0, 7));
        assert!(sandwich_check(1.0, 1.0, 3));
        assert!(!sandwich_check(3.0, 4.1, 2));
        assert!(!sandwich_check(3.0, 2.4, 2));
    }

    #[test]
    fn segment_bound_check() {
        let r = maxvol_norm_bound_check(&Body::cube(1).unwrap()).unwrap();
        assert!(r.holds);
        assert_relative_eq!(r.xi, 1.0);
        assert_relative_eq!(r.norm, 1.0);
    }

    #[test]
    fn single_precision_norm() {
        let s = Simplex::<f32>::from_f64_rows(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let r = Projector::new(s).unwrap().norm_over_cube().unwrap();
        assert!((r.value - 3.0).abs() < 1e-6);
    }
}
