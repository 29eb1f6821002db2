use serde::{Deserialize, Serialize};

use super::{BarycentricSystem, Point};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Real;

/// `|det A|` must exceed this times `(max row norm of A)ⁿ` for a simplex to count as nondegenerate.
pub const NONDEGENERACY_REL_TOL: f64 = 1e-12;

/// `n + 1` vertices in `ℝⁿ`. Degenerate vertex sets are representable; operations
/// that need a proper simplex return [`Error::DegenerateSimplex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SimplexRepr<T>", into = "SimplexRepr<T>")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct Simplex<T: Real> {
    dim: usize,
    vertices: Vec<Point<T>>,
}

#[derive(Serialize, Deserialize)]
struct SimplexRepr<T> {
    n: usize,
    vertices: Vec<Vec<T>>,
}

impl<T: Real> TryFrom<SimplexRepr<T>> for Simplex<T> {
    type Error = Error;

    fn try_from(r: SimplexRepr<T>) -> Result<Self> {
        let s = Simplex::from_rows(r.vertices)?;
        if s.dim != r.n {
            return Err(Error::DimensionMismatch {
                expected: r.n,
                found: s.dim,
            });
        }
        Ok(s)
    }
}

impl<T: Real> From<Simplex<T>> for SimplexRepr<T> {
    fn from(s: Simplex<T>) -> Self {
        SimplexRepr {
            n: s.dim,
            vertices: s.vertices.into_iter().map(Point::into_coords).collect(),
        }
    }
}

impl<T: Real> Simplex<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("a simplex needs vertices".into()));
        };
        let dim = first.dim();
        if vertices.len() != dim + 1 {
            return Err(Error::InvalidInput(format!(
                "a simplex in dimension {dim} needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        for v in &vertices {
            v.check_dim(dim)?;
        }
        Ok(Self { dim, vertices })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(rows.into_iter().map(Point::new).collect::<Result<_>>()?)
    }

    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| Point::from_f64(r))
                .collect::<Result<_>>()?,
        )
    }

    /// `conv{0, e₁, …, eₙ}`.
    pub fn unit(n: usize) -> Self {
        let mut vertices = vec![Point::origin(n)];
        for i in 0..n {
            let mut c = vec![T::zero(); n];
            c[i] = T::one();
            vertices.push(Point(c));
        }
        Self { dim: n, vertices }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    /// Rows `(x⁽ʲ⁾, 1)`.
    pub fn vertex_matrix(&self) -> DenseMatrix<T> {
        let n = self.dim;
        let mut a = DenseMatrix::zeros(n + 1, n + 1);
        for (j, v) in self.vertices.iter().enumerate() {
            for i in 0..n {
                a[(j, i)] = v[i];
            }
            a[(j, n)] = T::one();
        }
        a
    }

    pub fn determinant(&self) -> T {
        self.vertex_matrix().lu().determinant()
    }

    /// Scale-aware degeneracy threshold for `|det A|`.
    pub fn degeneracy_threshold(&self) -> T {
        let max_row = self
            .vertices
            .iter()
            .map(|v| (v.coords().iter().map(|c| *c * *c).sum::<T>() + T::one()).sqrt())
            .fold(T::zero(), T::max);
        T::lit(NONDEGENERACY_REL_TOL) * max_row.powi(self.dim as i32)
    }

    /// Returns `|det A|` or a degeneracy error.
    pub fn checked_abs_det(&self) -> Result<T> {
        let det = self.determinant().abs();
        let threshold = self.degeneracy_threshold();
        if !(det > threshold) {
            return Err(Error::DegenerateSimplex {
                det: det.as_f64(),
                threshold: threshold.as_f64(),
            });
        }
        Ok(det)
    }

    pub fn is_degenerate(&self) -> bool {
        self.checked_abs_det().is_err()
    }

    /// `|det A| / n!`.
    pub fn volume(&self) -> Result<T> {
        let det = self.checked_abs_det()?;
        let fact = (2..=self.dim).fold(T::one(), |f, i| f * T::from_usize_lossy(i));
        Ok(det / fact)
    }

    pub fn barycentric(&self) -> Result<BarycentricSystem<T>> {
        BarycentricSystem::new(self)
    }

    pub fn centroid(&self) -> Point<T> {
        let n = self.dim;
        let w = T::one() / T::from_usize_lossy(n + 1);
        let mut c = vec![T::zero(); n];
        for v in &self.vertices {
            for i in 0..n {
                c[i] += v[i] * w;
            }
        }
        Point(c)
    }

    pub fn translated(&self, by: &[T]) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.translated(by)).collect(),
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scaled(factor)).collect(),
        }
    }

    /// Reorders vertices so that vertex `k` of the result is `self.vertices[order[k]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            dim: self.dim,
            vertices: order.iter().map(|&k| self.vertices[k].clone()).collect(),
        }
    }

    pub fn to_f64(&self) -> Simplex<f64> {
        Simplex {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| Point::new(v.to_f64()).expect("finite"))
                .collect(),
        }
    }
}
