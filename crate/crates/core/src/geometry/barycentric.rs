use serde::Serialize;

use super::{Point, Simplex};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Real;

/// The inverse `L = A⁻¹ = (l_ij)` of a simplex's vertex matrix.
///
/// Column `j` of `L` holds the coefficients of the basic Lagrange polynomial
/// `λ_j(x) = l_1j x_1 + … + l_nj x_n + l_(n+1)j`, i.e. the `j`-th barycentric coordinate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarycentricSystem<T> {
    dim: usize,
    inverse: DenseMatrix<T>,
    /// `gradients[j] = (l_1j, …, l_nj)`.
    gradients: Vec<Vec<T>>,
    /// `offsets[j] = l_(n+1)j`.
    offsets: Vec<T>,
}

impl<T: Real> BarycentricSystem<T> {
    pub fn new(simplex: &Simplex<T>) -> Result<Self> {
        simplex.checked_abs_det()?;
        let n = simplex.dim();
        let a = simplex.vertex_matrix();
        let inverse = a.lu().inverse().ok_or(Error::DegenerateSimplex {
            det: 0.0,
            threshold: 0.0,
        })?;
        let gradients = (0..=n)
            .map(|j| (0..n).map(|i| inverse[(i, j)]).collect())
            .collect();
        let offsets = (0..=n).map(|j| inverse[(n, j)]).collect();
        Ok(Self {
            dim: n,
            inverse,
            gradients,
            offsets,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inverse(&self) -> &DenseMatrix<T> {
        &self.inverse
    }

    pub fn gradient(&self, j: usize) -> &[T] {
        &self.gradients[j]
    }

    pub fn gradients(&self) -> &[Vec<T>] {
        &self.gradients
    }

    pub fn offsets(&self) -> &[T] {
        &self.offsets
    }

    /// Row `i` of `L`: how every `λ_j` changes along the `i`-th axis.
    pub fn axis_row(&self, i: usize) -> &[T] {
        self.inverse.row(i)
    }

    /// `(λ_1(x), …, λ_(n+1)(x))`.
    pub fn eval(&self, x: &Point<T>) -> Result<Vec<T>> {
        x.check_dim(self.dim)?;
        let mut out = vec![T::zero(); self.dim + 1];
        self.eval_into(x.coords(), &mut out);
        Ok(out)
    }

    /// Unchecked evaluation for hot loops; `x.len() == n`, `out.len() == n + 1`.
    #[inline]
    pub fn eval_into(&self, x: &[T], out: &mut [T]) {
        out.copy_from_slice(&self.offsets);
        for (i, &xi) in x.iter().enumerate() {
            if xi != T::zero() {
                for (o, &l) in out.iter_mut().zip(self.inverse.row(i)) {
                    *o += l * xi;
                }
            }
        }
    }

    /// `Σ_j |λ_j(x)|`, the Lebesgue function of the projector at `x`.
    pub fn lebesgue(&self, x: &[T]) -> T {
        let mut buf = vec![T::zero(); self.dim + 1];
        self.eval_into(x, &mut buf);
        buf.iter().map(|v| v.abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::IDENTITY_TOL;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_simplex(n: usize, seed: u64) -> Simplex<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows = (0..=n)
                .map(|_| (0..n).map(|_| rng.random_range(-1.0f64..1.0)).collect())
                .collect();
            let s = Simplex::from_rows(rows).unwrap();
            if s.determinant().abs() > 1e-3 {
                return s;
            }
        }
    }

    #[test]
    fn unit_triangle_polynomials() {
        let b = Simplex::<f64>::unit(2).barycentric().unwrap();
        // λ₁ = 1 − x₁ − x₂, λ₂ = x₁, λ₃ = x₂
        assert_eq!(b.gradient(0), &[-1.0, -1.0]);
        assert_eq!(b.gradient(1), &[1.0, 0.0]);
        assert_eq!(b.gradient(2), &[0.0, 1.0]);
        assert_eq!(b.offsets(), &[1.0, 0.0, 0.0]);
        let l = b.eval(&Point::from_f64(&[1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(l, vec![-1.0, 1.0, 1.0]);
    }

    #[test]
    fn kronecker_at_vertices_and_centroid() {
        let s = random_simplex(5, 3);
        let b = s.barycentric().unwrap();
        for (k, v) in s.vertices().iter().enumerate() {
            let l = b.eval(v).unwrap();
            for (j, lj) in l.iter().enumerate() {
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((lj - expect).abs() < IDENTITY_TOL);
            }
        }
        for lj in b.eval(&s.centroid()).unwrap() {
            assert_relative_eq!(lj, 1.0 / 6.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn inverse_times_vertex_matrix_is_identity() {
        let s = random_simplex(4, 11);
        let b = s.barycentric().unwrap();
        let prod = s.vertex_matrix().mul(b.inverse());
        assert!(prod.max_abs_diff(&DenseMatrix::identity(5)) < IDENTITY_TOL);
    }

    #[test]
    fn dimension_mismatch() {
        let b = Simplex::<f64>::unit(2).barycentric().unwrap();
        assert!(matches!(
            b.eval(&Point::from_f64(&[1.0, 2.0, 3.0]).unwrap()),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn single_precision() {
        let b = Simplex::<f32>::unit(3).barycentric().unwrap();
        let l = b
            .eval(&Point::new(vec![0.25f32, 0.25, 0.25]).unwrap())
            .unwrap();
        assert!(l.iter().all(|v| (v - 0.25).abs() < 1e-6));
    }

    proptest! {
        #[test]
        fn partition_of_unity_and_reconstruction(
            seed in any::<u64>(),
            n in 1usize..7,
            x in proptest::collection::vec(-3.0f64..3.0, 7),
        ) {
            let s = random_simplex(n, seed);
            let b = s.barycentric().unwrap();
            let x = Point::new(x[..n].to_vec()).unwrap();
            let l = b.eval(&x).unwrap();
            prop_assert!((l.iter().sum::<f64>() - 1.0).abs() < IDENTITY_TOL);
            for i in 0..n {
                let rebuilt: f64 = l.iter().zip(s.vertices()).map(|(lj, v)| lj * v[i]).sum();
                prop_assert!((rebuilt - x[i]).abs() < IDENTITY_TOL);
            }
        }

        #[test]
        fn volume_invariant_under_permutation_and_translation(
            seed in any::<u64>(),
            n in 1usize..6,
            shift in proptest::collection::vec(-5.0f64..5.0, 6),
        ) {
            let s = random_simplex(n, seed);
            let v = s.volume().unwrap();
            let order: Vec<usize> = (0..=n).rev().collect();
            prop_assert!((s.permuted(&order).volume().unwrap() - v).abs() < 1e-12 * v.max(1.0));
            prop_assert!((s.translated(&shift[..n]).volume().unwrap() - v).abs() < 1e-9 * v.max(1.0));
        }
    }
}
