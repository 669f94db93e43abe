//! Exact linear algebra over the rationals.

mod matrix;
mod scalar;
pub mod sparse;
pub mod subspace;

pub(crate) use matrix::free_columns;
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use sparse::SparseMatrix;

pub use subspace::{image_basis, intersect, quotient_map, sum};

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    m.solve(b)
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_and_empty() {
        let (r, p) = rref(&Matrix::identity(3));
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = rref(&Matrix::zeros(0, 0));
        assert_eq!((r.rows(), r.cols()), (0, 0));
        assert!(p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, Matrix::from_ints(&[&[-2, 1]]));
        assert_eq!(kernel_basis(&Matrix::identity(2)).rows(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)), Matrix::identity(3));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&Matrix::identity(2), &ints(&[3, 5])), Some(ints(&[3, 5])));
        assert_eq!(solve(&Matrix::from_ints(&[&[1, 1]]), &ints(&[7])), Some(ints(&[7, 0])));
        assert_eq!(solve(&Matrix::from_ints(&[&[1], &[0]]), &ints(&[0, 1])), None);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), Scalar::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Matrix::from_ints(&[&[0, 1], &[1, 0]]).determinant(), Scalar::from_int(-1));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c)
                .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Scalar::from_int).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.rows(), m.cols());
            for i in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(i)).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let (r, p) = rref(&m);
            let (rr, pp) = rref(&r);
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            let b: Vec<Scalar> = (0..m.rows()).map(|i| Scalar::from_int(seed[i])).collect();
            if let Some(x) = solve(&m, &b) {
                prop_assert_eq!(m.mul_vec(&x), b);
            }
            // A right-hand side in the column space is always solvable.
            let x0: Vec<Scalar> = (0..m.cols()).map(|i| Scalar::from_int(seed[i % 5])).collect();
            let b0 = m.mul_vec(&x0);
            prop_assert!(solve(&m, &b0).is_some());
        }
    }
}
