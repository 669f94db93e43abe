//! Subspaces of `Q^n`, always carried as row spaces in canonical (rref) form.

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Canonical basis of the row space of `m`: the nonzero rows of its rref.
pub fn image_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = m.rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

fn check_ambient(u: &Matrix, v: &Matrix) -> Result<()> {
    if u.cols() != v.cols() {
        return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", u.cols(), v.cols())));
    }
    Ok(())
}

pub fn sum(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    Ok(image_basis(&u.vstack(v)))
}

pub fn intersect(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    // (x, y) with x U + y V = 0 gives x U in the intersection.
    let stacked = u.vstack(v);
    let lk = stacked.left_kernel_basis();
    let xs = lk.select_cols(&(0..u.rows()).collect::<Vec<_>>());
    Ok(image_basis(&xs.mul(u)))
}

/// True when `v` lies in the row space of `basis`.
pub fn contains(basis: &Matrix, v: &[Scalar]) -> bool {
    let row = Matrix::from_vec(1, v.len(), v.to_vec());
    basis.rank() == basis.vstack(&row).rank()
}

/// True when every row of `u` lies in the row space of `v`.
pub fn is_subspace(u: &Matrix, v: &Matrix) -> bool {
    u.cols() == v.cols() && v.rank() == v.vstack(u).rank()
}

/// Complement of `U` inside `V`: rows of the rref basis of `V` kept greedily
/// whenever they are independent of `U` and the rows already kept.
pub fn complement_in(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    let vb = image_basis(v);
    let mut acc = image_basis(u);
    let mut rank = acc.rows();
    let mut chosen = Matrix::zeros(0, v.cols());
    for i in 0..vb.rows() {
        let row = vb.select_rows(&[i]);
        let next = acc.vstack(&row);
        let r = next.rank();
        if r > rank {
            rank = r;
            acc = next;
            chosen = chosen.vstack(&row);
        }
    }
    Ok(chosen)
}

/// Projection `V -> V/U` as a `(dim V - dim U) x n` matrix `P` acting on
/// column vectors: for `v` in `V`, `P v` are the coordinates of the class of
/// `v` in the basis given by [`complement_in`].
pub fn quotient_map(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    if !is_subspace(u, v) {
        return Err(Error::NotSubspace("quotient_map requires U to lie inside V".into()));
    }
    let ub = image_basis(u);
    let comp = complement_in(&ub, v)?;
    let full = ub.vstack(&comp);
    // v = [a, c] * full  =>  [a, c] = v * Q with Q a right inverse of full.
    let q = full.right_inverse().expect("stacked basis has full row rank");
    let k = comp.rows();
    let cols: Vec<usize> = (ub.rows()..ub.rows() + k).collect();
    Ok(q.select_cols(&cols).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersect_and_sum_of_axes() {
        let x = Matrix::from_ints(&[&[1, 0]]);
        let y = Matrix::from_ints(&[&[0, 1]]);
        assert_eq!(intersect(&x, &y).unwrap().rows(), 0);
        assert_eq!(sum(&x, &y).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn quotient_projects_onto_second_coordinate() {
        let u = Matrix::from_ints(&[&[1, 0]]);
        let p = quotient_map(&u, &Matrix::identity(2)).unwrap();
        assert_eq!(p, Matrix::from_ints(&[&[0, 1]]));
    }

    #[test]
    fn quotient_rejects_non_subspace() {
        let u = Matrix::from_ints(&[&[1, 1, 0]]);
        let v = Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(quotient_map(&u, &v), Err(Error::NotSubspace(_))));
    }

    #[test]
    fn mismatched_ambient() {
        let u = Matrix::from_ints(&[&[1, 0]]);
        let v = Matrix::from_ints(&[&[1, 0, 0]]);
        assert!(matches!(sum(&u, &v), Err(Error::DimensionMismatch(_))));
        assert!(matches!(intersect(&u, &v), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn intersection_of_planes() {
        let u = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]);
        let v = Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1]]);
        // x + y - z = 0 and z = 0  =>  span (1,-1,0)
        let w = intersect(&u, &v).unwrap();
        assert_eq!(w, Matrix::from_ints(&[&[1, -1, 0]]));
    }
}
