//! Jacobson radical of a finite-dimensional algebra over a field of
//! characteristic zero: `rad A = {x : tr(L_{xy}) = 0 for all y}`.

use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};

/// Radical of the algebra with basis `0..dim` whose products are given by
/// `product(a, b)` as coefficient vectors. Rows of the result span the
/// radical (canonical rref basis). The result is checked to be nilpotent.
pub fn trace_form_radical(dim: usize, product: impl Fn(usize, usize) -> Vec<Scalar>) -> Result<Matrix> {
    let table: Vec<Vec<Vec<Scalar>>> = (0..dim).map(|a| (0..dim).map(|b| product(a, b)).collect()).collect();
    // tr(L_{b_c}) = sum_d coefficient of b_d in b_c b_d
    let traces: Vec<Scalar> = (0..dim).map(|c| (0..dim).map(|d| table[c][d][d].clone()).sum()).collect();
    let mut form = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = Scalar::zero();
            for (coef, tr) in table[a][b].iter().zip(&traces) {
                if !coef.is_zero() && !tr.is_zero() {
                    acc += &(coef * tr);
                }
            }
            form[(a, b)] = acc;
        }
    }
    let rad = image_basis(&form.left_kernel_basis());

    // Left multiplication matrices (row convention: y -> x y).
    for r in 0..rad.rows() {
        let mut lm = Matrix::zeros(dim, dim);
        for (a, x) in rad.row(r).iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for b in 0..dim {
                for (c, coef) in table[a][b].iter().enumerate() {
                    if !coef.is_zero() {
                        lm[(b, c)] += &(x * coef);
                    }
                }
            }
        }
        if !lm.is_nilpotent() {
            return Err(Error::RadicalNotNilpotent);
        }
    }
    Ok(rad)
}
