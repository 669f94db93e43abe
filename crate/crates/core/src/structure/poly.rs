//! Univariate polynomials over the rationals, coefficients low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::exactla::{Matrix, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn monic(p: Poly) -> Poly {
    let p = trim(p);
    match p.last() {
        Some(lead) if !lead.is_one() => {
            let inv = lead.recip();
            p.iter().map(|c| c * &inv).collect()
        }
        _ => p,
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = degree(&b).expect("division by the zero polynomial");
    let mut r = trim(a.clone());
    let lead_inv = b[db].recip();
    let mut q = vec![Scalar::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bc);
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

pub fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect())
}

pub fn eval(p: &Poly, x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
}

/// `p(A)` for a square matrix `A`.
pub fn eval_matrix(p: &Poly, a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(a);
        if !c.is_zero() {
            acc.add_scaled(c, &Matrix::identity(n));
        }
    }
    acc
}

/// `v p(A)` for a row vector `v`.
fn eval_row(p: &Poly, v: &[Scalar], a: &Matrix) -> Vec<Scalar> {
    let mut acc = vec![Scalar::zero(); v.len()];
    for c in p.iter().rev() {
        acc = a.vec_mul(&acc);
        if !c.is_zero() {
            for (x, y) in acc.iter_mut().zip(v) {
                *x += &(c * y);
            }
        }
    }
    acc
}

/// Monic polynomial of least degree annihilating `v` under `v -> v A`.
fn local_minimal(v: &[Scalar], a: &Matrix) -> Poly {
    let n = v.len();
    let mut krylov: Vec<Vec<Scalar>> = vec![v.to_vec()];
    loop {
        let next = a.vec_mul(krylov.last().unwrap());
        // Solve next = sum_i c_i krylov[i] if possible.
        let basis = Matrix::from_rows(n, krylov.clone()).transpose();
        if let Some(c) = basis.solve(&next) {
            let mut p: Poly = c.into_iter().map(|x| -x).collect();
            p.push(Scalar::one());
            return p;
        }
        krylov.push(next);
    }
}

/// Minimal polynomial of the block-diagonal matrix with the given blocks.
pub fn minimal_polynomial(blocks: &[&Matrix]) -> Poly {
    let mut p: Poly = vec![Scalar::one()];
    for a in blocks {
        let n = a.rows();
        for i in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            let w = eval_row(&p, &e, a);
            if w.iter().all(Scalar::is_zero) {
                continue;
            }
            p = mul(&p, &local_minimal(&w, a));
        }
    }
    p
}

fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i64);
            if d * d != n {
                out.push((n / d) as i64);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Rational roots of `p`, sorted, without multiplicity. Candidates whose
/// numerators or denominators are too large to enumerate are skipped.
pub fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let mut p = trim(p.clone());
    let mut roots = Vec::new();
    if p.is_empty() {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Scalar::zero());
        while p.first().is_some_and(Scalar::is_zero) {
            p.remove(0);
        }
    }
    if p.len() <= 1 {
        return roots;
    }
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    for &q in &den {
        for &a in &num {
            for s in [a, -a] {
                let x = Scalar::new(s, q);
                if !roots.contains(&x) && eval(&p, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Coprime factorization `p = prod_i f_i` into the primary factors
/// `(t - r)^k` for each rational root `r`, plus the cofactor without rational
/// roots when it is nonconstant.
pub fn coprime_pieces(p: &Poly) -> Vec<Poly> {
    let p = monic(p.clone());
    if p.len() <= 1 {
        return Vec::new();
    }
    let squarefree = divrem(&p, &gcd(&p, &derivative(&p))).0;
    let mut rest = p;
    let mut pieces = Vec::new();
    for r in rational_roots(&squarefree) {
        let lin = vec![-r.clone(), Scalar::one()];
        let mut piece = vec![Scalar::one()];
        loop {
            let (q, rem) = divrem(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            piece = mul(&piece, &lin);
        }
        pieces.push(piece);
    }
    if rest.len() > 1 {
        pieces.push(monic(rest));
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        c.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        let (q, r) = divrem(&a, &p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn roots_of_rational_polynomial() {
        // (2t - 1)(t + 3) t^2 (t^2 - 2)
        let f = mul(&mul(&p(&[-1, 2]), &p(&[3, 1])), &mul(&p(&[0, 0, 1]), &p(&[-2, 0, 1])));
        assert_eq!(rational_roots(&f), vec![Scalar::from_int(-3), Scalar::zero(), Scalar::new(1, 2)]);
        let pieces = coprime_pieces(&f);
        assert_eq!(pieces.len(), 4);
        assert_eq!(pieces[1], p(&[0, 0, 1]));
        assert_eq!(pieces[3], p(&[-2, 0, 1]));
    }

    #[test]
    fn minimal_polynomial_of_projection() {
        let e = Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert_eq!(minimal_polynomial(&[&e]), p(&[0, -1, 1]));
        let j = Matrix::from_ints(&[&[2, 1], &[0, 2]]);
        assert_eq!(
            minimal_polynomial(&[&j, &Matrix::identity(1)]),
            mul(&p(&[-2, 1]), &mul(&p(&[-2, 1]), &p(&[-1, 1])))
        );
        assert!(eval_matrix(&p(&[4, -4, 1]), &j).is_zero());
    }
}
