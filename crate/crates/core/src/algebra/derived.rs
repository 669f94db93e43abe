use std::sync::Arc;

use super::{BasedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

/// `eAe` for `e` the sum of the vertex idempotents in a subset.
#[derive(Debug, Clone)]
pub struct CornerData {
    pub algebra: Arc<BasedAlgebra>,
    /// A-basis index of each basis element of `eAe`.
    pub embedding: Vec<usize>,
    /// A-vertex index of each vertex of `eAe`.
    pub vertices: Vec<usize>,
}

/// `A/AeA` for `e` the sum of the vertex idempotents in a subset.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub algebra: Arc<BasedAlgebra>,
    /// `dim A x dim(A/AeA)`; row `b` holds the coordinates of the class of `b`.
    pub projection: Matrix,
    /// A-basis index of each quotient basis element.
    pub lift: Vec<usize>,
    /// A-vertex index of each quotient vertex.
    pub vertices: Vec<usize>,
    pub ideal_dim: usize,
}

fn check_subset(a: &BasedAlgebra, subset: &[usize]) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.iter().find(|&&v| v >= a.vertex_count()) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(s)
}

pub fn corner_algebra(a: &Arc<BasedAlgebra>, subset: &[usize]) -> Result<CornerData> {
    let s = check_subset(a, subset)?;
    if s.len() == a.vertex_count() {
        return Ok(CornerData { algebra: a.clone(), embedding: (0..a.dim()).collect(), vertices: s });
    }
    let embedding: Vec<usize> =
        (0..a.dim()).filter(|&b| s.contains(&a.source(b)) && s.contains(&a.target(b))).collect();
    let mut back = vec![usize::MAX; a.dim()];
    for (k, &b) in embedding.iter().enumerate() {
        back[b] = k;
    }
    let mult: Vec<Vec<SparseVec>> = embedding
        .iter()
        .map(|&x| {
            embedding.iter().map(|&y| a.product(x, y).iter().map(|(k, c)| (back[*k], c.clone())).collect()).collect()
        })
        .collect();
    let labels = embedding.iter().map(|&b| a.label(b).to_string()).collect();
    let vertices: Vec<String> = s.iter().map(|&v| a.vertices()[v].clone()).collect();
    let idems = s.iter().map(|&v| back[a.idempotent(v)]).collect();
    let algebra = BasedAlgebra::new(format!("e{}e", a.name()), vertices, labels, mult, idems)?;
    Ok(CornerData { algebra, embedding, vertices: s })
}

pub fn quotient_algebra(a: &Arc<BasedAlgebra>, subset: &[usize]) -> Result<QuotientData> {
    let s = check_subset(a, subset)?;
    if s.len() == a.vertex_count() {
        return Err(Error::FullSubset);
    }
    let n = a.dim();
    // AeA is spanned by the products x*y with x ending and y starting in S.
    // Columns are taken in reverse basis order so later basis elements are
    // the ones eliminated.
    let mut rows = Vec::new();
    for x in 0..n {
        if !s.contains(&a.target(x)) {
            continue;
        }
        for y in 0..n {
            let p = a.product(x, y);
            if p.is_empty() {
                continue;
            }
            let mut row = vec![Scalar::zero(); n];
            for (k, c) in p {
                row[n - 1 - k] = c.clone();
            }
            rows.push(row);
        }
    }
    let (r, pivots) = Matrix::from_rows(n, rows).rref();
    let in_ideal = |b: usize| pivots.contains(&(n - 1 - b));
    let lift: Vec<usize> = (0..n).filter(|&b| !in_ideal(b)).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &b) in lift.iter().enumerate() {
        pos[b] = k;
    }
    let q = lift.len();
    let mut projection = Matrix::zeros(n, q);
    for &b in &lift {
        projection[(b, pos[b])] = Scalar::one();
    }
    for (ri, &c) in pivots.iter().enumerate() {
        let b = n - 1 - c;
        for (cc, x) in r.row(ri).iter().enumerate() {
            if cc != c && !x.is_zero() {
                projection[(b, pos[n - 1 - cc])] = -x.clone();
            }
        }
    }
    let mult: Vec<Vec<SparseVec>> = lift
        .iter()
        .map(|&x| {
            lift.iter()
                .map(|&y| {
                    let dense = projection.vec_mul(&a.product_dense(x, y));
                    dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect()
        })
        .collect();
    let keep: Vec<usize> = (0..a.vertex_count()).filter(|v| !s.contains(v)).collect();
    let labels = lift.iter().map(|&b| a.label(b).to_string()).collect();
    let vertices = keep.iter().map(|&v| a.vertices()[v].clone()).collect();
    let idems = keep
        .iter()
        .map(|&v| {
            let e = a.idempotent(v);
            if pos[e] == usize::MAX {
                Err(Error::InvalidAlgebra(format!("idempotent {} lies in the ideal generated by e", a.label(e))))
            } else {
                Ok(pos[e])
            }
        })
        .collect::<Result<_>>()?;
    let algebra = BasedAlgebra::new(format!("{}/<e>", a.name()), vertices, labels, mult, idems)?;
    Ok(QuotientData { algebra, projection, lift, vertices: keep, ideal_dim: pivots.len() })
}
