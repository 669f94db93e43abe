use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasedAlgebra, CornerData, QuotientData, SparseVec};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::recollement::Recollement;

/// A based algebra as plain data. `products` lists the nonzero structure
/// constants `(i, j, k, c)`, meaning `b_i * b_j` has coefficient `c` at `b_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub name: String,
    pub vertices: Vec<String>,
    pub basis: Vec<String>,
    pub idempotents: Vec<usize>,
    pub products: Vec<(usize, usize, usize, Scalar)>,
}

impl AlgebraData {
    pub fn from_algebra(a: &BasedAlgebra) -> Self {
        let mut products = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (k, c) in a.product(i, j) {
                    products.push((i, j, *k, c.clone()));
                }
            }
        }
        AlgebraData {
            name: a.name().to_string(),
            vertices: a.vertices().to_vec(),
            basis: a.labels().to_vec(),
            idempotents: a.vertex_idempotents().to_vec(),
            products,
        }
    }

    /// Rebuilds the algebra; the usual validation applies.
    pub fn to_algebra(&self) -> Result<Arc<BasedAlgebra>> {
        let n = self.basis.len();
        let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); n]; n];
        for (i, j, k, c) in &self.products {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!("structure constant ({i}, {j}, {k}) out of range")));
            }
            let v = &mut mult[*i][*j];
            match v.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, x)) => *x += c,
                None => v.push((*k, c.clone())),
            }
        }
        for row in mult.iter_mut() {
            for v in row.iter_mut() {
                v.retain(|(_, x)| !x.is_zero());
                v.sort_by_key(|(k, _)| *k);
            }
        }
        BasedAlgebra::new(self.name.clone(), self.vertices.clone(), self.basis.clone(), mult, self.idempotents.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDump {
    pub algebra: AlgebraData,
    pub projection: Matrix,
    pub lift: Vec<usize>,
    pub vertices: Vec<usize>,
    pub ideal_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerDump {
    pub algebra: AlgebraData,
    pub embedding: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Every constant that defines a recollement, so that it can be inspected or
/// deliberately altered and loaded back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecollementDump {
    pub middle: AlgebraData,
    pub subset: Vec<usize>,
    pub quotient: QuotientDump,
    pub corner: CornerDump,
}

impl RecollementDump {
    pub fn from_recollement(rec: &Recollement) -> Self {
        let q = rec.quotient_data();
        let c = rec.corner_data();
        RecollementDump {
            middle: AlgebraData::from_algebra(rec.middle()),
            subset: rec.subset().to_vec(),
            quotient: QuotientDump {
                algebra: AlgebraData::from_algebra(&q.algebra),
                projection: q.projection.clone(),
                lift: q.lift.clone(),
                vertices: q.vertices.clone(),
                ideal_dim: q.ideal_dim,
            },
            corner: CornerDump {
                algebra: AlgebraData::from_algebra(&c.algebra),
                embedding: c.embedding.clone(),
                vertices: c.vertices.clone(),
            },
        }
    }

    /// Reassembles the recollement without recomputing the derived data.
    pub fn to_recollement(&self) -> Result<Recollement> {
        let middle = self.middle.to_algebra()?;
        let left = QuotientData {
            algebra: self.quotient.algebra.to_algebra()?,
            projection: self.quotient.projection.clone(),
            lift: self.quotient.lift.clone(),
            vertices: self.quotient.vertices.clone(),
            ideal_dim: self.quotient.ideal_dim,
        };
        let right = CornerData {
            algebra: self.corner.algebra.to_algebra()?,
            embedding: self.corner.embedding.clone(),
            vertices: self.corner.vertices.clone(),
        };
        let n = middle.dim();
        if left.lift.iter().chain(&right.embedding).any(|&b| b >= n)
            || left.vertices.iter().chain(&right.vertices).chain(&self.subset).any(|&v| v >= middle.vertex_count())
        {
            return Err(Error::InvalidAlgebra("recollement data refers to missing basis elements or vertices".into()));
        }
        Recollement::from_parts(middle, self.subset.clone(), left, right)
    }
}

pub fn recollement_to_json(rec: &Recollement) -> String {
    serde_json::to_string_pretty(&RecollementDump::from_recollement(rec)).expect("recollement data serializes")
}

pub fn recollement_from_json(text: &str) -> Result<Recollement> {
    let dump: RecollementDump =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid recollement JSON: {e}")))?;
    dump.to_recollement()
}
