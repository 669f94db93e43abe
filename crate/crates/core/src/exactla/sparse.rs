//! Row-sparse matrices for large, thin linear systems.

use std::collections::BTreeMap;

use super::{free_columns, Matrix, Scalar};

/// Nonzero entries of a row, sorted by column.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

/// `a - c * b`.
fn sub_scaled(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - &(c * &b[j].1);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    /// Appends a row given as unsorted entries; repeated columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *acc.entry(c).or_default() += &x;
        }
        self.rows.push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let mut out = SparseMatrix::new(m.cols());
        for i in 0..m.rows() {
            out.rows
                .push(m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect());
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                m[(i, *c)] = x.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                rows[*c].push((i, x.clone()));
            }
        }
        SparseMatrix { cols: self.rows.len(), rows }
    }

    /// Echelon rows keyed by pivot column; each row starts with a one at its
    /// pivot and has no entries before it.
    fn echelon(&self) -> BTreeMap<usize, SparseRow> {
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for row in &self.rows {
            let mut r = row.clone();
            let mut i = 0;
            while i < r.len() {
                // Subtracting a pivot row only adds columns beyond its pivot.
                match pivots.get(&r[i].0) {
                    Some(p) => {
                        let x = r[i].1.clone();
                        r = sub_scaled(&r, &x, p);
                    }
                    None => i += 1,
                }
            }
            let Some((q, lead)) = r.first().cloned() else { continue };
            let inv = lead.recip();
            for (_, x) in r.iter_mut() {
                *x = &*x * &inv;
            }
            pivots.insert(q, r);
        }
        pivots
    }

    /// Nonzero rows of the reduced row echelon form, with their pivot columns.
    /// Agrees with the dense `Matrix::rref`.
    pub fn rref(&self) -> (Vec<SparseRow>, Vec<usize>) {
        let mut pivots = self.echelon();
        let cols: Vec<usize> = pivots.keys().copied().collect();
        // Back substitution from the last pivot up; reduced rows carry no
        // other pivot column, so one pass per row suffices.
        for &p in cols.iter().rev() {
            let mut r = pivots.remove(&p).expect("pivot row");
            let hits: Vec<(usize, Scalar)> = r[1..].iter().filter(|(c, _)| pivots.contains_key(c)).cloned().collect();
            for (q, x) in hits {
                r = sub_scaled(&r, &x, &pivots[&q]);
            }
            pivots.insert(p, r);
        }
        (pivots.into_values().collect(), cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Kernel basis `{x : self * x = 0}` as dense rows, together with the free
    /// columns; row `k` has a one at `free[k]` and zeros at the other free
    /// columns. Agrees with `Matrix::kernel_with_free`.
    pub fn kernel_with_free(&self) -> (Matrix, Vec<usize>) {
        let (r, pivots) = self.rref();
        let free = free_columns(self.cols, &pivots);
        let mut slot = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out[(k, f)] = Scalar::one();
        }
        for (row, &p) in r.iter().zip(&pivots) {
            for (c, x) in row {
                if *c != p {
                    out[(slot[*c], p)] = -x;
                }
            }
        }
        (out, free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn duplicate_entries_are_summed() {
        let mut m = SparseMatrix::new(3);
        m.push_row([(2, Scalar::from_int(1)), (0, Scalar::from_int(2)), (2, Scalar::from_int(-1))]);
        assert_eq!(m.row(0), &vec![(0, Scalar::from_int(2))]);
        assert_eq!(m.to_dense(), Matrix::from_ints(&[&[2, 0, 0]]));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..4], r * c)
                .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Scalar::from_int).collect()))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_dense(m in small_matrix()) {
            let s = SparseMatrix::from_dense(&m);
            let (dr, dp) = m.rref();
            let (sr, sp) = s.rref();
            prop_assert_eq!(&dp, &sp);
            for (i, row) in sr.iter().enumerate() {
                let mut dense = SparseMatrix::new(m.cols());
                dense.push_row(row.iter().cloned());
                let d = dense.to_dense();
                prop_assert_eq!(d.row(0), dr.row(i));
            }
            prop_assert_eq!(s.kernel_with_free(), m.kernel_with_free());
            prop_assert_eq!(s.transpose().to_dense(), m.transpose());
        }
    }
}
