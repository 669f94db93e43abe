//! Finite-dimensional based algebras: path algebras of bound quivers and the
//! corner and quotient algebras cut out by a vertex idempotent.

mod derived;
mod path;
pub mod radical;

use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};

pub use derived::{corner_algebra, quotient_algebra, CornerData, QuotientData};
pub use path::{build_path_algebra, Arrow, Path, Quiver, Relation, RelationSet, DEFAULT_LENGTH_CAP};

/// Sparse coefficient vector over an algebra basis, sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra presented by a labeled basis, structure
/// constants and a complete set of primitive orthogonal vertex idempotents.
///
/// Every basis element `b` is homogeneous: `e_s b e_t = b` for exactly one
/// pair of vertices `(s, t)`. The idempotents are themselves basis elements
/// and the remaining basis elements span the Jacobson radical.
pub struct BasedAlgebra {
    name: String,
    vertices: Vec<String>,
    labels: Vec<String>,
    mult: Vec<Vec<SparseVec>>,
    idems: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    generators: Vec<usize>,
    fingerprint: String,
    opposite: OnceLock<Arc<BasedAlgebra>>,
    origin: Option<Weak<BasedAlgebra>>,
}

impl BasedAlgebra {
    /// Validates and assembles an algebra. `mult[i][j]` is `b_i * b_j`.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        labels: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        idems: Vec<usize>,
    ) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(name.into(), vertices, labels, mult, idems, None)?))
    }

    fn build(
        name: String,
        vertices: Vec<String>,
        labels: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        idems: Vec<usize>,
        origin: Option<Weak<BasedAlgebra>>,
    ) -> Result<Self> {
        let dim = labels.len();
        let bad = |m: String| Error::InvalidAlgebra(m);
        if dim == 0 {
            return Err(bad("zero-dimensional algebra".into()));
        }
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(bad("structure-constant table has the wrong shape".into()));
        }
        if idems.len() != vertices.len() || idems.iter().any(|&i| i >= dim) {
            return Err(bad("one idempotent basis element per vertex is required".into()));
        }
        for (a, &ea) in idems.iter().enumerate() {
            for (b, &eb) in idems.iter().enumerate() {
                let p = &mult[ea][eb];
                let expect: SparseVec = if a == b { vec![(ea, Scalar::one())] } else { vec![] };
                if *p != expect {
                    return Err(bad(format!(
                        "vertex idempotents {} and {} are not orthogonal idempotents",
                        labels[ea], labels[eb]
                    )));
                }
            }
        }
        // Homogeneity and the unit sum_i e_i.
        let mut src = vec![usize::MAX; dim];
        let mut tgt = vec![usize::MAX; dim];
        for b in 0..dim {
            let unit_b = vec![(b, Scalar::one())];
            for (v, &e) in idems.iter().enumerate() {
                let l = &mult[e][b];
                if *l == unit_b {
                    if src[b] != usize::MAX {
                        return Err(bad(format!("{} has two source vertices", labels[b])));
                    }
                    src[b] = v;
                } else if !l.is_empty() {
                    return Err(bad(format!("{} is not vertex-homogeneous", labels[b])));
                }
                let r = &mult[b][e];
                if *r == unit_b {
                    if tgt[b] != usize::MAX {
                        return Err(bad(format!("{} has two target vertices", labels[b])));
                    }
                    tgt[b] = v;
                } else if !r.is_empty() {
                    return Err(bad(format!("{} is not vertex-homogeneous", labels[b])));
                }
            }
            if src[b] == usize::MAX || tgt[b] == usize::MAX {
                return Err(bad(format!("idempotents do not sum to the unit on {}", labels[b])));
            }
        }
        // Associativity on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                let ij = &mult[i][j];
                for k in 0..dim {
                    let mut left = vec![Scalar::zero(); dim];
                    for (m, c) in ij {
                        for (n, d) in &mult[*m][k] {
                            left[*n] += &(c * d);
                        }
                    }
                    let mut right = vec![Scalar::zero(); dim];
                    for (m, c) in &mult[j][k] {
                        for (n, d) in &mult[i][*m] {
                            right[*n] += &(c * d);
                        }
                    }
                    if left != right {
                        return Err(bad(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        let dense = |a: usize, b: usize| {
            let mut v = vec![Scalar::zero(); dim];
            for (k, c) in &mult[a][b] {
                v[*k] = c.clone();
            }
            v
        };
        // The radical must be exactly the span of the non-idempotent basis.
        let rad = radical::trace_form_radical(dim, dense)?;
        let non_idem: Vec<usize> = (0..dim).filter(|b| !idems.contains(b)).collect();
        let mut expected = Matrix::zeros(non_idem.len(), dim);
        for (r, &b) in non_idem.iter().enumerate() {
            expected[(r, b)] = Scalar::one();
        }
        if image_basis(&expected) != rad {
            return Err(bad("radical is not spanned by the non-idempotent basis elements".into()));
        }

        // Generators: non-idempotent basis elements spanning rad / rad^2.
        let mut rad_sq_rows = Vec::new();
        for &a in &non_idem {
            for &b in &non_idem {
                if !mult[a][b].is_empty() {
                    rad_sq_rows.push(dense(a, b));
                }
            }
        }
        let mut span = Matrix::from_rows(dim, rad_sq_rows);
        let mut rank = span.rank();
        let mut generators = Vec::new();
        for &b in &non_idem {
            let mut row = vec![Scalar::zero(); dim];
            row[b] = Scalar::one();
            let next = span.vstack(&Matrix::from_vec(1, dim, row));
            let r = next.rank();
            if r > rank {
                rank = r;
                span = next;
                generators.push(b);
            }
        }

        let mut hasher = Sha256::new();
        hasher.update(vertices.join("\u{1f}").as_bytes());
        hasher.update([0]);
        hasher.update(labels.join("\u{1f}").as_bytes());
        hasher.update([0]);
        for row in &mult {
            for entry in row {
                for (k, c) in entry {
                    hasher.update(format!("{k}:{c};").as_bytes());
                }
                hasher.update(b"|");
            }
        }
        let fingerprint = hex::encode(hasher.finalize());

        Ok(BasedAlgebra {
            name,
            vertices,
            labels,
            mult,
            idems,
            src,
            tgt,
            generators,
            fingerprint,
            opposite: OnceLock::new(),
            origin,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Basis index of the idempotent `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idems[v]
    }

    pub fn vertex_idempotents(&self) -> &[usize] {
        &self.idems
    }

    pub fn is_idempotent(&self, b: usize) -> bool {
        self.idems.contains(&b)
    }

    /// Vertex `s` with `e_s b = b`.
    pub fn source(&self, b: usize) -> usize {
        self.src[b]
    }

    /// Vertex `t` with `b e_t = b`.
    pub fn target(&self, b: usize) -> usize {
        self.tgt[b]
    }

    /// Non-idempotent basis elements whose classes span `rad / rad^2`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Basis indices of the radical (all non-idempotent basis elements).
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| !self.is_idempotent(b)).collect()
    }

    pub fn product(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a][b]
    }

    pub fn product_dense(&self, a: usize, b: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (k, c) in &self.mult[a][b] {
            v[*k] = c.clone();
        }
        v
    }

    /// Product of two dense elements.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in &self.mult[a][b] {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    /// Coefficient vector of `1 = sum_v e_v`.
    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![Scalar::zero(); self.dim()];
        for &e in &self.idems {
            u[e] = Scalar::one();
        }
        u
    }

    pub fn structure_constants(&self) -> &[Vec<SparseVec>] {
        &self.mult
    }

    /// Content hash of vertices, basis labels and structure constants.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn same_as(&self, other: &BasedAlgebra) -> bool {
        std::ptr::eq(self, other) || self.fingerprint == other.fingerprint
    }

    /// Basis indices of `e_s A e_t`.
    pub fn basis_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.src[b] == s && self.tgt[b] == t).collect()
    }

    /// Basis indices of `e_v A` (right projective at `v`), in basis order.
    pub fn basis_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.src[b] == v).collect()
    }

    /// Basis indices of `A e_v` (left projective at `v`), in basis order.
    pub fn basis_into(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.tgt[b] == v).collect()
    }

    /// Opposite algebra: same basis, products reversed. Taking the opposite
    /// twice returns the original allocation while it is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Self> {
        if let Some(orig) = self.origin.as_ref().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let dim = self.dim();
                let mult = (0..dim).map(|i| (0..dim).map(|j| self.mult[j][i].clone()).collect()).collect();
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                Arc::new(
                    Self::build(
                        name,
                        self.vertices.clone(),
                        self.labels.clone(),
                        mult,
                        self.idems.clone(),
                        Some(Arc::downgrade(self)),
                    )
                    .expect("opposite of a valid algebra is valid"),
                )
            })
            .clone()
    }

    /// Jacobson radical through the trace form, as rows over the basis.
    pub fn algebra_radical(&self) -> Result<Matrix> {
        radical::trace_form_radical(self.dim(), |a, b| self.product_dense(a, b))
    }

    /// Vertex indices named by `labels`.
    pub fn vertex_subset(&self, labels: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = labels.iter().map(|l| self.vertex_index(l.as_ref())).collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Debug for BasedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasedAlgebra")
            .field("name", &self.name)
            .field("vertices", &self.vertices)
            .field("basis", &self.labels)
            .finish()
    }
}

impl PartialEq for BasedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for BasedAlgebra {}

/// Radical of a based algebra, as rows over its basis.
pub fn algebra_radical(a: &BasedAlgebra) -> Result<Matrix> {
    a.algebra_radical()
}
