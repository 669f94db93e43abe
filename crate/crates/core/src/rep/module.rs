use std::fmt;
use std::sync::{Arc, OnceLock};

use super::hom::Presentation;
use super::map::ModuleMap;
use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};

/// A finite-dimensional right module.
///
/// Coordinates are graded by vertex: the basis of `M` is the concatenation of
/// bases of the vertex components `M_v = M e_v`. A basis element `b` of the
/// algebra with `e_s b e_t = b` acts as a `dims[s] x dims[t]` block, with
/// elements written as row vectors (`m . b = m * block(b)`).
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct Module(Arc<Inner>);

struct Inner {
    algebra: Arc<BasedAlgebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    blocks: Vec<Matrix>,
    presentation: OnceLock<Arc<Presentation>>,
}

/// A direct sum with its canonical inclusions and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// Rows of a subspace basis in reduced echelon form; returns the pivot column
/// of each row.
pub(crate) fn echelon_pivots(basis: &Matrix) -> Vec<usize> {
    (0..basis.rows())
        .map(|i| basis.row(i).iter().position(|x| !x.is_zero()).expect("echelon basis has no zero rows"))
        .collect()
}

impl Module {
    pub fn from_blocks(algebra: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: Vec<Matrix>) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                algebra.vertex_count()
            )));
        }
        if blocks.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action blocks for an algebra of dimension {}",
                blocks.len(),
                algebra.dim()
            )));
        }
        let m = Self::build(algebra, dims, blocks);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_blocks_unchecked(algebra: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: Vec<Matrix>) -> Self {
        let m = Self::build(algebra, dims, blocks);
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    fn build(algebra: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: Vec<Matrix>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        Module(Arc::new(Inner { algebra, dims, offsets, blocks, presentation: OnceLock::new() }))
    }

    /// Builds a module from full `dim x dim` action matrices, listed by basis
    /// index. Idempotent actions may be omitted; every other basis element
    /// must be present and respect the vertex grading given by `dims`.
    pub fn from_actions(algebra: Arc<BasedAlgebra>, dims: Vec<usize>, actions: &[(usize, Matrix)]) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule("dimension vector has the wrong length".into()));
        }
        let total: usize = dims.iter().sum();
        let mut offsets = Vec::new();
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        let mut blocks: Vec<Option<Matrix>> = vec![None; algebra.dim()];
        for (b, mat) in actions {
            let b = *b;
            if b >= algebra.dim() {
                return Err(Error::InvalidModule(format!("basis index {b} out of range")));
            }
            if mat.rows() != total || mat.cols() != total {
                return Err(Error::InvalidModule(format!(
                    "action of {} is {}x{}, expected {total}x{total}",
                    algebra.label(b),
                    mat.rows(),
                    mat.cols()
                )));
            }
            let (s, t) = (algebra.source(b), algebra.target(b));
            let block = mat.block(offsets[s], offsets[t], dims[s], dims[t]);
            let mut embedded = Matrix::zeros(total, total);
            embedded.set_block(offsets[s], offsets[t], &block);
            if embedded != *mat {
                return Err(Error::InvalidModule(format!(
                    "action of {} does not map vertex {} into vertex {}",
                    algebra.label(b),
                    algebra.vertices()[s],
                    algebra.vertices()[t]
                )));
            }
            blocks[b] = Some(block);
        }
        let mut out = Vec::with_capacity(algebra.dim());
        for (b, block) in blocks.into_iter().enumerate() {
            match block {
                Some(m) => out.push(m),
                None if algebra.is_idempotent(b) => out.push(Matrix::identity(dims[algebra.source(b)])),
                None => {
                    return Err(Error::InvalidModule(format!("missing action for {}", algebra.label(b))));
                }
            }
        }
        Self::from_blocks(algebra, dims, out)
    }

    pub fn zero(algebra: Arc<BasedAlgebra>) -> Self {
        let n = algebra.vertex_count();
        let blocks = (0..algebra.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        Self::from_blocks_unchecked(algebra, vec![0; n], blocks)
    }

    pub fn simple(algebra: &Arc<BasedAlgebra>, v: usize) -> Result<Self> {
        if v >= algebra.vertex_count() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let blocks = (0..algebra.dim())
            .map(|b| {
                let (s, t) = (algebra.source(b), algebra.target(b));
                if b == algebra.idempotent(v) {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[s], dims[t])
                }
            })
            .collect();
        Ok(Self::from_blocks_unchecked(algebra.clone(), dims, blocks))
    }

    /// `P_v = e_v A`.
    pub fn projective(algebra: &Arc<BasedAlgebra>, v: usize) -> Result<Self> {
        if v >= algebra.vertex_count() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(super::hom::ProjectiveSum::new(algebra, vec![v]).module)
    }

    /// `I_v = D(A e_v)`.
    pub fn injective(algebra: &Arc<BasedAlgebra>, v: usize) -> Result<Self> {
        let op = algebra.opposite();
        Ok(Self::projective(&op, v)?.dualize())
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.0.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.dims.len()
    }

    pub fn block(&self, b: usize) -> &Matrix {
        &self.0.blocks[b]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.0.blocks
    }

    pub fn same_module(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn presentation_cell(&self) -> &OnceLock<Arc<Presentation>> {
        &self.0.presentation
    }

    /// Full `dim x dim` matrix of the action of basis element `b`.
    pub fn action_matrix(&self, b: usize) -> Matrix {
        let n = self.dim();
        let a = self.algebra();
        let mut m = Matrix::zeros(n, n);
        m.set_block(self.offset(a.source(b)), self.offset(a.target(b)), self.block(b));
        m
    }

    /// Checks block shapes, identity idempotents and the structure constants.
    pub fn validate(&self) -> Result<()> {
        let a = self.algebra();
        let dims = self.dims();
        for b in 0..a.dim() {
            let (s, t) = (a.source(b), a.target(b));
            let m = self.block(b);
            if m.rows() != dims[s] || m.cols() != dims[t] {
                return Err(Error::InvalidModule(format!(
                    "block of {} is {}x{}, expected {}x{}",
                    a.label(b),
                    m.rows(),
                    m.cols(),
                    dims[s],
                    dims[t]
                )));
            }
            if a.is_idempotent(b) && *m != Matrix::identity(dims[s]) {
                return Err(Error::InvalidModule(format!("{} does not act as the identity", a.label(b))));
            }
        }
        for i in 0..a.dim() {
            if a.is_idempotent(i) {
                continue;
            }
            for j in 0..a.dim() {
                if a.is_idempotent(j) || a.target(i) != a.source(j) {
                    continue;
                }
                let lhs = self.block(i).mul(self.block(j));
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (k, c) in a.product(i, j) {
                    rhs.add_scaled(c, self.block(*k));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "actions of {} and {} violate the multiplication table",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `m . b` for `m` in the vertex component at the source of `b`.
    pub fn act(&self, m: &[Scalar], b: usize) -> Vec<Scalar> {
        self.block(b).vec_mul(m)
    }

    /// Vector-space dual as a module over the opposite algebra.
    pub fn dualize(&self) -> Module {
        let op = self.algebra().opposite();
        let blocks = self.0.blocks.iter().map(Matrix::transpose).collect();
        Module::from_blocks_unchecked(op, self.dims().to_vec(), blocks)
    }

    pub fn direct_sum(mods: &[Module], algebra: &Arc<BasedAlgebra>) -> Result<DirectSum> {
        if mods.iter().any(|m| !m.algebra().same_as(algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let n = algebra.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| mods.iter().map(|m| m.dim_at(v)).sum()).collect();
        let blocks = (0..algebra.dim())
            .map(|b| {
                let parts: Vec<&Matrix> = mods.iter().map(|m| m.block(b)).collect();
                Matrix::block_diag(&parts)
            })
            .collect();
        let module = Module::from_blocks_unchecked(algebra.clone(), dims.clone(), blocks);
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut start = vec![0; n];
        for m in mods {
            let mut inc = Vec::with_capacity(n);
            let mut proj = Vec::with_capacity(n);
            for v in 0..n {
                let mut i = Matrix::zeros(m.dim_at(v), dims[v]);
                i.set_block(0, start[v], &Matrix::identity(m.dim_at(v)));
                proj.push(i.transpose());
                inc.push(i);
                start[v] += m.dim_at(v);
            }
            inclusions.push(ModuleMap::from_blocks_unchecked(m.clone(), module.clone(), inc));
            projections.push(ModuleMap::from_blocks_unchecked(module.clone(), m.clone(), proj));
        }
        Ok(DirectSum { module, inclusions, projections })
    }

    /// Direct sum without the structural maps.
    pub fn sum_of(mods: &[Module], algebra: &Arc<BasedAlgebra>) -> Result<Module> {
        Ok(Self::direct_sum(mods, algebra)?.module)
    }

    fn check_subspaces(&self, subspaces: &[Matrix]) -> Result<Vec<Matrix>> {
        if subspaces.len() != self.vertex_count() {
            return Err(Error::InvalidModule("one subspace per vertex is required".into()));
        }
        subspaces
            .iter()
            .enumerate()
            .map(|(v, u)| {
                if u.cols() != self.dim_at(v) {
                    return Err(Error::DimensionMismatch(format!(
                        "subspace at vertex {v} lives in dimension {}, expected {}",
                        u.cols(),
                        self.dim_at(v)
                    )));
                }
                Ok(image_basis(u))
            })
            .collect()
    }

    /// Submodule with per-vertex subspaces spanned by the rows of
    /// `subspaces`. Its basis is the canonical echelon basis.
    pub fn submodule(&self, subspaces: &[Matrix]) -> Result<(Module, ModuleMap)> {
        let us = self.check_subspaces(subspaces)?;
        let pivots: Vec<Vec<usize>> = us.iter().map(echelon_pivots).collect();
        let a = self.algebra();
        let mut blocks = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let (s, t) = (a.source(b), a.target(b));
            let image = us[s].mul(self.block(b));
            let coords = image.select_cols(&pivots[t]);
            if coords.mul(&us[t]) != image {
                return Err(Error::InvalidModule(format!("subspace is not closed under {}", a.label(b))));
            }
            blocks.push(coords);
        }
        let dims = us.iter().map(Matrix::rows).collect();
        let sub = Module::from_blocks_unchecked(a.clone(), dims, blocks);
        let inc = ModuleMap::from_blocks_unchecked(sub.clone(), self.clone(), us);
        Ok((sub, inc))
    }

    /// Quotient by the submodule with the given per-vertex subspaces. The
    /// quotient basis is given by the standard basis vectors at the non-pivot
    /// columns of each subspace.
    pub fn quotient(&self, subspaces: &[Matrix]) -> Result<(Module, ModuleMap)> {
        let us = self.check_subspaces(subspaces)?;
        let a = self.algebra();
        let mut free = Vec::with_capacity(us.len());
        let mut proj = Vec::with_capacity(us.len());
        for (v, u) in us.iter().enumerate() {
            let n = self.dim_at(v);
            let piv = echelon_pivots(u);
            let f = crate::exactla::free_columns(n, &piv);
            // x -> (x - x[piv] U)[free]
            let mut p = Matrix::identity(n).select_cols(&f);
            let uf = u.select_cols(&f);
            for (i, &pc) in piv.iter().enumerate() {
                for (j, x) in uf.row(i).iter().enumerate() {
                    if !x.is_zero() {
                        p[(pc, j)] = -x.clone();
                    }
                }
            }
            free.push(f);
            proj.push(p);
        }
        let mut blocks = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let (s, t) = (a.source(b), a.target(b));
            let image = us[s].mul(self.block(b));
            if !image.mul(&proj[t]).is_zero() {
                return Err(Error::InvalidModule(format!("subspace is not closed under {}", a.label(b))));
            }
            blocks.push(self.block(b).select_rows(&free[s]).mul(&proj[t]));
        }
        let dims = free.iter().map(Vec::len).collect();
        let q = Module::from_blocks_unchecked(a.clone(), dims, blocks);
        let p = ModuleMap::from_blocks_unchecked(self.clone(), q.clone(), proj);
        Ok((q, p))
    }

    /// Per-vertex subspaces of the submodule generated by the given elements
    /// (rows of `gens[v]` lie in `M_v`).
    pub fn generated(&self, gens: &[Matrix]) -> Vec<Matrix> {
        let a = self.algebra();
        (0..self.vertex_count())
            .map(|t| {
                let mut rows = Matrix::zeros(0, self.dim_at(t));
                for b in (0..a.dim()).filter(|&b| a.target(b) == t) {
                    let g = &gens[a.source(b)];
                    if g.rows() > 0 {
                        rows = rows.vstack(&g.mul(self.block(b)));
                    }
                }
                image_basis(&rows)
            })
            .collect()
    }

    /// Per-vertex subspaces of `M rad A`.
    pub fn radical_subspaces(&self) -> Vec<Matrix> {
        let a = self.algebra();
        (0..self.vertex_count())
            .map(|t| {
                let mut rows = Matrix::zeros(0, self.dim_at(t));
                for b in a.radical_basis() {
                    if a.target(b) == t && self.dim_at(a.source(b)) > 0 {
                        rows = rows.vstack(self.block(b));
                    }
                }
                image_basis(&rows)
            })
            .collect()
    }

    /// `rad M = M rad A` with its inclusion.
    pub fn radical(&self) -> (Module, ModuleMap) {
        self.submodule(&self.radical_subspaces()).expect("radical is a submodule")
    }

    /// `top M = M / rad M` with the projection.
    pub fn top(&self) -> (Module, ModuleMap) {
        self.quotient(&self.radical_subspaces()).expect("radical is a submodule")
    }

    /// Largest semisimple submodule: elements killed by `rad A`.
    pub fn socle(&self) -> (Module, ModuleMap) {
        let a = self.algebra();
        let subs: Vec<Matrix> = (0..self.vertex_count())
            .map(|s| {
                let mut acc = Matrix::zeros(self.dim_at(s), 0);
                for b in a.radical_basis() {
                    if a.source(b) == s {
                        acc = acc.hstack(self.block(b));
                    }
                }
                image_basis(&acc.left_kernel_basis())
            })
            .collect();
        self.submodule(&subs).expect("socle is a submodule")
    }

    /// Dimension vectors of the radical layers `rad^k M / rad^{k+1} M`.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut m = self.clone();
        while !m.is_zero() {
            let (r, _) = m.radical();
            out.push(m.dims().iter().zip(r.dims()).map(|(a, b)| a - b).collect());
            m = r;
        }
        out
    }

    /// Composition-series style label built from the radical layers, top
    /// first: `2/13/2` has top `S2`, middle layer `S1 + S3` and socle `S2`.
    /// The zero module is `0`.
    pub fn stacked_label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = self.algebra().vertices();
        self.radical_layers()
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .enumerate()
                    .flat_map(|(v, &d)| std::iter::repeat_n(names[v].as_str(), d))
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Module over `algebra` with identical data; the algebras must have the
    /// same structure.
    pub fn rebase(&self, algebra: &Arc<BasedAlgebra>) -> Result<Module> {
        if !self.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module::from_blocks_unchecked(algebra.clone(), self.dims().to_vec(), self.0.blocks.clone()))
    }
}

impl PartialEq for Module {
    /// Equality of the literal data, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.algebra().same_as(other.algebra())
                && self.dims() == other.dims()
                && self.0.blocks == other.0.blocks)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("algebra", &self.algebra().name()).field("dims", &self.dims()).finish()
    }
}
