use std::fmt;

use super::module::Module;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};

/// A module homomorphism `f: M -> N`, stored as one `dim M_v x dim N_v` block
/// per vertex acting on row vectors. `f` commutes with the action:
/// `block_M(b) * F_t = F_s * block_N(b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn from_blocks(source: Module, target: Module, blocks: Vec<Matrix>) -> Result<Self> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != source.vertex_count() {
            return Err(Error::InvalidMap("one block per vertex is required".into()));
        }
        for (v, f) in blocks.iter().enumerate() {
            if f.rows() != source.dim_at(v) || f.cols() != target.dim_at(v) {
                return Err(Error::InvalidMap(format!(
                    "block at vertex {v} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    source.dim_at(v),
                    target.dim_at(v)
                )));
            }
        }
        let map = ModuleMap { source, target, blocks };
        map.check_intertwines()?;
        Ok(map)
    }

    pub(crate) fn from_blocks_unchecked(source: Module, target: Module, blocks: Vec<Matrix>) -> Self {
        let map = ModuleMap { source, target, blocks };
        debug_assert!(map.check_intertwines().is_ok(), "{:?}", map.check_intertwines());
        map
    }

    /// Builds a map from a full `dim M x dim N` matrix.
    pub fn from_matrix(source: Module, target: Module, m: &Matrix) -> Result<Self> {
        if m.rows() != source.dim() || m.cols() != target.dim() {
            return Err(Error::InvalidMap("matrix shape does not match the modules".into()));
        }
        let n = source.vertex_count();
        let blocks: Vec<Matrix> =
            (0..n).map(|v| m.block(source.offset(v), target.offset(v), source.dim_at(v), target.dim_at(v))).collect();
        let mut rebuilt = Matrix::zeros(m.rows(), m.cols());
        for (v, b) in blocks.iter().enumerate() {
            rebuilt.set_block(source.offset(v), target.offset(v), b);
        }
        if rebuilt != *m {
            return Err(Error::InvalidMap("matrix mixes vertex components".into()));
        }
        Self::from_blocks(source, target, blocks)
    }

    fn check_intertwines(&self) -> Result<()> {
        let a = self.source.algebra();
        for b in a.radical_basis() {
            let (s, t) = (a.source(b), a.target(b));
            let lhs = self.source.block(b).mul(&self.blocks[t]);
            let rhs = self.blocks[s].mul(self.target.block(b));
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("does not commute with {}", a.label(b))));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> Self {
        let blocks = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let blocks = source.dims().iter().zip(target.dims()).map(|(&r, &c)| Matrix::zeros(r, c)).collect();
        ModuleMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// Full `dim M x dim N` matrix.
    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.source.dim(), self.target.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            m.set_block(self.source.offset(v), self.target.offset(v), b);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    /// `g . self`: first `self`, then `g`.
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap> {
        if self.target.dims() != g.source.dims() || !self.target.algebra().same_as(g.source.algebra()) {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(f, g)| f.mul(g)).collect();
        Ok(ModuleMap { source: self.source.clone(), target: g.target.clone(), blocks })
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let blocks = self.blocks.iter().map(|a| a.scale(s)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    /// Linear combination `sum_k c_k f_k` of maps with common source and target.
    pub fn combination(maps: &[ModuleMap], coeffs: &[Scalar], source: &Module, target: &Module) -> ModuleMap {
        let mut out = ModuleMap::zero(source, target);
        for (f, c) in maps.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.blocks.iter_mut().zip(&f.blocks) {
                o.add_scaled(c, b);
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if self.source.dims() != self.target.dims() {
            return None;
        }
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    /// Same blocks reinterpreted between modules with identical data.
    pub fn retarget(&self, source: &Module, target: &Module) -> Result<ModuleMap> {
        if source != &self.source || target != &self.target {
            return Err(Error::InvalidMap("modules differ from the map's endpoints".into()));
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), blocks: self.blocks.clone() })
    }

    /// `ker f` with its inclusion into the source.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let subs: Vec<Matrix> = self.blocks.iter().map(|f| image_basis(&f.left_kernel_basis())).collect();
        self.source.submodule(&subs).expect("kernel is a submodule")
    }

    pub fn image_subspaces(&self) -> Vec<Matrix> {
        self.blocks.iter().map(image_basis).collect()
    }

    /// `im f` with its inclusion into the target.
    pub fn image(&self) -> (Module, ModuleMap) {
        self.target.submodule(&self.image_subspaces()).expect("image is a submodule")
    }

    /// `coker f` with the projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        self.target.quotient(&self.image_subspaces()).expect("image is a submodule")
    }

    /// Transposed map `D N -> D M` over the opposite algebra.
    pub fn dualize(&self) -> ModuleMap {
        let blocks = self.blocks.iter().map(Matrix::transpose).collect();
        ModuleMap { source: self.target.dualize(), target: self.source.dualize(), blocks }
    }

    /// Dualizes against the given duals of the endpoints, which must carry
    /// the data `dualize` would produce.
    pub fn dualize_between(&self, dual_target: &Module, dual_source: &Module) -> ModuleMap {
        let blocks = self.blocks.iter().map(Matrix::transpose).collect();
        ModuleMap::from_blocks_unchecked(dual_target.clone(), dual_source.clone(), blocks)
    }

    /// Element `m` of `M_v` mapped to `N_v`.
    pub fn apply(&self, v: usize, m: &[Scalar]) -> Vec<Scalar> {
        self.blocks[v].vec_mul(m)
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMap")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}
