//! The recollement `R(B/<e>, B, eBe)` attached to an idempotent `e`: its six
//! functors, the intermediate extension and the two gluing constructions.

mod glue;
mod verify;

pub use glue::{glue_semibricks, glue_stt, glue_table, glue_variant, GlueMode, GlueRow, GlueTable, VariantOutcome};
pub use verify::{
    check_simples, default_samples, transfer_check, verify_recollement, Check, Sample, Samples, SimplesReport,
    TransferReport, VerificationReport,
};

use std::sync::Arc;

use crate::algebra::{corner_algebra, quotient_algebra, BasedAlgebra, CornerData, QuotientData};
use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};
use crate::rep::{Module, ModuleMap};

#[derive(Debug, Clone)]
pub struct Recollement {
    middle: Arc<BasedAlgebra>,
    subset: Vec<usize>,
    left: QuotientData,
    right: CornerData,
}

/// `N (x)_K eB` before dividing out the balancing relations.
struct Tensor {
    module: Module,
    relations: Vec<Matrix>,
    /// Per middle vertex `v`: `(right vertex, index in N, basis element of e_s B e_v)`.
    index: Vec<Vec<(usize, usize, usize)>>,
}

/// `Hom_{eBe}(Be, N)` with its per-vertex solution spaces.
struct Coinduced {
    module: Module,
    /// Per middle vertex `u`: the basis elements of `e_u B e`, with the offset
    /// of their value in the unknown vector.
    domain: Vec<Vec<(usize, usize)>>,
    unknowns: Vec<usize>,
    kernels: Vec<Matrix>,
    free: Vec<Vec<usize>>,
}

impl Recollement {
    pub fn new(middle: &Arc<BasedAlgebra>, subset: &[usize]) -> Result<Self> {
        let right = corner_algebra(middle, subset)?;
        let left = quotient_algebra(middle, subset)?;
        Self::from_parts(middle.clone(), subset.to_vec(), left, right)
    }

    /// Assembles a recollement from precomputed parts. Only the shapes are
    /// checked; `verify_recollement` is the test of the content.
    pub fn from_parts(
        middle: Arc<BasedAlgebra>,
        subset: Vec<usize>,
        left: QuotientData,
        right: CornerData,
    ) -> Result<Self> {
        let mut subset = subset;
        subset.sort_unstable();
        subset.dedup();
        if right.vertices != subset {
            return Err(Error::InvalidAlgebra("corner vertices differ from the idempotent".into()));
        }
        if left.vertices.iter().any(|v| subset.contains(v))
            || left.vertices.len() + subset.len() != middle.vertex_count()
        {
            return Err(Error::InvalidAlgebra("quotient vertices do not complement the idempotent".into()));
        }
        if right.embedding.len() != right.algebra.dim()
            || left.lift.len() != left.algebra.dim()
            || left.projection.rows() != middle.dim()
            || left.projection.cols() != left.algebra.dim()
        {
            return Err(Error::InvalidAlgebra("recollement data has inconsistent sizes".into()));
        }
        Ok(Recollement { middle, subset, left, right })
    }

    pub fn middle(&self) -> &Arc<BasedAlgebra> {
        &self.middle
    }

    pub fn left(&self) -> &Arc<BasedAlgebra> {
        &self.left.algebra
    }

    pub fn right(&self) -> &Arc<BasedAlgebra> {
        &self.right.algebra
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn quotient_data(&self) -> &QuotientData {
        &self.left
    }

    pub fn corner_data(&self) -> &CornerData {
        &self.right
    }

    fn expect(&self, m: &Module, a: &Arc<BasedAlgebra>) -> Result<()> {
        if m.algebra().same_as(a) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Middle vertex to left vertex.
    fn left_vertex(&self, v: usize) -> Option<usize> {
        self.left.vertices.iter().position(|&w| w == v)
    }

    /// Middle vertex to right vertex.
    fn right_vertex(&self, v: usize) -> Option<usize> {
        self.right.vertices.iter().position(|&w| w == v)
    }

    /// Right basis index of a middle basis element of `eBe`.
    fn right_basis(&self, b: usize) -> usize {
        self.right.embedding.iter().position(|&x| x == b).expect("basis element lies in eBe")
    }

    /// Inflation along `B -> B/<e>`.
    pub fn i_star(&self, m: &Module) -> Result<Module> {
        self.expect(m, self.left())?;
        let b = &self.middle;
        let dims: Vec<usize> = (0..b.vertex_count()).map(|v| self.left_vertex(v).map_or(0, |q| m.dim_at(q))).collect();
        let q = self.left();
        let blocks = (0..b.dim())
            .map(|x| {
                let (s, t) = (b.source(x), b.target(x));
                let mut block = Matrix::zeros(dims[s], dims[t]);
                if let (Some(qs), Some(qt)) = (self.left_vertex(s), self.left_vertex(t)) {
                    for c in 0..q.dim() {
                        let coeff = &self.left.projection[(x, c)];
                        if !coeff.is_zero() && q.source(c) == qs && q.target(c) == qt {
                            block.add_scaled(coeff, m.block(c));
                        }
                    }
                }
                block
            })
            .collect();
        Module::from_blocks(b.clone(), dims, blocks)
    }

    pub fn i_star_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        let (s, t) = (self.i_star(f.source())?, self.i_star(f.target())?);
        let blocks = (0..self.middle.vertex_count())
            .map(|v| match self.left_vertex(v) {
                Some(q) => f.block(q).clone(),
                None => Matrix::zeros(0, 0),
            })
            .collect();
        ModuleMap::from_blocks(s, t, blocks)
    }

    /// A middle module vanishing on `e`, read as a left module.
    fn restrict_left(&self, m: &Module) -> Result<Module> {
        let q = self.left();
        let dims = self.left.vertices.iter().map(|&v| m.dim_at(v)).collect();
        let blocks = self.left.lift.iter().map(|&x| m.block(x).clone()).collect();
        Module::from_blocks(q.clone(), dims, blocks)
    }

    /// `M / MeB`.
    pub fn i_upper_star(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.middle)?;
        let gens: Vec<Matrix> =
            (0..m.vertex_count())
                .map(|v| {
                    if self.subset.contains(&v) {
                        Matrix::identity(m.dim_at(v))
                    } else {
                        Matrix::zeros(0, m.dim_at(v))
                    }
                })
                .collect();
        let (q, _) = m.quotient(&m.generated(&gens))?;
        self.restrict_left(&q)
    }

    /// Largest submodule killed by `e`.
    pub fn i_shriek(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.middle)?;
        let a = &self.middle;
        let mut subs: Vec<Matrix> =
            (0..m.vertex_count())
                .map(|v| {
                    if self.subset.contains(&v) {
                        Matrix::zeros(0, m.dim_at(v))
                    } else {
                        Matrix::identity(m.dim_at(v))
                    }
                })
                .collect();
        loop {
            // m lies in N_t iff m * W_t = 0.
            let tests: Vec<Matrix> = subs.iter().map(|u| u.kernel_basis().transpose()).collect();
            let mut changed = false;
            let mut next = Vec::with_capacity(subs.len());
            for (v, u) in subs.iter().enumerate() {
                let mut cond = Matrix::zeros(u.rows(), 0);
                for x in a.basis_from(v) {
                    let t = a.target(x);
                    if tests[t].cols() > 0 {
                        cond = cond.hstack(&u.mul(m.block(x)).mul(&tests[t]));
                    }
                }
                let keep = image_basis(&cond.left_kernel_basis().mul(u));
                changed |= keep.rows() != u.rows();
                next.push(keep);
            }
            subs = next;
            if !changed {
                break;
            }
        }
        let (n, _) = m.submodule(&subs)?;
        self.restrict_left(&n)
    }

    /// `Me` as an `eBe`-module.
    pub fn j_upper_star(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.middle)?;
        let dims = self.right.vertices.iter().map(|&v| m.dim_at(v)).collect();
        let blocks = self.right.embedding.iter().map(|&x| m.block(x).clone()).collect();
        Module::from_blocks(self.right().clone(), dims, blocks)
    }

    pub fn j_upper_star_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        let (s, t) = (self.j_upper_star(f.source())?, self.j_upper_star(f.target())?);
        let blocks = self.right.vertices.iter().map(|&v| f.block(v).clone()).collect();
        ModuleMap::from_blocks(s, t, blocks)
    }

    fn tensor(&self, n: &Module) -> Result<Tensor> {
        self.expect(n, self.right())?;
        let b = &self.middle;
        let c = self.right();
        let nv = b.vertex_count();
        let index: Vec<Vec<(usize, usize, usize)>> = (0..nv)
            .map(|v| {
                let mut out = Vec::new();
                for (cs, &s) in self.right.vertices.iter().enumerate() {
                    for i in 0..n.dim_at(cs) {
                        for y in b.basis_between(s, v) {
                            out.push((cs, i, y));
                        }
                    }
                }
                out
            })
            .collect();
        let pos = |v: usize, key: (usize, usize, usize)| index[v].iter().position(|&k| k == key).expect("tensor index");
        let dims: Vec<usize> = index.iter().map(Vec::len).collect();
        let blocks: Vec<Matrix> = (0..b.dim())
            .map(|x| {
                let (u, w) = (b.source(x), b.target(x));
                let mut block = Matrix::zeros(dims[u], dims[w]);
                for (r, &(cs, i, y)) in index[u].iter().enumerate() {
                    for (z, coeff) in b.product(y, x) {
                        block[(r, pos(w, (cs, i, *z)))] += coeff;
                    }
                }
                block
            })
            .collect();
        let module = Module::from_blocks(b.clone(), dims.clone(), blocks)?;
        // n.x (x) y - n (x) xy
        let mut relations: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
        for xc in 0..c.dim() {
            let (cs, ct) = (c.source(xc), c.target(xc));
            let x = self.right.embedding[xc];
            let t = self.right.vertices[ct];
            for i in 0..n.dim_at(cs) {
                for v in 0..nv {
                    for y in b.basis_between(t, v) {
                        let mut row = vec![Scalar::zero(); dims[v]];
                        for (j, coeff) in n.block(xc).row(i).iter().enumerate() {
                            if !coeff.is_zero() {
                                row[pos(v, (ct, j, y))] += coeff;
                            }
                        }
                        for (z, coeff) in b.product(x, y) {
                            row[pos(v, (cs, i, *z))] -= coeff;
                        }
                        relations[v].push(row);
                    }
                }
            }
        }
        let relations =
            relations.into_iter().zip(&dims).map(|(rows, &d)| image_basis(&Matrix::from_rows(d, rows))).collect();
        Ok(Tensor { module, relations, index })
    }

    /// `N (x)_{eBe} eB`.
    pub fn j_shriek(&self, n: &Module) -> Result<Module> {
        let t = self.tensor(n)?;
        Ok(t.module.quotient(&t.relations)?.0)
    }

    fn coinduced(&self, n: &Module) -> Result<Coinduced> {
        self.expect(n, self.right())?;
        let b = &self.middle;
        let c = self.right();
        let nv = b.vertex_count();
        let mut domain = Vec::with_capacity(nv);
        let mut unknowns = Vec::with_capacity(nv);
        let mut kernels = Vec::with_capacity(nv);
        let mut free = Vec::with_capacity(nv);
        for u in 0..nv {
            let mut dom = Vec::new();
            let mut off = 0;
            for y in b.basis_from(u) {
                if let Some(ct) = self.right_vertex(b.target(y)) {
                    dom.push((y, off));
                    off += n.dim_at(ct);
                }
            }
            let place = |z: usize| dom.iter().find(|(y, _)| *y == z).map(|&(_, o)| o).expect("domain element");
            // f(y x) - f(y) x = 0
            let mut rows = Vec::new();
            for &(y, oy) in &dom {
                let cy = self.right_vertex(b.target(y)).expect("target in e");
                for xc in 0..c.dim() {
                    if c.source(xc) != cy {
                        continue;
                    }
                    let ct = c.target(xc);
                    let x = self.right.embedding[xc];
                    for k in 0..n.dim_at(ct) {
                        let mut row = vec![Scalar::zero(); off];
                        for (z, coeff) in b.product(y, x) {
                            row[place(*z) + k] += coeff;
                        }
                        for j in 0..n.dim_at(cy) {
                            let a = &n.block(xc)[(j, k)];
                            if !a.is_zero() {
                                row[oy + j] -= a;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
            let (kernel, fr) = Matrix::from_rows(off, rows).kernel_with_free();
            domain.push(dom);
            unknowns.push(off);
            kernels.push(kernel);
            free.push(fr);
        }
        let dims: Vec<usize> = kernels.iter().map(Matrix::rows).collect();
        let blocks: Vec<Matrix> = (0..b.dim())
            .map(|x| {
                let (u, w) = (b.source(x), b.target(x));
                let mut block = Matrix::zeros(dims[u], dims[w]);
                for k in 0..dims[u] {
                    // (f.x)(z) = f(x z) for z in e_w B e.
                    let f = kernels[u].row(k);
                    let mut g = vec![Scalar::zero(); unknowns[w]];
                    for &(z, oz) in &domain[w] {
                        let width = n.dim_at(self.right_vertex(b.target(z)).expect("target in e"));
                        for (p, coeff) in b.product(x, z) {
                            let op = domain[u].iter().find(|(y, _)| y == p).expect("domain element").1;
                            for j in 0..width {
                                g[oz + j] += &(coeff * &f[op + j]);
                            }
                        }
                    }
                    for (col, &fc) in free[w].iter().enumerate() {
                        block[(k, col)] = g[fc].clone();
                    }
                }
                block
            })
            .collect();
        let module = Module::from_blocks(b.clone(), dims, blocks)?;
        Ok(Coinduced { module, domain, unknowns, kernels, free })
    }

    /// `Hom_{eBe}(Be, N)`.
    pub fn j_star(&self, n: &Module) -> Result<Module> {
        Ok(self.coinduced(n)?.module)
    }

    /// The canonical map `j_! N -> j_* N`, `n (x) x -> (y -> n.xy)`.
    pub fn theta(&self, n: &Module) -> Result<ModuleMap> {
        let t = self.tensor(n)?;
        let h = self.coinduced(n)?;
        let b = &self.middle;
        let nv = b.vertex_count();
        let mut blocks = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut block = Matrix::zeros(t.index[v].len(), h.kernels[v].rows());
            for (r, &(_, i, x)) in t.index[v].iter().enumerate() {
                let mut g = vec![Scalar::zero(); h.unknowns[v]];
                for &(y, oy) in &h.domain[v] {
                    for (z, coeff) in b.product(x, y) {
                        let zc = self.right_basis(*z);
                        for (j, a) in n.block(zc).row(i).iter().enumerate() {
                            if !a.is_zero() {
                                g[oy + j] += &(coeff * a);
                            }
                        }
                    }
                }
                let coords: Vec<Scalar> = h.free[v].iter().map(|&c| g[c].clone()).collect();
                if h.kernels[v].vec_mul(&coords) != g {
                    return Err(Error::ThetaNotWellDefined(format!(
                        "image of a tensor at vertex {} is not {}-linear",
                        b.vertices()[v],
                        self.right().name()
                    )));
                }
                for (k, c) in coords.into_iter().enumerate() {
                    block[(r, k)] = c;
                }
            }
            if !t.relations[v].mul(&block).is_zero() {
                return Err(Error::ThetaNotWellDefined(format!(
                    "balancing relations at vertex {} are not killed",
                    b.vertices()[v]
                )));
            }
            blocks.push(block);
        }
        let on_tensor = ModuleMap::from_blocks(t.module.clone(), h.module.clone(), blocks)
            .map_err(|e| Error::ThetaNotWellDefined(e.to_string()))?;
        let (shriek, proj) = t.module.quotient(&t.relations)?;
        let induced = (0..nv)
            .map(|v| {
                let p = proj.block(v);
                let section = p.transpose().right_inverse().expect("projection is surjective").transpose();
                section.mul(on_tensor.block(v))
            })
            .collect();
        ModuleMap::from_blocks(shriek, h.module, induced).map_err(|e| Error::ThetaNotWellDefined(e.to_string()))
    }

    /// `j_!* N = Im(j_! N -> j_* N)`, certified by `j^* j_!* N = N`.
    pub fn intermediate_extension(&self, n: &Module) -> Result<Module> {
        let (im, _) = self.theta(n)?.image();
        let back = self.j_upper_star(&im)?;
        if back.dims() != n.dims() || crate::rep::is_isomorphic(&back, n)?.is_none() {
            return Err(Error::ThetaNotWellDefined(format!(
                "j^* of the image has dimension vector {:?}, expected {:?}",
                back.dims(),
                n.dims()
            )));
        }
        Ok(im)
    }
}

#[cfg(test)]
mod tests;
