//! Projective covers, minimal presentations and Hom spaces.
//!
//! `Hom(M, N)` is computed from a minimal presentation of `M`: a map is
//! determined by the images `y_k in N e_{v_k}` of the top generators, subject
//! to one linear condition per relation.

use std::sync::Arc;

use super::map::ModuleMap;
use super::module::Module;
use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, SparseMatrix};

/// `P = e_{v_1} A + ... + e_{v_r} A` with a record of where each summand's
/// basis element `b` sits.
#[derive(Debug, Clone)]
pub struct ProjectiveSum {
    pub vertices: Vec<usize>,
    pub module: Module,
    /// `rows[t]` lists `(summand, basis element)` for each coordinate of `P_t`.
    rows: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveSum {
    pub fn new(algebra: &Arc<BasedAlgebra>, vertices: Vec<usize>) -> Self {
        let n = algebra.vertex_count();
        let mut rows: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, &v) in vertices.iter().enumerate() {
            for b in algebra.basis_from(v) {
                rows[algebra.target(b)].push((k, b));
            }
        }
        // position[(k, b)] inside its vertex block
        let mut position = vec![vec![usize::MAX; algebra.dim()]; vertices.len()];
        for block in &rows {
            for (i, &(k, b)) in block.iter().enumerate() {
                position[k][b] = i;
            }
        }
        let dims: Vec<usize> = rows.iter().map(Vec::len).collect();
        let blocks = (0..algebra.dim())
            .map(|c| {
                let (s, t) = (algebra.source(c), algebra.target(c));
                let mut m = Matrix::zeros(dims[s], dims[t]);
                for (i, &(k, b)) in rows[s].iter().enumerate() {
                    for (j, coef) in algebra.product(b, c) {
                        m[(i, position[k][*j])] = coef.clone();
                    }
                }
                m
            })
            .collect();
        let module = Module::from_blocks_unchecked(algebra.clone(), dims, blocks);
        ProjectiveSum { vertices, module, rows }
    }

    /// Coordinate of the generator `e_{v_k}` of summand `k` in `P_{v_k}`.
    pub fn generator_position(&self, k: usize) -> usize {
        let v = self.vertices[k];
        let e = self.module.algebra().idempotent(v);
        self.rows[v].iter().position(|&(kk, b)| kk == k && b == e).expect("generator present")
    }

    pub fn rows_at(&self, t: usize) -> &[(usize, usize)] {
        &self.rows[t]
    }

    /// The map `P -> N` sending generator `k` to `images[k] in N_{v_k}`.
    pub fn map_from_generators(&self, target: &Module, images: &[Vec<Scalar>]) -> ModuleMap {
        let blocks = (0..target.vertex_count())
            .map(|t| {
                let mut m = Matrix::zeros(self.rows[t].len(), target.dim_at(t));
                for (i, &(k, b)) in self.rows[t].iter().enumerate() {
                    let y = &images[k];
                    if y.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    m.row_mut(i).clone_from_slice(&target.act(y, b));
                }
                m
            })
            .collect();
        ModuleMap::from_blocks_unchecked(self.module.clone(), target.clone(), blocks)
    }
}

/// Projective cover `p: P -> M` with `P` generated by lifts of a basis of the
/// top of `M`. Generator `k` maps to the standard basis vector
/// `generators[k] = (vertex, coordinate)` of `M`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    pub map: ModuleMap,
    pub generators: Vec<(usize, usize)>,
}

pub fn projective_cover(m: &Module) -> Result<ProjectiveCover> {
    let rad = m.radical_subspaces();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let piv = super::module::echelon_pivots(r);
        for j in crate::exactla::free_columns(m.dim_at(v), &piv) {
            generators.push((v, j));
        }
    }
    let projective = ProjectiveSum::new(m.algebra(), generators.iter().map(|g| g.0).collect());
    let images: Vec<Vec<Scalar>> = generators
        .iter()
        .map(|&(v, j)| {
            let mut y = vec![Scalar::zero(); m.dim_at(v)];
            y[j] = Scalar::one();
            y
        })
        .collect();
    let map = projective.map_from_generators(m, &images);
    if !map.is_surjective() {
        return Err(Error::LiftFailure("top generators do not generate the module".into()));
    }
    Ok(ProjectiveCover { projective, map, generators })
}

/// Minimal projective presentation `P1 -d-> P0 -p-> M -> 0`.
#[derive(Debug)]
pub struct Presentation {
    pub cover: ProjectiveCover,
    pub relations: ProjectiveSum,
    /// Image of relation generator `r` in `P0_{w_r}`.
    pub relation_vectors: Vec<Vec<Scalar>>,
    pub d: ModuleMap,
    /// Per vertex, a matrix `R_v` with `R_v * p_v = I`.
    section: Vec<Matrix>,
}

impl Presentation {
    pub fn p0(&self) -> &Module {
        &self.cover.projective.module
    }

    pub fn p1(&self) -> &Module {
        &self.relations.module
    }

    pub fn top_vertices(&self) -> &[usize] {
        &self.cover.projective.vertices
    }

    pub fn relation_vertices(&self) -> &[usize] {
        &self.relations.vertices
    }

    /// Matrix of `Hom(P0, N) -> Hom(P1, N)`, `y -> y . d`, with rows indexed by
    /// the stacked `N_{v_k}` and columns by the stacked `N_{w_r}`.
    pub fn relation_matrix(&self, n: &Module) -> Matrix {
        self.relation_equations(n).transpose().to_dense()
    }

    /// Transpose of `relation_matrix`: one sparse equation per column, in the
    /// unknowns `y`.
    pub fn relation_equations(&self, n: &Module) -> SparseMatrix {
        let p0 = &self.cover.projective;
        let mut row_off = Vec::with_capacity(p0.vertices.len());
        let mut acc = 0;
        for &v in &p0.vertices {
            row_off.push(acc);
            acc += n.dim_at(v);
        }
        let mut eqs = SparseMatrix::new(acc);
        for (r, &w) in self.relations.vertices.iter().enumerate() {
            let width = n.dim_at(w);
            let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); width];
            for (i, coef) in self.relation_vectors[r].iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (k, b) = p0.rows_at(w)[i];
                let block = n.block(b);
                for (a, row) in (0..block.rows()).zip(row_off[k]..) {
                    for (j, x) in block.row(a).iter().enumerate() {
                        if !x.is_zero() {
                            cols[j].push((row, coef * x));
                        }
                    }
                }
            }
            for col in cols {
                eqs.push_row(col);
            }
        }
        eqs
    }

    /// `Hom(d, N)` is surjective.
    pub fn lifts_into(&self, n: &Module) -> bool {
        let eqs = self.relation_equations(n);
        eqs.rank() == eqs.rows()
    }
}

/// Minimal presentation of `m`, computed once per module and cached.
pub fn minimal_presentation(m: &Module) -> Result<Arc<Presentation>> {
    if let Some(p) = m.presentation_cell().get() {
        return Ok(p.clone());
    }
    let cover = projective_cover(m)?;
    let (k, inc) = cover.map.kernel();
    let kcover = projective_cover(&k)?;
    let relation_vectors: Vec<Vec<Scalar>> =
        kcover.generators.iter().map(|&(w, j)| inc.block(w).row(j).to_vec()).collect();
    let relations = kcover.projective;
    let d = relations.map_from_generators(&cover.projective.module, &relation_vectors);
    let section = cover
        .map
        .blocks()
        .iter()
        .map(|p| {
            p.transpose()
                .right_inverse()
                .map(|q| q.transpose())
                .ok_or_else(|| Error::LiftFailure("cover is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let pres = Arc::new(Presentation { cover, relations, relation_vectors, d, section });
    Ok(m.presentation_cell().get_or_init(|| pres).clone())
}

/// A basis of `Hom(M, N)` with a coordinate function.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
    presentation: Arc<Presentation>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `f` in `basis`; `f` must lie in the space.
    pub fn coordinates(&self, f: &ModuleMap) -> Vec<Scalar> {
        let y = generator_images(&self.presentation, f);
        self.free.iter().map(|&i| y[i].clone()).collect()
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> ModuleMap {
        ModuleMap::combination(&self.basis, coeffs, &self.source, &self.target)
    }
}

fn generator_images(p: &Presentation, f: &ModuleMap) -> Vec<Scalar> {
    p.cover.generators.iter().flat_map(|&(v, j)| f.block(v).row(j).to_vec()).collect()
}

fn map_from_images(p: &Presentation, m: &Module, n: &Module, y: &[Scalar]) -> ModuleMap {
    let p0 = &p.cover.projective;
    let mut images = Vec::with_capacity(p0.vertices.len());
    let mut off = 0;
    for &v in &p0.vertices {
        images.push(y[off..off + n.dim_at(v)].to_vec());
        off += n.dim_at(v);
    }
    let h = p0.map_from_generators(n, &images);
    let blocks = p.section.iter().zip(h.blocks()).map(|(r, hv)| r.mul(hv)).collect();
    ModuleMap::from_blocks_unchecked(m.clone(), n.clone(), blocks)
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let pres = minimal_presentation(m)?;
    let (ys, free) = pres.relation_equations(n).kernel_with_free();
    let basis = (0..ys.rows()).map(|i| map_from_images(&pres, m, n, ys.row(i))).collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, presentation: pres, free })
}

pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    Ok(hom_space(m, n)?.basis)
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let pres = minimal_presentation(m)?;
    let eqs = pres.relation_equations(n);
    Ok(eqs.cols() - eqs.rank())
}

/// `Hom(M, N)` as the solution space of the intertwining equations
/// `block_M(b) F_t = F_s block_N(b)` over all unknown vertex blocks.
pub fn hom_basis_direct(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let nv = m.vertex_count();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + m.dim_at(v) * n.dim_at(v);
    }
    let unknowns = off[nv];
    let var = |v: usize, i: usize, j: usize| off[v] + i * n.dim_at(v) + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &b in a.generators() {
        let (s, t) = (a.source(b), a.target(b));
        let (bm, bn) = (m.block(b), n.block(b));
        for i in 0..m.dim_at(s) {
            for j in 0..n.dim_at(t) {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..m.dim_at(t) {
                    row[var(t, k, j)] += &bm[(i, k)];
                }
                for k in 0..n.dim_at(s) {
                    row[var(s, i, k)] -= &bn[(k, j)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = Matrix::from_rows(unknowns, rows).kernel_basis();
    Ok((0..sol.rows())
        .map(|r| {
            let blocks = (0..nv)
                .map(|v| {
                    let (p, q) = (m.dim_at(v), n.dim_at(v));
                    Matrix::from_vec(p, q, sol.row(r)[off[v]..off[v + 1]].to_vec())
                })
                .collect();
            ModuleMap::from_blocks_unchecked(m.clone(), n.clone(), blocks)
        })
        .collect())
}
