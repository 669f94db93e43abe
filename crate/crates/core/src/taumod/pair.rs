use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{is_tau_rigid, is_tau_rigid_family, transpose};
use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix};
use crate::rep::{hom_basis, hom_space, indecomposables_isomorphic, minimal_presentation, Module, ModuleMap};
use crate::structure::{canonical_cmp, decompose, is_indecomposable};

/// A basic support τ-tilting pair `(M, P)`, stored as the indecomposable
/// summands of `M` and the vertices `v` with `P_v` a summand of `P`.
#[derive(Clone)]
pub struct SttPair {
    algebra: Arc<BasedAlgebra>,
    summands: Vec<Module>,
    projectives: Vec<usize>,
    m: Module,
    id: String,
}

/// The vertex `v` with `X = P_v`, when `X` is indecomposable projective.
pub fn projective_vertex(x: &Module) -> Result<Option<usize>> {
    let pres = minimal_presentation(x)?;
    Ok(match (pres.top_vertices(), pres.relation_vertices()) {
        ([v], []) => Some(*v),
        _ => None,
    })
}

impl SttPair {
    /// Assembles a pair from indecomposable summands without checking the
    /// support τ-tilting conditions; see [`is_stt_pair`].
    pub fn from_parts(
        algebra: &Arc<BasedAlgebra>,
        mut summands: Vec<Module>,
        mut projectives: Vec<usize>,
    ) -> Result<Self> {
        if summands.iter().any(|s| !s.algebra().same_as(algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        summands.sort_by(canonical_cmp);
        projectives.sort_unstable();
        projectives.dedup();
        let m = Module::sum_of(&summands, algebra)?;
        let mut hasher = Sha256::new();
        for s in &summands {
            hasher.update(format!("{:?}", s.dims()).as_bytes());
            for b in s.blocks() {
                for x in b.entries() {
                    hasher.update(x.to_string().as_bytes());
                    hasher.update(b",");
                }
                hasher.update(b"|");
            }
            hasher.update(b";");
        }
        hasher.update(format!("P{projectives:?}").as_bytes());
        let id = hex::encode(&hasher.finalize()[..8]);
        Ok(SttPair { algebra: algebra.clone(), summands, projectives, m, id })
    }

    /// `(A, 0)`.
    pub fn regular(algebra: &Arc<BasedAlgebra>) -> Result<Self> {
        let ps = (0..algebra.vertex_count()).map(|v| Module::projective(algebra, v)).collect::<Result<Vec<_>>>()?;
        Self::from_parts(algebra, ps, Vec::new())
    }

    /// `(0, A)`.
    pub fn zero(algebra: &Arc<BasedAlgebra>) -> Result<Self> {
        Self::from_parts(algebra, Vec::new(), (0..algebra.vertex_count()).collect())
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.algebra
    }

    /// Indecomposable summands of `M`, in canonical order.
    pub fn summands(&self) -> &[Module] {
        &self.summands
    }

    pub fn projective_vertices(&self) -> &[usize] {
        &self.projectives
    }

    /// `M` as a single module.
    pub fn module(&self) -> &Module {
        &self.m
    }

    /// `P` as a single module.
    pub fn projective(&self) -> Result<Module> {
        let ps = self.projectives.iter().map(|&v| Module::projective(&self.algebra, v)).collect::<Result<Vec<_>>>()?;
        Module::sum_of(&ps, &self.algebra)
    }

    /// Short certificate derived from the stored representative.
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Number of summand positions `|M| + |P|`.
    pub fn rank(&self) -> usize {
        self.summands.len() + self.projectives.len()
    }

    pub fn dim_vector(&self) -> &[usize] {
        self.m.dims()
    }

    /// Display label of summand position `k`: summands of `M` first, then `P`.
    pub fn position_label(&self, k: usize) -> String {
        if k < self.summands.len() {
            self.summands[k].stacked_label()
        } else {
            format!("P{}", self.algebra.vertices()[self.projectives[k - self.summands.len()]])
        }
    }

    /// `M` written as a sum of stacked labels, or `0`.
    pub fn label(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands.iter().map(Module::stacked_label).collect::<Vec<_>>().join(" ⊕ ")
    }

    fn bucket_key(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        (self.projectives.clone(), self.summands.iter().map(|s| s.dims().to_vec()).collect())
    }

    /// Equality up to isomorphism of the summands.
    pub fn equivalent(&self, other: &SttPair) -> Result<bool> {
        if self.bucket_key() != other.bucket_key() {
            return Ok(false);
        }
        let mut used = vec![false; other.summands.len()];
        for x in &self.summands {
            let mut hit = false;
            for (j, y) in other.summands.iter().enumerate() {
                if !used[j] && x.dims() == y.dims() && indecomposables_isomorphic(x, y)?.is_some() {
                    used[j] = true;
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn key(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        self.bucket_key()
    }

    /// The other basic support τ-tilting pair sharing every summand except
    /// position `k` (summands of `M` first, then `P`).
    pub fn mutate(&self, k: usize) -> Result<SttPair> {
        if k >= self.rank() {
            return Err(Error::MutationFailed(format!("no summand at position {k}")));
        }
        if k < self.summands.len() {
            let x = &self.summands[k];
            let rest: Vec<Module> =
                self.summands.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| s.clone()).collect();
            if !in_fac(x, &rest)? {
                return self.left_mutate(k);
            }
        }
        // The mutation goes up: pass to the opposite algebra.
        let (dual, position) = self.dagger_with_position(k)?;
        let others: Vec<Module> =
            dual.summands.iter().enumerate().filter(|(i, _)| *i != position).map(|(_, s)| s.clone()).collect();
        if position >= dual.summands.len() || in_fac(&dual.summands[position], &others)? {
            return Err(Error::MutationFailed("dual summand does not admit a left mutation".into()));
        }
        let mutated = dual.left_mutate(position)?;
        Ok(mutated.dagger_with_position(0)?.0)
    }

    /// Left mutation at summand `k` of `M`, which must not lie in `Fac` of the
    /// other summands.
    fn left_mutate(&self, k: usize) -> Result<SttPair> {
        let x = &self.summands[k];
        let rest: Vec<Module> =
            self.summands.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| s.clone()).collect();
        let f = minimal_left_approximation(x, &rest)?;
        let (y, _) = f.cokernel();
        if y.is_zero() {
            let sum = Module::sum_of(&rest, &self.algebra)?;
            let free: Vec<usize> = (0..self.algebra.vertex_count())
                .filter(|v| sum.dim_at(*v) == 0 && !self.projectives.contains(v))
                .collect();
            let [v] = free[..] else {
                return Err(Error::MutationFailed(format!(
                    "{} candidate projectives after a surjective approximation",
                    free.len()
                )));
            };
            let mut ps = self.projectives.clone();
            ps.push(v);
            return SttPair::from_parts(&self.algebra, rest, ps);
        }
        let mut summands = rest.clone();
        for s in decompose(&y)?.summands {
            let mut known = false;
            for u in &summands {
                if u.dims() == s.module.dims() && indecomposables_isomorphic(u, &s.module)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                summands.push(s.module);
            }
        }
        if summands.len() != self.summands.len() {
            return Err(Error::MutationFailed(format!(
                "cokernel contributed {} new summands",
                summands.len() + 1 - self.summands.len()
            )));
        }
        SttPair::from_parts(&self.algebra, summands, self.projectives.clone())
    }

    /// `(M, P)^† = (Tr M_np + P^*, M_pr^*)` over the opposite algebra, with
    /// the position of the image of summand `k` in the result.
    fn dagger_with_position(&self, k: usize) -> Result<(SttPair, usize)> {
        let op = self.algebra.opposite();
        let mut new_summands = Vec::new();
        let mut new_projectives = Vec::new();
        // Which new object stems from position k.
        enum Image {
            Summand(Module),
            Projective(usize),
        }
        let mut image = None;
        for (i, x) in self.summands.iter().enumerate() {
            match projective_vertex(x)? {
                Some(v) => {
                    new_projectives.push(v);
                    if i == k {
                        image = Some(Image::Projective(v));
                    }
                }
                None => {
                    let t = transpose(x)?;
                    if i == k {
                        image = Some(Image::Summand(t.clone()));
                    }
                    new_summands.push(t);
                }
            }
        }
        for (j, &v) in self.projectives.iter().enumerate() {
            let p = Module::projective(&op, v)?;
            if self.summands.len() + j == k {
                image = Some(Image::Summand(p.clone()));
            }
            new_summands.push(p);
        }
        let pair = SttPair::from_parts(&op, new_summands, new_projectives)?;
        let position = match image {
            Some(Image::Summand(t)) => pair.summands.iter().position(|s| *s == t).expect("summand survives sorting"),
            Some(Image::Projective(v)) => pair.summands.len() + pair.projectives.iter().position(|&w| w == v).unwrap(),
            None => 0,
        };
        Ok((pair, position))
    }

    /// `(M, P)^†` over the opposite algebra.
    pub fn dagger(&self) -> Result<SttPair> {
        Ok(self.dagger_with_position(0)?.0)
    }
}

/// `X` is a quotient of a sum of copies of the modules in `us`.
fn in_fac(x: &Module, us: &[Module]) -> Result<bool> {
    let mut trace: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::zeros(0, d)).collect();
    for u in us {
        for f in hom_basis(u, x)? {
            for (v, t) in trace.iter_mut().enumerate() {
                *t = t.vstack(f.block(v));
            }
        }
    }
    Ok(trace.iter().zip(x.dims()).all(|(t, &d)| image_basis(t).rows() == d))
}

/// Minimal left `add(U)`-approximation of `X`: start from the map given by
/// Hom bases into every summand of `U` and drop components, last first,
/// while the map remains an approximation.
fn minimal_left_approximation(x: &Module, us: &[Module]) -> Result<ModuleMap> {
    let algebra = x.algebra();
    let targets: Vec<_> = us.iter().map(|u| hom_space(x, u)).collect::<Result<_>>()?;
    // hom[i][j] = basis of Hom(U_i, U_j)
    let hom: Vec<Vec<Vec<ModuleMap>>> =
        us.iter().map(|ui| us.iter().map(|uj| hom_basis(ui, uj)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let mut comps: Vec<(usize, ModuleMap)> = Vec::new();
    for (i, t) in targets.iter().enumerate() {
        for f in &t.basis {
            comps.push((i, f.clone()));
        }
    }
    let approximates = |set: &[(usize, ModuleMap)]| -> Result<bool> {
        for (j, t) in targets.iter().enumerate() {
            if t.dim() == 0 {
                continue;
            }
            let mut rows = Vec::new();
            for (i, f) in set {
                for g in &hom[*i][j] {
                    rows.push(t.coordinates(&f.then(g)?));
                }
            }
            if Matrix::from_rows(t.dim(), rows).rank() < t.dim() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut idx = comps.len();
    while idx > 0 {
        idx -= 1;
        let mut trial = comps.clone();
        trial.remove(idx);
        if approximates(&trial)? {
            comps = trial;
        }
    }
    let targets_mods: Vec<Module> = comps.iter().map(|(i, _)| us[*i].clone()).collect();
    let sum = Module::direct_sum(&targets_mods, algebra)?;
    let mut f = ModuleMap::zero(x, &sum.module);
    for ((_, g), inc) in comps.iter().zip(&sum.inclusions) {
        f = f.add(&g.then(inc)?);
    }
    Ok(f)
}

/// Checks the support τ-tilting conditions: `M` τ-rigid and basic, `P`
/// basic projective, `Hom(P, M) = 0` and `|M| + |P| = n`.
pub fn is_stt_pair(m: &Module, p: &Module) -> Result<bool> {
    if !m.algebra().same_as(p.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let dm = decompose(m)?;
    let dp = decompose(p)?;
    if !dm.is_basic() || !dp.is_basic() {
        return Ok(false);
    }
    for s in &dp.summands {
        let Some(v) = projective_vertex(&s.module)? else {
            return Ok(false);
        };
        if m.dim_at(v) != 0 {
            return Ok(false);
        }
    }
    if dm.distinct() + dp.distinct() != m.vertex_count() {
        return Ok(false);
    }
    is_tau_rigid(m)
}

impl SttPair {
    /// Re-validates the pair from its summands: they are indecomposable and
    /// pairwise non-isomorphic, the projective part is supported away from
    /// `M`, the count is right and `M` is τ-rigid.
    pub fn validate(&self) -> Result<bool> {
        if self.rank() != self.algebra.vertex_count() {
            return Ok(false);
        }
        let mut vs = self.projectives.clone();
        vs.dedup();
        if vs.len() != self.projectives.len() || vs.iter().any(|&v| self.m.dim_at(v) != 0) {
            return Ok(false);
        }
        for (i, x) in self.summands.iter().enumerate() {
            if !is_indecomposable(x)? {
                return Ok(false);
            }
            for y in &self.summands[i + 1..] {
                if x.dims() == y.dims() && indecomposables_isomorphic(x, y)?.is_some() {
                    return Ok(false);
                }
            }
        }
        is_tau_rigid_family(&self.summands)
    }
}

impl fmt::Debug for SttPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SttPair").field("m", &self.label()).field("p", &self.projectives).finish()
    }
}
