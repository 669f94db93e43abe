//! Right modules over based algebras and the operations of their category.

mod hom;
mod map;
mod module;

pub use hom::{
    hom_basis, hom_basis_direct, hom_dim, hom_space, minimal_presentation, projective_cover, HomSpace, Presentation,
    ProjectiveCover, ProjectiveSum,
};
pub use map::ModuleMap;
pub use module::{DirectSum, Module};

use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::structure::decompose;

/// Grid points tried in the isomorphism search before falling back to a
/// decomposition.
const GRID_TRIES: usize = 32;

/// An isomorphism `M -> N` between indecomposable modules, if one exists.
/// For indecomposables some basis element of `Hom(M, N)` is invertible
/// whenever the two are isomorphic, since the non-invertible maps form a
/// proper subspace.
pub fn indecomposables_isomorphic(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    Ok(hom_basis(m, n)?.into_iter().find(ModuleMap::is_isomorphism))
}

/// An isomorphism `M -> N`, if one exists.
///
/// Dimension vectors and Hom dimensions are compared first. A deterministic
/// grid of combinations of a Hom basis is then searched for an invertible
/// map, and a negative answer is certified by matching indecomposable
/// summands.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let space = hom_space(m, n)?;
    if hom_dim(n, m)? != space.dim() || hom_dim(m, m)? != space.dim() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let h = space.dim();
    let d = m.dim() as i64;
    let mut state: u64 = 0x1505;
    for t in 0..GRID_TRIES + h {
        let coeffs: Vec<Scalar> = if t < h {
            (0..h).map(|k| if k == t { Scalar::one() } else { Scalar::zero() }).collect()
        } else {
            (0..h)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    Scalar::from_int(((state >> 33) % (2 * d as u64 + 1)) as i64 - d)
                })
                .collect()
        };
        let f = space.combination(&coeffs);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.pieces.len() != dn.pieces.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.pieces.len()];
    let mut iso = ModuleMap::zero(m, n);
    for p in &dm.pieces {
        let mut matched = false;
        for (j, q) in dn.pieces.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = indecomposables_isomorphic(&p.module, &q.module)? {
                used[j] = true;
                iso = iso.add(&p.projection.then(&phi)?.then(&q.inclusion)?);
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    debug_assert!(iso.is_isomorphism());
    Ok(Some(iso))
}
