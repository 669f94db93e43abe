//! Support τ-tilting theory: the Auslander–Reiten translate, support
//! τ-tilting pairs, mutation, exchange graphs and semibricks.

mod graph;
mod pair;

pub use graph::{
    enumerate_stt, is_tau_tilting_finite, semibrick_of, stt_of_semibrick, ExchangeGraph, Finiteness, DEFAULT_CAP,
};
pub use pair::{is_stt_pair, projective_vertex, SttPair};

use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::rep::{hom_dim, minimal_presentation, Module, ProjectiveSum};

/// Auslander–Bridger transpose `Tr M`, a module over the opposite algebra:
/// the cokernel of `Hom(d, A)` for a minimal presentation `d: P1 -> P0`.
pub fn transpose(m: &Module) -> Result<Module> {
    let pres = minimal_presentation(m)?;
    let op = m.algebra().opposite();
    let p0 = &pres.cover.projective;
    // Hom(P_w, A) = A e_w is the projective of the opposite algebra at w.
    let p1_dual = ProjectiveSum::new(&op, pres.relation_vertices().to_vec());
    let p0_dual = ProjectiveSum::new(&op, pres.top_vertices().to_vec());
    let mut images: Vec<Vec<Scalar>> =
        pres.top_vertices().iter().map(|&v| vec![Scalar::zero(); p1_dual.module.dim_at(v)]).collect();
    for (r, &w) in pres.relation_vertices().iter().enumerate() {
        for (i, c) in pres.relation_vectors[r].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (k, b) = p0.rows_at(w)[i];
            let v = p0.vertices[k];
            let pos = p1_dual
                .rows_at(v)
                .iter()
                .position(|&(rr, bb)| rr == r && bb == b)
                .expect("relation coefficient lies in e_v A e_w");
            images[k][pos] += c;
        }
    }
    let hd = p0_dual.map_from_generators(&p1_dual.module, &images);
    Ok(hd.cokernel().0)
}

/// `τ M = D Tr M`.
pub fn ar_translate(m: &Module) -> Result<Module> {
    Ok(transpose(m)?.dualize())
}

/// `Hom(d, M)` is surjective for the minimal presentation `d` of `M`.
pub fn presentation_criterion(m: &Module) -> Result<bool> {
    let pres = minimal_presentation(m)?;
    Ok(pres.lifts_into(m))
}

/// `Hom(M, τM) = 0`, checked against the presentation criterion.
pub fn is_tau_rigid(m: &Module) -> Result<bool> {
    let tau = ar_translate(m)?;
    let by_tau = hom_dim(m, &tau)? == 0;
    let by_presentation = presentation_criterion(m)?;
    if by_tau != by_presentation {
        return Err(Error::CriterionMismatch(format!(
            "module with dimension vector {:?}: Hom(M, tau M) = 0 is {by_tau}, presentation test is {by_presentation}",
            m.dims()
        )));
    }
    Ok(by_tau)
}

/// `Hom(M, τM) = 0` for `M` the direct sum of `family`, computed one pair of
/// summands at a time and checked against the presentation criterion.
pub fn is_tau_rigid_family(family: &[Module]) -> Result<bool> {
    let mut by_tau = true;
    let mut by_presentation = true;
    for x in family {
        let tau = ar_translate(x)?;
        let pres = minimal_presentation(x)?;
        for y in family {
            by_tau &= hom_dim(y, &tau)? == 0;
            by_presentation &= pres.lifts_into(y);
        }
    }
    if by_tau != by_presentation {
        return Err(Error::CriterionMismatch(format!(
            "family of {} modules: Hom(M, tau M) = 0 is {by_tau}, presentation test is {by_presentation}",
            family.len()
        )));
    }
    Ok(by_tau)
}

#[cfg(test)]
mod tests;
