use super::Recollement;
use crate::error::{Error, Result};
use crate::rep::{hom_dim, Module};
use crate::structure::{is_brick, is_semibrick, Semibrick};
use crate::taumod::{enumerate_stt, semibrick_of, stt_of_semibrick, ExchangeGraph, SttPair};

/// `i_*(S_L) u j_!*(S_R)`.
pub fn glue_semibricks(rec: &Recollement, left: &Semibrick, right: &Semibrick) -> Result<Semibrick> {
    let mut bricks = Vec::with_capacity(left.len() + right.len());
    for s in left.bricks() {
        bricks.push(rec.i_star(s)?);
    }
    for s in right.bricks() {
        bricks.push(rec.intermediate_extension(s)?);
    }
    if !is_semibrick(&bricks)? {
        return Err(Error::GluingNotSemibrick(format!("{} left and {} right bricks", left.len(), right.len())));
    }
    let out = Semibrick::new(bricks)?;
    if out.len() != left.len() + right.len() {
        return Err(Error::GluingNotSemibrick("glued bricks are not distinct".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueMode {
    /// Right bricks go through `j_!`.
    Shriek,
    /// Right bricks go through `j_*`.
    Star,
}

#[derive(Debug, Clone)]
pub enum VariantOutcome {
    Semibrick(Semibrick),
    /// `Hom(first, second)` has dimension `hom_dim` although it should vanish
    /// (or be one-dimensional when `first` and `second` coincide).
    NotSemibrick {
        first: Module,
        second: Module,
        hom_dim: usize,
    },
}

impl VariantOutcome {
    pub fn is_semibrick(&self) -> bool {
        matches!(self, VariantOutcome::Semibrick(_))
    }
}

/// `i_*(S_L) u j_!(S_R)` or `i_*(S_L) u j_*(S_R)`, checked directly.
pub fn glue_variant(rec: &Recollement, left: &Semibrick, right: &Semibrick, mode: GlueMode) -> Result<VariantOutcome> {
    let mut mods = Vec::with_capacity(left.len() + right.len());
    for s in left.bricks() {
        mods.push(rec.i_star(s)?);
    }
    for s in right.bricks() {
        mods.push(match mode {
            GlueMode::Shriek => rec.j_shriek(s)?,
            GlueMode::Star => rec.j_star(s)?,
        });
    }
    for m in &mods {
        if m.is_zero() || !is_brick(m)? {
            return Ok(VariantOutcome::NotSemibrick { first: m.clone(), second: m.clone(), hom_dim: hom_dim(m, m)? });
        }
    }
    for (i, x) in mods.iter().enumerate() {
        for (j, y) in mods.iter().enumerate() {
            if i != j {
                let d = hom_dim(x, y)?;
                if d != 0 {
                    return Ok(VariantOutcome::NotSemibrick { first: x.clone(), second: y.clone(), hom_dim: d });
                }
            }
        }
    }
    Ok(VariantOutcome::Semibrick(Semibrick::new(mods)?))
}

fn check_pair(pair: &SttPair, rec_side: &std::sync::Arc<crate::algebra::BasedAlgebra>) -> Result<()> {
    if pair.algebra().same_as(rec_side) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// The middle pair whose semibrick is glued from those of `left` and `right`.
pub fn glue_stt(rec: &Recollement, left: &SttPair, right: &SttPair, graph: &ExchangeGraph) -> Result<SttPair> {
    check_pair(left, rec.left())?;
    check_pair(right, rec.right())?;
    let s = glue_semibricks(rec, &semibrick_of(left)?, &semibrick_of(right)?)?;
    stt_of_semibrick(&s, graph)
}

#[derive(Debug, Clone)]
pub struct GlueRow {
    /// Node index in the left graph.
    pub left: usize,
    /// Node index in the right graph.
    pub right: usize,
    /// Node index in the middle graph, absent in semibrick-only mode.
    pub glued: Option<usize>,
    pub semibrick: Semibrick,
}

#[derive(Debug, Clone)]
pub struct GlueTable {
    pub left: ExchangeGraph,
    pub right: ExchangeGraph,
    pub middle: Option<ExchangeGraph>,
    pub rows: Vec<GlueRow>,
}

impl GlueTable {
    /// Number of distinct middle nodes reached.
    pub fn glued_count(&self) -> usize {
        let mut hit: Vec<usize> = self.rows.iter().filter_map(|r| r.glued).collect();
        hit.sort_unstable();
        hit.dedup();
        hit.len()
    }

    pub fn nonempty_semibricks(&self) -> usize {
        self.rows.iter().filter(|r| !r.semibrick.is_empty()).count()
    }

    /// Number of isomorphism classes among the glued semibricks.
    pub fn distinct_semibricks(&self) -> Result<usize> {
        let mut reps: Vec<&Semibrick> = Vec::new();
        for r in &self.rows {
            let mut seen = false;
            for s in &reps {
                if s.equivalent(&r.semibrick)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push(&r.semibrick);
            }
        }
        Ok(reps.len())
    }

    /// Glued semibricks are pairwise non-isomorphic.
    pub fn is_injective(&self) -> Result<bool> {
        for (i, r) in self.rows.iter().enumerate() {
            for s in &self.rows[i + 1..] {
                if r.semibrick.equivalent(&s.semibrick)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Glues every pair of left and right nodes. With `semibricks_only` the middle
/// algebra is not enumerated.
pub fn glue_table(rec: &Recollement, cap: usize, semibricks_only: bool) -> Result<GlueTable> {
    let left = enumerate_stt(rec.left(), cap)?;
    let right = enumerate_stt(rec.right(), cap)?;
    if !left.complete || !right.complete {
        return Err(Error::IncompleteGraph);
    }
    let middle = if semibricks_only {
        None
    } else {
        let g = enumerate_stt(rec.middle(), cap)?;
        if !g.complete {
            return Err(Error::IncompleteGraph);
        }
        Some(g)
    };
    let middle_bricks = match &middle {
        Some(g) => g.semibricks()?,
        None => Vec::new(),
    };
    let left_bricks = left.semibricks()?;
    let right_bricks = right.semibricks()?;
    let mut rows = Vec::with_capacity(left.len() * right.len());
    for (li, sl) in left_bricks.iter().enumerate() {
        for (ri, sr) in right_bricks.iter().enumerate() {
            let semibrick = glue_semibricks(rec, sl, sr)?;
            let glued = if middle.is_some() {
                let mut hits = Vec::new();
                for (k, s) in middle_bricks.iter().enumerate() {
                    if s.equivalent(&semibrick)? {
                        hits.push(k);
                    }
                }
                match hits.len() {
                    0 => return Err(Error::NoMatch),
                    1 => Some(hits[0]),
                    k => return Err(Error::AmbiguousMatch(k)),
                }
            } else {
                None
            };
            rows.push(GlueRow { left: li, right: ri, glued, semibrick });
        }
    }
    Ok(GlueTable { left, right, middle, rows })
}
