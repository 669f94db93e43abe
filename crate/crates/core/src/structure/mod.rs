//! Endomorphism rings: radicals, indecomposable decompositions, bricks and
//! semibricks.

pub mod poly;

use std::cmp::Ordering;

use crate::algebra::radical::trace_form_radical;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Scalar};
use crate::rep::{hom_dim, hom_space, HomSpace, Module, ModuleMap};

/// Candidate endomorphisms tried before giving up on a split.
pub const DECOMPOSITION_BUDGET: usize = 1000;

/// `rad End(M)` as rows of coordinates over the basis of `space`, which must
/// be `Hom(M, M)`. Products are taken as composition in the algebra
/// `End(M)`; the radical of an algebra and of its opposite coincide.
pub fn end_radical_in(space: &HomSpace) -> Result<Matrix> {
    let h = space.dim();
    trace_form_radical(h, |i, j| {
        let f = space.basis[i].then(&space.basis[j]).expect("endomorphisms compose");
        space.coordinates(&f)
    })
}

pub fn end_radical(m: &Module) -> Result<Matrix> {
    end_radical_in(&hom_space(m, m)?)
}

/// One indecomposable summand of a module, with structural maps for a fixed
/// decomposition.
#[derive(Debug, Clone)]
pub struct Piece {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Module,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Every indecomposable piece, grouped as in `summands`.
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// `|M|`: the number of pairwise non-isomorphic summands.
    pub fn distinct(&self) -> usize {
        self.summands.len()
    }

    pub fn is_basic(&self) -> bool {
        self.summands.iter().all(|s| s.multiplicity == 1)
    }
}

/// Deterministic stream of integer coefficient vectors with entries in
/// `-2..=2`: unit vectors first, then a fixed pseudo-random sequence.
struct Candidates {
    h: usize,
    step: usize,
    state: u64,
}

impl Iterator for Candidates {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        let k = self.step;
        self.step += 1;
        if k < self.h {
            let mut v = vec![Scalar::zero(); self.h];
            v[k] = Scalar::one();
            return Some(v);
        }
        Some(
            (0..self.h)
                .map(|_| {
                    self.state = self.state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    Scalar::from_int(((self.state >> 33) % 5) as i64 - 2)
                })
                .collect(),
        )
    }
}

/// Kernels of `g(f)` for the coprime primary pieces `g` of the minimal
/// polynomial of `f`, when there are at least two.
fn split_by(f: &ModuleMap) -> Option<Vec<Vec<Matrix>>> {
    let blocks: Vec<&Matrix> = f.blocks().iter().collect();
    let pieces = poly::coprime_pieces(&poly::minimal_polynomial(&blocks));
    if pieces.len() < 2 {
        return None;
    }
    Some(
        pieces
            .iter()
            .map(|g| blocks.iter().map(|b| image_basis(&poly::eval_matrix(g, b).left_kernel_basis())).collect())
            .collect(),
    )
}

fn is_local(space: &HomSpace) -> Result<bool> {
    if space.dim() == 1 {
        return Ok(true);
    }
    Ok(space.dim() - end_radical_in(space)?.rows() == 1)
}

/// Splits `m` into indecomposables; returns each with its inclusion into `m`.
fn split(m: &Module, budget: &mut usize) -> Result<Vec<(Module, ModuleMap)>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = hom_space(m, m)?;
    if is_local(&end)? {
        return Ok(vec![(m.clone(), ModuleMap::identity(m))]);
    }
    let candidates = Candidates { h: end.dim(), step: 0, state: 0x5eed };
    for coeffs in candidates {
        if *budget == 0 {
            return Err(Error::DecompositionStuck(DECOMPOSITION_BUDGET));
        }
        *budget -= 1;
        let f = end.combination(&coeffs);
        let Some(parts) = split_by(&f) else { continue };
        let mut out = Vec::new();
        for subs in parts {
            let (sub, inc) = m.submodule(&subs)?;
            for (piece, pinc) in split(&sub, budget)? {
                let total = pinc.then(&inc)?;
                out.push((piece, total));
            }
        }
        return Ok(out);
    }
    unreachable!("candidate stream is infinite")
}

/// Complete decomposition into indecomposables, with multiplicities.
///
/// Summands are ordered by dimension vector and then by first occurrence;
/// pieces follow the same grouping.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    let mut budget = DECOMPOSITION_BUDGET;
    let parts = split(m, &mut budget)?;
    // Projections from the inverse of the stacked inclusions.
    let n = m.vertex_count();
    let inverses: Vec<Matrix> = (0..n)
        .map(|v| {
            let mut stacked = Matrix::zeros(0, m.dim_at(v));
            for (_, inc) in &parts {
                stacked = stacked.vstack(inc.block(v));
            }
            stacked.inverse().ok_or_else(|| Error::InvalidModule("summands do not span the module".into()))
        })
        .collect::<Result<_>>()?;
    let mut start = vec![0; n];
    let mut pieces = Vec::with_capacity(parts.len());
    for (module, inclusion) in parts {
        let blocks = (0..n)
            .map(|v| {
                let cols: Vec<usize> = (start[v]..start[v] + module.dim_at(v)).collect();
                start[v] += module.dim_at(v);
                inverses[v].select_cols(&cols)
            })
            .collect();
        let projection = ModuleMap::from_blocks_unchecked(m.clone(), module.clone(), blocks);
        pieces.push(Piece { module, inclusion, projection });
    }
    // Group isomorphic pieces.
    let mut groups: Vec<Vec<Piece>> = Vec::new();
    for p in pieces {
        let mut placed = false;
        for g in groups.iter_mut() {
            if crate::rep::indecomposables_isomorphic(&g[0].module, &p.module)?.is_some() {
                g.push(p.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![p]);
        }
    }
    groups.sort_by(|a, b| a[0].module.dims().cmp(b[0].module.dims()));
    let summands = groups.iter().map(|g| Summand { module: g[0].module.clone(), multiplicity: g.len() }).collect();
    let pieces = groups.into_iter().flatten().collect();
    Ok(Decomposition { summands, pieces })
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    is_local(&hom_space(m, m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrickStatus {
    Brick,
    NotBrick,
    /// `End` is semisimple of dimension greater than one; a division algebra
    /// cannot be ruled out without leaving the split case.
    Indeterminate,
}

pub fn brick_status(s: &Module) -> Result<BrickStatus> {
    if s.is_zero() {
        return Ok(BrickStatus::NotBrick);
    }
    let end = hom_space(s, s)?;
    if end.dim() == 1 {
        return Ok(BrickStatus::Brick);
    }
    if end_radical_in(&end)?.rows() == 0 {
        return Ok(BrickStatus::Indeterminate);
    }
    Ok(BrickStatus::NotBrick)
}

/// Split-brick test: `dim End(S) = 1`.
pub fn is_brick(s: &Module) -> Result<bool> {
    Ok(!s.is_zero() && hom_dim(s, s)? == 1)
}

pub fn is_semibrick(set: &[Module]) -> Result<bool> {
    for s in set {
        if !is_brick(s)? {
            return Ok(false);
        }
    }
    for (i, s) in set.iter().enumerate() {
        for (j, t) in set.iter().enumerate() {
            // Distinct bricks with Hom(S, T) = 0 are automatically non-isomorphic.
            if i != j && hom_dim(s, t)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Total order used to list modules canonically: dimension vector, then the
/// literal action data.
pub fn canonical_cmp(a: &Module, b: &Module) -> Ordering {
    a.dims().cmp(b.dims()).then_with(|| a.dim().cmp(&b.dim())).then_with(|| canonical_key(a).cmp(&canonical_key(b)))
}

fn canonical_key(m: &Module) -> String {
    let mut s = String::new();
    for b in m.blocks() {
        for x in b.entries() {
            s.push_str(&x.to_string());
            s.push(',');
        }
        s.push('|');
    }
    s
}

/// A finite set of pairwise Hom-orthogonal bricks, in canonical order.
#[derive(Debug, Clone)]
pub struct Semibrick {
    bricks: Vec<Module>,
}

impl Semibrick {
    pub fn new(mut bricks: Vec<Module>) -> Result<Self> {
        if !is_semibrick(&bricks)? {
            return Err(Error::NotASemibrick(format!(
                "{} modules are not pairwise Hom-orthogonal bricks",
                bricks.len()
            )));
        }
        bricks.sort_by(canonical_cmp);
        Ok(Semibrick { bricks })
    }

    pub fn empty() -> Self {
        Semibrick { bricks: Vec::new() }
    }

    pub fn bricks(&self) -> &[Module] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    /// Same bricks up to isomorphism.
    pub fn equivalent(&self, other: &Semibrick) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for s in &self.bricks {
            let mut found = false;
            for t in &other.bricks {
                if s.dims() == t.dims() && crate::rep::indecomposables_isomorphic(s, t)?.is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::is_isomorphic;
    use crate::testutil::{a3, kronecker, p, preproj_a3, s, sum};

    #[test]
    fn end_radical_examples() {
        let a = a3();
        assert_eq!(end_radical(&p(&a, 0)).unwrap().rows(), 0);
        assert_eq!(end_radical(&sum(&a, &[p(&a, 0), s(&a, 0)])).unwrap().rows(), 1);
        assert_eq!(end_radical(&sum(&a, &[s(&a, 0), s(&a, 1)])).unwrap().rows(), 0);
        let b = preproj_a3();
        assert_eq!(end_radical(&p(&b, 1)).unwrap().rows(), 1);
    }

    #[test]
    fn decompose_examples() {
        let a = a3();
        let m = sum(&a, &[p(&a, 0), p(&a, 0), s(&a, 1)]);
        let d = decompose(&m).unwrap();
        let got: Vec<(Vec<usize>, usize)> =
            d.summands.iter().map(|s| (s.module.dims().to_vec(), s.multiplicity)).collect();
        assert_eq!(got, vec![(vec![0, 1, 0], 1), (vec![1, 1, 1], 2)]);
        assert!(is_isomorphic(&d.summands[1].module, &p(&a, 0)).unwrap().is_some());

        let regular = sum(&a, &[p(&a, 0), p(&a, 1), p(&a, 2)]);
        let d = decompose(&regular).unwrap();
        assert_eq!(d.distinct(), 3);
        assert!(d.is_basic());

        let b = preproj_a3();
        let d = decompose(&p(&b, 1)).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].multiplicity, 1);
    }

    #[test]
    fn decompose_reassembles() {
        let k = kronecker();
        let b = preproj_a3();
        let cases = vec![
            sum(&k, &[p(&k, 0), p(&k, 0), s(&k, 1), s(&k, 0)]),
            sum(&b, &[p(&b, 1), s(&b, 1), p(&b, 1), s(&b, 0)]),
            sum(&b, &[p(&b, 0), p(&b, 2), p(&b, 1)]),
        ];
        for m in cases {
            let d = decompose(&m).unwrap();
            let total: usize = d.summands.iter().map(|s| s.module.dim() * s.multiplicity).sum();
            assert_eq!(total, m.dim());
            for piece in &d.pieces {
                assert!(is_indecomposable(&piece.module).unwrap());
                let round = piece.inclusion.then(&piece.projection).unwrap();
                assert!(round == ModuleMap::identity(&piece.module));
            }
            let parts: Vec<Module> = d.pieces.iter().map(|p| p.module.clone()).collect();
            let back = sum(m.algebra(), &parts);
            assert!(is_isomorphic(&back, &m).unwrap().is_some());
        }
    }

    #[test]
    fn brick_examples() {
        let a = a3();
        assert!(is_brick(&p(&a, 0)).unwrap());
        assert!(!is_brick(&sum(&a, &[s(&a, 0), s(&a, 1)])).unwrap());
        assert_eq!(brick_status(&sum(&a, &[s(&a, 0), s(&a, 1)])).unwrap(), BrickStatus::Indeterminate);
        let b = preproj_a3();
        assert!(!is_brick(&p(&b, 1)).unwrap());
        assert_eq!(brick_status(&p(&b, 1)).unwrap(), BrickStatus::NotBrick);
    }

    #[test]
    fn semibrick_examples() {
        let a = a3();
        assert!(is_semibrick(&[s(&a, 0), s(&a, 2)]).unwrap());
        assert!(!is_semibrick(&[p(&a, 0), s(&a, 0)]).unwrap());
        assert!(is_semibrick(&[]).unwrap());
        assert!(!is_semibrick(&[s(&a, 0), s(&a, 0)]).unwrap());
        let sb = Semibrick::new(vec![s(&a, 2), s(&a, 0)]).unwrap();
        assert_eq!(sb.bricks()[0], s(&a, 2));
        assert!(matches!(Semibrick::new(vec![p(&a, 0), s(&a, 0)]), Err(Error::NotASemibrick(_))));
    }
}
