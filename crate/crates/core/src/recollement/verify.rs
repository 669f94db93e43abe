use std::sync::Arc;

use super::Recollement;
use crate::algebra::BasedAlgebra;
use crate::error::Result;
use crate::rep::{hom_dim, is_isomorphic, Module, ModuleMap};
use crate::taumod::{enumerate_stt, ExchangeGraph};

#[derive(Debug, Clone)]
pub struct Sample {
    pub label: String,
    pub module: Module,
}

/// Test modules for each of the three categories.
#[derive(Debug, Clone, Default)]
pub struct Samples {
    pub left: Vec<Sample>,
    pub middle: Vec<Sample>,
    pub right: Vec<Sample>,
}

fn push_new(out: &mut Vec<Sample>, label: String, module: Module) -> Result<()> {
    for s in out.iter() {
        if s.module.dims() == module.dims() && is_isomorphic(&s.module, &module)?.is_some() {
            return Ok(());
        }
    }
    out.push(Sample { label, module });
    Ok(())
}

/// Indecomposable projectives, injectives and simples, without repeats.
fn standard(a: &Arc<BasedAlgebra>) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for (prefix, build) in [
        ("P", Module::projective as fn(&Arc<BasedAlgebra>, usize) -> Result<Module>),
        ("I", Module::injective),
        ("S", Module::simple),
    ] {
        for (v, name) in a.vertices().iter().enumerate() {
            push_new(&mut out, format!("{prefix}{name}"), build(a, v)?)?;
        }
    }
    Ok(out)
}

fn add_bricks(out: &mut Vec<Sample>, graph: &ExchangeGraph) -> Result<()> {
    if !graph.complete {
        return Ok(());
    }
    for s in graph.semibricks()? {
        for b in s.bricks() {
            push_new(out, b.stacked_label(), b.clone())?;
        }
    }
    Ok(())
}

/// Projectives, injectives and simples of every category, plus the bricks of
/// every exchange graph that completes within `cap`.
pub fn default_samples(rec: &Recollement, cap: usize) -> Result<Samples> {
    let mut s = Samples { left: standard(rec.left())?, middle: standard(rec.middle())?, right: standard(rec.right())? };
    add_bricks(&mut s.left, &enumerate_stt(rec.left(), cap)?)?;
    add_bricks(&mut s.middle, &enumerate_stt(rec.middle(), cap)?)?;
    add_bricks(&mut s.right, &enumerate_stt(rec.right(), cap)?)?;
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub sample: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn check(&mut self, identity: &str, sample: String, f: impl FnOnce() -> Result<Option<String>>) {
        let witness = f().unwrap_or_else(|e| Some(format!("error: {e}")));
        self.checks.push(Check { identity: identity.to_string(), sample, passed: witness.is_none(), witness });
    }
}

fn same_dim(a: usize, b: usize) -> Option<String> {
    (a != b).then(|| format!("dimensions {a} and {b}"))
}

fn iso(x: &Module, y: &Module) -> Result<Option<String>> {
    if x.dims() == y.dims() && is_isomorphic(x, y)?.is_some() {
        Ok(None)
    } else {
        Ok(Some(format!(
            "{} ({:?}) is not isomorphic to {} ({:?})",
            x.stacked_label(),
            x.dims(),
            y.stacked_label(),
            y.dims()
        )))
    }
}

fn vanishes(x: &Module) -> Option<String> {
    (!x.is_zero()).then(|| format!("nonzero result {} ({:?})", x.stacked_label(), x.dims()))
}

/// `0 -> X -f-> Y -g-> Z -> 0` is exact.
fn exactness(f: &ModuleMap, g: &ModuleMap) -> Result<Option<String>> {
    if !f.then(g)?.is_zero() {
        return Ok(Some("composite is nonzero".into()));
    }
    if !f.is_injective() {
        return Ok(Some("first map is not injective".into()));
    }
    if !g.is_surjective() {
        return Ok(Some("second map is not surjective".into()));
    }
    if f.rank() + g.rank() != f.target().dim() {
        return Ok(Some("not exact in the middle".into()));
    }
    Ok(None)
}

const SEQUENCES: [&str; 2] = ["radical", "socle"];

/// `0 -> rad M -> M -> top M -> 0` or `0 -> soc M -> M -> M/soc M -> 0`.
fn sequence(m: &Module, kind: &str) -> Result<(ModuleMap, ModuleMap)> {
    let (_, inc) = if kind == "radical" { m.radical() } else { m.socle() };
    let (_, proj) = m.quotient(&inc.image_subspaces())?;
    Ok((inc, proj))
}

/// Checks the adjunction dimensions, the unit and counit isomorphisms, the
/// vanishing of the mixed composites, `Im i_* = Ker j^*` and exactness of
/// `i_*` and `j^*` on every sample. A functor that fails to produce a module
/// counts as a failed check. Checks are sorted by identity, then sample.
pub fn verify_recollement(rec: &Recollement, samples: &Samples) -> VerificationReport {
    let mut rep = VerificationReport::default();
    for m in &samples.middle {
        let x = &m.module;
        for n in &samples.left {
            let y = &n.module;
            let label = format!("{} | {}", m.label, n.label);
            rep.check("adjunction i^* i_*", label.clone(), || {
                Ok(same_dim(hom_dim(&rec.i_upper_star(x)?, y)?, hom_dim(x, &rec.i_star(y)?)?))
            });
            rep.check("adjunction i_* i^!", label, || {
                Ok(same_dim(hom_dim(&rec.i_star(y)?, x)?, hom_dim(y, &rec.i_shriek(x)?)?))
            });
        }
        for l in &samples.right {
            let y = &l.module;
            let label = format!("{} | {}", m.label, l.label);
            rep.check("adjunction j_! j^*", label.clone(), || {
                Ok(same_dim(hom_dim(&rec.j_shriek(y)?, x)?, hom_dim(y, &rec.j_upper_star(x)?)?))
            });
            rep.check("adjunction j^* j_*", label, || {
                Ok(same_dim(hom_dim(&rec.j_upper_star(x)?, y)?, hom_dim(x, &rec.j_star(y)?)?))
            });
        }
        // Ker j^* consists of the modules inflated from the left.
        rep.check("Im i_* = Ker j^*", m.label.clone(), || {
            let jm = rec.j_upper_star(x)?;
            let back = rec.i_star(&rec.i_upper_star(x)?)?;
            let in_image = back.dims() == x.dims() && is_isomorphic(&back, x)?.is_some();
            Ok((jm.is_zero() != in_image)
                .then(|| format!("j^* gives {:?}, i_* i^* gives {:?}", jm.dims(), back.dims())))
        });
        for kind in SEQUENCES {
            rep.check("j^* exact", format!("{} {kind}", m.label), || {
                let (f, g) = sequence(x, kind)?;
                exactness(&rec.j_upper_star_map(&f)?, &rec.j_upper_star_map(&g)?)
            });
        }
    }
    for n in &samples.left {
        let y = &n.module;
        rep.check("i^* i_* = id", n.label.clone(), || iso(&rec.i_upper_star(&rec.i_star(y)?)?, y));
        rep.check("i^! i_* = id", n.label.clone(), || iso(&rec.i_shriek(&rec.i_star(y)?)?, y));
        rep.check("Im i_* = Ker j^*", format!("i_* {}", n.label), || Ok(vanishes(&rec.j_upper_star(&rec.i_star(y)?)?)));
        for kind in SEQUENCES {
            rep.check("i_* exact", format!("{} {kind}", n.label), || {
                let (f, g) = sequence(y, kind)?;
                exactness(&rec.i_star_map(&f)?, &rec.i_star_map(&g)?)
            });
        }
    }
    for l in &samples.right {
        let y = &l.module;
        let label = || l.label.clone();
        rep.check("j^* j_! = id", label(), || iso(&rec.j_upper_star(&rec.j_shriek(y)?)?, y));
        rep.check("j^* j_* = id", label(), || iso(&rec.j_upper_star(&rec.j_star(y)?)?, y));
        rep.check("j^* j_!* = id", label(), || iso(&rec.j_upper_star(&rec.intermediate_extension(y)?)?, y));
        rep.check("i^* j_! = 0", label(), || Ok(vanishes(&rec.i_upper_star(&rec.j_shriek(y)?)?)));
        rep.check("i^! j_* = 0", label(), || Ok(vanishes(&rec.i_shriek(&rec.j_star(y)?)?)));
        rep.check("i^* j_!* = 0", label(), || Ok(vanishes(&rec.i_upper_star(&rec.intermediate_extension(y)?)?)));
        rep.check("i^! j_!* = 0", label(), || Ok(vanishes(&rec.i_shriek(&rec.intermediate_extension(y)?)?)));
    }
    rep.checks.sort_by(|a, b| (&a.identity, &a.sample).cmp(&(&b.identity, &b.sample)));
    rep
}

/// Where `i_*` and `j_!*` send the simples of the outer algebras.
#[derive(Debug, Clone)]
pub struct SimplesReport {
    /// `(label, middle vertex)` for every outer simple; `None` when the image
    /// is not simple.
    pub images: Vec<(String, Option<usize>)>,
    pub bijective: bool,
}

fn simple_vertex(m: &Module) -> Option<usize> {
    (m.dim() == 1).then(|| m.dims().iter().position(|&d| d == 1)).flatten()
}

pub fn check_simples(rec: &Recollement) -> Result<SimplesReport> {
    let mut images = Vec::new();
    for (q, name) in rec.left().vertices().iter().enumerate() {
        let m = rec.i_star(&Module::simple(rec.left(), q)?)?;
        images.push((format!("i_* S{name}"), simple_vertex(&m)));
    }
    for (c, name) in rec.right().vertices().iter().enumerate() {
        let m = rec.intermediate_extension(&Module::simple(rec.right(), c)?)?;
        images.push((format!("j_!* S{name}"), simple_vertex(&m)));
    }
    let mut hit: Vec<usize> = images.iter().filter_map(|(_, v)| *v).collect();
    hit.sort_unstable();
    let bijective = hit == (0..rec.middle().vertex_count()).collect::<Vec<_>>();
    Ok(SimplesReport { images, bijective })
}

/// Enumeration completeness of the three algebras at one cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TransferReport {
    pub left: bool,
    pub middle: bool,
    pub right: bool,
}

impl TransferReport {
    /// Completeness in the middle forces it on both sides.
    pub fn passed(&self) -> bool {
        !self.middle || (self.left && self.right)
    }
}

pub fn transfer_check(rec: &Recollement, cap: usize) -> Result<TransferReport> {
    Ok(TransferReport {
        left: enumerate_stt(rec.left(), cap)?.complete,
        middle: enumerate_stt(rec.middle(), cap)?.complete,
        right: enumerate_stt(rec.right(), cap)?.complete,
    })
}
