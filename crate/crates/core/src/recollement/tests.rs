use super::*;
use crate::algebra::corner_algebra;
use crate::rep::is_isomorphic;
use crate::structure::Semibrick;
use crate::taumod::{enumerate_stt, semibrick_of, SttPair, DEFAULT_CAP};
use crate::testutil::{a3, kronecker, p, preproj_a3, s};

fn a3_rec() -> Recollement {
    Recollement::new(&a3(), &[0, 1]).unwrap()
}

fn preproj_rec() -> Recollement {
    Recollement::new(&preproj_a3(), &[0, 2]).unwrap()
}

fn iso(x: &Module, y: &Module) -> bool {
    x.dims() == y.dims() && is_isomorphic(x, y).unwrap().is_some()
}

fn sb(ms: Vec<Module>) -> Semibrick {
    Semibrick::new(ms).unwrap()
}

#[test]
fn outer_functors() {
    let r = a3_rec();
    let b = r.middle().clone();
    let l = r.left().clone();
    let c = r.right().clone();
    assert_eq!(r.i_star(&s(&l, 0)).unwrap(), s(&b, 2));
    assert!(r.i_star(&Module::zero(l.clone())).unwrap().is_zero());
    assert!(r.i_upper_star(&p(&b, 0)).unwrap().is_zero());
    assert!(iso(&r.i_upper_star(&s(&b, 2)).unwrap(), &s(&l, 0)));
    assert!(iso(&r.i_shriek(&s(&b, 2)).unwrap(), &s(&l, 0)));
    assert!(iso(&r.i_shriek(&p(&b, 0)).unwrap(), &s(&l, 0)));
    assert!(iso(&r.j_upper_star(&p(&b, 1)).unwrap(), &p(&c, 1)));
    assert!(r.j_upper_star(&s(&b, 2)).unwrap().is_zero());
    assert!(r.j_upper_star(&r.i_star(&s(&l, 0)).unwrap()).unwrap().is_zero());
}

#[test]
fn inner_functors() {
    let r = a3_rec();
    let b = r.middle().clone();
    let c = r.right().clone();
    assert!(iso(&r.j_shriek(&p(&c, 1)).unwrap(), &p(&b, 1)));
    assert!(iso(&r.j_shriek(&p(&c, 0)).unwrap(), &p(&b, 0)));
    assert_eq!(r.j_shriek(&s(&c, 1)).unwrap().dims(), [0, 1, 1]);
    assert!(r.j_shriek(&Module::zero(c.clone())).unwrap().is_zero());
    assert_eq!(r.j_star(&s(&c, 1)).unwrap().dims(), [0, 1, 0]);
    assert!(r.j_star(&Module::zero(c.clone())).unwrap().is_zero());
    assert!(iso(&r.intermediate_extension(&s(&c, 1)).unwrap(), &s(&b, 1)));
    assert!(iso(&r.intermediate_extension(&s(&c, 0)).unwrap(), &s(&b, 0)));
}

#[test]
fn j_star_is_dual_of_j_shriek_over_the_opposite() {
    for (r, subset) in [(a3_rec(), vec![0, 1]), (preproj_rec(), vec![0, 2])] {
        let op = Recollement::new(&r.middle().opposite(), &subset).unwrap();
        let c = r.right();
        for v in 0..c.vertex_count() {
            for n in [s(c, v), p(c, v), crate::testutil::i(c, v)] {
                let dual = n.dualize().rebase(op.right()).unwrap();
                let oracle = op.j_shriek(&dual).unwrap().dualize().rebase(r.middle()).unwrap();
                assert!(iso(&r.j_star(&n).unwrap(), &oracle));
            }
        }
    }
}

#[test]
fn j_upper_star_restricts_dimensions() {
    let r = preproj_rec();
    for v in 0..3 {
        let m = p(r.middle(), v);
        let expected: Vec<usize> = [0, 2].iter().map(|&w| m.dim_at(w)).collect();
        assert_eq!(r.j_upper_star(&m).unwrap().dims(), expected);
    }
}

#[test]
fn gluing_examples() {
    let r = a3_rec();
    let (b, l, c) = (r.middle().clone(), r.left().clone(), r.right().clone());
    let g = glue_semibricks(&r, &sb(vec![s(&l, 0)]), &sb(vec![s(&c, 0), s(&c, 1)])).unwrap();
    assert!(g.equivalent(&sb(vec![s(&b, 0), s(&b, 1), s(&b, 2)])).unwrap());
    assert!(glue_semibricks(&r, &Semibrick::empty(), &Semibrick::empty()).unwrap().is_empty());

    let r4 = preproj_rec();
    let (b, l, c) = (r4.middle().clone(), r4.left().clone(), r4.right().clone());
    let g = glue_semibricks(&r4, &sb(vec![s(&l, 0)]), &sb(vec![s(&c, 0), s(&c, 1)])).unwrap();
    assert!(g.equivalent(&sb(vec![s(&b, 0), s(&b, 1), s(&b, 2)])).unwrap());
}

#[test]
fn variant_examples() {
    let r = a3_rec();
    let (b, l, c) = (r.middle().clone(), r.left().clone(), r.right().clone());
    let out = glue_variant(&r, &sb(vec![s(&l, 0)]), &sb(vec![s(&c, 1)]), GlueMode::Shriek).unwrap();
    match out {
        VariantOutcome::NotSemibrick { first, second, hom_dim } => {
            let mut dims = [first.dims().to_vec(), second.dims().to_vec()];
            dims.sort();
            assert_eq!(dims, [vec![0, 0, 1], vec![0, 1, 1]]);
            assert_eq!(hom_dim, 1);
        }
        VariantOutcome::Semibrick(_) => panic!("expected a witness"),
    }
    for v in 0..2 {
        let out = glue_variant(&r, &Semibrick::empty(), &sb(vec![s(&c, v)]), GlueMode::Shriek).unwrap();
        assert!(out.is_semibrick());
    }
    let out = glue_variant(&r, &sb(vec![s(&l, 0)]), &sb(vec![s(&c, 0)]), GlueMode::Star).unwrap();
    match out {
        VariantOutcome::Semibrick(x) => assert!(x.equivalent(&sb(vec![s(&b, 2), s(&b, 0)])).unwrap()),
        VariantOutcome::NotSemibrick { .. } => panic!("expected a semibrick"),
    }
}

#[test]
fn glue_stt_examples() {
    let r = a3_rec();
    let (b, l, c) = (r.middle().clone(), r.left().clone(), r.right().clone());
    let graph = enumerate_stt(&b, DEFAULT_CAP).unwrap();
    let left = SttPair::regular(&l).unwrap();
    let right = SttPair::from_parts(&c, vec![p(&c, 0), s(&c, 1)], vec![]).unwrap();
    let glued = glue_stt(&r, &left, &right, &graph).unwrap();
    assert!(glued.equivalent(&SttPair::regular(&b).unwrap()).unwrap());
    let glued = glue_stt(&r, &SttPair::zero(&l).unwrap(), &SttPair::zero(&c).unwrap(), &graph).unwrap();
    assert!(glued.equivalent(&SttPair::zero(&b).unwrap()).unwrap());

    let r4 = preproj_rec();
    let (b, l, c) = (r4.middle().clone(), r4.left().clone(), r4.right().clone());
    let graph = enumerate_stt(&b, DEFAULT_CAP).unwrap();
    let left = SttPair::regular(&l).unwrap();
    let right = SttPair::regular(&c).unwrap();
    let glued = glue_stt(&r4, &left, &right, &graph).unwrap();
    assert!(glued.equivalent(&SttPair::regular(&b).unwrap()).unwrap());
    assert_eq!(glued.module().dims(), [3, 4, 3]);
}

#[test]
fn glue_table_counts() {
    let t = glue_table(&a3_rec(), DEFAULT_CAP, false).unwrap();
    assert_eq!((t.left.len(), t.right.len(), t.middle.as_ref().unwrap().len()), (2, 5, 14));
    assert_eq!(t.rows.len(), 10);
    assert_eq!(t.glued_count(), 10);
    assert!(t.is_injective().unwrap());
    let t = glue_table(&preproj_rec(), DEFAULT_CAP, false).unwrap();
    assert_eq!((t.left.len(), t.right.len()), (2, 6));
    assert_eq!(t.glued_count(), 12);
    assert!(t.is_injective().unwrap());
}

#[test]
fn kronecker_semibricks() {
    let r = Recollement::new(&kronecker(), &[0]).unwrap();
    let t = glue_table(&r, 100, true).unwrap();
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.nonempty_semibricks(), 3);
    assert!(t.is_injective().unwrap());
    assert!(t.middle.is_none());
    assert!(matches!(glue_table(&r, 100, false), Err(crate::Error::IncompleteGraph)));
}

#[test]
fn verification_passes_on_examples() {
    for r in [a3_rec(), preproj_rec()] {
        let samples = default_samples(&r, DEFAULT_CAP).unwrap();
        let report = verify_recollement(&r, &samples);
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(report.checks.len() > 50);
        assert!(check_simples(&r).unwrap().bijective);
        assert!(transfer_check(&r, DEFAULT_CAP).unwrap().passed());
    }
}

#[test]
fn verification_catches_corrupted_data() {
    let r = a3_rec();
    let mut bad_corner = corner_algebra(&preproj_a3(), &[0, 1]).unwrap();
    bad_corner.embedding = r.corner_data().embedding.clone();
    bad_corner.embedding.push(0);
    assert!(Recollement::from_parts(r.middle().clone(), vec![0, 1], r.quotient_data().clone(), bad_corner).is_err());

    let mut data = r.quotient_data().clone();
    let e3 = r.middle().basis_index("e3").unwrap();
    data.projection[(e3, 0)] = crate::exactla::Scalar::from_int(2);
    let broken = Recollement::from_parts(r.middle().clone(), vec![0, 1], data, r.corner_data().clone()).unwrap();
    let samples = default_samples(&r, DEFAULT_CAP).unwrap();
    let report = verify_recollement(&broken, &samples);
    assert!(!report.passed());
    assert!(report.failures().all(|c| c.witness.is_some()));
}

#[test]
fn semibricks_are_preserved() {
    let r = preproj_rec();
    let g = enumerate_stt(r.right(), DEFAULT_CAP).unwrap();
    for node in &g.nodes {
        let s = semibrick_of(node).unwrap();
        let images: Vec<Module> = s.bricks().iter().map(|x| r.intermediate_extension(x).unwrap()).collect();
        assert!(crate::structure::is_semibrick(&images).unwrap());
        let shriek: Vec<Module> = s.bricks().iter().map(|x| r.j_shriek(x).unwrap()).collect();
        assert!(crate::structure::is_semibrick(&shriek).unwrap());
    }
}
