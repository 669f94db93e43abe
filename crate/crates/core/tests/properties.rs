use std::sync::Arc;

use proptest::prelude::*;
use tauglue::algebra::{corner_algebra, quotient_algebra, BasedAlgebra};
use tauglue::exactla::{Matrix, Scalar};
use tauglue::io::{parse_algebra_file, ModuleData};
use tauglue::recollement::Recollement;
use tauglue::rep::{hom_basis_direct, hom_dim, is_isomorphic, minimal_presentation, projective_cover, Module};
use tauglue::structure::{brick_status, decompose, end_radical, is_brick, is_semibrick, BrickStatus};
use tauglue::taumod::{ar_translate, presentation_criterion};
use tauglue::Error;

fn algebra(text: &str) -> Arc<BasedAlgebra> {
    parse_algebra_file(text).unwrap().build(64).unwrap()
}

/// Quiver on `n` vertices with the given arrows, truncated at path length `len`.
fn truncated(n: usize, arrows: &[(usize, usize)], len: usize) -> String {
    let mut text = String::from("algebra t\nvertices");
    for v in 1..=n {
        text += &format!(" {v}");
    }
    text.push('\n');
    for (k, (s, t)) in arrows.iter().enumerate() {
        text += &format!("arrow x{k} {} {}\n", s + 1, t + 1);
    }
    let mut paths: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..len {
        paths = paths
            .iter()
            .flat_map(|p| {
                let end = arrows[*p.last().unwrap()].1;
                (0..arrows.len()).filter(move |&a| arrows[a].0 == end).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    for p in paths {
        let terms: Vec<String> = p.iter().map(|a| format!("x{a}")).collect();
        text += &format!("rel {}\n", terms.join(" * "));
    }
    text
}

fn truncated_algebra() -> impl Strategy<Value = (Arc<BasedAlgebra>, Vec<usize>)> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..=3),
                2usize..=3,
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, arrows, len, pick)| {
            let subset: Vec<usize> = (0..n).filter(|&v| pick[v]).collect();
            (algebra(&truncated(n, &arrows, len)), subset)
        })
}

const A3: &str = "algebra a3\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\n";
const KRONECKER: &str = "algebra kronecker\nvertices 1 2\narrow a 1 2\narrow b 1 2\n";

fn block(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2i64..=2, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(Scalar::from_int).collect()))
}

/// Random representation of a quiver without relations, given as
/// `(label, source, target)` arrows.
fn representation(
    algebra: Arc<BasedAlgebra>,
    arrows: &'static [(&'static str, usize, usize)],
    dims: impl Strategy<Value = Vec<usize>>,
) -> impl Strategy<Value = Module> {
    dims.prop_flat_map(move |dims| {
        let blocks: Vec<_> = arrows.iter().map(|&(_, s, t)| block(dims[s], dims[t])).collect();
        let algebra = algebra.clone();
        (Just(dims), blocks).prop_map(move |(dims, blocks)| {
            let actions = arrows.iter().zip(blocks).map(|(&(l, _, _), m)| (l.to_string(), m)).collect();
            ModuleData { dims, actions }.to_module(&algebra).unwrap()
        })
    })
}

fn a3_module() -> impl Strategy<Value = Module> {
    representation(algebra(A3), &[("a", 0, 1), ("b", 1, 2)], proptest::collection::vec(0usize..=2, 3))
}

fn kronecker_module() -> impl Strategy<Value = Module> {
    representation(algebra(KRONECKER), &[("a", 0, 1), ("b", 0, 1)], proptest::collection::vec(0usize..=2, 2))
}

/// Kronecker modules with a vertex of dimension at most one. Larger ones can
/// have indecomposable summands whose endomorphism ring is a proper field
/// extension of the rationals, which decomposition does not handle.
fn split_kronecker_module() -> impl Strategy<Value = Module> {
    let dims = (0usize..=2, 0usize..=2).prop_filter("split", |(x, y)| x.min(y) <= &1).prop_map(|(x, y)| vec![x, y]);
    representation(algebra(KRONECKER), &[("a", 0, 1), ("b", 0, 1)], dims)
}

fn any_module() -> impl Strategy<Value = Module> {
    prop_oneof![a3_module(), split_kronecker_module()]
}

#[test]
fn non_split_module_is_flagged() {
    let kronecker = algebra(KRONECKER);
    let int = |v: &[i64]| Matrix::from_vec(2, 2, v.iter().map(|&x| Scalar::from_int(x)).collect());
    let m = ModuleData {
        dims: vec![2, 2],
        actions: [("a".to_string(), int(&[1, 0, 0, 1])), ("b".to_string(), int(&[0, 2, 1, 0]))].into(),
    }
    .to_module(&kronecker)
    .unwrap();
    assert_eq!(hom_dim(&m, &m).unwrap(), 2);
    assert_eq!(brick_status(&m).unwrap(), BrickStatus::Indeterminate);
    assert!(!is_brick(&m).unwrap());
    assert!(matches!(decompose(&m), Err(Error::DecompositionStuck(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_algebras_are_associative((a, _) in truncated_algebra()) {
        let n = a.dim();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                let ij = a.multiply(&unit(i), &unit(j));
                for k in 0..n {
                    let jk = a.multiply(&unit(j), &unit(k));
                    prop_assert_eq!(a.multiply(&ij, &unit(k)), a.multiply(&unit(i), &jk));
                }
            }
        }
    }

    #[test]
    fn radical_is_spanned_by_arrows((a, _) in truncated_algebra()) {
        prop_assert_eq!(a.algebra_radical().unwrap().rows(), a.dim() - a.vertex_count());
    }

    #[test]
    fn corner_and_quotient_dimensions((a, subset) in truncated_algebra()) {
        let all: Vec<usize> = (0..a.vertex_count()).collect();
        let full = corner_algebra(&a, &all).unwrap();
        prop_assert_eq!(full.algebra.labels(), a.labels());
        prop_assume!(!subset.is_empty() && subset.len() < a.vertex_count());
        let q = quotient_algebra(&a, &subset).unwrap();
        prop_assert_eq!(q.algebra.dim() + q.ideal_dim, a.dim());
        let c = corner_algebra(&a, &subset).unwrap();
        let twice = corner_algebra(&c.algebra, &(0..subset.len()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(twice.algebra.labels(), c.algebra.labels());
    }

    #[test]
    fn hom_from_projectives_counts_vertex_components(m in any_module()) {
        for v in 0..m.vertex_count() {
            let p = Module::projective(m.algebra(), v).unwrap();
            prop_assert_eq!(hom_dim(&p, &m).unwrap(), m.dims()[v]);
        }
    }

    #[test]
    fn hom_routes_agree(m in any_module(), n in kronecker_module()) {
        let n = if m.algebra().same_as(n.algebra()) { n } else { m.clone() };
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_basis_direct(&m, &n).unwrap().len());
    }

    #[test]
    fn duality_reverses_hom(m in kronecker_module(), n in kronecker_module()) {
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.dualize(), &m.dualize()).unwrap());
    }

    #[test]
    fn kernel_and_image_dimensions(m in a3_module(), n in a3_module()) {
        for f in hom_basis_direct(&m, &n).unwrap() {
            prop_assert_eq!(f.kernel().0.dim() + f.image().0.dim(), m.dim());
        }
    }

    #[test]
    fn covers_are_minimal_and_presentations_exact(m in any_module()) {
        let cover = projective_cover(&m).unwrap();
        let (_, inc) = cover.map.kernel();
        let rad = cover.projective.module.radical_subspaces();
        for (v, k) in inc.image_subspaces().iter().enumerate() {
            prop_assert_eq!(rad[v].vstack(k).rank(), rad[v].rank());
        }
        let pres = minimal_presentation(&m).unwrap();
        let (coker, _) = pres.d.cokernel();
        prop_assert!(is_isomorphic(&coker, &m).unwrap().is_some());
    }

    #[test]
    fn decomposition_reassembles(m in any_module()) {
        let d = decompose(&m).unwrap();
        let total: usize = d.summands.iter().map(|s| s.module.dim() * s.multiplicity).sum();
        prop_assert_eq!(total, m.dim());
        for s in &d.summands {
            let local = hom_dim(&s.module, &s.module).unwrap() - end_radical(&s.module).unwrap().rows();
            prop_assert_eq!(local, 1);
        }
        let parts: Vec<Module> = d.pieces.iter().map(|p| p.module.clone()).collect();
        let back = Module::sum_of(&parts, m.algebra()).unwrap();
        prop_assert!(is_isomorphic(&back, &m).unwrap().is_some());
        if is_brick(&m).unwrap() {
            prop_assert!(is_semibrick(std::slice::from_ref(&m)).unwrap());
        }
    }

    #[test]
    fn tau_rigidity_criteria_agree(m in any_module()) {
        let tau = ar_translate(&m).unwrap();
        prop_assert_eq!(hom_dim(&m, &tau).unwrap() == 0, presentation_criterion(&m).unwrap());
    }

    #[test]
    fn recollement_adjunctions(m in a3_module(), big in block(2, 2), (d1, d2) in (0usize..=2, 0usize..=2)) {
        let rec = Recollement::new(m.algebra(), &[0, 1]).unwrap();
        let a = big.block(0, 0, d1, d2);
        let n = ModuleData { dims: vec![d1, d2], actions: [("a".to_string(), a)].into() }
            .to_module(rec.right())
            .unwrap();
        let jm = rec.j_upper_star(&m).unwrap();
        prop_assert_eq!(hom_dim(&rec.j_shriek(&n).unwrap(), &m).unwrap(), hom_dim(&n, &jm).unwrap());
        prop_assert_eq!(hom_dim(&jm, &n).unwrap(), hom_dim(&m, &rec.j_star(&n).unwrap()).unwrap());
        let s = Module::simple(rec.left(), 0).unwrap();
        prop_assert_eq!(
            hom_dim(&rec.i_upper_star(&m).unwrap(), &s).unwrap(),
            hom_dim(&m, &rec.i_star(&s).unwrap()).unwrap()
        );
        prop_assert_eq!(
            hom_dim(&rec.i_star(&s).unwrap(), &m).unwrap(),
            hom_dim(&s, &rec.i_shriek(&m).unwrap()).unwrap()
        );
        let back = rec.j_upper_star(&rec.intermediate_extension(&n).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &n).unwrap().is_some());
    }
}
