use std::sync::Arc;

use crate::algebra::{build_path_algebra, BasedAlgebra, Quiver, Relation, RelationSet, DEFAULT_LENGTH_CAP};
use crate::exactla::Scalar;
use crate::rep::Module;

fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::new(
        vs.iter().map(|s| s.to_string()).collect(),
        arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect(),
    )
    .unwrap()
}

pub fn a3() -> Arc<BasedAlgebra> {
    let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
    build_path_algebra("a3", &q, &RelationSet::default(), DEFAULT_LENGTH_CAP).unwrap()
}

pub fn kronecker() -> Arc<BasedAlgebra> {
    let q = quiver(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]);
    build_path_algebra("kronecker", &q, &RelationSet::default(), DEFAULT_LENGTH_CAP).unwrap()
}

pub fn preproj_a3() -> Arc<BasedAlgebra> {
    let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("a'", "2", "1"), ("b", "2", "3"), ("b'", "3", "2")]);
    let ix = |l: &str| q.arrow_index(l).unwrap();
    let one = Scalar::one;
    let rels = RelationSet::new(vec![
        Relation { terms: vec![(one(), vec![ix("a"), ix("a'")])] },
        Relation { terms: vec![(one(), vec![ix("b'"), ix("b")])] },
        Relation { terms: vec![(one(), vec![ix("b"), ix("b'")]), (-one(), vec![ix("a'"), ix("a")])] },
    ]);
    build_path_algebra("preproj_a3", &q, &rels, DEFAULT_LENGTH_CAP).unwrap()
}

pub fn p(a: &Arc<BasedAlgebra>, v: usize) -> Module {
    Module::projective(a, v).unwrap()
}

pub fn s(a: &Arc<BasedAlgebra>, v: usize) -> Module {
    Module::simple(a, v).unwrap()
}

pub fn i(a: &Arc<BasedAlgebra>, v: usize) -> Module {
    Module::injective(a, v).unwrap()
}

pub fn sum(a: &Arc<BasedAlgebra>, ms: &[Module]) -> Module {
    Module::sum_of(ms, a).unwrap()
}
