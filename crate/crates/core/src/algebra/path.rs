//! Path algebras of finite quivers modulo two-sided ideals.
//!
//! Paths compose left to right: `p * q` walks `p` and then `q`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{BasedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex '{v}'")));
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let idx = |v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow endpoint '{v}' is not a vertex")))
        };
        let mut labels = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            if !labels.insert(label.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow '{label}'")));
            }
            if vertices.contains(&label) {
                return Err(Error::InvalidQuiver(format!("arrow '{label}' shares its label with a vertex")));
            }
            out.push(Arrow { source: idx(&s)?, target: idx(&t)?, label });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }
}

/// A path: either the trivial path at a vertex or a nonempty arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// (length, lexicographic arrow labels), trivial paths by vertex order.
    fn cmp_in(&self, other: &Path, q: &Quiver) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            if self.is_empty() {
                return self.source.cmp(&other.source);
            }
            let l = self.arrows.iter().map(|&a| &q.arrows[a].label);
            let r = other.arrows.iter().map(|&a| &q.arrows[a].label);
            l.cmp(r)
        })
    }
}

/// A formal linear combination of paths of length at least two, all with a
/// common source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new(relations: Vec<Relation>) -> Self {
        RelationSet { relations }
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    fn validate(&self, q: &Quiver) -> Result<Vec<Vec<(Scalar, Path)>>> {
        self.relations
            .iter()
            .map(|rel| {
                if rel.terms.is_empty() {
                    return Err(Error::InvalidRelation("empty relation".into()));
                }
                let mut ends = None;
                let mut terms = Vec::new();
                for (c, seq) in &rel.terms {
                    if seq.len() < 2 {
                        return Err(Error::InvalidRelation(
                            "every path in a relation must have length at least 2".into(),
                        ));
                    }
                    for w in seq.windows(2) {
                        if q.arrows[w[0]].target != q.arrows[w[1]].source {
                            return Err(Error::InvalidRelation(format!(
                                "arrows {} and {} do not compose",
                                q.arrows[w[0]].label, q.arrows[w[1]].label
                            )));
                        }
                    }
                    let p = Path {
                        source: q.arrows[seq[0]].source,
                        target: q.arrows[*seq.last().unwrap()].target,
                        arrows: seq.clone(),
                    };
                    match ends {
                        None => ends = Some((p.source, p.target)),
                        Some(st) if st != (p.source, p.target) => {
                            return Err(Error::InvalidRelation("paths in a relation have different endpoints".into()))
                        }
                        _ => {}
                    }
                    if !c.is_zero() {
                        terms.push((c.clone(), p));
                    }
                }
                Ok(terms)
            })
            .collect()
    }
}

/// All paths of length at most `max_len`, sorted by (length, lex).
fn paths_up_to(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { source: p.source, target: q.arrows[a].target, arrows });
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| a.cmp_in(b, q));
    all
}

/// Truncated path algebra `KQ / J^{max_len+1}` together with the ideal
/// generated by the relations, as a reduced row-echelon form whose columns
/// run over paths in reverse basis order.
struct Truncation {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Matrix,
    pivots: Vec<usize>,
}

impl Truncation {
    fn new(q: &Quiver, rels: &[Vec<(Scalar, Path)>], max_len: usize) -> Self {
        let paths = paths_up_to(q, max_len);
        let n = paths.len();
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // Column c of the echelon form is path n - 1 - c.
        let col = |i: usize| n - 1 - i;
        let mut rows = Vec::new();
        for rel in rels {
            for left in &paths {
                for right in &paths {
                    let mut row = vec![Scalar::zero(); n];
                    let mut any = false;
                    for (c, p) in rel {
                        let Some(lp) = left.concat(p) else { continue };
                        let Some(full) = lp.concat(right) else { continue };
                        if let Some(&i) = index.get(&full) {
                            row[col(i)] += c;
                            any = true;
                        }
                    }
                    if any && row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let (r, pivots) = Matrix::from_rows(n, rows).rref();
        let ideal = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Truncation { paths, index, ideal, pivots }
    }

    fn path_in_ideal(&self, i: usize) -> bool {
        self.pivots.contains(&(self.paths.len() - 1 - i))
    }
}

/// Builds `KQ/I` for the ideal generated by `rels`.
///
/// For `L = 1, 2, ...` the algebra is truncated at `J^{L+1}`; once every path
/// of length `L` lies in `I + J^{L+1}` the ideal contains `J^L` and the
/// truncation is exact.
pub fn build_path_algebra(name: &str, q: &Quiver, rels: &RelationSet, length_cap: usize) -> Result<Arc<BasedAlgebra>> {
    if length_cap == 0 {
        return Err(Error::InvalidRelation("length cap must be at least 1".into()));
    }
    let rels = rels.validate(q)?;
    let mut stable = None;
    for len in 1..=length_cap {
        let t = Truncation::new(q, &rels, len);
        let top: Vec<usize> = (0..t.paths.len()).filter(|&i| t.paths[i].len() == len).collect();
        if top.iter().all(|&i| t.path_in_ideal(i)) {
            stable = Some(t);
            break;
        }
    }
    let t = stable.ok_or(Error::NotFiniteDimensional(length_cap))?;

    let n = t.paths.len();
    let basis: Vec<usize> = (0..n).filter(|&i| !t.path_in_ideal(i)).collect();
    let position: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    // Normal form of a path: subtract the echelon row of each pivot it hits.
    let pivot_row: HashMap<usize, usize> = t.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let reduce = |path: usize| -> SparseVec {
        let c = n - 1 - path;
        if let Some(&r) = pivot_row.get(&c) {
            let row = t.ideal.row(r);
            let mut out: SparseVec = (0..n)
                .filter(|&cc| cc != c && !row[cc].is_zero())
                .map(|cc| (position[&(n - 1 - cc)], -row[cc].clone()))
                .collect();
            out.sort_by_key(|(k, _)| *k);
            out
        } else {
            vec![(position[&path], Scalar::one())]
        }
    };

    let dim = basis.len();
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for (i, &pi) in basis.iter().enumerate() {
        for (j, &pj) in basis.iter().enumerate() {
            if let Some(p) = t.paths[pi].concat(&t.paths[pj]) {
                if let Some(&k) = t.index.get(&p) {
                    mult[i][j] = reduce(k);
                }
            }
        }
    }
    let labels: Vec<String> = basis.iter().map(|&i| t.paths[i].label(q)).collect();
    let idems: Vec<usize> = (0..q.vertices.len()).map(|v| position[&t.index[&Path::trivial(v)]]).collect();
    BasedAlgebra::new(name, q.vertices.clone(), labels, mult, idems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vs.iter().map(|s| s.to_string()).collect(),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect(),
        )
        .unwrap()
    }

    fn rel(q: &Quiver, terms: &[(i64, &[&str])]) -> Relation {
        Relation {
            terms: terms
                .iter()
                .map(|(c, p)| (Scalar::from_int(*c), p.iter().map(|a| q.arrow_index(a).unwrap()).collect()))
                .collect(),
        }
    }

    #[test]
    fn linear_a3() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        let a = build_path_algebra("a3", &q, &RelationSet::default(), DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(a.labels(), ["e1", "e2", "e3", "a", "b", "a*b"]);
        let ai = a.basis_index("a").unwrap();
        let bi = a.basis_index("b").unwrap();
        assert_eq!(a.product(ai, bi), &vec![(5, Scalar::one())]);
        assert!(a.product(bi, ai).is_empty());
        assert_eq!(a.source(ai), 0);
        assert_eq!(a.target(ai), 1);
    }

    #[test]
    fn free_loop_is_rejected() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let err = build_path_algebra("loop", &q, &RelationSet::default(), 10).unwrap_err();
        assert_eq!(err, Error::NotFiniteDimensional(10));
    }

    #[test]
    fn truncated_loop() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let r = RelationSet::new(vec![rel(&q, &[(1, &["x", "x", "x"])])]);
        let a = build_path_algebra("loop3", &q, &r, 10).unwrap();
        assert_eq!(a.labels(), ["e1", "x", "x*x"]);
    }

    #[test]
    fn mixed_endpoints_rejected() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "2")]);
        let r = RelationSet::new(vec![rel(&q, &[(1, &["a", "b"]), (1, &["a", "c"])])]);
        assert!(matches!(build_path_algebra("x", &q, &r, 10), Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn commutative_square() {
        let q = quiver(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]);
        let r = RelationSet::new(vec![rel(&q, &[(1, &["a", "b"]), (-1, &["c", "d"])])]);
        let a = build_path_algebra("sq", &q, &r, 10).unwrap();
        assert_eq!(a.dim(), 9);
        // c*d is eliminated in favour of a*b.
        assert!(a.basis_index("a*b").is_some());
        let c = a.basis_index("c").unwrap();
        let d = a.basis_index("d").unwrap();
        assert_eq!(a.product(c, d), &vec![(a.basis_index("a*b").unwrap(), Scalar::one())]);
    }
}
