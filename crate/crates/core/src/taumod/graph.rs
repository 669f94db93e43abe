use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::pair::SttPair;
use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::rep::{Module, ModuleMap};
use crate::structure::{decompose, end_radical_in, Semibrick};

pub const DEFAULT_CAP: usize = 10_000;

/// Support τ-tilting pairs connected by single-summand mutations.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    pub algebra: Arc<BasedAlgebra>,
    pub nodes: Vec<SttPair>,
    /// `(i, j, label)` with `i < j`; the label names the summand of node `i`
    /// that is exchanged.
    pub edges: Vec<(usize, usize, String)>,
    pub complete: bool,
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|(a, b, _)| *a == i || *b == i).count()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|(a, b, _)| {
                if *a == i {
                    Some(*b)
                } else if *b == i {
                    Some(*a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Every node has exactly `n` neighbours.
    pub fn is_regular(&self) -> bool {
        let n = self.algebra.vertex_count();
        (0..self.len()).all(|i| self.neighbors(i).len() == n && self.degree(i) == n)
    }

    pub fn find(&self, pair: &SttPair) -> Result<Option<usize>> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.equivalent(pair)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Semibrick of every node, in node order.
    pub fn semibricks(&self) -> Result<Vec<Semibrick>> {
        self.nodes.iter().map(semibrick_of).collect()
    }
}

/// Total dimension descending, then dimension vector, then certificate.
fn node_order(a: &SttPair, b: &SttPair) -> std::cmp::Ordering {
    b.module()
        .dim()
        .cmp(&a.module().dim())
        .then_with(|| a.dim_vector().cmp(b.dim_vector()))
        .then_with(|| a.id().cmp(b.id()))
}

/// Breadth-first closure of mutation from `(A, 0)`, stopping once more than
/// `cap` nodes would be needed. Nodes are re-validated as they are found and
/// listed in a canonical order.
pub fn enumerate_stt(algebra: &Arc<BasedAlgebra>, cap: usize) -> Result<ExchangeGraph> {
    let n = algebra.vertex_count();
    let start = SttPair::regular(algebra)?;
    let mut nodes = vec![start];
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    buckets.entry(nodes[0].key()).or_default().push(0);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    'search: while let Some(i) = queue.pop_front() {
        for k in 0..n {
            let next = nodes[i].mutate(k)?;
            let mut found = None;
            if let Some(cands) = buckets.get(&next.key()) {
                for &j in cands {
                    if nodes[j].equivalent(&next)? {
                        found = Some(j);
                        break;
                    }
                }
            }
            let j = match found {
                Some(j) => j,
                None => {
                    if nodes.len() >= cap {
                        complete = false;
                        break 'search;
                    }
                    if !next.validate()? {
                        return Err(Error::MutationFailed(format!(
                            "mutation produced an invalid pair {}",
                            next.label()
                        )));
                    }
                    let j = nodes.len();
                    buckets.entry(next.key()).or_default().push(j);
                    nodes.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.insert((i.min(j), i.max(j)));
        }
    }
    // Canonical order.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| node_order(&nodes[a], &nodes[b]));
    let mut rank = vec![0; nodes.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut out_edges: Vec<(usize, usize, String)> = edges
        .into_iter()
        .map(|(a, b)| {
            let (ra, rb) = (rank[a], rank[b]);
            (ra.min(rb), ra.max(rb), String::new())
        })
        .collect();
    out_edges.sort();
    let sorted = order.into_iter().map(|i| nodes[i].clone()).collect();
    let mut graph = ExchangeGraph { algebra: algebra.clone(), nodes: sorted, edges: out_edges, complete };
    fill_labels(&mut graph);
    Ok(graph)
}

/// Labels each edge with the summand of its first node that is exchanged.
fn fill_labels(g: &mut ExchangeGraph) {
    for e in g.edges.iter_mut() {
        let (a, b) = (&g.nodes[e.0], &g.nodes[e.1]);
        // The summand of `a` that has no isomorphic partner in `b`.
        let mut label = None;
        for (k, x) in a.summands().iter().enumerate() {
            let kept = b
                .summands()
                .iter()
                .any(|y| x.dims() == y.dims() && crate::rep::indecomposables_isomorphic(x, y).ok().flatten().is_some());
            if !kept {
                label = Some(a.position_label(k));
            }
        }
        for (j, v) in a.projective_vertices().iter().enumerate() {
            if !b.projective_vertices().contains(v) {
                label = Some(a.position_label(a.summands().len() + j));
            }
        }
        e.2 = label.unwrap_or_default();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Yes,
    /// No conclusion within the cap.
    Unknown,
}

pub fn is_tau_tilting_finite(algebra: &Arc<BasedAlgebra>, cap: usize) -> Result<Finiteness> {
    Ok(if enumerate_stt(algebra, cap)?.complete { Finiteness::Yes } else { Finiteness::Unknown })
}

/// `ind(M / rad_E M)` for `E = End(M)`.
pub fn semibrick_of(pair: &SttPair) -> Result<Semibrick> {
    let m = pair.module();
    if m.is_zero() {
        return Ok(Semibrick::empty());
    }
    let end = crate::rep::hom_space(m, m)?;
    let rad = end_radical_in(&end)?;
    let mut subs: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::zeros(0, d)).collect();
    for r in 0..rad.rows() {
        let f: ModuleMap = end.combination(rad.row(r));
        for (v, s) in subs.iter_mut().enumerate() {
            *s = s.vstack(f.block(v));
        }
    }
    let (q, _) = m.quotient(&subs)?;
    let bricks: Vec<Module> = decompose(&q)?.summands.into_iter().map(|s| s.module).collect();
    Semibrick::new(bricks)
}

/// The node of a complete graph whose semibrick is `s`.
pub fn stt_of_semibrick(s: &Semibrick, graph: &ExchangeGraph) -> Result<SttPair> {
    if !graph.complete {
        return Err(Error::IncompleteGraph);
    }
    let mut hits = Vec::new();
    for node in &graph.nodes {
        if semibrick_of(node)?.equivalent(s)? {
            hits.push(node.clone());
        }
    }
    match hits.len() {
        0 => Err(Error::NoMatch),
        1 => Ok(hits.pop().unwrap()),
        k => Err(Error::AmbiguousMatch(k)),
    }
}
