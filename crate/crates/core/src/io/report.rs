//! Serializable reports and their JSON, CSV and DOT renderings.
//!
//! A report is a set of top-level fields plus, for most reports, a list of
//! rows. The CSV form has one line per row with the top-level fields repeated;
//! nested values are written as JSON inside the cell, plain strings verbatim.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::algebra_file::AlgebraFile;
use super::module_json::ModuleData;
use crate::algebra::{corner_algebra, quotient_algebra, BasedAlgebra};
use crate::error::{Error, Result};
use crate::recollement::{
    check_simples, transfer_check, GlueTable, Recollement, SimplesReport, TransferReport, VerificationReport,
};
use crate::rep::{hom_dim, Module};
use crate::structure::{brick_status, is_brick, is_indecomposable, BrickStatus, Semibrick};
use crate::taumod::{ar_translate, is_tau_rigid, presentation_criterion, semibrick_of, ExchangeGraph};

/// A module as it appears in reports: display label, dimension vector and the
/// full action matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub label: String,
    pub dims: Vec<usize>,
    pub data: ModuleData,
}

impl ModuleEntry {
    pub fn new(m: &Module) -> Self {
        ModuleEntry { label: m.stacked_label(), dims: m.dims().to_vec(), data: ModuleData::from_module(m) }
    }
}

fn entries(s: &Semibrick) -> Vec<ModuleEntry> {
    s.bricks().iter().map(ModuleEntry::new).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub algebra: String,
    pub vertices: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub radical_dim: usize,
    pub idempotent: Option<Vec<String>>,
    pub corner_dim: Option<usize>,
    pub corner_basis: Option<Vec<String>>,
    pub quotient_dim: Option<usize>,
    pub quotient_basis: Option<Vec<String>>,
}

pub fn check_report(file: &AlgebraFile, algebra: &std::sync::Arc<BasedAlgebra>) -> Result<CheckReport> {
    let mut out = CheckReport {
        algebra: algebra.name().to_string(),
        vertices: algebra.vertices().to_vec(),
        dim: algebra.dim(),
        basis: algebra.labels().to_vec(),
        radical_dim: algebra.algebra_radical()?.rows(),
        idempotent: file.idempotent.clone(),
        corner_dim: None,
        corner_basis: None,
        quotient_dim: None,
        quotient_basis: None,
    };
    if let Some(subset) = file.idempotent_vertices() {
        let c = corner_algebra(algebra, &subset)?;
        let q = quotient_algebra(algebra, &subset)?;
        out.corner_dim = Some(c.algebra.dim());
        out.corner_basis = Some(c.algebra.labels().to_vec());
        out.quotient_dim = Some(q.algebra.dim());
        out.quotient_basis = Some(q.algebra.labels().to_vec());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    /// Index of the neighbouring node.
    pub to: usize,
    /// Summand of this node that is exchanged.
    pub summand: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SttNode {
    pub index: usize,
    pub id: String,
    pub label: String,
    pub dims: Vec<usize>,
    pub summands: Vec<ModuleEntry>,
    pub projectives: Vec<String>,
    pub semibrick: Vec<ModuleEntry>,
    pub neighbors: Vec<usize>,
    /// Edges to neighbours of larger index.
    pub exchanges: Vec<Exchange>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SttReport {
    pub algebra: String,
    pub cap: usize,
    pub complete: bool,
    pub node_count: usize,
    pub edge_count: usize,
    pub regular: bool,
    pub nodes: Vec<SttNode>,
}

/// Every node is re-validated before it is reported.
pub fn stt_report(graph: &ExchangeGraph, cap: usize) -> Result<SttReport> {
    let a = &graph.algebra;
    let mut nodes = Vec::with_capacity(graph.len());
    for (i, node) in graph.nodes.iter().enumerate() {
        if !node.validate()? {
            return Err(Error::MutationFailed(format!("node {i} ({}) failed re-validation", node.label())));
        }
        let exchanges = graph
            .edges
            .iter()
            .filter(|(x, _, _)| *x == i)
            .map(|(_, y, l)| Exchange { to: *y, summand: l.clone() })
            .collect();
        nodes.push(SttNode {
            index: i,
            id: node.id().to_string(),
            label: node.label(),
            dims: node.dim_vector().to_vec(),
            summands: node.summands().iter().map(ModuleEntry::new).collect(),
            projectives: node.projective_vertices().iter().map(|&v| a.vertices()[v].clone()).collect(),
            semibrick: entries(&semibrick_of(node)?),
            neighbors: graph.neighbors(i),
            exchanges,
        });
    }
    Ok(SttReport {
        algebra: a.name().to_string(),
        cap,
        complete: graph.complete,
        node_count: graph.len(),
        edge_count: graph.edges.len(),
        regular: graph.is_regular(),
        nodes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueEntry {
    pub left: usize,
    pub left_label: String,
    pub right: usize,
    pub right_label: String,
    pub middle: Option<usize>,
    pub middle_label: Option<String>,
    pub middle_dims: Option<Vec<usize>>,
    pub semibrick: Vec<ModuleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueReport {
    pub algebra: String,
    pub idempotent: Vec<String>,
    pub cap: usize,
    pub semibricks_only: bool,
    pub left_count: usize,
    pub right_count: usize,
    pub middle_count: Option<usize>,
    /// Distinct middle nodes reached; absent in semibrick-only mode.
    pub glued_count: Option<usize>,
    /// Pairwise non-isomorphic glued semibricks, the empty one included.
    pub glued_semibricks: usize,
    pub nonempty_semibricks: usize,
    pub injective: bool,
    pub rows: Vec<GlueEntry>,
}

pub fn glue_report(rec: &Recollement, table: &GlueTable, cap: usize) -> Result<GlueReport> {
    let names = rec.middle().vertices();
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let node = table.middle.as_ref().zip(r.glued).map(|(g, k)| &g.nodes[k]);
            GlueEntry {
                left: r.left,
                left_label: table.left.nodes[r.left].label(),
                right: r.right,
                right_label: table.right.nodes[r.right].label(),
                middle: r.glued,
                middle_label: node.map(|n| n.label()),
                middle_dims: node.map(|n| n.dim_vector().to_vec()),
                semibrick: entries(&r.semibrick),
            }
        })
        .collect();
    Ok(GlueReport {
        algebra: rec.middle().name().to_string(),
        idempotent: rec.subset().iter().map(|&v| names[v].clone()).collect(),
        cap,
        semibricks_only: table.middle.is_none(),
        left_count: table.left.len(),
        right_count: table.right.len(),
        middle_count: table.middle.as_ref().map(ExchangeGraph::len),
        glued_count: table.middle.as_ref().map(|_| table.glued_count()),
        glued_semibricks: table.distinct_semibricks()?,
        nonempty_semibricks: table.nonempty_semibricks(),
        injective: table.is_injective()?,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleImage {
    pub simple: String,
    /// Middle vertex whose simple is the image, if the image is simple.
    pub vertex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub identity: String,
    pub sample: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub idempotent: Vec<String>,
    pub passed: bool,
    pub check_count: usize,
    pub failure_count: usize,
    pub simples: Vec<SimpleImage>,
    pub simples_bijective: bool,
    pub transfer: TransferReport,
    pub transfer_passed: bool,
    pub checks: Vec<CheckEntry>,
}

/// Combines the identity checks with the simples and transfer checks. A
/// failure of either of the latter to run is recorded as a failed check.
pub fn verify_report(rec: &Recollement, report: &VerificationReport, cap: usize) -> VerifyReport {
    let names = rec.middle().vertices();
    let mut checks: Vec<CheckEntry> = report
        .checks
        .iter()
        .map(|c| CheckEntry {
            identity: c.identity.clone(),
            sample: c.sample.clone(),
            passed: c.passed,
            witness: c.witness.clone(),
        })
        .collect();
    let simples = check_simples(rec).unwrap_or_else(|e| {
        checks.push(CheckEntry {
            identity: "simples".into(),
            sample: "all".into(),
            passed: false,
            witness: Some(format!("error: {e}")),
        });
        SimplesReport { images: Vec::new(), bijective: false }
    });
    let transfer = transfer_check(rec, cap).unwrap_or_else(|e| {
        checks.push(CheckEntry {
            identity: "transfer".into(),
            sample: "all".into(),
            passed: false,
            witness: Some(format!("error: {e}")),
        });
        TransferReport { left: false, middle: true, right: false }
    });
    let failure_count = checks.iter().filter(|c| !c.passed).count();
    VerifyReport {
        algebra: rec.middle().name().to_string(),
        idempotent: rec.subset().iter().map(|&v| names[v].clone()).collect(),
        passed: failure_count == 0 && simples.bijective && transfer.passed(),
        check_count: checks.len(),
        failure_count,
        simples: simples
            .images
            .iter()
            .map(|(l, v)| SimpleImage { simple: l.clone(), vertex: v.map(|v| names[v].clone()) })
            .collect(),
        simples_bijective: simples.bijective,
        transfer_passed: transfer.passed(),
        transfer,
        checks,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauReport {
    pub algebra: String,
    pub module: String,
    pub label: String,
    pub dims: Vec<usize>,
    pub tau_label: String,
    pub tau_dims: Vec<usize>,
    pub tau_rigid: bool,
    pub indecomposable: bool,
    pub brick: bool,
    /// `brick`, `not-brick`, or `indeterminate-division-algebra` when `End` is
    /// semisimple of dimension greater than one.
    pub brick_status: String,
    pub end_dim: usize,
    pub tau: ModuleData,
}

/// `is_tau_rigid` already fails when the two rigidity criteria disagree.
pub fn tau_report(name: &str, m: &Module) -> Result<TauReport> {
    let t = ar_translate(m)?;
    let rigid = is_tau_rigid(m)?;
    debug_assert_eq!(rigid, presentation_criterion(m)?);
    Ok(TauReport {
        algebra: m.algebra().name().to_string(),
        module: name.to_string(),
        label: m.stacked_label(),
        dims: m.dims().to_vec(),
        tau_label: t.stacked_label(),
        tau_dims: t.dims().to_vec(),
        tau_rigid: rigid,
        indecomposable: !m.is_zero() && is_indecomposable(m)?,
        brick: is_brick(m)?,
        brick_status: match brick_status(m)? {
            BrickStatus::Brick => "brick",
            BrickStatus::NotBrick => "not-brick",
            BrickStatus::Indeterminate => "indeterminate-division-algebra",
        }
        .to_string(),
        end_dim: hom_dim(m, m)?,
        tau: ModuleData::from_module(&t),
    })
}

/// Reports that have a CSV form.
pub trait Tabular: Serialize + DeserializeOwned {
    /// Field holding the rows, if any.
    const ROWS: Option<&'static str>;
}

impl Tabular for CheckReport {
    const ROWS: Option<&'static str> = None;
}

impl Tabular for SttReport {
    const ROWS: Option<&'static str> = Some("nodes");
}

impl Tabular for GlueReport {
    const ROWS: Option<&'static str> = Some("rows");
}

impl Tabular for VerifyReport {
    const ROWS: Option<&'static str> = Some("checks");
}

impl Tabular for TauReport {
    const ROWS: Option<&'static str> = None;
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        // Strings that would read back as other JSON values are quoted.
        Value::String(s) if serde_json::from_str::<Value>(s).is_err() => s.clone(),
        other => other.to_string(),
    }
}

fn uncell(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports serialize to JSON objects"),
    }
}

/// Row columns are prefixed with the row field name, as in `nodes.dims`.
pub fn to_csv<T: Tabular>(report: &T) -> String {
    let mut top = object(serde_json::to_value(report).expect("reports serialize"));
    let (prefix, rows): (String, Vec<Map<String, Value>>) = match T::ROWS {
        Some(key) => match top.shift_remove(key) {
            Some(Value::Array(rows)) => (format!("{key}."), rows.into_iter().map(object).collect()),
            _ => unreachable!("row field is an array"),
        },
        None => (String::new(), Vec::new()),
    };
    let mut header: Vec<String> = top.keys().cloned().collect();
    if let Some(r) = rows.first() {
        header.extend(r.keys().map(|k| format!("{prefix}{k}")));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    let head: Vec<String> = top.values().map(cell).collect();
    if rows.is_empty() {
        w.write_record(&head).expect("in-memory write");
    }
    for r in &rows {
        let line: Vec<String> = head.iter().cloned().chain(r.values().map(cell)).collect();
        w.write_record(&line).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Reads back a report written by [`to_csv`].
pub fn from_csv<T: Tabular>(text: &str) -> Result<T> {
    let bad = |e: String| Error::Parse(format!("invalid report CSV: {e}"));
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().map_err(|e| bad(e.to_string()))?.iter().map(String::from).collect();
    let records: Vec<csv::StringRecord> =
        r.records().collect::<std::result::Result<_, _>>().map_err(|e| bad(e.to_string()))?;
    let first = records.first().ok_or_else(|| bad("no data lines".into()))?;
    let prefix = T::ROWS.map(|k| format!("{k}."));
    let is_row = |h: &str| prefix.as_deref().is_some_and(|p| h.starts_with(p));
    let mut top = Map::new();
    for (k, h) in header.iter().enumerate().filter(|(_, h)| !is_row(h)) {
        top.insert(h.clone(), uncell(&first[k]));
    }
    if let (Some(key), Some(p)) = (T::ROWS, &prefix) {
        let mut rows = Vec::new();
        if header.iter().any(|h| is_row(h)) {
            for rec in &records {
                let row: Map<String, Value> = header
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| is_row(h))
                    .map(|(k, h)| (h[p.len()..].to_string(), uncell(&rec[k])))
                    .collect();
                rows.push(Value::Object(row));
            }
        }
        top.insert(key.to_string(), Value::Array(rows));
    }
    serde_json::from_value(Value::Object(top)).map_err(|e| bad(e.to_string()))
}

/// Undirected graph in DOT syntax, one node per pair.
pub fn stt_to_dot(report: &SttReport) -> String {
    let quote = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = format!("graph \"{}\" {{\n", quote(&report.algebra));
    for n in &report.nodes {
        let dims: Vec<String> = n.dims.iter().map(usize::to_string).collect();
        let mut label = n.label.clone();
        if !n.projectives.is_empty() {
            label = format!("({label}, P{})", n.projectives.join(" ⊕ P"));
        }
        out += &format!("  n{} [label=\"{}\\n[{}]\"];\n", n.index, quote(&label), dims.join(","));
    }
    for n in &report.nodes {
        for e in &n.exchanges {
            out += &format!("  n{} -- n{} [label=\"{}\"];\n", n.index, e.to, quote(&e.summand));
        }
    }
    out += "}\n";
    out
}
