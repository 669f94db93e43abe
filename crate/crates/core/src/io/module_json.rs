use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::rep::Module;

/// Serialized module: the dimension vector and one block per non-idempotent
/// basis element, keyed by basis label. A block is `dims[s] x dims[t]` for a
/// basis element from `s` to `t`, acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub dims: Vec<usize>,
    pub actions: BTreeMap<String, Matrix>,
}

impl ModuleData {
    /// Blocks without rows are stored as 0x0, matching how they read back.
    pub fn from_module(m: &Module) -> Self {
        let a = m.algebra();
        let actions = (0..a.dim())
            .filter(|&b| !a.is_idempotent(b))
            .map(|b| {
                let block = m.block(b);
                let block = if block.rows() == 0 { Matrix::zeros(0, 0) } else { block.clone() };
                (a.label(b).to_string(), block)
            })
            .collect();
        ModuleData { dims: m.dims().to_vec(), actions }
    }

    /// Builds and validates the module. Missing blocks of composite labels
    /// such as `a*b` are derived from their factors.
    pub fn to_module(&self, algebra: &Arc<BasedAlgebra>) -> Result<Module> {
        let bad = |m: String| Error::InvalidModule(m);
        if self.dims.len() != algebra.vertex_count() {
            return Err(bad(format!(
                "dimension vector has {} entries, expected {}",
                self.dims.len(),
                algebra.vertex_count()
            )));
        }
        for label in self.actions.keys() {
            match algebra.basis_index(label) {
                Some(b) if !algebra.is_idempotent(b) => {}
                _ => return Err(bad(format!("unknown action label '{label}'"))),
            }
        }
        let shape = |b: usize| (self.dims[algebra.source(b)], self.dims[algebra.target(b)]);
        let given = |b: usize| -> Result<Option<Matrix>> {
            let Some(m) = self.actions.get(algebra.label(b)) else { return Ok(None) };
            let (r, c) = shape(b);
            if r == 0 || c == 0 {
                // `[]` and `[[], ...]` both denote an empty block.
                if m.rows() * m.cols() != 0 {
                    return Err(bad(format!("block of {} must be empty", algebra.label(b))));
                }
                return Ok(Some(Matrix::zeros(r, c)));
            }
            if (m.rows(), m.cols()) != (r, c) {
                return Err(bad(format!(
                    "block of {} is {}x{}, expected {r}x{c}",
                    algebra.label(b),
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(Some(m.clone()))
        };
        let mut blocks = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            if algebra.is_idempotent(b) {
                blocks.push(Matrix::identity(self.dims[algebra.source(b)]));
                continue;
            }
            if let Some(m) = given(b)? {
                blocks.push(m);
                continue;
            }
            let label = algebra.label(b);
            let factors: Vec<&str> = label.split('*').collect();
            if factors.len() < 2 {
                return Err(bad(format!("missing action for {label}")));
            }
            let mut acc: Option<Matrix> = None;
            for f in factors {
                let fb = algebra.basis_index(f).ok_or_else(|| bad(format!("missing action for {label}")))?;
                let m = given(fb)?.ok_or_else(|| bad(format!("missing action for {f}")))?;
                acc = Some(match acc {
                    None => m,
                    Some(x) => x.mul(&m),
                });
            }
            blocks.push(acc.expect("at least two factors"));
        }
        Module::from_blocks(algebra.clone(), self.dims.clone(), blocks)
    }
}

pub fn module_to_json(m: &Module) -> String {
    serde_json::to_string_pretty(&ModuleData::from_module(m)).expect("module data serializes")
}

pub fn module_from_json(algebra: &Arc<BasedAlgebra>, text: &str) -> Result<Module> {
    let data: ModuleData = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid module JSON: {e}")))?;
    data.to_module(algebra)
}

/// `P<v>`, `I<v>` or `S<v>` for a vertex label `v`.
pub fn parse_module_literal(algebra: &Arc<BasedAlgebra>, literal: &str) -> Result<Module> {
    let unknown = || Error::Parse(format!("unknown module literal '{literal}'"));
    let mut chars = literal.chars();
    let kind = chars.next().ok_or_else(unknown)?;
    let v = algebra.vertices().iter().position(|v| v == chars.as_str()).ok_or_else(unknown)?;
    match kind {
        'P' => Module::projective(algebra, v),
        'I' => Module::injective(algebra, v),
        'S' => Module::simple(algebra, v),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{a3, p, preproj_a3, sum};

    #[test]
    fn round_trip() {
        let a = preproj_a3();
        for v in 0..3 {
            let m = p(&a, v);
            let back = module_from_json(&a, &module_to_json(&m)).unwrap();
            assert!(back == m);
        }
        let m = sum(&a, &[p(&a, 0), p(&a, 2)]);
        assert!(module_from_json(&a, &module_to_json(&m)).unwrap() == m);
    }

    #[test]
    fn composites_are_derived() {
        let a = a3();
        let text = r#"{"dims": [1, 1, 1], "actions": {"a": [[1]], "b": [["2"]]}}"#;
        let m = module_from_json(&a, text).unwrap();
        let ab = a.basis_index("a*b").unwrap();
        assert_eq!(m.block(ab), &Matrix::from_ints(&[&[2]]));
    }

    #[test]
    fn empty_blocks_and_errors() {
        let a = a3();
        let m = module_from_json(&a, r#"{"dims": [1, 0, 0], "actions": {"a": [], "b": []}}"#).unwrap();
        assert_eq!(m.dims(), [1, 0, 0]);
        assert!(module_from_json(&a, r#"{"dims": [1, 1, 0], "actions": {"a": [[1]]}}"#).is_err());
        assert!(module_from_json(&a, r#"{"dims": [1, 1, 0], "actions": {"a": [[1]], "b": [], "c": []}}"#).is_err());
        assert!(module_from_json(&a, r#"{"dims": [1, 1], "actions": {}}"#).is_err());
        assert!(module_from_json(&a, "not json").is_err());
    }

    #[test]
    fn literals() {
        let a = a3();
        assert_eq!(parse_module_literal(&a, "P1").unwrap().dims(), [1, 1, 1]);
        assert_eq!(parse_module_literal(&a, "I1").unwrap().dims(), [1, 0, 0]);
        assert_eq!(parse_module_literal(&a, "S2").unwrap().dims(), [0, 1, 0]);
        for bad in ["", "Q1", "P4", "P"] {
            assert!(matches!(parse_module_literal(&a, bad), Err(Error::Parse(_))));
        }
    }
}
