//! File formats: algebra files, module and recollement JSON, and reports.

pub mod algebra_file;
pub mod module_json;
pub mod recollement_json;
pub mod report;

pub use algebra_file::{parse_algebra_file, AlgebraFile};
pub use module_json::{module_from_json, module_to_json, parse_module_literal, ModuleData};
pub use recollement_json::{recollement_from_json, recollement_to_json, AlgebraData, RecollementDump};
