pub mod algebra;
pub mod error;
pub mod exactla;
pub mod io;
pub mod recollement;
pub mod rep;
pub mod structure;
pub mod taumod;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
