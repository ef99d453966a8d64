pub mod error;
pub mod landau;
pub mod oracle;
pub mod cli;
pub mod phases;
pub mod realization;
pub mod scalars;
pub mod weyl;

pub use error::{Error, Result};
