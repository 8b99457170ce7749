pub mod cli;
pub mod crosscorr;
pub mod curves;
pub mod error;
pub mod expsums;
pub mod gf2m;
pub mod report;
pub mod suite;
pub mod zeta;

pub use error::{Error, Result};
pub use gf2m::{FieldConfig, FieldElement, FieldSpec};
