pub mod algebra;
pub mod ce;
pub mod error;
pub mod exactlin;
pub mod gallery;
pub mod invariants;
pub mod suite;

pub use error::{Error, Result};
