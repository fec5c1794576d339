//! Positive primitive formulas over computable rings.

pub mod classes;
pub mod decide;
pub mod error;
pub mod eval;
pub mod experiments;
pub mod formula;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod ring;

pub use error::{Error, Result};
