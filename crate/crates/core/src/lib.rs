pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hamiltonians;
pub mod operators;
pub mod symmetry;

pub use error::{Error, Result};
