//! Quantum doubles of finite-dimensional quasi-Hopf algebras, built as
//! diagonal crossed products and checked axiom by axiom.

pub mod algebra;
pub mod cli_io;
pub mod double;
pub mod dual;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod monodromy;
pub mod quasi_hopf;
pub mod report;
pub mod representations;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
