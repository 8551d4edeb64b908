//! Finite Hopf *-algebras, coideal subalgebras and quotient coalgebras,
//! with numerical checks of the Galois correspondence, the splitting
//! expectation and its positivity.

pub mod error;
pub mod numkernel;

pub use error::{Error, Result};
pub mod hopfcore;
pub mod report;
pub mod corpus;
pub mod cqgtools;
pub mod coideal;
pub mod expectation;
pub mod presented;
