pub mod arith;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod determinants;
pub mod ddouble;
pub mod eisenstein;
pub mod error;
pub mod gram;
pub mod lfunctions;
pub mod rankin;
pub mod renormint;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
