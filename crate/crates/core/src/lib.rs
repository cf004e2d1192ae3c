//! Separated polynomials `f(x) - g(y)` in bivariate ideals over Q.

pub mod arith;
pub mod cli;
pub mod cyclo;
pub mod decomp;
pub mod driver;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod mpoly;
pub mod numsg;
pub mod oracle;
pub mod principal;
pub mod sepsets;
pub mod zerodim;

pub use error::{Error, Result};
