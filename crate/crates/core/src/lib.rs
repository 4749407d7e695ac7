//! Exact-arithmetic workbench for Diophantine definitions over rings of
//! polynomials: Pell pairs, witness systems, cyclotomic special forms,
//! quadratic-form local analysis and the polynomial indexing layer.

pub mod arith;
pub mod cyclo;
pub mod defsys;
pub mod error;
pub mod parcheck;
pub mod pell;
pub mod poly;
pub mod qforms;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
