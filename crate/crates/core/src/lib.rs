pub mod cli;
pub mod convolution;
pub mod error;
pub mod function;
pub mod intertwine1d;
pub mod kernel;
pub mod poly;
pub mod polyexact;
pub mod quadrature;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod special;
pub mod suites;
pub mod transform;

pub use error::{DunklError, Result};
