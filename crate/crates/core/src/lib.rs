//! Odd-even partitions and overpartitions: exact generating functions,
//! brute-force enumeration, arbitrary-precision special functions and the
//! asymptotic machinery (saddle-point expansion, Tauberian transfer, Wright's
//! circle method) behind their growth laws.

pub mod error;
pub mod num;
pub mod enumeration;
pub mod genfun;
pub mod qseries;
pub mod quad;
pub mod specfun;
pub mod asympt;
pub mod circle;

pub use error::{Error, Result};
pub use num::{BigComplex, BigReal};
pub use qseries::{Count, GrowthBound, PowerSeries};
