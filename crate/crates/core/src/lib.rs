//! Evaluation toolkit for alternating multiple mixed values (multiple T, S,
//! t and zeta values) and multiple polylogarithms at fourth roots of unity:
//! high-precision nested-sum and quadrature oracles, an exact word algebra
//! for iterated integrals, a symbolic constant ring, truncated generating
//! series, and the closed-form evaluations tied together by a verification
//! check registry.

pub mod checks;
pub mod constants;
pub mod error;
pub mod forms;
pub mod gaussian;
pub mod index;
pub mod nested;
pub mod precision;
pub mod quadrature;
pub mod series;
pub mod symbol;
pub mod words;

pub use error::{Error, Result};
pub use precision::{BigComplex, BigReal, PrecisionContext};
