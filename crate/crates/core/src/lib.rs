//! Exact Franel integrals of products of periodic Bernoulli functions,
//! integrality certificates for their scaled values, and truncated
//! constrained reciprocal lattice sums.

pub mod arith;
pub mod bernoulli;
pub mod certificates;
pub mod cli;
pub mod error;
pub mod franel;
pub mod lattice;
pub mod poly;

pub use arith::Rational;
pub use certificates::{CertificateReport, TheoremKind};
pub use error::{Error, Result};
pub use franel::{franel_integral, IntegralSpec};
pub use lattice::LatticeSumResult;
pub use poly::RationalPolynomial;
