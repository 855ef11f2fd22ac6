//! Numerical verification of Fourier–Legendre series identities built from
//! central binomial coefficients, Legendre functions and the complete
//! elliptic integral `K`.
//!
//! Layers, bottom up: special functions ([`numerics`]), hypergeometric
//! series ([`hypergeom`]), series summation ([`series`]), quadrature
//! ([`quadrature`]), FL coefficient families ([`fl`]), the identity
//! registry and verifier ([`catalog`]) and report formatting ([`report`]).

pub mod catalog;
pub mod error;
pub mod fl;
pub mod hypergeom;
pub mod numerics;
pub mod quadrature;
pub mod report;
pub mod series;

pub use catalog::{find, verify, verify_all, IdentityRecord, Selection};
pub use error::{Error, Result};
pub use fl::{CoefficientFamily, DegreeNu, FLSeries, Family};
pub use report::{ReportDocument, Status, Summary, ToleranceConfig, VerificationReport};
