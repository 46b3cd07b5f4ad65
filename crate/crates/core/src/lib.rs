//! Exact q-expansions of classical primitive forms and the arithmetic of their
//! vanishing coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated integer power series, sparse eta expansions and
//!   word-prime residue lanes.
//! - [`forms`]: coefficient providers (Δ by two routes, normalized Eisenstein
//!   series, eta quotients of prime level, q-expansion files).
//! - [`ec`]: a_p of rational elliptic curves by point counting.
//! - [`hecke`]: extension of a prime eigenvalue table to all a(n).
//! - [`vanish`]: prime-power vanishing classification, the modulus M_f and
//!   first-vanishing scans.

pub mod arith;
pub mod ec;
mod error;
pub mod forms;
pub mod hecke;
pub mod series;
pub mod vanish;

pub use ec::{ReductionType, WeierstrassCurve};
pub use error::{Error, Result};
pub use forms::{Character, FormSource, FormSpec};
pub use hecke::{CoefficientOracle, PrimeEigenvalues};
pub use series::{QSeries, ResidueSeries, SparseSeries};
pub use vanish::{Certification, MfResult, ScanReport, VanishClass, VanishKind};
