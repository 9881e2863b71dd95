//! Constructive verification of Glaisher-type integral identities.
//!
//! The crate is layered: [`cxmath`] supplies principal-branch complex
//! functions, [`polyexact`] builds the exact polynomials, [`specfrac`] derives
//! poles and residues and certifies them against those polynomials, [`quad`]
//! integrates, and [`identities`] ties integrals to closed forms and produces
//! [`VerificationReport`]s. [`suite`] runs the full acceptance battery.

pub mod cxmath;
pub mod error;
pub mod identities;
pub mod parallel;
pub mod polyexact;
pub mod quad;
pub mod report;
pub mod specfrac;
pub mod suite;

pub use cxmath::Cx;
pub use error::{Error, Result};
pub use identities::{Family, FamilyParams, VerificationReport};
pub use quad::{QuadConfig, QuadResult, Scheme, WeightMode};
