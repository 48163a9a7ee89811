//! Exact computer algebra for the local study of plane algebraic curves.
//!
//! The crate provides, over the rationals, prime fields, and small explicit
//! extensions F_{p^k}:
//!
//! - truncated power series k[ε]/(ε^{n+1}) and their endomorphisms
//!   ([`series`]), including compositional inverses and exact Frobenius roots;
//! - plane curves with branch expansions and truncated slopes at a point
//!   ([`curve`]), slope fields, parametrized families, and slope spectra;
//! - curve correspondences: composition, coordinate sums under a group law,
//!   and inversion, all through exact resultants ([`correspond`]);
//! - truncated formal group laws with validation, application to series, and
//!   formal inverses ([`fgl`]);
//! - formal initial-value problems solved by Picard iteration and the
//!   binomial series family ([`ode`]);
//! - truncated divided-power series rings ([`divided`]);
//! - intersection multiplicities computed two independent ways, distinct
//!   intersection counts, an ultrametric multiplicity inequality checker, and
//!   a tangency scan harness over curve families ([`intersect`]).
//!
//! All arithmetic is exact; nothing is floating point. Randomized operations
//! take explicit seeds and are deterministic given the seed.

pub mod correspond;
pub mod curve;
pub mod divided;
pub mod error;
pub mod fgl;
pub mod field;
pub mod intersect;
pub mod ode;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod series;

pub use correspond::{Correspondence, SumLaw};
pub use curve::{CurveFamily, CurvePoint, PlaneCurve};
pub use divided::DividedPowerSeries;
pub use error::{Error, Result};
pub use fgl::{FormalGroupLaw, LawReport, LawTag};
pub use field::{ExtensionModulus, FieldDesc, FieldValue};
pub use intersect::{BranchMult, CountReport, IneqReport, Multiplicity, ScanReport};
pub use poly::{FieldAlgebra, Poly};
pub use series::{BivarSeries, TruncSeries};
