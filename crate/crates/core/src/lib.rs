//! Well-rounded ideal lattices in quadratic number fields.
//!
//! Decides which fields `Q(sqrt +-D)` contain ideals whose planar lattice is
//! well-rounded, builds those ideals, classifies them up to similarity and
//! runs density scans over `D`. All decisions are exact integer arithmetic.
//!
//! The field and lattice layers are generic over the coefficient type (see
//! [`scalar::Int`]); the aliases below fix it to `i64`, or `i128` for the
//! `Wide*` variants.

pub mod arith;
pub mod cli;
pub mod diophantine;
pub mod error;
pub mod latgeom;
pub mod quadfield;
pub mod scalar;
pub mod survey;

pub use diophantine::{CountTriple, PqClass, Solution};
pub use error::{Error, Result};
pub use latgeom::{RealVerdict, ReductionResult, Unimodular};
pub use quadfield::{BranchRule, Sign};

pub type Field = quadfield::FieldDesc<i64>;
pub type Ideal = quadfield::IdealBasis<i64>;
pub type Form = latgeom::QuadForm<i64>;

pub type WideField = quadfield::FieldDesc<i128>;
pub type WideIdeal = quadfield::IdealBasis<i128>;
pub type WideForm = latgeom::QuadForm<i128>;
