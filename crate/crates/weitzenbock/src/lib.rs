//! Exact-rational Weitzenböck machine.
//!
//! For a holonomy algebra (SO(n), U(n), G2 or Spin(7)) and an irreducible
//! representation `V_λ` this crate computes the decomposition of `T ⊗ V_λ`,
//! conformal weights, the twist and classifying endomorphism on the space of
//! Weitzenböck formulas, recursion bases, Bochner identities and the
//! curvature coefficients of `q(R)` and the Laplacian.
//!
//! Everything is exact: no floating point appears anywhere.

#![no_std]

extern crate alloc;

pub mod liecat;
pub mod ratkernel;
pub mod reptheory;
pub mod wmachine;

use alloc::string::String;
use core::fmt;

pub use liecat::{build_algebra, Algebra, EpsLabel, Family, WeightVec};
pub use ratkernel::{Poly1, Rat, RatFun1, RatMatrix};
pub use reptheory::{HighestWeight, IdealId, RelevantSet};
pub use wmachine::{BasisReport, OpMatrix, WFormula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    PoleAtZero,
    DependentInput,
    UnsupportedFamily(String),
    DimensionMismatch,
    NotInLattice,
    NotDominant,
    NonIntegerDimension,
    BadIdeal,
    NotRelevant,
    TooLarge,
    WrongFamily,
    SpectrumMismatch,
    ContextMismatch,
    ZeroPivot,
    UnexpectedSingularity,
    /// A runtime invariant check failed; the payload names the invariant.
    Consistency(String),
}

impl Error {
    pub fn consistency(name: &str) -> Error {
        Error::Consistency(String::from(name))
    }

    /// True for failures that indicate a bug or an unexpected mathematical
    /// situation rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::PoleAtZero
                | Error::DependentInput
                | Error::NonIntegerDimension
                | Error::SpectrumMismatch
                | Error::UnexpectedSingularity
                | Error::Consistency(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PoleAtZero => write!(f, "rational function has a pole at t = 0"),
            Error::DependentInput => write!(f, "Gram-Schmidt input is linearly dependent"),
            Error::UnsupportedFamily(s) => write!(f, "unsupported algebra: {}", s),
            Error::DimensionMismatch => write!(f, "coordinate length does not match rank"),
            Error::NotInLattice => write!(f, "weight is not in the weight lattice"),
            Error::NotDominant => write!(f, "weight is not dominant"),
            Error::NonIntegerDimension => write!(f, "Weyl dimension is not a positive integer"),
            Error::BadIdeal => write!(f, "ideal not available for this algebra"),
            Error::NotRelevant => write!(f, "weight is not relevant"),
            Error::TooLarge => write!(f, "representation exceeds the size limit"),
            Error::WrongFamily => write!(f, "operation not defined for this algebra"),
            Error::SpectrumMismatch => write!(f, "K eigenspace dimensions do not add up"),
            Error::ContextMismatch => write!(f, "operands belong to different contexts"),
            Error::ZeroPivot => write!(f, "pivot coefficient is zero"),
            Error::UnexpectedSingularity => write!(f, "twist denominator vanished unexpectedly"),
            Error::Consistency(s) => write!(f, "invariant violated: {}", s),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
