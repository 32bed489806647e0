//! Exact divisor-class computations on moduli of genus-g curves and their hyperelliptic and
//! Hurwitz covers, with the Hodge-bundle tautological classes and slope-form bookkeeping.

pub mod algebra;
pub mod bundle;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod good_model;
pub mod incidence;
pub mod ledger;
pub mod plethysm;
pub mod rational;
pub mod space;

pub use algebra::{combine, equivalent, normal_form, solve_in_span, FormalClass, RelationSet};
pub use error::{Error, Result};
pub use rational::Rational;
pub use space::{Generator, Mark, Sign, SpaceId};
