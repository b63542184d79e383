//! Finite-grid incidence laboratory.
//!
//! Exact counting on finite relations, Zarankiewicz-type bounds certified by a
//! recursion over cuttings, the derived 4-ary relation of a ternary relation
//! together with its fiber laws, and scaling experiments that separate
//! group-like from expanding ternary relations.

pub mod bits;
pub mod cuttings;
pub mod dsl;
pub mod error;
pub mod es;
pub mod experiment;
pub mod instances;
pub mod relation;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod zarankiewicz;

pub use error::{Error, Result};
pub use relation::{
    pair_universe, FiniteRelation2, FiniteRelation3, Label, PairUniverse, Relation, RelationFile,
    Side, Subset, Universe,
};
pub use scalar::Scalar;

/// Exact rational used for exponent identities.
pub type Rational = num_rational::Ratio<i64>;

/// Exponent parameters in exact arithmetic.
pub type ExactExponents = zarankiewicz::ExponentParams<Rational>;

/// Exponent parameters in double precision.
pub type FloatExponents = zarankiewicz::ExponentParams<f64>;

/// Log-log fit in double precision.
pub type Fit = experiment::ExponentFit<f64>;
