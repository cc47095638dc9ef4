//! Exact value semigroups and Poincaré series for valuations on
//! two-dimensional function fields.
//!
//! A valuation is described by its type, its generating values `β₀, β₁, …`
//! and the bounds `qᵢ` read off the dual graph. From that description the
//! crate
//!
//! * enumerates semigroup elements together with their unique constrained
//!   representation `s = Σ αᵢ βᵢ`, checked against a brute-force search,
//! * expands the product formula for the Poincaré series up to a bound, and
//! * compares the two series term by term.
//!
//! All arithmetic is exact. Values in `ℤ + ℤτ` are ordered with a finite
//! continued-fraction prefix of τ and comparisons the prefix cannot decide
//! are reported as errors.
//!
//! ```
//! use valseries_core::{
//!     formula_series, series_from_enumeration, diff_series, validate_spec, SpecDocument,
//!     TruncationBound, ValuationType, Value,
//! };
//!
//! let doc = SpecDocument::new(ValuationType::T41, 1, vec![Value::integer(2), Value::integer(3)])
//!     .with_qs([2]);
//! let spec = validate_spec(&doc).unwrap();
//! let bound = TruncationBound::Scalar(Value::integer(12));
//! let formula = formula_series(&spec, &bound).unwrap();
//! let listed = series_from_enumeration(&spec, &bound).unwrap();
//! assert!(diff_series(&formula, &listed, None, 1).unwrap().is_equal());
//! ```

pub mod document;
pub mod dual_graph;
pub mod error;
pub mod poincare;
pub mod semigroup;
pub mod spec;
pub mod value;

pub use document::{derive_qs, parse_spec_file, parse_spec_str, SpecDocument};
pub use dual_graph::{
    cf_simplify, classify, generator_count, piece_q, CfConvention, ClassificationInvariants,
    DualGraphPiece, GeneratorCount, SimplifiedPiece, ValuationType,
};
pub use error::{Error, Result, Violation};
pub use poincare::{
    diff_series, expand_factors, formula_series, series_factors, series_from_enumeration, Mismatch,
    SeriesDiff, SeriesFactor, SeriesTruncation,
};
pub use semigroup::{
    brute_force_oracle, enumerate_values, verify_uniqueness, OracleEntry, Representation,
    UniquenessReport, UniquenessViolation,
};
pub use spec::{classification_candidates, validate_spec, TruncationBound, ValuationSpec};
pub use value::{
    convergents, rational_vs_tau, value_add, value_cmp, value_scale, TauComparison, TauOracle,
    Value,
};
