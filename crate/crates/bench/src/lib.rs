//! Fixed specs shared by the benchmarks.

use valseries_core::{
    validate_spec, SpecDocument, TruncationBound, ValuationSpec, ValuationType, Value,
};

/// Type 4.1 with betas `(8, 12, 27)` and qs `(2, 4)`.
pub fn type_41() -> ValuationSpec {
    let betas = [8, 12, 27].map(Value::integer).to_vec();
    validate_spec(&SpecDocument::new(ValuationType::T41, 2, betas).with_qs([2, 4])).unwrap()
}

/// Golden-ratio Type 2 spec with a 40-term prefix of τ.
pub fn golden() -> ValuationSpec {
    let doc = SpecDocument::new(
        ValuationType::T2,
        1,
        vec![Value::quad_int(1, 0), Value::quad_int(0, 1)],
    )
    .with_tau(vec![1; 40]);
    validate_spec(&doc).unwrap()
}

/// Type 4.2 with betas `(1,0), (1,1)`.
pub fn lex() -> ValuationSpec {
    let doc = SpecDocument::new(
        ValuationType::T42,
        0,
        vec![Value::lex(1, 0), Value::lex(1, 1)],
    );
    validate_spec(&doc).unwrap()
}

pub fn scalar(n: i64) -> TruncationBound {
    TruncationBound::Scalar(Value::integer(n))
}
