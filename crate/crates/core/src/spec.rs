//! Validated valuation descriptions and truncation bounds.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::document::SpecDocument;
use crate::dual_graph::{classify, generator_count, GeneratorCount, ValuationType};
use crate::error::{Error, Result, Violation};
use crate::value::{TauOracle, Value};

/// A valuation description that passed [`validate_spec`].
///
/// `qs()[i - 1]` bounds `α_i`; indices `1..=qs().len()` are the constrained
/// ones and every other index is free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSpec {
    vtype: ValuationType,
    g: u64,
    betas: Vec<Value>,
    qs: Vec<BigInt>,
    tau: Option<TauOracle>,
    tail_nonzero: bool,
    next_beta_lower_bound: Option<Value>,
}

impl ValuationSpec {
    pub fn vtype(&self) -> ValuationType {
        self.vtype
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn betas(&self) -> &[Value] {
        &self.betas
    }

    pub fn qs(&self) -> &[BigInt] {
        &self.qs
    }

    pub fn tau(&self) -> Option<&TauOracle> {
        self.tau.as_ref()
    }

    pub fn tail_nonzero(&self) -> bool {
        self.tail_nonzero
    }

    pub fn next_beta_lower_bound(&self) -> Option<&Value> {
        self.next_beta_lower_bound.as_ref()
    }

    pub fn is_divisorial(&self) -> bool {
        self.vtype.is_divisorial()
    }

    /// `q_i` if index `i` is box-constrained.
    pub fn cap(&self, index: usize) -> Option<&BigInt> {
        if index == 0 {
            None
        } else {
            self.qs.get(index - 1)
        }
    }

    pub fn generator_count(&self) -> Result<GeneratorCount> {
        generator_count(self.vtype, self.g)
    }

    /// Kind name of the value group (`"rational"`, `"quad"` or `"lex"`).
    pub fn value_kind(&self) -> &'static str {
        self.betas[0].kind()
    }

    /// Parses a bound in this spec's value group: a scalar value for
    /// rational and quad groups, `"(m,n)"` as a box for lex groups.
    pub fn parse_bound(&self, text: &str) -> Result<TruncationBound> {
        let v: Value = text.parse()?;
        let bound = match v {
            Value::Lex(m, n) => TruncationBound::Box {
                first_max: m,
                second_max: n,
            },
            other => TruncationBound::Scalar(other),
        };
        self.check_bound(&bound)?;
        Ok(bound)
    }

    pub fn check_bound(&self, bound: &TruncationBound) -> Result<()> {
        match (bound, &self.betas[0]) {
            (TruncationBound::Scalar(v), beta)
                if v.same_kind(beta) && !matches!(v, Value::Lex(..)) =>
            {
                if v.is_positive(self.tau())? {
                    Ok(())
                } else {
                    Err(Error::BoundMismatch(format!("bound {v} must be positive")))
                }
            }
            (
                TruncationBound::Box {
                    first_max,
                    second_max,
                },
                Value::Lex(..),
            ) => {
                if first_max >= &BigInt::one() && second_max >= &BigInt::one() {
                    Ok(())
                } else {
                    Err(Error::BoundMismatch(format!(
                        "box {bound} needs entries of at least 1"
                    )))
                }
            }
            _ => Err(Error::BoundMismatch(format!(
                "bound {bound} does not match value group {}",
                self.value_kind()
            ))),
        }
    }

    /// Whether `v ≤ bound` (scalar) or `v` lies in the box.
    pub fn within(&self, v: &Value, bound: &TruncationBound) -> Result<bool> {
        bound.contains(v, self.tau())
    }
}

/// Upper limit for enumeration and series expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruncationBound {
    Scalar(Value),
    /// `0 ≤ first ≤ first_max` and `0 ≤ second ≤ second_max`.
    Box {
        first_max: BigInt,
        second_max: BigInt,
    },
}

impl TruncationBound {
    pub fn scalar(v: Value) -> Self {
        TruncationBound::Scalar(v)
    }

    pub fn boxed(first_max: impl Into<BigInt>, second_max: impl Into<BigInt>) -> Self {
        TruncationBound::Box {
            first_max: first_max.into(),
            second_max: second_max.into(),
        }
    }

    pub fn contains(&self, v: &Value, tau: Option<&TauOracle>) -> Result<bool> {
        match (self, v) {
            (TruncationBound::Scalar(b), _) => {
                Ok(v.cmp_with(b, tau)? != std::cmp::Ordering::Greater)
            }
            (
                TruncationBound::Box {
                    first_max,
                    second_max,
                },
                Value::Lex(m, n),
            ) => Ok(!m.is_negative() && !n.is_negative() && m <= first_max && n <= second_max),
            (TruncationBound::Box { .. }, other) => Err(Error::MixedVariant("lex", other.kind())),
        }
    }
}

impl fmt::Display for TruncationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationBound::Scalar(v) => write!(f, "{v}"),
            TruncationBound::Box {
                first_max,
                second_max,
            } => write!(f, "({first_max},{second_max})"),
        }
    }
}

fn expected_kind(t: ValuationType) -> &'static str {
    match t {
        ValuationType::T0 | ValuationType::T41 => "an integer",
        ValuationType::T1 => "a rational",
        ValuationType::T2 => "of the form a+b*tau",
        ValuationType::T3 | ValuationType::T42 => "a lex pair (m,n)",
    }
}

fn kind_ok(t: ValuationType, v: &Value) -> bool {
    match (t, v) {
        (ValuationType::T0 | ValuationType::T41, Value::Rational(r)) => r.is_integer(),
        (ValuationType::T1, Value::Rational(_)) => true,
        (ValuationType::T2, Value::Quad { .. }) => true,
        (ValuationType::T3 | ValuationType::T42, Value::Lex(..)) => true,
        _ => false,
    }
}

/// Checks a document against the shape each valuation type requires and
/// returns the validated spec, or every violation found.
pub fn validate_spec(doc: &SpecDocument) -> Result<ValuationSpec> {
    use ValuationType::*;

    let mut violations = Vec::new();
    let t = doc.vtype;
    let g = doc.g;
    let tail = doc.tail_nonzero.unwrap_or(false);
    let mut qs = doc.resolved_qs()?;

    for (i, q) in qs.iter().enumerate() {
        if q < &BigInt::from(2) {
            violations.push(Violation::SmallQ { index: i });
        }
    }

    let tau = match &doc.tau {
        Some(pq) => match TauOracle::new(pq.clone()) {
            Ok(oracle) => Some(oracle),
            Err(e) => {
                violations.push(Violation::BadTau(e.to_string()));
                None
            }
        },
        None => None,
    };
    if t != T2 && doc.tau.is_some() {
        violations.push(Violation::TauUnused);
    }
    if t != T0 && doc.tail_nonzero.is_some() {
        violations.push(Violation::TailFlagUnused);
    }

    let needs_g_at_least_one = matches!(t, T2 | T3) || (t == T0 && !tail);
    if needs_g_at_least_one && g == 0 {
        violations.push(Violation::BadG { vtype: t, g });
    }

    let g = g as usize;
    let beta_count = match t {
        T1 => None,
        T2 | T3 | T41 => Some(g + 1),
        T42 => Some(g + 2),
        T0 => Some(if tail { g + 2 } else { g + 1 }),
    };
    match beta_count {
        Some(n) if doc.betas.len() != n => violations.push(Violation::BadBetaCount {
            expected: n,
            found: doc.betas.len(),
        }),
        None if doc.betas.is_empty() => violations.push(Violation::BadBetaCount {
            expected: 1,
            found: 0,
        }),
        _ => {}
    }

    let qs_expected = match t {
        T1 => doc.betas.len().saturating_sub(1),
        T2 | T3 => g.saturating_sub(1),
        T41 | T42 => g,
        T0 if tail => g,
        // the last piece's q is not part of the product when there is no tail
        T0 => {
            if qs.len() == g && g > 0 {
                qs.truncate(g - 1);
            }
            g.saturating_sub(1)
        }
    };
    if qs.len() != qs_expected {
        violations.push(Violation::BadQsLength {
            expected: qs_expected,
            found: qs.len(),
        });
    }

    if t == T2 {
        if doc.tau.is_none() {
            violations.push(Violation::MissingTau);
        }
        let has_irrational = doc
            .betas
            .iter()
            .any(|b| matches!(b, Value::Quad { b, .. } if !b.is_zero()));
        if !has_irrational && doc.betas.iter().all(|b| matches!(b, Value::Quad { .. })) {
            violations.push(Violation::NoIrrationalBeta);
        }
    }

    for (i, beta) in doc.betas.iter().enumerate() {
        if !kind_ok(t, beta) {
            violations.push(Violation::BadBetaVariant {
                index: i,
                expected: expected_kind(t),
            });
            continue;
        }
        match beta {
            Value::Lex(m, n) => {
                if m.is_negative() || n.is_negative() || beta.is_zero() {
                    violations.push(Violation::NonPositiveBeta { index: i });
                }
            }
            Value::Quad { .. } => {
                if let Some(oracle) = &tau {
                    match beta.is_positive(Some(oracle)) {
                        Ok(true) => {}
                        Ok(false) => violations.push(Violation::NonPositiveBeta { index: i }),
                        Err(_) => violations.push(Violation::Undecidable { index: i }),
                    }
                }
            }
            Value::Rational(r) => {
                if !r.is_positive() {
                    violations.push(Violation::NonPositiveBeta { index: i });
                }
            }
        }
    }

    if let Some(lb) = &doc.next_beta_lower_bound {
        let ok = t == T1 && matches!(lb, Value::Rational(r) if r.is_positive());
        if !ok {
            violations.push(Violation::BadNextBetaBound);
        }
    }

    if let Some(inv) = &doc.classification {
        match classify(inv) {
            Ok(candidates) if !candidates.contains(&t) => {
                violations.push(Violation::TypeMismatch {
                    declared: t,
                    candidates: candidates.into_iter().collect(),
                })
            }
            Ok(_) => {}
            Err(e) => violations.push(Violation::Classification(e.to_string())),
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    Ok(ValuationSpec {
        vtype: t,
        g: doc.g,
        betas: doc.betas.clone(),
        qs,
        tau: if t == T2 { tau } else { None },
        tail_nonzero: tail,
        next_beta_lower_bound: doc.next_beta_lower_bound.clone(),
    })
}

/// Candidate types for the document's classification block.
pub fn classification_candidates(doc: &SpecDocument) -> Result<BTreeSet<ValuationType>> {
    let inv = doc.classification.as_ref().ok_or_else(|| Error::BadField {
        key: "classification".into(),
        message: "missing".into(),
    })?;
    classify(inv)
}
