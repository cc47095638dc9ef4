//! Truncated Poincaré series, computed two ways: by expanding the product
//! formula for the valuation's type, and by listing semigroup elements with
//! coefficient one.
//!
//! Terms are kept as an association list sorted in the value-group order;
//! exponents are rationals, `a + bτ` or lex pairs, so no dense layout
//! applies.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::dual_graph::ValuationType;
use crate::error::{Error, Result, Violation};
use crate::semigroup::{certifies, enumerate_values, sort_by_value};
use crate::spec::{TruncationBound, ValuationSpec};
use crate::value::{TauOracle, Value};

/// One factor of a product formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesFactor {
    /// `1/(1 − t^β)`
    Geom(Value),
    /// `(1 − t^{qβ})/(1 − t^β) = 1 + t^β + … + t^{(q−1)β}`
    Pair { q: BigInt, beta: Value },
}

impl SeriesFactor {
    pub fn beta(&self) -> &Value {
        match self {
            SeriesFactor::Geom(b) => b,
            SeriesFactor::Pair { beta, .. } => beta,
        }
    }

    /// Exponents of the factor's expansion inside the bound, increasing.
    fn exponents(&self, bound: &TruncationBound, tau: Option<&TauOracle>) -> Result<Vec<Value>> {
        let beta = self.beta();
        let cap = match self {
            SeriesFactor::Geom(_) => None,
            SeriesFactor::Pair { q, .. } => Some(q),
        };
        let mut out = Vec::new();
        let mut exp = beta.zero_like();
        let mut n = BigInt::zero();
        while bound.contains(&exp, tau)? {
            out.push(exp.clone());
            n += 1;
            if cap.is_some_and(|q| &n >= q) {
                break;
            }
            exp = exp.try_add(beta)?;
        }
        Ok(out)
    }
}

impl fmt::Display for SeriesFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesFactor::Geom(b) => write!(f, "Geom({b})"),
            SeriesFactor::Pair { q, beta } => write!(f, "Pair({q},{beta})"),
        }
    }
}

/// A truncated series `Σ c_s t^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub terms: Vec<(Value, BigUint)>,
    pub bound: TruncationBound,
    /// Whether every term of the exact series inside the bound is present
    /// with its exact coefficient.
    pub complete: bool,
}

impl SeriesTruncation {
    pub fn coeff(&self, v: &Value) -> BigUint {
        self.terms
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn all_coefficients_one(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_one())
    }

    /// Header line followed by one `value<TAB>coeff` line per term.
    pub fn to_text(&self) -> String {
        let mut out = format!("# bound={} complete={}\n", self.bound, self.complete);
        for (v, c) in &self.terms {
            out.push_str(&format!("{v}\t{c}\n"));
        }
        out
    }
}

/// Factor list of the product formula for the spec's type.
///
/// Every shape is `Geom(β₀) · Π Pair(qᵢ, βᵢ)` over the constrained indices,
/// followed by `Geom` of the last beta when that index is free (types 2, 3
/// and 4.2, and type 0 in both tail cases).
pub fn series_factors(spec: &ValuationSpec) -> Vec<SeriesFactor> {
    let betas = spec.betas();
    let qs = spec.qs();
    let mut factors = vec![SeriesFactor::Geom(betas[0].clone())];
    for (q, beta) in qs.iter().zip(&betas[1..]) {
        factors.push(SeriesFactor::Pair {
            q: q.clone(),
            beta: beta.clone(),
        });
    }
    let trailing_free = match spec.vtype() {
        ValuationType::T1 | ValuationType::T41 => false,
        ValuationType::T2 | ValuationType::T3 | ValuationType::T42 | ValuationType::T0 => true,
    };
    if trailing_free {
        debug_assert_eq!(betas.len(), qs.len() + 2);
        factors.push(SeriesFactor::Geom(betas[qs.len() + 1].clone()));
    }
    factors
}

fn bound_zero(bound: &TruncationBound) -> Value {
    match bound {
        TruncationBound::Scalar(v) => v.zero_like(),
        TruncationBound::Box { .. } => Value::lex(0, 0),
    }
}

/// Multiplies out the factors, truncating after every step. The result is
/// marked complete: each factor only has nonnegative exponents, so no term
/// beyond the bound can feed back below it.
pub fn expand_factors(
    factors: &[SeriesFactor],
    bound: &TruncationBound,
    tau: Option<&TauOracle>,
) -> Result<SeriesTruncation> {
    for (i, f) in factors.iter().enumerate() {
        if !f.beta().is_positive(tau)? {
            return Err(Error::InvalidSpec(vec![Violation::NonPositiveBeta {
                index: i,
            }]));
        }
    }
    let mut terms = vec![(bound_zero(bound), BigUint::one())];
    for factor in factors {
        let exps = factor.exponents(bound, tau)?;
        let mut acc: HashMap<Value, BigUint> = HashMap::new();
        let mut order = Vec::new();
        for (v, c) in &terms {
            for e in &exps {
                let s = v.try_add(e)?;
                if !bound.contains(&s, tau)? {
                    break;
                }
                match acc.get_mut(&s) {
                    Some(existing) => *existing += c,
                    None => {
                        order.push(s.clone());
                        acc.insert(s, c.clone());
                    }
                }
            }
        }
        terms = order
            .into_iter()
            .map(|v| {
                let c = acc.remove(&v).expect("inserted");
                (v, c)
            })
            .collect();
        sort_by_value(&mut terms, |(v, _)| v, tau)?;
    }
    Ok(SeriesTruncation {
        terms,
        bound: bound.clone(),
        complete: true,
    })
}

/// Expands the spec's product formula. For type 1 the result is complete
/// only when `next_beta_lower_bound` exceeds the bound.
pub fn formula_series(spec: &ValuationSpec, bound: &TruncationBound) -> Result<SeriesTruncation> {
    spec.check_bound(bound)?;
    let complete = if spec.vtype() == ValuationType::T1 {
        let lower = spec
            .next_beta_lower_bound()
            .ok_or(Error::MissingNextBetaBound)?;
        certifies(lower, bound, spec.tau())?
    } else {
        true
    };
    let mut series = expand_factors(&series_factors(spec), bound, spec.tau())?;
    series.complete = complete;
    Ok(series)
}

/// Series with coefficient one at every enumerated semigroup element.
pub fn series_from_enumeration(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<SeriesTruncation> {
    let terms = enumerate_values(spec, bound)?
        .into_iter()
        .map(|(v, _)| (v, BigUint::one()))
        .collect();
    Ok(SeriesTruncation {
        terms,
        bound: bound.clone(),
        complete: true,
    })
}

/// A coefficient that differs between two series; zero means absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub value: Value,
    pub left: BigUint,
    pub right: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesDiff {
    Equal,
    /// The first mismatches in increasing value order.
    Mismatches(Vec<Mismatch>),
}

impl SeriesDiff {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesDiff::Equal)
    }
}

/// Walks both term lists in order and reports up to `limit` mismatches.
pub fn diff_series(
    a: &SeriesTruncation,
    b: &SeriesTruncation,
    tau: Option<&TauOracle>,
    limit: usize,
) -> Result<SeriesDiff> {
    if a.bound != b.bound {
        return Err(Error::BoundMismatch(format!(
            "cannot compare series truncated at {} and {}",
            a.bound, b.bound
        )));
    }
    let zero = BigUint::zero();
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while (i < a.terms.len() || j < b.terms.len()) && out.len() < limit {
        let next = match (a.terms.get(i), b.terms.get(j)) {
            (Some((va, ca)), Some((vb, cb))) => match va.cmp_with(vb, tau)? {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (va, ca, &zero)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (vb, &zero, cb)
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (va, ca, cb)
                }
            },
            (Some((va, ca)), None) => {
                i += 1;
                (va, ca, &zero)
            }
            (None, Some((vb, cb))) => {
                j += 1;
                (vb, &zero, cb)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != next.2 {
            out.push(Mismatch {
                value: next.0.clone(),
                left: next.1.clone(),
                right: next.2.clone(),
            });
        }
    }
    Ok(if out.is_empty() {
        SeriesDiff::Equal
    } else {
        SeriesDiff::Mismatches(out)
    })
}
