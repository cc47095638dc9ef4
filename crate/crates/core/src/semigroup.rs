//! Enumeration of value-semigroup elements through their constrained
//! representations `s = Σ αᵢ βᵢ`, and a brute-force check that those
//! representations are unique.
//!
//! The enumeration includes `s = 0` with the all-zero representation so the
//! result lines up term for term with the product formulas, whose constant
//! term is 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::dual_graph::ValuationType;
use crate::error::{Error, Result};
use crate::spec::{TruncationBound, ValuationSpec};
use crate::value::{TauOracle, Value};

/// Coefficients `(α₀, α₁, …)` aligned with the spec's betas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    pub alphas: Vec<u64>,
}

impl Representation {
    pub fn new(alphas: Vec<u64>) -> Self {
        Representation { alphas }
    }

    /// `Σ αᵢ βᵢ`.
    pub fn evaluate(&self, betas: &[Value]) -> Result<Value> {
        let mut acc = betas[0].zero_like();
        for (a, b) in self.alphas.iter().zip(betas) {
            acc = acc.try_add(&b.scale(*a))?;
        }
        Ok(acc)
    }

    /// Whether every constrained coefficient satisfies `αᵢ ≤ qᵢ − 1`.
    pub fn is_admissible(&self, spec: &ValuationSpec) -> bool {
        self.alphas
            .iter()
            .enumerate()
            .all(|(i, &a)| spec.cap(i).is_none_or(|q| &BigInt::from(a) < q))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Rejects inputs the enumeration cannot certify.
pub(crate) fn check_enumerable(spec: &ValuationSpec, bound: &TruncationBound) -> Result<()> {
    if spec.is_divisorial() {
        return Err(Error::DivisorialUnsupported);
    }
    spec.check_bound(bound)?;
    if spec.vtype() == ValuationType::T1 {
        let lower = spec
            .next_beta_lower_bound()
            .ok_or(Error::MissingNextBetaBound)?;
        if !certifies(lower, bound, spec.tau())? {
            return Err(Error::UncertifiedTruncation {
                lower: lower.to_string(),
                bound: bound.to_string(),
            });
        }
    }
    Ok(())
}

/// `lower > bound`, i.e. every generator past the prefix lies beyond the bound.
pub(crate) fn certifies(
    lower: &Value,
    bound: &TruncationBound,
    tau: Option<&TauOracle>,
) -> Result<bool> {
    match bound {
        TruncationBound::Scalar(b) => Ok(lower.cmp_with(b, tau)? == Ordering::Greater),
        TruncationBound::Box { .. } => Err(Error::BoundMismatch(
            "a type 1 spec takes a scalar bound".into(),
        )),
    }
}

/// Sorts by the value-group order; fails if any pair cannot be ordered.
pub(crate) fn sort_by_value<T>(
    items: &mut [T],
    key: impl Fn(&T) -> &Value,
    tau: Option<&TauOracle>,
) -> Result<()> {
    let mut failure = None;
    items.sort_by(|x, y| match key(x).cmp_with(key(y), tau) {
        Ok(o) => o,
        Err(e) => {
            failure.get_or_insert(e);
            Ordering::Equal
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Every `(value, representation)` with constrained coefficients inside the
/// bound, duplicates kept, sorted by value.
pub(crate) fn constrained_representations(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<Vec<(Value, Representation)>> {
    check_enumerable(spec, bound)?;
    let mut out = Vec::new();
    let mut alphas = vec![0u64; spec.betas().len()];
    let zero = spec.betas()[0].zero_like();
    walk(spec, bound, true, 0, zero, &mut alphas, &mut out)?;
    sort_by_value(&mut out, |(v, _)| v, spec.tau())?;
    Ok(out)
}

fn walk(
    spec: &ValuationSpec,
    bound: &TruncationBound,
    capped: bool,
    index: usize,
    partial: Value,
    alphas: &mut Vec<u64>,
    out: &mut Vec<(Value, Representation)>,
) -> Result<()> {
    let beta = &spec.betas()[index];
    let cap = if capped { spec.cap(index) } else { None };
    let last = index + 1 == alphas.len();
    let mut sum = partial;
    let mut alpha = 0u64;
    loop {
        alphas[index] = alpha;
        if last {
            out.push((sum.clone(), Representation::new(alphas.clone())));
        } else {
            walk(spec, bound, capped, index + 1, sum.clone(), alphas, out)?;
        }
        alpha += 1;
        if cap.is_some_and(|q| &BigInt::from(alpha) >= q) {
            break;
        }
        sum = sum.try_add(beta)?;
        if !spec.within(&sum, bound)? {
            break;
        }
    }
    alphas[index] = 0;
    Ok(())
}

/// Semigroup elements up to the bound with their unique constrained
/// representation, in increasing order.
pub fn enumerate_values(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<Vec<(Value, Representation)>> {
    let all = constrained_representations(spec, bound)?;
    if let Some(w) = all.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::NonUniqueRepresentation(w[0].0.to_string()));
    }
    Ok(all)
}

/// One entry of the brute-force multimap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleEntry {
    pub value: Value,
    pub representations: Vec<Representation>,
}

/// Every `Σ αᵢ βᵢ` inside the bound with every tuple of nonnegative
/// coefficients producing it, ignoring the q constraints.
///
/// Since every beta is positive, a branch is cut as soon as its partial sum
/// leaves the bound.
pub fn brute_force_oracle(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<Vec<OracleEntry>> {
    check_enumerable(spec, bound)?;
    let betas = spec.betas();
    let mut found = Vec::new();
    let mut alphas = vec![0u64; betas.len()];
    walk(
        spec,
        bound,
        false,
        0,
        betas[0].zero_like(),
        &mut alphas,
        &mut found,
    )?;
    let mut map: HashMap<Value, Vec<Representation>> = HashMap::new();
    for (value, rep) in found {
        map.entry(value).or_default().push(rep);
    }

    let mut entries: Vec<OracleEntry> = map
        .into_iter()
        .map(|(value, mut representations)| {
            representations.sort();
            OracleEntry {
                value,
                representations,
            }
        })
        .collect();
    sort_by_value(&mut entries, |e| &e.value, spec.tau())?;
    Ok(entries)
}

/// A value whose representations break uniqueness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessViolation {
    pub value: Value,
    /// All unconstrained representations found by the oracle.
    pub representations: Vec<Representation>,
    /// Those satisfying the q constraints.
    pub admissible: Vec<Representation>,
    /// What the constrained enumeration produced for this value.
    pub emitted: Vec<Representation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub checked: usize,
    pub violations: Vec<UniquenessViolation>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the constrained enumeration with the brute-force multimap: each
/// value must have exactly one admissible representation, and it must be
/// the one the enumeration emits.
pub fn verify_uniqueness(
    spec: &ValuationSpec,
    bound: &TruncationBound,
) -> Result<UniquenessReport> {
    let oracle = brute_force_oracle(spec, bound)?;
    let mut emitted: HashMap<Value, Vec<Representation>> = HashMap::new();
    for (v, rep) in constrained_representations(spec, bound)? {
        emitted.entry(v).or_default().push(rep);
    }

    let mut violations = Vec::new();
    for entry in &oracle {
        let admissible: Vec<Representation> = entry
            .representations
            .iter()
            .filter(|r| r.is_admissible(spec))
            .cloned()
            .collect();
        let mut got = emitted.remove(&entry.value).unwrap_or_default();
        got.sort();
        if admissible.len() != 1 || got != admissible {
            violations.push(UniquenessViolation {
                value: entry.value.clone(),
                representations: entry.representations.clone(),
                admissible,
                emitted: got,
            });
        }
    }
    // anything left was emitted without the oracle finding it
    let mut stray: Vec<UniquenessViolation> = emitted
        .into_iter()
        .map(|(value, emitted)| UniquenessViolation {
            value,
            representations: Vec::new(),
            admissible: Vec::new(),
            emitted,
        })
        .collect();
    if !stray.is_empty() {
        violations.append(&mut stray);
        sort_by_value(&mut violations, |v| &v.value, spec.tau())?;
    }
    Ok(UniquenessReport {
        checked: oracle.len(),
        violations,
    })
}
