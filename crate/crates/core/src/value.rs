//! Exact values in the three value groups a two-dimensional valuation can
//! have: subgroups of ℚ, ℤ + ℤτ with τ irrational, and ℤ² ordered
//! lexicographically.
//!
//! Values of the form `a + bτ` are ordered against a [`TauOracle`], a finite
//! continued-fraction prefix of τ. The oracle never guesses: when the prefix
//! is too short to separate two values the comparison fails with
//! [`Error::InsufficientPrecision`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of one of the three supported value groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    /// An exact rational, always stored reduced with positive denominator.
    Rational(BigRational),
    /// `a + b·τ` for rationals `a`, `b`.
    Quad { a: BigRational, b: BigRational },
    /// An element of ℤ² under lexicographic order.
    Lex(BigInt, BigInt),
}

impl Value {
    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Value {
        Value::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Value {
        Value::Rational(BigRational::from_integer(n.into()))
    }

    pub fn quad(a: BigRational, b: BigRational) -> Value {
        Value::Quad { a, b }
    }

    /// `a + b·τ` with integer coefficients.
    pub fn quad_int(a: i64, b: i64) -> Value {
        Value::Quad {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn lex(first: impl Into<BigInt>, second: impl Into<BigInt>) -> Value {
        Value::Lex(first.into(), second.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Rational(_) => "rational",
            Value::Quad { .. } => "quad",
            Value::Lex(..) => "lex",
        }
    }

    pub fn same_kind(&self, other: &Value) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// The zero of this value's group.
    pub fn zero_like(&self) -> Value {
        match self {
            Value::Rational(_) => Value::Rational(BigRational::zero()),
            Value::Quad { .. } => Value::Quad {
                a: BigRational::zero(),
                b: BigRational::zero(),
            },
            Value::Lex(..) => Value::Lex(BigInt::zero(), BigInt::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::Quad { a, b } => a.is_zero() && b.is_zero(),
            Value::Lex(m, n) => m.is_zero() && n.is_zero(),
        }
    }

    pub fn try_add(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Rational(x), Value::Rational(y)) => Ok(Value::Rational(x + y)),
            (Value::Quad { a: a1, b: b1 }, Value::Quad { a: a2, b: b2 }) => Ok(Value::Quad {
                a: a1 + a2,
                b: b1 + b2,
            }),
            (Value::Lex(m1, n1), Value::Lex(m2, n2)) => Ok(Value::Lex(m1 + m2, n1 + n2)),
            _ => Err(Error::MixedVariant(self.kind(), other.kind())),
        }
    }

    /// The `n`-fold sum of `self`.
    pub fn scale(&self, n: u64) -> Value {
        match self {
            Value::Rational(x) => Value::Rational(x * BigRational::from_integer(n.into())),
            Value::Quad { a, b } => {
                let n = BigRational::from_integer(n.into());
                Value::Quad {
                    a: a * &n,
                    b: b * &n,
                }
            }
            Value::Lex(m, k) => Value::Lex(m * n, k * n),
        }
    }

    pub fn cmp_with(&self, other: &Value, tau: Option<&TauOracle>) -> Result<Ordering> {
        value_cmp(self, other, tau)
    }

    pub fn is_positive(&self, tau: Option<&TauOracle>) -> Result<bool> {
        Ok(self.cmp_with(&self.zero_like(), tau)? == Ordering::Greater)
    }
}

pub fn value_add(a: &Value, b: &Value) -> Result<Value> {
    a.try_add(b)
}

pub fn value_scale(n: u64, v: &Value) -> Value {
    v.scale(n)
}

/// Total order within one value group.
///
/// `a₁ + b₁τ` against `a₂ + b₂τ` with `b₁ ≠ b₂` reduces to locating
/// `(a₁ − a₂)/(b₂ − b₁)` relative to τ.
pub fn value_cmp(a: &Value, b: &Value, tau: Option<&TauOracle>) -> Result<Ordering> {
    match (a, b) {
        (Value::Rational(x), Value::Rational(y)) => Ok(x.cmp(y)),
        (Value::Lex(m1, n1), Value::Lex(m2, n2)) => Ok(m1.cmp(m2).then_with(|| n1.cmp(n2))),
        (Value::Quad { a: a1, b: b1 }, Value::Quad { a: a2, b: b2 }) => {
            let tau = tau.ok_or(Error::MissingTau)?;
            if b1 == b2 {
                return Ok(a1.cmp(a2));
            }
            // a1 - a2 + (b1 - b2)τ = (b1 - b2)(τ - r)
            let db = b1 - b2;
            let r = (a1 - a2) / (b2 - b1);
            let r_vs_tau = match rational_vs_tau(&r, tau) {
                TauComparison::Less => Ordering::Less,
                TauComparison::Greater => Ordering::Greater,
                TauComparison::Undecidable => {
                    return Err(Error::InsufficientPrecision {
                        left: a.to_string(),
                        right: b.to_string(),
                    })
                }
            };
            if db.is_positive() {
                Ok(r_vs_tau.reverse())
            } else {
                Ok(r_vs_tau)
            }
        }
        _ => Err(Error::MixedVariant(a.kind(), b.kind())),
    }
}

/// Where a rational lies relative to τ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauComparison {
    /// `r < τ`.
    Less,
    /// `r > τ`.
    Greater,
    /// The prefix does not separate `r` from τ.
    Undecidable,
}

/// A finite continued-fraction prefix `[a₁; a₂, …, aₙ]` of an irrational τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauOracle {
    partial_quotients: Vec<u64>,
    convergents: Vec<BigRational>,
    lower: BigRational,
    upper: BigRational,
}

impl TauOracle {
    pub fn new(partial_quotients: Vec<u64>) -> Result<TauOracle> {
        if partial_quotients.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        if partial_quotients.contains(&0) {
            return Err(Error::NonPositiveTerm);
        }
        let pairs = convergents(&partial_quotients);
        let (p_n, q_n) = pairs.last().cloned().expect("nonempty prefix");
        let (p_prev, q_prev) = if pairs.len() >= 2 {
            pairs[pairs.len() - 2].clone()
        } else {
            (BigInt::one(), BigInt::zero())
        };
        // τ = (p_n x + p_{n-1}) / (q_n x + q_{n-1}) for the tail x ∈ (1, ∞),
        // so τ lies strictly between c_n and the mediant.
        let last = BigRational::new(p_n.clone(), q_n.clone());
        let mediant = BigRational::new(p_n + p_prev, q_n + q_prev);
        let (lower, upper) = if last < mediant {
            (last, mediant)
        } else {
            (mediant, last)
        };
        let convergents = pairs
            .into_iter()
            .map(|(p, q)| BigRational::new(p, q))
            .collect();
        Ok(TauOracle {
            partial_quotients,
            convergents,
            lower,
            upper,
        })
    }

    pub fn partial_quotients(&self) -> &[u64] {
        &self.partial_quotients
    }

    /// Convergents `c₁, …, cₙ` of the prefix.
    pub fn convergents(&self) -> &[BigRational] {
        &self.convergents
    }

    /// Open interval certified to contain τ.
    pub fn enclosure(&self) -> (&BigRational, &BigRational) {
        (&self.lower, &self.upper)
    }
}

/// Convergent numerators and denominators of `[a₁; a₂, …]` via
/// `p_k = a_k p_{k−1} + p_{k−2}`, `q_k = a_k q_{k−1} + q_{k−2}`.
pub fn convergents(terms: &[u64]) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(terms.len());
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    for &a in terms {
        let a = BigInt::from(a);
        let p = &a * &p1 + &p2;
        let q = &a * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p.clone());
        q2 = std::mem::replace(&mut q1, q.clone());
        out.push((p, q));
    }
    out
}

/// Locates `r` relative to τ. Never reports equality since τ is irrational.
pub fn rational_vs_tau(r: &BigRational, tau: &TauOracle) -> TauComparison {
    if r <= &tau.lower {
        TauComparison::Less
    } else if r >= &tau.upper {
        TauComparison::Greater
    } else {
        TauComparison::Undecidable
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => fmt_rational(r, f),
            Value::Quad { a, b } => {
                fmt_rational(a, f)?;
                f.write_str("+")?;
                fmt_rational(b, f)?;
                f.write_str("*tau")
            }
            Value::Lex(m, n) => write!(f, "({m},{n})"),
        }
    }
}

pub(crate) fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_integer(p)?;
            let q = parse_integer(q)?;
            if !q.is_positive() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => parse_integer(s).map(BigRational::from_integer),
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Parses `"p/q"`, `"n"`, `"a+b*tau"` or `"(m,n)"`.
    fn from_str(s: &str) -> Result<Value> {
        let bad = || Error::BadValueEncoding(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (m, n) = inner.split_once(',').ok_or_else(bad)?;
            let m = parse_integer(m.trim()).ok_or_else(bad)?;
            let n = parse_integer(n.trim()).ok_or_else(bad)?;
            return Ok(Value::Lex(m, n));
        }
        if let Some(body) = t.strip_suffix("*tau") {
            let (a, b) = body.split_once('+').ok_or_else(bad)?;
            let a = parse_rational(a).ok_or_else(bad)?;
            let b = parse_rational(b).ok_or_else(bad)?;
            return Ok(Value::Quad { a, b });
        }
        parse_rational(t).map(Value::Rational).ok_or_else(bad)
    }
}
