//! Dual-graph pieces, their continued fractions, and the classification
//! tables for valuations on two-dimensional function fields.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// How `[a₁, a₂, …, aₘ]` is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CfConvention {
    /// `a₁ + 1/(a₂ + 1/(…))`
    #[default]
    Plus,
    /// `a₁ − 1/(a₂ − 1/(…))`
    HirzebruchJung,
}

impl CfConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            CfConvention::Plus => "plus",
            CfConvention::HirzebruchJung => "hj",
        }
    }
}

impl FromStr for CfConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<CfConvention> {
        match s {
            "plus" => Ok(CfConvention::Plus),
            "hj" => Ok(CfConvention::HirzebruchJung),
            other => Err(Error::BadField {
                key: "cf_convention".into(),
                message: format!("expected \"plus\" or \"hj\", got {other:?}"),
            }),
        }
    }
}

/// Evaluates a finite continued fraction exactly, returning `(p, q)` with
/// `gcd(p, q) = 1` and `q ≥ 1`.
///
/// Evaluation runs from the innermost term outward on integer pairs. Each
/// step is a unimodular map, so the pair stays coprime and no reduction is
/// needed. Under [`CfConvention::HirzebruchJung`] any inner tail that
/// evaluates to zero is a [`Error::ZeroDenominator`].
pub fn cf_simplify(terms: &[u64], conv: CfConvention) -> Result<(BigInt, BigInt)> {
    let (&last, rest) = terms.split_last().ok_or(Error::EmptyPrefix)?;
    if terms.contains(&0) {
        return Err(Error::NonPositiveTerm);
    }
    let mut num = BigInt::from(last);
    let mut den = BigInt::from(1u8);
    for &a in rest.iter().rev() {
        if num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // a ± den/num
        let a = BigInt::from(a);
        let next = match conv {
            CfConvention::Plus => &a * &num + &den,
            CfConvention::HirzebruchJung => &a * &num - &den,
        };
        den = std::mem::replace(&mut num, next);
    }
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

/// One piece of a dual graph: the vertex counts of its segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraphPiece {
    segments: Vec<u64>,
}

impl DualGraphPiece {
    pub fn new(segments: Vec<u64>) -> Result<DualGraphPiece> {
        if segments.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        if segments.contains(&0) {
            return Err(Error::NonPositiveTerm);
        }
        Ok(DualGraphPiece { segments })
    }

    pub fn segments(&self) -> &[u64] {
        &self.segments
    }

    /// A single-segment piece sits at the end of the graph as its tail.
    pub fn is_tail(&self) -> bool {
        self.segments.len() == 1
    }

    pub fn simplify(&self, conv: CfConvention) -> Result<SimplifiedPiece> {
        let (p, q) = piece_q(self, conv)?;
        Ok(SimplifiedPiece {
            segments: self.segments.clone(),
            p,
            q,
        })
    }
}

/// A piece together with `p/q = [a₁, …, aₘ, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplifiedPiece {
    pub segments: Vec<u64>,
    pub p: BigInt,
    pub q: BigInt,
}

/// Simplifies `[a₁, …, aₘ, 1]` for a piece with segment counts `a₁…aₘ`.
pub fn piece_q(piece: &DualGraphPiece, conv: CfConvention) -> Result<(BigInt, BigInt)> {
    let mut terms = piece.segments.clone();
    terms.push(1);
    cf_simplify(&terms, conv)
}

/// The five-way split of valuations on a two-dimensional function field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValuationType {
    T0,
    T1,
    T2,
    T3,
    T41,
    T42,
}

impl ValuationType {
    pub const ALL: [ValuationType; 6] = [
        ValuationType::T0,
        ValuationType::T1,
        ValuationType::T2,
        ValuationType::T3,
        ValuationType::T41,
        ValuationType::T42,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ValuationType::T0 => "0",
            ValuationType::T1 => "1",
            ValuationType::T2 => "2",
            ValuationType::T3 => "3",
            ValuationType::T41 => "4.1",
            ValuationType::T42 => "4.2",
        }
    }

    pub fn is_divisorial(self) -> bool {
        self == ValuationType::T0
    }
}

impl fmt::Display for ValuationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ValuationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<ValuationType> {
        ValuationType::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::BadField {
                key: "type".into(),
                message: format!("unknown valuation type {s:?}"),
            })
    }
}

/// Rank, rational rank, residue dimension and discreteness of a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassificationInvariants {
    pub rank: u8,
    pub rational_rank: u8,
    pub dimension: u8,
    pub discrete: bool,
}

impl ClassificationInvariants {
    pub fn new(rank: u8, rational_rank: u8, dimension: u8, discrete: bool) -> Self {
        ClassificationInvariants {
            rank,
            rational_rank,
            dimension,
            discrete,
        }
    }
}

impl fmt::Display for ClassificationInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(rank {}, rr {}, d {}, {})",
            self.rank,
            self.rational_rank,
            self.dimension,
            if self.discrete {
                "discrete"
            } else {
                "non-discrete"
            }
        )
    }
}

/// Looks up the candidate types for a tuple of classical invariants.
///
/// Rank 2 with rational rank 2 is shared by Types 3 and 4.2; every other
/// row has a single type.
pub fn classify(inv: &ClassificationInvariants) -> Result<BTreeSet<ValuationType>> {
    use ValuationType::*;
    if inv.rational_rank + inv.dimension > 2 {
        return Err(Error::AbhyankarViolation {
            rational_rank: inv.rational_rank,
            dimension: inv.dimension,
        });
    }
    let types: &[ValuationType] = match (inv.rank, inv.rational_rank, inv.dimension, inv.discrete) {
        (1, 1, 1, true) => &[T0],
        (1, 1, 0, false) => &[T1],
        (1, 2, 0, false) => &[T2],
        (2, 2, 0, true) => &[T3, T42],
        (1, 1, 0, true) => &[T41],
        _ => return Err(Error::NoMatchingRow(inv.to_string())),
    };
    Ok(types.iter().copied().collect())
}

/// Top index `g′` of a minimal generating sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorCount {
    Finite(u64),
    Infinite,
}

impl fmt::Display for GeneratorCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorCount::Finite(n) => write!(f, "{n}"),
            GeneratorCount::Infinite => f.write_str("infinite"),
        }
    }
}

pub fn generator_count(t: ValuationType, g: u64) -> Result<GeneratorCount> {
    match t {
        ValuationType::T0 => Err(Error::DivisorialUnsupported),
        ValuationType::T1 => Ok(GeneratorCount::Infinite),
        ValuationType::T2 | ValuationType::T3 | ValuationType::T41 => Ok(GeneratorCount::Finite(g)),
        ValuationType::T42 => Ok(GeneratorCount::Finite(g + 1)),
    }
}
