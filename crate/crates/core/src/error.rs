use std::fmt;

use crate::dual_graph::ValuationType;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot combine values of different kinds ({0} vs {1})")]
    MixedVariant(&'static str, &'static str),
    #[error("comparison needs a tau oracle")]
    MissingTau,
    #[error("tau prefix too short to order {left} and {right}")]
    InsufficientPrecision { left: String, right: String },
    #[error("continued fraction prefix is empty")]
    EmptyPrefix,
    #[error("continued fraction terms must be positive integers")]
    NonPositiveTerm,
    #[error("continued fraction evaluation hit a zero denominator")]
    ZeroDenominator,
    #[error("no classification row matches {0}")]
    NoMatchingRow(String),
    #[error("rational rank {rational_rank} plus dimension {dimension} exceeds 2")]
    AbhyankarViolation { rational_rank: u8, dimension: u8 },
    #[error("type 0 (divisorial) valuations are not supported by this operation")]
    DivisorialUnsupported,
    #[error("invalid valuation spec: {}", DisplayViolations(.0))]
    InvalidSpec(Vec<Violation>),
    #[error("type 1 spec needs next_beta_lower_bound for enumeration")]
    MissingNextBetaBound,
    #[error("next_beta_lower_bound {lower} does not exceed the bound {bound}")]
    UncertifiedTruncation { lower: String, bound: String },
    #[error("value {0} has more than one constrained representation")]
    NonUniqueRepresentation(String),
    #[error("bound does not fit this value group: {0}")]
    BoundMismatch(String),
    #[error("malformed value encoding {0:?}")]
    BadValueEncoding(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad field `{key}`: {message}")]
    BadField { key: String, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("qs {qs:?} disagree with qs derived from pieces {derived:?}")]
    QsPiecesConflict {
        qs: Vec<String>,
        derived: Vec<String>,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A single reason a spec document fails validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadQsLength {
        expected: usize,
        found: usize,
    },
    BadBetaCount {
        expected: usize,
        found: usize,
    },
    BadG {
        vtype: ValuationType,
        g: u64,
    },
    BadBetaVariant {
        index: usize,
        expected: &'static str,
    },
    NonPositiveBeta {
        index: usize,
    },
    SmallQ {
        index: usize,
    },
    MissingTau,
    BadTau(String),
    NoIrrationalBeta,
    TauUnused,
    TailFlagUnused,
    TypeMismatch {
        declared: ValuationType,
        candidates: Vec<ValuationType>,
    },
    Classification(String),
    BadNextBetaBound,
    Undecidable {
        index: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadQsLength { expected, found } => {
                write!(f, "BadQsLength: expected {expected} q entries, found {found}")
            }
            Violation::BadBetaCount { expected, found } => {
                write!(f, "BadBetaCount: expected {expected} betas, found {found}")
            }
            Violation::BadG { vtype, g } => write!(f, "BadG: g={g} is not allowed for type {vtype}"),
            Violation::BadBetaVariant { index, expected } => {
                write!(f, "BadBetaVariant: beta[{index}] must be {expected}")
            }
            Violation::NonPositiveBeta { index } => {
                write!(f, "NonPositiveBeta: beta[{index}] is not strictly positive")
            }
            Violation::SmallQ { index } => write!(f, "BadQ: qs[{index}] must be at least 2"),
            Violation::MissingTau => write!(f, "MissingTau: type 2 needs a tau prefix"),
            Violation::BadTau(msg) => write!(f, "BadTau: {msg}"),
            Violation::NoIrrationalBeta => {
                write!(f, "BadBetaVariant: type 2 needs a beta with nonzero tau coefficient")
            }
            Violation::TauUnused => write!(f, "UnexpectedTau: tau is only meaningful for type 2"),
            Violation::TailFlagUnused => {
                write!(f, "UnexpectedTail: tail_nonzero is only meaningful for type 0")
            }
            Violation::TypeMismatch { declared, candidates } => {
                write!(f, "TypeMismatch: declared type {declared} not in candidates {{")?;
                for (i, c) in candidates.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "}}")
            }
            Violation::Classification(msg) => write!(f, "TypeMismatch: {msg}"),
            Violation::BadNextBetaBound => write!(
                f,
                "BadNextBetaBound: next_beta_lower_bound must be a positive rational on a type 1 spec"
            ),
            Violation::Undecidable { index } => write!(
                f,
                "InsufficientPrecision: tau prefix cannot decide the sign of beta[{index}]"
            ),
        }
    }
}

struct DisplayViolations<'a>(&'a [Violation]);

impl fmt::Display for DisplayViolations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
