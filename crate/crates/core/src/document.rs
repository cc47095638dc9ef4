//! JSON spec documents describing a valuation.
//!
//! ```json
//! {
//!   "type": "4.1",
//!   "g": 1,
//!   "betas": ["2", "3"],
//!   "qs": [2]
//! }
//! ```
//!
//! Integers may be written as JSON integers or as decimal strings; fractional
//! or exponent literals are rejected. Values use the text encodings of
//! [`Value`](crate::value::Value).

use std::path::Path;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value as Json};

use crate::dual_graph::{CfConvention, ClassificationInvariants, DualGraphPiece, ValuationType};
use crate::error::{Error, Result};
use crate::value::{parse_integer, Value};

const KEYS: [&str; 10] = [
    "type",
    "g",
    "betas",
    "qs",
    "tau",
    "tail_nonzero",
    "next_beta_lower_bound",
    "pieces",
    "cf_convention",
    "classification",
];

const CLASSIFICATION_KEYS: [&str; 4] = ["rank", "rational_rank", "dimension", "discrete"];

/// The parsed, not yet validated, contents of a spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub vtype: ValuationType,
    pub g: u64,
    pub betas: Vec<Value>,
    pub qs: Option<Vec<BigInt>>,
    pub tau: Option<Vec<u64>>,
    pub tail_nonzero: Option<bool>,
    pub next_beta_lower_bound: Option<Value>,
    pub pieces: Option<Vec<Vec<u64>>>,
    pub cf_convention: Option<CfConvention>,
    pub classification: Option<ClassificationInvariants>,
}

impl SpecDocument {
    pub fn new(vtype: ValuationType, g: u64, betas: Vec<Value>) -> Self {
        SpecDocument {
            vtype,
            g,
            betas,
            qs: None,
            tau: None,
            tail_nonzero: None,
            next_beta_lower_bound: None,
            pieces: None,
            cf_convention: None,
            classification: None,
        }
    }

    pub fn with_qs<I: Into<BigInt>>(mut self, qs: impl IntoIterator<Item = I>) -> Self {
        self.qs = Some(qs.into_iter().map(Into::into).collect());
        self
    }

    pub fn with_tau(mut self, tau: Vec<u64>) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_tail(mut self, tail_nonzero: bool) -> Self {
        self.tail_nonzero = Some(tail_nonzero);
        self
    }

    pub fn with_next_beta_lower_bound(mut self, v: Value) -> Self {
        self.next_beta_lower_bound = Some(v);
        self
    }

    pub fn with_pieces(mut self, pieces: Vec<Vec<u64>>) -> Self {
        self.pieces = Some(pieces);
        self
    }

    pub fn with_convention(mut self, conv: CfConvention) -> Self {
        self.cf_convention = Some(conv);
        self
    }

    pub fn with_classification(mut self, inv: ClassificationInvariants) -> Self {
        self.classification = Some(inv);
        self
    }

    pub fn convention(&self) -> CfConvention {
        self.cf_convention.unwrap_or_default()
    }

    pub fn parsed_pieces(&self) -> Result<Vec<DualGraphPiece>> {
        self.pieces
            .iter()
            .flatten()
            .map(|segs| DualGraphPiece::new(segs.clone()))
            .collect()
    }

    /// The q list, derived from the pieces when they are present.
    pub fn resolved_qs(&self) -> Result<Vec<BigInt>> {
        let Some(pieces) = &self.pieces else {
            return Ok(self.qs.clone().unwrap_or_default());
        };
        let derived = derive_qs(pieces, self.convention())?;
        if let Some(qs) = &self.qs {
            if qs != &derived {
                return Err(Error::QsPiecesConflict {
                    qs: qs.iter().map(ToString::to_string).collect(),
                    derived: derived.iter().map(ToString::to_string).collect(),
                });
            }
        }
        Ok(derived)
    }

    /// Serializes to the JSON layout read by [`parse_spec_str`].
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("type".into(), Json::String(self.vtype.label().into()));
        m.insert("g".into(), Json::Number(Number::from(self.g)));
        m.insert("betas".into(), strings(self.betas.iter()));
        if let Some(qs) = &self.qs {
            m.insert("qs".into(), strings(qs.iter()));
        }
        if let Some(tau) = &self.tau {
            m.insert("tau".into(), numbers(tau));
        }
        if let Some(t) = self.tail_nonzero {
            m.insert("tail_nonzero".into(), Json::Bool(t));
        }
        if let Some(v) = &self.next_beta_lower_bound {
            m.insert("next_beta_lower_bound".into(), Json::String(v.to_string()));
        }
        if let Some(pieces) = &self.pieces {
            m.insert(
                "pieces".into(),
                Json::Array(pieces.iter().map(|p| numbers(p)).collect()),
            );
        }
        if let Some(c) = self.cf_convention {
            m.insert("cf_convention".into(), Json::String(c.as_str().into()));
        }
        if let Some(c) = &self.classification {
            let mut cm = Map::new();
            cm.insert("rank".into(), Json::Number(c.rank.into()));
            cm.insert("rational_rank".into(), Json::Number(c.rational_rank.into()));
            cm.insert("dimension".into(), Json::Number(c.dimension.into()));
            cm.insert("discrete".into(), Json::Bool(c.discrete));
            m.insert("classification".into(), Json::Object(cm));
        }
        let mut out = serde_json::to_string_pretty(&Json::Object(m)).expect("json");
        out.push('\n');
        out
    }
}

fn strings<T: ToString>(items: impl Iterator<Item = T>) -> Json {
    Json::Array(items.map(|x| Json::String(x.to_string())).collect())
}

fn numbers(items: &[u64]) -> Json {
    Json::Array(items.iter().map(|&x| Json::Number(x.into())).collect())
}

/// q values of the multi-segment pieces; a single-segment piece is only
/// accepted as the final (tail) piece and contributes no q.
pub fn derive_qs(pieces: &[Vec<u64>], conv: CfConvention) -> Result<Vec<BigInt>> {
    let mut qs = Vec::with_capacity(pieces.len());
    for (i, segs) in pieces.iter().enumerate() {
        let piece = DualGraphPiece::new(segs.clone()).map_err(|e| Error::BadField {
            key: format!("pieces[{i}]"),
            message: e.to_string(),
        })?;
        if piece.is_tail() {
            if i + 1 != pieces.len() {
                return Err(Error::BadField {
                    key: format!("pieces[{i}]"),
                    message: "a single-segment piece must be the last one".into(),
                });
            }
            continue;
        }
        let s = piece.simplify(conv).map_err(|e| Error::BadField {
            key: format!("pieces[{i}]"),
            message: e.to_string(),
        })?;
        qs.push(s.q);
    }
    Ok(qs)
}

pub fn parse_spec_file(path: impl AsRef<Path>) -> Result<SpecDocument> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec_str(&text)
}

pub fn parse_spec_str(text: &str) -> Result<SpecDocument> {
    let json: Json = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Json::Object(obj) = json else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "top level must be a JSON object".into(),
        });
    };
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::UnknownKey(k.clone()));
    }

    let vtype: ValuationType = match obj.get("type") {
        Some(Json::String(s)) => s.parse()?,
        Some(_) => return Err(bad("type", "expected a string such as \"4.1\"")),
        None => return Err(bad("type", "missing")),
    };
    let g = match obj.get("g") {
        Some(j) => to_u64(j, "g")?,
        None if vtype == ValuationType::T1 => 0,
        None => return Err(bad("g", "missing")),
    };
    let betas = match obj.get("betas") {
        Some(Json::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, j)| to_value(j, &format!("betas[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(bad("betas", "expected an array of value strings")),
        None => return Err(bad("betas", "missing")),
    };

    let mut doc = SpecDocument::new(vtype, g, betas);
    if let Some(j) = obj.get("qs") {
        doc.qs = Some(
            array(j, "qs")?
                .iter()
                .enumerate()
                .map(|(i, j)| to_bigint(j, &format!("qs[{i}]")))
                .collect::<Result<_>>()?,
        );
    }
    if let Some(j) = obj.get("tau") {
        doc.tau = Some(u64_list(j, "tau")?);
    }
    if let Some(j) = obj.get("tail_nonzero") {
        doc.tail_nonzero = Some(
            j.as_bool()
                .ok_or_else(|| bad("tail_nonzero", "expected a boolean"))?,
        );
    }
    if let Some(j) = obj.get("next_beta_lower_bound") {
        doc.next_beta_lower_bound = Some(to_value(j, "next_beta_lower_bound")?);
    }
    if let Some(j) = obj.get("pieces") {
        doc.pieces = Some(
            array(j, "pieces")?
                .iter()
                .enumerate()
                .map(|(i, j)| u64_list(j, &format!("pieces[{i}]")))
                .collect::<Result<_>>()?,
        );
    }
    if let Some(j) = obj.get("cf_convention") {
        let s = j
            .as_str()
            .ok_or_else(|| bad("cf_convention", "expected \"plus\" or \"hj\""))?;
        doc.cf_convention = Some(s.parse()?);
    }
    if let Some(j) = obj.get("classification") {
        doc.classification = Some(to_classification(j)?);
    }
    if doc.pieces.is_some() {
        doc.qs = Some(doc.resolved_qs()?);
    }
    Ok(doc)
}

fn bad(key: &str, message: &str) -> Error {
    Error::BadField {
        key: key.into(),
        message: message.into(),
    }
}

fn array<'a>(j: &'a Json, key: &str) -> Result<&'a Vec<Json>> {
    j.as_array().ok_or_else(|| bad(key, "expected an array"))
}

fn to_bigint(j: &Json, key: &str) -> Result<BigInt> {
    let literal = match j {
        Json::Number(n) => n.to_string(),
        Json::String(s) => s.clone(),
        _ => return Err(bad(key, "expected an integer")),
    };
    parse_integer(&literal)
        .ok_or_else(|| bad(key, &format!("{literal:?} is not a decimal integer")))
}

fn to_u64(j: &Json, key: &str) -> Result<u64> {
    let n = to_bigint(j, key)?;
    u64::try_from(&n).map_err(|_| bad(key, &format!("{n} is out of range")))
}

fn to_u8(j: &Json, key: &str) -> Result<u8> {
    let n = to_bigint(j, key)?;
    u8::try_from(&n).map_err(|_| bad(key, &format!("{n} is out of range")))
}

fn u64_list(j: &Json, key: &str) -> Result<Vec<u64>> {
    array(j, key)?
        .iter()
        .enumerate()
        .map(|(i, j)| to_u64(j, &format!("{key}[{i}]")))
        .collect()
}

fn to_value(j: &Json, key: &str) -> Result<Value> {
    let s = j
        .as_str()
        .ok_or_else(|| bad(key, "expected a value string"))?;
    s.parse().map_err(|e: Error| bad(key, &e.to_string()))
}

fn to_classification(j: &Json) -> Result<ClassificationInvariants> {
    let obj = j
        .as_object()
        .ok_or_else(|| bad("classification", "expected an object"))?;
    if let Some(k) = obj
        .keys()
        .find(|k| !CLASSIFICATION_KEYS.contains(&k.as_str()))
    {
        return Err(Error::UnknownKey(format!("classification.{k}")));
    }
    let field = |k: &str| {
        obj.get(k)
            .ok_or_else(|| bad(&format!("classification.{k}"), "missing"))
    };
    Ok(ClassificationInvariants {
        rank: to_u8(field("rank")?, "classification.rank")?,
        rational_rank: to_u8(field("rational_rank")?, "classification.rational_rank")?,
        dimension: to_u8(field("dimension")?, "classification.dimension")?,
        discrete: field("discrete")?
            .as_bool()
            .ok_or_else(|| bad("classification.discrete", "expected a boolean"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_type_41() {
        let doc = parse_spec_str(r#"{"type":"4.1","g":1,"betas":["2","3"],"qs":[2]}"#).unwrap();
        assert_eq!(doc.vtype, ValuationType::T41);
        assert_eq!(doc.g, 1);
        assert_eq!(doc.betas, vec![Value::integer(2), Value::integer(3)]);
        assert_eq!(doc.qs, Some(vec![BigInt::from(2)]));
        assert!(crate::spec::validate_spec(&doc).is_ok());
    }

    #[test]
    fn qs_derived_from_pieces() {
        let doc = parse_spec_str(
            r#"{"type":"4.1","g":1,"betas":["4","9"],"pieces":[[2,3]],"cf_convention":"plus"}"#,
        )
        .unwrap();
        assert_eq!(doc.qs, Some(vec![BigInt::from(4)]));
    }

    #[test]
    fn tail_piece_contributes_no_q() {
        let doc = parse_spec_str(
            r#"{"type":"0","g":1,"betas":["4","9","20"],"pieces":[[2,3],[5]],"tail_nonzero":true}"#,
        )
        .unwrap();
        assert_eq!(doc.qs, Some(vec![BigInt::from(4)]));
        let err = parse_spec_str(r#"{"type":"0","g":1,"betas":["4","9"],"pieces":[[5],[2,3]]}"#);
        assert!(matches!(err, Err(Error::BadField { .. })));
    }

    #[test]
    fn qs_pieces_conflict() {
        let err =
            parse_spec_str(r#"{"type":"4.1","g":1,"betas":["4","9"],"qs":[3],"pieces":[[2,3]]}"#);
        assert!(matches!(err, Err(Error::QsPiecesConflict { .. })));
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse_spec_str(r#"{"type":"4.1","g":1,"betas":["2","3"],"qz":[2]}"#);
        assert_eq!(err, Err(Error::UnknownKey("qz".into())));
        let err = parse_spec_str(
            r#"{"type":"4.1","g":1,"betas":["2"],"classification":{"rank":1,"rr":1,"dimension":0,"discrete":true}}"#,
        );
        assert_eq!(err, Err(Error::UnknownKey("classification.rr".into())));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err =
            parse_spec_str("{\n  \"type\": \"4.1\",\n  \"g\": 1,\n  \"betas\": [\"2\" \"3\"]\n}");
        match err {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn integers_are_exact() {
        let doc = parse_spec_str(
            r#"{"type":"4.1","g":1,"betas":["2","3"],"qs":["123456789012345678901234567890"]}"#,
        )
        .unwrap();
        assert_eq!(
            doc.qs.unwrap()[0].to_string(),
            "123456789012345678901234567890"
        );
        let doc = parse_spec_str(
            r#"{"type":"4.1","g":1,"betas":["2","3"],"qs":[123456789012345678901234567890]}"#,
        )
        .unwrap();
        assert_eq!(
            doc.qs.unwrap()[0].to_string(),
            "123456789012345678901234567890"
        );
        for bad in [
            r#"{"type":"4.1","g":1.0,"betas":["2","3"]}"#,
            r#"{"type":"4.1","g":1,"betas":["2","3"],"qs":[2e0]}"#,
            r#"{"type":"4.1","g":1,"betas":["2.5","3"]}"#,
            r#"{"type":"4.1","g":-1,"betas":["2","3"]}"#,
        ] {
            assert!(
                matches!(parse_spec_str(bad), Err(Error::BadField { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn type_1_may_omit_g() {
        let doc = parse_spec_str(
            r#"{"type":"1","betas":["1","3/2"],"qs":[2],"next_beta_lower_bound":"4"}"#,
        )
        .unwrap();
        assert_eq!(doc.g, 0);
        assert!(parse_spec_str(r#"{"type":"2","betas":[]}"#).is_err());
    }

    fn arb_doc() -> impl Strategy<Value = SpecDocument> {
        (
            0usize..6,
            0u64..5,
            prop::collection::vec((1i64..50, 1i64..5), 1..5),
            prop::option::of(prop::collection::vec(2u64..10, 0..4)),
            prop::option::of(prop::collection::vec(1u64..5, 1..6)),
            prop::option::of(any::<bool>()),
            prop::option::of((1i64..9, 0i64..3)),
            prop::option::of(any::<bool>()),
            prop::option::of((1u8..3, 1u8..3, 0u8..2, any::<bool>())),
        )
            .prop_map(|(t, g, betas, qs, tau, tail, lex, hj, class)| {
                let betas = betas
                    .into_iter()
                    .map(|(n, d)| match lex {
                        Some((a, 0)) => Value::lex(n, a),
                        Some((a, 1)) => Value::quad(
                            num_rational::BigRational::new(a.into(), d.into()),
                            num_rational::BigRational::new(n.into(), d.into()),
                        ),
                        _ => Value::rational(n, d),
                    })
                    .collect();
                let mut doc = SpecDocument::new(ValuationType::ALL[t], g, betas);
                doc.qs = qs.map(|q| q.into_iter().map(BigInt::from).collect());
                doc.tau = tau;
                doc.tail_nonzero = tail;
                doc.next_beta_lower_bound = lex.map(|(a, _)| Value::rational(a, 7));
                doc.cf_convention = hj.map(|h| {
                    if h {
                        CfConvention::HirzebruchJung
                    } else {
                        CfConvention::Plus
                    }
                });
                doc.classification =
                    class.map(|(r, rr, d, disc)| ClassificationInvariants::new(r, rr, d, disc));
                doc
            })
    }

    proptest! {
        #[test]
        fn emit_then_parse_is_identity(doc in arb_doc()) {
            prop_assert_eq!(parse_spec_str(&doc.to_json()).unwrap(), doc);
        }
    }
}
