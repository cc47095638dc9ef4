//! Random valid non-divisorial specs built from telescopic integer data:
//! `q_i ≥ 2`, `e_g = 1`, `e_{i−1} = q_i e_i`, `β₀ = e₀`, `β_i = e_i m_i` with
//! `gcd(m_i, q_i) = 1` and `β_i > q_{i−1} β_{i−1}`. The last condition puts
//! `q_i β_i` inside the semigroup spanned by the earlier betas, which is what
//! makes the constrained representation exist and be unique.

#![allow(dead_code)]

use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use valseries_core::{
    validate_spec, SpecDocument, TruncationBound, ValuationSpec, ValuationType, Value,
};

pub struct Telescopic {
    pub betas: Vec<i64>,
    pub qs: Vec<i64>,
}

pub fn telescopic(rng: &mut ChaCha8Rng, g: usize) -> Telescopic {
    let qs: Vec<i64> = (0..g).map(|_| rng.gen_range(2..=4)).collect();
    // e[i] = q_{i+1} ⋯ q_g
    let mut e = vec![1i64; g + 1];
    for i in (0..g).rev() {
        e[i] = qs[i] * e[i + 1];
    }
    let mut betas = vec![e[0]];
    for i in 1..=g {
        let q = qs[i - 1];
        let floor = if i == 1 {
            1
        } else {
            (qs[i - 2] * betas[i - 1]) / e[i] + 1
        };
        let mut m = floor + rng.gen_range(0..3);
        while m.gcd(&q) != 1 {
            m += 1;
        }
        betas.push(e[i] * m);
    }
    Telescopic { betas, qs }
}

pub struct Case {
    pub label: String,
    pub spec: ValuationSpec,
    pub bound: TruncationBound,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn random_case(rng: &mut ChaCha8Rng, vtype: ValuationType) -> Case {
    use ValuationType::*;
    let (doc, bound) = match vtype {
        T41 => {
            let g = rng.gen_range(1..=2);
            let t = telescopic(rng, g);
            let top = *t.betas.iter().max().unwrap();
            let bound = top + t.betas[0] + rng.gen_range(0..10);
            (
                SpecDocument::new(
                    T41,
                    g as u64,
                    t.betas.iter().map(|&b| Value::integer(b)).collect(),
                )
                .with_qs(t.qs.clone()),
                TruncationBound::Scalar(Value::integer(bound)),
            )
        }
        T1 => {
            let n = rng.gen_range(1..=3);
            let t = telescopic(rng, n);
            let e0 = t.betas[0];
            let betas: Vec<BigRational> = t
                .betas
                .iter()
                .map(|&b| BigRational::new(b.into(), e0.into()))
                .collect();
            // the next generator exceeds q_N β_N
            let lower = &int(t.qs[n - 1]) * &betas[n];
            let top = betas.iter().max().unwrap().clone();
            let bound = (&top + &lower) / int(2);
            (
                SpecDocument::new(T1, 0, betas.into_iter().map(Value::Rational).collect())
                    .with_qs(t.qs.clone())
                    .with_next_beta_lower_bound(Value::Rational(lower)),
                TruncationBound::Scalar(Value::Rational(bound)),
            )
        }
        T2 => {
            let g = rng.gen_range(1..=3);
            let t = telescopic(rng, g - 1);
            let (c, d) = (rng.gen_range(0..4), rng.gen_range(1..4));
            let mut betas: Vec<Value> = t.betas.iter().map(|&b| Value::quad_int(b, 0)).collect();
            betas.push(Value::quad_int(c, d));
            let tau: Vec<u64> = (0..30).map(|_| rng.gen_range(1..=3)).collect();
            let top = *t.betas.iter().max().unwrap();
            let bound = top + c + 3 * d + rng.gen_range(0..6);
            (
                SpecDocument::new(T2, g as u64, betas)
                    .with_qs(t.qs.clone())
                    .with_tau(tau),
                TruncationBound::Scalar(Value::quad_int(bound, 0)),
            )
        }
        T3 | T42 => {
            let g = if vtype == T3 {
                rng.gen_range(1..=3)
            } else {
                rng.gen_range(0..=2)
            };
            let t = telescopic(rng, if vtype == T3 { g - 1 } else { g });
            let (c, d) = (rng.gen_range(0..4), rng.gen_range(1..3));
            let mut betas: Vec<Value> = t.betas.iter().map(|&b| Value::lex(b, 0)).collect();
            betas.push(Value::lex(c, d));
            let top = *t.betas.iter().max().unwrap();
            let first = top + c + t.betas[0] + rng.gen_range(0..6);
            let second = 2 * d + rng.gen_range(0..3);
            (
                SpecDocument::new(vtype, g as u64, betas).with_qs(t.qs.clone()),
                TruncationBound::boxed(first, second),
            )
        }
        T0 => panic!("divisorial specs are not part of the random corpus"),
    };
    let spec =
        validate_spec(&doc).unwrap_or_else(|e| panic!("generated invalid spec {doc:?}: {e}"));
    let label = format!(
        "type {} betas [{}] qs {:?} bound {}",
        vtype,
        spec.betas()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        spec.qs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        bound
    );
    Case { label, spec, bound }
}

/// `per_type` cases of each of types 1, 2, 3, 4.1 and 4.2.
pub fn corpus(rng: &mut ChaCha8Rng, per_type: usize) -> Vec<Case> {
    use ValuationType::*;
    let mut out = Vec::new();
    for t in [T1, T2, T3, T41, T42] {
        for _ in 0..per_type {
            out.push(random_case(rng, t));
        }
    }
    out
}
