//! The JSON signal-spec document: parsing with field-level validation, and
//! serialization for round-trips.
//!
//! Top level: `symbols` (name -> decimal string), `kind` in
//! {trig, series, piecewise, sampled}, `domain` in {"R", "R+"}, the
//! kind-specific payload, and an optional `kernel`
//! (`{kind: "exponential", omega}`, `{kind: "gauss", time}`,
//! `{kind: "tabulated", step, values}`, each with optional `qPrime`).

use crate::convolution::{KernelFamily, KernelKind, QPrime};
use crate::error::{Error, Result};
use crate::frequency::{Frequency, Rational};
use crate::signal::{
    Domain, PiecewiseConstantSignal, SampledSignal, Signal, TrigPolynomial, TrigTerm,
    TruncatedSeries,
};
use crate::symbol::SymbolTable;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermSpec {
    pub re: f64,
    pub im: f64,
    pub num: i64,
    pub den: i64,
    pub symbol: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleSpec {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct KernelSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    /// A number >= 1, or the string "inf" (the default).
    #[serde(rename = "qPrime", skip_serializing_if = "Option::is_none")]
    pub q_prime: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct SignalSpecDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub symbols: BTreeMap<String, String>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
    #[serde(rename = "tailSupBound", skip_serializing_if = "Option::is_none")]
    pub tail_sup_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleSpec>>,
    #[serde(rename = "lipschitzBound", skip_serializing_if = "Option::is_none")]
    pub lipschitz_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSpec>,
}

#[derive(Debug, Clone)]
pub struct ParsedDocument {
    pub id: String,
    pub signal: Signal,
    pub kernel: Option<KernelFamily>,
    pub table: SymbolTable,
}

/// Parses and validates a signal-spec document.
pub fn parse_signal_spec(text: &str) -> Result<ParsedDocument> {
    let doc: SignalSpecDoc = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    realize(&doc)
}

/// Builds the runtime values from an already-deserialized document.
pub fn realize(doc: &SignalSpecDoc) -> Result<ParsedDocument> {
    let mut table = SymbolTable::new();
    for (name, literal) in &doc.symbols {
        table.declare(name, literal)?;
    }

    let domain = match doc.domain.as_deref() {
        Some("R") => Some(Domain::RealLine),
        Some("R+") => Some(Domain::HalfLine),
        Some(other) => {
            return Err(Error::validation(
                "domain",
                format!("expected \"R\" or \"R+\", got \"{other}\""),
            ))
        }
        None => None,
    };
    let need_domain = || {
        domain.ok_or_else(|| Error::validation("domain", "required for trig and series kinds"))
    };

    let parse_terms = |specs: &Vec<TermSpec>| -> Result<Vec<TrigTerm>> {
        let mut terms = Vec::with_capacity(specs.len());
        for (i, t) in specs.iter().enumerate() {
            if t.den <= 0 {
                return Err(Error::validation(
                    format!("terms[{i}].den"),
                    format!("denominator must be positive, got {}", t.den),
                ));
            }
            let symbol = table.get(&t.symbol).ok_or_else(|| {
                Error::validation(
                    format!("terms[{i}].symbol"),
                    format!("undeclared symbol `{}`", t.symbol),
                )
            })?;
            let freq = if t.num == 0 && t.symbol != "one" {
                return Err(Error::validation(
                    format!("terms[{i}].num"),
                    "zero frequency must use the `one` symbol",
                ));
            } else {
                Frequency::single(symbol, Rational::new(t.num, t.den))
            };
            terms.push(TrigTerm {
                coeff: Complex64::new(t.re, t.im),
                freq,
            });
        }
        Ok(terms)
    };

    let signal = match doc.kind.as_str() {
        "trig" => {
            let terms = doc
                .terms
                .as_ref()
                .ok_or_else(|| Error::validation("terms", "required for kind \"trig\""))?;
            Signal::Trig(TrigPolynomial::new(parse_terms(terms)?, need_domain()?)?)
        }
        "series" => {
            let terms = doc
                .terms
                .as_ref()
                .ok_or_else(|| Error::validation("terms", "required for kind \"series\""))?;
            let tail = doc.tail_sup_bound.ok_or_else(|| {
                Error::validation("tailSupBound", "required for kind \"series\"")
            })?;
            Signal::Series(TruncatedSeries::new(
                TrigPolynomial::new(parse_terms(terms)?, need_domain()?)?,
                tail,
            )?)
        }
        "piecewise" => {
            let breakpoints = doc
                .breakpoints
                .clone()
                .ok_or_else(|| Error::validation("breakpoints", "required for kind \"piecewise\""))?;
            let values = doc
                .values
                .clone()
                .ok_or_else(|| Error::validation("values", "required for kind \"piecewise\""))?;
            Signal::Piecewise(PiecewiseConstantSignal::new(breakpoints, values)?)
        }
        "sampled" => {
            let origin = doc
                .origin
                .ok_or_else(|| Error::validation("origin", "required for kind \"sampled\""))?;
            let step = doc
                .step
                .ok_or_else(|| Error::validation("step", "required for kind \"sampled\""))?;
            let samples = doc
                .samples
                .as_ref()
                .ok_or_else(|| Error::validation("samples", "required for kind \"sampled\""))?
                .iter()
                .map(|s| Complex64::new(s.re, s.im))
                .collect();
            Signal::Sampled(SampledSignal::new(origin, step, samples, doc.lipschitz_bound)?)
        }
        other => {
            return Err(Error::validation(
                "kind",
                format!("expected trig | series | piecewise | sampled, got \"{other}\""),
            ))
        }
    };

    let kernel = doc.kernel.as_ref().map(parse_kernel).transpose()?;

    Ok(ParsedDocument {
        id: doc.id.clone().unwrap_or_else(|| "unnamed".to_string()),
        signal,
        kernel,
        table,
    })
}

fn parse_kernel(spec: &KernelSpec) -> Result<KernelFamily> {
    let q_prime = match &spec.q_prime {
        None => QPrime::Infinity,
        Some(serde_json::Value::String(s)) if s == "inf" => QPrime::Infinity,
        Some(serde_json::Value::Number(n)) => QPrime::Finite(n.as_f64().unwrap_or(f64::NAN)),
        Some(other) => {
            return Err(Error::validation(
                "kernel.qPrime",
                format!("expected a number >= 1 or \"inf\", got {other}"),
            ))
        }
    };
    let kind = match spec.kind.as_str() {
        "exponential" => KernelKind::Exponential {
            omega: spec
                .omega
                .ok_or_else(|| Error::validation("kernel.omega", "required for exponential kernels"))?,
        },
        "gauss" => KernelKind::GaussWeierstrass {
            time: spec
                .time
                .ok_or_else(|| Error::validation("kernel.time", "required for gauss kernels"))?,
        },
        "tabulated" => KernelKind::Tabulated {
            step: spec
                .step
                .ok_or_else(|| Error::validation("kernel.step", "required for tabulated kernels"))?,
            values: spec
                .values
                .clone()
                .ok_or_else(|| Error::validation("kernel.values", "required for tabulated kernels"))?,
        },
        other => {
            return Err(Error::validation(
                "kernel.kind",
                format!("expected exponential | gauss | tabulated, got \"{other}\""),
            ))
        }
    };
    KernelFamily::new(kind, q_prime)
}

/// Serializes a signal (plus its symbol table) back into document form.
pub fn to_document(signal: &Signal, table: &SymbolTable, id: Option<&str>) -> SignalSpecDoc {
    let mut symbols = BTreeMap::new();
    for sym in table.iter() {
        if sym.name() != "one" {
            symbols.insert(sym.name().to_string(), sym.literal().to_string());
        }
    }
    symbols.insert("one".into(), "1".into());

    let mut doc = SignalSpecDoc {
        id: id.map(|s| s.to_string()),
        symbols,
        ..Default::default()
    };
    let term_specs = |t: &TrigPolynomial| -> Vec<TermSpec> {
        t.terms()
            .iter()
            .map(|term| {
                let (sym, coeff) = term
                    .freq
                    .single_component()
                    .map(|(s, c)| (s.name().to_string(), c))
                    .unwrap_or_else(|| ("one".to_string(), Rational::new(0, 1)));
                TermSpec {
                    re: term.coeff.re,
                    im: term.coeff.im,
                    num: *coeff.numer(),
                    den: *coeff.denom(),
                    symbol: sym,
                }
            })
            .collect()
    };
    match signal {
        Signal::Trig(t) => {
            doc.kind = "trig".into();
            doc.domain = Some(t.domain().to_string());
            doc.terms = Some(term_specs(t));
        }
        Signal::Series(s) => {
            doc.kind = "series".into();
            doc.domain = Some(s.head.domain().to_string());
            doc.terms = Some(term_specs(&s.head));
            doc.tail_sup_bound = Some(s.tail_sup_bound);
        }
        Signal::Piecewise(p) => {
            doc.kind = "piecewise".into();
            doc.breakpoints = Some(p.breakpoints().to_vec());
            doc.values = Some(p.values().to_vec());
        }
        Signal::Sampled(s) => {
            doc.kind = "sampled".into();
            doc.origin = Some(s.origin());
            doc.step = Some(s.step());
            doc.samples = Some(
                s.samples()
                    .iter()
                    .map(|c| SampleSpec { re: c.re, im: c.im })
                    .collect(),
            );
            doc.lipschitz_bound = s.lipschitz_bound();
        }
    }
    doc
}

pub fn to_json(doc: &SignalSpecDoc) -> String {
    serde_json::to_string_pretty(doc).expect("document serialization")
}

/// SHA-256 hex digest of the inputs that determine a report.
pub fn input_digest(document: &str, options_echo: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(document.as_bytes());
    hasher.update(b"\x00");
    hasher.update(options_echo.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;

    const COS_DOC: &str = r#"{
        "kind": "trig",
        "domain": "R",
        "symbols": {"one": "1"},
        "terms": [
            {"re": 0.5, "im": 0, "num": 1, "den": 1, "symbol": "one"},
            {"re": 0.5, "im": 0, "num": -1, "den": 1, "symbol": "one"}
        ]
    }"#;

    #[test]
    fn parses_the_cosine_document() {
        let parsed = parse_signal_spec(COS_DOC).unwrap();
        let head = parsed.signal.exact_head().unwrap();
        assert_eq!(head.terms().len(), 2);
        assert!((parsed.signal.evaluate(0.0).unwrap().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn duplicate_frequencies_are_a_validation_error() {
        let doc = r#"{
            "kind": "trig", "domain": "R",
            "terms": [
                {"re": 0.5, "im": 0, "num": 1, "den": 1, "symbol": "one"},
                {"re": 0.25, "im": 0, "num": 2, "den": 2, "symbol": "one"}
            ]
        }"#;
        match parse_signal_spec(doc) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "terms"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_signal_spec("{\n  \"kind\": trig\n}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_increasing_breakpoints_name_the_field() {
        let doc = r#"{"kind": "piecewise", "breakpoints": [0, 2, 1], "values": [1, -1]}"#;
        match parse_signal_spec(doc) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "breakpoints"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_preserves_the_signal() {
        let parsed = parse_signal_spec(COS_DOC).unwrap();
        let doc = to_document(&parsed.signal, &parsed.table, Some("cos"));
        let again = realize(&doc).unwrap();
        assert_eq!(parsed.signal, again.signal);
        let doc2 = to_document(&again.signal, &again.table, Some("cos"));
        assert_eq!(doc, doc2);
    }

    #[test]
    fn kernel_specs_parse() {
        let doc = r#"{
            "kind": "trig", "domain": "R",
            "terms": [{"re": 1, "im": 0, "num": 1, "den": 1, "symbol": "one"}],
            "kernel": {"kind": "exponential", "omega": 1.0, "qPrime": "inf"}
        }"#;
        let parsed = parse_signal_spec(doc).unwrap();
        assert!(matches!(
            parsed.kernel.unwrap().kind,
            KernelKind::Exponential { .. }
        ));

        let bad = r#"{
            "kind": "trig", "domain": "R",
            "terms": [{"re": 1, "im": 0, "num": 1, "den": 1, "symbol": "one"}],
            "kernel": {"kind": "exponential", "omega": -1.0}
        }"#;
        assert!(parse_signal_spec(bad).is_err());
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = input_digest("doc", "opts");
        assert_eq!(a, input_digest("doc", "opts"));
        assert_ne!(a, input_digest("doc2", "opts"));
        assert_eq!(a.len(), 64);
    }
}
