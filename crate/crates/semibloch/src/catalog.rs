//! Built-in signal catalog: the reference fixtures the classifier is
//! regression-tested against, each with its expected verdicts.

use crate::classify::{classify, ClassificationReport, ClassifyOptions};
use crate::error::{Error, Result};
use crate::frequency::{Frequency, Rational};
use crate::signal::{
    rational_freq, Domain, SampledSignal, Signal, TrigPolynomial, TruncatedSeries,
};
use crate::stepanov::alternating_quadratic_steps;
use crate::symbol::SymbolTable;
use crate::verdict::Verdict;
use num::complex::Complex64;

/// One expected verdict, with the options it is checked under.
#[derive(Debug, Clone)]
pub struct Expectation {
    pub class: &'static str,
    pub verdict: Verdict,
    /// Frequency expression for `--k`, parsed against the entry's table.
    pub k: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub epsilon: f64,
    pub window_end: f64,
    pub q: f64,
    pub expectations: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<(Signal, SymbolTable)> {
        build_signal(self.name)
    }

    pub fn base_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            epsilon: self.epsilon,
            window_end: self.window_end,
            q: self.q,
            ..Default::default()
        }
    }
}

fn expect(class: &'static str, verdict: Verdict) -> Expectation {
    Expectation {
        class,
        verdict,
        k: None,
    }
}

fn expect_k(class: &'static str, verdict: Verdict, k: &'static str) -> Expectation {
    Expectation {
        class,
        verdict,
        k: Some(k),
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    use Verdict::*;
    vec![
        CatalogEntry {
            name: "demos",
            description: "nonzero constant: periodic, hence semi-periodic, but outside the anti-periodic closure",
            epsilon: 1e-3,
            window_end: 2000.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Yes),
                expect("semiAnti", No),
                expect("anpMember", No),
                expect("almostAnti", No),
            ],
        },
        CatalogEntry {
            name: "kosinus",
            description: "cos x: anti-periodic; semi-Bloch k-periodic exactly for rational k",
            epsilon: 1e-3,
            window_end: 2000.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Yes),
                expect("semiAnti", Yes),
                expect("anpMember", Yes),
                expect("almostAnti", Yes),
                expect_k("semiBloch(k = 1/2)", Yes, "1/2"),
                expect_k("semiBloch(k = 1*sqrt2)", No, "sqrt2"),
            ],
        },
        CatalogEntry {
            name: "strina",
            description: "sin x + sin(pi sqrt2 x): almost anti-periodic but not semi-periodic",
            epsilon: 0.2,
            window_end: 1e4,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", No),
                expect("semiAnti", No),
                expect("anpMember", Yes),
                expect("almostAnti", Yes),
            ],
        },
        CatalogEntry {
            name: "strina1",
            description: "head of sum e^{ix/(2n+1)}/n^2 (N = 4) with the exact tail bound",
            epsilon: 0.5,
            window_end: 1e4,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Yes),
                expect("semiAnti", Yes),
                expect("anpMember", Yes),
            ],
        },
        CatalogEntry {
            name: "olomuc",
            description: "frequencies {1/3, 5/7}: odd multiples of theta = 1/21",
            epsilon: 1e-3,
            window_end: 2000.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Yes),
                expect("semiAnti", Yes),
                expect("anpMember", Yes),
                expect("almostAnti", Yes),
            ],
        },
        CatalogEntry {
            name: "gaston",
            description: "e^{ix} + e^{3ix}/2: exact Bloch (pi, 1)-periodic heat-equation datum",
            epsilon: 1e-3,
            window_end: 2000.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Yes),
                expect("semiAnti", Yes),
                expect("anpMember", Yes),
                expect("almostAnti", Yes),
                expect_k("semiBloch(k = 1)", Yes, "1"),
            ],
        },
        CatalogEntry {
            name: "pepa-stepa",
            description: "sin(1/(2 + cos t + cos(sqrt2 t))) sampled: exploratory fixture, no class verdict",
            epsilon: 0.5,
            window_end: 100.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Unknown),
                expect("semiAnti", Unknown),
                expect("anpMember", Unknown),
                expect("almostAnti", Unknown),
                expect("stepanovSemiPeriodic(q = 1)", Unknown),
            ],
        },
        CatalogEntry {
            name: "pepa-stepa-levitan",
            description: "alternating step signal on quadratic blocks: certified non-Stepanov-semi-periodic",
            epsilon: 0.5,
            window_end: 400.0,
            q: 1.0,
            expectations: vec![
                expect("semiPeriodic", Unknown),
                expect("stepanovSemiPeriodic(q = 1)", No),
                expect("almostAnti", No),
            ],
        },
    ]
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown catalog entry `{name}`")))
}

/// Builds the signal and the symbol table backing a catalog entry.
pub fn build_signal(name: &str) -> Result<(Signal, SymbolTable)> {
    let table = SymbolTable::with_builtins();
    let signal = match name {
        "demos" => Signal::Trig(TrigPolynomial::constant(
            Complex64::new(1.0, 0.0),
            Domain::RealLine,
        )),
        "kosinus" => Signal::Trig(TrigPolynomial::cosine(Domain::RealLine)),
        "strina" => {
            let ps2 = table.get("pi_sqrt2").expect("builtin");
            let sin_x = TrigPolynomial::sine_of(Frequency::integer(1), Domain::RealLine);
            let sin_ps2 = TrigPolynomial::sine_of(
                Frequency::single(ps2, Rational::new(1, 1)),
                Domain::RealLine,
            );
            Signal::Trig(TrigPolynomial::from_parts(
                sin_x
                    .terms()
                    .iter()
                    .chain(sin_ps2.terms())
                    .map(|t| (t.coeff, t.freq.clone())),
                Domain::RealLine,
            ))
        }
        "strina1" => {
            let head = TrigPolynomial::from_parts(
                (1..=4).map(|n| {
                    (
                        Complex64::new(1.0 / ((n * n) as f64), 0.0),
                        rational_freq(1, 2 * n + 1),
                    )
                }),
                Domain::RealLine,
            );
            // sum_{n > 4} 1/n^2 = pi^2/6 - 1 - 1/4 - 1/9 - 1/16, rounded up
            Signal::Series(TruncatedSeries::new(head, 0.221_323)?)
        }
        "olomuc" => Signal::Trig(TrigPolynomial::from_parts(
            [
                (Complex64::new(1.0, 0.0), rational_freq(1, 3)),
                (Complex64::new(1.0, 0.0), rational_freq(5, 7)),
            ],
            Domain::RealLine,
        )),
        "gaston" => Signal::Trig(TrigPolynomial::from_parts(
            [
                (Complex64::new(1.0, 0.0), rational_freq(1, 1)),
                (Complex64::new(0.5, 0.0), rational_freq(3, 1)),
            ],
            Domain::RealLine,
        )),
        "pepa-stepa" => {
            let sqrt2 = table.get("sqrt2").expect("builtin").value();
            Signal::Sampled(SampledSignal::from_fn(0.0, 100.0, 0.01, None, |t| {
                let denom = 2.0 + t.cos() + (sqrt2 * t).cos();
                Complex64::new((1.0 / denom).sin(), 0.0)
            })?)
        }
        "pepa-stepa-levitan" => Signal::Piecewise(alternating_quadratic_steps(20)),
        other => return Err(Error::Parse(format!("unknown catalog entry `{other}`"))),
    };
    Ok((signal, table))
}

/// Outcome of checking one expectation.
#[derive(Debug, Clone)]
pub struct RegressionLine {
    pub entry: &'static str,
    pub class: String,
    pub expected: Verdict,
    pub actual: Verdict,
    pub ok: bool,
}

/// Runs all of an entry's expectations, grouping them by wave vector so each
/// option set is classified once.
pub fn run_entry(entry: &CatalogEntry) -> Result<(Vec<RegressionLine>, Vec<ClassificationReport>)> {
    let (signal, table) = entry.build()?;
    let mut k_groups: Vec<Option<&'static str>> = Vec::new();
    for e in &entry.expectations {
        if !k_groups.contains(&e.k) {
            k_groups.push(e.k);
        }
    }
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    for k_expr in k_groups {
        let mut opts = entry.base_options();
        if let Some(expr) = k_expr {
            opts.k = Some(Frequency::parse(expr, &table)?);
        }
        let report = classify(&signal, &opts, entry.name, "catalog")?;
        for e in entry.expectations.iter().filter(|e| e.k == k_expr) {
            let actual = report
                .classes
                .get(e.class)
                .map(|c| c.verdict)
                .unwrap_or(Verdict::Unknown);
            lines.push(RegressionLine {
                entry: entry.name,
                class: e.class.to_string(),
                expected: e.verdict,
                actual,
                ok: actual == e.verdict,
            });
        }
        reports.push(report);
    }
    Ok((lines, reports))
}
