//! The classification pipeline: exact spectral verdicts first, then the
//! certified witness machinery, then window-limited scans and Stepanov
//! tests. The exact and numeric paths are cross-checked; a contradiction is
//! a hard diagnostic failure, never a silent preference.

use crate::error::{Error, Result};
use crate::frequency::Frequency;
use crate::periods::{
    almost_anti_periodic_test, semi_anti_witness, semi_bloch_witness, SemiWitness, WitnessSearch,
};
use crate::signal::Signal;
use crate::spectrum::spectral_classify;
use crate::stepanov::{stepanov_semi_test, CandidateSearch, SemiMode};
use crate::verdict::{Method, Verdict};
use serde::Serialize;
use std::collections::BTreeMap;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default absolute tolerance recorded in reports for numeric comparisons.
pub const DEFAULT_NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub epsilon: f64,
    /// Scan window `[0, window_end]`.
    pub window_end: f64,
    pub q: f64,
    pub k: Option<Frequency>,
    /// Scan step; `None` picks `epsilon / (4 L)` clamped to `[1e-4, 0.05]`.
    pub scan_step: Option<f64>,
    pub workers: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            window_end: 1e4,
            q: 1.0,
            k: None,
            scan_step: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub p: f64,
    pub label: String,
    pub bound: f64,
    pub m_cycle: u64,
    pub certified_all_m: bool,
}

impl From<&SemiWitness> for WitnessSummary {
    fn from(w: &SemiWitness) -> Self {
        Self {
            p: w.p,
            label: w.label(),
            bound: w.bound,
            m_cycle: w.m_cycle,
            certified_all_m: w.certified_all_m,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub evidence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl ClassEntry {
    fn new(verdict: Verdict, method: Method, evidence: impl Into<String>) -> Self {
        Self {
            verdict,
            method: Some(method),
            evidence: evidence.into(),
            witness: None,
            window: None,
            epsilon: None,
        }
    }

    fn unknown(evidence: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::Unknown,
            method: None,
            evidence: evidence.into(),
            witness: None,
            window: None,
            epsilon: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptionsEcho {
    pub epsilon: f64,
    pub window: (f64, f64),
    pub q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_step: Option<f64>,
    pub numeric_tolerance: f64,
    pub workers: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub signal_id: String,
    pub toolkit_version: String,
    pub input_digest: String,
    pub options: OptionsEcho,
    pub classes: BTreeMap<String, ClassEntry>,
    pub notes: Vec<String>,
    /// Excluded from the digest; filled by front-ends that want a stamp.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "signal: {} (toolkit {}, digest {})\n",
            self.signal_id, self.toolkit_version, self.input_digest
        ));
        for (name, entry) in &self.classes {
            let method = entry
                .method
                .map(|m| format!(" [{m}]"))
                .unwrap_or_default();
            out.push_str(&format!(
                "  {name}: {}{method} — {}\n",
                entry.verdict, entry.evidence
            ));
            if let Some(w) = &entry.witness {
                out.push_str(&format!(
                    "      witness p = {} ({:.6}), bound {:.3e}, cycle {}\n",
                    w.label, w.p, w.bound, w.m_cycle
                ));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

fn witness_entry(
    search: &WitnessSearch,
    epsilon: f64,
    spectral: Option<(Verdict, &str)>,
    class_name: &str,
) -> Result<ClassEntry> {
    let (verdict, method, evidence, witness) = match search {
        WitnessSearch::Found(w) => (
            Verdict::Yes,
            Method::NumericWitness,
            format!("certified witness at epsilon {epsilon:.3e}"),
            Some(WitnessSummary::from(w)),
        ),
        WitnessSearch::NotInClass { reason } => {
            (Verdict::No, Method::Spectral, reason.clone(), None)
        }
        WitnessSearch::Inconclusive { reason } => {
            (Verdict::Unknown, Method::NumericWitness, reason.clone(), None)
        }
    };
    if let Some((spec_verdict, spec_evidence)) = spectral {
        // the exact and numeric paths must not contradict each other
        let conflict = matches!(
            (spec_verdict, verdict),
            (Verdict::Yes, Verdict::No) | (Verdict::No, Verdict::Yes)
        );
        if conflict {
            return Err(Error::Disagreement(format!(
                "{class_name}: spectral path says {spec_verdict} ({spec_evidence}) but numeric path says {verdict} ({evidence})"
            )));
        }
        // prefer the decisive side; attach both pieces of evidence
        let (final_verdict, final_method) = match (spec_verdict, verdict) {
            (Verdict::Unknown, v) => (v, method),
            (v, Verdict::Unknown) => (v, Method::Spectral),
            (v, _) => (v, Method::Spectral),
        };
        let mut entry = ClassEntry::new(
            final_verdict,
            final_method,
            format!("spectral: {spec_evidence}; numeric: {evidence}"),
        );
        entry.witness = witness;
        entry.epsilon = Some(epsilon);
        return Ok(entry);
    }
    let mut entry = ClassEntry::new(verdict, method, evidence);
    entry.witness = witness;
    entry.epsilon = Some(epsilon);
    Ok(entry)
}

/// Scan step that resolves hits at level `epsilon` for a signal of envelope
/// Lipschitz constant `l`.
fn auto_scan_step(epsilon: f64, l: f64, user: Option<f64>) -> f64 {
    match user {
        Some(s) => s,
        None => {
            if l <= 0.0 {
                0.05
            } else {
                (epsilon / (4.0 * l)).clamp(1e-4, 0.05)
            }
        }
    }
}

/// Runs the full classification pipeline.
pub fn classify(
    signal: &Signal,
    opts: &ClassifyOptions,
    signal_id: &str,
    input_digest: &str,
) -> Result<ClassificationReport> {
    if !(opts.epsilon > 0.0) {
        return Err(Error::Parameter(format!(
            "epsilon must be positive, got {}",
            opts.epsilon
        )));
    }
    let mut classes: BTreeMap<String, ClassEntry> = BTreeMap::new();
    let mut notes = vec![
        "general almost periodic signals are represented here by exact trig polynomials, \
         truncated series with tail bounds, or numeric carriers; verdicts are scoped to the \
         representation"
            .to_string(),
    ];

    let exact = signal.exact_head().is_some();
    let spectral = if exact {
        Some(spectral_classify(signal)?)
    } else {
        None
    };

    // semiPeriodic and semiAnti: spectral verdicts cross-checked against the
    // certified witness machinery
    if let Some(spec) = &spectral {
        let sp_search = semi_bloch_witness(signal, &Frequency::zero(), opts.epsilon)?;
        classes.insert(
            "semiPeriodic".into(),
            witness_entry(
                &sp_search,
                opts.epsilon,
                Some((spec.semi_periodic, spec.evidence.as_str())),
                "semiPeriodic",
            )?,
        );
        let sa_search = semi_anti_witness(signal, opts.epsilon)?;
        classes.insert(
            "semiAnti".into(),
            witness_entry(
                &sa_search,
                opts.epsilon,
                Some((spec.semi_anti, spec.evidence.as_str())),
                "semiAnti",
            )?,
        );
        classes.insert(
            "anpMember".into(),
            ClassEntry::new(
                if spec.anp_member { Verdict::Yes } else { Verdict::No },
                Method::Spectral,
                if spec.anp_member {
                    "0 outside the spectrum".to_string()
                } else {
                    "0 in the spectrum".to_string()
                },
            ),
        );
        if spec.head_only {
            notes.push("series verdicts are head-based with tail slack".into());
        }
    } else {
        let reason = format!(
            "{} representation has no exact spectrum; spectral classification unavailable",
            signal.kind()
        );
        classes.insert("semiPeriodic".into(), ClassEntry::unknown(reason.clone()));
        classes.insert("semiAnti".into(), ClassEntry::unknown(reason.clone()));
        classes.insert("anpMember".into(), ClassEntry::unknown(reason));
    }

    // semiBloch at the requested wave vector, checked for consistency with
    // the reduction equivalence
    if let Some(k) = &opts.k {
        if exact {
            let direct = semi_bloch_witness(signal, k, opts.epsilon)?;
            let reduced = reduce_signal(signal, k)?;
            let reduced_spec = spectral_classify(&reduced)?;
            let entry = witness_entry(
                &direct,
                opts.epsilon,
                Some((reduced_spec.semi_periodic, "reduced-spectrum commensurability")),
                "semiBloch",
            )?;
            classes.insert(format!("semiBloch(k = {k})"), entry);
        } else {
            classes.insert(
                format!("semiBloch(k = {k})"),
                ClassEntry::unknown("semi-Bloch witness search needs an exact representation"),
            );
        }
    }

    // almostAnti: window-limited scan evidence
    {
        let l_env = signal
            .exact_head()
            .map(|h| h.lipschitz_bound())
            .or_else(|| signal.lipschitz_bound())
            .unwrap_or(0.0);
        let step = auto_scan_step(opts.epsilon, l_env, opts.scan_step);
        let window_end = match signal.evaluable_window() {
            Some((lo, hi)) => opts.window_end.min((hi - lo) / 2.0),
            None => opts.window_end,
        };
        let (verdict, set) =
            almost_anti_periodic_test(signal, opts.epsilon, window_end, step, opts.workers)?;
        let mut entry = ClassEntry::new(
            verdict,
            Method::NumericScan,
            format!(
                "{} certified antiperiod hits on [0, {window_end}], max gap {:.4} vs density threshold {:.4}{}",
                set.hits.len(),
                set.max_gap,
                set.dense_threshold,
                if set.certified { "" } else { "; grid-only (no Lipschitz bound)" }
            ),
        );
        entry.window = Some((0.0, window_end));
        entry.epsilon = Some(opts.epsilon);
        classes.insert("almostAnti".into(), entry);
    }

    // Stepanov lifts
    {
        let search = match signal {
            Signal::Piecewise(_) => CandidateSearch {
                t_step: 0.25,
                ..CandidateSearch::default()
            },
            // grid-only carriers get a coarse, bounded search
            Signal::Sampled(_) => CandidateSearch {
                candidate_step: 0.1,
                p_max: 2.0,
                m_horizon: 50,
                t_step: 0.25,
            },
            _ => CandidateSearch::default(),
        };
        for (name, mode) in [
            ("stepanovSemiPeriodic", SemiMode::Periodic),
            ("stepanovSemiAnti", SemiMode::Anti),
        ] {
            let entry = match stepanov_semi_test(
                signal,
                mode,
                opts.q,
                opts.epsilon,
                &search,
                opts.workers,
            ) {
                Ok(result) => {
                    let mut e = witness_entry(&result, opts.epsilon, None, name)?;
                    if exact && e.witness.is_some() {
                        e.evidence = format!(
                            "{} (uniform witness dominates every unit-window L^q mean)",
                            e.evidence
                        );
                    }
                    if !exact {
                        e.method = Some(Method::NumericScan);
                    }
                    e
                }
                Err(Error::Unsupported(reason)) | Err(Error::Domain(reason)) => {
                    ClassEntry::unknown(reason)
                }
                Err(e) => return Err(e),
            };
            classes.insert(format!("{name}(q = {})", opts.q), entry);
        }
    }

    Ok(ClassificationReport {
        signal_id: signal_id.to_string(),
        toolkit_version: TOOLKIT_VERSION.to_string(),
        input_digest: input_digest.to_string(),
        options: OptionsEcho {
            epsilon: opts.epsilon,
            window: (0.0, opts.window_end),
            q: opts.q,
            k: opts.k.as_ref().map(|k| k.to_string()),
            scan_step: opts.scan_step,
            numeric_tolerance: DEFAULT_NUMERIC_TOLERANCE,
            workers: opts.workers,
        },
        classes,
        notes,
        generated_unix: None,
    })
}

fn reduce_signal(signal: &Signal, k: &Frequency) -> Result<Signal> {
    Ok(match signal {
        Signal::Trig(t) => Signal::Trig(t.bloch_reduce(k)),
        Signal::Series(s) => Signal::Series(crate::signal::TruncatedSeries {
            head: s.head.bloch_reduce(k),
            tail_sup_bound: s.tail_sup_bound,
        }),
        _ => {
            return Err(Error::Unsupported(
                "Bloch reduction needs an exact representation".into(),
            ))
        }
    })
}
