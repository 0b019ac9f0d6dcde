//! Bohr transform estimation, exact spectrum extraction and spectral
//! classification via frequency commensurability and 2-adic valuations.

use crate::error::{Error, Result};
use crate::frequency::{
    common_direction, rational_gcd_all, two_adic_valuation, Frequency, Rational,
};
use crate::numeric::{even_subdivisions, simpson_complex};
use crate::signal::Signal;
use crate::verdict::Verdict;
use num::complex::Complex64;
use num::Signed;

/// Finite-horizon estimate of the Bohr coefficient
/// `P_r(f) = lim (1/t) int_0^t e^{-irs} f(s) ds`.
#[derive(Debug, Clone, Copy)]
pub struct BohrEstimate {
    pub estimate: Complex64,
    /// Certified truncation bound `sum_{lambda != r} 2|a_j| / (T |lambda_j - r|)`
    /// for exact representations (plus tail slack for series); `None` when the
    /// representation does not certify one.
    pub error_bound: Option<f64>,
}

/// Numeric Bohr coefficient over `[0, T]` by composite Simpson quadrature.
/// Panel width resolves the fastest oscillation of `e^{-irs} f(s)` so the
/// quadrature error stays below `1e-10 * sum |a_j|` for exact inputs.
pub fn bohr_coefficient(signal: &Signal, r: f64, t_horizon: f64, workers: usize) -> Result<BohrEstimate> {
    if !(t_horizon >= 1.0) {
        return Err(Error::Parameter(format!(
            "Bohr horizon must satisfy T >= 1, got {t_horizon}"
        )));
    }
    if let Some((lo, hi)) = signal.evaluable_window() {
        if lo > 0.0 || hi < t_horizon {
            return Err(Error::Domain(format!(
                "signal window [{lo}, {hi}] does not cover the Bohr horizon [0, {t_horizon}]"
            )));
        }
    }

    // fastest oscillation after demodulating by e^{-irs}
    let max_delta = match signal.exact_head() {
        Some(head) => head
            .terms()
            .iter()
            .map(|t| (t.freq.value() - r).abs())
            .fold(0.0, f64::max),
        None => 1.0 + r.abs(),
    };
    // composite Simpson: h^4 max|f''''| / 180 <= 1e-10 sum|a| with
    // |f''''| <= sum|a_j| delta_j^4, so h = (180e-10)^{1/4} / max_delta
    let width = (0.0115 / max_delta.max(0.5)).min(0.05);
    let n_sub = even_subdivisions(t_horizon, width);
    let value = simpson_complex(
        |s| Complex64::new(0.0, -r * s).exp() * signal.evaluate(s).unwrap_or(Complex64::new(f64::NAN, 0.0)),
        0.0,
        t_horizon,
        n_sub,
        workers,
    ) / t_horizon;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Domain(
            "signal not evaluable over the Bohr horizon".into(),
        ));
    }

    let error_bound = signal.exact_head().map(|head| {
        let truncation: f64 = head
            .terms()
            .iter()
            .filter(|t| (t.freq.value() - r).abs() > 1e-12)
            .map(|t| 2.0 * t.coeff.norm() / (t_horizon * (t.freq.value() - r).abs()))
            .sum();
        // engineered quadrature budget + tail slack on top of the
        // oscillatory-mean truncation bound
        truncation + 1e-10 * head.coeff_abs_sum() + signal.tail_sup_bound()
    });

    Ok(BohrEstimate {
        estimate: value,
        error_bound,
    })
}

/// Exact Bohr spectrum of a trig representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<Frequency>,
    /// True for truncated series: the set describes the head only.
    pub head_only: bool,
    pub source: String,
}

pub fn spectrum(signal: &Signal) -> Result<Spectrum> {
    let head = signal.exact_head().ok_or_else(|| {
        Error::Unsupported(
            "spectrum extraction needs an exact trig representation; probe with bohr_coefficient instead"
                .into(),
        )
    })?;
    Ok(Spectrum {
        frequencies: head.frequencies(),
        head_only: matches!(signal, Signal::Series(_)),
        source: format!("{}({} terms)", signal.kind(), head.terms().len()),
    })
}

/// Largest exact `theta` with every nonzero spectral frequency in
/// `theta * Z`; `None` when the nonzero frequencies span more than one
/// declared-independent direction. An empty nonzero spectrum (constant or
/// zero signal) degenerates to `theta = 1`.
pub fn commensurability_theta(spectrum: &Spectrum) -> Option<Frequency> {
    let nonzero: Vec<Frequency> = spectrum
        .frequencies
        .iter()
        .filter(|f| !f.is_zero())
        .cloned()
        .collect();
    if nonzero.is_empty() {
        return Some(Frequency::integer(1));
    }
    let (direction, ratios) = common_direction(&nonzero)?;
    let g = rational_gcd_all(ratios.iter().map(|r| r.abs()));
    Some(direction.scale(g))
}

/// Spectral classification verdicts with the exact witness data.
#[derive(Debug, Clone)]
pub struct SpectralVerdict {
    pub semi_periodic: Verdict,
    pub semi_anti: Verdict,
    /// Membership in the closure of the anti-periodic span, equivalently
    /// `0 not in sigma(f)` (head-based for series).
    pub anp_member: bool,
    pub theta: Option<Frequency>,
    pub head_only: bool,
    pub evidence: String,
}

/// Decision procedure over the exact spectrum.
///
/// Finite trig sums are decided outright: commensurability is equivalent to
/// semi-periodicity, and a uniform 2-adic valuation across the spectrum
/// (equivalently, all integer ratios to `theta` odd) together with
/// `0 not in sigma(f)` is equivalent to semi-anti-periodicity. Truncated
/// series only certify the head, so their negative cases stay `unknown`.
pub fn spectral_classify(signal: &Signal) -> Result<SpectralVerdict> {
    let s = spectrum(signal)?;
    let head_only = s.head_only;
    let zero_in = s.frequencies.iter().any(|f| f.is_zero());
    let theta = commensurability_theta(&s);
    let negative = |reason: String| -> (Verdict, String) {
        if head_only {
            (Verdict::Unknown, format!("{reason} (head-only evidence)"))
        } else {
            (Verdict::No, reason)
        }
    };

    let (semi_periodic, sp_evidence) = match &theta {
        Some(t) => (
            Verdict::Yes,
            format!("spectrum inside {t} * Z (theta = {t})"),
        ),
        None => negative("nonzero spectrum spans independent directions".into()),
    };

    let (semi_anti, sa_evidence) = if zero_in {
        negative("0 in spectrum".into())
    } else {
        match &theta {
            None => negative("nonzero spectrum spans independent directions".into()),
            Some(t) => {
                // ratios to theta are integers with gcd 1; all odd means the
                // valuations of the original frequencies agree
                let ratios: Vec<Rational> = s
                    .frequencies
                    .iter()
                    .filter(|f| !f.is_zero())
                    .map(|f| f.rational_ratio_to(t).expect("theta divides spectrum"))
                    .collect();
                debug_assert!(ratios.iter().all(|r| r.is_integer()));
                let parities: Vec<i64> = ratios.iter().map(|r| r.numer().rem_euclid(2)).collect();
                if parities.iter().all(|p| *p == 1) {
                    (
                        Verdict::Yes,
                        format!(
                            "all spectrum ratios to theta odd: {:?}",
                            ratios.iter().map(|r| *r.numer()).collect::<Vec<_>>()
                        ),
                    )
                } else {
                    let vals: Vec<i32> = s
                        .frequencies
                        .iter()
                        .filter(|f| !f.is_zero())
                        .filter_map(|f| f.rational_ratio_to(&theta_direction(t)))
                        .map(two_adic_valuation)
                        .collect();
                    negative(format!("2-adic valuations not uniform: {vals:?}"))
                }
            }
        }
    };

    Ok(SpectralVerdict {
        semi_periodic,
        semi_anti,
        anp_member: !zero_in,
        theta,
        head_only,
        evidence: format!("semiPeriodic: {sp_evidence}; semiAnti: {sa_evidence}"),
    })
}

fn theta_direction(theta: &Frequency) -> Frequency {
    theta
        .primitive_direction()
        .map(|(_, d)| d)
        .unwrap_or_else(|| Frequency::integer(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{Domain, TrigPolynomial};
    use crate::symbol::SymbolTable;
    use num::complex::Complex64;

    fn trig(parts: &[(f64, f64, i64, i64)]) -> Signal {
        Signal::Trig(TrigPolynomial::from_parts(
            parts.iter().map(|&(re, im, n, d)| {
                (
                    Complex64::new(re, im),
                    Frequency::rational(Rational::new(n, d)),
                )
            }),
            Domain::RealLine,
        ))
    }

    #[test]
    fn spectrum_of_cosine() {
        let s = spectrum(&trig(&[(0.5, 0.0, 1, 1), (0.5, 0.0, -1, 1)])).unwrap();
        assert_eq!(
            s.frequencies,
            vec![Frequency::integer(-1), Frequency::integer(1)]
        );
        assert!(!s.head_only);
    }

    #[test]
    fn spectrum_of_constant_is_zero() {
        let s = spectrum(&trig(&[(5.0, 0.0, 0, 1)])).unwrap();
        assert_eq!(s.frequencies, vec![Frequency::zero()]);
    }

    #[test]
    fn theta_examples() {
        let s = spectrum(&trig(&[(0.5, 0.0, 1, 1), (0.5, 0.0, -1, 1)])).unwrap();
        assert_eq!(commensurability_theta(&s), Some(Frequency::integer(1)));

        let s = spectrum(&trig(&[(1.0, 0.0, 1, 3), (1.0, 0.0, 5, 7)])).unwrap();
        assert_eq!(
            commensurability_theta(&s),
            Some(Frequency::rational(Rational::new(1, 21)))
        );
    }

    #[test]
    fn theta_none_for_independent_symbols() {
        let table = SymbolTable::with_builtins();
        let ps2 = table.get("pi_sqrt2").unwrap();
        let f = Signal::Trig(TrigPolynomial::from_parts(
            [
                (Complex64::new(1.0, 0.0), Frequency::integer(1)),
                (
                    Complex64::new(1.0, 0.0),
                    Frequency::single(ps2, Rational::new(1, 1)),
                ),
            ],
            Domain::RealLine,
        ));
        let s = spectrum(&f).unwrap();
        assert_eq!(commensurability_theta(&s), None);
    }

    #[test]
    fn classify_constant() {
        let v = spectral_classify(&trig(&[(3.0, 0.0, 0, 1)])).unwrap();
        assert_eq!(v.semi_periodic, Verdict::Yes);
        assert_eq!(v.semi_anti, Verdict::No);
        assert!(!v.anp_member);
    }

    #[test]
    fn classify_odd_ratio_pair() {
        // {1/3, 5/7}: theta = 1/21, ratios 7 and 15 both odd
        let v = spectral_classify(&trig(&[(1.0, 0.0, 1, 3), (1.0, 0.0, 5, 7)])).unwrap();
        assert_eq!(v.semi_periodic, Verdict::Yes);
        assert_eq!(v.semi_anti, Verdict::Yes);
        assert!(v.anp_member);
    }

    #[test]
    fn classify_mixed_valuations() {
        // {1/2, 1/3}: theta = 1/6, ratios 3 and 2 -> mixed parity
        let v = spectral_classify(&trig(&[(1.0, 0.0, 1, 2), (1.0, 0.0, 1, 3)])).unwrap();
        assert_eq!(v.semi_periodic, Verdict::Yes);
        assert_eq!(v.semi_anti, Verdict::No);
        assert!(v.anp_member);
    }

    #[test]
    fn bohr_coefficient_on_and_off_spectrum() {
        let f = trig(&[(0.5, 0.0, 1, 1), (0.5, 0.0, -1, 1)]);
        let on = bohr_coefficient(&f, 1.0, 1000.0, 1).unwrap();
        let bound = on.error_bound.unwrap();
        assert!((on.estimate - Complex64::new(0.5, 0.0)).norm() <= bound);
        assert!(bound < 1e-2);

        let off = bohr_coefficient(&f, 2.0_f64.sqrt(), 1000.0, 1).unwrap();
        assert!(off.estimate.norm() <= off.error_bound.unwrap());
    }

    #[test]
    fn bohr_horizon_validation() {
        let f = trig(&[(1.0, 0.0, 0, 1)]);
        assert!(bohr_coefficient(&f, 0.0, 0.5, 1).is_err());
    }

    #[test]
    fn zero_signal_satisfies_every_class_vacuously() {
        let zero = Signal::Trig(TrigPolynomial::zero(Domain::RealLine));
        let v = spectral_classify(&zero).unwrap();
        assert_eq!(v.semi_periodic, Verdict::Yes);
        assert_eq!(v.semi_anti, Verdict::Yes);
        assert!(v.anp_member);
        let w = crate::periods::semi_anti_witness(&zero, 1e-9).unwrap();
        assert!(w.witness().is_some());
        let w = crate::periods::semi_bloch_witness(&zero, &Frequency::rational(Rational::new(1, 2)), 1e-9).unwrap();
        assert!(w.witness().is_some());
    }
}
