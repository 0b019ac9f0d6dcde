//! Quantifier-based periodicity machinery: epsilon-period / antiperiod /
//! Bloch-period scans with certified bounds, relative-density gap
//! measurement, and exact-phase witnesses for the semi-Bloch and
//! semi-anti-periodic classes.
//!
//! Witness certification never touches floating-point phases: candidate
//! periods are chosen so that every `(lambda_j - k) * p` is an exact rational
//! multiple of `2*pi`, which makes the per-`m` bound
//! `D(m) = sum_j |a_j| |e^{i(lambda_j - k) m p} - 1|` periodic in `m`.
//! Checking one cycle therefore certifies every `m` in `Z` (and in `N`,
//! since `|e^{i theta} - 1|` is even in `theta`).

use crate::error::{Error, Result};
use crate::frequency::{common_direction, odd_part, rational_gcd_all, two_adic_valuation, Frequency, Rational};
use crate::numeric::{grid_points, partitioned_map, unit_circle_gap};
use crate::signal::{Signal, TrigPolynomial};
use num::complex::Complex64;
use num::integer::lcm;
use num::{Signed, Zero};
use std::f64::consts::PI;

/// What a translation is compared against in a scan.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanKind {
    /// `f(. + tau)` vs `f`
    Period,
    /// `f(. + tau)` vs `-f`
    AntiPeriod,
    /// `f(. + tau)` vs `e^{ik tau} f`
    Bloch(Frequency),
}

impl ScanKind {
    fn label(&self) -> String {
        match self {
            ScanKind::Period => "period".into(),
            ScanKind::AntiPeriod => "antiperiod".into(),
            ScanKind::Bloch(k) => format!("bloch(k = {k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodHit {
    pub tau: f64,
    /// Certified upper bound on the defining sup (grid estimate when the
    /// scan is uncertified).
    pub bound: f64,
}

/// Result of an epsilon-period scan over a window `[0, L]`.
#[derive(Debug, Clone)]
pub struct EpsilonPeriodSet {
    pub kind: String,
    pub epsilon: f64,
    pub window_end: f64,
    pub scan_step: f64,
    pub hits: Vec<PeriodHit>,
    /// Largest gap between consecutive hits, including both boundary gaps.
    pub max_gap: f64,
    /// `max_gap < window_end / 10`; window-qualified evidence, never a proof.
    pub relatively_dense: bool,
    pub dense_threshold: f64,
    /// False when hit bounds are grid-only estimates (no Lipschitz data).
    pub certified: bool,
}

impl EpsilonPeriodSet {
    fn from_hits(
        kind: String,
        epsilon: f64,
        window_end: f64,
        scan_step: f64,
        hits: Vec<PeriodHit>,
        certified: bool,
    ) -> Self {
        let mut max_gap: f64 = 0.0;
        let mut prev = 0.0;
        for h in &hits {
            max_gap = max_gap.max(h.tau - prev);
            prev = h.tau;
        }
        max_gap = max_gap.max(window_end - prev);
        let dense_threshold = window_end / 10.0;
        EpsilonPeriodSet {
            kind,
            epsilon,
            window_end,
            scan_step,
            relatively_dense: max_gap < dense_threshold,
            dense_threshold,
            hits,
            max_gap,
            certified,
        }
    }
}

/// Certified sup bound for `sup_x |f(x + tau) - target(tau) f(x)|` on exact
/// representations: the coefficient envelope
/// `sum_j |a_j||e^{i lambda_j tau} - target| + 2 * tail`.
fn exact_translation_bound(head: &TrigPolynomial, tail: f64, tau: f64, kind: &ScanKind) -> f64 {
    let mut acc = 0.0;
    match kind {
        ScanKind::Period => {
            for t in head.terms() {
                acc += t.coeff.norm() * unit_circle_gap(t.freq.value() * tau);
            }
        }
        ScanKind::AntiPeriod => {
            for t in head.terms() {
                // |e^{i phi} + 1| = 2|cos(phi/2)|
                acc += t.coeff.norm() * 2.0 * (t.freq.value() * tau * 0.5).cos().abs();
            }
        }
        ScanKind::Bloch(k) => {
            let kv = k.value();
            for t in head.terms() {
                acc += t.coeff.norm() * unit_circle_gap((t.freq.value() - kv) * tau);
            }
        }
    }
    acc + 2.0 * tail
}

/// Scans `tau` over the grid of `[0, L]` and keeps every point whose
/// certified distance bound is at most `epsilon`.
///
/// Exact representations certify hits through the coefficient envelope.
/// Piecewise signals certify through exact block suprema. Sampled signals
/// use a grid sup plus Lipschitz correction; without a declared bound the
/// scan is flagged as a grid-only estimate.
pub fn epsilon_period_scan(
    signal: &Signal,
    kind: ScanKind,
    epsilon: f64,
    window_end: f64,
    scan_step: f64,
    workers: usize,
) -> Result<EpsilonPeriodSet> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(scan_step > 0.0) || !(window_end > 0.0) {
        return Err(Error::Parameter(
            "scan step and window length must be positive".into(),
        ));
    }
    let taus: Vec<f64> = grid_points(0.0, window_end, scan_step)
        .into_iter()
        .filter(|t| *t > 0.0)
        .collect();

    let (bounds, certified): (Vec<f64>, bool) = if let Some(head) = signal.exact_head() {
        let tail = signal.tail_sup_bound();
        (
            partitioned_map(taus.len(), workers, |i| {
                exact_translation_bound(head, tail, taus[i], &kind)
            }),
            true,
        )
    } else {
        scan_bounds_numeric(signal, &kind, &taus, scan_step, workers)?
    };

    let hits: Vec<PeriodHit> = taus
        .iter()
        .zip(&bounds)
        .filter(|(_, b)| **b <= epsilon)
        .map(|(t, b)| PeriodHit { tau: *t, bound: *b })
        .collect();
    Ok(EpsilonPeriodSet::from_hits(
        kind.label(),
        epsilon,
        window_end,
        scan_step,
        hits,
        certified,
    ))
}

fn scan_bounds_numeric(
    signal: &Signal,
    kind: &ScanKind,
    taus: &[f64],
    step: f64,
    workers: usize,
) -> Result<(Vec<f64>, bool)> {
    let (lo, hi) = signal.evaluable_window().ok_or_else(|| {
        Error::Unsupported("numeric scan needs a bounded evaluable window".into())
    })?;
    let max_tau = taus.last().copied().unwrap_or(0.0);
    if hi - lo <= max_tau {
        return Err(Error::Domain(format!(
            "window [{lo}, {hi}] too short for translations up to {max_tau}"
        )));
    }
    match signal {
        Signal::Piecewise(p) => {
            // exact sup over the overlap for step signals
            let bounds = partitioned_map(taus.len(), workers, |i| {
                let tau = taus[i];
                let target = target_factor(kind, tau);
                let mut sup: f64 = 0.0;
                // block edges of both the signal and its translate
                let mut edges: Vec<f64> = p
                    .breakpoints()
                    .iter()
                    .copied()
                    .chain(p.breakpoints().iter().map(|b| b - tau))
                    .filter(|x| *x >= lo && *x < hi - tau)
                    .collect();
                edges.sort_by(f64::total_cmp);
                edges.dedup();
                for &x in &edges {
                    let probe = x.max(lo);
                    if probe + tau >= hi || probe >= hi {
                        continue;
                    }
                    if let (Ok(a), Ok(b)) = (p.evaluate(probe + tau), p.evaluate(probe)) {
                        sup = sup.max((Complex64::new(a, 0.0) - target * b).norm());
                    }
                }
                sup
            });
            Ok((bounds, true))
        }
        Signal::Sampled(s) => {
            let lipschitz = s.lipschitz_bound();
            let xs = grid_points(lo, hi - max_tau, step);
            let bounds = partitioned_map(taus.len(), workers, |i| {
                let tau = taus[i];
                let target = target_factor(kind, tau);
                let mut sup: f64 = 0.0;
                for &x in &xs {
                    if let (Ok(a), Ok(b)) = (s.evaluate(x + tau), s.evaluate(x)) {
                        sup = sup.max((a - target * b).norm());
                    }
                }
                match lipschitz {
                    Some(l) => sup + l * (1.0 + target.norm()) * step / 2.0,
                    None => sup,
                }
            });
            Ok((bounds, lipschitz.is_some()))
        }
        _ => unreachable!("exact representations handled by the caller"),
    }
}

fn target_factor(kind: &ScanKind, tau: f64) -> Complex64 {
    match kind {
        ScanKind::Period => Complex64::new(1.0, 0.0),
        ScanKind::AntiPeriod => Complex64::new(-1.0, 0.0),
        ScanKind::Bloch(k) => Complex64::new(0.0, k.value() * tau).exp(),
    }
}

/// Window-limited almost-anti-periodicity evidence: relatively dense
/// certified antiperiod hits. Never a proof.
pub fn almost_anti_periodic_test(
    signal: &Signal,
    epsilon: f64,
    window_end: f64,
    scan_step: f64,
    workers: usize,
) -> Result<(crate::verdict::Verdict, EpsilonPeriodSet)> {
    let set = epsilon_period_scan(
        signal,
        ScanKind::AntiPeriod,
        epsilon,
        window_end,
        scan_step,
        workers,
    )?;
    let verdict = if !set.certified {
        crate::verdict::Verdict::Unknown
    } else if set.relatively_dense {
        crate::verdict::Verdict::Yes
    } else {
        crate::verdict::Verdict::No
    };
    Ok((verdict, set))
}

/// Phase target of a witness.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessMode {
    /// `f(x + mp) ~ e^{ikmp} f(x)`
    Bloch(Frequency),
    /// `f(x + mp) ~ (-1)^m f(x)`
    Anti,
}

/// A certified period `p` together with the bound it achieves for every
/// `m` in the index set.
#[derive(Debug, Clone)]
pub struct SemiWitness {
    pub mode: WitnessMode,
    /// `p = pi * pi_multiple / direction.value()`; exact by construction.
    pub pi_multiple: Rational,
    pub direction: Frequency,
    pub p: f64,
    /// Certified bound over all m (one phase cycle checks them all).
    pub bound: f64,
    /// Length of the phase cycle in m.
    pub m_cycle: u64,
    pub certified_all_m: bool,
}

impl SemiWitness {
    pub fn label(&self) -> String {
        let mult = if self.pi_multiple.is_integer() {
            format!("{}", self.pi_multiple.numer())
        } else {
            format!("{}/{}", self.pi_multiple.numer(), self.pi_multiple.denom())
        };
        if self.direction == Frequency::integer(1) {
            format!("{mult}*pi")
        } else {
            format!("{mult}*pi / ({})", self.direction)
        }
    }
}

/// Outcome of a witness search.
#[derive(Debug, Clone)]
pub enum WitnessSearch {
    Found(SemiWitness),
    /// Certified exclusion (finite trig sums only): spectral necessity.
    NotInClass { reason: String },
    /// No certificate either way at this epsilon / representation.
    Inconclusive { reason: String },
}

impl WitnessSearch {
    pub fn witness(&self) -> Option<&SemiWitness> {
        match self {
            WitnessSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Exact per-`m` certification of a candidate `p = pi * pi_multiple / |d|`:
/// returns the max over one phase cycle of
/// `sum_j |a_j| |e^{i (lambda_j - k) m p} - target(m)|  (+ 2 tail)`
/// together with the cycle length.
///
/// Every reduced frequency must be a rational multiple of `direction`, so
/// all phases are exact rationals times pi.
pub fn certify_candidate(
    head: &TrigPolynomial,
    tail: f64,
    mode: &WitnessMode,
    pi_multiple: Rational,
    direction: &Frequency,
) -> Result<(f64, u64)> {
    let k_zero = Frequency::zero();
    let k = match mode {
        WitnessMode::Bloch(k) => k,
        WitnessMode::Anti => &k_zero,
    };
    // per-term phase in half-turns: (lambda_j - k) * p / pi = c_j * pi_multiple
    let mut half_turns: Vec<(f64, Rational)> = Vec::with_capacity(head.terms().len());
    for t in head.terms() {
        let mu = t.freq.sub(k);
        let c = if mu.is_zero() {
            Rational::zero()
        } else {
            mu.rational_ratio_to(direction).ok_or_else(|| {
                Error::Precondition(format!(
                    "frequency {} is not a rational multiple of direction {direction}",
                    t.freq
                ))
            })?
        };
        half_turns.push((t.coeff.norm(), c * pi_multiple));
    }
    // For anti mode the target (-1)^m folds into the phase as one half-turn.
    let anti_shift = match mode {
        WitnessMode::Anti => Rational::from_integer(1),
        WitnessMode::Bloch(_) => Rational::zero(),
    };
    // residual phase per m in full turns: ((h - shift)/2) * m
    let turns: Vec<(f64, Rational)> = half_turns
        .into_iter()
        .map(|(a, h)| (a, (h - anti_shift) / Rational::from_integer(2)))
        .collect();
    let mut cycle: i64 = 1;
    for (_, t) in &turns {
        cycle = lcm(cycle, *t.denom());
        if cycle > 1_000_000 {
            return Err(Error::Parameter(
                "phase cycle too long to certify (denominator blow-up)".into(),
            ));
        }
    }
    let mut worst: f64 = 0.0;
    for m in 0..cycle {
        let mut acc = 0.0;
        for (a, t) in &turns {
            let frac = (t * Rational::from_integer(m)).fract();
            let phase = 2.0 * PI * (*frac.numer() as f64) / (*frac.denom() as f64);
            acc += a * unit_circle_gap(phase);
        }
        worst = worst.max(acc);
    }
    Ok((worst + 2.0 * tail, cycle as u64))
}

/// Searches for a semi-Bloch witness at level `epsilon`.
///
/// When the reduced spectrum lies on one rational direction, the minimal
/// exact candidate `p = 2 pi / theta_red` closes every phase, so the
/// certified bound is zero (plus tail slack for series). An incommensurable
/// reduced spectrum certifies exclusion for finite sums.
pub fn semi_bloch_witness(signal: &Signal, k: &Frequency, epsilon: f64) -> Result<WitnessSearch> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let head = signal.exact_head().ok_or_else(|| {
        Error::Unsupported("witness search needs an exact trig representation".into())
    })?;
    let tail = signal.tail_sup_bound();
    let head_only = matches!(signal, Signal::Series(_));

    let reduced: Vec<Frequency> = head.terms().iter().map(|t| t.freq.sub(k)).collect();
    let nonzero: Vec<Frequency> = reduced.iter().filter(|f| !f.is_zero()).cloned().collect();

    let (pi_multiple, direction) = if nonzero.is_empty() {
        // pure e^{ikx}-multiple of a constant: any p works
        (Rational::from_integer(2), Frequency::integer(1))
    } else {
        match common_direction(&nonzero) {
            None => {
                let reason =
                    "reduced spectrum spans declared-independent directions (incommensurable by declaration)"
                        .to_string();
                return Ok(if head_only {
                    WitnessSearch::Inconclusive {
                        reason: format!("{reason}; head-only evidence"),
                    }
                } else {
                    WitnessSearch::NotInClass { reason }
                });
            }
            Some((direction, ratios)) => {
                let g = rational_gcd_all(ratios.iter().map(|r| r.abs()));
                // p = 2 pi / (g * |direction|)  =>  pi_multiple = 2 / g
                (Rational::from_integer(2) / g, direction)
            }
        }
    };

    let mode = WitnessMode::Bloch(k.clone());
    let (bound, cycle) = certify_candidate(head, tail, &mode, pi_multiple, &direction)?;
    let p = PI * rat_f64(pi_multiple) / direction.value();
    if bound <= epsilon {
        Ok(WitnessSearch::Found(SemiWitness {
            mode,
            pi_multiple,
            direction,
            p,
            bound,
            m_cycle: cycle,
            certified_all_m: true,
        }))
    } else {
        Ok(WitnessSearch::Inconclusive {
            reason: format!(
                "exact candidate p = {p:.6} certifies bound {bound:.3e} > epsilon {epsilon:.3e} (tail slack)"
            ),
        })
    }
}

/// Searches for a semi-anti-periodic witness at level `epsilon`.
///
/// A candidate exists iff `0` is outside the spectrum and the rational
/// multipliers share one 2-adic valuation; the product of the distinct odd
/// denominator parts then turns every phase into an odd multiple of `pi`.
pub fn semi_anti_witness(signal: &Signal, epsilon: f64) -> Result<WitnessSearch> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let head = signal.exact_head().ok_or_else(|| {
        Error::Unsupported("witness search needs an exact trig representation".into())
    })?;
    let tail = signal.tail_sup_bound();
    let head_only = matches!(signal, Signal::Series(_));
    let negative = |reason: String| {
        if head_only {
            WitnessSearch::Inconclusive {
                reason: format!("{reason}; head-only evidence"),
            }
        } else {
            WitnessSearch::NotInClass { reason }
        }
    };

    let freqs: Vec<Frequency> = head.terms().iter().map(|t| t.freq.clone()).collect();
    if freqs.iter().any(|f| f.is_zero()) {
        return Ok(negative("0 in spectrum excludes the anti-periodic closure".into()));
    }
    if freqs.is_empty() {
        // zero signal: vacuously anti-periodic at any p
        let mode = WitnessMode::Anti;
        return Ok(WitnessSearch::Found(SemiWitness {
            mode,
            pi_multiple: Rational::from_integer(1),
            direction: Frequency::integer(1),
            p: PI,
            bound: 2.0 * tail,
            m_cycle: 1,
            certified_all_m: true,
        }));
    }
    let (direction, ratios) = match common_direction(&freqs) {
        Some(x) => x,
        None => {
            return Ok(negative(
                "spectrum spans declared-independent directions (incommensurable by declaration)"
                    .into(),
            ))
        }
    };

    let valuations: Vec<i32> = ratios.iter().map(|r| two_adic_valuation(*r)).collect();
    let w = valuations[0];
    if valuations.iter().any(|v| *v != w) {
        return Ok(negative(format!(
            "2-adic valuations not uniform: {valuations:?}"
        )));
    }
    // u = 2^{-w} * product of distinct odd denominator parts;
    // then u * c_j is an odd integer for every j.
    let mut odd_dens: Vec<i64> = ratios.iter().map(|r| odd_part(*r.denom())).collect();
    odd_dens.sort_unstable();
    odd_dens.dedup();
    let mut product: i64 = 1;
    for d in odd_dens {
        product = product.checked_mul(d).ok_or_else(|| {
            Error::Parameter("anti-period candidate overflows (denominators too large)".into())
        })?;
    }
    let pow2 = Rational::from_integer(2).pow(-w);
    let pi_multiple = Rational::from_integer(product) * pow2;

    let mode = WitnessMode::Anti;
    let (bound, cycle) = certify_candidate(head, tail, &mode, pi_multiple, &direction)?;
    debug_assert!(bound - 2.0 * tail < 1e-12, "anti candidate must close phases");
    let p = PI * rat_f64(pi_multiple) / direction.value();
    if bound <= epsilon {
        Ok(WitnessSearch::Found(SemiWitness {
            mode,
            pi_multiple,
            direction,
            p,
            bound,
            m_cycle: cycle,
            certified_all_m: true,
        }))
    } else {
        Ok(WitnessSearch::Inconclusive {
            reason: format!(
                "exact candidate p = {p:.6} certifies bound {bound:.3e} > epsilon {epsilon:.3e} (tail slack)"
            ),
        })
    }
}

/// Exact Bloch-periodicity check `f(x + p) = e^{ikp} f(x)`: true iff every
/// term phase `(lambda_j - k) p` is a multiple of `2 pi` within the phase
/// tolerance `1e-12`. Also returns the envelope residual
/// `sum_j |a_j||e^{i(lambda_j - k)p} - 1|`.
#[derive(Debug, Clone, Copy)]
pub struct ExactCheck {
    pub holds: bool,
    pub residual: f64,
}

pub fn bloch_exact_check(f: &TrigPolynomial, p: f64, k: &Frequency) -> Result<ExactCheck> {
    if !(p > 0.0) {
        return Err(Error::Parameter(format!("period must be positive, got {p}")));
    }
    const PHASE_TOL: f64 = 1e-12;
    let kv = k.value();
    let mut holds = true;
    let mut residual = 0.0;
    for t in f.terms() {
        let phase = (t.freq.value() - kv) * p;
        let gap = unit_circle_gap(phase);
        residual += t.coeff.norm() * gap;
        // distance of the phase from 2 pi Z
        let wrapped = phase.rem_euclid(2.0 * PI);
        let dist = wrapped.min(2.0 * PI - wrapped);
        if dist > PHASE_TOL {
            holds = false;
        }
    }
    Ok(ExactCheck { holds, residual })
}

fn rat_f64(r: Rational) -> f64 {
    (*r.numer() as f64) / (*r.denom() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{rational_freq, Domain, TruncatedSeries};
    use crate::symbol::SymbolTable;
    use crate::verdict::Verdict;

    fn cosine() -> Signal {
        Signal::Trig(TrigPolynomial::cosine(Domain::RealLine))
    }

    fn single_exp(num: i64, den: i64) -> Signal {
        Signal::Trig(TrigPolynomial::from_parts(
            [(Complex64::new(1.0, 0.0), rational_freq(num, den))],
            Domain::RealLine,
        ))
    }

    #[test]
    fn cosine_antiperiod_at_pi_is_exact() {
        let set = epsilon_period_scan(&cosine(), ScanKind::AntiPeriod, 1e-6, 8.0, PI / 2.0, 1).unwrap();
        // grid contains pi exactly as 2 * (pi/2)
        let hit = set.hits.iter().find(|h| (h.tau - PI).abs() < 1e-12).unwrap();
        assert!(hit.bound < 1e-12);
        assert!(set.certified);
    }

    #[test]
    fn cosine_period_hits_match_closed_form() {
        // sup|cos(.+tau) - cos| = 2|sin(tau/2)| <= 0.1  iff  |tau - 2 pi n| <= 2 asin(0.05)
        let eps = 0.1;
        let set = epsilon_period_scan(&cosine(), ScanKind::Period, eps, 40.0, 1e-3, 2).unwrap();
        assert!(!set.hits.is_empty());
        let radius = 2.0 * (0.05_f64).asin();
        for h in &set.hits {
            let n = (h.tau / (2.0 * PI)).round();
            assert!(
                (h.tau - 2.0 * PI * n).abs() <= radius + 1e-9,
                "tau {} outside predicted radius",
                h.tau
            );
        }
        // and every grid point inside the radius is a hit
        let expected = grid_points(0.0, 40.0, 1e-3)
            .into_iter()
            .filter(|t| *t > 0.0)
            .filter(|t| {
                let n = (t / (2.0 * PI)).round();
                n >= 1.0 && (t - 2.0 * PI * n).abs() <= radius - 1e-9
            })
            .count();
        assert!(set.hits.len() >= expected);
    }

    #[test]
    fn constant_has_no_antiperiods() {
        let c = Signal::Trig(TrigPolynomial::constant(
            Complex64::new(1.0, 0.0),
            Domain::RealLine,
        ));
        let (verdict, set) = almost_anti_periodic_test(&c, 0.5, 100.0, 0.1, 1).unwrap();
        assert_eq!(verdict, Verdict::No);
        assert!(set.hits.is_empty());
        assert_eq!(set.max_gap, 100.0);
    }

    #[test]
    fn bloch_witness_for_cosine_at_half() {
        let w = semi_bloch_witness(&cosine(), &rational_freq(1, 2), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .expect("witness");
        assert!((w.p - 4.0 * PI).abs() < 1e-12);
        assert_eq!(w.bound, 0.0);
        assert!(w.certified_all_m);
    }

    #[test]
    fn bloch_witness_rejects_independent_symbol() {
        let table = SymbolTable::with_builtins();
        let k = Frequency::single(table.get("sqrt2").unwrap(), Rational::new(1, 1));
        match semi_bloch_witness(&cosine(), &k, 1e-3).unwrap() {
            WitnessSearch::NotInClass { .. } => {}
            other => panic!("expected NotInClass, got {other:?}"),
        }
    }

    #[test]
    fn bloch_witness_for_modulated_exponential() {
        // f = e^{ikx} g with g = e^{ix/5}, k = 1/3: reduced spectrum {1/5}
        let f = single_exp(8, 15);
        let w = semi_bloch_witness(&f, &rational_freq(1, 3), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .expect("witness");
        assert!((w.p - 10.0 * PI).abs() < 1e-12);
        assert_eq!(w.bound, 0.0);
    }

    #[test]
    fn anti_witness_examples() {
        let w = semi_anti_witness(&single_exp(1, 1), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert!((w.p - PI).abs() < 1e-15);
        assert_eq!(w.bound, 0.0);

        let w = semi_anti_witness(&single_exp(1, 3), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert!((w.p - 3.0 * PI).abs() < 1e-12);

        // head with frequencies {1/3, 1/5}: p = 15 pi
        let head = TrigPolynomial::from_parts(
            [
                (Complex64::new(1.0, 0.0), rational_freq(1, 3)),
                (Complex64::new(0.25, 0.0), rational_freq(1, 5)),
            ],
            Domain::RealLine,
        );
        let w = semi_anti_witness(&Signal::Trig(head), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert!((w.p - 15.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn anti_witness_rejects_constant_and_mixed_valuations() {
        let c = Signal::Trig(TrigPolynomial::constant(
            Complex64::new(1.0, 0.0),
            Domain::RealLine,
        ));
        assert!(matches!(
            semi_anti_witness(&c, 0.5).unwrap(),
            WitnessSearch::NotInClass { .. }
        ));

        let mixed = Signal::Trig(TrigPolynomial::from_parts(
            [
                (Complex64::new(1.0, 0.0), rational_freq(1, 2)),
                (Complex64::new(1.0, 0.0), rational_freq(1, 3)),
            ],
            Domain::RealLine,
        ));
        assert!(matches!(
            semi_anti_witness(&mixed, 0.5).unwrap(),
            WitnessSearch::NotInClass { .. }
        ));
    }

    #[test]
    fn series_tail_slack_gates_the_witness() {
        let head = TrigPolynomial::from_parts(
            [(Complex64::new(1.0, 0.0), rational_freq(1, 3))],
            Domain::RealLine,
        );
        let s = Signal::Series(TruncatedSeries::new(head, 0.3).unwrap());
        // 2 * tail = 0.6
        assert!(matches!(
            semi_anti_witness(&s, 0.5).unwrap(),
            WitnessSearch::Inconclusive { .. }
        ));
        let w = semi_anti_witness(&s, 0.7).unwrap().witness().cloned().unwrap();
        assert!((w.bound - 0.6).abs() < 1e-15);
    }

    #[test]
    fn exact_check_examples() {
        let e = TrigPolynomial::from_parts(
            [(Complex64::new(1.0, 0.0), rational_freq(1, 1))],
            Domain::RealLine,
        );
        let ok = bloch_exact_check(&e, PI, &rational_freq(1, 1)).unwrap();
        assert!(ok.holds);
        assert!(ok.residual < 1e-12);

        let bad = bloch_exact_check(&e, PI, &Frequency::zero()).unwrap();
        assert!(!bad.holds);
        assert!((bad.residual - 2.0).abs() < 1e-12);

        let cos = TrigPolynomial::cosine(Domain::RealLine);
        let per = bloch_exact_check(&cos, 2.0 * PI, &Frequency::zero()).unwrap();
        assert!(per.holds);

        assert!(bloch_exact_check(&cos, 0.0, &Frequency::zero()).is_err());
    }

    #[test]
    fn witness_reproduced_by_brute_force_scan() {
        // independent reproduction: grid sup of the defining expression
        let f = cosine();
        let w = semi_bloch_witness(&f, &rational_freq(1, 2), 1e-9)
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        let head = f.exact_head().unwrap();
        let kv = 0.5;
        for m in 1..=4_i64 {
            let mut sup: f64 = 0.0;
            let mut x = 0.0;
            while x <= 4.0 * w.p {
                let lhs = head.eval_unchecked(x + m as f64 * w.p);
                let rhs = Complex64::new(0.0, kv * m as f64 * w.p).exp() * head.eval_unchecked(x);
                sup = sup.max((lhs - rhs).norm());
                x += 0.05;
            }
            assert!(sup <= w.bound + 1e-9, "m = {m}: sup {sup} > bound {}", w.bound);
        }
    }
}
