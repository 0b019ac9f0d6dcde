//! Cross-checks against independent oracles: exhaustive search for rational
//! arithmetic, closed forms for quadrature paths, and brute-force quantifier
//! scans for the witness machinery.

use num::complex::Complex64;
use num::rational::Rational64;
use semibloch::catalog::build_signal;
use semibloch::convolution::{
    heat_evolve, heat_evolve_quadrature, infinite_convolution, KernelFamily,
};
use semibloch::frequency::{rational_gcd, rational_gcd_all};
use semibloch::periods::{semi_anti_witness, WitnessSearch};
use semibloch::signal::{rational_freq, Domain, Signal, TrigPolynomial};
use semibloch::spectrum::{bohr_coefficient, spectral_classify};
use semibloch::verdict::Verdict;
use std::f64::consts::PI;

/// Largest rational n/d (bounded search) dividing every input to an integer.
fn gcd_by_exhaustive_search(inputs: &[Rational64], bound: i64) -> Rational64 {
    let mut best = Rational64::new(0, 1);
    for d in 1..=bound {
        for n in 1..=bound {
            let candidate = Rational64::new(n, d);
            let divides_all = inputs.iter().all(|r| (r / candidate).is_integer());
            if divides_all && candidate > best {
                best = candidate;
            }
        }
    }
    best
}

#[test]
fn rational_gcd_matches_exhaustive_search() {
    let cases: Vec<Vec<Rational64>> = vec![
        vec![Rational64::new(1, 3), Rational64::new(5, 7)],
        vec![Rational64::new(1, 2), Rational64::new(1, 3)],
        vec![Rational64::new(4, 9), Rational64::new(2, 3), Rational64::new(8, 15)],
        vec![Rational64::new(3, 1), Rational64::new(5, 1)],
    ];
    for inputs in cases {
        let fast = rational_gcd_all(inputs.iter().copied());
        let slow = gcd_by_exhaustive_search(&inputs, 64);
        assert_eq!(fast, slow, "inputs {inputs:?}");
        for r in &inputs {
            assert!((r / fast).is_integer());
        }
    }
    assert_eq!(
        rational_gcd(Rational64::new(1, 3), Rational64::new(5, 7)),
        Rational64::new(1, 21)
    );
}

#[test]
fn bohr_coefficient_of_strina_at_its_irrational_frequency() {
    // the +frequency coefficient of sin(pi sqrt2 x) is 1/(2i) = -i/2
    let (strina, table) = build_signal("strina").unwrap();
    let r = table.get("pi_sqrt2").unwrap().value();
    for t_horizon in [10.0, 100.0, 1000.0] {
        let est = bohr_coefficient(&strina, r, t_horizon, 1).unwrap();
        let bound = est.error_bound.unwrap();
        let target = Complex64::new(0.0, -0.5);
        assert!(
            (est.estimate - target).norm() <= bound,
            "T = {t_horizon}: |{} - target| > bound {bound}",
            est.estimate
        );
    }
    // the bound must shrink with the horizon
    let b10 = bohr_coefficient(&strina, r, 10.0, 1).unwrap().error_bound.unwrap();
    let b1000 = bohr_coefficient(&strina, r, 1000.0, 1).unwrap().error_bound.unwrap();
    assert!(b1000 < b10 / 50.0);
}

#[test]
fn mixed_valuation_exclusion_agrees_with_brute_force_quantifier() {
    // spectral says "not semi-anti" for {1/2, 1/3}; the numeric quantifier
    // scan must find no period approaching the anti phase pattern
    let f = Signal::Trig(TrigPolynomial::from_parts(
        [
            (Complex64::new(1.0, 0.0), rational_freq(1, 2)),
            (Complex64::new(1.0, 0.0), rational_freq(1, 3)),
        ],
        Domain::RealLine,
    ));
    assert_eq!(spectral_classify(&f).unwrap().semi_anti, Verdict::No);
    assert!(matches!(
        semi_anti_witness(&f, 0.5).unwrap(),
        WitnessSearch::NotInClass { .. }
    ));

    // brute force over candidate periods: the worst m always blows the bound
    let lambdas = [0.5, 1.0 / 3.0];
    let mut min_over_p = f64::INFINITY;
    let mut p = 0.05;
    while p < 150.0 {
        let mut worst: f64 = 0.0;
        for m in 1..=60_i32 {
            let target = if m % 2 == 1 { -1.0 } else { 1.0 };
            let bound: f64 = lambdas
                .iter()
                .map(|l| (Complex64::new(0.0, l * m as f64 * p).exp() - target).norm())
                .sum();
            worst = worst.max(bound);
            if worst > 2.0 {
                break;
            }
        }
        min_over_p = min_over_p.min(worst);
        p += 0.05;
    }
    assert!(
        min_over_p > 0.6,
        "brute force found an unexpectedly good period: {min_over_p}"
    );
}

#[test]
fn odd_ratio_witness_is_a_true_antiperiod_pattern() {
    // {1/3, 5/7}: p = 21 pi flips sign exactly for odd m
    let f = Signal::Trig(TrigPolynomial::from_parts(
        [
            (Complex64::new(1.0, 0.0), rational_freq(1, 3)),
            (Complex64::new(1.0, 0.0), rational_freq(5, 7)),
        ],
        Domain::RealLine,
    ));
    let w = semi_anti_witness(&f, 1e-9).unwrap().witness().cloned().unwrap();
    assert!((w.p - 21.0 * PI).abs() < 1e-10, "p = {}", w.p);
    let head = f.exact_head().unwrap();
    for m in 1..=6_i64 {
        let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
        let mut x = 0.0;
        while x < 50.0 {
            let lhs = head.eval_unchecked(x + m as f64 * w.p);
            let rhs = head.eval_unchecked(x) * sign;
            assert!((lhs - rhs).norm() < 1e-8, "m = {m}, x = {x}");
            x += 0.37;
        }
    }
}

#[test]
fn heat_multiplier_cross_checked_by_quadrature_on_a_two_term_signal() {
    let (gaston, _) = build_signal("gaston").unwrap();
    let head = gaston.exact_head().unwrap();
    let evolved = heat_evolve(head, 0.7).unwrap();
    for x in [0.0, 1.3, -2.1] {
        let direct = heat_evolve_quadrature(head, x, 0.7, 1).unwrap();
        let multiplier = evolved.eval_unchecked(x);
        assert!(
            (direct - multiplier).norm() < 1e-12,
            "x = {x}: quadrature {direct} vs multiplier {multiplier}"
        );
    }
}

#[test]
fn convolution_translation_commutes() {
    // G of translate(g, tau) at t equals G of g at t + tau
    let kernel = KernelFamily::exponential(1.0).unwrap();
    let (gaston, _) = build_signal("gaston").unwrap();
    let tau = 1.7;
    let translated = gaston.translate(tau).unwrap();
    for t in [-1.0, 0.0, 2.5] {
        let lhs = infinite_convolution(&kernel, &translated, t, 1).unwrap().value;
        let rhs = infinite_convolution(&kernel, &gaston, t + tau, 1).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-9, "t = {t}");
    }
}

#[test]
fn exact_bloch_input_stays_bloch_after_convolution() {
    // gaston is Bloch (pi, 1)-exact; the convolution output must satisfy the
    // same relation within quadrature tolerance
    let kernel = KernelFamily::exponential(1.0).unwrap();
    let (gaston, _) = build_signal("gaston").unwrap();
    let phase = Complex64::new(0.0, PI).exp(); // e^{ik p} with k = 1, p = pi
    for t in [-2.0, 0.0, 1.0] {
        let shifted = infinite_convolution(&kernel, &gaston, t + PI, 1).unwrap().value;
        let base = infinite_convolution(&kernel, &gaston, t, 1).unwrap().value;
        assert!(
            (shifted - phase * base).norm() < 1e-8,
            "t = {t}: {shifted} vs {}",
            phase * base
        );
    }
}

#[test]
fn extension_from_the_half_line_preserves_verdicts() {
    use semibloch::periods::bloch_exact_check;
    use semibloch::signal::extend_to_real_line;

    // e^{ix/3} on the half-line: same classification after extension
    let half = Signal::Trig(TrigPolynomial::from_parts(
        [(Complex64::new(1.0, 0.0), rational_freq(1, 3))],
        Domain::HalfLine,
    ));
    let whole = extend_to_real_line(&half).unwrap();
    let before = spectral_classify(&half).unwrap();
    let after = spectral_classify(&whole).unwrap();
    assert_eq!(before.semi_periodic, after.semi_periodic);
    assert_eq!(before.semi_anti, after.semi_anti);
    assert_eq!(before.theta, after.theta);
    let w_before = semi_anti_witness(&half, 1e-9).unwrap().witness().cloned().unwrap();
    let w_after = semi_anti_witness(&whole, 1e-9).unwrap().witness().cloned().unwrap();
    assert_eq!(w_before.p.to_bits(), w_after.p.to_bits());

    // a Bloch (pi, 1)-exact signal keeps the exact relation after extension
    let bloch = Signal::Trig(TrigPolynomial::from_parts(
        [(Complex64::new(1.0, 0.0), rational_freq(1, 1))],
        Domain::HalfLine,
    ));
    let extended = semibloch::signal::extend_to_real_line(&bloch).unwrap();
    let check = bloch_exact_check(extended.exact_head().unwrap(), PI, &rational_freq(1, 1)).unwrap();
    assert!(check.holds && check.residual < 1e-12);
}

#[test]
fn strina_scan_profile_matches_independent_prediction() {
    // hits of the antiperiod scan must be exactly the grid points where the
    // independently computed envelope 2|cos(tau/2)| + 2|cos(v tau/2)| <= eps
    let (strina, table) = build_signal("strina").unwrap();
    let v = table.get("pi_sqrt2").unwrap().value();
    let eps = 0.2;
    let set = semibloch::periods::epsilon_period_scan(
        &strina,
        semibloch::periods::ScanKind::AntiPeriod,
        eps,
        2000.0,
        0.01,
        2,
    )
    .unwrap();
    assert!(set.certified);
    assert!(!set.hits.is_empty());
    let predicted: Vec<f64> = (1..=200_000)
        .map(|i| i as f64 * 0.01)
        .filter(|tau| {
            2.0 * (tau / 2.0).cos().abs() + 2.0 * (v * tau / 2.0).cos().abs() <= eps
        })
        .collect();
    let got: Vec<f64> = set.hits.iter().map(|h| h.tau).collect();
    assert_eq!(got.len(), predicted.len());
    for (a, b) in got.iter().zip(&predicted) {
        assert!((a - b).abs() < 1e-9);
    }
}
