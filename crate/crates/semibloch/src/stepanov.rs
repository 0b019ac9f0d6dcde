//! Stepanov q-norms over the sliding unit window, lift distances, Stepanov
//! semi-class tests, and the block-separation certificate for alternating
//! step signals.
//!
//! The inner integrals are exact for piecewise-constant signals (closed-form
//! over blocks) and composite Simpson otherwise; only the outer sup over `t`
//! is grid-based, with local refinement around the argmax.

use crate::error::{Error, Result};
use crate::frequency::Frequency;
use crate::numeric::{grid_points, partitioned_argmax, simpson_real};
use crate::periods::{semi_anti_witness, semi_bloch_witness, WitnessSearch};
use crate::signal::{PiecewiseConstantSignal, Signal};

/// Parameters of the Stepanov machinery. The window length is fixed at 1.
#[derive(Debug, Clone)]
pub struct StepanovParams {
    pub q: f64,
    /// Outer sup grid step over t.
    pub t_step: f64,
    /// Simpson subintervals for the inner integral (at least 64).
    pub inner_panels: usize,
    /// Refine the outer sup around the coarse argmax.
    pub refine: bool,
}

impl StepanovParams {
    pub fn new(q: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::Parameter(format!("Stepanov exponent must satisfy q >= 1, got {q}")));
        }
        Ok(Self {
            q,
            t_step: 0.05,
            inner_panels: 256,
            refine: true,
        })
    }

    pub fn with_inner_panels(mut self, panels: usize) -> Result<Self> {
        if panels < 64 {
            return Err(Error::Parameter(format!("inner panel count must be >= 64, got {panels}")));
        }
        self.inner_panels = panels & !1;
        Ok(self)
    }
}

fn local_mean_q(signal: &Signal, q: f64, t: f64, inner_panels: usize) -> f64 {
    if let Signal::Piecewise(p) = signal {
        // exact block integral
        let blocks = p
            .blocks_in(t, t + 1.0)
            .expect("caller keeps [t, t+1] inside the window");
        return blocks
            .iter()
            .map(|(lo, hi, v)| v.abs().powf(q) * (hi - lo))
            .sum();
    }
    simpson_real(
        |s| signal.evaluate(s).map(|v| v.norm().powf(q)).unwrap_or(f64::NAN),
        t,
        t + 1.0,
        inner_panels,
        1,
    )
}

/// `sup_t ( int_t^{t+1} |f|^q )^{1/q}` over the given t-window.
///
/// Piecewise signals are evaluated exactly: between breakpoint-induced
/// candidates the local integral is linear in `t`, so the sup is attained at
/// a candidate.
pub fn stepanov_norm(
    signal: &Signal,
    params: &StepanovParams,
    t_window: (f64, f64),
    workers: usize,
) -> Result<f64> {
    let (w0, w1) = t_window;
    if w1 < w0 {
        return Err(Error::Parameter("empty Stepanov window".into()));
    }
    if let Some((lo, hi)) = signal.evaluable_window() {
        if w0 < lo || w1 + 1.0 > hi {
            return Err(Error::Domain(format!(
                "t-window [{w0}, {w1}] + unit interval exceeds signal window [{lo}, {hi}]"
            )));
        }
    }
    if let Some(crate::signal::Domain::HalfLine) = signal.domain() {
        if w0 < 0.0 {
            return Err(Error::Domain("t-window extends below a half-line domain".into()));
        }
    }
    if let Signal::Piecewise(p) = signal {
        let mut candidates: Vec<f64> = vec![w0, w1];
        for &b in p.breakpoints() {
            for t in [b, b - 1.0] {
                if t > w0 && t < w1 {
                    candidates.push(t);
                }
            }
        }
        candidates.sort_by(f64::total_cmp);
        let best = candidates
            .iter()
            .map(|&t| local_mean_q(signal, params.q, t, params.inner_panels))
            .fold(0.0, f64::max);
        return Ok(best.powf(1.0 / params.q));
    }

    let grid = grid_points(w0, w1, params.t_step);
    let (best_i, mut best) = partitioned_argmax(grid.len(), workers, |i| {
        local_mean_q(signal, params.q, grid[i], params.inner_panels)
    })
    .ok_or_else(|| Error::Parameter("empty Stepanov grid".into()))?;
    if !best.is_finite() {
        return Err(Error::Domain("signal not evaluable over the Stepanov window".into()));
    }
    let mut center = grid[best_i];
    if params.refine {
        let mut radius = params.t_step;
        for _ in 0..3 {
            let step = radius / 25.0;
            let lo = (center - radius).max(w0);
            let hi = (center + radius).min(w1);
            let pts = grid_points(lo, hi, step);
            if let Some((i, v)) = partitioned_argmax(pts.len(), workers, |i| {
                local_mean_q(signal, params.q, pts[i], params.inner_panels)
            }) {
                if v > best {
                    best = v;
                    center = pts[i];
                }
            }
            radius = step;
        }
    }
    Ok(best.powf(1.0 / params.q))
}

/// `( int_0^1 |f(t+s) - g(t+s)|^q ds )^{1/q}`; exact when both signals are
/// piecewise-constant.
pub fn lift_distance(f: &Signal, g: &Signal, q: f64, t: f64, inner_panels: usize) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::Parameter(format!("q must be >= 1, got {q}")));
    }
    if let (Signal::Piecewise(a), Signal::Piecewise(b)) = (f, g) {
        return exact_piecewise_lift(a, b, q, t);
    }
    // surface domain errors eagerly
    f.evaluate(t)?;
    f.evaluate(t + 1.0)?;
    g.evaluate(t)?;
    g.evaluate(t + 1.0)?;
    let v = simpson_real(
        |s| match (f.evaluate(s), g.evaluate(s)) {
            (Ok(a), Ok(b)) => (a - b).norm().powf(q),
            _ => f64::NAN,
        },
        t,
        t + 1.0,
        inner_panels.max(64) & !1,
        1,
    );
    if !v.is_finite() {
        return Err(Error::Domain("lift window not fully evaluable".into()));
    }
    Ok(v.powf(1.0 / q))
}

fn exact_piecewise_lift(a: &PiecewiseConstantSignal, b: &PiecewiseConstantSignal, q: f64, t: f64) -> Result<f64> {
    let blocks_a = a.blocks_in(t, t + 1.0)?;
    let blocks_b = b.blocks_in(t, t + 1.0)?;
    let mut edges: Vec<f64> = blocks_a
        .iter()
        .chain(blocks_b.iter())
        .flat_map(|(lo, hi, _)| [*lo, *hi])
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let mut acc = 0.0;
    for w in edges.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let va = a.evaluate(mid)?;
        let vb = b.evaluate(mid)?;
        acc += (va - vb).abs().powf(q) * (w[1] - w[0]);
    }
    Ok(acc.powf(1.0 / q))
}

/// Shifted lift distance `|| f^(t + tau) - target * f^(t) ||_{L^q}` used by
/// the candidate tests below.
fn shifted_lift(signal: &Signal, q: f64, t: f64, tau: f64, target: f64, inner_panels: usize) -> Result<f64> {
    if let Signal::Piecewise(p) = signal {
        let shifted = p.translate(tau);
        let scaled = PiecewiseConstantSignal::new(
            p.breakpoints().to_vec(),
            p.values().iter().map(|v| v * target).collect(),
        )?;
        return exact_piecewise_lift(&shifted, &scaled, q, t);
    }
    let v = simpson_real(
        |s| match (signal.evaluate(s + tau), signal.evaluate(s)) {
            (Ok(a), Ok(b)) => (a - b * target).norm().powf(q),
            _ => f64::NAN,
        },
        t,
        t + 1.0,
        inner_panels.max(64) & !1,
        1,
    );
    if !v.is_finite() {
        return Err(Error::Domain("lift window not fully evaluable".into()));
    }
    Ok(v.powf(1.0 / q))
}

/// Class mode for the Stepanov semi-tests.
#[derive(Debug, Clone, PartialEq)]
pub enum SemiMode {
    Periodic,
    Anti,
    Bloch(Frequency),
}

/// Options for the numeric candidate search on non-exact representations.
#[derive(Debug, Clone)]
pub struct CandidateSearch {
    /// Candidate periods are multiples of this step.
    pub candidate_step: f64,
    /// Largest candidate period.
    pub p_max: f64,
    /// m-quantifier horizon per candidate.
    pub m_horizon: u64,
    /// Outer t-grid step for the lift sup.
    pub t_step: f64,
}

impl Default for CandidateSearch {
    fn default() -> Self {
        Self {
            candidate_step: 0.05,
            p_max: 5.0,
            m_horizon: 200,
            t_step: 0.05,
        }
    }
}

/// Stepanov semi-class test.
///
/// Exact trig representations inherit their uniform witness: a uniform sup
/// bound dominates every unit-window `L^q` mean, so the same `p` certifies
/// the lifted class at no larger bound. Piecewise signals run an exact
/// candidate search; a witness failure for every candidate within the window
/// is reported as exclusion evidence. Sampled signals only ever produce
/// inconclusive grid evidence.
pub fn stepanov_semi_test(
    signal: &Signal,
    mode: SemiMode,
    q: f64,
    epsilon: f64,
    search: &CandidateSearch,
    workers: usize,
) -> Result<WitnessSearch> {
    if !(q >= 1.0) {
        return Err(Error::Parameter(format!("q must be >= 1, got {q}")));
    }
    if signal.exact_head().is_some() {
        return match mode {
            SemiMode::Periodic => semi_bloch_witness(signal, &Frequency::zero(), epsilon),
            SemiMode::Bloch(k) => semi_bloch_witness(signal, &k, epsilon),
            SemiMode::Anti => semi_anti_witness(signal, epsilon),
        };
    }
    let target_of = |m: u64| -> f64 {
        match mode {
            SemiMode::Anti => {
                if m % 2 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
            _ => 1.0,
        }
    };
    if let SemiMode::Bloch(k) = &mode {
        if !k.is_zero() {
            return Err(Error::Unsupported(
                "numeric Bloch-mode candidate search is defined for exact representations".into(),
            ));
        }
    }
    let (lo, hi) = signal.evaluable_window().ok_or_else(|| {
        Error::Unsupported("candidate search needs a bounded evaluable window".into())
    })?;
    // only exact block arithmetic can certify an exclusion
    let certified_exclusion = matches!(signal, Signal::Piecewise(_));

    let n_candidates = (search.p_max / search.candidate_step).floor() as usize;
    let mut candidates_seen = 0usize;
    let mut first_violation: Option<String> = None;
    for ci in 1..=n_candidates {
        let p = ci as f64 * search.candidate_step;
        // quick gate at m = 1
        let gate = lift_sup(signal, q, p, target_of(1), lo, hi, search, workers)?;
        if gate > epsilon {
            continue;
        }
        candidates_seen += 1;
        let mut violated = false;
        for m in 2..=search.m_horizon {
            let tau = m as f64 * p;
            if tau >= hi - lo - 1.0 {
                break;
            }
            let sup = lift_sup(signal, q, tau, target_of(m), lo, hi, search, workers)?;
            if sup > epsilon {
                violated = true;
                if first_violation.is_none() {
                    first_violation = Some(format!(
                        "candidate p = {p:.4} violated at m = {m}: lift sup {sup:.4} > {epsilon}"
                    ));
                }
                break;
            }
        }
        if !violated {
            // survived the whole window: grid evidence only
            if matches!(signal, Signal::Sampled(_)) {
                return Ok(WitnessSearch::Inconclusive {
                    reason: format!(
                        "grid-only candidate p = {p:.4} survived m <= {} on the window; no certification for a sampled carrier",
                        search.m_horizon
                    ),
                });
            }
            return Ok(WitnessSearch::Inconclusive {
                reason: format!(
                    "candidate p = {p:.4} survived the window scan (m-horizon {}), window-limited evidence only",
                    search.m_horizon
                ),
            });
        }
    }
    if candidates_seen == 0 {
        let reason = format!(
            "no candidate period p <= {:.2} reaches lift bound {epsilon} even at m = 1",
            search.p_max
        );
        return Ok(if certified_exclusion {
            WitnessSearch::NotInClass { reason }
        } else {
            WitnessSearch::Inconclusive {
                reason: format!("{reason}; grid-only evidence"),
            }
        });
    }
    let reason = format!(
        "every candidate period violated the lift bound on the window ({})",
        first_violation.unwrap_or_default()
    );
    Ok(if certified_exclusion {
        WitnessSearch::NotInClass { reason }
    } else {
        WitnessSearch::Inconclusive {
            reason: format!("{reason}; grid-only evidence"),
        }
    })
}

fn lift_sup(
    signal: &Signal,
    q: f64,
    tau: f64,
    target: f64,
    lo: f64,
    hi: f64,
    search: &CandidateSearch,
    workers: usize,
) -> Result<f64> {
    let t_end = hi - tau - 1.0;
    if t_end <= lo {
        return Err(Error::Domain("translation exhausts the window".into()));
    }
    let ts = grid_points(lo, t_end, search.t_step);
    let sups = crate::numeric::partitioned_map(ts.len(), workers, |i| {
        shifted_lift(signal, q, ts[i], tau, target, 128).unwrap_or(f64::NAN)
    });
    if sups.iter().any(|s| s.is_nan()) {
        return Err(Error::Domain("lift sup not evaluable on the window".into()));
    }
    Ok(sups.into_iter().fold(0.0, f64::max))
}

/// Witness that a candidate Stepanov period fails on an alternating step
/// signal: a unit window landing inside an opposite-sign block forces the
/// lift distance above the separation constant.
#[derive(Debug, Clone)]
pub struct SeparationCertificate {
    pub m: u64,
    pub x: f64,
    /// `|b_n - b_l|` between the two enclosing blocks.
    pub lower_bound: f64,
    /// Separation constant of the signal.
    pub c: f64,
}

#[derive(Debug, Clone)]
pub enum SeparationOutcome {
    Certificate(SeparationCertificate),
    /// Window exhausted before an opposite-sign enclosing block was found.
    Inconclusive { reason: String },
}

/// Searches `m = 1, 2, ...` for a window `[x + mp, x + mp + 1]` fully inside
/// a block whose value has the opposite sign to the block containing
/// `[x, x + 1]`.
pub fn separation_witness(
    signal: &PiecewiseConstantSignal,
    q: f64,
    p: f64,
    x: f64,
    m_max: u64,
) -> Result<SeparationOutcome> {
    if !(q >= 1.0) || !(p > 0.0) {
        return Err(Error::Parameter("need q >= 1 and candidate period p > 0".into()));
    }
    let values = signal.values();
    if values.iter().any(|v| *v == 0.0) {
        return Err(Error::Precondition("block values must be nonzero".into()));
    }
    let min_pos = values.iter().copied().filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    let max_neg = values.iter().copied().filter(|v| *v < 0.0).fold(f64::NEG_INFINITY, f64::max);
    if !min_pos.is_finite() || !max_neg.is_finite() {
        return Err(Error::Precondition(
            "need blocks of both signs for a separation constant".into(),
        ));
    }
    let c = min_pos - max_neg;
    let enclosing = |a: f64| -> Option<usize> {
        let i = signal.block_index(a)?;
        let j = signal.block_index(a + 1.0 - 1e-12)?;
        (i == j).then_some(i)
    };
    let base = enclosing(x).ok_or_else(|| {
        Error::Precondition(format!("[{x}, {x}+1] does not sit inside a single block"))
    })?;
    let base_value = values[base];
    for m in 1..=m_max {
        let shifted = x + m as f64 * p;
        if shifted + 1.0 >= signal.window().1 {
            return Ok(SeparationOutcome::Inconclusive {
                reason: format!("window exhausted at m = {m} before an opposite-sign block"),
            });
        }
        if let Some(idx) = enclosing(shifted) {
            if values[idx] * base_value < 0.0 {
                let lower_bound = (values[idx] - base_value).abs();
                debug_assert!(lower_bound >= c);
                return Ok(SeparationOutcome::Certificate(SeparationCertificate {
                    m,
                    x,
                    lower_bound,
                    c,
                }));
            }
        }
    }
    Ok(SeparationOutcome::Inconclusive {
        reason: format!("no opposite-sign enclosing block for m <= {m_max}"),
    })
}

/// The alternating quadratic-block fixture: breakpoints `n|n|`, values
/// `(-1)^n`, for `n` in `[-extent, extent]`.
pub fn alternating_quadratic_steps(extent: i64) -> PiecewiseConstantSignal {
    let breakpoints: Vec<f64> = (-extent..=extent)
        .map(|n| (n * n.abs()) as f64)
        .collect();
    let values: Vec<f64> = (-extent..extent)
        .map(|n| if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 })
        .collect();
    PiecewiseConstantSignal::new(breakpoints, values).expect("valid fixture")
}
