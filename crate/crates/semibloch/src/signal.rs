//! Signal representations and the core operations on them: evaluation,
//! translation, Bloch reduction, scaling/reciprocal, sup-distance estimation
//! and extension from the half-line.
//!
//! All values are immutable after construction; every operation is a pure
//! function of its inputs.

use crate::error::{Error, Result};
use crate::frequency::{Frequency, Rational};
use crate::numeric::{grid_points, partitioned_map};
use num::complex::Complex64;
use num::Zero;
use std::fmt;

/// Index set over which the `m`-quantifier of the semi-classes runs:
/// naturals on the half-line, integers on the whole line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    RealLine,
    HalfLine,
}

impl Domain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::RealLine => true,
            Domain::HalfLine => x >= 0.0,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::RealLine => write!(f, "R"),
            Domain::HalfLine => write!(f, "R+"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub coeff: Complex64,
    pub freq: Frequency,
}

/// Finite sum `sum_j a_j e^{i lambda_j x}` with exact frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    terms: Vec<TrigTerm>,
    domain: Domain,
}

impl TrigPolynomial {
    /// Strict constructor: duplicate frequencies and zero coefficients are
    /// validation errors. The empty list is the zero signal.
    pub fn new(terms: Vec<TrigTerm>, domain: Domain) -> Result<Self> {
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.freq.cmp(&b.freq));
        for w in sorted.windows(2) {
            if w[0].freq == w[1].freq {
                return Err(Error::validation(
                    "terms",
                    format!("duplicate frequency {}", w[0].freq),
                ));
            }
        }
        for t in &sorted {
            if t.coeff.is_zero() {
                return Err(Error::validation(
                    "terms",
                    format!("zero coefficient at frequency {}", t.freq),
                ));
            }
            if !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                return Err(Error::validation("terms", "non-finite coefficient"));
            }
        }
        Ok(Self {
            terms: sorted,
            domain,
        })
    }

    /// Canonicalizing constructor for internal operations: merges duplicate
    /// frequencies and drops exact-zero coefficients.
    pub fn from_parts(terms: impl IntoIterator<Item = (Complex64, Frequency)>, domain: Domain) -> Self {
        let mut items: Vec<TrigTerm> = terms
            .into_iter()
            .map(|(coeff, freq)| TrigTerm { coeff, freq })
            .collect();
        items.sort_by(|a, b| a.freq.cmp(&b.freq));
        let mut merged: Vec<TrigTerm> = Vec::with_capacity(items.len());
        for t in items {
            match merged.last_mut() {
                Some(last) if last.freq == t.freq => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        Self {
            terms: merged,
            domain,
        }
    }

    pub fn zero(domain: Domain) -> Self {
        Self {
            terms: Vec::new(),
            domain,
        }
    }

    /// `cos(x)` as the exponential pair `(1/2)e^{ix} + (1/2)e^{-ix}`.
    pub fn cosine(domain: Domain) -> Self {
        Self::from_parts(
            [
                (Complex64::new(0.5, 0.0), Frequency::integer(1)),
                (Complex64::new(0.5, 0.0), Frequency::integer(-1)),
            ],
            domain,
        )
    }

    /// `sin(freq * x)` as an exponential pair.
    pub fn sine_of(freq: Frequency, domain: Domain) -> Self {
        Self::from_parts(
            [
                (Complex64::new(0.0, -0.5), freq.clone()),
                (Complex64::new(0.0, 0.5), freq.neg()),
            ],
            domain,
        )
    }

    pub fn constant(c: Complex64, domain: Domain) -> Self {
        Self::from_parts([(c, Frequency::zero())], domain)
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn eval_unchecked(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::zero();
        for t in &self.terms {
            acc += t.coeff * Complex64::new(0.0, t.freq.value() * x).exp();
        }
        acc
    }

    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        if !self.domain.contains(x) {
            return Err(Error::Domain(format!(
                "x = {x} outside domain {}",
                self.domain
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    /// `x -> f(x + tau)`: coefficients rotate by `e^{i lambda tau}`,
    /// frequencies are untouched.
    pub fn translate(&self, tau: f64) -> Result<Self> {
        if self.domain == Domain::HalfLine && tau < 0.0 {
            return Err(Error::Domain(format!(
                "negative translation {tau} on half-line signal"
            )));
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm {
                    coeff: t.coeff * Complex64::new(0.0, t.freq.value() * tau).exp(),
                    freq: t.freq.clone(),
                })
                .collect(),
            domain: self.domain,
        })
    }

    /// `x -> e^{-ikx} f(x)`: every frequency shifts by `-k`. Shifts across
    /// symbols are kept as exact combinations.
    pub fn bloch_reduce(&self, k: &Frequency) -> Self {
        Self::from_parts(
            self.terms
                .iter()
                .map(|t| (t.coeff, t.freq.sub(k))),
            self.domain,
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_parts(self.terms.iter().map(|t| (c * t.coeff, t.freq.clone())), self.domain)
    }

    /// `sum_j |a_j|` — a sup-norm bound, tight for aligned phases.
    pub fn coeff_abs_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).sum()
    }

    /// `sum_j |a_j||lambda_j|` — a global Lipschitz bound.
    pub fn lipschitz_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm() * t.freq.value().abs())
            .sum()
    }

    pub fn frequencies(&self) -> Vec<Frequency> {
        self.terms.iter().map(|t| t.freq.clone()).collect()
    }

    pub fn max_abs_frequency(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.freq.value().abs())
            .fold(0.0, f64::max)
    }
}

/// Exact head plus a sup-norm bound on the discarded tail. Every verdict
/// derived from the head holds for the full series only up to the stated
/// slack.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub head: TrigPolynomial,
    pub tail_sup_bound: f64,
}

impl TruncatedSeries {
    pub fn new(head: TrigPolynomial, tail_sup_bound: f64) -> Result<Self> {
        if !(tail_sup_bound >= 0.0) || !tail_sup_bound.is_finite() {
            return Err(Error::validation(
                "tailSupBound",
                format!("must be a finite nonnegative real, got {tail_sup_bound}"),
            ));
        }
        Ok(Self {
            head,
            tail_sup_bound,
        })
    }
}

/// Step function `F(x) = b_n` on `[a_n, a_{n+1})`. Evaluation outside the
/// window `[a_0, a_N)` is a domain error.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantSignal {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseConstantSignal {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::validation(
                "breakpoints",
                "need at least two breakpoints",
            ));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::validation(
                "values",
                format!(
                    "expected {} block values for {} breakpoints, got {}",
                    breakpoints.len() - 1,
                    breakpoints.len(),
                    values.len()
                ),
            ));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::validation("breakpoints", "non-finite breakpoint"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(
                "breakpoints",
                "breakpoints must be strictly increasing",
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("values", "non-finite block value"));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn window(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index of the block containing `x`, or None outside the window.
    pub fn block_index(&self, x: f64) -> Option<usize> {
        let (lo, hi) = self.window();
        if x < lo || x >= hi {
            return None;
        }
        // partition_point: first breakpoint strictly greater than x
        let idx = self.breakpoints.partition_point(|b| *b <= x);
        Some(idx - 1)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.block_index(x).map(|i| self.values[i]).ok_or_else(|| {
            let (lo, hi) = self.window();
            Error::Domain(format!("x = {x} outside piecewise window [{lo}, {hi})"))
        })
    }

    pub fn translate(&self, tau: f64) -> Self {
        Self {
            breakpoints: self.breakpoints.iter().map(|b| b - tau).collect(),
            values: self.values.clone(),
        }
    }

    /// Blocks overlapping `[a, b)`, clipped: `(lo, hi, value)` triples.
    /// `[a, b)` must lie inside the window.
    pub fn blocks_in(&self, a: f64, b: f64) -> Result<Vec<(f64, f64, f64)>> {
        let (lo, hi) = self.window();
        if a < lo || b > hi || a > b {
            return Err(Error::Domain(format!(
                "[{a}, {b}) not contained in piecewise window [{lo}, {hi})"
            )));
        }
        let mut out = Vec::new();
        let mut i = self.block_index(a).expect("inside window");
        let mut cursor = a;
        while cursor < b {
            let block_end = self.breakpoints[i + 1].min(b);
            out.push((cursor, block_end, self.values[i]));
            cursor = block_end;
            i += 1;
        }
        Ok(out)
    }
}

/// Uniform-grid samples; the numeric fallback carrier. Values between grid
/// points are linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    origin: f64,
    step: f64,
    samples: Vec<Complex64>,
    lipschitz_bound: Option<f64>,
}

impl SampledSignal {
    pub fn new(
        origin: f64,
        step: f64,
        samples: Vec<Complex64>,
        lipschitz_bound: Option<f64>,
    ) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::validation("step", format!("must be positive, got {step}")));
        }
        if samples.is_empty() {
            return Err(Error::validation("samples", "must be nonempty"));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::validation("samples", "non-finite sample"));
        }
        if let Some(l) = lipschitz_bound {
            if !(l >= 0.0) || !l.is_finite() {
                return Err(Error::validation(
                    "lipschitzBound",
                    format!("must be a finite nonnegative real, got {l}"),
                ));
            }
            // allow a whisker of rounding slack on the consistency check
            let budget = l * step * (1.0 + 1e-9) + 1e-12;
            for (j, w) in samples.windows(2).enumerate() {
                if (w[1] - w[0]).norm() > budget {
                    return Err(Error::validation(
                        "lipschitzBound",
                        format!("samples {j} and {} violate the declared bound", j + 1),
                    ));
                }
            }
        }
        Ok(Self {
            origin,
            step,
            samples,
            lipschitz_bound,
        })
    }

    /// Samples `f` over `[a, b]` with the given step.
    pub fn from_fn(
        a: f64,
        b: f64,
        step: f64,
        lipschitz_bound: Option<f64>,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let samples: Vec<Complex64> = grid_points(a, b, step).iter().map(|&x| f(x)).collect();
        Self::new(a, step, samples, lipschitz_bound)
    }

    pub fn window(&self) -> (f64, f64) {
        (
            self.origin,
            self.origin + self.step * (self.samples.len() - 1) as f64,
        )
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn lipschitz_bound(&self) -> Option<f64> {
        self.lipschitz_bound
    }

    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        let (lo, hi) = self.window();
        if x < lo - 1e-12 || x > hi + 1e-12 {
            return Err(Error::Domain(format!(
                "x = {x} outside sampled window [{lo}, {hi}]"
            )));
        }
        if self.samples.len() == 1 {
            return Ok(self.samples[0]);
        }
        let pos = ((x - self.origin) / self.step).clamp(0.0, (self.samples.len() - 1) as f64);
        let i = (pos.floor() as usize).min(self.samples.len() - 2);
        let frac = pos - i as f64;
        Ok(self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac)
    }

    pub fn translate(&self, tau: f64) -> Self {
        Self {
            origin: self.origin - tau,
            step: self.step,
            samples: self.samples.clone(),
            lipschitz_bound: self.lipschitz_bound,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Signal {
    Trig(TrigPolynomial),
    Series(TruncatedSeries),
    Piecewise(PiecewiseConstantSignal),
    Sampled(SampledSignal),
}

impl Signal {
    pub fn kind(&self) -> &'static str {
        match self {
            Signal::Trig(_) => "trig",
            Signal::Series(_) => "series",
            Signal::Piecewise(_) => "piecewise",
            Signal::Sampled(_) => "sampled",
        }
    }

    /// Exact trig data when present (series yield their heads).
    pub fn exact_head(&self) -> Option<&TrigPolynomial> {
        match self {
            Signal::Trig(t) => Some(t),
            Signal::Series(s) => Some(&s.head),
            _ => None,
        }
    }

    pub fn tail_sup_bound(&self) -> f64 {
        match self {
            Signal::Series(s) => s.tail_sup_bound,
            _ => 0.0,
        }
    }

    /// Head value for series; callers account for `tail_sup_bound`.
    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        match self {
            Signal::Trig(t) => t.evaluate(x),
            Signal::Series(s) => s.head.evaluate(x),
            Signal::Piecewise(p) => p.evaluate(x).map(|v| Complex64::new(v, 0.0)),
            Signal::Sampled(s) => s.evaluate(x),
        }
    }

    pub fn translate(&self, tau: f64) -> Result<Signal> {
        Ok(match self {
            Signal::Trig(t) => Signal::Trig(t.translate(tau)?),
            Signal::Series(s) => Signal::Series(TruncatedSeries {
                head: s.head.translate(tau)?,
                tail_sup_bound: s.tail_sup_bound,
            }),
            Signal::Piecewise(p) => Signal::Piecewise(p.translate(tau)),
            Signal::Sampled(s) => Signal::Sampled(s.translate(tau)),
        })
    }

    /// Interval on which `evaluate` succeeds.
    pub fn evaluable_window(&self) -> Option<(f64, f64)> {
        match self {
            Signal::Trig(_) | Signal::Series(_) => None,
            Signal::Piecewise(p) => Some(p.window()),
            Signal::Sampled(s) => Some(s.window()),
        }
    }

    pub fn domain(&self) -> Option<Domain> {
        self.exact_head().map(|h| h.domain())
    }

    /// Sup-norm bound when one is certifiable from the representation.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Signal::Trig(t) => t.coeff_abs_sum(),
            Signal::Series(s) => s.head.coeff_abs_sum() + s.tail_sup_bound,
            Signal::Piecewise(p) => p.values().iter().fold(0.0, |m, v| m.max(v.abs())),
            Signal::Sampled(s) => s.max_abs(),
        }
    }

    /// Global Lipschitz bound, when the representation certifies one.
    pub fn lipschitz_bound(&self) -> Option<f64> {
        match self {
            Signal::Trig(t) => Some(t.lipschitz_bound()),
            // the tail is sup-bounded but not slope-bounded
            Signal::Series(_) => None,
            Signal::Piecewise(_) => None,
            Signal::Sampled(s) => s.lipschitz_bound(),
        }
    }
}

/// Scales a signal by a complex constant. Piecewise signals carry real block
/// values, so only real factors are supported there.
pub fn scale(signal: &Signal, c: Complex64) -> Result<Signal> {
    Ok(match signal {
        Signal::Trig(t) => Signal::Trig(t.scale(c)),
        Signal::Series(s) => Signal::Series(TruncatedSeries {
            head: s.head.scale(c),
            tail_sup_bound: s.tail_sup_bound * c.norm(),
        }),
        Signal::Piecewise(p) => {
            if c.im != 0.0 {
                return Err(Error::Unsupported(
                    "complex scaling of a real piecewise-constant signal".into(),
                ));
            }
            Signal::Piecewise(PiecewiseConstantSignal::new(
                p.breakpoints().to_vec(),
                p.values().iter().map(|v| v * c.re).collect(),
            )?)
        }
        Signal::Sampled(s) => Signal::Sampled(SampledSignal::new(
            s.origin(),
            s.step(),
            s.samples().iter().map(|v| v * c).collect(),
            s.lipschitz_bound().map(|l| l * c.norm()),
        )?),
    })
}

/// Pointwise reciprocal `1/f` sampled over `window` with the given step.
///
/// Requires a certified positive lower bound `m` on `inf |f|` over the
/// window: grid minimum minus Lipschitz slack (minus tail slack for series).
/// The output carries `lipschitz = Lip(f) / m^2`.
pub fn reciprocal(signal: &Signal, window: (f64, f64), step: f64) -> Result<SampledSignal> {
    if !(step > 0.0) || window.1 <= window.0 {
        return Err(Error::Parameter(format!(
            "bad reciprocal window [{}, {}] / step {step}",
            window.0, window.1
        )));
    }
    let lip = signal.lipschitz_bound().ok_or_else(|| {
        Error::Precondition(
            "reciprocal needs a Lipschitz bound to certify inf|f| (sampled signals must declare one)"
                .into(),
        )
    })?;
    if matches!(signal, Signal::Piecewise(_)) {
        return Err(Error::Unsupported(
            "reciprocal of a piecewise-constant signal (no continuous carrier)".into(),
        ));
    }
    let pts = grid_points(window.0, window.1, step);
    let mut grid_min = f64::INFINITY;
    let mut values = Vec::with_capacity(pts.len());
    for &x in &pts {
        let v = signal.evaluate(x)?;
        grid_min = grid_min.min(v.norm());
        values.push(v);
    }
    let m = grid_min - lip * step / 2.0 - signal.tail_sup_bound();
    if m <= 0.0 {
        return Err(Error::Precondition(format!(
            "certified lower bound on inf|f| is {m:.6e} <= 0 over [{}, {}]",
            window.0, window.1
        )));
    }
    SampledSignal::new(
        window.0,
        step,
        values.into_iter().map(|v| v.inv()).collect(),
        Some(lip / (m * m)),
    )
}

/// Extends a half-line trig representation to the whole line: the same
/// finite formula is its unique almost periodic extension, so all verdicts
/// carry over.
pub fn extend_to_real_line(signal: &Signal) -> Result<Signal> {
    match signal {
        Signal::Trig(t) => {
            if t.domain() != Domain::HalfLine {
                return Err(Error::Domain("signal is already on the real line".into()));
            }
            Ok(Signal::Trig(TrigPolynomial::new(
                t.terms().to_vec(),
                Domain::RealLine,
            )?))
        }
        Signal::Series(s) => {
            if s.head.domain() != Domain::HalfLine {
                return Err(Error::Domain("signal is already on the real line".into()));
            }
            Ok(Signal::Series(TruncatedSeries {
                head: TrigPolynomial::new(s.head.terms().to_vec(), Domain::RealLine)?,
                tail_sup_bound: s.tail_sup_bound,
            }))
        }
        _ => Err(Error::Unsupported(
            "extension is defined for exact trig representations only".into(),
        )),
    }
}

/// Term-wise coefficient-difference envelope for exact pairs:
/// `max_j |d_j| <= sup|f-g| <= sum_j |d_j|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

/// Certified two-sided estimate of `sup_{x in window} |f(x) - g(x)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceBound {
    /// Maximum of `|f - g|` over the scan grid (head values for series).
    pub grid_max: f64,
    /// Certified lower bound for the true sup.
    pub lower: f64,
    /// Certified upper bound for the true sup (infinite when uncertified).
    pub upper: f64,
    /// Lipschitz bound used for the grid correction, when available.
    pub lipschitz: Option<f64>,
    /// Coefficient envelope for exact trig pairs.
    pub envelope: Option<Envelope>,
    /// False when no Lipschitz data exists: grid-only estimate.
    pub certified: bool,
}

/// Grid scan of `sup |f - g|` over `window` with step `h`, plus certified
/// bounds: `upper = grid + L h / 2` from a Lipschitz bound of `f - g`, and
/// the analytic coefficient envelope for exact trig pairs. Missing Lipschitz
/// data downgrades the result to a flagged grid-only estimate.
pub fn sup_distance(
    f: &Signal,
    g: &Signal,
    window: (f64, f64),
    h: f64,
    workers: usize,
) -> Result<DistanceBound> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Parameter(format!("grid step must be positive, got {h}")));
    }
    if window.1 < window.0 {
        return Err(Error::Parameter("empty scan window".into()));
    }
    let pts = grid_points(window.0, window.1, h);
    // surface evaluation errors before the parallel scan
    f.evaluate(window.0)?;
    f.evaluate(window.1)?;
    g.evaluate(window.0)?;
    g.evaluate(window.1)?;
    let diffs = partitioned_map(pts.len(), workers, |i| {
        let x = pts[i];
        match (f.evaluate(x), g.evaluate(x)) {
            (Ok(a), Ok(b)) => (a - b).norm(),
            _ => f64::NAN,
        }
    });
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(Error::Domain(
            "signal not evaluable on the whole scan window".into(),
        ));
    }
    let grid_max = diffs.into_iter().fold(0.0, f64::max);

    let tails = f.tail_sup_bound() + g.tail_sup_bound();
    let lipschitz = match (f.lipschitz_bound(), g.lipschitz_bound()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => match (f, g) {
            // series heads are trig; the tail enters as a value offset only
            (Signal::Series(a), Signal::Series(b)) => {
                Some(a.head.lipschitz_bound() + b.head.lipschitz_bound())
            }
            (Signal::Series(a), Signal::Trig(b)) => {
                Some(a.head.lipschitz_bound() + b.lipschitz_bound())
            }
            (Signal::Trig(a), Signal::Series(b)) => {
                Some(a.lipschitz_bound() + b.head.lipschitz_bound())
            }
            _ => None,
        },
    };

    let envelope = match (f.exact_head(), g.exact_head()) {
        (Some(a), Some(b)) => {
            let diff = a.clone_sub(b);
            let max = diff.terms().iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
            let sum = diff.coeff_abs_sum();
            Some(Envelope {
                lower: (max - tails).max(0.0),
                upper: sum + tails,
            })
        }
        _ => None,
    };

    let (lower, upper, certified) = match (lipschitz, envelope) {
        (Some(l), Some(env)) => (
            (grid_max - tails).max(0.0).max(env.lower),
            (grid_max + l * h / 2.0 + tails).min(env.upper),
            true,
        ),
        (Some(l), None) => ((grid_max - tails).max(0.0), grid_max + l * h / 2.0 + tails, true),
        (None, Some(env)) => ((grid_max - tails).max(0.0).max(env.lower), env.upper, true),
        (None, None) => ((grid_max - tails).max(0.0), f64::INFINITY, false),
    };

    Ok(DistanceBound {
        grid_max,
        lower,
        upper,
        lipschitz,
        envelope,
        certified,
    })
}

impl TrigPolynomial {
    /// Term-wise difference `self - other` as a trig polynomial.
    fn clone_sub(&self, other: &TrigPolynomial) -> TrigPolynomial {
        TrigPolynomial::from_parts(
            self.terms
                .iter()
                .map(|t| (t.coeff, t.freq.clone()))
                .chain(other.terms.iter().map(|t| (-t.coeff, t.freq.clone()))),
            self.domain,
        )
    }
}

/// Scales the frequency of an exact `e^{i k x}` factor: helper for building
/// fixtures like `e^{ikx} g(x)`.
pub fn modulate(g: &TrigPolynomial, k: &Frequency) -> TrigPolynomial {
    g.bloch_reduce(&k.neg())
}

pub fn rational_freq(num: i64, den: i64) -> Frequency {
    Frequency::rational(Rational::new(num, den))
}
