//! Deterministic numeric primitives: compensated summation, partitioned
//! (worker-count-independent) grid evaluation, and composite Simpson rules.
//!
//! Every reduction here is performed in a fixed ascending order over
//! precomputed per-item values, so results are bitwise identical for any
//! worker count.

use num::complex::Complex64;

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Sums an iterator with compensation, in iteration order.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

pub fn kahan_sum_complex(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for v in values {
        re.add(v.re);
        im.add(v.im);
    }
    Complex64::new(re.value(), im.value())
}

/// Evaluates `f(0..n)` into a vector, splitting the index range over
/// `workers` threads. Items are pure functions of the index, so the output
/// does not depend on the partition.
pub fn partitioned_map<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || n < 1024 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(workers);
    let mut chunks: Vec<Vec<T>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(n);
            let f = &f;
            handles.push(scope.spawn(move || (lo..hi).map(f).collect::<Vec<T>>()));
        }
        for h in handles {
            chunks.push(h.join().expect("worker panicked"));
        }
    });
    let mut out = Vec::with_capacity(n);
    for c in chunks {
        out.extend(c);
    }
    out
}

/// Maximum over `f(0..n)` with lowest-index tie-breaking; returns
/// `(index, value)`. Partition-independent.
pub fn partitioned_argmax<F>(n: usize, workers: usize, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync,
{
    let values = partitioned_map(n, workers, f);
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best
}

fn simpson_weight(i: usize, n_sub: usize) -> f64 {
    if i == 0 || i == n_sub {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

/// Rounds up to an even, positive subinterval count.
pub fn even_subdivisions(len: f64, max_width: f64) -> usize {
    let n = (len / max_width).ceil() as usize;
    (n.max(2) + 1) & !1
}

/// Composite Simpson integral of a complex integrand over `[a, b]` with
/// `n_sub` (even) subintervals.
pub fn simpson_complex<F>(f: F, a: f64, b: f64, n_sub: usize, workers: usize) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    debug_assert!(n_sub >= 2 && n_sub % 2 == 0);
    let h = (b - a) / n_sub as f64;
    let nodes = partitioned_map(n_sub + 1, workers, |i| {
        let x = if i == n_sub { b } else { a + i as f64 * h };
        f(x) * simpson_weight(i, n_sub)
    });
    kahan_sum_complex(nodes) * (h / 3.0)
}

/// Composite Simpson integral of a real integrand.
pub fn simpson_real<F>(f: F, a: f64, b: f64, n_sub: usize, workers: usize) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    debug_assert!(n_sub >= 2 && n_sub % 2 == 0);
    let h = (b - a) / n_sub as f64;
    let nodes = partitioned_map(n_sub + 1, workers, |i| {
        let x = if i == n_sub { b } else { a + i as f64 * h };
        f(x) * simpson_weight(i, n_sub)
    });
    kahan_sum(nodes) * (h / 3.0)
}

/// Inclusive grid over `[a, b]` with step `h`: `a, a+h, ..." plus `b` when the
/// last regular node falls short by more than `h * 1e-9`.
pub fn grid_points(a: f64, b: f64, h: f64) -> Vec<f64> {
    debug_assert!(h > 0.0 && b >= a);
    let n = ((b - a) / h).floor() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
    if let Some(&last) = pts.last() {
        if b - last > h * 1e-9 {
            pts.push(b);
        }
    }
    pts
}

/// `|e^{i*phase} - 1|`, computed as `2|sin(phase/2)|` to avoid cancellation.
pub fn unit_circle_gap(phase: f64) -> f64 {
    2.0 * (phase * 0.5).sin().abs()
}

/// Formats with 12 significant digits for deterministic CSV output.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{:.11e}", x)
}
