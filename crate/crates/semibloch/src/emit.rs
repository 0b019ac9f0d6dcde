//! Deterministic CSV emission: comma-separated, `\n` line endings, header
//! row, values printed with 12 significant digits.

use crate::convolution::{finite_convolution, infinite_convolution, KernelFamily};
use crate::error::Result;
use crate::numeric::{format_sig12, grid_points};
use crate::periods::EpsilonPeriodSet;
use crate::signal::Signal;

/// Signal trace over `[a, b]`: rows `x,re,im`.
pub fn signal_csv(signal: &Signal, a: f64, b: f64, step: f64, workers: usize) -> Result<String> {
    let _ = workers;
    let mut out = String::from("x,re,im\n");
    for x in grid_points(a, b, step) {
        let v = signal.evaluate(x)?;
        out.push_str(&format!(
            "{},{},{}\n",
            format_sig12(x),
            format_sig12(v.re),
            format_sig12(v.im)
        ));
    }
    Ok(out)
}

/// Epsilon-period hits: rows `tau,certifiedBound`.
pub fn period_set_csv(set: &EpsilonPeriodSet) -> String {
    let mut out = String::from("tau,certifiedBound\n");
    for hit in &set.hits {
        out.push_str(&format!(
            "{},{}\n",
            format_sig12(hit.tau),
            format_sig12(hit.bound)
        ));
    }
    out
}

/// Convolution trace `t -> G(t)` (or `H(t)` in finite mode): rows `t,re,im`.
pub fn convolution_trace_csv(
    kernel: &KernelFamily,
    signal: &Signal,
    a: f64,
    b: f64,
    step: f64,
    finite: bool,
    workers: usize,
) -> Result<String> {
    let mut out = String::from("t,re,im\n");
    for t in grid_points(a, b, step) {
        let v = if finite {
            finite_convolution(kernel, signal, t, workers)?.value
        } else {
            infinite_convolution(kernel, signal, t, workers)?.value
        };
        out.push_str(&format!(
            "{},{},{}\n",
            format_sig12(t),
            format_sig12(v.re),
            format_sig12(v.im)
        ));
    }
    Ok(out)
}
