//! Classification toolkit for almost-periodic-type scalar signals.
//!
//! Represents signals exactly (trig polynomials over declared-independent
//! frequency symbols, truncated series with tail bounds) or numerically
//! (step functions, uniform samples), and decides or certifies membership in
//! a hierarchy of periodicity classes: Bloch (p,k)-periodic, semi-Bloch
//! k-periodic, semi-anti-periodic, almost anti-periodic, and their Stepanov
//! lifts. Also ships the convolution operators these classes are invariant
//! under, with certified summability and preservation bounds.
//!
//! Exact verdicts come from the Bohr spectrum (commensurability and 2-adic
//! structure); numeric verdicts come from certified witness construction and
//! window-limited scans, and the two paths are cross-checked.

pub mod catalog;
pub mod classify;
pub mod convolution;
pub mod emit;
pub mod error;
pub mod frequency;
pub mod numeric;
pub mod periods;
pub mod signal;
pub mod specdoc;
pub mod spectrum;
pub mod stepanov;
pub mod symbol;
pub mod verdict;

pub use error::{Error, Result};
pub use frequency::{Frequency, Rational};
pub use signal::{
    Domain, PiecewiseConstantSignal, SampledSignal, Signal, TrigPolynomial, TrigTerm,
    TruncatedSeries,
};
pub use symbol::{FrequencySymbol, SymbolTable};
pub use verdict::{Method, Verdict};
