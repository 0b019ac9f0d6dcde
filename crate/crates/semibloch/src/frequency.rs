//! Exact frequencies: rational linear combinations of declared symbols.
//!
//! A frequency is `sum_i c_i * s_i` with reduced rational coefficients and
//! pairwise distinct symbols. Most frequencies are single-symbol; combinations
//! arise from Bloch reduction by a wave vector on a different symbol. Two
//! frequencies on distinct symbol combinations are treated as rationally
//! independent ("incommensurable by declaration").

use crate::error::{Error, Result};
use crate::symbol::{one_symbol, FrequencySymbol, SymbolTable};
use num::integer::{gcd, lcm};
use num::rational::Rational64;
use num::{Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub type Rational = Rational64;

/// gcd of two rationals: the largest rational dividing both to integers.
pub fn rational_gcd(a: Rational, b: Rational) -> Rational {
    let a = a.abs();
    let b = b.abs();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    Rational::new(gcd(*a.numer(), *b.numer()), lcm(*a.denom(), *b.denom()))
}

pub fn rational_gcd_all(values: impl IntoIterator<Item = Rational>) -> Rational {
    values
        .into_iter()
        .fold(Rational::zero(), |acc, v| rational_gcd(acc, v))
}

/// Exponent of 2 in a reduced nonzero rational.
pub fn two_adic_valuation(r: Rational) -> i32 {
    assert!(!r.is_zero(), "valuation of zero is undefined");
    let vn = r.numer().unsigned_abs().trailing_zeros() as i32;
    let vd = r.denom().unsigned_abs().trailing_zeros() as i32;
    vn - vd
}

/// Odd part of a positive integer.
pub fn odd_part(mut n: i64) -> i64 {
    debug_assert!(n > 0);
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency {
    // Sorted by symbol name, coefficients nonzero. Empty = zero frequency.
    terms: Vec<(Arc<FrequencySymbol>, Rational)>,
}

impl Frequency {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::single(one_symbol(), coeff)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn single(symbol: Arc<FrequencySymbol>, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![(symbol, coeff)],
        }
    }

    fn from_terms(mut terms: Vec<(Arc<FrequencySymbol>, Rational)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Arc<FrequencySymbol>, Rational)> = Vec::with_capacity(terms.len());
        for (sym, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == sym => *acc += c,
                _ => merged.push((sym, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Self { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn components(&self) -> &[(Arc<FrequencySymbol>, Rational)] {
        &self.terms
    }

    /// The (single symbol, coefficient) pair for plain frequencies.
    pub fn single_component(&self) -> Option<(&Arc<FrequencySymbol>, Rational)> {
        match self.terms.as_slice() {
            [(sym, c)] => Some((sym, *c)),
            _ => None,
        }
    }

    /// Numeric value, using the f64 rounding of each symbol.
    pub fn value(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| (*c.numer() as f64) / (*c.denom() as f64) * s.value())
            .sum()
    }

    pub fn add(&self, other: &Frequency) -> Frequency {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Frequency::from_terms(terms)
    }

    pub fn sub(&self, other: &Frequency) -> Frequency {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Frequency {
        Frequency {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: Rational) -> Frequency {
        if r.is_zero() {
            return Frequency::zero();
        }
        Frequency {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * r)).collect(),
        }
    }

    /// If `self == c * base` for a rational `c`, returns `c`. `base` must be
    /// nonzero; the zero frequency yields `c = 0`.
    pub fn rational_ratio_to(&self, base: &Frequency) -> Option<Rational> {
        debug_assert!(!base.is_zero());
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() != base.terms.len() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for ((s, c), (bs, bc)) in self.terms.iter().zip(base.terms.iter()) {
            if s != bs {
                return None;
            }
            let r = c / bc;
            match ratio {
                None => ratio = Some(r),
                Some(prev) if prev == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    /// Writes a nonzero frequency as `c * d` with `d` primitive (coefficient
    /// gcd = 1) and of positive numeric value. Returns `(c, d)`.
    pub fn primitive_direction(&self) -> Option<(Rational, Frequency)> {
        if self.is_zero() {
            return None;
        }
        let g = rational_gcd_all(self.terms.iter().map(|(_, c)| *c));
        let mut direction = self.scale(g.recip());
        let mut c = g;
        if direction.value() < 0.0 {
            direction = direction.neg();
            c = -c;
        }
        Some((c, direction))
    }

    /// Parses `"num"`, `"num/den"`, `"num*sym"`, or `"num/den*sym"` against a
    /// symbol table; a bare symbol name means one unit of that symbol.
    pub fn parse(text: &str, table: &SymbolTable) -> Result<Frequency> {
        let text = text.trim();
        let (coeff_part, sym_part) = match text.split_once('*') {
            Some((c, s)) => (c.trim(), Some(s.trim())),
            None => {
                if text.parse::<f64>().is_err() && table.get(text).is_some() {
                    ("1", Some(text))
                } else {
                    (text, None)
                }
            }
        };
        let coeff = parse_rational(coeff_part)?;
        let symbol = match sym_part {
            None => one_symbol(),
            Some(name) => table.get(name).ok_or_else(|| {
                Error::Parse(format!("unknown symbol `{name}` in frequency `{text}`"))
            })?,
        };
        Ok(Frequency::single(symbol, coeff))
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad numerator in `{text}`")))?,
            d.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad denominator in `{text}`")))?,
        ),
        None => (
            text.parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{text}` is not an integer or fraction")))?,
            1,
        ),
    };
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

fn fmt_coeff(c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *c.denom() == 1 {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (sym, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
                fmt_coeff(&c.abs(), f)?;
            } else {
                fmt_coeff(c, f)?;
            }
            if sym.name() != "one" {
                write!(f, "*{}", sym.name())?;
            }
        }
        Ok(())
    }
}

/// Shared commensurability step: if every frequency in `freqs` is a rational
/// multiple of one primitive direction, returns that direction together with
/// the multipliers, in input order. Zero frequencies get multiplier 0.
pub fn common_direction(freqs: &[Frequency]) -> Option<(Frequency, Vec<Rational>)> {
    let base = freqs.iter().find(|f| !f.is_zero())?;
    let (_, direction) = base.primitive_direction()?;
    let mut ratios = Vec::with_capacity(freqs.len());
    for f in freqs {
        ratios.push(f.rational_ratio_to(&direction)?);
    }
    Some((direction, ratios))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(rat(1, 3), rat(5, 7)), rat(1, 21));
        assert_eq!(rational_gcd(rat(1, 2), rat(1, 3)), rat(1, 6));
        assert_eq!(rational_gcd(rat(-4, 1), rat(6, 1)), rat(2, 1));
        assert_eq!(rational_gcd_all([rat(1, 1), rat(-1, 1)]), rat(1, 1));
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic_valuation(rat(1, 2)), -1);
        assert_eq!(two_adic_valuation(rat(1, 3)), 0);
        assert_eq!(two_adic_valuation(rat(12, 5)), 2);
        assert_eq!(two_adic_valuation(rat(-8, 3)), 3);
    }

    #[test]
    fn combination_arithmetic_cancels() {
        let mut table = SymbolTable::with_builtins();
        let s = table.declare("s", "2.0").unwrap();
        let a = Frequency::rational(rat(1, 2));
        let b = Frequency::single(s, rat(1, 3));
        let sum = a.add(&b);
        assert_eq!(sum.components().len(), 2);
        let back = sum.sub(&b);
        assert_eq!(back, a);
        assert!(sum.sub(&sum).is_zero());
    }

    #[test]
    fn ratio_detection_on_combinations() {
        let table = SymbolTable::with_builtins();
        let s = table.get("sqrt2").unwrap();
        let base = Frequency::rational(rat(1, 1)).add(&Frequency::single(s.clone(), rat(1, 1)));
        let double = base.scale(rat(2, 1));
        assert_eq!(double.rational_ratio_to(&base), Some(rat(2, 1)));
        // same symbols, non-proportional coefficients
        let other = Frequency::rational(rat(1, 1)).add(&Frequency::single(s, rat(2, 1)));
        assert_eq!(other.rational_ratio_to(&base), None);
    }

    #[test]
    fn primitive_direction_is_value_positive() {
        let f = Frequency::rational(rat(-3, 2));
        let (c, d) = f.primitive_direction().unwrap();
        assert!(d.value() > 0.0);
        assert_eq!(f, d.scale(c));
    }

    #[test]
    fn parse_forms() {
        let table = SymbolTable::with_builtins();
        assert_eq!(
            Frequency::parse("1/2", &table).unwrap(),
            Frequency::rational(rat(1, 2))
        );
        assert_eq!(
            Frequency::parse("sqrt2", &table).unwrap(),
            Frequency::single(table.get("sqrt2").unwrap(), rat(1, 1))
        );
        assert_eq!(
            Frequency::parse("-3/4*sqrt2", &table).unwrap(),
            Frequency::single(table.get("sqrt2").unwrap(), rat(-3, 4))
        );
        assert!(Frequency::parse("1/0", &table).is_err());
        assert!(Frequency::parse("2*nope", &table).is_err());
    }

    #[test]
    fn common_direction_spans() {
        let freqs = vec![
            Frequency::rational(rat(1, 3)),
            Frequency::rational(rat(5, 7)),
            Frequency::zero(),
        ];
        let (d, ratios) = common_direction(&freqs).unwrap();
        assert_eq!(d, Frequency::integer(1));
        assert_eq!(ratios, vec![rat(1, 3), rat(5, 7), rat(0, 1)]);
    }
}
