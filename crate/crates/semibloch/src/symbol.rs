//! Frequency symbols: named positive reals declared pairwise rationally
//! independent. Irrational constants carry high-precision decimal literals
//! (at least 50 significant digits); all arithmetic uses the f64 rounding of
//! the literal. Independence is declared, not proven.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// 60-digit literals for the builtin constants used by the signal catalog.
pub const PI_SQRT2_LITERAL: &str =
    "4.44288293815836624701588099006069369861462168937569022308540";
pub const SQRT2_LITERAL: &str =
    "1.41421356237309504880168872420969807856967187537694807317668";

/// A named positive real value. Two symbols are the same iff their names
/// match; the owning [`SymbolTable`] guarantees a name never maps to two
/// different values.
#[derive(Debug)]
pub struct FrequencySymbol {
    name: String,
    value: f64,
    literal: String,
}

impl FrequencySymbol {
    fn new(name: &str, literal: &str) -> Result<Self> {
        if name.is_empty()
            || !name
                .chars()
                .enumerate()
                .all(|(i, c)| c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit()))
        {
            return Err(Error::validation(
                "symbols",
                format!("`{name}` is not a valid symbol name"),
            ));
        }
        let value: f64 = literal.trim().parse().map_err(|_| {
            Error::validation("symbols", format!("`{name}`: unparseable value `{literal}`"))
        })?;
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::validation(
                "symbols",
                format!("`{name}`: value must be a finite positive real, got {value}"),
            ));
        }
        Ok(Self {
            name: name.to_string(),
            value,
            literal: literal.trim().to_string(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn literal(&self) -> &str {
        &self.literal
    }
}

impl PartialEq for FrequencySymbol {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for FrequencySymbol {}
impl PartialOrd for FrequencySymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FrequencySymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}
impl Hash for FrequencySymbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}
impl fmt::Display for FrequencySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// The unit symbol, shared by every table and every rational frequency.
pub fn one_symbol() -> Arc<FrequencySymbol> {
    static ONE: OnceLock<Arc<FrequencySymbol>> = OnceLock::new();
    ONE.get_or_init(|| Arc::new(FrequencySymbol::new("one", "1").expect("builtin")))
        .clone()
}

/// Registry of declared symbols. Always contains `one = 1`.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    symbols: BTreeMap<String, Arc<FrequencySymbol>>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert("one".to_string(), one_symbol());
        Self { symbols }
    }

    /// Declares a symbol. Redeclaring with an identical literal is a no-op;
    /// redeclaring with a different literal is a validation error.
    pub fn declare(&mut self, name: &str, literal: &str) -> Result<Arc<FrequencySymbol>> {
        if let Some(existing) = self.symbols.get(name) {
            if existing.literal() == literal.trim()
                || (name == "one" && literal.trim().parse() == Ok(1.0))
            {
                return Ok(existing.clone());
            }
            return Err(Error::validation(
                "symbols",
                format!(
                    "`{name}` already declared with value {}, cannot redeclare as {literal}",
                    existing.literal()
                ),
            ));
        }
        let sym = Arc::new(FrequencySymbol::new(name, literal)?);
        self.symbols.insert(name.to_string(), sym.clone());
        Ok(sym)
    }

    pub fn get(&self, name: &str) -> Option<Arc<FrequencySymbol>> {
        self.symbols.get(name).cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<FrequencySymbol>> {
        self.symbols.values()
    }

    /// Table with the builtin irrational constants declared.
    pub fn with_builtins() -> Self {
        let mut t = Self::new();
        t.declare("pi_sqrt2", PI_SQRT2_LITERAL).expect("builtin");
        t.declare("sqrt2", SQRT2_LITERAL).expect("builtin");
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_always_present() {
        let t = SymbolTable::new();
        assert_eq!(t.get("one").unwrap().value(), 1.0);
    }

    #[test]
    fn redeclaration_conflicts_are_rejected() {
        let mut t = SymbolTable::new();
        t.declare("alpha", "2.5").unwrap();
        assert!(t.declare("alpha", "2.5").is_ok());
        assert!(t.declare("alpha", "2.6").is_err());
    }

    #[test]
    fn values_must_be_positive() {
        let mut t = SymbolTable::new();
        assert!(t.declare("bad", "-1.0").is_err());
        assert!(t.declare("bad", "0").is_err());
        assert!(t.declare("bad", "nonsense").is_err());
    }

    #[test]
    fn builtin_literals_have_high_precision() {
        assert!(PI_SQRT2_LITERAL.len() > 50);
        let v: f64 = PI_SQRT2_LITERAL.parse().unwrap();
        assert!((v - std::f64::consts::PI * 2.0_f64.sqrt()).abs() < 1e-15);
        let s: f64 = SQRT2_LITERAL.parse().unwrap();
        assert!((s - 2.0_f64.sqrt()).abs() < 1e-15);
    }
}
