use serde::{Deserialize, Serialize};
use std::fmt;

/// Three-valued classification outcome. `Unknown` always carries its reason
/// in the surrounding evidence, never silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// How a verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "spectral")]
    Spectral,
    #[serde(rename = "numeric-witness")]
    NumericWitness,
    #[serde(rename = "numeric-scan")]
    NumericScan,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Spectral => write!(f, "spectral"),
            Method::NumericWitness => write!(f, "numeric-witness"),
            Method::NumericScan => write!(f, "numeric-scan"),
        }
    }
}
