use std::fmt;

use serde::{Deserialize, Serialize};

use super::Label;

/// Canonical genus-0 correlator `⟨τ_{n+shift,m} τ_{0,1}^{k+r} τ_{0,0}^l⟩₀`.
///
/// Canonical means the `τ_{0,1}` offset `r` is below 3 and the `τ_{0,0}`
/// exponent is exactly `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorrelatorKey {
    #[serde(rename = "m")]
    pub label: Label,
    pub shift: i64,
    #[serde(rename = "r")]
    pub tail: i64,
}

impl CorrelatorKey {
    pub fn new(label: Label, shift: i64, tail: i64) -> Self {
        CorrelatorKey { label, shift, tail }
    }

    pub fn is_canonical(&self) -> bool {
        self.tail <= 2
    }

    pub fn with_label(self, label: Label) -> Self {
        CorrelatorKey { label, ..self }
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<m={}, shift={}, r={}>",
            self.label, self.shift, self.tail
        )
    }
}
