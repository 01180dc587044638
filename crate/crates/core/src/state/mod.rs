//! The symbolic state space of the reduction.
//!
//! The formal symbols `n` (ψ-power at the first point), `k` (number of
//! `τ_{0,1}` insertions) and `l` (number of `τ_{0,0}` insertions) are never
//! stored. States and correlator keys carry integer offsets relative to them.

mod key;
mod lincomb;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use key::CorrelatorKey;
pub use lincomb::LinComb;

/// Spin label `m ∈ {0, 1}` of a marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Label {
    Zero,
    One,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Zero, Label::One];

    pub fn as_i64(self) -> i64 {
        match self {
            Label::Zero => 0,
            Label::One => 1,
        }
    }
}

impl TryFrom<i64> for Label {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            0 => Ok(Label::Zero),
            1 => Ok(Label::One),
            other => Err(Error::InvalidLabel(other)),
        }
    }
}

impl From<Label> for i64 {
    fn from(l: Label) -> i64 {
        l.as_i64()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// One auxiliary point `η_{label, weight}` of the divisor condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaFactor {
    label: Label,
    weight: u32,
}

impl EtaFactor {
    pub fn new(label: Label, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidWeight(0));
        }
        Ok(EtaFactor { label, weight })
    }

    pub(crate) fn of(label: Label, weight: u32) -> Self {
        debug_assert!(weight >= 1);
        EtaFactor { label, weight }
    }

    pub fn label(self) -> Label {
        self.label
    }

    pub fn weight(self) -> u32 {
        self.weight
    }
}

impl Serialize for EtaFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.label.as_i64(), self.weight).serialize(s)
    }
}

impl<'de> Deserialize<'de> for EtaFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (label, weight) = <(i64, i64)>::deserialize(d)?;
        let label = Label::try_from(label).map_err(serde::de::Error::custom)?;
        let weight = u32::try_from(weight)
            .ok()
            .filter(|w| *w >= 1)
            .ok_or_else(|| serde::de::Error::custom(Error::InvalidWeight(weight)))?;
        Ok(EtaFactor::of(label, weight))
    }
}

impl fmt::Display for EtaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.label, self.weight)
    }
}

impl FromStr for EtaFactor {
    type Err = Error;

    /// `"m:a"`, e.g. `"0:1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (m, a) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected `m:a`"))?;
        let m: i64 = m
            .trim()
            .parse()
            .map_err(|_| bad("label is not an integer"))?;
        let a: i64 = a
            .trim()
            .parse()
            .map_err(|_| bad("weight is not an integer"))?;
        let weight = u32::try_from(a)
            .ok()
            .filter(|w| *w >= 1)
            .ok_or(Error::InvalidWeight(a))?;
        Ok(EtaFactor::of(Label::try_from(m)?, weight))
    }
}

/// Multiset of η-insertions, kept sorted by `(label, weight)` so that equal
/// multisets compare and hash equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EtaMultiset(Vec<EtaFactor>);

impl EtaMultiset {
    pub fn new(factors: impl IntoIterator<Item = EtaFactor>) -> Self {
        let mut v: Vec<EtaFactor> = factors.into_iter().collect();
        v.sort_unstable();
        EtaMultiset(v)
    }

    /// `count` copies of `η_{label, weight}`.
    pub fn repeated(label: Label, weight: u32, count: usize) -> Self {
        EtaMultiset(vec![EtaFactor::of(label, weight); count])
    }

    pub fn as_slice(&self) -> &[EtaFactor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.0.iter().map(|e| u64::from(e.weight)).sum()
    }

    pub fn count_label(&self, label: Label) -> usize {
        self.0.iter().filter(|e| e.label == label).count()
    }

    /// Removes the factors at `removed` (indices into the sorted order) and
    /// inserts `added`.
    pub fn replace(&self, removed: &[usize], added: &[EtaFactor]) -> EtaMultiset {
        EtaMultiset::new(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(i))
                .map(|(_, e)| *e)
                .chain(added.iter().copied()),
        )
    }

    fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl<'de> Deserialize<'de> for EtaMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(EtaMultiset::new(Vec::<EtaFactor>::deserialize(d)?))
    }
}

impl FromStr for EtaMultiset {
    type Err = Error;

    /// Comma-separated `m:a` list in any order; the empty string is the
    /// empty multiset.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(EtaMultiset::default());
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<EtaFactor>>>()
            .map(EtaMultiset::new)
    }
}

impl fmt::Display for EtaMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Arguments of a U-number `U(g, n + dn, m, k + dp, l | ∏ η)`.
///
/// The `τ_{0,0}` tail count is always exactly `l`: the descent never
/// changes it, so it has no field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UState {
    #[serde(rename = "g")]
    pub genus: u32,
    #[serde(rename = "dn")]
    pub psi_shift: i64,
    #[serde(rename = "m")]
    pub label: Label,
    #[serde(rename = "dp")]
    pub tail_shift: i64,
    pub etas: EtaMultiset,
}

impl UState {
    pub fn new(
        genus: u32,
        psi_shift: i64,
        label: Label,
        tail_shift: i64,
        etas: EtaMultiset,
    ) -> Self {
        UState {
            genus,
            psi_shift,
            label,
            tail_shift,
            etas,
        }
    }

    /// Same state with `etas` in canonical order. Idempotent.
    pub fn canonical(&self) -> UState {
        if self.etas.is_sorted() {
            return self.clone();
        }
        UState {
            etas: EtaMultiset::new(self.etas.0.iter().copied()),
            ..self.clone()
        }
    }

    pub fn with_label(&self, label: Label) -> UState {
        UState {
            label,
            ..self.clone()
        }
    }

    /// Lexicographic descent measure `(genus, #etas)`.
    pub fn measure(&self) -> (u32, usize) {
        (self.genus, self.etas.len())
    }
}

impl fmt::Display for UState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "U(g={}, dn={}, m={}, dp={} | {})",
            self.genus, self.psi_shift, self.label, self.tail_shift, self.etas
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eta(m: i64, a: u32) -> EtaFactor {
        EtaFactor::new(Label::try_from(m).unwrap(), a).unwrap()
    }

    #[test]
    fn canonical_sorts_etas() {
        let s = UState {
            genus: 2,
            psi_shift: 0,
            label: Label::Zero,
            tail_shift: 0,
            etas: EtaMultiset(vec![eta(1, 2), eta(0, 1)]),
        };
        let c = s.canonical();
        assert_eq!(c.etas.as_slice(), &[eta(0, 1), eta(1, 2)]);
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn parse_eta_list() {
        let m: EtaMultiset = "1:2, 0:1,0:1".parse().unwrap();
        assert_eq!(m.to_string(), "0:1,0:1,1:2");
        assert!("".parse::<EtaMultiset>().unwrap().is_empty());
        assert_eq!("2:1".parse::<EtaMultiset>(), Err(Error::InvalidLabel(2)));
        assert_eq!("0:0".parse::<EtaMultiset>(), Err(Error::InvalidWeight(0)));
        assert!("0-1".parse::<EtaMultiset>().is_err());
    }

    #[test]
    fn json_shape() {
        let s = UState::new(3, -1, Label::One, 0, "0:1,1:2".parse().unwrap());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"g":3,"dn":-1,"m":1,"dp":0,"etas":[[0,1],[1,2]]}"#);
        let back: UState =
            serde_json::from_str(r#"{"g":3,"dn":-1,"m":1,"dp":0,"etas":[[1,2],[0,1]]}"#).unwrap();
        assert_eq!(back, s);
        assert!(
            serde_json::from_str::<UState>(r#"{"g":3,"dn":-1,"m":2,"dp":0,"etas":[]}"#).is_err()
        );
        assert!(
            serde_json::from_str::<UState>(r#"{"g":3,"dn":-1,"m":0,"dp":0,"etas":[[0,0]]}"#)
                .is_err()
        );
    }

    #[test]
    fn replace_by_index() {
        let m: EtaMultiset = "0:1,0:1,1:3".parse().unwrap();
        let r = m.replace(&[0, 2], &[eta(1, 4)]);
        assert_eq!(r.to_string(), "0:1,1:4");
    }

    fn arb_eta() -> impl Strategy<Value = EtaFactor> {
        (0i64..2, 1u32..5).prop_map(|(m, a)| eta(m, a))
    }

    proptest! {
        #[test]
        fn canonicalization_is_order_insensitive(
            etas in proptest::collection::vec(arb_eta(), 0..7),
            seed in any::<u64>(),
        ) {
            let mut shuffled = etas.clone();
            // Deterministic Fisher-Yates driven by the seed.
            let mut x = seed;
            for i in (1..shuffled.len()).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (x >> 33) as usize % (i + 1));
            }
            let a = UState::new(3, 0, Label::Zero, 0, EtaMultiset(etas)).canonical();
            let b = UState::new(3, 0, Label::Zero, 0, EtaMultiset(shuffled)).canonical();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.canonical(), b);
        }
    }
}
