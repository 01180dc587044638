use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CorrelatorKey, Label};
use crate::algebra::{KPoly, Rational};

/// Finite linear combination of canonical correlators with coefficients in
/// `Q[k]`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<CorrelatorKey, KPoly>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: CorrelatorKey, coeff: KPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(key, &coeff);
        out
    }

    pub fn add_term(&mut self, key: CorrelatorKey, coeff: &KPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &KPoly) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (*k, p * c))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> LinComb {
        self.scale(&KPoly::constant(c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &CorrelatorKey) -> Option<&KPoly> {
        self.terms.get(key)
    }

    /// Terms in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CorrelatorKey, &KPoly)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CorrelatorKey> {
        self.terms.keys()
    }

    /// Highest `k`-degree among the coefficients; `None` when zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(KPoly::degree).max()
    }

    pub fn with_label(&self, label: Label) -> LinComb {
        let mut out = LinComb::zero();
        for (k, p) in &self.terms {
            out.add_term(k.with_label(label), p);
        }
        out
    }

    /// Checks the no-zero-coefficient and canonical-key invariants.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(k, p)| k.is_canonical() && !p.is_zero() && p.is_canonical())
    }
}

impl Add<&LinComb> for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LinComb> for LinComb {
    fn add_assign(&mut self, rhs: &LinComb) {
        for (k, p) in &rhs.terms {
            self.add_term(*k, p);
        }
    }
}

impl Sub<&LinComb> for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        self + &rhs.scale_rational(&Rational::from_integer(-1))
    }
}

impl fmt::Display for LinComb {
    /// `c1 · key1 + c2 · key2`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{p} · {k}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    key: CorrelatorKey,
    coeff: KPoly,
}

impl Serialize for LinComb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(k, p)| Term {
            key: *k,
            coeff: p.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for LinComb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut out = LinComb::zero();
        for t in Vec::<Term>::deserialize(d)? {
            out.add_term(t.key, &t.coeff);
        }
        Ok(out)
    }
}
