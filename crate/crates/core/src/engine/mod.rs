//! Memoized genus descent and the genus-3 assembly.

mod rules;

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{KPoly, Rational};
use crate::error::Result;
use crate::state::{CorrelatorKey, EtaMultiset, Label, LinComb, UState};

pub use rules::{lhs_factor, Mutation, Rules};

/// Reduces U-numbers to canonical genus-0 correlators, caching every state
/// it visits.
#[derive(Debug, Default)]
pub struct Engine {
    rules: Rules,
    cache: HashMap<UState, LinComb>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rules(rules: Rules) -> Self {
        Engine {
            rules,
            cache: HashMap::new(),
        }
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn cached(&self, s: &UState) -> Option<&LinComb> {
        self.cache.get(&s.canonical())
    }

    /// Every memoized state, in canonical order.
    pub fn cached_states(&self) -> Vec<UState> {
        let mut states: Vec<UState> = self.cache.keys().cloned().collect();
        states.sort();
        states
    }

    /// Value of `s` as a combination of canonical genus-0 correlators.
    pub fn reduce(&mut self, s: &UState) -> Result<LinComb> {
        let s = s.canonical();
        if let Some(v) = self.cache.get(&s) {
            return Ok(v.clone());
        }
        let value = if s.genus == 0 {
            self.rules.base_genus0(&s)?
        } else {
            let lhs = lhs_factor(&s)?;
            let mut acc = LinComb::zero();
            for (coeff, child) in self.rules.expand(&s)? {
                acc += &self.reduce(&child)?.scale(&coeff);
            }
            acc.scale_rational(&Rational::frac(1, lhs as i64))
        };
        debug_assert!(value.is_canonical());
        self.cache.insert(s, value.clone());
        Ok(value)
    }

    /// `3!·⟨τ_{n,m} τ_{0,1}^k τ_{0,0}^l⟩₃` as a combination of genus-0
    /// correlators.
    pub fn theorem1(&mut self, label: Label) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (weight, s) in self
            .rules
            .theorem1_weights()
            .into_iter()
            .zip(theorem1_inputs(label))
        {
            out += &self
                .reduce(&s)?
                .scale_rational(&Rational::from_integer(weight));
        }
        Ok(out)
    }

    /// `⟨τ_{n,m} τ_{0,1}^k τ_{0,0}^l⟩₃` itself.
    pub fn genus3_correlator(&mut self, label: Label) -> Result<LinComb> {
        Ok(self.theorem1(label)?.scale_rational(&Rational::frac(1, 6)))
    }

    /// Compares the assembled genus-3 value with the Boussinesq prediction
    /// for both labels.
    pub fn check_theorem3(&mut self) -> Result<Vec<Theorem3Verdict>> {
        Label::ALL
            .into_iter()
            .map(|label| {
                let computed = self.theorem1(label)?;
                let expected = theorem3_prediction(label);
                Ok(Theorem3Verdict {
                    label,
                    pass: computed == expected,
                    computed,
                    expected,
                })
            })
            .collect()
    }
}

/// The three U-states entering the genus-3 assembly, in the order
/// `U(3,n+1|η_{0,1}^4)`, `U(3,n|η_{0,1}^3)`, `U(3,n-1|η_{0,1}^2)`.
pub fn theorem1_inputs(label: Label) -> [UState; 3] {
    [(1, 4), (0, 3), (-1, 2)].map(|(dn, count)| {
        UState::new(
            3,
            dn,
            label,
            0,
            EtaMultiset::repeated(Label::Zero, 1, count),
        )
    })
}

/// The canonical key `⟨τ_{n-8,m} τ_{0,1}^k τ_{0,0}^l⟩₀` every genus-3 input
/// reduces to.
pub fn final_key(label: Label) -> CorrelatorKey {
    CorrelatorKey::new(label, -8, 0)
}

/// `3!/(3!·12³)·⟨τ_{n-6,m} τ_{0,1}^{k+3} τ_{0,0}^l⟩₀` folded to canonical
/// form with the correct rules: `(k+1)/5184` on [`final_key`].
pub fn theorem3_prediction(label: Label) -> LinComb {
    let (factor, key) = Rules::default().normalize(label, -6, 3, 0);
    LinComb::single(key, factor.scale(&Rational::frac(1, 1728)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem3Verdict {
    pub label: Label,
    pub pass: bool,
    pub computed: LinComb,
    pub expected: LinComb,
}

impl Theorem3Verdict {
    /// The single coefficient on [`final_key`], if the result has that shape.
    pub fn coefficient(&self) -> Option<&KPoly> {
        match self.computed.len() {
            1 => self.computed.get(&final_key(self.label)),
            _ => None,
        }
    }
}
