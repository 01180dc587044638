//! Structural checks over everything the engine has memoized.

use crate::algebra::Rational;
use crate::engine::{final_key, lhs_factor, theorem1_inputs, Engine};
use crate::error::Result;
use crate::state::{Label, LinComb, UState};

/// Outcome of a property sweep: how many cases were examined and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sweep {
    pub examined: usize,
    pub failures: Vec<String>,
}

impl Sweep {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.examined += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn positive_genus(engine: &Engine) -> Vec<UState> {
    engine
        .cached_states()
        .into_iter()
        .filter(|s| s.genus > 0)
        .collect()
}

/// Every expansion strictly lowers `(genus, #etas)`.
pub fn termination(engine: &Engine) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in positive_genus(engine) {
        for (_, child) in engine.rules().expand(&s)? {
            sweep.record(child.measure() < s.measure(), || format!("{s} -> {child}"));
        }
    }
    Ok(sweep)
}

/// `lhs_factor(s)·value(s) = Σ coeff·value(child)` from cached values alone.
pub fn recursion_identity(engine: &Engine) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in positive_genus(engine) {
        let lhs = engine
            .cached(&s)
            .expect("listed state is cached")
            .scale_rational(&Rational::from_integer(lhs_factor(&s)? as i64));
        let mut rhs = LinComb::zero();
        let mut complete = true;
        for (coeff, child) in engine.rules().expand(&s)? {
            match engine.cached(&child) {
                Some(v) => rhs += &v.scale(&coeff),
                None => complete = false,
            }
        }
        sweep.record(complete && lhs == rhs, || s.to_string());
    }
    Ok(sweep)
}

/// Relabelling the first point does not change any coefficient.
pub fn label_transparency(engine: &mut Engine) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in engine.cached_states() {
        let other = match s.label {
            Label::Zero => Label::One,
            Label::One => Label::Zero,
        };
        let a = engine.reduce(&s)?;
        let b = engine.reduce(&s.with_label(other))?;
        sweep.record(a.with_label(other) == b, || s.to_string());
    }
    Ok(sweep)
}

/// Each genus-3 input is supported on the single key `(m, -8, 0)`.
pub fn single_key(engine: &mut Engine) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for label in Label::ALL {
        for s in theorem1_inputs(label) {
            let v = engine.reduce(&s)?;
            let ok = v.len() == 1 && v.keys().all(|k| *k == final_key(label));
            sweep.record(ok, || format!("{s} = {v}"));
        }
    }
    Ok(sweep)
}

/// Every cached coefficient has `k`-degree at most `bound` and every cached
/// value is in canonical form.
pub fn degree_bound(engine: &Engine, bound: usize) -> Sweep {
    let mut sweep = Sweep::default();
    for s in engine.cached_states() {
        let v = engine.cached(&s).expect("listed state is cached");
        let ok = v.is_canonical() && v.iter().all(|(_, p)| p.degree().unwrap_or(0) <= bound);
        sweep.record(ok, || format!("{s} = {v}"));
    }
    sweep
}

/// Largest `k`-degree among all cached values.
pub fn max_cached_degree(engine: &Engine) -> usize {
    engine
        .cached_states()
        .iter()
        .filter_map(|s| engine.cached(s).and_then(LinComb::max_degree))
        .max()
        .unwrap_or(0)
}
