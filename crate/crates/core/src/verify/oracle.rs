//! Concrete-arithmetic oracle.
//!
//! Reruns the whole descent with the `τ_{0,1}` tail count fixed to an actual
//! integer. Everything here is plain [`Rational`] arithmetic; no polynomial
//! in `k` is ever formed. Comparing against the symbolic engine evaluated at
//! the same point checks the offset and polynomial bookkeeping.
//!
//! The oracle always uses the correct rules; it is not affected by
//! [`crate::Mutation`].

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::state::{Label, LinComb, UState};

/// `⟨τ_{n+shift,m} τ_{0,1}^{tail} τ_{0,0}^l⟩₀` with a concrete tail below 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConcreteKey {
    pub label: Label,
    pub shift: i64,
    pub tail: u64,
}

pub type ConcreteValue = BTreeMap<ConcreteKey, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Point {
    genus: u32,
    dn: i64,
    label: Label,
    tail: u64,
    etas: Vec<(Label, u32)>,
}

/// Fully reduces `⟨τ_{n+dn,m} τ_{0,1}^{tail} τ_{0,0}^{l+dl}⟩₀` with a
/// concrete tail: tail ≥ 3 drops by 3 with factor `(tail-2)/3`, then the
/// string equation absorbs `dl`.
pub fn concrete_normalize(label: Label, dn: i64, tail: u64, dl: i64) -> (Rational, ConcreteKey) {
    let steps = tail / 3;
    let rest = tail % 3;
    let mut factor = Rational::one();
    let mut t = tail;
    for _ in 0..steps {
        factor = &factor * &Rational::frac(t as i64 - 2, 3);
        t -= 3;
    }
    let shift = (dn - steps as i64) - (dl + steps as i64);
    (
        factor,
        ConcreteKey {
            label,
            shift,
            tail: rest,
        },
    )
}

fn add_into(acc: &mut ConcreteValue, key: ConcreteKey, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key).or_default();
    *e += &c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

fn scaled(v: &ConcreteValue, c: &Rational) -> ConcreteValue {
    let mut out = ConcreteValue::new();
    for (k, x) in v {
        add_into(&mut out, *k, x * c);
    }
    out
}

/// Memoizing concrete evaluator.
#[derive(Debug, Default)]
pub struct Oracle {
    memo: HashMap<Point, ConcreteValue>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Value of `s` with `k = k0`.
    pub fn concrete_reduce(&mut self, s: &UState, k0: u64) -> Result<ConcreteValue> {
        let tail = k0 as i64 + s.tail_shift;
        if tail < 0 {
            return Err(Error::TailUnderflow {
                k0,
                offset: s.tail_shift,
            });
        }
        let mut etas: Vec<(Label, u32)> = s
            .etas
            .as_slice()
            .iter()
            .map(|e| (e.label(), e.weight()))
            .collect();
        etas.sort();
        let point = Point {
            genus: s.genus,
            dn: s.psi_shift,
            label: s.label,
            tail: tail as u64,
            etas,
        };
        self.eval(&point)
    }

    /// `3!·⟨τ_{n,m} τ_{0,1}^{k0} τ_{0,0}^l⟩₃` assembled from concrete values.
    pub fn concrete_theorem1(&mut self, label: Label, k0: u64) -> Result<ConcreteValue> {
        let mut out = ConcreteValue::new();
        for (w, dn, count) in [(1, 1, 4), (-3, 0, 3), (3, -1, 2)] {
            let point = Point {
                genus: 3,
                dn,
                label,
                tail: k0,
                etas: vec![(Label::Zero, 1); count],
            };
            for (k, x) in self.eval(&point)? {
                add_into(&mut out, k, &x * &Rational::from_integer(w));
            }
        }
        Ok(out)
    }

    fn eval(&mut self, pt: &Point) -> Result<ConcreteValue> {
        if let Some(v) = self.memo.get(pt) {
            return Ok(v.clone());
        }
        let value = if pt.genus == 0 {
            let ones = pt.etas.iter().filter(|e| e.0 == Label::One).count() as u64;
            let zeros = pt.etas.len() as i64 - ones as i64;
            let (f, key) = concrete_normalize(pt.label, pt.dn, pt.tail + ones, zeros);
            BTreeMap::from([(key, f)])
        } else {
            if pt.etas.is_empty() {
                return Err(Error::RecursionInapplicable(
                    "no eta insertions at positive genus",
                ));
            }
            let t = pt.etas.len() as i64;
            let total: i64 = pt.etas.iter().map(|e| i64::from(e.1)).sum();
            let lhs = total * (2 * i64::from(pt.genus) + t - 1);
            let mut acc = ConcreteValue::new();
            for (c, child) in self.terms(pt) {
                let v = self.eval(&child)?;
                for (k, x) in scaled(&v, &c) {
                    add_into(&mut acc, k, x);
                }
            }
            scaled(&acc, &Rational::frac(1, lhs))
        };
        self.memo.insert(pt.clone(), value.clone());
        Ok(value)
    }

    /// Right-hand side of the recursion at a concrete point. Terms whose
    /// multiplier vanishes are omitted.
    fn terms(&self, pt: &Point) -> Vec<(Rational, Point)> {
        let g = pt.genus;
        let p = pt.tail as i64;
        let n = pt.etas.len();
        let mut out = Vec::new();
        let child = |genus: u32, tail: u64, drop: &[usize], add: Vec<(Label, u32)>| {
            let mut etas: Vec<(Label, u32)> = (0..n)
                .filter(|i| !drop.contains(i))
                .map(|i| pt.etas[i])
                .chain(add)
                .collect();
            etas.sort();
            Point {
                genus,
                dn: pt.dn - 1,
                label: pt.label,
                tail,
                etas,
            }
        };
        let z = |a: i64| (Label::Zero, a as u32);
        let o = |a: i64| (Label::One, a as u32);

        for j in 0..n {
            let (m, a) = pt.etas[j];
            let a = i64::from(a);
            for b1 in 1..a {
                let b2 = a - b1;
                if m == Label::Zero {
                    out.push((
                        Rational::from_integer(b1 * b2),
                        child(g - 1, pt.tail, &[j], vec![o(b1), z(b2)]),
                    ));
                } else {
                    out.push((
                        Rational::frac(b1 * b2, 2),
                        child(g - 1, pt.tail, &[j], vec![o(b1), o(b2)]),
                    ));
                    if p > 0 {
                        out.push((
                            Rational::frac(p * b1 * b2, 6),
                            child(g - 1, pt.tail - 1, &[j], vec![z(b1), z(b2)]),
                        ));
                    }
                }
            }
            if m == Label::One && g >= 2 {
                for b1 in 1..a {
                    for b2 in 1..a - b1 {
                        let b3 = a - b1 - b2;
                        out.push((
                            Rational::frac(b1 * b2 * b3, 9),
                            child(g - 2, pt.tail, &[j], vec![z(b1), z(b2), z(b3)]),
                        ));
                    }
                }
            }
        }

        for j in 0..n {
            for k in j + 1..n {
                let (mj, aj) = pt.etas[j];
                let (mk, ak) = pt.etas[k];
                let s = i64::from(aj) + i64::from(ak);
                match (mj, mk) {
                    (Label::Zero, Label::Zero) => {
                        out.push((
                            Rational::from_integer(s),
                            child(g, pt.tail, &[j, k], vec![z(s)]),
                        ));
                    }
                    (Label::One, Label::One) => {
                        if p > 0 {
                            out.push((
                                Rational::frac(p * s, 3),
                                child(g, pt.tail - 1, &[j, k], vec![z(s)]),
                            ));
                        }
                        for b1 in 1..s {
                            out.push((
                                Rational::frac(b1 * (s - b1), 3),
                                child(g - 1, pt.tail, &[j, k], vec![z(b1), z(s - b1)]),
                            ));
                        }
                    }
                    _ => out.push((
                        Rational::from_integer(s),
                        child(g, pt.tail, &[j, k], vec![o(s)]),
                    )),
                }
            }
        }

        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let trio = [pt.etas[i], pt.etas[j], pt.etas[k]];
                    if trio.iter().all(|e| e.0 == Label::One) {
                        let s: i64 = trio.iter().map(|e| i64::from(e.1)).sum();
                        out.push((
                            Rational::frac(2 * s, 3),
                            child(g, pt.tail, &[i, j, k], vec![z(s)]),
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Evaluates a symbolic combination at `k = k0` and brings every term to the
/// oracle's concrete normal form.
pub fn evaluate_symbolic(value: &LinComb, k0: u64) -> Result<ConcreteValue> {
    let x = Rational::from_integer(k0 as i64);
    let mut out = ConcreteValue::new();
    for (key, poly) in value.iter() {
        let c = poly.eval(&x);
        if c.is_zero() {
            continue;
        }
        let tail = k0 as i64 + key.tail;
        if tail < 0 {
            return Err(Error::TailUnderflow {
                k0,
                offset: key.tail,
            });
        }
        let (f, ck) = concrete_normalize(key.label, key.shift, tail as u64, 0);
        add_into(&mut out, ck, &c * &f);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationVerdict {
    pub pass: bool,
    /// Samples at which symbolic and concrete values differ.
    pub mismatches: Vec<u64>,
}

/// Checks `samples` for size and distinctness against a symbolic value.
pub fn check_samples(symbolic: &LinComb, samples: &[u64]) -> Result<()> {
    let needed = symbolic.max_degree().unwrap_or(0) + 1;
    check_sample_count(needed, samples)
}

pub(crate) fn check_sample_count(needed: usize, samples: &[u64]) -> Result<()> {
    if samples.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: samples.len(),
        });
    }
    let mut seen = samples.to_vec();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateSample(w[0]));
    }
    Ok(())
}

/// Compares `symbolic` evaluated at each sample against `concrete(k0)`.
/// Sample validation happens before `concrete` is ever called.
pub fn interpolation_check(
    symbolic: &LinComb,
    samples: &[u64],
    mut concrete: impl FnMut(u64) -> Result<ConcreteValue>,
) -> Result<InterpolationVerdict> {
    check_samples(symbolic, samples)?;
    let mut mismatches = Vec::new();
    for &k0 in samples {
        if evaluate_symbolic(symbolic, k0)? != concrete(k0)? {
            mismatches.push(k0);
        }
    }
    Ok(InterpolationVerdict {
        pass: mismatches.is_empty(),
        mismatches,
    })
}
