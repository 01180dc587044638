//! The rewrite rules: one step of genus descent, the genus-0 base case, and
//! normalization of genus-0 correlators.

use std::collections::BTreeMap;

use crate::algebra::{KPoly, Rational};
use crate::error::{Error, Result};
use crate::state::{CorrelatorKey, EtaFactor, Label, LinComb, UState};

/// A deliberately broken rule, used to show that the checks notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// `p·b1·b2/6` becomes `p·b1·b2/3` in the label-1 splitting term with a
    /// tail decrement.
    Sum3Prefactor,
    /// The genus-0 tail-reduction factor `(K-2)/3` becomes `(K-1)/3`.
    TailFactor,
    /// The `-3` in the genus-3 assembly becomes `+3`.
    Theorem1Sign,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::Sum3Prefactor,
        Mutation::TailFactor,
        Mutation::Theorem1Sign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Sum3Prefactor => "sum3-prefactor",
            Mutation::TailFactor => "tail-factor",
            Mutation::Theorem1Sign => "theorem1-sign",
        }
    }
}

impl std::str::FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown mutation".to_string(),
            })
    }
}

/// The tunable constants of the rule set. [`Rules::default`] is the correct
/// rule set; the other values only exist for mutation testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rules {
    sum3_divisor: i64,
    tail_offset: i64,
    theorem1_middle_weight: i64,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            sum3_divisor: 6,
            tail_offset: 2,
            theorem1_middle_weight: -3,
        }
    }
}

impl Rules {
    pub fn mutated(mutation: Mutation) -> Self {
        let mut r = Rules::default();
        match mutation {
            Mutation::Sum3Prefactor => r.sum3_divisor = 3,
            Mutation::TailFactor => r.tail_offset = 1,
            Mutation::Theorem1Sign => r.theorem1_middle_weight = 3,
        }
        r
    }

    /// Weights of `U(3,n+1|η_{0,1}^4)`, `U(3,n|η_{0,1}^3)` and
    /// `U(3,n-1|η_{0,1}^2)` in the genus-3 assembly.
    pub fn theorem1_weights(&self) -> [i64; 3] {
        [1, self.theorem1_middle_weight, 3]
    }

    /// One genus-descent step: the right-hand side of the recursion for `s`,
    /// as `(coefficient, child)` pairs with identical children merged.
    ///
    /// Every child is strictly smaller than `s` in `(genus, #etas)`.
    pub fn expand(&self, s: &UState) -> Result<Vec<(KPoly, UState)>> {
        check_expandable(s)?;
        let g = s.genus;
        let dn = s.psi_shift - 1;
        let etas = s.etas.as_slice();
        // The factor p of the tail-decrementing terms is the tail count of
        // the state being expanded.
        let p = KPoly::k_plus(s.tail_shift);

        let mut out: BTreeMap<UState, KPoly> = BTreeMap::new();
        let mut emit =
            |coeff: KPoly, genus: u32, tail_shift: i64, removed: &[usize], added: &[EtaFactor]| {
                let child = UState::new(
                    genus,
                    dn,
                    s.label,
                    tail_shift,
                    s.etas.replace(removed, added),
                );
                assert!(
                    child.measure() < s.measure(),
                    "descent measure did not drop: {s} -> {child}"
                );
                *out.entry(child).or_default() += &coeff;
            };
        let c = |num: i64, den: i64| KPoly::constant(Rational::frac(num, den));
        let eta0 = |a: u32| EtaFactor::of(Label::Zero, a);
        let eta1 = |a: u32| EtaFactor::of(Label::One, a);

        for (j, e) in etas.iter().enumerate() {
            let a = e.weight();
            match e.label() {
                Label::Zero => {
                    for (b1, b2) in compositions2(a) {
                        emit(
                            c(b1 * b2, 1),
                            g - 1,
                            s.tail_shift,
                            &[j],
                            &[eta1(b1 as u32), eta0(b2 as u32)],
                        );
                    }
                }
                Label::One => {
                    for (b1, b2) in compositions2(a) {
                        emit(
                            c(b1 * b2, 2),
                            g - 1,
                            s.tail_shift,
                            &[j],
                            &[eta1(b1 as u32), eta1(b2 as u32)],
                        );
                        emit(
                            p.scale(&Rational::frac(b1 * b2, self.sum3_divisor)),
                            g - 1,
                            s.tail_shift - 1,
                            &[j],
                            &[eta0(b1 as u32), eta0(b2 as u32)],
                        );
                    }
                    if g >= 2 {
                        for (b1, b2, b3) in compositions3(a) {
                            emit(
                                c(b1 * b2 * b3, 9),
                                g - 2,
                                s.tail_shift,
                                &[j],
                                &[eta0(b1 as u32), eta0(b2 as u32), eta0(b3 as u32)],
                            );
                        }
                    }
                }
            }
        }

        for j in 0..etas.len() {
            for k in j + 1..etas.len() {
                let (ej, ek) = (etas[j], etas[k]);
                let sum = ej.weight() + ek.weight();
                let w = i64::from(sum);
                match (ej.label(), ek.label()) {
                    (Label::Zero, Label::Zero) => {
                        emit(c(w, 1), g, s.tail_shift, &[j, k], &[eta0(sum)])
                    }
                    (Label::Zero, Label::One) | (Label::One, Label::Zero) => {
                        emit(c(w, 1), g, s.tail_shift, &[j, k], &[eta1(sum)])
                    }
                    (Label::One, Label::One) => {
                        emit(
                            p.scale(&Rational::frac(w, 3)),
                            g,
                            s.tail_shift - 1,
                            &[j, k],
                            &[eta0(sum)],
                        );
                        for (b1, b2) in compositions2(sum) {
                            emit(
                                c(b1 * b2, 3),
                                g - 1,
                                s.tail_shift,
                                &[j, k],
                                &[eta0(b1 as u32), eta0(b2 as u32)],
                            );
                        }
                    }
                }
            }
        }

        let ones: Vec<usize> = (0..etas.len())
            .filter(|&i| etas[i].label() == Label::One)
            .collect();
        for (x, &i) in ones.iter().enumerate() {
            for (y, &j) in ones.iter().enumerate().skip(x + 1) {
                for &k in &ones[y + 1..] {
                    let sum = etas[i].weight() + etas[j].weight() + etas[k].weight();
                    emit(
                        c(2 * i64::from(sum), 3),
                        g,
                        s.tail_shift,
                        &[i, j, k],
                        &[eta0(sum)],
                    );
                }
            }
        }

        Ok(out
            .into_iter()
            .filter(|(_, coeff)| !coeff.is_zero())
            .map(|(child, coeff)| (coeff, child))
            .collect())
    }

    /// Brings `⟨τ_{n+dn,m} τ_{0,1}^{k+dk} τ_{0,0}^{l+dl}⟩₀` to canonical form.
    ///
    /// While `dk ≥ 3` the tail is reduced three at a time, picking up the
    /// factor `(K-2)/3` with `K = k + dk`; the string equation then folds
    /// the extra `τ_{0,0}` insertions into the ψ-shift.
    pub fn normalize(
        &self,
        label: Label,
        mut dn: i64,
        mut dk: i64,
        mut dl: i64,
    ) -> (KPoly, CorrelatorKey) {
        let mut factor = KPoly::one();
        while dk >= 3 {
            let step = KPoly::k_plus(dk - self.tail_offset).scale(&Rational::frac(1, 3));
            factor = &factor * &step;
            dk -= 3;
            dn -= 1;
            dl += 1;
        }
        (factor, CorrelatorKey::new(label, dn - dl, dk))
    }

    /// A genus-0 U-number is the genus-0 correlator with every η promoted
    /// to a `τ_{0,m}` insertion.
    pub fn base_genus0(&self, s: &UState) -> Result<LinComb> {
        if s.genus != 0 {
            return Err(Error::RecursionInapplicable(
                "genus-0 base case called at positive genus",
            ));
        }
        let dk = s.tail_shift + s.etas.count_label(Label::One) as i64;
        let dl = s.etas.count_label(Label::Zero) as i64;
        let (factor, key) = self.normalize(s.label, s.psi_shift, dk, dl);
        Ok(LinComb::single(key, factor))
    }
}

/// `(Σ a_i)(2g + t - 1)`, the multiplier on the left of the recursion.
pub fn lhs_factor(s: &UState) -> Result<u64> {
    check_expandable(s)?;
    let t = s.etas.len() as u64;
    Ok(s.etas.total_weight() * (2 * u64::from(s.genus) + t - 1))
}

fn check_expandable(s: &UState) -> Result<()> {
    if s.genus == 0 {
        return Err(Error::RecursionInapplicable("genus-0 states are terminal"));
    }
    if s.etas.is_empty() {
        return Err(Error::RecursionInapplicable(
            "no eta insertions at positive genus",
        ));
    }
    Ok(())
}

/// Ordered pairs of positive integers summing to `n`.
fn compositions2(n: u32) -> impl Iterator<Item = (i64, i64)> {
    let n = i64::from(n);
    (1..n).map(move |b1| (b1, n - b1))
}

/// Ordered triples of positive integers summing to `n`.
fn compositions3(n: u32) -> impl Iterator<Item = (i64, i64, i64)> {
    let n = i64::from(n);
    (1..n).flat_map(move |b1| (1..n - b1).map(move |b2| (b1, b2, n - b1 - b2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn state(g: u32, dn: i64, dp: i64, etas: &str) -> UState {
        UState::new(g, dn, Label::Zero, dp, etas.parse().unwrap())
    }

    #[test]
    fn lhs_values() {
        assert_eq!(lhs_factor(&state(3, 0, 0, "0:1,0:1,0:1,0:1")), Ok(36));
        assert_eq!(lhs_factor(&state(3, 0, 0, "0:1,0:1")), Ok(14));
        assert_eq!(lhs_factor(&state(1, 0, 0, "1:2")), Ok(4));
        assert_eq!(
            lhs_factor(&state(2, 0, 0, "")),
            Err(Error::RecursionInapplicable(
                "no eta insertions at positive genus"
            ))
        );
    }

    #[test]
    fn unit_weight_label_one_has_no_expansion() {
        assert!(Rules::default()
            .expand(&state(1, 0, 0, "1:1"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn weight_two_label_one_splits() {
        let got = Rules::default().expand(&state(1, 0, 0, "1:2")).unwrap();
        let want = vec![
            (KPoly::constant(q("1/2")), state(0, -1, 0, "1:1,1:1")),
            (KPoly::k().scale(&q("1/6")), state(0, -1, -1, "0:1,0:1")),
        ];
        let mut got_sorted = got;
        got_sorted.sort_by(|a, b| a.1.cmp(&b.1));
        let mut want_sorted = want;
        want_sorted.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(got_sorted, want_sorted);
    }

    #[test]
    fn two_identical_label_zero_form_one_pair() {
        let got = Rules::default()
            .expand(&state(3, -1, 0, "0:1,0:1"))
            .unwrap();
        assert_eq!(got, vec![(KPoly::constant(q("2")), state(3, -2, 0, "0:2"))]);
    }

    #[test]
    fn three_label_one_triple_and_genus_two_drop() {
        // Three label-1 points of weight 1: three pairs of each pair-kind and
        // one triple. Genus 1 excludes the g-2 term.
        let got = Rules::default()
            .expand(&state(1, 0, 0, "1:1,1:1,1:1"))
            .unwrap();
        let find = |s: &UState| got.iter().find(|(_, c)| c == s).map(|(p, _)| p.clone());
        // pair terms: p·2/3 each, three pairs, child (g, dp-1, {η_{1,1}, η_{0,2}})
        assert_eq!(
            find(&state(1, -1, -1, "0:2,1:1")),
            Some(KPoly::k().scale(&q("2")))
        );
        // split of the pair sum 2 into (1,1): 1/3 each, three pairs
        assert_eq!(find(&state(0, -1, 0, "0:1,0:1,1:1")), Some(KPoly::one()));
        // triple: 2·3/3
        assert_eq!(find(&state(1, -1, 0, "0:3")), Some(KPoly::constant(q("2"))));
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn label_one_weight_three_at_genus_two_uses_triples() {
        let got = Rules::default().expand(&state(2, 0, 0, "1:3")).unwrap();
        let triple = got.iter().find(|(_, c)| c.genus == 0).unwrap();
        assert_eq!(
            triple,
            &(KPoly::constant(q("1/9")), state(0, -1, 0, "0:1,0:1,0:1"))
        );
    }

    #[test]
    fn expand_rejects_terminal_states() {
        assert!(Rules::default().expand(&state(0, 0, 0, "0:1")).is_err());
        assert!(Rules::default().expand(&state(2, 0, 0, "")).is_err());
    }

    #[test]
    fn normalize_examples() {
        let r = Rules::default();
        assert_eq!(
            r.normalize(Label::Zero, -6, 3, 0),
            (
                KPoly::k_plus(1).scale(&q("1/3")),
                CorrelatorKey::new(Label::Zero, -8, 0)
            )
        );
        assert_eq!(
            r.normalize(Label::One, -7, 0, 1),
            (KPoly::one(), CorrelatorKey::new(Label::One, -8, 0))
        );
        let two_steps = &KPoly::k_plus(5) * &KPoly::k_plus(2);
        assert_eq!(
            r.normalize(Label::Zero, 0, 7, 0),
            (
                two_steps.scale(&q("1/9")),
                CorrelatorKey::new(Label::Zero, -4, 1)
            )
        );
    }

    #[test]
    fn normalize_is_idempotent_on_canonical_keys() {
        let r = Rules::default();
        for tail in -3..=2 {
            for shift in -9..=0 {
                let (f, key) = r.normalize(Label::One, shift, tail, 0);
                assert_eq!(f, KPoly::one());
                assert_eq!(key, CorrelatorKey::new(Label::One, shift, tail));
            }
        }
    }

    #[test]
    fn base_case_examples() {
        let r = Rules::default();
        let key = |shift, tail| CorrelatorKey::new(Label::Zero, shift, tail);
        assert_eq!(
            r.base_genus0(&state(0, 0, 0, "0:1")),
            Ok(LinComb::single(key(-1, 0), KPoly::one()))
        );
        assert_eq!(
            r.base_genus0(&state(0, -1, 0, "1:1,1:1")),
            Ok(LinComb::single(key(-1, 2), KPoly::one()))
        );
        assert_eq!(
            r.base_genus0(&state(0, -1, -1, "0:1,0:1")),
            Ok(LinComb::single(key(-3, -1), KPoly::one()))
        );
        assert!(r.base_genus0(&state(1, 0, 0, "0:1")).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(compositions2(1).count(), 0);
        assert_eq!(
            compositions2(4).collect::<Vec<_>>(),
            vec![(1, 3), (2, 2), (3, 1)]
        );
        assert_eq!(compositions3(2).count(), 0);
        // C(4, 2) ordered triples of positive integers summing to 5
        assert_eq!(compositions3(5).count(), 6);
    }

    #[test]
    fn mutation_names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>(), Ok(m));
        }
        assert_ne!(Rules::mutated(Mutation::Sum3Prefactor), Rules::default());
    }
}
