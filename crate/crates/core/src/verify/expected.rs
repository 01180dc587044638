//! Published constants, stored exactly as printed and in canonical form.

use std::fmt;

use serde::Serialize;

use crate::algebra::{KPoly, Rational};
use crate::engine::{final_key, theorem1_inputs, Rules};
use crate::state::{Label, LinComb, UState};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Printed in the two-correlator basis, folded to canonical form.
    PrintedBasisFolded,
    /// Printed directly on the canonical correlator.
    PrintedDirect,
    /// The final genus-3 identity.
    RecomputedFinal,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::PrintedBasisFolded => "printed-basis-folded",
            Provenance::PrintedDirect => "printed-direct",
            Provenance::RecomputedFinal => "recomputed-final",
        })
    }
}

/// A value in the printed basis
/// `c1·⟨τ_{n-6,m} τ_{0,1}^{k+3} τ_{0,0}^l⟩₀ + c2·⟨τ_{n-7,m} τ_{0,1}^k τ_{0,0}^{l+1}⟩₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedBasis {
    pub c1: Rational,
    pub c2: KPoly,
}

impl PrintedBasis {
    pub fn new(c1: &str, c2_const: &str, c2_linear: &str) -> Self {
        let parse = |s: &str| s.parse::<Rational>().expect("valid literal");
        PrintedBasis {
            c1: parse(c1),
            c2: KPoly::from_coeffs(vec![parse(c2_const), parse(c2_linear)]),
        }
    }

    /// Canonical form, using the correct tail-reduction rule for `C1`.
    pub fn fold(&self, label: Label) -> LinComb {
        let rules = Rules::default();
        let (f1, k1) = rules.normalize(label, -6, 3, 0);
        let (f2, k2) = rules.normalize(label, -7, 0, 1);
        let mut out = LinComb::single(k1, f1.scale(&self.c1));
        out.add_term(k2, &(&f2 * &self.c2));
        out
    }

    pub fn combine(terms: &[(i64, &PrintedBasis)]) -> PrintedBasis {
        let mut c1 = Rational::zero();
        let mut c2 = KPoly::zero();
        for (w, v) in terms {
            let w = Rational::from_integer(*w);
            c1 += &(&v.c1 * &w);
            c2 += &v.c2.scale(&w);
        }
        PrintedBasis { c1, c2 }
    }
}

impl fmt::Display for PrintedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.c1.is_zero() {
            parts.push(format!("{} · C1", self.c1));
        }
        let monomials: Vec<String> = self
            .c2
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(deg, c)| match deg {
                0 => c.to_string(),
                _ => KPoly::from_coeffs([vec![Rational::zero(); deg], vec![c.clone()]].concat())
                    .to_string(),
            })
            .collect();
        match monomials.len() {
            0 => {}
            1 => parts.push(format!("{} · C2", monomials[0])),
            _ => parts.push(format!("({}) · C2", monomials.join(" + "))),
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// What an expected value is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    U(UState),
    /// `3!·⟨τ_{n,m} τ_{0,1}^k τ_{0,0}^l⟩₃`.
    Theorem1(Label),
}

#[derive(Clone, Debug)]
pub struct ExpectedValue {
    pub name: String,
    pub target: Target,
    pub expected: LinComb,
    pub provenance: Provenance,
    pub printed: PrintedBasis,
}

/// U(3,n+1,m,k,l|η_{0,1}^4) as printed.
pub fn printed_u4() -> PrintedBasis {
    PrintedBasis::new("317/1548288", "11791/23224320", "769/1548288")
}

/// U(3,n,m,k,l|η_{0,1}^3) as printed.
pub fn printed_u3() -> PrintedBasis {
    PrintedBasis::new("1/30618", "919/7348320", "223/1837080")
}

/// U(3,n-1,m,k,l|η_{0,1}^2) as printed: only a C2 term.
pub fn printed_u2() -> PrintedBasis {
    PrintedBasis::new("0", "1/120960", "1/120960")
}

/// The C1 coefficient of the intermediate combination exactly as typeset.
/// As a reduced fraction it is 223/20901888.
pub const PRINTED_FINAL_C1: (i64, i64) = (446, 41803776);

/// The printed intermediate combination of the three U-values. Its C1
/// coefficient, 446/41803776, is a misprint; see [`recomputed_final`].
pub fn printed_final() -> PrintedBasis {
    PrintedBasis::new("446/41803776", "19729/125411328", "19729/125411328")
}

/// The final identity `3!⟨…⟩₃ = 1/1728·C1`.
pub fn printed_theorem3() -> PrintedBasis {
    PrintedBasis::new("1/1728", "0", "0")
}

/// The intermediate combination recomputed from the printed U-values with
/// the assembly weights `1, -3, 3`.
pub fn recomputed_final() -> PrintedBasis {
    PrintedBasis::combine(&[(1, &printed_u4()), (-3, &printed_u3()), (3, &printed_u2())])
}

pub fn printed_table(label: Label) -> Vec<ExpectedValue> {
    let [u4, u3, u2] = theorem1_inputs(label);
    let entry = |name: &str, target, provenance, printed: PrintedBasis| ExpectedValue {
        name: format!("{name} m={label}"),
        expected: printed.fold(label),
        target,
        provenance,
        printed,
    };
    vec![
        entry(
            "U(3,n-1|eta_{0,1}^2)",
            Target::U(u2),
            Provenance::PrintedDirect,
            printed_u2(),
        ),
        entry(
            "U(3,n|eta_{0,1}^3)",
            Target::U(u3),
            Provenance::PrintedBasisFolded,
            printed_u3(),
        ),
        entry(
            "U(3,n+1|eta_{0,1}^4)",
            Target::U(u4),
            Provenance::PrintedBasisFolded,
            printed_u4(),
        ),
        entry(
            "3!<tau>_3 (assembly)",
            Target::Theorem1(label),
            Provenance::RecomputedFinal,
            printed_theorem3(),
        ),
    ]
}

/// Given a coefficient `total` on the canonical key and a known C2
/// coefficient, the C1 coefficient that makes `c1·(k+1)/3 + c2 = total`, if
/// one exists.
pub fn implied_c1(total: &KPoly, c2: &KPoly) -> Option<Rational> {
    let rest = total - c2;
    let c1 = &rest.coeff(1) * &Rational::from_integer(3);
    let folded = KPoly::k_plus(1).scale(&c1.checked_div(&Rational::from_integer(3)).ok()?);
    (folded == rest).then_some(c1)
}

/// The implied C1 coefficient of an assembled genus-3 value on
/// [`final_key`], if the value has that shape.
pub fn implied_c1_of(value: &LinComb, label: Label, c2: &KPoly) -> Option<Rational> {
    if value.len() != 1 {
        return None;
    }
    implied_c1(value.get(&final_key(label))?, c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn lin(c0: &str, c1: &str) -> KPoly {
        KPoly::from_coeffs(vec![q(c0), q(c1)])
    }

    #[test]
    fn folded_forms() {
        let key = final_key(Label::Zero);
        assert_eq!(
            printed_u2().fold(Label::Zero),
            LinComb::single(key, KPoly::k_plus(1).scale(&q("1/120960")))
        );
        assert_eq!(
            printed_u3().fold(Label::Zero),
            LinComb::single(key, lin("37/272160", "36/272160"))
        );
        assert_eq!(
            printed_u4().fold(Label::Zero),
            LinComb::single(key, lin("209/362880", "205/362880"))
        );
        assert_eq!(
            printed_theorem3().fold(Label::One),
            LinComb::single(final_key(Label::One), KPoly::k_plus(1).scale(&q("1/5184")))
        );
    }

    #[test]
    fn printed_form() {
        assert_eq!(
            printed_u3().to_string(),
            "1/30618 · C1 + (919/7348320 + 223k/1837080) · C2"
        );
        assert_eq!(printed_theorem3().to_string(), "1/1728 · C1");
    }

    #[test]
    fn final_combination_recomputed() {
        let r = recomputed_final();
        assert_eq!(r.c1, q("4463/41803776"));
        assert_eq!(r.c2, printed_final().c2);
        assert_ne!(r.c1, printed_final().c1);
        // 4463 + 19729 = 24192 = 41803776 / 1728
        assert_eq!(r.fold(Label::Zero), printed_theorem3().fold(Label::Zero));
        assert_ne!(
            printed_final().fold(Label::Zero),
            printed_theorem3().fold(Label::Zero)
        );
    }

    #[test]
    fn implied_c1_recovers_the_typo_free_value() {
        let total = KPoly::k_plus(1).scale(&q("1/5184"));
        assert_eq!(
            implied_c1(&total, &printed_final().c2),
            Some(q("4463/41803776"))
        );
        assert_eq!(implied_c1(&KPoly::k(), &printed_final().c2), None);
    }
}
