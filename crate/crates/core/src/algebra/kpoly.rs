use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// Dense univariate polynomial in the formal tail-count symbol `k`.
///
/// `coeffs[i]` is the coefficient of `k^i`. The highest stored coefficient
/// is never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KPoly {
    coeffs: Vec<Rational>,
}

impl KPoly {
    pub fn zero() -> Self {
        KPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `k`.
    pub fn k() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `k + offset`.
    pub fn k_plus(offset: i64) -> Self {
        Self::from_coeffs(vec![Rational::from_integer(offset), Rational::one()])
    }

    /// Coefficients in ascending degree; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.last().is_none_or(|c| !c.is_zero())
            && self.coeffs.iter().all(Rational::is_canonical)
    }

    pub fn scale(&self, c: &Rational) -> KPoly {
        if c.is_zero() {
            return KPoly::zero();
        }
        KPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation at `k = x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Splits a nonzero polynomial as `content * primitive`, where the
    /// primitive part has coprime integer coefficients and a positive
    /// leading coefficient.
    fn content_split(&self) -> Option<(Rational, Vec<BigInt>)> {
        let lead = self.coeffs.last()?;
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lead.is_negative() {
            gcd = -gcd;
        }
        let primitive = ints.iter().map(|c| c / &gcd).collect();
        let content = Rational::from_bigints(gcd, lcm).expect("lcm is positive");
        Some((content, primitive))
    }
}

/// Renders the primitive part in descending degree, e.g. `36k+37`.
fn render_primitive(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if !out.is_empty() || c.is_negative() {
            out.push_str(sign);
        }
        let mag = c.abs();
        let var = match deg {
            0 => String::new(),
            1 => "k".to_string(),
            d => format!("k^{d}"),
        };
        if deg == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&var);
    }
    out
}

impl fmt::Display for KPoly {
    /// Content-factored form with exact fractions: `(k+1)/120960`,
    /// `19729(k+1)/125411328`, `k/6`, `1/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((content, primitive)) = self.content_split() else {
            return write!(f, "0");
        };
        if primitive.len() == 1 {
            return write!(f, "{content}");
        }
        let terms = primitive.iter().filter(|c| !c.is_zero()).count();
        let body = render_primitive(&primitive);
        let body = if terms > 1 && !content.is_one() {
            format!("({body})")
        } else {
            body
        };
        let num = content.numer();
        let lead = if num.is_one() {
            String::new()
        } else if (-num).is_one() {
            "-".to_string()
        } else {
            num.to_string()
        };
        write!(f, "{lead}{body}")?;
        if !content.denom().is_one() {
            write!(f, "/{}", content.denom())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    deg: usize,
    coeff: Rational,
}

impl Serialize for KPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(deg, c)| Term {
                    deg,
                    coeff: c.clone(),
                }),
        )
    }
}

impl<'de> Deserialize<'de> for KPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        if terms.windows(2).any(|w| w[0].deg >= w[1].deg) {
            return Err(serde::de::Error::custom(
                "degrees must be strictly increasing",
            ));
        }
        let len = terms.last().map_or(0, |t| t.deg + 1);
        let mut coeffs = vec![Rational::zero(); len];
        for t in terms {
            coeffs[t.deg] = t.coeff;
        }
        Ok(KPoly::from_coeffs(coeffs))
    }
}

impl From<Rational> for KPoly {
    fn from(c: Rational) -> Self {
        KPoly::constant(c)
    }
}

impl Add<&KPoly> for &KPoly {
    type Output = KPoly;
    fn add(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl AddAssign<&KPoly> for KPoly {
    fn add_assign(&mut self, rhs: &KPoly) {
        *self = &*self + rhs;
    }
}

impl Sub<&KPoly> for &KPoly {
    type Output = KPoly;
    fn sub(self, rhs: &KPoly) -> KPoly {
        self + &(-rhs)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        KPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&KPoly> for &KPoly {
    type Output = KPoly;
    fn mul(self, rhs: &KPoly) -> KPoly {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        KPoly::from_coeffs(out)
    }
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
    fn scalar_multiple() {
        let p = &KPoly::k_plus(1) * &KPoly::constant(q("3"));
        assert_eq!(p, lin("3", "3"));
    }

    #[test]
    fn final_c2_coefficient() {
        let u4 = lin("11791/23224320", "769/1548288");
        let u3 = lin("919/2449440", "669/1837080");
        let u2 = KPoly::k_plus(1).scale(&q("3/120960"));
        let sum = &(&u4 - &u3) + &u2;
        assert_eq!(sum, KPoly::k_plus(1).scale(&q("19729/125411328")));
        assert_eq!(sum.to_string(), "19729(k+1)/125411328");
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = lin("1/2", "-7");
        assert_eq!(&KPoly::zero() + &p, p);
        assert_eq!((&p - &p).degree(), None);
        assert!((&p - &p).coeffs().is_empty());
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            KPoly::k_plus(1).scale(&q("1/5184")).eval(&q("0")),
            q("1/5184")
        );
        assert_eq!(
            KPoly::k_plus(1).scale(&q("1/120960")).eval(&q("2")),
            q("1/40320")
        );
        assert_eq!(lin("37/272160", "36/272160").eval(&q("1")), q("73/272160"));
    }

    #[test]
    fn rendering() {
        assert_eq!(
            KPoly::k_plus(1).scale(&q("1/120960")).to_string(),
            "(k+1)/120960"
        );
        assert_eq!(lin("37/272160", "36/272160").to_string(), "(36k+37)/272160");
        assert_eq!(KPoly::k().scale(&q("1/6")).to_string(), "k/6");
        assert_eq!(KPoly::k().scale(&q("-2/3")).to_string(), "-2k/3");
        assert_eq!(KPoly::constant(q("-1/4")).to_string(), "-1/4");
        assert_eq!(KPoly::k_plus(-2).to_string(), "k-2");
        assert_eq!(KPoly::zero().to_string(), "0");
        let sq = &KPoly::k_plus(5) * &KPoly::k_plus(2);
        assert_eq!(sq.scale(&q("1/9")).to_string(), "(k^2+7k+10)/9");
        assert_eq!((-&KPoly::k_plus(1)).to_string(), "-(k+1)");
    }

    #[test]
    fn json_shape() {
        let p = KPoly::from_coeffs(vec![q("1/3"), q("0"), q("-2")]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"deg":0,"coeff":"1/3"},{"deg":2,"coeff":"-2"}]"#);
        assert_eq!(serde_json::from_str::<KPoly>(&json).unwrap(), p);
        assert_eq!(serde_json::to_string(&KPoly::zero()).unwrap(), "[]");
        let bad = r#"[{"deg":1,"coeff":"1"},{"deg":1,"coeff":"2"}]"#;
        assert!(serde_json::from_str::<KPoly>(bad).is_err());
    }
}
