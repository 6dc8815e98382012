//! Exact arithmetic in `Q[pi]` and guaranteed decimal evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactRational;
use crate::error::{Error, Result};

/// A finite sum `sum_k c_k pi^k` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<u32, ExactRational>", into = "BTreeMap<u32, ExactRational>")]
pub struct PiPolynomial {
    terms: BTreeMap<u32, ExactRational>,
}

impl PiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExactRational::one(), 0)
    }

    /// `coeff * pi^power`.
    pub fn monomial(coeff: ExactRational, power: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, ExactRational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, power: u32, coeff: &ExactRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(ExactRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, ExactRational> {
        &self.terms
    }

    pub fn coefficient(&self, power: u32) -> ExactRational {
        self.terms.get(&power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((power, coeff))` when exactly one term is present.
    pub fn as_monomial(&self) -> Option<(u32, &ExactRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c * factor)))
    }

    pub fn powu(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl TryFrom<BTreeMap<u32, ExactRational>> for PiPolynomial {
    type Error = Error;

    fn try_from(terms: BTreeMap<u32, ExactRational>) -> Result<Self> {
        if terms.values().any(ExactRational::is_zero) {
            return Err(Error::InvalidArgument(
                "pi-polynomial terms must have nonzero coefficients".into(),
            ));
        }
        Ok(Self { terms })
    }
}

impl From<PiPolynomial> for BTreeMap<u32, ExactRational> {
    fn from(p: PiPolynomial) -> Self {
        p.terms
    }
}

impl Add for &PiPolynomial {
    type Output = PiPolynomial;
    fn add(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Add for PiPolynomial {
    type Output = PiPolynomial;
    fn add(self, rhs: PiPolynomial) -> PiPolynomial {
        &self + &rhs
    }
}

impl Neg for &PiPolynomial {
    type Output = PiPolynomial;
    fn neg(self) -> PiPolynomial {
        PiPolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &PiPolynomial {
    type Output = PiPolynomial;
    fn sub(self, rhs: &PiPolynomial) -> PiPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &PiPolynomial {
    type Output = PiPolynomial;
    fn mul(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = PiPolynomial::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for PiPolynomial {
    type Output = PiPolynomial;
    fn mul(self, rhs: PiPolynomial) -> PiPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*pi")?,
                _ => write!(f, "{c}*pi^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Truncated `atan(1/x) * 10^scale` with its error bound in units of `10^-scale`.
fn arctan_inverse(x: u32, unity: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * x;
    let mut power = unity / x;
    let mut sum = power.clone();
    let mut k: u64 = 0;
    while !power.is_zero() {
        power = &power / &x2;
        k += 1;
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    // Each term is truncated twice; the neglected tail is below one unit.
    (sum, 3 * (k + 1) + 1)
}

/// Bracket `[lo, hi]` containing pi, with width about `10^-scale`.
fn pi_bracket(scale: u32) -> (ExactRational, ExactRational) {
    let unity = BigInt::from(10).pow(scale);
    let (a5, e5) = arctan_inverse(5, &unity);
    let (a239, e239) = arctan_inverse(239, &unity);
    let approx = a5 * 16 - a239 * 4;
    let err = BigInt::from(16 * e5 + 4 * e239 + 1);
    let lo = ExactRational::from_integer(&approx - &err) / ExactRational::from_integer(unity.clone());
    let hi = ExactRational::from_integer(&approx + &err) / ExactRational::from_integer(unity);
    (lo, hi)
}

fn evaluate_bracket(p: &PiPolynomial, lo: &ExactRational, hi: &ExactRational) -> (ExactRational, ExactRational) {
    let mut low = ExactRational::zero();
    let mut high = ExactRational::zero();
    for (k, c) in p.terms() {
        let a = c * lo.powu(*k);
        let b = c * hi.powu(*k);
        if c.is_negative() {
            low += b;
            high += a;
        } else {
            low += a;
            high += b;
        }
    }
    (low, high)
}

/// Decimal value of `p` (with pi substituted) rounded to `digits` significant digits.
///
/// Evaluation brackets pi and refines until both ends of the bracket round to
/// the same string, so every printed digit is correct.
pub fn pi_poly_numeric(p: &PiPolynomial, digits: usize) -> Result<String> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    if p.is_zero() {
        return Ok("0".to_string());
    }
    let mut scale = digits as u32 + 20 + p.degree().unwrap_or(0);
    loop {
        let (lo, hi) = pi_bracket(scale);
        let (low, high) = evaluate_bracket(p, &lo, &hi);
        let a = format_significant(&low, digits);
        if a == format_significant(&high, digits) || scale > 100_000 {
            return Ok(a);
        }
        scale *= 2;
    }
}

fn decimal_digits(n: &BigInt) -> i64 {
    n.magnitude().to_str_radix(10).len() as i64
}

/// Positional decimal rendering of `x` rounded half away from zero to
/// `digits` significant digits. Zero renders as `"0"`.
pub fn format_significant(x: &ExactRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();

    // e = floor(log10 |x|)
    let ten = BigInt::from(10);
    let mut e = decimal_digits(&num) - decimal_digits(&den);
    let pow10 = |k: i64| ten.pow(k.unsigned_abs() as u32);
    let at_least = |e: i64| {
        if e >= 0 {
            num >= &den * pow10(e)
        } else {
            &num * pow10(e) >= den
        }
    };
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }

    // scaled = round(|x| * 10^(digits - 1 - e))
    let shift = digits as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (&num * pow10(shift), den.clone())
    } else {
        (num.clone(), &den * pow10(shift))
    };
    let mut scaled = (&n * 2 + &d) / (&d * 2);
    if decimal_digits(&scaled) > digits as i64 {
        scaled /= 10;
        e += 1;
    }
    let mantissa = scaled.to_str_radix(10);

    let body = if e >= digits as i64 - 1 {
        format!("{mantissa}{}", "0".repeat((e - (digits as i64 - 1)) as usize))
    } else if e < 0 {
        format!("0.{}{mantissa}", "0".repeat((-e - 1) as usize))
    } else {
        let split = (e + 1) as usize;
        format!("{}.{}", &mantissa[..split], &mantissa[split..])
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, ratio};

    #[test]
    fn arithmetic_drops_zero_terms() {
        let a = PiPolynomial::from_terms([(2, ratio(1, 6)), (0, ratio(1, 1))]);
        let b = PiPolynomial::from_terms([(2, ratio(-1, 6))]);
        let sum = &a + &b;
        assert_eq!(sum, PiPolynomial::one());
        assert_eq!((&a - &a), PiPolynomial::zero());
        let sq = &b * &b;
        assert_eq!(sq.as_monomial(), Some((4, &ratio(1, 36))));
    }

    #[test]
    fn serde_uses_exponent_keys() {
        let p = PiPolynomial::from_terms([(2, ratio(1, 6)), (12, ratio(691, 638512875))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"2":"1/6","12":"691/638512875"}"#);
        let back: PiPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PiPolynomial>(r#"{"2":"0/1"}"#).is_err());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(&ratio(1, 3), 4), "0.3333");
        assert_eq!(format_significant(&ratio(2, 3), 3), "0.667");
        assert_eq!(format_significant(&ratio(-2, 3), 3), "-0.667");
        assert_eq!(format_significant(&ratio(99999, 1000), 3), "100");
        assert_eq!(format_significant(&ratio(123456, 1), 3), "123000");
        assert_eq!(format_significant(&ratio(12345, 100), 7), "123.4500");
        assert_eq!(format_significant(&ratio(1, 1000), 2), "0.0010");
        assert_eq!(format_significant(&ratio(1, 1), 1), "1");
    }

    #[test]
    fn pi_digits_are_correct() {
        // First 60 significant digits of pi.
        let known = "3.14159265358979323846264338327950288419716939937510582097494";
        let pi = PiPolynomial::monomial(ratio(1, 1), 1);
        assert_eq!(pi_poly_numeric(&pi, 60).unwrap(), known);
        assert_eq!(pi_poly_numeric(&pi, 5).unwrap(), "3.1416");
    }

    #[test]
    fn numeric_examples() {
        let zeta2 = PiPolynomial::monomial(ratio(1, 6), 2);
        assert_eq!(pi_poly_numeric(&zeta2, 6).unwrap(), "1.64493");
        assert_eq!(pi_poly_numeric(&PiPolynomial::zero(), 7).unwrap(), "0");
        let c = ExactRational::from(1) / ExactRational::from(factorial(9));
        let p = PiPolynomial::monomial(c, 8);
        assert!(pi_poly_numeric(&p, 10).unwrap().starts_with("0.02614784782"));
        assert!(pi_poly_numeric(&p, 0).is_err());
    }

    #[test]
    fn constant_polynomial_is_exact() {
        let p = PiPolynomial::monomial(ratio(1, 8), 0);
        assert_eq!(pi_poly_numeric(&p, 3).unwrap(), "0.125");
    }
}
