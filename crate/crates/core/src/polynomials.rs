//! Roots, coefficients and power sums of polynomials with rational roots.
//!
//! For `f(x) = a_n (x - r_1) ... (x - r_n)` the coefficient ratio
//! `a_{n-m} / a_n` is `(-1)^m e_m(r)`, and `e_m(r)` is the order-`m`
//! multiple sum over the roots, so the partition reduction turns root
//! power sums into coefficients without expanding the product.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::multisum::{brute_multiple_sum, reduce_from_power_sums, SequenceSpec, SumProblem};

/// Dense polynomial, `coeffs[i]` multiplying `x^i`; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<ExactRational>", into = "Vec<ExactRational>")]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl From<Vec<ExactRational>> for Polynomial {
    fn from(coeffs: Vec<ExactRational>) -> Self {
        Self::new(coeffs)
    }
}

impl From<Polynomial> for Vec<ExactRational> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(ExactRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !magnitude.is_one();
            let coeff = if magnitude.is_integer() {
                magnitude.numer().to_string()
            } else {
                format!("({magnitude})")
            };
            match (show_coeff, i) {
                (_, 0) => write!(f, "{coeff}")?,
                (true, 1) => write!(f, "{coeff}*x")?,
                (false, 1) => f.write_str("x")?,
                (true, _) => write!(f, "{coeff}*x^{i}")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `leading * prod (x - r_i)`, expanded one linear factor at a time.
pub fn poly_from_roots(roots: &[ExactRational], leading: &ExactRational) -> Result<Polynomial> {
    if leading.is_zero() {
        return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
    }
    let mut coeffs = vec![leading.clone()];
    for r in roots {
        let mut next = vec![ExactRational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    Ok(Polynomial::new(coeffs))
}

/// `S_1..S_m` of the roots.
pub fn root_power_sums(roots: &[ExactRational], m: usize) -> Vec<ExactRational> {
    let mut sums = vec![ExactRational::zero(); m];
    for r in roots {
        let mut pow = r.clone();
        for s in sums.iter_mut() {
            *s += &pow;
            pow *= r;
        }
    }
    sums
}

/// `e_m` of the roots through the partition reduction of their power sums.
pub fn elementary_symmetric(roots: &[ExactRational], m: usize) -> Result<ExactRational> {
    if m > roots.len() {
        return Ok(ExactRational::zero());
    }
    reduce_from_power_sums(&root_power_sums(roots, m), m)
}

/// `a_{n-m} / a_n = (-1)^m e_m(roots)` for the polynomial with these roots.
pub fn coeff_ratio_from_roots(roots: &[ExactRational], m: usize) -> Result<ExactRational> {
    if m > roots.len() {
        return Err(Error::InvalidArgument(format!(
            "m = {m} exceeds the number of roots ({})",
            roots.len()
        )));
    }
    Ok(ExactRational::sign_power(m) * elementary_symmetric(roots, m)?)
}

/// `k`-th formal derivative.
pub fn poly_derivative(p: &Polynomial, k: usize) -> Polynomial {
    let coeffs = p
        .coeffs
        .iter()
        .enumerate()
        .skip(k)
        .map(|(j, c)| {
            let falling: u64 = (j - k + 1..=j).map(|t| t as u64).product();
            c * ExactRational::from(falling)
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Mean of the roots, `-a_{n-1} / (n a_n)`.
pub fn mean_root_ratio(p: &Polynomial) -> Result<ExactRational> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidArgument(
                "the mean root needs a polynomial of degree at least 1".into(),
            ))
        }
    };
    Ok(-p.coefficient(n - 1) / (ExactRational::from(n) * p.leading()))
}

/// Root means of `f` and of `f^(k)` for the monic `f` with the given roots.
pub fn derivative_mean_pair(roots: &[ExactRational], k: usize) -> Result<(ExactRational, ExactRational)> {
    let n = roots.len();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "derivative order k must satisfy 1 <= k <= n - 1 (k = {k}, n = {n})"
        )));
    }
    let f = poly_from_roots(roots, &ExactRational::one())?;
    Ok((mean_root_ratio(&f)?, mean_root_ratio(&poly_derivative(&f, k))?))
}

/// `(sum_m (-1)^m x^{n-m} e_m(roots), (-1)^n prod (r_i - x))`.
pub fn eval_factored_sum(roots: &[ExactRational], x: &ExactRational) -> Result<(ExactRational, ExactRational)> {
    let n = roots.len();
    let sums = root_power_sums(roots, n);
    let mut lhs = ExactRational::zero();
    for m in 0..=n {
        let e = reduce_from_power_sums(&sums, m)?;
        lhs += ExactRational::sign_power(m) * x.powu((n - m) as u32) * e;
    }
    let rhs = ExactRational::sign_power(n) * roots.iter().map(|r| r - x).product::<ExactRational>();
    Ok((lhs, rhs))
}

/// `sum_{m=0}^{n-q+1} P(m, q, n)` for one shared sequence, by brute force.
pub fn sum_of_multiple_sums(spec: &SequenceSpec, q: i64, n: i64) -> Result<ExactRational> {
    let top = (n - q + 1).max(0) as usize;
    let mut total = ExactRational::zero();
    for m in 0..=top {
        total += brute_multiple_sum(&SumProblem::uniform(spec.clone(), m, q, n)?)?;
    }
    Ok(total)
}

/// `(prod (a_i + b_i), prod b_i * sum_m e_m(a_i / b_i))`, the second
/// evaluated through the partition reduction.
pub fn generalized_binomial(a: &[ExactRational], b: &[ExactRational]) -> Result<(ExactRational, ExactRational)> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} values of a, {} values of b",
            a.len(),
            b.len()
        )));
    }
    let ratios = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.checked_div(y))
        .collect::<Result<Vec<_>>>()?;
    let direct = a.iter().zip(b).map(|(x, y)| x + y).product();
    let n = ratios.len();
    let sums = root_power_sums(&ratios, n);
    let mut total = ExactRational::zero();
    for m in 0..=n {
        total += reduce_from_power_sums(&sums, m)?;
    }
    let scale: ExactRational = b.iter().product();
    Ok((direct, scale * total))
}
