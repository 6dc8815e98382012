//! Power sums, multiple power sums and multiple zeta values at even arguments.
//!
//! Zeta values are kept as exact multiples of powers of pi through
//! `zeta(2p) = (-1)^(p+1) (2 pi)^(2p) B_{2p} / (2 (2p)!)`, so the partition
//! reduction of `zeta(2p, ..., 2p)` stays exact and collapses to a single
//! monomial in pi.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, binomial, factorial, ExactRational, PiPolynomial};
use crate::error::{Error, Result};
use crate::multisum::{partition_sum, reduce_from_power_sums, reduce_power_sums_generic, SequenceSpec};
use crate::polynomials::sum_of_multiple_sums;

/// Largest `n` accepted by [`mzv_partial_identity`] (the brute side visits `2^n` tuples).
pub const MAX_PARTIAL_IDENTITY_N: i64 = 12;

const GOLDEN_ZETA_TABLE: &str = include_str!("../data/zeta_even.json");

/// `sum_{N=1}^{n} N^p` through Faulhaber's formula with `B_1 = -1/2`.
pub fn faulhaber(n: u64, p: u32) -> ExactRational {
    let n_r = ExactRational::from(n);
    let total: ExactRational = (0..=p as usize)
        .map(|j| {
            ExactRational::sign_power(j)
                * ExactRational::from(binomial(p as u64 + 1, j as i64))
                * bernoulli(j)
                * n_r.powu(p + 1 - j as u32)
        })
        .sum();
    total / ExactRational::from(p + 1)
}

/// `sum over 1 <= N_1 < ... < N_m <= n of (N_m ... N_1)^p`, from the
/// partition reduction with `S_i = faulhaber(n, i p)`.
pub fn multiple_power_sum(m: usize, n: u64, p: u32) -> Result<ExactRational> {
    let sums: Vec<ExactRational> = (1..=m as u32).map(|i| faulhaber(n, i * p)).collect();
    reduce_from_power_sums(&sums, m)
}

/// The order-`m` multiple sum of `N` over `[1, n]`, which is the unsigned
/// Stirling number `[n+1, n-m+1]`.
pub fn stirling_via_multiple_sum(m: usize, n: u64) -> Result<BigInt> {
    if m as u64 > n {
        return Err(Error::InvalidArgument(format!("need m <= n (m = {m}, n = {n})")));
    }
    let value = multiple_power_sum(m, n, 1)?;
    debug_assert!(value.is_integer());
    Ok(value.numer().clone())
}

/// `zeta(2p)` as a rational multiple of `pi^(2p)`.
pub fn zeta_even(p: u32) -> Result<PiPolynomial> {
    if p == 0 {
        return Err(Error::InvalidArgument("zeta_even needs p >= 1".into()));
    }
    let two_p = 2 * p;
    let coeff = ExactRational::sign_power(p as usize + 1)
        * ExactRational::from(BigInt::from(2).pow(two_p))
        * bernoulli(two_p as usize)
        / (ExactRational::from(2) * ExactRational::from(factorial(two_p)));
    Ok(PiPolynomial::monomial(coeff, two_p))
}

/// `zeta(2p, ..., 2p)` with `m` arguments, by the partition reduction over
/// `zeta(2p), zeta(4p), ..., zeta(2mp)`.
pub fn mzv_even_reduced(m: usize, p: u32) -> Result<PiPolynomial> {
    if p == 0 {
        return Err(Error::InvalidArgument("mzv_even_reduced needs p >= 1".into()));
    }
    let zetas = (1..=m as u32).map(|i| zeta_even(i * p)).collect::<Result<Vec<_>>>()?;
    reduce_power_sums_generic(&zetas, m)
}

fn check_closed_form_p(p: u32) -> Result<()> {
    if (1..=3).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "closed forms are known for p = 1, 2, 3 only (got p = {p})"
        )))
    }
}

/// Known closed forms of `zeta(2p, ..., 2p)` for `p = 1, 2, 3`:
/// `pi^(2m) / (2m+1)!`, `2 * 2^(2m) pi^(4m) / (4m+2)!` and
/// `6 (2 pi)^(6m) / (6m+3)!`.
pub fn mzv_closed_form(m: usize, p: u32) -> Result<PiPolynomial> {
    check_closed_form_p(p)?;
    let m32 = m as u32;
    let pow2 = |e: u32| ExactRational::from(BigInt::from(2).pow(e));
    let (scale, denom) = match p {
        1 => (ExactRational::one(), factorial(2 * m32 + 1)),
        2 => (ExactRational::from(2) * pow2(2 * m32), factorial(4 * m32 + 2)),
        _ => (ExactRational::from(6) * pow2(6 * m32), factorial(6 * m32 + 3)),
    };
    Ok(PiPolynomial::monomial(scale / ExactRational::from(denom), 2 * p * m32))
}

/// `sum over partitions y of m of prod_i (1/y_i!) (B_{2ip} / (2i (2ip)!))^(y_i)`.
pub fn bernoulli_partition_sum(m: usize, p: u32) -> Result<ExactRational> {
    check_closed_form_p(p)?;
    let terms: Vec<ExactRational> = (1..=m as u32)
        .map(|i| {
            let k = 2 * i * p;
            bernoulli(k as usize) / (ExactRational::from(2 * i) * ExactRational::from(factorial(k)))
        })
        .collect();
    partition_sum(&terms, m, |y| {
        let denom = y.nonzero().fold(BigInt::one(), |acc, (_, c)| acc * factorial(c));
        Some(ExactRational::from(BigInt::one()) / ExactRational::from(denom))
    })
}

/// Closed forms `1/(2^(2m)(2m+1)!)`, `2(-1)^m/(2^(2m)(4m+2)!)` and `6/(6m+3)!`.
pub fn bernoulli_partition_closed_form(m: usize, p: u32) -> Result<ExactRational> {
    check_closed_form_p(p)?;
    let m32 = m as u32;
    let pow4m = ExactRational::from(BigInt::from(2).pow(2 * m32));
    Ok(match p {
        1 => ExactRational::one() / (pow4m * ExactRational::from(factorial(2 * m32 + 1))),
        2 => {
            ExactRational::from(2) * ExactRational::sign_power(m)
                / (pow4m * ExactRational::from(factorial(4 * m32 + 2)))
        }
        _ => ExactRational::from(6) / ExactRational::from(factorial(6 * m32 + 3)),
    })
}

/// `(sum_{m=0}^{n} zeta_n(p, ..., p), prod_{N=1}^{n} (1 + N^-p))` where the
/// truncated zeta values are brute-force multiple sums over `[1, n]`.
pub fn mzv_partial_identity(n: i64, p: u32) -> Result<(ExactRational, ExactRational)> {
    if !(1..=MAX_PARTIAL_IDENTITY_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n must lie in 1..={MAX_PARTIAL_IDENTITY_N} (got {n})"
        )));
    }
    let spec = SequenceSpec::index_power(-(p as i32));
    let lhs = sum_of_multiple_sums(&spec, 1, n)?;
    let rhs = (1..=n)
        .map(|k| Ok(ExactRational::one() + spec.eval(k)?))
        .product::<Result<ExactRational>>()?;
    Ok((lhs, rhs))
}

/// `|prod_{N=1}^{n} (1 + N^-p) - 2|` for each `p`, evaluated in fixed point
/// with enough digits that truncation error stays far below the gap.
pub fn mzv_limit_gaps(p_list: &[u32], n: u64) -> Result<Vec<ExactRational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    p_list
        .iter()
        .map(|&p| {
            if p < 2 {
                return Err(Error::InvalidArgument(format!("p must be at least 2 (got {p})")));
            }
            // the gap is about 2^(1-p); keep 40 digits beyond it
            let digits = (p as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 40;
            let scale = BigInt::from(10).pow(digits);
            let mut product = &scale * 2u32;
            for k in 2..=n {
                let term = &scale / BigInt::from(k).pow(p);
                if term.is_zero() {
                    break;
                }
                product = &product * (&scale + term) / &scale;
            }
            let gap = product - &scale * 2u32;
            ExactRational::new(gap, scale)
        })
        .collect()
}

/// [`mzv_limit_gaps`] rendered with 12 significant digits.
pub fn mzv_limit_trend(p_list: &[u32], n: u64) -> Result<Vec<String>> {
    Ok(mzv_limit_gaps(p_list, n)?
        .iter()
        .map(|g| crate::arith::format_significant(g, 12))
        .collect())
}

/// One row of the golden zeta table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaEntry {
    pub argument: u32,
    pub coefficient: ExactRational,
    pub pi_power: u32,
}

impl ZetaEntry {
    pub fn value(&self) -> PiPolynomial {
        PiPolynomial::monomial(self.coefficient.clone(), self.pi_power)
    }
}

/// The bundled table of `zeta(2), ..., zeta(16)`.
pub fn golden_zeta_table() -> Vec<ZetaEntry> {
    serde_json::from_str(GOLDEN_ZETA_TABLE).expect("bundled zeta table is valid JSON")
}

pub fn load_zeta_table(path: &Path) -> Result<Vec<ZetaEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("malformed zeta table {}: {e}", path.display())))
}

/// Computed against expected value for one table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaCheck {
    pub argument: u32,
    pub expected: PiPolynomial,
    pub computed: PiPolynomial,
    pub equal: bool,
}

pub fn check_zeta_table(entries: &[ZetaEntry]) -> Result<Vec<ZetaCheck>> {
    entries
        .iter()
        .map(|e| {
            if e.argument == 0 || e.argument % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "zeta table argument must be even and positive (got {})",
                    e.argument
                )));
            }
            let computed = zeta_even(e.argument / 2)?;
            let expected = e.value();
            Ok(ZetaCheck {
                argument: e.argument,
                equal: computed == expected,
                expected,
                computed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pi_poly_numeric, ratio, stirling_first_unsigned};
    use crate::multisum::{brute_multiple_sum, SumProblem};

    fn pi_mono(num: i64, den: i64, power: u32) -> PiPolynomial {
        PiPolynomial::monomial(ratio(num, den), power)
    }

    #[test]
    fn faulhaber_matches_direct_sums() {
        assert_eq!(faulhaber(3, 2), ratio(14, 1));
        assert_eq!(faulhaber(4, 1), ratio(10, 1));
        assert_eq!(faulhaber(10, 3), ratio(3025, 1));
        assert_eq!(faulhaber(0, 5), ratio(0, 1));
        for n in 0..=12u64 {
            for p in 0..=8u32 {
                let direct: u64 = (1..=n).map(|k| k.pow(p)).sum();
                assert_eq!(faulhaber(n, p), ExactRational::from(direct), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn multiple_power_sum_examples() {
        assert_eq!(multiple_power_sum(2, 4, 1).unwrap(), ratio(35, 1));
        assert_eq!(multiple_power_sum(2, 3, 2).unwrap(), ratio(49, 1));
        assert_eq!(multiple_power_sum(3, 4, 1).unwrap(), ratio(50, 1));
        // closed forms in n evaluated pointwise
        for n in 1..=8i64 {
            let two = n * (n - 1) * (n + 1) * (3 * n + 2) / 24;
            let squares = n * (n - 1) * (n + 1) * (2 * n - 1) * (2 * n + 1) * (5 * n + 6) / 360;
            let three = (n - 2) * (n - 1) * n * n * (n + 1) * (n + 1) / 48;
            assert_eq!(multiple_power_sum(2, n as u64, 1).unwrap(), ratio(two, 1));
            assert_eq!(multiple_power_sum(2, n as u64, 2).unwrap(), ratio(squares, 1));
            assert_eq!(multiple_power_sum(3, n as u64, 1).unwrap(), ratio(three, 1));
        }
    }

    #[test]
    fn multiple_power_sum_matches_brute() {
        for m in 0..=3usize {
            for n in 0..=8i64 {
                for p in 0..=3u32 {
                    let brute =
                        brute_multiple_sum(&SumProblem::uniform(SequenceSpec::index_power(p as i32), m, 1, n).unwrap())
                            .unwrap();
                    assert_eq!(multiple_power_sum(m, n as u64, p).unwrap(), brute);
                }
            }
        }
    }

    #[test]
    fn stirling_numbers_from_multiple_sums() {
        assert_eq!(stirling_via_multiple_sum(2, 3).unwrap(), BigInt::from(11));
        assert_eq!(stirling_via_multiple_sum(0, 5).unwrap(), BigInt::from(1));
        assert_eq!(stirling_via_multiple_sum(3, 3).unwrap(), BigInt::from(6));
        assert!(stirling_via_multiple_sum(4, 3).is_err());
        for n in 0..=9u64 {
            for m in 0..=n as usize {
                assert_eq!(
                    stirling_via_multiple_sum(m, n).unwrap(),
                    stirling_first_unsigned(n as usize + 1, n as i64 - m as i64 + 1)
                );
            }
        }
    }

    #[test]
    fn zeta_even_examples() {
        assert_eq!(zeta_even(1).unwrap(), pi_mono(1, 6, 2));
        assert_eq!(zeta_even(2).unwrap(), pi_mono(1, 90, 4));
        assert_eq!(zeta_even(6).unwrap(), pi_mono(691, 638512875, 12));
        assert!(zeta_even(0).is_err());
    }

    #[test]
    fn golden_table_reproduced() {
        let table = golden_zeta_table();
        assert_eq!(table.len(), 8);
        let checks = check_zeta_table(&table).unwrap();
        assert!(checks.iter().all(|c| c.equal), "{checks:?}");
        assert_eq!(
            table.iter().map(|e| e.argument).collect::<Vec<_>>(),
            vec![2, 4, 6, 8, 10, 12, 14, 16]
        );
    }

    #[test]
    fn reduced_mzv_examples() {
        assert_eq!(mzv_even_reduced(1, 1).unwrap(), pi_mono(1, 6, 2));
        assert_eq!(mzv_even_reduced(2, 1).unwrap(), pi_mono(1, 120, 4));
        assert_eq!(mzv_even_reduced(0, 1).unwrap(), PiPolynomial::one());
    }

    #[test]
    fn order_two_bernoulli_form() {
        for p in 1..=4u32 {
            let b2p = bernoulli(2 * p as usize);
            let b4p = bernoulli(4 * p as usize);
            let bracket =
                ExactRational::from(binomial(4 * p as u64, 2 * p as i64)) * &b2p * &b2p / ExactRational::from(2) + b4p;
            let coeff = ExactRational::from(BigInt::from(2).pow(4 * p)) * bracket
                / (ExactRational::from(4) * ExactRational::from(factorial(4 * p)));
            assert_eq!(mzv_even_reduced(2, p).unwrap(), PiPolynomial::monomial(coeff, 4 * p));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            mzv_closed_form(4, 1).unwrap(),
            PiPolynomial::monomial(ExactRational::one() / ExactRational::from(factorial(9)), 8)
        );
        assert_eq!(mzv_closed_form(3, 2).unwrap(), pi_mono(1, 681080400, 12));
        assert_eq!(mzv_closed_form(3, 3).unwrap(), pi_mono(2, 64965492466875, 18));
        assert!(mzv_closed_form(2, 4).is_err());
    }

    #[test]
    fn reduced_equals_closed_forms() {
        for (p, max_m) in [(1u32, 6usize), (2, 4), (3, 3)] {
            for m in 1..=max_m {
                assert_eq!(
                    mzv_even_reduced(m, p).unwrap(),
                    mzv_closed_form(m, p).unwrap(),
                    "m={m} p={p}"
                );
                assert_eq!(
                    bernoulli_partition_sum(m, p).unwrap(),
                    bernoulli_partition_closed_form(m, p).unwrap(),
                    "m={m} p={p}"
                );
            }
        }
    }

    #[test]
    fn bernoulli_partition_examples() {
        assert_eq!(bernoulli_partition_sum(1, 1).unwrap(), ratio(1, 24));
        assert_eq!(bernoulli_partition_sum(2, 1).unwrap(), ratio(1, 1920));
        assert_eq!(bernoulli_partition_sum(1, 3).unwrap(), ratio(6, 362880));
        assert!(bernoulli_partition_sum(1, 0).is_err());
    }

    #[test]
    fn decimal_anchors() {
        let anchors = [
            ((4usize, 1u32), "0.02614784782"),
            ((3, 2), "0.001357063251"),
            ((3, 3), "0.00002735551966"),
        ];
        for ((m, p), anchor) in anchors {
            let ours = pi_poly_numeric(&mzv_closed_form(m, p).unwrap(), 9).unwrap();
            let theirs = crate::arith::format_significant(&ExactRational::from_decimal_str(anchor).unwrap(), 9);
            assert_eq!(ours, theirs, "m={m} p={p}");
        }
    }

    #[test]
    fn partial_identity_examples() {
        assert_eq!(mzv_partial_identity(3, 1).unwrap(), (ratio(4, 1), ratio(4, 1)));
        assert_eq!(mzv_partial_identity(1, 7).unwrap(), (ratio(2, 1), ratio(2, 1)));
        assert_eq!(mzv_partial_identity(2, 2).unwrap(), (ratio(5, 2), ratio(5, 2)));
        for n in 1..=8 {
            for p in 1..=4 {
                let (lhs, rhs) = mzv_partial_identity(n, p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(mzv_partial_identity(13, 2).is_err());
        assert!(mzv_partial_identity(0, 2).is_err());
    }

    #[test]
    fn limit_trend() {
        let gaps = mzv_limit_gaps(&[4, 6, 8, 10, 12], 10_000).unwrap();
        assert!(gaps.windows(2).all(|w| w[0] > w[1]), "{gaps:?}");
        assert!(gaps[4] < ratio(1, 1000));
        let far = mzv_limit_gaps(&[40], 10_000).unwrap();
        assert!(far[0] < ratio(1, 1_000_000_000));
        assert!(far[0] > ExactRational::zero());
        assert_eq!(mzv_limit_trend(&[2, 5, 9], 1).unwrap(), vec!["0", "0", "0"]);
        assert!(mzv_limit_gaps(&[1], 10).is_err());
        // exact product for a small range as an oracle
        let exact: ExactRational = (2..=50i64).map(|k| ExactRational::one() + ratio(1, k.pow(4))).product();
        let gap = mzv_limit_gaps(&[4], 50).unwrap().remove(0);
        let exact_gap = ExactRational::from(2) * exact - ExactRational::from(2);
        assert!((gap - exact_gap).abs() < ratio(1, 1_000_000_000_000));
    }

    #[test]
    fn trend_strings() {
        let s = mzv_limit_trend(&[12], 10_000).unwrap();
        assert!(s[0].starts_with("0.000"), "{s:?}");
    }
}
