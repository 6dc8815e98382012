//! Strictly ordered multiple sums
//!
//! ```text
//! P(m, q, n) = sum over q <= N_1 < ... < N_m <= n of a(m)[N_m] ... a(1)[N_1]
//! ```
//!
//! evaluated by direct iteration over index tuples (the oracle) and by the
//! partition-indexed reduction to power sums `S_i = sum_{N=q}^{n} a_N^i`:
//!
//! ```text
//! P(m, q, n) = sum over partitions y of m of
//!              (-1)^(m - |y|) prod_i (S_i / i)^(y_i) / y_i!
//! ```
//!
//! The reduction needs one pass over `[q, n]` per power and `p(m)` products,
//! instead of `C(n - q + 1, m)` products.
//!
//! By convention `P(0, q, n) = 1` and `P(m, q, n) = 0` when `n < q + m - 1`.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, ExactRational, PiPolynomial};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, enumerate_set_partitions, PartitionMultiplicities};

/// Largest order accepted by [`symmetrized_multiple_sum`] (720 permutations).
pub const MAX_SYMMETRIZED_ORDER: usize = 6;

fn default_base() -> i64 {
    1
}

/// A sequence `a_N` that can be evaluated exactly at integer indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// `values[k]` is the term at index `base + k`.
    Explicit {
        #[serde(default = "default_base")]
        base: i64,
        values: Vec<ExactRational>,
    },
    /// `N^exponent`; the exponent may be negative.
    IndexPower { exponent: i32 },
}

impl SequenceSpec {
    pub fn explicit(base: i64, values: Vec<ExactRational>) -> Self {
        Self::Explicit { base, values }
    }

    pub fn index_power(exponent: i32) -> Self {
        Self::IndexPower { exponent }
    }

    pub fn eval(&self, index: i64) -> Result<ExactRational> {
        match self {
            Self::Explicit { base, values } => {
                if values.is_empty() {
                    return Err(Error::EmptySequence);
                }
                let last = base + values.len() as i64 - 1;
                if index < *base || index > last {
                    return Err(Error::IndexOutOfRange {
                        index,
                        first: *base,
                        last,
                    });
                }
                Ok(values[(index - base) as usize].clone())
            }
            Self::IndexPower { exponent } => {
                if index == 0 && *exponent < 0 {
                    return Err(Error::ZeroIndex);
                }
                ExactRational::from(index).pow(*exponent)
            }
        }
    }

    /// Terms `a_q, ..., a_n` (empty when `n < q`).
    pub fn values(&self, q: i64, n: i64) -> Result<Vec<ExactRational>> {
        (q..=n).map(|i| self.eval(i)).collect()
    }
}

pub fn eval_sequence(spec: &SequenceSpec, index: i64) -> Result<ExactRational> {
    spec.eval(index)
}

/// `P(m, q, n)` for `m = specs.len()` sequences; `specs[0]` feeds the
/// innermost index `N_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumProblem {
    specs: Vec<SequenceSpec>,
    q: i64,
    n: i64,
}

impl SumProblem {
    pub fn new(specs: Vec<SequenceSpec>, q: i64, n: i64) -> Result<Self> {
        if q < 0 {
            return Err(Error::NegativeLowerBound(q));
        }
        Ok(Self { specs, q, n })
    }

    /// The identical-sequence problem: `m` copies of `spec`.
    pub fn uniform(spec: SequenceSpec, m: usize, q: i64, n: i64) -> Result<Self> {
        Self::new(vec![spec; m], q, n)
    }

    pub fn m(&self) -> usize {
        self.specs.len()
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn specs(&self) -> &[SequenceSpec] {
        &self.specs
    }
}

fn check_lower_bound(q: i64) -> Result<()> {
    if q < 0 {
        Err(Error::NegativeLowerBound(q))
    } else {
        Ok(())
    }
}

/// Strictly increasing sum over pre-evaluated tables; `tables[i][k]` is
/// sequence `i` at index `q + k`, and all tables share the same length.
fn brute_on_tables(tables: &[&[ExactRational]]) -> ExactRational {
    let m = tables.len();
    if m == 0 {
        return ExactRational::one();
    }
    let len = tables[0].len();
    if len < m {
        return ExactRational::zero();
    }
    (0..len)
        .combinations(m)
        .map(|idx| idx.iter().zip(tables).map(|(&k, t)| &t[k]).product::<ExactRational>())
        .sum()
}

fn brute_over(specs: &[SequenceSpec], q: i64, n: i64) -> Result<ExactRational> {
    check_lower_bound(q)?;
    let m = specs.len();
    if m == 0 {
        return Ok(ExactRational::one());
    }
    if n < q + m as i64 - 1 {
        return Ok(ExactRational::zero());
    }
    let tables = specs.iter().map(|s| s.values(q, n)).collect::<Result<Vec<_>>>()?;
    let views: Vec<&[ExactRational]> = tables.iter().map(Vec::as_slice).collect();
    Ok(brute_on_tables(&views))
}

/// Direct evaluation over all tuples `q <= N_1 < ... < N_m <= n`.
pub fn brute_multiple_sum(p: &SumProblem) -> Result<ExactRational> {
    brute_over(&p.specs, p.q, p.n)
}

/// Direct evaluation of the weakly increasing (recurrent) sum over
/// `q <= N_1 <= ... <= N_m <= n` of `a_{N_m} ... a_{N_1}`.
pub fn brute_recurrent_sum(spec: &SequenceSpec, m: usize, q: i64, n: i64) -> Result<ExactRational> {
    check_lower_bound(q)?;
    if m == 0 {
        return Ok(ExactRational::one());
    }
    let table = spec.values(q, n)?;
    if table.is_empty() {
        return Ok(ExactRational::zero());
    }
    Ok((0..table.len())
        .combinations_with_replacement(m)
        .map(|idx| idx.iter().map(|&k| &table[k]).product::<ExactRational>())
        .sum())
}

/// Power sums `S_1..S_m` of `a_q..a_n`, each computed in a single pass.
pub fn power_sums(spec: &SequenceSpec, m: usize, q: i64, n: i64) -> Result<Vec<ExactRational>> {
    let mut int_sums = vec![BigInt::zero(); m];
    let mut rat_sums = vec![ExactRational::zero(); m];
    for index in q..=n {
        let a = spec.eval(index)?;
        if a.is_integer() {
            let base = a.numer().clone();
            let mut pow = base.clone();
            for s in int_sums.iter_mut() {
                *s += &pow;
                pow *= &base;
            }
        } else {
            let mut pow = a.clone();
            for s in rat_sums.iter_mut() {
                *s += &pow;
                pow *= &a;
            }
        }
    }
    Ok(int_sums
        .into_iter()
        .zip(rat_sums)
        .map(|(i, r)| r + ExactRational::from(i))
        .collect())
}

/// Scalars the partition sums can be evaluated over: exact rationals, or
/// polynomials in pi for zeta values.
pub trait PowerSumScalar: Clone {
    fn one() -> Self;
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, factor: &ExactRational) -> Self;
}

impl PowerSumScalar for ExactRational {
    fn one() -> Self {
        ExactRational::one()
    }
    fn zero() -> Self {
        ExactRational::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, factor: &ExactRational) -> Self {
        self * factor
    }
}

impl PowerSumScalar for PiPolynomial {
    fn one() -> Self {
        PiPolynomial::one()
    }
    fn zero() -> Self {
        PiPolynomial::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, factor: &ExactRational) -> Self {
        PiPolynomial::scale(self, factor)
    }
}

fn pow_scalar<T: PowerSumScalar>(x: &T, exp: u32) -> T {
    (0..exp).fold(T::one(), |acc, _| acc.mul(x))
}

/// `prod_i 1 / (i^{y_i} y_i!)`, the weight shared by every partition sum here.
pub fn partition_weight(y: &PartitionMultiplicities) -> ExactRational {
    let denom = y
        .nonzero()
        .fold(BigInt::one(), |acc, (i, c)| acc * BigInt::from(i).pow(c) * factorial(c));
    ExactRational::from(BigInt::one()) / ExactRational::from(denom)
}

/// Coefficient of `prod_i S_i^{y_i}` in the reduced form of `P(m, q, n)`:
/// `(-1)^(m - |y|) prod_i 1 / (i^{y_i} y_i!)`.
pub fn reduction_coefficient(y: &PartitionMultiplicities) -> ExactRational {
    ExactRational::sign_power(y.m() - y.length()) * partition_weight(y)
}

/// `sum_y weight(y) prod_i S_i^{y_i}` over the partitions `y` of `m` for which
/// `weight` returns a value.
pub fn partition_sum<T, F>(power_sums: &[T], m: usize, mut weight: F) -> Result<T>
where
    T: PowerSumScalar,
    F: FnMut(&PartitionMultiplicities) -> Option<ExactRational>,
{
    if power_sums.len() < m {
        return Err(Error::PowerSumCount {
            expected: m,
            got: power_sums.len(),
        });
    }
    let mut total = T::zero();
    for y in enumerate_partitions(m) {
        let Some(w) = weight(&y) else { continue };
        if w.is_zero() {
            continue;
        }
        let term = y
            .nonzero()
            .fold(T::one(), |acc, (i, c)| acc.mul(&pow_scalar(&power_sums[i - 1], c)));
        total = total.add(&term.scale(&w));
    }
    Ok(total)
}

/// The reduction formula over any [`PowerSumScalar`].
pub fn reduce_power_sums_generic<T: PowerSumScalar>(power_sums: &[T], m: usize) -> Result<T> {
    partition_sum(power_sums, m, |y| Some(reduction_coefficient(y)))
}

/// Evaluates the reduction formula on caller-supplied power sums
/// (`power_sums[i-1] = S_i`; at least `m` entries). For the power sums of
/// a set of numbers this is their `m`-th elementary symmetric function.
pub fn reduce_from_power_sums(power_sums: &[ExactRational], m: usize) -> Result<ExactRational> {
    reduce_power_sums_generic(power_sums, m)
}

/// `P(m, q, n)` for `m` copies of one sequence, via the reduction formula.
pub fn reduce_multiple_sum(spec: &SequenceSpec, m: usize, q: i64, n: i64) -> Result<ExactRational> {
    check_lower_bound(q)?;
    if m == 0 {
        return Ok(ExactRational::one());
    }
    if n < q + m as i64 - 1 {
        return Ok(ExactRational::zero());
    }
    let sums = power_sums(spec, m, q, n)?;
    reduce_from_power_sums(&sums, m)
}

/// Brute-force values `(P(m, q, n+1), P(m, q, n), P(m-1, q, n))`, which satisfy
/// `P(m, q, n+1) = P(m, q, n) + a(m)[n+1] P(m-1, q, n)`.
pub fn variation_lemma(p: &SumProblem) -> Result<(ExactRational, ExactRational, ExactRational)> {
    let m = p.m();
    if m == 0 {
        return Err(Error::InvalidArgument(
            "the one-step variation needs an order m >= 1".into(),
        ));
    }
    Ok((
        brute_over(&p.specs, p.q, p.n + 1)?,
        brute_over(&p.specs, p.q, p.n)?,
        brute_over(&p.specs[..m - 1], p.q, p.n)?,
    ))
}

fn check_variation(p: &SumProblem, cutoff: usize) -> Result<()> {
    let m = p.m();
    if cutoff > m {
        return Err(Error::CutoffOutOfRange { cutoff, m });
    }
    if p.n < p.q + m as i64 - 1 {
        return Err(Error::InvalidArgument(format!(
            "variation formulas need n >= q + m - 1 (n = {}, q = {}, m = {m})",
            p.n, p.q
        )));
    }
    Ok(())
}

/// Term `a(i)[index]` with the 1-based sequence label used in the formulas.
fn term(p: &SumProblem, label: usize, index: i64) -> Result<ExactRational> {
    p.specs[label - 1].eval(index)
}

/// `P(m, q, n+1)` expanded in lower-order sums:
///
/// ```text
/// sum_{k=c+1}^{m} [prod_{j=0}^{m-k-1} a(m-j)[n+1-j]] P(k, q, n-m+k)
///   + [prod_{j=0}^{m-c-1} a(m-j)[n+1-j]] P(c, q, n-m+c+1)
/// ```
///
/// where `c` is the cutoff and each `P(k, ...)` uses the first `k` sequences.
/// A cutoff of 0 expands all the way down to order 0.
pub fn variation_expand(p: &SumProblem, cutoff: usize) -> Result<ExactRational> {
    check_variation(p, cutoff)?;
    let (m, q, n) = (p.m() as i64, p.q, p.n);
    let prefix_product =
        |k: i64| -> Result<ExactRational> { (0..m - k).map(|j| term(p, (m - j) as usize, n + 1 - j)).product() };
    let mut total = ExactRational::zero();
    for k in cutoff as i64 + 1..=m {
        total += prefix_product(k)? * brute_over(&p.specs[..k as usize], q, n - m + k)?;
    }
    let c = cutoff as i64;
    total += prefix_product(c)? * brute_over(&p.specs[..cutoff], q, n - m + c + 1)?;
    Ok(total)
}

/// The same quantity as [`variation_expand`] in nested form:
/// start from `P(c, q, n-m+c+1)` and for `k = c+1..=m` apply
/// `acc <- a(k)[n-m+k+1] * acc + P(k, q, n-m+k)`.
pub fn variation_recursive(p: &SumProblem, cutoff: usize) -> Result<ExactRational> {
    check_variation(p, cutoff)?;
    let (m, q, n) = (p.m() as i64, p.q, p.n);
    let c = cutoff as i64;
    let mut acc = brute_over(&p.specs[..cutoff], q, n - m + c + 1)?;
    for k in c + 1..=m {
        let a = term(p, k as usize, n - m + k + 1)?;
        acc = a * acc + brute_over(&p.specs[..k as usize], q, n - m + k)?;
    }
    Ok(acc)
}

/// Sum of the brute-force multiple sum over all `m!` orderings of `specs`
/// (lexicographic permutation order), `m <= 6`.
pub fn symmetrized_multiple_sum(specs: &[SequenceSpec], q: i64, n: i64) -> Result<ExactRational> {
    check_lower_bound(q)?;
    let m = specs.len();
    if m > MAX_SYMMETRIZED_ORDER {
        return Err(Error::TooLarge {
            what: "symmetrized order m",
            value: m,
            max: MAX_SYMMETRIZED_ORDER,
        });
    }
    if m == 0 {
        return Ok(ExactRational::one());
    }
    if n < q + m as i64 - 1 {
        return Ok(ExactRational::zero());
    }
    let tables = specs.iter().map(|s| s.values(q, n)).collect::<Result<Vec<_>>>()?;
    Ok((0..m)
        .permutations(m)
        .map(|sigma| {
            let views: Vec<&[ExactRational]> = sigma.iter().map(|&i| tables[i].as_slice()).collect();
            brute_on_tables(&views)
        })
        .sum())
}

/// The symmetrized sum through set partitions `P` of `{1..m}`:
///
/// ```text
/// sum_P (-1)^(m - |P|) prod_{B in P} (|B| - 1)! sum_{N=q}^{n} prod_{h in B} a(h)[N]
/// ```
///
/// Limited to `m <= 8` by the set-partition enumeration.
pub fn reduce_symmetrized(specs: &[SequenceSpec], q: i64, n: i64) -> Result<ExactRational> {
    check_lower_bound(q)?;
    let m = specs.len();
    if m == 0 {
        return Ok(ExactRational::one());
    }
    let tables = specs.iter().map(|s| s.values(q, n)).collect::<Result<Vec<_>>>()?;
    let len = tables[0].len();

    let mut block_sums: HashMap<u32, ExactRational> = HashMap::new();
    let mut block_sum = |block: &[usize]| -> ExactRational {
        let mask = crate::partitions::SetPartition::block_mask(block);
        block_sums
            .entry(mask)
            .or_insert_with(|| {
                (0..len)
                    .map(|k| block.iter().map(|&h| &tables[h - 1][k]).product::<ExactRational>())
                    .sum()
            })
            .clone()
    };

    let mut total = ExactRational::zero();
    for sp in enumerate_set_partitions(m)? {
        let mut term = ExactRational::sign_power(m - sp.blocks().len());
        for block in sp.blocks() {
            term *= ExactRational::from(factorial(block.len() as u32 - 1));
            term *= block_sum(block);
        }
        total += term;
    }
    Ok(total)
}
