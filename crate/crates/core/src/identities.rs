//! Registry of standalone partition identities with a uniform check.
//!
//! Every check evaluates its left side by enumerating partitions (or by the
//! brute-force sum evaluators) and its right side from the closed form, and
//! reports both as exact rationals. Identity ids keep their upper-case wire
//! names (`LEMMA_3_1`, `EVEN_ODD_N`, ...) on the command line and in JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial, stirling_first_unsigned, ExactRational};
use crate::error::{Error, Result};
use crate::multisum::{
    brute_multiple_sum, brute_recurrent_sum, partition_weight, power_sums, reduce_from_power_sums, reduce_multiple_sum,
    SequenceSpec, SumProblem,
};
use crate::partitions::{enumerate_partitions, Parity, PartitionMultiplicities};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    /// `sum_y prod (-1)^{y_i} / (i^{y_i} y_i!)` is `(-1)^m` for `m <= 1`, else 0.
    #[serde(rename = "LEMMA_3_1")]
    AlternatingWeights,
    /// The same sum with `C(y_i, phi_i)` factors, for `phi` a partition of `r <= m`.
    #[serde(rename = "LEMMA_3_2")]
    ShiftedAlternatingWeights,
    /// `sum_k (-1)^k [m, k]` is `(-1)^m m!` for `m <= 1`, else 0.
    #[serde(rename = "STIRLING_ALTERNATING")]
    StirlingAlternating,
    /// The reduction with every power sum equal to `n` gives `C(n, m)`.
    #[serde(rename = "BINOMIAL_PARTITION")]
    BinomialPartition,
    /// The reduction of order `n - q + 1` gives `a_q ... a_n`.
    #[serde(rename = "PRODUCT_IDENTITY")]
    ProductIdentity,
    /// Recurrent sum plus or minus `(-1)^m` times the multiple sum equals twice
    /// the even or odd part of the unsigned partition sum.
    #[serde(rename = "RECURRENT_BRIDGE")]
    RecurrentBridge,
    /// Even and odd parts of `sum_y prod 1 / (i^{y_i} y_i!)`.
    #[serde(rename = "EVEN_ODD_WEIGHTS")]
    EvenOddWeights,
    /// Even and odd parts of the sum with `C(y_i, phi_i)` factors.
    #[serde(rename = "EVEN_ODD_BINOM")]
    EvenOddBinom,
    /// Even and odd parts of `sum_y prod (n/i)^{y_i} / y_i!`.
    #[serde(rename = "EVEN_ODD_N")]
    EvenOddN,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        Self::AlternatingWeights,
        Self::ShiftedAlternatingWeights,
        Self::StirlingAlternating,
        Self::BinomialPartition,
        Self::ProductIdentity,
        Self::RecurrentBridge,
        Self::EvenOddWeights,
        Self::EvenOddBinom,
        Self::EvenOddN,
    ];

    pub fn wire_name(self) -> &'static str {
        match self {
            Self::AlternatingWeights => "LEMMA_3_1",
            Self::ShiftedAlternatingWeights => "LEMMA_3_2",
            Self::StirlingAlternating => "STIRLING_ALTERNATING",
            Self::BinomialPartition => "BINOMIAL_PARTITION",
            Self::ProductIdentity => "PRODUCT_IDENTITY",
            Self::RecurrentBridge => "RECURRENT_BRIDGE",
            Self::EvenOddWeights => "EVEN_ODD_WEIGHTS",
            Self::EvenOddBinom => "EVEN_ODD_BINOM",
            Self::EvenOddN => "EVEN_ODD_N",
        }
    }

    /// Parameter names the identity reads.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Self::AlternatingWeights | Self::StirlingAlternating | Self::EvenOddWeights => &["m"],
            Self::ShiftedAlternatingWeights | Self::EvenOddBinom => &["m", "phi"],
            Self::BinomialPartition | Self::EvenOddN => &["n", "m"],
            Self::ProductIdentity => &["spec", "q", "n"],
            Self::RecurrentBridge => &["spec", "m", "q", "n"],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.wire_name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|id| id.wire_name()).collect();
                Error::InvalidArgument(format!("unknown identity {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

/// Union of all identity parameters; each identity reads the subset listed
/// by [`IdentityId::parameters`]. `phi` is a multiplicity vector.
type SortKey = (Option<i64>, Option<i64>, Option<i64>, Option<i64>, Option<Vec<u32>>);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SequenceSpec>,
}

impl IdentityParams {
    pub fn with_m(m: i64) -> Self {
        Self {
            m: Some(m),
            ..Self::default()
        }
    }

    /// Sets a numeric parameter by name, as used by sweeps.
    pub fn set(&mut self, name: &str, value: i64) -> Result<()> {
        match name {
            "m" => self.m = Some(value),
            "n" => self.n = Some(value),
            "r" => self.r = Some(value),
            "q" => self.q = Some(value),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "cannot sweep parameter {other:?}; sweepable: m, n, r, q"
                )))
            }
        }
        Ok(())
    }

    fn key(&self) -> SortKey {
        (self.m, self.n, self.q, self.r, self.phi.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: IdentityParams,
    pub lhs: Vec<ExactRational>,
    pub rhs: Vec<ExactRational>,
    pub equal: bool,
    /// Named intermediate values, when the identity has any worth showing.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub terms: BTreeMap<String, ExactRational>,
    pub note: String,
}

impl VerificationReport {
    fn new(
        identity: IdentityId,
        params: IdentityParams,
        lhs: Vec<ExactRational>,
        rhs: Vec<ExactRational>,
        note: impl Into<String>,
    ) -> Self {
        Self {
            identity,
            params,
            equal: lhs == rhs,
            lhs,
            rhs,
            terms: BTreeMap::new(),
            note: note.into(),
        }
    }

    fn with_terms(mut self, terms: impl IntoIterator<Item = (&'static str, ExactRational)>) -> Self {
        self.terms = terms.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self
    }
}

fn require<T: Clone>(value: &Option<T>, id: IdentityId, name: &str) -> Result<T> {
    value
        .clone()
        .ok_or_else(|| Error::InvalidArgument(format!("{id} needs parameter {name}")))
}

fn non_negative(value: i64, name: &str) -> Result<usize> {
    usize::try_from(value).map_err(|_| Error::InvalidArgument(format!("{name} must be non-negative (got {value})")))
}

fn half() -> ExactRational {
    ExactRational::one() / ExactRational::from(2)
}

/// `sum_y f(y)` over the partitions of `m` for which `f` gives a value.
fn sum_partitions(m: usize, mut f: impl FnMut(&PartitionMultiplicities) -> Option<ExactRational>) -> ExactRational {
    enumerate_partitions(m).iter().filter_map(&mut f).sum()
}

fn parity_sign(y: &PartitionMultiplicities) -> ExactRational {
    ExactRational::sign_power(y.length())
}

/// `prod_i C(y_i, phi_i)`; zero as soon as some `y_i < phi_i`.
fn binomial_product(y: &PartitionMultiplicities, phi: &PartitionMultiplicities) -> BigInt {
    phi.nonzero()
        .map(|(i, f)| binomial(y.count(i) as u64, f as i64))
        .product()
}

fn dominates(y: &PartitionMultiplicities, phi: &PartitionMultiplicities) -> bool {
    phi.nonzero().all(|(i, f)| y.count(i) >= f)
}

/// Reads `phi` (and checks `r` if given): a partition of some `r <= m`.
fn read_phi(params: &IdentityParams, id: IdentityId, m: usize) -> Result<PartitionMultiplicities> {
    let raw = require(&params.phi, id, "phi")?;
    let phi = PartitionMultiplicities::from_multiplicities(raw);
    let r = phi.m();
    if let Some(given) = params.r {
        if given != r as i64 {
            return Err(Error::InvalidArgument(format!(
                "phi is a partition of {r}, but r = {given} was given"
            )));
        }
    }
    if r > m {
        return Err(Error::InvalidArgument(format!(
            "phi must be a partition of r <= m (r = {r}, m = {m})"
        )));
    }
    Ok(phi)
}

/// Generalized `C(x, k) = x (x-1) ... (x-k+1) / k!` for any integer `x`.
fn binomial_any(x: i64, k: usize) -> ExactRational {
    let falling: BigInt = (0..k as i64).map(|j| BigInt::from(x - j)).product();
    ExactRational::from(falling) / ExactRational::from(factorial(k as u32))
}

/// Number of size-`m` multisets drawn from `n` kinds, `C(n+m-1, m)`.
fn multiset_count(n: u64, m: usize) -> ExactRational {
    if n == 0 {
        return if m == 0 {
            ExactRational::one()
        } else {
            ExactRational::zero()
        };
    }
    ExactRational::from(binomial(n + m as u64 - 1, m as i64))
}

fn pair(even: ExactRational, odd: ExactRational) -> Vec<ExactRational> {
    vec![even, odd]
}

fn split_by_parity(
    m: usize,
    mut weight: impl FnMut(&PartitionMultiplicities) -> Option<ExactRational>,
) -> (ExactRational, ExactRational) {
    let mut even = ExactRational::zero();
    let mut odd = ExactRational::zero();
    for y in enumerate_partitions(m) {
        if let Some(w) = weight(&y) {
            match y.parity() {
                Parity::Even => even += w,
                Parity::Odd => odd += w,
            }
        }
    }
    (even, odd)
}

fn alternating_weights(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::AlternatingWeights;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let lhs = sum_partitions(m, |y| Some(parity_sign(y) * partition_weight(y)));
    let rhs = if m <= 1 {
        ExactRational::sign_power(m)
    } else {
        ExactRational::zero()
    };
    Ok(VerificationReport::new(
        id,
        params,
        vec![lhs],
        vec![rhs],
        "alternating partition weights",
    ))
}

fn shifted_alternating_weights(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::ShiftedAlternatingWeights;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let phi = read_phi(&params, id, m)?;
    let r = phi.m();
    let term = |y: &PartitionMultiplicities| {
        parity_sign(y) * ExactRational::from(binomial_product(y, &phi)) * partition_weight(y)
    };
    let full = sum_partitions(m, |y| Some(term(y)));
    let restricted = sum_partitions(m, |y| dominates(y, &phi).then(|| term(y)));
    let closed = if m - r <= 1 {
        ExactRational::sign_power(m - r) * parity_sign(&phi) * partition_weight(&phi)
    } else {
        ExactRational::zero()
    };
    Ok(VerificationReport::new(
        id,
        params,
        vec![full, restricted],
        vec![closed.clone(), closed],
        format!("lhs = [all partitions, partitions with y_i >= phi_i]; r = {r}"),
    ))
}

fn stirling_alternating(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::StirlingAlternating;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let lhs: BigInt = (0..=m)
        .map(|k| {
            let s = stirling_first_unsigned(m, k as i64);
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum();
    let rhs = if m <= 1 {
        ExactRational::sign_power(m) * ExactRational::from(factorial(m as u32))
    } else {
        ExactRational::zero()
    };
    Ok(VerificationReport::new(
        id,
        params,
        vec![ExactRational::from(lhs)],
        vec![rhs],
        "alternating row sum of unsigned Stirling numbers of the first kind",
    ))
}

fn binomial_partition(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::BinomialPartition;
    let n = non_negative(require(&params.n, id, "n")?, "n")?;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let sums = vec![ExactRational::from(n); m];
    let lhs = reduce_from_power_sums(&sums, m)?;
    let rhs = ExactRational::from(binomial(n as u64, m as i64));
    Ok(VerificationReport::new(
        id,
        params,
        vec![lhs],
        vec![rhs],
        "reduction with S_i = n",
    ))
}

fn product_identity(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::ProductIdentity;
    let spec = require(&params.spec, id, "spec")?;
    let q = require(&params.q, id, "q")?;
    let n = require(&params.n, id, "n")?;
    if n < q {
        return Err(Error::InvalidArgument(format!("{id} needs n >= q (n = {n}, q = {q})")));
    }
    let m = (n - q + 1) as usize;
    let lhs = reduce_multiple_sum(&spec, m, q, n)?;
    let rhs = (q..=n).map(|k| spec.eval(k)).product::<Result<ExactRational>>()?;
    Ok(VerificationReport::new(
        id,
        params,
        vec![lhs],
        vec![rhs],
        format!("reduction of order m = {m}"),
    ))
}

fn recurrent_bridge(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::RecurrentBridge;
    let spec = require(&params.spec, id, "spec")?;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let q = require(&params.q, id, "q")?;
    let n = require(&params.n, id, "n")?;
    let recurrent = brute_recurrent_sum(&spec, m, q, n)?;
    let multiple = brute_multiple_sum(&SumProblem::uniform(spec.clone(), m, q, n)?)?;
    let sums = power_sums(&spec, m, q, n)?;
    let (even, odd) = split_by_parity(m, |y| {
        let product = y
            .nonzero()
            .fold(ExactRational::one(), |acc, (i, c)| acc * sums[i - 1].powu(c));
        Some(partition_weight(y) * product)
    });
    let signed = ExactRational::sign_power(m) * &multiple;
    let lhs = pair(&recurrent + &signed, &recurrent - &signed);
    let rhs = pair(ExactRational::from(2) * &even, ExactRational::from(2) * &odd);
    Ok(VerificationReport::new(
        id,
        params,
        lhs,
        rhs,
        "lhs = [recurrent + (-1)^m multiple, recurrent - (-1)^m multiple]; rhs = [2 even, 2 odd]",
    )
    .with_terms([
        ("recurrent", recurrent),
        ("multiple", multiple),
        ("even", even),
        ("odd", odd),
    ]))
}

fn even_odd_weights(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::EvenOddWeights;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let (even, odd) = split_by_parity(m, |y| Some(partition_weight(y)));
    let rhs = match m {
        0 => pair(ExactRational::one(), ExactRational::zero()),
        1 => pair(ExactRational::zero(), ExactRational::one()),
        _ => pair(half(), half()),
    };
    Ok(VerificationReport::new(id, params, pair(even, odd), rhs, "[even, odd]"))
}

fn even_odd_binom(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::EvenOddBinom;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let phi = read_phi(&params, id, m)?;
    let r = phi.m();
    let term = |y: &PartitionMultiplicities| ExactRational::from(binomial_product(y, &phi)) * partition_weight(y);
    let (even, odd) = split_by_parity(m, |y| Some(term(y)));
    let (even_r, odd_r) = split_by_parity(m, |y| dominates(y, &phi).then(|| term(y)));
    let base = partition_weight(&phi);
    let phi_even = phi.parity() == Parity::Even;
    let (e, o) = match m - r {
        0 if phi_even => (base, ExactRational::zero()),
        0 => (ExactRational::zero(), base),
        1 if phi_even => (ExactRational::zero(), base),
        1 => (base, ExactRational::zero()),
        _ => (&base * half(), base * half()),
    };
    Ok(VerificationReport::new(
        id,
        params,
        vec![even, odd, even_r, odd_r],
        vec![e.clone(), o.clone(), e, o],
        format!("[even, odd, even with y_i >= phi_i, odd with y_i >= phi_i]; r = {r}"),
    ))
}

fn even_odd_n(params: IdentityParams) -> Result<VerificationReport> {
    let id = IdentityId::EvenOddN;
    let n = non_negative(require(&params.n, id, "n")?, "n")?;
    let m = non_negative(require(&params.m, id, "m")?, "m")?;
    let n_r = ExactRational::from(n);
    let (even, odd) = split_by_parity(m, |y| {
        let product = y.nonzero().fold(ExactRational::one(), |acc, (_, c)| acc * n_r.powu(c));
        Some(partition_weight(y) * product)
    });
    let all = multiset_count(n as u64, m);
    let signed = ExactRational::sign_power(m) * ExactRational::from(binomial(n as u64, m as i64));
    let rhs = pair((&all + &signed) * half(), (&all - &signed) * half());
    let printed_first = binomial_any(n as i64 - m as i64 + 1, m);
    let printed = pair((&printed_first + &signed) * half(), (&printed_first - &signed) * half());
    let verdict = if printed == rhs {
        "agrees here"
    } else {
        "disagrees here"
    };
    let note = format!(
        "rhs uses C(n+m-1, m) = {all}, the full unsigned partition sum; \
         the printed statement's C(n-m+1, m) = {printed_first} {verdict}"
    );
    Ok(
        VerificationReport::new(id, params, pair(even, odd), rhs, note).with_terms([
            ("printed_even", printed[0].clone()),
            ("printed_odd", printed[1].clone()),
        ]),
    )
}

/// Evaluates one identity at one parameter point.
pub fn verify(id: IdentityId, params: IdentityParams) -> Result<VerificationReport> {
    match id {
        IdentityId::AlternatingWeights => alternating_weights(params),
        IdentityId::ShiftedAlternatingWeights => shifted_alternating_weights(params),
        IdentityId::StirlingAlternating => stirling_alternating(params),
        IdentityId::BinomialPartition => binomial_partition(params),
        IdentityId::ProductIdentity => product_identity(params),
        IdentityId::RecurrentBridge => recurrent_bridge(params),
        IdentityId::EvenOddWeights => even_odd_weights(params),
        IdentityId::EvenOddBinom => even_odd_binom(params),
        IdentityId::EvenOddN => even_odd_n(params),
    }
}

/// Named inclusive ranges, e.g. `m=0..12` or `m=0..6,n=1..4`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepRanges(pub BTreeMap<String, RangeInclusive<i64>>);

impl FromStr for SweepRanges {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ranges = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::InvalidArgument(format!("bad sweep range {part:?}; expected name=lo..hi"));
            let (name, range) = part.split_once('=').ok_or_else(bad)?;
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
                None => (range, range),
            };
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            ranges.insert(name.trim().to_string(), lo..=hi);
        }
        if ranges.is_empty() {
            return Err(Error::InvalidArgument("empty sweep".into()));
        }
        Ok(Self(ranges))
    }
}

impl SweepRanges {
    pub fn merge(&mut self, other: SweepRanges) {
        self.0.extend(other.0);
    }
}

/// Parameter points of a sweep in deterministic order. Identities that take
/// `phi` sweep every partition of every `r <= m` when `phi` is not fixed.
pub fn sweep_points(id: IdentityId, base: &IdentityParams, ranges: &SweepRanges) -> Result<Vec<IdentityParams>> {
    let mut points = vec![base.clone()];
    for (name, range) in &ranges.0 {
        let mut next = Vec::new();
        for p in &points {
            for v in range.clone() {
                let mut q = p.clone();
                q.set(name, v)?;
                next.push(q);
            }
        }
        points = next;
    }
    let takes_phi = id.parameters().contains(&"phi");
    if takes_phi && base.phi.is_none() {
        let mut expanded = Vec::new();
        for p in points {
            let m = non_negative(require(&p.m, id, "m")?, "m")?;
            let r_values: Vec<usize> = match p.r {
                Some(r) => vec![non_negative(r, "r")?],
                None => (0..=m).collect(),
            };
            for r in r_values {
                for phi in enumerate_partitions(r) {
                    let mut q = p.clone();
                    q.phi = Some(phi.padded(m));
                    q.r = Some(r as i64);
                    expanded.push(q);
                }
            }
        }
        points = expanded;
    }
    points.sort_by_key(IdentityParams::key);
    Ok(points)
}

/// Cartesian sweep, sequential.
pub fn verify_sweep(id: IdentityId, base: &IdentityParams, ranges: &SweepRanges) -> Result<Vec<VerificationReport>> {
    sweep_points(id, base, ranges)?
        .into_iter()
        .map(|p| verify(id, p))
        .collect()
}

/// Cartesian sweep on `jobs` worker threads; the report order matches
/// [`verify_sweep`].
pub fn verify_sweep_parallel(
    id: IdentityId,
    base: &IdentityParams,
    ranges: &SweepRanges,
    jobs: usize,
) -> Result<Vec<VerificationReport>> {
    let points = sweep_points(id, base, ranges)?;
    if jobs <= 1 {
        return points.into_iter().map(|p| verify(id, p)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| points.into_par_iter().map(|p| verify(id, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use proptest::prelude::*;

    fn run(id: IdentityId, params: IdentityParams) -> VerificationReport {
        verify(id, params).unwrap()
    }

    fn sweep(id: IdentityId, ranges: &str) -> Vec<VerificationReport> {
        verify_sweep(id, &IdentityParams::default(), &ranges.parse().unwrap()).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.wire_name().parse::<IdentityId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.wire_name()));
        }
        assert_eq!(
            "lemma_3_1".parse::<IdentityId>().unwrap(),
            IdentityId::AlternatingWeights
        );
        assert!("LEMMA_9_9".parse::<IdentityId>().is_err());
    }

    #[test]
    fn alternating_weights_examples() {
        let r = run(IdentityId::AlternatingWeights, IdentityParams::with_m(2));
        assert_eq!((r.lhs.clone(), r.equal), (vec![ratio(0, 1)], true));
        let values: Vec<_> = sweep(IdentityId::AlternatingWeights, "m=0..12")
            .into_iter()
            .map(|r| {
                assert!(r.equal);
                r.lhs[0].clone()
            })
            .collect();
        assert_eq!(values[0], ratio(1, 1));
        assert_eq!(values[1], ratio(-1, 1));
        assert!(values[2..].iter().all(ExactRational::is_zero));
    }

    #[test]
    fn shifted_alternating_weights_examples() {
        let params = IdentityParams {
            m: Some(3),
            phi: Some(vec![0, 1]),
            ..Default::default()
        };
        let r = run(IdentityId::ShiftedAlternatingWeights, params);
        // y = (1,1,0) is the only partition of 3 with y_2 >= 1; closed form -(-1/2)
        assert_eq!(r.lhs, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(r.equal);
        let bad = IdentityParams {
            m: Some(2),
            phi: Some(vec![0, 0, 1]),
            ..Default::default()
        };
        assert!(verify(IdentityId::ShiftedAlternatingWeights, bad).is_err());
        let mismatch = IdentityParams {
            m: Some(3),
            r: Some(1),
            phi: Some(vec![0, 1]),
            ..Default::default()
        };
        assert!(verify(IdentityId::ShiftedAlternatingWeights, mismatch).is_err());
    }

    #[test]
    fn shifted_sweeps_cover_every_phi() {
        let reports = sweep(IdentityId::ShiftedAlternatingWeights, "m=0..7");
        let expected: usize = (0..=7usize)
            .map(|m| (0..=m).map(|r| enumerate_partitions(r).len()).sum::<usize>())
            .sum();
        assert_eq!(reports.len(), expected);
        assert!(reports.iter().all(|r| r.equal));
        let binom = sweep(IdentityId::EvenOddBinom, "m=0..6");
        assert!(binom.iter().all(|r| r.equal));
    }

    #[test]
    fn stirling_alternating_sweep() {
        assert!(sweep(IdentityId::StirlingAlternating, "m=0..12")
            .iter()
            .all(|r| r.equal));
        let r = run(IdentityId::StirlingAlternating, IdentityParams::with_m(1));
        assert_eq!(r.lhs, vec![ratio(-1, 1)]);
    }

    #[test]
    fn binomial_partition_examples() {
        let r = run(
            IdentityId::BinomialPartition,
            IdentityParams {
                n: Some(3),
                m: Some(2),
                ..Default::default()
            },
        );
        assert_eq!(r.lhs, vec![ratio(3, 1)]);
        assert!(r.equal);
        let reports = sweep(IdentityId::BinomialPartition, "n=0..12,m=0..12");
        assert_eq!(reports.len(), 169);
        assert!(reports.iter().all(|r| r.equal));
    }

    #[test]
    fn binomial_partition_special_rows() {
        // n = 1 reproduces the alternating weights, n = m gives (-1)^m after the sign flip
        for m in 0..=8i64 {
            let one = run(
                IdentityId::BinomialPartition,
                IdentityParams {
                    n: Some(1),
                    m: Some(m),
                    ..Default::default()
                },
            );
            let alt = run(IdentityId::AlternatingWeights, IdentityParams::with_m(m));
            assert_eq!(one.lhs[0].clone() * ExactRational::sign_power(m as usize), alt.lhs[0]);
            let diag = run(
                IdentityId::BinomialPartition,
                IdentityParams {
                    n: Some(m),
                    m: Some(m),
                    ..Default::default()
                },
            );
            assert_eq!(diag.lhs, vec![ratio(1, 1)]);
        }
    }

    #[test]
    fn recurrent_bridge_example() {
        let params = IdentityParams {
            spec: Some(SequenceSpec::index_power(1)),
            m: Some(2),
            q: Some(1),
            n: Some(3),
            ..Default::default()
        };
        let r = run(IdentityId::RecurrentBridge, params);
        assert!(r.equal);
        assert_eq!(r.terms["recurrent"], ratio(25, 1));
        assert_eq!(r.terms["multiple"], ratio(11, 1));
        assert_eq!(r.lhs, vec![ratio(36, 1), ratio(14, 1)]);
    }

    #[test]
    fn even_odd_weights_sweep() {
        let r = run(IdentityId::EvenOddWeights, IdentityParams::with_m(2));
        assert_eq!(r.lhs, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(sweep(IdentityId::EvenOddWeights, "m=0..12").iter().all(|r| r.equal));
    }

    #[test]
    fn even_odd_n_uses_multiset_count() {
        let r = run(
            IdentityId::EvenOddN,
            IdentityParams {
                n: Some(3),
                m: Some(2),
                ..Default::default()
            },
        );
        assert_eq!(r.lhs, vec![ratio(9, 2), ratio(3, 2)]);
        assert!(r.equal);
        assert!(r.note.contains("disagrees"), "{}", r.note);
        let reports = sweep(IdentityId::EvenOddN, "n=0..10,m=0..10");
        assert!(reports.iter().all(|r| r.equal));
        assert!(reports
            .iter()
            .filter(|r| r.params.m.unwrap() <= 1)
            .all(|r| r.note.contains("agrees here") && !r.note.contains("disagrees")));
    }

    #[test]
    fn missing_parameters_are_errors() {
        assert!(verify(IdentityId::AlternatingWeights, IdentityParams::default()).is_err());
        assert!(verify(IdentityId::AlternatingWeights, IdentityParams::with_m(-1)).is_err());
        assert!(verify(IdentityId::ProductIdentity, IdentityParams::with_m(1)).is_err());
        assert!(verify(IdentityId::EvenOddBinom, IdentityParams::with_m(1)).is_err());
    }

    #[test]
    fn sweep_parsing_and_order() {
        let ranges: SweepRanges = "n=1..2, m=0..1".parse().unwrap();
        let points = sweep_points(IdentityId::EvenOddN, &IdentityParams::default(), &ranges).unwrap();
        let tuples: Vec<_> = points.iter().map(|p| (p.m.unwrap(), p.n.unwrap())).collect();
        assert_eq!(tuples, vec![(0, 1), (0, 2), (1, 1), (1, 2)]);
        assert!("m=3..1".parse::<SweepRanges>().is_err());
        assert!("m".parse::<SweepRanges>().is_err());
        assert!("".parse::<SweepRanges>().is_err());
        assert_eq!("m=4".parse::<SweepRanges>().unwrap().0["m"], 4..=4);
        assert!(verify_sweep(
            IdentityId::EvenOddN,
            &IdentityParams::default(),
            &"k=0..2".parse().unwrap()
        )
        .is_err());
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let ranges: SweepRanges = "m=0..6".parse().unwrap();
        let base = IdentityParams::default();
        let seq = verify_sweep(IdentityId::EvenOddBinom, &base, &ranges).unwrap();
        let par = verify_sweep_parallel(IdentityId::EvenOddBinom, &base, &ranges, 4).unwrap();
        assert_eq!(seq, par);
    }

    fn rational_values(len: usize) -> impl Strategy<Value = Vec<ExactRational>> {
        proptest::collection::vec((-6i64..7, 1i64..4).prop_map(|(a, b)| ratio(a, b)), len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn recurrent_bridge_random(values in rational_values(7), m in 0i64..=4, q in 1i64..=2, n in 0i64..=7) {
            let params = IdentityParams {
                spec: Some(SequenceSpec::explicit(1, values)),
                m: Some(m),
                q: Some(q),
                n: Some(n),
                ..Default::default()
            };
            prop_assert!(verify(IdentityId::RecurrentBridge, params).unwrap().equal);
        }

        #[test]
        fn product_identity_random(values in rational_values(8), q in 1i64..=2, width in 0i64..=6) {
            let params = IdentityParams {
                spec: Some(SequenceSpec::explicit(1, values)),
                q: Some(q),
                n: Some(q + width),
                ..Default::default()
            };
            prop_assert!(verify(IdentityId::ProductIdentity, params).unwrap().equal);
        }
    }
}
