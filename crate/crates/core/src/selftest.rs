//! The acceptance suite: ten criteria, each a batch of exact checks.
//!
//! Random inputs come from seeded ChaCha streams, so every run checks the
//! same cases.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{factorial, format_significant, pi_poly_numeric, stirling_first_unsigned, ExactRational};
use crate::identities::{verify, verify_sweep, IdentityId, IdentityParams, SweepRanges, VerificationReport};
use crate::multisum::{
    brute_multiple_sum, reduce_multiple_sum, reduce_symmetrized, reduction_coefficient, symmetrized_multiple_sum,
    variation_expand, variation_lemma, variation_recursive, SequenceSpec, SumProblem,
};
use crate::partitions::enumerate_partitions;
use crate::polynomials::{
    coeff_ratio_from_roots, generalized_binomial, mean_root_ratio, poly_derivative, poly_from_roots,
    sum_of_multiple_sums,
};
use crate::special::{
    bernoulli_partition_closed_form, bernoulli_partition_sum, check_zeta_table, golden_zeta_table, multiple_power_sum,
    mzv_closed_form, mzv_even_reduced, mzv_limit_gaps, mzv_partial_identity, stirling_via_multiple_sum,
};

/// Wall-clock budget for the whole suite, in seconds.
pub const TOTAL_BUDGET_SECS: f64 = 60.0;

const ORACLE_BUDGET_SECS: f64 = 5.0;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
    pub seconds: f64,
    pub within_budget: bool,
    pub passed: bool,
}

impl SelftestReport {
    pub fn table(&self) -> String {
        let mut out: Vec<String> = self.criteria.iter().map(CriterionResult::line).collect();
        out.push(format!(
            "[{}] total {:.2} s (budget {TOTAL_BUDGET_SECS:.0} s), {}/{} criteria passed",
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.criteria.iter().filter(|c| c.passed).count(),
            self.criteria.len()
        ));
        out.join("\n")
    }
}

type Check = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        name: "reduction equals brute force",
        run: oracle_equivalence,
    },
    Criterion {
        id: 2,
        name: "low-order expansion coefficients",
        run: particular_cases,
    },
    Criterion {
        id: 3,
        name: "variation formulas",
        run: variation_suite,
    },
    Criterion {
        id: 4,
        name: "symmetrized reduction over set partitions",
        run: symmetrized_suite,
    },
    Criterion {
        id: 5,
        name: "roots, coefficients and derivative means",
        run: vieta_suite,
    },
    Criterion {
        id: 6,
        name: "generalized binomial and product identities",
        run: binomial_suite,
    },
    Criterion {
        id: 7,
        name: "multiple power sums and Stirling numbers",
        run: power_sum_suite,
    },
    Criterion {
        id: 8,
        name: "exact multiple zeta values",
        run: mzv_suite,
    },
    Criterion {
        id: 9,
        name: "finite zeta sums and limit trend",
        run: limit_suite,
    },
    Criterion {
        id: 10,
        name: "identity registry sweeps",
        run: identity_sweeps,
    },
];

/// Number of criteria in the suite.
pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs a single criterion by id (1-based).
pub fn run_criterion(id: u32) -> Option<CriterionResult> {
    CRITERIA.iter().find(|c| c.id == id).map(run_one)
}

fn run_one(c: &Criterion) -> CriterionResult {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".to_string()));
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id: c.id,
        name: c.name,
        passed,
        detail,
        seconds,
    }
}

/// Runs every criterion in order.
pub fn run_all() -> SelftestReport {
    let start = Instant::now();
    let criteria: Vec<CriterionResult> = CRITERIA.iter().map(run_one).collect();
    let seconds = start.elapsed().as_secs_f64();
    let within_budget = seconds < TOTAL_BUDGET_SECS;
    let passed = within_budget && criteria.iter().all(|c| c.passed);
    SelftestReport {
        criteria,
        seconds,
        within_budget,
        passed,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> ExactRational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=6);
    ExactRational::new(num, den).expect("nonzero denominator")
}

fn random_values(rng: &mut ChaCha8Rng, len: usize) -> Vec<ExactRational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// Explicit sequence on indices `1..=len`.
fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> SequenceSpec {
    SequenceSpec::explicit(1, random_values(rng, len))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn ratio(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d).expect("nonzero denominator")
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut checks = 0;
    for seed in 0..20 {
        let spec = random_sequence(&mut rng(seed), 9);
        for m in 0..=5usize {
            for q in 1..=2i64 {
                for n in 0..=9i64 {
                    let p = SumProblem::uniform(spec.clone(), m, q, n).map_err(err)?;
                    let brute = brute_multiple_sum(&p).map_err(err)?;
                    let reduced = reduce_multiple_sum(&spec, m, q, n).map_err(err)?;
                    ensure(brute == reduced, || {
                        format!("seed {seed}, m={m}, q={q}, n={n}: brute {brute} != reduced {reduced}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < ORACLE_BUDGET_SECS, || {
        format!("{checks} comparisons took {secs:.2} s")
    })?;
    Ok(format!("{checks} exact comparisons over 20 seeded sequences"))
}

/// Parts in descending order, coefficient as (numerator, denominator).
type GoldenRow = &'static [(&'static [usize], (i64, i64))];

fn particular_cases() -> Check {
    let golden: [GoldenRow; 4] = [
        &[(&[1], (1, 1))],
        &[(&[1, 1], (1, 2)), (&[2], (-1, 2))],
        &[(&[1, 1, 1], (1, 6)), (&[2, 1], (-1, 2)), (&[3], (1, 3))],
        &[
            (&[1, 1, 1, 1], (1, 24)),
            (&[2, 1, 1], (-1, 4)),
            (&[3, 1], (1, 3)),
            (&[2, 2], (1, 8)),
            (&[4], (-1, 4)),
        ],
    ];
    let mut coefficients = 0;
    for (idx, table) in golden.iter().enumerate() {
        let m = idx + 1;
        let generated = enumerate_partitions(m);
        ensure(generated.len() == table.len(), || {
            format!(
                "m={m}: {} partitions generated, {} in the table",
                generated.len(),
                table.len()
            )
        })?;
        for y in &generated {
            let parts = y.parts();
            let (_, (num, den)) = table
                .iter()
                .find(|(p, _)| *p == parts.as_slice())
                .ok_or_else(|| format!("m={m}: partition {y} missing from the table"))?;
            let c = reduction_coefficient(y);
            ensure(c == ratio(*num, *den), || {
                format!("m={m}, {y}: coefficient {c}, table {num}/{den}")
            })?;
            coefficients += 1;
        }
        // the table itself, applied to power sums, reproduces the brute sum
        let spec = random_sequence(&mut rng(100 + m as u64), 7);
        let sums = crate::multisum::power_sums(&spec, m, 1, 7).map_err(err)?;
        let from_table: ExactRational = table
            .iter()
            .map(|(parts, (num, den))| parts.iter().fold(ratio(*num, *den), |acc, &i| acc * &sums[i - 1]))
            .sum();
        let brute = brute_multiple_sum(&SumProblem::uniform(spec, m, 1, 7).map_err(err)?).map_err(err)?;
        ensure(from_table == brute, || {
            format!("m={m}: table expansion {from_table} != brute {brute}")
        })?;
    }
    Ok(format!(
        "{coefficients} coefficients for m = 1..4 match the golden tables"
    ))
}

fn variation_suite() -> Check {
    let mut checks = 0;
    for seed in 0..6u64 {
        let mut r = rng(200 + seed);
        let specs: Vec<SequenceSpec> = (0..4).map(|_| random_sequence(&mut r, 9)).collect();
        for m in 1..=4usize {
            for q in 1..=2i64 {
                for n in q + m as i64 - 1..=8 {
                    let p = SumProblem::new(specs[..m].to_vec(), q, n).map_err(err)?;
                    let target = brute_multiple_sum(&SumProblem::new(specs[..m].to_vec(), q, n + 1).map_err(err)?)
                        .map_err(err)?;
                    let (next, cur, lower) = variation_lemma(&p).map_err(err)?;
                    let step = specs[m - 1].eval(n + 1).map_err(err)?;
                    ensure(next == &cur + step * lower && next == target, || {
                        format!("one-step variation fails at seed {seed}, m={m}, q={q}, n={n}")
                    })?;
                    for cutoff in 0..=m {
                        let e = variation_expand(&p, cutoff).map_err(err)?;
                        let h = variation_recursive(&p, cutoff).map_err(err)?;
                        ensure(e == target && h == target, || {
                            format!("seed {seed}, m={m}, q={q}, n={n}, cutoff {cutoff}: expand {e}, nested {h}, brute {target}")
                        })?;
                        checks += 2;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} expanded and nested evaluations equal brute force"))
}

fn symmetrized_suite() -> Check {
    let mut checks = 0;
    for seed in 0..5u64 {
        let mut r = rng(300 + seed);
        let specs: Vec<SequenceSpec> = (0..4).map(|_| random_sequence(&mut r, 6)).collect();
        for m in 1..=4usize {
            for q in 1..=2i64 {
                for n in q..=6 {
                    let s = &specs[..m];
                    let perm = symmetrized_multiple_sum(s, q, n).map_err(err)?;
                    let sets = reduce_symmetrized(s, q, n).map_err(err)?;
                    ensure(perm == sets, || {
                        format!("seed {seed}, m={m}, q={q}, n={n}: {perm} != {sets}")
                    })?;
                    let same = vec![specs[0].clone(); m];
                    let lhs = reduce_symmetrized(&same, q, n).map_err(err)?;
                    let rhs = ExactRational::from(factorial(m as u32))
                        * reduce_multiple_sum(&specs[0], m, q, n).map_err(err)?;
                    ensure(lhs == rhs, || {
                        format!("identical sequences, m={m}, q={q}, n={n}: {lhs} != {rhs}")
                    })?;
                    checks += 2;
                }
            }
        }
    }
    Ok(format!(
        "{checks} exact comparisons (permutations vs set partitions, identical-sequence case)"
    ))
}

fn vieta_suite() -> Check {
    let mut r = rng(400);
    let mut ratios = 0;
    let mut means = 0;
    for trial in 0..200 {
        let degree = r.random_range(0..=6usize);
        let roots = random_values(&mut r, degree);
        let lead = loop {
            let c = random_rational(&mut r);
            if !c.is_zero() {
                break c;
            }
        };
        let p = poly_from_roots(&roots, &lead).map_err(err)?;
        for m in 0..=degree {
            let expected = p.coefficient(degree - m) / p.leading();
            let got = coeff_ratio_from_roots(&roots, m).map_err(err)?;
            ensure(got == expected, || format!("trial {trial}, m={m}: {got} != {expected}"))?;
            ratios += 1;
        }
        if degree >= 2 {
            let mean = mean_root_ratio(&p).map_err(err)?;
            for k in 1..degree {
                let d = mean_root_ratio(&poly_derivative(&p, k)).map_err(err)?;
                ensure(d == mean, || {
                    format!("trial {trial}, k={k}: derivative mean {d} != {mean}")
                })?;
                means += 1;
            }
        }
    }
    Ok(format!(
        "{ratios} coefficient ratios and {means} derivative means over 200 root multisets"
    ))
}

fn binomial_suite() -> Check {
    let mut r = rng(500);
    for trial in 0..150 {
        let len = r.random_range(0..=8usize);
        let a = random_values(&mut r, len);
        let b: Vec<ExactRational> = (0..len)
            .map(|_| loop {
                let c = random_rational(&mut r);
                if !c.is_zero() {
                    break c;
                }
            })
            .collect();
        let (direct, rebuilt) = generalized_binomial(&a, &b).map_err(err)?;
        ensure(direct == rebuilt, || format!("trial {trial}: {direct} != {rebuilt}"))?;
    }
    let n_seq = SequenceSpec::index_power(1);
    for n in 1..=8i64 {
        let total = sum_of_multiple_sums(&n_seq, 1, n).map_err(err)?;
        let expected = ExactRational::from(factorial(n as u32 + 1));
        ensure(total == expected, || {
            format!("n={n}: sum of multiple sums {total} != (n+1)! = {expected}")
        })?;
    }
    for trial in 0..40u64 {
        let mut r = rng(550 + trial);
        let len = r.random_range(1..=8usize);
        let spec = random_sequence(&mut r, len);
        let total = sum_of_multiple_sums(&spec, 1, len as i64).map_err(err)?;
        let product: ExactRational = spec
            .values(1, len as i64)
            .map_err(err)?
            .into_iter()
            .map(|v| v + ExactRational::one())
            .product();
        ensure(total == product, || format!("trial {trial}: {total} != {product}"))?;
    }
    Ok("150 binomial expansions, (n+1)! for n <= 8, 40 random product identities".to_string())
}

fn power_sum_suite() -> Check {
    let mut checks = 0;
    for m in 0..=3usize {
        for n in 0..=8i64 {
            for p in 0..=3u32 {
                let closed = multiple_power_sum(m, n as u64, p).map_err(err)?;
                let brute = brute_multiple_sum(
                    &SumProblem::uniform(SequenceSpec::index_power(p as i32), m, 1, n).map_err(err)?,
                )
                .map_err(err)?;
                ensure(closed == brute, || format!("m={m}, n={n}, p={p}: {closed} != {brute}"))?;
                checks += 1;
            }
        }
    }
    for ((m, n, p), expected) in [((2, 4, 1), 35), ((2, 3, 2), 49), ((3, 4, 1), 50)] {
        let got = multiple_power_sum(m, n, p).map_err(err)?;
        ensure(got == ExactRational::from(expected as i64), || {
            format!("m={m}, n={n}, p={p}: {got}, expected {expected}")
        })?;
    }
    for n in 0..=9u64 {
        for m in 0..=n as usize {
            let s = stirling_via_multiple_sum(m, n).map_err(err)?;
            let t = stirling_first_unsigned(n as usize + 1, n as i64 - m as i64 + 1);
            ensure(s == t, || format!("m={m}, n={n}: {s} != {t}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} comparisons plus the three printed examples"))
}

fn mzv_suite() -> Check {
    let table = golden_zeta_table();
    ensure(table.len() == 8, || format!("golden table has {} entries", table.len()))?;
    for c in check_zeta_table(&table).map_err(err)? {
        ensure(c.equal, || {
            format!("zeta({}): computed {}, table {}", c.argument, c.computed, c.expected)
        })?;
    }
    let mut grid = 0;
    for (p, max_m) in [(1u32, 6usize), (2, 4), (3, 3)] {
        for m in 1..=max_m {
            let reduced = mzv_even_reduced(m, p).map_err(err)?;
            let closed = mzv_closed_form(m, p).map_err(err)?;
            ensure(reduced == closed, || {
                format!("m={m}, p={p}: reduced {reduced} != closed {closed}")
            })?;
            let b = bernoulli_partition_sum(m, p).map_err(err)?;
            let bc = bernoulli_partition_closed_form(m, p).map_err(err)?;
            ensure(b == bc, || format!("m={m}, p={p}: Bernoulli sum {b} != {bc}"))?;
            grid += 1;
        }
    }
    ensure(bernoulli_partition_sum(1, 1).map_err(err)? == ratio(1, 24), || {
        "m=1, p=1 is not 1/24".into()
    })?;
    ensure(bernoulli_partition_sum(2, 1).map_err(err)? == ratio(1, 1920), || {
        "m=2, p=1 is not 1/1920".into()
    })?;
    for ((m, p), anchor) in [
        ((4, 1), "0.02614784782"),
        ((3, 2), "0.001357063251"),
        ((3, 3), "0.00002735551966"),
    ] {
        let ours = pi_poly_numeric(&mzv_closed_form(m, p).map_err(err)?, 9).map_err(err)?;
        let theirs = format_significant(&ExactRational::from_decimal_str(anchor).map_err(err)?, 9);
        ensure(ours == theirs, || {
            format!("m={m}, p={p}: {ours} vs anchor {anchor} ({theirs})")
        })?;
    }
    Ok(format!(
        "8 table entries, {grid} grid points, 3 decimal anchors to 9 digits"
    ))
}

fn limit_suite() -> Check {
    for n in 1..=12i64 {
        for p in 1..=4u32 {
            let (lhs, rhs) = mzv_partial_identity(n, p).map_err(err)?;
            ensure(lhs == rhs, || format!("n={n}, p={p}: {lhs} != {rhs}"))?;
        }
    }
    let ps = [4u32, 6, 8, 10, 12];
    let gaps = mzv_limit_gaps(&ps, 10_000).map_err(err)?;
    ensure(gaps.windows(2).all(|w| w[0] > w[1]), || {
        format!("gaps not strictly decreasing: {}", render(&gaps))
    })?;
    let last = gaps.last().expect("five gaps");
    ensure(*last < ratio(1, 1000), || {
        format!("final gap {} is not below 1e-3", format_significant(last, 6))
    })?;
    Ok(format!(
        "finite identity exact for n <= 12, p <= 4; gaps at n = 10^4: {}",
        render(&gaps)
    ))
}

fn render(gaps: &[ExactRational]) -> String {
    gaps.iter()
        .map(|g| format_significant(g, 4))
        .collect::<Vec<_>>()
        .join(", ")
}

fn all_equal(reports: &[VerificationReport]) -> std::result::Result<usize, String> {
    match reports.iter().find(|r| !r.equal) {
        Some(r) => Err(format!(
            "{} fails at {}",
            r.identity,
            serde_json::to_string(&r.params).unwrap_or_default()
        )),
        None => Ok(reports.len()),
    }
}

fn sweep(id: IdentityId, ranges: &str) -> std::result::Result<Vec<VerificationReport>, String> {
    let ranges: SweepRanges = ranges.parse().map_err(err)?;
    verify_sweep(id, &IdentityParams::default(), &ranges).map_err(err)
}

fn identity_sweeps() -> Check {
    let mut total = 0;
    total += all_equal(&sweep(IdentityId::AlternatingWeights, "m=0..12")?)?;
    total += all_equal(&sweep(IdentityId::StirlingAlternating, "m=0..12")?)?;
    total += all_equal(&sweep(IdentityId::ShiftedAlternatingWeights, "m=0..6")?)?;
    total += all_equal(&sweep(IdentityId::EvenOddBinom, "m=0..6")?)?;
    total += all_equal(&sweep(IdentityId::EvenOddWeights, "m=0..12")?)?;
    total += all_equal(&sweep(IdentityId::BinomialPartition, "n=0..12,m=0..12")?)?;

    let mut r = rng(600);
    for _ in 0..8 {
        let spec = random_sequence(&mut r, 7);
        for m in 0..=4i64 {
            for q in 1..=2i64 {
                for n in 0..=7i64 {
                    let params = IdentityParams {
                        spec: Some(spec.clone()),
                        m: Some(m),
                        q: Some(q),
                        n: Some(n),
                        ..Default::default()
                    };
                    total += all_equal(&[verify(IdentityId::RecurrentBridge, params).map_err(err)?])?;
                }
            }
        }
        for q in 1..=2i64 {
            for n in q..=(q + 6).min(7) {
                let params = IdentityParams {
                    spec: Some(spec.clone()),
                    q: Some(q),
                    n: Some(n),
                    ..Default::default()
                };
                total += all_equal(&[verify(IdentityId::ProductIdentity, params).map_err(err)?])?;
            }
        }
    }

    let mut flagged = 0;
    for n in 0..=10i64 {
        for m in 0..=n {
            let params = IdentityParams {
                n: Some(n),
                m: Some(m),
                ..Default::default()
            };
            let report = verify(IdentityId::EvenOddN, params).map_err(err)?;
            total += all_equal(std::slice::from_ref(&report))?;
            ensure(report.note.contains("printed statement"), || {
                format!("EVEN_ODD_N report at n={n}, m={m} does not flag the printed form")
            })?;
            if report.note.contains("disagrees") {
                flagged += 1;
            }
        }
    }
    ensure(flagged > 0, || "no EVEN_ODD_N point separates the printed form".into())?;
    Ok(format!(
        "{total} reports equal; EVEN_ODD_N printed form differs at {flagged} of 66 points"
    ))
}
