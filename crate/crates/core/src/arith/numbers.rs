use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExactRational;

static BERNOULLI_MEMO: Mutex<Vec<ExactRational>> = Mutex::new(Vec::new());
static STIRLING_MEMO: Mutex<Vec<Vec<BigInt>>> = Mutex::new(Vec::new());

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Bernoulli number `B_j` with `B_1 = -1/2`.
///
/// Computed from `sum_{k=0}^{m} C(m+1, k) B_k = 0` and memoized process-wide.
pub fn bernoulli(j: usize) -> ExactRational {
    let mut memo = BERNOULLI_MEMO.lock().unwrap_or_else(|e| e.into_inner());
    while memo.len() <= j {
        let m = memo.len();
        let value = if m == 0 {
            ExactRational::one()
        } else {
            let acc: ExactRational = memo
                .iter()
                .enumerate()
                .map(|(k, b)| b * ExactRational::from(binomial(m as u64 + 1, k as i64)))
                .sum();
            -acc / ExactRational::from(m + 1)
        };
        memo.push(value);
    }
    memo[j].clone()
}

/// Unsigned Stirling number of the first kind `[m, r]`: the coefficient of
/// `x^r` in `x (x+1) ... (x+m-1)`. Zero outside `0 <= r <= m`.
pub fn stirling_first_unsigned(m: usize, r: i64) -> BigInt {
    if r < 0 || r as usize > m {
        return BigInt::zero();
    }
    let mut table = STIRLING_MEMO.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(vec![BigInt::one()]);
    }
    // [k+1, r] = k [k, r] + [k, r-1]
    while table.len() <= m {
        let k = table.len() - 1;
        let prev = &table[k];
        let row: Vec<BigInt> = (0..=k + 1)
            .map(|r| {
                let keep = if r <= k { &prev[r] * k } else { BigInt::zero() };
                let shift = if r >= 1 { prev[r - 1].clone() } else { BigInt::zero() };
                keep + shift
            })
            .collect();
        table.push(row);
    }
    table[m][r as usize].clone()
}
