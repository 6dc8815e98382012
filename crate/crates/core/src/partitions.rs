//! Integer partitions in multiplicity form and set partitions grouped by type.
//!
//! A partition of `m` is stored as `y[0..m]`, where `y[i-1]` counts the parts
//! equal to `i`. Every reduction formula in this crate is indexed by these
//! multiplicities, so part lists are only a derived view.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};

/// Largest ground set accepted by [`enumerate_set_partitions`]; Bell(8) = 4140.
pub const MAX_SET_PARTITION_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A partition of `m` as multiplicities `y_1..y_m` with `sum i*y_i = m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionMultiplicities {
    m: usize,
    y: Vec<u32>,
}

impl PartitionMultiplicities {
    /// Validates `sum i*y_i = m` and pads `y` with trailing zeros to length `m`.
    pub fn new(m: usize, mut y: Vec<u32>) -> Result<Self> {
        if y.len() > m && y[m..].iter().any(|&v| v != 0) {
            return Err(Error::InvalidArgument(format!(
                "multiplicity vector {y:?} has parts larger than {m}"
            )));
        }
        y.resize(m, 0);
        let weight: usize = y.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum();
        if weight != m {
            return Err(Error::InvalidArgument(format!(
                "multiplicities {y:?} sum to {weight}, not {m}"
            )));
        }
        Ok(Self { m, y })
    }

    /// Builds the partition with the given parts (any order).
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("parts must be positive".into()));
        }
        let m = parts.iter().sum();
        let mut y = vec![0u32; m];
        for &p in parts {
            y[p - 1] += 1;
        }
        Ok(Self { m, y })
    }

    /// Interprets `y` as the multiplicities of some partition of `r = sum i*y_i`.
    pub fn from_multiplicities(y: Vec<u32>) -> Self {
        let m = y.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum();
        let mut y = y;
        y.resize(m, 0);
        Self { m, y }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Multiplicities `y_1..y_m`; always of length `m`.
    pub fn multiplicities(&self) -> &[u32] {
        &self.y
    }

    /// Multiplicity of part `i` (1-based); zero past the end.
    pub fn count(&self, part: usize) -> u32 {
        if part == 0 {
            return 0;
        }
        self.y.get(part - 1).copied().unwrap_or(0)
    }

    /// Number of parts, `sum y_i`.
    pub fn length(&self) -> usize {
        self.y.iter().map(|&c| c as usize).sum()
    }

    pub fn parity(&self) -> Parity {
        partition_parity(self)
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.length());
        for (i, &c) in self.y.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, c as usize));
        }
        parts
    }

    /// Multiplicities padded with zeros to length `max(len, m)`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut y = self.y.clone();
        y.resize(len.max(self.m), 0);
        y
    }

    /// Iterates `(part, multiplicity)` over parts with nonzero multiplicity.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.y
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
    }
}

impl fmt::Display for PartitionMultiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(usize::to_string).collect();
        if parts.is_empty() {
            f.write_str("()")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// A partition of `{1..m}` into nonempty blocks, blocks ordered by
/// `(size, smallest element)` and each block sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates that `blocks` cover `{1..m}` disjointly, then canonicalizes.
    pub fn new(m: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > m || seen[e] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} is out of range or repeated"
                    )));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidArgument("blocks do not cover the set".into()));
        }
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| (b.len(), b[0]));
        Ok(Self { m, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Bitmask of a block, bit `h-1` set for element `h`.
    pub fn block_mask(block: &[usize]) -> u32 {
        block.iter().fold(0, |acc, &h| acc | 1 << (h - 1))
    }
}

/// All partitions of `m`, ordered by their descending part lists compared
/// lexicographically: `1+1+...+1` comes first and `m` itself last.
pub fn enumerate_partitions(m: usize) -> Vec<PartitionMultiplicities> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(m);
    descend(m, m, &mut parts, &mut out);
    out
}

fn descend(remaining: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<PartitionMultiplicities>) {
    if remaining == 0 {
        out.push(PartitionMultiplicities::from_parts(parts).expect("positive parts"));
        return;
    }
    for p in 1..=max_part.min(remaining) {
        parts.push(p);
        descend(remaining - p, p, parts, out);
        parts.pop();
    }
}

/// `p(m)` via Euler's pentagonal-number recurrence.
pub fn partition_count(m: usize) -> BigInt {
    let mut table: Vec<BigInt> = Vec::with_capacity(m + 1);
    table.push(BigInt::one());
    for i in 1..=m {
        let mut total = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        table.push(total);
    }
    table.swap_remove(m)
}

/// All set partitions of `{1..m}` for `1 <= m <= 8`, in canonical order.
///
/// Ordering: by type (following [`enumerate_partitions`]), then by the
/// canonical block list.
pub fn enumerate_set_partitions(m: usize) -> Result<Vec<SetPartition>> {
    if m == 0 || m > MAX_SET_PARTITION_SIZE {
        return Err(Error::InvalidArgument(format!(
            "set partitions are enumerated for 1 <= m <= {MAX_SET_PARTITION_SIZE}, got {m}"
        )));
    }
    // Restricted growth strings: a[i] <= 1 + max(a[0..i]).
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    loop {
        let count = labels.iter().max().map_or(0, |x| x + 1);
        let mut blocks = vec![Vec::new(); count];
        for (e, &b) in labels.iter().enumerate() {
            blocks[b].push(e + 1);
        }
        out.push(SetPartition::new(m, blocks).expect("valid restricted growth string"));

        // Advance to the next restricted growth string.
        let mut i = m - 1;
        loop {
            if i == 0 {
                return Ok(sort_canonical(out));
            }
            let prefix_max = labels[..i].iter().max().copied().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn sort_canonical(mut sps: Vec<SetPartition>) -> Vec<SetPartition> {
    let m = sps.first().map_or(0, SetPartition::m);
    let rank: std::collections::HashMap<Vec<u32>, usize> = enumerate_partitions(m)
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p.y, i))
        .collect();
    sps.sort_by(|a, b| {
        let ta = rank[set_partition_type(a).multiplicities()];
        let tb = rank[set_partition_type(b).multiplicities()];
        ta.cmp(&tb).then_with(|| a.blocks.cmp(&b.blocks))
    });
    sps
}

/// Block-size multiplicities of a set partition.
pub fn set_partition_type(sp: &SetPartition) -> PartitionMultiplicities {
    let sizes: Vec<usize> = sp.blocks.iter().map(Vec::len).collect();
    PartitionMultiplicities::from_parts(&sizes).expect("blocks are nonempty")
}

/// `m! / prod_i (i!^{y_i} y_i!)`: the number of set partitions of `{1..m}`
/// whose block sizes form `y`.
pub fn count_set_partitions_of_type(y: &PartitionMultiplicities) -> BigInt {
    let denom = y.nonzero().fold(BigInt::one(), |acc, (i, c)| {
        acc * factorial(i as u32).pow(c) * factorial(c)
    });
    factorial(y.m() as u32) / denom
}

pub fn partition_parity(y: &PartitionMultiplicities) -> Parity {
    if y.length().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}
