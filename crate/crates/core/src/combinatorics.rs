//! Degree exponents and block tables.
//!
//! For a prime power `p^n` the range `[1, α_{p^n}]` of nontrivial degree
//! exponents splits into consecutive blocks `A_1, …, A_{p^{n-2}}` of lengths
//! `ℓ(n, x) = n - m_x + 1`, where `m_x` is the least `m` with `x ≤ p^{m-2}`.
//! For general `n` the blocks of the p-adic terms are merged and re-sorted into
//! a single table of `⌊n/p²⌋` blocks.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{require_prime, Error, Result};
use crate::partitions::p_adic_expansion;

/// Half-open integer interval `[start, end)`, rendered closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
}

impl Interval {
    pub fn closed(first: u64, last: u64) -> Self {
        Interval {
            start: first,
            end: last + 1,
        }
    }

    pub fn len(&self) -> u64 {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, k: u64) -> bool {
        self.start <= k && k < self.end
    }

    pub fn first(&self) -> u64 {
        self.start
    }

    pub fn last(&self) -> u64 {
        self.end - 1
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else if self.len() == 1 {
            write!(f, "{{{}}}", self.start)
        } else {
            write!(f, "[{}, {}]", self.start, self.last())
        }
    }
}

pub(crate) fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// `α_{p^e}`: 0 for `e ≤ 1`, else `(p^{e-1} - 1)/(p - 1)`.
pub fn alpha_prime_power(e: u32, p: u64) -> u64 {
    if e <= 1 {
        0
    } else {
        (pow(p, e - 1) - 1) / (p - 1)
    }
}

/// Maximal degree exponent of an irreducible character of a Sylow
/// `p`-subgroup of `S_n`, summed over the p-adic terms of `n`.
pub fn alpha(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if n == 0 {
        return Ok(0);
    }
    Ok(p_adic_expansion(n, p)?
        .into_iter()
        .map(|e| alpha_prime_power(e, p))
        .sum())
}

/// `ν_p(⌊n/p⌋!)` by Legendre's formula.
pub fn alpha_legendre(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let m = n / p;
    let mut total = 0;
    let mut q = p;
    loop {
        total += m / q;
        match q.checked_mul(p) {
            Some(next) if next <= m => q = next,
            _ => break,
        }
    }
    Ok(total)
}

/// Least `m` with `x ≤ p^{m-2}`.
pub fn m_value(x: u64, p: u64) -> u32 {
    let mut m = 2;
    let mut bound = 1u64;
    while x > bound {
        bound *= p;
        m += 1;
    }
    m
}

/// `ℓ(n, x) = n - m_x + 1` for `n ≥ 2`, `1 ≤ x ≤ p^{n-2}`.
pub fn ell_prime_power(n: u32, x: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "exponent",
            detail: format!("block lengths need n >= 2, got {n}"),
        });
    }
    if x == 0 || x > pow(p, n - 2) {
        return Err(Error::OutOfRange {
            what: "block index",
            detail: format!("x = {x} outside [1, {}]", pow(p, n - 2)),
        });
    }
    Ok((n - m_value(x, p) + 1) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePowerBlocks {
    pub p: u64,
    pub n: u32,
    pub m_values: Vec<u32>,
    pub lengths: Vec<u64>,
    pub blocks: Vec<Interval>,
}

impl PrimePowerBlocks {
    /// `f_n(x) = Σ_{j ≤ x} ℓ(n, j)`.
    pub fn prefix(&self, x: usize) -> u64 {
        self.lengths[..x].iter().sum()
    }
}

/// Blocks `A_x = [f_n(x-1)+1, f_n(x)]` for `x ∈ [1, p^{n-2}]`.
pub fn blocks_prime_power(n: u32, p: u64) -> Result<PrimePowerBlocks> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "exponent",
            detail: format!("p^{n} has no blocks (α = 0)"),
        });
    }
    let count = pow(p, n - 2);
    let mut m_values = Vec::with_capacity(count as usize);
    let mut lengths = Vec::with_capacity(count as usize);
    let mut blocks = Vec::with_capacity(count as usize);
    let mut next = 1;
    for x in 1..=count {
        let m = m_value(x, p);
        let len = (n - m + 1) as u64;
        m_values.push(m);
        lengths.push(len);
        blocks.push(Interval::closed(next, next + len - 1));
        next += len;
    }
    let out = PrimePowerBlocks {
        p,
        n,
        m_values,
        lengths,
        blocks,
    };
    let alt = blocks_from_increments(n, p);
    if alt != out.blocks {
        return Err(Error::Inconsistency(format!(
            "block constructions disagree for p^{n}, p = {p}"
        )));
    }
    if next - 1 != alpha_prime_power(n, p) {
        return Err(Error::Inconsistency(format!(
            "blocks of p^{n} cover [1, {}] instead of [1, α]",
            next - 1
        )));
    }
    Ok(out)
}

/// Builds the blocks from the increasing sequence `0 = a_0 < a_1 < …` whose
/// increments are `n-1` once, then `n-2` up to index `p`, `n-3` up to `p²`,
/// and so on down to `1` up to `p^{n-2}`.
pub fn blocks_from_increments(n: u32, p: u64) -> Vec<Interval> {
    let count = pow(p, n - 2);
    let mut out = Vec::with_capacity(count as usize);
    let mut prev = 0u64;
    let mut i = 1u64;
    let mut step = (n - 1) as u64;
    let mut stage_end = 1u64;
    while i <= count {
        let a = prev + step;
        out.push(Interval::closed(prev + 1, a));
        prev = a;
        if i == stage_end {
            step -= 1;
            stage_end *= p;
        }
        i += 1;
    }
    out
}

/// One merged block: the p-adic term index `i` and position `y` it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RElement {
    pub term: usize,
    pub y: u64,
    pub length: u64,
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.term, self.y)
    }
}

/// The merged block system of a general `n ≥ p²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockTable {
    pub n: u64,
    pub p: u64,
    pub exponents: Vec<u32>,
    /// Elements of `R` in descending order; `order[x-1]` is `φ^{-1}(x)`.
    pub order: Vec<RElement>,
    pub lengths: Vec<u64>,
    pub blocks: Vec<Interval>,
}

impl BlockTable {
    /// Number of blocks, `⌊n/p²⌋`.
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    /// `F_n(x) = Σ_{a ≤ x} ℓ(a)`.
    pub fn prefix(&self, x: usize) -> u64 {
        self.lengths[..x].iter().sum()
    }

    pub fn alpha(&self) -> u64 {
        self.lengths.iter().sum()
    }

    /// The `x ∈ [1, N]` with `k ∈ A_x`.
    pub fn index_of(&self, k: u64) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(k)).map(|i| i + 1)
    }
}

/// Sorts `R = {(i, y) : y ∈ [1, p^{n_i - 2}]}` by decreasing `ℓ(n_i, y)`, ties
/// broken by smaller `i`, then smaller `y`, and lays out the blocks.
pub fn ordered_r(n: u64, p: u64) -> Result<BlockTable> {
    require_prime(p)?;
    if n < p * p {
        return Err(Error::AbelianSylow { n, p_squared: p * p });
    }
    let exponents = p_adic_expansion(n, p)?;
    let mut order = Vec::new();
    for (idx, &e) in exponents.iter().enumerate() {
        if e < 2 {
            continue;
        }
        for y in 1..=pow(p, e - 2) {
            order.push(RElement {
                term: idx + 1,
                y,
                length: ell_prime_power(e, y, p)?,
            });
        }
    }
    order.sort_by(|a, b| {
        b.length
            .cmp(&a.length)
            .then(a.term.cmp(&b.term))
            .then(a.y.cmp(&b.y))
    });
    let lengths: Vec<u64> = order.iter().map(|r| r.length).collect();
    let mut blocks = Vec::with_capacity(order.len());
    let mut next = 1;
    for &len in &lengths {
        blocks.push(Interval::closed(next, next + len - 1));
        next += len;
    }
    if order.len() as u64 != n / (p * p) {
        return Err(Error::Inconsistency(format!(
            "|R| = {} but ⌊n/p²⌋ = {}",
            order.len(),
            n / (p * p)
        )));
    }
    if next - 1 != alpha(n, p)? {
        return Err(Error::Inconsistency(format!(
            "merged blocks of n = {n} do not cover [1, α_n]"
        )));
    }
    Ok(BlockTable {
        n,
        p,
        exponents,
        order,
        lengths,
        blocks,
    })
}

/// The `x` with `k ∈ A_x` for `1 ≤ k ≤ α_n`.
pub fn block_index(n: u64, p: u64, k: u64) -> Result<usize> {
    let a = alpha(n, p)?;
    if k == 0 || k > a {
        return Err(Error::NoSuchDegree { k, alpha: a });
    }
    let table = ordered_r(n, p)?;
    table
        .index_of(k)
        .ok_or_else(|| Error::Inconsistency(format!("{k} lies in no block of n = {n}")))
}

/// Exponents `k` with `p^k` a character degree of the Sylow subgroup.
pub fn cd_exponents(n: u64, p: u64) -> Result<RangeInclusive<u64>> {
    Ok(0..=alpha(n, p)?)
}
