//! Partitions, compositions and box sets.
//!
//! A [`Partition`] is stored as its list of parts. The empty partition is a
//! regular value and is the unique partition of 0.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{require_prime, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition, rejecting increasing or zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} contains a zero part"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the given parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&x| x > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), with zeros past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let mut out = Vec::with_capacity(cols);
        for j in 0..cols {
            out.push(self.parts.iter().take_while(|&&x| x > j).count());
        }
        Partition::from_sorted(out)
    }

    /// First part at most `t` and at most `t` parts.
    pub fn in_box(&self, t: usize) -> bool {
        self.first() <= t && self.len() <= t
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn is_row_or_column(&self) -> bool {
        self.len() <= 1 || self.first() == 1
    }

    /// Literal form accepted by [`FromStr`], e.g. `8,1` or `2^3,1`.
    pub fn to_literal(&self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&x| x == v).count();
            if run > 1 {
                out.push(format!("{v}^{run}"));
            } else {
                out.push(v.to_string());
            }
            i += run;
        }
        out.join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Grammar: `part ("," part)*` where `part := int | int "^" int`; optional
/// surrounding parentheses; `0`, `()`, `∅` and the empty string denote the
/// empty partition. Parts must be positive and weakly decreasing.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "0" || t == "∅" {
            return Ok(Partition::empty());
        }
        let bad = |why: &str| Error::InvalidPartition(format!("{s:?}: {why}"));
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (tok, "1"),
            };
            let value: usize = base.parse().map_err(|_| bad("malformed part"))?;
            let times: usize = exp.parse().map_err(|_| bad("malformed exponent"))?;
            if value == 0 || times == 0 {
                return Err(bad("parts and exponents must be positive"));
            }
            parts.extend(std::iter::repeat_n(value, times));
        }
        Partition::new(parts).map_err(|_| bad("parts must be weakly decreasing"))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A finite sequence of nonnegative integers; zeros are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// The box set `B_n(t)`: partitions of `n` fitting in a `t × t` square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxSpec {
    pub n: usize,
    pub t: usize,
}

impl BoxSpec {
    pub fn new(n: usize, t: usize) -> Self {
        BoxSpec { n, t }
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.size() == self.n && lambda.in_box(self.t)
    }

    pub fn is_nonempty(&self) -> bool {
        self.n <= self.t * self.t
    }

    /// Members in reverse-lexicographic order.
    pub fn members(&self) -> Vec<Partition> {
        PartitionIter::new(self.n).filter(|l| l.in_box(self.t)).collect()
    }

    pub fn count(&self) -> BigUint {
        count_in_box(self.n, self.t)
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}({})", self.n, self.t)
    }
}

/// Partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub struct PartitionIter {
    current: Option<Vec<usize>>,
}

impl PartitionIter {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        PartitionIter { current: Some(first) }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted(cur.clone());
        // rightmost part > 1 gets decremented; the freed weight is packed
        // greedily into parts no larger than the new value
        let mut parts = cur;
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let v = last - 1;
            let mut rem = ones + 1 + v;
            while rem > 0 {
                let take = rem.min(v);
                parts.push(take);
                rem -= take;
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    PartitionIter::new(n).collect()
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

pub fn in_box(lambda: &Partition, t: usize) -> bool {
    lambda.in_box(t)
}

/// `|B_n(t)|` by dynamic programming over (weight, largest part, rows).
pub fn count_in_box(n: usize, t: usize) -> BigUint {
    let rows = t.min(n);
    let max_part = t.min(n);
    // table[w][r]: partitions of w into at most r parts, parts <= current m
    let mut table = vec![vec![BigUint::zero(); rows + 1]; n + 1];
    for r in 0..=rows {
        table[0][r] = BigUint::one();
    }
    for m in 1..=max_part {
        for w in m..=n {
            for r in 1..=rows {
                let add = table[w - m][r - 1].clone();
                table[w][r] += add;
            }
        }
    }
    table[n][rows].clone()
}

/// `|P(n)|`.
pub fn partition_count(n: usize) -> BigUint {
    count_in_box(n, n)
}

/// Flattened base-`p` expansion: `n = Σ p^{e_i}` with `e_1 ≥ e_2 ≥ …`, each
/// exponent repeated as often as its digit.
pub fn p_adic_expansion(n: u64, p: u64) -> Result<Vec<u32>> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            detail: "p-adic expansion needs n >= 1".into(),
        });
    }
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    let mut out = Vec::new();
    for (e, &d) in digits.iter().enumerate().rev() {
        out.extend(std::iter::repeat_n(e as u32, d as usize));
    }
    Ok(out)
}

/// Dense indexing of the partitions of a fixed `n`.
#[derive(Clone, Debug)]
pub struct PartitionIndex {
    list: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl PartitionIndex {
    pub fn new(n: usize) -> Self {
        let list = enumerate_partitions(n);
        let index = list.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        PartitionIndex { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.list[i]
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Partition> {
        self.list.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four = enumerate_partitions(4);
        assert_eq!(four.len(), 5);
        assert_eq!(four[0], p(&[4]));
        assert_eq!(four[1], p(&[3, 1]));
        assert_eq!(four[2], p(&[2, 2]));
        assert_eq!(four[4], p(&[1, 1, 1, 1]));
        assert_eq!(enumerate_partitions(9).len(), 30);
    }

    #[test]
    fn enumeration_is_strictly_decreasing_in_lex_order() {
        for n in 0..16 {
            let all = enumerate_partitions(n);
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
            assert!(all.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::row(7).conjugate(), Partition::column(7));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn box_membership() {
        assert!(p(&[2, 2]).in_box(2));
        assert!(!p(&[3, 1]).in_box(2));
        assert!(!Partition::row(9).in_box(8));
    }

    #[test]
    fn box_counts() {
        assert_eq!(count_in_box(4, 2), BigUint::from(1u32));
        assert_eq!(count_in_box(9, 8), BigUint::from(28u32));
        assert_eq!(count_in_box(0, 0), BigUint::from(1u32));
        assert_eq!(count_in_box(5, 0), BigUint::zero());
        assert_eq!(partition_count(100), "190569292".parse::<BigUint>().unwrap());
        // exceeds u64
        assert_eq!(
            partition_count(200),
            "3972999029388".parse::<BigUint>().unwrap()
        );
    }

    #[test]
    fn p_adic() {
        assert_eq!(p_adic_expansion(39, 3).unwrap(), vec![3, 2, 1]);
        assert_eq!(p_adic_expansion(12, 3).unwrap(), vec![2, 1]);
        assert_eq!(p_adic_expansion(81, 3).unwrap(), vec![4]);
        assert_eq!(p_adic_expansion(33, 3).unwrap(), vec![3, 1, 1]);
        assert_eq!(p_adic_expansion(12, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn literal_grammar() {
        assert_eq!("8,1".parse::<Partition>().unwrap(), p(&[8, 1]));
        assert_eq!("2^3,1".parse::<Partition>().unwrap(), p(&[2, 2, 2, 1]));
        assert_eq!("(3, 1^2)".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("3,,1".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[5, 2, 2, 2, 1]).to_literal(), "5,2^3,1");
    }

    #[test]
    fn constructor_validates() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 0, 3]), p(&[3, 1]));
    }

    #[test]
    fn partition_index_roundtrip() {
        let idx = PartitionIndex::new(7);
        assert_eq!(idx.len(), 15);
        for (i, l) in idx.iter().enumerate() {
            assert_eq!(idx.index_of(l), Some(i));
        }
    }
}
