//! Littlewood–Richardson coefficients.
//!
//! Coefficients count LR tableaux: column-strict fillings of a skew shape whose
//! reverse reading word (rows top to bottom, each read right to left) is a
//! lattice word. Two enumerators are provided: filling a fixed skew shape
//! `λ/μ` (used for coefficients and skew decompositions), and growing `μ` by
//! horizontal strips (used for outer products).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partitions::Partition;

type Triple = (Partition, Partition, Partition);

static LR_CACHE: LazyLock<RwLock<HashMap<Triple, u64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

static MULTI_CACHE: LazyLock<RwLock<HashMap<(Partition, Vec<Partition>), BigUint>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Restrictions on the content of LR tableaux, used for pruning.
#[derive(Clone, Debug, Default)]
pub struct ContentBounds<'a> {
    /// Exact content required.
    pub exact: Option<&'a [usize]>,
    /// Largest entry allowed (bounds the length of the content).
    pub max_value: Option<usize>,
    /// Largest number of 1s allowed (bounds the first part of the content).
    pub max_ones: Option<usize>,
    /// Stop at the first tableau found.
    pub first_only: bool,
}

struct SkewFiller<'a> {
    outer: &'a [usize],
    inner: Vec<usize>,
    bounds: ContentBounds<'a>,
    content: Vec<usize>,
    rows: Vec<Vec<usize>>,
    found: BTreeMap<Vec<usize>, u64>,
    stop: bool,
}

impl<'a> SkewFiller<'a> {
    fn new(outer: &'a [usize], inner: &[usize], bounds: ContentBounds<'a>) -> Self {
        let mut padded = inner.to_vec();
        padded.resize(outer.len(), 0);
        let cap = outer.len() + 1;
        SkewFiller {
            outer,
            inner: padded,
            bounds,
            content: vec![0; cap + 1],
            rows: outer.iter().map(|&x| vec![0; x]).collect(),
            found: BTreeMap::new(),
            stop: false,
        }
    }

    fn run(&mut self) {
        self.fill_row(0);
    }

    fn fill_row(&mut self, r: usize) {
        if self.stop {
            return;
        }
        if r == self.outer.len() {
            let mut c: Vec<usize> = self.content[1..].to_vec();
            while c.last() == Some(&0) {
                c.pop();
            }
            if let Some(exact) = self.bounds.exact {
                if c != exact {
                    return;
                }
            }
            *self.found.entry(c).or_insert(0) += 1;
            if self.bounds.first_only {
                self.stop = true;
            }
            return;
        }
        let start = self.inner[r];
        let old = self.content.clone();
        self.fill_cell(r, start, 1, &old);
    }

    fn fill_cell(&mut self, r: usize, col: usize, min_v: usize, old: &[usize]) {
        if self.stop {
            return;
        }
        if col == self.outer[r] {
            self.fill_row(r + 1);
            return;
        }
        let mut lo = min_v;
        if r > 0 && col >= self.inner[r - 1] && col < self.outer[r - 1] {
            lo = lo.max(self.rows[r - 1][col] + 1);
        }
        let mut hi = r + 1;
        if let Some(m) = self.bounds.max_value {
            hi = hi.min(m);
        }
        if let Some(exact) = self.bounds.exact {
            hi = hi.min(exact.len());
        }
        for v in lo..=hi {
            let now = self.content[v];
            if v == 1 {
                if let Some(m) = self.bounds.max_ones {
                    if now + 1 > m {
                        continue;
                    }
                }
            } else if now + 1 > old[v - 1] {
                // lattice: old[v] + (this row's v's) <= old[v-1]
                continue;
            }
            if let Some(exact) = self.bounds.exact {
                if now + 1 > exact[v - 1] {
                    continue;
                }
            }
            self.content[v] += 1;
            self.rows[r][col] = v;
            self.fill_cell(r, col + 1, v, old);
            self.content[v] -= 1;
            if self.stop {
                return;
            }
        }
    }
}

/// LR tableaux of shape `outer/inner`, grouped by content. The entry for `ν`
/// is `LR(outer; inner, ν)`.
pub fn skew_decompose(
    outer: &Partition,
    inner: &Partition,
    bounds: ContentBounds<'_>,
) -> Vec<(Partition, u64)> {
    if !outer.contains(inner) {
        return Vec::new();
    }
    let mut filler = SkewFiller::new(outer.parts(), inner.parts(), bounds);
    filler.run();
    filler
        .found
        .into_iter()
        .rev()
        .map(|(c, k)| (Partition::from_sorted(c), k))
        .collect()
}

fn lr_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if lambda.first() > mu.first() + nu.first() || lambda.len() > mu.len() + nu.len() {
        return 0;
    }
    // symmetric in (mu, nu): fill the smaller skew shape's complement
    let (inner, content) = if mu >= nu { (mu, nu) } else { (nu, mu) };
    let key = (lambda.clone(), inner.clone(), content.clone());
    if let Some(&v) = LR_CACHE.read().unwrap().get(&key) {
        return v;
    }
    let bounds = ContentBounds {
        exact: Some(content.parts()),
        ..Default::default()
    };
    let v = skew_decompose(lambda, inner, bounds)
        .into_iter()
        .map(|(_, k)| k)
        .sum();
    LR_CACHE.write().unwrap().insert(key, v);
    v
}

type SkewKey = (Partition, Partition);

static SKEW_CACHE: LazyLock<RwLock<HashMap<SkewKey, Arc<Vec<(Partition, u64)>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// [`skew_decompose`] without bounds, memoized by `(outer, inner)`.
pub fn skew_decompose_cached(outer: &Partition, inner: &Partition) -> Arc<Vec<(Partition, u64)>> {
    let key = (outer.clone(), inner.clone());
    if let Some(v) = SKEW_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(skew_decompose(outer, inner, ContentBounds::default()));
    SKEW_CACHE.write().unwrap().insert(key, v.clone());
    v
}

/// `LR(λ; μ, ν)`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(lr_count(lambda, mu, nu))
}

/// Whether `LR(λ; μ, ν) > 0`, stopping at the first witness tableau.
pub fn lr_positive(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return false;
    }
    if lambda.first() > mu.first() + nu.first() || lambda.len() > mu.len() + nu.len() {
        return false;
    }
    if let Some(&v) = LR_CACHE.read().unwrap().get(&(lambda.clone(), mu.clone(), nu.clone())) {
        return v > 0;
    }
    let bounds = ContentBounds {
        exact: Some(nu.parts()),
        first_only: true,
        ..Default::default()
    };
    !skew_decompose(lambda, mu, bounds).is_empty()
}

/// `LR(λ; μ_1, …, μ_k)`, the multiplicity of `χ^λ` in the induced outer
/// product of the `χ^{μ_i}`.
pub fn multi_lr(lambda: &Partition, mus: &[Partition]) -> BigUint {
    let total: usize = mus.iter().map(Partition::size).sum();
    if total != lambda.size() {
        return BigUint::zero();
    }
    let mus: Vec<Partition> = mus.iter().filter(|m| !m.is_empty()).cloned().collect();
    match mus.len() {
        0 => return BigUint::from(lambda.is_empty() as u32),
        1 => return BigUint::from((*lambda == mus[0]) as u32),
        2 => return lr_coefficient(lambda, &mus[0], &mus[1]),
        _ => {}
    }
    if !fits_bounds(lambda, &mus) {
        return BigUint::zero();
    }
    let key = (lambda.clone(), mus.clone());
    if let Some(v) = MULTI_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let rest = &mus[1..];
    let max_ones: usize = rest.iter().map(Partition::first).sum();
    let max_value: usize = rest.iter().map(Partition::len).sum();
    let bounds = ContentBounds {
        max_ones: Some(max_ones),
        max_value: Some(max_value),
        ..Default::default()
    };
    let mut total = BigUint::zero();
    for (nu, c) in skew_decompose(lambda, &mus[0], bounds) {
        if rest.iter().any(|m| !nu.contains(m)) {
            continue;
        }
        let inner = multi_lr(&nu, rest);
        if !inner.is_zero() {
            total += inner * c;
        }
    }
    MULTI_CACHE.write().unwrap().insert(key, total.clone());
    total
}

/// First-part and length bounds: a nonzero `LR(λ; μ_1, …, μ_k)` forces
/// `λ_1 ≤ Σ (μ_j)_1` and, by conjugation, `l(λ) ≤ Σ l(μ_j)`.
pub fn fits_bounds(lambda: &Partition, mus: &[Partition]) -> bool {
    let first: usize = mus.iter().map(Partition::first).sum();
    let len: usize = mus.iter().map(Partition::len).sum();
    lambda.first() <= first && lambda.len() <= len && mus.iter().all(|m| lambda.contains(m))
}

/// Expansion of `χ^a × χ^b` induced to `S_{|a|+|b|}`, by adding the rows of
/// `b` to `a` as labelled horizontal strips.
pub fn outer_product(a: &Partition, b: &Partition) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    let rows = a.len() + b.len();
    let mut shape: Vec<usize> = a.parts().to_vec();
    shape.resize(rows, 0);
    // counts[r][v]: number of entries v+1 in row r
    let mut counts = vec![vec![0usize; b.len() + 1]; rows];
    grow(&mut shape, &mut counts, b.parts(), 0, &mut out);
    out
}

fn grow(
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    content: &[usize],
    v: usize,
    out: &mut BTreeMap<Partition, u64>,
) {
    if v == content.len() {
        let lam = Partition::from_sorted(shape.iter().copied().filter(|&x| x > 0).collect());
        *out.entry(lam).or_insert(0) += 1;
        return;
    }
    let before = shape.clone();
    add_strip(shape, counts, content, v, 0, content[v], 0, 0, &before, out);
}

#[allow(clippy::too_many_arguments)]
fn add_strip(
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    content: &[usize],
    v: usize,
    r: usize,
    remaining: usize,
    prefix_v: usize,
    prefix_prev: usize,
    before: &[usize],
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        grow(shape, counts, content, v + 1, out);
        return;
    }
    if r == shape.len() {
        return;
    }
    let room = if r == 0 {
        remaining
    } else {
        (before[r - 1] - before[r]).min(remaining)
    };
    // lattice: entries v+1 read so far (earlier rows plus this row) must not
    // exceed entries v in earlier rows
    let lattice_room = if v == 0 {
        room
    } else {
        prefix_prev.saturating_sub(prefix_v).min(room)
    };
    let prev_here = if v == 0 { 0 } else { counts[r][v - 1] };
    for x in 0..=lattice_room {
        shape[r] += x;
        counts[r][v] += x;
        add_strip(
            shape,
            counts,
            content,
            v,
            r + 1,
            remaining - x,
            prefix_v + x,
            prefix_prev + prev_here,
            before,
            out,
        );
        shape[r] -= x;
        counts[r][v] -= x;
    }
}

/// Constituents of the induced outer product of the `χ^{μ_i}` with their
/// multiplicities.
pub fn outer_decompose(mus: &[Partition]) -> BTreeMap<Partition, BigUint> {
    let mut acc: BTreeMap<Partition, BigUint> = BTreeMap::new();
    acc.insert(Partition::empty(), BigUint::from(1u32));
    for mu in mus {
        let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (shape, c) in &acc {
            for (lam, k) in outer_product(shape, mu) {
                *next.entry(lam).or_insert_with(BigUint::zero) += c * BigUint::from(k);
            }
        }
        acc = next;
    }
    acc
}

/// `A ⋆ B`: every `λ` with a positive coefficient against some `μ ∈ A`, `ν ∈ B`.
pub fn star_product(a: &BTreeSet<Partition>, b: &BTreeSet<Partition>) -> Result<BTreeSet<Partition>> {
    let wa = common_weight(a, "left")?;
    let wb = common_weight(b, "right")?;
    let mut out = BTreeSet::new();
    if wa.is_none() || wb.is_none() {
        return Ok(out);
    }
    for mu in a {
        for nu in b {
            out.extend(outer_product(mu, nu).into_keys());
        }
    }
    Ok(out)
}

fn common_weight(set: &BTreeSet<Partition>, side: &str) -> Result<Option<usize>> {
    let mut it = set.iter().map(Partition::size);
    let Some(w) = it.next() else {
        return Ok(None);
    };
    if it.any(|x| x != w) {
        return Err(Error::MixedWeights(format!(
            "{side} operand of the star product mixes partitions of different sizes"
        )));
    }
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, BoxSpec};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2]), &p(&[1])), BigUint::from(1u32));
        assert_eq!(
            lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])),
            BigUint::from(2u32)
        );
        for l in enumerate_partitions(6) {
            assert_eq!(lr_coefficient(&l, &l, &Partition::empty()), BigUint::from(1u32));
        }
        assert!(lr_coefficient(&p(&[3]), &p(&[1, 1]), &p(&[1])).is_zero());
        assert!(lr_coefficient(&p(&[3]), &p(&[2]), &p(&[2])).is_zero());
    }

    #[test]
    fn multi_examples() {
        assert_eq!(
            multi_lr(&p(&[3, 2, 1]), &[p(&[2, 1]), p(&[2, 1])]),
            BigUint::from(2u32)
        );
        assert_eq!(multi_lr(&p(&[6]), &[p(&[3]), p(&[2]), p(&[1])]), BigUint::from(1u32));
        let nine = Partition::row(9);
        for a in enumerate_partitions(3) {
            for b in enumerate_partitions(3) {
                for c in enumerate_partitions(3) {
                    let expect = (a == Partition::row(3) && b == a && c == a) as u32;
                    assert_eq!(
                        multi_lr(&nine, &[a.clone(), b.clone(), c.clone()]),
                        BigUint::from(expect)
                    );
                }
            }
        }
    }

    #[test]
    fn outer_examples() {
        let two = outer_decompose(&[p(&[1]), p(&[1])]);
        assert_eq!(two.len(), 2);
        assert_eq!(two[&p(&[2])], BigUint::from(1u32));
        assert_eq!(two[&p(&[1, 1])], BigUint::from(1u32));
        let mixed = outer_decompose(&[p(&[2]), p(&[1, 1])]);
        assert_eq!(mixed.len(), 2);
        assert_eq!(mixed[&p(&[3, 1])], BigUint::from(1u32));
        assert_eq!(mixed[&p(&[2, 1, 1])], BigUint::from(1u32));
    }

    #[test]
    fn outer_product_agrees_with_skew_counting() {
        for n in 0..=5 {
            for m in 0..=5 {
                for a in enumerate_partitions(n) {
                    for b in enumerate_partitions(m) {
                        let prod = outer_product(&a, &b);
                        for lam in enumerate_partitions(n + m) {
                            let direct = lr_count(&lam, &a, &b);
                            assert_eq!(prod.get(&lam).copied().unwrap_or(0), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn star_identity_and_pieri() {
        let a: BTreeSet<_> = BoxSpec::new(5, 4).members().into_iter().collect();
        let unit: BTreeSet<_> = [Partition::empty()].into_iter().collect();
        assert_eq!(star_product(&unit, &a).unwrap(), a);
        let (n, m) = (4, 3);
        let rows = star_product(
            &[Partition::row(n)].into_iter().collect(),
            &[Partition::row(m)].into_iter().collect(),
        )
        .unwrap();
        let expect: BTreeSet<_> = enumerate_partitions(n + m)
            .into_iter()
            .filter(|l| l.len() <= 2 && l.part(1) <= n.min(m))
            .collect();
        assert_eq!(rows, expect);
    }

    #[test]
    fn star_box_example() {
        let a: BTreeSet<_> = BoxSpec::new(4, 3).members().into_iter().collect();
        let b: BTreeSet<_> = BoxSpec::new(5, 4).members().into_iter().collect();
        let expect: BTreeSet<_> = BoxSpec::new(9, 7).members().into_iter().collect();
        assert_eq!(star_product(&a, &b).unwrap(), expect);
    }

    #[test]
    fn star_rejects_mixed_weights() {
        let a: BTreeSet<_> = [p(&[2]), p(&[3])].into_iter().collect();
        let b: BTreeSet<_> = [p(&[1])].into_iter().collect();
        assert!(matches!(star_product(&a, &b), Err(Error::MixedWeights(_))));
    }

    #[test]
    fn positivity_matches_count() {
        for lam in enumerate_partitions(7) {
            for k in 0..=7 {
                for mu in enumerate_partitions(k) {
                    for nu in enumerate_partitions(7 - k) {
                        assert_eq!(lr_positive(&lam, &mu, &nu), lr_count(&lam, &mu, &nu) > 0);
                    }
                }
            }
        }
    }
}
