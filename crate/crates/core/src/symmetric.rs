//! Character values and degrees of symmetric groups.
//!
//! Values are computed with the Murnaghan–Nakayama rule on beta-sets, memoized
//! by `(shape, remaining cycles)`. The largest cycle is always stripped first.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{require_prime, Error, Result};
use crate::partitions::Partition;

/// Cycle type of a permutation, stored as a partition of its degree.
pub type CycleType = Partition;

type MnKey = (Vec<usize>, Vec<usize>);

static MN_CACHE: LazyLock<RwLock<HashMap<MnKey, BigInt>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `f^λ` by the hook length formula.
pub fn dimension(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let h = row - j + conj.part(j) - i - 1;
            hooks *= h as u64;
        }
    }
    factorial(lambda.size()) / hooks
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Sign of a permutation with the given cycle type.
pub fn sign(ct: &CycleType) -> i32 {
    let even_cycles = ct.parts().iter().filter(|&&c| c % 2 == 0).count();
    if even_cycles % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Centralizer order `z_ρ = Π k^{m_k} m_k!` of a permutation of cycle type `ρ`.
pub fn centralizer_order(ct: &CycleType) -> BigUint {
    let mut out = BigUint::one();
    let mut i = 0;
    let parts = ct.parts();
    while i < parts.len() {
        let k = parts[i];
        let m = parts[i..].iter().take_while(|&&x| x == k).count();
        out *= BigUint::from(k as u64).pow(m as u32) * factorial(m);
        i += m;
    }
    out
}

/// Size of the conjugacy class of cycle type `ρ` in `S_n`.
pub fn class_size(ct: &CycleType) -> BigUint {
    factorial(ct.size()) / centralizer_order(ct)
}

/// `χ^λ` evaluated at a permutation of cycle type `ct`.
pub fn mn_value(lambda: &Partition, ct: &CycleType) -> Result<BigInt> {
    if lambda.size() != ct.size() {
        return Err(Error::InvalidPartition(format!(
            "character {lambda} of S_{} evaluated at cycle type {ct} of S_{}",
            lambda.size(),
            ct.size()
        )));
    }
    Ok(mn_rec(lambda.parts(), ct.parts()))
}

fn mn_rec(shape: &[usize], cycles: &[usize]) -> BigInt {
    if cycles.is_empty() {
        return BigInt::one();
    }
    if cycles.iter().all(|&c| c == 1) {
        return BigInt::from(dimension(&Partition::from_sorted(shape.to_vec())));
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = MN_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let r = cycles[0];
    let rest = &cycles[1..];
    let mut total = BigInt::zero();
    for (smaller, negative) in remove_rim_hooks(shape, r) {
        let v = mn_rec(&smaller, rest);
        if negative {
            total -= v;
        } else {
            total += v;
        }
    }
    MN_CACHE.write().unwrap().insert(key, total.clone());
    total
}

/// All shapes obtained by removing an `r`-rim hook, with the parity of the
/// hook's leg length (true = odd).
fn remove_rim_hooks(shape: &[usize], r: usize) -> Vec<(Vec<usize>, bool)> {
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &x)| x + len - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        // beads strictly between target and b sit at indices i+1.. with value > target
        let between = beta[i + 1..].iter().filter(|&&x| x > target).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&x| x > 0)
            .collect();
        out.push((parts, between % 2 == 1));
    }
    out
}

/// Multiplicities of the linear characters `φ_0, …, φ_{p-1}` of a cyclic
/// group generated by a `p`-cycle in `χ^λ`, `λ ⊢ p`. `φ_0` is trivial.
pub fn restrict_to_cyclic(lambda: &Partition, p: u64) -> Result<Vec<BigUint>> {
    require_prime(p)?;
    if lambda.size() as u64 != p {
        return Err(Error::InvalidPartition(format!(
            "{lambda} is not a partition of {p}"
        )));
    }
    let f = BigInt::from(dimension(lambda));
    let at_cycle = mn_value(lambda, &Partition::row(p as usize))?;
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(p as usize);
    for j in 0..p {
        let correction = if j == 0 { &pb - 1 } else { BigInt::from(-1) };
        let num = &f + &at_cycle * correction;
        let (q, r) = num.div_rem(&pb);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Inconsistency(format!(
                "restriction of {lambda} to C_{p} has non-integral multiplicity {num}/{p}"
            )));
        }
        out.push(q.to_biguint().expect("nonnegative"));
    }
    Ok(out)
}

/// Convenience for hot loops: the value as `i128`, failing on overflow.
pub(crate) fn mn_value_i128(lambda: &Partition, ct: &CycleType) -> Result<i128> {
    let v = mn_value(lambda, ct)?;
    v.to_i128().ok_or_else(|| {
        Error::ScopeExceeded(format!("character value χ^{lambda}({ct}) exceeds 128 bits"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&Partition::row(6)), BigUint::one());
        assert_eq!(dimension(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(dimension(&p(&[5, 4])), BigUint::from(42u32));
        assert_eq!(dimension(&Partition::empty()), BigUint::one());
    }

    #[test]
    fn dimension_counts_standard_tableaux() {
        // f^λ = Σ f^{λ - corner}
        fn syt(shape: &[usize]) -> u64 {
            if shape.iter().sum::<usize>() == 0 {
                return 1;
            }
            let mut total = 0;
            for i in 0..shape.len() {
                let next = shape.get(i + 1).copied().unwrap_or(0);
                if shape[i] > next {
                    let mut s = shape.to_vec();
                    s[i] -= 1;
                    total += syt(&s);
                }
            }
            total
        }
        for n in 1..=10 {
            for l in enumerate_partitions(n) {
                assert_eq!(dimension(&l), BigUint::from(syt(l.parts())), "{l}");
            }
        }
    }

    #[test]
    fn mn_examples() {
        assert_eq!(mn_value(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
        assert_eq!(mn_value(&p(&[2, 2]), &p(&[4])).unwrap(), BigInt::zero());
        for prime in [3usize, 5, 7] {
            for r in 0..prime {
                let mut parts = vec![prime - r];
                parts.extend(std::iter::repeat_n(1, r));
                let hook = Partition::from_unsorted(parts);
                let expect = if r % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    mn_value(&hook, &Partition::row(prime)).unwrap(),
                    BigInt::from(expect)
                );
            }
        }
        assert!(mn_value(&p(&[2, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn identity_value_is_dimension() {
        for l in enumerate_partitions(8) {
            let v = mn_value(&l, &Partition::column(8)).unwrap();
            assert_eq!(v, BigInt::from(dimension(&l)));
        }
    }

    #[test]
    fn row_orthogonality() {
        for n in 1..=8 {
            let parts = enumerate_partitions(n);
            let nfact = BigInt::from(factorial(n));
            for a in &parts {
                for b in &parts {
                    let mut s = BigInt::zero();
                    for ct in &parts {
                        s += BigInt::from(class_size(ct))
                            * mn_value(a, ct).unwrap()
                            * mn_value(b, ct).unwrap();
                    }
                    let expect = if a == b { nfact.clone() } else { BigInt::zero() };
                    assert_eq!(s, expect, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        for n in 1..=8 {
            let parts = enumerate_partitions(n);
            for l in &parts {
                for ct in &parts {
                    assert_eq!(
                        mn_value(l, ct).unwrap(),
                        mn_value(&l.conjugate(), ct).unwrap() * sign(ct)
                    );
                }
            }
        }
    }

    #[test]
    fn cyclic_restriction() {
        let one = BigUint::one;
        let zero = BigUint::zero;
        assert_eq!(restrict_to_cyclic(&p(&[3]), 3).unwrap(), vec![one(), zero(), zero()]);
        assert_eq!(restrict_to_cyclic(&p(&[2, 1]), 3).unwrap(), vec![zero(), one(), one()]);
        let mut expect = vec![zero(); 5];
        expect[0] = one();
        assert_eq!(restrict_to_cyclic(&Partition::column(5), 5).unwrap(), expect);
    }

    #[test]
    fn cyclic_restriction_nontrivial_parts_agree() {
        for prime in [3u64, 5, 7] {
            for l in enumerate_partitions(prime as usize) {
                let m = restrict_to_cyclic(&l, prime).unwrap();
                assert!(m[1..].iter().all(|x| *x == m[1]));
                let total: BigUint = m.iter().sum();
                assert_eq!(total, dimension(&l));
            }
        }
    }
}
