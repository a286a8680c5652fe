use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sylow_branching::combinatorics::alpha_prime_power;
use sylow_branching::cyclotomic::Cyclotomic;
use sylow_branching::wreath::{self, char_value, enumerate_classes, enumerate_irr, irr_count};
use sylow_branching::{Error, Partition};

type Perm = Vec<usize>;

/// Every element of `C_p ≀ ⋯ ≀ C_p` as a permutation of `p^m` points.
fn elements(p: usize, m: u32) -> Vec<Perm> {
    if m == 0 {
        return vec![vec![0]];
    }
    let below = elements(p, m - 1);
    let d = p.pow(m - 1);
    let mut out = Vec::new();
    let mut idx = vec![0usize; p];
    loop {
        for s in 0..p {
            let mut g = vec![0; p * d];
            for (b, &i) in idx.iter().enumerate() {
                for x in 0..d {
                    g[b * d + x] = ((b + s) % p) * d + below[i][x];
                }
            }
            out.push(g);
        }
        let mut k = 0;
        while k < p {
            idx[k] += 1;
            if idx[k] < below.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == p {
            break;
        }
    }
    out
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

fn cycle_type(g: &Perm) -> Partition {
    let mut seen = vec![false; g.len()];
    let mut parts = Vec::new();
    for s in 0..g.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = g[x];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::from_unsorted(parts)
}

/// Multiset of `(class size, cycle type)` by brute-force conjugation.
fn brute_classes(p: usize, m: u32) -> BTreeMap<(u128, Partition), usize> {
    let g = elements(p, m);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = BTreeMap::new();
    for x in &g {
        if seen.contains(x) {
            continue;
        }
        let class: HashSet<Perm> = g.iter().map(|h| compose(&compose(h, x), &inverse(h))).collect();
        *out.entry((class.len() as u128, cycle_type(x))).or_insert(0) += 1;
        seen.extend(class);
    }
    out
}

#[test]
fn classes_match_brute_force() {
    for (p, m) in [(2usize, 2u32), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let level = wreath::level(p as u64, m).unwrap();
        let mut ours = BTreeMap::new();
        for c in 0..level.irr_len() {
            *ours.entry((level.class_size(c), level.class_cycle_type(c).clone())).or_insert(0) += 1;
        }
        assert_eq!(ours, brute_classes(p, m), "P_{{{p}^{m}}}");
    }
}

#[test]
fn orthogonality_and_degrees() {
    for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        let level = wreath::level(p, m).unwrap();
        let report = level.verify();
        assert!(report.passed(), "{p},{m}: {:?}", report.failures);
        let sum_sq: u128 = level.exponents().iter().map(|&e| (p as u128).pow(2 * e as u32)).sum();
        assert_eq!(sum_sq, level.order());
    }
}

#[test]
fn degree_exponents_fill_an_interval() {
    for (p, m) in [(3u64, 1u32), (3, 2), (3, 3), (5, 2)] {
        let counts = wreath::level(p, m).unwrap().exponent_counts();
        let keys: Vec<u64> = counts.keys().copied().collect();
        assert_eq!(keys, (0..=alpha_prime_power(m, p)).collect::<Vec<_>>());
        for (&k, &c) in &counts {
            assert!(c as u64 >= p, "|Irr_{k}(P_{{{p}^{m}}})| = {c}");
        }
    }
}

#[test]
fn character_counts_follow_recursion() {
    for p in [2u64, 3, 5] {
        let mut k = p as u128;
        for m in 1..=wreath::default_max_level(p) {
            assert_eq!(irr_count(p, m), k);
            assert_eq!(wreath::level(p, m).unwrap().irr_len() as u128, k);
            k = (k.pow(p as u32) - k) / p as u128 + p as u128 * k;
        }
    }
    assert_eq!(irr_count(3, 2), 17);
}

#[test]
fn identity_value_is_the_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(3u64, 3u32), (5, 2)] {
        let irr = enumerate_irr(p, m).unwrap();
        let classes = enumerate_classes(p, m).unwrap();
        let identity = classes.iter().find(|c| c.size == BigUint::from(1u8)).unwrap();
        assert_eq!(identity.cycle_type, Partition::new(vec![1; p.pow(m) as usize]).unwrap());
        for _ in 0..50 {
            let phi = &irr[rng.gen_range(0..irr.len())];
            let v = char_value(phi, identity).unwrap();
            assert_eq!(v.as_integer(), Some(p.pow(phi.degree_exponent as u32) as i64));
        }
    }
}

#[test]
fn natural_permutation_character_decomposes() {
    for (p, m) in [(3u64, 2u32), (3, 3), (5, 2), (2, 4)] {
        let level = wreath::level(p, m).unwrap();
        let n = level.irr_len();
        let mut total = Cyclotomic::zero(p, 1).unwrap();
        for phi in 0..n {
            let mut acc = Cyclotomic::zero(p, 1).unwrap();
            for c in 0..n {
                let fixed = level.class_cycle_type(c).parts().iter().filter(|&&x| x == 1).count();
                let w = (level.class_size(c) * fixed as u128) as i64;
                acc += &level.value_at(phi, c).conj().scale(w);
            }
            let mult = acc.as_integer().expect("rational inner product");
            assert_eq!(mult % level.order() as i64, 0);
            let mult = mult / level.order() as i64;
            assert!(mult >= 0);
            if phi == 0 {
                assert_eq!(mult, 1, "transitive action");
            }
            total += &Cyclotomic::from_int(p, 1, mult * p.pow(level.exponent(phi) as u32) as i64).unwrap();
        }
        assert_eq!(total.as_integer(), Some(p.pow(m) as i64));
    }
}

#[test]
fn cross_level_evaluation_is_rejected() {
    let phi = enumerate_irr(3, 2).unwrap()[0];
    let c = enumerate_classes(3, 1).unwrap()[0].clone();
    assert!(matches!(char_value(&phi, &c), Err(Error::LevelMismatch(_))));
}
