use std::collections::BTreeSet;

use num_bigint::BigUint;
use sylow_branching::lr::star_product;
use sylow_branching::oracle::{
    degree_set, omega_oracle, oracle_recursive, oracle_table, partial_max, restrict,
    seeded_sample, Method, DEFAULT_SEED,
};
use sylow_branching::partitions::enumerate_partitions;
use sylow_branching::symmetric::dimension;
use sylow_branching::theorem::{omega_predicted, t_prime_closed};
use sylow_branching::{BoxSpec, Error, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn methods_agree_and_conserve_dimension() {
    for (prime, m) in [(3u64, 2u32), (2, 2), (2, 3), (5, 2)] {
        let n = prime.pow(m) as usize;
        let all = enumerate_partitions(n);
        let picked: Vec<&Partition> = if all.len() > 200 { all.iter().step_by(40).collect() } else { all.iter().collect() };
        for lambda in picked {
            let a = oracle_table(lambda, prime, m).unwrap();
            let b = oracle_recursive(lambda, prime, m).unwrap();
            assert_eq!(a.raw(), b.raw(), "{lambda} at p = {prime}");
            assert_eq!(a.dimension(), dimension(lambda));
        }
    }
}

#[test]
fn sampled_27_agree() {
    let sample = seeded_sample(27, 8, DEFAULT_SEED);
    assert_eq!(sample, seeded_sample(27, 8, DEFAULT_SEED));
    for lambda in &sample {
        let a = oracle_table(lambda, 3, 3).unwrap();
        let b = oracle_recursive(lambda, 3, 3).unwrap();
        assert_eq!(a.raw(), b.raw(), "{lambda}");
        assert_eq!(b.dimension(), dimension(lambda));
    }
}

#[test]
fn degree_sets_at_nine() {
    for lambda in enumerate_partitions(9) {
        let v = restrict(&lambda, 3, 2, Method::Table).unwrap();
        let ds = v.degree_set();
        assert!(ds.is_initial_interval(), "{lambda}: {ds}");
        assert_eq!(ds, restrict(&lambda.conjugate(), 3, 2, Method::Table).unwrap().degree_set());
        assert_eq!(ds.max(), Some(partial_max(&lambda, 3, 2).unwrap()));
        if !lambda.is_row_or_column() {
            for k in ds.iter() {
                let distinct = v.nonzero().filter(|&(i, _)| v.exponent(i) == k).count();
                assert!(distinct >= 2, "{lambda} has one constituent of degree 3^{k}");
            }
        }
    }
}

#[test]
fn omega_nine_matches_prediction() {
    for k in 0..=2 {
        let predicted = omega_predicted(9, k, 3).unwrap();
        let want = predicted.boxed.map(|b| b.members()).unwrap_or_default();
        assert_eq!(omega_oracle(9, 3, k, Method::Table).unwrap(), want, "k = {k}");
        assert_eq!(omega_oracle(9, 3, k, Method::Recursive).unwrap(), want, "k = {k}");
    }
}

#[test]
fn star_of_omegas_lands_in_omega() {
    let set = |v: Vec<Partition>| -> BTreeSet<Partition> { v.into_iter().collect() };
    let o1 = set(omega_oracle(9, 3, 1, Method::Table).unwrap());
    let o0 = set(omega_oracle(9, 3, 0, Method::Table).unwrap());
    let prod = star_product(&star_product(&o1, &o0).unwrap(), &o0).unwrap();
    let t = t_prime_closed(3, 2, 3).unwrap().unwrap() as usize;
    let target = set(BoxSpec::new(27, t).members());
    assert!(prod.is_subset(&target));
    for lambda in prod.iter().step_by(97) {
        assert!(degree_set(lambda, 3, Method::Recursive).unwrap().contains(2), "{lambda}");
    }
}

#[test]
fn composite_degree_sets() {
    assert_eq!(degree_set(&p("11,1"), 3, Method::Auto).unwrap().to_string(), "{0, 1}");
    assert_eq!(degree_set(&Partition::row(12), 3, Method::Auto).unwrap().to_string(), "{0}");
    let twelve = omega_oracle(12, 3, 1, Method::Auto).unwrap();
    assert_eq!(twelve, BoxSpec::new(12, 11).members());
    assert!(omega_oracle(12, 3, 2, Method::Auto).unwrap().is_empty());
}

#[test]
fn p_two_counterexample() {
    let got = omega_oracle(4, 2, 1, Method::Table).unwrap();
    assert_eq!(got, vec![p("3,1"), p("2,1,1")]);
    assert!((0..=4).all(|t| BoxSpec::new(4, t).members() != got));
}

#[test]
fn cyclic_level() {
    let v = restrict(&p("2,1"), 3, 1, Method::Auto).unwrap();
    let mults: Vec<BigUint> = (0..v.len()).map(|i| v.get(i)).collect();
    assert_eq!(mults.iter().sum::<BigUint>(), BigUint::from(2u8));
    assert_eq!(mults[0], BigUint::from(0u8));
}

#[test]
fn errors() {
    assert!(oracle_table(&p("3,1"), 3, 2).is_err());
    assert!(restrict(&p("2,1"), 4, 1, Method::Auto).is_err());
    assert!(matches!(partial_max(&p("5,3"), 3, 2), Err(Error::InvalidPartition(_)) | Err(Error::OutOfRange { .. })));
    assert!(matches!(partial_max(&p("3,1"), 2, 2), Err(Error::PrimeTwo)));
}
