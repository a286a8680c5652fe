use sylow_branching::combinatorics::{alpha, alpha_prime_power, ordered_r};
use sylow_branching::theorem::{
    cell_text, omega_predicted, omega_predicted_recursive, omega_ratio, render_table,
    t_prime_closed, t_prime_recursive, T_by_enumeration, T_general_closed, T_general_recursive,
    TableFormat,
};
use sylow_branching::{BoxSpec, Error};

#[test]
fn prime_power_closed_form_matches_recursion() {
    for (p, max_n) in [(3u64, 7u32), (5, 4)] {
        for n in 1..=max_n {
            let a = alpha_prime_power(n, p);
            let q = p.pow(n);
            let mut prev = q;
            for k in 0..=a {
                let closed = t_prime_closed(n, k, p).unwrap().unwrap();
                assert_eq!(Some(closed), t_prime_recursive(n, k, p).unwrap(), "p={p} n={n} k={k}");
                assert!(closed >= q.div_ceil(2) && closed <= q);
                assert!(closed <= prev);
                prev = closed;
            }
            assert_eq!(t_prime_closed(n, a + 1, p).unwrap(), None);
            if n >= 2 {
                assert_eq!(t_prime_closed(n, a, p).unwrap(), Some(q - p.pow(n - 2)));
            }
        }
    }
}

#[test]
fn general_closed_form_matches_recursion() {
    for n in 1..=250u64 {
        let a = alpha(n, 3).unwrap();
        let mut prev = n;
        for k in 1..=a {
            let closed = T_general_closed(n, k, 3).unwrap().unwrap();
            assert_eq!(Some(closed), T_general_recursive(n, k, 3).unwrap(), "n={n} k={k}");
            assert!(closed == prev || closed + 1 == prev, "step at n={n} k={k}");
            prev = closed;
            if n <= 60 {
                assert_eq!(Some(closed), T_by_enumeration(n, k, 3).unwrap());
            }
        }
        assert_eq!(T_general_closed(n, a + 1, 3).unwrap(), None);
    }
}

#[test]
fn deficits_are_counted_by_block_lengths() {
    for n in 9..=250u64 {
        let table = ordered_r(n, 3).unwrap();
        let a = alpha(n, 3).unwrap();
        for (x, &len) in table.lengths.iter().enumerate() {
            let count = (1..=a)
                .filter(|&k| T_general_closed(n, k, 3).unwrap() == Some(n - x as u64 - 1))
                .count() as u64;
            assert_eq!(count, len, "n={n} x={}", x + 1);
        }
    }
}

#[test]
fn worked_examples() {
    assert_eq!(t_prime_recursive(4, 4, 3).unwrap(), Some(79));
    assert_eq!(T_general_recursive(39, 2, 3).unwrap(), Some(38));
    for k in 1..=alpha(36, 3).unwrap() {
        let t36 = T_general_closed(36, k, 3).unwrap().unwrap();
        assert_eq!(T_general_closed(39, k, 3).unwrap(), Some(t36 + 3));
    }
}

#[test]
fn small_n_answers() {
    let a = omega_predicted(8, 0, 3).unwrap();
    assert_eq!(a.boxed, Some(BoxSpec::new(8, 8)));
    assert!(omega_predicted(8, 1, 3).unwrap().is_empty());
    assert_eq!(omega_predicted(81, 4, 3).unwrap().to_string(), "B_81(79)");
    for n in 1..=120u64 {
        for k in 0..=alpha(n, 3).unwrap() + 1 {
            assert_eq!(
                omega_predicted(n, k, 3).unwrap().boxed,
                omega_predicted_recursive(n, k, 3).unwrap().boxed
            );
        }
    }
}

#[test]
fn p_two_is_rejected() {
    assert!(matches!(omega_predicted(4, 1, 2), Err(Error::PrimeTwo)));
    assert!(matches!(t_prime_closed(2, 1, 2), Err(Error::PrimeTwo)));
    assert!(matches!(T_general_recursive(8, 1, 2), Err(Error::PrimeTwo)));
    assert!(omega_predicted(9, 1, 9).is_err());
}

#[test]
fn cells() {
    let cell = |n, k| cell_text(&omega_predicted(n, k, 3).unwrap(), true);
    assert_eq!(cell(3, 0), "$\\mathcal{B}_{3}(3)$");
    assert_eq!(cell(27, 3), "$\\mathcal{B}_{3^3}(3^3 -2)$");
    assert_eq!(cell(30, 3), "$\\mathcal{B}_n(n -2)$");
    assert_eq!(cell(9, 2), "$\\emptyset$");
    assert_eq!(cell_text(&omega_predicted(9, 1, 3).unwrap(), false), "B_{3^2}(3^2 -1)");
}

#[test]
fn single_column_table() {
    let csv = render_table(&[9], 3, 3, TableFormat::Csv).unwrap();
    assert_eq!(csv, "n,k,T,empty\n9,0,9,false\n9,1,8,false\n9,2,,true\n9,3,,true\n");
    let json = render_table(&[9], 1, 3, TableFormat::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["cells"].as_array().map(|a| a.len()), Some(2));
    assert_eq!(v["cells"][1]["box"]["t"], 8);
    let md = render_table(&[9], 2, 3, TableFormat::Markdown).unwrap();
    assert_eq!(md.lines().count(), 5);
    assert!(md.contains("B_{3^2}(3^2 -1)"));
}

#[test]
fn ratios_increase() {
    let r9 = omega_ratio(9, 3).unwrap();
    assert_eq!(r9.to_string(), "14/15");
    let mut prev = r9.ratio.clone();
    for n in [27u64, 81, 200] {
        let r = omega_ratio(n, 3).unwrap();
        assert!(r.ratio > prev);
        assert!(r.to_f64() < 1.0);
        prev = r.ratio;
    }
}
