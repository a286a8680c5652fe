//! Tiered verification suite.
//!
//! smoke: tables, worked examples, small wreath tables, n = 9, n = 12 and the
//! p = 2 control. standard adds exhaustive p = 3 sweeps up to n = 9 and the
//! combinatorial property checks. full adds the n = 27 and p = 5, n = 25
//! sweeps and the seeded table/recursive comparison.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::json;
use sylow_branching::combinatorics::{alpha, alpha_prime_power, ordered_r, Interval};
use sylow_branching::lr::star_product;
use sylow_branching::oracle::{oracle_recursive, oracle_table, seeded_sample, Method};
use sylow_branching::partitions::{count_in_box, enumerate_partitions};
use sylow_branching::theorem::{
    l_set_sorted, omega_predicted, omega_ratio, t_prime_closed, t_prime_recursive,
    table_answers, T_general_closed, T_general_recursive,
};
use sylow_branching::{wreath, BoxSpec, Partition};

use crate::commands::{as_box, Context, TABLE1_COLUMNS, TABLE2_COLUMNS};
use crate::{Failure, Format, RunConfig, Tier};

/// Published deficits `n - T` by row `k`; `-` is `∅`.
const TABLE1: [&str; 15] = [
    "0 0 0 0", "- 1 1 1", "- - 1 1", "- - 2 1", "- - 3 2", "- - - 2", "- - - 3", "- - - 3",
    "- - - 4", "- - - 5", "- - - 6", "- - - 7", "- - - 8", "- - - 9", "- - - -",
];

const TABLE2: [&str; 19] = [
    "0 0 0 0 0", "1 1 1 1 1", "1 1 1 1 1", "2 2 2 2 1", "3 3 3 2 2", "- - 4 3 2",
    "- - - 4 3", "- - - 5 3", "- - - 6 4", "- - - - 4", "- - - - 5", "- - - - 6",
    "- - - - 7", "- - - - 8", "- - - - 9", "- - - - 10", "- - - - 11", "- - - - 12",
    "- - - - -",
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn published(rows: &[&str], columns: &[u64]) -> Outcome {
    let answers = table_answers(columns, rows.len() as u64 - 1, 3).map_err(err)?;
    for (k, (row, expected)) in answers.iter().zip(rows).enumerate() {
        let want: Vec<&str> = expected.split(' ').collect();
        for (a, w) in row.iter().zip(want) {
            let got = a.side().map(|t| (a.n - t).to_string()).unwrap_or("-".into());
            ensure(got == w, || format!("n = {}, k = {k}: deficit {got}, published {w}", a.n))?;
        }
    }
    Ok(format!("{} cells", rows.len() * columns.len()))
}

fn worked_examples() -> Outcome {
    let l3 = l_set_sorted(4, 3, 3).map_err(err)?;
    ensure(l3 == [[3, 0, 0], [2, 1, 0], [1, 1, 1]], || format!("L(3) = {l3:?}"))?;
    let rec = t_prime_recursive(4, 4, 3).map_err(err)?;
    let closed = t_prime_closed(4, 4, 3).map_err(err)?;
    ensure(rec == Some(79) && closed == Some(79), || format!("t = {rec:?} / {closed:?}"))?;
    ensure(T_general_recursive(39, 2, 3).map_err(err)? == Some(38), || "T_39^2 ≠ 38".into())?;
    let blocks = ordered_r(39, 3).map_err(err)?.blocks;
    let want = [(1, 2), (3, 3), (4, 4), (5, 5)].map(|(a, b)| Interval::closed(a, b));
    ensure(blocks == want, || format!("blocks of 39: {blocks:?}"))?;
    Ok("t_4^4 = 79, T_39^2 = 38, A_1..A_4".into())
}

fn tables(levels: &[(u64, u32)]) -> Outcome {
    for &(p, m) in levels {
        let w = wreath::level(p, m).map_err(err)?;
        let report = w.verify();
        ensure(report.passed(), || format!("P_{{{p}^{m}}}: {}", report.failures.join("; ")))?;
        // the degree lemmas are for odd p: P_{2^3} has no character of degree 2^3
        if p > 2 {
            let counts = w.exponent_counts();
            let keys: Vec<u64> = counts.keys().copied().collect();
            ensure(keys == (0..=alpha_prime_power(m, p)).collect::<Vec<_>>(), || {
                format!("P_{{{p}^{m}}} attains exponents {keys:?}")
            })?;
            ensure(counts.values().all(|&c| c as u64 >= p), || format!("P_{{{p}^{m}}}: {counts:?}"))?;
        }
    }
    let names: Vec<String> = levels.iter().map(|(p, m)| format!("{p}^{m}")).collect();
    Ok(format!("orthogonality and degrees at {}", names.join(", ")))
}

fn sweep(ctx: &mut Context, n: usize, p: u64, ks: &[u64], method: Method) -> Outcome {
    for &k in ks {
        let got = ctx.omega(n, p, k, method).map_err(|f| format!("{f:?}"))?;
        let want = omega_predicted(n as u64, k, p)
            .map_err(err)?
            .boxed
            .map(|b| b.members())
            .unwrap_or_default();
        ensure(got == want, || {
            let g: BTreeSet<_> = got.iter().collect();
            let w: BTreeSet<_> = want.iter().collect();
            format!(
                "n = {n}, k = {k}: {} extra, {} missing",
                g.difference(&w).count(),
                w.difference(&g).count()
            )
        })?;
    }
    Ok(format!("n = {n}, p = {p}, k ∈ {ks:?}, {} partitions", enumerate_partitions(n).len()))
}

fn p2_control(ctx: &mut Context) -> Outcome {
    let got = ctx.omega(4, 2, 1, Method::Table).map_err(|f| format!("{f:?}"))?;
    let want: Vec<Partition> = vec!["3,1".parse().unwrap(), "2,1,1".parse().unwrap()];
    ensure(got == want, || format!("Ω_4^1 = {got:?}"))?;
    ensure(as_box(4, &got).is_none(), || "Ω_4^1 is a box set".into())?;
    Ok("Ω_4^1 = {(3,1),(2,1,1)} is not a box set".into())
}

fn ratio_trend() -> Outcome {
    let a = omega_ratio(9, 3).map_err(err)?;
    let b = omega_ratio(200, 3).map_err(err)?;
    ensure(b.ratio > a.ratio, || format!("{b} <= {a}"))?;
    Ok(format!("{a} < {b}"))
}

fn methods_agree(lambdas: &[Partition], p: u64, m: u32) -> Outcome {
    for l in lambdas {
        let a = oracle_table(l, p, m).map_err(err)?;
        let b = oracle_recursive(l, p, m).map_err(err)?;
        ensure(a.raw() == b.raw(), || format!("oracles disagree at {l}"))?;
    }
    Ok(format!("{} partitions of {}", lambdas.len(), p.pow(m)))
}

fn small_n_exhaustive(ctx: &mut Context) -> Outcome {
    let mut checked = 0;
    for n in 1..=9usize {
        let a = alpha(n as u64, 3).map_err(err)?;
        let ks: Vec<u64> = (0..=a + 1).collect();
        sweep(ctx, n, 3, &ks, Method::Auto)?;
        let all = enumerate_partitions(n);
        let sets = ctx.degree_sets(&all, 3, Method::Auto).map_err(|f| format!("{f:?}"))?;
        for (l, s) in all.iter().zip(&sets) {
            ensure(s.is_initial_interval(), || format!("{l}: {s}"))?;
            let c = all.iter().position(|x| *x == l.conjugate()).unwrap();
            ensure(sets[c] == *s, || format!("{l} and its conjugate differ"))?;
        }
        checked += all.len();
    }
    Ok(format!("{checked} partitions with n ≤ 9"))
}

fn box_star() -> Outcome {
    let b = |n, t| -> BTreeSet<Partition> { BoxSpec::new(n, t).members().into_iter().collect() };
    let mut cases = 0;
    for n in 1..=6 {
        for n2 in 1..=6 {
            for t in n / 2 + 1..=n {
                for t2 in n2 / 2 + 1..=n2 {
                    let got = star_product(&b(n, t), &b(n2, t2)).map_err(err)?;
                    ensure(got == b(n + n2, t + t2), || format!("B_{n}({t}) ⋆ B_{n2}({t2})"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} products"))
}

fn corollaries() -> Outcome {
    for n in 1..=250u64 {
        let a = alpha(n, 3).map_err(err)?;
        let mut prev = n;
        let mut deficits = vec![0u64; (n / 9) as usize + 1];
        for k in 1..=a {
            let t = T_general_closed(n, k, 3).map_err(err)?.ok_or("missing T")?;
            ensure(T_general_recursive(n, k, 3).map_err(err)? == Some(t), || format!("n = {n}, k = {k}"))?;
            ensure(t == prev || t + 1 == prev, || format!("step at n = {n}, k = {k}"))?;
            prev = t;
            deficits[(n - t) as usize] += 1;
        }
        if n >= 9 {
            let lengths = ordered_r(n, 3).map_err(err)?.lengths;
            ensure(deficits[1..] == lengths[..], || format!("ℓ-count at n = {n}"))?;
        }
    }
    for n in 0..=30usize {
        let all = enumerate_partitions(n);
        for t in 0..=n {
            let brute = all.iter().filter(|l| l.in_box(t)).count();
            ensure(count_in_box(n, t) == brute.into(), || format!("|B_{n}({t})|"))?;
        }
    }
    Ok("T step and ℓ-count for n ≤ 250; box counts for n ≤ 30".into())
}

pub fn run(cfg: &RunConfig, ctx: &mut Context, tier: Tier) -> Result<(), Failure> {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut check = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let r = f();
        eprintln!("sylow: {name}: {:.2?}", start.elapsed());
        results.push((name, r));
    };
    check("table 1", &mut || published(&TABLE1, &TABLE1_COLUMNS));
    check("table 2", &mut || published(&TABLE2, &TABLE2_COLUMNS));
    check("worked examples", &mut worked_examples);
    check("wreath tables (small)", &mut || tables(&[(2, 3), (3, 1), (3, 2), (5, 1)]));
    check("omega n = 9", &mut || sweep(ctx, 9, 3, &[0, 1], Method::Table));
    check("omega n = 12", &mut || sweep(ctx, 12, 3, &[0, 1, 2], Method::Auto));
    check("p = 2 control", &mut || p2_control(ctx));
    check("ratio trend", &mut ratio_trend);
    if tier != Tier::Smoke {
        check("exhaustive n ≤ 9", &mut || small_n_exhaustive(ctx));
        check("table = recursive, n = 9", &mut || {
            methods_agree(&enumerate_partitions(9), 3, 2)
        });
        check("wreath tables (large)", &mut || tables(&[(3, 3), (5, 2), (2, 4)]));
        check("box star", &mut box_star);
        check("corollaries", &mut corollaries);
    }
    if tier == Tier::Full {
        check("omega n = 27", &mut || sweep(ctx, 27, 3, &[0, 1, 2, 3, 4, 5], Method::Recursive));
        check("table = recursive, seeded n = 27", &mut || {
            methods_agree(&seeded_sample(27, 20, cfg.seed), 3, 3)
        });
        check("omega p = 5, n = 25", &mut || sweep(ctx, 25, 5, &[0, 1, 2], Method::Table));
    }
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    let tier_name = format!("{tier:?}").to_lowercase();
    if cfg.format == Format::Json {
        let checks: Vec<_> = results
            .iter()
            .map(|(name, r)| match r {
                Ok(d) => json!({"name": name, "passed": true, "detail": d}),
                Err(d) => json!({"name": name, "passed": false, "detail": d}),
            })
            .collect();
        let v = json!({"tier": tier_name, "checks": checks, "failed": failed});
        println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        for (name, r) in &results {
            match r {
                Ok(d) => println!("PASS  {name}: {d}"),
                Err(d) => println!("FAIL  {name}: {d}"),
            }
        }
        println!(
            "verify ({tier_name}): {} passed, {failed} failed",
            results.len() - failed
        );
    }
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} check(s) failed")));
    }
    Ok(())
}
