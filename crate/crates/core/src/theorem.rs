//! Predicted answers `Ω_n^k = B_n(T_n^k)`, by recursion and by closed form.
//!
//! The recursion computes `t_n^k` for prime powers as a maximum over
//! `L(k-1)` and `T_n^k` as a maximum over `J(k)`; both maxima are evaluated by
//! max-plus convolution of the per-term value vectors, which visits the same
//! compositions as direct enumeration.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::combinatorics::{alpha, alpha_prime_power, block_index, pow};
use crate::error::{require_odd_prime, Error, Result};
use crate::partitions::{count_in_box, p_adic_expansion, partition_count, BoxSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Recursive,
    ClosedForm,
}

/// `Ω_n^k` as a box set, or empty when `k > α_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OmegaAnswer {
    pub n: u64,
    pub p: u64,
    pub k: u64,
    #[serde(rename = "box")]
    pub boxed: Option<BoxSpec>,
    pub source: Source,
}

impl OmegaAnswer {
    pub fn side(&self) -> Option<u64> {
        self.boxed.map(|b| b.t as u64)
    }

    pub fn is_empty(&self) -> bool {
        self.boxed.is_none()
    }
}

impl fmt::Display for OmegaAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.boxed {
            Some(b) => write!(f, "{b}"),
            None => write!(f, "∅"),
        }
    }
}

static T_VECTORS: LazyLock<RwLock<HashMap<(u64, u32), Arc<Vec<u64>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `(t_n^0, …, t_n^{α_{p^n}})` by the recursion.
fn t_vector(n: u32, p: u64) -> Arc<Vec<u64>> {
    if let Some(v) = T_VECTORS.read().unwrap().get(&(p, n)) {
        return v.clone();
    }
    let top = pow(p, n);
    let v = if n <= 1 {
        vec![top]
    } else {
        let below = t_vector(n - 1, p);
        let conv = max_plus_power(&below, p as usize);
        let a = alpha_prime_power(n, p) as usize;
        let mut v = Vec::with_capacity(a + 1);
        v.push(top);
        v.push(top - 1);
        // t_n^k = max over L(k-1), for k ≥ 2
        v.extend_from_slice(&conv[1..a]);
        v
    };
    let v = Arc::new(v);
    T_VECTORS.write().unwrap().insert((p, n), v.clone());
    v
}

/// `c[s] = max_{a+b=s} x[a] + y[b]`.
fn max_plus(x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; x.len() + y.len() - 1];
    for (a, &u) in x.iter().enumerate() {
        for (b, &v) in y.iter().enumerate() {
            out[a + b] = out[a + b].max(u + v);
        }
    }
    out
}

fn max_plus_power(x: &[u64], times: usize) -> Vec<u64> {
    let mut acc = x.to_vec();
    for _ in 1..times {
        acc = max_plus(&acc, x);
    }
    acc
}

/// `t_n^k` by the recursion; `None` when `k > α_{p^n}`.
pub fn t_prime_recursive(n: u32, k: u64, p: u64) -> Result<Option<u64>> {
    require_odd_prime(p)?;
    Ok(t_vector(n, p).get(k as usize).copied())
}

/// `t_n^k = p^n - x` with `k ∈ A_x`; `None` when `k > α_{p^n}`.
pub fn t_prime_closed(n: u32, k: u64, p: u64) -> Result<Option<u64>> {
    require_odd_prime(p)?;
    if k == 0 {
        return Ok(Some(pow(p, n)));
    }
    if k > alpha_prime_power(n, p) {
        return Ok(None);
    }
    let x = block_index(pow(p, n), p, k)? as u64;
    Ok(Some(pow(p, n) - x))
}

/// `T_n^k` by the recursion over `J(k)`; `None` when `k > α_n`.
#[allow(non_snake_case)]
pub fn T_general_recursive(n: u64, k: u64, p: u64) -> Result<Option<u64>> {
    require_odd_prime(p)?;
    if n == 0 {
        return Ok((k == 0).then_some(0));
    }
    let mut acc = vec![0u64];
    for e in p_adic_expansion(n, p)? {
        acc = max_plus(&acc, &t_vector(e, p));
    }
    Ok(acc.get(k as usize).copied())
}

/// `T_n^k = n - x` with `k ∈ A_x`; `None` when `k > α_n`.
#[allow(non_snake_case)]
pub fn T_general_closed(n: u64, k: u64, p: u64) -> Result<Option<u64>> {
    require_odd_prime(p)?;
    if k == 0 {
        return Ok(Some(n));
    }
    if n == 0 || k > alpha(n, p)? {
        return Ok(None);
    }
    Ok(Some(n - block_index(n, p, k)? as u64))
}

/// Compositions of `total` into `parts` parts, part `i` at most `bounds[i]`,
/// in lexicographically decreasing order.
fn bounded_compositions(total: u64, bounds: &[u64]) -> Vec<Vec<u64>> {
    fn go(rest: u64, bounds: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if bounds.is_empty() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: u64 = bounds[1..].iter().sum();
        let lo = rest.saturating_sub(room);
        for d in (lo..=rest.min(bounds[0])).rev() {
            cur.push(d);
            go(rest - d, &bounds[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, bounds, &mut Vec::new(), &mut out);
    out
}

/// `L(j)`: compositions of `j` into `p` parts, each at most `α_{p^{n-1}}`.
pub fn l_set(n: u32, j: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    require_odd_prime(p)?;
    let bound = alpha_prime_power(n.saturating_sub(1), p);
    Ok(bounded_compositions(j, &vec![bound; p as usize]))
}

/// `L(j)` up to reordering: the weakly decreasing members.
pub fn l_set_sorted(n: u32, j: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    Ok(l_set(n, j, p)?
        .into_iter()
        .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
        .collect())
}

/// `J(k)`: compositions of `k` into one part per flattened p-adic term `n_i`,
/// part `i` at most `α_{p^{n_i}}`.
pub fn j_set(n: u64, k: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    require_odd_prime(p)?;
    let bounds: Vec<u64> = p_adic_expansion(n, p)?
        .into_iter()
        .map(|e| alpha_prime_power(e, p))
        .collect();
    Ok(bounded_compositions(k, &bounds))
}

/// `T_n^k` as the explicit maximum over `J(k)` (no convolution).
#[allow(non_snake_case)]
pub fn T_by_enumeration(n: u64, k: u64, p: u64) -> Result<Option<u64>> {
    let exps = p_adic_expansion(n, p)?;
    let mut best = None;
    for comp in j_set(n, k, p)? {
        let mut s = 0;
        for (&e, &d) in exps.iter().zip(&comp) {
            s += t_vector(e, p)[d as usize];
        }
        best = best.max(Some(s));
    }
    Ok(best)
}

fn answer(n: u64, p: u64, k: u64, t: Option<u64>, source: Source) -> OmegaAnswer {
    OmegaAnswer {
        n,
        p,
        k,
        boxed: t.map(|t| BoxSpec::new(n as usize, t as usize)),
        source,
    }
}

/// `Ω_n^k` from the closed form.
pub fn omega_predicted(n: u64, k: u64, p: u64) -> Result<OmegaAnswer> {
    Ok(answer(n, p, k, T_general_closed(n, k, p)?, Source::ClosedForm))
}

/// `Ω_n^k` from the recursion.
pub fn omega_predicted_recursive(n: u64, k: u64, p: u64) -> Result<OmegaAnswer> {
    Ok(answer(n, p, k, T_general_recursive(n, k, p)?, Source::Recursive))
}

/// `|Ω_n| / |P(n)|` with `Ω_n = B_n(n - ⌊n/p²⌋)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRatio {
    pub n: u64,
    pub p: u64,
    pub ratio: BigRational,
}

impl OmegaRatio {
    /// Decimal expansion truncated to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let num = self.ratio.numer();
        let den = self.ratio.denom();
        let sign = if num.is_negative() { "-" } else { "" };
        let num = num.abs();
        let int = &num / den;
        let mut rem = &num % den;
        let mut s = format!("{sign}{int}.");
        for _ in 0..digits {
            rem *= 10;
            let d = &rem / den;
            rem %= den;
            s.push_str(&d.to_string());
        }
        s
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for OmegaRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ratio)
    }
}

pub fn omega_ratio(n: u64, p: u64) -> Result<OmegaRatio> {
    require_odd_prime(p)?;
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            detail: "the ratio needs n >= 1".into(),
        });
    }
    let side = n - n / (p * p);
    let num = BigInt::from(count_in_box(n as usize, side as usize));
    let den = BigInt::from(partition_count(n as usize));
    if den.is_zero() {
        return Err(Error::Inconsistency("|P(n)| = 0".into()));
    }
    Ok(OmegaRatio {
        n,
        p,
        ratio: BigRational::new(num, den),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
    Latex,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "latex" | "tex" => Ok(TableFormat::Latex),
            _ => Err(Error::OutOfRange {
                what: "format",
                detail: format!("{s:?} (expected markdown, csv, json or latex)"),
            }),
        }
    }
}

/// The predicted answers for every `(n, k)` with `k ∈ [0, k_max]`.
pub fn table_answers(columns: &[u64], k_max: u64, p: u64) -> Result<Vec<Vec<OmegaAnswer>>> {
    (0..=k_max)
        .map(|k| columns.iter().map(|&n| omega_predicted(n, k, p)).collect())
        .collect()
}

/// `Some(e)` if `n = p^e`.
fn prime_power_exponent(n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    let mut q = 1;
    while q < n {
        q *= p;
        e += 1;
    }
    (q == n).then_some(e)
}

/// One cell in paper notation: `B_{3^3}(3^3 -2)`-style for prime powers,
/// `B_n(n -2)`-style otherwise (LaTeX markup when `latex` is set).
pub fn cell_text(a: &OmegaAnswer, latex: bool) -> String {
    let Some(t) = a.side() else {
        return if latex { "$\\emptyset$".into() } else { "∅".into() };
    };
    let deficit = a.n - t;
    let (sub, base) = match prime_power_exponent(a.n, a.p) {
        Some(1) => (format!("{{{}}}", a.p), a.p.to_string()),
        Some(e) => (format!("{{{}^{e}}}", a.p), format!("{}^{e}", a.p)),
        None => ("n".to_string(), "n".to_string()),
    };
    let arg = if deficit == 0 {
        base
    } else {
        format!("{base} -{deficit}")
    };
    if latex {
        format!("$\\mathcal{{B}}_{sub}({arg})$")
    } else {
        format!("B_{sub}({arg})")
    }
}

fn column_header(n: u64, p: u64, latex: bool) -> String {
    if let Some(e) = prime_power_exponent(n, p) {
        return if latex { format!("$n={e}$") } else { format!("{p}^{e}") };
    }
    let mut terms = Vec::new();
    let mut m = n;
    let mut e = 0u32;
    while m > 0 {
        let d = m % p;
        if d > 0 {
            let power = match e {
                0 => "1".to_string(),
                1 => p.to_string(),
                _ => format!("{p}^{e}"),
            };
            terms.push(if d == 1 {
                power
            } else if latex {
                format!("{d}\\cdot {power}")
            } else {
                format!("{d}·{power}")
            });
        }
        m /= p;
        e += 1;
    }
    let s = terms.join("+");
    if latex {
        format!("$n={s}$")
    } else {
        s
    }
}

/// The `Ω^k` grid for the given columns, in the requested format.
pub fn render_table(columns: &[u64], k_max: u64, p: u64, format: TableFormat) -> Result<String> {
    let rows = table_answers(columns, k_max, p)?;
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str("| k |");
            for &n in columns {
                out.push_str(&format!(" n = {} ({n}) |", column_header(n, p, false)));
            }
            out.push('\n');
            out.push_str("|---|");
            out.push_str(&"---|".repeat(columns.len()));
            out.push('\n');
            for (k, row) in rows.iter().enumerate() {
                out.push_str(&format!("| {k} |"));
                for a in row {
                    out.push_str(&format!(" {} |", cell_text(a, false)));
                }
                out.push('\n');
            }
        }
        TableFormat::Csv => {
            out.push_str("n,k,T,empty\n");
            for &n in columns {
                for row in &rows {
                    let a = row.iter().find(|a| a.n == n).expect("column present");
                    let t = a.side().map(|t| t.to_string()).unwrap_or_default();
                    out.push_str(&format!("{n},{},{t},{}\n", a.k, a.is_empty()));
                }
            }
        }
        TableFormat::Json => {
            let records: Vec<&OmegaAnswer> = columns
                .iter()
                .flat_map(|&n| rows.iter().map(move |row| row.iter().find(|a| a.n == n).unwrap()))
                .collect();
            out = serde_json::to_string_pretty(&json!({ "p": p, "cells": records }))
                .expect("answers serialize");
            out.push('\n');
        }
        TableFormat::Latex => {
            let spec = vec!["c"; columns.len()].join(" | ");
            out.push_str(&format!("\\begin{{tabular}}{{ c || {spec} }}\n"));
            let corner = if columns.iter().all(|&n| prime_power_exponent(n, p).is_some()) {
                "$\\Omega_{p^n}^k$"
            } else {
                "$\\Omega_{n}^k$"
            };
            out.push_str(corner);
            for &n in columns {
                out.push_str(&format!(" & {}", column_header(n, p, true)));
            }
            out.push_str(" \\\\\n\\hline\n");
            for (k, row) in rows.iter().enumerate() {
                out.push_str(&format!("$k={k}$"));
                for a in row {
                    out.push_str(&format!(" & {}", cell_text(a, true)));
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_examples() {
        assert_eq!(t_prime_recursive(4, 4, 3).unwrap(), Some(79));
        assert_eq!(t_prime_recursive(3, 3, 3).unwrap(), Some(25));
        assert_eq!(t_prime_recursive(5, 0, 3).unwrap(), Some(243));
        assert_eq!(t_prime_closed(4, 8, 3).unwrap(), Some(77));
        assert_eq!(t_prime_closed(4, 13, 3).unwrap(), Some(72));
        assert_eq!(t_prime_closed(3, 1, 3).unwrap(), Some(26));
        assert_eq!(t_prime_closed(4, 14, 3).unwrap(), None);
        assert_eq!(t_prime_recursive(4, 14, 3).unwrap(), None);
    }

    #[test]
    fn l_three() {
        let l = l_set_sorted(4, 3, 3).unwrap();
        assert_eq!(l, vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]);
        assert_eq!(l_set(4, 3, 3).unwrap().len(), 10);
    }

    #[test]
    fn general_examples() {
        assert_eq!(T_general_recursive(39, 2, 3).unwrap(), Some(38));
        assert_eq!(T_general_recursive(108, 17, 3).unwrap(), Some(96));
        assert_eq!(T_general_recursive(12, 1, 3).unwrap(), Some(11));
        assert_eq!(j_set(12, 1, 3).unwrap(), vec![vec![1, 0]]);
        assert_eq!(T_general_closed(39, 5, 3).unwrap(), Some(35));
        assert_eq!(T_general_closed(54, 6, 3).unwrap(), Some(50));
        assert_eq!(T_general_closed(30, 4, 3).unwrap(), Some(27));
        assert_eq!(T_general_closed(8, 1, 3).unwrap(), None);
        assert_eq!(T_general_closed(8, 0, 3).unwrap(), Some(8));
    }

    #[test]
    fn enumeration_matches_convolution() {
        for n in 1..=120 {
            for k in 0..=alpha(n, 3).unwrap() + 1 {
                assert_eq!(
                    T_by_enumeration(n, k, 3).unwrap(),
                    T_general_recursive(n, k, 3).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn answers() {
        assert_eq!(omega_predicted(9, 1, 3).unwrap().to_string(), "B_9(8)");
        assert_eq!(omega_predicted(81, 6, 3).unwrap().to_string(), "B_81(78)");
        assert_eq!(omega_predicted(36, 5, 3).unwrap().to_string(), "B_36(32)");
        assert_eq!(omega_predicted(81, 4, 3).unwrap().to_string(), "B_81(79)");
        assert_eq!(omega_predicted(27, 5, 3).unwrap().to_string(), "∅");
        assert!(matches!(omega_predicted(4, 1, 2), Err(Error::PrimeTwo)));
    }

    #[test]
    fn shift_by_three_fixed_points() {
        // adding a 3-cycle's worth of points to 36 grows every box by 3
        for k in 0..=alpha(36, 3).unwrap() {
            let a = T_general_closed(39, k, 3).unwrap().unwrap();
            let b = T_general_closed(36, k, 3).unwrap().unwrap();
            assert_eq!(a, b + 3);
        }
    }

    #[test]
    fn ratios() {
        let r = omega_ratio(12, 3).unwrap();
        assert_eq!(r.to_string(), "75/77");
        assert_eq!(omega_ratio(8, 3).unwrap().to_string(), "1");
        assert!(omega_ratio(200, 3).unwrap().ratio > omega_ratio(9, 3).unwrap().ratio);
        assert_eq!(r.decimal(4), "0.9740");
    }

    #[test]
    fn single_column() {
        let s = render_table(&[9], 3, 3, TableFormat::Markdown).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[2], "| 0 | B_{3^2}(3^2) |");
        assert_eq!(lines[3], "| 1 | B_{3^2}(3^2 -1) |");
        assert_eq!(lines[4], "| 2 | ∅ |");
        let csv = render_table(&[9], 1, 3, TableFormat::Csv).unwrap();
        assert_eq!(csv, "n,k,T,empty\n9,0,9,false\n9,1,8,false\n");
    }
}
